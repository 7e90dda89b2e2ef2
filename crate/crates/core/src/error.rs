use thiserror::Error;

/// Errors raised by constructions and searches over finite groupoids.
///
/// Validation of user-supplied tables is report-valued (see
/// [`crate::ValidationReport`]); these errors cover malformed inputs,
/// violated preconditions and refused searches.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GpdError {
    #[error("malformed structure: {0}")]
    Malformed(String),

    #[error("search refused: {what} has {arrows} arrows, cap is {cap}")]
    SearchRefused {
        what: String,
        arrows: usize,
        cap: usize,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("quotient not well-defined: {0}")]
    QuotientNotWellDefined(String),

    #[error("invalid bibundle: {0}")]
    InvalidBibundle(String),
}

pub type Result<T> = std::result::Result<T, GpdError>;

/// Arrow-count cap for exhaustive searches.
///
/// Every operation that enumerates functors, subgroupoids or witness
/// apexes checks the groupoids it searches over against this cap and
/// fails with [`GpdError::SearchRefused`] instead of truncating.
/// Constructions (square groupoids, holographs, fibred products) are
/// polynomial rather than exponential and are allowed `max_arrows²` arrows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct SizeGuard {
    pub max_arrows: usize,
}

impl SizeGuard {
    pub const DEFAULT_MAX_ARROWS: usize = 64;

    pub fn new(max_arrows: usize) -> Self {
        SizeGuard { max_arrows }
    }

    pub fn check(&self, what: &str, arrows: usize) -> Result<()> {
        if arrows > self.max_arrows {
            Err(GpdError::SearchRefused {
                what: what.to_string(),
                arrows,
                cap: self.max_arrows,
            })
        } else {
            Ok(())
        }
    }

    /// Cap for constructed groupoids.
    pub fn construction_cap(&self) -> usize {
        self.max_arrows.saturating_mul(self.max_arrows)
    }

    pub fn check_construction(&self, what: &str, arrows: usize) -> Result<()> {
        let cap = self.construction_cap();
        if arrows > cap {
            Err(GpdError::SearchRefused {
                what: what.to_string(),
                arrows,
                cap,
            })
        } else {
            Ok(())
        }
    }
}

impl Default for SizeGuard {
    fn default() -> Self {
        SizeGuard::new(Self::DEFAULT_MAX_ARROWS)
    }
}
