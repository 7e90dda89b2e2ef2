//! Transversal and transverse pairs of subgroupoids, cotransversality of
//! exactors and the butterfly diagram.
//!
//! Throughout, `N = Ker p` and `R = Ker q` for a pair of exactors
//! `H ← K → G` with numerator `p` and denominator `q`.

use std::collections::HashSet;
use std::ops::ControlFlow;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{GpdError, Result, SizeGuard};
use crate::functor::{same_groupoid, Functor};
use crate::groupoid::FiniteGroupoid;
use crate::profile::analyze_functor;
use crate::subgroupoid::{for_each_uniferous_subgroupoid, kernel, Subgroupoid};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Transversality {
    None,
    /// Divisor on same-source pairs is onto.
    Transversal,
    /// Divisor on same-source pairs is a bijection.
    Transverse,
}

impl Transversality {
    pub fn is_transversal(self) -> bool {
        self != Transversality::None
    }
}

pub fn intersect_subgroupoids(m: &Subgroupoid, n: &Subgroupoid) -> Result<Subgroupoid> {
    m.intersect(n)
}

/// Status of the divisor `(x, y) ↦ x y⁻¹` on pairs `x ∈ m`, `y ∈ n` with a
/// common source.
pub fn transversality_status(m: &Subgroupoid, n: &Subgroupoid) -> Result<Transversality> {
    if !same_groupoid(m.parent(), n.parent()) {
        return Err(GpdError::Precondition("subgroupoids of different groupoids".into()));
    }
    if !m.is_uniferous() || !n.is_uniferous() {
        return Err(GpdError::Precondition("subgroupoids must be uniferous".into()));
    }
    let k = &**m.parent();
    let mut image = HashSet::new();
    let mut pairs = 0usize;
    for x in m.arrows() {
        for &y in k.arrows_from(k.src(x)) {
            if n.contains(y) {
                pairs += 1;
                image.insert(k.divide(x, y));
            }
        }
    }
    Ok(if image.len() < k.arrow_count() {
        Transversality::None
    } else if pairs == k.arrow_count() {
        Transversality::Transverse
    } else {
        Transversality::Transversal
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Cotransversality {
    None,
    Cotransversal,
    Cotransverse,
}

/// The butterfly of a pair of functors with a common source.
#[derive(Debug, Clone)]
pub struct Butterfly {
    pub apex: Arc<FiniteGroupoid>,
    pub p: Functor,
    pub q: Functor,
    /// `Ker p`.
    pub n: Subgroupoid,
    /// `Ker q`.
    pub r: Subgroupoid,
    /// `N ∩ R`.
    pub s: Subgroupoid,
    /// Inclusion of `R`.
    pub i: Functor,
    /// Inclusion of `N`.
    pub j: Functor,
    /// `p ∘ i: R → G`.
    pub u: Functor,
    /// `q ∘ j: N → H`.
    pub v: Functor,
}

impl Butterfly {
    pub fn new(p: &Functor, q: &Functor) -> Result<Butterfly> {
        if !same_groupoid(p.dom(), q.dom()) {
            return Err(GpdError::Precondition("numerator and denominator have different sources".into()));
        }
        let n = kernel(p);
        let r = kernel(q);
        let s = n.intersect(&r)?;
        let (_, i) = r.to_groupoid();
        let (_, j) = n.to_groupoid();
        let u = p.after(&i)?;
        let v = q.after(&j)?;
        Ok(Butterfly {
            apex: p.dom().clone(),
            p: p.clone(),
            q: q.clone(),
            n,
            r,
            s,
            i,
            j,
            u,
            v,
        })
    }
}

/// Cotransversality computed twice: through the divisor on `R ×_src N` and
/// through the legs `u`, `v`.
#[derive(Debug, Clone)]
pub struct CotransversalityReport {
    pub status: Cotransversality,
    pub via_u: Cotransversality,
    pub via_v: Cotransversality,
    pub butterfly: Butterfly,
}

impl CotransversalityReport {
    pub fn agree(&self) -> bool {
        self.status == self.via_u && self.status == self.via_v
    }
}

fn leg_status(f: &Functor) -> Cotransversality {
    let prof = analyze_functor(f);
    if prof.actor {
        Cotransversality::Cotransverse
    } else if prof.exactor {
        Cotransversality::Cotransversal
    } else {
        Cotransversality::None
    }
}

pub fn cotransversality(p: &Functor, q: &Functor) -> Result<CotransversalityReport> {
    if !analyze_functor(p).exactor || !analyze_functor(q).exactor {
        return Err(GpdError::Precondition("cotransversality needs two exactors".into()));
    }
    let butterfly = Butterfly::new(p, q)?;
    let status = match transversality_status(&butterfly.r, &butterfly.n)? {
        Transversality::None => Cotransversality::None,
        Transversality::Transversal => Cotransversality::Cotransversal,
        Transversality::Transverse => Cotransversality::Cotransverse,
    };
    Ok(CotransversalityReport {
        status,
        via_u: leg_status(&butterfly.u),
        via_v: leg_status(&butterfly.v),
        butterfly,
    })
}

/// A uniferous subgroupoid transverse to `Ker p`, if one exists. Taking
/// `M = K` always gives a transversal pair, so the meaningful notion asks
/// for transverse; for surjective group homomorphisms it amounts to a
/// splitting.
pub fn is_inessential(p: &Functor, guard: SizeGuard) -> Result<Option<Subgroupoid>> {
    let n = kernel(p);
    let mut found = None;
    for_each_uniferous_subgroupoid(p.dom(), guard, &mut |m| {
        if matches!(transversality_status(m, &n), Ok(Transversality::Transverse)) {
            found = Some(m.clone());
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })?;
    Ok(found)
}
