use serde::{Deserialize, Serialize};

use crate::error::{GpdError, Result};

/// A total map between finite sets `0..domain` and `0..codomain`.
///
/// In the discrete model embeddings are injections, surmersions are
/// surjections and diffeomorphisms are bijections, so these three flags are
/// all the "smooth" structure a map carries.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SetMap {
    codomain: usize,
    image: Vec<usize>,
}

impl SetMap {
    pub fn new(codomain: usize, image: Vec<usize>) -> Result<Self> {
        if let Some((i, &v)) = image.iter().enumerate().find(|(_, &v)| v >= codomain) {
            return Err(GpdError::Malformed(format!(
                "map sends {i} to {v}, outside codomain of size {codomain}"
            )));
        }
        Ok(SetMap { codomain, image })
    }

    pub(crate) fn from_vec_unchecked(codomain: usize, image: Vec<usize>) -> Self {
        debug_assert!(image.iter().all(|&v| v < codomain));
        SetMap { codomain, image }
    }

    pub fn identity(n: usize) -> Self {
        SetMap {
            codomain: n,
            image: (0..n).collect(),
        }
    }

    pub fn constant(domain: usize, codomain: usize, value: usize) -> Result<Self> {
        SetMap::new(codomain, vec![value; domain])
    }

    pub fn domain(&self) -> usize {
        self.image.len()
    }

    pub fn codomain(&self) -> usize {
        self.codomain
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.image[x]
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.codomain];
        for &v in &self.image {
            if seen[v] {
                return false;
            }
            seen[v] = true;
        }
        true
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.codomain];
        let mut hit = 0;
        for &v in &self.image {
            if !seen[v] {
                seen[v] = true;
                hit += 1;
            }
        }
        hit == self.codomain
    }

    pub fn is_bijective(&self) -> bool {
        self.domain() == self.codomain && self.is_injective()
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn after(&self, first: &SetMap) -> Result<SetMap> {
        if first.codomain != self.domain() {
            return Err(GpdError::Precondition(format!(
                "cannot compose: codomain {} does not match domain {}",
                first.codomain,
                self.domain()
            )));
        }
        Ok(SetMap {
            codomain: self.codomain,
            image: first.image.iter().map(|&x| self.image[x]).collect(),
        })
    }

    /// Inverse of a bijection.
    pub fn inverse(&self) -> Option<SetMap> {
        if !self.is_bijective() {
            return None;
        }
        let mut inv = vec![0; self.codomain];
        for (x, &y) in self.image.iter().enumerate() {
            inv[y] = x;
        }
        Some(SetMap {
            codomain: self.domain(),
            image: inv,
        })
    }

    /// Fibres of the map, indexed by codomain element.
    pub fn fibres(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.codomain];
        for (x, &y) in self.image.iter().enumerate() {
            out[y].push(x);
        }
        out
    }
}
