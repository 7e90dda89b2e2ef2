//! Probes of the two Gabriel–Zisman conditions for the class of
//! s-equivalences.

use serde::{Deserialize, Serialize};

use crate::build::{fibred_product, induce};
use crate::error::{GpdError, Result, SizeGuard};
use crate::functor::{same_groupoid, Functor};
use crate::profile::analyze_functor;
use crate::setmap::SetMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CstarReport {
    pub pullback_objects: usize,
    pub pullback_arrows: usize,
    /// The pulled-back `s'` is an s-equivalence.
    pub s_prime_s_equivalence: bool,
    pub commutes: bool,
}

impl CstarReport {
    pub fn holds(&self) -> bool {
        self.s_prime_s_equivalence && self.commutes
    }
}

/// Completes `A --f--> B <--s-- X` into a square with the fibred product and
/// checks that the side opposite `s` is again an s-equivalence.
pub fn cstar_probe(f: &Functor, s: &Functor) -> Result<CstarReport> {
    if !same_groupoid(f.cod(), s.cod()) {
        return Err(GpdError::Precondition("f and s need a common target".into()));
    }
    if !analyze_functor(s).s_equivalence {
        return Err(GpdError::Precondition("s is not an s-equivalence".into()));
    }
    let fp = fibred_product(s, f)?;
    let s_prime = &fp.right;
    Ok(CstarReport {
        pullback_objects: fp.groupoid.object_count(),
        pullback_arrows: fp.groupoid.arrow_count(),
        s_prime_s_equivalence: analyze_functor(s_prime).s_equivalence,
        commutes: s.after(&fp.left)? == f.after(s_prime)?,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum DstarOutcome {
    /// Fibre sizes of the object map of `λ` that equalizes `f` and `g`.
    Found { fibres: Vec<usize> },
    /// Every candidate with at most `cap` arrows was examined.
    NotFound,
    /// Even the smallest candidate exceeds the cap.
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DstarReport {
    pub outcome: DstarOutcome,
    pub cap: usize,
    pub examined: usize,
}

/// Searches s-equivalences `λ: D → A` with `f ∘ λ = g ∘ λ`. Every
/// s-equivalence into `A` is isomorphic over `A` to the canonical functor of
/// a groupoid induced along a surjection, so candidates are enumerated by
/// fibre sizes (lexicographically) up to `guard.max_arrows` arrows of `D`.
pub fn dstar_probe(f: &Functor, g: &Functor, s: &Functor, guard: SizeGuard) -> Result<DstarReport> {
    if !same_groupoid(f.dom(), g.dom()) || !same_groupoid(f.cod(), g.cod()) {
        return Err(GpdError::Precondition("f and g must be parallel".into()));
    }
    if !same_groupoid(f.cod(), s.dom()) || !analyze_functor(s).s_equivalence {
        return Err(GpdError::Precondition("s must be an s-equivalence out of the common target".into()));
    }
    if s.after(f)? != s.after(g)? {
        return Err(GpdError::Precondition("s does not coequalize f and g".into()));
    }
    let a = f.dom();
    let n = a.object_count();
    let cap = guard.max_arrows;
    let homs: Vec<Vec<usize>> = (0..n)
        .map(|x| (0..n).map(|y| a.hom(x, y).len()).collect())
        .collect();
    let arrows_for = |sizes: &[usize]| -> usize {
        let mut t = 0;
        for x in 0..n {
            for y in 0..n {
                t += sizes[x] * sizes[y] * homs[x][y];
            }
        }
        t
    };
    if arrows_for(&vec![1; n]) > cap {
        return Ok(DstarReport {
            outcome: DstarOutcome::Inconclusive,
            cap,
            examined: 0,
        });
    }
    let mut examined = 0;
    let mut found = None;
    let mut visit = |sz: &[usize]| -> Result<bool> {
        examined += 1;
        let map: Vec<usize> = sz.iter().enumerate().flat_map(|(x, &k)| std::iter::repeat(x).take(k)).collect();
        let (_, lambda) = induce(a, &SetMap::new(n, map)?)?;
        if f.after(&lambda)? == g.after(&lambda)? {
            found = Some(sz.to_vec());
            return Ok(true);
        }
        Ok(false)
    };
    // later coordinates sit at 1 while coordinate i grows, and the arrow
    // count is monotone, so the first overflow ends coordinate i
    fn walk(
        i: usize,
        sizes: &mut [usize],
        cap: usize,
        arrows_for: &dyn Fn(&[usize]) -> usize,
        visit: &mut dyn FnMut(&[usize]) -> Result<bool>,
    ) -> Result<bool> {
        if i == sizes.len() {
            return visit(sizes);
        }
        let mut done = false;
        while !done && arrows_for(sizes) <= cap {
            done = walk(i + 1, sizes, cap, arrows_for, visit)?;
            sizes[i] += 1;
        }
        sizes[i] = 1;
        Ok(done)
    }
    walk(0, &mut vec![1; n], cap, &arrows_for, &mut visit)?;
    let outcome = match found {
        Some(fibres) => DstarOutcome::Found { fibres },
        None => DstarOutcome::NotFound,
    };
    Ok(DstarReport { outcome, cap, examined })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::standard;
    use std::sync::Arc;

    #[test]
    fn cstar_on_collapse() {
        let p2 = Arc::new(standard::pair(2));
        let pt = Arc::new(standard::null(1));
        let s = Functor::constant(p2.clone(), pt.clone(), 0);
        let z2 = Arc::new(standard::cyclic(2));
        let f = Functor::constant(z2, pt, 0);
        let rep = cstar_probe(&f, &s).unwrap();
        assert!(rep.holds());
        assert_eq!(rep.pullback_arrows, 8);
    }

    #[test]
    fn dstar_swap_counterexample() {
        let p2 = Arc::new(standard::pair(2));
        let pt = Arc::new(standard::null(1));
        let id = Functor::identity(p2.clone());
        let arr = (0..4).map(|a| (1 - a / 2) * 2 + (1 - a % 2)).collect();
        let swap = Functor::checked(p2.clone(), p2.clone(), vec![1, 0], arr).unwrap();
        let s = Functor::constant(p2, pt, 0);
        let rep = dstar_probe(&id, &swap, &s, SizeGuard::default()).unwrap();
        assert_eq!(rep.outcome, DstarOutcome::NotFound);
        assert_eq!(rep.cap, 64);
        // fibre sizes (a, b) with (a + b)² ≤ 64
        assert_eq!(rep.examined, 28);
        let rep = dstar_probe(&id, &id, &Functor::constant(id.dom().clone(), Arc::new(standard::null(1)), 0), SizeGuard::default()).unwrap();
        assert_eq!(rep.outcome, DstarOutcome::Found { fibres: vec![1, 1] });
        let rep = dstar_probe(&id, &swap, &Functor::constant(id.dom().clone(), Arc::new(standard::null(1)), 0), SizeGuard::new(3)).unwrap();
        assert_eq!(rep.outcome, DstarOutcome::Inconclusive);
    }
}
