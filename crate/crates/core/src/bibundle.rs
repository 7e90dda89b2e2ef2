//! Bibundles: a finite set with commuting actions of `H` on the left and
//! `G` on the right, the right one free with orbit set the base of `H`.

use std::collections::HashMap;
use std::sync::Arc;

use crate::build::{assemble, Index};
use crate::error::{GpdError, Result};
use crate::fraction::{fraction_isomorphism, Fraction, Meromorphism};
use crate::functor::{same_groupoid, Functor};
use crate::groupoid::FiniteGroupoid;
use crate::setmap::SetMap;

const NONE: usize = usize::MAX;

/// Left action `h·e` is defined when `src h = ρ(e)`; right action `e·g`
/// when `σ(e) = tgt g`.
#[derive(Debug, Clone, PartialEq)]
pub struct Bibundle {
    pub left: Arc<FiniteGroupoid>,
    pub right: Arc<FiniteGroupoid>,
    pub rho: SetMap,
    pub sigma: SetMap,
    left_act: Vec<Vec<usize>>,
    right_act: Vec<Vec<usize>>,
}

impl Bibundle {
    /// Builds from action closures and checks every invariant.
    pub fn new(
        left: Arc<FiniteGroupoid>,
        right: Arc<FiniteGroupoid>,
        rho: SetMap,
        sigma: SetMap,
        left_act: impl Fn(usize, usize) -> usize,
        right_act: impl Fn(usize, usize) -> usize,
    ) -> Result<Bibundle> {
        let n = rho.domain();
        if sigma.domain() != n || rho.codomain() != left.object_count() || sigma.codomain() != right.object_count() {
            return Err(GpdError::InvalidBibundle("moment maps have the wrong shape".into()));
        }
        let la = left
            .arrows()
            .map(|h| {
                (0..n)
                    .map(|e| if left.src(h) == rho.apply(e) { left_act(h, e) } else { NONE })
                    .collect()
            })
            .collect();
        let ra = right
            .arrows()
            .map(|g| {
                (0..n)
                    .map(|e| if right.tgt(g) == sigma.apply(e) { right_act(e, g) } else { NONE })
                    .collect()
            })
            .collect();
        let b = Bibundle {
            left,
            right,
            rho,
            sigma,
            left_act: la,
            right_act: ra,
        };
        b.check()?;
        Ok(b)
    }

    pub fn points(&self) -> usize {
        self.rho.domain()
    }

    pub fn act_left(&self, h: usize, e: usize) -> Option<usize> {
        Some(self.left_act[h][e]).filter(|&x| x != NONE)
    }

    pub fn act_right(&self, e: usize, g: usize) -> Option<usize> {
        Some(self.right_act[g][e]).filter(|&x| x != NONE)
    }

    /// Every violated invariant, in a fixed order.
    pub fn violations(&self) -> Vec<String> {
        let (h, g) = (&*self.left, &*self.right);
        let n = self.points();
        let mut v = Vec::new();
        for e in 0..n {
            for a in h.arrows() {
                if h.src(a) != self.rho.apply(e) {
                    continue;
                }
                match self.act_left(a, e) {
                    Some(x) if x < n => {
                        if self.rho.apply(x) != h.tgt(a) {
                            v.push(format!("rho(h.e) != tgt h at ({a}, {e})"));
                        }
                        if self.sigma.apply(x) != self.sigma.apply(e) {
                            v.push(format!("left action moves sigma at ({a}, {e})"));
                        }
                    }
                    _ => v.push(format!("left action undefined at ({a}, {e})")),
                }
            }
            for b in g.arrows() {
                if g.tgt(b) != self.sigma.apply(e) {
                    continue;
                }
                match self.act_right(e, b) {
                    Some(x) if x < n => {
                        if self.sigma.apply(x) != g.src(b) {
                            v.push(format!("sigma(e.g) != src g at ({e}, {b})"));
                        }
                        if self.rho.apply(x) != self.rho.apply(e) {
                            v.push(format!("right action moves rho at ({e}, {b})"));
                        }
                    }
                    _ => v.push(format!("right action undefined at ({e}, {b})")),
                }
            }
        }
        if !v.is_empty() {
            return v;
        }
        for e in 0..n {
            if self.act_left(h.unit(self.rho.apply(e)), e) != Some(e) {
                v.push(format!("left unit fails at {e}"));
            }
            if self.act_right(e, g.unit(self.sigma.apply(e))) != Some(e) {
                v.push(format!("right unit fails at {e}"));
            }
            for &a in h.arrows_from(self.rho.apply(e)) {
                let ae = self.left_act[a][e];
                for &a2 in h.arrows_from(h.tgt(a)) {
                    if self.act_left(a2, ae) != self.act_left(h.compose(a2, a), e) {
                        v.push(format!("left action not associative at ({a2}, {a}, {e})"));
                    }
                }
                for &b in g.arrows_to(self.sigma.apply(e)) {
                    let lhs = self.act_right(ae, b);
                    let rhs = self.act_left(a, self.right_act[b][e]);
                    if lhs != rhs {
                        v.push(format!("actions do not commute at ({a}, {e}, {b})"));
                    }
                }
            }
            for &b in g.arrows_to(self.sigma.apply(e)) {
                let eb = self.right_act[b][e];
                if eb == e && !g.is_unit(b) {
                    v.push(format!("right action not free at ({e}, {b})"));
                }
                for &b2 in g.arrows_to(g.src(b)) {
                    if self.act_right(eb, b2) != self.act_right(e, g.compose(b, b2)) {
                        v.push(format!("right action not associative at ({e}, {b}, {b2})"));
                    }
                }
            }
        }
        // orbits of the right action against fibres of rho
        let mut orbit = vec![NONE; n];
        let mut count = 0;
        for e in 0..n {
            if orbit[e] != NONE {
                continue;
            }
            for &b in g.arrows_to(self.sigma.apply(e)) {
                orbit[self.right_act[b][e]] = count;
            }
            count += 1;
        }
        let mut seen: HashMap<usize, usize> = HashMap::new();
        for e in 0..n {
            if let Some(&o) = seen.get(&self.rho.apply(e)) {
                if o != orbit[e] {
                    v.push(format!("rho identifies two right orbits at {e}"));
                }
            } else {
                seen.insert(self.rho.apply(e), orbit[e]);
            }
        }
        if !self.rho.is_surjective() {
            v.push("rho misses an object of the left groupoid".into());
        }
        v
    }

    pub fn check(&self) -> Result<()> {
        match self.violations().into_iter().next() {
            None => Ok(()),
            Some(msg) => Err(GpdError::InvalidBibundle(msg)),
        }
    }
}

/// Reads the bibundle off the irreducible form of `m`: points are objects of
/// the reduced apex, `σ = p̄0`, `ρ = q̄0`; `h·e` is the target of the
/// `Ker p̄`-arrow from `e` over `h` and `e·g` the target of the
/// `Ker q̄`-arrow from `e` over `g⁻¹`.
pub fn to_bibundle(m: &Meromorphism) -> Result<Bibundle> {
    let fr = m.reduced();
    let k = fr.apex();
    let (p, q) = (&fr.p, &fr.q);
    let (g, h) = (fr.target(), fr.source());
    let mut left_lift: HashMap<(usize, usize), usize> = HashMap::new();
    let mut right_lift: HashMap<(usize, usize), usize> = HashMap::new();
    for x in k.arrows() {
        if g.is_unit(p.arr(x)) && left_lift.insert((q.arr(x), k.src(x)), k.tgt(x)).is_some() {
            return Err(GpdError::InvalidBibundle("left lift is not unique".into()));
        }
        if h.is_unit(q.arr(x)) && right_lift.insert((p.arr(x), k.src(x)), k.tgt(x)).is_some() {
            return Err(GpdError::InvalidBibundle("right lift is not unique".into()));
        }
    }
    let rho = SetMap::new(h.object_count(), k.objects().map(|e| q.obj(e)).collect())?;
    let sigma = SetMap::new(g.object_count(), k.objects().map(|e| p.obj(e)).collect())?;
    Bibundle::new(
        h.clone(),
        g.clone(),
        rho,
        sigma,
        |a, e| left_lift.get(&(a, e)).copied().unwrap_or(NONE),
        |e, b| right_lift.get(&(g.inv(b), e)).copied().unwrap_or(NONE),
    )
}

/// The two-sided action groupoid of a bibundle: arrows `(h, e, g)` with
/// `src h = ρ(e)` and `src g = σ(e)`, running from `e` to `h·e·g⁻¹`;
/// `(h', e', g') ∘ (h, e, g) = (h'h, e, g'g)`. The numerator extracts `g`,
/// the denominator `h`.
pub fn from_bibundle(b: &Bibundle) -> Result<Fraction> {
    b.check()?;
    let (h, g) = (&b.left, &b.right);
    let n = b.points();
    let mut objects = Index::new();
    for e in 0..n {
        objects.push(e);
    }
    let mut arrows = Index::new();
    for e in 0..n {
        for &x in h.arrows_from(b.rho.apply(e)) {
            for &y in g.arrows_from(b.sigma.apply(e)) {
                arrows.push((x, e, y));
            }
        }
    }
    let target = |x: usize, e: usize, y: usize| b.left_act[x][b.right_act[g.inv(y)][e]];
    let apex = Arc::new(assemble(
        &objects,
        &arrows,
        |&(x, e, y)| (e, target(x, e, y)),
        |&e| (h.unit(b.rho.apply(e)), e, g.unit(b.sigma.apply(e))),
        |&(x, e, y)| (h.inv(x), target(x, e, y), g.inv(y)),
        |&(x2, _, y2), &(x1, e, y1)| (h.compose(x2, x1), e, g.compose(y2, y1)),
    ));
    let p = Functor::from_parts(
        apex.clone(),
        g.clone(),
        b.sigma.image().to_vec(),
        arrows.keys().iter().map(|t| t.2).collect(),
    );
    let q = Functor::from_parts(
        apex,
        h.clone(),
        b.rho.image().to_vec(),
        arrows.keys().iter().map(|t| t.0).collect(),
    );
    Fraction::new(p, q)
}

/// An equivariant bijection of points commuting with the moment maps.
pub fn bibundle_isomorphism(b1: &Bibundle, b2: &Bibundle) -> Result<Option<Vec<usize>>> {
    if !same_groupoid(&b1.left, &b2.left) || !same_groupoid(&b1.right, &b2.right) {
        return Ok(None);
    }
    let f1 = from_bibundle(b1)?;
    let f2 = from_bibundle(b2)?;
    Ok(fraction_isomorphism(&f1, &f2).map(|k| k.objector().image().to_vec()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::SizeGuard;
    use crate::fraction::identity_meromorphism;
    use crate::standard;

    fn arc(g: FiniteGroupoid) -> Arc<FiniteGroupoid> {
        Arc::new(g)
    }

    #[test]
    fn morita_morphism_bibundle() {
        let p2 = arc(standard::pair(2));
        let pt = arc(standard::null(1));
        let fr = Fraction::new(Functor::identity(p2.clone()), Functor::constant(p2, pt, 0)).unwrap();
        let b = to_bibundle(&Meromorphism::new(fr.clone()).unwrap()).unwrap();
        assert_eq!(b.points(), 2);
        assert!(b.check().is_ok());
        assert_eq!(b.rho.image(), &[0, 0]);
        let back = from_bibundle(&b).unwrap();
        assert!(fraction_isomorphism(&back, &fr).is_some());
    }

    #[test]
    fn identity_bibundle_is_the_arrows() {
        let g = arc(standard::sym3());
        let m = identity_meromorphism(&g, SizeGuard::default()).unwrap();
        let b = to_bibundle(&m).unwrap();
        assert_eq!(b.points(), g.arrow_count());
        let b2 = to_bibundle(&Meromorphism::new(from_bibundle(&b).unwrap()).unwrap()).unwrap();
        assert!(bibundle_isomorphism(&b, &b2).unwrap().is_some());
    }

    #[test]
    fn point_bibundle_is_identity_of_point() {
        let pt = arc(standard::null(1));
        let b = Bibundle::new(
            pt.clone(),
            pt.clone(),
            SetMap::new(1, vec![0]).unwrap(),
            SetMap::new(1, vec![0]).unwrap(),
            |_, e| e,
            |e, _| e,
        )
        .unwrap();
        let fr = from_bibundle(&b).unwrap();
        assert_eq!(fr.apex().arrow_count(), 1);
    }

    #[test]
    fn non_free_action_is_rejected() {
        let z2 = arc(standard::cyclic(2));
        let pt = arc(standard::null(1));
        let b = Bibundle::new(
            pt,
            z2,
            SetMap::new(1, vec![0]).unwrap(),
            SetMap::new(1, vec![0]).unwrap(),
            |_, e| e,
            |e, _| e,
        );
        assert!(matches!(b, Err(GpdError::InvalidBibundle(_))));
    }
}
