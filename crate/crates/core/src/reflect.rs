//! The reflector onto plurigroups.
//!
//! In the finite model every plurigroup is discrete and the reflection of a
//! groupoid is its skeleton: one object per orbit carrying that orbit's
//! vertex group. The unit is γ of the retraction onto the skeleton, and it
//! is always a meriedric equivalence here (every finite groupoid is Morita
//! equivalent to its skeleton); reports flag this collapse.

use std::ops::ControlFlow;
use std::sync::Arc;

use crate::error::{GpdError, Result, SizeGuard};
use crate::fraction::{compose_meromorphisms, gamma, is_holomorphism, Meromorphism};
use crate::functor::Functor;
use crate::groupoid::FiniteGroupoid;
use crate::search::for_each_functor;

/// Skeleton plurigroup of a groupoid with retraction and inclusion.
#[derive(Debug, Clone)]
pub struct Skeleton {
    pub plurigroup: Arc<FiniteGroupoid>,
    /// Lowest object of each orbit.
    pub representatives: Vec<usize>,
    /// For every object `b`, the lowest-id arrow `b → rep(b)`.
    pub theta: Vec<usize>,
    /// `x ↦ θ_tgt ∘ x ∘ θ_src⁻¹`.
    pub retraction: Functor,
    /// Vertex groups at the representatives, included back.
    pub inclusion: Functor,
}

pub fn skeleton(g: &Arc<FiniteGroupoid>) -> Skeleton {
    let orbits = g.orbits();
    let orbit_of = g.orbit_map();
    let representatives: Vec<usize> = orbits.iter().map(|o| o[0]).collect();
    let theta: Vec<usize> = g
        .objects()
        .map(|b| {
            let rep = representatives[orbit_of.apply(b)];
            *g.hom(b, rep).iter().min().expect("orbit is connected")
        })
        .collect();
    let mut local = vec![usize::MAX; g.arrow_count()];
    let mut parents = Vec::new();
    let mut ends = Vec::new();
    for (i, &r) in representatives.iter().enumerate() {
        for &a in g.hom(r, r) {
            local[a] = parents.len();
            parents.push(a);
            ends.push((i, i));
        }
    }
    let unit = representatives.iter().map(|&r| local[g.unit(r)]).collect();
    let inv = parents.iter().map(|&a| local[g.inv(a)]).collect();
    let plurigroup = Arc::new(FiniteGroupoid::from_fn(
        representatives.len(),
        &ends,
        unit,
        inv,
        |a, b| local[g.compose(parents[a], parents[b])],
    ));
    let retraction = Functor::from_parts(
        g.clone(),
        plurigroup.clone(),
        orbit_of.image().to_vec(),
        g.arrows()
            .map(|x| {
                let t = g.compose(theta[g.tgt(x)], g.compose(x, g.inv(theta[g.src(x)])));
                local[t]
            })
            .collect(),
    );
    let inclusion = Functor::from_parts(plurigroup.clone(), g.clone(), representatives.clone(), parents);
    Skeleton {
        plurigroup,
        representatives,
        theta,
        retraction,
        inclusion,
    }
}

#[derive(Debug, Clone)]
pub struct Reflection {
    pub skeleton: Skeleton,
    /// `g ⇢ Π(g)`.
    pub unit: Meromorphism,
}

pub fn fundamental_plurigroup(g: &Arc<FiniteGroupoid>, guard: SizeGuard) -> Result<Reflection> {
    let skeleton = skeleton(g);
    let unit = gamma(&skeleton.retraction, guard)?;
    Ok(Reflection { skeleton, unit })
}

#[derive(Debug, Clone)]
pub struct UniversalReport {
    /// `m̄ = m ∘ γ(inclusion)`.
    pub factor: Meromorphism,
    /// `m̄ ∘ unit` is equivalent to `m`.
    pub factorizes: bool,
    /// Functors `Π(g) → d` examined as candidates.
    pub candidates: usize,
    /// Candidates whose γ factors `m`.
    pub factoring: usize,
    /// Every factoring candidate is in the class of `m̄`.
    pub unique: bool,
    /// A functor representing `m̄`.
    pub holomorphism: Option<Functor>,
    /// The unit is a meriedric equivalence, as it always is for finite
    /// groupoids.
    pub unit_is_equivalence: bool,
}

/// Checks the universal property of the unit for `m: g ⇢ d`. Every
/// meromorphism out of a plurigroup is γ of a functor, so the candidate
/// factors are γ(φ) for all functors `φ: Π(g) → d`.
pub fn check_reflection_universal(
    g: &Arc<FiniteGroupoid>,
    d: &Arc<FiniteGroupoid>,
    m: &Meromorphism,
    guard: SizeGuard,
) -> Result<UniversalReport> {
    if !d.classify().plurigroup {
        return Err(GpdError::Precondition("target is not a plurigroup".into()));
    }
    if !crate::functor::same_groupoid(m.source(), g) || !crate::functor::same_groupoid(m.target(), d) {
        return Err(GpdError::Precondition("meromorphism does not run from g to d".into()));
    }
    let refl = fundamental_plurigroup(g, guard)?;
    let inc = gamma(&refl.skeleton.inclusion, guard)?;
    let factor = compose_meromorphisms(m, &inc)?;
    let factorizes = compose_meromorphisms(&factor, &refl.unit)?.same_class(m);
    let mut candidates = 0;
    let mut factoring = 0;
    let mut unique = true;
    let mut err = None;
    for_each_functor(&refl.skeleton.plurigroup, d, guard, &mut |phi| {
        candidates += 1;
        let step = || -> Result<(bool, bool)> {
            let c = gamma(&phi, guard)?;
            let hits = compose_meromorphisms(&c, &refl.unit)?.same_class(m);
            Ok((hits, c.same_class(&factor)))
        };
        match step() {
            Ok((hits, same)) => {
                if hits {
                    factoring += 1;
                    unique &= same;
                }
                ControlFlow::Continue(())
            }
            Err(e) => {
                err = Some(e);
                ControlFlow::Break(())
            }
        }
    })?;
    if let Some(e) = err {
        return Err(e);
    }
    let holomorphism = is_holomorphism(&factor, guard)?;
    Ok(UniversalReport {
        unit_is_equivalence: crate::fraction::is_meriedric_equivalence(&refl.unit),
        factor,
        factorizes,
        candidates,
        factoring,
        unique: unique && factoring > 0,
        holomorphism,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::build::induce;
    use crate::search::find_isomorphism;
    use crate::setmap::SetMap;
    use crate::standard;

    fn arc(g: FiniteGroupoid) -> Arc<FiniteGroupoid> {
        Arc::new(g)
    }

    #[test]
    fn skeleton_examples() {
        let s = skeleton(&arc(standard::pair(3)));
        assert_eq!(s.plurigroup.arrow_count(), 1);
        let z2 = arc(standard::cyclic(2));
        let (ind, _) = induce(&z2, &SetMap::new(1, vec![0, 0]).unwrap()).unwrap();
        let s = skeleton(&ind);
        assert!(find_isomorphism(&s.plurigroup, &z2, SizeGuard::default()).unwrap().is_some());
        assert!(s.retraction.validate().is_ok() && s.inclusion.validate().is_ok());
        let u = arc(standard::disjoint_union(&standard::cyclic(2), &standard::pair(2)));
        let s = skeleton(&u);
        assert_eq!(s.plurigroup.object_count(), 2);
        assert_eq!(s.plurigroup.arrow_count(), 3);
        assert!(s.plurigroup.classify().plurigroup);
    }

    #[test]
    fn universal_property_mod_two() {
        let z4 = arc(standard::cyclic(4));
        let z2 = arc(standard::cyclic(2));
        let f = Functor::checked(z4.clone(), z2.clone(), vec![0], vec![0, 1, 0, 1]).unwrap();
        let m = gamma(&f, SizeGuard::default()).unwrap();
        let rep = check_reflection_universal(&z4, &z2, &m, SizeGuard::default()).unwrap();
        assert!(rep.factorizes && rep.unique && rep.unit_is_equivalence);
        assert_eq!(rep.candidates, 2);
        assert!(rep.holomorphism.is_some());
    }
}
