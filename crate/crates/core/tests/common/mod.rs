#![allow(dead_code)]

use std::sync::Arc;

use gpd_core::build::induce;
use gpd_core::search::all_functors;
use gpd_core::{standard, FiniteGroupoid, Functor, Gpd, SetMap, SizeGuard};

pub fn guard() -> SizeGuard {
    SizeGuard::default()
}

pub fn arc(g: FiniteGroupoid) -> Gpd {
    Arc::new(g)
}

/// Small groupoids covering every class flag.
pub fn groupoids() -> Vec<(&'static str, Gpd)> {
    let z2 = standard::cyclic(2);
    let (ind, _) = induce(&arc(z2.clone()), &SetMap::new(1, vec![0, 0]).unwrap()).unwrap();
    vec![
        ("null1", arc(standard::null(1))),
        ("null2", arc(standard::null(2))),
        ("pair2", arc(standard::pair(2))),
        ("pair3", arc(standard::pair(3))),
        ("z2", arc(z2.clone())),
        ("z3", arc(standard::cyclic(3))),
        ("z4", arc(standard::cyclic(4))),
        ("v4", arc(standard::product(&z2, &z2))),
        ("s3", arc(standard::sym3())),
        ("swap2", arc(standard::action_cyclic(2, 2, &[1, 0]).unwrap())),
        ("z2+pair2", arc(standard::disjoint_union(&z2, &standard::pair(2)))),
        ("ind_z2", ind),
        ("eq3", arc(standard::equiv_rel(3, &[vec![0, 1], vec![2]]).unwrap())),
    ]
}

/// The first `per_pair` functors (in search order) between every ordered
/// pair of catalog groupoids.
pub fn functors(per_pair: usize) -> Vec<Functor> {
    let gs = groupoids();
    let mut out = Vec::new();
    for (_, a) in &gs {
        for (_, b) in &gs {
            out.extend(all_functors(a, b, guard(), per_pair).unwrap());
        }
    }
    out
}

/// Pairs `(f, g)` with `g ∘ f` defined, at most `per_middle` per middle
/// groupoid and source/target combination.
pub fn composable(fs: &[Functor], per_middle: usize) -> Vec<(Functor, Functor)> {
    let mut out = Vec::new();
    for f in fs {
        let mut taken = 0;
        for g in fs {
            if taken == per_middle {
                break;
            }
            if Arc::ptr_eq(f.cod(), g.dom()) {
                out.push((f.clone(), g.clone()));
                taken += 1;
            }
        }
    }
    out
}

/// Canonical s-equivalence onto `g` from the groupoid induced along the
/// surjection that doubles the objects listed in `doubled`.
pub fn inflate(g: &Gpd, doubled: &[usize]) -> Functor {
    let mut image: Vec<usize> = g.objects().collect();
    image.extend(doubled.iter().copied().filter(|&x| x < g.object_count()));
    induce(g, &SetMap::new(g.object_count(), image).unwrap()).unwrap().1
}
