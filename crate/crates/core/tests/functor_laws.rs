//! Composition and cancellation laws for the functor predicates, checked
//! over every composable pair drawn from a small catalog.

mod common;

use std::collections::HashSet;
use std::sync::Arc;

use common::{composable, functors, groupoids, guard};
use gpd_core::fraction::morita_equivalent;
use gpd_core::search::{all_functors, naturally_isomorphic};
use gpd_core::subgroupoid::kernel;
use gpd_core::{analyze_functor, standard, Functor, FunctorProfile};

fn implies(a: bool, b: bool) -> bool {
    !a || b
}

fn triples() -> Vec<(FunctorProfile, FunctorProfile, FunctorProfile, Functor, Functor)> {
    let fs = functors(3);
    composable(&fs, 4)
        .into_iter()
        .map(|(f, g)| {
            let h = g.after(&f).unwrap();
            (analyze_functor(&f), analyze_functor(&g), analyze_functor(&h), f, g)
        })
        .collect()
}

#[test]
fn faithfulness_and_inductors_under_composition() {
    let ts = triples();
    assert!(ts.len() > 500);
    for (f, g, h, ..) in &ts {
        assert!(implies(f.i_faithful && g.i_faithful, h.i_faithful));
        assert!(implies(f.inductor && g.inductor, h.inductor));
        assert!(implies(h.i_faithful, f.i_faithful));
        if f.s_functor && f.inductor {
            assert!(implies(h.i_faithful, g.i_faithful));
            assert!(implies(h.inductor, g.inductor));
        }
        if g.inductor {
            assert_eq!(f.s_full, h.s_full);
            assert_eq!(f.inductor, h.inductor);
        }
    }
}

#[test]
fn s_extensors_under_composition() {
    for (f, g, h, ..) in &triples() {
        assert!(implies(f.s_extensor && g.s_extensor, h.s_extensor));
        if g.s_equivalence && f.surjective_objector {
            assert!(implies(h.s_extensor, f.s_extensor));
            assert!(implies(h.s_equivalence, f.s_equivalence));
        }
        if f.s_extensor {
            assert!(implies(h.s_extensor, g.s_extensor));
            assert!(implies(h.s_equivalence, g.s_equivalence));
        }
    }
}

#[test]
fn equivalences_under_composition() {
    for (f, g, h, ..) in &triples() {
        assert!(implies(f.equivalence && g.equivalence, h.equivalence));
        assert!(implies(f.essentially_surjective && g.essentially_surjective, h.essentially_surjective));
        if g.equivalence {
            assert!(implies(h.essentially_surjective, f.essentially_surjective));
            assert!(implies(h.equivalence, f.equivalence));
        }
        if f.surjective_objector {
            assert!(implies(h.essentially_surjective, g.essentially_surjective));
        }
        if f.s_extensor && h.equivalence {
            assert!(g.equivalence && f.s_equivalence);
        }
    }
}

#[test]
fn actors_under_composition() {
    for (f, g, h, ..) in &triples() {
        assert!(implies(f.actor && g.actor, h.actor));
        assert!(implies(f.exactor && g.exactor, h.exactor));
        assert!(implies(f.inactor && g.inactor, h.inactor));
        if g.actor {
            assert!(implies(h.actor, f.actor));
            assert!(implies(h.exactor, f.exactor));
        }
        if f.s_exactor() {
            assert!(implies(h.actor, g.actor));
            assert!(implies(h.exactor, g.exactor));
        }
        assert!(implies(h.inactor, f.inactor));
    }
}

#[test]
fn profiles_are_internally_consistent() {
    for f in functors(4) {
        let p = analyze_functor(&f);
        assert!(p.is_consistent(), "{f:?}");
        assert_eq!(p.inductor, p.i_faithful && p.s_full);
    }
}

#[test]
fn equivalent_actors_are_isomorphisms() {
    for f in functors(4) {
        let p = analyze_functor(&f);
        if p.equivalence && p.actor {
            assert!(f.is_isomorphism());
        }
        if p.exactor && p.inductor && p.essentially_surjective {
            assert!(p.s_equivalence);
        }
    }
}

#[test]
fn exact_inductor_missing_an_orbit() {
    // without essential surjectivity an exact inductor need not be an
    // s-equivalence
    let f = Functor::checked(
        Arc::new(standard::null(1)),
        Arc::new(standard::null(2)),
        vec![0],
        vec![0],
    )
    .unwrap();
    let p = analyze_functor(&f);
    assert!(p.exactor && p.inductor && !p.s_equivalence);
}

#[test]
fn extensor_fibres_are_double_cosets() {
    let mut seen = 0;
    for f in functors(6) {
        if !analyze_functor(&f).s_extensor {
            continue;
        }
        seen += 1;
        let n = kernel(&f);
        let k = f.dom();
        assert!(n.is_closed() && n.is_uniferous());
        for x in k.arrows() {
            let mut coset = HashSet::new();
            for a in n.arrows() {
                if k.src(a) != k.tgt(x) {
                    continue;
                }
                for b in n.arrows() {
                    if k.tgt(b) == k.src(x) {
                        coset.insert(k.compose(a, k.compose(x, b)));
                    }
                }
            }
            for y in k.arrows() {
                assert_eq!(f.arr(x) == f.arr(y), coset.contains(&y));
            }
        }
    }
    assert!(seen > 20);
}

#[test]
fn faithful_functors_reflect_principality() {
    for f in functors(6) {
        let p = analyze_functor(&f);
        let (d, c) = (f.dom().classify(), f.cod().classify());
        assert!(implies(p.i_faithful && c.principal, d.principal));
        assert!(implies(p.s_full && c.group && f.dom().object_count() > 0, d.transitive));
    }
}

#[test]
fn natural_isomorphism_preserves_flags() {
    let mut pairs = 0;
    let gs = groupoids();
    for (_, a) in &gs {
        for (_, b) in &gs {
            let fs = all_functors(a, b, guard(), 6).unwrap();
            for f in &fs {
                for g in &fs {
                    if naturally_isomorphic(f, g, guard()).unwrap().is_none() {
                        continue;
                    }
                    pairs += 1;
                    let (pf, pg) = (analyze_functor(f), analyze_functor(g));
                    assert_eq!(pf.i_faithful, pg.i_faithful);
                    assert_eq!(pf.s_full, pg.s_full);
                    assert_eq!(pf.essentially_surjective, pg.essentially_surjective);
                    assert_eq!(pf.equivalence, pg.equivalence);
                }
            }
        }
    }
    assert!(pairs > 100);
}

#[test]
fn arrow_surjectivity_is_not_invariant() {
    let p2 = Arc::new(standard::pair(2));
    let id = Functor::identity(p2.clone());
    let c = Functor::checked(p2.clone(), p2, vec![0, 0], vec![0; 4]).unwrap();
    assert!(naturally_isomorphic(&id, &c, guard()).unwrap().is_some());
    assert!(analyze_functor(&id).s_extensor && !analyze_functor(&c).s_extensor);
}

#[test]
fn exactor_factorization_is_functorial() {
    // a set map h with h ∘ f functorial, for an s-exactor f, is a functor
    for f in functors(3) {
        if !analyze_functor(&f).s_exactor() {
            continue;
        }
        for (_, t) in groupoids().iter().take(7) {
            for k in all_functors(f.dom(), t, guard(), 8).unwrap() {
                let mut arr = vec![usize::MAX; f.cod().arrow_count()];
                let mut obj = vec![usize::MAX; f.cod().object_count()];
                let mut factors = true;
                for x in f.dom().arrows() {
                    let slot = &mut arr[f.arr(x)];
                    factors &= *slot == usize::MAX || *slot == k.arr(x);
                    *slot = k.arr(x);
                }
                for x in f.dom().objects() {
                    let slot = &mut obj[f.obj(x)];
                    factors &= *slot == usize::MAX || *slot == k.obj(x);
                    *slot = k.obj(x);
                }
                if factors {
                    let h = Functor::checked(f.cod().clone(), t.clone(), obj, arr);
                    assert!(h.is_ok(), "{f:?} then {k:?}");
                }
            }
        }
    }
}

#[test]
fn class_lattice_and_principal_homs() {
    for (name, g) in groupoids() {
        assert!(g.validate().is_ok(), "{name}");
        let c = g.classify();
        assert!(c.is_consistent(), "{name}");
        assert_eq!(c.principal, g.hom_sets_at_most_singletons(), "{name}");
        assert!(implies(c.banal, c.principal && c.transitive));
        assert!(implies(c.null, c.principal));
    }
}

#[test]
fn orbits_match_reachability() {
    for (name, g) in groupoids() {
        let n = g.object_count();
        let mut reach = vec![vec![false; n]; n];
        for a in g.arrows() {
            reach[g.src(a)][g.tgt(a)] = true;
        }
        let orbit = g.orbit_map();
        for x in 0..n {
            for y in 0..n {
                assert_eq!(reach[x][y], orbit.apply(x) == orbit.apply(y), "{name}");
            }
        }
    }
}

#[test]
fn principal_and_transitive_via_morita() {
    for (name, g) in groupoids() {
        let c = g.classify();
        let orbits = g.orbits().len();
        let null = Arc::new(standard::null(orbits));
        let rep = morita_equivalent(&g, &null, guard()).unwrap();
        assert!(rep.consistent());
        assert_eq!(c.principal, rep.equivalent(), "{name}");
        let info = g.orbits_and_vertex_groups();
        let vertex = Arc::new(info[0].vertex_group.clone());
        let rep = morita_equivalent(&g, &vertex, guard()).unwrap();
        assert!(rep.consistent());
        assert_eq!(c.transitive, rep.equivalent(), "{name}");
    }
}
