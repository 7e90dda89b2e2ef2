//! Random s-equivalences: induced groupoids along random surjections.

mod common;

use common::{functors, groupoids, guard};
use gpd_core::build::{holograph, induce};
use gpd_core::fraction::{fraction_isomorphism, gamma, Meromorphism};
use gpd_core::{analyze_functor, SetMap};
use proptest::prelude::*;

/// Surjection onto `n` objects from `n + extra.len()` points.
fn surjection(n: usize, extra: &[usize]) -> SetMap {
    let image = (0..n).chain(extra.iter().map(|e| e % n)).collect();
    SetMap::new(n, image).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn induced_along_surjections_is_s_equivalence(
        which in 0usize..13,
        extra in prop::collection::vec(0usize..8, 0..3),
    ) {
        let (_, g) = &groupoids()[which];
        let (ind, f) = induce(g, &surjection(g.object_count(), &extra)).unwrap();
        prop_assert!(ind.validate().is_ok());
        let p = analyze_functor(&f);
        prop_assert!(p.s_equivalence && p.inductor);
        let h = holograph(&f, guard()).unwrap();
        prop_assert!(analyze_functor(&h.p).s_equivalence);
    }

    #[test]
    fn reduction_forgets_random_inflation(
        which in 0usize..200,
        extra in prop::collection::vec(0usize..8, 1..3),
    ) {
        let fs = functors(2);
        let f = &fs[which % fs.len()];
        prop_assume!(f.dom().arrow_count() * f.cod().arrow_count() <= 48);
        let m = gamma(f, guard()).unwrap();
        let apex = m.original().apex();
        let (_, k) = induce(apex, &surjection(apex.object_count(), &extra)).unwrap();
        let inflated = m.original().precompose(&k).unwrap();
        let m2 = Meromorphism::new(inflated).unwrap();
        prop_assert!(m.same_class(&m2));
        prop_assert!(fraction_isomorphism(m.reduced(), m2.reduced()).is_some());
        prop_assert!(analyze_functor(m2.projection()).s_equivalence);
    }
}
