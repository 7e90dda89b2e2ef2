//! The generated catalog the self-test suites run over.
//!
//! Groupoids: null and banal groupoids, cyclic groups up to order 4, `S3`,
//! cyclic action groupoids, unions, products and induced groupoids, all
//! with at most `max_objects` objects. Functors between every ordered pair
//! are enumerated in search order; when a pair has more than `per_pair`
//! functors among the first [`ENUMERATION_LIMIT`], `per_pair` of them are
//! drawn with a ChaCha stream keyed by the seed and the pair.

use std::ops::ControlFlow;
use std::sync::Arc;

use gpd_core::build::induce;
use gpd_core::search::for_each_functor;
use gpd_core::{standard, FiniteGroupoid, Functor, Gpd, SetMap, SizeGuard};
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Functors examined per ordered pair before sampling.
pub const ENUMERATION_LIMIT: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct CatalogConfig {
    pub max_objects: usize,
    pub seed: u64,
    pub guard: SizeGuard,
    pub per_pair: usize,
}

impl Default for CatalogConfig {
    fn default() -> Self {
        CatalogConfig {
            max_objects: 4,
            seed: 7,
            guard: SizeGuard::default(),
            per_pair: 3,
        }
    }
}

#[derive(Debug, Clone)]
pub struct NamedFunctor {
    pub name: String,
    pub dom: usize,
    pub cod: usize,
    pub functor: Functor,
}

#[derive(Debug, Clone)]
pub struct Catalog {
    pub config: CatalogConfig,
    pub groupoids: Vec<(String, Gpd)>,
    pub functors: Vec<NamedFunctor>,
}

fn arc(g: FiniteGroupoid) -> Gpd {
    Arc::new(g)
}

fn induced(g: &FiniteGroupoid, image: Vec<usize>) -> FiniteGroupoid {
    let g = arc(g.clone());
    let map = SetMap::new(g.object_count(), image).expect("catalog surjection");
    let (ind, _) = induce(&g, &map).expect("catalog induction");
    (*ind).clone()
}

/// Every catalog groupoid, before the object filter.
fn all_groupoids() -> Vec<(String, FiniteGroupoid)> {
    let z2 = standard::cyclic(2);
    let action = |k, m, gen: &[usize]| standard::action_cyclic(k, m, gen).expect("catalog action");
    let mut out: Vec<(String, FiniteGroupoid)> = Vec::new();
    for k in 1..=3 {
        out.push((format!("null{k}"), standard::null(k)));
    }
    for k in 2..=4 {
        out.push((format!("pair{k}"), standard::pair(k)));
    }
    for k in 2..=4 {
        out.push((format!("z{k}"), standard::cyclic(k)));
    }
    out.push(("s3".into(), standard::sym3()));
    out.push(("z2_on_2".into(), action(2, 2, &[1, 0])));
    out.push(("z2_on_3".into(), action(2, 3, &[1, 0, 2])));
    out.push(("z3_on_3".into(), action(3, 3, &[1, 2, 0])));
    out.push(("z4_on_4".into(), action(4, 4, &[1, 2, 3, 0])));
    out.push(("z2_on_4".into(), action(2, 4, &[1, 0, 3, 2])));
    out.push(("eq3".into(), standard::equiv_rel(3, &[vec![0, 1], vec![2]]).expect("catalog partition")));
    out.push(("z2+pair2".into(), standard::disjoint_union(&z2, &standard::pair(2))));
    out.push(("null1+z3".into(), standard::disjoint_union(&standard::null(1), &standard::cyclic(3))));
    out.push(("z2xz2".into(), standard::product(&z2, &z2)));
    out.push(("z2xpair2".into(), standard::product(&z2, &standard::pair(2))));
    out.push(("ind_z2".into(), induced(&z2, vec![0, 0])));
    out.push(("ind_z3".into(), induced(&standard::cyclic(3), vec![0, 0, 0])));
    out.push(("ind_pair2".into(), induced(&standard::pair(2), vec![0, 1, 1])));
    out
}

/// Deterministic per-pair stream.
pub fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

impl Catalog {
    pub fn generate(config: CatalogConfig) -> Catalog {
        let groupoids: Vec<(String, Gpd)> = all_groupoids()
            .into_iter()
            .filter(|(_, g)| g.object_count() <= config.max_objects)
            .map(|(n, g)| (n, arc(g)))
            .collect();
        let mut functors = Vec::new();
        let n = groupoids.len();
        for (i, (a_name, a)) in groupoids.iter().enumerate() {
            for (j, (b_name, b)) in groupoids.iter().enumerate() {
                let mut found = Vec::new();
                let refused = for_each_functor(a, b, config.guard, &mut |f| {
                    found.push(f);
                    if found.len() >= ENUMERATION_LIMIT {
                        ControlFlow::Break(())
                    } else {
                        ControlFlow::Continue(())
                    }
                })
                .is_err();
                if refused {
                    continue;
                }
                let picked: Vec<usize> = if found.len() <= config.per_pair {
                    (0..found.len()).collect()
                } else {
                    let mut rng = rng_for(config.seed, (i * n + j) as u64);
                    let mut idx = sample(&mut rng, found.len(), config.per_pair).into_vec();
                    idx.sort_unstable();
                    idx
                };
                for k in picked {
                    functors.push(NamedFunctor {
                        name: format!("{a_name}->{b_name}#{k}"),
                        dom: i,
                        cod: j,
                        functor: found[k].clone(),
                    });
                }
            }
        }
        Catalog {
            config,
            groupoids,
            functors,
        }
    }

    pub fn groupoid(&self, name: &str) -> Option<&Gpd> {
        self.groupoids.iter().find(|(n, _)| n == name).map(|(_, g)| g)
    }
}
