//! Property flags of a functor read off its two comparison squares.
//!
//! For `f: G' → G` the square T(f) compares `G'` with the fibred product
//! `{(b', c', g) : g: f0 c' → f0 b'}` through `x ↦ (tgt x, src x, f x)`; the
//! square A(f) compares `G'` with `{(b', g) : src g = f0 b'}` through
//! `x ↦ (src x, f x)`. Injective / surjective / bijective comparison maps
//! give the i-faithful / s-full / inductor and inactor / exactor / actor
//! flags.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::functor::Functor;
use crate::search;

/// Every flag computed by [`analyze_functor`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct FunctorProfile {
    pub i_faithful: bool,
    pub s_full: bool,
    pub inductor: bool,
    /// "Essentially surmersive" in the smooth setting.
    pub essentially_surjective: bool,
    pub equivalence: bool,
    pub s_equivalence: bool,
    pub actor: bool,
    pub inactor: bool,
    pub exactor: bool,
    pub s_functor: bool,
    pub s_extensor: bool,
    pub subactor: bool,
    pub split: bool,
    /// Objector is the identity of a common base.
    pub uniferous: bool,
    /// The source groupoid is principal.
    pub principal_source: bool,
    /// Objector surjective.
    pub surjective_objector: bool,
}

impl FunctorProfile {
    /// `(flag name, value)` pairs in report order. The second name is the
    /// smooth-setting term where it differs.
    pub fn entries(&self) -> Vec<(&'static str, Option<&'static str>, bool)> {
        vec![
            ("i_faithful", None, self.i_faithful),
            ("s_full", None, self.s_full),
            ("inductor", None, self.inductor),
            ("essentially_surjective", Some("essentially surmersive"), self.essentially_surjective),
            ("equivalence", None, self.equivalence),
            ("s_equivalence", None, self.s_equivalence),
            ("actor", None, self.actor),
            ("inactor", None, self.inactor),
            ("exactor", None, self.exactor),
            ("s_functor", None, self.s_functor),
            ("s_extensor", None, self.s_extensor),
            ("subactor", None, self.subactor),
            ("split", None, self.split),
            ("uniferous", None, self.uniferous),
            ("principal_source", None, self.principal_source),
        ]
    }

    /// True flag names.
    pub fn names(&self) -> Vec<&'static str> {
        self.entries()
            .into_iter()
            .filter(|e| e.2)
            .map(|e| e.0)
            .collect()
    }

    /// s-exactor: exactor with surjective objector.
    pub fn s_exactor(&self) -> bool {
        self.exactor && self.surjective_objector
    }

    /// The definitional relations between flags.
    pub fn is_consistent(&self) -> bool {
        self.equivalence == (self.inductor && self.essentially_surjective)
            && self.s_equivalence == (self.equivalence && self.surjective_objector)
            && self.subactor == (self.exactor && self.i_faithful)
            && self.s_extensor == (self.s_full && self.s_functor)
            && (!self.actor || (self.exactor && self.inactor))
            && self.inductor == (self.i_faithful && self.s_full)
            && (!self.inactor || self.i_faithful)
            && (!self.s_extensor || self.s_exactor())
    }
}

/// Which comparison-square counts a functor yields; exposed for tests.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SquareCensus {
    pub dom_arrows: usize,
    pub t_distinct: usize,
    pub t_fibre_product: usize,
    pub a_distinct: usize,
    pub a_fibre_product: usize,
}

pub fn square_census(f: &Functor) -> SquareCensus {
    let (g, h) = (&**f.dom(), &**f.cod());
    let t_distinct = g
        .arrows()
        .map(|x| (g.tgt(x), g.src(x), f.arr(x)))
        .collect::<HashSet<_>>()
        .len();
    let mut t_fibre_product = 0;
    for b in g.objects() {
        for c in g.objects() {
            t_fibre_product += h.hom(f.obj(c), f.obj(b)).len();
        }
    }
    let a_distinct = g
        .arrows()
        .map(|x| (g.src(x), f.arr(x)))
        .collect::<HashSet<_>>()
        .len();
    let a_fibre_product = g.objects().map(|b| h.arrows_from(f.obj(b)).len()).sum();
    SquareCensus {
        dom_arrows: g.arrow_count(),
        t_distinct,
        t_fibre_product,
        a_distinct,
        a_fibre_product,
    }
}

/// Whether every object of the codomain receives an arrow from the image of
/// the objector.
pub fn essentially_surjective(f: &Functor) -> bool {
    let h = &**f.cod();
    let mut reached = vec![false; h.object_count()];
    for b in f.dom().objects() {
        for &a in h.arrows_from(f.obj(b)) {
            reached[h.tgt(a)] = true;
        }
    }
    reached.into_iter().all(|r| r)
}

/// Computes the full profile. Splitness is decided by an exhaustive section
/// search, which is heavily constrained (`f ∘ s = id`) and so not capped.
pub fn analyze_functor(f: &Functor) -> FunctorProfile {
    let c = square_census(f);
    let i_faithful = c.t_distinct == c.dom_arrows;
    let s_full = c.t_distinct == c.t_fibre_product;
    let inductor = i_faithful && s_full;
    let inactor = c.a_distinct == c.dom_arrows;
    let exactor = c.a_distinct == c.a_fibre_product;
    let actor = inactor && exactor;
    let essentially_surjective = essentially_surjective(f);
    let surjective_objector = f.objector().is_surjective();
    let equivalence = inductor && essentially_surjective;
    let s_functor = f.arrow_map().is_surjective();
    let uniferous = f.dom().object_count() == f.cod().object_count()
        && f.objector().image().iter().enumerate().all(|(x, &y)| x == y);
    FunctorProfile {
        i_faithful,
        s_full,
        inductor,
        essentially_surjective,
        equivalence,
        s_equivalence: equivalence && surjective_objector,
        actor,
        inactor,
        exactor,
        s_functor,
        s_extensor: s_full && s_functor,
        subactor: exactor && i_faithful,
        split: search::find_section_unbounded(f).is_some(),
        uniferous,
        principal_source: f.dom().classify().principal,
        surjective_objector,
    }
}
