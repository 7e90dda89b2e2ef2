//! Functors and natural transformations between finite groupoids.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{GpdError, Result};
use crate::groupoid::FiniteGroupoid;
use crate::setmap::SetMap;

/// A functor given by its objector (object map) and arrow map.
#[derive(Clone)]
pub struct Functor {
    dom: Arc<FiniteGroupoid>,
    cod: Arc<FiniteGroupoid>,
    obj: SetMap,
    arr: SetMap,
}

impl fmt::Debug for Functor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Functor")
            .field("dom", &self.dom)
            .field("cod", &self.cod)
            .field("obj", &self.obj.image())
            .field("arr", &self.arr.image())
            .finish()
    }
}

impl PartialEq for Functor {
    fn eq(&self, other: &Self) -> bool {
        same_groupoid(&self.dom, &other.dom)
            && same_groupoid(&self.cod, &other.cod)
            && self.obj == other.obj
            && self.arr == other.arr
    }
}

impl Eq for Functor {}

pub(crate) fn same_groupoid(a: &Arc<FiniteGroupoid>, b: &Arc<FiniteGroupoid>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl Functor {
    /// Wraps maps without checking functoriality; see [`Functor::validate`].
    pub fn new(
        dom: Arc<FiniteGroupoid>,
        cod: Arc<FiniteGroupoid>,
        obj: SetMap,
        arr: SetMap,
    ) -> Result<Self> {
        if obj.domain() != dom.object_count() || obj.codomain() != cod.object_count() {
            return Err(GpdError::Malformed("object map has the wrong shape".into()));
        }
        if arr.domain() != dom.arrow_count() || arr.codomain() != cod.arrow_count() {
            return Err(GpdError::Malformed("arrow map has the wrong shape".into()));
        }
        Ok(Functor { dom, cod, obj, arr })
    }

    /// Builds and validates a functor from raw images.
    pub fn checked(
        dom: Arc<FiniteGroupoid>,
        cod: Arc<FiniteGroupoid>,
        obj: Vec<usize>,
        arr: Vec<usize>,
    ) -> Result<Self> {
        let obj = SetMap::new(cod.object_count(), obj)?;
        let arr = SetMap::new(cod.arrow_count(), arr)?;
        let f = Functor::new(dom, cod, obj, arr)?;
        let report = f.validate();
        match report.violations.first() {
            None => Ok(f),
            Some(v) => Err(GpdError::Malformed(format!("not a functor: {v}"))),
        }
    }

    pub(crate) fn from_parts(
        dom: Arc<FiniteGroupoid>,
        cod: Arc<FiniteGroupoid>,
        obj: Vec<usize>,
        arr: Vec<usize>,
    ) -> Self {
        let obj = SetMap::from_vec_unchecked(cod.object_count(), obj);
        let arr = SetMap::from_vec_unchecked(cod.arrow_count(), arr);
        debug_assert_eq!(obj.domain(), dom.object_count());
        debug_assert_eq!(arr.domain(), dom.arrow_count());
        Functor { dom, cod, obj, arr }
    }

    pub fn identity(g: Arc<FiniteGroupoid>) -> Self {
        let obj = SetMap::identity(g.object_count());
        let arr = SetMap::identity(g.arrow_count());
        Functor {
            dom: g.clone(),
            cod: g,
            obj,
            arr,
        }
    }

    /// The unique functor onto a one-object trivial groupoid, or more
    /// generally the functor sending everything to object `target` of `cod`
    /// and every arrow to its unit.
    pub fn constant(dom: Arc<FiniteGroupoid>, cod: Arc<FiniteGroupoid>, target: usize) -> Self {
        let u = cod.unit(target);
        let obj = vec![target; dom.object_count()];
        let arr = vec![u; dom.arrow_count()];
        Functor::from_parts(dom, cod, obj, arr)
    }

    /// The unit map of `g` viewed as a functor from its base (a null
    /// groupoid) into `g`.
    pub fn unit_embedding(g: Arc<FiniteGroupoid>) -> Self {
        let base = Arc::new(crate::standard::null(g.object_count()));
        let obj = (0..g.object_count()).collect();
        let arr = (0..g.object_count()).map(|x| g.unit(x)).collect();
        Functor::from_parts(base, g, obj, arr)
    }

    pub fn dom(&self) -> &Arc<FiniteGroupoid> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<FiniteGroupoid> {
        &self.cod
    }

    pub fn objector(&self) -> &SetMap {
        &self.obj
    }

    pub fn arrow_map(&self) -> &SetMap {
        &self.arr
    }

    #[inline]
    pub fn obj(&self, x: usize) -> usize {
        self.obj.apply(x)
    }

    #[inline]
    pub fn arr(&self, a: usize) -> usize {
        self.arr.apply(a)
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &Functor) -> Result<Functor> {
        if !same_groupoid(&first.cod, &self.dom) {
            return Err(GpdError::Precondition(
                "functors are not composable: codomain and domain differ".into(),
            ));
        }
        Ok(Functor {
            dom: first.dom.clone(),
            cod: self.cod.clone(),
            obj: self.obj.after(&first.obj)?,
            arr: self.arr.after(&first.arr)?,
        })
    }

    /// Inverse of an invertible functor.
    pub fn inverse(&self) -> Option<Functor> {
        let obj = self.obj.inverse()?;
        let arr = self.arr.inverse()?;
        Some(Functor {
            dom: self.cod.clone(),
            cod: self.dom.clone(),
            obj,
            arr,
        })
    }

    pub fn is_isomorphism(&self) -> bool {
        self.obj.is_bijective() && self.arr.is_bijective()
    }

    /// Same maps, with domain or codomain replaced by a structurally equal
    /// groupoid.
    pub fn rebase(&self, dom: Arc<FiniteGroupoid>, cod: Arc<FiniteGroupoid>) -> Result<Functor> {
        if *dom != *self.dom || *cod != *self.cod {
            return Err(GpdError::Precondition("rebase onto a different groupoid".into()));
        }
        Ok(Functor {
            dom,
            cod,
            obj: self.obj.clone(),
            arr: self.arr.clone(),
        })
    }

    /// Checks that the maps preserve endpoints, units, inverses and
    /// composition.
    pub fn validate(&self) -> FunctorReport {
        let (g, h) = (&*self.dom, &*self.cod);
        let mut v = Vec::new();
        for a in g.arrows() {
            let fa = self.arr(a);
            if h.src(fa) != self.obj(g.src(a)) || h.tgt(fa) != self.obj(g.tgt(a)) {
                v.push(FunctorViolation::Endpoints { arrow: a });
            }
        }
        for x in g.objects() {
            if self.arr(g.unit(x)) != h.unit(self.obj(x)) {
                v.push(FunctorViolation::Unit { object: x });
            }
        }
        if v.is_empty() {
            for a in g.arrows() {
                if self.arr(g.inv(a)) != h.inv(self.arr(a)) {
                    v.push(FunctorViolation::Inverse { arrow: a });
                }
                for &b in g.arrows_to(g.src(a)) {
                    let lhs = self.arr(g.compose(a, b));
                    let rhs = h.try_compose(self.arr(a), self.arr(b));
                    if rhs != Some(lhs) {
                        v.push(FunctorViolation::Composition {
                            a,
                            b,
                            c: g.compose(a, b),
                        });
                    }
                }
            }
        }
        FunctorReport { violations: v }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum FunctorViolation {
    Endpoints { arrow: usize },
    Unit { object: usize },
    Inverse { arrow: usize },
    Composition { a: usize, b: usize, c: usize },
}

impl fmt::Display for FunctorViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FunctorViolation::Endpoints { arrow } => {
                write!(f, "src/tgt not preserved at arrow {arrow}")
            }
            FunctorViolation::Unit { object } => write!(f, "unit not preserved at object {object}"),
            FunctorViolation::Inverse { arrow } => {
                write!(f, "inverse not preserved at arrow {arrow}")
            }
            FunctorViolation::Composition { a, b, c } => {
                write!(f, "composition not preserved: ({a}, {b}) = {c}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct FunctorReport {
    pub violations: Vec<FunctorViolation>,
}

impl FunctorReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// A natural transformation `source ⇒ target` with one component per object
/// of the common domain.
#[derive(Debug, Clone)]
pub struct NatTransformation {
    pub source: Functor,
    pub target: Functor,
    pub components: Vec<usize>,
}

impl NatTransformation {
    /// Checks component endpoints and naturality squares.
    pub fn is_valid(&self) -> bool {
        let (f, g) = (&self.source, &self.target);
        let h = f.cod();
        let d = f.dom();
        if self.components.len() != d.object_count() {
            return false;
        }
        for x in d.objects() {
            let t = self.components[x];
            if h.src(t) != f.obj(x) || h.tgt(t) != g.obj(x) {
                return false;
            }
        }
        d.arrows().all(|a| {
            let lhs = h.compose(self.components[d.tgt(a)], f.arr(a));
            let rhs = h.compose(g.arr(a), self.components[d.src(a)]);
            lhs == rhs
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::standard;

    fn swap_pair2() -> Functor {
        let p = Arc::new(standard::pair(2));
        // arrow s*2+t ↦ (1-s)*2+(1-t)
        let arr = (0..4).map(|a| (1 - a / 2) * 2 + (1 - a % 2)).collect();
        Functor::checked(p.clone(), p, vec![1, 0], arr).unwrap()
    }

    #[test]
    fn identity_and_swap_validate() {
        let p = Arc::new(standard::pair(2));
        assert!(Functor::identity(p).validate().is_ok());
        assert!(swap_pair2().validate().is_ok());
    }

    #[test]
    fn object_swap_with_identity_arrows_fails() {
        let p = Arc::new(standard::pair(2));
        let f = Functor::new(
            p.clone(),
            p,
            SetMap::new(2, vec![1, 0]).unwrap(),
            SetMap::identity(4),
        )
        .unwrap();
        let report = f.validate();
        assert!(report.violations[0].to_string().contains("src/tgt not preserved"));
    }

    #[test]
    fn composition_and_inverse() {
        let s = swap_pair2();
        let ss = s.after(&s).unwrap();
        assert_eq!(ss, Functor::identity(s.dom().clone()));
        assert_eq!(s.inverse().unwrap(), s);
    }
}
