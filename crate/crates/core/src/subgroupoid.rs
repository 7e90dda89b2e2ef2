//! Embedded subgroupoids given by membership of arrows.

use std::sync::Arc;

use crate::error::{GpdError, Result, SizeGuard};
use crate::functor::Functor;
use crate::groupoid::FiniteGroupoid;

/// A set of arrows of `parent` closed under composition and inverses.
/// Uniferous subgroupoids contain every unit, so they share the base.
#[derive(Debug, Clone)]
pub struct Subgroupoid {
    parent: Arc<FiniteGroupoid>,
    members: Vec<bool>,
}

impl PartialEq for Subgroupoid {
    fn eq(&self, other: &Self) -> bool {
        crate::functor::same_groupoid(&self.parent, &other.parent) && self.members == other.members
    }
}

impl Subgroupoid {
    /// Checks closure under composition and inverses; units of objects touched
    /// by a member must be members.
    pub fn new(parent: Arc<FiniteGroupoid>, arrows: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut members = vec![false; parent.arrow_count()];
        for a in arrows {
            if a >= members.len() {
                return Err(GpdError::Malformed(format!("arrow {a} is not in the parent")));
            }
            members[a] = true;
        }
        let s = Subgroupoid { parent, members };
        if !s.is_closed() {
            return Err(GpdError::Malformed("arrow set is not a subgroupoid".into()));
        }
        Ok(s)
    }

    pub(crate) fn from_members(parent: Arc<FiniteGroupoid>, members: Vec<bool>) -> Self {
        Subgroupoid { parent, members }
    }

    /// The units only.
    pub fn units(parent: Arc<FiniteGroupoid>) -> Self {
        let mut members = vec![false; parent.arrow_count()];
        for x in parent.objects() {
            members[parent.unit(x)] = true;
        }
        Subgroupoid { parent, members }
    }

    /// Every arrow.
    pub fn whole(parent: Arc<FiniteGroupoid>) -> Self {
        let members = vec![true; parent.arrow_count()];
        Subgroupoid { parent, members }
    }

    pub fn parent(&self) -> &Arc<FiniteGroupoid> {
        &self.parent
    }

    #[inline]
    pub fn contains(&self, a: usize) -> bool {
        self.members[a]
    }

    pub fn arrows(&self) -> Vec<usize> {
        (0..self.members.len()).filter(|&a| self.members[a]).collect()
    }

    pub fn len(&self) -> usize {
        self.members.iter().filter(|&&m| m).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_closed(&self) -> bool {
        let g = &*self.parent;
        for a in g.arrows().filter(|&a| self.members[a]) {
            if !self.members[g.inv(a)]
                || !self.members[g.unit(g.src(a))]
                || !self.members[g.unit(g.tgt(a))]
            {
                return false;
            }
            for &b in g.arrows_to(g.src(a)) {
                if self.members[b] && !self.members[g.compose(a, b)] {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_uniferous(&self) -> bool {
        self.parent.objects().all(|x| self.members[self.parent.unit(x)])
    }

    /// At most one member arrow between any two objects.
    pub fn is_principal(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.arrows()
            .into_iter()
            .all(|a| seen.insert(self.parent.transitor(a)))
    }

    /// Units only.
    pub fn is_null(&self) -> bool {
        self.arrows().into_iter().all(|a| self.parent.is_unit(a))
    }

    pub fn intersect(&self, other: &Subgroupoid) -> Result<Subgroupoid> {
        if !crate::functor::same_groupoid(&self.parent, &other.parent) {
            return Err(GpdError::Precondition("subgroupoids of different groupoids".into()));
        }
        let members = self
            .members
            .iter()
            .zip(&other.members)
            .map(|(a, b)| *a && *b)
            .collect();
        Ok(Subgroupoid {
            parent: self.parent.clone(),
            members,
        })
    }

    /// The subgroupoid as a groupoid on the full base of the parent (arrows
    /// renumbered in increasing parent order), with its inclusion functor.
    /// Requires a uniferous subgroupoid.
    pub fn to_groupoid(&self) -> (Arc<FiniteGroupoid>, Functor) {
        let g = &*self.parent;
        let list = self.arrows();
        let mut index = vec![usize::MAX; g.arrow_count()];
        for (i, &a) in list.iter().enumerate() {
            index[a] = i;
        }
        let arrows: Vec<(usize, usize)> = list.iter().map(|&a| (g.src(a), g.tgt(a))).collect();
        let unit = g.objects().map(|x| index[g.unit(x)]).collect();
        let inv = list.iter().map(|&a| index[g.inv(a)]).collect();
        let sub = Arc::new(FiniteGroupoid::from_fn(
            g.object_count(),
            &arrows,
            unit,
            inv,
            |a, b| index[g.compose(list[a], list[b])],
        ));
        let inclusion = Functor::from_parts(
            sub.clone(),
            self.parent.clone(),
            g.objects().collect(),
            list,
        );
        (sub, inclusion)
    }

    /// Smallest subgroupoid containing `self` and `extra` (closure under
    /// composition and inverse).
    pub fn closure_with(&self, extra: &[usize]) -> Subgroupoid {
        let g = &*self.parent;
        let mut members = self.members.clone();
        let mut queue: Vec<usize> = Vec::new();
        for &a in extra {
            if !members[a] {
                members[a] = true;
                queue.push(a);
            }
        }
        let mut i = 0;
        while i < queue.len() {
            let a = queue[i];
            i += 1;
            let push = |c: usize, members: &mut Vec<bool>, queue: &mut Vec<usize>| {
                if !members[c] {
                    members[c] = true;
                    queue.push(c);
                }
            };
            push(g.inv(a), &mut members, &mut queue);
            push(g.unit(g.src(a)), &mut members, &mut queue);
            push(g.unit(g.tgt(a)), &mut members, &mut queue);
            for &b in g.arrows_to(g.src(a)) {
                if members[b] {
                    push(g.compose(a, b), &mut members, &mut queue);
                }
            }
            for &b in g.arrows_from(g.tgt(a)) {
                if members[b] {
                    push(g.compose(b, a), &mut members, &mut queue);
                }
            }
        }
        Subgroupoid {
            parent: self.parent.clone(),
            members,
        }
    }
}

/// The full subgroupoid of `g` on `objects` (kept in the given order), with
/// its inclusion functor.
pub fn full_subgroupoid(g: &Arc<FiniteGroupoid>, objects: &[usize]) -> (Arc<FiniteGroupoid>, Functor) {
    let mut local = vec![usize::MAX; g.object_count()];
    for (i, &x) in objects.iter().enumerate() {
        local[x] = i;
    }
    let mut list = Vec::new();
    for &x in objects {
        for &y in objects {
            list.extend_from_slice(g.hom(x, y));
        }
    }
    let mut index = vec![usize::MAX; g.arrow_count()];
    for (i, &a) in list.iter().enumerate() {
        index[a] = i;
    }
    let ends: Vec<(usize, usize)> = list.iter().map(|&a| (local[g.src(a)], local[g.tgt(a)])).collect();
    let unit = objects.iter().map(|&x| index[g.unit(x)]).collect();
    let inv = list.iter().map(|&a| index[g.inv(a)]).collect();
    let sub = Arc::new(FiniteGroupoid::from_fn(objects.len(), &ends, unit, inv, |a, b| {
        index[g.compose(list[a], list[b])]
    }));
    let inclusion = Functor::from_parts(sub.clone(), g.clone(), objects.to_vec(), list);
    (sub, inclusion)
}

/// Kernel of a functor: arrows sent to units.
pub fn kernel(f: &Functor) -> Subgroupoid {
    let h = &**f.cod();
    let members = f.dom().arrows().map(|a| h.is_unit(f.arr(a))).collect();
    Subgroupoid::from_members(f.dom().clone(), members)
}

/// Calls `visit` on every uniferous subgroupoid of `g`, each exactly once,
/// in a deterministic order.
pub fn for_each_uniferous_subgroupoid(
    g: &Arc<FiniteGroupoid>,
    guard: SizeGuard,
    visit: &mut dyn FnMut(&Subgroupoid) -> std::ops::ControlFlow<()>,
) -> Result<()> {
    guard.check("subgroupoid enumeration", g.arrow_count())?;
    let start = Subgroupoid::units(g.clone());
    let candidates: Vec<usize> = g.arrows().filter(|&a| !g.is_unit(a)).collect();
    let mut excluded = vec![false; g.arrow_count()];
    fn rec(
        cur: &Subgroupoid,
        candidates: &[usize],
        i: usize,
        excluded: &mut Vec<bool>,
        visit: &mut dyn FnMut(&Subgroupoid) -> std::ops::ControlFlow<()>,
    ) -> std::ops::ControlFlow<()> {
        let mut i = i;
        while i < candidates.len() && cur.contains(candidates[i]) {
            i += 1;
        }
        if i == candidates.len() {
            return visit(cur);
        }
        let a = candidates[i];
        // include a
        let with = cur.closure_with(&[a]);
        if !with.arrows().iter().any(|&b| excluded[b]) {
            rec(&with, candidates, i + 1, excluded, visit)?;
        }
        // exclude a
        excluded[a] = true;
        let flow = rec(cur, candidates, i + 1, excluded, visit);
        excluded[a] = false;
        flow
    }
    let _ = rec(&start, &candidates, 0, &mut excluded, visit);
    Ok(())
}
