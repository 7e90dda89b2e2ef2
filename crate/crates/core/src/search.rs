//! Exhaustive, deterministic searches for functors.
//!
//! A functor out of a groupoid is fixed by where it sends, per connected
//! component, a root object, one spanning-tree arrow `θ_b: root → b` per
//! other object, and a generating set of the vertex group at the root. The
//! search enumerates exactly those choices (in increasing id order), checks
//! that the generator images extend to a homomorphism, and fills in the rest
//! by `x ↦ F(θ_c) · φ(θ_c⁻¹ x θ_b) · F(θ_b)⁻¹`.

use std::collections::HashMap;
use std::ops::ControlFlow;
use std::sync::Arc;

use crate::error::{Result, SizeGuard};
use crate::functor::{Functor, NatTransformation};
use crate::groupoid::FiniteGroupoid;

/// Spanning data of one connected component.
#[derive(Debug, Clone)]
pub(crate) struct Component {
    pub root: usize,
    /// `(b, θ_b)` for every non-root object, in BFS order.
    pub tree: Vec<(usize, usize)>,
    pub generators: Vec<usize>,
    pub arrows: Vec<usize>,
}

#[derive(Debug, Clone)]
pub(crate) struct Spanning {
    pub components: Vec<Component>,
    /// `θ_b` for every object (the unit for roots).
    pub theta: Vec<usize>,
}

impl Spanning {
    pub fn new(g: &FiniteGroupoid) -> Self {
        let n = g.object_count();
        let mut theta = vec![usize::MAX; n];
        let mut comp_of = vec![usize::MAX; n];
        let mut components = Vec::new();
        for root in g.objects() {
            if theta[root] != usize::MAX {
                continue;
            }
            let ci = components.len();
            theta[root] = g.unit(root);
            comp_of[root] = ci;
            let mut objects = vec![root];
            let mut tree = Vec::new();
            let mut i = 0;
            while i < objects.len() {
                let x = objects[i];
                i += 1;
                for &a in g.arrows_from(x) {
                    let y = g.tgt(a);
                    if theta[y] == usize::MAX {
                        theta[y] = g.compose(a, theta[x]);
                        comp_of[y] = ci;
                        objects.push(y);
                        tree.push((y, theta[y]));
                    }
                }
            }
            let generators = generators_of(g, root);
            components.push(Component {
                root,
                tree,
                generators,
                arrows: Vec::new(),
            });
        }
        for a in g.arrows() {
            components[comp_of[g.src(a)]].arrows.push(a);
        }
        Spanning { components, theta }
    }
}

/// Greedy generating set of the vertex group at `x`, in increasing id order.
pub(crate) fn generators_of(g: &FiniteGroupoid, x: usize) -> Vec<usize> {
    let elems = g.hom(x, x);
    let mut gens = Vec::new();
    let mut inside = std::collections::HashSet::new();
    inside.insert(g.unit(x));
    for &e in elems {
        if inside.contains(&e) {
            continue;
        }
        gens.push(e);
        // regenerate the subgroup
        let mut queue: Vec<usize> = vec![g.unit(x)];
        inside.clear();
        inside.insert(g.unit(x));
        let mut i = 0;
        while i < queue.len() {
            let a = queue[i];
            i += 1;
            for &s in &gens {
                let b = g.compose(s, a);
                if inside.insert(b) {
                    queue.push(b);
                }
            }
        }
    }
    gens
}

/// Extends generator images to a homomorphism of vertex groups, or `None`
/// if the assignment does not respect the relations.
fn extend_hom(
    g: &FiniteGroupoid,
    h: &FiniteGroupoid,
    root: usize,
    root_img: usize,
    gens: &[usize],
    imgs: &[usize],
) -> Option<HashMap<usize, usize>> {
    let mut map = HashMap::new();
    map.insert(g.unit(root), h.unit(root_img));
    let mut queue = vec![g.unit(root)];
    let mut i = 0;
    while i < queue.len() {
        let e = queue[i];
        i += 1;
        let ie = map[&e];
        for (&s, &t) in gens.iter().zip(imgs) {
            let e2 = g.compose(s, e);
            let i2 = h.compose(t, ie);
            match map.get(&e2) {
                Some(&prev) if prev != i2 => return None,
                Some(_) => {}
                None => {
                    map.insert(e2, i2);
                    queue.push(e2);
                }
            }
        }
    }
    Some(map)
}

/// Constraints on a functor search. `object_ok(x, y)` / `arrow_ok(a, b)`
/// decide whether `x ↦ y` / `a ↦ b` is admissible; `injective` restricts to
/// injective functors.
pub struct SearchSpec<'a> {
    pub object_ok: &'a dyn Fn(usize, usize) -> bool,
    pub arrow_ok: &'a dyn Fn(usize, usize) -> bool,
    pub injective: bool,
}

impl SearchSpec<'_> {
    pub fn unconstrained() -> SearchSpec<'static> {
        SearchSpec {
            object_ok: &|_, _| true,
            arrow_ok: &|_, _| true,
            injective: false,
        }
    }
}

struct Searcher<'a, 'v> {
    g: &'a FiniteGroupoid,
    h: &'a FiniteGroupoid,
    span: Spanning,
    spec: &'a SearchSpec<'a>,
    obj: Vec<usize>,
    arr: Vec<usize>,
    theta_img: Vec<usize>,
    used_obj: Vec<bool>,
    visit: &'v mut dyn FnMut(&[usize], &[usize]) -> ControlFlow<()>,
}

impl Searcher<'_, '_> {
    fn component(&mut self, ci: usize) -> ControlFlow<()> {
        if ci == self.span.components.len() {
            return (self.visit)(&self.obj, &self.arr);
        }
        let root = self.span.components[ci].root;
        for r in self.h.objects() {
            if !(self.spec.object_ok)(root, r) || (self.spec.injective && self.used_obj[r]) {
                continue;
            }
            let unit_ok = (self.spec.arrow_ok)(self.g.unit(root), self.h.unit(r));
            if !unit_ok {
                continue;
            }
            self.obj[root] = r;
            self.used_obj[r] = true;
            self.theta_img[root] = self.h.unit(r);
            let flow = self.tree(ci, 0);
            self.used_obj[r] = false;
            self.obj[root] = usize::MAX;
            flow?;
        }
        ControlFlow::Continue(())
    }

    fn tree(&mut self, ci: usize, ti: usize) -> ControlFlow<()> {
        let comp = &self.span.components[ci];
        if ti == comp.tree.len() {
            let k = comp.generators.len();
            let mut imgs = Vec::with_capacity(k);
            return self.gens(ci, &mut imgs);
        }
        let (b, theta) = comp.tree[ti];
        let r = self.obj[comp.root];
        let choices: Vec<usize> = self.h.arrows_from(r).to_vec();
        for t in choices {
            let b2 = self.h.tgt(t);
            if !(self.spec.object_ok)(b, b2) || (self.spec.injective && self.used_obj[b2]) {
                continue;
            }
            if !(self.spec.arrow_ok)(theta, t) {
                continue;
            }
            self.obj[b] = b2;
            self.used_obj[b2] = true;
            self.theta_img[b] = t;
            let flow = self.tree(ci, ti + 1);
            self.used_obj[b2] = false;
            self.obj[b] = usize::MAX;
            flow?;
        }
        ControlFlow::Continue(())
    }

    fn gens(&mut self, ci: usize, imgs: &mut Vec<usize>) -> ControlFlow<()> {
        let comp = &self.span.components[ci];
        let r = self.obj[comp.root];
        if imgs.len() == comp.generators.len() {
            return self.finish(ci, imgs);
        }
        let gen = comp.generators[imgs.len()];
        let choices: Vec<usize> = self.h.hom(r, r).to_vec();
        for t in choices {
            if !(self.spec.arrow_ok)(gen, t) {
                continue;
            }
            imgs.push(t);
            let flow = self.gens(ci, imgs);
            imgs.pop();
            flow?;
        }
        ControlFlow::Continue(())
    }

    fn finish(&mut self, ci: usize, imgs: &[usize]) -> ControlFlow<()> {
        let (g, h) = (self.g, self.h);
        let comp = &self.span.components[ci];
        let r = self.obj[comp.root];
        let Some(phi) = extend_hom(g, h, comp.root, r, &comp.generators, imgs) else {
            return ControlFlow::Continue(());
        };
        if self.spec.injective {
            let mut seen = std::collections::HashSet::new();
            if !phi.values().all(|v| seen.insert(*v)) {
                return ControlFlow::Continue(());
            }
        }
        let arrows = comp.arrows.clone();
        for &x in &arrows {
            let (b, c) = (g.src(x), g.tgt(x));
            let v = g.compose(g.inv(self.span.theta[c]), g.compose(x, self.span.theta[b]));
            let tb = self.theta_img[b];
            let tc = self.theta_img[c];
            let y = h.compose(tc, h.compose(phi[&v], h.inv(tb)));
            if !(self.spec.arrow_ok)(x, y) {
                for &z in &arrows {
                    self.arr[z] = usize::MAX;
                }
                return ControlFlow::Continue(());
            }
            self.arr[x] = y;
        }
        let flow = self.component(ci + 1);
        for &z in &arrows {
            self.arr[z] = usize::MAX;
        }
        flow
    }
}

/// Runs the search and calls `visit(object_images, arrow_images)` for every
/// admissible functor until it returns `Break`.
pub fn search_functors(
    dom: &FiniteGroupoid,
    cod: &FiniteGroupoid,
    spec: &SearchSpec<'_>,
    visit: &mut dyn FnMut(&[usize], &[usize]) -> ControlFlow<()>,
) {
    if dom.object_count() > 0 && cod.object_count() == 0 {
        return;
    }
    let mut s = Searcher {
        g: dom,
        h: cod,
        span: Spanning::new(dom),
        spec,
        obj: vec![usize::MAX; dom.object_count()],
        arr: vec![usize::MAX; dom.arrow_count()],
        theta_img: vec![usize::MAX; dom.object_count()],
        used_obj: vec![false; cod.object_count()],
        visit,
    };
    let _ = s.component(0);
}

/// First admissible functor in search order.
pub fn find_functor(
    dom: &Arc<FiniteGroupoid>,
    cod: &Arc<FiniteGroupoid>,
    spec: &SearchSpec<'_>,
) -> Option<Functor> {
    let mut found = None;
    search_functors(dom, cod, spec, &mut |o, a| {
        found = Some((o.to_vec(), a.to_vec()));
        ControlFlow::Break(())
    });
    found.map(|(o, a)| Functor::from_parts(dom.clone(), cod.clone(), o, a))
}

/// Calls `visit` on every functor `dom → cod`, in search order.
pub fn for_each_functor(
    dom: &Arc<FiniteGroupoid>,
    cod: &Arc<FiniteGroupoid>,
    guard: SizeGuard,
    visit: &mut dyn FnMut(Functor) -> ControlFlow<()>,
) -> Result<()> {
    guard.check("functor search domain", dom.arrow_count())?;
    guard.check("functor search codomain", cod.arrow_count())?;
    search_functors(dom, cod, &SearchSpec::unconstrained(), &mut |o, a| {
        visit(Functor::from_parts(dom.clone(), cod.clone(), o.to_vec(), a.to_vec()))
    });
    Ok(())
}

/// All functors `dom → cod`, at most `limit` of them.
pub fn all_functors(
    dom: &Arc<FiniteGroupoid>,
    cod: &Arc<FiniteGroupoid>,
    guard: SizeGuard,
    limit: usize,
) -> Result<Vec<Functor>> {
    let mut out = Vec::new();
    for_each_functor(dom, cod, guard, &mut |f| {
        out.push(f);
        if out.len() >= limit {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })?;
    Ok(out)
}

/// Cheap isomorphism invariant: per component, (objects, vertex group
/// order, sorted element orders), sorted.
fn iso_invariant(g: &FiniteGroupoid) -> Vec<(usize, usize, Vec<usize>)> {
    let mut out: Vec<_> = g
        .orbits()
        .into_iter()
        .map(|orbit| {
            let x = orbit[0];
            let mut orders: Vec<usize> = g
                .hom(x, x)
                .iter()
                .map(|&a| {
                    let mut k = 1;
                    let mut p = a;
                    while p != g.unit(x) {
                        p = g.compose(a, p);
                        k += 1;
                    }
                    k
                })
                .collect();
            orders.sort_unstable();
            (orbit.len(), orders.len(), orders)
        })
        .collect();
    out.sort();
    out
}

/// An invertible functor `g → h`, if one exists.
pub fn find_isomorphism(
    g: &Arc<FiniteGroupoid>,
    h: &Arc<FiniteGroupoid>,
    guard: SizeGuard,
) -> Result<Option<Functor>> {
    guard.check("isomorphism search source", g.arrow_count())?;
    guard.check("isomorphism search target", h.arrow_count())?;
    Ok(find_isomorphism_with(g, h, &|_, _| true, &|_, _| true))
}

/// Isomorphism search with extra admissibility constraints. Not capped;
/// callers supply strong constraints.
pub(crate) fn find_isomorphism_with(
    g: &Arc<FiniteGroupoid>,
    h: &Arc<FiniteGroupoid>,
    object_ok: &dyn Fn(usize, usize) -> bool,
    arrow_ok: &dyn Fn(usize, usize) -> bool,
) -> Option<Functor> {
    if g.object_count() != h.object_count() || g.arrow_count() != h.arrow_count() {
        return None;
    }
    if iso_invariant(g) != iso_invariant(h) {
        return None;
    }
    let spec = SearchSpec {
        object_ok,
        arrow_ok,
        injective: true,
    };
    find_functor(g, h, &spec)
}

/// An isomorphism `φ: dom a → dom b` with `b ∘ φ = a`, for two functors
/// into the same groupoid.
pub fn isomorphism_over(a: &Functor, b: &Functor) -> Option<Functor> {
    if !crate::functor::same_groupoid(a.cod(), b.cod()) {
        return None;
    }
    find_isomorphism_with(
        a.dom(),
        b.dom(),
        &|x, y| a.obj(x) == b.obj(y),
        &|x, y| a.arr(x) == b.arr(y),
    )
}

/// A section `s` of `f` (`f ∘ s = id`), if any.
pub fn find_section(f: &Functor, guard: SizeGuard) -> Result<Option<Functor>> {
    guard.check("section search", f.cod().arrow_count().max(f.dom().arrow_count()))?;
    Ok(find_section_unbounded(f))
}

pub(crate) fn find_section_unbounded(f: &Functor) -> Option<Functor> {
    let spec = SearchSpec {
        object_ok: &|b, x| f.obj(x) == b,
        arrow_ok: &|a, x| f.arr(x) == a,
        injective: false,
    };
    find_functor(f.cod(), f.dom(), &spec)
}

/// A natural isomorphism `f ⇒ g`, if any. Components are chosen per
/// connected component of the domain: the root component is searched in
/// increasing id order and the others are forced by naturality along the
/// spanning tree.
pub fn naturally_isomorphic(
    f: &Functor,
    g: &Functor,
    guard: SizeGuard,
) -> Result<Option<NatTransformation>> {
    guard.check("natural isomorphism search", f.dom().arrow_count().max(f.cod().arrow_count()))?;
    Ok(naturally_isomorphic_unbounded(f, g))
}

pub(crate) fn naturally_isomorphic_unbounded(f: &Functor, g: &Functor) -> Option<NatTransformation> {
    if !crate::functor::same_groupoid(f.dom(), g.dom()) || !crate::functor::same_groupoid(f.cod(), g.cod()) {
        return None;
    }
    let d = &**f.dom();
    let h = &**f.cod();
    let span = Spanning::new(d);
    let mut t = vec![usize::MAX; d.object_count()];
    for comp in &span.components {
        let root = comp.root;
        let mut ok = false;
        for &t0 in h.hom(f.obj(root), g.obj(root)) {
            t[root] = t0;
            for &(b, theta) in &comp.tree {
                t[b] = h.compose(g.arr(theta), h.compose(t0, h.inv(f.arr(theta))));
            }
            if comp.arrows.iter().all(|&a| {
                h.compose(t[d.tgt(a)], f.arr(a)) == h.compose(g.arr(a), t[d.src(a)])
            }) {
                ok = true;
                break;
            }
        }
        if !ok {
            return None;
        }
    }
    Some(NatTransformation {
        source: f.clone(),
        target: g.clone(),
        components: t,
    })
}
