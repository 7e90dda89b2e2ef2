//! Constructions: induced groupoids, square groupoids, holographs, strict
//! and weak fibred products, quotients by principal subgroupoids, subactor
//! decompositions and actor transfer.

use std::collections::HashMap;
use std::hash::Hash;
use std::sync::Arc;

use crate::error::{GpdError, Result, SizeGuard};
use crate::functor::{same_groupoid, Functor, NatTransformation};
use crate::groupoid::{FiniteGroupoid, OrbitalAtlas};
use crate::profile::{analyze_functor, FunctorProfile};
use crate::setmap::SetMap;
use crate::standard;
use crate::subgroupoid::{kernel, Subgroupoid};

/// Dense numbering of keys in insertion order.
#[derive(Debug, Clone)]
pub(crate) struct Index<K> {
    keys: Vec<K>,
    pos: HashMap<K, usize>,
}

impl<K: Hash + Eq + Clone> Index<K> {
    pub fn new() -> Self {
        Index {
            keys: Vec::new(),
            pos: HashMap::new(),
        }
    }

    pub fn push(&mut self, k: K) -> usize {
        if let Some(&i) = self.pos.get(&k) {
            return i;
        }
        let i = self.keys.len();
        self.pos.insert(k.clone(), i);
        self.keys.push(k);
        i
    }

    pub fn get(&self, k: &K) -> Option<usize> {
        self.pos.get(k).copied()
    }

    pub fn id(&self, k: &K) -> usize {
        self.pos[k]
    }

    pub fn key(&self, i: usize) -> &K {
        &self.keys[i]
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn keys(&self) -> &[K] {
        &self.keys
    }
}

/// Groupoid from numbered objects and arrows, with endpoint, unit, inverse
/// and composition given on keys.
pub(crate) fn assemble<O, A>(
    objects: &Index<O>,
    arrows: &Index<A>,
    ends: impl Fn(&A) -> (O, O),
    unit: impl Fn(&O) -> A,
    inv: impl Fn(&A) -> A,
    comp: impl Fn(&A, &A) -> A,
) -> FiniteGroupoid
where
    O: Hash + Eq + Clone,
    A: Hash + Eq + Clone,
{
    let ends_list: Vec<(usize, usize)> = arrows
        .keys()
        .iter()
        .map(|a| {
            let (s, t) = ends(a);
            (objects.id(&s), objects.id(&t))
        })
        .collect();
    let units = objects.keys().iter().map(|o| arrows.id(&unit(o))).collect();
    let invs = arrows.keys().iter().map(|a| arrows.id(&inv(a))).collect();
    FiniteGroupoid::from_fn(objects.len(), &ends_list, units, invs, |a, b| {
        arrows.id(&comp(arrows.key(a), arrows.key(b)))
    })
}

/// The groupoid induced by `g` along `b` (objects of the result map into
/// objects of `g`), with its canonical functor. Arrows are triples
/// `(b', x, c')` with `x: b(c') → b(b')`, running from `c'` to `b'`.
pub fn induce(g: &Arc<FiniteGroupoid>, b: &SetMap) -> Result<(Arc<FiniteGroupoid>, Functor)> {
    if b.codomain() != g.object_count() {
        return Err(GpdError::Malformed(
            "inducing map must land in the objects of the groupoid".into(),
        ));
    }
    let n = b.domain();
    let mut objects = Index::new();
    for x in 0..n {
        objects.push(x);
    }
    let mut arrows = Index::new();
    for t in 0..n {
        for s in 0..n {
            for &x in g.hom(b.apply(s), b.apply(t)) {
                arrows.push((t, x, s));
            }
        }
    }
    let induced = Arc::new(assemble(
        &objects,
        &arrows,
        |&(t, _, s)| (s, t),
        |&c| (c, g.unit(b.apply(c)), c),
        |&(t, x, s)| (s, g.inv(x), t),
        |&(t, x, _), &(_, y, s)| (t, g.compose(x, y), s),
    ));
    let arr = arrows.keys().iter().map(|&(_, x, _)| x).collect();
    let f = Functor::from_parts(induced.clone(), g.clone(), b.image().to_vec(), arr);
    Ok((induced, f))
}

/// Refinement of an orbital atlas along a surjection `u` onto its base.
pub fn refine_atlas(atlas: &OrbitalAtlas, u: &SetMap) -> Result<OrbitalAtlas> {
    if !u.is_surjective() {
        return Err(GpdError::Precondition("refining map is not surjective".into()));
    }
    let (induced, _) = induce(&atlas.groupoid, u)?;
    let quotient = atlas.quotient.after(u)?;
    OrbitalAtlas::new(induced, quotient)
}

/// A commutative square of a groupoid read as an arrow of its square
/// groupoid: from the object `from` to the object `to`, with source side `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Square {
    pub from: usize,
    pub k: usize,
    pub to: usize,
}

/// The square groupoid: objects are arrows of `base`, arrows are commuting
/// squares `to ∘ k = l ∘ from` composed horizontally.
#[derive(Debug, Clone)]
pub struct SquareGroupoid {
    pub base: Arc<FiniteGroupoid>,
    pub groupoid: Arc<FiniteGroupoid>,
    /// Target side projection (square ↦ `l`, object `g` ↦ `tgt g`).
    pub varpi1: Functor,
    /// Source side projection (square ↦ `k`, object `g` ↦ `src g`).
    pub varpi2: Functor,
    /// `a ↦` the square from the unit at `src a` to the unit at `tgt a`.
    pub iota: Functor,
    squares: Index<Square>,
}

impl SquareGroupoid {
    pub fn square(&self, i: usize) -> Square {
        *self.squares.key(i)
    }

    pub fn square_id(&self, s: &Square) -> Option<usize> {
        self.squares.get(s)
    }

    /// The target side `l` of square `i`.
    pub fn l(&self, i: usize) -> usize {
        self.varpi1.arr(i)
    }
}

/// Number of commuting squares of `g`, counted without building them.
pub fn square_count(g: &FiniteGroupoid) -> usize {
    g.arrows()
        .map(|k| g.arrows_from(g.src(k)).len() * g.arrows_from(g.tgt(k)).len())
        .sum()
}

pub fn square_groupoid(g: &Arc<FiniteGroupoid>, guard: SizeGuard) -> Result<SquareGroupoid> {
    guard.check_construction("square groupoid", square_count(g))?;
    let mut objects = Index::new();
    for a in g.arrows() {
        objects.push(a);
    }
    let mut squares = Index::new();
    for from in g.arrows() {
        for &k in g.arrows_from(g.src(from)) {
            for &to in g.arrows_from(g.tgt(k)) {
                squares.push(Square { from, k, to });
            }
        }
    }
    let sq = Arc::new(assemble(
        &objects,
        &squares,
        |s| (s.from, s.to),
        |&x| Square {
            from: x,
            k: g.unit(g.src(x)),
            to: x,
        },
        |s| Square {
            from: s.to,
            k: g.inv(s.k),
            to: s.from,
        },
        |s2, s1| Square {
            from: s1.from,
            k: g.compose(s2.k, s1.k),
            to: s2.to,
        },
    ));
    let l_of = |s: &Square| g.compose(s.to, g.compose(s.k, g.inv(s.from)));
    let varpi1 = Functor::from_parts(
        sq.clone(),
        g.clone(),
        g.arrows().map(|x| g.tgt(x)).collect(),
        squares.keys().iter().map(l_of).collect(),
    );
    let varpi2 = Functor::from_parts(
        sq.clone(),
        g.clone(),
        g.arrows().map(|x| g.src(x)).collect(),
        squares.keys().iter().map(|s| s.k).collect(),
    );
    let iota = Functor::from_parts(
        g.clone(),
        sq.clone(),
        g.objects().map(|x| g.unit(x)).collect(),
        g.arrows()
            .map(|a| {
                squares.id(&Square {
                    from: g.unit(g.src(a)),
                    k: a,
                    to: g.unit(g.tgt(a)),
                })
            })
            .collect(),
    );
    Ok(SquareGroupoid {
        base: g.clone(),
        groupoid: sq,
        varpi1,
        varpi2,
        iota,
        squares,
    })
}

/// The holograph `(p, q)` of `f: H → G`: the pullback of `f` along the
/// source projection of the square groupoid of `G`.
#[derive(Debug, Clone)]
pub struct Holograph {
    pub f: Functor,
    pub squares: SquareGroupoid,
    pub apex: Arc<FiniteGroupoid>,
    /// Numerator `K → G`, the target side of the square.
    pub p: Functor,
    /// Denominator `K → H`, the first projection.
    pub q: Functor,
    /// `h ↦ (h, ι(f h))`.
    pub section: Functor,
    /// `f ∘ q ⇒ p`, with component `g` at the object `(y, g)`.
    pub iso: NatTransformation,
}

pub fn holograph(f: &Functor, guard: SizeGuard) -> Result<Holograph> {
    let h = f.dom();
    let g = f.cod();
    let sq = square_groupoid(g, guard)?;
    let mut objects = Index::new();
    for y in h.objects() {
        for &a in g.arrows_from(f.obj(y)) {
            objects.push((y, a));
        }
    }
    let mut arrows = Index::new();
    for x in h.arrows() {
        let k = f.arr(x);
        for &from in g.arrows_from(g.src(k)) {
            for &to in g.arrows_from(g.tgt(k)) {
                let s = sq.square_id(&Square { from, k, to }).expect("square exists");
                arrows.push((x, s));
            }
        }
    }
    guard.check_construction("holograph apex", arrows.len())?;
    let sg = &sq.groupoid;
    let apex = Arc::new(assemble(
        &objects,
        &arrows,
        |&(x, s)| {
            let sq_ = sq.square(s);
            ((h.src(x), sq_.from), (h.tgt(x), sq_.to))
        },
        |&(y, a)| (h.unit(y), sg.unit(a)),
        |&(x, s)| (h.inv(x), sg.inv(s)),
        |&(x2, s2), &(x1, s1)| (h.compose(x2, x1), sg.compose(s2, s1)),
    ));
    let q = Functor::from_parts(
        apex.clone(),
        h.clone(),
        objects.keys().iter().map(|&(y, _)| y).collect(),
        arrows.keys().iter().map(|&(x, _)| x).collect(),
    );
    let p = Functor::from_parts(
        apex.clone(),
        g.clone(),
        objects.keys().iter().map(|&(_, a)| g.tgt(a)).collect(),
        arrows.keys().iter().map(|&(_, s)| sq.l(s)).collect(),
    );
    let section = Functor::from_parts(
        h.clone(),
        apex.clone(),
        h.objects().map(|y| objects.id(&(y, g.unit(f.obj(y))))).collect(),
        h.arrows()
            .map(|x| arrows.id(&(x, sq.iota.arr(f.arr(x)))))
            .collect(),
    );
    let iso = NatTransformation {
        source: f.after(&q)?,
        target: p.clone(),
        components: objects.keys().iter().map(|&(_, a)| a).collect(),
    };
    Ok(Holograph {
        f: f.clone(),
        squares: sq,
        apex,
        p,
        q,
        section,
        iso,
    })
}

/// The groupoid of same-source pairs of arrows of `g` (objects: arrows of
/// `g`; one arrow `y → x` for each pair with `src x = src y`), with the
/// divisor `(x, y) ↦ x y⁻¹` into `g` and the common-source projection onto
/// the base of `g` as a null groupoid.
pub fn divisor_fraction(g: &Arc<FiniteGroupoid>) -> (Arc<FiniteGroupoid>, Functor, Functor) {
    let mut objects = Index::new();
    for a in g.arrows() {
        objects.push(a);
    }
    let mut arrows = Index::new();
    for x in g.arrows() {
        for &y in g.arrows_from(g.src(x)) {
            arrows.push((x, y));
        }
    }
    let delta_g = Arc::new(assemble(
        &objects,
        &arrows,
        |&(x, y)| (y, x),
        |&y| (y, y),
        |&(x, y)| (y, x),
        |&(x, _), &(_, z)| (x, z),
    ));
    let delta = Functor::from_parts(
        delta_g.clone(),
        g.clone(),
        g.arrows().map(|a| g.tgt(a)).collect(),
        arrows.keys().iter().map(|&(x, y)| g.divide(x, y)).collect(),
    );
    let base = Arc::new(standard::null(g.object_count()));
    let w = Functor::from_parts(
        delta_g.clone(),
        base,
        g.arrows().map(|a| g.src(a)).collect(),
        arrows.keys().iter().map(|&(x, _)| g.src(x)).collect(),
    );
    (delta_g, delta, w)
}

/// Strict fibred product of `g: G' → G` and `u: H → G`.
#[derive(Debug, Clone)]
pub struct FibredProduct {
    pub groupoid: Arc<FiniteGroupoid>,
    /// Projection onto `G'`, the domain of the first functor.
    pub left: Functor,
    /// Projection onto `H`, the domain of the second functor.
    pub right: Functor,
    objects: Index<(usize, usize)>,
    arrows: Index<(usize, usize)>,
}

impl FibredProduct {
    pub fn object_of(&self, x: usize, y: usize) -> Option<usize> {
        self.objects.get(&(x, y))
    }

    pub fn arrow_of(&self, a: usize, b: usize) -> Option<usize> {
        self.arrows.get(&(a, b))
    }

    /// The functor `P → self` induced by a commuting pair `(l, r)`.
    pub fn pairing(&self, l: &Functor, r: &Functor) -> Result<Functor> {
        let d = l.dom();
        if !same_groupoid(d, r.dom()) {
            return Err(GpdError::Precondition("pairing of functors with different domains".into()));
        }
        let obj = d
            .objects()
            .map(|x| self.object_of(l.obj(x), r.obj(x)))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| GpdError::Precondition("pair does not commute on objects".into()))?;
        let arr = d
            .arrows()
            .map(|a| self.arrow_of(l.arr(a), r.arr(a)))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| GpdError::Precondition("pair does not commute on arrows".into()))?;
        Ok(Functor::from_parts(d.clone(), self.groupoid.clone(), obj, arr))
    }
}

pub fn fibred_product(g: &Functor, u: &Functor) -> Result<FibredProduct> {
    if !same_groupoid(g.cod(), u.cod()) {
        return Err(GpdError::Precondition("fibred product over different groupoids".into()));
    }
    let (gp, hh) = (g.dom(), u.dom());
    let mut u_obj: HashMap<usize, Vec<usize>> = HashMap::new();
    for y in hh.objects() {
        u_obj.entry(u.obj(y)).or_default().push(y);
    }
    let mut u_arr: HashMap<usize, Vec<usize>> = HashMap::new();
    for b in hh.arrows() {
        u_arr.entry(u.arr(b)).or_default().push(b);
    }
    let mut objects = Index::new();
    for x in gp.objects() {
        for &y in u_obj.get(&g.obj(x)).map(|v| v.as_slice()).unwrap_or(&[]) {
            objects.push((x, y));
        }
    }
    let mut arrows = Index::new();
    for a in gp.arrows() {
        for &b in u_arr.get(&g.arr(a)).map(|v| v.as_slice()).unwrap_or(&[]) {
            arrows.push((a, b));
        }
    }
    let groupoid = Arc::new(assemble(
        &objects,
        &arrows,
        |&(a, b)| ((gp.src(a), hh.src(b)), (gp.tgt(a), hh.tgt(b))),
        |&(x, y)| (gp.unit(x), hh.unit(y)),
        |&(a, b)| (gp.inv(a), hh.inv(b)),
        |&(a2, b2), &(a1, b1)| (gp.compose(a2, a1), hh.compose(b2, b1)),
    ));
    let left = Functor::from_parts(
        groupoid.clone(),
        gp.clone(),
        objects.keys().iter().map(|p| p.0).collect(),
        arrows.keys().iter().map(|p| p.0).collect(),
    );
    let right = Functor::from_parts(
        groupoid.clone(),
        hh.clone(),
        objects.keys().iter().map(|p| p.1).collect(),
        arrows.keys().iter().map(|p| p.1).collect(),
    );
    Ok(FibredProduct {
        groupoid,
        left,
        right,
        objects,
        arrows,
    })
}

/// Weak fibred product of `g: G' → G` and `u: H → G`: objects are triples
/// `(x', c, y)` with `c: g x' → u y`, arrows are pairs `(a', b)` carried
/// with the source connecting arrow.
#[derive(Debug, Clone)]
pub struct WeakPullback {
    pub groupoid: Arc<FiniteGroupoid>,
    pub left: Functor,
    pub right: Functor,
    pub strict: FibredProduct,
    /// `(x', y) ↦ (x', unit, y)` from the strict product.
    pub comparison: Functor,
}

pub fn weak_pullback(g: &Functor, u: &Functor, guard: SizeGuard) -> Result<WeakPullback> {
    let strict = fibred_product(g, u)?;
    let (gp, hh, base) = (g.dom(), u.dom(), g.cod());
    let size: usize = gp
        .arrows()
        .map(|a| {
            hh.arrows()
                .map(|b| base.hom(g.obj(gp.src(a)), u.obj(hh.src(b))).len())
                .sum::<usize>()
        })
        .sum();
    guard.check_construction("weak fibred product", size)?;
    let mut objects = Index::new();
    for x in gp.objects() {
        for y in hh.objects() {
            for &c in base.hom(g.obj(x), u.obj(y)) {
                objects.push((x, c, y));
            }
        }
    }
    let mut arrows = Index::new();
    for a in gp.arrows() {
        for b in hh.arrows() {
            for &c in base.hom(g.obj(gp.src(a)), u.obj(hh.src(b))) {
                arrows.push((a, c, b));
            }
        }
    }
    let moved = |a: usize, c: usize, b: usize| base.compose(u.arr(b), base.compose(c, base.inv(g.arr(a))));
    let groupoid = Arc::new(assemble(
        &objects,
        &arrows,
        |&(a, c, b)| ((gp.src(a), c, hh.src(b)), (gp.tgt(a), moved(a, c, b), hh.tgt(b))),
        |&(x, c, y)| (gp.unit(x), c, hh.unit(y)),
        |&(a, c, b)| (gp.inv(a), moved(a, c, b), hh.inv(b)),
        |&(a2, _, b2), &(a1, c1, b1)| (gp.compose(a2, a1), c1, hh.compose(b2, b1)),
    ));
    let left = Functor::from_parts(
        groupoid.clone(),
        gp.clone(),
        objects.keys().iter().map(|t| t.0).collect(),
        arrows.keys().iter().map(|t| t.0).collect(),
    );
    let right = Functor::from_parts(
        groupoid.clone(),
        hh.clone(),
        objects.keys().iter().map(|t| t.2).collect(),
        arrows.keys().iter().map(|t| t.2).collect(),
    );
    let sg = &strict.groupoid;
    let comparison = Functor::from_parts(
        sg.clone(),
        groupoid.clone(),
        sg.objects()
            .map(|z| {
                let (x, y) = (strict.left.obj(z), strict.right.obj(z));
                objects.id(&(x, base.unit(g.obj(x)), y))
            })
            .collect(),
        sg.arrows()
            .map(|z| {
                let (a, b) = (strict.left.arr(z), strict.right.arr(z));
                arrows.id(&(a, base.unit(g.obj(gp.src(a))), b))
            })
            .collect(),
    );
    Ok(WeakPullback {
        groupoid,
        left,
        right,
        strict,
        comparison,
    })
}

/// Whether the commuting square `a ∘ e' = e ∘ a'` (with `e': P → A`,
/// `a: A → G`, `a': P → G'`, `e: G' → G`) is a pullback: the induced functor
/// into the strict fibred product of `a` and `e` is an isomorphism.
pub fn is_pullback_square(a: &Functor, e: &Functor, e_prime: &Functor, a_prime: &Functor) -> Result<bool> {
    if a.after(e_prime)? != e.after(a_prime)? {
        return Err(GpdError::Precondition("square does not commute".into()));
    }
    let fp = fibred_product(a, e)?;
    Ok(fp.pairing(e_prime, a_prime)?.is_isomorphism())
}

/// The quotient of a groupoid by a uniferous principal subgroupoid `S`:
/// objects are `S`-classes of objects, arrows are double cosets `S x S`.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub groupoid: Arc<FiniteGroupoid>,
    pub projection: Functor,
}

/// Partition of the objects of `s.parent()` into `S`-classes, numbered in
/// order of least member.
pub(crate) fn object_classes(s: &Subgroupoid) -> SetMap {
    let k = s.parent();
    let mut class = vec![usize::MAX; k.object_count()];
    let mut next = 0;
    for x in k.objects() {
        if class[x] != usize::MAX {
            continue;
        }
        let mut stack = vec![x];
        class[x] = next;
        while let Some(y) = stack.pop() {
            for &a in k.arrows_from(y) {
                if s.contains(a) && class[k.tgt(a)] == usize::MAX {
                    class[k.tgt(a)] = next;
                    stack.push(k.tgt(a));
                }
            }
        }
        next += 1;
    }
    SetMap::from_vec_unchecked(next, class)
}

pub fn quotient_by_principal(s: &Subgroupoid) -> Result<Quotient> {
    if !s.is_closed() || !s.is_uniferous() {
        return Err(GpdError::Precondition("subgroupoid must be closed and uniferous".into()));
    }
    if !s.is_principal() {
        return Err(GpdError::Precondition("subgroupoid is not principal".into()));
    }
    let k = s.parent();
    let oc = object_classes(s);
    let mut class = vec![usize::MAX; k.arrow_count()];
    let mut ends = Vec::new();
    for x in k.arrows() {
        if class[x] != usize::MAX {
            continue;
        }
        let id = ends.len();
        ends.push((oc.apply(k.src(x)), oc.apply(k.tgt(x))));
        for &s2 in k.arrows_to(k.src(x)) {
            if !s.contains(s2) {
                continue;
            }
            let xs = k.compose(x, s2);
            for &s1 in k.arrows_from(k.tgt(x)) {
                if s.contains(s1) {
                    class[k.compose(s1, xs)] = id;
                }
            }
        }
    }
    let n = ends.len();
    let mut unit = vec![usize::MAX; oc.codomain()];
    for x in k.objects() {
        let c = class[k.unit(x)];
        let slot = &mut unit[oc.apply(x)];
        if *slot != usize::MAX && *slot != c {
            return Err(GpdError::QuotientNotWellDefined(format!(
                "units in the class of object {x} fall into different double cosets"
            )));
        }
        *slot = c;
    }
    let mut inv = vec![usize::MAX; n];
    for x in k.arrows() {
        let c = class[k.inv(x)];
        let slot = &mut inv[class[x]];
        if *slot != usize::MAX && *slot != c {
            return Err(GpdError::QuotientNotWellDefined(format!(
                "inverse depends on the representative at arrow {x}"
            )));
        }
        *slot = c;
    }
    let mut table: HashMap<(usize, usize), usize> = HashMap::new();
    for a in k.arrows() {
        for &b in k.arrows_to(k.src(a)) {
            let c = class[k.compose(a, b)];
            match table.insert((class[a], class[b]), c) {
                Some(prev) if prev != c => {
                    return Err(GpdError::QuotientNotWellDefined(format!(
                        "composite of classes of {a} and {b} depends on the representatives"
                    )))
                }
                _ => {}
            }
        }
    }
    let entries = table.into_iter().map(|((a, b), c)| (a, b, c));
    let q = FiniteGroupoid::from_tables(oc.codomain(), &ends, unit, inv, entries)
        .map_err(|e| GpdError::QuotientNotWellDefined(e.to_string()))?;
    if let Some(v) = q.validate().first() {
        return Err(GpdError::QuotientNotWellDefined(v.to_string()));
    }
    let q = Arc::new(q);
    let projection = Functor::from_parts(k.clone(), q.clone(), oc.image().to_vec(), class);
    Ok(Quotient {
        groupoid: q,
        projection,
    })
}

/// `f = a ∘ e` with `e` an s-equivalence and `a` an actor.
#[derive(Debug, Clone)]
pub struct SubactorDecomposition {
    /// Action groupoid of the codomain on the kernel classes of the base.
    pub middle: Arc<FiniteGroupoid>,
    pub e: Functor,
    pub a: Functor,
}

/// Decomposes a subactor through the action groupoid of its codomain on
/// `base(dom) / Ker f`. The supplied profile must say `subactor`; the
/// kernel is checked to be principal and the action well defined.
pub fn subactor_decompose(f: &Functor, profile: &FunctorProfile) -> Result<SubactorDecomposition> {
    if !profile.subactor {
        return Err(GpdError::Precondition("functor is not a subactor".into()));
    }
    let ker = kernel(f);
    if !ker.is_principal() {
        return Err(GpdError::Precondition("kernel of a subactor must be principal".into()));
    }
    let (h, g) = (f.dom(), f.cod());
    let oc = object_classes(&ker);
    let n = oc.codomain();
    let mut anchor = vec![usize::MAX; n];
    for x in h.objects() {
        anchor[oc.apply(x)] = f.obj(x);
    }
    // g·X for every class X and g leaving its anchor
    let mut act: HashMap<(usize, usize), usize> = HashMap::new();
    for a in h.arrows() {
        let key = (f.arr(a), oc.apply(h.src(a)));
        let t = oc.apply(h.tgt(a));
        if let Some(prev) = act.insert(key, t) {
            if prev != t {
                return Err(GpdError::Precondition(
                    "lifts of an arrow end in different kernel classes".into(),
                ));
            }
        }
    }
    let mut objects = Index::new();
    for c in 0..n {
        objects.push(c);
    }
    let mut arrows = Index::new();
    for c in 0..n {
        for &x in g.arrows_from(anchor[c]) {
            if !act.contains_key(&(x, c)) {
                return Err(GpdError::Precondition("functor is not an exactor".into()));
            }
            arrows.push((x, c));
        }
    }
    let middle = Arc::new(assemble(
        &objects,
        &arrows,
        |&(x, c)| (c, act[&(x, c)]),
        |&c| (g.unit(anchor[c]), c),
        |&(x, c)| (g.inv(x), act[&(x, c)]),
        |&(x2, _), &(x1, c)| (g.compose(x2, x1), c),
    ));
    let e = Functor::from_parts(
        h.clone(),
        middle.clone(),
        oc.image().to_vec(),
        h.arrows()
            .map(|a| arrows.id(&(f.arr(a), oc.apply(h.src(a)))))
            .collect(),
    );
    let a = Functor::from_parts(
        middle.clone(),
        g.clone(),
        anchor,
        arrows.keys().iter().map(|&(x, _)| x).collect(),
    );
    Ok(SubactorDecomposition { middle, e, a })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransferDirection {
    /// Actor over the codomain of `u` to actor over its domain.
    Pullback,
    /// Actor over the domain of `u` to actor over its codomain.
    Pushforward,
}

/// Moves actors along an s-equivalence `u: G' → G`.
pub fn transfer_actor(u: &Functor, a: &Functor, direction: TransferDirection) -> Result<Functor> {
    if !analyze_functor(u).s_equivalence {
        return Err(GpdError::Precondition("transfer requires an s-equivalence".into()));
    }
    if !analyze_functor(a).actor {
        return Err(GpdError::Precondition("transferred functor is not an actor".into()));
    }
    match direction {
        TransferDirection::Pullback => {
            if !same_groupoid(a.cod(), u.cod()) {
                return Err(GpdError::Precondition("actor is not over the codomain".into()));
            }
            Ok(fibred_product(a, u)?.right)
        }
        TransferDirection::Pushforward => {
            let composite = u.after(a)?;
            let profile = analyze_functor(&composite);
            Ok(subactor_decompose(&composite, &profile)?.a)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::{find_isomorphism, find_section};

    fn arc(g: FiniteGroupoid) -> Arc<FiniteGroupoid> {
        Arc::new(g)
    }

    fn swap_action() -> Arc<FiniteGroupoid> {
        arc(standard::action_cyclic(2, 2, &[1, 0]).unwrap())
    }

    fn projection(a: &Arc<FiniteGroupoid>, k: usize) -> Functor {
        let z = arc(standard::cyclic(k));
        let pts = a.object_count();
        let arr = a.arrows().map(|x| x / pts).collect();
        Functor::checked(a.clone(), z, vec![0; pts], arr).unwrap()
    }

    #[test]
    fn induce_examples() {
        let z2 = arc(standard::cyclic(2));
        let (ind, f) = induce(&z2, &SetMap::new(1, vec![0, 0]).unwrap()).unwrap();
        assert_eq!((ind.object_count(), ind.arrow_count()), (2, 8));
        assert!(ind.validate().is_ok() && f.validate().is_ok());
        assert!(analyze_functor(&f).s_equivalence);
        assert!(find_section(&f, SizeGuard::default()).unwrap().is_some());

        let p2 = arc(standard::pair(2));
        let (ind, f) = induce(&p2, &SetMap::new(2, vec![0]).unwrap()).unwrap();
        assert_eq!((ind.object_count(), ind.arrow_count()), (1, 1));
        assert!(analyze_functor(&f).inductor);

        let s3 = arc(standard::sym3());
        let (ind, _) = induce(&s3, &SetMap::identity(1)).unwrap();
        assert!(find_isomorphism(&ind, &s3, SizeGuard::default()).unwrap().is_some());
    }

    #[test]
    fn refine_examples() {
        let p2 = arc(standard::pair(2));
        let atlas = OrbitalAtlas::canonical(p2);
        let r = refine_atlas(&atlas, &SetMap::new(2, vec![0, 0, 1, 1]).unwrap()).unwrap();
        assert_eq!(r.groupoid.arrow_count(), 16);
        assert_eq!(r.orbit_space_size(), 1);
        let z2 = arc(standard::cyclic(2));
        let r = refine_atlas(
            &OrbitalAtlas::canonical(z2),
            &SetMap::new(1, vec![0, 0]).unwrap(),
        )
        .unwrap();
        assert_eq!((r.groupoid.object_count(), r.groupoid.arrow_count()), (2, 8));
        assert!(refine_atlas(&atlas, &SetMap::new(2, vec![0]).unwrap()).is_err());
    }

    #[test]
    fn square_groupoid_counts_and_laws() {
        for (g, objs, arrs) in [
            (standard::pair(2), 4, 16),
            (standard::cyclic(2), 2, 8),
            (standard::null(1), 1, 1),
        ] {
            let g = arc(g);
            let sq = square_groupoid(&g, SizeGuard::default()).unwrap();
            assert_eq!(sq.groupoid.object_count(), objs);
            assert_eq!(sq.groupoid.arrow_count(), arrs);
            assert!(sq.groupoid.validate().is_ok());
            for f in [&sq.varpi1, &sq.varpi2, &sq.iota] {
                assert!(f.validate().is_ok());
            }
            let id = Functor::identity(g.clone());
            assert_eq!(sq.varpi1.after(&sq.iota).unwrap(), id);
            assert_eq!(sq.varpi2.after(&sq.iota).unwrap(), id);
            let p1 = analyze_functor(&sq.varpi1);
            let p2 = analyze_functor(&sq.varpi2);
            assert!(p1.s_equivalence && p2.s_equivalence);
            let pi = analyze_functor(&sq.iota);
            assert!(pi.equivalence && sq.iota.arrow_map().is_injective());
        }
    }

    #[test]
    fn holograph_laws() {
        let z2 = arc(standard::cyclic(2));
        let h = holograph(&Functor::identity(z2), SizeGuard::default()).unwrap();
        assert_eq!(h.apex.arrow_count(), 8);
        let p2 = arc(standard::pair(2));
        let collapse = Functor::constant(p2, arc(standard::null(1)), 0);
        for f in [h.f.clone(), collapse] {
            let h = holograph(&f, SizeGuard::default()).unwrap();
            assert!(h.apex.validate().is_ok());
            assert!(h.p.validate().is_ok() && h.q.validate().is_ok());
            assert!(analyze_functor(&h.p).exactor);
            assert!(analyze_functor(&h.q).s_equivalence);
            assert_eq!(h.q.after(&h.section).unwrap(), Functor::identity(f.dom().clone()));
            assert!(h.iso.is_valid());
        }
    }

    #[test]
    fn divisor_fraction_is_valid() {
        let g = arc(standard::sym3());
        let (d, delta, w) = divisor_fraction(&g);
        assert!(d.validate().is_ok());
        assert!(delta.validate().is_ok() && w.validate().is_ok());
        assert!(analyze_functor(&w).s_equivalence);
    }

    #[test]
    fn fibred_product_examples() {
        let p2 = arc(standard::pair(2));
        let pt = arc(standard::null(1));
        let c = Functor::constant(p2.clone(), pt, 0);
        let fp = fibred_product(&c, &c).unwrap();
        assert_eq!((fp.groupoid.object_count(), fp.groupoid.arrow_count()), (4, 16));
        assert!(fp.groupoid.validate().is_ok());

        let a = swap_action();
        let pr = projection(&a, 2);
        let fp = fibred_product(&pr, &pr).unwrap();
        assert_eq!((fp.groupoid.object_count(), fp.groupoid.arrow_count()), (4, 8));
        assert!(analyze_functor(&fp.left).actor && analyze_functor(&fp.right).actor);

        let id = Functor::identity(pr.cod().clone());
        let fp = fibred_product(&pr, &id).unwrap();
        assert!(find_isomorphism(&fp.groupoid, &a, SizeGuard::default()).unwrap().is_some());
    }

    #[test]
    fn weak_pullback_examples() {
        let g = arc(standard::cyclic(2));
        let id = Functor::identity(g.clone());
        let w = weak_pullback(&id, &id, SizeGuard::default()).unwrap();
        assert!(w.groupoid.validate().is_ok());
        let sq = square_groupoid(&g, SizeGuard::default()).unwrap();
        assert!(find_isomorphism(&w.groupoid, &sq.groupoid, SizeGuard::default()).unwrap().is_some());

        let pt = arc(standard::null(1));
        let p2 = arc(standard::pair(2));
        let c = Functor::constant(p2.clone(), pt, 0);
        let w = weak_pullback(&c, &c, SizeGuard::default()).unwrap();
        assert!(w.comparison.is_isomorphism());

        let idp = Functor::identity(p2.clone());
        let u = Functor::unit_embedding(p2.clone())
            .after(&Functor::checked(arc(standard::null(1)), arc(standard::null(2)), vec![0], vec![0]).unwrap())
            .unwrap();
        let w = weak_pullback(&idp, &u, SizeGuard::default()).unwrap();
        assert!(w.comparison.validate().is_ok());
        assert_eq!(w.strict.groupoid.object_count(), 1);
        assert_eq!(w.groupoid.object_count(), 2);
        let prof = analyze_functor(&w.comparison);
        assert!(prof.equivalence && w.comparison.arrow_map().is_injective());
        assert!(!w.comparison.objector().is_surjective());
    }

    #[test]
    fn van_est_on_pullbacks() {
        let a = swap_action();
        let pr = projection(&a, 2);
        let z2 = pr.cod().clone();
        let (_, e) = induce(&z2, &SetMap::new(1, vec![0, 0]).unwrap()).unwrap();
        let fp = fibred_product(&pr, &e).unwrap();
        assert!(is_pullback_square(&pr, &e, &fp.left, &fp.right).unwrap());
    }

    #[test]
    fn quotient_examples() {
        let p4 = arc(standard::pair(4));
        let blocks = Subgroupoid::units(p4.clone()).closure_with(&[1, 11]);
        assert!(blocks.is_principal());
        let q = quotient_by_principal(&blocks).unwrap();
        let p2 = arc(standard::pair(2));
        assert!(find_isomorphism(&q.groupoid, &p2, SizeGuard::default()).unwrap().is_some());
        assert!(analyze_functor(&q.projection).s_functor);

        let s3 = arc(standard::sym3());
        let q = quotient_by_principal(&Subgroupoid::units(s3.clone())).unwrap();
        assert!(find_isomorphism(&q.groupoid, &s3, SizeGuard::default()).unwrap().is_some());

        let u = arc(standard::disjoint_union(&standard::pair(2), &standard::pair(2)));
        let q = quotient_by_principal(&Subgroupoid::units(u.clone())).unwrap();
        assert_eq!(q.groupoid.arrow_count(), 8);

        let not_principal = Subgroupoid::whole(arc(standard::cyclic(2)));
        assert!(quotient_by_principal(&not_principal).is_err());
    }

    #[test]
    fn subactor_examples() {
        let p2 = arc(standard::pair(2));
        let c = Functor::constant(p2.clone(), arc(standard::null(1)), 0);
        let d = subactor_decompose(&c, &analyze_functor(&c)).unwrap();
        assert_eq!(d.a.after(&d.e).unwrap(), c);
        assert!(analyze_functor(&d.e).s_equivalence && analyze_functor(&d.a).actor);
        assert_eq!(d.middle.arrow_count(), 1);

        let a = swap_action();
        let pr = projection(&a, 2);
        let d = subactor_decompose(&pr, &analyze_functor(&pr)).unwrap();
        assert!(d.e.is_isomorphism());
        assert_eq!(d.a.after(&d.e).unwrap(), pr);

        let z2 = arc(standard::cyclic(2));
        let (_, proj) = induce(&z2, &SetMap::new(1, vec![0, 0]).unwrap()).unwrap();
        let d = subactor_decompose(&proj, &analyze_functor(&proj)).unwrap();
        assert!(d.a.is_isomorphism());
        assert_eq!(d.middle.object_count(), 1);

        let z4 = arc(standard::cyclic(4));
        let m = Functor::checked(z4, z2, vec![0], vec![0, 1, 0, 1]).unwrap();
        assert!(subactor_decompose(&m, &analyze_functor(&m)).is_err());
    }

    #[test]
    fn transfer_round_trips() {
        let p2 = arc(standard::pair(2));
        let pt = arc(standard::null(1));
        let u = Functor::constant(p2.clone(), pt.clone(), 0);
        let pulled = transfer_actor(&u, &Functor::identity(pt), TransferDirection::Pullback).unwrap();
        assert!(find_isomorphism(pulled.dom(), &p2, SizeGuard::default()).unwrap().is_some());
        let pushed = transfer_actor(&u, &pulled, TransferDirection::Pushforward).unwrap();
        assert!(pushed.is_isomorphism());

        let z2 = arc(standard::cyclic(2));
        let (ind, proj) = induce(&z2, &SetMap::new(1, vec![0, 0]).unwrap()).unwrap();
        let pushed = transfer_actor(&proj, &Functor::identity(ind), TransferDirection::Pushforward).unwrap();
        assert!(pushed.is_isomorphism());
        assert_eq!(pushed.dom().arrow_count(), 2);
    }
}
