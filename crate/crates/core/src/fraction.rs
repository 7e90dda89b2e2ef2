//! Fractions `p/q` (pairs of exactors `H ← K → G` with a common source),
//! meromorphisms, reduction to the irreducible representative, equivalence,
//! composition, the holograph functor γ and Morita equivalence.

use std::ops::ControlFlow;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::build::{fibred_product, holograph, quotient_by_principal};
use crate::error::{GpdError, Result, SizeGuard};
use crate::functor::{same_groupoid, Functor};
use crate::groupoid::FiniteGroupoid;
use crate::profile::analyze_functor;
use crate::reflect::skeleton;
use crate::search::{find_isomorphism, find_isomorphism_with, find_section_unbounded, search_functors, SearchSpec};
use crate::standard;
use crate::subgroupoid::full_subgroupoid;
use crate::transversal::{cotransversality, transversality_status, Butterfly, Cotransversality, Transversality};

/// A pair of functors `q: K → H` (denominator) and `p: K → G` (numerator).
#[derive(Debug, Clone, PartialEq)]
pub struct Fraction {
    pub p: Functor,
    pub q: Functor,
}

impl Fraction {
    pub fn new(p: Functor, q: Functor) -> Result<Fraction> {
        if !same_groupoid(p.dom(), q.dom()) {
            return Err(GpdError::Precondition("numerator and denominator need a common source".into()));
        }
        Ok(Fraction { p, q })
    }

    pub fn apex(&self) -> &Arc<FiniteGroupoid> {
        self.p.dom()
    }

    /// `H`, the codomain of the denominator.
    pub fn source(&self) -> &Arc<FiniteGroupoid> {
        self.q.cod()
    }

    /// `G`, the codomain of the numerator.
    pub fn target(&self) -> &Arc<FiniteGroupoid> {
        self.p.cod()
    }

    /// `(p ∘ k, q ∘ k)`.
    pub fn precompose(&self, k: &Functor) -> Result<Fraction> {
        Fraction::new(self.p.after(k)?, self.q.after(k)?)
    }

    /// `(q, p)`: the same span read in the other direction.
    pub fn swapped(&self) -> Fraction {
        Fraction {
            p: self.q.clone(),
            q: self.p.clone(),
        }
    }
}

/// The three defining conditions plus the two consequences that must hold
/// whenever they do.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MeromorphismFlags {
    pub exactors: bool,
    pub q_s_equivalence: bool,
    pub cotransversal: bool,
    pub r_principal: bool,
    pub v_s_exactor: bool,
}

impl MeromorphismFlags {
    pub fn is_meromorphism(&self) -> bool {
        self.exactors && self.q_s_equivalence && self.cotransversal
    }
}

#[derive(Debug, Clone)]
pub struct MeromorphismCheck {
    pub flags: MeromorphismFlags,
    pub butterfly: Butterfly,
}

pub fn check_meromorphism(fr: &Fraction) -> Result<MeromorphismCheck> {
    let pp = analyze_functor(&fr.p);
    let qp = analyze_functor(&fr.q);
    let butterfly = Butterfly::new(&fr.p, &fr.q)?;
    let exactors = pp.exactor && qp.exactor;
    let cotransversal = exactors && transversality_status(&butterfly.r, &butterfly.n)?.is_transversal();
    let flags = MeromorphismFlags {
        exactors,
        q_s_equivalence: qp.s_equivalence,
        cotransversal,
        r_principal: butterfly.r.is_principal(),
        v_s_exactor: analyze_functor(&butterfly.v).s_exactor(),
    };
    Ok(MeromorphismCheck { flags, butterfly })
}

fn require_meromorphism(fr: &Fraction) -> Result<MeromorphismCheck> {
    let check = check_meromorphism(fr)?;
    if !check.flags.is_meromorphism() {
        return Err(GpdError::Precondition("fraction is not a meromorphism".into()));
    }
    Ok(check)
}

/// The five intrinsic irreducibility conditions, and terminality against a
/// supplied family of competitors when one is given.
///
/// Terminality is taken up to automorphism: a reduced fraction may have
/// nontrivial automorphisms (a torsor over a point does), so each competitor
/// must admit exactly as many morphisms into `fr` as `fr` has endomorphisms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct IrreducibilityReport {
    pub s_null: bool,
    pub n_transverse_r: bool,
    pub cotransverse: bool,
    pub u_actor: bool,
    pub v_actor: bool,
    pub terminal: Option<bool>,
}

impl IrreducibilityReport {
    pub fn conditions(&self) -> [bool; 5] {
        [self.s_null, self.n_transverse_r, self.cotransverse, self.u_actor, self.v_actor]
    }

    pub fn agree(&self) -> bool {
        let c = self.conditions();
        c.iter().all(|&x| x == c[0]) && self.terminal.map_or(true, |t| t == c[0])
    }

    pub fn is_irreducible(&self) -> bool {
        self.s_null
    }
}

/// Number of morphisms of fractions `competitor → fr` (functors `k` with
/// `p ∘ k = p'` and `q ∘ k = q'`), counting up to `limit`.
pub fn count_fraction_morphisms(competitor: &Fraction, fr: &Fraction, limit: usize, guard: SizeGuard) -> Result<usize> {
    guard.check("fraction morphism search", competitor.apex().arrow_count())?;
    let (p, q, p2, q2) = (&fr.p, &fr.q, &competitor.p, &competitor.q);
    let spec = SearchSpec {
        object_ok: &|x, y| p.obj(y) == p2.obj(x) && q.obj(y) == q2.obj(x),
        arrow_ok: &|a, b| p.arr(b) == p2.arr(a) && q.arr(b) == q2.arr(a),
        injective: false,
    };
    let mut n = 0;
    search_functors(competitor.apex(), fr.apex(), &spec, &mut |_, _| {
        n += 1;
        if n >= limit {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    Ok(n)
}

pub fn is_irreducible(fr: &Fraction, competitors: &[Fraction], guard: SizeGuard) -> Result<IrreducibilityReport> {
    let check = require_meromorphism(fr)?;
    let b = &check.butterfly;
    let terminal = if competitors.is_empty() {
        None
    } else {
        const LIMIT: usize = 1 << 12;
        let ends = count_fraction_morphisms(fr, fr, LIMIT, guard)?;
        let mut all = true;
        for c in competitors {
            if count_fraction_morphisms(c, fr, LIMIT, guard)? != ends {
                all = false;
            }
        }
        Some(all)
    };
    Ok(IrreducibilityReport {
        s_null: b.s.is_null(),
        n_transverse_r: transversality_status(&b.n, &b.r)? == Transversality::Transverse,
        cotransverse: cotransversality(&fr.p, &fr.q)?.status == Cotransversality::Cotransverse,
        u_actor: analyze_functor(&b.u).actor,
        v_actor: analyze_functor(&b.v).actor,
        terminal,
    })
}

/// A reduced fraction with the quotient functor from the original apex.
#[derive(Debug, Clone)]
pub struct Reduction {
    pub fraction: Fraction,
    /// `K → K/S`, an s-equivalence with `p̄ ∘ π = p` and `q̄ ∘ π = q`.
    pub projection: Functor,
}

pub fn reduce_with_projection(fr: &Fraction) -> Result<Reduction> {
    let check = require_meromorphism(fr)?;
    let quotient = quotient_by_principal(&check.butterfly.s)?;
    let (qg, pi) = (&quotient.groupoid, &quotient.projection);
    let k = fr.apex();
    let descend = |f: &Functor| -> Functor {
        let mut obj = vec![usize::MAX; qg.object_count()];
        for x in k.objects() {
            obj[pi.obj(x)] = f.obj(x);
        }
        let mut arr = vec![usize::MAX; qg.arrow_count()];
        for a in k.arrows() {
            debug_assert!(arr[pi.arr(a)] == usize::MAX || arr[pi.arr(a)] == f.arr(a));
            arr[pi.arr(a)] = f.arr(a);
        }
        Functor::from_parts(qg.clone(), f.cod().clone(), obj, arr)
    };
    let fraction = Fraction::new(descend(&fr.p), descend(&fr.q))?;
    Ok(Reduction {
        fraction,
        projection: pi.clone(),
    })
}

/// The irreducible representative: the apex divided by `S = N ∩ R`.
pub fn reduce(fr: &Fraction) -> Result<Fraction> {
    Ok(reduce_with_projection(fr)?.fraction)
}

/// An isomorphism `k` of apexes with `p2 ∘ k = p1` and `q2 ∘ k = q1`.
pub fn fraction_isomorphism(f1: &Fraction, f2: &Fraction) -> Option<Functor> {
    if !same_groupoid(f1.source(), f2.source()) || !same_groupoid(f1.target(), f2.target()) {
        return None;
    }
    let (p1, q1, p2, q2) = (&f1.p, &f1.q, &f2.p, &f2.q);
    find_isomorphism_with(
        f1.apex(),
        f2.apex(),
        &|x, y| p2.obj(y) == p1.obj(x) && q2.obj(y) == q1.obj(x),
        &|a, b| p2.arr(b) == p1.arr(a) && q2.arr(b) == q1.arr(a),
    )
}

/// Two s-equivalences `k_i: K → K_i` with `p1 k1 = p2 k2`, `q1 k1 = q2 k2`.
#[derive(Debug, Clone)]
pub struct EquivalenceWitness {
    pub apex: Arc<FiniteGroupoid>,
    pub k1: Functor,
    pub k2: Functor,
}

impl EquivalenceWitness {
    pub fn verify(&self, f1: &Fraction, f2: &Fraction) -> bool {
        let ok = |a: Result<Functor>, b: Result<Functor>| matches!((a, b), (Ok(a), Ok(b)) if a == b);
        self.k1.validate().is_ok()
            && self.k2.validate().is_ok()
            && analyze_functor(&self.k1).s_equivalence
            && analyze_functor(&self.k2).s_equivalence
            && ok(f1.p.after(&self.k1), f2.p.after(&self.k2))
            && ok(f1.q.after(&self.k1), f2.q.after(&self.k2))
    }

    /// Witness for `f1 ~ f3` from witnesses for `f1 ~ f2` (self) and
    /// `f2 ~ f3`: the fibred product of the two legs into `K2`.
    pub fn chain(&self, next: &EquivalenceWitness) -> Result<EquivalenceWitness> {
        let fp = fibred_product(&self.k2, &next.k1)?;
        Ok(EquivalenceWitness {
            apex: fp.groupoid.clone(),
            k1: self.k1.after(&fp.left)?,
            k2: next.k2.after(&fp.right)?,
        })
    }
}

/// Decides equivalence by reducing both fractions and comparing the
/// irreducible forms; the witness is the fibred product of the two quotient
/// functors over the common reduced apex.
pub fn fractions_equivalent(f1: &Fraction, f2: &Fraction, guard: SizeGuard) -> Result<Option<EquivalenceWitness>> {
    if !same_groupoid(f1.source(), f2.source()) || !same_groupoid(f1.target(), f2.target()) {
        return Ok(None);
    }
    let r1 = reduce_with_projection(f1)?;
    let r2 = reduce_with_projection(f2)?;
    guard.check("reduced apex", r1.fraction.apex().arrow_count())?;
    guard.check("reduced apex", r2.fraction.apex().arrow_count())?;
    let Some(phi) = fraction_isomorphism(&r1.fraction, &r2.fraction) else {
        return Ok(None);
    };
    let fp = fibred_product(&phi.after(&r1.projection)?, &r2.projection)?;
    Ok(Some(EquivalenceWitness {
        apex: fp.groupoid.clone(),
        k1: fp.left.clone(),
        k2: fp.right.clone(),
    }))
}

/// `(p, q): K → G × H`, arrows numbered as in [`standard::product`].
fn pairing_into_product(fr: &Fraction, gh: &Arc<FiniteGroupoid>) -> Functor {
    let h = fr.source();
    let (hn, hm) = (h.object_count(), h.arrow_count());
    let k = fr.apex();
    Functor::from_parts(
        k.clone(),
        gh.clone(),
        k.objects().map(|x| fr.p.obj(x) * hn + fr.q.obj(x)).collect(),
        k.arrows().map(|a| fr.p.arr(a) * hm + fr.q.arr(a)).collect(),
    )
}

#[derive(Debug, Clone)]
pub enum DirectOutcome {
    Found(EquivalenceWitness),
    /// Exhausted, and the search is complete for the given inputs.
    NotFound,
    /// Exhausted, but a reducible input may need an apex the search does not
    /// range over.
    Inconclusive,
}

/// Searches the definition directly: apexes are full subgroupoids of the
/// fibred product `P = K1 ×_{G×H} K2` on sets of objects over which both
/// projections are s-equivalences. Any witness of two irreducible fractions
/// maps into `P` with such an image, so for irreducible inputs "not found" is
/// a proof of inequivalence.
pub fn fractions_equivalent_direct(f1: &Fraction, f2: &Fraction, guard: SizeGuard) -> Result<DirectOutcome> {
    if !same_groupoid(f1.source(), f2.source()) || !same_groupoid(f1.target(), f2.target()) {
        return Ok(DirectOutcome::NotFound);
    }
    let gh = Arc::new(standard::product(f1.target(), f1.source()));
    let fp = fibred_product(&pairing_into_product(f1, &gh), &pairing_into_product(f2, &gh))?;
    guard.check("direct equivalence search", fp.groupoid.arrow_count())?;
    let pg = &fp.groupoid;
    let (k1, k2) = (f1.apex(), f2.apex());
    let bijective_on = |z: usize, w: usize| -> bool {
        let hom = pg.hom(z, w);
        let h1 = k1.hom(fp.left.obj(z), fp.left.obj(w)).len();
        let h2 = k2.hom(fp.right.obj(z), fp.right.obj(w)).len();
        if hom.len() != h1 || hom.len() != h2 {
            return false;
        }
        let mut a1: Vec<usize> = hom.iter().map(|&a| fp.left.arr(a)).collect();
        let mut a2: Vec<usize> = hom.iter().map(|&a| fp.right.arr(a)).collect();
        a1.sort_unstable();
        a1.dedup();
        a2.sort_unstable();
        a2.dedup();
        a1.len() == h1 && a2.len() == h2
    };
    let n = pg.object_count();
    let compat: Vec<Vec<bool>> = (0..n)
        .map(|z| (0..n).map(|w| bijective_on(z, w)).collect())
        .collect();
    let mut over1 = vec![Vec::new(); k1.object_count()];
    let mut over2 = vec![Vec::new(); k2.object_count()];
    for z in 0..n {
        if compat[z][z] {
            over1[fp.left.obj(z)].push(z);
            over2[fp.right.obj(z)].push(z);
        }
    }
    struct Cover<'a> {
        compat: &'a [Vec<bool>],
        over1: &'a [Vec<usize>],
        over2: &'a [Vec<usize>],
        left: &'a Functor,
        right: &'a Functor,
    }
    impl Cover<'_> {
        fn run(&self, chosen: &mut Vec<usize>) -> bool {
            let covered1 = |e: usize| chosen.iter().any(|&z| self.left.obj(z) == e);
            let covered2 = |e: usize| chosen.iter().any(|&z| self.right.obj(z) == e);
            let next = (0..self.over1.len())
                .find(|&e| !covered1(e))
                .map(|e| &self.over1[e])
                .or_else(|| (0..self.over2.len()).find(|&e| !covered2(e)).map(|e| &self.over2[e]));
            let Some(cands) = next else {
                return true;
            };
            for &z in cands {
                if chosen.iter().all(|&w| self.compat[z][w] && self.compat[w][z]) {
                    chosen.push(z);
                    if self.run(chosen) {
                        return true;
                    }
                    chosen.pop();
                }
            }
            false
        }
    }
    let cover = Cover {
        compat: &compat,
        over1: &over1,
        over2: &over2,
        left: &fp.left,
        right: &fp.right,
    };
    let mut chosen = Vec::new();
    if cover.run(&mut chosen) {
        chosen.sort_unstable();
        let (apex, inc) = full_subgroupoid(pg, &chosen);
        return Ok(DirectOutcome::Found(EquivalenceWitness {
            apex,
            k1: fp.left.after(&inc)?,
            k2: fp.right.after(&inc)?,
        }));
    }
    let irreducible = |fr: &Fraction| check_meromorphism(fr).map(|c| c.butterfly.s.is_null());
    if irreducible(f1)? && irreducible(f2)? {
        Ok(DirectOutcome::NotFound)
    } else {
        Ok(DirectOutcome::Inconclusive)
    }
}

/// A GZ-style equivalence witness: functors `u: K → K1`, `v: K → K2` with
/// `p1 u = p2 v`, `q1 u = q2 v` and `q1 u` an s-equivalence (the legs need
/// not be s-equivalences themselves). Searched over full subgroupoids of
/// `K1 ×_{G×H} K2`; a miss is only a miss within that family.
pub fn gz_equivalent(f1: &Fraction, f2: &Fraction, guard: SizeGuard) -> Result<Option<EquivalenceWitness>> {
    if !same_groupoid(f1.source(), f2.source()) || !same_groupoid(f1.target(), f2.target()) {
        return Ok(None);
    }
    let gh = Arc::new(standard::product(f1.target(), f1.source()));
    let fp = fibred_product(&pairing_into_product(f1, &gh), &pairing_into_product(f2, &gh))?;
    guard.check("GZ equivalence search", fp.groupoid.arrow_count())?;
    let pg = &fp.groupoid;
    let w = f1.q.after(&fp.left)?;
    let h = f1.source();
    let n = pg.object_count();
    let ok = |z: usize, y: usize| -> bool {
        let hom = pg.hom(z, y);
        let target = h.hom(w.obj(z), w.obj(y)).len();
        let mut img: Vec<usize> = hom.iter().map(|&a| w.arr(a)).collect();
        img.sort_unstable();
        img.dedup();
        hom.len() == target && img.len() == target
    };
    let compat: Vec<Vec<bool>> = (0..n).map(|z| (0..n).map(|y| ok(z, y)).collect()).collect();
    let mut over = vec![Vec::new(); h.object_count()];
    for z in 0..n {
        if compat[z][z] {
            over[w.obj(z)].push(z);
        }
    }
    fn run(compat: &[Vec<bool>], over: &[Vec<usize>], chosen: &mut Vec<usize>, i: usize) -> bool {
        if i == over.len() {
            return true;
        }
        for &z in &over[i] {
            if chosen.iter().all(|&y| compat[z][y] && compat[y][z]) {
                chosen.push(z);
                if run(compat, over, chosen, i + 1) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    let mut chosen = Vec::new();
    if !run(&compat, &over, &mut chosen, 0) {
        return Ok(None);
    }
    chosen.sort_unstable();
    let (apex, inc) = full_subgroupoid(pg, &chosen);
    Ok(Some(EquivalenceWitness {
        apex,
        k1: fp.left.after(&inc)?,
        k2: fp.right.after(&inc)?,
    }))
}

/// A certified meromorphism: the given representative, its irreducible
/// form, and the quotient functor between them.
#[derive(Debug, Clone)]
pub struct Meromorphism {
    original: Fraction,
    reduced: Fraction,
    projection: Functor,
}

impl Meromorphism {
    pub fn new(fr: Fraction) -> Result<Meromorphism> {
        let r = reduce_with_projection(&fr)?;
        Ok(Meromorphism {
            original: fr,
            reduced: r.fraction,
            projection: r.projection,
        })
    }

    pub fn original(&self) -> &Fraction {
        &self.original
    }

    pub fn reduced(&self) -> &Fraction {
        &self.reduced
    }

    pub fn projection(&self) -> &Functor {
        &self.projection
    }

    pub fn source(&self) -> &Arc<FiniteGroupoid> {
        self.original.source()
    }

    pub fn target(&self) -> &Arc<FiniteGroupoid> {
        self.original.target()
    }

    /// Equality of classes: isomorphism of the irreducible forms.
    pub fn same_class(&self, other: &Meromorphism) -> bool {
        fraction_isomorphism(&self.reduced, &other.reduced).is_some()
    }
}

/// Raw composite `m2 ∘ m1` of spans: the fibred product of the numerator of
/// `m1` with the denominator of `m2`.
pub fn compose_fractions(m2: &Fraction, m1: &Fraction) -> Result<Fraction> {
    let fp = fibred_product(&m1.p, &m2.q)?;
    Fraction::new(m2.p.after(&fp.right)?, m1.q.after(&fp.left)?)
}

pub fn compose_meromorphisms(m2: &Meromorphism, m1: &Meromorphism) -> Result<Meromorphism> {
    if !same_groupoid(m1.target(), m2.source()) {
        return Err(GpdError::Precondition("meromorphisms are not composable".into()));
    }
    Meromorphism::new(compose_fractions(&m2.reduced, &m1.reduced)?)
}

/// The holograph fraction of `f`.
pub fn gamma(f: &Functor, guard: SizeGuard) -> Result<Meromorphism> {
    let h = holograph(f, guard)?;
    Meromorphism::new(Fraction::new(h.p, h.q)?)
}

pub fn identity_meromorphism(g: &Arc<FiniteGroupoid>, guard: SizeGuard) -> Result<Meromorphism> {
    gamma(&Functor::identity(g.clone()), guard)
}

pub fn is_meriedric_equivalence(m: &Meromorphism) -> bool {
    analyze_functor(&m.reduced.p).s_equivalence
}

/// The inverse of a meriedric equivalence: the reduced span read backwards.
pub fn inverse_meromorphism(m: &Meromorphism) -> Result<Meromorphism> {
    if !is_meriedric_equivalence(m) {
        return Err(GpdError::Precondition("meromorphism is not a meriedric equivalence".into()));
    }
    Meromorphism::new(m.reduced.swapped())
}

/// A functor `f = p̄ ∘ s` for a section `s` of the reduced denominator.
pub fn is_holomorphism(m: &Meromorphism, guard: SizeGuard) -> Result<Option<Functor>> {
    guard.check_construction("holomorphism section search", m.reduced.apex().arrow_count())?;
    let Some(s) = find_section_unbounded(&m.reduced.q) else {
        return Ok(None);
    };
    Ok(Some(m.reduced.p.after(&s)?))
}

/// Two s-equivalences from a common apex onto `g` and `h`.
#[derive(Debug, Clone)]
pub struct MoritaWitness {
    pub apex: Arc<FiniteGroupoid>,
    pub to_g: Functor,
    pub to_h: Functor,
}

#[derive(Debug, Clone)]
pub struct MoritaReport {
    /// Orbit counts and vertex-group classes match.
    pub fast: bool,
    pub witness: Option<MoritaWitness>,
}

impl MoritaReport {
    pub fn equivalent(&self) -> bool {
        self.witness.is_some()
    }

    pub fn consistent(&self) -> bool {
        self.fast == self.witness.is_some()
    }
}

fn vertex_groups_match(g: &FiniteGroupoid, h: &FiniteGroupoid, guard: SizeGuard) -> Result<bool> {
    let vg: Vec<Arc<FiniteGroupoid>> = g
        .orbits_and_vertex_groups()
        .into_iter()
        .map(|o| Arc::new(o.vertex_group))
        .collect();
    let vh: Vec<Arc<FiniteGroupoid>> = h
        .orbits_and_vertex_groups()
        .into_iter()
        .map(|o| Arc::new(o.vertex_group))
        .collect();
    if vg.len() != vh.len() {
        return Ok(false);
    }
    let mut used = vec![false; vh.len()];
    for a in &vg {
        let mut matched = false;
        for (j, b) in vh.iter().enumerate() {
            if !used[j] && find_isomorphism(a, b, guard)?.is_some() {
                used[j] = true;
                matched = true;
                break;
            }
        }
        if !matched {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn morita_equivalent(g: &Arc<FiniteGroupoid>, h: &Arc<FiniteGroupoid>, guard: SizeGuard) -> Result<MoritaReport> {
    let fast = vertex_groups_match(g, h, guard)?;
    let sg = skeleton(g);
    let sh = skeleton(h);
    let witness = match find_isomorphism(&sg.plurigroup, &sh.plurigroup, guard)? {
        None => None,
        Some(phi) => {
            let fp = fibred_product(&phi.after(&sg.retraction)?, &sh.retraction)?;
            guard.check_construction("Morita witness apex", fp.groupoid.arrow_count())?;
            Some(MoritaWitness {
                apex: fp.groupoid.clone(),
                to_g: fp.left.clone(),
                to_h: fp.right.clone(),
            })
        }
    };
    Ok(MoritaReport { fast, witness })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::build::induce;
    use crate::setmap::SetMap;

    fn arc(g: FiniteGroupoid) -> Arc<FiniteGroupoid> {
        Arc::new(g)
    }

    fn g() -> SizeGuard {
        SizeGuard::default()
    }

    fn blocks_pair4() -> Functor {
        let p4 = arc(standard::pair(4));
        let p2 = arc(standard::pair(2));
        let blocks = [0usize, 0, 1, 1];
        let arr = p4.arrows().map(|a| blocks[p4.src(a)] * 2 + blocks[p4.tgt(a)]).collect();
        Functor::checked(p4, p2, blocks.to_vec(), arr).unwrap()
    }

    fn id_collapse() -> Fraction {
        let p2 = arc(standard::pair(2));
        let collapse = Functor::constant(p2.clone(), arc(standard::null(1)), 0);
        Fraction::new(Functor::identity(p2), collapse).unwrap()
    }

    #[test]
    fn meromorphism_examples() {
        let fr = id_collapse();
        assert!(check_meromorphism(&fr).unwrap().flags.is_meromorphism());
        assert!(check_meromorphism(&fr.swapped()).unwrap().flags.is_meromorphism());
        let p2 = arc(standard::pair(2));
        let u = Functor::unit_embedding(p2);
        let fr = Fraction::new(u.clone(), u).unwrap();
        let c = check_meromorphism(&fr).unwrap();
        assert!(!c.flags.q_s_equivalence && !c.flags.is_meromorphism());
    }

    #[test]
    fn irreducibility_examples() {
        let fr = id_collapse();
        let rep = is_irreducible(&fr, &[], g()).unwrap();
        assert!(rep.is_irreducible() && rep.agree());
        let big = fr.precompose(&blocks_pair4()).unwrap();
        let rep = is_irreducible(&big, &[], g()).unwrap();
        assert!(!rep.is_irreducible() && rep.agree());
        let rep = is_irreducible(&fr, &[big.clone()], g()).unwrap();
        assert_eq!(rep.terminal, Some(true));
        let red = reduce(&big).unwrap();
        assert!(fraction_isomorphism(&red, &fr).is_some());
    }

    #[test]
    fn gamma_identity_is_irreducible() {
        for grp in [standard::pair(2), standard::cyclic(3), standard::sym3()] {
            let m = identity_meromorphism(&arc(grp), g()).unwrap();
            let rep = is_irreducible(m.original(), &[], g()).unwrap();
            assert!(rep.is_irreducible() && rep.agree());
        }
    }

    #[test]
    fn equivalence_modes() {
        let fr = id_collapse();
        let big = fr.precompose(&blocks_pair4()).unwrap();
        let w = fractions_equivalent(&fr, &big, g()).unwrap().unwrap();
        assert!(w.verify(&fr, &big));
        assert!(matches!(fractions_equivalent_direct(&fr, &fr, g()).unwrap(), DirectOutcome::Found(_)));
        assert!(fractions_equivalent(&fr, &fr.swapped(), g()).unwrap().is_none());
        assert!(gz_equivalent(&fr, &big, g()).unwrap().is_some());
    }

    #[test]
    fn gamma_of_naturally_isomorphic_functors() {
        let p2 = arc(standard::pair(2));
        let arr = (0..4).map(|a| (1 - a / 2) * 2 + (1 - a % 2)).collect();
        let swap = Functor::checked(p2.clone(), p2.clone(), vec![1, 0], arr).unwrap();
        let a = gamma(&Functor::identity(p2), g()).unwrap();
        let b = gamma(&swap, g()).unwrap();
        assert!(a.same_class(&b));
        let z2 = arc(standard::cyclic(2));
        let triv = Functor::constant(z2.clone(), z2.clone(), 0);
        let a = gamma(&Functor::identity(z2), g()).unwrap();
        let b = gamma(&triv, g()).unwrap();
        assert!(!a.same_class(&b));
    }

    #[test]
    fn morita_examples() {
        let r = morita_equivalent(&arc(standard::pair(3)), &arc(standard::null(1)), g()).unwrap();
        assert!(r.equivalent() && r.consistent());
        let w = r.witness.unwrap();
        assert!(analyze_functor(&w.to_g).s_equivalence && analyze_functor(&w.to_h).s_equivalence);
        let z2 = arc(standard::cyclic(2));
        let (ind, _) = induce(&z2, &SetMap::new(1, vec![0, 0]).unwrap()).unwrap();
        let r = morita_equivalent(&ind, &z2, g()).unwrap();
        assert!(r.equivalent() && r.consistent());
        let r = morita_equivalent(&z2, &arc(standard::null(1)), g()).unwrap();
        assert!(!r.equivalent() && r.consistent());
    }

    #[test]
    fn meriedric_equivalence_and_inverse() {
        let m = Meromorphism::new(id_collapse()).unwrap();
        assert!(is_meriedric_equivalence(&m));
        let inv = inverse_meromorphism(&m).unwrap();
        let there_and_back = compose_meromorphisms(&inv, &m).unwrap();
        let id = identity_meromorphism(m.source(), g()).unwrap();
        assert!(there_and_back.same_class(&id));
        let back_and_there = compose_meromorphisms(&m, &inv).unwrap();
        let id = identity_meromorphism(m.target(), g()).unwrap();
        assert!(back_and_there.same_class(&id));

        let z2 = arc(standard::cyclic(2));
        let c = Functor::constant(z2, arc(standard::null(1)), 0);
        assert!(!is_meriedric_equivalence(&gamma(&c, g()).unwrap()));
    }

    #[test]
    fn holomorphism_representative() {
        let m = Meromorphism::new(id_collapse()).unwrap();
        let f = is_holomorphism(&m, g()).unwrap().unwrap();
        assert!(gamma(&f, g()).unwrap().same_class(&m));
    }
}
