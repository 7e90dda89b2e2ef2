//! Property suites over the generated catalog, one per acceptance
//! criterion. Every case is named; reports list cases sorted by name.

use std::fmt::Write as _;
use std::sync::{Arc, OnceLock};

use gpd_core::bibundle::{bibundle_isomorphism, from_bibundle, to_bibundle};
use gpd_core::build::{divisor_fraction, holograph, induce, square_count, square_groupoid};
use gpd_core::fraction::{
    check_meromorphism, compose_meromorphisms, fraction_isomorphism, fractions_equivalent, gamma,
    identity_meromorphism, inverse_meromorphism, is_irreducible, is_meriedric_equivalence, morita_equivalent,
    reduce,
};
use gpd_core::gz::{cstar_probe, dstar_probe, DstarOutcome};
use gpd_core::reflect::{check_reflection_universal, fundamental_plurigroup};
use gpd_core::search::{all_functors, find_isomorphism, find_section, naturally_isomorphic};
use gpd_core::{analyze_functor, standard, FiniteGroupoid, Fraction, Functor, GpdError, Gpd, Meromorphism, SetMap};
use rand::Rng;
use serde::Serialize;

use crate::catalog::{rng_for, Catalog, CatalogConfig};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Refused by the size guard.
    Skipped,
}

#[derive(Debug, Clone, Serialize)]
pub struct Case {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub criterion: u8,
    pub title: &'static str,
    pub cases: Vec<Case>,
}

impl SuiteReport {
    pub fn count(&self, status: Status) -> usize {
        self.cases.iter().filter(|c| c.status == status).count()
    }

    pub fn passed(&self) -> bool {
        self.count(Status::Fail) == 0 && self.count(Status::Pass) > 0
    }

    pub fn summary(&self) -> String {
        format!(
            "criterion {:>2} {:<28} {} ({} passed, {} failed, {} skipped)",
            self.criterion,
            self.title,
            if self.passed() { "PASS" } else { "FAIL" },
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Skipped),
        )
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub config: CatalogConfig,
    pub groupoids: usize,
    pub functors: usize,
    pub suites: Vec<SuiteReport>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(SuiteReport::passed)
    }

    pub fn render(&self) -> String {
        let c = &self.config;
        let mut out = String::new();
        let _ = writeln!(
            out,
            "selftest seed={} max_objects={} max_arrows={} per_pair={}",
            c.seed, c.max_objects, c.guard.max_arrows, c.per_pair
        );
        let _ = writeln!(out, "catalog: {} groupoids, {} functors", self.groupoids, self.functors);
        for s in &self.suites {
            let _ = writeln!(out, "{}", s.summary());
            for case in s.cases.iter().filter(|c| c.status == Status::Fail) {
                let _ = writeln!(out, "  FAIL {}: {}", case.name, case.detail);
            }
            for case in s.cases.iter().filter(|c| c.status == Status::Pass && !c.detail.is_empty()) {
                let _ = writeln!(out, "  note {}: {}", case.name, case.detail);
            }
        }
        let _ = writeln!(out, "overall: {}", if self.passed() { "PASS" } else { "FAIL" });
        out
    }
}

/// Titles of the suites run by `selftest`, by criterion number.
pub const SUITES: [(u8, &str); 11] = [
    (1, "validator"),
    (2, "square-groupoid counts"),
    (3, "holograph law"),
    (4, "expansion equivalences"),
    (5, "irreducibility criteria"),
    (6, "irreducible representative"),
    (7, "fraction category laws"),
    (8, "localization"),
    (9, "morita"),
    (10, "gz probes"),
    (11, "plurigroup reflector"),
];

pub struct NamedMeromorphism {
    pub name: String,
    pub m: Meromorphism,
}

/// The catalog plus lazily generated meromorphisms shared by the suites.
pub struct Context {
    pub catalog: Catalog,
    meromorphisms: OnceLock<Vec<NamedMeromorphism>>,
}

type Outcome = gpd_core::Result<(bool, String)>;

fn case(name: impl Into<String>, outcome: Outcome) -> Case {
    let (status, detail) = match outcome {
        Ok((true, d)) => (Status::Pass, d),
        Ok((false, d)) => (Status::Fail, d),
        Err(GpdError::SearchRefused { what, arrows, cap }) => {
            (Status::Skipped, format!("{what}: {arrows} arrows over cap {cap}"))
        }
        Err(e) => (Status::Fail, e.to_string()),
    };
    Case {
        name: name.into(),
        status,
        detail,
    }
}

fn check(ok: bool, why: impl Into<String>) -> Outcome {
    Ok((ok, if ok { String::new() } else { why.into() }))
}

fn arc(g: FiniteGroupoid) -> Gpd {
    Arc::new(g)
}

fn size(f: &Functor) -> usize {
    f.dom().arrow_count() * f.cod().arrow_count()
}

/// A surjection from `n + extra` points onto `n`, the extra points landing
/// on seeded objects.
fn random_surjection(n: usize, extra: usize, rng: &mut impl Rng) -> SetMap {
    let image = (0..n).chain((0..extra).map(|_| rng.gen_range(0..n))).collect();
    SetMap::new(n, image).expect("surjection")
}

fn inflate(fr: &Fraction, extra: usize, rng: &mut impl Rng) -> gpd_core::Result<(Fraction, Vec<usize>)> {
    let apex = fr.apex();
    let map = random_surjection(apex.object_count(), extra, rng);
    let (_, k) = induce(apex, &map)?;
    Ok((fr.precompose(&k)?, map.image().to_vec()))
}

impl Context {
    pub fn new(config: CatalogConfig) -> Context {
        Context {
            catalog: Catalog::generate(config),
            meromorphisms: OnceLock::new(),
        }
    }

    fn guard(&self) -> gpd_core::SizeGuard {
        self.catalog.config.guard
    }

    /// γ of small catalog functors, catalog spans that are meromorphisms,
    /// and precompositions of both with seeded s-equivalences.
    pub fn meromorphisms(&self) -> &[NamedMeromorphism] {
        self.meromorphisms.get_or_init(|| self.generate_meromorphisms())
    }

    fn generate_meromorphisms(&self) -> Vec<NamedMeromorphism> {
        let guard = self.guard();
        let fs = &self.catalog.functors;
        let mut base = Vec::new();
        for f in fs.iter().filter(|f| size(&f.functor) <= 48) {
            if let Ok(m) = gamma(&f.functor, guard) {
                base.push(NamedMeromorphism {
                    name: format!("gamma({})", f.name),
                    m,
                });
            }
        }
        for q in fs.iter().filter(|q| q.functor.dom().arrow_count() <= 16) {
            if !analyze_functor(&q.functor).s_equivalence {
                continue;
            }
            for p in fs.iter().filter(|p| p.dom == q.dom && p.name != q.name).take(3) {
                let Ok(fr) = Fraction::new(p.functor.clone(), q.functor.clone()) else {
                    continue;
                };
                let Ok(check) = check_meromorphism(&fr) else {
                    continue;
                };
                if check.flags.is_meromorphism() {
                    if let Ok(m) = Meromorphism::new(fr) {
                        base.push(NamedMeromorphism {
                            name: format!("{}/{}", p.name, q.name),
                            m,
                        });
                    }
                }
            }
        }
        let mut rng = rng_for(self.catalog.config.seed, u64::MAX);
        let mut inflated = Vec::new();
        for b in &base {
            if b.m.original().apex().arrow_count() > 36 {
                continue;
            }
            let extra = rng.gen_range(1..=2);
            let Ok((fr, image)) = inflate(b.m.original(), extra, &mut rng) else {
                continue;
            };
            if let Ok(m) = Meromorphism::new(fr) {
                inflated.push(NamedMeromorphism {
                    name: format!("{}*inflate{:?}", b.name, image),
                    m,
                });
            }
        }
        base.extend(inflated);
        base
    }
}

pub fn run_suite(criterion: u8, ctx: &Context) -> SuiteReport {
    let title = SUITES
        .iter()
        .find(|(n, _)| *n == criterion)
        .map(|(_, t)| *t)
        .unwrap_or("unknown");
    let mut cases = match criterion {
        1 => validator(ctx),
        2 => square_counts(ctx),
        3 => holograph_law(ctx),
        4 => expansion(ctx),
        5 => irreducibility(ctx),
        6 => representatives(ctx),
        7 => category_laws(ctx),
        8 => localization(ctx),
        9 => morita(ctx),
        10 => gz(ctx),
        11 => reflector(ctx),
        _ => Vec::new(),
    };
    cases.sort_by(|a, b| a.name.cmp(&b.name));
    SuiteReport {
        criterion,
        title,
        cases,
    }
}

pub fn run_all(config: CatalogConfig) -> Report {
    let ctx = Context::new(config);
    let suites = SUITES.iter().map(|(n, _)| run_suite(*n, &ctx)).collect();
    Report {
        config,
        groupoids: ctx.catalog.groupoids.len(),
        functors: ctx.catalog.functors.len(),
        suites,
    }
}

fn validator(ctx: &Context) -> Vec<Case> {
    let mut out = Vec::new();
    for (name, g) in &ctx.catalog.groupoids {
        out.push(case(format!("valid/{name}"), check(g.validate().is_ok(), "validation failed")));
        let entries = g.composition_entries();
        let missed = entries
            .iter()
            .filter(|&&(a, b, _)| g.without_composition(a, b).validate().is_ok())
            .count();
        out.push(case(
            format!("delete-comp/{name}"),
            check(missed == 0, format!("{missed} of {} deletions undetected", entries.len())),
        ));
        if g.arrow_count() > 1 {
            let m = g.arrow_count();
            let missed = g
                .arrows()
                .filter(|&a| {
                    let wrong = (g.inv(a) + 1) % m;
                    g.with_inverse(a, wrong).validate().is_ok()
                })
                .count();
            out.push(case(
                format!("corrupt-inverse/{name}"),
                check(missed == 0, format!("{missed} of {m} corruptions undetected")),
            ));
        }
    }
    let z4 = standard::cyclic(4).with_inverse(1, 1);
    let msg = z4.validate().first().map(|v| v.to_string()).unwrap_or_default();
    out.push(case("corrupt-inverse/z4-inv1", check(msg.starts_with("inverse law"), msg)));
    out
}

fn brute_force_squares(g: &FiniteGroupoid) -> usize {
    let mut n = 0;
    for x in g.arrows() {
        for y in g.arrows() {
            for &k in g.hom(g.src(x), g.src(y)) {
                for &l in g.hom(g.tgt(x), g.tgt(y)) {
                    n += usize::from(g.compose(y, k) == g.compose(l, x));
                }
            }
        }
    }
    n
}

fn square_counts(ctx: &Context) -> Vec<Case> {
    let mut out = Vec::new();
    for (name, expected) in [("pair2", 16), ("z2", 8)] {
        let g = arc(if name == "pair2" { standard::pair(2) } else { standard::cyclic(2) });
        let outcome = square_groupoid(&g, ctx.guard()).and_then(|sq| {
            let (n, brute) = (sq.groupoid.arrow_count(), brute_force_squares(&g));
            check(n == expected && brute == expected, format!("{n} squares, brute force {brute}"))
        });
        out.push(case(format!("pinned/{name}"), outcome));
    }
    for (name, g) in &ctx.catalog.groupoids {
        let outcome = square_groupoid(g, ctx.guard()).and_then(|sq| {
            let brute = brute_force_squares(g);
            let (built, counted) = (sq.groupoid.arrow_count(), square_count(g));
            let valid = sq.groupoid.validate().is_ok();
            check(
                built == brute && counted == brute && valid,
                format!("built {built}, counted {counted}, brute force {brute}"),
            )
        });
        out.push(case(format!("count/{name}"), outcome));
    }
    out
}

fn holograph_law(ctx: &Context) -> Vec<Case> {
    let guard = ctx.guard();
    let mut out = Vec::new();
    for nf in &ctx.catalog.functors {
        let f = &nf.functor;
        let outcome = holograph(f, guard).and_then(|h| {
            let p_exactor = analyze_functor(&h.p).exactor;
            let split = h.q.after(&h.section)? == Functor::identity(f.dom().clone());
            // an independent search agrees whenever the apex is within the cap
            let searched = match find_section(&h.q, guard) {
                Ok(s) => s.is_some(),
                Err(GpdError::SearchRefused { .. }) => true,
                Err(e) => return Err(e),
            };
            let iso = h.iso.is_valid() && h.iso.source == f.after(&h.q)? && h.iso.target == h.p;
            check(
                p_exactor && split && searched && iso,
                format!("p exactor {p_exactor}, q split {split}/{searched}, p ≅ f∘q {iso}"),
            )
        });
        out.push(case(format!("holograph/{}", nf.name), outcome));
    }
    for (name, g) in &ctx.catalog.groupoids {
        let identity = holograph(&Functor::identity(g.clone()), guard).and_then(|h| {
            let sq = square_groupoid(g, guard)?;
            let a = Fraction::new(h.p, h.q)?;
            let b = Fraction::new(sq.varpi1.clone(), sq.varpi2.clone())?;
            check(fraction_isomorphism(&a, &b).is_some(), "no isomorphism with the square projections")
        });
        out.push(case(format!("identity/{name}"), identity));
        let unit = holograph(&Functor::unit_embedding(g.clone()), guard).and_then(|h| {
            let (_, delta, w) = divisor_fraction(g);
            let a = Fraction::new(h.p, h.q)?;
            let b = Fraction::new(delta, w)?;
            check(fraction_isomorphism(&a, &b).is_some(), "no isomorphism with the divisor fraction")
        });
        out.push(case(format!("unit/{name}"), unit));
    }
    out
}

fn expansion(ctx: &Context) -> Vec<Case> {
    ctx.catalog
        .functors
        .iter()
        .map(|nf| {
            let outcome = holograph(&nf.functor, ctx.guard()).and_then(|h| {
                let (pf, pp) = (analyze_functor(&nf.functor), analyze_functor(&h.p));
                let pairs = [
                    (pf.essentially_surjective, pp.s_exactor()),
                    (pf.i_faithful, pp.subactor),
                    (pf.equivalence, pp.s_equivalence),
                ];
                check(pairs.iter().all(|(a, b)| a == b), format!("(f, p(f)) flags {pairs:?}"))
            });
            case(format!("expansion/{}", nf.name), outcome)
        })
        .collect()
}

fn irreducibility(ctx: &Context) -> Vec<Case> {
    let guard = ctx.guard();
    let ms = ctx.meromorphisms();
    let mut out = vec![case(
        "generated",
        check(ms.len() >= 200, format!("only {} meromorphisms generated", ms.len())),
    )];
    for nm in ms {
        let m = &nm.m;
        let outcome = (|| {
            let orig = is_irreducible(m.original(), &[], guard)?;
            let red = is_irreducible(m.reduced(), &[], guard)?;
            check(
                orig.agree() && red.agree() && red.is_irreducible(),
                format!("original {:?}, reduced {:?}", orig.conditions(), red.conditions()),
            )
        })();
        out.push(case(format!("conditions/{}", nm.name), outcome));
    }
    out
}

fn representatives(ctx: &Context) -> Vec<Case> {
    let mut rng = rng_for(ctx.catalog.config.seed, u64::MAX - 1);
    let mut out = Vec::new();
    for nm in ctx.meromorphisms() {
        let m = &nm.m;
        let extra = rng.gen_range(1..=2);
        let outcome = (|| {
            let again = reduce(m.reduced())?;
            let idempotent = fraction_isomorphism(&again, m.reduced()).is_some();
            let (other, _) = inflate(m.original(), extra, &mut rng)?;
            let unique = fraction_isomorphism(&reduce(&other)?, m.reduced()).is_some();
            let b = to_bibundle(m)?;
            let violations = b.violations();
            let back = from_bibundle(&b)?;
            let round_trip = fraction_isomorphism(&back, m.reduced()).is_some()
                && bibundle_isomorphism(&b, &to_bibundle(&Meromorphism::new(back)?)?)?.is_some();
            check(
                idempotent && unique && violations.is_empty() && round_trip,
                format!(
                    "idempotent {idempotent}, unique {unique}, round trip {round_trip}, violations {violations:?}"
                ),
            )
        })();
        out.push(case(format!("reduce/{}", nm.name), outcome));
    }
    out
}

fn category_laws(ctx: &Context) -> Vec<Case> {
    let guard = ctx.guard();
    let fs = &ctx.catalog.functors;
    let mut out = Vec::new();
    let small: Vec<&NamedMeromorphism> = ctx
        .meromorphisms()
        .iter()
        .filter(|nm| nm.m.reduced().apex().arrow_count() <= 24)
        .collect();
    for nm in &small {
        let outcome = (|| {
            let left = compose_meromorphisms(&identity_meromorphism(nm.m.target(), guard)?, &nm.m)?;
            let right = compose_meromorphisms(&nm.m, &identity_meromorphism(nm.m.source(), guard)?)?;
            check(left.same_class(&nm.m) && right.same_class(&nm.m), "identity is not a unit")
        })();
        out.push(case(format!("unit/{}", nm.name), outcome));
    }
    for a in &small {
        let bs = small.iter().filter(|b| Arc::ptr_eq(b.m.source(), a.m.target())).take(2);
        for b in bs {
            let cs = small.iter().filter(|c| Arc::ptr_eq(c.m.source(), b.m.target())).take(2);
            for c in cs {
                let outcome = (|| {
                    let left = compose_meromorphisms(&c.m, &compose_meromorphisms(&b.m, &a.m)?)?;
                    let right = compose_meromorphisms(&compose_meromorphisms(&c.m, &b.m)?, &a.m)?;
                    let w = fractions_equivalent(left.original(), right.original(), guard)?;
                    let ok = w.is_some_and(|w| w.verify(left.original(), right.original()));
                    check(ok, "composites are not equivalent")
                })();
                out.push(case(format!("assoc/{} ; {} ; {}", a.name, b.name, c.name), outcome));
            }
        }
    }
    let functorial: Vec<_> = fs.iter().filter(|f| size(&f.functor) <= 48).collect();
    for f in &functorial {
        for g in functorial.iter().filter(|g| g.dom == f.cod).take(2) {
            let outcome = (|| {
                let gf = g.functor.after(&f.functor)?;
                let c = compose_meromorphisms(&gamma(&g.functor, guard)?, &gamma(&f.functor, guard)?)?;
                check(c.same_class(&gamma(&gf, guard)?), "γ(g)γ(f) differs from γ(gf)")
            })();
            out.push(case(format!("gamma/{} ; {}", f.name, g.name), outcome));
        }
    }
    for (an, a) in &ctx.catalog.groupoids {
        for (bn, b) in &ctx.catalog.groupoids {
            if a.arrow_count() * b.arrow_count() > 36 {
                continue;
            }
            let outcome = (|| {
                let hom = all_functors(a, b, guard, 6)?;
                let ms = hom.iter().map(|f| gamma(f, guard)).collect::<gpd_core::Result<Vec<_>>>()?;
                let mut bad = Vec::new();
                for x in 0..hom.len() {
                    for y in 0..hom.len() {
                        let iso = naturally_isomorphic(&hom[x], &hom[y], guard)?.is_some();
                        if iso != ms[x].same_class(&ms[y]) {
                            bad.push((x, y));
                        }
                    }
                }
                check(bad.is_empty(), format!("mismatched pairs {bad:?}"))
            })();
            out.push(case(format!("gamma-iso/{an}->{bn}"), outcome));
        }
    }
    out
}

fn localization(ctx: &Context) -> Vec<Case> {
    let guard = ctx.guard();
    ctx.catalog
        .functors
        .iter()
        .filter(|f| size(&f.functor) <= 64)
        .map(|nf| {
            let outcome = (|| {
                let f = &nf.functor;
                let m = gamma(f, guard)?;
                let meriedric = is_meriedric_equivalence(&m);
                let equivalence = analyze_functor(f).equivalence;
                if meriedric != equivalence {
                    return check(false, format!("meriedric {meriedric}, equivalence {equivalence}"));
                }
                if !meriedric {
                    return check(true, "");
                }
                let inv = inverse_meromorphism(&m)?;
                let one = compose_meromorphisms(&inv, &m)?.same_class(&identity_meromorphism(f.dom(), guard)?);
                let other = compose_meromorphisms(&m, &inv)?.same_class(&identity_meromorphism(f.cod(), guard)?);
                check(one && other, format!("inverse composites identities: {one}, {other}"))
            })();
            case(format!("gamma/{}", nf.name), outcome)
        })
        .collect()
}

fn morita(ctx: &Context) -> Vec<Case> {
    let guard = ctx.guard();
    let mut out = Vec::new();
    let z2 = arc(standard::cyclic(2));
    let (ind, _) = induce(&z2, &SetMap::new(1, vec![0, 0]).expect("surjection")).expect("induced");
    let mut pinned: Vec<(String, Gpd, Gpd, bool)> = (2..=4)
        .map(|k| (format!("pair{k}~null1"), arc(standard::pair(k)), arc(standard::null(1)), true))
        .collect();
    pinned.push(("ind_z2~z2".into(), ind, z2.clone(), true));
    pinned.push(("z2!~null1".into(), z2.clone(), arc(standard::null(1)), false));
    pinned.push((
        "z4!~z2xz2".into(),
        arc(standard::cyclic(4)),
        arc(standard::product(&z2, &z2)),
        false,
    ));
    for (name, g, h, expected) in pinned {
        let outcome = morita_equivalent(&g, &h, guard).and_then(|r| {
            check(
                r.equivalent() == expected && r.consistent(),
                format!("equivalent {}, fast path {}", r.equivalent(), r.fast),
            )
        });
        out.push(case(format!("pinned/{name}"), outcome));
    }
    for (an, a) in &ctx.catalog.groupoids {
        for (bn, b) in &ctx.catalog.groupoids {
            let outcome = morita_equivalent(a, b, guard).and_then(|r| {
                let witnessed = r.witness.as_ref().map_or(true, |w| {
                    analyze_functor(&w.to_g).s_equivalence && analyze_functor(&w.to_h).s_equivalence
                });
                check(r.consistent() && witnessed, format!("fast path {}, witness {}", r.fast, r.equivalent()))
            });
            out.push(case(format!("pair/{an}~{bn}"), outcome));
        }
    }
    out
}

fn gz(ctx: &Context) -> Vec<Case> {
    let guard = ctx.guard();
    let fs = &ctx.catalog.functors;
    let mut out = Vec::new();
    for s in fs.iter().filter(|s| analyze_functor(&s.functor).s_equivalence) {
        for f in fs.iter().filter(|f| f.cod == s.cod) {
            let outcome = cstar_probe(&f.functor, &s.functor).and_then(|r| {
                check(r.holds(), format!("s' s-equivalence {}, commutes {}", r.s_prime_s_equivalence, r.commutes))
            });
            out.push(case(format!("cstar/{} ; {}", f.name, s.name), outcome));
        }
    }
    let p2 = arc(standard::pair(2));
    let id = Functor::identity(p2.clone());
    let swap = Functor::checked(p2.clone(), p2.clone(), vec![1, 0], vec![3, 2, 1, 0]).expect("swap");
    let collapse = Functor::constant(p2, arc(standard::null(1)), 0);
    let outcome = dstar_probe(&id, &swap, &collapse, guard).and_then(|r| {
        let detail = format!("{:?} after {} candidates, cap {}", r.outcome, r.examined, r.cap);
        Ok((r.outcome == DstarOutcome::NotFound, detail))
    });
    out.push(case("dstar/pair2-swap", outcome));
    out
}

fn reflector(ctx: &Context) -> Vec<Case> {
    let guard = ctx.guard();
    let gs = &ctx.catalog.groupoids;
    let mut out = Vec::new();
    let mut pis = Vec::new();
    for (name, g) in gs {
        let outcome = fundamental_plurigroup(g, guard).and_then(|r| {
            let pi = r.skeleton.plurigroup.clone();
            let again = fundamental_plurigroup(&pi, guard)?;
            let idem = find_isomorphism(&again.skeleton.plurigroup, &pi, guard)?.is_some();
            let ok = pi.classify().plurigroup && idem && is_meriedric_equivalence(&r.unit);
            pis.push(Some(pi));
            check(ok, format!("idempotent {idem}"))
        });
        if outcome.is_err() {
            pis.push(None);
        }
        out.push(case(format!("idempotent/{name}"), outcome));
    }
    for (i, (an, a)) in gs.iter().enumerate() {
        for (j, (bn, b)) in gs.iter().enumerate().skip(i + 1) {
            let (Some(pa), Some(pb)) = (&pis[i], &pis[j]) else {
                continue;
            };
            let outcome = (|| {
                let eq = morita_equivalent(a, b, guard)?.equivalent();
                let iso = find_isomorphism(pa, pb, guard)?.is_some();
                check(!eq || iso, "Morita equivalent but Π differs")
            })();
            out.push(case(format!("invariance/{an}~{bn}"), outcome));
        }
    }
    for nm in ctx.meromorphisms() {
        let m = &nm.m;
        if !m.target().classify().plurigroup || m.source().arrow_count() > 16 {
            continue;
        }
        let outcome = check_reflection_universal(m.source(), m.target(), m, guard).and_then(|r| {
            check(
                r.factorizes && r.unique && r.holomorphism.is_some(),
                format!("factorizes {}, unique {} of {} candidates", r.factorizes, r.unique, r.candidates),
            )
        });
        out.push(case(format!("universal/{}", nm.name), outcome));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny() -> Context {
        Context::new(CatalogConfig {
            max_objects: 2,
            per_pair: 2,
            ..CatalogConfig::default()
        })
    }

    #[test]
    fn validator_and_squares_pass_on_a_tiny_catalog() {
        let ctx = tiny();
        for n in [1, 2, 9, 10] {
            let r = run_suite(n, &ctx);
            assert!(r.passed(), "{}", r.summary());
        }
    }

    #[test]
    fn cases_are_sorted() {
        let r = run_suite(2, &tiny());
        assert!(r.cases.windows(2).all(|w| w[0].name <= w[1].name));
    }

    #[test]
    fn dstar_case_records_the_cap() {
        let r = run_suite(10, &tiny());
        let c = r.cases.iter().find(|c| c.name == "dstar/pair2-swap").unwrap();
        assert_eq!(c.status, Status::Pass);
        assert!(c.detail.contains("NotFound after 28 candidates, cap 64"), "{}", c.detail);
    }
}
