//! Command dispatch. [`run`] never exits the process; it returns the exit
//! code and the text the binary should print.
//!
//! Exit codes: 0 success or true, 1 false or not equivalent, 2 usage or
//! parse error, 3 validation or precondition error, 4 size-guard refusal.

use std::ffi::OsString;
use std::fmt::Write as _;

use clap::{Parser, Subcommand};
use gpd_core::bibundle::to_bibundle;
use gpd_core::build::holograph;
use gpd_core::fraction::{
    check_meromorphism, compose_meromorphisms, fractions_equivalent, is_irreducible, morita_equivalent,
};
use gpd_core::gz::{cstar_probe, dstar_probe};
use gpd_core::reflect::fundamental_plurigroup;
use gpd_core::search::find_section;
use gpd_core::subgroupoid::kernel;
use gpd_core::{analyze_functor, FiniteGroupoid, GpdError, Gpd, Meromorphism, SizeGuard};
use serde_json::{json, Value};

use crate::catalog::CatalogConfig;
use crate::format::{self, Document, FormatError, FractionEntry, FunctorEntry};
use crate::suites;

pub const OK: i32 = 0;
pub const FALSE: i32 = 1;
pub const PARSE: i32 = 2;
pub const VALIDATION: i32 = 3;
pub const GUARD: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "gpd", version, about = "Finite groupoids, holographs and meromorphisms")]
struct Cli {
    /// Arrow cap for exhaustive searches.
    #[arg(long, global = true, default_value_t = SizeGuard::DEFAULT_MAX_ARROWS)]
    max_arrows: usize,
    /// Seed for catalog sampling.
    #[arg(long, global = true, default_value_t = 7)]
    seed: u64,
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Class flags of a groupoid.
    Classify { file: String, groupoid: String },
    /// Property profile of a functor.
    Analyze { file: String, functor: String },
    /// Kernel of a functor.
    Kernel { file: String, functor: String },
    /// Holograph (p, q) of a functor.
    Holograph { file: String, functor: String },
    /// Irreducible representative of a fraction.
    Reduce { file: String, fraction: String },
    /// Whether two fractions are equivalent.
    Equiv { file: String, first: String, second: String },
    /// Composite `second ∘ first` of two meromorphisms.
    Compose { file: String, second: String, first: String },
    /// Morita equivalence of two groupoids.
    Morita { file: String, first: String, second: String },
    /// Fundamental plurigroup.
    Pi1 { file: String, groupoid: String },
    /// Bibundle of a meromorphism.
    Bibundle { file: String, fraction: String },
    /// Condition (C*) for `f` and `s` into a common target; with `g`,
    /// condition (d*) for parallel `f`, `g` and `s` out of their target.
    Gzprobe {
        file: String,
        f: String,
        s: String,
        g: Option<String>,
    },
    /// Run the property suites over the generated catalog.
    Selftest {
        #[arg(long, default_value_t = 4)]
        max_objects: usize,
        #[arg(long, default_value_t = 3)]
        per_pair: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Output {
    fn new(code: i32, stdout: String) -> Output {
        Output {
            code,
            stdout,
            stderr: String::new(),
        }
    }

    fn error(code: i32, message: String) -> Output {
        Output {
            code,
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
        }
    }
}

/// Failure classes mapped onto exit codes.
#[derive(Debug)]
enum Failure {
    Parse(String),
    Validation(String),
    Guard(String),
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        match e {
            FormatError::Syntax { .. } => Failure::Parse(e.to_string()),
            FormatError::Validation { .. } => Failure::Validation(e.to_string()),
        }
    }
}

impl From<GpdError> for Failure {
    fn from(e: GpdError) -> Self {
        match e {
            GpdError::SearchRefused { .. } => Failure::Guard(e.to_string()),
            _ => Failure::Validation(e.to_string()),
        }
    }
}

/// What a command produced: a verdict, text lines and the JSON value.
struct Answer {
    verdict: bool,
    text: String,
    json: Value,
}

fn answer(verdict: bool, text: String, json: Value) -> std::result::Result<Answer, Failure> {
    Ok(Answer { verdict, text, json })
}

pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { PARSE } else { OK };
            let text = e.render().to_string();
            return if code == OK {
                Output::new(OK, text)
            } else {
                Output {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let guard = SizeGuard::new(cli.max_arrows);
    let result = match &cli.command {
        Command::Selftest { max_objects, per_pair } => {
            let config = CatalogConfig {
                max_objects: *max_objects,
                seed: cli.seed,
                guard,
                per_pair: *per_pair,
            };
            let report = suites::run_all(config);
            let text = report.render();
            let json = serde_json::to_value(&report).unwrap_or(Value::Null);
            answer(report.passed(), text, json)
        }
        cmd => load(cmd).and_then(|doc| execute(cmd, &doc, guard)),
    };
    match result {
        Ok(a) => {
            let code = if a.verdict { OK } else { FALSE };
            let stdout = if cli.json {
                let mut s = serde_json::to_string_pretty(&a.json).unwrap_or_default();
                s.push('\n');
                s
            } else {
                a.text
            };
            Output::new(code, stdout)
        }
        Err(Failure::Parse(m)) => Output::error(PARSE, m),
        Err(Failure::Validation(m)) => Output::error(VALIDATION, m),
        Err(Failure::Guard(m)) => Output::error(GUARD, m),
    }
}

fn file_of(cmd: &Command) -> &str {
    match cmd {
        Command::Classify { file, .. }
        | Command::Analyze { file, .. }
        | Command::Kernel { file, .. }
        | Command::Holograph { file, .. }
        | Command::Reduce { file, .. }
        | Command::Equiv { file, .. }
        | Command::Compose { file, .. }
        | Command::Morita { file, .. }
        | Command::Pi1 { file, .. }
        | Command::Bibundle { file, .. }
        | Command::Gzprobe { file, .. } => file,
        Command::Selftest { .. } => "",
    }
}

fn load(cmd: &Command) -> std::result::Result<Document, Failure> {
    let path = file_of(cmd);
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Parse(format!("cannot read {path}: {e}")))?;
    Ok(format::parse(&text)?)
}

fn groupoid<'a>(doc: &'a Document, name: &str) -> std::result::Result<&'a Gpd, Failure> {
    doc.groupoid(name)
        .ok_or_else(|| Failure::Parse(format!("no groupoid named '{name}'")))
}

fn functor<'a>(doc: &'a Document, name: &str) -> std::result::Result<&'a FunctorEntry, Failure> {
    doc.functor(name)
        .ok_or_else(|| Failure::Parse(format!("no functor named '{name}'")))
}

fn fraction<'a>(doc: &'a Document, name: &str) -> std::result::Result<&'a FractionEntry, Failure> {
    doc.fraction(name)
        .ok_or_else(|| Failure::Parse(format!("no fraction named '{name}'")))
}

fn meromorphism(doc: &Document, name: &str) -> std::result::Result<Option<Meromorphism>, Failure> {
    let e = fraction(doc, name)?;
    if !check_meromorphism(&e.fraction)?.flags.is_meromorphism() {
        return Ok(None);
    }
    Ok(Some(Meromorphism::new(e.fraction.clone())?))
}

fn size(g: &FiniteGroupoid) -> String {
    format!("{} objects, {} arrows", g.object_count(), g.arrow_count())
}

fn not_meromorphism(name: &str) -> std::result::Result<Answer, Failure> {
    answer(
        false,
        format!("{name} is not a meromorphism\n"),
        json!({ "fraction": name, "meromorphism": false }),
    )
}

fn execute(cmd: &Command, doc: &Document, guard: SizeGuard) -> std::result::Result<Answer, Failure> {
    match cmd {
        Command::Classify { groupoid: name, .. } => {
            let g = groupoid(doc, name)?;
            let c = g.classify();
            let names = c.names();
            answer(true, format!("{}\n", names.join(" ")), json!({ "groupoid": name, "classes": names }))
        }
        Command::Analyze { functor: name, .. } => {
            let e = functor(doc, name)?;
            let p = analyze_functor(&e.functor);
            let mut text = String::new();
            for (flag, alias, on) in p.entries() {
                match alias {
                    Some(a) => writeln!(text, "{flag} ({a}): {on}"),
                    None => writeln!(text, "{flag}: {on}"),
                }
                .expect("write to string");
            }
            answer(true, text, json!({ "functor": name, "profile": p }))
        }
        Command::Kernel { functor: name, .. } => {
            let e = functor(doc, name)?;
            let k = kernel(&e.functor);
            let arrows = k.arrows();
            let text = format!(
                "kernel arrows: {arrows:?}\nprincipal: {}\nnull: {}\n",
                k.is_principal(),
                k.is_null()
            );
            answer(
                true,
                text,
                json!({ "functor": name, "arrows": arrows, "principal": k.is_principal(), "null": k.is_null() }),
            )
        }
        Command::Holograph { functor: name, .. } => {
            let e = functor(doc, name)?;
            let h = holograph(&e.functor, guard)?;
            let (pp, pq) = (analyze_functor(&h.p), analyze_functor(&h.q));
            let split = find_section(&h.q, guard)?.is_some();
            let text = format!(
                "apex: {}\np exactor: {}\nq s-equivalence: {}\nq split: {split}\n",
                size(&h.apex),
                pp.exactor,
                pq.s_equivalence
            );
            let json = json!({
                "functor": name,
                "apex": { "objects": h.apex.object_count(), "arrows": h.apex.arrow_count() },
                "p": pp, "q": pq, "q_split": split,
            });
            answer(pp.exactor && pq.s_equivalence && split, text, json)
        }
        Command::Reduce { fraction: name, .. } => {
            let Some(m) = meromorphism(doc, name)? else {
                return not_meromorphism(name);
            };
            let before = is_irreducible(m.original(), &[], guard)?;
            let after = is_irreducible(m.reduced(), &[], guard)?;
            let mut text = format!(
                "original apex: {}\nreduced apex: {}\nirreducible before: {}\nconditions before: {:?}\nconditions after: {:?}\n",
                size(m.original().apex()),
                size(m.reduced().apex()),
                before.is_irreducible(),
                before.conditions(),
                after.conditions(),
            );
            let entry = fraction(doc, name)?;
            let reduced_doc = reduced_document(name, entry, &m);
            text.push_str(&reduced_doc);
            let json = json!({
                "fraction": name,
                "original": { "objects": m.original().apex().object_count(), "arrows": m.original().apex().arrow_count() },
                "reduced": { "objects": m.reduced().apex().object_count(), "arrows": m.reduced().apex().arrow_count() },
                "before": before, "after": after, "document": reduced_doc,
            });
            answer(true, text, json)
        }
        Command::Equiv { first, second, .. } => {
            let (a, b) = (fraction(doc, first)?, fraction(doc, second)?);
            let w = fractions_equivalent(&a.fraction, &b.fraction, guard)?;
            let text = match &w {
                Some(w) => format!("equivalent\nwitness apex: {}\n", size(&w.apex)),
                None => "not equivalent\n".to_string(),
            };
            let json = json!({
                "first": first, "second": second, "equivalent": w.is_some(),
                "witness_arrows": w.as_ref().map(|w| w.apex.arrow_count()),
            });
            answer(w.is_some(), text, json)
        }
        Command::Compose { second, first, .. } => {
            let (Some(m2), Some(m1)) = (meromorphism(doc, second)?, meromorphism(doc, first)?) else {
                return answer(
                    false,
                    "both arguments must be meromorphisms\n".into(),
                    json!({ "meromorphisms": false }),
                );
            };
            let (e2, e1) = (fraction(doc, second)?, fraction(doc, first)?);
            if e1.target != e2.source {
                return Err(Failure::Validation(format!(
                    "{first} ends at {} but {second} starts at {}",
                    e1.target, e2.source
                )));
            }
            let c = compose_meromorphisms(&m2, &m1)?;
            let name = format!("{second}_{first}");
            let entry = FractionEntry {
                target: e2.target.clone(),
                apex: String::new(),
                source: e1.source.clone(),
                num: String::new(),
                den: String::new(),
                fraction: c.reduced().clone(),
            };
            let text = reduced_document(&name, &entry, &c);
            let json = json!({
                "composite": name,
                "apex": { "objects": c.reduced().apex().object_count(), "arrows": c.reduced().apex().arrow_count() },
                "document": text,
            });
            answer(true, text, json)
        }
        Command::Morita { first, second, .. } => {
            let (g, h) = (groupoid(doc, first)?, groupoid(doc, second)?);
            let r = morita_equivalent(g, h, guard)?;
            let mut text = String::from(if r.equivalent() { "equivalent\n" } else { "not equivalent\n" });
            if let Some(w) = &r.witness {
                let _ = writeln!(text, "witness apex: {}", size(&w.apex));
                let _ = writeln!(
                    text,
                    "legs s-equivalences: {} {}",
                    analyze_functor(&w.to_g).s_equivalence,
                    analyze_functor(&w.to_h).s_equivalence
                );
            }
            let _ = writeln!(text, "fast path: {}", r.fast);
            let json = json!({
                "first": first, "second": second, "equivalent": r.equivalent(), "fast": r.fast,
                "witness_arrows": r.witness.as_ref().map(|w| w.apex.arrow_count()),
            });
            answer(r.equivalent(), text, json)
        }
        Command::Pi1 { groupoid: name, .. } => {
            let g = groupoid(doc, name)?;
            let r = fundamental_plurigroup(g, guard)?;
            let pi = &r.skeleton.plurigroup;
            let orders: Vec<usize> = pi.objects().map(|x| pi.hom(x, x).len()).collect();
            let mut text = format!("orbits: {}\n", orders.len());
            for (x, (rep, n)) in r.skeleton.representatives.iter().zip(&orders).enumerate() {
                let _ = writeln!(text, "orbit {x} at object {rep}: vertex group of order {n}");
            }
            let json = json!({
                "groupoid": name, "representatives": r.skeleton.representatives, "vertex_group_orders": orders,
            });
            answer(true, text, json)
        }
        Command::Bibundle { fraction: name, .. } => {
            let Some(m) = meromorphism(doc, name)? else {
                return not_meromorphism(name);
            };
            let b = to_bibundle(&m)?;
            let violations = b.violations();
            let mut text = format!("points: {}\nrho: {:?}\nsigma: {:?}\n", b.points(), b.rho.image(), b.sigma.image());
            for e in 0..b.points() {
                let left: Vec<String> = b
                    .left
                    .arrows()
                    .filter_map(|h| b.act_left(h, e).map(|t| format!("{h}:{t}")))
                    .collect();
                let right: Vec<String> = b
                    .right
                    .arrows()
                    .filter_map(|g| b.act_right(e, g).map(|t| format!("{g}:{t}")))
                    .collect();
                let _ = writeln!(text, "point {e}: left [{}] right [{}]", left.join(" "), right.join(" "));
            }
            let _ = writeln!(text, "invariants: {}", if violations.is_empty() { "ok" } else { "violated" });
            for v in &violations {
                let _ = writeln!(text, "  {v}");
            }
            let json = json!({
                "fraction": name, "points": b.points(), "rho": b.rho.image(), "sigma": b.sigma.image(),
                "violations": violations,
            });
            answer(violations.is_empty(), text, json)
        }
        Command::Gzprobe { f, s, g, .. } => {
            let (fe, se) = (functor(doc, f)?, functor(doc, s)?);
            let mut text = String::new();
            let mut verdict = true;
            let mut cstar = Value::Null;
            if fe.cod == se.cod {
                let c = cstar_probe(&fe.functor, &se.functor)?;
                let _ = writeln!(
                    text,
                    "cstar: {} (pullback {} objects, {} arrows; s' s-equivalence {}, commutes {})",
                    if c.holds() { "holds" } else { "fails" },
                    c.pullback_objects,
                    c.pullback_arrows,
                    c.s_prime_s_equivalence,
                    c.commutes
                );
                verdict &= c.holds();
                cstar = json!({ "holds": c.holds(), "pullback_arrows": c.pullback_arrows });
            } else if g.is_none() {
                return Err(Failure::Validation(format!(
                    "(C*) needs a common codomain: {f} ends at {}, {s} at {}",
                    fe.cod, se.cod
                )));
            }
            let mut dstar = Value::Null;
            if let Some(g) = g {
                let ge = functor(doc, g)?;
                let d = dstar_probe(&fe.functor, &ge.functor, &se.functor, guard)?;
                let _ = writeln!(text, "dstar: {:?} after {} candidates, cap {}", d.outcome, d.examined, d.cap);
                verdict &= matches!(d.outcome, gpd_core::gz::DstarOutcome::Found { .. });
                dstar = serde_json::to_value(&d).unwrap_or(Value::Null);
            }
            answer(verdict, text, json!({ "cstar": cstar, "dstar": dstar }))
        }
        Command::Selftest { .. } => unreachable!("handled before loading a file"),
    }
}

/// The reduced representative as a self-contained GPD document.
fn reduced_document(name: &str, entry: &FractionEntry, m: &Meromorphism) -> String {
    let r = m.reduced();
    let apex = format!("{name}_apex");
    let num = format!("{name}_num");
    let den = format!("{name}_den");
    let (target, source) = (format!("{name}_target"), format!("{name}_source"));
    let mut out = String::new();
    format::write_groupoid(&mut out, &target, r.target());
    format::write_groupoid(&mut out, &source, r.source());
    format::write_groupoid(&mut out, &apex, r.apex());
    format::write_functor(&mut out, &num, &apex, &target, &r.p);
    format::write_functor(&mut out, &den, &apex, &source, &r.q);
    let e = FractionEntry {
        target,
        apex: apex.clone(),
        source,
        num,
        den,
        fraction: entry.fraction.clone(),
    };
    format::write_fraction(&mut out, &format!("{name}_reduced"), &e);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn file(text: &str) -> tempfile::NamedTempFile {
        let f = tempfile::NamedTempFile::new().unwrap();
        std::fs::write(f.path(), text).unwrap();
        f
    }

    fn gpd(args: &[&str]) -> Output {
        run(std::iter::once("gpd").chain(args.iter().copied()))
    }

    #[test]
    fn classify_pair2() {
        let f = file("std G = pair 2\n");
        let out = gpd(&["classify", f.path().to_str().unwrap(), "G"]);
        assert_eq!(out.code, OK);
        assert_eq!(out.stdout, "banal principal transitive\n");
    }

    #[test]
    fn morita_pair3_null1() {
        let f = file("std G = pair 3\nstd H = null 1\nstd Z = cyclic 2\n");
        let path = f.path().to_str().unwrap();
        let out = gpd(&["morita", path, "G", "H"]);
        assert_eq!(out.code, OK);
        assert!(out.stdout.starts_with("equivalent\nwitness apex:"), "{}", out.stdout);
        assert_eq!(gpd(&["morita", path, "Z", "H"]).code, FALSE);
    }

    #[test]
    fn exit_classes() {
        let bad = file("std G = pear 2\n");
        assert_eq!(gpd(&["classify", bad.path().to_str().unwrap(), "G"]).code, PARSE);
        let invalid = file("std Z = cyclic 4\nfunctor f : Z -> Z\nobj 0 0\narr 0 0\narr 1 1\narr 2 0\narr 3 3\nend\n");
        let out = gpd(&["analyze", invalid.path().to_str().unwrap(), "f"]);
        assert_eq!(out.code, VALIDATION);
        assert!(out.stderr.contains("composition not preserved"));
        let big = file("std P = pair 4\nstd Q = product P P\n");
        let out = gpd(&["--max-arrows", "8", "morita", big.path().to_str().unwrap(), "Q", "P"]);
        assert_eq!(out.code, GUARD, "{out:?}");
        assert_eq!(gpd(&["frobnicate"]).code, PARSE);
    }

    #[test]
    fn reduce_prints_a_parseable_document() {
        let text = "\
std P = pair 2
std T = null 1
functor c : P -> T
obj 0 0
obj 1 0
arr 0 0
arr 1 0
arr 2 0
arr 3 0
end
fraction m : T <- P -> T
num c
den c
end
";
        let f = file(text);
        let out = gpd(&["reduce", f.path().to_str().unwrap(), "m"]);
        assert_eq!(out.code, OK, "{out:?}");
        let doc_start = out.stdout.find("groupoid").unwrap();
        let doc = format::parse(&out.stdout[doc_start..]).unwrap();
        let red = doc.fraction("m_reduced").unwrap();
        assert_eq!(red.fraction.apex().arrow_count(), 1);
        let json = gpd(&["--json", "reduce", f.path().to_str().unwrap(), "m"]);
        let v: Value = serde_json::from_str(&json.stdout).unwrap();
        assert_eq!(v["reduced"]["arrows"], 1);
    }
}
