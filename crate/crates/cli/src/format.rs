//! The line-oriented GPD text format.
//!
//! ```text
//! # comments run to the end of the line
//! std P = pair 2
//! groupoid Z2
//! objects 1
//! arrow 0 0 0
//! arrow 1 0 0
//! unit 0 0
//! inv 0 0
//! inv 1 1
//! comp 0 0 0
//! comp 0 1 1
//! comp 1 0 1
//! comp 1 1 0
//! end
//! functor F : P -> Z2
//! obj 0 0
//! obj 1 0
//! arr 0 0
//! ...
//! end
//! fraction M : Z2 <- P -> P
//! num F
//! den G
//! end
//! ```
//!
//! `comp a b c` means `c = a after b`.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::Arc;

use gpd_core::build::induce;
use gpd_core::{standard, FiniteGroupoid, Fraction, Functor, Gpd, SetMap};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("line {line}: {message}")]
    Validation { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, FormatError>;

#[derive(Debug, Clone)]
pub struct FunctorEntry {
    pub dom: String,
    pub cod: String,
    pub functor: Functor,
}

#[derive(Debug, Clone)]
pub struct FractionEntry {
    pub target: String,
    pub apex: String,
    pub source: String,
    pub num: String,
    pub den: String,
    pub fraction: Fraction,
}

/// Named groupoids, functors and fractions in declaration order.
#[derive(Debug, Clone, Default)]
pub struct Document {
    groupoids: Vec<(String, Gpd)>,
    functors: Vec<(String, FunctorEntry)>,
    fractions: Vec<(String, FractionEntry)>,
    names: HashMap<String, (Kind, usize)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Groupoid,
    Functor,
    Fraction,
}

impl Kind {
    fn label(self) -> &'static str {
        match self {
            Kind::Groupoid => "groupoid",
            Kind::Functor => "functor",
            Kind::Fraction => "fraction",
        }
    }
}

impl Document {
    pub fn groupoids(&self) -> &[(String, Gpd)] {
        &self.groupoids
    }

    pub fn functors(&self) -> &[(String, FunctorEntry)] {
        &self.functors
    }

    pub fn fractions(&self) -> &[(String, FractionEntry)] {
        &self.fractions
    }

    pub fn groupoid(&self, name: &str) -> Option<&Gpd> {
        match self.names.get(name) {
            Some(&(Kind::Groupoid, i)) => Some(&self.groupoids[i].1),
            _ => None,
        }
    }

    pub fn functor(&self, name: &str) -> Option<&FunctorEntry> {
        match self.names.get(name) {
            Some(&(Kind::Functor, i)) => Some(&self.functors[i].1),
            _ => None,
        }
    }

    pub fn fraction(&self, name: &str) -> Option<&FractionEntry> {
        match self.names.get(name) {
            Some(&(Kind::Fraction, i)) => Some(&self.fractions[i].1),
            _ => None,
        }
    }

    fn claim(&mut self, name: &str, kind: Kind, tok: &Token) -> Result<()> {
        if let Some((k, _)) = self.names.get(name) {
            return Err(tok.syntax(format!("name '{name}' already declared as a {}", k.label())));
        }
        let index = match kind {
            Kind::Groupoid => self.groupoids.len(),
            Kind::Functor => self.functors.len(),
            Kind::Fraction => self.fractions.len(),
        };
        self.names.insert(name.to_string(), (kind, index));
        Ok(())
    }
}

#[derive(Debug, Clone)]
struct Token {
    text: String,
    line: usize,
    column: usize,
}

impl Token {
    fn syntax(&self, message: impl Into<String>) -> FormatError {
        FormatError::Syntax {
            line: self.line,
            column: self.column,
            message: message.into(),
        }
    }

    fn validation(&self, message: impl Into<String>) -> FormatError {
        FormatError::Validation {
            line: self.line,
            message: message.into(),
        }
    }

    fn number(&self) -> Result<usize> {
        self.text
            .parse()
            .map_err(|_| self.syntax(format!("expected a non-negative integer, found '{}'", self.text)))
    }
}

/// Splits one line into tokens with 1-based columns, dropping comments.
fn tokenize(line_no: usize, line: &str) -> Vec<Token> {
    let line = line.split('#').next().unwrap_or("");
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices().chain(std::iter::once((line.len(), ' '))) {
        match (c.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push(Token {
                    text: line[s..i].to_string(),
                    line: line_no,
                    column: line[..s].chars().count() + 1,
                });
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    out
}

struct Lines {
    lines: Vec<(usize, Vec<Token>)>,
    pos: usize,
    last_line: usize,
}

impl Lines {
    fn new(text: &str) -> Lines {
        let lines: Vec<(usize, Vec<Token>)> = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, tokenize(i + 1, l)))
            .filter(|(_, t)| !t.is_empty())
            .collect();
        let last_line = text.lines().count().max(1);
        Lines { lines, pos: 0, last_line }
    }

    fn next(&mut self) -> Option<(usize, Vec<Token>)> {
        let out = self.lines.get(self.pos).cloned();
        self.pos += 1;
        out
    }

    fn eof(&self, what: &str) -> FormatError {
        FormatError::Syntax {
            line: self.last_line,
            column: 1,
            message: format!("unexpected end of input inside {what} block"),
        }
    }
}

fn expect_len(toks: &[Token], n: usize, usage: &str) -> Result<()> {
    if toks.len() != n {
        let at = toks.get(n).unwrap_or(&toks[toks.len() - 1]);
        return Err(at.syntax(format!("expected '{usage}'")));
    }
    Ok(())
}

fn numbers(toks: &[Token]) -> Result<Vec<usize>> {
    toks.iter().map(Token::number).collect()
}

fn identifier(tok: &Token) -> Result<String> {
    let ok = tok
        .text
        .chars()
        .all(|c| c.is_alphanumeric() || matches!(c, '_' | '-' | '.' | '\''));
    if tok.text.is_empty() || !ok || tok.text.chars().next().is_some_and(|c| c.is_ascii_digit()) {
        return Err(tok.syntax(format!("invalid name '{}'", tok.text)));
    }
    Ok(tok.text.clone())
}

pub fn parse(text: &str) -> Result<Document> {
    let mut doc = Document::default();
    let mut lines = Lines::new(text);
    while let Some((_, toks)) = lines.next() {
        let head = &toks[0];
        match head.text.as_str() {
            "groupoid" => {
                expect_len(&toks, 2, "groupoid <name>")?;
                let name = identifier(&toks[1])?;
                doc.claim(&name, Kind::Groupoid, &toks[1])?;
                let g = parse_groupoid_block(&mut lines, head)?;
                doc.groupoids.push((name, Arc::new(g)));
            }
            "std" => {
                if toks.len() < 4 || toks[2].text != "=" {
                    return Err(head.syntax("expected 'std <name> = <construction>'"));
                }
                let name = identifier(&toks[1])?;
                let g = parse_std(&doc, &toks[3..])?;
                doc.claim(&name, Kind::Groupoid, &toks[1])?;
                doc.groupoids.push((name, Arc::new(g)));
            }
            "functor" => {
                if toks.len() != 6 || toks[2].text != ":" || toks[4].text != "->" {
                    return Err(head.syntax("expected 'functor <name> : <G> -> <H>'"));
                }
                let name = identifier(&toks[1])?;
                let dom = lookup_groupoid(&doc, &toks[3])?;
                let cod = lookup_groupoid(&doc, &toks[5])?;
                doc.claim(&name, Kind::Functor, &toks[1])?;
                let functor = parse_functor_block(&mut lines, head, dom, cod)?;
                doc.functors.push((
                    name,
                    FunctorEntry {
                        dom: toks[3].text.clone(),
                        cod: toks[5].text.clone(),
                        functor,
                    },
                ));
            }
            "fraction" => {
                if toks.len() != 8 || toks[2].text != ":" || toks[4].text != "<-" || toks[6].text != "->" {
                    return Err(head.syntax("expected 'fraction <name> : <H> <- <K> -> <G>'"));
                }
                let name = identifier(&toks[1])?;
                for t in [&toks[3], &toks[5], &toks[7]] {
                    lookup_groupoid(&doc, t)?;
                }
                doc.claim(&name, Kind::Fraction, &toks[1])?;
                let entry = parse_fraction_block(&mut lines, &doc, head, [&toks[3], &toks[5], &toks[7]])?;
                doc.fractions.push((name, entry));
            }
            other => return Err(head.syntax(format!("unknown declaration '{other}'"))),
        }
    }
    Ok(doc)
}

fn lookup_groupoid(doc: &Document, tok: &Token) -> Result<Gpd> {
    doc.groupoid(&tok.text)
        .cloned()
        .ok_or_else(|| tok.syntax(format!("unknown groupoid '{}'", tok.text)))
}

fn parse_groupoid_block(lines: &mut Lines, head: &Token) -> Result<FiniteGroupoid> {
    let mut objects = None;
    let mut arrows: Vec<Option<(usize, usize)>> = Vec::new();
    let mut units: Vec<Option<usize>> = Vec::new();
    let mut inv: Vec<Option<usize>> = Vec::new();
    let mut comp = Vec::new();
    let mut first_arrow: Option<Token> = None;
    loop {
        let (_, toks) = lines.next().ok_or_else(|| lines.eof("groupoid"))?;
        let t = &toks[0];
        match t.text.as_str() {
            "objects" => {
                expect_len(&toks, 2, "objects <n>")?;
                let n = toks[1].number()?;
                objects = Some(n);
                units = vec![None; n];
            }
            "arrow" => {
                expect_len(&toks, 4, "arrow <id> <src> <tgt>")?;
                let v = numbers(&toks[1..])?;
                let n = objects.ok_or_else(|| t.syntax("'objects' must come before arrows"))?;
                if v[1] >= n || v[2] >= n {
                    return Err(toks[2].syntax(format!("arrow endpoints must lie in 0..{n}")));
                }
                if v[0] >= arrows.len() {
                    arrows.resize(v[0] + 1, None);
                }
                if arrows[v[0]].replace((v[1], v[2])).is_some() {
                    return Err(toks[1].syntax(format!("arrow {} declared twice", v[0])));
                }
                first_arrow.get_or_insert_with(|| t.clone());
            }
            "unit" => {
                expect_len(&toks, 3, "unit <obj> <arrow>")?;
                let v = numbers(&toks[1..])?;
                let slot = units
                    .get_mut(v[0])
                    .ok_or_else(|| toks[1].syntax(format!("unknown object {}", v[0])))?;
                if slot.replace(v[1]).is_some() {
                    return Err(toks[1].syntax(format!("unit of object {} given twice", v[0])));
                }
            }
            "inv" => {
                expect_len(&toks, 3, "inv <a> <b>")?;
                let v = numbers(&toks[1..])?;
                if v[0] >= inv.len() {
                    inv.resize(v[0] + 1, None);
                }
                if inv[v[0]].replace(v[1]).is_some() {
                    return Err(toks[1].syntax(format!("inverse of arrow {} given twice", v[0])));
                }
            }
            "comp" => {
                expect_len(&toks, 4, "comp <a> <b> <c>")?;
                let v = numbers(&toks[1..])?;
                comp.push((v[0], v[1], v[2]));
            }
            "end" => {
                expect_len(&toks, 1, "end")?;
                break;
            }
            other => return Err(t.syntax(format!("unexpected '{other}' in groupoid block"))),
        }
    }
    let n = objects.ok_or_else(|| head.validation("groupoid block has no 'objects' line"))?;
    let arrows: Vec<(usize, usize)> = arrows
        .iter()
        .enumerate()
        .map(|(i, a)| a.ok_or_else(|| head.validation(format!("arrow {i} is not declared"))))
        .collect::<Result<_>>()?;
    let units: Vec<usize> = units
        .iter()
        .enumerate()
        .map(|(x, u)| u.ok_or_else(|| head.validation(format!("object {x} has no unit"))))
        .collect::<Result<_>>()?;
    inv.resize(arrows.len(), None);
    let inv: Vec<usize> = inv
        .iter()
        .enumerate()
        .map(|(a, i)| i.ok_or_else(|| head.validation(format!("arrow {a} has no inverse"))))
        .collect::<Result<_>>()?;
    let g = FiniteGroupoid::from_tables(n, &arrows, units, inv, comp).map_err(|e| head.validation(e.to_string()))?;
    let report = g.validate();
    if let Some(v) = report.first() {
        return Err(head.validation(format!("groupoid axioms violated: {v}")));
    }
    Ok(g)
}

fn parse_std(doc: &Document, toks: &[Token]) -> Result<FiniteGroupoid> {
    let kind = &toks[0];
    let invalid = |e: gpd_core::GpdError| kind.validation(e.to_string());
    let count = |n: usize, usage: &str| expect_len(toks, n, usage);
    let g = match kind.text.as_str() {
        "null" | "pair" | "cyclic" => {
            count(2, &format!("{} <k>", kind.text))?;
            let k = toks[1].number()?;
            match kind.text.as_str() {
                "null" => standard::null(k),
                "pair" => standard::pair(k),
                _ => {
                    if k == 0 {
                        return Err(toks[1].validation("cyclic group order must be positive"));
                    }
                    standard::cyclic(k)
                }
            }
        }
        "sym3" => {
            count(1, "sym3")?;
            standard::sym3()
        }
        "equivrel" => {
            if toks.len() < 2 {
                return Err(kind.syntax("expected 'equivrel <k> <block> ...'"));
            }
            let k = toks[1].number()?;
            let blocks = toks[2..]
                .iter()
                .map(|t| {
                    t.text
                        .split(',')
                        .map(|s| {
                            s.parse::<usize>()
                                .map_err(|_| t.syntax("blocks are comma-separated object lists"))
                        })
                        .collect::<Result<Vec<usize>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            standard::equiv_rel(k, &blocks).map_err(invalid)?
        }
        "action" => {
            if toks.len() < 5 || toks[1].text != "cyclic" || toks[3].text != "on" {
                return Err(kind.syntax("expected 'action cyclic <k> on <m> <image> ...'"));
            }
            let k = toks[2].number()?;
            let m = toks[4].number()?;
            let images = numbers(&toks[5..])?;
            if k == 0 {
                return Err(toks[2].validation("cyclic group order must be positive"));
            }
            standard::action_cyclic(k, m, &images).map_err(invalid)?
        }
        "union" | "product" => {
            count(3, &format!("{} <name> <name>", kind.text))?;
            let a = lookup_groupoid(doc, &toks[1])?;
            let b = lookup_groupoid(doc, &toks[2])?;
            if kind.text == "union" {
                standard::disjoint_union(&a, &b)
            } else {
                standard::product(&a, &b)
            }
        }
        "induce" => {
            if toks.len() < 3 || toks[2].text != "along" {
                return Err(kind.syntax("expected 'induce <name> along <image> ...'"));
            }
            let g = lookup_groupoid(doc, &toks[1])?;
            let image = numbers(&toks[3..])?;
            let map = SetMap::new(g.object_count(), image).map_err(invalid)?;
            let (ind, _) = induce(&g, &map).map_err(invalid)?;
            Arc::try_unwrap(ind).unwrap_or_else(|a| (*a).clone())
        }
        other => return Err(kind.syntax(format!("unknown construction '{other}'"))),
    };
    Ok(g)
}

fn parse_functor_block(lines: &mut Lines, head: &Token, dom: Gpd, cod: Gpd) -> Result<Functor> {
    let mut obj = vec![None; dom.object_count()];
    let mut arr = vec![None; dom.arrow_count()];
    loop {
        let (_, toks) = lines.next().ok_or_else(|| lines.eof("functor"))?;
        let t = &toks[0];
        let (slots, range, what) = match t.text.as_str() {
            "obj" => (&mut obj, cod.object_count(), "object"),
            "arr" => (&mut arr, cod.arrow_count(), "arrow"),
            "end" => {
                expect_len(&toks, 1, "end")?;
                break;
            }
            other => return Err(t.syntax(format!("unexpected '{other}' in functor block"))),
        };
        expect_len(&toks, 3, &format!("{} <x> <y>", t.text))?;
        let v = numbers(&toks[1..])?;
        if v[1] >= range {
            return Err(toks[2].syntax(format!("target has no {what} {}", v[1])));
        }
        let slot = slots
            .get_mut(v[0])
            .ok_or_else(|| toks[1].syntax(format!("source has no {what} {}", v[0])))?;
        if slot.replace(v[1]).is_some() {
            return Err(toks[1].syntax(format!("{what} {} mapped twice", v[0])));
        }
    }
    let complete = |v: Vec<Option<usize>>, what: &str| -> Result<Vec<usize>> {
        v.iter()
            .enumerate()
            .map(|(i, x)| x.ok_or_else(|| head.validation(format!("{what} {i} is not mapped"))))
            .collect()
    };
    let obj = complete(obj, "object")?;
    let arr = complete(arr, "arrow")?;
    Functor::checked(dom, cod, obj, arr).map_err(|e| head.validation(e.to_string()))
}

fn parse_fraction_block(lines: &mut Lines, doc: &Document, head: &Token, names: [&Token; 3]) -> Result<FractionEntry> {
    let [target, apex, source] = names;
    let mut num: Option<Token> = None;
    let mut den: Option<Token> = None;
    loop {
        let (_, toks) = lines.next().ok_or_else(|| lines.eof("fraction"))?;
        let t = &toks[0];
        let slot = match t.text.as_str() {
            "num" => &mut num,
            "den" => &mut den,
            "end" => {
                expect_len(&toks, 1, "end")?;
                break;
            }
            other => return Err(t.syntax(format!("unexpected '{other}' in fraction block"))),
        };
        expect_len(&toks, 2, &format!("{} <functor>", t.text))?;
        if slot.replace(toks[1].clone()).is_some() {
            return Err(t.syntax(format!("'{}' given twice", t.text)));
        }
    }
    let num = num.ok_or_else(|| head.validation("fraction has no numerator"))?;
    let den = den.ok_or_else(|| head.validation("fraction has no denominator"))?;
    let get = |tok: &Token, cod: &Token| -> Result<Functor> {
        let e = doc
            .functor(&tok.text)
            .ok_or_else(|| tok.syntax(format!("unknown functor '{}'", tok.text)))?;
        if e.dom != apex.text || e.cod != cod.text {
            return Err(tok.validation(format!(
                "functor '{}' runs {} -> {}, expected {} -> {}",
                tok.text, e.dom, e.cod, apex.text, cod.text
            )));
        }
        Ok(e.functor.clone())
    };
    let p = get(&num, target)?;
    let q = get(&den, source)?;
    let fraction = Fraction::new(p, q).map_err(|e| head.validation(e.to_string()))?;
    Ok(FractionEntry {
        target: target.text.clone(),
        apex: apex.text.clone(),
        source: source.text.clone(),
        num: num.text,
        den: den.text,
        fraction,
    })
}

pub fn write_groupoid(out: &mut String, name: &str, g: &FiniteGroupoid) {
    let _ = writeln!(out, "groupoid {name}");
    let _ = writeln!(out, "objects {}", g.object_count());
    for a in g.arrows() {
        let _ = writeln!(out, "arrow {a} {} {}", g.src(a), g.tgt(a));
    }
    for x in g.objects() {
        let _ = writeln!(out, "unit {x} {}", g.unit(x));
    }
    for a in g.arrows() {
        let _ = writeln!(out, "inv {a} {}", g.inv(a));
    }
    for (a, b, c) in g.composition_entries() {
        let _ = writeln!(out, "comp {a} {b} {c}");
    }
    out.push_str("end\n");
}

pub fn write_functor(out: &mut String, name: &str, dom: &str, cod: &str, f: &Functor) {
    let _ = writeln!(out, "functor {name} : {dom} -> {cod}");
    for x in f.dom().objects() {
        let _ = writeln!(out, "obj {x} {}", f.obj(x));
    }
    for a in f.dom().arrows() {
        let _ = writeln!(out, "arr {a} {}", f.arr(a));
    }
    out.push_str("end\n");
}

pub fn write_fraction(out: &mut String, name: &str, e: &FractionEntry) {
    let _ = writeln!(out, "fraction {name} : {} <- {} -> {}", e.target, e.apex, e.source);
    let _ = writeln!(out, "num {}", e.num);
    let _ = writeln!(out, "den {}", e.den);
    out.push_str("end\n");
}

/// Writes every structure in explicit form; `parse` reads it back.
pub fn serialize(doc: &Document) -> String {
    let mut out = String::new();
    for (name, g) in &doc.groupoids {
        write_groupoid(&mut out, name, g);
    }
    for (name, e) in &doc.functors {
        write_functor(&mut out, name, &e.dom, &e.cod, &e.functor);
    }
    for (name, e) in &doc.fractions {
        write_fraction(&mut out, name, e);
    }
    out
}
