//! Line-oriented text formats for DGAs, duality instances and two-copy data.
//!
//! DGA files:
//!
//! ```text
//! # comment
//! ring Z2
//! grading Z
//! dim 1
//! gen q1 1
//! gen q5 2 action=3/2
//! d q1 = 1 + q7 + q7*q6*q5
//! betti 1 1
//! ```
//!
//! A differential is a sum of terms separated by `+` or `-`; a term is an
//! optional coefficient followed by `*`-joined generator names, and `1` is the
//! unit. Generators without a `d` line are cycles.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use thiserror::Error;

use crate::complex::BasedChainComplex;
use crate::dga::{Dga, GeneratorTable};
use crate::duality::DualityInstance;
use crate::error::{Error, Result};
use crate::grading::GradingGroup;
use crate::matrix::Matrix;
use crate::poly::{NoncommPoly, Word};
use crate::ring::{format_scalar, CoefficientRing, Scalar};
use crate::two_copy::{MorseComplex, TwoCopyData};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

fn err<T>(line: usize, column: usize, message: impl Into<String>) -> std::result::Result<T, ParseError> {
    Err(ParseError {
        line,
        column,
        message: message.into(),
    })
}

/// A non-comment line split into whitespace-separated words with their columns.
struct Line<'a> {
    number: usize,
    text: &'a str,
    words: Vec<(usize, &'a str)>,
}

fn lines(text: &str) -> impl Iterator<Item = Line<'_>> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("");
        let mut words = Vec::new();
        let mut start = None;
        for (pos, ch) in body.char_indices() {
            match (ch.is_whitespace(), start) {
                (false, None) => start = Some(pos),
                (true, Some(s)) => {
                    words.push((s + 1, &body[s..pos]));
                    start = None;
                }
                _ => {}
            }
        }
        if let Some(s) = start {
            words.push((s + 1, &body[s..]));
        }
        (!words.is_empty()).then_some(Line {
            number: i + 1,
            text: body,
            words,
        })
    })
}

impl Line<'_> {
    fn word(&self, i: usize, what: &str) -> std::result::Result<(usize, &str), ParseError> {
        match self.words.get(i) {
            Some(&w) => Ok(w),
            None => err(self.number, self.text.len() + 1, format!("expected {what}")),
        }
    }

    fn no_more(&self, i: usize) -> std::result::Result<(), ParseError> {
        match self.words.get(i) {
            Some(&(col, w)) => err(self.number, col, format!("unexpected `{w}`")),
            None => Ok(()),
        }
    }

    fn int(&self, i: usize, what: &str) -> std::result::Result<i64, ParseError> {
        let (col, w) = self.word(i, what)?;
        w.parse()
            .or_else(|_| err(self.number, col, format!("expected {what}, found `{w}`")))
    }

    /// Text after `=`, with the column of its first character.
    fn rhs(&self) -> std::result::Result<(usize, &str), ParseError> {
        match self.text.find('=') {
            Some(pos) => Ok((pos + 2, &self.text[pos + 1..])),
            None => err(self.number, self.text.len() + 1, "expected `=`"),
        }
    }
}

fn parse_ring(line: &Line, i: usize) -> std::result::Result<CoefficientRing, ParseError> {
    let (col, w) = line.word(i, "a ring")?;
    w.parse()
        .or_else(|e: Error| err(line.number, col, e.to_string()))
}

fn parse_grading(line: &Line, i: usize) -> std::result::Result<GradingGroup, ParseError> {
    let (col, w) = line.word(i, "a grading group")?;
    if w == "Z" {
        return Ok(GradingGroup::Z);
    }
    match w.strip_prefix('Z').and_then(|r| r.parse::<u64>().ok()) {
        Some(n) if n >= 1 => Ok(GradingGroup::cyclic(n)),
        _ => err(line.number, col, format!("unknown grading group `{w}`")),
    }
}

fn parse_scalar(s: &str) -> Option<Scalar> {
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a, b),
        None => (s, "1"),
    };
    let num: num_bigint::BigInt = num.parse().ok()?;
    let den: num_bigint::BigInt = den.parse().ok()?;
    if den == 0.into() {
        return None;
    }
    Some(Scalar::new(num, den))
}

fn is_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_alphabetic() || c == '_' || c == '^')
        && s.chars()
            .all(|c| c.is_alphanumeric() || matches!(c, '_' | '^' | '[' | ']' | '\'' | '.'))
}

/// A parsed term: coefficient and factor names with their columns.
struct Term {
    coeff: Scalar,
    column: usize,
    factors: Vec<(usize, String)>,
}

fn parse_sum(number: usize, col0: usize, s: &str) -> std::result::Result<Vec<Term>, ParseError> {
    if let Some(pos) = s.find(['(', ')']) {
        return err(number, col0 + pos, "parentheses are not supported");
    }
    let mut pieces: Vec<(usize, bool, &str)> = Vec::new();
    let mut negative = false;
    let mut start = 0;
    for (pos, ch) in s.char_indices() {
        if ch == '+' || ch == '-' {
            pieces.push((start, negative, &s[start..pos]));
            negative = ch == '-';
            start = pos + 1;
        }
    }
    pieces.push((start, negative, &s[start..]));
    // A leading sign leaves an empty first piece.
    if pieces.len() > 1 && pieces[0].2.trim().is_empty() {
        pieces.remove(0);
    }
    let mut terms = Vec::new();
    for (offset, negative, text) in pieces {
        let lead = text.len() - text.trim_start().len();
        let column = col0 + offset + lead;
        let text = text.trim();
        if text.is_empty() {
            return err(number, column, "empty term");
        }
        let mut coeff = Scalar::from_integer(1.into());
        let mut factors = Vec::new();
        let mut pos = 0;
        for (k, factor) in text.split('*').enumerate() {
            let fcol = column + pos + (factor.len() - factor.trim_start().len());
            pos += factor.len() + 1;
            let factor = factor.trim();
            if k == 0 && factor.starts_with(|c: char| c.is_ascii_digit()) {
                match parse_scalar(factor) {
                    Some(v) => coeff = v,
                    None => return err(number, fcol, format!("bad coefficient `{factor}`")),
                }
            } else if is_name(factor) {
                factors.push((fcol, factor.to_string()));
            } else {
                return err(number, fcol, format!("expected a generator name, found `{factor}`"));
            }
        }
        if negative {
            coeff = -coeff;
        }
        terms.push(Term {
            coeff,
            column,
            factors,
        });
    }
    Ok(terms)
}

/// A parsed DGA file: the DGA, optional Betti numbers and where things were defined.
#[derive(Debug, Clone)]
pub struct DgaDocument {
    pub dga: Dga,
    pub betti: Option<Vec<usize>>,
    /// Line of each generator's `d` line, or of its `gen` line when there is none.
    pub lines: HashMap<String, usize>,
}

impl PartialEq for DgaDocument {
    fn eq(&self, other: &Self) -> bool {
        self.dga == other.dga && self.betti == other.betti
    }
}

impl DgaDocument {
    pub fn line_of(&self, generator: &str) -> Option<usize> {
        self.lines.get(generator).copied()
    }

    pub fn betti_map(&self) -> Option<BTreeMap<i64, usize>> {
        self.betti
            .as_ref()
            .map(|b| b.iter().enumerate().map(|(k, &v)| (k as i64, v)).collect())
    }
}

/// Parses without running [`Dga::validate`].
pub fn parse_dga_document(text: &str) -> std::result::Result<DgaDocument, ParseError> {
    let mut ring = None;
    let mut grading = None;
    let mut dim = None;
    let mut betti = None;
    let mut gens: Vec<(usize, usize, String, i64, Option<Scalar>)> = Vec::new();
    let mut diffs = Vec::new();
    for line in lines(text) {
        let (col, key) = line.words[0];
        match key {
            "ring" => {
                ring = Some(parse_ring(&line, 1)?);
                line.no_more(2)?;
            }
            "grading" => {
                grading = Some(parse_grading(&line, 1)?);
                line.no_more(2)?;
            }
            "dim" => {
                dim = Some(line.int(1, "a dimension")?);
                line.no_more(2)?;
            }
            "gen" => {
                let (ncol, name) = line.word(1, "a generator name")?;
                if !is_name(name) {
                    return err(line.number, ncol, format!("bad generator name `{name}`"));
                }
                let degree = line.int(2, "a degree")?;
                let mut action = None;
                if let Some(&(acol, a)) = line.words.get(3) {
                    let v = a
                        .strip_prefix("action=")
                        .and_then(parse_scalar)
                        .map_or_else(|| err(line.number, acol, format!("expected action=<rational>, found `{a}`")), Ok)?;
                    action = Some(v);
                    line.no_more(4)?;
                }
                gens.push((line.number, ncol, name.to_string(), degree, action));
            }
            "d" => {
                let (ncol, name) = line.word(1, "a generator name")?;
                match line.words.get(2) {
                    Some((_, "=")) => {}
                    Some(&(c, w)) => return err(line.number, c, format!("expected `=`, found `{w}`")),
                    None => return err(line.number, line.text.len() + 1, "expected `=`"),
                }
                let (rcol, rhs) = line.rhs()?;
                let terms = parse_sum(line.number, rcol, rhs)?;
                diffs.push((line.number, ncol, name.to_string(), terms));
            }
            "betti" => {
                let mut b = Vec::new();
                for i in 1..line.words.len() {
                    let v = line.int(i, "a Betti number")?;
                    if v < 0 {
                        return err(line.number, line.words[i].0, "Betti numbers are nonnegative");
                    }
                    b.push(v as usize);
                }
                betti = Some(b);
            }
            other => return err(line.number, col, format!("unknown keyword `{other}`")),
        }
    }
    let ring = ring.unwrap_or(CoefficientRing::Z2);
    let grading = grading.unwrap_or(GradingGroup::Z);
    let mut table = GeneratorTable::new();
    let mut lines_map = HashMap::new();
    for (number, col, name, degree, action) in gens {
        table
            .push(&name, grading.reduce(degree), action)
            .or_else(|e| err(number, col, e.to_string()))?;
        lines_map.insert(name, number);
    }
    let mut differential = vec![NoncommPoly::zero(ring); table.len()];
    let mut seen = HashMap::new();
    for (number, col, name, terms) in diffs {
        let i = table
            .index_of(&name)
            .or_else(|e| err(number, col, e.to_string()))?;
        if let Some(prev) = seen.insert(i, number) {
            return err(number, col, format!("second `d` line for `{name}` (first on line {prev})"));
        }
        lines_map.insert(name, number);
        let mut p = NoncommPoly::zero(ring);
        for t in terms {
            let c = ring
                .element(t.coeff.clone())
                .or_else(|e| err(number, t.column, e.to_string()))?;
            let mut word = Vec::new();
            for (fcol, f) in &t.factors {
                word.push(table.index_of(f).or_else(|e| err(number, *fcol, e.to_string()))?);
            }
            p.add_term(Word(word), c);
        }
        differential[i] = p;
    }
    let dga = Dga::new(ring, grading, table, differential, dim)
        .or_else(|e| err(1, 1, e.to_string()))?;
    Ok(DgaDocument {
        dga,
        betti,
        lines: lines_map,
    })
}

/// Parses and validates; a failed validation is reported at the offending line.
pub fn parse_dga(text: &str) -> Result<Dga> {
    let doc = parse_dga_document(text)?;
    let report = doc.dga.validate();
    if let Some(issue) = report.issues.first() {
        let line = doc.line_of(&issue.generator).unwrap_or(1);
        let what = if let Some(t) = issue.degree_violations.first() {
            format!(
                "term `{}` of d {} has degree {}, expected {}",
                t.term, issue.generator, t.degree, issue.expected_degree
            )
        } else {
            format!(
                "d(d {}) = {} is not zero",
                issue.generator,
                issue.d_squared.as_deref().unwrap_or("?")
            )
        };
        return Err(ParseError {
            line,
            column: 1,
            message: what,
        }
        .into());
    }
    Ok(doc.dga)
}

pub fn print_dga(dga: &Dga, betti: Option<&[usize]>) -> String {
    let mut out = String::new();
    writeln!(out, "ring {}", dga.ring()).unwrap();
    writeln!(out, "grading {}", dga.grading()).unwrap();
    if let Some(n) = dga.ambient_dim() {
        writeln!(out, "dim {n}").unwrap();
    }
    for g in dga.generators().iter() {
        match &g.action {
            Some(a) => writeln!(out, "gen {} {} action={}", g.name, g.degree, format_scalar(a)),
            None => writeln!(out, "gen {} {}", g.name, g.degree),
        }
        .unwrap();
    }
    for (i, g) in dga.generators().iter().enumerate() {
        if !dga.d(i).is_zero() {
            writeln!(out, "d {} = {}", g.name, dga.format_poly(dga.d(i))).unwrap();
        }
    }
    if let Some(b) = betti {
        let b: Vec<String> = b.iter().map(|v| v.to_string()).collect();
        writeln!(out, "betti {}", b.join(" ")).unwrap();
    }
    out
}

pub fn print_document(doc: &DgaDocument) -> String {
    print_dga(&doc.dga, doc.betti.as_deref())
}

fn parse_pairs(line: &Line, sep: char) -> std::result::Result<BTreeMap<i64, usize>, ParseError> {
    let mut out = BTreeMap::new();
    for &(col, w) in &line.words[1..] {
        let parsed = w.split_once(sep).and_then(|(k, v)| {
            Some((k.parse::<i64>().ok()?, v.parse::<usize>().ok()?))
        });
        match parsed {
            Some((k, v)) => {
                *out.entry(k).or_insert(0) += v;
            }
            None => return err(line.number, col, format!("expected <degree>{sep}<count>, found `{w}`")),
        }
    }
    Ok(out)
}

/// Instance files:
///
/// ```text
/// dim 3
/// betti 1 0 0 1
/// chords 0:1 2:3 3:3
/// homology 0:1 2:1 3:1
/// good
/// ring Z2
/// constraint 0=1
/// ```
pub fn parse_instance(text: &str) -> Result<DualityInstance> {
    let mut n = None;
    let mut inst = DualityInstance::default();
    for line in lines(text) {
        let (col, key) = line.words[0];
        match key {
            "dim" => {
                n = Some(line.int(1, "a dimension")?);
                line.no_more(2)?;
            }
            "betti" => {
                let mut b = BTreeMap::new();
                for i in 1..line.words.len() {
                    let v = line.int(i, "a Betti number")?;
                    if v < 0 {
                        return Err(ParseError {
                            line: line.number,
                            column: line.words[i].0,
                            message: "Betti numbers are nonnegative".into(),
                        }
                        .into());
                    }
                    if v > 0 {
                        b.insert(i as i64 - 1, v as usize);
                    }
                }
                inst.betti = b;
            }
            "chords" => inst.chords = Some(parse_pairs(&line, ':')?.into_iter().filter(|(_, v)| *v > 0).collect()),
            "homology" => inst.homology = Some(parse_pairs(&line, ':')?.into_iter().filter(|(_, v)| *v > 0).collect()),
            "constraint" => inst.constraints.extend(parse_pairs(&line, '=')?),
            "good" => {
                inst.good_dga = true;
                line.no_more(1)?;
            }
            "ring" => {
                inst.ring_is_z2 = parse_ring(&line, 1)? == CoefficientRing::Z2;
                line.no_more(2)?;
            }
            other => {
                return Err(ParseError {
                    line: line.number,
                    column: col,
                    message: format!("unknown keyword `{other}`"),
                }
                .into())
            }
        }
    }
    inst.n = n.ok_or_else(|| Error::MissingData("`dim` line".to_string()))?;
    inst.validate()?;
    Ok(inst)
}

pub fn print_instance(inst: &DualityInstance) -> String {
    let pairs = |m: &BTreeMap<i64, usize>, sep: char| {
        m.iter()
            .map(|(k, v)| format!("{k}{sep}{v}"))
            .collect::<Vec<_>>()
            .join(" ")
    };
    let mut out = String::new();
    writeln!(out, "dim {}", inst.n).unwrap();
    let betti: Vec<String> = (0..=inst.n)
        .map(|k| inst.betti.get(&k).copied().unwrap_or(0).to_string())
        .collect();
    writeln!(out, "betti {}", betti.join(" ")).unwrap();
    if let Some(c) = &inst.chords {
        writeln!(out, "chords {}", pairs(c, ':')).unwrap();
    }
    if let Some(h) = &inst.homology {
        writeln!(out, "homology {}", pairs(h, ':')).unwrap();
    }
    if inst.good_dga {
        writeln!(out, "good").unwrap();
    }
    if inst.ring_is_z2 {
        writeln!(out, "ring Z2").unwrap();
    }
    for (k, d) in &inst.constraints {
        writeln!(out, "constraint {k}={d}").unwrap();
    }
    out
}

/// Two-copy files list `Q` and the Morse complex; `P` is the dual of `Q`
/// with labels `p_<label>`. Map lines give the image of one basis element.
///
/// ```text
/// ring Z2
/// dim 3
/// q c 3
/// morse c_max 3
/// morse c_min 0
/// rho c = c_max
/// sigma c_min = p_c
/// ```
///
/// Map keywords: `dq` (Q to Q), `dc` (Morse to Morse), `rho` (Q to C),
/// `sigma` (C to P), `eta` (Q to P).
pub fn parse_two_copy(text: &str) -> Result<TwoCopyData> {
    let mut ring = CoefficientRing::Z2;
    let mut n = None;
    let mut q_basis: Vec<(String, i64)> = Vec::new();
    let mut m_basis: Vec<(String, i64)> = Vec::new();
    let mut maps: Vec<(Line, &str)> = Vec::new();
    for line in lines(text) {
        let (col, key) = line.words[0];
        match key {
            "ring" => {
                ring = parse_ring(&line, 1)?;
                line.no_more(2)?;
            }
            "dim" => {
                n = Some(line.int(1, "a dimension")?);
                line.no_more(2)?;
            }
            "q" | "morse" => {
                let (ncol, name) = line.word(1, "a label")?;
                if !is_name(name) {
                    return Err(ParseError {
                        line: line.number,
                        column: ncol,
                        message: format!("bad label `{name}`"),
                    }
                    .into());
                }
                let d = line.int(2, "a degree")?;
                line.no_more(3)?;
                if key == "q" {
                    q_basis.push((name.to_string(), d));
                } else {
                    m_basis.push((name.to_string(), d));
                }
            }
            "dq" | "dc" | "rho" | "sigma" | "eta" => maps.push((line, key)),
            other => {
                return Err(ParseError {
                    line: line.number,
                    column: col,
                    message: format!("unknown keyword `{other}`"),
                }
                .into())
            }
        }
    }
    let n = n.ok_or_else(|| Error::MissingData("`dim` line".to_string()))?;
    let p_basis: Vec<(String, i64)> = q_basis
        .iter()
        .map(|(l, d)| (format!("p_{l}"), n - 2 - d))
        .collect();
    let index = |b: &[(String, i64)]| -> HashMap<String, usize> {
        b.iter().enumerate().map(|(i, (l, _))| (l.clone(), i)).collect()
    };
    let (qi, mi, pi) = (index(&q_basis), index(&m_basis), index(&p_basis));
    let (nq, nm) = (q_basis.len(), m_basis.len());
    let mut dq = Matrix::zeros(nq, nq);
    let mut dc = Matrix::zeros(nm, nm);
    let mut rho = Matrix::zeros(nm, nq);
    let mut sigma = Matrix::zeros(nq, nm);
    let mut eta = Matrix::zeros(nq, nq);
    for (line, key) in &maps {
        let (m, src, tgt) = match *key {
            "dq" => (&mut dq, &qi, &qi),
            "dc" => (&mut dc, &mi, &mi),
            "rho" => (&mut rho, &qi, &mi),
            "sigma" => (&mut sigma, &mi, &pi),
            _ => (&mut eta, &qi, &pi),
        };
        let (scol, s) = line.word(1, "a label")?;
        let j = *src.get(s).ok_or(ParseError {
            line: line.number,
            column: scol,
            message: format!("unknown label `{s}` for `{key}`"),
        })?;
        let (rcol, rhs) = line.rhs()?;
        for t in parse_sum(line.number, rcol, rhs)? {
            let located = |message: String| ParseError {
                line: line.number,
                column: t.column,
                message,
            };
            if t.factors.len() != 1 {
                if t.factors.is_empty() && t.coeff == Scalar::from_integer(0.into()) {
                    continue;
                }
                return Err(located("expected a single basis element".to_string()).into());
            }
            let name = &t.factors[0].1;
            let i = *tgt
                .get(name)
                .ok_or_else(|| located(format!("unknown label `{name}` for `{key}`")))?;
            let c = ring
                .element(t.coeff.clone())
                .map_err(|e| located(e.to_string()))?;
            let v = ring.add(m.get(i, j), &c);
            m.set(i, j, v);
        }
    }
    let q = BasedChainComplex::new(ring, GradingGroup::Z, q_basis, dq)?;
    let morse = MorseComplex::new(ring, n, m_basis, dc)?;
    TwoCopyData::with_dual_block(n, q, morse, rho, sigma, eta)
}

fn format_combination(m: &Matrix, j: usize, labels: &[String]) -> Option<String> {
    let mut out = String::new();
    for (i, label) in labels.iter().enumerate() {
        let v = m.get(i, j);
        if *v == Scalar::from_integer(0.into()) {
            continue;
        }
        let negative = *v < Scalar::from_integer(0.into());
        let mag = if negative { -v.clone() } else { v.clone() };
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        if mag != Scalar::from_integer(1.into()) {
            write!(out, "{}*", format_scalar(&mag)).unwrap();
        }
        out.push_str(label);
    }
    (!out.is_empty()).then_some(out)
}

pub fn print_two_copy(data: &TwoCopyData) -> String {
    let labels = |c: &BasedChainComplex| -> Vec<String> {
        c.basis().iter().map(|b| b.label.clone()).collect()
    };
    let (ql, cl, pl) = (labels(data.q()), labels(data.c()), labels(data.p()));
    let mut out = String::new();
    writeln!(out, "ring {}", data.ring()).unwrap();
    writeln!(out, "dim {}", data.n()).unwrap();
    for b in data.q().basis() {
        writeln!(out, "q {} {}", b.label, b.degree).unwrap();
    }
    for b in data.morse().complex().basis() {
        writeln!(out, "morse {} {}", b.label, b.degree).unwrap();
    }
    let blocks: [(&str, &Matrix, &[String], &[String]); 5] = [
        ("dq", data.q().boundary(), &ql, &ql),
        ("dc", data.morse().complex().boundary(), &cl, &cl),
        ("rho", data.rho(), &ql, &cl),
        ("sigma", data.sigma(), &cl, &pl),
        ("eta", data.eta(), &ql, &pl),
    ];
    for (key, m, src, tgt) in blocks {
        for (j, s) in src.iter().enumerate() {
            if let Some(rhs) = format_combination(m, j, tgt) {
                writeln!(out, "{key} {s} = {rhs}").unwrap();
            }
        }
    }
    out
}
