//! Loader for the embedded case tables.
//!
//! Each file is line based: `#` starts a comment, blank lines are skipped,
//! fields are separated by `|`. The files are compiled into the library;
//! setting `NARROWTOWER_DATA` to a directory loads them from there instead.
//!
//! * `appendix1.tbl`: `case | type | constraints | 4-rank`, where a
//!   constraint `di/pj=s` fixes `(d_i/p_j)` to the sign `s` and `di/2`
//!   means `(d_i/2)`.
//! * `appendix2.tbl`: `case | type | ν34 | Nε12 | δ ; δ1 ; δ2 | Cl gens |
//!   N1 ; N2 ; N3 | ker j1 ; ker j2 ; ker j3 | q1 q2 q3 | h1 ; h2 ; h3 |
//!   G | order | label`. `δ` entries list alternatives joined by `or`;
//!   subgroups are generator lists over `p1..p4` and `q`; `h` and order
//!   entries are expressions `n`, `h2(m)` or `n·h2(m)` written `nh2(m)`.
//! * `appendix3.tbl`: `case | type | ν-tuple | s-relations |
//!   transformation | a-relations | label`, with `-` for none and `see X`
//!   to reuse another row.
//! * `table1.tbl`: `label | relations | G' | Schur multiplier`.
//! * `examples.tbl`: `label | case | |d_i| list | Cl₂(k₊¹) invariants`.

use std::collections::HashMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::fpgroups::{commutator_aliases, parse_assignments, parse_relations};
use crate::intarith::{field_discriminant, FactoredDiscriminant};
use crate::quadforms::h2;
use crate::towerclassify::profile::{SymbolProfile, TowerType};
use crate::towerclassify::report::GType;

const APPENDIX1: &str = include_str!("../../data/appendix1.tbl");
const APPENDIX2: &str = include_str!("../../data/appendix2.tbl");
const APPENDIX3: &str = include_str!("../../data/appendix3.tbl");
const TABLE1: &str = include_str!("../../data/table1.tbl");
const EXAMPLES: &str = include_str!("../../data/examples.tbl");

/// Environment variable naming a directory that overrides the embedded
/// tables.
pub const DATA_ENV: &str = "NARROWTOWER_DATA";

/// A fixed value of `(d_i/p_j)`, 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SymbolConstraint {
    pub i: usize,
    pub j: usize,
    pub sign: i8,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Appendix1Row {
    pub name: String,
    pub type_: TowerType,
    pub constraints: Vec<SymbolConstraint>,
    pub four_rank: u32,
    pub line: usize,
}

impl Appendix1Row {
    pub fn matches(&self, p: &SymbolProfile) -> bool {
        p.type_ == self.type_ && self.constraints.iter().all(|c| p.symbol(c.i, c.j) == c.sign)
    }

    /// The admissible profile meeting the constraints whose free bits are
    /// smallest, so unconstrained symbols are `+1` where possible.
    pub fn canonical_profile(&self) -> Result<SymbolProfile> {
        (0..64u8)
            .map(|b| SymbolProfile::from_free_bits(self.type_, b))
            .find(|p| self.matches(p))
            .ok_or_else(|| Error::inconsistency(format!("row {} admits no profile", self.name)))
    }
}

/// A product `2^a · ∏ p_i · 𝔮^b` as written in the tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    pub two: bool,
    /// Bit `i` is `p_{i+1}`.
    pub primes: u8,
    pub q: bool,
}

impl Monomial {
    /// Numeric value with `p_i` the prime of slot `i`.
    pub fn value(&self, fd: &FactoredDiscriminant) -> u64 {
        let mut v: u64 = if self.two { 2 } else { 1 };
        for i in 0..4 {
            if self.primes >> i & 1 == 1 {
                v *= fd.parts()[i].prime();
            }
        }
        if self.q {
            v *= 2;
        }
        v
    }

    /// Ideal classes over `𝔭₁..𝔭₄`, with `𝔮` the prime of slot 4.
    pub fn ideal_mask(&self) -> u8 {
        self.primes | if self.q { 0b1000 } else { 0 }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        if self.two {
            s.push('2');
        }
        if self.q {
            s.push('q');
        }
        for i in 0..4 {
            if self.primes >> i & 1 == 1 {
                s.push_str(&format!("p{}", i + 1));
            }
        }
        if s.is_empty() {
            s.push('1');
        }
        f.write_str(&s)
    }
}

impl FromStr for Monomial {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let s = s.trim();
        let mut m = Monomial::default();
        let b = s.as_bytes();
        let mut i = 0;
        if s.is_empty() {
            return Err("empty monomial".into());
        }
        while i < b.len() {
            match b[i] {
                b'2' if !m.two => {
                    m.two = true;
                    i += 1;
                }
                b'q' if !m.q => {
                    m.q = true;
                    i += 1;
                }
                b'p' if i + 1 < b.len() && (b'1'..=b'4').contains(&b[i + 1]) => {
                    let bit = 1u8 << (b[i + 1] - b'1');
                    if m.primes & bit != 0 {
                        return Err(format!("repeated factor in {s:?}"));
                    }
                    m.primes |= bit;
                    i += 2;
                }
                _ => return Err(format!("bad monomial {s:?}")),
            }
        }
        Ok(m)
    }
}

/// `coef · h₂(m)` with `m` a product of `d_i` or `p_i`, or a constant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct H2Expr {
    pub coef: u64,
    /// `(letter, index)` factors of `m`; empty for a constant.
    pub factors: Vec<(char, usize)>,
}

impl H2Expr {
    /// Evaluates with class numbers from the form oracle.
    pub fn eval(&self, fd: &FactoredDiscriminant) -> Result<u64> {
        if self.factors.is_empty() {
            return Ok(self.coef);
        }
        let m: i64 = self
            .factors
            .iter()
            .map(|&(c, i)| {
                let part = fd.parts()[i - 1];
                if c == 'd' {
                    part.value()
                } else {
                    part.prime() as i64
                }
            })
            .product();
        Ok(self.coef * h2(field_discriminant(m)?)?)
    }
}

impl fmt::Display for H2Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "{}", self.coef);
        }
        if self.coef != 1 {
            write!(f, "{}", self.coef)?;
        }
        f.write_str("h2(")?;
        for (c, i) in &self.factors {
            write!(f, "{c}{i}")?;
        }
        f.write_str(")")
    }
}

impl FromStr for H2Expr {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let s = s.trim();
        if let Ok(n) = s.parse::<u64>() {
            return Ok(H2Expr {
                coef: n,
                factors: Vec::new(),
            });
        }
        let pos = s.find("h2(").ok_or_else(|| format!("bad expression {s:?}"))?;
        let coef = if pos == 0 {
            1
        } else {
            s[..pos].parse().map_err(|_| format!("bad coefficient in {s:?}"))?
        };
        let inner = s[pos + 3..]
            .strip_suffix(')')
            .ok_or_else(|| format!("unclosed h2( in {s:?}"))?;
        let b = inner.as_bytes();
        if b.is_empty() || b.len() % 2 != 0 {
            return Err(format!("bad argument in {s:?}"));
        }
        let mut factors = Vec::new();
        let mut letter = None;
        for pair in b.chunks(2) {
            let c = pair[0] as char;
            if !(c == 'd' || c == 'p') || !(b'1'..=b'4').contains(&pair[1]) {
                return Err(format!("bad factor in {s:?}"));
            }
            if letter.is_some_and(|l| l != c) {
                return Err(format!("mixed d and p factors in {s:?}"));
            }
            letter = Some(c);
            let idx = (pair[1] - b'0') as usize;
            if factors.iter().any(|&(_, i)| i == idx) {
                return Err(format!("repeated factor in {s:?}"));
            }
            factors.push((c, idx));
        }
        Ok(H2Expr { coef, factors })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Appendix2Row {
    pub case: String,
    pub type_: TowerType,
    pub nu34: u8,
    pub norm_eps12: i8,
    /// Alternatives for `δ`, `δ₁`, `δ₂`.
    pub deltas: [Vec<Monomial>; 3],
    pub class_group_gens: Vec<Monomial>,
    pub norm_groups: [Vec<Monomial>; 3],
    pub kernels: [Vec<Monomial>; 3],
    pub q: [u32; 3],
    pub h2: [H2Expr; 3],
    pub g_type: GType,
    pub order: H2Expr,
    pub label: String,
    pub line: usize,
}

/// Source of the transformed presentation of a Koch presentation row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Transform {
    None,
    Given { assignments: String, relations: String },
    SeeRow(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Appendix3Row {
    pub case: String,
    pub type_: TowerType,
    pub tuple: [u8; 9],
    pub s_relations: String,
    pub transform: Transform,
    pub label: String,
    pub line: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table1Row {
    pub label: String,
    pub relations: String,
    pub derived: String,
    pub schur: String,
    pub line: usize,
}

/// A worked example field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExampleRow {
    pub label: String,
    pub case: String,
    /// `|d_i|`; signs are inferred.
    pub magnitudes: Vec<u64>,
    /// Invariants of `Cl₂(k₊¹)`.
    pub class_group: Vec<u64>,
    pub line: usize,
}

/// All tables, parsed.
#[derive(Debug, Clone)]
pub struct DataStore {
    pub appendix1: Vec<Appendix1Row>,
    pub appendix2: Vec<Appendix2Row>,
    pub appendix3: Vec<Appendix3Row>,
    pub table1: Vec<Table1Row>,
    pub examples: Vec<ExampleRow>,
}

impl DataStore {
    pub fn embedded() -> Result<Self> {
        Self::from_texts(APPENDIX1, APPENDIX2, APPENDIX3, TABLE1, EXAMPLES)
    }

    pub fn from_dir(dir: &Path) -> Result<Self> {
        let read = |name: &str| {
            std::fs::read_to_string(dir.join(name))
                .map_err(|e| Error::domain(format!("cannot read {}: {e}", dir.join(name).display())))
        };
        Self::from_texts(
            &read("appendix1.tbl")?,
            &read("appendix2.tbl")?,
            &read("appendix3.tbl")?,
            &read("table1.tbl")?,
            &read("examples.tbl")?,
        )
    }

    pub fn from_texts(a1: &str, a2: &str, a3: &str, t1: &str, ex: &str) -> Result<Self> {
        let store = DataStore {
            appendix1: parse_appendix1(a1, "appendix1.tbl")?,
            appendix2: parse_appendix2(a2, "appendix2.tbl")?,
            appendix3: parse_appendix3(a3, "appendix3.tbl")?,
            table1: parse_table1(t1, "table1.tbl")?,
            examples: parse_examples(ex, "examples.tbl")?,
        };
        store.cross_check()?;
        Ok(store)
    }

    pub fn appendix1_row(&self, name: &str) -> Option<&Appendix1Row> {
        self.appendix1.iter().find(|r| r.name == name)
    }

    pub fn appendix3_row(&self, case: &str) -> Option<&Appendix3Row> {
        self.appendix3.iter().find(|r| r.case == case)
    }

    /// Transformation text and a-relations of a row, following `see`.
    pub fn resolved_transform(&self, row: &Appendix3Row) -> Result<Option<(String, String)>> {
        match &row.transform {
            Transform::None => Ok(None),
            Transform::Given { assignments, relations } => Ok(Some((assignments.clone(), relations.clone()))),
            Transform::SeeRow(other) => {
                let target = self
                    .appendix3_row(other)
                    .ok_or_else(|| Error::inconsistency(format!("{} refers to missing row {other}", row.case)))?;
                match &target.transform {
                    Transform::Given { assignments, relations } => Ok(Some((assignments.clone(), relations.clone()))),
                    _ => Err(Error::inconsistency(format!(
                        "{} refers to {other}, which has no transformation",
                        row.case
                    ))),
                }
            }
        }
    }

    /// Consistency between files: every case named in another table has a
    /// symbol row of the same type.
    fn cross_check(&self) -> Result<()> {
        for (case, t, line, file) in self
            .appendix2
            .iter()
            .map(|r| (&r.case, r.type_, r.line, "appendix2.tbl"))
            .chain(
                self.appendix3
                    .iter()
                    .map(|r| (&r.case, r.type_, r.line, "appendix3.tbl")),
            )
            .map(|(c, t, l, f)| (c, Some(t), l, f))
            .chain(self.examples.iter().map(|r| (&r.case, None, r.line, "examples.tbl")))
        {
            match self.appendix1_row(case) {
                Some(r) if t.is_none_or(|t| r.type_ == t) => {}
                _ => {
                    return Err(Error::Parse {
                        file: file.into(),
                        line,
                        message: format!("case {case} is not in appendix1.tbl with this type"),
                    })
                }
            }
        }
        Ok(())
    }
}

static STORE: OnceLock<std::result::Result<DataStore, Error>> = OnceLock::new();

/// The process-wide tables, loaded once.
pub fn data() -> Result<&'static DataStore> {
    STORE
        .get_or_init(|| match std::env::var_os(DATA_ENV) {
            Some(dir) => DataStore::from_dir(Path::new(&dir)),
            None => DataStore::embedded(),
        })
        .as_ref()
        .map_err(Clone::clone)
}

/// Non-comment lines with their 1-based numbers, split on `|`.
fn records<'a>(text: &'a str) -> impl Iterator<Item = (usize, Vec<&'a str>)> + 'a {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then(|| (i + 1, l.split('|').map(str::trim).collect()))
    })
}

fn perr(file: &str, line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        file: file.into(),
        line,
        message: message.into(),
    }
}

fn expect_fields(file: &str, line: usize, f: &[&str], n: usize) -> Result<()> {
    if f.len() != n {
        return Err(perr(file, line, format!("expected {n} fields, found {}", f.len())));
    }
    Ok(())
}

fn parse_type(file: &str, line: usize, s: &str) -> Result<TowerType> {
    s.parse().map_err(|_| perr(file, line, format!("unknown type {s:?}")))
}

fn is_case_name(s: &str) -> bool {
    s == "alpha"
        || s == "beta"
        || (!s.is_empty() && "AaBbCcDd".contains(&s[..1]) && s[1..].chars().all(|c| c.is_ascii_digit()))
}

pub fn parse_appendix1(text: &str, file: &str) -> Result<Vec<Appendix1Row>> {
    let mut out: Vec<Appendix1Row> = Vec::new();
    for (line, f) in records(text) {
        expect_fields(file, line, &f, 4)?;
        if !is_case_name(f[0]) {
            return Err(perr(file, line, format!("bad case name {:?}", f[0])));
        }
        let type_ = parse_type(file, line, f[1])?;
        let mut constraints = Vec::new();
        for tok in f[2].split_whitespace() {
            constraints.push(parse_constraint(tok, type_).map_err(|m| perr(file, line, m))?);
        }
        let four_rank = f[3]
            .parse()
            .ok()
            .filter(|&r: &u32| r <= 2)
            .ok_or_else(|| perr(file, line, format!("bad 4-rank {:?}", f[3])))?;
        if out.iter().any(|r| r.name == f[0]) {
            return Err(perr(file, line, format!("duplicate case {}", f[0])));
        }
        out.push(Appendix1Row {
            name: f[0].into(),
            type_,
            constraints,
            four_rank,
            line,
        });
    }
    Ok(out)
}

fn parse_constraint(tok: &str, t: TowerType) -> std::result::Result<SymbolConstraint, String> {
    let (lhs, sign) = tok
        .split_once('=')
        .ok_or_else(|| format!("constraint {tok:?} lacks `=`"))?;
    let sign = match sign {
        "+" | "+1" => 1,
        "-" | "-1" => -1,
        _ => return Err(format!("bad sign in {tok:?}")),
    };
    let (d, p) = lhs.split_once('/').ok_or_else(|| format!("bad symbol {tok:?}"))?;
    let i = d
        .strip_prefix('d')
        .and_then(|x| x.parse::<usize>().ok())
        .filter(|x| (1..=4).contains(x))
        .ok_or_else(|| format!("bad numerator in {tok:?}"))?;
    let j = if p == "2" {
        if t.minus_four_slot().is_none() {
            return Err(format!("{tok:?}: `/2` needs a type with −4"));
        }
        4
    } else {
        p.strip_prefix('p')
            .and_then(|x| x.parse::<usize>().ok())
            .filter(|x| (1..=4).contains(x))
            .ok_or_else(|| format!("bad denominator in {tok:?}"))?
    };
    if i == j {
        return Err(format!("{tok:?}: diagonal symbols are not constraints"));
    }
    Ok(SymbolConstraint { i, j, sign })
}

fn parse_monomial_list(s: &str, sep: &str) -> std::result::Result<Vec<Monomial>, String> {
    s.split(sep).map(|m| m.trim().parse()).collect()
}

fn parse_triple<T>(s: &str, f: impl Fn(&str) -> std::result::Result<T, String>) -> std::result::Result<[T; 3], String> {
    let parts: Vec<&str> = s.split(';').collect();
    if parts.len() != 3 {
        return Err(format!("expected three `;`-separated entries in {s:?}"));
    }
    let mut it = parts.into_iter().map(f);
    Ok([it.next().unwrap()?, it.next().unwrap()?, it.next().unwrap()?])
}

pub fn parse_appendix2(text: &str, file: &str) -> Result<Vec<Appendix2Row>> {
    let mut out = Vec::new();
    for (line, f) in records(text) {
        expect_fields(file, line, &f, 13)?;
        let e = |m: String| perr(file, line, m);
        let type_ = parse_type(file, line, f[1])?;
        if !matches!(type_, TowerType::I | TowerType::II) {
            return Err(e("group data exists only for types I and II".into()));
        }
        let nu34 = match f[2] {
            "0" => 0,
            "1" => 1,
            s => return Err(e(format!("bad ν34 {s:?}"))),
        };
        let norm_eps12 = match f[3] {
            "-1" => -1,
            "+1" | "1" => 1,
            s => return Err(e(format!("bad norm {s:?}"))),
        };
        let deltas = parse_triple(f[4], |s| parse_monomial_list(s, " or ")).map_err(e)?;
        let class_group_gens = parse_monomial_list(f[5], ",").map_err(e)?;
        let norm_groups = parse_triple(f[6], |s| parse_monomial_list(s, ",")).map_err(e)?;
        let kernels = parse_triple(f[7], |s| parse_monomial_list(s, ",")).map_err(e)?;
        let q: Vec<u32> = f[8]
            .split_whitespace()
            .map(|x| x.parse().map_err(|_| ()))
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| e(format!("bad q {:?}", f[8])))?;
        if q.len() != 3 || q.iter().any(|&x| x != 1 && x != 2) {
            return Err(e(format!("q must be three entries in {{1,2}}, got {:?}", f[8])));
        }
        let h2 = parse_triple(f[9], |s| s.parse()).map_err(e)?;
        let g_type: GType = f[10].parse().map_err(|_| e(format!("bad group type {:?}", f[10])))?;
        let order: H2Expr = f[11].parse().map_err(e)?;
        if !is_label(f[12]) {
            return Err(e(format!("bad label {:?}", f[12])));
        }
        for m in deltas.iter().flatten() {
            if m.q {
                return Err(e("δ entries use `2`, not `q`".into()));
            }
        }
        for m in class_group_gens
            .iter()
            .chain(norm_groups.iter().flatten())
            .chain(kernels.iter().flatten())
        {
            if m.two || (m.q && type_ != TowerType::II) {
                return Err(e(format!("bad ideal class {m}")));
            }
        }
        out.push(Appendix2Row {
            case: f[0].into(),
            type_,
            nu34,
            norm_eps12,
            deltas,
            class_group_gens,
            norm_groups,
            kernels,
            q: [q[0], q[1], q[2]],
            h2,
            g_type,
            order,
            label: f[12].into(),
            line,
        });
    }
    Ok(out)
}

fn is_label(s: &str) -> bool {
    matches!(s.split_once('.'), Some((a, b)) if (a == "32" || a == "64") && b.len() == 3 && b.chars().all(|c| c.is_ascii_digit()))
}

pub fn parse_appendix3(text: &str, file: &str) -> Result<Vec<Appendix3Row>> {
    let s_gens = ["s1", "s2", "s3"];
    let a_gens = ["a1", "a2", "a3"];
    let t_alias = commutator_aliases('t', 3);
    let c_alias = commutator_aliases('c', 3);
    let mut out: Vec<Appendix3Row> = Vec::new();
    for (line, f) in records(text) {
        expect_fields(file, line, &f, 7)?;
        let e = |m: String| perr(file, line, m);
        let type_ = parse_type(file, line, f[1])?;
        let bits: Vec<u8> = f[2]
            .split([',', ';'])
            .map(|x| match x.trim() {
                "0" => Ok(0),
                "1" => Ok(1),
                other => Err(e(format!("bad tuple entry {other:?}"))),
            })
            .collect::<Result<_>>()?;
        if bits.len() != 9 {
            return Err(e(format!("tuple needs 9 entries, found {}", bits.len())));
        }
        parse_relations(&s_gens, &t_alias, f[3]).map_err(|x| e(format!("s-relations: {x}")))?;
        let transform = match (f[4], f[5]) {
            ("-", "-") => Transform::None,
            (a, b) if a.starts_with("see ") => {
                if b != a {
                    return Err(e("both transformation fields must name the same row".into()));
                }
                Transform::SeeRow(a[4..].trim().into())
            }
            (a, b) => {
                parse_assignments(&a_gens, &s_gens, &HashMap::new(), a)
                    .map_err(|x| e(format!("transformation: {x}")))?;
                parse_relations(&a_gens, &c_alias, b).map_err(|x| e(format!("a-relations: {x}")))?;
                Transform::Given {
                    assignments: a.into(),
                    relations: b.into(),
                }
            }
        };
        if !is_label(f[6]) {
            return Err(e(format!("bad label {:?}", f[6])));
        }
        let mut tuple = [0u8; 9];
        tuple.copy_from_slice(&bits);
        out.push(Appendix3Row {
            case: f[0].into(),
            type_,
            tuple,
            s_relations: f[3].into(),
            transform,
            label: f[6].into(),
            line,
        });
    }
    Ok(out)
}

pub fn parse_table1(text: &str, file: &str) -> Result<Vec<Table1Row>> {
    let a_gens = ["a1", "a2", "a3"];
    let c_alias = commutator_aliases('c', 3);
    let mut out = Vec::new();
    for (line, f) in records(text) {
        expect_fields(file, line, &f, 4)?;
        if !is_label(f[0]) {
            return Err(perr(file, line, format!("bad label {:?}", f[0])));
        }
        parse_relations(&a_gens, &c_alias, f[1]).map_err(|x| perr(file, line, x.to_string()))?;
        out.push(Table1Row {
            label: f[0].into(),
            relations: f[1].into(),
            derived: f[2].into(),
            schur: f[3].into(),
            line,
        });
    }
    Ok(out)
}

fn parse_u64_list(s: &str) -> Option<Vec<u64>> {
    s.split(',').map(|x| x.trim().parse().ok()).collect()
}

pub fn parse_examples(text: &str, file: &str) -> Result<Vec<ExampleRow>> {
    let mut out = Vec::new();
    for (line, f) in records(text) {
        expect_fields(file, line, &f, 4)?;
        if !is_label(f[0]) {
            return Err(perr(file, line, format!("bad label {:?}", f[0])));
        }
        let magnitudes = parse_u64_list(f[2])
            .filter(|v| v.len() == 4)
            .ok_or_else(|| perr(file, line, format!("expected four integers, got {:?}", f[2])))?;
        let class_group = parse_u64_list(f[3]).ok_or_else(|| perr(file, line, format!("bad invariants {:?}", f[3])))?;
        out.push(ExampleRow {
            label: f[0].into(),
            case: f[1].into(),
            magnitudes,
            class_group,
            line,
        });
    }
    Ok(out)
}
