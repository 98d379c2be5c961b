//! Words, presentations and the text format used by the data files and
//! the command line.
//!
//! ```text
//! presentation := "<" [ident {"," ident}] "|" [relations] ">"
//! relations    := relation { ("," | ";") relation }
//! relation     := word { "=" word }
//! word         := factor { ["*"] factor }
//! factor       := primary [ "^" ["-"] digits ]
//! primary      := "1" | ident | "(" word ")" | "[" word "," word { "," word } "]"
//! ident        := letter { digit }
//! ```
//!
//! An identifier is a single letter followed by digits, so `s1s3` reads as
//! `s1·s3` and `ab` as `a·b`. `[x,y] = x⁻¹y⁻¹xy` and `[x,y,z] = [[x,y],z]`.
//! A chain `u = v = w` contributes the relators `uv⁻¹` and `vw⁻¹`.
//! Identifiers that are not generators are looked up in an alias table
//! (for example `t12 ↦ [s1,s2]`).

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// A word in the generators: `+k` is generator `k − 1`, `−k` its inverse.
pub type Word = Vec<i32>;

/// Cancels adjacent inverse pairs.
pub fn free_reduce(w: &[i32]) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for &x in w {
        if out.last() == Some(&-x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    out
}

/// Free and cyclic reduction.
pub fn cyclic_reduce(w: &[i32]) -> Word {
    let mut w = free_reduce(w);
    while w.len() >= 2 && w[0] == -w[w.len() - 1] {
        w.pop();
        w.remove(0);
    }
    w
}

pub fn inverse(w: &[i32]) -> Word {
    w.iter().rev().map(|&x| -x).collect()
}

/// `x⁻¹y⁻¹xy`.
pub fn commutator(x: &[i32], y: &[i32]) -> Word {
    let mut w = inverse(x);
    w.extend(inverse(y));
    w.extend_from_slice(x);
    w.extend_from_slice(y);
    free_reduce(&w)
}

pub fn power(w: &[i32], n: i64) -> Word {
    let base = if n < 0 { inverse(w) } else { w.to_vec() };
    let mut out = Vec::with_capacity(base.len() * n.unsigned_abs() as usize);
    for _ in 0..n.unsigned_abs() {
        out.extend_from_slice(&base);
    }
    free_reduce(&out)
}

/// Concatenation followed by free reduction.
pub fn concat(parts: &[&[i32]]) -> Word {
    let mut out = Vec::new();
    for p in parts {
        out.extend_from_slice(p);
    }
    free_reduce(&out)
}

/// Generator letter `i` (0-based) as a one-letter word.
pub fn generator(i: usize) -> Word {
    vec![i as i32 + 1]
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    generators: Vec<String>,
    relators: Vec<Word>,
}

impl Presentation {
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Self> {
        let n = generators.len() as i32;
        for r in &relators {
            if r.iter().any(|&x| x == 0 || x.abs() > n) {
                return Err(Error::domain("relator mentions an unknown generator"));
            }
        }
        Ok(Presentation {
            generators,
            relators: relators.iter().map(|r| free_reduce(r)).collect(),
        })
    }

    /// Parses `<a,b | a^2, b^3, (ab)^5>`.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        let inner = t
            .strip_prefix('<')
            .and_then(|s| s.strip_suffix('>'))
            .ok_or_else(|| Error::domain("presentation must be enclosed in < >"))?;
        let (gens, rels) = inner
            .split_once('|')
            .ok_or_else(|| Error::domain("presentation needs a `|` between generators and relations"))?;
        let names: Vec<String> = gens
            .split(',')
            .map(|g| g.trim().to_string())
            .filter(|g| !g.is_empty())
            .collect();
        for g in &names {
            if !is_identifier(g) {
                return Err(Error::domain(format!("bad generator name {g:?}")));
            }
        }
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let relators = parse_relations(&refs, &HashMap::new(), rels)?;
        Presentation::new(names, relators)
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn with_relators(&self, extra: impl IntoIterator<Item = Word>) -> Self {
        let mut relators = self.relators.clone();
        relators.extend(extra.into_iter().map(|r| free_reduce(&r)));
        Presentation {
            generators: self.generators.clone(),
            relators,
        }
    }

    /// Adds `[[g_i, g_j], g_k]` for all generators, which kills the third
    /// lower central term.
    pub fn class_two_quotient(&self) -> Self {
        let n = self.generator_count();
        let mut extra = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let c = commutator(&generator(i), &generator(j));
                for k in 0..n {
                    extra.push(commutator(&c, &generator(k)));
                }
            }
        }
        self.with_relators(extra)
    }

    /// Invariants of the abelianization from the exponent-sum matrix; `0`
    /// stands for an infinite cyclic factor. Trivial factors are omitted.
    pub fn abelian_invariants(&self) -> Vec<u64> {
        let n = self.generator_count();
        let mut m: Vec<Vec<i64>> = self
            .relators
            .iter()
            .map(|r| {
                let mut row = vec![0i64; n];
                for &x in r {
                    row[x.unsigned_abs() as usize - 1] += x.signum() as i64;
                }
                row
            })
            .collect();
        let diag = smith_diagonal(&mut m, n);
        let mut out: Vec<u64> = (0..n)
            .map(|i| diag.get(i).copied().unwrap_or(0).unsigned_abs())
            .filter(|&d| d != 1)
            .collect();
        out.sort_by_key(|&d| if d == 0 { u64::MAX } else { d });
        out
    }

    pub fn format_word(&self, w: &[i32]) -> String {
        if w.is_empty() {
            return "1".into();
        }
        let mut out = String::new();
        let mut i = 0;
        while i < w.len() {
            let x = w[i];
            let mut run = 1;
            while i + run < w.len() && w[i + run] == x {
                run += 1;
            }
            if !out.is_empty() {
                out.push(' ');
            }
            out.push_str(&self.generators[x.unsigned_abs() as usize - 1]);
            let exp = if x < 0 { -(run as i64) } else { run as i64 };
            if exp != 1 {
                out.push_str(&format!("^{exp}"));
            }
            i += run;
        }
        out
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self.relators.iter().map(|r| self.format_word(r)).collect();
        write!(f, "<{} | {}>", self.generators.join(","), rels.join(", "))
    }
}

/// Diagonal of the Smith normal form of an integer matrix with `cols`
/// columns, reduced in place.
fn smith_diagonal(m: &mut [Vec<i64>], cols: usize) -> Vec<i64> {
    let rows = m.len();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // Pivot: smallest nonzero entry in the remaining block.
        let Some((pr, pc)) = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| m[i][j] != 0)
            .min_by_key(|&(i, j)| m[i][j].abs())
        else {
            break;
        };
        m.swap(t, pr);
        for row in m.iter_mut() {
            row.swap(t, pc);
        }
        let mut clean = true;
        for i in t + 1..rows {
            let q = m[i][t] / m[t][t];
            for j in t..cols {
                m[i][j] -= q * m[t][j];
            }
            clean &= m[i][t] == 0;
        }
        for j in t + 1..cols {
            let q = m[t][j] / m[t][t];
            for i in t..rows {
                m[i][j] -= q * m[i][t];
            }
            clean &= m[t][j] == 0;
        }
        if !clean {
            continue;
        }
        // The pivot must divide the rest of the block.
        if let Some(i) = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| m[i][j] % m[t][t] != 0)) {
            for j in t..cols {
                m[t][j] += m[i][j];
            }
            continue;
        }
        diag.push(m[t][t].abs());
        t += 1;
    }
    diag
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic()) && chars.all(|c| c.is_ascii_digit())
}

/// Parses a relation list into relators.
pub fn parse_relations(generators: &[&str], aliases: &HashMap<String, Word>, text: &str) -> Result<Vec<Word>> {
    let mut p = Parser::new(generators, aliases, text);
    let mut out = Vec::new();
    p.skip_ws();
    if p.at_end() {
        return Ok(out);
    }
    loop {
        let first = p.word()?;
        let mut prev = first.clone();
        let mut chained = false;
        while p.eat('=') {
            let next = p.word()?;
            out.push(concat(&[&prev, &inverse(&next)]));
            prev = next;
            chained = true;
        }
        if !chained {
            out.push(first);
        }
        if p.eat(',') || p.eat(';') {
            continue;
        }
        if p.at_end() {
            break;
        }
        return Err(p.error("expected `,`, `;` or `=`"));
    }
    Ok(out
        .into_iter()
        .map(|r| free_reduce(&r))
        .filter(|r| !r.is_empty())
        .collect())
}

/// Parses a single word.
pub fn parse_word(generators: &[&str], aliases: &HashMap<String, Word>, text: &str) -> Result<Word> {
    let mut p = Parser::new(generators, aliases, text);
    let w = p.word()?;
    if !p.at_end() {
        return Err(p.error("trailing input after word"));
    }
    Ok(w)
}

/// Parses `a1 = s1s3, a2 = s2s3, ...` into one word per listed name, in
/// the order of `targets`.
pub fn parse_assignments(
    targets: &[&str],
    generators: &[&str],
    aliases: &HashMap<String, Word>,
    text: &str,
) -> Result<Vec<Word>> {
    let mut found: Vec<Option<Word>> = vec![None; targets.len()];
    for part in text.split([',', ';']) {
        let (lhs, rhs) = part
            .split_once('=')
            .ok_or_else(|| Error::domain(format!("assignment {part:?} lacks `=`")))?;
        let name = lhs.trim();
        let slot = targets
            .iter()
            .position(|t| *t == name)
            .ok_or_else(|| Error::domain(format!("unknown target {name:?}")))?;
        if found[slot].is_some() {
            return Err(Error::domain(format!("{name} assigned twice")));
        }
        found[slot] = Some(parse_word(generators, aliases, rhs)?);
    }
    found
        .into_iter()
        .zip(targets)
        .map(|(w, t)| w.ok_or_else(|| Error::domain(format!("{t} is not assigned"))))
        .collect()
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    generators: &'a [&'a str],
    aliases: &'a HashMap<String, Word>,
}

impl<'a> Parser<'a> {
    fn new(generators: &'a [&'a str], aliases: &'a HashMap<String, Word>, text: &str) -> Self {
        Parser {
            chars: text.chars().collect(),
            pos: 0,
            generators,
            aliases,
        }
    }

    fn error(&self, msg: &str) -> Error {
        let tail: String = self.chars[self.pos.min(self.chars.len())..].iter().take(12).collect();
        Error::domain(format!("{msg} at column {} (near {tail:?})", self.pos + 1))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn word(&mut self) -> Result<Word> {
        let mut w = Vec::new();
        let mut any = false;
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_alphabetic() || c == '(' || c == '[' || c == '1' => {
                    w.extend(self.factor()?);
                    any = true;
                }
                Some('*') if any => {
                    self.pos += 1;
                }
                _ => break,
            }
        }
        if !any {
            return Err(self.error("expected a word"));
        }
        Ok(free_reduce(&w))
    }

    fn factor(&mut self) -> Result<Word> {
        let base = self.primary()?;
        if self.eat('^') {
            let neg = self.eat('-');
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if start == self.pos {
                return Err(self.error("expected an exponent"));
            }
            let n: i64 = self.chars[start..self.pos]
                .iter()
                .collect::<String>()
                .parse()
                .map_err(|_| self.error("exponent out of range"))?;
            return Ok(power(&base, if neg { -n } else { n }));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Word> {
        match self.peek() {
            Some('1') => {
                self.pos += 1;
                Ok(Vec::new())
            }
            Some('(') => {
                self.pos += 1;
                let w = self.word()?;
                if !self.eat(')') {
                    return Err(self.error("expected `)`"));
                }
                Ok(w)
            }
            Some('[') => {
                self.pos += 1;
                let mut acc = self.word()?;
                let mut count = 1;
                while self.eat(',') {
                    let next = self.word()?;
                    acc = commutator(&acc, &next);
                    count += 1;
                }
                if count < 2 {
                    return Err(self.error("a commutator needs at least two entries"));
                }
                if !self.eat(']') {
                    return Err(self.error("expected `]`"));
                }
                Ok(acc)
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                self.pos += 1;
                while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                if let Some(i) = self.generators.iter().position(|g| *g == name) {
                    Ok(generator(i))
                } else if let Some(w) = self.aliases.get(&name) {
                    Ok(w.clone())
                } else {
                    self.pos = start;
                    Err(self.error(&format!("unknown generator {name:?}")))
                }
            }
            _ => Err(self.error("expected a generator, `1`, `(` or `[`")),
        }
    }
}

/// Aliases `{prefix}{i}{j} ↦ [g_i, g_j]` for `1 ≤ i < j ≤ n`, written with
/// 1-based indices.
pub fn commutator_aliases(prefix: char, n: usize) -> HashMap<String, Word> {
    let mut out = HashMap::new();
    for i in 0..n {
        for j in i + 1..n {
            out.insert(
                format!("{prefix}{}{}", i + 1, j + 1),
                commutator(&generator(i), &generator(j)),
            );
        }
    }
    out
}
