//! Felsch-style coset enumeration with a deduction stack and a final
//! relator sweep over the completed table.

use crate::error::{Error, Result};
use crate::fpgroups::presentation::{cyclic_reduce, inverse, Presentation, Word};

/// Default cap on the number of cosets defined during one enumeration.
pub const DEFAULT_COSET_BUDGET: usize = 10_000;

const NONE: u32 = u32::MAX;

/// A complete, standardized coset table. Column `2g` is generator `g`,
/// column `2g + 1` its inverse; coset 0 is the subgroup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetTable {
    columns: usize,
    rows: Vec<u32>,
    /// Cosets defined during the run, including those later merged.
    pub cosets_defined: usize,
}

impl CosetTable {
    pub fn index(&self) -> usize {
        self.rows.len() / self.columns
    }

    pub fn generator_count(&self) -> usize {
        self.columns / 2
    }

    /// Image of `coset` under a signed generator letter.
    pub fn act(&self, coset: usize, letter: i32) -> usize {
        self.rows[coset * self.columns + column(letter)] as usize
    }

    pub fn entry(&self, coset: usize, col: usize) -> usize {
        self.rows[coset * self.columns + col] as usize
    }

    pub fn trace(&self, coset: usize, word: &[i32]) -> usize {
        word.iter().fold(coset, |c, &x| self.act(c, x))
    }
}

fn column(letter: i32) -> usize {
    if letter > 0 {
        2 * (letter as usize - 1)
    } else {
        2 * ((-letter) as usize - 1) + 1
    }
}

/// Enumerates the cosets of `⟨subgroup⟩` in the group presented by `p`.
pub fn enumerate_cosets(p: &Presentation, subgroup: &[Word], budget: usize) -> Result<CosetTable> {
    let mut e = Enumerator::new(p, subgroup, budget);
    e.run()?;
    Ok(e.standardize())
}

/// Order of the presented group, by enumerating cosets of the trivial
/// subgroup.
pub fn group_order(p: &Presentation, budget: usize) -> Result<usize> {
    Ok(enumerate_cosets(p, &[], budget)?.index())
}

struct Enumerator {
    columns: usize,
    table: Vec<u32>,
    forward: Vec<u32>,
    live: usize,
    budget: usize,
    relators: Vec<Vec<usize>>,
    /// Cyclic conjugates of relators and their inverses, by first column.
    conjugates: Vec<Vec<Vec<usize>>>,
    subgroup: Vec<Vec<usize>>,
    deductions: Vec<(u32, usize)>,
    queue: Vec<u32>,
}

impl Enumerator {
    fn new(p: &Presentation, subgroup: &[Word], budget: usize) -> Self {
        let columns = 2 * p.generator_count().max(1);
        let to_cols = |w: &[i32]| w.iter().map(|&x| column(x)).collect::<Vec<usize>>();
        let relators: Vec<Vec<usize>> = p
            .relators()
            .iter()
            .map(|r| cyclic_reduce(r))
            .filter(|r| !r.is_empty())
            .map(|r| to_cols(&r))
            .collect();
        let mut conjugates = vec![Vec::new(); columns];
        for r in p.relators() {
            let r = cyclic_reduce(r);
            if r.is_empty() {
                continue;
            }
            for w in [r.clone(), inverse(&r)] {
                for k in 0..w.len() {
                    let mut rot = w[k..].to_vec();
                    rot.extend_from_slice(&w[..k]);
                    let cols = to_cols(&rot);
                    let list: &mut Vec<Vec<usize>> = &mut conjugates[cols[0]];
                    if !list.contains(&cols) {
                        list.push(cols);
                    }
                }
            }
        }
        let subgroup = subgroup
            .iter()
            .map(|w| to_cols(&crate::fpgroups::presentation::free_reduce(w)))
            .filter(|w| !w.is_empty())
            .collect();
        Enumerator {
            columns,
            table: vec![NONE; columns],
            forward: vec![0],
            live: 1,
            budget,
            relators,
            conjugates,
            subgroup,
            deductions: Vec::new(),
            queue: Vec::new(),
        }
    }

    fn get(&self, c: u32, col: usize) -> u32 {
        self.table[c as usize * self.columns + col]
    }

    fn set(&mut self, c: u32, col: usize, v: u32) {
        self.table[c as usize * self.columns + col] = v;
    }

    fn is_live(&self, c: u32) -> bool {
        self.forward[c as usize] == c
    }

    fn allocated(&self) -> usize {
        self.forward.len()
    }

    fn define(&mut self, c: u32, col: usize) -> Result<()> {
        if self.allocated() >= self.budget {
            return Err(Error::resource(format!(
                "coset enumeration exceeded {} cosets",
                self.budget
            )));
        }
        let d = self.allocated() as u32;
        self.forward.push(d);
        self.table.extend(std::iter::repeat_n(NONE, self.columns));
        self.live += 1;
        self.set(c, col, d);
        self.set(d, col ^ 1, c);
        self.deductions.push((c, col));
        Ok(())
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut r = c;
        while self.forward[r as usize] != r {
            r = self.forward[r as usize];
        }
        let mut x = c;
        while self.forward[x as usize] != r {
            let next = self.forward[x as usize];
            self.forward[x as usize] = r;
            x = next;
        }
        r
    }

    fn merge(&mut self, a: u32, b: u32) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a == b {
            return;
        }
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        self.forward[hi as usize] = lo;
        self.live -= 1;
        self.queue.push(hi);
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let g = self.queue[i];
            i += 1;
            for col in 0..self.columns {
                let d = self.get(g, col);
                if d == NONE {
                    continue;
                }
                self.set(g, col, NONE);
                if self.get(d, col ^ 1) == g {
                    self.set(d, col ^ 1, NONE);
                }
                let mu = self.rep(g);
                let nu = self.rep(d);
                let mu_x = self.get(mu, col);
                if mu_x != NONE {
                    self.merge(nu, mu_x);
                } else {
                    let nu_y = self.get(nu, col ^ 1);
                    if nu_y != NONE {
                        self.merge(mu, nu_y);
                    } else {
                        self.set(mu, col, nu);
                        self.set(nu, col ^ 1, mu);
                        self.deductions.push((mu, col));
                    }
                }
            }
        }
        self.queue.clear();
    }

    /// Scans `w` at `c` from both ends, filling a single gap or recording
    /// a coincidence.
    fn scan(&mut self, c: u32, w: &[usize]) {
        let n = w.len();
        let mut f = c;
        let mut i = 0;
        while i < n {
            let next = self.get(f, w[i]);
            if next == NONE {
                break;
            }
            f = next;
            i += 1;
        }
        if i == n {
            if f != c {
                self.coincidence(f, c);
            }
            return;
        }
        let mut b = c;
        let mut j = n;
        while j > i {
            let next = self.get(b, w[j - 1] ^ 1);
            if next == NONE {
                break;
            }
            b = next;
            j -= 1;
        }
        if j == i {
            self.coincidence(f, b);
        } else if j == i + 1 {
            self.set(f, w[i], b);
            self.set(b, w[i] ^ 1, f);
            self.deductions.push((f, w[i]));
        }
    }

    fn process_deductions(&mut self) {
        while let Some((c, col)) = self.deductions.pop() {
            if !self.is_live(c) {
                continue;
            }
            let d = self.get(c, col);
            if d == NONE {
                continue;
            }
            for k in 0..self.conjugates[col].len() {
                if !self.is_live(c) {
                    break;
                }
                let w = self.conjugates[col][k].clone();
                self.scan(c, &w);
            }
            let d = self.rep(d);
            for k in 0..self.conjugates[col ^ 1].len() {
                if !self.is_live(d) {
                    break;
                }
                let w = self.conjugates[col ^ 1][k].clone();
                self.scan(d, &w);
            }
        }
    }

    /// Traces `w` from `c`, defining cosets where needed, and identifies the
    /// end with `c`.
    fn scan_and_fill(&mut self, c: u32, w: &[usize]) -> Result<()> {
        let mut f = self.rep(c);
        for &col in w {
            if self.get(f, col) == NONE {
                self.define(f, col)?;
            }
            f = self.get(f, col);
        }
        let c = self.rep(c);
        if f != c {
            self.coincidence(f, c);
        }
        self.process_deductions();
        Ok(())
    }

    fn run(&mut self) -> Result<()> {
        for k in 0..self.subgroup.len() {
            let w = self.subgroup[k].clone();
            self.scan_and_fill(0, &w)?;
        }
        loop {
            let mut c = 0u32;
            while (c as usize) < self.allocated() {
                for col in 0..self.columns {
                    if !self.is_live(c) {
                        break;
                    }
                    if self.get(c, col) == NONE {
                        self.define(c, col)?;
                        self.process_deductions();
                    }
                }
                c += 1;
            }
            if !self.sweep() {
                return Ok(());
            }
        }
    }

    /// Checks every relator at every live coset and every subgroup
    /// generator at coset 0 on the complete table. Returns whether anything
    /// changed.
    fn sweep(&mut self) -> bool {
        let mut changed = false;
        let mut c = 0u32;
        while (c as usize) < self.allocated() {
            for k in 0..self.relators.len() {
                if !self.is_live(c) {
                    break;
                }
                let w = self.relators[k].clone();
                if let Some(end) = self.trace_complete(c, &w) {
                    if end != c {
                        self.coincidence(end, c);
                        self.process_deductions();
                        changed = true;
                    }
                } else {
                    changed = true;
                }
            }
            c += 1;
        }
        for k in 0..self.subgroup.len() {
            let w = self.subgroup[k].clone();
            match self.trace_complete(0, &w) {
                Some(0) => {}
                Some(end) => {
                    self.coincidence(end, 0);
                    self.process_deductions();
                    changed = true;
                }
                None => changed = true,
            }
        }
        changed
    }

    fn trace_complete(&self, c: u32, w: &[usize]) -> Option<u32> {
        let mut f = c;
        for &col in w {
            f = self.get(f, col);
            if f == NONE {
                return None;
            }
        }
        Some(f)
    }

    fn standardize(&self) -> CosetTable {
        let mut number = vec![NONE; self.allocated()];
        let mut order: Vec<u32> = vec![0];
        number[0] = 0;
        let mut i = 0;
        while i < order.len() {
            let c = order[i];
            for col in 0..self.columns {
                let d = self.get(c, col);
                if number[d as usize] == NONE {
                    number[d as usize] = order.len() as u32;
                    order.push(d);
                }
            }
            i += 1;
        }
        debug_assert_eq!(order.len(), self.live);
        let mut rows = Vec::with_capacity(order.len() * self.columns);
        for &c in &order {
            for col in 0..self.columns {
                rows.push(number[self.get(c, col) as usize]);
            }
        }
        CosetTable {
            columns: self.columns,
            rows,
            cosets_defined: self.allocated(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order(text: &str) -> usize {
        group_order(&Presentation::parse(text).unwrap(), DEFAULT_COSET_BUDGET).unwrap()
    }

    #[test]
    fn classical_orders() {
        assert_eq!(order("<a,b | a^2, b^3, (ab)^5>"), 60);
        assert_eq!(order("<a,b | a^4, b^2, (ab)^2>"), 8);
        assert_eq!(order("<a,b | a^4, a^2 = b^2, b^-1 a b = a^-1>"), 8);
        assert_eq!(order("<a,b | a^3, b^3, (ab)^3, (a^-1 b)^3>"), 27);
        assert_eq!(order("<a | a^7>"), 7);
    }

    #[test]
    fn infinite_hits_budget() {
        let p = Presentation::parse("<a,b | [a,b]>").unwrap();
        assert!(group_order(&p, 500).unwrap_err().is_resource());
    }

    #[test]
    fn subgroup_index() {
        let p = Presentation::parse("<a,b | a^2, b^3, (ab)^5>").unwrap();
        let t = enumerate_cosets(&p, &[vec![1]], DEFAULT_COSET_BUDGET).unwrap();
        assert_eq!(t.index(), 30);
    }
}
