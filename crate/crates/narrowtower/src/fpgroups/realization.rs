//! Finite groups realized by their regular coset action, with subgroup
//! closures, commutator series and abelian invariants.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fpgroups::enumerate::{enumerate_cosets, CosetTable};
use crate::fpgroups::presentation::{Presentation, Word};
use crate::intarith::invariants_from_order_counts;

/// Largest order for which a multiplication table is built.
pub const MAX_REALIZED_ORDER: usize = 2048;

/// A finite group with elements `0..order`, `0` the identity. Element `i`
/// is the coset `H·w_i` of the trivial subgroup.
#[derive(Debug, Clone)]
pub struct FiniteGroup {
    order: usize,
    generator_names: Vec<String>,
    gens: Vec<usize>,
    mul: Vec<u32>,
    inv: Vec<usize>,
    words: Vec<Word>,
}

/// A subgroup stored as a membership mask plus its element list.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subgroup {
    mask: Vec<bool>,
    elements: Vec<usize>,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.mask[x]
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }
}

/// Coset enumeration followed by realization.
pub fn realize(p: &Presentation, coset_budget: usize) -> Result<FiniteGroup> {
    let table = enumerate_cosets(p, &[], coset_budget)?;
    FiniteGroup::from_coset_table(p, &table)
}

impl FiniteGroup {
    pub fn from_coset_table(p: &Presentation, table: &CosetTable) -> Result<Self> {
        let n = table.index();
        if n > MAX_REALIZED_ORDER {
            return Err(Error::resource(format!(
                "group of order {n} exceeds the realization bound {MAX_REALIZED_ORDER}"
            )));
        }
        let cols = 2 * table.generator_count();
        // Spanning tree: element j = parent[j] · letter[j].
        let mut parent = vec![usize::MAX; n];
        let mut letter = vec![0i32; n];
        let mut seen = vec![false; n];
        let mut bfs = vec![0usize];
        seen[0] = true;
        let mut i = 0;
        while i < bfs.len() {
            let c = bfs[i];
            for col in 0..cols {
                let d = table.entry(c, col);
                if !seen[d] {
                    seen[d] = true;
                    parent[d] = c;
                    letter[d] = if col % 2 == 0 {
                        (col / 2 + 1) as i32
                    } else {
                        -((col / 2 + 1) as i32)
                    };
                    bfs.push(d);
                }
            }
            i += 1;
        }
        let mut words = vec![Vec::new(); n];
        for &j in bfs.iter().skip(1) {
            let mut w = words[parent[j]].clone();
            w.push(letter[j]);
            words[j] = w;
        }
        let mut mul = vec![0u32; n * n];
        for x in 0..n {
            mul[x * n] = x as u32;
            for &j in bfs.iter().skip(1) {
                let base = mul[x * n + parent[j]] as usize;
                mul[x * n + j] = table.act(base, letter[j]) as u32;
            }
        }
        let mut inv = vec![0usize; n];
        for x in 0..n {
            inv[x] = (0..n)
                .find(|&y| mul[x * n + y] == 0)
                .expect("every element has an inverse");
        }
        let gens = (0..table.generator_count())
            .map(|g| table.act(0, g as i32 + 1))
            .collect();
        Ok(FiniteGroup {
            order: n,
            generator_names: p.generators().to_vec(),
            gens,
            mul,
            inv,
            words,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn generators(&self) -> &[usize] {
        &self.gens
    }

    pub fn generator_names(&self) -> &[String] {
        &self.generator_names
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.mul[x * self.order + y] as usize
    }

    pub fn inv(&self, x: usize) -> usize {
        self.inv[x]
    }

    /// A word in the generators representing `x`.
    pub fn word_of(&self, x: usize) -> &Word {
        &self.words[x]
    }

    /// Evaluates a word in the generators.
    pub fn eval(&self, w: &[i32]) -> usize {
        self.eval_with(w, &self.gens)
    }

    /// Evaluates a word with generator `k` sent to `images[k]`.
    pub fn eval_with(&self, w: &[i32], images: &[usize]) -> usize {
        w.iter().fold(0, |acc, &l| {
            let g = images[l.unsigned_abs() as usize - 1];
            self.mul(acc, if l > 0 { g } else { self.inv(g) })
        })
    }

    /// `x⁻¹y⁻¹xy`.
    pub fn comm(&self, x: usize, y: usize) -> usize {
        let a = self.mul(self.inv(x), self.inv(y));
        let b = self.mul(x, y);
        self.mul(a, b)
    }

    /// `y⁻¹xy`.
    pub fn conj(&self, x: usize, y: usize) -> usize {
        self.mul(self.mul(self.inv(y), x), y)
    }

    pub fn pow(&self, x: usize, n: u64) -> usize {
        let mut acc = 0;
        for _ in 0..n {
            acc = self.mul(acc, x);
        }
        acc
    }

    pub fn element_order(&self, x: usize) -> u64 {
        let mut y = x;
        let mut k = 1;
        while y != 0 {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup {
            mask: vec![true; self.order],
            elements: (0..self.order).collect(),
        }
    }

    pub fn trivial(&self) -> Subgroup {
        self.closure(&[])
    }

    /// Subgroup generated by `gens`.
    pub fn closure(&self, gens: &[usize]) -> Subgroup {
        let mut mask = vec![false; self.order];
        mask[0] = true;
        let mut elements = vec![0];
        let mut i = 0;
        while i < elements.len() {
            let x = elements[i];
            for &g in gens {
                let y = self.mul(x, g);
                if !mask[y] {
                    mask[y] = true;
                    elements.push(y);
                }
            }
            i += 1;
        }
        elements.sort_unstable();
        Subgroup { mask, elements }
    }

    /// `[A, B]` generated by all commutators of elements.
    pub fn commutator_subgroup(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let mut mask = vec![false; self.order];
        let mut gens = Vec::new();
        for &x in a.elements() {
            for &y in b.elements() {
                let c = self.comm(x, y);
                if !mask[c] {
                    mask[c] = true;
                    gens.push(c);
                }
            }
        }
        self.closure(&gens)
    }

    pub fn derived_subgroup(&self) -> Subgroup {
        let g = self.whole();
        self.commutator_subgroup(&g, &g)
    }

    /// `G₁ = G, G_{i+1} = [G, G_i]`, until it stabilizes.
    pub fn lower_central_series(&self) -> Vec<Subgroup> {
        let g = self.whole();
        let mut series = vec![g.clone()];
        loop {
            let next = self.commutator_subgroup(&g, series.last().unwrap());
            if next.order() == series.last().unwrap().order() {
                break;
            }
            series.push(next);
        }
        series
    }

    pub fn derived_series(&self) -> Vec<Subgroup> {
        let mut series = vec![self.whole()];
        loop {
            let last = series.last().unwrap();
            let next = self.commutator_subgroup(last, last);
            if next.order() == last.order() {
                break;
            }
            series.push(next);
        }
        series
    }

    pub fn center(&self) -> Subgroup {
        let elements: Vec<usize> = (0..self.order)
            .filter(|&x| self.gens.iter().all(|&g| self.mul(x, g) == self.mul(g, x)))
            .collect();
        let mut mask = vec![false; self.order];
        elements.iter().for_each(|&x| mask[x] = true);
        Subgroup { mask, elements }
    }

    /// Invariant factors of the abelian quotient `A/N`, `N ⊴ A`,
    /// `[A, A] ≤ N`.
    pub fn quotient_invariants(&self, a: &Subgroup, n: &Subgroup) -> Vec<u64> {
        let mut counts: BTreeMap<u64, u64> = BTreeMap::new();
        for &x in a.elements() {
            let mut y = x;
            let mut k = 1;
            while !n.contains(y) {
                y = self.mul(y, x);
                k += 1;
            }
            *counts.entry(k).or_default() += 1;
        }
        let scale = n.order() as u64;
        for v in counts.values_mut() {
            *v /= scale;
        }
        invariants_from_order_counts(&counts)
    }

    /// Invariants of `G/G'`.
    pub fn abelian_invariants(&self) -> Vec<u64> {
        self.quotient_invariants(&self.whole(), &self.derived_subgroup())
    }

    /// Invariants of `H/H'`.
    pub fn abelianization_of(&self, h: &Subgroup) -> Vec<u64> {
        self.quotient_invariants(h, &self.commutator_subgroup(h, h))
    }

    /// Element orders with multiplicities.
    pub fn order_histogram(&self) -> BTreeMap<u64, u64> {
        let mut out = BTreeMap::new();
        for x in 0..self.order {
            *out.entry(self.element_order(x)).or_default() += 1;
        }
        out
    }

    pub fn exponent(&self) -> u64 {
        self.order_histogram()
            .keys()
            .fold(1, |acc, &k| num_integer::lcm(acc, k))
    }

    pub fn centralizer_order(&self, x: usize) -> usize {
        (0..self.order).filter(|&y| self.mul(x, y) == self.mul(y, x)).count()
    }

    pub fn conjugacy_class_count(&self) -> usize {
        // Burnside: the number of classes is the average centralizer order.
        (0..self.order).map(|x| self.centralizer_order(x)).sum::<usize>() / self.order
    }

    pub fn fingerprint(&self) -> Fingerprint {
        let lcs = self.lower_central_series();
        let lower_central_factors = lcs.windows(2).map(|w| self.quotient_invariants(&w[0], &w[1])).collect();
        let derived = self.derived_subgroup();
        Fingerprint {
            order: self.order,
            abelian_invariants: self.abelian_invariants(),
            lower_central_factors,
            nilpotent: lcs.last().map(|s| s.is_trivial()).unwrap_or(true),
            derived_invariants: self.abelianization_of(&derived),
            derived_length: self.derived_series().len() - 1,
            center_order: self.center().order(),
            exponent: self.exponent(),
            order_histogram: self.order_histogram().into_iter().collect(),
            class_count: self.conjugacy_class_count(),
        }
    }
}

/// Isomorphism invariants used to rule out isomorphisms quickly.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Fingerprint {
    pub order: usize,
    pub abelian_invariants: Vec<u64>,
    /// Invariants of `G_i/G_{i+1}` along the lower central series.
    pub lower_central_factors: Vec<Vec<u64>>,
    pub nilpotent: bool,
    /// Invariants of `G'/G''`.
    pub derived_invariants: Vec<u64>,
    pub derived_length: usize,
    pub center_order: usize,
    pub exponent: u64,
    pub order_histogram: Vec<(u64, u64)>,
    pub class_count: usize,
}

impl Fingerprint {
    /// Nilpotency class when the lower central series reaches 1.
    pub fn nilpotency_class(&self) -> Option<usize> {
        self.nilpotent.then_some(self.lower_central_factors.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpgroups::enumerate::DEFAULT_COSET_BUDGET;

    #[test]
    fn dihedral_and_quaternion() {
        let d8 = realize(
            &Presentation::parse("<a,b | a^4, b^2, (ab)^2>").unwrap(),
            DEFAULT_COSET_BUDGET,
        )
        .unwrap();
        let q8 = realize(
            &Presentation::parse("<a,b | a^4, a^2 = b^2, b^-1 a b = a^-1>").unwrap(),
            DEFAULT_COSET_BUDGET,
        )
        .unwrap();
        assert_eq!(d8.abelian_invariants(), vec![2, 2]);
        assert_eq!(q8.abelian_invariants(), vec![2, 2]);
        assert_eq!(d8.center().order(), 2);
        assert_ne!(d8.fingerprint(), q8.fingerprint());
        assert_eq!(q8.order_histogram().get(&4), Some(&6));
        assert_eq!(d8.conjugacy_class_count(), 5);
    }

    #[test]
    fn words_evaluate_to_their_elements() {
        let g = realize(
            &Presentation::parse("<a,b | a^2, b^3, (ab)^5>").unwrap(),
            DEFAULT_COSET_BUDGET,
        )
        .unwrap();
        for x in 0..g.order() {
            assert_eq!(g.eval(g.word_of(x)), x);
        }
        assert_eq!(g.derived_subgroup().order(), 60);
        assert_eq!(g.center().order(), 1);
    }
}
