//! Class groups of primitive binary quadratic forms `ax² + bxy + cy²`.
//!
//! Negative discriminants use positive definite forms and Gauss reduction.
//! Positive discriminants use cycles of reduced indefinite forms, which
//! computes the narrow (proper) class group; the wide group is its quotient
//! by the class of `−x² + …`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_integer::{Integer, Roots};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::intarith::{check_fundamental, invariants_from_order_counts, FactoredDiscriminant};

/// Largest `|D|` accepted by [`class_group`] unless a bound is passed.
pub const DEFAULT_DISCRIMINANT_BOUND: u64 = 1_000_000_000;

/// A binary quadratic form `ax² + bxy + cy²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BQForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl BQForm {
    pub fn new(a: i64, b: i64, c: i64) -> Self {
        BQForm { a, b, c }
    }

    pub fn discriminant(&self) -> i128 {
        let (a, b, c) = (self.a as i128, self.b as i128, self.c as i128);
        b * b - 4 * a * c
    }

    /// The principal form of discriminant `d`, reduced.
    pub fn principal(d: i64) -> Result<Self> {
        check_form_discriminant(d as i128)?;
        let b0 = d.rem_euclid(2);
        reduce(BQForm::new(1, b0, (b0 * b0 - d) / 4))
    }

    /// The inverse class representative `(a, −b, c)`.
    pub fn inverse(&self) -> Self {
        BQForm::new(self.a, -self.b, self.c)
    }

    fn from_i128(a: i128, b: i128, c: i128) -> Result<Self> {
        let conv = |x: i128| i64::try_from(x).map_err(|_| Error::resource("form coefficient exceeds 64 bits"));
        Ok(BQForm::new(conv(a)?, conv(b)?, conv(c)?))
    }
}

impl fmt::Display for BQForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

fn check_form_discriminant(d: i128) -> Result<()> {
    if d == 0 {
        return Err(Error::domain("zero discriminant"));
    }
    if d.rem_euclid(4) > 1 {
        return Err(Error::domain(format!("{d} is not 0 or 1 mod 4")));
    }
    if d > 0 {
        let s = (d as u128).sqrt() as i128;
        if s * s == d {
            return Err(Error::domain(format!("{d} is a perfect square")));
        }
    }
    Ok(())
}

fn isqrt(d: i128) -> i128 {
    (d as u128).sqrt() as i128
}

fn is_reduced_indefinite(a: i128, b: i128, s: i128) -> bool {
    let a2 = 2 * a.abs();
    0 < b && b <= s && b + a2 > s && a2 - b <= s
}

/// Replaces `b` by the representative of `b mod 2|a|` used by the rho map.
fn normalize_indefinite(a: i128, b: i128, d: i128, s: i128) -> (i128, i128, i128) {
    let m = 2 * a.abs();
    let b = if a.abs() > s {
        // b in (−|a|, |a|]
        let r = b.rem_euclid(m);
        if r > a.abs() {
            r - m
        } else {
            r
        }
    } else {
        // b in [s − 2|a| + 1, s]
        let lo = s - m + 1;
        lo + (b - lo).rem_euclid(m)
    };
    (a, b, (b * b - d) / (4 * a))
}

/// One step of the reduction operator on indefinite forms.
fn rho((_, b, c): (i128, i128, i128), d: i128, s: i128) -> (i128, i128, i128) {
    normalize_indefinite(c, -b, d, s)
}

/// Gauss-reduced representative of the (proper) class of `f`.
///
/// Definite: `|b| ≤ a ≤ c`, and `b ≥ 0` when `|b| = a` or `a = c`.
/// Indefinite: `|√D − 2|a|| < b < √D`.
pub fn reduce(f: BQForm) -> Result<BQForm> {
    let d = f.discriminant();
    check_form_discriminant(d)?;
    if d < 0 {
        if f.a < 0 {
            return Err(Error::domain(format!("form {f} is negative definite")));
        }
        let (mut a, mut b, mut c) = (f.a as i128, f.b as i128, f.c as i128);
        loop {
            if b > a || b <= -a {
                // b into (−a, a]
                let m = 2 * a;
                let mut r = b.rem_euclid(m);
                if r > a {
                    r -= m;
                }
                c = (r * r - d) / (4 * a);
                b = r;
            }
            if a > c {
                std::mem::swap(&mut a, &mut c);
                b = -b;
                continue;
            }
            if (a == c || b == -a) && b < 0 {
                b = -b;
            }
            break;
        }
        return BQForm::from_i128(a, b, c);
    }
    let s = isqrt(d);
    // a ≠ 0 and c ≠ 0 since D is not a square.
    let mut g = (f.a as i128, f.b as i128, f.c as i128);
    let limit = 64 + 4 * (128 - (g.0.unsigned_abs() + g.2.unsigned_abs()).leading_zeros()) as usize;
    let mut steps = 0usize;
    g = normalize_indefinite(g.0, g.1, d, s);
    while !is_reduced_indefinite(g.0, g.1, s) {
        g = rho(g, d, s);
        steps += 1;
        if steps > limit {
            return Err(Error::resource(format!(
                "reduction of {f} did not terminate in {limit} steps"
            )));
        }
    }
    BQForm::from_i128(g.0, g.1, g.2)
}

/// For indefinite reduced forms with `a < 0`, steps along the cycle to a
/// properly equivalent reduced form with `a > 0`.
fn positive_leading(f: BQForm) -> BQForm {
    if f.a > 0 || f.discriminant() < 0 {
        return f;
    }
    let d = f.discriminant();
    let g = rho((f.a as i128, f.b as i128, f.c as i128), d, isqrt(d));
    BQForm::new(g.0 as i64, g.1 as i64, g.2 as i64)
}

/// Gauss composition followed by reduction.
pub fn compose(f: BQForm, g: BQForm) -> Result<BQForm> {
    let d = f.discriminant();
    if d != g.discriminant() {
        return Err(Error::domain(format!(
            "cannot compose {f} and {g}: discriminants {d} and {} differ",
            g.discriminant()
        )));
    }
    let f = positive_leading(reduce(f)?);
    let g = positive_leading(reduce(g)?);
    let (mut f1, mut f2) = (
        (f.a as i128, f.b as i128, f.c as i128),
        (g.a as i128, g.b as i128, g.c as i128),
    );
    if f1.0 > f2.0 {
        std::mem::swap(&mut f1, &mut f2);
    }
    let (a1, b1, _) = f1;
    let (a2, b2, c2) = f2;
    let s = (b1 + b2) / 2;
    let n = b2 - s;
    let (y1, dd) = if a2 % a1 == 0 {
        (0, a1)
    } else {
        let e = a2.extended_gcd(&a1);
        (e.x, e.gcd)
    };
    let (x2, y2, d1) = if s % dd == 0 {
        (0, -1, dd)
    } else {
        let e = s.extended_gcd(&dd);
        (e.x, -e.y, e.gcd)
    };
    let v1 = a1 / d1;
    let v2 = a2 / d1;
    let r = (y1 * y2 * n - x2 * c2).rem_euclid(v1);
    let b3 = b2 + 2 * v2 * r;
    let a3 = v1 * v2;
    let c3 = (b3 * b3 - d) / (4 * a3);
    reduce(BQForm::from_i128(a3, b3, c3)?)
}

/// A form class group with its abelian structure.
#[derive(Debug, Clone)]
pub struct FormClassGroup {
    pub discriminant: i64,
    pub narrow: bool,
    /// One reduced form per class (leading coefficient positive).
    pub representatives: Vec<BQForm>,
    /// Invariant factors, ascending, each dividing the next.
    pub structure: Vec<u64>,
    /// Elementary divisors of the 2-Sylow subgroup, ascending.
    pub two_part: Vec<u64>,
    lookup: HashMap<(i64, i64), usize>,
    // Proper classes merged into each wide class (None for narrow groups).
    wide_of: Option<Vec<usize>>,
}

impl FormClassGroup {
    pub fn order(&self) -> u64 {
        self.representatives.len() as u64
    }

    pub fn two_order(&self) -> u64 {
        self.two_part.iter().product()
    }

    /// Number of invariant factors divisible by 4.
    pub fn four_rank(&self) -> u32 {
        self.two_part.iter().filter(|&&e| e % 4 == 0).count() as u32
    }

    /// Index of the class containing `f`.
    pub fn class_of(&self, f: BQForm) -> Result<usize> {
        let r = reduce(f)?;
        let proper = *self
            .lookup
            .get(&(r.a, r.b))
            .ok_or_else(|| Error::inconsistency(format!("reduced form {r} missing from table")))?;
        Ok(match &self.wide_of {
            Some(w) => w[proper],
            None => proper,
        })
    }
}

struct ReducedForms {
    d: i128,
    forms: Vec<BQForm>,
    lookup: HashMap<(i64, i64), usize>,
    // Class index of each reduced form.
    class: Vec<usize>,
    // A representative (reduced, a > 0) of each class.
    reps: Vec<BQForm>,
}

fn enumerate_definite(d: i128) -> ReducedForms {
    let mut forms = Vec::new();
    let amax = isqrt(-d / 3);
    for a in 1..=amax {
        for b in -a + 1..=a {
            let num = b * b - d;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a || (c == a && b < 0) {
                continue;
            }
            if a.gcd(&b).gcd(&c) != 1 {
                continue;
            }
            forms.push(BQForm::new(a as i64, b as i64, c as i64));
        }
    }
    let lookup = forms.iter().enumerate().map(|(i, f)| ((f.a, f.b), i)).collect();
    let class = (0..forms.len()).collect();
    ReducedForms {
        d,
        reps: forms.clone(),
        forms,
        lookup,
        class,
    }
}

fn enumerate_indefinite(d: i128) -> Result<ReducedForms> {
    let s = isqrt(d);
    let mut forms = Vec::new();
    let mut b = if d % 2 == 0 { 2 } else { 1 };
    if b > s {
        b = s;
    }
    while b <= s {
        let n = (d - b * b) / 4;
        // s − b < 2|a| ≤ s + b
        let lo = (s - b) / 2 + 1;
        let hi = (s + b) / 2;
        for a in lo..=hi {
            if n % a != 0 {
                continue;
            }
            let c = n / a;
            if a.gcd(&b).gcd(&c) != 1 {
                continue;
            }
            forms.push(BQForm::new(a as i64, b as i64, -(c as i64)));
            forms.push(BQForm::new(-(a as i64), b as i64, c as i64));
        }
        b += 2;
    }
    let lookup: HashMap<(i64, i64), usize> = forms.iter().enumerate().map(|(i, f)| ((f.a, f.b), i)).collect();
    let mut class = vec![usize::MAX; forms.len()];
    let mut reps = Vec::new();
    for start in 0..forms.len() {
        if class[start] != usize::MAX {
            continue;
        }
        let id = reps.len();
        let mut rep: Option<BQForm> = None;
        let mut cur = start;
        loop {
            class[cur] = id;
            let f = forms[cur];
            if f.a > 0 && rep.is_none_or(|r| (f.a, f.b) < (r.a, r.b)) {
                rep = Some(f);
            }
            let g = rho((f.a as i128, f.b as i128, f.c as i128), d, s);
            let next = *lookup
                .get(&(g.0 as i64, g.1 as i64))
                .ok_or_else(|| Error::inconsistency(format!("rho left the reduced set at {f} (D = {d})")))?;
            if next == start {
                break;
            }
            if class[next] != usize::MAX {
                return Err(Error::inconsistency(format!(
                    "rho cycles of D = {d} overlap at {}",
                    forms[next]
                )));
            }
            cur = next;
        }
        reps.push(rep.ok_or_else(|| Error::inconsistency(format!("cycle without positive leading form (D = {d})")))?);
    }
    Ok(ReducedForms {
        d,
        forms,
        lookup,
        class,
        reps,
    })
}

impl ReducedForms {
    fn class_index(&self, f: BQForm) -> Result<usize> {
        let r = reduce(f)?;
        self.lookup
            .get(&(r.a, r.b))
            .map(|&i| self.class[i])
            .ok_or_else(|| Error::inconsistency(format!("reduced form {r} not enumerated")))
    }

    fn principal_index(&self) -> Result<usize> {
        self.class_index(BQForm::principal(self.d as i64)?)
    }

    /// Class of `−x² + b₀xy + …`; principal iff the fundamental unit has
    /// norm −1.
    fn minus_one_index(&self) -> Result<usize> {
        let d = self.d as i64;
        let b0 = d.rem_euclid(2);
        self.class_index(BQForm::new(-1, b0, (d - b0 * b0) / 4))
    }
}

fn enumerate(d: i64, bound: u64) -> Result<ReducedForms> {
    check_fundamental(d)?;
    if d.unsigned_abs() > bound {
        return Err(Error::resource(format!(
            "|D| = {} exceeds the class group bound {bound}",
            d.unsigned_abs()
        )));
    }
    if d < 0 {
        Ok(enumerate_definite(d as i128))
    } else {
        enumerate_indefinite(d as i128)
    }
}

/// Class group of forms of fundamental discriminant `d`.
///
/// For `d > 0`, `narrow = true` gives the narrow group and `false` the
/// wide one. The flag is ignored for `d < 0`.
pub fn class_group(d: i64, narrow: bool) -> Result<FormClassGroup> {
    class_group_bounded(d, narrow, DEFAULT_DISCRIMINANT_BOUND)
}

/// [`class_group`] with an explicit bound on `|d|`.
pub fn class_group_bounded(d: i64, narrow: bool, bound: u64) -> Result<FormClassGroup> {
    let rf = enumerate(d, bound)?;
    let h = rf.reps.len();
    let id = rf.principal_index()?;
    // Wide quotient: merge each class with its product by J.
    let (wide_of, reps_idx): (Option<Vec<usize>>, Vec<usize>) = if d > 0 && !narrow {
        let j = rf.minus_one_index()?;
        if j == id {
            (None, (0..h).collect())
        } else {
            let jf = rf.reps[j];
            let mut wide = vec![usize::MAX; h];
            let mut kept = Vec::new();
            for x in 0..h {
                if wide[x] != usize::MAX {
                    continue;
                }
                let y = rf.class_index(compose(rf.reps[x], jf)?)?;
                wide[x] = kept.len();
                wide[y] = kept.len();
                kept.push(x);
            }
            (Some(wide), kept)
        }
    } else {
        (None, (0..h).collect())
    };
    let wide_class = |i: usize| wide_of.as_ref().map_or(i, |w| w[i]);
    let id_w = wide_class(id);
    let mut counts: BTreeMap<u64, u64> = BTreeMap::new();
    for &x in &reps_idx {
        let f = rf.reps[x];
        let mut acc = f;
        let mut ord = 1u64;
        while wide_class(rf.class_index(acc)?) != id_w {
            acc = compose(acc, f)?;
            ord += 1;
            if ord > h as u64 {
                return Err(Error::inconsistency(format!(
                    "class of {f} has no finite order in D = {d}"
                )));
            }
        }
        *counts.entry(ord).or_default() += 1;
    }
    let structure = invariants_from_order_counts(&counts);
    let two_part: Vec<u64> = structure
        .iter()
        .map(|&e| 1u64 << e.trailing_zeros())
        .filter(|&e| e > 1)
        .collect();
    let lookup = rf
        .forms
        .iter()
        .enumerate()
        .map(|(i, f)| ((f.a, f.b), rf.class[i]))
        .collect();
    Ok(FormClassGroup {
        discriminant: d,
        narrow: narrow || d < 0,
        representatives: reps_idx.iter().map(|&i| rf.reps[i]).collect(),
        structure,
        two_part,
        lookup,
        wide_of,
    })
}

/// Wide class number `h(d)` together with the narrow one.
pub fn class_numbers(d: i64) -> Result<(u64, u64)> {
    let rf = enumerate(d, DEFAULT_DISCRIMINANT_BOUND)?;
    let narrow = rf.reps.len() as u64;
    if d < 0 {
        return Ok((narrow, narrow));
    }
    let wide = if rf.minus_one_index()? == rf.principal_index()? {
        narrow
    } else {
        narrow / 2
    };
    Ok((wide, narrow))
}

/// 2-part of the wide class number of `Q(√d)`.
pub fn h2(d: i64) -> Result<u64> {
    let (h, _) = class_numbers(d)?;
    Ok(1 << h.trailing_zeros())
}

/// 4-rank of the (narrow, for `d > 0`) class group from its structure.
pub fn four_rank_forms(d: i64) -> Result<u32> {
    Ok(class_group(d, true)?.four_rank())
}

/// Counts unordered `C₄`-splittings `{D₁, D₂}` of a product of `n` prime
/// discriminants, including the trivial one, and returns `r` with
/// `2^r = count`. `sym(i, j)` must return `(d_i/p_j)` for `i ≠ j`.
pub fn count_c4_splittings(n: usize, sym: impl Fn(usize, usize) -> i8) -> Result<u32> {
    if n == 0 || n > 16 {
        return Err(Error::domain("splitting count needs 1 to 16 parts"));
    }
    let mut count = 0u32;
    // Masks without the last part enumerate unordered pairs once.
    for mask in 0u32..1 << (n - 1) {
        let inside = |i: usize| mask >> i & 1 == 1;
        let ok = (0..n).all(|j| {
            let prod: i8 = (0..n).filter(|&i| inside(i) != inside(j)).map(|i| sym(i, j)).product();
            prod == 1
        });
        if ok {
            count += 1;
        }
    }
    if !count.is_power_of_two() {
        return Err(Error::inconsistency(format!(
            "{count} C4-splittings is not a power of two"
        )));
    }
    Ok(count.trailing_zeros())
}

/// 4-rank via `C₄`-splittings of a factored discriminant.
pub fn four_rank_splittings(fd: &FactoredDiscriminant) -> Result<u32> {
    let parts = fd.parts();
    count_c4_splittings(parts.len(), |i, j| {
        crate::intarith::kron(parts[i].value(), parts[j].prime() as i64)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduce_examples() {
        assert_eq!(reduce(BQForm::new(5, 4, 1)).unwrap(), BQForm::new(1, 0, 1));
        assert_eq!(reduce(BQForm::new(2, 2, 3)).unwrap(), BQForm::new(2, 2, 3));
        assert!(reduce(BQForm::new(1, 2, 1)).is_err());
    }

    #[test]
    fn compose_order_two() {
        let f = BQForm::new(2, 2, 3);
        assert_eq!(compose(f, f).unwrap(), BQForm::new(1, 0, 5));
    }

    #[test]
    fn small_groups() {
        let g = class_group(-4, false).unwrap();
        assert_eq!(g.order(), 1);
        let g = class_group(-84, false).unwrap();
        assert_eq!(g.structure, vec![2, 2]);
        assert_eq!(h2(-20).unwrap(), 2);
        // Q(√3): h = 1, narrow h = 2.
        assert_eq!(class_numbers(12).unwrap(), (1, 2));
        assert_eq!(class_numbers(5).unwrap(), (1, 1));
    }
}
