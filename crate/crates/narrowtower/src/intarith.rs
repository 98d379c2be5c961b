//! Exact integer primitives: Kronecker symbols, primality and factoring,
//! squarefree kernels, and the splitting of fundamental discriminants into
//! prime discriminants.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Kronecker symbol `(a/n)`.
pub fn kronecker_symbol(a: i64, n: i64) -> Result<i8> {
    if n == 0 {
        return Err(Error::domain("Kronecker symbol (a/0) is not defined here"));
    }
    let mut a = a as i128;
    let mut n = n as i128;
    let mut result: i8 = 1;
    if n < 0 {
        n = -n;
        if a < 0 {
            result = -result;
        }
    }
    let twos = n.trailing_zeros();
    if twos > 0 {
        if a % 2 == 0 {
            return Ok(0);
        }
        n >>= twos;
        if twos % 2 == 1 && matches!(a.rem_euclid(8), 3 | 5) {
            result = -result;
        }
    }
    // Jacobi symbol (a/n) for odd n > 0.
    a = a.rem_euclid(n);
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if matches!(n % 8, 3 | 5) {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        a %= n;
    }
    Ok(if n == 1 { result } else { 0 })
}

/// Kronecker symbol for arguments already known to be valid (`n != 0`).
pub(crate) fn kron(a: i64, n: i64) -> i8 {
    kronecker_symbol(a, n).expect("nonzero modulus")
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin for all `u64`.
pub fn is_prime(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &WITNESSES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Brent's variant of Pollard rho; `n` must be odd and composite.
fn pollard_rho(n: u64) -> u64 {
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut g) = (2u64, 2u64, 1u64);
        while g == 1 {
            x = f(x);
            y = f(f(y));
            g = x.abs_diff(y).gcd(&n);
        }
        if g != n {
            return g;
        }
        c += 1;
    }
}

/// Prime factorization of `n > 0` as sorted `(prime, exponent)` pairs.
pub fn factor(n: u64) -> Vec<(u64, u32)> {
    let mut out: BTreeMap<u64, u32> = BTreeMap::new();
    let mut m = n;
    for p in [2u64, 3, 5] {
        while m.is_multiple_of(p) && m > 0 {
            *out.entry(p).or_default() += 1;
            m /= p;
        }
    }
    let mut p = 7u64;
    while p <= 1000 && p * p <= m {
        while m.is_multiple_of(p) {
            *out.entry(p).or_default() += 1;
            m /= p;
        }
        p += 2;
    }
    let mut stack = vec![m];
    while let Some(x) = stack.pop() {
        if x == 1 {
            continue;
        }
        if is_prime(x) {
            *out.entry(x).or_default() += 1;
            continue;
        }
        let sq = x.sqrt();
        if sq * sq == x {
            stack.push(sq);
            stack.push(sq);
            continue;
        }
        let d = pollard_rho(x);
        stack.push(d);
        stack.push(x / d);
    }
    out.into_iter().collect()
}

/// Squarefree part of `n`: the unique squarefree `s` with `|n| = s·t²`.
pub fn squarefree_kernel(n: i64) -> Result<u64> {
    if n == 0 {
        return Err(Error::domain("squarefree kernel of 0"));
    }
    Ok(factor(n.unsigned_abs())
        .into_iter()
        .filter(|&(_, e)| e % 2 == 1)
        .map(|(p, _)| p)
        .product())
}

/// Squarefree part of a big integer whose odd-exponent primes are known to
/// lie in `primes`. Returns `None` when no product of those primes works.
pub fn squarefree_kernel_among(n: &BigInt, primes: &[u64]) -> Option<u64> {
    if n.is_zero() {
        return None;
    }
    let n = n.abs();
    (0u32..1 << primes.len()).find_map(|mask| {
        let s: u64 = primes
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &p)| p)
            .product();
        let (q, r) = n.div_rem(&BigInt::from(s));
        if !r.is_zero() {
            return None;
        }
        let root = q.sqrt();
        (&root * &root == q).then_some(s)
    })
}

/// Checks that `d` is the discriminant of a quadratic field.
pub fn check_fundamental(d: i64) -> Result<()> {
    let reject = |reason: &str| {
        Err(Error::NotFundamental {
            value: d,
            reason: reason.to_string(),
        })
    };
    if d == 0 || d == 1 {
        return reject("0 and 1 are not field discriminants");
    }
    match d.rem_euclid(4) {
        1 => {
            if squarefree_kernel(d)? != d.unsigned_abs() {
                return reject("odd discriminant with a square factor");
            }
        }
        0 => {
            let m = d / 4;
            if !matches!(m.rem_euclid(4), 2 | 3) {
                return reject("d/4 must be 2 or 3 mod 4");
            }
            if squarefree_kernel(m)? != m.unsigned_abs() {
                return reject("d/4 has a square factor");
            }
        }
        _ => return reject("wrong residue class mod 4 (must be 0 or 1)"),
    }
    Ok(())
}

/// Discriminant of `Q(√m)` for a nonzero non-square integer `m`.
pub fn field_discriminant(m: i64) -> Result<i64> {
    if m == 0 {
        return Err(Error::domain("Q(√0) is not a field"));
    }
    let s = squarefree_kernel(m)? as i64 * m.signum();
    if s == 1 {
        return Err(Error::domain(format!("{m} is a square")));
    }
    Ok(if s.rem_euclid(4) == 1 { s } else { 4 * s })
}

/// A prime discriminant: `+p` (p ≡ 1 mod 4), `−p` (p ≡ 3 mod 4), `−4`, `±8`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "i64", into = "i64")]
pub struct PrimeDiscriminant {
    value: i64,
}

impl PrimeDiscriminant {
    pub fn new(value: i64) -> Result<Self> {
        let ok = match value {
            -4 | 8 | -8 => true,
            v => {
                let p = v.unsigned_abs();
                p % 2 == 1 && is_prime(p) && v.rem_euclid(4) == 1
            }
        };
        if ok {
            Ok(PrimeDiscriminant { value })
        } else {
            Err(Error::domain(format!("{value} is not a prime discriminant")))
        }
    }

    /// The prime discriminant attached to an odd prime.
    pub fn from_odd_prime(p: u64) -> Result<Self> {
        if p.is_multiple_of(2) || !is_prime(p) {
            return Err(Error::domain(format!("{p} is not an odd prime")));
        }
        let p = p as i64;
        Self::new(if p % 4 == 1 { p } else { -p })
    }

    pub fn value(self) -> i64 {
        self.value
    }

    /// The rational prime dividing the value.
    pub fn prime(self) -> u64 {
        match self.value {
            -4 | 8 | -8 => 2,
            v => v.unsigned_abs(),
        }
    }

    pub fn sign(self) -> i8 {
        if self.value < 0 {
            -1
        } else {
            1
        }
    }

    pub fn is_negative(self) -> bool {
        self.value < 0
    }
}

impl TryFrom<i64> for PrimeDiscriminant {
    type Error = Error;
    fn try_from(v: i64) -> Result<Self> {
        Self::new(v)
    }
}

impl From<PrimeDiscriminant> for i64 {
    fn from(d: PrimeDiscriminant) -> i64 {
        d.value
    }
}

impl fmt::Display for PrimeDiscriminant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// An ordered list of prime discriminants with distinct primes whose product
/// is a fundamental discriminant.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FactoredDiscriminant {
    parts: Vec<PrimeDiscriminant>,
}

impl FactoredDiscriminant {
    pub fn new(parts: Vec<PrimeDiscriminant>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::domain("empty factorization"));
        }
        let mut primes: Vec<u64> = parts.iter().map(|p| p.prime()).collect();
        primes.sort_unstable();
        if primes.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::domain("parts must have distinct primes"));
        }
        let fd = FactoredDiscriminant { parts };
        fd.checked_value()?;
        Ok(fd)
    }

    /// Builds from raw integers, e.g. `[5, 89, -19, -7]`.
    pub fn from_values(values: &[i64]) -> Result<Self> {
        Self::new(
            values
                .iter()
                .map(|&v| PrimeDiscriminant::new(v))
                .collect::<Result<_>>()?,
        )
    }

    /// Builds from absolute values: odd primes get the sign fixed by
    /// `p mod 4`, `4` becomes `−4`, and `8` takes the sign that makes the
    /// number of negative parts even. With `all_negative` every part must
    /// come out negative.
    pub fn from_magnitudes(magnitudes: &[u64], all_negative: bool) -> Result<Self> {
        let mut values = Vec::with_capacity(magnitudes.len());
        let mut eight = None;
        for (i, &m) in magnitudes.iter().enumerate() {
            match m {
                4 => values.push(-4),
                8 => {
                    if eight.replace(i).is_some() {
                        return Err(Error::domain("8 listed twice"));
                    }
                    values.push(8);
                }
                p => values.push(PrimeDiscriminant::from_odd_prime(p)?.value()),
            }
        }
        if let Some(i) = eight {
            let negatives = values.iter().filter(|&&v| v < 0).count();
            if all_negative || negatives % 2 == 1 {
                values[i] = -8;
            }
        }
        if all_negative {
            if let Some(v) = values.iter().find(|&&v| v > 0) {
                return Err(Error::domain(format!(
                    "{v} is a positive prime discriminant; not every part can be negative"
                )));
            }
        }
        Self::from_values(&values)
    }

    fn checked_value(&self) -> Result<i64> {
        self.parts.iter().try_fold(1i64, |acc, p| {
            acc.checked_mul(p.value())
                .ok_or_else(|| Error::resource("discriminant exceeds 64 bits"))
        })
    }

    pub fn parts(&self) -> &[PrimeDiscriminant] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn value(&self) -> i64 {
        self.checked_value().expect("validated at construction")
    }

    pub fn negative_count(&self) -> usize {
        self.parts.iter().filter(|p| p.is_negative()).count()
    }

    /// Product of the parts selected by `mask` (bit `i` selects part `i`).
    pub fn sub_product(&self, mask: u32) -> i64 {
        self.parts
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, p)| p.value())
            .product()
    }

    /// The sub-factorization selected by `mask`.
    pub fn select(&self, mask: u32) -> Result<Self> {
        Self::new(
            self.parts
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &p)| p)
                .collect(),
        )
    }

    /// Same parts reordered so that `result[i] = self[perm[i]]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        FactoredDiscriminant {
            parts: perm.iter().map(|&i| self.parts[i]).collect(),
        }
    }

    /// Checks the shape required for the fields studied here: four parts,
    /// exactly two or four of them negative.
    pub fn check_family(&self) -> Result<()> {
        if self.parts.len() != 4 {
            return Err(Error::out_of_family(format!(
                "d = {} has {} prime discriminant factors; exactly four are required",
                self.value(),
                self.parts.len()
            )));
        }
        let neg = self.negative_count();
        if neg != 2 && neg != 4 {
            return Err(Error::out_of_family(format!(
                "d = {} has {neg} negative prime discriminants; two or four are required",
                self.value()
            )));
        }
        Ok(())
    }
}

impl fmt::Display for FactoredDiscriminant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|p| format!("({p})")).collect();
        write!(f, "{}", parts.join("·"))
    }
}

/// Splits a fundamental discriminant into prime discriminants.
///
/// Parts are ordered positives first, then negatives, each by increasing
/// prime, with a `−4` part (if any) last.
pub fn factor_prime_discriminants(d: i64) -> Result<FactoredDiscriminant> {
    check_fundamental(d)?;
    let mut parts = Vec::new();
    let mut odd_product: i64 = 1;
    for (p, _) in factor(d.unsigned_abs()) {
        if p != 2 {
            let pd = PrimeDiscriminant::from_odd_prime(p)?;
            odd_product *= pd.value();
            parts.push(pd);
        }
    }
    if d % 2 == 0 {
        let two_part = d / odd_product;
        parts.push(PrimeDiscriminant::new(two_part).map_err(|_| Error::NotFundamental {
            value: d,
            reason: format!("2-adic cofactor {two_part} is not −4, 8 or −8"),
        })?);
    } else if odd_product != d {
        return Err(Error::NotFundamental {
            value: d,
            reason: "sign does not match the product of prime discriminants".into(),
        });
    }
    parts.sort_by_key(|p| (p.is_negative(), p.value() == -4, p.prime()));
    FactoredDiscriminant::new(parts)
}

/// Invariant factors `d_1 | d_2 | …` (ascending, trivial factors dropped)
/// of a finite abelian group, given how many elements have each order.
pub fn invariants_from_order_counts(counts: &BTreeMap<u64, u64>) -> Vec<u64> {
    let total: u64 = counts.values().sum();
    let mut per_prime: Vec<Vec<u64>> = Vec::new();
    for (p, _) in factor(total.max(1)) {
        // cum[k] = #{x : x^(p^k) = 1}
        let mut cum = vec![1u64];
        let mut k = 1;
        loop {
            let pk = p.pow(k);
            let c: u64 = counts.iter().filter(|(&o, _)| pk % o == 0).map(|(_, &n)| n).sum();
            cum.push(c);
            if c == *cum.iter().rev().nth(1).unwrap() && k > 1 || pk > total {
                break;
            }
            k += 1;
        }
        let log = |n: u64| -> u32 {
            let mut e = 0;
            let mut m = n;
            while m > 1 {
                m /= p;
                e += 1;
            }
            e
        };
        // at_least[k] = number of cyclic factors of order ≥ p^k
        let at_least: Vec<u32> = (1..cum.len()).map(|k| log(cum[k]) - log(cum[k - 1])).collect();
        let mut powers = Vec::new();
        for (k, &n) in at_least.iter().enumerate() {
            let next = at_least.get(k + 1).copied().unwrap_or(0);
            for _ in 0..n - next {
                powers.push(p.pow(k as u32 + 1));
            }
        }
        powers.sort_unstable_by(|a, b| b.cmp(a));
        per_prime.push(powers);
    }
    let len = per_prime.iter().map(Vec::len).max().unwrap_or(0);
    let mut out: Vec<u64> = (0..len)
        .map(|i| per_prime.iter().filter_map(|v| v.get(i)).product())
        .collect();
    out.reverse();
    out
}
