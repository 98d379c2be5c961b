//! Isomorphism search between small realized groups and concrete checks
//! of commutator identities.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fpgroups::realization::{FiniteGroup, Subgroup};

/// Largest order accepted by [`is_isomorphic`].
pub const ISO_ORDER_BOUND: usize = 64;

/// A witness `φ: G → H`: images of the generators of `G` and the full
/// element map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Isomorphism {
    pub generator_images: Vec<usize>,
    pub map: Vec<usize>,
}

/// Decides `G ≅ H` for groups of order at most [`ISO_ORDER_BOUND`].
pub fn is_isomorphic(g: &FiniteGroup, h: &FiniteGroup, seed: u64) -> Result<Option<Isomorphism>> {
    is_isomorphic_bounded(g, h, seed, ISO_ORDER_BOUND)
}

/// [`is_isomorphic`] with an explicit order bound.
pub fn is_isomorphic_bounded(g: &FiniteGroup, h: &FiniteGroup, seed: u64, bound: usize) -> Result<Option<Isomorphism>> {
    if g.order() != h.order() {
        return Ok(None);
    }
    if g.order() > bound {
        return Err(Error::resource(format!(
            "isomorphism test limited to order {bound}, got {}",
            g.order()
        )));
    }
    if g.fingerprint() != h.fingerprint() {
        return Ok(None);
    }
    let sg = Signatures::new(g);
    let sh = Signatures::new(h);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let gens = g.generators().to_vec();
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&x| {
            let mut c: Vec<usize> = (0..h.order()).filter(|&y| sh.of(y) == sg.of(x)).collect();
            c.shuffle(&mut rng);
            c
        })
        .collect();
    let mut chosen = Vec::with_capacity(gens.len());
    Ok(search(g, h, &gens, &candidates, &mut chosen))
}

fn search(
    g: &FiniteGroup,
    h: &FiniteGroup,
    gens: &[usize],
    candidates: &[Vec<usize>],
    chosen: &mut Vec<usize>,
) -> Option<Isomorphism> {
    let m = chosen.len();
    if m == gens.len() {
        return extend(g, h, gens, chosen);
    }
    for &y in &candidates[m] {
        let compatible = (0..m).all(|i| {
            let (xi, yi) = (gens[i], chosen[i]);
            g.element_order(g.mul(xi, gens[m])) == h.element_order(h.mul(yi, y))
                && g.element_order(g.comm(xi, gens[m])) == h.element_order(h.comm(yi, y))
                && (gens[m] == xi) == (y == yi)
        });
        if !compatible {
            continue;
        }
        chosen.push(y);
        if let Some(iso) = search(g, h, gens, candidates, chosen) {
            return Some(iso);
        }
        chosen.pop();
    }
    None
}

/// Extends generator images along the element words of `G` and checks
/// that the result is a bijective homomorphism.
fn extend(g: &FiniteGroup, h: &FiniteGroup, gens: &[usize], images: &[usize]) -> Option<Isomorphism> {
    let n = g.order();
    // Images of the presentation generators, which the element words use.
    let mut gen_images = vec![0usize; g.generator_names().len()];
    for (k, &x) in g.generators().iter().enumerate() {
        let slot = gens.iter().position(|&y| y == x)?;
        gen_images[k] = images[slot];
    }
    let map: Vec<usize> = (0..n).map(|x| h.eval_with(g.word_of(x), &gen_images)).collect();
    let mut hit = vec![false; n];
    for &y in &map {
        if hit[y] {
            return None;
        }
        hit[y] = true;
    }
    for x in 0..n {
        for &s in g.generators() {
            if map[g.mul(x, s)] != h.mul(map[x], map[s]) {
                return None;
            }
        }
    }
    Some(Isomorphism {
        generator_images: images.to_vec(),
        map,
    })
}

/// Per-element invariants preserved by isomorphisms.
struct Signatures {
    sig: Vec<(u64, usize, bool, bool)>,
}

impl Signatures {
    fn new(g: &FiniteGroup) -> Self {
        let derived = g.derived_subgroup();
        let center = g.center();
        let sig = (0..g.order())
            .map(|x| {
                (
                    g.element_order(x),
                    g.centralizer_order(x),
                    derived.contains(x),
                    center.contains(x),
                )
            })
            .collect();
        Signatures { sig }
    }

    fn of(&self, x: usize) -> (u64, usize, bool, bool) {
        self.sig[x]
    }
}

/// Outcome of one identity check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub passed: bool,
    pub cases: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CommutatorReport {
    pub checks: Vec<IdentityCheck>,
}

impl CommutatorReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Triples checked exhaustively up to this order, sampled beyond it.
const EXHAUSTIVE_ORDER: usize = 64;
const SAMPLED_TRIPLES: usize = 20_000;

/// Checks the standard commutator identities on every triple (or a seeded
/// sample for larger groups) and the two congruences for the first three
/// generators.
pub fn verify_commutator_identities(g: &FiniteGroup, seed: u64) -> CommutatorReport {
    let n = g.order();
    let triples: Vec<(usize, usize, usize)> = if n <= EXHAUSTIVE_ORDER {
        (0..n)
            .flat_map(|x| (0..n).flat_map(move |y| (0..n).map(move |z| (x, y, z))))
            .collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..SAMPLED_TRIPLES)
            .map(|_| (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n)))
            .collect()
    };
    let c3 = |x, y, z| g.comm(g.comm(x, y), z);
    let derived = g.derived_subgroup();
    let second_derived = g.commutator_subgroup(&derived, &derived);
    let mut checks = Vec::new();
    let mut check = |name: &str, f: &dyn Fn(usize, usize, usize) -> bool| {
        let passed = triples.iter().all(|&(x, y, z)| f(x, y, z));
        checks.push(IdentityCheck {
            name: name.into(),
            passed,
            cases: triples.len(),
        });
    };
    check("[xy,z] = [x,z][x,z,y][y,z]", &|x, y, z| {
        g.comm(g.mul(x, y), z) == g.mul(g.mul(g.comm(x, z), c3(x, z, y)), g.comm(y, z))
    });
    check("[x,yz] = [x,z][x,y][x,y,z]", &|x, y, z| {
        g.comm(x, g.mul(y, z)) == g.mul(g.mul(g.comm(x, z), g.comm(x, y)), c3(x, y, z))
    });
    check("[x,y^-1]^y = [x^-1,y]^x = [y,x] = [x,y]^-1", &|x, y, _| {
        let a = g.conj(g.comm(x, g.inv(y)), y);
        let b = g.conj(g.comm(g.inv(x), y), x);
        a == b && b == g.comm(y, x) && g.comm(y, x) == g.inv(g.comm(x, y))
    });
    check("Hall-Witt [x,y^-1,z]^y [y,z^-1,x]^z [z,x^-1,y]^x = 1", &|x, y, z| {
        let a = g.conj(c3(x, g.inv(y), z), y);
        let b = g.conj(c3(y, g.inv(z), x), z);
        let c = g.conj(c3(z, g.inv(x), y), x);
        g.mul(g.mul(a, b), c) == 0
    });
    check("[x,y,z][y,z,x][z,x,y] in G''", &|x, y, z| {
        second_derived.contains(g.mul(g.mul(c3(x, y, z), c3(y, z, x)), c3(z, x, y)))
    });
    let gens = g.generators();
    if gens.len() >= 3 {
        let a = &gens[..3];
        let ok = (0..3).all(|i| {
            (0..3).all(|j| {
                (0..3).all(|l| {
                    let cji = c3(a[j], a[i], a[l]);
                    let cij = c3(a[i], a[j], a[l]);
                    second_derived.contains(g.mul(cji, cij))
                })
            })
        });
        checks.push(IdentityCheck {
            name: "c_jil = c_ijl^-1 mod G''".into(),
            passed: ok,
            cases: 27,
        });
        let lcs = g.lower_central_series();
        let g4: Subgroup = lcs.get(3).cloned().unwrap_or_else(|| g.trivial());
        let c123 = c3(a[0], a[1], a[2]);
        let c132 = c3(a[0], a[2], a[1]);
        checks.push(IdentityCheck {
            name: "c_123 = c_132 mod G_4".into(),
            passed: g4.contains(g.mul(c123, g.inv(c132))),
            cases: 1,
        });
    }
    CommutatorReport { checks }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpgroups::enumerate::DEFAULT_COSET_BUDGET;
    use crate::fpgroups::presentation::Presentation;
    use crate::fpgroups::realization::realize;

    fn grp(s: &str) -> FiniteGroup {
        realize(&Presentation::parse(s).unwrap(), DEFAULT_COSET_BUDGET).unwrap()
    }

    #[test]
    fn same_group_two_presentations() {
        let a = grp("<a,b | a^4, b^2, (ab)^2>");
        let b = grp("<x,y | x^2, y^2, (xy)^4>");
        let iso = is_isomorphic(&a, &b, 7).unwrap().expect("both are D8");
        assert_eq!(iso.map[0], 0);
        let q = grp("<a,b | a^4, a^2 = b^2, b^-1 a b = a^-1>");
        assert!(is_isomorphic(&a, &q, 7).unwrap().is_none());
    }

    #[test]
    fn identities_hold() {
        let g = grp(
            "<a,b,c | a^2, b^2, c^2, [a,b,a], [a,b,b], [a,b,c], [a,c,a], [a,c,b], [a,c,c], [b,c,a], [b,c,b], [b,c,c]>",
        );
        assert_eq!(g.order(), 64);
        assert!(verify_commutator_identities(&g, 1).all_passed());
    }
}
