use std::fmt;

use crate::fpgroups::{commutator, concat, generator, inverse, power, Presentation, Word};
use crate::towerclassify::SymbolProfile;

/// Koch's presentation of `G⁺/G₃⁺` on `s₁, s₂, s₃`.
///
/// Row `j ≤ 3` reads `∏ᵢ sᵢ^{2νᵢⱼ} = ∏_{i≠j} t_{ij}^{νᵢⱼ}` with `νⱼⱼ = δⱼ`
/// and `t_{ij} = [s_min, s_max]`; row 4 is `s₁^{2μ₁}s₂^{2μ₂}s₃^{2μ₃} = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KochPresentation {
    pub profile: SymbolProfile,
    /// `(left, right)` sides of the four rows.
    pub rows: [(Word, Word); 4],
}

fn s(i: usize) -> Word {
    generator(i)
}

fn t(i: usize, j: usize) -> Word {
    commutator(&s(i.min(j)), &s(i.max(j)))
}

pub fn koch_presentation(profile: &SymbolProfile) -> KochPresentation {
    let nu = |i: usize, j: usize| profile.nu[i][j] as i64;
    let row = |j: usize| -> (Word, Word) {
        let squares: Vec<Word> = (0..3).map(|i| power(&s(i), 2 * nu(i, j))).collect();
        let comms: Vec<Word> = (0..3).filter(|&i| i != j).map(|i| power(&t(i, j), nu(i, j))).collect();
        (
            concat(&squares.iter().map(Vec::as_slice).collect::<Vec<_>>()),
            concat(&comms.iter().map(Vec::as_slice).collect::<Vec<_>>()),
        )
    };
    let mu = profile.mu();
    let last: Vec<Word> = (0..3).map(|i| power(&s(i), 2 * mu[i] as i64)).collect();
    KochPresentation {
        profile: *profile,
        rows: [
            row(0),
            row(1),
            row(2),
            (concat(&last.iter().map(Vec::as_slice).collect::<Vec<_>>()), Vec::new()),
        ],
    }
}

impl KochPresentation {
    /// Relators `left · right⁻¹` of the four rows, trivial ones dropped.
    pub fn relators(&self) -> Vec<Word> {
        self.rows
            .iter()
            .map(|(l, r)| crate::fpgroups::free_reduce(&concat(&[l, &inverse(r)])))
            .filter(|w| !w.is_empty())
            .collect()
    }

    pub fn presentation(&self) -> Presentation {
        Presentation::new(vec!["s1".into(), "s2".into(), "s3".into()], self.relators()).expect("three generators")
    }

    /// The presentation with all commutators of weight three killed.
    pub fn class_two(&self) -> Presentation {
        self.presentation().class_two_quotient()
    }
}

impl fmt::Display for KochPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.presentation();
        let side = |w: &Word| {
            if w.is_empty() {
                "1".to_string()
            } else {
                p.format_word(w)
            }
        };
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|(l, r)| format!("{} = {}", side(l), side(r)))
            .collect();
        write!(f, "{}", rows.join("; "))
    }
}
