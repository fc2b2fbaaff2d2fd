//! Symmetric functions in the Schur basis, quasisymmetric expansions,
//! tableaux and characters of `S_n`, and the derangement symmetric
//! functions `𝔡_n`.

mod characters;
mod partition;
mod qsym;
mod schur;
mod tableau;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use characters::{classfn_to_schur, irreducible_character, mn_character, ClassFunction, CLASSFN_GUARD};
pub use partition::{partitions, Partition};
pub use qsym::{gessel_reutenauer, schur_to_fundamental, schur_vector_to_fundamental, QSymVector, PERMUTATION_GUARD};
pub use schur::{e_in_schur, h1_power, h_in_schur, horizontal_strips, pieri_h, SchurVector};
pub use tableau::{all_syt, descent_set_tab, rsk, syt_of_shape, Syt};

use crate::error::{Error, Result};
use crate::perm::{all_permutations, descent_set, first_non_descent, inverse, is_derangement, is_desarrangement};

/// The seven equivalent characterizations of `𝔡_n`. `A`–`D` produce Schur
/// expansions, `D`–`G` quasisymmetric ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum DsfDefinition {
    /// `𝔡_n = h_1 𝔡_{n-1} + (-1)^n e_n`.
    A,
    /// `𝔡_n = Σ_k (-1)^k e_k h_1^{n-k}`.
    B,
    /// `h_1^n = Σ_j 𝔡_j h_{n-j}`, solved for `𝔡_n`.
    C,
    /// Sum of `s_{shape(Q)}` over desarrangement tableaux `Q`.
    D,
    /// Sum of `L_{Des(w^{-1})}` over desarrangements `w`.
    E,
    /// Sum of `L_{Des(w)}` over derangements `w`.
    F,
    /// Sum of `𝔏_λ` over cycle types `λ` with no part equal to 1.
    G,
}

impl DsfDefinition {
    pub const ALL: [DsfDefinition; 7] = [Self::A, Self::B, Self::C, Self::D, Self::E, Self::F, Self::G];
    pub const SCHUR: [DsfDefinition; 4] = [Self::A, Self::B, Self::C, Self::D];

    pub fn has_schur_form(self) -> bool {
        matches!(self, Self::A | Self::B | Self::C | Self::D)
    }
}

impl fmt::Display for DsfDefinition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for DsfDefinition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Self::A),
            "B" => Ok(Self::B),
            "C" => Ok(Self::C),
            "D" => Ok(Self::D),
            "E" => Ok(Self::E),
            "F" => Ok(Self::F),
            "G" => Ok(Self::G),
            _ => Err(Error::UnknownDefinition(s.to_string())),
        }
    }
}

/// `𝔡_n` in the Schur basis by definition `A`, `B`, `C` or `D`.
/// `𝔡_0 = 1`.
pub fn derangement_sf(n: usize, def: DsfDefinition) -> Result<SchurVector> {
    match def {
        DsfDefinition::A => Ok(by_recursion(n)),
        DsfDefinition::B => Ok(by_alternating_sum(n)),
        DsfDefinition::C => Ok(by_h_expansion(n).pop().expect("n+1 entries")),
        DsfDefinition::D => Ok(by_tableaux(n)),
        other => Err(Error::UnknownDefinition(format!("{other} has no Schur form; use derangement_qsym"))),
    }
}

fn signed_e(k: usize) -> SchurVector {
    e_in_schur(k).scale(if k % 2 == 0 { 1 } else { -1 })
}

fn by_recursion(n: usize) -> SchurVector {
    (1..=n).fold(SchurVector::one(), |d, k| pieri_h(&d, 1).add(&signed_e(k)).expect("same grade"))
}

fn by_alternating_sum(n: usize) -> SchurVector {
    (0..=n).fold(SchurVector::zero(n), |acc, k| {
        let term = (k..n).fold(signed_e(k), |f, _| pieri_h(&f, 1));
        acc.add(&term).expect("same grade")
    })
}

/// `[𝔡_0, …, 𝔡_n]` from `𝔡_m = h_1^m − Σ_{j<m} 𝔡_j h_{m-j}`.
fn by_h_expansion(n: usize) -> Vec<SchurVector> {
    let mut ds: Vec<SchurVector> = Vec::with_capacity(n + 1);
    for m in 0..=n {
        let lower = ds
            .iter()
            .enumerate()
            .fold(SchurVector::zero(m), |acc, (j, d)| acc.add(&pieri_h(d, m - j)).expect("same grade"));
        ds.push(h1_power(m).sub(&lower).expect("same grade"));
    }
    ds
}

fn by_tableaux(n: usize) -> SchurVector {
    desarrangement_tableaux(n)
        .iter()
        .fold(SchurVector::zero(n), |acc, q| acc.add(&SchurVector::schur(q.shape())).expect("same grade"))
}

/// Standard tableaux of size `n` whose smallest non-descent (with `n`
/// always a non-descent) is even. For `n = 0` the empty tableau counts.
pub fn desarrangement_tableaux(n: usize) -> Vec<Syt> {
    all_syt(n).into_iter().filter(|q| first_non_descent(&q.descent_set(), n).is_none_or(|a| a % 2 == 0)).collect()
}

/// `𝔡_n` as a combination of fundamental quasisymmetric functions.
/// Definitions `A`–`D` go through the Schur expansion; `E`–`G` enumerate
/// permutations and are limited to `n ≤ 8`.
pub fn derangement_qsym(n: usize, def: DsfDefinition) -> Result<QSymVector> {
    if def.has_schur_form() {
        return Ok(schur_vector_to_fundamental(&derangement_sf(n, def)?));
    }
    if n > PERMUTATION_GUARD {
        return Err(Error::GuardExceeded(format!("permutation enumeration limited to n ≤ 8, got {n}")));
    }
    let mut out = QSymVector::zero(n);
    match def {
        DsfDefinition::E => {
            for w in all_permutations(n).into_iter().filter(|w| is_desarrangement(w)) {
                out.add_descent_set(&descent_set(&inverse(&w)), 1)?;
            }
        }
        DsfDefinition::F => {
            for w in all_permutations(n).into_iter().filter(|w| is_derangement(w)) {
                out.add_descent_set(&descent_set(&w), 1)?;
            }
        }
        _ => {
            for lambda in partitions(n).into_iter().filter(|l| l.multiplicity(1) == 0) {
                out = out.add(&gessel_reutenauer(&lambda)?)?;
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qnums::derangement_number;

    fn s(text: &str, grade: usize) -> SchurVector {
        SchurVector::parse(text, grade).unwrap()
    }

    #[test]
    fn table_values() {
        assert_eq!(derangement_sf(0, DsfDefinition::D).unwrap(), SchurVector::one());
        assert!(derangement_sf(1, DsfDefinition::A).unwrap().is_zero());
        assert_eq!(derangement_sf(2, DsfDefinition::C).unwrap(), s("s(1,1)", 2));
        assert_eq!(derangement_sf(3, DsfDefinition::B).unwrap(), s("s(2,1)", 3));
        assert_eq!(derangement_sf(4, DsfDefinition::D).unwrap(), s("s(1,1,1,1)+s(2,1,1)+s(2,2)+s(3,1)", 4));
    }

    #[test]
    fn schur_definitions_agree() {
        for n in 0..=7 {
            let d = derangement_sf(n, DsfDefinition::A).unwrap();
            for def in DsfDefinition::SCHUR {
                assert_eq!(derangement_sf(n, def).unwrap(), d, "n={n} def={def}");
            }
            assert_eq!(d.dimension(), derangement_number(n) as i128, "n={n}");
        }
    }

    #[test]
    fn quasisymmetric_definitions_agree() {
        for n in 0..=7 {
            let d = derangement_qsym(n, DsfDefinition::D).unwrap();
            for def in DsfDefinition::ALL {
                assert_eq!(derangement_qsym(n, def).unwrap(), d, "n={n} def={def}");
            }
        }
        assert_eq!(derangement_qsym(2, DsfDefinition::F).unwrap().to_string(), "L{1}");
        assert_eq!(derangement_qsym(3, DsfDefinition::F).unwrap().to_string(), "L{1}+L{2}");
        assert!(derangement_qsym(1, DsfDefinition::E).unwrap().is_zero());
        assert!(matches!(derangement_qsym(9, DsfDefinition::F), Err(Error::GuardExceeded(_))));
    }

    #[test]
    fn h_identity() {
        let ds = by_h_expansion(7);
        for n in 0..=7 {
            let total = (0..=n).fold(SchurVector::zero(n), |acc, j| acc.add(&pieri_h(&ds[j], n - j)).unwrap());
            assert_eq!(total, h1_power(n));
        }
    }

    #[test]
    fn desarrangement_tableaux_table() {
        assert!(desarrangement_tableaux(1).is_empty());
        assert_eq!(desarrangement_tableaux(0), vec![Syt::empty()]);
        let two: Vec<String> = desarrangement_tableaux(2).iter().map(ToString::to_string).collect();
        assert_eq!(two, ["1/2"]);
        let shapes: Vec<String> = desarrangement_tableaux(4).iter().map(|q| q.shape().to_string()).collect();
        assert_eq!(shapes, ["(3,1)", "(2,2)", "(2,1,1)", "(1,1,1,1)"]);
    }

    #[test]
    fn definition_tags() {
        assert_eq!("c".parse::<DsfDefinition>().unwrap(), DsfDefinition::C);
        assert!(matches!("H".parse::<DsfDefinition>(), Err(Error::UnknownDefinition(_))));
        assert!(matches!(derangement_sf(3, DsfDefinition::E), Err(Error::UnknownDefinition(_))));
    }
}
