//! `x/n` on the chambers of `ℱ_n` is the random-to-top shuffle: pick a
//! card uniformly and move it to the top.

use serde::Serialize;

use super::operator::{x_operator, Space};
use super::{check_guard, word_spectrum};
use crate::error::{Error, Result};
use crate::exactalg::{kernel_basis, Rat, SparseOperator};
use crate::lrb::WordMonoid;
use crate::qnums::{binomial, derangement_number};

/// Largest `n` for which the stationary vector is found by solving
/// `(P − I)v = 0` exactly; above it, uniqueness follows from the
/// multiplicity of the eigenvalue 1.
const EXACT_SOLVE_GUARD: usize = 5;

/// The transition matrix `x/n` on the `n!` orderings.
pub fn random_to_top_matrix(n: usize) -> Result<SparseOperator> {
    if n == 0 {
        return Err(Error::InvalidArgument("random-to-top needs n ≥ 1".into()));
    }
    check_guard(n, None, Space::Chamber)?;
    let (_, op) = x_operator(&WordMonoid::new(n), Space::Chamber)?;
    Ok(op.to_sparse().scale(&Rat::new(1, n as i64)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RttEigenvalue {
    pub eigenvalue: Rat,
    pub multiplicity: i128,
    pub predicted: i128,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RttReport {
    pub n: usize,
    pub dim: usize,
    pub column_stochastic: bool,
    pub stationary_uniform: bool,
    pub eigenvalues: Vec<RttEigenvalue>,
    pub all_pass: bool,
}

pub fn random_to_top(n: usize) -> Result<RttReport> {
    let p = random_to_top_matrix(n)?;
    let dim = p.dim();
    let column_stochastic = (0..dim).all(|k| {
        let col = p.column(k);
        col.iter().all(|(_, v)| !v.is_negative()) && col.iter().map(|(_, v)| v).sum::<Rat>().is_one()
    });
    let uniform = vec![Rat::one(); dim];
    let fixed = p.apply(&uniform) == uniform;
    let spectrum = word_spectrum(n, Space::Chamber, false)?;
    let stationary_uniform = fixed
        && spectrum.dims[n] == 1
        && (n > EXACT_SOLVE_GUARD || {
            let kernel = kernel_basis(&p.sub(&SparseOperator::identity(dim))?);
            kernel.len() == 1 && kernel[0].iter().all(|v| v == &kernel[0][0])
        });
    let eigenvalues: Vec<RttEigenvalue> = spectrum
        .dims
        .iter()
        .enumerate()
        .map(|(j, &multiplicity)| {
            let predicted = binomial(n, j) * derangement_number(n - j);
            RttEigenvalue {
                eigenvalue: Rat::new(j as i64, n as i64),
                multiplicity,
                predicted,
                pass: multiplicity == predicted,
            }
        })
        .collect();
    let all_pass = column_stochastic && stationary_uniform && eigenvalues.iter().all(|e| e.pass);
    Ok(RttReport { n, dim, column_stochastic, stationary_uniform, eigenvalues, all_pass })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lrb::{InjWord, Monoid};

    #[test]
    fn quarter_entries_for_four_cards() {
        let p = random_to_top_matrix(4).unwrap();
        let chambers = WordMonoid::new(4).stratum(4);
        let k = chambers.iter().position(|w| w == &InjWord::new(vec![3, 1, 4, 2]).unwrap()).unwrap();
        let col = p.column(k);
        assert_eq!(col.len(), 4);
        assert!(col.iter().all(|(_, v)| v == &Rat::new(1, 4)));
    }

    #[test]
    fn spectra() {
        for n in 1..=5 {
            let r = random_to_top(n).unwrap();
            assert!(r.all_pass, "{r:?}");
            assert_eq!(r.eigenvalues[n].multiplicity, 1);
        }
        let r = random_to_top(3).unwrap();
        assert_eq!(r.eigenvalues[2].eigenvalue, Rat::new(2, 3));
        assert_eq!(r.eigenvalues[2].multiplicity, 0);
        assert!(random_to_top(0).is_err());
        assert!(random_to_top(8).is_err());
    }
}
