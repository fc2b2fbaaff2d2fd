//! Left multiplication by `x` (and `x^{(q)}`) on the monoid algebras: its
//! matrix on the invariants, powers, minimal polynomial, eigenspace
//! dimensions and `S_n` characters, the `Ψ`/`Φ` eigenvector constructions,
//! the length filtration, and the random-to-top chain.
//!
//! Eigenspace data never materializes an eigenbasis. For each basis column
//! the vectors `M^k e_c` are computed exactly in integers, which yields
//! `tr(M^k)` and `tr(P_g M^k)`; the projection onto an eigenspace is a
//! polynomial in `M`, so its trace (the dimension) and its twisted traces
//! (the character) are fixed rational combinations of those numbers. The
//! same pass checks that `Π (M − λ)` kills every column.

mod filtration;
mod operator;
mod rtt;
mod symmetrize;

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

pub use filtration::{filtration_decomposition, FiltrationReport, StratumCheck};
pub use operator::{
    annihilates, combine_traces, eigenvalue, eigenvalues, krylov_traces, lagrange_coefficients, orbit_sums,
    power_expansion, predicted_invariant_matrix, predicted_power_expansion, top_index, x_matrix_on_invariants,
    x_operator, IntOperator, KrylovTraces, Space,
};
pub use rtt::{random_to_top, random_to_top_matrix, RttEigenvalue, RttReport};
pub use symmetrize::{
    phi_flag, phi_word, psi_flag, psi_word, verify_identities, verify_operator_identities, IdentityRow,
    OperatorIdentityReport, Symmetrizable, IDENTITY_FLAGS_GUARD, IDENTITY_WORDS_GUARD,
};

use crate::error::{Error, Result};
use crate::exactalg::{Rat, SparseOperator};
use crate::lrb::{act_perm, Basis, FlagMonoid, InjWord, Monoid, MonoidKind, WordMonoid};
use crate::perm::inverse;
use crate::qnums::{binomial, derangement_number, q_binomial, q_derangement, q_int};
use crate::symfun::{
    classfn_to_schur, derangement_sf, partitions, pieri_h, ClassFunction, DsfDefinition, Partition, SchurVector,
};

/// Largest `n` for the full algebra and the strata of `ℱ_n`.
pub const WORDS_GUARD: usize = 6;
/// Largest `n` for the chamber space of `ℱ_n` (dimension `n!`).
pub const WORDS_CHAMBER_GUARD: usize = 7;
/// Largest `|ℱ_n^{(q)}|` handled. This admits `n ≤ 4` at `p = 2` and
/// `n ≤ 3` at `p = 3`.
pub const FLAG_ALGEBRA_GUARD: u128 = 800;
/// Largest `n` for character and Schur extraction.
pub const CHARACTER_GUARD: usize = 6;

/// `|ℱ_n^{(q)}| = Σ_ℓ [n]_q [n-1]_q ⋯ [n-ℓ+1]_q` at `q = p`.
pub fn flag_algebra_size(n: usize, p: u32) -> u128 {
    let mut total = 1u128;
    let mut term = 1u128;
    for i in 0..n {
        term = term.saturating_mul(q_int(n - i).eval(p as i128) as u128);
        total = total.saturating_add(term);
    }
    total
}

pub fn check_guard(n: usize, p: Option<u32>, space: Space) -> Result<()> {
    match p {
        None => {
            let limit = if space == Space::Chamber { WORDS_CHAMBER_GUARD } else { WORDS_GUARD };
            if n > limit {
                return Err(Error::GuardExceeded(format!("{space} space of ℱ_n is limited to n ≤ {limit}, got {n}")));
            }
        }
        Some(p) => {
            crate::fqlinalg::check_prime(p)?;
            let size = flag_algebra_size(n, p);
            if size > FLAG_ALGEBRA_GUARD {
                return Err(Error::GuardExceeded(format!(
                    "the flag algebra for n={n}, p={p} has {size} elements (limit {FLAG_ALGEBRA_GUARD})"
                )));
            }
        }
    }
    if let Space::Stratum(l) = space {
        if l > n {
            return Err(Error::InvalidArgument(format!("stratum {l} exceeds n = {n}")));
        }
    }
    Ok(())
}

/// Eigenvalues of `x` on one space with their multiplicities, and for
/// words optionally the characters of `S_n` on each eigenspace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spectrum {
    pub dim: usize,
    pub eigenvalues: Vec<i128>,
    pub dims: Vec<i128>,
    /// Empty unless requested.
    pub characters: Vec<ClassFunction>,
}

/// A permutation of cycle type `mu`: each block of consecutive letters
/// `a, …, a+k-1` is the cycle sending `a` to `a+k-1` and every other
/// letter down by one, e.g. `(2,1,3)` for `(2,1)`.
pub fn cycle_type_representative(mu: &Partition) -> Vec<usize> {
    let mut w = Vec::with_capacity(mu.size());
    let mut start = 1;
    for &k in mu.parts() {
        w.push(start + k - 1);
        w.extend(start..start + k - 1);
        start += k;
    }
    w
}

/// `map[c]` = index of `g^{-1}` applied to basis element `c`.
fn twist_map(basis: &Basis<InjWord>, g: &[usize]) -> Result<Vec<usize>> {
    let ginv = inverse(g);
    basis
        .elems()
        .iter()
        .map(|e| {
            let image = act_perm(&ginv, e)?;
            basis.index_of(&image).ok_or_else(|| Error::InvalidArgument(format!("{image} is outside the space")))
        })
        .collect()
}

fn analyze(op: &IntOperator, eigenvalues: &[i128], classes: &[(Partition, Vec<usize>)], n: usize) -> Result<Spectrum> {
    let maps: Vec<Vec<usize>> = classes.iter().map(|(_, m)| m.clone()).collect();
    let traces = krylov_traces(op, eigenvalues, &maps)?;
    let mut dims = Vec::with_capacity(eigenvalues.len());
    let mut characters = Vec::new();
    for j in 0..eigenvalues.len() {
        let coeffs = lagrange_coefficients(eigenvalues, j)?;
        dims.push(combine_traces(&coeffs, &traces.powers)?);
        if !classes.is_empty() {
            let mut values = BTreeMap::new();
            for ((mu, _), row) in classes.iter().zip(&traces.twisted) {
                values.insert(mu.clone(), Rat::from(combine_traces(&coeffs, row)?));
            }
            characters.push(ClassFunction::new(n, values)?);
        }
    }
    Ok(Spectrum { dim: op.dim(), eigenvalues: eigenvalues.to_vec(), dims, characters })
}

/// Spectrum of `x` on a space of `ℱ_n`, with characters when asked.
pub fn word_spectrum(n: usize, space: Space, with_characters: bool) -> Result<Spectrum> {
    check_guard(n, None, space)?;
    if with_characters && n > CHARACTER_GUARD {
        return Err(Error::GuardExceeded(format!("characters are limited to n ≤ {CHARACTER_GUARD}, got {n}")));
    }
    let m = WordMonoid::new(n);
    let (basis, op) = x_operator(&m, space)?;
    let classes = if with_characters {
        partitions(n)
            .into_iter()
            .map(|mu| {
                let map = twist_map(&basis, &cycle_type_representative(&mu))?;
                Ok((mu, map))
            })
            .collect::<Result<Vec<_>>>()?
    } else {
        Vec::new()
    };
    analyze(&op, &eigenvalues(&m, space), &classes, n)
}

/// Spectrum of `x^{(q)}` on a space of `ℱ_n^{(q)}` over `F_p`.
pub fn flag_spectrum(n: usize, p: u32, space: Space) -> Result<Spectrum> {
    check_guard(n, Some(p), space)?;
    let m = FlagMonoid::new(n, p)?;
    let (_, op) = x_operator(&m, space)?;
    analyze(&op, &eigenvalues(&m, space), &[], n)
}

/// Spectrum of `x` on a space of any monoid, without characters.
pub fn monoid_spectrum<M: Monoid>(m: &M, space: Space) -> Result<Spectrum> {
    let (_, op) = x_operator(m, space)?;
    analyze(&op, &eigenvalues(m, space), &[], m.rank())
}

/// Multiplicities of the eigenvalues `0..=r` (or `[0]_p..=[r]_p`).
pub fn eigenspace_dimensions(n: usize, p: Option<u32>, space: Space) -> Result<Vec<i128>> {
    Ok(match p {
        None => word_spectrum(n, space, false)?,
        Some(p) => flag_spectrum(n, p, space)?,
    }
    .dims)
}

pub fn eigenspace_dimension(n: usize, j: usize, p: Option<u32>, space: Space) -> Result<i128> {
    let dims = eigenspace_dimensions(n, p, space)?;
    dims.get(j)
        .copied()
        .ok_or_else(|| Error::InvalidArgument(format!("eigenvalue index {j} exceeds {}", dims.len() - 1)))
}

fn binom_at(n: usize, k: usize, p: Option<u32>) -> i128 {
    match p {
        None => binomial(n, k),
        Some(p) => q_binomial(n, k).eval(p as i128),
    }
}

fn derangements_at(k: usize, p: Option<u32>) -> i128 {
    match p {
        None => derangement_number(k),
        Some(p) => q_derangement(k).eval(p as i128),
    }
}

/// The dimension the theorems predict: `C(n,j) d_{n-j}` on chambers,
/// `Σ_ℓ C(n,ℓ) C(ℓ,j) d_{ℓ-j}` on the full algebra, the `ℓ` term alone on
/// stratum `ℓ`; Gaussian binomials and `d_k(q)` at `q = p` for flags.
pub fn predicted_dimension(n: usize, j: usize, p: Option<u32>, space: Space) -> Result<i128> {
    if let Space::Stratum(l) = space {
        if l > n {
            return Err(Error::InvalidArgument(format!("stratum {l} exceeds n = {n}")));
        }
    }
    if j > n {
        return Err(Error::InvalidArgument(format!("eigenvalue index {j} exceeds n = {n}")));
    }
    let term = |l: usize| binom_at(n, l, p) * binom_at(l, j, p) * derangements_at(l - j, p);
    Ok(match space {
        Space::Chamber => binom_at(n, j, p) * derangements_at(n - j, p),
        Space::Full => (j..=n).map(term).sum(),
        Space::Stratum(l) if j <= l => term(l),
        Space::Stratum(_) => 0,
    })
}

/// `h_{n-ℓ} h_j 𝔡_{ℓ-j}` for one stratum.
fn stratum_schur(n: usize, l: usize, j: usize) -> SchurVector {
    let d = derangement_sf(l - j, DsfDefinition::C).expect("definition C has a Schur form");
    pieri_h(&pieri_h(&d, j), n - l)
}

/// The Schur expansion the theorems predict for the eigenvalue-`j` space:
/// `h_j 𝔡_{n-j}` on chambers and `Σ_ℓ h_{n-ℓ} h_j 𝔡_{ℓ-j}` on the full
/// algebra.
pub fn predicted_schur(n: usize, j: usize, space: Space) -> Result<SchurVector> {
    predicted_dimension(n, j, None, space)?;
    Ok(match space {
        Space::Chamber => stratum_schur(n, n, j),
        Space::Full => (j..=n).fold(SchurVector::zero(n), |acc, l| acc.add(&stratum_schur(n, l, j)).expect("grade n")),
        Space::Stratum(l) if j <= l => stratum_schur(n, l, j),
        Space::Stratum(_) => SchurVector::zero(n),
    })
}

/// The character of `S_n` on the eigenvalue-`j` space, from traces of
/// `P_g π_j`.
pub fn eigenspace_character(n: usize, j: usize, space: Space) -> Result<ClassFunction> {
    let spectrum = word_spectrum(n, space, true)?;
    spectrum
        .characters
        .into_iter()
        .nth(j)
        .ok_or_else(|| Error::InvalidArgument(format!("eigenvalue index {j} out of range")))
}

pub fn eigenspace_schur(n: usize, j: usize, space: Space) -> Result<SchurVector> {
    classfn_to_schur(&eigenspace_character(n, j, space)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootDeletion {
    pub root: i128,
    /// Whether the polynomial with this root removed still kills `x`.
    pub annihilates: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinpolyReport {
    pub monoid: MonoidKind,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<u32>,
    pub polynomial: String,
    pub annihilates: bool,
    pub deletions: Vec<RootDeletion>,
    pub minimal: bool,
    pub pass: bool,
}

impl fmt::Display for MinpolyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = match (self.annihilates, self.minimal) {
            (true, true) => "minimal",
            (true, false) => "annihilates but is not minimal",
            (false, _) => "does not annihilate",
        };
        write!(f, "{}: {verdict} — {}", self.polynomial, if self.pass { "PASS" } else { "FAIL" })
    }
}

/// `X(X-1)(X-3)` style rendering of `Π (X − λ)`.
pub fn render_polynomial(roots: &[i128]) -> String {
    roots
        .iter()
        .map(|&r| match r {
            0 => "X".to_string(),
            r if r < 0 => format!("(X+{})", -r),
            r => format!("(X-{r})"),
        })
        .collect()
}

/// Checks that `Π_j (X − λ_j)` kills `x` on the full algebra and that no
/// factor with one root removed does.
pub fn minpoly_verify(n: usize, p: Option<u32>) -> Result<MinpolyReport> {
    check_guard(n, p, Space::Full)?;
    fn run<M: Monoid>(m: &M) -> Result<MinpolyReport> {
        let (_, op) = x_operator(m, Space::Full)?;
        let roots = eigenvalues(m, Space::Full);
        let full = annihilates(&op, &roots)?;
        let deletions = (0..roots.len())
            .map(|i| {
                let rest: Vec<i128> = roots.iter().enumerate().filter(|(k, _)| *k != i).map(|(_, &r)| r).collect();
                Ok(RootDeletion { root: roots[i], annihilates: annihilates(&op, &rest)? })
            })
            .collect::<Result<Vec<_>>>()?;
        let minimal = deletions.iter().all(|d| !d.annihilates);
        Ok(MinpolyReport {
            monoid: m.kind(),
            n: m.ambient(),
            q: m.modulus(),
            polynomial: render_polynomial(&roots),
            annihilates: full,
            deletions,
            minimal,
            pass: full && minimal,
        })
    }
    match p {
        None => run(&WordMonoid::new(n)),
        Some(p) => run(&FlagMonoid::new(n, p)?),
    }
}

/// Matrix of `x` on a space, as a rational operator.
pub fn build_x_operator(n: usize, p: Option<u32>, space: Space) -> Result<SparseOperator> {
    check_guard(n, p, space)?;
    Ok(match p {
        None => x_operator(&WordMonoid::new(n), space)?.1.to_sparse(),
        Some(p) => x_operator(&FlagMonoid::new(n, p)?, space)?.1.to_sparse(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EigenEntry {
    pub j: usize,
    pub eigenvalue: i128,
    pub dim: i128,
    pub predicted_dim: i128,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub schur: Option<SchurVector>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub predicted_schur: Option<SchurVector>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectralReport {
    pub monoid: MonoidKind,
    pub n: usize,
    pub q: Option<u32>,
    pub space: Space,
    pub total_dim: usize,
    pub eigenvalues: Vec<EigenEntry>,
    /// Every entry passes and the multiplicities add up to `total_dim`.
    pub all_pass: bool,
}

/// Dimensions against predictions, plus Schur images for words when
/// `n ≤ 6`.
pub fn spectral_report(n: usize, p: Option<u32>, space: Space) -> Result<SpectralReport> {
    let with_schur = p.is_none() && n <= CHARACTER_GUARD;
    let spectrum = match p {
        None => word_spectrum(n, space, with_schur)?,
        Some(p) => flag_spectrum(n, p, space)?,
    };
    let mut entries = Vec::new();
    for (j, (&eigenvalue, &dim)) in spectrum.eigenvalues.iter().zip(&spectrum.dims).enumerate() {
        let predicted_dim = predicted_dimension(n, j, p, space)?;
        let (schur, predicted) = if with_schur {
            (Some(classfn_to_schur(&spectrum.characters[j])?), Some(predicted_schur(n, j, space)?))
        } else {
            (None, None)
        };
        let pass = dim == predicted_dim && schur == predicted;
        entries.push(EigenEntry { j, eigenvalue, dim, predicted_dim, schur, predicted_schur: predicted, pass });
    }
    let total: i128 = spectrum.dims.iter().sum();
    let all_pass = entries.iter().all(|e| e.pass) && total == spectrum.dim as i128;
    Ok(SpectralReport {
        monoid: if p.is_some() { MonoidKind::Flags } else { MonoidKind::Words },
        n,
        q: p,
        space,
        total_dim: spectrum.dim,
        eigenvalues: entries,
        all_pass,
    })
}

#[cfg(test)]
mod tests {
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::fqlinalg::random_invertible;
    use crate::lrb::{act_gl, AlgebraElement};
    use crate::perm::{all_permutations, cycle_type};

    fn s(text: &str, n: usize) -> SchurVector {
        SchurVector::parse(text, n).unwrap()
    }

    #[test]
    fn representatives_have_their_cycle_type() {
        assert_eq!(cycle_type_representative(&Partition::new(vec![2, 1]).unwrap()), [2, 1, 3]);
        for n in 1..=6 {
            for mu in partitions(n) {
                assert_eq!(cycle_type(&cycle_type_representative(&mu)), mu.parts());
            }
        }
    }

    #[test]
    fn guards() {
        assert!(check_guard(4, Some(2), Space::Full).is_ok());
        assert!(check_guard(3, Some(3), Space::Full).is_ok());
        assert!(matches!(check_guard(4, Some(3), Space::Full), Err(Error::GuardExceeded(_))));
        assert!(matches!(check_guard(5, Some(2), Space::Chamber), Err(Error::GuardExceeded(_))));
        assert!(check_guard(7, None, Space::Chamber).is_ok());
        assert!(check_guard(7, None, Space::Full).is_err());
        assert_eq!(flag_algebra_size(4, 2), 751);
        assert_eq!(flag_algebra_size(2, 2), 7);
    }

    #[test]
    fn minimal_polynomials() {
        let r = minpoly_verify(3, None).unwrap();
        assert_eq!(r.to_string(), "X(X-1)(X-2)(X-3): minimal — PASS");
        assert_eq!(r.deletions.len(), 4);
        assert_eq!(minpoly_verify(2, Some(2)).unwrap().polynomial, "X(X-1)(X-3)");
        for n in 1..=4 {
            assert!(minpoly_verify(n, None).unwrap().pass);
        }
        assert!(minpoly_verify(3, Some(2)).unwrap().pass);
        assert!(minpoly_verify(2, Some(3)).unwrap().pass);
    }

    #[test]
    fn chamber_dimensions() {
        assert_eq!(eigenspace_dimensions(4, None, Space::Chamber).unwrap(), [9, 8, 6, 0, 1]);
        assert_eq!(eigenspace_dimensions(3, None, Space::Chamber).unwrap(), [2, 3, 0, 1]);
        for n in 1..=5 {
            for j in 0..=n {
                assert_eq!(
                    eigenspace_dimension(n, j, None, Space::Chamber).unwrap(),
                    predicted_dimension(n, j, None, Space::Chamber).unwrap()
                );
            }
        }
    }

    #[test]
    fn flag_dimensions() {
        assert_eq!(eigenspace_dimensions(2, Some(2), Space::Full).unwrap(), [3, 3, 1]);
        assert_eq!(eigenspace_dimension(2, 0, Some(2), Space::Full).unwrap(), 3);
        for (n, p) in [(2, 2), (3, 2), (2, 3), (3, 3)] {
            for space in [Space::Full, Space::Chamber] {
                let r = spectral_report(n, Some(p), space).unwrap();
                assert!(r.all_pass, "{r:?}");
            }
        }
    }

    #[test]
    fn word_characters() {
        let chi = eigenspace_character(2, 1, Space::Full).unwrap();
        assert_eq!(chi.value(&Partition::column(2)), Some(&Rat::from(2)));
        assert_eq!(chi.value(&Partition::row(2)), Some(&Rat::zero()));
        let top = eigenspace_character(3, 3, Space::Full).unwrap();
        assert!(top.values().all(|(_, v)| v.is_one()));
        assert_eq!(eigenspace_schur(2, 0, Space::Full).unwrap(), s("s(2)+s(1,1)", 2));
        assert_eq!(eigenspace_schur(3, 1, Space::Full).unwrap(), s("s(3)+2s(2,1)+s(1,1,1)", 3));
        assert_eq!(eigenspace_schur(3, 0, Space::Chamber).unwrap(), s("s(2,1)", 3));
    }

    #[test]
    fn schur_images_match_predictions() {
        for n in 0..=4 {
            for space in [Space::Full, Space::Chamber] {
                let r = spectral_report(n, None, space).unwrap();
                assert!(r.all_pass, "{r:?}");
            }
            for l in 0..=n {
                assert!(spectral_report(n, None, Space::Stratum(l)).unwrap().all_pass);
            }
        }
    }

    #[test]
    fn report_json_shape() {
        let r = spectral_report(2, None, Space::Full).unwrap();
        let v: serde_json::Value = serde_json::to_value(&r).unwrap();
        assert_eq!(v["monoid"], "words");
        assert_eq!(v["space"], "full");
        assert_eq!(v["eigenvalues"][0]["schur"], "s(2)+s(1,1)");
        assert_eq!(v["eigenvalues"][2]["predicted_dim"], 1);
    }

    #[test]
    fn orbit_sums_are_invariant() {
        for n in 1..=4 {
            let m = WordMonoid::new(n);
            for (l, xl) in orbit_sums(&m).iter().enumerate() {
                for g in all_permutations(n) {
                    assert_eq!(&xl.map_elems(|e| act_perm(&g, e).unwrap()), xl, "n={n} l={l}");
                }
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 1..=3 {
            let m = FlagMonoid::new(n, 2).unwrap();
            let sums: Vec<AlgebraElement<_>> = orbit_sums(&m);
            for _ in 0..5 {
                let g = random_invertible(n, 2, rng.gen()).unwrap();
                for xl in &sums {
                    assert_eq!(&xl.map_elems(|e| act_gl(&g, e).unwrap()), xl);
                }
            }
        }
    }

    #[test]
    fn x_commutes_with_the_group() {
        let m = WordMonoid::new(4);
        let (basis, op) = x_operator(&m, Space::Full).unwrap();
        let x = op.to_sparse();
        for g in all_permutations(4).into_iter().step_by(5) {
            let pg = SparseOperator::from_entries(
                basis.len(),
                basis
                    .elems()
                    .iter()
                    .enumerate()
                    .map(|(k, e)| (basis.index_of(&act_perm(&g, e).unwrap()).unwrap(), k, Rat::one())),
            );
            assert!(pg.commutes_with(&x).unwrap());
        }
        let flags = FlagMonoid::new(3, 2).unwrap();
        let (basis, op) = x_operator(&flags, Space::Full).unwrap();
        let x = op.to_sparse();
        for seed in 0..4 {
            let g = random_invertible(3, 2, seed).unwrap();
            let pg = SparseOperator::from_entries(
                basis.len(),
                basis
                    .elems()
                    .iter()
                    .enumerate()
                    .map(|(k, e)| (basis.index_of(&act_gl(&g, e).unwrap()).unwrap(), k, Rat::one())),
            );
            assert!(pg.commutes_with(&x).unwrap());
        }
    }
}
