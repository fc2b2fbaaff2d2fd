//! The symmetrizations `Ψ_U` and `Φ_U`, which turn null vectors of `x` on
//! the chambers of a smaller monoid into eigenvectors on the chambers of
//! `ℱ_n` (or `ℱ_n^{(q)}`).

use rayon::prelude::*;
use serde::Serialize;

use super::operator::{eigenvalue, x_operator, Space};
use super::{check_guard, monoid_spectrum, predicted_dimension};
use crate::error::{Error, Result};
use crate::exactalg::{kernel_basis, rank_of_rows, Rat, RatVec};
use crate::fqlinalg::{enumerate_subspaces, FlagChain, Subspace};
use crate::lrb::{AlgebraElement, FlagMonoid, InjWord, Monoid, MonoidKind, WordMonoid};
use crate::perm::all_permutations;

/// Letters of `u` in every order.
fn orderings(u: &[u8]) -> Vec<Vec<u8>> {
    let mut sorted = u.to_vec();
    sorted.sort_unstable();
    all_permutations(u.len()).into_iter().map(|w| w.iter().map(|&i| sorted[i - 1]).collect()).collect()
}

fn check_disjoint(n: usize, u: &[u8], a: &InjWord) -> Result<()> {
    WordMonoid::on(n, u)?;
    if let Some(&c) = a.letters().iter().find(|&&c| c == 0 || c as usize > n) {
        return Err(Error::InvalidArgument(format!("letter {c} of {a} is outside 1..={n}")));
    }
    if let Some(&c) = u.iter().find(|&&c| a.contains(c)) {
        return Err(Error::Overlap(format!("{c} lies in U and in {a}")));
    }
    Ok(())
}

/// `Ψ_U(a) = Σ_b (b, a)` over the orderings `b` of `U`.
pub fn psi_word(n: usize, u: &[u8], a: &InjWord) -> Result<AlgebraElement<InjWord>> {
    check_disjoint(n, u, a)?;
    Ok(AlgebraElement::sum_of(orderings(u).into_iter().map(|mut b| {
        b.extend_from_slice(a.letters());
        InjWord::new(b).expect("disjoint letters")
    })))
}

/// `Φ_U(a) = Σ_b (a_1, b, a_2, …)` over the orderings `b` of `U`. There is
/// no first letter to keep in front of the empty word, so `Φ_U(()) = 0`.
pub fn phi_word(n: usize, u: &[u8], a: &InjWord) -> Result<AlgebraElement<InjWord>> {
    check_disjoint(n, u, a)?;
    let Some((&first, rest)) = a.letters().split_first() else {
        return Ok(AlgebraElement::zero());
    };
    Ok(AlgebraElement::sum_of(orderings(u).into_iter().map(|b| {
        let mut w = vec![first];
        w.extend(b);
        w.extend_from_slice(rest);
        InjWord::new(w).expect("disjoint letters")
    })))
}

/// The subspace of `host` whose coordinates in the RREF basis of `host`
/// are the vectors of `coords`.
fn embed(coords: &Subspace, host: &Subspace) -> Result<Subspace> {
    let p = host.modulus();
    let rows: Vec<Vec<u32>> = coords
        .rows()
        .iter()
        .map(|r| {
            (0..host.ambient_dim())
                .map(|col| {
                    r.iter().zip(host.rows()).fold(0u64, |acc, (&c, h)| (acc + c as u64 * h[col] as u64) % p as u64)
                        as u32
                })
                .collect()
        })
        .collect();
    Subspace::from_rows(host.ambient_dim(), p, &rows)
}

/// Every complete flag `B_1 ⊂ … ⊂ B_j = U` of `U`.
fn complete_flags_of(u: &Subspace) -> Result<Vec<Vec<Subspace>>> {
    let small = FlagMonoid::new(u.dim(), u.modulus())?;
    small.stratum(u.dim()).iter().map(|f| f.members().iter().map(|s| embed(s, u)).collect()).collect()
}

fn check_above(u: &Subspace, a: &FlagChain) -> Result<()> {
    FlagChain::above(u, a.members().to_vec()).map(|_| ())
}

/// `Ψ^{(q)}_U(A) = Σ_B (B_1, …, B_{j-1}, U, A_1, A_2, …)` over complete
/// flags `B` of `U`, where `A` is a chain of subspaces containing `U`
/// (a flag of `V/U`).
pub fn psi_flag(u: &Subspace, a: &FlagChain) -> Result<AlgebraElement<FlagChain>> {
    check_above(u, a)?;
    let (n, p) = (u.ambient_dim(), u.modulus());
    complete_flags_of(u)?
        .into_iter()
        .map(|mut chain| {
            chain.extend_from_slice(a.members());
            FlagChain::new(n, p, chain)
        })
        .collect::<Result<Vec<_>>>()
        .map(AlgebraElement::sum_of)
}

/// `Φ^{(q)}_U(A) = Σ_L Σ_B (L, L+B_1, …, L+B_{j-1}, A_1, A_2, …)` over
/// lines `L ⊆ A_1` not in `U` and complete flags `B` of `U`. Zero when `A`
/// is empty.
pub fn phi_flag(u: &Subspace, a: &FlagChain) -> Result<AlgebraElement<FlagChain>> {
    check_above(u, a)?;
    let Some(a1) = a.members().first() else {
        return Ok(AlgebraElement::zero());
    };
    let (n, p) = (u.ambient_dim(), u.modulus());
    let lines: Vec<Subspace> = enumerate_subspaces(a1.dim(), p, 1, None)?
        .iter()
        .map(|l| embed(l, a1))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|l| !u.contains(l).unwrap_or(true))
        .collect();
    let flags = complete_flags_of(u)?;
    let mut terms = Vec::with_capacity(lines.len() * flags.len());
    for l in &lines {
        for b in &flags {
            let mut chain = vec![l.clone()];
            for bi in &b[..b.len().saturating_sub(1)] {
                chain.push(l.sum(bi)?);
            }
            chain.extend_from_slice(a.members());
            chain.dedup();
            terms.push(FlagChain::new(n, p, chain)?);
        }
    }
    Ok(AlgebraElement::sum_of(terms))
}

/// A monoid whose chambers can be built from a `j`-dimensional piece `U`
/// and a chamber of the complementary monoid.
pub trait Symmetrizable: Monoid + Sized {
    type Part: Clone + Send + Sync;

    /// The `j`-subsets (words) or `j`-dimensional subspaces (flags).
    fn parts(&self, j: usize) -> Result<Vec<Self::Part>>;
    /// `ℱ_{[n]∖U}`, or the flags of `V/U`.
    fn complement(&self, u: &Self::Part) -> Result<Self>;
    fn psi(&self, u: &Self::Part, a: &Self::Elem) -> Result<AlgebraElement<Self::Elem>>;
    fn phi(&self, u: &Self::Part, a: &Self::Elem) -> Result<AlgebraElement<Self::Elem>>;
}

impl Symmetrizable for WordMonoid {
    type Part = Vec<u8>;

    fn parts(&self, j: usize) -> Result<Vec<Vec<u8>>> {
        fn go(alpha: &[u8], j: usize, start: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
            if cur.len() == j {
                out.push(cur.clone());
                return;
            }
            for i in start..alpha.len() {
                cur.push(alpha[i]);
                go(alpha, j, i + 1, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(self.alphabet(), j, 0, &mut Vec::new(), &mut out);
        Ok(out)
    }

    fn complement(&self, u: &Vec<u8>) -> Result<Self> {
        let rest: Vec<u8> = self.alphabet().iter().copied().filter(|c| !u.contains(c)).collect();
        WordMonoid::on(self.ambient(), &rest)
    }

    fn psi(&self, u: &Vec<u8>, a: &InjWord) -> Result<AlgebraElement<InjWord>> {
        psi_word(self.ambient(), u, a)
    }

    fn phi(&self, u: &Vec<u8>, a: &InjWord) -> Result<AlgebraElement<InjWord>> {
        phi_word(self.ambient(), u, a)
    }
}

impl Symmetrizable for FlagMonoid {
    type Part = Subspace;

    fn parts(&self, j: usize) -> Result<Vec<Subspace>> {
        if self.base().dim() != 0 {
            return Err(Error::InvalidArgument("symmetrization needs the full flag monoid".into()));
        }
        enumerate_subspaces(self.ambient(), self.modulus().expect("flags have a modulus"), j, None)
    }

    fn complement(&self, u: &Subspace) -> Result<Self> {
        Ok(FlagMonoid::above(u.clone()))
    }

    fn psi(&self, u: &Subspace, a: &FlagChain) -> Result<AlgebraElement<FlagChain>> {
        psi_flag(u, a)
    }

    fn phi(&self, u: &Subspace, a: &FlagChain) -> Result<AlgebraElement<FlagChain>> {
        phi_flag(u, a)
    }
}

/// Results for one eigenvalue `j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityRow {
    pub j: usize,
    pub eigenvalue: i128,
    /// Number of pairs `(U, a)` for which `x·Ψ_U(a) = λ_j Ψ_U(a) + Φ_U(x_U^c · a)` was checked.
    pub pairs_checked: usize,
    pub identity_failures: usize,
    pub kernel_vectors: usize,
    /// Images `Ψ_U(v)` of null vectors that are not `λ_j`-eigenvectors.
    pub eigenvector_failures: usize,
    /// Rank of all the images `Ψ_U(v)` together.
    pub psi_rank: usize,
    pub eigenspace_dim: i128,
    pub predicted_dim: i128,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OperatorIdentityReport {
    pub monoid: MonoidKind,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<u32>,
    pub rows: Vec<IdentityRow>,
    pub all_pass: bool,
}

/// Largest `n` for the exhaustive identity check on words.
pub const IDENTITY_WORDS_GUARD: usize = 5;
/// Largest `n` for the exhaustive identity check on flags.
pub const IDENTITY_FLAGS_GUARD: usize = 3;

/// Checks the operator identity for every `U` and every chamber `a` of the
/// complement, then that the `Ψ` images of the complement's null vectors
/// are eigenvectors whose span has exactly the eigenspace's dimension.
pub fn verify_operator_identities(n: usize, p: Option<u32>) -> Result<OperatorIdentityReport> {
    let limit = if p.is_some() { IDENTITY_FLAGS_GUARD } else { IDENTITY_WORDS_GUARD };
    if n > limit {
        return Err(Error::GuardExceeded(format!("operator identities are limited to n ≤ {limit}, got {n}")));
    }
    check_guard(n, p, Space::Chamber)?;
    match p {
        None => verify_identities(&WordMonoid::new(n)),
        Some(p) => verify_identities(&FlagMonoid::new(n, p)?),
    }
}

fn extend<E: Ord + Clone>(
    v: &AlgebraElement<E>,
    f: impl Fn(&E) -> Result<AlgebraElement<E>>,
) -> Result<AlgebraElement<E>> {
    v.terms().iter().try_fold(AlgebraElement::zero(), |acc, (e, c)| Ok(acc.add(&f(e)?.scale(c))))
}

struct PartOutcome {
    pairs: usize,
    failures: usize,
    kernel: usize,
    bad_vectors: usize,
    images: Vec<RatVec>,
}

pub fn verify_identities<M: Symmetrizable>(m: &M) -> Result<OperatorIdentityReport> {
    let n = m.rank();
    let (basis, op) = x_operator(m, Space::Chamber)?;
    let big = op.to_sparse();
    let x = AlgebraElement::orbit_sum(m, 1);
    let spectrum = monoid_spectrum(m, Space::Chamber)?;
    let mut rows = Vec::new();
    for j in 0..=n {
        let lambda = eigenvalue(m, j);
        let lambda_rat = Rat::from(lambda);
        let outcomes = m
            .parts(j)?
            .par_iter()
            .map(|u| -> Result<PartOutcome> {
                let small = m.complement(u)?;
                let x_small = AlgebraElement::orbit_sum(&small, 1);
                let (small_basis, small_op) = x_operator(&small, Space::Chamber)?;
                let mut failures = 0;
                for a in small_basis.elems() {
                    let psi = m.psi(u, a)?;
                    let lhs = x.mul(m, &psi);
                    let moved = x_small.mul(&small, &AlgebraElement::basis_elem(a.clone()));
                    let rhs = psi.scale(&lambda_rat).add(&extend(&moved, |e| m.phi(u, e))?);
                    failures += usize::from(lhs != rhs);
                }
                let kernel = kernel_basis(&small_op.to_sparse());
                let mut images = Vec::with_capacity(kernel.len());
                let mut bad_vectors = 0;
                for v in &kernel {
                    let mut image = AlgebraElement::zero();
                    for (i, c) in v.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                        image = image.add(&m.psi(u, small_basis.elem(i))?.scale(c));
                    }
                    let vec = image.to_vector(&basis)?;
                    bad_vectors += usize::from(big.apply_shifted(&lambda_rat, &vec).iter().any(|c| !c.is_zero()));
                    images.push(vec);
                }
                Ok(PartOutcome { pairs: small_basis.len(), failures, kernel: kernel.len(), bad_vectors, images })
            })
            .collect::<Result<Vec<_>>>()?;
        let images: Vec<RatVec> = outcomes.iter().flat_map(|o| o.images.iter().cloned()).collect();
        let psi_rank = rank_of_rows(&images, basis.len());
        let predicted_dim = predicted_dimension(n, j, m.modulus(), Space::Chamber)?;
        let eigenspace_dim = spectrum.dims[j];
        let identity_failures = outcomes.iter().map(|o| o.failures).sum();
        let eigenvector_failures = outcomes.iter().map(|o| o.bad_vectors).sum();
        rows.push(IdentityRow {
            j,
            eigenvalue: lambda,
            pairs_checked: outcomes.iter().map(|o| o.pairs).sum(),
            identity_failures,
            kernel_vectors: outcomes.iter().map(|o| o.kernel).sum(),
            eigenvector_failures,
            psi_rank,
            eigenspace_dim,
            predicted_dim,
            pass: identity_failures == 0
                && eigenvector_failures == 0
                && psi_rank as i128 == eigenspace_dim
                && eigenspace_dim == predicted_dim,
        });
    }
    let all_pass = rows.iter().all(|r| r.pass);
    Ok(OperatorIdentityReport { monoid: m.kind(), n, q: m.modulus(), rows, all_pass })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: &[u8]) -> InjWord {
        InjWord::new(v.to_vec()).unwrap()
    }

    #[test]
    fn word_examples() {
        let psi = psi_word(5, &[4, 5], &w(&[1, 2, 3])).unwrap();
        assert_eq!(psi, AlgebraElement::sum_of([w(&[4, 5, 1, 2, 3]), w(&[5, 4, 1, 2, 3])]));
        let phi = phi_word(5, &[4, 5], &w(&[1, 2, 3])).unwrap();
        assert_eq!(phi, AlgebraElement::sum_of([w(&[1, 4, 5, 2, 3]), w(&[1, 5, 4, 2, 3])]));
        assert_eq!(psi_word(3, &[], &w(&[2, 1, 3])).unwrap(), AlgebraElement::basis_elem(w(&[2, 1, 3])));
        assert!(matches!(psi_word(3, &[1], &w(&[1, 2])), Err(Error::Overlap(_))));
    }

    #[test]
    fn small_identities_by_hand() {
        let m = WordMonoid::new(2);
        let x = AlgebraElement::orbit_sum(&m, 1);
        let psi = psi_word(2, &[2], &w(&[1])).unwrap();
        assert_eq!(x.mul(&m, &psi), AlgebraElement::sum_of([w(&[1, 2]), w(&[2, 1])]));
        let top = WordMonoid::new(3);
        let psi = psi_word(3, &[1, 2, 3], &InjWord::empty()).unwrap();
        assert_eq!(psi.support_len(), 6);
        let x = AlgebraElement::orbit_sum(&top, 1);
        assert_eq!(x.mul(&top, &psi), psi.scale(&Rat::from(3)));
    }

    #[test]
    fn flag_example() {
        let u = Subspace::parse("1,0", 2, 2).unwrap();
        let a = FlagChain::from_chain_unchecked(2, 2, vec![Subspace::full(2, 2)]);
        let psi = psi_flag(&u, &a).unwrap();
        assert_eq!(psi.support_len(), 1);
        let m = FlagMonoid::new(2, 2).unwrap();
        let x = AlgebraElement::orbit_sum(&m, 1);
        let lhs = x.mul(&m, &psi);
        let small = FlagMonoid::above(u.clone());
        let moved = AlgebraElement::orbit_sum(&small, 1).mul(&small, &AlgebraElement::basis_elem(a));
        let rhs = psi.add(&extend(&moved, |e| phi_flag(&u, e)).unwrap());
        assert_eq!(lhs, rhs);
        assert_eq!(lhs.support_len(), 3);
    }

    #[test]
    fn identities_hold() {
        for n in 0..=4 {
            let r = verify_operator_identities(n, None).unwrap();
            assert!(r.all_pass, "{r:?}");
        }
        for n in 1..=2 {
            assert!(verify_operator_identities(n, Some(2)).unwrap().all_pass);
        }
        assert!(verify_operator_identities(6, None).is_err());
    }
}
