use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactalg::{poly_from_roots, Rat, SparseOperator};
use crate::lrb::{AlgebraElement, Basis, Monoid};
use crate::qnums::{q_int, q_stirling, stirling2, StirlingVariant};

/// The subspace of the monoid algebra that `x` acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Space {
    /// The whole algebra.
    Full,
    /// The span of the maximal-length elements.
    Chamber,
    /// The filtration quotient spanned by the length-`ℓ` elements; products
    /// that get longer are zero there.
    Stratum(usize),
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Space::Full => write!(f, "full"),
            Space::Chamber => write!(f, "chamber"),
            Space::Stratum(l) => write!(f, "stratum:{l}"),
        }
    }
}

impl FromStr for Space {
    type Err = Error;

    /// `full`, `chamber`, or `stratum:ℓ`.
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "full" => Ok(Space::Full),
            "chamber" => Ok(Space::Chamber),
            other => other
                .strip_prefix("stratum:")
                .and_then(|l| l.parse().ok())
                .map(Space::Stratum)
                .ok_or_else(|| Error::Parse(format!("unknown space {s:?}; expected full, chamber or stratum:L"))),
        }
    }
}

impl Serialize for Space {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Left multiplication by `x` with integer entries, stored by columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntOperator {
    cols: Vec<Vec<(usize, i64)>>,
}

impl IntOperator {
    pub fn dim(&self) -> usize {
        self.cols.len()
    }

    pub fn column(&self, k: usize) -> &[(usize, i64)] {
        &self.cols[k]
    }

    pub fn get(&self, i: usize, k: usize) -> i64 {
        self.cols[k].iter().find(|(r, _)| *r == i).map_or(0, |(_, v)| *v)
    }

    /// `(M − c) v`, failing on overflow.
    pub fn apply_shifted(&self, c: i128, v: &[i128]) -> Result<Vec<i128>> {
        let overflow = || Error::GuardExceeded("integer overflow in operator power".into());
        let mut out: Vec<i128> = v.iter().map(|x| x.checked_mul(-c).ok_or_else(overflow)).collect::<Result<_>>()?;
        for (k, col) in self.cols.iter().enumerate() {
            if v[k] == 0 {
                continue;
            }
            for &(i, a) in col {
                let t = v[k].checked_mul(a as i128).ok_or_else(overflow)?;
                out[i] = out[i].checked_add(t).ok_or_else(overflow)?;
            }
        }
        Ok(out)
    }

    pub fn to_sparse(&self) -> SparseOperator {
        SparseOperator::from_entries(
            self.dim(),
            self.cols.iter().enumerate().flat_map(|(k, col)| col.iter().map(move |&(i, v)| (i, k, Rat::from(v)))),
        )
    }
}

fn unit(dim: usize, k: usize) -> Vec<i128> {
    let mut v = vec![0; dim];
    v[k] = 1;
    v
}

/// Basis of `space` and the matrix of left multiplication by
/// `x = Σ generators` on it.
pub fn x_operator<M: Monoid>(m: &M, space: Space) -> Result<(Basis<M::Elem>, IntOperator)> {
    let basis = match space {
        Space::Full => Basis::full(m),
        Space::Chamber => Basis::stratum(m, m.rank()),
        Space::Stratum(l) if l <= m.rank() => Basis::stratum(m, l),
        Space::Stratum(l) => {
            return Err(Error::InvalidArgument(format!("stratum {l} exceeds the rank {}", m.rank())));
        }
    };
    let gens = m.generators();
    let cols = basis
        .elems()
        .par_iter()
        .map(|b| {
            let mut counts: HashMap<usize, i64> = HashMap::new();
            for g in &gens {
                let prod = m.mul(g, b);
                if let Space::Stratum(l) = space {
                    if m.length(&prod) != l {
                        continue;
                    }
                }
                let i = basis.index_of(&prod).expect("the space is closed under x");
                *counts.entry(i).or_default() += 1;
            }
            let mut col: Vec<(usize, i64)> = counts.into_iter().collect();
            col.sort_unstable();
            col
        })
        .collect();
    Ok((basis, IntOperator { cols }))
}

/// Top eigenvalue index for `space`: the rank, or `ℓ` on a stratum.
pub fn top_index<M: Monoid>(m: &M, space: Space) -> usize {
    match space {
        Space::Stratum(l) => l,
        _ => m.rank(),
    }
}

/// `j`, or `[j]_p` for flags.
pub fn eigenvalue<M: Monoid>(m: &M, j: usize) -> i128 {
    match m.modulus() {
        None => j as i128,
        Some(p) => q_int(j).eval(p as i128),
    }
}

pub fn eigenvalues<M: Monoid>(m: &M, space: Space) -> Vec<i128> {
    (0..=top_index(m, space)).map(|j| eigenvalue(m, j)).collect()
}

/// `x_0, …, x_r`.
pub fn orbit_sums<M: Monoid>(m: &M) -> Vec<AlgebraElement<M::Elem>> {
    (0..=m.rank()).map(|l| AlgebraElement::orbit_sum(m, l)).collect()
}

/// Matrix of `x` on the span of the orbit sums, computed by multiplying
/// `x · x_ℓ` out in the algebra and reading off orbit coefficients.
pub fn x_matrix_on_invariants<M: Monoid>(m: &M) -> Result<SparseOperator> {
    let sums = orbit_sums(m);
    let sizes: Vec<usize> = sums.iter().map(AlgebraElement::support_len).collect();
    let x = if m.rank() == 0 { AlgebraElement::zero() } else { sums[1].clone() };
    let mut entries = Vec::new();
    for (l, xl) in sums.iter().enumerate() {
        let coeffs = x.mul(m, xl).orbit_coefficients(&sizes, |e| m.length(e))?;
        entries.extend(coeffs.into_iter().enumerate().map(|(i, c)| (i, l, c)));
    }
    Ok(SparseOperator::from_entries(sums.len(), entries))
}

/// The bidiagonal matrix the multiplication rule predicts: diagonal `ℓ`
/// (or `[ℓ]_p`), subdiagonal `1` (or `p^ℓ`).
pub fn predicted_invariant_matrix(n: usize, p: Option<u32>) -> SparseOperator {
    let mut entries = Vec::new();
    for l in 0..=n {
        let (diag, sub) = match p {
            None => (Rat::from(l), Rat::one()),
            Some(p) => (Rat::from(q_int(l).eval(p as i128)), Rat::from((p as i128).pow(l as u32))),
        };
        entries.push((l, l, diag));
        if l < n {
            entries.push((l + 1, l, sub));
        }
    }
    SparseOperator::from_entries(n + 1, entries)
}

/// Coefficients of `x^k` in the orbit-sum basis `x_0, …, x_r`.
pub fn power_expansion<M: Monoid>(m: &M, k: usize) -> Result<Vec<Rat>> {
    if k > m.rank() {
        return Err(Error::InvalidArgument(format!("power {k} exceeds the rank {}", m.rank())));
    }
    let sums = orbit_sums(m);
    let sizes: Vec<usize> = sums.iter().map(AlgebraElement::support_len).collect();
    let mut power = sums[0].clone();
    for _ in 0..k {
        power = sums[1].mul(m, &power);
    }
    power.orbit_coefficients(&sizes, |e| m.length(e))
}

/// `S(k, i)`, or `S_q(k, i)` at `q = p`, for `i = 0..=r`.
pub fn predicted_power_expansion(r: usize, k: usize, p: Option<u32>) -> Vec<Rat> {
    (0..=r)
        .map(|i| match p {
            None => Rat::from(stirling2(k, i)),
            Some(p) => Rat::from(q_stirling(k, i, StirlingVariant::Plain).eval(p as i128)),
        })
        .collect()
}

/// Does `Π_{λ ∈ roots} (M − λ)` vanish?
pub fn annihilates(op: &IntOperator, roots: &[i128]) -> Result<bool> {
    let results: Vec<Result<bool>> = (0..op.dim())
        .into_par_iter()
        .map(|k| {
            let mut v = unit(op.dim(), k);
            for &r in roots {
                v = op.apply_shifted(r, &v)?;
            }
            Ok(v.iter().all(|&x| x == 0))
        })
        .collect();
    results.into_iter().try_fold(true, |acc, r| Ok(acc && r?))
}

/// Traces of `M^k` and of `P_g M^k` for `k = 0..=r`, gathered column by
/// column, where `r + 1` is the number of eigenvalues. Each column is also
/// checked to be killed by `Π (M − λ)`, which is what makes the Lagrange
/// projections below exact.
#[derive(Clone, Debug)]
pub struct KrylovTraces {
    pub powers: Vec<i128>,
    /// One row per supplied index map.
    pub twisted: Vec<Vec<i128>>,
}

/// `twists[g][c]` is the index of `g^{-1}` applied to basis element `c`.
pub fn krylov_traces(op: &IntOperator, eigenvalues: &[i128], twists: &[Vec<usize>]) -> Result<KrylovTraces> {
    let r = eigenvalues.len();
    let f = poly_from_roots(&eigenvalues.iter().map(|&l| Rat::from(l)).collect::<Vec<_>>());
    let f: Vec<i128> = f.iter().map(|c| c.to_i64().expect("integer roots give integer coefficients") as i128).collect();
    let dim = op.dim();
    let per_column = |c: usize| -> Result<(Vec<i128>, Vec<Vec<i128>>)> {
        let overflow = || Error::GuardExceeded("integer overflow in operator power".into());
        let mut v = unit(dim, c);
        let mut acc = vec![0i128; dim];
        let mut powers = vec![0i128; r];
        let mut twisted = vec![vec![0i128; r]; twists.len()];
        for (k, &fk) in f.iter().enumerate() {
            if k < r {
                powers[k] = v[c];
                for (t, map) in twisted.iter_mut().zip(twists) {
                    t[k] = v[map[c]];
                }
            }
            for (a, &x) in acc.iter_mut().zip(&v) {
                *a = x.checked_mul(fk).and_then(|t| a.checked_add(t)).ok_or_else(overflow)?;
            }
            if k + 1 < f.len() {
                v = op.apply_shifted(0, &v)?;
            }
        }
        if acc.iter().any(|&x| x != 0) {
            return Err(Error::NotAnnihilated(format!("column {c} survives Π(X − λ) for λ in {eigenvalues:?}")));
        }
        Ok((powers, twisted))
    };
    let columns: Vec<Result<(Vec<i128>, Vec<Vec<i128>>)>> = (0..dim).into_par_iter().map(per_column).collect();
    let mut out = KrylovTraces { powers: vec![0; r], twisted: vec![vec![0; r]; twists.len()] };
    for col in columns {
        let (p, t) = col?;
        for (a, b) in out.powers.iter_mut().zip(p) {
            *a += b;
        }
        for (row, trow) in out.twisted.iter_mut().zip(t) {
            for (a, b) in row.iter_mut().zip(trow) {
                *a += b;
            }
        }
    }
    Ok(out)
}

/// Monomial coefficients of the Lagrange polynomial `π_j` on the given
/// distinct eigenvalues, lowest degree first.
pub fn lagrange_coefficients(eigenvalues: &[i128], j: usize) -> Result<Vec<Rat>> {
    let lj = Rat::from(eigenvalues[j]);
    let others: Vec<Rat> =
        eigenvalues.iter().enumerate().filter(|(i, _)| *i != j).map(|(_, &l)| Rat::from(l)).collect();
    let denom = others.iter().fold(Rat::one(), |acc, l| {
        let d = &lj - l;
        acc * d
    });
    if denom.is_zero() {
        return Err(Error::NonDistinctSpectrum);
    }
    let scale = denom.recip();
    Ok(poly_from_roots(&others).into_iter().map(|c| c * scale.clone()).collect())
}

/// `Σ_k coeffs[k] · traces[k]`, which must be an integer.
pub fn combine_traces(coeffs: &[Rat], traces: &[i128]) -> Result<i128> {
    let total: Rat = coeffs.iter().zip(traces).map(|(c, &t)| c * &Rat::from(t)).sum();
    total
        .to_i64()
        .filter(|_| total.is_integer())
        .map(i128::from)
        .ok_or_else(|| Error::NonIntegerTrace(total.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{eigen_projection, LagrangeProjector};
    use crate::lrb::{FlagMonoid, InjWord, WordMonoid};

    fn w(v: &[u8]) -> InjWord {
        InjWord::new(v.to_vec()).unwrap()
    }

    fn dense(m: &SparseOperator) -> Vec<Vec<i64>> {
        m.to_dense().iter().map(|r| r.iter().map(|v| v.to_i64().unwrap()).collect()).collect()
    }

    #[test]
    fn space_parsing() {
        for s in ["full", "chamber", "stratum:2"] {
            assert_eq!(s.parse::<Space>().unwrap().to_string(), s);
        }
        assert!("stratum:x".parse::<Space>().is_err());
    }

    #[test]
    fn orbit_sum_sizes() {
        assert_eq!(orbit_sums(&WordMonoid::new(3))[2].support_len(), 6);
        let flags = FlagMonoid::new(3, 2).unwrap();
        let sums = orbit_sums(&flags);
        assert_eq!(sums[1].support_len(), 7);
        assert_eq!(sums[0], AlgebraElement::basis_elem(flags.identity()));
    }

    #[test]
    fn invariant_matrices() {
        let m = x_matrix_on_invariants(&WordMonoid::new(2)).unwrap();
        assert_eq!(dense(&m), [[0, 0, 0], [1, 1, 0], [0, 1, 2]]);
        assert_eq!(dense(&x_matrix_on_invariants(&WordMonoid::new(1)).unwrap()), [[0, 0], [1, 1]]);
        let q = x_matrix_on_invariants(&FlagMonoid::new(2, 2).unwrap()).unwrap();
        assert_eq!(dense(&q), [[0, 0, 0], [1, 1, 0], [0, 2, 3]]);
        for n in 1..=4 {
            assert_eq!(x_matrix_on_invariants(&WordMonoid::new(n)).unwrap(), predicted_invariant_matrix(n, None));
        }
        for n in 1..=3 {
            let flags = FlagMonoid::new(n, 3).unwrap();
            assert_eq!(x_matrix_on_invariants(&flags).unwrap(), predicted_invariant_matrix(n, Some(3)));
        }
    }

    #[test]
    fn powers_of_x() {
        let m = WordMonoid::new(4);
        assert_eq!(power_expansion(&m, 0).unwrap()[0], Rat::one());
        let c: Vec<i64> = power_expansion(&m, 4).unwrap().iter().map(|v| v.to_i64().unwrap()).collect();
        assert_eq!(c, [0, 1, 7, 6, 1]);
        let flags = FlagMonoid::new(3, 2).unwrap();
        let c = power_expansion(&flags, 3).unwrap();
        assert_eq!(c[3], Rat::from(8));
        assert_eq!(c, predicted_power_expansion(3, 3, Some(2)));
        assert!(power_expansion(&m, 5).is_err());
    }

    #[test]
    fn operator_examples() {
        let m = WordMonoid::new(4);
        let (basis, op) = x_operator(&m, Space::Chamber).unwrap();
        let k = basis.index_of(&w(&[3, 1, 4, 2])).unwrap();
        let rows: Vec<String> = op.column(k).iter().map(|&(i, v)| format!("{}:{v}", basis.elem(i))).collect();
        assert_eq!(rows, ["(1,3,4,2):1", "(2,3,1,4):1", "(3,1,4,2):1", "(4,3,1,2):1"]);

        let (basis, op) = x_operator(&WordMonoid::new(3), Space::Stratum(2)).unwrap();
        let k = basis.index_of(&w(&[1, 2])).unwrap();
        assert!(basis.index_of(&w(&[3, 1, 2])).is_none());
        let col: Vec<InjWord> = op.column(k).iter().map(|&(i, _)| basis.elem(i).clone()).collect();
        assert_eq!(col, [w(&[1, 2]), w(&[2, 1])]);

        let (basis, op) = x_operator(&WordMonoid::new(1), Space::Full).unwrap();
        assert_eq!(basis.elems(), [InjWord::empty(), w(&[1])]);
        assert_eq!(dense(&op.to_sparse()), [[0, 0], [1, 1]]);
        assert!(x_operator(&WordMonoid::new(2), Space::Stratum(3)).is_err());
    }

    #[test]
    fn krylov_traces_match_projections() {
        for (m, space) in [(WordMonoid::new(3), Space::Full), (WordMonoid::new(4), Space::Chamber)] {
            let (_, op) = x_operator(&m, space).unwrap();
            let ev = eigenvalues(&m, space);
            let traces = krylov_traces(&op, &ev, &[]).unwrap();
            let sparse = op.to_sparse();
            let ev_rat: Vec<Rat> = ev.iter().map(|&l| Rat::from(l)).collect();
            for j in 0..ev.len() {
                let dim = combine_traces(&lagrange_coefficients(&ev, j).unwrap(), &traces.powers).unwrap();
                let proj = LagrangeProjector::new(&sparse, &ev_rat, j).unwrap();
                assert_eq!(Rat::from(dim), proj.trace());
                assert_eq!(proj.trace(), eigen_projection(&sparse, &ev_rat, j).unwrap().trace());
            }
        }
    }

    #[test]
    fn missing_root_is_detected() {
        let (_, op) = x_operator(&WordMonoid::new(2), Space::Full).unwrap();
        assert!(annihilates(&op, &[0, 1, 2]).unwrap());
        assert!(!annihilates(&op, &[0, 2]).unwrap());
        assert!(matches!(krylov_traces(&op, &[0, 1], &[]), Err(Error::NotAnnihilated(_))));
    }
}
