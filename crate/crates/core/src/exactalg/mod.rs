//! Exact rational linear algebra: scalars, sparse operators, nullspaces,
//! operator polynomials and Lagrange spectral projections.

mod rat;
mod sparse;

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

pub use rat::Rat;
pub use sparse::{RatVec, SparseOperator, Triplets};

use crate::error::{Error, Result};

/// How the elimination picks its next pivot column.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum PivotRule {
    /// Column with the fewest live nonzeros (controls fill-in).
    Sparsest,
    /// Leftmost live column; yields the canonical reduced echelon form.
    Leftmost,
}

/// Gauss-Jordan elimination on sparse rows of width `width`. Returns the
/// nonzero reduced rows keyed by pivot column; every pivot column is zero in
/// all other returned rows.
fn reduce_rows(
    rows: Vec<BTreeMap<usize, Rat>>,
    width: usize,
    rule: PivotRule,
) -> BTreeMap<usize, BTreeMap<usize, Rat>> {
    let mut rows: Vec<BTreeMap<usize, Rat>> = rows;
    let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); width];
    let mut live_count = vec![0usize; width];
    let mut active: Vec<bool> = rows.iter().map(|r| !r.is_empty()).collect();
    for (r, row) in rows.iter().enumerate() {
        for &c in row.keys() {
            col_rows[c].insert(r);
            live_count[c] += 1;
        }
    }
    let mut pivoted = vec![false; width];
    let mut pivots = BTreeMap::new();

    loop {
        let choice = match rule {
            PivotRule::Sparsest => {
                (0..width).filter(|&c| !pivoted[c] && live_count[c] > 0).min_by_key(|&c| (live_count[c], c))
            }
            PivotRule::Leftmost => (0..width).find(|&c| !pivoted[c] && live_count[c] > 0),
        };
        let Some(c) = choice else { break };
        let pr = col_rows[c]
            .iter()
            .copied()
            .filter(|&r| active[r])
            .min_by_key(|&r| (rows[r].len(), r))
            .expect("live column has an active row");

        let inv = rows[pr][&c].recip();
        for v in rows[pr].values_mut() {
            *v *= &inv;
        }
        active[pr] = false;
        for &k in rows[pr].keys() {
            live_count[k] -= 1;
        }
        pivoted[c] = true;

        let pivot_row: Vec<(usize, Rat)> = rows[pr].iter().map(|(k, v)| (*k, v.clone())).collect();
        let targets: Vec<usize> = col_rows[c].iter().copied().filter(|&r| r != pr).collect();
        for r in targets {
            let f = rows[r][&c].clone();
            for (k, v) in &pivot_row {
                let delta = &f * v;
                let entry = rows[r].get(k).cloned().unwrap_or_default();
                let new = &entry - &delta;
                let existed = rows[r].contains_key(k);
                if new.is_zero() {
                    rows[r].remove(k);
                    col_rows[*k].remove(&r);
                    if active[r] {
                        live_count[*k] -= 1;
                    }
                } else {
                    rows[r].insert(*k, new);
                    if !existed {
                        col_rows[*k].insert(r);
                        if active[r] {
                            live_count[*k] += 1;
                        }
                    }
                }
            }
            if rows[r].is_empty() {
                active[r] = false;
            }
        }
        pivots.insert(c, pr);
    }

    pivots.into_iter().map(|(c, r)| (c, std::mem::take(&mut rows[r]))).collect()
}

fn dense_to_sparse_rows(rows: &[RatVec]) -> Vec<BTreeMap<usize, Rat>> {
    rows.iter()
        .map(|r| r.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(i, v)| (i, v.clone())).collect())
        .collect()
}

/// Canonical reduced row echelon form of the span of `rows` (zero rows dropped).
pub fn rref(rows: &[RatVec], width: usize) -> Vec<RatVec> {
    let reduced = reduce_rows(dense_to_sparse_rows(rows), width, PivotRule::Leftmost);
    reduced
        .into_values()
        .map(|row| {
            let mut v = vec![Rat::zero(); width];
            for (k, x) in row {
                v[k] = x;
            }
            v
        })
        .collect()
}

/// Rank of a list of vectors of length `width`.
pub fn rank_of_rows(rows: &[RatVec], width: usize) -> usize {
    reduce_rows(dense_to_sparse_rows(rows), width, PivotRule::Sparsest).len()
}

pub fn rank(m: &SparseOperator) -> usize {
    reduce_rows(operator_rows(m), m.dim(), PivotRule::Sparsest).len()
}

fn operator_rows(m: &SparseOperator) -> Vec<BTreeMap<usize, Rat>> {
    let mut rows: Vec<BTreeMap<usize, Rat>> = vec![BTreeMap::new(); m.dim()];
    for (i, j, v) in m.entries() {
        rows[i].insert(j, v);
    }
    rows
}

/// Basis of the right nullspace of `m`, in reduced echelon form.
pub fn kernel_basis(m: &SparseOperator) -> Vec<RatVec> {
    let dim = m.dim();
    let reduced = reduce_rows(operator_rows(m), dim, PivotRule::Sparsest);
    let free: Vec<usize> = (0..dim).filter(|c| !reduced.contains_key(c)).collect();
    let raw: Vec<RatVec> = free
        .iter()
        .map(|&f| {
            let mut v = vec![Rat::zero(); dim];
            v[f] = Rat::one();
            for (&c, row) in &reduced {
                if let Some(x) = row.get(&f) {
                    v[c] = -x;
                }
            }
            v
        })
        .collect();
    rref(&raw, dim)
}

/// `Σ coeffs[i] · M^i`, lowest degree first (Horner).
pub fn poly_of_operator(m: &SparseOperator, coeffs: &[Rat]) -> SparseOperator {
    let dim = m.dim();
    let mut acc = SparseOperator::zero(dim);
    for c in coeffs.iter().rev() {
        acc = m.mul(&acc).expect("same dimension").add(&SparseOperator::scalar(dim, c)).expect("same dimension");
    }
    acc
}

/// Coefficients (lowest degree first) of `Π (X - r)` over `roots`.
pub fn poly_from_roots(roots: &[Rat]) -> Vec<Rat> {
    let mut p = vec![Rat::one()];
    for r in roots {
        let mut next = vec![Rat::zero(); p.len() + 1];
        for (i, c) in p.iter().enumerate() {
            next[i + 1] += c;
            next[i] -= &(c * r);
        }
        p = next;
    }
    p
}

/// Does `Π (M - r)` over `roots` vanish? Checked column by column, stopping
/// at the first nonzero column.
pub fn annihilated_by_roots(m: &SparseOperator, roots: &[Rat]) -> bool {
    (0..m.dim()).into_par_iter().all(|k| {
        let mut v = vec![Rat::zero(); m.dim()];
        v[k] = Rat::one();
        for r in roots {
            v = m.apply_shifted(r, &v);
            if v.iter().all(Rat::is_zero) {
                return true;
            }
        }
        v.iter().all(Rat::is_zero)
    })
}

/// The Lagrange projector `π_j = Π_{i≠j} (M − λ_i)/(λ_j − λ_i)` applied
/// without materializing the matrix.
#[derive(Clone, Debug)]
pub struct LagrangeProjector<'a> {
    m: &'a SparseOperator,
    others: Vec<Rat>,
    scale: Rat,
}

impl<'a> LagrangeProjector<'a> {
    pub fn new(m: &'a SparseOperator, eigenvalues: &[Rat], j: usize) -> Result<Self> {
        let distinct: BTreeSet<&Rat> = eigenvalues.iter().collect();
        if distinct.len() != eigenvalues.len() {
            return Err(Error::NonDistinctSpectrum);
        }
        if j >= eigenvalues.len() {
            return Err(Error::InvalidArgument(format!("eigenvalue index {j} out of range 0..{}", eigenvalues.len())));
        }
        let lj = &eigenvalues[j];
        let others: Vec<Rat> =
            eigenvalues.iter().enumerate().filter(|(i, _)| *i != j).map(|(_, l)| l.clone()).collect();
        let denom: Rat = others.iter().fold(Rat::one(), |acc, l| acc * (lj - l));
        Ok(LagrangeProjector { m, others, scale: denom.recip() })
    }

    pub fn apply(&self, v: &[Rat]) -> RatVec {
        let mut w = v.to_vec();
        for l in &self.others {
            w = self.m.apply_shifted(l, &w);
        }
        w.iter().map(|x| x * &self.scale).collect()
    }

    /// Column `k` of the projector.
    pub fn column(&self, k: usize) -> RatVec {
        let mut e = vec![Rat::zero(); self.m.dim()];
        e[k] = Rat::one();
        self.apply(&e)
    }

    /// `trace(π_j)`, summed column by column in parallel.
    pub fn trace(&self) -> Rat {
        (0..self.m.dim()).into_par_iter().map(|k| self.column(k)[k].clone()).reduce(Rat::zero, |a, b| a + b)
    }

    pub fn to_operator(&self) -> SparseOperator {
        let cols: Vec<RatVec> = (0..self.m.dim()).into_par_iter().map(|k| self.column(k)).collect();
        SparseOperator::from_columns(self.m.dim(), cols)
    }
}

/// `π_j` as an explicit operator. Errors if the eigenvalue list repeats.
pub fn eigen_projection(m: &SparseOperator, eigenvalues: &[Rat], j: usize) -> Result<SparseOperator> {
    Ok(LagrangeProjector::new(m, eigenvalues, j)?.to_operator())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i64) -> Rat {
        Rat::from_int(n)
    }

    fn op(rows: &[&[i64]]) -> SparseOperator {
        SparseOperator::from_dense(&rows.iter().map(|row| row.iter().map(|&x| r(x)).collect()).collect::<Vec<_>>())
    }

    #[test]
    fn kernel_of_identity_is_empty() {
        assert!(kernel_basis(&SparseOperator::identity(3)).is_empty());
    }

    #[test]
    fn kernel_of_zero_is_everything() {
        let k = kernel_basis(&SparseOperator::zero(2));
        assert_eq!(k, vec![vec![r(1), r(0)], vec![r(0), r(1)]]);
    }

    #[test]
    fn kernel_of_all_ones() {
        // rows (1,1),(1,1): x + y = 0, echelon basis vector (1,-1)
        let k = kernel_basis(&op(&[&[1, 1], &[1, 1]]));
        assert_eq!(k, vec![vec![r(1), r(-1)]]);
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let m = op(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, 0, 1], &[1, 3, 3, 5]]);
        let k = kernel_basis(&m);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(m.apply(v).iter().all(Rat::is_zero));
        }
        assert_eq!(rank_of_rows(&k, 4), 2);
        assert_eq!(rank(&m), 2);
    }

    #[test]
    fn polynomial_evaluation() {
        let m = op(&[&[0, 1], &[2, 3]]);
        assert_eq!(poly_of_operator(&m, &[r(0), r(1)]), m);
        let id = SparseOperator::identity(3);
        assert!(poly_of_operator(&id, &[r(-1), r(1)]).is_zero());
        // 3I + 2M + M^2
        let expect = op(&[&[5, 5], &[10, 20]]);
        assert_eq!(poly_of_operator(&m, &[r(3), r(2), r(1)]), expect);
    }

    #[test]
    fn lemma_matrix_killed_by_falling_factorial() {
        let x = op(&[&[0, 0, 0], &[1, 1, 0], &[0, 1, 2]]);
        let f = poly_from_roots(&[r(0), r(1), r(2)]);
        assert!(poly_of_operator(&x, &f).is_zero());
        assert!(annihilated_by_roots(&x, &[r(0), r(1), r(2)]));
        assert!(!annihilated_by_roots(&x, &[r(0), r(1)]));
    }

    #[test]
    fn diagonal_projection() {
        let m = op(&[&[0, 0], &[0, 1]]);
        let p = eigen_projection(&m, &[r(0), r(1)], 0).unwrap();
        assert_eq!(p, op(&[&[1, 0], &[0, 0]]));
        assert_eq!(eigen_projection(&m, &[r(0), r(0)], 0), Err(Error::NonDistinctSpectrum));
    }

    #[test]
    fn projections_resolve_identity() {
        let x = op(&[&[0, 0, 0, 0], &[1, 1, 0, 0], &[0, 1, 2, 0], &[0, 0, 1, 3]]);
        let ev: Vec<Rat> = (0..4).map(r).collect();
        let ps: Vec<_> = (0..4).map(|j| eigen_projection(&x, &ev, j).unwrap()).collect();
        let mut total = SparseOperator::zero(4);
        for (j, p) in ps.iter().enumerate() {
            assert_eq!(p.mul(p).unwrap(), *p);
            assert_eq!(x.mul(p).unwrap(), p.scale(&ev[j]));
            assert_eq!(p.trace(), r(1));
            for q in &ps[j + 1..] {
                assert!(p.mul(q).unwrap().is_zero());
            }
            total = total.add(p).unwrap();
        }
        assert_eq!(total, SparseOperator::identity(4));
        let lp = LagrangeProjector::new(&x, &ev, 2).unwrap();
        assert_eq!(lp.trace(), r(1));
    }

    proptest! {
        #[test]
        fn kernel_is_exact_nullspace(entries in proptest::collection::vec(-2i64..3, 16)) {
            let rows: Vec<Vec<Rat>> = entries.chunks(4).map(|c| c.iter().map(|&x| r(x)).collect()).collect();
            let m = SparseOperator::from_dense(&rows);
            let k = kernel_basis(&m);
            prop_assert_eq!(k.len() + rank(&m), 4);
            for v in &k {
                prop_assert!(m.apply(v).iter().all(Rat::is_zero));
            }
            prop_assert_eq!(rank_of_rows(&k, 4), k.len());
        }
    }
}
