use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::Rat;
use crate::error::{Error, Result};

/// Square rational matrix stored by columns. Every stored entry is nonzero
/// and each column is sorted by row index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseOperator {
    dim: usize,
    cols: Vec<Vec<(usize, Rat)>>,
}

/// Dense column vector.
pub type RatVec = Vec<Rat>;

impl SparseOperator {
    pub fn zero(dim: usize) -> Self {
        SparseOperator { dim, cols: vec![Vec::new(); dim] }
    }

    pub fn identity(dim: usize) -> Self {
        Self::scalar(dim, &Rat::one())
    }

    pub fn scalar(dim: usize, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(dim);
        }
        SparseOperator { dim, cols: (0..dim).map(|i| vec![(i, c.clone())]).collect() }
    }

    /// Sums duplicate `(row, col)` entries and drops zeros.
    pub fn from_entries<I>(dim: usize, entries: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, Rat)>,
    {
        let mut cols: Vec<BTreeMap<usize, Rat>> = vec![BTreeMap::new(); dim];
        for (i, j, v) in entries {
            assert!(i < dim && j < dim, "entry ({i},{j}) out of range for dim {dim}");
            *cols[j].entry(i).or_default() += v;
        }
        SparseOperator {
            dim,
            cols: cols.into_iter().map(|c| c.into_iter().filter(|(_, v)| !v.is_zero()).collect()).collect(),
        }
    }

    /// Builds from dense columns.
    pub fn from_columns(dim: usize, columns: Vec<RatVec>) -> Self {
        assert_eq!(columns.len(), dim);
        let cols = columns
            .into_iter()
            .map(|c| {
                assert_eq!(c.len(), dim);
                c.into_iter().enumerate().filter(|(_, v)| !v.is_zero()).collect()
            })
            .collect();
        SparseOperator { dim, cols }
    }

    pub fn from_dense(rows: &[Vec<Rat>]) -> Self {
        let dim = rows.len();
        Self::from_entries(
            dim,
            rows.iter().enumerate().flat_map(|(i, r)| {
                assert_eq!(r.len(), dim, "matrix must be square");
                r.iter().enumerate().map(move |(j, v)| (i, j, v.clone()))
            }),
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn column(&self, j: usize) -> &[(usize, Rat)] {
        &self.cols[j]
    }

    pub fn get(&self, i: usize, j: usize) -> Rat {
        match self.cols[j].binary_search_by_key(&i, |(r, _)| *r) {
            Ok(k) => self.cols[j][k].1.clone(),
            Err(_) => Rat::zero(),
        }
    }

    /// All entries in row-major order.
    pub fn entries(&self) -> Vec<(usize, usize, Rat)> {
        let mut out: Vec<_> =
            self.cols.iter().enumerate().flat_map(|(j, c)| c.iter().map(move |(i, v)| (*i, j, v.clone()))).collect();
        out.sort_by_key(|e| (e.0, e.1));
        out
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vec::is_empty)
    }

    pub fn trace(&self) -> Rat {
        (0..self.dim).map(|j| self.get(j, j)).sum()
    }

    pub fn to_dense(&self) -> Vec<Vec<Rat>> {
        let mut out = vec![vec![Rat::zero(); self.dim]; self.dim];
        for (j, c) in self.cols.iter().enumerate() {
            for (i, v) in c {
                out[*i][j] = v.clone();
            }
        }
        out
    }

    /// `self · v` for a dense vector.
    pub fn apply(&self, v: &[Rat]) -> RatVec {
        assert_eq!(v.len(), self.dim);
        let mut out = vec![Rat::zero(); self.dim];
        for (j, vj) in v.iter().enumerate() {
            if vj.is_zero() {
                continue;
            }
            for (i, m) in &self.cols[j] {
                out[*i] += &(m * vj);
            }
        }
        out
    }

    /// `(self - c·I) · v`.
    pub fn apply_shifted(&self, c: &Rat, v: &[Rat]) -> RatVec {
        let mut out = self.apply(v);
        if !c.is_zero() {
            for (o, x) in out.iter_mut().zip(v) {
                if !x.is_zero() {
                    *o -= &(c * x);
                }
            }
        }
        out
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: other.dim });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(Self::from_entries(self.dim, self.entries().into_iter().chain(other.entries())))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&Rat::from_int(-1)))
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(self.dim);
        }
        SparseOperator {
            dim: self.dim,
            cols: self.cols.iter().map(|col| col.iter().map(|(i, v)| (*i, v * c)).collect()).collect(),
        }
    }

    /// `self · other`, computed column by column.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let cols = other
            .cols
            .par_iter()
            .map(|col| {
                let mut acc: BTreeMap<usize, Rat> = BTreeMap::new();
                for (k, b) in col {
                    for (i, a) in &self.cols[*k] {
                        *acc.entry(*i).or_default() += &(a * b);
                    }
                }
                acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
            })
            .collect();
        Ok(SparseOperator { dim: self.dim, cols })
    }

    pub fn transpose(&self) -> Self {
        Self::from_entries(self.dim, self.entries().into_iter().map(|(i, j, v)| (j, i, v)))
    }

    /// Conjugation-free commutator test: `self · other == other · self`.
    pub fn commutes_with(&self, other: &Self) -> Result<bool> {
        Ok(self.mul(other)? == other.mul(self)?)
    }

    /// Dense CSV, row-major, fractions as `p/q`.
    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        for row in self.to_dense() {
            let cells: Vec<String> = row.iter().map(Rat::to_string).collect();
            let _ = writeln!(s, "{}", cells.join(","));
        }
        s
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let rows: Vec<Vec<Rat>> = text
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(|l| l.split(',').map(str::parse).collect::<Result<Vec<Rat>>>())
            .collect::<Result<_>>()?;
        if rows.iter().any(|r| r.len() != rows.len()) {
            return Err(Error::Parse("CSV matrix is not square".into()));
        }
        Ok(Self::from_dense(&rows))
    }

    pub fn to_triplets(&self) -> Triplets {
        Triplets { dim: self.dim, entries: self.entries() }
    }

    pub fn from_triplets(t: &Triplets) -> Result<Self> {
        if let Some((i, j, _)) = t.entries.iter().find(|(i, j, _)| *i >= t.dim || *j >= t.dim) {
            return Err(Error::Parse(format!("entry ({i},{j}) outside dim {}", t.dim)));
        }
        Ok(Self::from_entries(t.dim, t.entries.iter().cloned()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_triplets()).expect("triplets serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let t: Triplets = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_triplets(&t)
    }
}

/// JSON triplet form `{dim, entries: [[i, j, "p/q"], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Triplets {
    pub dim: usize,
    pub entries: Vec<(usize, usize, Rat)>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rat {
        Rat::from_int(n)
    }

    #[test]
    fn from_entries_merges_and_drops_zeros() {
        let m = SparseOperator::from_entries(2, vec![(0, 1, r(2)), (0, 1, r(-2)), (1, 0, r(3))]);
        assert_eq!(m.nnz(), 1);
        assert_eq!(m.get(1, 0), r(3));
        assert_eq!(m.get(0, 1), r(0));
    }

    #[test]
    fn csv_and_json_formats() {
        let m = SparseOperator::from_dense(&[vec![r(1), Rat::new(1, 2)], vec![r(0), r(-3)]]);
        assert_eq!(m.to_csv(), "1,1/2\n0,-3\n");
        assert_eq!(m.to_json(), r#"{"dim":2,"entries":[[0,0,"1"],[0,1,"1/2"],[1,1,"-3"]]}"#);
        assert_eq!(SparseOperator::from_csv(&m.to_csv()).unwrap(), m);
        assert_eq!(SparseOperator::from_json(&m.to_json()).unwrap(), m);
        assert!(SparseOperator::from_json(r#"{"dim":1,"entries":[[1,0,"1"]]}"#).is_err());
        assert!(SparseOperator::from_csv("1,2\n3\n").is_err());
    }

    #[test]
    fn product_matches_dense() {
        let a = SparseOperator::from_dense(&[vec![r(1), r(2)], vec![r(3), r(4)]]);
        let b = SparseOperator::from_dense(&[vec![r(0), r(1)], vec![r(1), r(0)]]);
        let ab = a.mul(&b).unwrap();
        assert_eq!(ab.to_dense(), vec![vec![r(2), r(1)], vec![r(4), r(3)]]);
        assert_eq!(a.apply(&[r(1), r(1)]), vec![r(3), r(7)]);
        assert_eq!(a.trace(), r(5));
        assert!(a.mul(&SparseOperator::zero(3)).is_err());
    }
}
