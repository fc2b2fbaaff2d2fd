use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

use super::partition::Partition;
use super::schur::SchurVector;
use super::tableau::syt_of_shape;
use crate::error::{Error, Result};
use crate::perm::{all_permutations, cycle_type, descent_set};

/// A formal integer combination of Gessel's fundamental quasisymmetric
/// functions `L_{n,D}`, `D ⊆ {1, …, n-1}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QSymVector {
    grade: usize,
    coeffs: BTreeMap<Vec<usize>, i64>,
}

impl QSymVector {
    pub fn zero(grade: usize) -> Self {
        QSymVector { grade, coeffs: BTreeMap::new() }
    }

    /// `L_{n,D}`; `descents` must be a subset of `1..n`.
    pub fn fundamental(grade: usize, descents: &[usize]) -> Result<Self> {
        let mut v = Self::zero(grade);
        v.add_descent_set(descents, 1)?;
        Ok(v)
    }

    pub fn add_descent_set(&mut self, descents: &[usize], c: i64) -> Result<()> {
        let mut d = descents.to_vec();
        d.sort_unstable();
        d.dedup();
        if d.len() != descents.len() || d.iter().any(|&i| i == 0 || i >= self.grade) {
            return Err(Error::InvalidArgument(format!("{descents:?} is not a subset of 1..{}", self.grade)));
        }
        if c == 0 {
            return Ok(());
        }
        let slot = self.coeffs.entry(d.clone()).or_insert(0);
        *slot += c;
        if *slot == 0 {
            self.coeffs.remove(&d);
        }
        Ok(())
    }

    pub fn grade(&self) -> usize {
        self.grade
    }

    pub fn coeff(&self, descents: &[usize]) -> i64 {
        self.coeffs.get(descents).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[usize], i64)> {
        self.coeffs.iter().map(|(d, &c)| (d.as_slice(), c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.grade != other.grade {
            return Err(Error::DimensionMismatch { left: self.grade, right: other.grade });
        }
        let mut out = self.clone();
        for (d, &c) in &other.coeffs {
            out.add_descent_set(d, c)?;
        }
        Ok(out)
    }
}

impl fmt::Display for QSymVector {
    /// `L{1}+2L{1,3}`; descent sets in lexicographic order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (d, &c)) in self.coeffs.iter().enumerate() {
            let sign = if c < 0 {
                "-"
            } else if i > 0 {
                "+"
            } else {
                ""
            };
            let mag = c.unsigned_abs();
            let set: Vec<String> = d.iter().map(usize::to_string).collect();
            if mag == 1 {
                write!(f, "{sign}L{{{}}}", set.join(","))?;
            } else {
                write!(f, "{sign}{mag}L{{{}}}", set.join(","))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for QSymVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[n={}] {self}", self.grade)
    }
}

impl Serialize for QSymVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// `s_λ = Σ_P L_{n,Des(P)}` over standard tableaux `P` of shape `λ`.
pub fn schur_to_fundamental(lambda: &Partition) -> QSymVector {
    let mut out = QSymVector::zero(lambda.size());
    for t in syt_of_shape(lambda) {
        out.add_descent_set(&t.descent_set(), 1).expect("tableau descents lie in 1..n");
    }
    out
}

/// Linear extension of [`schur_to_fundamental`].
pub fn schur_vector_to_fundamental(f: &SchurVector) -> QSymVector {
    let mut out = QSymVector::zero(f.grade());
    for (lambda, c) in f.terms() {
        for (d, k) in schur_to_fundamental(lambda).terms() {
            out.add_descent_set(d, c * k).expect("same grade");
        }
    }
    out
}

/// Largest `n` for which permutations of `n` letters are enumerated.
pub const PERMUTATION_GUARD: usize = 8;

/// `𝔏_λ = Σ L_{n,Des(w)}` over permutations `w` of cycle type `λ`.
pub fn gessel_reutenauer(lambda: &Partition) -> Result<QSymVector> {
    let n = lambda.size();
    if n > PERMUTATION_GUARD {
        return Err(Error::GuardExceeded(format!("permutation enumeration limited to n ≤ 8, got {n}")));
    }
    let mut out = QSymVector::zero(n);
    for w in all_permutations(n) {
        if cycle_type(&w) == lambda.parts() {
            out.add_descent_set(&descent_set(&w), 1)?;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symfun::partition::partitions;

    fn part(p: &[usize]) -> Partition {
        Partition::new(p.to_vec()).unwrap()
    }

    #[test]
    fn schur_expansions() {
        assert_eq!(schur_to_fundamental(&part(&[4])), QSymVector::fundamental(4, &[]).unwrap());
        assert_eq!(schur_to_fundamental(&part(&[1, 1])), QSymVector::fundamental(2, &[1]).unwrap());
        assert_eq!(schur_to_fundamental(&part(&[2, 1])).to_string(), "L{1}+L{2}");
    }

    #[test]
    fn cycle_type_sums() {
        assert_eq!(gessel_reutenauer(&part(&[1, 1, 1])).unwrap(), QSymVector::fundamental(3, &[]).unwrap());
        assert_eq!(gessel_reutenauer(&part(&[2])).unwrap(), QSymVector::fundamental(2, &[1]).unwrap());
        assert_eq!(gessel_reutenauer(&part(&[3])).unwrap().to_string(), "L{1}+L{2}");
        assert!(gessel_reutenauer(&part(&[9])).is_err());
        // all cycle types together give every permutation: Σ_λ 𝔏_λ = Σ_w L_{Des(w)} = h_1^n
        for n in 1..=5 {
            let mut total = QSymVector::zero(n);
            for l in partitions(n) {
                total = total.add(&gessel_reutenauer(&l).unwrap()).unwrap();
            }
            let count: i64 = total.terms().map(|(_, c)| c).sum();
            assert_eq!(count, (1..=n as i64).product::<i64>());
        }
    }

    #[test]
    fn rejects_bad_descent_sets() {
        assert!(QSymVector::fundamental(3, &[3]).is_err());
        assert!(QSymVector::fundamental(3, &[0]).is_err());
        assert!(QSymVector::fundamental(3, &[1, 1]).is_err());
    }
}
