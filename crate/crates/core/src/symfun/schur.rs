use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

use super::partition::Partition;
use crate::error::{Error, Result};

/// A homogeneous symmetric function of degree `grade` in the Schur basis,
/// with integer coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SchurVector {
    grade: usize,
    coeffs: BTreeMap<Partition, i64>,
}

impl SchurVector {
    pub fn zero(grade: usize) -> Self {
        SchurVector { grade, coeffs: BTreeMap::new() }
    }

    /// `s_λ`.
    pub fn schur(lambda: Partition) -> Self {
        let mut v = Self::zero(lambda.size());
        v.coeffs.insert(lambda, 1);
        v
    }

    /// `s_()`, the unit.
    pub fn one() -> Self {
        Self::schur(Partition::empty())
    }

    pub fn from_terms<I: IntoIterator<Item = (Partition, i64)>>(grade: usize, terms: I) -> Result<Self> {
        let mut v = Self::zero(grade);
        for (lambda, c) in terms {
            if lambda.size() != grade {
                return Err(Error::InvalidArgument(format!("{lambda} does not have size {grade}")));
            }
            v.add_term(lambda, c);
        }
        Ok(v)
    }

    fn add_term(&mut self, lambda: Partition, c: i64) {
        if c == 0 {
            return;
        }
        let slot = self.coeffs.entry(lambda.clone()).or_insert(0);
        *slot += c;
        if *slot == 0 {
            self.coeffs.remove(&lambda);
        }
    }

    pub fn grade(&self) -> usize {
        self.grade
    }

    pub fn coeff(&self, lambda: &Partition) -> i64 {
        self.coeffs.get(lambda).copied().unwrap_or(0)
    }

    /// Terms with nonzero coefficient, in the printing order
    /// (lexicographically decreasing partitions).
    pub fn terms(&self) -> impl Iterator<Item = (&Partition, i64)> {
        self.coeffs.iter().rev().map(|(l, &c)| (l, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn check_grade(&self, other: &Self) -> Result<()> {
        if self.is_zero() || other.is_zero() || self.grade == other.grade {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { left: self.grade, right: other.grade })
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_grade(other)?;
        let mut out = self.clone();
        if out.is_zero() {
            out.grade = other.grade;
        }
        for (l, &c) in &other.coeffs {
            out.add_term(l.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, c: i64) -> Self {
        let mut out = Self::zero(self.grade);
        for (l, &v) in &self.coeffs {
            out.add_term(l.clone(), v * c);
        }
        out
    }

    /// Degree of the corresponding representation: `Σ c_λ f^λ`.
    pub fn dimension(&self) -> i128 {
        self.coeffs.iter().map(|(l, &c)| c as i128 * l.syt_count() as i128).sum()
    }

    /// Parses the printed form, e.g. `s(3)+2s(2,1)-s(1,1,1)` or `0`
    /// (which needs the grade supplied).
    pub fn parse(s: &str, grade: usize) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact == "0" {
            return Ok(Self::zero(grade));
        }
        let mut out = Self::zero(grade);
        let mut rest = compact.as_str();
        while !rest.is_empty() {
            let (sign, body) = match rest.as_bytes()[0] {
                b'+' => (1, &rest[1..]),
                b'-' => (-1, &rest[1..]),
                _ => (1, rest),
            };
            let s_at = body.find('s').ok_or_else(|| Error::Parse(format!("missing s( in {s:?}")))?;
            let c: i64 =
                if s_at == 0 { 1 } else { body[..s_at].parse().map_err(|e| Error::Parse(format!("{s:?}: {e}")))? };
            let close = body.find(')').ok_or_else(|| Error::Parse(format!("missing ) in {s:?}")))?;
            let lambda = Partition::parse(&body[s_at + 1..=close])?;
            if lambda.size() != grade {
                return Err(Error::Parse(format!("{lambda} does not have size {grade}")));
            }
            out.add_term(lambda, sign * c);
            rest = &body[close + 1..];
        }
        Ok(out)
    }
}

impl fmt::Display for SchurVector {
    /// `s(3)+2s(2,1)-s(1,1,1)`, partitions lexicographically decreasing.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (lambda, c)) in self.terms().enumerate() {
            let sign = if c < 0 {
                "-"
            } else if i > 0 {
                "+"
            } else {
                ""
            };
            let mag = c.unsigned_abs();
            if mag == 1 {
                write!(f, "{sign}s{lambda}")?;
            } else {
                write!(f, "{sign}{mag}s{lambda}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for SchurVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for SchurVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Shapes `μ ⊇ λ` with `μ/λ` a horizontal strip of size `m`.
pub fn horizontal_strips(lambda: &Partition, m: usize) -> Vec<Partition> {
    fn go(lambda: &Partition, row: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if row > lambda.len() {
            if left == 0 {
                out.push(Partition::from_unsorted(cur.clone()));
            }
            return;
        }
        let base = lambda.part(row);
        let cap = if row == 0 { left } else { (lambda.part(row - 1) - base).min(left) };
        for add in 0..=cap {
            cur.push(base + add);
            go(lambda, row + 1, left - add, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(lambda, 0, m, &mut Vec::new(), &mut out);
    out
}

/// `f · h_m` by the Pieri rule.
pub fn pieri_h(f: &SchurVector, m: usize) -> SchurVector {
    let mut out = SchurVector::zero(f.grade + m);
    for (lambda, &c) in &f.coeffs {
        for mu in horizontal_strips(lambda, m) {
            out.add_term(mu, c);
        }
    }
    out
}

/// `h_m = s_(m)`.
pub fn h_in_schur(m: usize) -> SchurVector {
    SchurVector::schur(Partition::row(m))
}

/// `e_k = s_(1^k)`.
pub fn e_in_schur(k: usize) -> SchurVector {
    SchurVector::schur(Partition::column(k))
}

/// `h_1^n`, the Frobenius image of the regular representation.
pub fn h1_power(n: usize) -> SchurVector {
    (0..n).fold(SchurVector::one(), |acc, _| pieri_h(&acc, 1))
}
