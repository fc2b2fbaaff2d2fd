use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// An integer partition, parts weakly decreasing and positive.
///
/// The derived order is lexicographic on parts, so `(3) > (2,1) > (1,1,1)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidArgument(format!("{parts:?} is not a partition")));
        }
        Ok(Partition(parts))
    }

    /// Sorts and drops zeros.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// `(m)`, the one-row shape (empty for `m = 0`).
    pub fn row(m: usize) -> Self {
        Self::from_unsorted(vec![m])
    }

    /// `(1^k)`, the one-column shape.
    pub fn column(k: usize) -> Self {
        Partition(vec![1; k])
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Row `i` length, zero past the last row.
    pub fn part(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Self {
        let cols = self.part(0);
        Partition((0..cols).map(|c| self.0.iter().filter(|&&r| r > c).count()).collect())
    }

    pub fn multiplicity(&self, part: usize) -> usize {
        self.0.iter().filter(|&&r| r == part).count()
    }

    /// `z_λ = Π_i i^{m_i} m_i!`, the centralizer order of a permutation of
    /// cycle type `λ`.
    pub fn z(&self) -> u128 {
        let mut z = 1u128;
        let mut i = 0;
        while i < self.0.len() {
            let part = self.0[i];
            let m = self.multiplicity(part);
            z *= (part as u128).pow(m as u32) * (1..=m as u128).product::<u128>();
            i += m;
        }
        z
    }

    /// Number of standard Young tableaux of this shape (hook length formula).
    pub fn syt_count(&self) -> u128 {
        let conj = self.conjugate();
        let mut hooks = 1u128;
        for (i, &row) in self.0.iter().enumerate() {
            for j in 0..row {
                hooks *= (row - j + conj.part(j) - i - 1) as u128;
            }
        }
        (1..=self.size() as u128).product::<u128>() / hooks
    }

    /// Parses `(3,1)`; `()` is the empty partition.
    pub fn parse(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("expected (l1,l2,...), got {s:?}")))?;
        let parts = inner
            .split(',')
            .filter(|t| !t.trim().is_empty())
            .map(|t| t.trim().parse::<usize>().map_err(|e| Error::Parse(format!("{t:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(parts)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

/// All partitions of `n`, lexicographically decreasing: `(n)` first.
pub fn partitions(n: usize) -> Vec<Partition> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            cur.push(part);
            go(rest - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration() {
        let p4: Vec<String> = partitions(4).iter().map(ToString::to_string).collect();
        assert_eq!(p4, ["(4)", "(3,1)", "(2,2)", "(2,1,1)", "(1,1,1,1)"]);
        assert_eq!(partitions(0), vec![Partition::empty()]);
        let counts: Vec<usize> = (0..=8).map(|n| partitions(n).len()).collect();
        assert_eq!(counts, [1, 1, 2, 3, 5, 7, 11, 15, 22]);
    }

    #[test]
    fn statistics() {
        let l = Partition::new(vec![3, 1]).unwrap();
        assert_eq!(l.conjugate(), Partition::new(vec![2, 1, 1]).unwrap());
        assert_eq!(Partition::new(vec![2, 1]).unwrap().syt_count(), 2);
        assert_eq!(Partition::new(vec![3, 2]).unwrap().syt_count(), 5);
        assert_eq!(Partition::new(vec![2, 2, 1, 1]).unwrap().z(), 2 * 2 * 2 * 2);
        for n in 1..=7 {
            let fact: u128 = (1..=n as u128).product();
            let total: u128 = partitions(n).iter().map(|p| p.syt_count().pow(2)).sum();
            assert_eq!(total, fact);
            let class_sizes: u128 = partitions(n).iter().map(|p| fact / p.z()).sum();
            assert_eq!(class_sizes, fact);
        }
    }

    #[test]
    fn parsing() {
        assert_eq!(Partition::parse("(3,1)").unwrap().to_string(), "(3,1)");
        assert_eq!(Partition::parse("()").unwrap(), Partition::empty());
        assert!(Partition::parse("(1,3)").is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
    }
}
