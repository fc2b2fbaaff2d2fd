use std::fmt;

use serde::{Serialize, Serializer};

use super::{Monoid, MonoidKind};
use crate::error::{Error, Result};
use crate::fqlinalg::{all_vectors, check_prime, FlagChain, Subspace};

/// A sequence of linearly independent vectors of `F_p^n`: an element of
/// Brown's monoid, which covers the flag monoid.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VecSeq {
    n: usize,
    p: u32,
    vectors: Vec<Vec<u32>>,
}

impl VecSeq {
    pub fn new(n: usize, p: u32, vectors: Vec<Vec<u32>>) -> Result<Self> {
        check_prime(p)?;
        let mut span = Subspace::zero(n, p);
        for v in &vectors {
            if v.len() != n {
                return Err(Error::AmbientMismatch(format!("vector of length {} in F_p^{n}", v.len())));
            }
            if span.contains_vector(v) {
                return Err(Error::InvalidArgument("vectors are linearly dependent".into()));
            }
            span = span.sum_unchecked(&Subspace::line(n, p, v));
        }
        Ok(VecSeq { n, p, vectors })
    }

    pub fn vectors(&self) -> &[Vec<u32>] {
        &self.vectors
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// The flag of partial spans `(⟨v_1⟩, ⟨v_1, v_2⟩, …)`.
    pub fn to_flag(&self) -> FlagChain {
        let mut span = Subspace::zero(self.n, self.p);
        let chain = self
            .vectors
            .iter()
            .map(|v| {
                span = span.sum_unchecked(&Subspace::line(self.n, self.p, v));
                span.clone()
            })
            .collect();
        FlagChain::from_chain_unchecked(self.n, self.p, chain)
    }
}

impl fmt::Display for VecSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.vectors.iter().map(|v| v.iter().map(u32::to_string).collect::<Vec<_>>().join(",")).collect();
        write!(f, "[{}]", parts.join(";"))
    }
}

impl fmt::Debug for VecSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for VecSeq {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Brown's monoid of independent vector sequences; the product appends the
/// vectors of the right factor that are not in the span so far.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VecSeqMonoid {
    n: usize,
    p: u32,
}

impl VecSeqMonoid {
    pub fn new(n: usize, p: u32) -> Result<Self> {
        check_prime(p)?;
        Ok(VecSeqMonoid { n, p })
    }
}

impl Monoid for VecSeqMonoid {
    type Elem = VecSeq;

    fn kind(&self) -> MonoidKind {
        MonoidKind::VecSeq
    }

    fn ambient(&self) -> usize {
        self.n
    }

    fn modulus(&self) -> Option<u32> {
        Some(self.p)
    }

    fn rank(&self) -> usize {
        self.n
    }

    fn identity(&self) -> VecSeq {
        VecSeq { n: self.n, p: self.p, vectors: Vec::new() }
    }

    fn mul(&self, a: &VecSeq, b: &VecSeq) -> VecSeq {
        let mut span = Subspace::from_rows(self.n, self.p, &a.vectors).expect("same ambient space");
        let mut vectors = a.vectors.clone();
        for v in &b.vectors {
            if !span.contains_vector(v) {
                span = span.sum_unchecked(&Subspace::line(self.n, self.p, v));
                vectors.push(v.clone());
            }
        }
        VecSeq { n: self.n, p: self.p, vectors }
    }

    fn length(&self, a: &VecSeq) -> usize {
        a.len()
    }

    fn stratum(&self, len: usize) -> Vec<VecSeq> {
        let vecs = all_vectors(self.n, self.p);
        let mut partial = vec![(Vec::<Vec<u32>>::new(), Subspace::zero(self.n, self.p))];
        for _ in 0..len {
            partial = partial
                .into_iter()
                .flat_map(|(seq, span)| {
                    vecs.iter()
                        .filter(|v| !span.contains_vector(v))
                        .map(|v| {
                            let mut s = seq.clone();
                            s.push(v.clone());
                            (s, span.sum_unchecked(&Subspace::line(self.n, self.p, v)))
                        })
                        .collect::<Vec<_>>()
                })
                .collect();
        }
        partial.into_iter().map(|(vectors, _)| VecSeq { n: self.n, p: self.p, vectors }).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn products_and_flags() {
        let m = VecSeqMonoid::new(2, 3).unwrap();
        let a = VecSeq::new(2, 3, vec![vec![1, 2]]).unwrap();
        let b = VecSeq::new(2, 3, vec![vec![2, 1], vec![1, 0]]).unwrap();
        // (2,1) = 2·(1,2) mod 3 is dropped
        assert_eq!(m.mul(&a, &b).vectors(), &[vec![1, 2], vec![1, 0]]);
        assert_eq!(m.mul(&a, &b).to_flag().len(), 2);
        assert!(VecSeq::new(2, 3, vec![vec![1, 1], vec![2, 2]]).is_err());
        // (3^2 - 1)(3^2 - 3) ordered bases
        assert_eq!(m.stratum(2).len(), 48);
    }
}
