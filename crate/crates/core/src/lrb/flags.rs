use super::{Monoid, MonoidKind};
use crate::error::{Error, Result};
use crate::fqlinalg::{check_prime, enumerate_chains_above, is_invertible, FlagChain, FpMatrix, Subspace};

/// `A · B = (A_1, …, A_ℓ, A_ℓ + B_1, A_ℓ + B_2, …)` with repeats removed.
pub fn mul_flag(a: &FlagChain, b: &FlagChain) -> Result<FlagChain> {
    if a.ambient_dim() != b.ambient_dim() || a.modulus() != b.modulus() {
        return Err(Error::AmbientMismatch(format!(
            "flags in F_{}^{} and F_{}^{}",
            a.modulus(),
            a.ambient_dim(),
            b.modulus(),
            b.ambient_dim()
        )));
    }
    Ok(mul_flag_unchecked(a, b))
}

fn mul_flag_unchecked(a: &FlagChain, b: &FlagChain) -> FlagChain {
    let Some(top) = a.top() else {
        return b.clone();
    };
    let mut chain = a.members().to_vec();
    let mut last = top.clone();
    for s in b.members() {
        let next = last.sum_unchecked(s);
        if next != last {
            chain.push(next.clone());
            last = next;
        }
    }
    FlagChain::from_chain_unchecked(a.ambient_dim(), a.modulus(), chain)
}

/// Memberwise image `g(A)`; `g` must be invertible.
pub fn act_gl(g: &FpMatrix, a: &FlagChain) -> Result<FlagChain> {
    let (n, p) = (a.ambient_dim(), a.modulus());
    if g.len() != n || g.iter().any(|r| r.len() != n) {
        return Err(Error::AmbientMismatch(format!("matrix is not {n}×{n}")));
    }
    if !is_invertible(g, p) {
        return Err(Error::InvalidArgument("singular matrix cannot act on flags".into()));
    }
    let chain = a.members().iter().map(|s| s.apply(g)).collect();
    Ok(FlagChain::from_chain_unchecked(n, p, chain))
}

/// The flag monoid `ℱ_n^{(q)}` over `F_p`, or more generally the monoid of
/// chains strictly above a fixed subspace `U`, which is `ℱ^{(q)}` of the
/// quotient `V/U` without ever forming the quotient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagMonoid {
    n: usize,
    p: u32,
    base: Subspace,
}

impl FlagMonoid {
    pub fn new(n: usize, p: u32) -> Result<Self> {
        check_prime(p)?;
        Ok(FlagMonoid { n, p, base: Subspace::zero(n, p) })
    }

    /// Flags of `V/U`, as chains of subspaces of `V` containing `U`.
    pub fn above(base: Subspace) -> Self {
        FlagMonoid { n: base.ambient_dim(), p: base.modulus(), base }
    }

    pub fn base(&self) -> &Subspace {
        &self.base
    }
}

impl Monoid for FlagMonoid {
    type Elem = FlagChain;

    fn kind(&self) -> MonoidKind {
        MonoidKind::Flags
    }

    fn ambient(&self) -> usize {
        self.n
    }

    fn modulus(&self) -> Option<u32> {
        Some(self.p)
    }

    fn rank(&self) -> usize {
        self.n - self.base.dim()
    }

    fn identity(&self) -> FlagChain {
        FlagChain::empty(self.n, self.p)
    }

    fn mul(&self, a: &FlagChain, b: &FlagChain) -> FlagChain {
        mul_flag_unchecked(a, b)
    }

    fn length(&self, a: &FlagChain) -> usize {
        a.len()
    }

    fn stratum(&self, len: usize) -> Vec<FlagChain> {
        if len > self.rank() {
            return Vec::new();
        }
        enumerate_chains_above(&self.base, len).expect("length checked against rank")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fqlinalg::random_invertible;

    fn sub(rows: &[&[u32]]) -> Subspace {
        let rows: Vec<Vec<u32>> = rows.iter().map(|r| r.to_vec()).collect();
        Subspace::from_rows(3, 2, &rows).unwrap()
    }

    fn flag(members: Vec<Subspace>) -> FlagChain {
        FlagChain::new(3, 2, members).unwrap()
    }

    #[test]
    fn products() {
        let l1 = sub(&[&[1, 0, 0]]);
        let l2 = sub(&[&[0, 1, 0]]);
        let l3 = sub(&[&[0, 0, 1]]);
        let a = flag(vec![l1.clone()]);
        assert_eq!(mul_flag(&a, &a).unwrap(), a);
        let b = flag(vec![l2.clone()]);
        assert_eq!(mul_flag(&a, &b).unwrap(), flag(vec![l1.clone(), l1.sum(&l2).unwrap()]));
        let c = flag(vec![l3.clone()]);
        let d = flag(vec![l1.clone(), l1.sum(&l2).unwrap()]);
        let expect = flag(vec![l3.clone(), l1.sum(&l3).unwrap(), Subspace::full(3, 2)]);
        assert_eq!(mul_flag(&c, &d).unwrap(), expect);
        let other = FlagChain::empty(2, 2);
        assert!(mul_flag(&a, &other).is_err());
    }

    #[test]
    fn gl_action() {
        let m = FlagMonoid::new(3, 2).unwrap();
        let id = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]];
        for f in m.elements() {
            assert_eq!(act_gl(&id, &f).unwrap(), f);
        }
        let g = random_invertible(3, 2, 3).unwrap();
        assert_eq!(act_gl(&g, &m.identity()).unwrap(), m.identity());
        let singular = vec![vec![1, 0, 0], vec![1, 0, 0], vec![0, 0, 1]];
        assert!(act_gl(&singular, &m.identity()).is_err());
    }

    #[test]
    fn sizes() {
        assert_eq!(FlagMonoid::new(2, 2).unwrap().elements().len(), 7);
        let above = FlagMonoid::above(sub(&[&[0, 1, 1]]));
        assert_eq!(above.rank(), 2);
        assert_eq!(above.stratum(2).len(), 3);
    }
}
