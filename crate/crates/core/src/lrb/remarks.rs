//! The quotient monoids `ℱ̄_n`, `ℱ̄_{n,q}` (identify each chamber with its
//! prefix of length `n-1`) and Brown's covering monoid of independent
//! vector sequences, checked against their orbit-sum multiplication rules.

use std::collections::BTreeMap;

use serde::Serialize;

use super::{AlgebraElement, FlagMonoid, InjWord, Monoid, VecSeqMonoid, WordMonoid};
use crate::error::{Error, Result};
use crate::exactalg::Rat;
use crate::fqlinalg::{check_prime, FlagChain};
use crate::qnums::q_int;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RemarkCheck {
    pub name: String,
    pub ell: usize,
    /// Orbit-sum coefficients, lowest length first.
    pub expected: Vec<Rat>,
    pub actual: Vec<Rat>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RemarkReport {
    pub n: usize,
    pub q: Option<u32>,
    pub checks: Vec<RemarkCheck>,
    pub all_pass: bool,
}

/// Runs the bar-quotient check for words, and when `p` is given also the
/// bar-quotient check for flags, Brown's `y · y_ℓ` rule, and the fiber
/// count of the covering map to flags. The flag checks share the
/// vector-sequence size guard `n ≤ 3`.
pub fn verify_remark_monoids(n: usize, p: Option<u32>) -> Result<RemarkReport> {
    if n == 0 {
        return Err(Error::InvalidArgument("the quotient monoids need n ≥ 1".into()));
    }
    if n > 5 {
        return Err(Error::GuardExceeded(format!("quotient monoids are limited to n ≤ 5, got {n}")));
    }
    let mut checks = bar_checks(&WordMonoid::new(n), "bar words", |l| Rat::from(l), |_| Rat::one(), Rat::from(n))?;
    if let Some(p) = p {
        check_prime(p)?;
        if n > 3 {
            return Err(Error::GuardExceeded(format!("the vector-sequence monoid is limited to n ≤ 3, got {n}")));
        }
        let pi = p as i128;
        checks.extend(bar_checks(
            &FlagMonoid::new(n, p)?,
            "bar flags",
            |l| Rat::from(q_int(l).eval(pi)),
            |l| Rat::from(pi.pow(l as u32)),
            Rat::from(q_int(n).eval(pi)),
        )?);
        checks.extend(brown_checks(n, p)?);
    }
    let all_pass = checks.iter().all(|c| c.pass);
    Ok(RemarkReport { n, q: p, checks, all_pass })
}

/// Elements of the bar quotient, as the representative of length `< n`.
trait Prefix: Monoid {
    fn truncate(&self, a: &Self::Elem, len: usize) -> Self::Elem;
}

impl Prefix for WordMonoid {
    fn truncate(&self, a: &InjWord, len: usize) -> InjWord {
        InjWord::new(a.letters()[..len.min(a.len())].to_vec()).expect("prefix of an injective word")
    }
}

impl Prefix for FlagMonoid {
    fn truncate(&self, a: &FlagChain, len: usize) -> FlagChain {
        let keep = a.members()[..len.min(a.len())].to_vec();
        FlagChain::from_chain_unchecked(a.ambient_dim(), a.modulus(), keep)
    }
}

/// `x̄ · x̄_ℓ = diag(ℓ) x̄_ℓ + sub(ℓ) x̄_{ℓ+1}` for `ℓ < n-1`, and
/// `top · x̄_{n-1}` for `ℓ = n-1`.
fn bar_checks<M: Prefix>(
    m: &M,
    name: &str,
    diag: impl Fn(usize) -> Rat,
    sub: impl Fn(usize) -> Rat,
    top: Rat,
) -> Result<Vec<RemarkCheck>> {
    let n = m.rank();
    let bar = |e: &M::Elem| m.truncate(e, n - 1);
    let sizes: Vec<usize> = (0..n).map(|l| m.stratum(l).len()).collect();
    let x = AlgebraElement::orbit_sum(m, 1);
    (0..n)
        .map(|l| {
            let product = x.mul(m, &AlgebraElement::orbit_sum(m, l)).map_elems(bar);
            let actual = product.orbit_coefficients(&sizes, |e| m.length(e))?;
            let mut expected = vec![Rat::zero(); n];
            if l + 1 < n {
                expected[l] = diag(l);
                expected[l + 1] = sub(l);
            } else {
                expected[l] = top.clone();
            }
            Ok(RemarkCheck { name: name.into(), ell: l, pass: actual == expected, expected, actual })
        })
        .collect()
}

/// `y · y_ℓ = (p^ℓ − 1) y_ℓ + y_{ℓ+1}` and the fiber count
/// `(p−1)^ℓ p^{C(ℓ,2)}` of the map to flags.
fn brown_checks(n: usize, p: u32) -> Result<Vec<RemarkCheck>> {
    let m = VecSeqMonoid::new(n, p)?;
    let pi = p as i128;
    let strata: Vec<_> = (0..=n).map(|l| m.stratum(l)).collect();
    let sizes: Vec<usize> = strata.iter().map(Vec::len).collect();
    let y = AlgebraElement::sum_of(strata[1].iter().cloned());
    let mut checks = Vec::new();
    for l in 0..=n {
        let product = y.mul(&m, &AlgebraElement::sum_of(strata[l].iter().cloned()));
        let actual = product.orbit_coefficients(&sizes, |e| e.len())?;
        let mut expected = vec![Rat::zero(); n + 1];
        expected[l] = Rat::from(pi.pow(l as u32) - 1);
        if l < n {
            expected[l + 1] = Rat::one();
        }
        checks.push(RemarkCheck { name: "brown y".into(), ell: l, pass: actual == expected, expected, actual });
    }
    let flags = FlagMonoid::new(n, p)?;
    for (l, stratum) in strata.iter().enumerate() {
        let mut fibers: BTreeMap<FlagChain, usize> = BTreeMap::new();
        for s in stratum {
            *fibers.entry(s.to_flag()).or_default() += 1;
        }
        let flag_count = flags.stratum(l).len();
        let expect = (pi - 1).pow(l as u32) * pi.pow((l * l.saturating_sub(1) / 2) as u32);
        let counts: Vec<i128> = fibers.values().map(|&c| c as i128).collect();
        let uniform = counts.iter().all(|&c| c == expect);
        checks.push(RemarkCheck {
            name: "fiber count".into(),
            ell: l,
            expected: vec![Rat::from(expect), Rat::from(flag_count)],
            actual: vec![
                Rat::from(if uniform { expect } else { counts.iter().copied().max().unwrap_or(0) }),
                Rat::from(fibers.len()),
            ],
            pass: uniform && fibers.len() == flag_count,
        });
    }
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_quotients() {
        for n in 1..=5 {
            let report = verify_remark_monoids(n, None).unwrap();
            assert!(report.all_pass, "{report:?}");
            assert_eq!(report.checks.len(), n);
        }
        let r = verify_remark_monoids(3, None).unwrap();
        let last = r.checks.last().unwrap();
        assert_eq!(last.ell, 2);
        assert_eq!(last.actual, vec![Rat::zero(), Rat::zero(), Rat::from(3)]);
    }

    #[test]
    fn flag_quotients_and_brown_monoid() {
        for n in 1..=3 {
            let report = verify_remark_monoids(n, Some(2)).unwrap();
            assert!(report.all_pass, "{report:?}");
        }
        let r = verify_remark_monoids(2, Some(2)).unwrap();
        let y1 = r.checks.iter().find(|c| c.name == "brown y" && c.ell == 1).unwrap();
        assert_eq!(y1.actual, vec![Rat::zero(), Rat::one(), Rat::one()]);
        let fiber = r.checks.iter().find(|c| c.name == "fiber count" && c.ell == 2).unwrap();
        assert_eq!(fiber.actual[0], Rat::from(2));
        assert!(verify_remark_monoids(2, Some(3)).unwrap().all_pass);
    }

    #[test]
    fn guards() {
        assert!(matches!(verify_remark_monoids(6, None), Err(Error::GuardExceeded(_))));
        assert!(matches!(verify_remark_monoids(4, Some(2)), Err(Error::GuardExceeded(_))));
        assert!(verify_remark_monoids(2, Some(4)).is_err());
    }
}
