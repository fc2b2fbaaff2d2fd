//! q-integers, q-factorials, Gaussian binomials, the two q-Stirling
//! triangles, derangement numbers and their q-analogues.
//!
//! Everything here keeps `q` symbolic; callers specialize with
//! [`QPoly::eval`] when they need a number.

mod qpoly;

use serde::Serialize;

pub use qpoly::QPoly;

use crate::error::{Error, Result};

/// `[m]_q = 1 + q + ... + q^{m-1}`; `[0]_q = 0`.
pub fn q_int(m: usize) -> QPoly {
    QPoly::new(vec![1; m])
}

/// `[m]!_q = [m]_q [m-1]_q ... [1]_q`.
pub fn q_factorial(m: usize) -> QPoly {
    (1..=m).map(q_int).product()
}

/// Gaussian binomial; zero when `k > n`.
pub fn q_binomial(n: usize, k: usize) -> QPoly {
    if k > n {
        return QPoly::zero();
    }
    // q-Pascal: [n,k] = [n-1,k-1] + q^k [n-1,k]
    let mut row = vec![QPoly::one()];
    for m in 1..=n {
        let mut next = vec![QPoly::zero(); m + 1];
        for (i, slot) in next.iter_mut().enumerate() {
            let left = if i > 0 { row[i - 1].clone() } else { QPoly::zero() };
            let right = if i < m { &QPoly::q_pow(i) * &row[i] } else { QPoly::zero() };
            *slot = left + right;
        }
        row = next;
    }
    row.swap_remove(k)
}

/// `[n]!_q / [k]!_q = [k+1]_q ... [n]_q` for `k <= n`.
fn q_falling_ratio(n: usize, k: usize) -> QPoly {
    (k + 1..=n).map(q_int).product()
}

pub fn factorial(n: usize) -> i128 {
    (1..=n as i128).product()
}

pub fn binomial(n: usize, k: usize) -> i128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1i128, |acc, i| acc * (n - i) as i128 / (i + 1) as i128)
}

/// Stirling numbers of the second kind by the two-term recurrence.
pub fn stirling2(n: usize, k: usize) -> i128 {
    let mut row = vec![1i128];
    for m in 1..=n {
        let mut next = vec![0i128; m + 1];
        for j in 1..=m {
            let prev = row.get(j - 1).copied().unwrap_or(0);
            let same = row.get(j).copied().unwrap_or(0);
            next[j] = prev + j as i128 * same;
        }
        row = next;
    }
    row.get(k).copied().unwrap_or(0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StirlingVariant {
    /// `S_q(n,k) = q^{k-1} S_q(n-1,k-1) + [k]_q S_q(n-1,k)`
    Plain,
    /// `S̃_q(n,k) = S̃_q(n-1,k-1) + [k]_q S̃_q(n-1,k)`
    Tilde,
}

/// Row `n` of a q-Stirling triangle, indices `0..=n`.
pub fn q_stirling_row(n: usize, variant: StirlingVariant) -> Vec<QPoly> {
    let mut row = vec![QPoly::one()];
    for m in 1..=n {
        let mut next = vec![QPoly::zero(); m + 1];
        for k in 1..=m {
            let prev = row.get(k - 1).cloned().unwrap_or_default();
            let prev = match variant {
                StirlingVariant::Plain => &QPoly::q_pow(k - 1) * &prev,
                StirlingVariant::Tilde => prev,
            };
            let same = row.get(k).map(|s| &q_int(k) * s).unwrap_or_default();
            next[k] = prev + same;
        }
        row = next;
    }
    row
}

pub fn q_stirling(n: usize, k: usize, variant: StirlingVariant) -> QPoly {
    q_stirling_row(n, variant).get(k).cloned().unwrap_or_default()
}

/// `d_n = Σ_k (-1)^k n!/k!`.
pub fn derangement_number(n: usize) -> i128 {
    (0..=n)
        .map(|k| {
            let term: i128 = (k + 1..=n).map(|i| i as i128).product();
            if k % 2 == 0 {
                term
            } else {
                -term
            }
        })
        .sum()
}

/// Wachs' q-derangement number `d_n(q) = Σ_k (-1)^k q^{C(k,2)} [n]!_q/[k]!_q`,
/// the major-index generating function of the derangements of `n`.
pub fn q_derangement(n: usize) -> QPoly {
    (0..=n)
        .map(|k| {
            let term = &QPoly::q_pow(k * k.saturating_sub(1) / 2) * &q_falling_ratio(n, k);
            if k % 2 == 0 {
                term
            } else {
                -&term
            }
        })
        .sum()
}

/// A polynomial in `t` whose coefficients are q-polynomials; index = power of t.
#[derive(Clone, Debug, PartialEq, Eq)]
struct TPoly(Vec<QPoly>);

impl TPoly {
    fn t_pow(n: usize) -> Self {
        let mut v = vec![QPoly::zero(); n + 1];
        v[n] = QPoly::one();
        TPoly(v)
    }

    /// `(t - c) · self`
    fn times_t_minus(&self, c: &QPoly) -> Self {
        let mut out = vec![QPoly::zero(); self.0.len() + 1];
        for (i, a) in self.0.iter().enumerate() {
            out[i + 1] = &out[i + 1] + a;
            out[i] = &out[i] - &(c * a);
        }
        TPoly(out).trimmed()
    }

    fn scaled(&self, c: &QPoly) -> Self {
        TPoly(self.0.iter().map(|a| a * c).collect()).trimmed()
    }

    fn add(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        let get = |p: &TPoly, i: usize| p.0.get(i).cloned().unwrap_or_default();
        TPoly((0..n).map(|i| get(self, i) + get(other, i)).collect()).trimmed()
    }

    fn trimmed(mut self) -> Self {
        while self.0.last().is_some_and(QPoly::is_zero) {
            self.0.pop();
        }
        self
    }
}

/// `(t)_{k,q} = t (t - [1]_q) ... (t - [k-1]_q)`; at `q = 1` these
/// coefficients reduce to the ordinary falling factorial.
fn q_falling_factorial(k: usize, classical: bool) -> TPoly {
    let mut p = TPoly(vec![QPoly::one()]);
    for i in 0..k {
        let root = if classical { QPoly::constant(i as i128) } else { q_int(i) };
        p = p.times_t_minus(&root);
    }
    p
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChangeOfBasisRow {
    pub n: usize,
    /// `t^n = Σ S(n,k) (t)_k`
    pub classical: bool,
    /// `t^n = Σ S̃_q(n,k) (t)_{k,q}`
    pub tilde: bool,
    /// `t^n = Σ S_q(n,k) q^{-C(k,2)} (t)_{k,q}`, checked after clearing
    /// denominators by `q^{C(n,2)}`.
    pub laurent: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChangeOfBasisReport {
    pub rows: Vec<ChangeOfBasisRow>,
    pub all_pass: bool,
}

/// Expands both sides of the three power-to-falling-factorial identities
/// as exact polynomials for every `n <= n_max`.
pub fn verify_change_of_basis(n_max: usize) -> Result<ChangeOfBasisReport> {
    if n_max > 8 {
        return Err(Error::GuardExceeded(format!("change of basis limited to n <= 8, got {n_max}")));
    }
    let mut rows = Vec::new();
    for n in 0..=n_max {
        let lhs = TPoly::t_pow(n);
        let plain = q_stirling_row(n, StirlingVariant::Plain);
        let tilde = q_stirling_row(n, StirlingVariant::Tilde);

        let classical = (0..=n).fold(TPoly(vec![]), |acc, k| {
            acc.add(&q_falling_factorial(k, true).scaled(&QPoly::constant(stirling2(n, k))))
        });
        let tilde_side =
            (0..=n).fold(TPoly(vec![]), |acc, k| acc.add(&q_falling_factorial(k, false).scaled(&tilde[k])));
        let shift = n * n.saturating_sub(1) / 2;
        let cleared_lhs = lhs.scaled(&QPoly::q_pow(shift));
        let laurent_side = (0..=n).fold(TPoly(vec![]), |acc, k| {
            let bump = QPoly::q_pow(shift - k * k.saturating_sub(1) / 2);
            acc.add(&q_falling_factorial(k, false).scaled(&(&plain[k] * &bump)))
        });

        rows.push(ChangeOfBasisRow {
            n,
            classical: classical == lhs,
            tilde: tilde_side == lhs,
            laurent: laurent_side == cleared_lhs,
        });
    }
    let all_pass = rows.iter().all(|r| r.classical && r.tilde && r.laurent);
    Ok(ChangeOfBasisReport { rows, all_pass })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{all_permutations, is_derangement, maj};

    /// Set partitions of {0..n} into exactly k blocks, by brute force.
    fn count_set_partitions(n: usize, k: usize) -> i128 {
        fn go(i: usize, n: usize, blocks: usize, k: usize) -> i128 {
            if i == n {
                return (blocks == k) as i128;
            }
            let mut total = 0;
            // join one of the existing blocks, or open a new one
            total += blocks as i128 * go(i + 1, n, blocks, k);
            if blocks < k {
                total += go(i + 1, n, blocks + 1, k);
            }
            total
        }
        go(0, n, 0, k)
    }

    #[test]
    fn q_integers_and_binomials() {
        assert_eq!(q_int(3).eval(2), 7);
        assert_eq!(q_int(0), QPoly::zero());
        for n in 0..7 {
            assert_eq!(q_binomial(n, 0), QPoly::one());
            for k in 0..=n {
                let b = q_binomial(n, k);
                assert!(b.has_nonnegative_coeffs());
                assert_eq!(b, q_binomial(n, n - k));
                assert_eq!(b.eval(1), binomial(n, k));
                let ratio = q_factorial(n).div_exact(&(&q_factorial(k) * &q_factorial(n - k))).unwrap();
                assert_eq!(b, ratio);
            }
        }
        assert_eq!(q_binomial(4, 2).eval(2), 35);
        assert_eq!(q_binomial(2, 3), QPoly::zero());
    }

    #[test]
    fn stirling_boundaries() {
        for n in 1..=8 {
            assert_eq!(stirling2(n, 1), 1);
            assert_eq!(q_stirling(n, 1, StirlingVariant::Plain), QPoly::one());
            assert_eq!(q_stirling(n, 1, StirlingVariant::Tilde), QPoly::one());
            assert_eq!(stirling2(n, n), 1);
            assert_eq!(q_stirling(n, n, StirlingVariant::Tilde), QPoly::one());
            assert_eq!(q_stirling(n, n, StirlingVariant::Plain), QPoly::q_pow(n * (n - 1) / 2));
            assert_eq!(stirling2(n, 0), 0);
            assert_eq!(stirling2(0, n), 0);
        }
        assert_eq!(stirling2(0, 0), 1);
        assert_eq!(q_stirling(3, 3, StirlingVariant::Plain), QPoly::q_pow(3));
        assert_eq!(q_stirling(3, 2, StirlingVariant::Tilde), QPoly::new(vec![2, 1]));
    }

    #[test]
    fn stirling_matches_set_partition_count() {
        assert_eq!(count_set_partitions(4, 2), 7);
        for n in 0..=7 {
            for k in 0..=n {
                assert_eq!(stirling2(n, k), count_set_partitions(n, k), "S({n},{k})");
            }
        }
    }

    #[test]
    fn q_stirling_relation_and_specialization() {
        for n in 0..=8 {
            for k in 0..=n {
                let plain = q_stirling(n, k, StirlingVariant::Plain);
                let tilde = q_stirling(n, k, StirlingVariant::Tilde);
                assert_eq!(plain, &QPoly::q_pow(k * k.saturating_sub(1) / 2) * &tilde);
                assert_eq!(plain.eval(1), stirling2(n, k));
                assert_eq!(tilde.eval(1), stirling2(n, k));
            }
        }
    }

    #[test]
    fn change_of_basis_identities() {
        let report = verify_change_of_basis(8).unwrap();
        assert!(report.all_pass, "{report:?}");
        assert_eq!(report.rows.len(), 9);
        assert!(verify_change_of_basis(9).is_err());
    }

    #[test]
    fn derangements() {
        assert_eq!(derangement_number(0), 1);
        assert_eq!(derangement_number(1), 0);
        assert_eq!(q_derangement(3), QPoly::new(vec![0, 1, 1]));
        for n in 0..=7 {
            let perms = all_permutations(n);
            let brute = perms.iter().filter(|w| is_derangement(w)).count() as i128;
            assert_eq!(derangement_number(n), brute);
            let dq = q_derangement(n);
            assert!(dq.has_nonnegative_coeffs());
            assert_eq!(dq.eval(1), brute);
        }
        assert_eq!(derangement_number(4), 9);
    }

    #[test]
    fn q_derangement_is_maj_generating_function() {
        for n in 0..=6 {
            let perms = all_permutations(n);
            let by_derangement: QPoly = perms.iter().filter(|w| is_derangement(w)).map(|w| QPoly::q_pow(maj(w))).sum();
            assert_eq!(q_derangement(n), by_derangement, "n={n}");
            let by_desarrangement: QPoly = perms
                .iter()
                .filter(|w| crate::perm::is_desarrangement(w))
                .map(|w| QPoly::q_pow(maj(&crate::perm::inverse(w))))
                .sum();
            assert_eq!(q_derangement(n), by_desarrangement, "n={n}");
        }
    }

    #[test]
    fn factorial_splits_over_derangements() {
        for n in 0..=8 {
            let sum: i128 = (0..=n).map(|j| derangement_number(n - j) * binomial(n, j)).sum();
            assert_eq!(sum, factorial(n));
        }
        for n in 0..=6 {
            let sum: QPoly = (0..=n).map(|j| &q_derangement(n - j) * &q_binomial(n, j)).sum();
            assert_eq!(sum, q_factorial(n));
        }
    }
}
