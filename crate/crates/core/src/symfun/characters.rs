use std::collections::BTreeMap;

use serde::Serialize;

use super::partition::{partitions, Partition};
use super::schur::SchurVector;
use crate::error::{Error, Result};
use crate::exactalg::Rat;

/// A class function on `S_n`: one rational value per cycle type.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassFunction {
    pub grade: usize,
    /// Keyed by the printed cycle type, e.g. `"(2,1)"`, for JSON output.
    #[serde(serialize_with = "serialize_values")]
    values: BTreeMap<Partition, Rat>,
}

fn serialize_values<S: serde::Serializer>(
    values: &BTreeMap<Partition, Rat>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeMap;
    let mut map = s.serialize_map(Some(values.len()))?;
    for (k, v) in values.iter().rev() {
        map.serialize_entry(&k.to_string(), v)?;
    }
    map.end()
}

impl ClassFunction {
    /// Every cycle type of `n` must be present.
    pub fn new(grade: usize, values: BTreeMap<Partition, Rat>) -> Result<Self> {
        let expected = partitions(grade);
        if values.len() != expected.len() || expected.iter().any(|p| !values.contains_key(p)) {
            return Err(Error::InvalidArgument(format!(
                "a class function on S_{grade} needs one value per partition of {grade}"
            )));
        }
        Ok(ClassFunction { grade, values })
    }

    pub fn from_fn(grade: usize, f: impl Fn(&Partition) -> Rat) -> Self {
        ClassFunction { grade, values: partitions(grade).into_iter().map(|p| (p.clone(), f(&p))).collect() }
    }

    pub fn value(&self, mu: &Partition) -> Option<&Rat> {
        self.values.get(mu)
    }

    pub fn values(&self) -> impl Iterator<Item = (&Partition, &Rat)> {
        self.values.iter().rev()
    }

    /// `⟨f, g⟩ = Σ_μ f(μ) g(μ) / z_μ` (both real-valued).
    pub fn inner_product(&self, other: &ClassFunction) -> Result<Rat> {
        if self.grade != other.grade {
            return Err(Error::DimensionMismatch { left: self.grade, right: other.grade });
        }
        Ok(self.values.iter().map(|(mu, a)| a * &other.values[mu] / Rat::from_bigint(mu.z().into())).sum())
    }
}

/// Irreducible character `χ^λ(μ)` by the Murnaghan–Nakayama rule, on
/// beta-sets: removing a rim hook of length `r` moves one bead from `b` to
/// `b - r`, with sign `(-1)^{beads strictly between}`.
pub fn mn_character(lambda: &Partition, mu: &Partition) -> Result<i64> {
    if lambda.size() != mu.size() {
        return Err(Error::DimensionMismatch { left: lambda.size(), right: mu.size() });
    }
    let len = lambda.len();
    let beta: Vec<usize> = (0..len).map(|i| lambda.part(i) + len - 1 - i).collect();
    Ok(mn_beta(beta, mu.parts()))
}

fn mn_beta(beta: Vec<usize>, hooks: &[usize]) -> i64 {
    let Some((&r, rest)) = hooks.split_first() else {
        return 1;
    };
    let mut total = 0;
    for (k, &b) in beta.iter().enumerate() {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let target = b - r;
        let between = beta.iter().filter(|&&c| c > target && c < b).count();
        let mut next = beta.clone();
        next[k] = target;
        let sign = if between % 2 == 0 { 1 } else { -1 };
        total += sign * mn_beta(next, rest);
    }
    total
}

/// `χ^λ` as a class function.
pub fn irreducible_character(lambda: &Partition) -> ClassFunction {
    ClassFunction::from_fn(lambda.size(), |mu| Rat::from(mn_character(lambda, mu).expect("sizes agree")))
}

/// Largest `n` for which class functions are decomposed.
pub const CLASSFN_GUARD: usize = 7;

/// Frobenius image: the coefficient of `s_λ` is `⟨f, χ^λ⟩`, which must be
/// an integer.
pub fn classfn_to_schur(f: &ClassFunction) -> Result<SchurVector> {
    if f.grade > CLASSFN_GUARD {
        return Err(Error::GuardExceeded(format!("class functions limited to n ≤ 7, got {}", f.grade)));
    }
    let mut terms = Vec::new();
    for lambda in partitions(f.grade) {
        let c = f.inner_product(&irreducible_character(&lambda))?;
        let Some(c) = c.to_i64().filter(|_| c.is_integer()) else {
            return Err(Error::NotVirtualCharacter { partition: lambda.to_string(), coeff: c.to_string() });
        };
        terms.push((lambda, c));
    }
    SchurVector::from_terms(f.grade, terms)
}
