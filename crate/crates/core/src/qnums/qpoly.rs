use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Integer polynomial in `q`. Coefficients are stored densely by exponent
/// with trailing zeros trimmed, so the zero polynomial has no coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QPoly {
    coeffs: Vec<i128>,
}

impl QPoly {
    pub fn new(mut coeffs: Vec<i128>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i128) -> Self {
        Self::new(vec![c])
    }

    /// `c · q^e`
    pub fn monomial(c: i128, e: usize) -> Self {
        let mut v = vec![0; e + 1];
        v[e] = c;
        Self::new(v)
    }

    pub fn q_pow(e: usize) -> Self {
        Self::monomial(1, e)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `q^e`.
    pub fn coeff(&self, e: usize) -> i128 {
        self.coeffs.get(e).copied().unwrap_or(0)
    }

    pub fn coeffs(&self) -> &[i128] {
        &self.coeffs
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.coeffs.iter().all(|&c| c >= 0)
    }

    pub fn scale(&self, c: i128) -> Self {
        Self::new(self.coeffs.iter().map(|&x| checked(x.checked_mul(c))).collect())
    }

    /// Evaluates at an integer point; panics on `i128` overflow.
    pub fn eval(&self, q: i128) -> i128 {
        self.coeffs.iter().rev().fold(0i128, |acc, &c| checked(acc.checked_mul(q).and_then(|v| v.checked_add(c))))
    }

    pub fn eval_big(&self, q: i64) -> BigInt {
        let q = BigInt::from(q);
        self.coeffs.iter().rev().fold(BigInt::from(0), |acc, &c| acc * &q + BigInt::from(c))
    }

    /// Divides by `q^e` when every exponent is at least `e`.
    pub fn div_q_pow(&self, e: usize) -> Option<Self> {
        if self.coeffs.iter().take(e).any(|&c| c != 0) {
            return None;
        }
        Some(Self::new(self.coeffs.iter().skip(e).copied().collect()))
    }

    /// Exact division; `None` if `divisor` is zero or does not divide.
    pub fn div_exact(&self, divisor: &QPoly) -> Option<Self> {
        let dd = divisor.degree()?;
        let lead = divisor.coeffs[dd];
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return self.is_zero().then(QPoly::zero);
        }
        let mut quot = vec![0i128; rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let top = rem[i + dd];
            if top % lead != 0 {
                return None;
            }
            let c = top / lead;
            quot[i] = c;
            for (k, &d) in divisor.coeffs.iter().enumerate() {
                rem[i + k] = checked(rem[i + k].checked_sub(checked(c.checked_mul(d))));
            }
        }
        rem.iter().all(|&c| c == 0).then(|| QPoly::new(quot))
    }

    fn binary(&self, other: &Self, f: impl Fn(i128, i128) -> Option<i128>) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| checked(f(self.coeff(i), other.coeff(i)))).collect())
    }
}

fn checked(v: Option<i128>) -> i128 {
    v.expect("q-polynomial coefficient overflow")
}

impl Add for &QPoly {
    type Output = QPoly;
    fn add(self, rhs: &QPoly) -> QPoly {
        self.binary(rhs, i128::checked_add)
    }
}

impl Sub for &QPoly {
    type Output = QPoly;
    fn sub(self, rhs: &QPoly) -> QPoly {
        self.binary(rhs, i128::checked_sub)
    }
}

impl Mul for &QPoly {
    type Output = QPoly;
    fn mul(self, rhs: &QPoly) -> QPoly {
        if self.is_zero() || rhs.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![0i128; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = checked(out[i + j].checked_add(checked(a.checked_mul(b))));
            }
        }
        QPoly::new(out)
    }
}

impl Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        self.scale(-1)
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for QPoly {
            type Output = QPoly;
            fn $m(self, rhs: QPoly) -> QPoly { (&self).$m(&rhs) }
        }
        impl $tr<&QPoly> for QPoly {
            type Output = QPoly;
            fn $m(self, rhs: &QPoly) -> QPoly { (&self).$m(rhs) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl std::iter::Sum for QPoly {
    fn sum<I: Iterator<Item = QPoly>>(iter: I) -> QPoly {
        iter.fold(QPoly::zero(), |a, b| a + b)
    }
}

impl std::iter::Product for QPoly {
    fn product<I: Iterator<Item = QPoly>>(iter: I) -> QPoly {
        iter.fold(QPoly::one(), |a, b| a * b)
    }
}

impl From<i128> for QPoly {
    fn from(c: i128) -> Self {
        QPoly::constant(c)
    }
}

impl fmt::Display for QPoly {
    /// `c0 + c1*q + c2*q^2 + ...`, zero terms omitted, unit coefficients
    /// kept as `q` rather than `1*q`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let mag = c.unsigned_abs();
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if c < 0 { " - " } else { " + " })?;
            }
            first = false;
            match (e, mag) {
                (0, m) => write!(f, "{m}")?,
                (1, 1) => write!(f, "q")?,
                (1, m) => write!(f, "{m}*q")?,
                (e, 1) => write!(f, "q^{e}")?,
                (e, m) => write!(f, "{m}*q^{e}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for QPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let map: BTreeMap<String, i128> =
            self.coeffs.iter().enumerate().filter(|(_, c)| **c != 0).map(|(e, c)| (e.to_string(), *c)).collect();
        map.serialize(s)
    }
}

impl<'de> Deserialize<'de> for QPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let map = BTreeMap::<String, i128>::deserialize(d)?;
        let mut coeffs = Vec::new();
        for (k, c) in map {
            let e: usize = k.parse().map_err(serde::de::Error::custom)?;
            if coeffs.len() <= e {
                coeffs.resize(e + 1, 0);
            }
            coeffs[e] += c;
        }
        Ok(QPoly::new(coeffs))
    }
}
