use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use super::{Basis, Monoid};
use crate::error::{Error, Result};
use crate::exactalg::Rat;

/// A finitely supported rational combination of monoid elements.
#[derive(Clone, PartialEq, Eq)]
pub struct AlgebraElement<E: Ord> {
    terms: BTreeMap<E, Rat>,
}

impl<E: Ord + Clone> Default for AlgebraElement<E> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<E: Ord + Clone> AlgebraElement<E> {
    pub fn zero() -> Self {
        AlgebraElement { terms: BTreeMap::new() }
    }

    pub fn basis_elem(e: E) -> Self {
        Self::from_terms([(e, Rat::one())])
    }

    /// Sums repeated elements and drops zero coefficients.
    pub fn from_terms<I: IntoIterator<Item = (E, Rat)>>(terms: I) -> Self {
        let mut out = Self::zero();
        for (e, c) in terms {
            out.add_term(e, &c);
        }
        out
    }

    /// Sum of the given elements, each with coefficient 1.
    pub fn sum_of<I: IntoIterator<Item = E>>(elems: I) -> Self {
        Self::from_terms(elems.into_iter().map(|e| (e, Rat::one())))
    }

    /// The orbit sum `x_ℓ`: every length-`ℓ` element with coefficient 1.
    pub fn orbit_sum<M: Monoid<Elem = E>>(m: &M, len: usize) -> Self {
        Self::sum_of(m.stratum(len))
    }

    pub fn add_term(&mut self, e: E, c: &Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            Entry::Vacant(slot) => {
                slot.insert(c.clone());
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> &BTreeMap<E, Rat> {
        &self.terms
    }

    pub fn coeff(&self, e: &E) -> Rat {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support_len(&self) -> usize {
        self.terms.len()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&Rat::from_int(-1)))
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        AlgebraElement { terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect() }
    }

    /// The product `self · other` in the monoid algebra.
    pub fn mul<M: Monoid<Elem = E>>(&self, m: &M, other: &Self) -> Self {
        let mut acc: BTreeMap<E, Rat> = BTreeMap::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                *acc.entry(m.mul(a, b)).or_default() += &(ca * cb);
            }
        }
        acc.retain(|_, v| !v.is_zero());
        AlgebraElement { terms: acc }
    }

    /// Linear extension of a map on basis elements.
    pub fn map_elems<F: Ord + Clone>(&self, mut f: impl FnMut(&E) -> F) -> AlgebraElement<F> {
        AlgebraElement::from_terms(self.terms.iter().map(|(e, c)| (f(e), c.clone())))
    }

    /// Linear extension of a partial map; elements sent to `None` vanish.
    pub fn filter_map_elems<F: Ord + Clone>(&self, mut f: impl FnMut(&E) -> Option<F>) -> AlgebraElement<F> {
        AlgebraElement::from_terms(self.terms.iter().filter_map(|(e, c)| f(e).map(|g| (g, c.clone()))))
    }

    /// Coordinates in `basis`; fails if the support leaves the basis.
    pub fn to_vector(&self, basis: &Basis<E>) -> Result<Vec<Rat>>
    where
        E: std::hash::Hash + fmt::Display,
    {
        let mut v = vec![Rat::zero(); basis.len()];
        for (e, c) in &self.terms {
            let i = basis.index_of(e).ok_or_else(|| Error::InvalidArgument(format!("{e} is not in the basis")))?;
            v[i] = c.clone();
        }
        Ok(v)
    }

    pub fn from_vector(basis: &Basis<E>, v: &[Rat]) -> Self
    where
        E: std::hash::Hash,
    {
        assert_eq!(v.len(), basis.len());
        Self::from_terms(v.iter().enumerate().map(|(i, c)| (basis.elem(i).clone(), c.clone())))
    }

    /// Coefficients `(c_0, …, c_r)` with `self = Σ c_ℓ x_ℓ`, where the
    /// `ℓ`-th orbit has `orbit_sizes[ℓ]` elements and `len_of` gives the
    /// orbit of an element. Fails with the offending `ℓ` if `self` is not
    /// a combination of the orbit sums.
    pub fn orbit_coefficients(&self, orbit_sizes: &[usize], len_of: impl Fn(&E) -> usize) -> Result<Vec<Rat>> {
        let mut coeffs: Vec<Option<Rat>> = vec![None; orbit_sizes.len()];
        let mut counts = vec![0usize; orbit_sizes.len()];
        for (e, c) in &self.terms {
            let l = len_of(e);
            if l >= orbit_sizes.len() {
                return Err(Error::NotInOrbitSpan(l));
            }
            match &coeffs[l] {
                Some(prev) if prev != c => return Err(Error::NotInOrbitSpan(l)),
                Some(_) => {}
                None => coeffs[l] = Some(c.clone()),
            }
            counts[l] += 1;
        }
        coeffs
            .into_iter()
            .zip(counts.iter().zip(orbit_sizes))
            .enumerate()
            .map(|(l, (c, (&count, &size)))| match c {
                None => Ok(Rat::zero()),
                Some(c) if count == size => Ok(c),
                Some(_) => Err(Error::NotInOrbitSpan(l)),
            })
            .collect()
    }
}

impl<E: Ord + fmt::Display> fmt::Display for AlgebraElement<E> {
    /// `c·e + …` with unit coefficients omitted; the zero element prints `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if c.is_one() {
                write!(f, "{e}")?;
            } else {
                write!(f, "{c}·{e}")?;
            }
        }
        Ok(())
    }
}

impl<E: Ord + fmt::Display> fmt::Debug for AlgebraElement<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lrb::{InjWord, WordMonoid};

    fn w(v: &[u8]) -> InjWord {
        InjWord::new(v.to_vec()).unwrap()
    }

    #[test]
    fn lemma_products_for_two_letters() {
        let m = WordMonoid::new(2);
        let x = AlgebraElement::orbit_sum(&m, 1);
        let sizes = [1, 2, 2];
        let expect = [[0, 1, 0], [0, 1, 1], [0, 0, 2]];
        for l in 0..=2 {
            let prod = x.mul(&m, &AlgebraElement::orbit_sum(&m, l));
            let coeffs = prod.orbit_coefficients(&sizes, InjWord::len).unwrap();
            let want: Vec<Rat> = expect[l].iter().map(|&c| Rat::from_int(c)).collect();
            assert_eq!(coeffs, want, "x·x_{l}");
        }
    }

    #[test]
    fn cancellation_and_orbit_span() {
        let mut a = AlgebraElement::basis_elem(w(&[1]));
        a.add_term(w(&[1]), &Rat::from_int(-1));
        assert!(a.is_zero());
        let partial = AlgebraElement::sum_of([w(&[1, 2])]);
        assert!(partial.orbit_coefficients(&[1, 2, 2], InjWord::len).is_err());
        let sum = AlgebraElement::sum_of([w(&[1]), w(&[2])]).scale(&Rat::from_int(3));
        assert_eq!(sum.to_string(), "3·(1) + 3·(2)");
        let basis = Basis::full(&WordMonoid::new(2));
        let v = sum.to_vector(&basis).unwrap();
        assert_eq!(AlgebraElement::from_vector(&basis, &v), sum);
    }
}
