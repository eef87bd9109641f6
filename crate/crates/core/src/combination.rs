//! Finite formal linear combinations with exact rational coefficients.

use alloc::collections::btree_map::{self, BTreeMap};
use core::fmt;
use core::ops::{Add, Neg, Sub};

use crate::canon::CanonicalKey;
use crate::scalar::Scalar;

/// Formal sum `Σ c_k · k`. Zero coefficients are never stored, so equality
/// of combinations is equality of the maps.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Combination<K: Ord> {
    terms: BTreeMap<K, Scalar>,
}

/// Element of a graph bialgebra: a combination of isomorphism classes.
pub type LinearCombination = Combination<CanonicalKey>;

/// Element of the tensor square, as a combination of ordered key pairs.
pub type Tensor = Combination<(CanonicalKey, CanonicalKey)>;

impl<K: Ord> Default for Combination<K> {
    fn default() -> Self {
        Combination { terms: BTreeMap::new() }
    }
}

impl<K: Ord + fmt::Debug> fmt::Debug for Combination<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{c}·{k:?}")?;
        }
        Ok(())
    }
}

impl<K: Ord + Clone> Combination<K> {
    pub fn zero() -> Self {
        Combination::default()
    }

    /// `1 · key`.
    pub fn basis(key: K) -> Self {
        Combination::term(key, Scalar::one())
    }

    pub fn term(key: K, coeff: Scalar) -> Self {
        let mut c = Combination::zero();
        c.add_term(key, coeff);
        c
    }

    pub fn from_terms<I: IntoIterator<Item = (K, Scalar)>>(terms: I) -> Self {
        let mut c = Combination::zero();
        for (k, s) in terms {
            c.add_term(k, s);
        }
        c
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, key: &K) -> Scalar {
        self.terms.get(key).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn get(&self, key: &K) -> Option<&Scalar> {
        self.terms.get(key)
    }

    pub fn contains_key(&self, key: &K) -> bool {
        self.terms.contains_key(key)
    }

    pub fn iter(&self) -> btree_map::Iter<'_, K, Scalar> {
        self.terms.iter()
    }

    pub fn keys(&self) -> btree_map::Keys<'_, K, Scalar> {
        self.terms.keys()
    }

    /// Smallest key with its coefficient.
    pub fn leading(&self) -> Option<(&K, &Scalar)> {
        self.terms.iter().next()
    }

    pub fn add_term(&mut self, key: K, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += factor · other`.
    pub fn add_scaled(&mut self, other: &Combination<K>, factor: &Scalar) {
        if factor.is_zero() {
            return;
        }
        for (k, c) in &other.terms {
            self.add_term(k.clone(), c * factor);
        }
    }

    pub fn scaled(&self, factor: &Scalar) -> Self {
        if factor.is_zero() {
            return Combination::zero();
        }
        Combination {
            terms: self.terms.iter().map(|(k, c)| (k.clone(), c * factor)).collect(),
        }
    }

    /// Linear extension of `f`, a map from basis elements to combinations.
    pub fn flat_map<K2: Ord + Clone, F>(&self, mut f: F) -> Combination<K2>
    where
        F: FnMut(&K) -> Combination<K2>,
    {
        let mut out = Combination::zero();
        for (k, c) in &self.terms {
            out.add_scaled(&f(k), c);
        }
        out
    }

    /// Linear extension of a map on basis elements that returns a single key.
    pub fn map_keys<K2: Ord + Clone, F>(&self, mut f: F) -> Combination<K2>
    where
        F: FnMut(&K) -> K2,
    {
        let mut out = Combination::zero();
        for (k, c) in &self.terms {
            out.add_term(f(k), c.clone());
        }
        out
    }

    /// Keeps only the terms whose key satisfies `keep`.
    pub fn filtered<F: FnMut(&K) -> bool>(&self, mut keep: F) -> Self {
        Combination {
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| keep(k))
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect(),
        }
    }

    /// Rescaled so the leading coefficient is 1 (zero stays zero).
    pub fn monic(&self) -> Self {
        match self.leading() {
            Some((_, lead)) => self.scaled(&lead.recip().expect("stored coefficients are nonzero")),
            None => Combination::zero(),
        }
    }
}

impl<K: Ord + Clone> IntoIterator for Combination<K> {
    type Item = (K, Scalar);
    type IntoIter = btree_map::IntoIter<K, Scalar>;
    fn into_iter(self) -> Self::IntoIter {
        self.terms.into_iter()
    }
}

impl<'a, K: Ord + Clone> IntoIterator for &'a Combination<K> {
    type Item = (&'a K, &'a Scalar);
    type IntoIter = btree_map::Iter<'a, K, Scalar>;
    fn into_iter(self) -> Self::IntoIter {
        self.terms.iter()
    }
}

impl<K: Ord + Clone> FromIterator<(K, Scalar)> for Combination<K> {
    fn from_iter<I: IntoIterator<Item = (K, Scalar)>>(iter: I) -> Self {
        Combination::from_terms(iter)
    }
}

impl<K: Ord + Clone> Add<&Combination<K>> for &Combination<K> {
    type Output = Combination<K>;
    fn add(self, rhs: &Combination<K>) -> Combination<K> {
        let mut out = self.clone();
        out.add_scaled(rhs, &Scalar::one());
        out
    }
}

impl<K: Ord + Clone> Sub<&Combination<K>> for &Combination<K> {
    type Output = Combination<K>;
    fn sub(self, rhs: &Combination<K>) -> Combination<K> {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Scalar::one());
        out
    }
}

impl<K: Ord + Clone> Neg for &Combination<K> {
    type Output = Combination<K>;
    fn neg(self) -> Combination<K> {
        self.scaled(&-Scalar::one())
    }
}

/// `a + b`.
pub fn lc_add<K: Ord + Clone>(a: &Combination<K>, b: &Combination<K>) -> Combination<K> {
    a + b
}

/// `c · a`.
pub fn lc_scale<K: Ord + Clone>(c: &Scalar, a: &Combination<K>) -> Combination<K> {
    a.scaled(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(i: u32) -> Combination<u32> {
        Combination::basis(i)
    }

    #[test]
    fn normal_form_drops_zeros() {
        let a = &e(1) + &e(2).scaled(&Scalar::ratio(1, 3));
        assert!(lc_add(&a, &lc_scale(&Scalar::from_int(-1), &a)).is_zero());
        assert!(lc_scale(&Scalar::zero(), &a).is_zero());
        assert_eq!(&e(5) + &e(5), Combination::term(5, Scalar::from_int(2)));
        assert_eq!((&a - &a).len(), 0);
    }

    #[test]
    fn flat_map_is_linear() {
        let a = Combination::from_terms([(1u32, Scalar::from_int(2)), (2, Scalar::from_int(-1))]);
        let doubled = a.flat_map(|&k| &e(k) + &e(k + 10));
        assert_eq!(doubled.coeff(&11), Scalar::from_int(2));
        assert_eq!(doubled.coeff(&12), Scalar::from_int(-1));
        assert_eq!(doubled.len(), 4);
    }

    #[test]
    fn monic_scales_leading_term() {
        let a = Combination::from_terms([(3u32, Scalar::from_int(-2)), (4, Scalar::from_int(6))]);
        let m = a.monic();
        assert_eq!(m.coeff(&3), Scalar::one());
        assert_eq!(m.coeff(&4), Scalar::from_int(-3));
    }
}
