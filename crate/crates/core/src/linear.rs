//! Sparse finitely supported linear combinations.
//!
//! Every graded object in the crate (tensor series, pair series, cyclic
//! series, super-cyclic series) stores its coefficients in a [`LinComb`].
//! Zero coefficients are never stored.

use std::collections::btree_map::{self, BTreeMap};

use num_traits::Zero;

use crate::rational::Q;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinComb<K: Ord> {
    terms: BTreeMap<K, Q>,
}

impl<K: Ord> Default for LinComb<K> {
    fn default() -> Self {
        LinComb { terms: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> LinComb<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_term(k: K, c: Q) -> Self {
        let mut out = Self::new();
        out.add_term(k, c);
        out
    }

    pub fn add_term(&mut self, k: K, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(k) {
            btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &LinComb<K>, c: &Q) {
        if c.is_zero() {
            return;
        }
        for (k, v) in &other.terms {
            self.add_term(k.clone(), v * c);
        }
    }

    pub fn add_assign(&mut self, other: &LinComb<K>) {
        for (k, v) in &other.terms {
            self.add_term(k.clone(), v.clone());
        }
    }

    pub fn sub_assign(&mut self, other: &LinComb<K>) {
        for (k, v) in &other.terms {
            self.add_term(k.clone(), -v.clone());
        }
    }

    pub fn scaled(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::new();
        }
        LinComb { terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect() }
    }

    pub fn get(&self, k: &K) -> Q {
        self.terms.get(k).cloned().unwrap_or_else(Q::zero)
    }

    pub fn contains(&self, k: &K) -> bool {
        self.terms.contains_key(k)
    }

    pub fn iter(&self) -> btree_map::Iter<'_, K, Q> {
        self.terms.iter()
    }

    pub fn keys(&self) -> btree_map::Keys<'_, K, Q> {
        self.terms.keys()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn retain(&mut self, mut f: impl FnMut(&K) -> bool) {
        self.terms.retain(|k, _| f(k));
    }

    pub fn filtered(&self, mut f: impl FnMut(&K) -> bool) -> Self {
        LinComb {
            terms: self.terms.iter().filter(|(k, _)| f(k)).map(|(k, v)| (k.clone(), v.clone())).collect(),
        }
    }

    /// Applies a linear map given on basis elements.
    pub fn map_linear<K2: Ord + Clone>(&self, mut f: impl FnMut(&K) -> LinComb<K2>) -> LinComb<K2> {
        let mut out = LinComb::new();
        for (k, v) in &self.terms {
            out.add_scaled(&f(k), v);
        }
        out
    }
}

impl<K: Ord + Clone> FromIterator<(K, Q)> for LinComb<K> {
    fn from_iter<I: IntoIterator<Item = (K, Q)>>(iter: I) -> Self {
        let mut out = LinComb::new();
        for (k, c) in iter {
            out.add_term(k, c);
        }
        out
    }
}

impl<K: Ord> IntoIterator for LinComb<K> {
    type Item = (K, Q);
    type IntoIter = btree_map::IntoIter<K, Q>;

    fn into_iter(self) -> Self::IntoIter {
        self.terms.into_iter()
    }
}

impl<'a, K: Ord> IntoIterator for &'a LinComb<K> {
    type Item = (&'a K, &'a Q);
    type IntoIter = btree_map::Iter<'a, K, Q>;

    fn into_iter(self) -> Self::IntoIter {
        self.terms.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn zero_coefficients_are_dropped() {
        let mut a = LinComb::from_term(1u32, q(2));
        a.add_term(1, q(-2));
        assert!(a.is_zero());
        a.add_term(3, q(0));
        assert_eq!(a.len(), 0);
    }

    #[test]
    fn scaled_and_linear_maps() {
        let a: LinComb<u32> = [(1, q(1)), (2, q(3))].into_iter().collect();
        let b = a.map_linear(|k| LinComb::from_term(k % 2, q(1)));
        assert_eq!(b.get(&1), q(1));
        assert_eq!(b.get(&0), q(3));
        assert!(a.scaled(&q(0)).is_zero());
    }
}
