//! Finite `F_p`-linear combinations over an ordered basis.

use std::collections::btree_map::{self, BTreeMap};
use std::fmt;

use crate::fp::{Fp, PrimeContext};

/// A finite linear combination `sum c_k k` with nonzero coefficients.
///
/// Terms are kept in ascending key order; the *leading* term is the largest key.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Combination<K: Ord> {
    terms: BTreeMap<K, Fp>,
}

impl<K: Ord> Default for Combination<K> {
    fn default() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }
}

impl<K: Ord + Clone> Combination<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_term(key: K, coeff: Fp) -> Self {
        let mut out = Self::zero();
        if !coeff.is_zero() {
            out.terms.insert(key, coeff);
        }
        out
    }

    pub fn basis(key: K) -> Self {
        Self::from_term(key, Fp::ONE)
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

    pub fn coefficient(&self, key: &K) -> Fp {
        self.terms.get(key).copied().unwrap_or(Fp::ZERO)
    }

    pub fn add_term(&mut self, key: K, coeff: Fp, ctx: &PrimeContext) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            btree_map::Entry::Occupied(mut e) => {
                let s = ctx.add(*e.get(), coeff);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    /// `self += coeff * other`
    pub fn add_scaled(&mut self, other: &Self, coeff: Fp, ctx: &PrimeContext) {
        if coeff.is_zero() {
            return;
        }
        for (k, c) in &other.terms {
            self.add_term(k.clone(), ctx.mul(*c, coeff), ctx);
        }
    }

    pub fn scaled(&self, coeff: Fp, ctx: &PrimeContext) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, coeff, ctx);
        out
    }

    pub fn sub(&self, other: &Self, ctx: &PrimeContext) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, ctx.neg(Fp::ONE), ctx);
        out
    }

    /// Terms in ascending key order.
    pub fn iter(&self) -> btree_map::Iter<'_, K, Fp> {
        self.terms.iter()
    }

    pub fn keys(&self) -> btree_map::Keys<'_, K, Fp> {
        self.terms.keys()
    }

    pub fn retain<F: FnMut(&K) -> bool>(&mut self, mut keep: F) {
        self.terms.retain(|k, _| keep(k));
    }

    pub fn leading(&self) -> Option<(&K, &Fp)> {
        self.terms.last_key_value()
    }

    /// Apply a linear map given on basis elements.
    pub fn map_linear<L: Ord + Clone, F>(&self, ctx: &PrimeContext, mut f: F) -> Combination<L>
    where
        F: FnMut(&K) -> Combination<L>,
    {
        let mut out = Combination::zero();
        for (k, c) in &self.terms {
            out.add_scaled(&f(k), *c, ctx);
        }
        out
    }
}

impl<K: Ord> IntoIterator for Combination<K> {
    type Item = (K, Fp);
    type IntoIter = btree_map::IntoIter<K, Fp>;

    fn into_iter(self) -> Self::IntoIter {
        self.terms.into_iter()
    }
}

impl<'a, K: Ord> IntoIterator for &'a Combination<K> {
    type Item = (&'a K, &'a Fp);
    type IntoIter = btree_map::Iter<'a, K, Fp>;

    fn into_iter(self) -> Self::IntoIter {
        self.terms.iter()
    }
}

/// Leading term first, `c*` prefix omitted for coefficient one, `0` for the zero element.
impl<K: Ord + fmt::Display> fmt::Display for Combination<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (k, c)) in self.terms.iter().rev().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            if *c != Fp::ONE {
                write!(f, "{c}*")?;
            }
            write!(f, "{k}")?;
        }
        Ok(())
    }
}
