use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::rational::{serde_rational, Rational};

/// Sparse vector over a basis, keyed by basis index; zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AlgebraElement {
    terms: BTreeMap<usize, Rational>,
}

#[derive(Serialize, Deserialize)]
pub(crate) struct Term {
    pub k: usize,
    #[serde(with = "serde_rational")]
    pub coeff: Rational,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn unit(i: usize) -> Self {
        Self::term(i, Rational::from_integer(1))
    }

    pub fn term(i: usize, c: Rational) -> Self {
        let mut e = Self::zero();
        e.add_term(i, c);
        e
    }

    pub fn from_dense(coeffs: &[Rational]) -> Self {
        let mut e = Self::zero();
        for (i, c) in coeffs.iter().enumerate() {
            e.add_term(i, *c);
        }
        e
    }

    pub fn add_term(&mut self, i: usize, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(i).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&i);
        }
    }

    pub fn add_scaled(&mut self, other: &AlgebraElement, c: Rational) {
        if c.is_zero() {
            return;
        }
        for (&i, &v) in &other.terms {
            self.add_term(i, v * c);
        }
    }

    pub fn plus(&self, other: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        out.add_scaled(other, Rational::from_integer(1));
        out
    }

    pub fn minus(&self, other: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        out.add_scaled(other, Rational::from_integer(-1));
        out
    }

    pub fn scaled(&self, c: Rational) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn get(&self, i: usize) -> Rational {
        self.terms.get(&i).copied().unwrap_or_else(Rational::zero)
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

    pub fn iter(&self) -> impl Iterator<Item = (usize, Rational)> + '_ {
        self.terms.iter().map(|(&i, &c)| (i, c))
    }

    pub fn to_dense(&self, dim: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); dim];
        for (i, c) in self.iter() {
            v[i] = c;
        }
        v
    }

    pub(crate) fn to_terms(&self) -> Vec<Term> {
        self.iter().map(|(k, coeff)| Term { k, coeff }).collect()
    }

    pub(crate) fn from_terms(terms: &[Term]) -> Self {
        let mut e = Self::zero();
        for t in terms {
            e.add_term(t.k, t.coeff);
        }
        e
    }
}
