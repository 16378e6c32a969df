use std::collections::BTreeMap;
use std::fmt;

use super::{MonomialOrder, Word};
use crate::coeff::Field;

/// A noncommutative polynomial: finitely many words with nonzero
/// coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NCPoly<F: Field> {
    terms: BTreeMap<Word, F>,
}

impl<F: Field> Default for NCPoly<F> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<F: Field> NCPoly<F> {
    pub fn zero() -> Self {
        NCPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(F::one())
    }

    pub fn constant(c: F) -> Self {
        Self::term(Word::empty(), c)
    }

    pub fn term(w: Word, c: F) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(w, c);
        }
        NCPoly { terms }
    }

    pub fn word(w: Word) -> Self {
        Self::term(w, F::one())
    }

    pub fn generator(i: usize) -> Self {
        Self::word(Word::letter(i))
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Word, F)>) -> Self {
        let mut p = Self::zero();
        for (w, c) in it {
            p.add_term(w, &c);
        }
        p
    }

    /// Adds `c * w` in place.
    pub fn add_term(&mut self, w: Word, c: &F) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add(c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
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

    /// Terms in ascending order of the default word order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Word, &F)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Word) -> F {
        self.terms.get(w).cloned().unwrap_or_else(F::zero)
    }

    pub(crate) fn into_map(self) -> BTreeMap<Word, F> {
        self.terms
    }

    pub(crate) fn from_map(terms: BTreeMap<Word, F>) -> Self {
        NCPoly { terms }
    }

    /// The common length of all words, if there is one. The zero polynomial
    /// is homogeneous of every degree and reports `None`.
    pub fn degree(&self) -> Option<usize> {
        let mut it = self.terms.keys();
        let d = it.next()?.len();
        it.all(|w| w.len() == d).then_some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.degree().is_some()
    }

    pub fn max_degree(&self) -> usize {
        self.terms.keys().map(Word::len).max().unwrap_or(0)
    }

    /// Largest word under `order` with its coefficient.
    pub fn leading(&self, order: &MonomialOrder) -> Option<(&Word, &F)> {
        self.terms.iter().max_by(|a, b| order.compare(a.0, b.0))
    }

    /// Scales so that the leading coefficient under `order` is one.
    pub fn monic(&self, order: &MonomialOrder) -> Self {
        match self.leading(order).and_then(|(_, c)| c.inv()) {
            Some(inv) => self.scale(&inv),
            None => self.clone(),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c);
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), &c.neg());
        }
        out
    }

    pub fn neg(&self) -> Self {
        NCPoly {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        NCPoly {
            terms: self
                .terms
                .iter()
                .map(|(w, a)| (w.clone(), a.mul(c)))
                .collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for (u, a) in &self.terms {
            for (v, b) in &rhs.terms {
                out.add_term(u.concat(v), &a.mul(b));
            }
        }
        out
    }

    /// `prefix · self · suffix` for words.
    pub fn wrap(&self, prefix: &[u8], suffix: &[u8]) -> Self {
        NCPoly {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.wrap(prefix, suffix), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn map_coeffs<G: Field, E>(&self, f: impl Fn(&F) -> Result<G, E>) -> Result<NCPoly<G>, E> {
        let mut out = NCPoly::zero();
        for (w, c) in &self.terms {
            out.add_term(w.clone(), &f(c)?);
        }
        Ok(out)
    }

    pub fn map_words(&self, f: impl Fn(&Word) -> Word) -> Self {
        Self::from_terms(self.terms.iter().map(|(w, c)| (f(w), c.clone())))
    }

    /// Constant value if the polynomial has no word of positive length.
    pub fn as_constant(&self) -> Option<F> {
        match self.terms.len() {
            0 => Some(F::zero()),
            1 => self.terms.get(&Word::empty()).cloned(),
            _ => None,
        }
    }

    /// Renders with generator names, largest term first under `order`.
    pub fn display_with(&self, names: &[String], order: &MonomialOrder) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut ts: Vec<_> = self.terms.iter().collect();
        ts.sort_by(|a, b| order.compare(b.0, a.0));
        let mut out = String::new();
        for (w, c) in ts {
            let (neg, abs) = c.sign_split();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let word = w.display_with(names);
            if w.is_empty() {
                out.push_str(&abs.to_string());
            } else if abs.is_one() {
                out.push_str(&word);
            } else if abs.is_compound() {
                out.push_str(&format!("({abs})*{word}"));
            } else {
                out.push_str(&format!("{abs}*{word}"));
            }
        }
        out
    }
}

/// Product in the free algebra.
pub fn nc_multiply<F: Field>(f: &NCPoly<F>, g: &NCPoly<F>) -> NCPoly<F> {
    f.mul(g)
}

impl<F: Field> fmt::Debug for NCPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self
            .terms
            .keys()
            .flat_map(|w| w.0.iter())
            .map(|&l| l as usize + 1)
            .max()
            .unwrap_or(0);
        let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
        f.write_str(&self.display_with(&names, &MonomialOrder::natural(n)))
    }
}
