//! Finitely supported rational combinations of words.

use std::collections::btree_map::{self, BTreeMap};
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Zero};

use crate::rational::{format_rational, Rational};

/// A map word -> coefficient that never stores a zero coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinComb<W: Ord> {
    terms: BTreeMap<W, Rational>,
}

impl<W: Ord> Default for LinComb<W> {
    fn default() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }
}

impl<W: Ord + Clone> LinComb<W> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn word(w: W) -> Self {
        Self::term(w, Rational::one())
    }

    pub fn term(w: W, c: Rational) -> Self {
        let mut out = Self::new();
        out.add_term(w, c);
        out
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

    pub fn coeff(&self, w: &W) -> Rational {
        self.terms.get(w).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> btree_map::Iter<'_, W, Rational> {
        self.terms.iter()
    }

    pub fn words(&self) -> impl Iterator<Item = &W> {
        self.terms.keys()
    }

    pub fn add_term(&mut self, w: W, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
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

    /// `self += scale * other`
    pub fn add_scaled(&mut self, other: &LinComb<W>, scale: &Rational) {
        if scale.is_zero() {
            return;
        }
        for (w, c) in other.iter() {
            self.add_term(w.clone(), c * scale);
        }
    }

    pub fn add_assign_ref(&mut self, other: &LinComb<W>) {
        for (w, c) in other.iter() {
            self.add_term(w.clone(), c.clone());
        }
    }

    pub fn scaled(&self, scale: &Rational) -> Self {
        let mut out = Self::new();
        out.add_scaled(self, scale);
        out
    }

    /// Linear extension of a word-to-combination map.
    pub fn map_linear<V: Ord + Clone, E>(
        &self,
        mut f: impl FnMut(&W) -> Result<LinComb<V>, E>,
    ) -> Result<LinComb<V>, E> {
        let mut out = LinComb::new();
        for (w, c) in self.iter() {
            out.add_scaled(&f(w)?, c);
        }
        Ok(out)
    }

    /// Linear extension of a word-to-word map.
    pub fn map_words<V: Ord + Clone>(&self, mut f: impl FnMut(&W) -> V) -> LinComb<V> {
        let mut out = LinComb::new();
        for (w, c) in self.iter() {
            out.add_term(f(w), c.clone());
        }
        out
    }
}

impl<W: Ord + Clone> FromIterator<(W, Rational)> for LinComb<W> {
    fn from_iter<I: IntoIterator<Item = (W, Rational)>>(iter: I) -> Self {
        let mut out = Self::new();
        for (w, c) in iter {
            out.add_term(w, c);
        }
        out
    }
}

impl<W: Ord> IntoIterator for LinComb<W> {
    type Item = (W, Rational);
    type IntoIter = btree_map::IntoIter<W, Rational>;
    fn into_iter(self) -> Self::IntoIter {
        self.terms.into_iter()
    }
}

impl<W: Ord + Clone> Add for LinComb<W> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for (w, c) in rhs {
            self.add_term(w, c);
        }
        self
    }
}

impl<W: Ord + Clone> Sub for LinComb<W> {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        for (w, c) in rhs {
            self.add_term(w, -c);
        }
        self
    }
}

impl<W: Ord + Clone> Neg for LinComb<W> {
    type Output = Self;
    fn neg(self) -> Self {
        self.into_iter().map(|(w, c)| (w, -c)).collect()
    }
}

impl<W: Ord + fmt::Display> fmt::Display for LinComb<W> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let negative = *c < Rational::zero();
            let abs = if negative { -c.clone() } else { c.clone() };
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if !abs.is_one() {
                write!(f, "{}*", format_rational(&abs))?;
            }
            write!(f, "{w}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn cancellation_drops_terms() {
        let mut c = LinComb::term("a", int(2));
        c.add_term("b", int(1));
        c.add_term("a", int(-2));
        assert_eq!(c.len(), 1);
        assert_eq!(c.coeff(&"a"), int(0));
        let z = c.clone() - c;
        assert!(z.is_zero());
    }

    #[test]
    fn zero_scale_is_empty() {
        let c = LinComb::term(1u8, int(3)).scaled(&int(0));
        assert!(c.is_empty());
    }
}
