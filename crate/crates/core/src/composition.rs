use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::word::{PyLetter, PyWord};

/// Exponent data `(s; t)` of a value with arguments `s` and auxiliary exponents `t`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CompositionPair {
    pub s: Vec<u32>,
    pub t: Vec<u32>,
}

impl CompositionPair {
    /// Panics if the lengths differ.
    pub fn new(s: Vec<u32>, t: Vec<u32>) -> Self {
        assert_eq!(s.len(), t.len(), "s and t must have equal length");
        Self { s, t }
    }

    pub fn empty() -> Self {
        Self {
            s: vec![],
            t: vec![],
        }
    }

    /// The `t = s` value.
    pub fn diagonal(s: Vec<u32>) -> Self {
        Self { t: s.clone(), s }
    }

    pub fn weight(&self) -> u32 {
        self.s.iter().sum()
    }

    pub fn depth(&self) -> usize {
        self.s.len()
    }

    pub fn is_admissible(&self) -> bool {
        !self.s.is_empty() && self.t[0] >= 1 && self.t.iter().zip(&self.s).all(|(t, s)| t <= s)
    }

    /// `ρ^{t_1} π^{s_1 - t_1} y ... ρ^{t_d} π^{s_d - t_d} y`. Requires `t_j <= s_j`.
    pub fn to_word(&self) -> PyWord {
        let mut letters = Vec::with_capacity(self.weight() as usize + self.depth());
        for (&t, &s) in self.t.iter().zip(&self.s) {
            assert!(t <= s, "t exceeds s in {self}");
            letters.extend(std::iter::repeat_n(PyLetter::Rho, t as usize));
            letters.extend(std::iter::repeat_n(PyLetter::Pi, (s - t) as usize));
            letters.push(PyLetter::Y);
        }
        PyWord::from_letters(letters)
    }

    fn flattened(&self) -> impl Iterator<Item = u32> + '_ {
        self.t.iter().zip(&self.s).flat_map(|(&t, &s)| [t, s])
    }
}

/// Graded by weight, then depth, then lexicographic on `(t_1, s_1, t_2, s_2, ...)`.
impl Ord for CompositionPair {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then(self.depth().cmp(&other.depth()))
            .then_with(|| self.flattened().cmp(other.flattened()))
    }
}

impl PartialOrd for CompositionPair {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn join(v: &[u32]) -> String {
    v.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

impl fmt::Display for CompositionPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "z^({})[{}]", join(&self.t), join(&self.s))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn admissibility() {
        assert!(CompositionPair::new(vec![2, 1], vec![1, 0]).is_admissible());
        assert!(!CompositionPair::new(vec![2, 1], vec![0, 1]).is_admissible());
        assert!(!CompositionPair::new(vec![1], vec![2]).is_admissible());
        assert!(!CompositionPair::empty().is_admissible());
    }

    #[test]
    fn graded_order() {
        let a = CompositionPair::diagonal(vec![3]);
        let b = CompositionPair::diagonal(vec![2, 1]);
        let c = CompositionPair::new(vec![2, 1], vec![1, 1]);
        assert!(a < b, "depth breaks weight ties");
        assert!(c < CompositionPair::diagonal(vec![2, 1]));
    }
}
