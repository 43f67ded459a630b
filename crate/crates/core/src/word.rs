//! Words over the operator letters `ρ` (remainder sum), `π` (principal sum)
//! and `y`, with `π = ρ + 1`.

use std::fmt;
use std::str::FromStr;

use crate::composition::CompositionPair;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PyLetter {
    Rho,
    Pi,
    Y,
}

impl PyLetter {
    pub fn symbol(self) -> char {
        match self {
            PyLetter::Rho => 'ρ',
            PyLetter::Pi => 'π',
            PyLetter::Y => 'y',
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PyWord(Vec<PyLetter>);

impl PyWord {
    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn from_letters(letters: Vec<PyLetter>) -> Self {
        Self(letters)
    }

    pub fn letters(&self) -> &[PyLetter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<PyLetter> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().filter(|&&l| l != PyLetter::Y).count() as u32
    }

    pub fn depth(&self) -> usize {
        self.0.iter().filter(|&&l| l == PyLetter::Y).count()
    }

    /// `letter · self`
    pub fn prepend(&self, letter: PyLetter) -> Self {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.push(letter);
        v.extend_from_slice(&self.0);
        Self(v)
    }

    pub fn concat(&self, other: &PyWord) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Self(v)
    }

    pub fn is_pure(&self) -> bool {
        !self.0.contains(&PyLetter::Pi)
    }

    /// Ends with `y` and has a `ρ` before the first `y`.
    pub fn is_admissible(&self) -> bool {
        if self.0.last() != Some(&PyLetter::Y) {
            return false;
        }
        self.0
            .iter()
            .take_while(|&&l| l != PyLetter::Y)
            .any(|&l| l == PyLetter::Rho)
    }

    /// Non-`y` runs, one per `y`. Returns `None` if the word does not end with `y`.
    pub fn blocks(&self) -> Option<Vec<&[PyLetter]>> {
        if !self.0.is_empty() && self.0.last() != Some(&PyLetter::Y) {
            return None;
        }
        let mut out = Vec::new();
        let mut start = 0;
        for (i, &l) in self.0.iter().enumerate() {
            if l == PyLetter::Y {
                out.push(&self.0[start..i]);
                start = i + 1;
            }
        }
        Some(out)
    }

    /// Reads `ρ^{t_j} π^{s_j - t_j} y` blocks.
    pub fn composition(&self) -> Result<CompositionPair> {
        let not_block = || Error::NotBlockForm(self.to_string());
        let blocks = self.blocks().ok_or_else(not_block)?;
        let mut s = Vec::with_capacity(blocks.len());
        let mut t = Vec::with_capacity(blocks.len());
        for block in blocks {
            let rhos = block.iter().take_while(|&&l| l == PyLetter::Rho).count();
            if block[rhos..].iter().any(|&l| l != PyLetter::Pi) {
                return Err(not_block());
            }
            s.push(block.len() as u32);
            t.push(rhos as u32);
        }
        Ok(CompositionPair { s, t })
    }

    /// Sorts every block so that `ρ` precedes `π`. The letters commute inside a
    /// block, so the value is unchanged.
    pub fn sort_blocks(&self) -> PyWord {
        let mut letters = self.0.clone();
        let mut start = 0;
        for i in 0..letters.len() {
            if letters[i] == PyLetter::Y {
                letters[start..i].sort();
                start = i + 1;
            }
        }
        letters[start..].sort();
        PyWord(letters)
    }

    /// Reverse the word and swap `ρ` with `y`.
    pub fn dual(&self) -> Result<PyWord> {
        if !self.is_pure() {
            return Err(Error::NotPure(self.to_string()));
        }
        let letters = self
            .0
            .iter()
            .rev()
            .map(|&l| match l {
                PyLetter::Rho => PyLetter::Y,
                _ => PyLetter::Rho,
            })
            .collect();
        Ok(PyWord(letters))
    }

    /// Run-length form of a pure word that starts with `ρ` and ends with `y`.
    pub fn block_form(&self) -> Result<BlockForm> {
        if !self.is_pure() {
            return Err(Error::NotPure(self.to_string()));
        }
        if self.0.first() != Some(&PyLetter::Rho) || self.0.last() != Some(&PyLetter::Y) {
            return Err(Error::NotBlockForm(self.to_string()));
        }
        let mut runs: Vec<(PyLetter, u32)> = Vec::new();
        for &l in &self.0 {
            match runs.last_mut() {
                Some((prev, n)) if *prev == l => *n += 1,
                _ => runs.push((l, 1)),
            }
        }
        let pairs = runs.chunks(2).map(|c| (c[0].1, c[1].1)).collect();
        Ok(BlockForm { runs: pairs })
    }
}

impl From<Vec<PyLetter>> for PyWord {
    fn from(v: Vec<PyLetter>) -> Self {
        Self(v)
    }
}

impl fmt::Display for PyWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for l in &self.0 {
            write!(f, "{}", l.symbol())?;
        }
        Ok(())
    }
}

/// Accepts `ρ`/`r`, `π`/`p`, `y`; whitespace is ignored and `1` is the empty word.
impl FromStr for PyWord {
    type Err = Error;
    fn from_str(text: &str) -> Result<Self> {
        let text = text.trim();
        if text == "1" {
            return Ok(PyWord::empty());
        }
        let mut letters = Vec::new();
        for (pos, ch) in text.char_indices() {
            match ch {
                'ρ' | 'r' | 'R' => letters.push(PyLetter::Rho),
                'π' | 'p' | 'P' => letters.push(PyLetter::Pi),
                'y' | 'Y' => letters.push(PyLetter::Y),
                c if c.is_whitespace() || c == '.' => {}
                c => {
                    return Err(Error::Parse {
                        pos,
                        msg: format!("unexpected letter {c:?}"),
                    });
                }
            }
        }
        Ok(PyWord(letters))
    }
}

/// `ρ^{α_1} y^{β_1} ... ρ^{α_ℓ} y^{β_ℓ}` with all exponents at least 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BlockForm {
    pub runs: Vec<(u32, u32)>,
}

impl BlockForm {
    pub fn new(runs: Vec<(u32, u32)>) -> Self {
        assert!(
            runs.iter().all(|&(a, b)| a >= 1 && b >= 1),
            "runs must be positive"
        );
        Self { runs }
    }

    pub fn to_word(&self) -> PyWord {
        let mut letters = Vec::new();
        for &(a, b) in &self.runs {
            letters.extend(std::iter::repeat_n(PyLetter::Rho, a as usize));
            letters.extend(std::iter::repeat_n(PyLetter::Y, b as usize));
        }
        PyWord(letters)
    }

    /// The reverse-swap partner `ρ^{β_ℓ} y^{α_ℓ} ... ρ^{β_1} y^{α_1}`.
    pub fn dual(&self) -> BlockForm {
        BlockForm {
            runs: self.runs.iter().rev().map(|&(a, b)| (b, a)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> PyWord {
        s.parse().unwrap()
    }

    #[test]
    fn block_reading() {
        let c = w("rryry").composition().unwrap();
        assert_eq!((c.s, c.t), (vec![2, 1], vec![2, 1]));
        let c = w("rpy").composition().unwrap();
        assert_eq!((c.s, c.t), (vec![2], vec![1]));
        assert!(matches!(
            w("pry").composition(),
            Err(Error::NotBlockForm(_))
        ));
    }

    #[test]
    fn round_trip() {
        let c = CompositionPair::new(vec![3, 0, 2], vec![1, 0, 2]);
        assert_eq!(c.to_word().composition().unwrap(), c);
    }

    #[test]
    fn duals() {
        assert_eq!(w("rrryyryyyy").dual().unwrap(), w("rrrryrryyy"));
        assert_eq!(w("rry").dual().unwrap(), w("ryy"));
        assert_eq!(w("ry").dual().unwrap(), w("ry"));
        assert!(w("rpy").dual().is_err());
    }

    #[test]
    fn block_forms() {
        let bf = w("rryrryyy").block_form().unwrap();
        assert_eq!(bf.runs, vec![(2, 1), (2, 3)]);
        assert_eq!(bf.to_word(), w("rryrryyy"));
        assert_eq!(bf.dual().to_word(), w("rryrryyy").dual().unwrap());
    }

    #[test]
    fn admissible_words() {
        assert!(w("pry").is_admissible());
        assert!(!w("py").is_admissible());
        assert!(!w("ryr").is_admissible());
        assert_eq!(w("ρπy y").weight(), 2);
        assert_eq!(w("ρπy y").depth(), 2);
    }
}
