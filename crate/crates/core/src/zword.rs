//! Stuffle alphabets and the families (types) of values they realize.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::composition::CompositionPair;
use crate::error::{Error, Result};
use crate::lincomb::LinComb;
use crate::rational::int;
use crate::word::{PyLetter, PyWord};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum TypeTag {
    #[serde(rename = "i~")]
    ITilde,
    #[serde(rename = "i")]
    I,
    #[serde(rename = "ii")]
    II,
    #[serde(rename = "iii")]
    III,
    #[serde(rename = "iv~")]
    IVTilde,
    #[serde(rename = "iv")]
    IV,
    #[serde(rename = "g")]
    G,
    #[serde(rename = "o")]
    O,
}

impl TypeTag {
    pub const ALL: [TypeTag; 8] = [
        TypeTag::ITilde,
        TypeTag::I,
        TypeTag::II,
        TypeTag::III,
        TypeTag::IVTilde,
        TypeTag::IV,
        TypeTag::G,
        TypeTag::O,
    ];

    pub fn code(self) -> &'static str {
        match self {
            TypeTag::ITilde => "i~",
            TypeTag::I => "i",
            TypeTag::II => "ii",
            TypeTag::III => "iii",
            TypeTag::IVTilde => "iv~",
            TypeTag::IV => "iv",
            TypeTag::G => "g",
            TypeTag::O => "o",
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            TypeTag::ITilde => "Ĩ",
            TypeTag::I => "I",
            TypeTag::II => "II",
            TypeTag::III => "III",
            TypeTag::IVTilde => "ĨV",
            TypeTag::IV => "IV",
            TypeTag::G => "G",
            TypeTag::O => "O",
        }
    }

    /// The larger family whose relations project onto this one.
    pub fn parent(self) -> Option<TypeTag> {
        match self {
            TypeTag::I => Some(TypeTag::ITilde),
            TypeTag::IV => Some(TypeTag::IVTilde),
            _ => None,
        }
    }
}

impl fmt::Display for TypeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for TypeTag {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase();
        TypeTag::ALL
            .into_iter()
            .find(|t| t.code() == key || t.label().to_lowercase() == key)
            .or(match key.as_str() {
                "itilde" => Some(TypeTag::ITilde),
                "ivtilde" => Some(TypeTag::IVTilde),
                _ => None,
            })
            .ok_or_else(|| Error::Parse {
                pos: 0,
                msg: format!("unknown type {s:?}"),
            })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ZLetter {
    Theta,
    Z(u32),
    ZPrime(u32),
    ZG { t: u32, s: u32 },
    ZO(u32),
}

impl ZLetter {
    pub fn weight(self) -> u32 {
        match self {
            ZLetter::Theta => 1,
            ZLetter::Z(k) | ZLetter::ZPrime(k) | ZLetter::ZO(k) => k,
            ZLetter::ZG { s, .. } => s,
        }
    }
}

impl fmt::Display for ZLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ZLetter::Theta => write!(f, "θ"),
            ZLetter::Z(k) => write!(f, "z{k}"),
            ZLetter::ZPrime(k) => write!(f, "z'{k}"),
            ZLetter::ZG { t, s } => write!(f, "z({t},{s})"),
            ZLetter::ZO(s) => write!(f, "o{s}"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ZWord(Vec<ZLetter>);

impl ZWord {
    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn from_letters(letters: Vec<ZLetter>) -> Self {
        Self(letters)
    }

    /// Builds a word from argument lists in the usual bracket notation,
    /// e.g. `II [1,0,3]`, `III [1,0,1]`, `IV [2,0,1]`, `O [2,3]`.
    /// For Ĩ and I every argument is a `z_k`; for G the argument is `s` with `t = s`.
    pub fn from_args(ty: TypeTag, args: &[u32]) -> Self {
        let letters = args
            .iter()
            .enumerate()
            .map(|(i, &k)| match (ty, i) {
                (TypeTag::ITilde | TypeTag::I, _) => ZLetter::Z(k),
                (TypeTag::II, _) | (TypeTag::III, 0) => ZLetter::ZPrime(k),
                (TypeTag::III, _) => ZLetter::Z(k),
                (TypeTag::IVTilde | TypeTag::IV, 0) => ZLetter::Z(k),
                (TypeTag::IVTilde | TypeTag::IV, _) => ZLetter::ZPrime(k),
                (TypeTag::G, _) => ZLetter::ZG { t: k, s: k },
                (TypeTag::O, _) => ZLetter::ZO(k),
            })
            .collect();
        Self(letters)
    }

    pub fn letters(&self) -> &[ZLetter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().map(|l| l.weight()).sum()
    }

    pub fn first(&self) -> Option<ZLetter> {
        self.0.first().copied()
    }

    pub fn tail(&self) -> ZWord {
        ZWord(self.0.get(1..).unwrap_or(&[]).to_vec())
    }

    pub fn prepend(&self, letter: ZLetter) -> ZWord {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.push(letter);
        v.extend_from_slice(&self.0);
        ZWord(v)
    }

    /// Whether `self` is an admissible word of type `ty`. The empty word is
    /// the unit and counts as admissible.
    pub fn is_admissible(&self, ty: TypeTag) -> bool {
        let Some((head, tail)) = self.0.split_first() else {
            return true;
        };
        let head_ok = match ty {
            TypeTag::ITilde | TypeTag::IVTilde => {
                matches!(head, ZLetter::Theta) || matches!(head, ZLetter::Z(k) if *k >= 2)
            }
            TypeTag::I | TypeTag::IV => matches!(head, ZLetter::Z(k) if *k >= 2),
            TypeTag::II | TypeTag::III => matches!(head, ZLetter::ZPrime(k) if *k >= 1),
            TypeTag::G => matches!(head, ZLetter::ZG { t, s } if *t >= 1 && t <= s),
            TypeTag::O => matches!(head, ZLetter::ZO(s) if *s >= 2),
        };
        head_ok && tail.iter().all(|l| tail_letter_ok(ty, *l))
    }

    pub fn check_admissible(&self, ty: TypeTag) -> Result<()> {
        if self.is_admissible(ty) {
            Ok(())
        } else {
            Err(Error::Inadmissible {
                ty: ty.to_string(),
                word: self.to_string(),
            })
        }
    }

    /// The `(s; t)` data of the realized value.
    pub fn composition(&self, ty: TypeTag) -> Result<CompositionPair> {
        self.check_admissible(ty)?;
        if ty == TypeTag::O {
            return Err(Error::Unsupported(
                "O words have no single (t,s) realization".into(),
            ));
        }
        let mut s = Vec::with_capacity(self.len());
        let mut t = Vec::with_capacity(self.len());
        for (i, &l) in self.0.iter().enumerate() {
            let (tj, sj) = letter_exponents(ty, i == 0, l);
            t.push(tj);
            s.push(sj);
        }
        Ok(CompositionPair { s, t })
    }

    /// The typical operator word of the value, or for type O the expansion
    /// into `(ρ^{s⁻}π^{s⁺} + ρ^{s⁺}π^{s⁻}) y` blocks.
    pub fn to_py(&self, ty: TypeTag) -> Result<LinComb<PyWord>> {
        if ty == TypeTag::O {
            self.check_admissible(ty)?;
            let args: Vec<u32> = self
                .0
                .iter()
                .map(|l| match l {
                    ZLetter::ZO(s) => *s,
                    _ => unreachable!(),
                })
                .collect();
            return crate::okounkov::oword_expand(&args);
        }
        self.check_admissible(ty)?;
        let mut letters = Vec::new();
        for (i, &l) in self.0.iter().enumerate() {
            typical_block(ty, i == 0, l, &mut letters);
        }
        Ok(LinComb::word(PyWord::from_letters(letters)))
    }

    /// The G word with the same realization.
    pub fn to_g(&self, ty: TypeTag) -> Result<ZWord> {
        let c = self.composition(ty)?;
        Ok(ZWord::from_composition_g(&c))
    }

    pub fn from_composition_g(c: &CompositionPair) -> ZWord {
        ZWord(
            c.t.iter()
                .zip(&c.s)
                .map(|(&t, &s)| ZLetter::ZG { t, s })
                .collect(),
        )
    }
}

fn tail_letter_ok(ty: TypeTag, l: ZLetter) -> bool {
    match ty {
        TypeTag::ITilde => matches!(l, ZLetter::Theta) || matches!(l, ZLetter::Z(k) if k >= 1),
        TypeTag::I => matches!(l, ZLetter::Z(k) if k >= 1),
        TypeTag::II | TypeTag::IVTilde | TypeTag::IV => matches!(l, ZLetter::ZPrime(_)),
        TypeTag::III => matches!(l, ZLetter::Z(_)),
        TypeTag::G => matches!(l, ZLetter::ZG { t, s } if t <= s),
        TypeTag::O => matches!(l, ZLetter::ZO(s) if s >= 2),
    }
}

/// `(t, s)` of one admissible letter.
fn letter_exponents(ty: TypeTag, head: bool, l: ZLetter) -> (u32, u32) {
    match (ty, head, l) {
        (_, _, ZLetter::Theta) => (1, 1),
        (TypeTag::III, true, ZLetter::ZPrime(k)) => (1, k),
        (TypeTag::III, false, ZLetter::Z(k)) => (0, k),
        (_, _, ZLetter::Z(k)) => (k - 1, k),
        (_, _, ZLetter::ZPrime(k)) => (k, k),
        (_, _, ZLetter::ZG { t, s }) => (t, s),
        (_, _, ZLetter::ZO(_)) => unreachable!("O letters have no single realization"),
    }
}

fn typical_block(ty: TypeTag, head: bool, l: ZLetter, out: &mut Vec<PyLetter>) {
    let push = |out: &mut Vec<PyLetter>, letter, n: u32| {
        out.extend(std::iter::repeat_n(letter, n as usize));
    };
    match (ty, head, l) {
        (TypeTag::III, true, ZLetter::ZPrime(k)) => {
            push(out, PyLetter::Pi, k - 1);
            out.push(PyLetter::Rho);
        }
        (TypeTag::III, false, ZLetter::Z(k)) => push(out, PyLetter::Pi, k),
        _ => {
            let (t, s) = letter_exponents(ty, head, l);
            push(out, PyLetter::Rho, t);
            push(out, PyLetter::Pi, s - t);
        }
    }
    out.push(PyLetter::Y);
}

impl fmt::Display for ZWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// Letters `θ` (or `th`), `z3`, `z'3`, `z(1,2)`, `o3`, separated by
/// whitespace or dots; `1` is the empty word.
impl FromStr for ZWord {
    type Err = Error;
    fn from_str(text: &str) -> Result<Self> {
        let chars: Vec<(usize, char)> = text.char_indices().collect();
        let mut i = 0;
        let mut letters = Vec::new();
        let err = |pos: usize, msg: &str| Error::Parse {
            pos,
            msg: msg.to_string(),
        };
        let number = |i: &mut usize| -> Result<u32> {
            let start = *i;
            while *i < chars.len() && chars[*i].1.is_ascii_digit() {
                *i += 1;
            }
            if start == *i {
                return Err(err(
                    chars.get(start).map_or(text.len(), |c| c.0),
                    "expected a number",
                ));
            }
            let digits: String = chars[start..*i].iter().map(|c| c.1).collect();
            digits
                .parse()
                .map_err(|_| err(chars[start].0, "number too large"))
        };
        if text.trim() == "1" {
            return Ok(ZWord::empty());
        }
        while i < chars.len() {
            let (pos, c) = chars[i];
            match c {
                c if c.is_whitespace() || c == '.' || c == ',' => i += 1,
                'θ' => {
                    letters.push(ZLetter::Theta);
                    i += 1;
                }
                't' => {
                    let rest: String = chars[i..].iter().map(|c| c.1).collect();
                    let len = if rest.starts_with("theta") {
                        5
                    } else if rest.starts_with("th") {
                        2
                    } else {
                        return Err(err(pos, "expected theta"));
                    };
                    letters.push(ZLetter::Theta);
                    i += len;
                }
                'o' | 'O' => {
                    i += 1;
                    letters.push(ZLetter::ZO(number(&mut i)?));
                }
                'z' => {
                    i += 1;
                    match chars.get(i).map(|c| c.1) {
                        Some('\'') | Some('′') => {
                            i += 1;
                            letters.push(ZLetter::ZPrime(number(&mut i)?));
                        }
                        Some('(') => {
                            i += 1;
                            let t = number(&mut i)?;
                            if chars.get(i).map(|c| c.1) != Some(',') {
                                return Err(err(
                                    chars.get(i).map_or(text.len(), |c| c.0),
                                    "expected ','",
                                ));
                            }
                            i += 1;
                            let s = number(&mut i)?;
                            if chars.get(i).map(|c| c.1) != Some(')') {
                                return Err(err(
                                    chars.get(i).map_or(text.len(), |c| c.0),
                                    "expected ')'",
                                ));
                            }
                            i += 1;
                            letters.push(ZLetter::ZG { t, s });
                        }
                        _ => letters.push(ZLetter::Z(number(&mut i)?)),
                    }
                }
                _ => return Err(err(pos, &format!("unexpected character {c:?}"))),
            }
        }
        Ok(ZWord(letters))
    }
}

/// The combination `γ = z_1 - θ` used in Ĩ words.
pub fn gamma() -> LinComb<ZWord> {
    let mut c = LinComb::word(ZWord(vec![ZLetter::Z(1)]));
    c.add_term(ZWord(vec![ZLetter::Theta]), int(-1));
    c
}
