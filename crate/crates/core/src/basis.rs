//! Letter-wise change of basis between pure words `ρ^{a_1} y ... ρ^{a_d} y`
//! and the admissible words of each type.

use num_integer::binomial;

use crate::error::{Error, Result};
use crate::lincomb::LinComb;
use crate::rational::{int, Rational};
use crate::shuffle::pr_expand_comb;
use crate::word::{PyLetter, PyWord};
use crate::zword::{TypeTag, ZLetter, ZWord};

fn sign(n: u32) -> i64 {
    if n.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `ρ^a y` written over the letters of `ty`, at head or tail position.
fn pure_block(ty: TypeTag, head: bool, a: u32) -> Option<Vec<(ZLetter, Rational)>> {
    use ZLetter::*;
    let tilde_block = |a: u32| -> Vec<(ZLetter, Rational)> {
        match a {
            0 => vec![(Z(1), int(1)), (Theta, int(-1))],
            1 => vec![(Theta, int(1))],
            _ => {
                let s = sign(a);
                let mut v: Vec<(ZLetter, Rational)> =
                    (2..=a).map(|j| (Z(j), int(s * sign(j)))).collect();
                v.push((Theta, int(-s)));
                v
            }
        }
    };
    if head && a == 0 {
        return None;
    }
    Some(match ty {
        TypeTag::ITilde | TypeTag::I => tilde_block(a),
        TypeTag::IVTilde | TypeTag::IV if head => tilde_block(a),
        TypeTag::II | TypeTag::IVTilde | TypeTag::IV => vec![(ZPrime(a), int(1))],
        TypeTag::III if head => (0..a)
            .map(|i| {
                let c = binomial(a as i64 - 1, i as i64) * sign(a - 1 - i);
                (ZPrime(i + 1), int(c))
            })
            .collect(),
        TypeTag::III => (0..=a)
            .map(|i| (Z(i), int(binomial(a as i64, i as i64) * sign(a - i))))
            .collect(),
        TypeTag::G => vec![(ZG { t: a, s: a }, int(1))],
        TypeTag::O => return None,
    })
}

/// Block exponents of a pure word; `None` unless the word is π-free and ends in `y`.
pub fn pure_exponents(w: &PyWord) -> Option<Vec<u32>> {
    if !w.is_pure() {
        return None;
    }
    Some(w.blocks()?.iter().map(|b| b.len() as u32).collect())
}

pub fn pure_word(exponents: &[u32]) -> PyWord {
    let mut letters = Vec::new();
    for &a in exponents {
        letters.extend(std::iter::repeat_n(PyLetter::Rho, a as usize));
        letters.push(PyLetter::Y);
    }
    PyWord::from_letters(letters)
}

/// Expresses a combination of pure words over the admissible words of `ty`.
pub fn pure_to_type(ty: TypeTag, c: &LinComb<PyWord>) -> Result<LinComb<ZWord>> {
    if ty == TypeTag::O {
        return Err(Error::Unsupported("no pure basis for O words".into()));
    }
    let mut out = LinComb::new();
    for (w, coeff) in c.iter() {
        let closable = || Error::NotClosable {
            ty: ty.to_string(),
            word: w.to_string(),
        };
        let exps = pure_exponents(w).ok_or_else(closable)?;
        let mut partial: Vec<(Vec<ZLetter>, Rational)> = vec![(Vec::new(), coeff.clone())];
        for (i, &a) in exps.iter().enumerate() {
            let options = pure_block(ty, i == 0, a).ok_or_else(closable)?;
            let mut next = Vec::with_capacity(partial.len() * options.len());
            for (prefix, c) in &partial {
                for (letter, lc) in &options {
                    let mut p = prefix.clone();
                    p.push(*letter);
                    next.push((p, c * lc));
                }
            }
            partial = next;
        }
        for (letters, c) in partial {
            out.add_term(ZWord::from_letters(letters), c);
        }
    }
    Ok(out)
}

/// The pure-word expansion of a type word (P-R expansion of its typical form).
pub fn type_to_pure(ty: TypeTag, w: &ZWord) -> Result<LinComb<PyWord>> {
    Ok(pr_expand_comb(&w.to_py(ty)?))
}
