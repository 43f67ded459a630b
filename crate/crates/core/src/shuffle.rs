//! The shuffle product on operator words, P-R expansion and the helpers that
//! move shuffle output back into a type's typical forms.

use std::collections::HashMap;

use crate::basis;
use crate::error::{Error, Result};
use crate::lincomb::LinComb;
use crate::rational::int;
use crate::word::{PyLetter, PyWord};
use crate::zword::{TypeTag, ZWord};

type Key = (Vec<PyLetter>, Vec<PyLetter>);

/// Shuffle evaluator with a private memo table. Create one per worker thread.
#[derive(Default)]
pub struct Shuffler {
    memo: HashMap<Key, LinComb<PyWord>>,
}

fn prefixed(letter: PyLetter, c: &LinComb<PyWord>, sign: i64, out: &mut LinComb<PyWord>) {
    let scale = int(sign);
    for (w, coeff) in c.iter() {
        out.add_term(w.prepend(letter), coeff * &scale);
    }
}

fn with_head(letter: PyLetter, rest: &[PyLetter]) -> Vec<PyLetter> {
    let mut v = Vec::with_capacity(rest.len() + 1);
    v.push(letter);
    v.extend_from_slice(rest);
    v
}

impl Shuffler {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn shuffle(&mut self, u: &PyWord, v: &PyWord) -> LinComb<PyWord> {
        self.run(u.letters(), v.letters())
    }

    pub fn shuffle_comb(&mut self, a: &LinComb<PyWord>, b: &LinComb<PyWord>) -> LinComb<PyWord> {
        let mut out = LinComb::new();
        for (u, cu) in a.iter() {
            for (v, cv) in b.iter() {
                out.add_scaled(&self.shuffle(u, v), &(cu * cv));
            }
        }
        out
    }

    fn run(&mut self, u: &[PyLetter], v: &[PyLetter]) -> LinComb<PyWord> {
        if u.is_empty() {
            return LinComb::word(PyWord::from_letters(v.to_vec()));
        }
        if v.is_empty() {
            return LinComb::word(PyWord::from_letters(u.to_vec()));
        }
        let key = (u.to_vec(), v.to_vec());
        if let Some(hit) = self.memo.get(&key) {
            return hit.clone();
        }
        use PyLetter::*;
        let (a, ur) = (u[0], &u[1..]);
        let (b, vr) = (v[0], &v[1..]);
        let mut out = LinComb::new();
        match (a, b) {
            (Y, _) => prefixed(Y, &self.run(ur, v), 1, &mut out),
            (_, Y) => prefixed(Y, &self.run(u, vr), 1, &mut out),
            (Pi, Pi) => {
                prefixed(Pi, &self.run(ur, v), 1, &mut out);
                prefixed(Pi, &self.run(u, vr), 1, &mut out);
                prefixed(Pi, &self.run(ur, vr), -1, &mut out);
            }
            (Rho, Rho) => {
                prefixed(Rho, &self.run(ur, v), 1, &mut out);
                prefixed(Rho, &self.run(u, vr), 1, &mut out);
                prefixed(Rho, &self.run(ur, vr), 1, &mut out);
            }
            (Rho, Pi) => self.rho_pi(ur, vr, &mut out),
            (Pi, Rho) => self.rho_pi(vr, ur, &mut out),
        }
        self.memo.insert(key, out.clone());
        out
    }

    /// `ρu ⧢ πv = ρ(ρu ⧢ v) + ρ(u ⧢ ρv) + ρu ⧢ v + ρ(u ⧢ v)`
    fn rho_pi(&mut self, ur: &[PyLetter], vr: &[PyLetter], out: &mut LinComb<PyWord>) {
        use PyLetter::Rho;
        let rho_u = with_head(Rho, ur);
        let rho_v = with_head(Rho, vr);
        prefixed(Rho, &self.run(&rho_u, vr), 1, out);
        prefixed(Rho, &self.run(ur, &rho_v), 1, out);
        out.add_assign_ref(&self.run(&rho_u, vr));
        prefixed(Rho, &self.run(ur, vr), 1, out);
    }
}

pub fn shuffle(u: &PyWord, v: &PyWord) -> LinComb<PyWord> {
    Shuffler::new().shuffle(u, v)
}

/// Replaces every `π` by `ρ + 1`.
pub fn pr_expand(u: &PyWord) -> LinComb<PyWord> {
    let mut partial: Vec<Vec<PyLetter>> = vec![Vec::with_capacity(u.len())];
    for &l in u.letters() {
        if l == PyLetter::Pi {
            let mut next = Vec::with_capacity(partial.len() * 2);
            for w in partial {
                let mut with_rho = w.clone();
                with_rho.push(PyLetter::Rho);
                next.push(with_rho);
                next.push(w);
            }
            partial = next;
        } else {
            for w in &mut partial {
                w.push(l);
            }
        }
    }
    partial
        .into_iter()
        .map(|w| (PyWord::from_letters(w), int(1)))
        .collect()
}

pub fn pr_expand_comb(c: &LinComb<PyWord>) -> LinComb<PyWord> {
    let mut out = LinComb::new();
    for (w, coeff) in c.iter() {
        out.add_scaled(&pr_expand(w), coeff);
    }
    out
}

/// Rewrites a combination in the typical forms of `ty`. For G the blocks are
/// sorted; every other type goes through the pure basis.
pub fn normalize_typical(ty: TypeTag, c: &LinComb<PyWord>) -> Result<LinComb<PyWord>> {
    to_type_basis(ty, c)?.map_linear(|w| w.to_py(ty))
}

/// Expresses a combination of operator words over the admissible words of `ty`.
pub fn to_type_basis(ty: TypeTag, c: &LinComb<PyWord>) -> Result<LinComb<ZWord>> {
    if ty == TypeTag::G {
        let mut out = LinComb::new();
        for (w, coeff) in c.iter() {
            let comp = w.sort_blocks().composition()?;
            if !comp.is_admissible() && !comp.s.is_empty() {
                return Err(Error::NotClosable {
                    ty: ty.to_string(),
                    word: w.to_string(),
                });
            }
            out.add_term(ZWord::from_composition_g(&comp), coeff.clone());
        }
        return Ok(out);
    }
    basis::pure_to_type(ty, &pr_expand_comb(c))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> PyWord {
        s.parse().unwrap()
    }

    fn comb(terms: &[(&str, i64)]) -> LinComb<PyWord> {
        terms.iter().map(|(s, c)| (w(s), int(*c))).collect()
    }

    #[test]
    fn small_shuffles() {
        assert_eq!(
            shuffle(&w("ry"), &w("ry")),
            comb(&[("ryry", 2), ("ryy", 1)])
        );
        assert_eq!(
            shuffle(&w("py"), &w("py")),
            comb(&[("pypy", 2), ("pyy", -1)])
        );
        assert_eq!(shuffle(&w("y"), &w("ry")), comb(&[("yry", 1)]));
        assert_eq!(shuffle(&PyWord::empty(), &w("rpy")), comb(&[("rpy", 1)]));
    }

    #[test]
    fn pr_expansion() {
        assert_eq!(
            pr_expand(&w("ppry")),
            comb(&[("rrry", 1), ("rry", 2), ("ry", 1)])
        );
        assert_eq!(pr_expand(&w("rry")), comb(&[("rry", 1)]));
        assert_eq!(pr_expand(&w("rpy")), comb(&[("rry", 1), ("ry", 1)]));
    }

    #[test]
    fn typical_forms() {
        let n = normalize_typical(TypeTag::ITilde, &comb(&[("rry", 1)])).unwrap();
        assert_eq!(n, comb(&[("rpy", 1), ("ry", -1)]));
        let n = normalize_typical(TypeTag::II, &comb(&[("ryry", 1)])).unwrap();
        assert_eq!(n, comb(&[("ryry", 1)]));
        let n = normalize_typical(TypeTag::III, &comb(&[("prry", 1)])).unwrap();
        assert_eq!(n, comb(&[("ppry", 1), ("pry", -1)]));
    }

    #[test]
    fn inadmissible_output_is_rejected() {
        let e = normalize_typical(TypeTag::II, &comb(&[("yry", 1)]));
        assert!(matches!(e, Err(Error::NotClosable { .. })));
    }
}
