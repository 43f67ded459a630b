//! Quasi-shuffle (stuffle) products. All types share one recursion
//!
//! `αu * βv = α(u * σ(β)v) + β(σ(α)u * v) + [α,β](u * v)`
//!
//! where `σ` moves a head letter into the tail alphabet (identity unless the
//! type has distinct head and tail alphabets) and the inner products use the
//! tail bracket.

use std::collections::HashMap;

use crate::error::Result;
use crate::lincomb::LinComb;
use crate::rational::{frac, int, Rational};
use crate::zword::{TypeTag, ZLetter, ZWord};

type Terms = Vec<(ZLetter, Rational)>;

fn single(l: ZLetter) -> Terms {
    vec![(l, int(1))]
}

/// `[z_k,z_l] = z_{k+l} + z_{k+l-1}`, `[θ,z_k] = z_{k+1}`, `[θ,θ] = z_2 - θ`.
fn tilde_bracket(a: ZLetter, b: ZLetter) -> Terms {
    use ZLetter::*;
    match (a, b) {
        (Theta, Theta) => vec![(Z(2), int(1)), (Theta, int(-1))],
        (Theta, Z(k)) | (Z(k), Theta) => single(Z(k + 1)),
        (Z(k), Z(l)) => vec![(Z(k + l), int(1)), (Z(k + l - 1), int(1))],
        _ => unreachable!("not a Ĩ letter pair: {a}, {b}"),
    }
}

fn bracket(ty: TypeTag, head: bool, a: ZLetter, b: ZLetter) -> Terms {
    use ZLetter::*;
    match (ty, head, a, b) {
        (TypeTag::ITilde | TypeTag::I, _, _, _) => tilde_bracket(a, b),
        (TypeTag::IVTilde | TypeTag::IV, true, _, _) => tilde_bracket(a, b),
        (_, _, ZPrime(k), ZPrime(l)) if !(ty == TypeTag::III && head) => single(ZPrime(k + l)),
        (TypeTag::III, true, ZPrime(k), ZPrime(l)) => {
            vec![(ZPrime(k + l), int(1)), (ZPrime(k + l - 1), int(-1))]
        }
        (TypeTag::III, false, Z(k), Z(l)) => single(Z(k + l)),
        (TypeTag::G, _, ZG { t, s }, ZG { t: t2, s: s2 }) => single(ZG {
            t: t + t2,
            s: s + s2,
        }),
        (TypeTag::O, _, ZO(r), ZO(s)) => {
            let mut v = vec![(ZO(r + s), int(2))];
            if r % 2 == 1 && s % 2 == 1 {
                v.push((ZO(r + s - 2), frac(1, 2)));
            }
            v
        }
        _ => unreachable!("no {ty} bracket for {a}, {b}"),
    }
}

/// Head letter rewritten in the tail alphabet.
fn shift(ty: TypeTag, a: ZLetter) -> Terms {
    use ZLetter::*;
    match (ty, a) {
        (TypeTag::III, ZPrime(n)) => vec![(Z(n), int(1)), (Z(n - 1), int(-1))],
        (TypeTag::IVTilde | TypeTag::IV, Theta) => single(ZPrime(1)),
        (TypeTag::IVTilde | TypeTag::IV, Z(n)) => {
            vec![(ZPrime(n), int(1)), (ZPrime(n - 1), int(1))]
        }
        _ => single(a),
    }
}

fn has_head_alphabet(ty: TypeTag) -> bool {
    matches!(ty, TypeTag::III | TypeTag::IVTilde | TypeTag::IV)
}

/// Stuffle evaluator for one type, memoizing tail products.
pub struct Stuffler {
    ty: TypeTag,
    memo: HashMap<(Vec<ZLetter>, Vec<ZLetter>), LinComb<ZWord>>,
}

impl Stuffler {
    pub fn new(ty: TypeTag) -> Self {
        Self {
            ty,
            memo: HashMap::new(),
        }
    }

    pub fn stuffle(&mut self, u: &ZWord, v: &ZWord) -> Result<LinComb<ZWord>> {
        u.check_admissible(self.ty)?;
        v.check_admissible(self.ty)?;
        if !has_head_alphabet(self.ty) {
            return Ok(self.tail(u.letters(), v.letters()));
        }
        let (Some((&a, ur)), Some((&b, vr))) =
            (u.letters().split_first(), v.letters().split_first())
        else {
            return Ok(LinComb::word(if u.is_empty() {
                v.clone()
            } else {
                u.clone()
            }));
        };
        let mut out = LinComb::new();
        for (sb, c) in shift(self.ty, b) {
            let shifted = prepend(sb, vr);
            add_prefixed(&mut out, a, &self.tail(ur, &shifted), &c);
        }
        for (sa, c) in shift(self.ty, a) {
            let shifted = prepend(sa, ur);
            add_prefixed(&mut out, b, &self.tail(&shifted, vr), &c);
        }
        let rest = self.tail(ur, vr);
        for (l, c) in bracket(self.ty, true, a, b) {
            add_prefixed(&mut out, l, &rest, &c);
        }
        Ok(out)
    }

    pub fn stuffle_comb(
        &mut self,
        a: &LinComb<ZWord>,
        b: &LinComb<ZWord>,
    ) -> Result<LinComb<ZWord>> {
        let mut out = LinComb::new();
        for (u, cu) in a.iter() {
            for (v, cv) in b.iter() {
                out.add_scaled(&self.stuffle(u, v)?, &(cu * cv));
            }
        }
        Ok(out)
    }

    fn tail(&mut self, u: &[ZLetter], v: &[ZLetter]) -> LinComb<ZWord> {
        if u.is_empty() || v.is_empty() {
            let w = if u.is_empty() { v } else { u };
            return LinComb::word(ZWord::from_letters(w.to_vec()));
        }
        let key = (u.to_vec(), v.to_vec());
        if let Some(hit) = self.memo.get(&key) {
            return hit.clone();
        }
        let (a, ur) = (u[0], &u[1..]);
        let (b, vr) = (v[0], &v[1..]);
        let one = int(1);
        let mut out = LinComb::new();
        add_prefixed(&mut out, a, &self.tail(ur, v), &one);
        add_prefixed(&mut out, b, &self.tail(u, vr), &one);
        let rest = self.tail(ur, vr);
        for (l, c) in bracket(self.ty, false, a, b) {
            add_prefixed(&mut out, l, &rest, &c);
        }
        self.memo.insert(key, out.clone());
        out
    }
}

fn prepend(l: ZLetter, rest: &[ZLetter]) -> Vec<ZLetter> {
    let mut v = Vec::with_capacity(rest.len() + 1);
    v.push(l);
    v.extend_from_slice(rest);
    v
}

fn add_prefixed(out: &mut LinComb<ZWord>, l: ZLetter, c: &LinComb<ZWord>, scale: &Rational) {
    for (w, coeff) in c.iter() {
        out.add_term(w.prepend(l), coeff * scale);
    }
}

pub fn stuffle(ty: TypeTag, u: &ZWord, v: &ZWord) -> Result<LinComb<ZWord>> {
    Stuffler::new(ty).stuffle(u, v)
}

pub fn stuffle_o(u: &ZWord, v: &ZWord) -> Result<LinComb<ZWord>> {
    stuffle(TypeTag::O, u, v)
}
