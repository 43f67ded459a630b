//! Truncated q-series with exact coefficients, and evaluation of values
//! `Σ_{k_1>...>k_d>0} Π q^{t_j k_j} (1-q^{k_j})^{-s_j}`.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::composition::CompositionPair;
use crate::error::{Error, Result};
use crate::lincomb::LinComb;
use crate::rational::{format_rational, parse_rational, Rational};
use crate::word::{BlockForm, PyWord};
use crate::zword::{TypeTag, ZLetter, ZWord};

pub const DEFAULT_ORDER: usize = 100;

/// A power series in `q` modulo `q^{N+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    coeffs: Vec<Rational>,
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![Rational::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = Rational::from_integer(1.into());
        s
    }

    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "a series keeps at least the constant term"
        );
        Self { coeffs }
    }

    pub fn from_integers(coeffs: Vec<BigInt>) -> Self {
        Self::from_coeffs(coeffs.into_iter().map(Rational::from_integer).collect())
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &Rational {
        &self.coeffs[n]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order());
        Self {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    pub fn scaled(&self, c: &Rational) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn add_scaled(&mut self, other: &TruncatedSeries, c: &Rational) {
        assert_eq!(self.order(), other.order(), "orders differ");
        if c.is_zero() {
            return;
        }
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            if !b.is_zero() {
                *a += b * c;
            }
        }
    }

    /// `"p/q"` strings, constant term first.
    pub fn to_json_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(format_rational).collect()
    }

    pub fn from_json_strings(items: &[String]) -> Result<Self> {
        let coeffs = items
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()?;
        if coeffs.is_empty() {
            return Err(Error::Parse {
                pos: 0,
                msg: "empty series".into(),
            });
        }
        Ok(Self { coeffs })
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: Self) -> TruncatedSeries {
        let mut out = self.clone();
        out.add_scaled(rhs, &Rational::from_integer(1.into()));
        out
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: Self) -> TruncatedSeries {
        let mut out = self.clone();
        out.add_scaled(rhs, &Rational::from_integer((-1).into()));
        out
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: Self) -> TruncatedSeries {
        let order = self.order().min(rhs.order());
        let mut out = TruncatedSeries::zero(order);
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(order + 1 - i) {
                if !b.is_zero() {
                    out.coeffs[i + j] += a * b;
                }
            }
        }
        out
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let negative = *c < Rational::zero();
            let abs = if negative { -c.clone() } else { c.clone() };
            match (first, negative) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            let text = format_rational(&abs);
            match n {
                0 => write!(f, "{text}")?,
                _ => {
                    if text != "1" {
                        write!(f, "{text}*")?;
                    }
                    if n == 1 {
                        write!(f, "q")?;
                    } else {
                        write!(f, "q^{n}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.order() + 1)
    }
}

#[derive(Serialize, Deserialize)]
struct SeriesJson {
    order: usize,
    coeffs: Vec<String>,
}

impl Serialize for TruncatedSeries {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SeriesJson {
            order: self.order(),
            coeffs: self.to_json_strings(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for TruncatedSeries {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = SeriesJson::deserialize(d)?;
        let s =
            TruncatedSeries::from_json_strings(&raw.coeffs).map_err(serde::de::Error::custom)?;
        if s.order() != raw.order {
            return Err(serde::de::Error::custom(
                "order does not match coefficient count",
            ));
        }
        Ok(s)
    }
}

/// One summation level: numerator `Σ_m q^{m k}` over `numerators`, denominator `(1-q^k)^s`.
#[derive(Clone, Debug)]
struct Level {
    numerators: Vec<u32>,
    power: u32,
}

/// Coefficients that only ever get added: machine integers with a BigInt fallback.
trait Acc: Clone + Send + Sync {
    fn nil() -> Self;
    fn unit() -> Self;
    fn is_nil(&self) -> bool;
    /// `false` on overflow.
    fn add_from(&mut self, other: &Self) -> bool;
}

impl Acc for i128 {
    fn nil() -> Self {
        0
    }
    fn unit() -> Self {
        1
    }
    fn is_nil(&self) -> bool {
        *self == 0
    }
    fn add_from(&mut self, other: &Self) -> bool {
        match self.checked_add(*other) {
            Some(v) => {
                *self = v;
                true
            }
            None => false,
        }
    }
}

impl Acc for BigInt {
    fn nil() -> Self {
        Zero::zero()
    }
    fn unit() -> Self {
        1.into()
    }
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_from(&mut self, other: &Self) -> bool {
        *self += other;
        true
    }
}

/// Applies `numerator(q^k) / (1-q^k)^s` to `input`. `None` on overflow.
fn apply_level<T: Acc>(level: &Level, k: usize, input: &[T], order: usize) -> Option<Vec<T>> {
    let mut out = vec![T::nil(); order + 1];
    let mut any = false;
    for &m in &level.numerators {
        let shift = m as usize * k;
        if shift > order {
            continue;
        }
        for (n, c) in input.iter().enumerate().take(order + 1 - shift) {
            if !c.is_nil() {
                any = true;
                if !out[n + shift].add_from(c) {
                    return None;
                }
            }
        }
    }
    if !any {
        return Some(out);
    }
    for _ in 0..level.power {
        for n in k..=order {
            let (lo, hi) = out.split_at_mut(n);
            if !hi[0].add_from(&lo[n - k]) {
                return None;
            }
        }
    }
    Some(out)
}

fn nested_sum_with<T: Acc>(levels: &[Level], order: usize) -> Option<Vec<T>> {
    let mut unit = vec![T::nil(); order + 1];
    unit[0] = T::unit();
    if levels.is_empty() {
        return Some(unit);
    }
    // inner[k] is the level-(j+1) summand at index k; level d starts from 1.
    let mut inner: Vec<Option<Vec<T>>> = Vec::new();
    for (depth, level) in levels.iter().enumerate().rev() {
        let mut current: Vec<Option<Vec<T>>> = vec![None; order + 1];
        let mut prefix = vec![T::nil(); order + 1];
        for k in 1..=order {
            let source: &[T] = if depth + 1 == levels.len() {
                &unit
            } else {
                &prefix
            };
            let g = apply_level(level, k, source, order)?;
            if depth + 1 < levels.len() {
                if let Some(prev) = &inner[k] {
                    for (p, c) in prefix.iter_mut().zip(prev) {
                        if !p.add_from(c) {
                            return None;
                        }
                    }
                }
            }
            if g.iter().any(|c| !c.is_nil()) {
                current[k] = Some(g);
            }
        }
        inner = current;
    }
    let mut total = vec![T::nil(); order + 1];
    for g in inner.into_iter().flatten() {
        for (t, c) in total.iter_mut().zip(&g) {
            if !t.add_from(c) {
                return None;
            }
        }
    }
    Some(total)
}

fn nested_sum(levels: &[Level], order: usize) -> Vec<BigInt> {
    match nested_sum_with::<i128>(levels, order) {
        Some(v) => v.into_iter().map(BigInt::from).collect(),
        None => nested_sum_with::<BigInt>(levels, order).expect("BigInt never overflows"),
    }
}

/// Evaluates the value with exponent data `c` to order `N`.
pub fn eval_value(c: &CompositionPair, order: usize) -> Result<TruncatedSeries> {
    if let Some(&t1) = c.t.first() {
        if t1 == 0 {
            return Err(Error::Divergent(c.to_string()));
        }
    }
    let levels: Vec<Level> =
        c.t.iter()
            .zip(&c.s)
            .map(|(&t, &s)| Level {
                numerators: vec![t],
                power: s,
            })
            .collect();
    Ok(TruncatedSeries::from_integers(nested_sum(&levels, order)))
}

/// Evaluates `Σ Π (q^{k_j s_j⁺} + q^{k_j s_j⁻}) / (1-q^{k_j})^{s_j}` directly.
pub fn eval_okounkov(args: &[u32], order: usize) -> Result<TruncatedSeries> {
    if let Some(&bad) = args.iter().find(|&&s| s < 2) {
        return Err(Error::ArgumentTooSmall(bad));
    }
    let levels: Vec<Level> = args
        .iter()
        .map(|&s| Level {
            numerators: vec![s / 2, s - s / 2],
            power: s,
        })
        .collect();
    Ok(TruncatedSeries::from_integers(nested_sum(&levels, order)))
}

pub fn eval_zword(w: &ZWord, ty: TypeTag, order: usize) -> Result<TruncatedSeries> {
    if ty == TypeTag::O {
        w.check_admissible(ty)?;
        let args: Vec<u32> = w
            .letters()
            .iter()
            .map(|l| match l {
                ZLetter::ZO(s) => *s,
                _ => unreachable!(),
            })
            .collect();
        return eval_okounkov(&args, order);
    }
    eval_value(&w.composition(ty)?, order)
}

pub fn eval_pyword(w: &PyWord, order: usize) -> Result<TruncatedSeries> {
    eval_value(&w.sort_blocks().composition()?, order)
}

fn sum_terms<W: Ord + Clone + Sync>(
    c: &LinComb<W>,
    order: usize,
    eval: impl Fn(&W) -> Result<TruncatedSeries> + Sync,
) -> Result<TruncatedSeries> {
    let terms: Vec<(&W, &Rational)> = c.iter().collect();
    let parts = terms
        .par_iter()
        .map(|(w, coeff)| eval(w).map(|s| s.scaled(coeff)))
        .collect::<Result<Vec<_>>>()?;
    let mut total = TruncatedSeries::zero(order);
    let one = Rational::from_integer(1.into());
    for p in &parts {
        total.add_scaled(p, &one);
    }
    Ok(total)
}

pub fn eval_lincomb(c: &LinComb<ZWord>, ty: TypeTag, order: usize) -> Result<TruncatedSeries> {
    sum_terms(c, order, |w| eval_zword(w, ty, order))
}

pub fn eval_py_lincomb(c: &LinComb<PyWord>, order: usize) -> Result<TruncatedSeries> {
    sum_terms(c, order, |w| eval_pyword(w, order))
}

pub fn eval_composition_lincomb(
    c: &LinComb<CompositionPair>,
    order: usize,
) -> Result<TruncatedSeries> {
    sum_terms(c, order, |w| eval_value(w, order))
}

/// Evaluates `ρ^{α_1}y^{β_1}...ρ^{α_ℓ}y^{β_ℓ}` from the binomial multi-sum
/// `Σ Π_r C(j_r-1, β_r-1) C(k_r-1, α_r-1) q^{k_r (j_r + ... + j_ℓ)}`
/// by direct enumeration.
pub fn eval_nested_sum(blocks: &BlockForm, order: usize) -> TruncatedSeries {
    let runs = &blocks.runs;
    let mut total = vec![BigInt::zero(); order + 1];
    let mut js = vec![0u64; runs.len()];
    enumerate_js(runs, order as u64, runs.len(), 0, &mut js, &mut total);
    TruncatedSeries::from_integers(total)
}

/// Chooses `j_r` from the last index down, tracking the tail sums.
fn enumerate_js(
    runs: &[(u32, u32)],
    order: u64,
    r: usize,
    tail_sum: u64,
    js: &mut Vec<u64>,
    total: &mut [BigInt],
) {
    if r == 0 {
        add_k_sums(runs, js, order, total);
        return;
    }
    let (_, beta) = runs[r - 1];
    // Every k_s >= α_s, so the exponent is at least Σ_s α_s J_s >= α_r J_r + Σ_{s<r} α_s J_r.
    let alpha_prefix: u64 = runs[..r].iter().map(|&(a, _)| a as u64).sum();
    let mut j = beta as u64;
    while alpha_prefix * (tail_sum + j) <= order {
        js[r - 1] = j;
        enumerate_js(runs, order, r - 1, tail_sum + j, js, total);
        j += 1;
    }
}

fn add_k_sums(runs: &[(u32, u32)], js: &[u64], order: u64, total: &mut [BigInt]) {
    let mut weight = BigInt::from(1);
    for (&(_, beta), &j) in runs.iter().zip(js) {
        weight *= binomial(BigInt::from(j - 1), BigInt::from(beta - 1));
    }
    let tails: Vec<u64> = (0..js.len()).map(|r| js[r..].iter().sum()).collect();
    let mut series = vec![BigInt::zero(); order as usize + 1];
    series[0] = weight;
    for (&(alpha, _), &tail) in runs.iter().zip(&tails) {
        let mut next = vec![BigInt::zero(); order as usize + 1];
        let mut k = alpha as u64;
        while k * tail <= order {
            let c = binomial(BigInt::from(k - 1), BigInt::from(alpha - 1));
            let shift = (k * tail) as usize;
            for n in 0..=(order as usize - shift) {
                if !series[n].is_zero() {
                    next[n + shift] += &series[n] * &c;
                }
            }
            k += 1;
        }
        series = next;
    }
    for (t, c) in total.iter_mut().zip(series) {
        *t += c;
    }
}

/// Integer coefficients of a series known to be integral.
pub fn integer_coeffs(s: &TruncatedSeries) -> Option<Vec<i64>> {
    s.coeffs()
        .iter()
        .map(|c| {
            if c.is_integer() {
                c.to_integer().to_i64()
            } else {
                None
            }
        })
        .collect()
}
