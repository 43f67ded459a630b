//! Series checks shared by the property suites and the acceptance run. Each
//! returns `Err` with a description of the first violation.

use num_bigint::BigInt;
use num_integer::binomial;

use qmzv::basis::pure_to_type;
use qmzv::enumerate::enumerate_admissible;
use qmzv::rational::{frac, int};
use qmzv::series::{
    eval_lincomb, eval_nested_sum, eval_py_lincomb, eval_pyword, eval_value, eval_zword,
};
use qmzv::shuffle::{pr_expand, pr_expand_comb, to_type_basis, Shuffler};
use qmzv::stuffle::Stuffler;
use qmzv::{BlockForm, LinComb, PyWord, TruncatedSeries, TypeTag, ZLetter, ZWord};

pub type Check = Result<(), String>;

pub const PRODUCT_TYPES: [TypeTag; 7] = [
    TypeTag::ITilde,
    TypeTag::I,
    TypeTag::II,
    TypeTag::III,
    TypeTag::IVTilde,
    TypeTag::IV,
    TypeTag::G,
];

pub fn words(ty: TypeTag, w: u32) -> Vec<ZWord> {
    enumerate_admissible(ty, w)
}

/// Products of I and IV words are taken in the larger family.
pub fn product_type(ty: TypeTag) -> TypeTag {
    ty.parent().unwrap_or(ty)
}

fn product(u: &ZWord, v: &ZWord, ty: TypeTag, order: usize) -> TruncatedSeries {
    &eval_zword(u, ty, order).unwrap() * &eval_zword(v, ty, order).unwrap()
}

pub fn stuffle_homomorphism(ty: TypeTag, u: &ZWord, v: &ZWord, order: usize) -> Check {
    let pt = product_type(ty);
    let prod = Stuffler::new(pt).stuffle(u, v).map_err(|e| e.to_string())?;
    if eval_lincomb(&prod, pt, order).unwrap() != product(u, v, ty, order) {
        return Err(format!("{ty}: {u} * {v}"));
    }
    Ok(())
}

pub fn shuffle_homomorphism(ty: TypeTag, u: &ZWord, v: &ZWord, order: usize) -> Check {
    let pt = product_type(ty);
    let prod = Shuffler::new().shuffle_comb(&u.to_py(pt).unwrap(), &v.to_py(pt).unwrap());
    let want = product(u, v, ty, order);
    if eval_py_lincomb(&prod, order).unwrap() != want {
        return Err(format!("{ty}: {u} ш {v}"));
    }
    let typed = to_type_basis(pt, &prod).map_err(|e| e.to_string())?;
    if eval_lincomb(&typed, pt, order).unwrap() != want {
        return Err(format!("{ty}: {u} ш {v} in typical forms"));
    }
    Ok(())
}

pub fn stuffle_comm_assoc(ty: TypeTag, a: &ZWord, b: &ZWord, c: &ZWord) -> Check {
    let mut st = Stuffler::new(ty);
    let ab = st.stuffle(a, b).unwrap();
    if ab != st.stuffle(b, a).unwrap() {
        return Err(format!("{ty}: {a} * {b} is not commutative"));
    }
    let bc = st.stuffle(b, c).unwrap();
    let left = st.stuffle_comb(&ab, &LinComb::word(c.clone())).unwrap();
    let right = st.stuffle_comb(&LinComb::word(a.clone()), &bc).unwrap();
    if left != right {
        return Err(format!(
            "{ty}: ({a} * {b}) * {c} differs from {a} * ({b} * {c})"
        ));
    }
    Ok(())
}

/// Shuffle rules use `π = ρ + 1`, so associativity is compared in the pure basis.
pub fn shuffle_comm_assoc(a: &LinComb<PyWord>, b: &LinComb<PyWord>, c: &LinComb<PyWord>) -> Check {
    let mut sh = Shuffler::new();
    let ab = sh.shuffle_comb(a, b);
    if ab != sh.shuffle_comb(b, a) {
        return Err(format!("{a} ш {b} is not commutative"));
    }
    let bc = sh.shuffle_comb(b, c);
    if pr_expand_comb(&sh.shuffle_comb(&ab, c)) != pr_expand_comb(&sh.shuffle_comb(a, &bc)) {
        return Err(format!("({a} ш {b}) ш {c} differs from {a} ш ({b} ш {c})"));
    }
    Ok(())
}

pub fn pure_words(w: u32) -> Vec<PyWord> {
    words(TypeTag::II, w)
        .iter()
        .map(|x| {
            x.to_py(TypeTag::II)
                .unwrap()
                .words()
                .next()
                .unwrap()
                .clone()
        })
        .collect()
}

/// Returns the number of pure words checked.
pub fn duality_values(w: u32, order: usize) -> Result<usize, String> {
    let all = pure_words(w);
    for p in &all {
        let d = p.dual().map_err(|e| e.to_string())?;
        if d.dual().unwrap() != *p || !d.is_admissible() {
            return Err(format!("{p} -> {d} is not an admissible involution"));
        }
        if eval_pyword(p, order).unwrap() != eval_pyword(&d, order).unwrap() {
            return Err(format!("{p} and its dual {d} differ"));
        }
    }
    Ok(all.len())
}

pub fn duality_in_basis(ty: TypeTag, w: u32, order: usize) -> Check {
    for p in pure_words(w) {
        let d = p.dual().unwrap();
        let lhs = pure_to_type(ty, &LinComb::word(p.clone())).unwrap();
        let rhs = pure_to_type(ty, &LinComb::word(d)).unwrap();
        if eval_lincomb(&lhs, ty, order).unwrap() != eval_lincomb(&rhs, ty, order).unwrap() {
            return Err(format!("{ty}: duality fails for {p}"));
        }
    }
    Ok(())
}

/// Both the full expansion into pure words and every single P-R step
/// preserve the value. Returns the number of G words checked.
pub fn pr_invariance(w: u32, order: usize) -> Result<usize, String> {
    let all = words(TypeTag::G, w);
    for word in &all {
        let direct = eval_zword(word, TypeTag::G, order).unwrap();
        let py = word.to_py(TypeTag::G).unwrap();
        let expanded = pr_expand(py.words().next().unwrap());
        if !expanded.words().all(PyWord::is_pure)
            || eval_py_lincomb(&expanded, order).unwrap() != direct
        {
            return Err(format!("P-R expansion of {word}"));
        }
        for (j, letter) in word.letters().iter().enumerate() {
            let ZLetter::ZG { t, s } = *letter else {
                unreachable!()
            };
            if t == s {
                continue;
            }
            let with = |nt, ns| {
                let mut c = word.composition(TypeTag::G).unwrap();
                c.t[j] = nt;
                c.s[j] = ns;
                c
            };
            let split = &eval_value(&with(t + 1, s), order).unwrap()
                + &eval_value(&with(t, s - 1), order).unwrap();
            if split != direct {
                return Err(format!("P-R step of {word} at block {j}"));
            }
        }
    }
    Ok(all.len())
}

/// `(t^{n⁺} + t^{n⁻}) / (1-t)^n` from binomial coefficients.
pub fn f_o(n: u32, order: usize) -> TruncatedSeries {
    let (minus, plus) = (n / 2, n - n / 2);
    let inv = |k: usize| BigInt::from(binomial(k as u64 + n as u64 - 1, n as u64 - 1));
    let coeffs = (0..=order)
        .map(|k| {
            let mut c = BigInt::from(0);
            for e in [minus as usize, plus as usize] {
                if k >= e {
                    c += inv(k - e);
                }
            }
            c
        })
        .collect();
    TruncatedSeries::from_integers(coeffs)
}

pub fn f_o_rule(max: u32, order: usize) -> Check {
    for r in 2..=max {
        for s in 2..=max {
            let lhs = &f_o(r, order) * &f_o(s, order);
            let mut rhs = f_o(r + s, order).scaled(&int(2));
            if r % 2 == 1 && s % 2 == 1 {
                rhs.add_scaled(&f_o(r + s - 2, order), &frac(1, 2));
            }
            if lhs != rhs {
                return Err(format!("F^O product rule fails for r={r}, s={s}"));
            }
        }
    }
    Ok(())
}

/// All block forms `ρ^{a_1}y^{b_1}...` with positive runs and `Σ (a_i + b_i) <= max_total`.
pub fn block_forms(max_total: u32) -> Vec<BlockForm> {
    let mut out = Vec::new();
    let mut stack: Vec<Vec<(u32, u32)>> = vec![vec![]];
    while let Some(runs) = stack.pop() {
        let used: u32 = runs.iter().map(|&(a, b)| a + b).sum();
        if !runs.is_empty() {
            out.push(BlockForm::new(runs.clone()));
        }
        for a in 1..=max_total.saturating_sub(used + 1) {
            for b in 1..=max_total - used - a {
                let mut next = runs.clone();
                next.push((a, b));
                stack.push(next);
            }
        }
    }
    out
}

pub fn nested_sums(max_total: u32, order: usize) -> Result<usize, String> {
    let forms = block_forms(max_total);
    for bf in &forms {
        let word = bf.to_word();
        if eval_nested_sum(bf, order) != eval_value(&word.composition().unwrap(), order).unwrap() {
            return Err(format!("nested sum differs for {word}"));
        }
    }
    Ok(forms.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f_o_low_orders() {
        // 2t / (1-t)^2 and (t + t^2) / (1-t)^3
        assert_eq!(f_o(2, 4), TruncatedSeries::from_integers([0, 2, 4, 6, 8].map(BigInt::from).to_vec()));
        assert_eq!(f_o(3, 3), TruncatedSeries::from_integers([0, 1, 4, 9].map(BigInt::from).to_vec()));
    }

    #[test]
    fn block_form_count() {
        // runs (a, b) with a + b <= 5: one run gives 10 forms, two runs 5
        assert_eq!(block_forms(5).len(), 15);
        assert!(block_forms(1).is_empty());
    }
}
