//! Admissible words of bounded weight and depth, and their closed-form counts.

use num_integer::binomial;

use crate::zword::{TypeTag, ZLetter, ZWord};

/// Sort key for matrix columns: weight, depth, then `(t_1, s_1, ..., t_d, s_d)`
/// (for type O, the arguments).
pub fn canonical_key(ty: TypeTag, w: &ZWord) -> (u32, usize, Vec<u32>) {
    let flat = match w.composition(ty) {
        Ok(c) => c.t.iter().zip(&c.s).flat_map(|(&t, &s)| [t, s]).collect(),
        Err(_) => w.letters().iter().map(|l| l.weight()).collect(),
    };
    (w.weight(), w.depth(), flat)
}

pub fn sort_canonical(ty: TypeTag, words: &mut [ZWord]) {
    words.sort_by_cached_key(|w| canonical_key(ty, w));
}

fn letters(ty: TypeTag, head: bool, budget: u32) -> Vec<ZLetter> {
    use ZLetter::*;
    let mut out = Vec::new();
    let theta = matches!(ty, TypeTag::ITilde) || (ty == TypeTag::IVTilde && head);
    if theta && budget >= 1 {
        out.push(Theta);
    }
    match (ty, head) {
        (TypeTag::ITilde | TypeTag::I | TypeTag::IVTilde | TypeTag::IV, true) => {
            out.extend((2..=budget).map(Z))
        }
        (TypeTag::ITilde | TypeTag::I, false) => out.extend((1..=budget).map(Z)),
        (TypeTag::II | TypeTag::III, true) => out.extend((1..=budget).map(ZPrime)),
        (TypeTag::II | TypeTag::IVTilde | TypeTag::IV, false) => {
            out.extend((0..=budget).map(ZPrime))
        }
        (TypeTag::III, false) => out.extend((0..=budget).map(Z)),
        (TypeTag::G, _) => {
            for s in 0..=budget {
                for t in (if head { 1 } else { 0 })..=s {
                    out.push(ZG { t, s });
                }
            }
        }
        (TypeTag::O, _) => out.extend((2..=budget).map(ZO)),
    }
    out
}

fn extend(
    ty: TypeTag,
    prefix: &mut Vec<ZLetter>,
    budget: u32,
    depth_left: usize,
    out: &mut Vec<ZWord>,
) {
    if depth_left == 0 {
        return;
    }
    for l in letters(ty, prefix.is_empty(), budget) {
        prefix.push(l);
        out.push(ZWord::from_letters(prefix.clone()));
        extend(ty, prefix, budget - l.weight(), depth_left - 1, out);
        prefix.pop();
    }
}

/// All admissible words of `ty` with weight `<= w` and depth `<= w`, in canonical order.
pub fn enumerate_admissible(ty: TypeTag, w: u32) -> Vec<ZWord> {
    let mut out = Vec::new();
    extend(ty, &mut Vec::new(), w, w as usize, &mut out);
    sort_canonical(ty, &mut out);
    out
}

/// Fibonacci numbers with `F_0 = F_1 = 1`.
fn fib_from_one(n: u32) -> u64 {
    let (mut a, mut b) = (1u64, 1u64);
    for _ in 0..n {
        (a, b) = (b, a + b);
    }
    a
}

fn positive_products(parts: u32, total: u32) -> u64 {
    // Σ x_1...x_d over compositions of `total` into `parts` positive parts.
    fn rec(parts: u32, total: u32) -> u64 {
        if parts == 0 {
            return (total == 0) as u64;
        }
        (1..=total)
            .map(|x| x as u64 * rec(parts - 1, total - x))
            .sum()
    }
    rec(parts, total)
}

/// Closed-form count of the window, independent of the enumeration.
pub fn closed_form_count(ty: TypeTag, w: u32) -> u64 {
    let w64 = w as u64;
    match ty {
        TypeTag::ITilde => fib_from_one(2 * w) - 1,
        TypeTag::I => (1u64 << (w.max(1) - 1)) - 1,
        TypeTag::II | TypeTag::III | TypeTag::IVTilde => binomial(2 * w64, w64) - 1,
        TypeTag::IV => binomial(2 * w64 - 1, w64) - 1,
        TypeTag::G => (1..=w)
            .flat_map(|d| (1..=w).map(move |k| (d, k)))
            .map(|(d, k)| positive_products(d, d + k - 1))
            .sum(),
        // Compositions of n into parts >= 2 number F_{n-2} (F_0 = F_1 = 1).
        TypeTag::O => (2..=w).map(|n| fib_from_one(n - 2)).sum(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_windows() {
        assert_eq!(enumerate_admissible(TypeTag::ITilde, 3).len(), 12);
        assert_eq!(enumerate_admissible(TypeTag::II, 4).len(), 69);
        let o: Vec<String> = enumerate_admissible(TypeTag::O, 5)
            .iter()
            .map(|w| w.to_string())
            .collect();
        assert_eq!(o, ["o2", "o3", "o4", "o2 o2", "o5", "o2 o3", "o3 o2"]);
        assert_eq!(enumerate_admissible(TypeTag::I, 2).len(), 1);
    }

    #[test]
    fn enumeration_matches_closed_forms() {
        for ty in TypeTag::ALL {
            let top = if ty == TypeTag::G { 4 } else { 6 };
            for w in 1..=top {
                assert_eq!(
                    enumerate_admissible(ty, w).len() as u64,
                    closed_form_count(ty, w),
                    "{ty} w={w}"
                );
            }
        }
    }

    #[test]
    fn canonical_order_is_graded() {
        let words = enumerate_admissible(TypeTag::G, 3);
        for pair in words.windows(2) {
            assert!(canonical_key(TypeTag::G, &pair[0]) < canonical_key(TypeTag::G, &pair[1]));
        }
    }
}
