use proptest::prelude::*;
use proptest::sample::select;

use qmzv::rational::{format_rational, frac, parse_rational};
use qmzv::relations::gen_all;
use qmzv::series::{eval_lincomb, eval_zword};
use qmzv::shuffle::shuffle;
use qmzv::stuffle::Stuffler;
use qmzv::{CompositionPair, LinComb, TypeTag, ZWord};
use qmzv_verify::*;

const N: usize = 50;

macro_rules! homomorphism_suite {
    ($name:ident, $ty:expr) => {
        proptest! {
            #![proptest_config(ProptestConfig::with_cases(200))]
            #[test]
            fn $name(u in select(words($ty, 4)), v in select(words($ty, 4))) {
                prop_assert_eq!(stuffle_homomorphism($ty, &u, &v, N), Ok(()));
                prop_assert_eq!(shuffle_homomorphism($ty, &u, &v, N), Ok(()));
            }
        }
    };
}

homomorphism_suite!(homomorphisms_tilde_i, TypeTag::ITilde);
homomorphism_suite!(homomorphisms_i, TypeTag::I);
homomorphism_suite!(homomorphisms_ii, TypeTag::II);
homomorphism_suite!(homomorphisms_iii, TypeTag::III);
homomorphism_suite!(homomorphisms_tilde_iv, TypeTag::IVTilde);
homomorphism_suite!(homomorphisms_iv, TypeTag::IV);
homomorphism_suite!(homomorphisms_g, TypeTag::G);

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn stuffle_homomorphism_o(u in select(words(TypeTag::O, 6)), v in select(words(TypeTag::O, 6))) {
        let prod = Stuffler::new(TypeTag::O).stuffle(&u, &v).unwrap();
        let lhs = eval_lincomb(&prod, TypeTag::O, N).unwrap();
        let rhs = &eval_zword(&u, TypeTag::O, N).unwrap() * &eval_zword(&v, TypeTag::O, N).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn stuffle_commutes_and_associates(
        ty in select(PRODUCT_TYPES.map(product_type).to_vec()),
        seed in any::<[usize; 3]>(),
    ) {
        let ws = words(ty, 3);
        let [a, b, c] = seed.map(|i| ws[i % ws.len()].clone());
        prop_assert_eq!(stuffle_comm_assoc(ty, &a, &b, &c), Ok(()));
    }

    #[test]
    fn o_stuffle_commutes_and_associates(seed in any::<[usize; 3]>()) {
        let ws = words(TypeTag::O, 5);
        let [a, b, c] = seed.map(|i| ws[i % ws.len()].clone());
        prop_assert_eq!(stuffle_comm_assoc(TypeTag::O, &a, &b, &c), Ok(()));
    }

    #[test]
    fn shuffle_commutes_and_associates(seed in any::<[usize; 3]>()) {
        let ws = words(TypeTag::G, 2);
        let [a, b, c] = seed.map(|i| ws[i % ws.len()].to_py(TypeTag::G).unwrap());
        prop_assert_eq!(shuffle_comm_assoc(&a, &b, &c), Ok(()));
    }

    #[test]
    fn rationals_are_exact(n in -10_000i64..10_000, d in 1i64..10_000, m in -10_000i64..10_000, e in 1i64..10_000) {
        let (x, y) = (frac(n, d), frac(m, e));
        prop_assert_eq!(parse_rational(&format_rational(&x)).unwrap(), x.clone());
        prop_assert_eq!(&(&x + &y) - &y, x.clone());
        if m != 0 {
            prop_assert_eq!(&(&x * &y) / &y, x);
        }
    }

    #[test]
    fn compositions_round_trip(pairs in prop::collection::vec((0u32..4, 0u32..4), 1..5)) {
        let s: Vec<u32> = pairs.iter().map(|&(t, extra)| t + extra).collect();
        let t: Vec<u32> = pairs.iter().map(|&(t, _)| t).collect();
        let c = CompositionPair::new(s, t);
        prop_assert_eq!(c.to_word().composition().unwrap(), c.clone());
        let g = ZWord::from_composition_g(&c);
        prop_assert_eq!(g.is_admissible(TypeTag::G), c.is_admissible());
        if c.is_admissible() {
            prop_assert_eq!(g.to_py(TypeTag::G).unwrap(), LinComb::word(c.to_word()));
            prop_assert_eq!(g.composition(TypeTag::G).unwrap(), c);
        }
    }

    #[test]
    fn shuffle_is_graded(seed in any::<[usize; 2]>()) {
        let ws = pure_words(3);
        let [a, b] = seed.map(|i| ws[i % ws.len()].clone());
        for w in shuffle(&a, &b).words() {
            prop_assert!(w.weight() <= a.weight() + b.weight());
            prop_assert!(w.depth() == a.depth() + b.depth());
        }
    }
}

#[test]
fn duality_preserves_values() {
    assert_eq!(duality_values(5, N), Ok(251));
}

#[test]
fn duality_in_every_basis() {
    for ty in [TypeTag::ITilde, TypeTag::III, TypeTag::IVTilde] {
        assert_eq!(duality_in_basis(ty, 4, N), Ok(()));
    }
}

#[test]
fn pr_relations_preserve_values() {
    assert_eq!(pr_invariance(4, N), Ok(294));
}

#[test]
fn generated_rows_are_sound() {
    for ty in [
        TypeTag::ITilde,
        TypeTag::II,
        TypeTag::III,
        TypeTag::IVTilde,
        TypeTag::G,
    ] {
        let w = if ty == TypeTag::G { 3 } else { 4 };
        let sys = gen_all(ty, w).unwrap();
        assert!(!sys.rows.is_empty());
        assert_eq!(
            sys.unsound_rows(N).unwrap(),
            Vec::<usize>::new(),
            "{ty} weight {w}"
        );
    }
}

#[test]
fn f_o_product_rule() {
    assert_eq!(f_o_rule(8, N), Ok(()));
}

#[test]
fn nested_sums_match_values() {
    assert_eq!(nested_sums(5, 40), Ok(15));
}
