use euler_core::harmonic::{a_from_s_expansion, duality_reduction, product_expansion};
use euler_core::symmetric::{
    enumerate_set_partitions, general_symmetrization, power_sum_a, power_sum_s, symmetrization_identity,
    symmetrize_a, symmetrize_s,
};
use euler_core::words::words_up_to;
use euler_core::{CyclotomicField, HarmonicEvaluator, Letter, Rational, SetPartition, SumKind, Word};
use num_bigint::BigInt;
use proptest::prelude::*;

fn word_strategy(r: u32, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((1u32..=2, 0..r), 0..=max_len)
        .prop_map(move |pairs| Word::from_pairs(&pairs, r).unwrap())
}

#[test]
fn evaluation_matches_nested_sums() {
    for r in 1..=3 {
        let ev = HarmonicEvaluator::new(r).unwrap();
        for w in words_up_to(6, 4, r).unwrap() {
            for n in 0..=10 {
                assert_eq!(ev.eval_a(&w, n).unwrap(), ev.eval_a_bruteforce(&w, n).unwrap(), "A {w} {n}");
                assert_eq!(ev.eval_s(&w, n).unwrap(), ev.eval_s_bruteforce(&w, n).unwrap(), "S {w} {n}");
            }
        }
    }
}

#[test]
fn strict_sums_vanish_below_length_and_single_letters_agree() {
    for r in 1..=3 {
        let ev = HarmonicEvaluator::new(r).unwrap();
        for w in words_up_to(5, 4, r).unwrap() {
            for n in 0..w.len() as u64 {
                assert!(ev.eval_a(&w, n).unwrap().is_zero(), "{w} {n}");
            }
            if w.len() == 1 {
                for n in 0..=8 {
                    assert_eq!(ev.eval_a(&w, n).unwrap(), ev.eval_s(&w, n).unwrap());
                }
            }
        }
    }
}

#[test]
fn conversions_between_strict_and_weak() {
    for r in 1..=3 {
        let ev = HarmonicEvaluator::new(r).unwrap();
        for w in words_up_to(5, 4, r).unwrap().into_iter().filter(|w| !w.is_empty()) {
            let exp = product_expansion(&w).unwrap();
            let a_from_s = a_from_s_expansion(&w, r).unwrap();
            for n in 0..=7 {
                let a = ev.eval_a(&w, n).unwrap();
                let s = ev.eval_s(&w, n).unwrap();
                assert_eq!(exp.evaluate(&ev, n, SumKind::A).unwrap(), s, "{w} {n}");
                assert_eq!(exp.evaluate(&ev, n, SumKind::S).unwrap(), a, "{w} {n}");
                assert_eq!(ev.rho_overline(&a_from_s, n).unwrap(), a, "{w} {n}");
            }
        }
    }
}

#[test]
fn duality_reduces_length() {
    for r in 1..=3 {
        let ev = HarmonicEvaluator::new(r).unwrap();
        for w in words_up_to(5, 4, r).unwrap().into_iter().filter(|w| w.len() >= 2) {
            let id = duality_reduction(&w, r).unwrap();
            assert!(id.max_rhs_length() < w.len());
            for n in 0..=7 {
                assert_eq!(id.lhs(&ev, n).unwrap(), id.rhs(&ev, n).unwrap(), "{w} {n}");
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn evaluation_is_multiplicative(r in 1u32..=4, u in word_strategy(4, 2), v in word_strategy(4, 2), n in 0u64..=12) {
        let u = Word::from_pairs(&u.letters().iter().map(|l| (l.weight(), l.root() % r)).collect::<Vec<_>>(), r).unwrap();
        let v = Word::from_pairs(&v.letters().iter().map(|l| (l.weight(), l.root() % r)).collect::<Vec<_>>(), r).unwrap();
        let ev = HarmonicEvaluator::new(r).unwrap();
        let prod = ev.algebra().star_words(&u, &v).unwrap();
        let lhs = ev.rho(&prod, n).unwrap();
        let rhs = &ev.eval_a(&u, n).unwrap() * &ev.eval_a(&v, n).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn field_axioms(r in 1u32..=8, a in prop::collection::vec(-5i64..=5, 8), b in prop::collection::vec(-5i64..=5, 8), c in prop::collection::vec(-5i64..=5, 8)) {
        let field = CyclotomicField::new(r).unwrap();
        let mk = |v: &[i64]| field.reduce(&v.iter().map(|&x| Rational::from_integer(BigInt::from(x))).collect::<Vec<_>>());
        let (x, y, z) = (mk(&a), mk(&b), mk(&c));
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x + &(-&x), field.zero());
        if !x.is_zero() {
            prop_assert_eq!(&x * &x.inverse().unwrap(), field.one());
        }
        prop_assert_eq!(field.parse(&x.to_string()).unwrap(), x);
    }
}

#[test]
fn roots_of_unity_close_up() {
    for r in 1..=12 {
        let f = CyclotomicField::new(r).unwrap();
        assert_eq!(f.root_power(1).pow(r), f.one());
        let total = (0..r as i64).fold(f.zero(), |acc, k| &acc + &f.root_power(k));
        assert_eq!(total, if r == 1 { f.one() } else { f.zero() });
    }
}

#[test]
fn symmetrizations() {
    for r in 1..=3 {
        let ev = HarmonicEvaluator::new(r).unwrap();
        for w in words_up_to(5, 4, r).unwrap().into_iter().filter(|w| !w.is_empty()) {
            for n in 0..=6 {
                let (l, rt) = symmetrize_a(&ev, &w, n).unwrap();
                assert_eq!(l, rt, "A {w} {n}");
                let (l, rt) = symmetrize_s(&ev, &w, n).unwrap();
                assert_eq!(l, rt, "S {w} {n}");
            }
        }
    }
}

#[test]
fn general_symmetrization_over_all_partitions() {
    for r in 1..=2 {
        let ev = HarmonicEvaluator::new(r).unwrap();
        for w in words_up_to(5, 4, r).unwrap().into_iter().filter(|w| !w.is_empty()) {
            for c in enumerate_set_partitions(w.len()).unwrap() {
                let (l, rt) = symmetrization_identity(ev.algebra(), &c, &w).unwrap();
                assert_eq!(l, rt, "{w} {c}");
                for n in [0, 3, 6] {
                    let (l, rt) = general_symmetrization(&ev, &c, &w, n).unwrap();
                    assert_eq!(l, rt, "{w} {c} {n}");
                }
            }
        }
    }
    let alg = euler_core::EulerAlgebra::new(1).unwrap();
    let w = Word::from_pairs(&[(1, 0), (1, 0)], 1).unwrap();
    assert!(symmetrization_identity(&alg, &SetPartition::singletons(3), &w).is_err());
}

#[test]
fn power_sums() {
    for r in 1..=3 {
        let ev = HarmonicEvaluator::new(r).unwrap();
        for i in 1..=2 {
            for j in 0..r {
                let a = Letter::new(i, j, r).unwrap();
                for k in 1..=5 {
                    let w = Word::power(a, k);
                    for n in 0..=10 {
                        assert_eq!(power_sum_s(&ev, a, k, n).unwrap(), ev.eval_s(&w, n).unwrap());
                        assert_eq!(power_sum_a(&ev, a, k, n).unwrap(), ev.eval_a(&w, n).unwrap());
                    }
                }
            }
        }
    }
}
