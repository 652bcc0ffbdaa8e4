use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

use ultralogic::glue::{build_glue, neutron_spec, Delta};
use ultralogic::hyper::{approximate_shadow, Coeff, HyperReal};
use ultralogic::logic::{closure, entails, Formula, FormulaSet};
use ultralogic::rational::Rational;
use ultralogic::subparticle::{add_perturbations, coin_sequence, combine, form_intermediate, project_standard, Coin, Lambda, Naming, SubparticleConfig, SubparticleRep};
use ultralogic::word_codec::{decode_word, encode_word, Alphabet};

fn formula() -> impl Strategy<Value = Formula> {
    let leaf = prop::sample::select(vec!["p", "q", "r", "s"]).prop_map(Formula::atom);
    leaf.prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| Formula::implies(a, b)),
        ]
    })
}

fn gamma() -> impl Strategy<Value = FormulaSet> {
    prop::collection::btree_set(formula(), 0..4)
}

fn rational() -> impl Strategy<Value = Rational> {
    (-50i64..=50, 1i64..=12).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

fn series(lo: i32, hi: i32) -> impl Strategy<Value = HyperReal> {
    prop::collection::vec((lo..=hi, rational()), 1..4).prop_map(|terms| HyperReal::from_terms(terms.into_iter().map(|(q, c)| (q, Coeff::Exact(c)))))
}

fn word() -> impl Strategy<Value = String> {
    let symbols: Vec<char> = Alphabet::default().symbols().to_vec();
    prop::collection::vec(prop::sample::select(symbols), 1..40).prop_map(|cs| cs.into_iter().collect())
}

fn toy_part(i: usize, lambda: u64, names: Vec<u64>) -> SubparticleRep {
    form_intermediate(i, &Lambda::Finite(lambda), &Naming::Primes(names), false, 6, &SubparticleConfig::with_f(4)).unwrap()
}

fn part() -> impl Strategy<Value = SubparticleRep> {
    (1usize..=4, 1u64..=5, prop::collection::vec(prop::sample::select(vec![11u64, 13, 17, 19, 23]), 0..3)).prop_map(|(i, l, n)| toy_part(i, l, n))
}

fn same_rep(a: &SubparticleRep, b: &SubparticleRep) -> bool {
    a.dims == b.dims
        && a.a2.exactly_eq(&b.a2)
        && a.a1.value() == b.a1.value()
        && a.coords.len() == b.coords.len()
        && a.coords.iter().all(|(k, v)| b.coords.get(k).is_some_and(|w| v.exactly_eq(w)))
}

proptest! {
    #[test]
    fn words_round_trip(w in word()) {
        let a = Alphabet::default();
        let enc = encode_word(&w, &a).unwrap();
        prop_assert_eq!(enc.canonical_length(), w.chars().count());
        prop_assert_eq!(decode_word(&enc, &a).unwrap(), w);
    }

    #[test]
    fn closure_is_extensive_idempotent_sound(g in gamma()) {
        let c = closure(&g);
        prop_assert!(g.is_subset(&c));
        prop_assert_eq!(closure(&c), c.clone());
        for x in &c {
            prop_assert!(entails(&g, x), "{} derived but not entailed", x);
        }
    }

    #[test]
    fn closure_is_monotone(g in gamma(), extra in formula()) {
        let mut bigger = g.clone();
        bigger.insert(extra);
        prop_assert!(closure(&g).is_subset(&closure(&bigger)));
    }

    #[test]
    fn ring_laws(x in series(-2, 2), y in series(-2, 2), z in series(-2, 2)) {
        prop_assert!(x.add(&y).exactly_eq(&y.add(&x)));
        prop_assert!(x.mul(&y).unwrap().exactly_eq(&y.mul(&x).unwrap()));
        prop_assert!(x.mul(&y.add(&z)).unwrap().exactly_eq(&x.mul(&y).unwrap().add(&x.mul(&z).unwrap())));
        prop_assert!(x.mul(&y).unwrap().mul(&z).unwrap().exactly_eq(&x.mul(&y.mul(&z).unwrap()).unwrap()));
    }

    #[test]
    fn order_is_translation_invariant(x in series(-2, 2), y in series(-2, 2), z in series(-2, 2)) {
        prop_assert_eq!(x.compare(&y), x.add(&z).compare(&y.add(&z)));
    }

    #[test]
    fn standard_part_is_a_ring_morphism(x in series(0, 3), y in series(0, 3)) {
        let st = |h: &HyperReal| h.st().unwrap().to_rational();
        prop_assert_eq!(st(&x.add(&y)), st(&x) + st(&y));
        prop_assert_eq!(st(&x.mul(&y).unwrap()), st(&x) * st(&y));
    }

    #[test]
    fn glue_is_monotone_for_rising_steps(a in 0u32..2000, b in 0u32..2000) {
        let g = build_glue(neutron_spec(), Delta::Standard(Rational::new(1.into(), 10.into()))).unwrap();
        let (lo, hi) = (a.min(b), a.max(b));
        let at = |n: u32| g.eval_rational(&Rational::new(n.into(), 1000.into())).unwrap();
        prop_assert!(!at(lo).compare(&at(hi)).is_gt());
    }

    #[test]
    fn combine_commutes_and_associates(p in part(), q in part(), r in part()) {
        let pq = combine(&[p.clone(), q.clone()]).unwrap();
        let qp = combine(&[q.clone(), p.clone()]).unwrap();
        prop_assert!(same_rep(&pq, &qp));
        let left = combine(&[pq, r.clone()]).unwrap();
        let right = combine(&[p, combine(&[q, r]).unwrap()]).unwrap();
        prop_assert!(same_rep(&left, &right));
    }

    #[test]
    fn perturbations_are_invisible_after_projection(p in part(), zs in prop::collection::vec(series(1, 3), 0..4), coord in 3usize..=6) {
        let before = project_standard(&p).unwrap();
        let after = project_standard(&add_perturbations(&p, &zs, coord).unwrap()).unwrap();
        prop_assert_eq!(before.coords, after.coords);
    }

    #[test]
    fn approximation_is_certified(n in -10_000i64..10_000, d in 1i64..10_000, m in 1i64..1_000_000_000) {
        let r = Rational::new(n.into(), d.into());
        let a = approximate_shadow(&r, &BigInt::from(m));
        let gap = &r - a.value();
        prop_assert!(gap >= Rational::zero());
        prop_assert!(gap < Rational::new(BigInt::one(), m.into()));
    }

    #[test]
    fn coin_flips_follow_the_doubling_map(n in 1u64..1000, extra in 1u64..1000) {
        let x = Rational::new(n.into(), (n + extra).into());
        let seq = coin_sequence(&x, 24).unwrap();
        let mut y = x;
        let half = Rational::new(1.into(), 2.into());
        for flip in seq {
            y = &y * Rational::from_integer(2.into());
            y = &y - y.floor();
            prop_assert_eq!(flip, if y < half { Coin::H } else { Coin::T });
        }
    }
}

#[test]
fn default_alphabet_has_no_repeats() {
    let a = Alphabet::default();
    let distinct: BTreeSet<char> = a.symbols().iter().copied().collect();
    assert_eq!(distinct.len(), a.len());
}
