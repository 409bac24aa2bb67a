mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use poset_automata::hardness::{build_aknn, w_word};
use poset_automata::random::{random_saturated_po, random_unary_po};
use poset_automata::text::parse_nfa;
use poset_automata::universality::{
    universal, universal_antichain, universal_brute, universal_sponfa, universal_subset,
    universal_unary_po, universal_with, Method, MethodChoice,
};
use poset_automata::{Alphabet, Caps, Error, Letter, Nfa};

fn caps() -> Caps {
    Caps::default()
}

fn forbidden() -> Nfa {
    parse_nfa(include_str!("../examples/data/forbidden.nfa")).unwrap()
}

#[test]
fn a22_counterexample_is_its_word() {
    let a = build_aknn(2, 2, &caps()).unwrap();
    let r = universal(&a, &caps()).unwrap();
    assert_eq!(r.method, Method::Antichain);
    assert!(!r.universal);
    let w = r.counterexample.unwrap();
    assert_eq!(w, [0, 0, 1, 0, 1].map(Letter).to_vec());
    assert_eq!(a.alphabet().render(&w), "a1 a1 a2 a1 a2");
}

#[test]
fn aknn_rejects_exactly_its_word_first() {
    for k in 1..=3 {
        for n in 1..=3 {
            let a = build_aknn(k, n, &caps()).unwrap();
            let w = w_word(k, n, &caps()).unwrap();
            for r in [
                universal_antichain(&a, &caps()).unwrap(),
                universal_subset(&a, &caps()).unwrap(),
            ] {
                assert_eq!(
                    r.counterexample.as_ref(),
                    Some(&w),
                    "k={k} n={n} {}",
                    r.method
                );
            }
            assert_eq!(common::shortest_rejected_len(&a), Some(w.len()));
        }
    }
}

#[test]
fn dispatch_picks_the_cheapest_decider() {
    let mut b = Nfa::builder(Alphabet::indexed(2));
    let q = b.add_state("q");
    b.transition(q, Letter(0), q)
        .transition(q, Letter(1), q)
        .initial(q)
        .accepting(q);
    let r = universal(&b.build().unwrap(), &caps()).unwrap();
    assert_eq!((r.method, r.universal), (Method::SpoNfaConstant, true));

    let mut b = Nfa::builder(Alphabet::indexed(1));
    let p = b.add_state("p");
    let q = b.add_state("q");
    b.transition(p, Letter(0), q)
        .transition(q, Letter(0), q)
        .initial(p)
        .accepting(p);
    let r = universal(&b.build().unwrap(), &caps()).unwrap();
    assert_eq!(r.method, Method::UnaryPumping);
    assert_eq!(r.counterexample, Some(vec![Letter(0)]));

    assert_eq!(
        universal(&forbidden(), &caps()).unwrap().method,
        Method::Antichain
    );
}

#[test]
fn restricted_deciders_refuse_other_inputs() {
    assert!(matches!(
        universal_sponfa(&forbidden()),
        Err(Error::Input(_))
    ));
    assert!(matches!(
        universal_unary_po(&forbidden()),
        Err(Error::Input(_))
    ));

    let mut b = Nfa::builder(Alphabet::indexed(1));
    let p = b.add_state("p");
    let q = b.add_state("q");
    b.transition(p, Letter(0), q)
        .transition(q, Letter(0), p)
        .initial(p)
        .accepting(p);
    assert!(matches!(
        universal_unary_po(&b.build().unwrap()),
        Err(Error::Input(_))
    ));
}

#[test]
fn method_names_parse() {
    for (text, m) in [
        ("sponfa", Method::SpoNfaConstant),
        ("unary", Method::UnaryPumping),
        ("antichain", Method::Antichain),
        ("subset", Method::Subset),
        ("brute", Method::BruteForce),
    ] {
        assert_eq!(
            text.parse::<MethodChoice>().unwrap(),
            MethodChoice::Fixed(m)
        );
    }
    assert_eq!("auto".parse::<MethodChoice>().unwrap(), MethodChoice::Auto);
    assert!("fast".parse::<MethodChoice>().is_err());
}

#[test]
fn brute_force_is_bounded() {
    let a = build_aknn(2, 2, &caps()).unwrap();
    assert!(universal_brute(&a, 4, &caps()).unwrap().universal);
    let r = universal_with(
        &a,
        MethodChoice::Fixed(Method::BruteForce),
        Some(5),
        &caps(),
    )
    .unwrap();
    assert_eq!(r.counterexample, Some([0, 0, 1, 0, 1].map(Letter).to_vec()));
}

#[test]
fn antichain_cap_is_reported() {
    let tight = Caps {
        antichain: 3,
        ..Caps::default()
    };
    let a = build_aknn(3, 3, &caps()).unwrap();
    assert!(matches!(
        universal_antichain(&a, &tight),
        Err(Error::Resource { .. })
    ));
}

#[test]
fn saturated_and_unary_deciders_match_the_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..300 {
        let a = random_saturated_po(&mut rng, 6, 2, 0.3);
        let r = universal_sponfa(&a).unwrap();
        assert_eq!(r.universal, common::shortest_rejected_len(&a).is_none());
        let u = random_unary_po(&mut rng, 7, 0.3);
        let r = universal_unary_po(&u).unwrap();
        assert_eq!(
            r.counterexample.map(|w| w.len()),
            common::shortest_rejected_len(&u)
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn antichain_matches_subset_oracle(a in common::arb_nfa(6, 3)) {
        let r = universal_antichain(&a, &caps()).unwrap();
        let expected = common::shortest_rejected_len(&a);
        prop_assert_eq!(r.universal, expected.is_none());
        if let Some(w) = &r.counterexample {
            prop_assert!(!common::accepts(&a, w));
            prop_assert_eq!(Some(w.len()), expected);
        }
        let s = universal_subset(&a, &caps()).unwrap();
        prop_assert_eq!(s.counterexample.map(|w| w.len()), expected);
    }

    #[test]
    fn brute_force_finds_the_first_rejected_word(a in common::arb_nfa(4, 2)) {
        let r = universal_brute(&a, 6, &caps()).unwrap();
        prop_assert_eq!(r.counterexample, common::brute_first_rejected(&a, 6));
    }
}
