use proptest::prelude::*;

use subword_core::chebyshev::{chebyshev_t, chebyshev_t_closed, tomie_coefficient, tomie_t};
use subword_core::mobius::{contribution, mobius_oracle, mobius_value};
use subword_core::morse::{critical_chains, mobius_morse};
use subword_core::poset::FinitePoset;
use subword_core::verify::random_poset;
use subword_core::word::is_leq;
use subword_core::{
    build_interval, embeddings, rightmost_embedding, AugmentedPoset, IntervalDiagram, Limits, Word,
};

fn poset_and_words(
    max_elements: usize,
    max_len: usize,
) -> impl Strategy<Value = (FinitePoset, Word, Word)> {
    any::<u64>().prop_flat_map(move |seed| {
        let p = random_poset(seed, max_elements);
        let n = p.len();
        let letters = prop::collection::vec(0..n, 0..=max_len);
        (Just(p), letters.clone(), letters).prop_map(|(p, a, b)| (p, Word(a), Word(b)))
    })
}

/// A random `u` below a random `w`, taken from the interval `[∅, w]`.
fn comparable_pair(
    max_elements: usize,
    max_len: usize,
) -> impl Strategy<Value = (FinitePoset, Word, Word)> {
    (
        poset_and_words(max_elements, max_len),
        any::<prop::sample::Index>(),
    )
        .prop_map(|((p, _, w), pick)| {
            let p0 = AugmentedPoset::new(p.clone()).unwrap();
            let d = build_interval(&p0, &Word::empty(), &w, &Limits::default()).unwrap();
            let u = pick.get(d.nodes()).clone();
            (p, u, w)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn order_is_reflexive_and_transitive((p, a, b) in poset_and_words(5, 4), c in prop::collection::vec(0usize..5, 0..4)) {
        let c = Word(c.into_iter().filter(|&x| x < p.len()).collect());
        prop_assert!(is_leq(&p, a.letters(), a.letters()));
        if is_leq(&p, a.letters(), b.letters()) && is_leq(&p, b.letters(), c.letters()) {
            prop_assert!(is_leq(&p, a.letters(), c.letters()));
        }
        if is_leq(&p, a.letters(), b.letters()) && is_leq(&p, b.letters(), a.letters()) {
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn embeddings_exist_iff_below((p, u, w) in poset_and_words(5, 4)) {
        let p0 = AugmentedPoset::new(p.clone()).unwrap();
        let all = embeddings(&p0, &u, &w).unwrap();
        prop_assert_eq!(!all.is_empty(), is_leq(&p, u.letters(), w.letters()));
        for e in &all {
            prop_assert_eq!(&e.word(), &u);
        }
        if let Ok(rho) = rightmost_embedding(&p0, &u, &w) {
            prop_assert!(all.contains(&rho));
            // Every letter sits at or right of its place in any embedding.
            for e in &all {
                for (x, y) in e.support().iter().zip(rho.support()) {
                    prop_assert!(*x <= y);
                }
            }
        }
    }

    #[test]
    fn formula_matches_oracle((p, u, w) in comparable_pair(5, 3)) {
        let p0 = AugmentedPoset::new(p).unwrap();
        let lim = Limits::default();
        prop_assert_eq!(mobius_value(&p0, &u, &w).unwrap(), mobius_oracle(&p0, &u, &w, &lim).unwrap());
    }

    #[test]
    fn incomparable_pairs_are_zero((p, u, w) in poset_and_words(4, 3)) {
        let p0 = AugmentedPoset::new(p.clone()).unwrap();
        if !is_leq(&p, u.letters(), w.letters()) {
            let r = subword_core::mobius_main(&p0, &u, &w).unwrap();
            prop_assert!(r.incomparable);
            prop_assert_eq!(r.value, 0);
        }
    }

    #[test]
    fn interval_edges_are_covers((p, u, w) in comparable_pair(4, 3)) {
        let p0 = AugmentedPoset::new(p.clone()).unwrap();
        let d = build_interval(&p0, &u, &w, &Limits::default()).unwrap();
        for &(hi, lo) in d.edges() {
            let (a, b) = (d.node(lo), d.node(hi));
            prop_assert!(is_leq(&p, a.letters(), b.letters()));
            prop_assert!(d.ranks()[hi] > d.ranks()[lo]);
            // No node strictly between the endpoints.
            for z in d.nodes() {
                if z != a && z != b {
                    prop_assert!(!(is_leq(&p, a.letters(), z.letters()) && is_leq(&p, z.letters(), b.letters())));
                }
            }
        }
        let back = IntervalDiagram::from_json(&p, &d.to_json(&p)).unwrap();
        prop_assert_eq!(back, d);
    }

    #[test]
    fn poset_json_round_trip(seed in any::<u64>()) {
        let p = random_poset(seed, 6);
        prop_assert_eq!(FinitePoset::from_json_str(&p.to_json_string()).unwrap(), p.clone());
        let l = p.natural_labeling();
        for a in 0..p.len() {
            for b in 0..p.len() {
                if p.lt(a, b) {
                    prop_assert!(l.label(a) < l.label(b));
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn morse_matches_formula((p, u, w) in comparable_pair(4, 3)) {
        let p0 = AugmentedPoset::new(p).unwrap();
        let lim = Limits::generous();
        prop_assert_eq!(mobius_morse(&p0, &u, &w, &lim).unwrap(), mobius_value(&p0, &u, &w).unwrap());
        if u != w {
            for d in critical_chains(&p0, &u, &w, &lim).unwrap() {
                prop_assert!(d.chain.is_lex_decreasing());
                let end = d.chain.final_embedding();
                prop_assert_ne!(contribution(&p0, &end, &w).unwrap(), 0);
            }
        }
    }

    #[test]
    fn polynomial_forms_agree(n in 0usize..=30, s in 1u32..=5) {
        prop_assert_eq!(chebyshev_t(n), chebyshev_t_closed(n));
        let t = tomie_t(s, n).unwrap();
        for i in 0..=n / 2 {
            let j = n - i;
            if j >= 1 {
                prop_assert_eq!(t.coeff(j - i), tomie_coefficient(s, i, j).unwrap());
            }
        }
    }
}
