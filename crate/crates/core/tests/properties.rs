mod common;

use ckrep::bfs::{build_cycle_system, direct_sum, find_components, standard_bfs, ComponentKind};
use ckrep::rep::{
    decompose, equivalent, expand_irreducible, is_irreducible, twist_by_gauge, Decomposition,
    Level, Multiplicity, Phase, RepClass,
};
use ckrep::words::{words_equivalent_finite, words_equivalent_infinite};
use ckrep::{TailWord, TransitionMatrix, Word};
use common::{a3, corpus, cycle_words};
use proptest::prelude::*;

fn word(n: usize, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(1..=n, 1..=max_len).prop_map(Word::new)
}

fn rotations(w: &Word) -> Vec<Word> {
    let s = w.as_slice();
    (0..s.len())
        .map(|r| Word::new([&s[r..], &s[..r]].concat()))
        .collect()
}

fn matrix() -> impl Strategy<Value = TransitionMatrix> {
    prop::sample::select(corpus())
}

fn exact_phase() -> impl Strategy<Value = Phase> {
    (0i64..12, 1u64..=12).prop_map(|(k, p)| Phase::rotation(k, p).unwrap())
}

fn class() -> impl Strategy<Value = RepClass> {
    prop_oneof![
        (word(3, 4), prop::sample::select(vec![0i64, 1, 2])).prop_map(|(w, k)| RepClass::finite(
            w,
            Phase::rotation(k, 3).unwrap()
        )
        .unwrap()),
        (word(3, 2), word(3, 3))
            .prop_map(|(pre, per)| { RepClass::tail(&TailWord::new(pre, per).unwrap()).unwrap() }),
        word(3, 3).prop_map(|w| RepClass::integral(w).unwrap()),
    ]
}

proptest! {
    #[test]
    fn canonical_rotation_is_the_least_rotation(w in word(3, 10), r in -12isize..12) {
        let c = w.canonical_rotation().unwrap();
        let brute = rotations(&w).into_iter().min().unwrap();
        prop_assert_eq!(&c, &brute);
        prop_assert!(rotations(&w).contains(&c));
        prop_assert_eq!(w.rotate(r).unwrap().canonical_rotation().unwrap(), c);
    }

    #[test]
    fn periodicity_matches_divisors(w in word(3, 12)) {
        let s = w.as_slice();
        let n = s.len();
        let brute = (1..n).any(|d| n % d == 0 && (0..n).all(|t| s[t] == s[t % d]));
        prop_assert_eq!(w.is_periodic().unwrap(), brute);
        let (root, p) = w.primitive_root().unwrap();
        prop_assert_eq!(root.power(p), w);
    }

    #[test]
    fn admissibility_of_concatenation(a in matrix(), j1 in word(4, 5), j2 in word(4, 5)) {
        prop_assume!(j1.iter().chain(j2.iter()).all(|&s| s <= a.n()));
        let joined = a.is_admissible(&j1.concat(&j2)).unwrap();
        let parts = a.is_admissible(&j1).unwrap()
            && a.is_admissible(&j2).unwrap()
            && a.get(j1.last().unwrap(), j2.first().unwrap());
        prop_assert_eq!(joined, parts);
    }

    #[test]
    fn finite_equivalence_is_an_equivalence(x in word(2, 4), y in word(2, 4), z in word(2, 4)) {
        let e = |a: &Word, b: &Word| words_equivalent_finite(a, b).unwrap();
        prop_assert!(e(&x, &x));
        prop_assert_eq!(e(&x, &y), e(&y, &x));
        if e(&x, &y) && e(&y, &z) {
            prop_assert!(e(&x, &z));
        }
    }

    #[test]
    fn infinite_equivalence_is_an_equivalence(
        p1 in word(2, 2), p2 in word(2, 2), p3 in word(2, 2),
        q1 in word(2, 3), q2 in word(2, 3), q3 in word(2, 3),
    ) {
        let a = TransitionMatrix::full(2).unwrap();
        let t = |p: &Word, q: &Word| TailWord::new(p.clone(), q.clone()).unwrap();
        let (x, y, z) = (t(&p1, &q1), t(&p2, &q2), t(&p3, &q3));
        let e = |k1: &TailWord, k2: &TailWord| words_equivalent_infinite(&a, k1, k2).unwrap();
        prop_assert!(e(&x, &x));
        prop_assert_eq!(e(&x, &y), e(&y, &x));
        if e(&x, &y) && e(&y, &z) {
            prop_assert!(e(&x, &z));
        }
    }

    #[test]
    fn class_equivalence_is_key_equality(c1 in class(), c2 in class(), c3 in class()) {
        prop_assert!(equivalent(&c1, &c1));
        prop_assert_eq!(equivalent(&c1, &c2), equivalent(&c2, &c1));
        prop_assert_eq!(equivalent(&c1, &c2), c1.to_string() == c2.to_string());
        if equivalent(&c1, &c2) && equivalent(&c2, &c3) {
            prop_assert!(equivalent(&c1, &c3));
        }
    }

    #[test]
    fn gauge_twist_only_moves_the_phase(
        w in word(3, 4),
        z in exact_phase(),
        g in prop::collection::vec(exact_phase(), 3),
    ) {
        let c = RepClass::finite(w, z).unwrap();
        let t = twist_by_gauge(&c, &g).unwrap();
        let (RepClass::Finite { word: w1, .. }, RepClass::Finite { word: w2, .. }) = (&c, &t) else {
            unreachable!()
        };
        prop_assert_eq!(w1, w2);
        let back: Vec<Phase> = g.iter().map(Phase::conj).collect();
        prop_assert_eq!(twist_by_gauge(&t, &back).unwrap(), c);
    }

    #[test]
    fn expansion_is_idempotent_and_keeps_mass(
        entries in prop::collection::vec((word(2, 6), exact_phase(), 1u64..4), 1..5),
    ) {
        let mut d = Decomposition::new(None, Level::Cyclic);
        let mut mass = 0;
        for (w, z, k) in &entries {
            d.add(RepClass::finite(w.clone(), *z).unwrap(), Multiplicity::Finite(*k));
        }
        for (c, k) in d.entries() {
            if let (RepClass::Finite { word, .. }, Multiplicity::Finite(k)) = (c, k) {
                mass += word.len() as u64 * k;
            }
        }
        let e = expand_irreducible(&d);
        let mut out_mass = 0;
        for (c, k) in e.entries() {
            prop_assert!(is_irreducible(c));
            if let (RepClass::Finite { word, .. }, Multiplicity::Finite(k)) = (c, k) {
                out_mass += word.len() as u64 * k;
            }
        }
        prop_assert_eq!(mass, out_mass);
        let again = expand_irreducible(&e);
        prop_assert_eq!(again.entries(), e.entries());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn decomposition_is_additive(a in matrix(), i in 0usize..64, b in 8usize..80) {
        let words = cycle_words(&a, 3);
        let f = build_cycle_system(&a, &words[i % words.len()], 2).unwrap();
        let g = standard_bfs(&a, b).unwrap();
        let sum = decompose(&direct_sum(&f, &g).unwrap(), &[]).unwrap();
        let mut parts = decompose(&f, &[]).unwrap();
        parts.merge(&decompose(&g, &[]).unwrap());
        prop_assert!(sum.same_classes(&parts));
        prop_assert_eq!(sum.unresolved.len(), parts.unresolved.len());
    }

    #[test]
    fn eventually_periodic_tails_have_one_integral_class(
        pick in 0usize..64,
        r1 in 0isize..3,
        r2 in 0isize..3,
        back1 in prop::collection::vec(0usize..4, 0..5),
        back2 in prop::collection::vec(0usize..4, 0..5),
    ) {
        let a = a3();
        let periods = cycle_words(&a, 3);
        let period = &periods[pick % periods.len()];
        // an admissible preperiod ending just before the period, walking backwards
        let lead_in = |p: &Word, back: &[usize]| {
            let mut pre: Vec<usize> = Vec::new();
            let mut next = p[0];
            for &c in back {
                let preds = a.column_support(next);
                next = preds[c % preds.len()];
                pre.insert(0, next);
            }
            TailWord::new(Word::new(pre), p.clone()).unwrap()
        };
        let k1 = lead_in(&period.rotate(r1).unwrap(), &back1);
        let k2 = lead_in(&period.rotate(r2).unwrap(), &back2);
        prop_assert!(k1.is_admissible(&a).unwrap() && k2.is_admissible(&a).unwrap());
        let expand = |t: &TailWord| {
            let mut d = Decomposition::new(Some(a.clone()), Level::Cyclic);
            d.add(RepClass::tail(t).unwrap(), Multiplicity::Finite(1));
            expand_irreducible(&d).entries().to_vec()
        };
        let (e1, e2) = (expand(&k1), expand(&k2));
        prop_assert_eq!(e1.len(), 1);
        let integral = matches!(e1[0].0, RepClass::Integral { .. });
        prop_assert!(integral);
        prop_assert_eq!(e1, e2);
    }
}

#[test]
fn orbit_consistency_on_standard_systems() {
    for a in corpus() {
        let f = standard_bfs(&a, 64).unwrap();
        let comps = find_components(&f);
        let mut owner = vec![usize::MAX; f.len()];
        for (k, c) in comps.iter().enumerate() {
            for &x in &c.basin {
                assert_eq!(owner[x], usize::MAX, "point {x} in two components");
                owner[x] = k;
            }
        }
        assert!(owner.iter().all(|&o| o != usize::MAX));
        for (_, x, y) in f.edges() {
            assert_eq!(owner[x], owner[y]);
        }
        assert!(comps.iter().all(|c| c.kind != ComponentKind::Chain));
    }
}
