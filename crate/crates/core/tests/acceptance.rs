//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

mod common;

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use ckrep::bfs::{
    build_chain_system, build_cycle_system, direct_sum, find_components, naive_cycle_system,
    naive_product_system, validate_bfs, ChainWord, ComponentKind,
};
use ckrep::rep::{
    decompose, decompose_standard, expand_irreducible, gp_vector_check, realize, state_value,
    verify_ck_relations, Decomposition, Level, Multiplicity, Phase, RepClass, Scalar,
};
use ckrep::words::pspec_summary;
use ckrep::{BranchingSystem, TailWord, TransitionMatrix, Word};
use common::{a3, a4, corpus, cycle_words, four_by_four, m, systems, tails};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

const INF: Option<u64> = None;

type Expected<'a> = &'a [(&'a str, Option<u64>)];
type Criterion = (&'static str, fn() -> Outcome);

fn summary(d: &Decomposition) -> Vec<(String, Option<u64>)> {
    let n = d.matrix.as_ref().map_or(0, |a| a.n());
    d.entries()
        .iter()
        .map(|(c, k)| {
            let k = match k {
                Multiplicity::Finite(k) => Some(*k),
                Multiplicity::Infinite => None,
            };
            (c.literal_for(n), k)
        })
        .collect()
}

fn expect(label: &str, d: &Decomposition, want: Expected) -> Result<(), String> {
    let want: Vec<_> = want.iter().map(|(s, k)| (s.to_string(), *k)).collect();
    let got = summary(d);
    if got == want && d.unresolved.is_empty() {
        Ok(())
    } else {
        Err(format!(
            "{label}: got {got:?} (unresolved {}), want {want:?}",
            d.unresolved.len()
        ))
    }
}

fn m2_table() -> Outcome {
    let rows: [(&str, Expected); 7] = [
        ("11\n11", &[("P(1)", Some(1))]),
        ("11\n10", &[("P(1)", Some(1))]),
        ("01\n11", &[("P(12)", Some(1))]),
        ("10\n11", &[("P(1)", INF)]),
        ("11\n01", &[("P(1)", Some(1)), ("P(2)", INF)]),
        ("10\n01", &[("P(1)", INF), ("P(2)", INF)]),
        ("01\n10", &[("P(12)", INF)]),
    ];
    for (rows, want) in rows {
        expect(
            &rows.replace('\n', "/"),
            &decompose_standard(&m(rows)),
            want,
        )?;
    }
    Ok("7 matrices".into())
}

fn three_by_three() -> Outcome {
    expect("A3", &decompose_standard(&a3()), &[("P(12)", Some(1))])?;
    expect(
        "A4",
        &decompose_standard(&a4()),
        &[("P(1)", Some(1)), ("P(2)", Some(1))],
    )?;
    Ok("A3, A4".into())
}

fn four_by_four_examples() -> Outcome {
    let want = ["P(2)", "P(123)", "P(132)"];
    for (a, want) in four_by_four().iter().zip(want) {
        expect(want, &decompose_standard(a), &[(want, Some(1))])?;
    }
    Ok("3 matrices".into())
}

/// Truncated systems can leave orbit fragments whose backward orbit exits the
/// window; those must be the only unresolved pieces.
fn expect_truncated(label: &str, f: &BranchingSystem, want: &str) -> Result<(), String> {
    if !validate_bfs(f).is_valid() {
        return Err(format!("{label} is not a branching system"));
    }
    let d = decompose(f, &[]).map_err(|e| e.to_string())?;
    if summary(&d) != [(want.to_string(), Some(1))] {
        return Err(format!("{label}: got {:?}, want {want}", summary(&d)));
    }
    for c in find_components(f) {
        if c.kind == ComponentKind::Unresolved && !c.basin.iter().any(|&x| f.is_frontier(x)) {
            return Err(format!(
                "{label}: unresolved piece at {} inside the window",
                f.label(c.basin[0])
            ));
        }
    }
    Ok(())
}

fn naive_examples() -> Outcome {
    for b in [64, 200] {
        expect_truncated(&format!("first, B={b}"), &naive_cycle_system(b), "P(13)")?;
        expect_truncated(&format!("second, T={b}"), &naive_product_system(b), "P(12)")?;
    }
    Ok("truncations 64, 200".into())
}

fn spectrum_counts() -> Outcome {
    let s1 = pspec_summary(&m("11\n01"), 8);
    if !(s1.finite && s1.class_count == Some(2) && !s1.aperiodic_tails) {
        return Err(format!("[[1,1],[0,1]]: {s1:?}"));
    }
    if s1.corroborated == Some(false) {
        return Err("[[1,1],[0,1]]: enumeration disagrees".into());
    }
    let s2 = pspec_summary(&m("11\n10"), 8);
    if s2.finite || s2.class_count.is_some() || !s2.aperiodic_tails {
        return Err(format!("[[1,1],[1,0]]: {s2:?}"));
    }
    Ok(format!(
        "finite with 2 classes; infinite with counts {:?}",
        s2.counts_by_length
    ))
}

fn full_matrices() -> Outcome {
    for n in 2..=5 {
        let d = decompose_standard(&TransitionMatrix::full(n).map_err(|e| e.to_string())?);
        expect(&format!("N={n}"), &d, &[("P(1)", Some(1))])?;
    }
    Ok("N = 2..5".into())
}

fn gp_vectors() -> Outcome {
    let mut checked = 0;
    for a in corpus() {
        for j in cycle_words(&a, 3) {
            for p in 1..=4 {
                let r = gp_vector_check(&a, &j, p).map_err(|e| e.to_string())?;
                if !r.passed() {
                    return Err(format!("{a:?} J={j} p={p}: {r:?}"));
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} (A, J, p) triples"))
}

fn words_up_to(n: usize, max_len: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut layer = vec![Word::empty()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w| (1..=n).map(move |s| w.concat(&Word::single(s))))
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

fn compare_states(
    a: &TransitionMatrix,
    c: &RepClass,
    f: &BranchingSystem,
    words: &[Word],
) -> Result<usize, String> {
    let model = realize(f, &[]).map_err(|e| e.to_string())?;
    let mut pairs = 0;
    for j1 in words {
        for j2 in words {
            let formula = state_value(a, c, j1, j2).map_err(|e| e.to_string())?;
            let inner = match model.matrix_coefficient(j1, j2, 0) {
                Scalar::Zero => 0.0,
                Scalar::Unit(z) if z.is_one() => 1.0,
                Scalar::Unit(z) => return Err(format!("{c}: phase {z} in an unphased model")),
            };
            if formula.re != inner || formula.im != 0.0 {
                return Err(format!("{c}: <{j1}|{j2}> formula {formula} model {inner}"));
            }
            pairs += 1;
        }
    }
    Ok(pairs)
}

fn state_oracle() -> Outcome {
    let mut pairs = 0;
    for a in corpus() {
        let words = words_up_to(a.n(), 5);
        for j in cycle_words(&a, 3) {
            let f = build_cycle_system(&a, &j, 6).map_err(|e| e.to_string())?;
            let c = RepClass::finite(j, Phase::ONE).map_err(|e| e.to_string())?;
            pairs += compare_states(&a, &c, &f, &words)?;
        }
        for t in tails(&a) {
            let f = build_chain_system(&a, &ChainWord::Tail(t.clone()), 8, 2)
                .map_err(|e| e.to_string())?;
            let c = RepClass::tail(&t).map_err(|e| e.to_string())?;
            pairs += compare_states(&a, &c, &f, &words)?;
        }
    }
    Ok(format!("{pairs} word pairs"))
}

fn property_suites() -> Outcome {
    // rotation and periodicity against brute force, exhaustively
    let mut words = 0;
    for n in 2..=3 {
        for x in words_up_to(n, 10).into_iter().skip(1) {
            let s = x.as_slice();
            let least = (0..s.len())
                .map(|r| [&s[r..], &s[..r]].concat())
                .min()
                .expect("nonempty");
            if x.canonical_rotation()
                .map_err(|e| e.to_string())?
                .as_slice()
                != least
            {
                return Err(format!("canonical rotation of {x}"));
            }
            words += 1;
        }
    }
    for x in words_up_to(2, 12).into_iter().skip(1) {
        let s = x.as_slice();
        let k = s.len();
        let brute = (1..k).any(|d| k % d == 0 && s.chunks(d).all(|c| c == &s[..d]));
        if x.is_periodic().map_err(|e| e.to_string())? != brute {
            return Err(format!("periodicity of {x}"));
        }
        words += 1;
    }

    let mut built = 0;
    for a in corpus() {
        for (name, f) in systems(&a) {
            let v = validate_bfs(&f);
            if !v.is_valid() {
                return Err(format!("{a:?} {name}: {:?}", v.violations.first()));
            }
            let r = verify_ck_relations(&realize(&f, &[]).map_err(|e| e.to_string())?);
            if !r.passed() {
                return Err(format!("{a:?} {name}: {:?}", r.violations.first()));
            }
            built += 1;
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let pool = corpus();
    for round in 0..100 {
        let a = &pool[rng.random_range(0..pool.len())];
        let all = systems(a);
        let f = &all[rng.random_range(0..all.len())].1;
        let g = &all[rng.random_range(0..all.len())].1;
        let sum = decompose(&direct_sum(f, g).map_err(|e| e.to_string())?, &[])
            .map_err(|e| e.to_string())?;
        let mut parts = decompose(f, &[]).map_err(|e| e.to_string())?;
        parts.merge(&decompose(g, &[]).map_err(|e| e.to_string())?);
        if !sum.same_classes(&parts) || sum.unresolved.len() != parts.unresolved.len() {
            return Err(format!("additivity failed in round {round}"));
        }
    }
    Ok(format!("{words} words, {built} systems, 100 sums"))
}

fn random_tail(rng: &mut ChaCha8Rng, a: &TransitionMatrix, periods: &[Word]) -> TailWord {
    let period = &periods[rng.random_range(0..periods.len())];
    let period = period
        .rotate(rng.random_range(0..period.len()) as isize)
        .expect("nonempty");
    // walk backwards from the period to get an admissible preperiod
    let mut pre = Vec::new();
    let mut next = period[0];
    for _ in 0..rng.random_range(0..6) {
        let preds = a.column_support(next);
        next = preds[rng.random_range(0..preds.len())];
        pre.insert(0, next);
    }
    TailWord::new(Word::new(pre), period).expect("nonempty period")
}

fn integral_uniqueness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut keys: BTreeMap<Word, Word> = BTreeMap::new();
    let pool = corpus();
    for _ in 0..100 {
        let a = &pool[rng.random_range(0..pool.len())];
        let periods = cycle_words(a, 4);
        let t = random_tail(&mut rng, a, &periods);
        if !t.is_admissible(a).map_err(|e| e.to_string())? {
            return Err(format!("generated tail {t} is not admissible"));
        }
        let mut d = Decomposition::new(Some(a.clone()), Level::Cyclic);
        d.add(
            RepClass::tail(&t).map_err(|e| e.to_string())?,
            Multiplicity::Finite(1),
        );
        let e = expand_irreducible(&d);
        let [(RepClass::Integral { word }, Multiplicity::Finite(1))] = e.entries() else {
            return Err(format!("{t} expanded to {:?}", summary(&e)));
        };
        // the key must be the least rotation of the period, and no two
        // rotation classes may share a key
        let s = t.period().as_slice();
        let least = (0..s.len())
            .map(|r| [&s[r..], &s[..r]].concat())
            .min()
            .expect("nonempty");
        if word.as_slice() != least {
            return Err(format!("{t} has key {word}"));
        }
        if let Some(prev) = keys.insert(word.clone(), t.period().clone()) {
            let p = prev.as_slice();
            if !(0..p.len()).any(|r| [&p[r..], &p[..r]].concat() == s) {
                return Err(format!("{prev} and {} collide at {word}", t.period()));
            }
        }
    }
    Ok(format!("100 tails, {} distinct keys", keys.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("2x2 standard representation table", m2_table),
        ("3x3 standard representations", three_by_three),
        ("4x4 standard representations", four_by_four_examples),
        ("naive examples", naive_examples),
        ("spectrum counts", spectrum_counts),
        ("full matrices give P(1)", full_matrices),
        ("GP vectors of powers", gp_vectors),
        ("state formula vs concrete models", state_oracle),
        ("property suites", property_suites),
        ("integral class uniqueness", integral_uniqueness),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        match check() {
            Ok(note) => println!("PASS {:>2} {name} ({note}) [{:.2?}]", i + 1, t.elapsed()),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed in {:.2?}",
        criteria.len() - failed,
        criteria.len(),
        start.elapsed()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
