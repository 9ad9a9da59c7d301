mod common;

use inpath::conflict_dfs::{
    check_expansion_hypothesis, find_admissible_path, read_instance, run_dfs, write_instance, DfsState, Move,
};
use inpath::oracles::longest_admissible_path_exact;
use proptest::prelude::*;

#[test]
fn stepping_reproduces_the_search() {
    let mut rng = common::rng(11);
    for _ in 0..500 {
        let (d, cs) = common::random_instance(&mut rng, 8, 10);
        let mut state = DfsState::new(&d, &cs);
        let mut best = Vec::new();
        let mut best_reps = Vec::new();
        while !state.is_finished() {
            // The best stack is captured before each retreat, so track it the
            // same way from the outside.
            if state.stack().len() > best.len() {
                best = state.stack().to_vec();
                best_reps = state.stack_path().representatives;
            }
            state.step(&d, &cs).unwrap();
        }
        assert!(state.step(&d, &cs).is_err());
        let path = find_admissible_path(&d, &cs);
        assert_eq!(path.vertices, best);
        assert_eq!(path.representatives, best_reps);
        assert_eq!(state.best_path(), path);
    }
}

#[test]
fn every_round_moves_one_vertex_and_keeps_invariants() {
    let mut rng = common::rng(12);
    for _ in 0..500 {
        let (d, cs) = common::random_instance(&mut rng, 8, 10);
        let n = d.vertex_count();
        let mut prev = (0usize, n, 0usize);
        let outcome = run_dfs(&d, &cs, |state, mv| {
            state.check_invariants(&d, &cs).unwrap();
            let now = (state.explored_count(), state.unvisited_count(), state.stack().len());
            let expected = match mv {
                Move::Start { .. } | Move::Extend { .. } => (prev.0, prev.1 - 1, prev.2 + 1),
                Move::Retreat { .. } => (prev.0 + 1, prev.1, prev.2 - 1),
            };
            assert_eq!(now, expected, "{mv:?}");
            if let Move::Start { vertex } = mv {
                assert_eq!(state.stack(), &[*vertex]);
            }
            prev = now;
        });
        assert_eq!(outcome.rounds, 2 * n);
        assert!(outcome.balanced_moment);
        outcome.path.validate(&d, &cs).unwrap();
    }
}

#[test]
fn search_never_beats_the_exact_optimum() {
    let mut rng = common::rng(13);
    for _ in 0..300 {
        let (d, cs) = common::random_instance(&mut rng, 7, 10);
        let exact = longest_admissible_path_exact(&d, &cs).unwrap();
        exact.validate(&d, &cs).unwrap();
        assert!(find_admissible_path(&d, &cs).edge_length() <= exact.edge_length());
    }
}

#[test]
fn random_admissible_fixture() {
    // Frozen from the exact enumeration on one seeded instance.
    // First instance of the stream with a nontrivial representative universe.
    let mut rng = common::rng(2024);
    let (d, cs) = std::iter::repeat_with(|| common::random_instance(&mut rng, 7, 10))
        .find(|(d, cs)| d.vertex_count() >= 6 && cs.universe() >= 7)
        .unwrap();
    let exact = longest_admissible_path_exact(&d, &cs).unwrap();
    let found = find_admissible_path(&d, &cs);
    assert_eq!((d.vertex_count(), d.arc_count(), cs.universe()), FIXTURE_SHAPE);
    assert_eq!((exact.edge_length(), found.edge_length()), FIXTURE_LENGTHS);
}

const FIXTURE_SHAPE: (usize, usize, usize) = (7, 8, 10);
const FIXTURE_LENGTHS: (usize, usize) = (3, 2);

#[test]
fn hypothesis_matches_reference_implementation() {
    let mut rng = common::rng(14);
    let mut verdicts = String::new();
    for _ in 0..400 {
        let (d, cs) = common::random_instance(&mut rng, 7, 10);
        let n = d.vertex_count();
        for k in 1..=2 {
            if 2 * k > n {
                continue;
            }
            for x_cap in [0, n / 2, n - 1] {
                let fast = check_expansion_hypothesis(&d, &cs, k, x_cap).unwrap();
                let slow = common::hypothesis_reference(&d, &cs, k, x_cap);
                assert_eq!(fast, slow, "k {k} x_cap {x_cap}");
                verdicts.push(if fast { '1' } else { '0' });
            }
        }
    }
    let holds = verdicts.chars().filter(|&c| c == '1').count();
    assert_eq!((verdicts.len(), holds), FROZEN_VERDICT_COUNTS);
}

const FROZEN_VERDICT_COUNTS: (usize, usize) = (1722, 213);

#[test]
fn hypothesis_size_guards() {
    let mut rng = common::rng(15);
    let (d, cs) = common::random_instance(&mut rng, 7, 10);
    let n = d.vertex_count();
    assert!(check_expansion_hypothesis(&d, &cs, 1, n).is_err());
    let big = inpath::conflict_dfs::Digraph::complete(9);
    let cs9 = inpath::conflict_dfs::ConflictSystem::new(&big, inpath::Graph::empty(1), vec![vec![0]; 72]).unwrap();
    assert!(check_expansion_hypothesis(&big, &cs9, 1, 0).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn interchange_round_trip(seed: u64) {
        let (d, cs) = common::random_instance(&mut common::rng(seed), 8, 12);
        let mut buf = Vec::new();
        write_instance(&d, &cs, &mut buf).unwrap();
        let (d2, cs2) = read_instance(buf.as_slice()).unwrap();
        prop_assert_eq!(d2.arcs().collect::<Vec<_>>(), d.arcs().collect::<Vec<_>>());
        prop_assert_eq!(cs2.conflict_graph(), cs.conflict_graph());
        for arc in 0..d.arc_count() {
            prop_assert_eq!(cs2.candidates(arc), cs.candidates(arc));
        }
        prop_assert_eq!(find_admissible_path(&d2, &cs2), find_admissible_path(&d, &cs));
    }

    #[test]
    fn lemma_guarantee_holds(seed: u64) {
        let (d, cs) = common::random_instance(&mut common::rng(seed), 7, 10);
        let n = d.vertex_count();
        let path = find_admissible_path(&d, &cs);
        for k in 1..=2 {
            if check_expansion_hypothesis(&d, &cs, k, n.saturating_sub(1)).unwrap() {
                prop_assert!(path.edge_length() + 2 * k >= n + 1);
            }
        }
    }
}
