use std::collections::BTreeSet;

use atam::document::{parse_system, serialize_system};
use atam::minimize::{candidates, prune, verify_certificate, SearchMode};
use atam::systems::{coop, nds, random_system};
use atam::{
    double_glue_lint, explore_with, interacts, is_tau_stable, judge, normalize_system,
    sample_sequence, Answer, Assembly, BindingGraph, Bound, Direction, ExploreOptions,
    ExploreStatus, Point, Policy, SearchOrder, Shape, TileSystem,
};
use proptest::prelude::*;

const BUDGET: usize = 20_000;

fn system() -> impl Strategy<Value = TileSystem> {
    (any::<u64>(), 1usize..=4, 1usize..=3).prop_map(|(seed, tiles, labels)| random_system(seed, tiles, labels))
}

fn small_bound() -> Bound {
    Bound::rectangle(4, 4, Point::new(-1, -1))
}

/// Random attach chain: assemblies produced by uniformly chosen attachments.
fn chain(sys: &TileSystem, seed: u64, len: usize) -> Vec<Assembly> {
    sample_sequence(sys, seed, Policy::Uniform, len).assemblies(sys)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn binding_edges_join_grid_neighbors(sys in system(), seed in any::<u64>()) {
        for a in chain(&sys, seed, 12) {
            let g = BindingGraph::of(&a, &sys).unwrap();
            for e in &g.edges {
                prop_assert!(e.a.is_adjacent(e.b));
                prop_assert!(a.contains(e.a) && a.contains(e.b));
            }
        }
    }

    #[test]
    fn attach_chains_stay_stable(sys in system(), seed in any::<u64>()) {
        for a in chain(&sys, seed, 20) {
            prop_assert!(is_tau_stable(&a, &sys, 2));
        }
    }

    #[test]
    fn interaction_is_symmetric(sys in system()) {
        for a in sys.tile_types() {
            for b in sys.tile_types() {
                for d in Direction::ALL {
                    prop_assert_eq!(interacts(a, d, b), interacts(b, d.opposite(), a));
                }
            }
        }
    }

    #[test]
    fn chains_are_increasing(sys in system(), seed in any::<u64>()) {
        let steps = chain(&sys, seed, 12);
        for w in steps.windows(2) {
            prop_assert!(w[0].is_subassembly_of(&w[1]));
            prop_assert!(!w[1].is_subassembly_of(&w[0]));
            prop_assert_eq!(w[0].len() + 1, w[1].len());
        }
        let last = steps.last().unwrap();
        for a in &steps {
            prop_assert!(a.is_subassembly_of(last));
            prop_assert!(a.is_subassembly_of(a));
        }
    }

    #[test]
    fn normalization_is_idempotent(sys in system()) {
        let again = normalize_system(&sys.to_raw()).unwrap();
        prop_assert!(again.warnings.is_empty());
        prop_assert_eq!(again.system, sys);
    }

    #[test]
    fn documents_round_trip(sys in system()) {
        let text = serialize_system("random", &sys);
        let back = parse_system(&text).unwrap();
        prop_assert_eq!(&back.system, &sys);
        prop_assert_eq!(serialize_system("random", &back.system), text);
    }

    #[test]
    fn search_orders_agree(sys in system(), rng in any::<u64>()) {
        let bound = small_bound();
        let bfs = explore_with(&sys, &bound, &ExploreOptions::new(BUDGET)).unwrap();
        prop_assume!(bfs.report.status != ExploreStatus::BudgetExceeded);
        for order in [SearchOrder::DepthFirst, SearchOrder::Random(rng), SearchOrder::ParallelBreadthFirst] {
            let other = explore_with(&sys, &bound, &ExploreOptions::new(BUDGET).order(order)).unwrap();
            prop_assert_eq!(other.keys(), bfs.keys());
            prop_assert_eq!(&other.report.terminal_keys, &bfs.report.terminal_keys);
            prop_assert_eq!(other.report.status, bfs.report.status);
        }
    }

    #[test]
    fn terminality_matches_frontier(sys in system()) {
        let ex = explore_with(&sys, &small_bound(), &ExploreOptions::new(BUDGET)).unwrap();
        for a in &ex.assemblies {
            let terminal = ex.report.terminal_keys.contains(&a.key());
            prop_assert_eq!(terminal, a.frontier_attachments(&sys).is_empty());
        }
    }

    #[test]
    fn directed_systems_are_strict(sys in system()) {
        let ex = explore_with(&sys, &small_bound(), &ExploreOptions::new(BUDGET)).unwrap();
        let r = &ex.report;
        let one_type_per_point = r.position_types.values().all(|t| t.len() == 1);
        if r.status == ExploreStatus::Complete && one_type_per_point {
            prop_assert_eq!(r.terminals.len(), 1);
            let shape = r.terminals[0].shape();
            let j = judge(&sys, &shape, BUDGET).unwrap();
            prop_assert_eq!(j.strict.answer, Answer::Yes);
            prop_assert_eq!(j.directed.answer, Answer::Yes);
        }
    }

    #[test]
    fn lint_refutes_strictness(sys in system(), w in 1u32..=3, h in 1u32..=3) {
        let shape = Shape::rectangle(w, h, Point::ORIGIN).unwrap();
        let j = judge(&sys, &shape, BUDGET).unwrap();
        if !double_glue_lint(&sys, &shape, &j.report).is_empty() {
            prop_assert_ne!(j.strict.answer, Answer::Yes);
        }
    }

    #[test]
    fn witnesses_replay(sys in system(), w in 1u32..=3, h in 1u32..=3) {
        let shape = Shape::rectangle(w, h, Point::ORIGIN).unwrap();
        let j = judge(&sys, &shape, BUDGET).unwrap();
        if let Some(witness) = &j.strict.witness {
            prop_assert!(witness.check(&sys, Some(&shape)));
        }
        if let Some(witness) = &j.directed.witness {
            prop_assert!(witness.check(&sys, None));
        }
    }
}

#[test]
fn null_boundary_means_empty_frontier() {
    let sys = &coop();
    let square = explore_with(sys, &small_bound(), &ExploreOptions::new(BUDGET)).unwrap();
    for a in &square.report.terminals {
        let sides_out: BTreeSet<_> = a
            .iter()
            .flat_map(|(p, t)| {
                Direction::ALL
                    .into_iter()
                    .filter(move |&d| !a.contains(p.step(d)))
                    .map(move |d| sys.tile(t).glue(d).is_null())
            })
            .collect();
        assert_eq!(sides_out, BTreeSet::from([true]));
        assert!(a.frontier(sys).is_empty());
    }
}

#[test]
fn nds_is_strict_but_not_directed() {
    let sys = nds();
    let shape = Shape::new([Point::new(0, 0), Point::new(1, 0)]).unwrap();
    let j = judge(&sys, &shape, BUDGET).unwrap();
    assert_eq!(j.strict.answer, Answer::Yes);
    assert_eq!(j.directed.answer, Answer::No);
}

/// Any pruned candidate is rejected by the verifier in both modes.
#[test]
fn pruned_candidates_are_rejected() {
    let shapes = [
        Shape::single(Point::ORIGIN),
        Shape::new([Point::new(0, 0), Point::new(1, 0)]).unwrap(),
        Shape::new([Point::new(0, 0), Point::new(1, 0), Point::new(0, 1)]).unwrap(),
    ];
    let mut checked = 0;
    for shape in &shapes {
        for k in 1..=2 {
            for c in candidates(k, shape).step_by(7).take(3000) {
                if prune(&c.assignment, c.seed_tile, c.seed_position, shape).is_some() {
                    let sys = c.system();
                    assert!(!verify_certificate(&sys, shape, SearchMode::General, 10_000));
                    assert!(!verify_certificate(&sys, shape, SearchMode::Directed, 10_000));
                    checked += 1;
                }
            }
        }
    }
    assert!(checked > 100, "only {checked} pruned candidates sampled");
}
