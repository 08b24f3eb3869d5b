//! Noteworthy solved values, pinned with certificates that trust only the
//! game rules.
//!
//! The corpus sweeps show the gap gcol_total - gcol_edge equal to 2 on
//! every graph with edges and at most 4 vertices, and on all but one
//! connected graph with 5. The exception is the 4-wheel (equivalently the
//! complete tripartite graph on parts 1+2+2; graph6 `D]{`), where the gap
//! is 1. Each bound below is certified by exhaustively exploring every
//! opponent line: the solver only steers the hero's moves, and every line's
//! outcome is decided by replaying the rules, so a wrong solver value would
//! surface as a lost line, not a wrong assertion.

use ggc_core::graph::{line_graph, total_graph};
use ggc_core::lab::{check_conjecture, run_corpus, CorpusSpec, LabConfig, Task};
use ggc_core::marking::gcol;
use ggc_core::play::exhaustive_verify_marking;
use ggc_core::strategy::OptimalMarking;
use ggc_core::{parse_graph6, BudgetMeter, ConflictMode, Player};

#[test]
fn wheel_gap_is_one_certified_by_exhaustive_play() {
    let g = parse_graph6("D]{").unwrap();
    // the 4-wheel: one degree-4 hub, four degree-3 rim vertices
    assert_eq!((g.n(), g.m()), (5, 8));
    let mut degrees: Vec<u32> = (0..5).map(|v| g.degree(v)).collect();
    degrees.sort_unstable();
    assert_eq!(degrees, vec![3, 3, 3, 3, 4]);

    assert_eq!(gcol(&g, ConflictMode::Line).unwrap(), 6);
    assert_eq!(gcol(&g, ConflictMode::Total).unwrap(), 7);

    // (arena, k, hero): hero must win every opponent line
    let line = line_graph(&g);
    let total = total_graph(&g);
    let certificates = [
        (&line, 5, Player::Bob),    // edge game value is above 5
        (&line, 6, Player::Alice),  // and at most 6
        (&total, 6, Player::Bob),   // total game value is above 6
        (&total, 7, Player::Alice), // and at most 7
    ];
    for (arena, k, hero) in certificates {
        let strategy = OptimalMarking::new(k);
        let meter = BudgetMeter::unlimited();
        let outcome = exhaustive_verify_marking(arena, k, hero, &strategy, &meter, None);
        assert!(
            outcome.is_ok(),
            "certificate failed for k={k} hero={hero:?}: {outcome:?}"
        );
    }
}

/// The sweep that surfaces the wheel: 31 connected graphs on up to 5
/// vertices, exactly one non-degenerate row off the gap of 2.
#[test]
fn connected_five_vertex_sweep_reports_the_wheel() {
    let spec = CorpusSpec::parse("exhaustive:1-5:connected", 64).unwrap();
    let config = LabConfig {
        tasks: Task::parse_list("gcol_edge,gcol_total").unwrap(),
        jobs: 4,
        ..Default::default()
    };
    let report = run_corpus(&spec, &config).unwrap();
    assert_eq!(report.rows.len(), 31);
    let conj = check_conjecture(&report.rows);
    assert_eq!(conj.evaluated, 31);
    assert_eq!(
        conj.counterexamples,
        vec![("D]{".to_string(), 1)],
        "histogram: {:?}",
        conj.histogram
    );
    assert_eq!(conj.histogram.get(&2), Some(&29));
}
