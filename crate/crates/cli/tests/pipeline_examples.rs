//! Cascade records for the known witness trees and the trivial template.

use treecsp::pipeline::{classify_tree, default_cascade, validate_record, StageVerdict};
use treecsp_core::digraph::{canonical_encoding, TreeDigraph};
use treecsp_oracle::fixtures::{tree_c, tree_d};

#[test]
fn single_edge_record_has_no_refutations() {
    let cascade = default_cascade(32);
    let edge = TreeDigraph::from_edges([(0, 1)]).unwrap();
    let record = classify_tree(&edge, &canonical_encoding(&edge), &cascade).unwrap();
    validate_record(&cascade, &record).unwrap();
    for (stage, verdict) in cascade.stages.iter().zip(&record.verdicts) {
        assert!(
            !matches!(
                verdict,
                StageVerdict::Unsat | StageVerdict::LwUnsat | StageVerdict::Timeout
            ),
            "{} on the single edge: {}",
            stage.name,
            verdict
        );
    }
    assert_eq!(
        record.verdict_of(&cascade, "ts-all"),
        Some(StageVerdict::Sat)
    );
    assert_eq!(
        record.verdict_of(&cascade, "majority"),
        Some(StageVerdict::Sat)
    );
    assert_eq!(record.verdict_of(&cascade, "kmm"), Some(StageVerdict::Sat));
    assert_eq!(record.verdict_of(&cascade, "hm-1"), Some(StageVerdict::Sat));
}

#[test]
fn tree_c_record() {
    let cascade = default_cascade(32);
    let c = tree_c();
    let record = classify_tree(&c, &canonical_encoding(&c), &cascade).unwrap();
    validate_record(&cascade, &record).unwrap();
    assert_eq!(
        record.verdict_of(&cascade, "ts-all"),
        Some(StageVerdict::Unsat)
    );
    assert_eq!(
        record.verdict_of(&cascade, "wnu-2"),
        Some(StageVerdict::Unsat)
    );
    assert_eq!(
        record.verdict_of(&cascade, "majority"),
        Some(StageVerdict::Sat)
    );
    assert_eq!(record.verdict_of(&cascade, "kmm"), Some(StageVerdict::Sat));
    // despite the majority, no Hagemann-Mitschke length works here: the tree
    // sits in the majority-but-no-HM class alongside the NL-hard twelves
    assert_eq!(
        record.verdict_of(&cascade, "hm-30"),
        Some(StageVerdict::Unsat)
    );
    assert_eq!(
        record.verdict_of(&cascade, "jonsson-1"),
        Some(StageVerdict::LwSat)
    );
}

#[test]
fn tree_d_record() {
    let cascade = default_cascade(32);
    let d = tree_d();
    let record = classify_tree(&d, &canonical_encoding(&d), &cascade).unwrap();
    validate_record(&cascade, &record).unwrap();
    assert_eq!(
        record.verdict_of(&cascade, "majority"),
        Some(StageVerdict::Unsat)
    );
    assert_eq!(record.verdict_of(&cascade, "kmm"), Some(StageVerdict::Sat));
    // no majority means no Hagemann-Mitschke chain at all on this tree
    for name in ["hm-1", "hm-2", "hm-4", "hm-8", "hm-16", "hm-30"] {
        assert_eq!(
            record.verdict_of(&cascade, name),
            Some(StageVerdict::Unsat),
            "{name}"
        );
    }
    // the level-wise Jónsson probes all refute
    for name in [
        "jonsson-1",
        "jonsson-2",
        "jonsson-4",
        "jonsson-8",
        "jonsson-16",
        "jonsson-32",
    ] {
        assert_eq!(
            record.verdict_of(&cascade, name),
            Some(StageVerdict::LwUnsat),
            "{name}"
        );
    }
    // the Kearnes-Kiss and Hobby-McKenzie families become satisfiable
    // level-wise once the schedule passes lengths 5 and 2
    assert_eq!(
        record.verdict_of(&cascade, "kk-8"),
        Some(StageVerdict::LwSat)
    );
    assert_eq!(
        record.verdict_of(&cascade, "hmck-2"),
        Some(StageVerdict::LwSat)
    );
}
