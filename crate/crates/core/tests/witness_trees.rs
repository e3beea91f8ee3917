//! Known extremal witness trees and their computed properties.

use treecsp_core::conditions;
use treecsp_core::cores::is_core_tree;
use treecsp_core::digraph::{center_or_bicenter, distances_from, is_triad, Middle};
use treecsp_core::indicator::{check_total_symmetry_all, decide, DecideOpts, Mode, Verdict};
use treecsp_oracle::fixtures::{tree_a1, tree_b1, tree_c, tree_d};

#[test]
fn fixtures_are_core_trees() {
    assert!(is_core_tree(&tree_c()));
    assert!(is_core_tree(&tree_d()));
    assert!(is_core_tree(&tree_b1()));
    assert!(is_core_tree(&tree_a1()));
}

#[test]
fn tree_c_verdicts() {
    let opts = DecideOpts::default();
    let c = tree_c();
    assert_eq!(
        decide(&c, &conditions::majority(), Mode::Full, &opts)
            .unwrap()
            .verdict(),
        Verdict::Sat
    );
    assert_eq!(
        decide(&c, &conditions::wnu(2).unwrap(), Mode::Auto, &opts)
            .unwrap()
            .verdict(),
        Verdict::Unsat
    );
    assert_eq!(
        check_total_symmetry_all(&c, &opts).unwrap().verdict(),
        Verdict::Unsat
    );
}

#[test]
fn tree_d_verdicts() {
    let opts = DecideOpts::default();
    let d = tree_d();
    assert_eq!(
        decide(&d, &conditions::majority(), Mode::Full, &opts)
            .unwrap()
            .verdict(),
        Verdict::Unsat
    );
    assert_eq!(
        decide(&d, &conditions::kk(5).unwrap(), Mode::Auto, &opts)
            .unwrap()
            .verdict(),
        Verdict::Sat
    );
    assert_eq!(
        decide(&d, &conditions::hmck(2).unwrap(), Mode::Auto, &opts)
            .unwrap()
            .verdict(),
        Verdict::Sat
    );
    assert_eq!(
        decide(&d, &conditions::jonsson(20), Mode::Levelwise, &opts)
            .unwrap()
            .verdict(),
        Verdict::LwUnsat
    );
}

#[test]
fn tree_b1_verdicts() {
    let opts = DecideOpts::default();
    let b1 = tree_b1();
    assert_eq!(
        decide(&b1, &conditions::majority(), Mode::Full, &opts)
            .unwrap()
            .verdict(),
        Verdict::Sat
    );
    assert_eq!(
        decide(&b1, &conditions::hm(8).unwrap(), Mode::Auto, &opts)
            .unwrap()
            .verdict(),
        Verdict::Unsat
    );
}

#[test]
fn tree_a1_fails_kmm() {
    let a1 = tree_a1();
    assert!(!is_triad(&a1));
    let opts = DecideOpts::default();
    assert_eq!(
        decide(&a1, &conditions::kmm(), Mode::Auto, &opts)
            .unwrap()
            .verdict(),
        Verdict::Unsat
    );
    assert_eq!(
        decide(&a1, &conditions::wnu(2).unwrap(), Mode::Auto, &opts)
            .unwrap()
            .verdict(),
        Verdict::Unsat
    );
}

#[test]
fn tree_d_reversal_flips_all_edges() {
    let d = tree_d();
    let rev = d.reverse();
    assert_eq!(rev.edge_count(), 15);
    for &(u, v) in d.edges() {
        assert!(rev.has_edge(v, u));
    }
}

/// The longest undirected path in tree D has odd length, hence a bicenter;
/// cross-checked here by all-pairs distances rather than the double sweep.
#[test]
fn tree_d_middle_is_the_bicenter() {
    let d = tree_d();
    let mut diameter = 0;
    for v in 0..d.vertex_count() {
        let far = distances_from(&d, v).into_iter().max().unwrap();
        diameter = diameter.max(far);
    }
    assert_eq!(diameter % 2, 1);
    assert_eq!(center_or_bicenter(&d), Middle::Bicenter((1, 0)));
}
