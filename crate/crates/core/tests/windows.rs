//! Truncation windows and the solver on the infinite constructions.

use paradox_core::constructions::{by_name, make_procrastination, make_two_arrow_chain, make_yablo};
use paradox_core::solver::{search_escape, solve, verify_rule, Clamp, SatOutcome, ValuationRule, DEFAULT_BUDGET};
use paradox_core::{id, truncate, WindowMode};

#[test]
fn yablo_remainder_windows_have_both_models() {
    let y = make_yablo();
    for depth in 3..=12 {
        let w = truncate(&y, depth, WindowMode::Remainder).unwrap();
        for value in [true, false] {
            let out = solve(&w.graph, &[Clamp::new(id("x:0"), value)]).unwrap();
            assert!(out.is_sat(), "depth {depth}, x:0={value}");
        }
    }
}

#[test]
fn yablo_restricted_refutes_root_true() {
    let y = make_yablo();
    for depth in 2..=12 {
        let w = truncate(&y, depth, WindowMode::Restricted).unwrap();
        match solve(&w.graph, &[Clamp::new(id("x:0"), true)]).unwrap() {
            SatOutcome::Unsat(core) => {
                assert!(core.len() <= 3, "depth {depth}: {core:?}");
                assert!(core.contains(&id("x:0")));
            }
            other => panic!("depth {depth}: {other:?}"),
        }
        // the other side stays open: the last interior node can be true
        assert!(solve(&w.graph, &[Clamp::new(id("x:0"), false)]).unwrap().is_sat());
    }
}

#[test]
fn procrastination_is_one_sided() {
    let p = make_procrastination();
    for depth in 4..=10 {
        let w = truncate(&p, depth, WindowMode::Remainder).unwrap();
        assert!(solve(&w.graph, &[Clamp::new(id("Y:1"), true)]).unwrap().is_unsat(), "depth {depth}");
        assert!(solve(&w.graph, &[Clamp::new(id("Y:1"), false)]).unwrap().is_sat(), "depth {depth}");
    }
    let r = verify_rule(&p, &ValuationRule::all_false(), 50).unwrap();
    assert!(r.violations.is_empty());
    assert!(r.checked >= 50);
}

#[test]
fn printed_escapes_hold() {
    let oa2 = by_name("oa2").unwrap();
    let r = verify_rule(oa2.as_ref(), &ValuationRule::oa2_rows(), 20).unwrap();
    assert!(r.violations.is_empty() && r.checked > 0);
    let r = verify_rule(&make_two_arrow_chain(), &ValuationRule::all_false(), 20).unwrap();
    assert!(r.violations.is_empty() && r.checked > 0);
    let raw = by_name("sawblade:raw").unwrap();
    let s = search_escape(raw.as_ref(), 6, DEFAULT_BUDGET).unwrap();
    assert!(s.root_true.is_sat() && s.root_false.is_sat());
}

#[test]
fn wrong_rules_are_caught() {
    // Yablo has no all-false model: every node then sees only false nodes
    let r = verify_rule(&make_yablo(), &ValuationRule::all_false(), 8).unwrap();
    assert_eq!(r.violations.len(), r.checked);
    let oa1 = by_name("oa1").unwrap();
    let r = verify_rule(oa1.as_ref(), &ValuationRule::oa2_rows(), 10);
    assert!(r.is_err() || !r.unwrap().violations.is_empty());
}
