//! Path calculus, cells and the chain condition across the constructions.

use paradox_core::cells::find_diamonds;
use paradox_core::certify::{check_yablo_condition, is_yablo_shaped, reduce_via_trivialization, CHAIN_PATH_LEN};
use paradox_core::constructions::fixtures::{logic_diagram, tower2};
use paradox_core::constructions::{by_name, NAMES};
use paradox_core::paths::{
    contradictory, find_paths, first_contradiction, odd_loop_scan, path_value, ODD_LOOP_MAX_LEN,
};
use paradox_core::semantics::effective_function;
use paradox_core::{id, truncate, FiniteGraph, NodeId, Sign, Truth3, WindowMode};

/// Concrete names: placeholders in the listing get a small parameter.
fn concrete_names() -> Vec<String> {
    NAMES
        .iter()
        .map(|n| match *n {
            "sawblade:composed:<d>" => "sawblade:composed:2".to_string(),
            "oa:<order>:<cols|inf>:<heights|inf>" => "oa:enumeration:3:inf".to_string(),
            other => other.to_string(),
        })
        .collect()
}

fn window(name: &str, depth: usize, mode: WindowMode) -> FiniteGraph {
    truncate(by_name(name).unwrap().as_ref(), depth, mode).unwrap().graph
}

#[test]
fn logic_diagrams_compute_their_functions() {
    type F = fn(&dyn Fn(&str) -> bool) -> bool;
    let expected: [(u8, &[&str], F); 5] = [
        (1, &["z"], |v| !v("z")),
        (2, &["z"], |v| !v("z")),
        (3, &["z'"], |v| v("z'")),
        (4, &["z''"], |_| true),
        (5, &["u", "z'"], |v| v("z'") && !v("u")),
    ];
    for (n, inputs, f) in expected {
        let g = logic_diagram(n).unwrap();
        let t = effective_function(&g, &id("x")).unwrap();
        let want: Vec<NodeId> = inputs.iter().map(|s| id(s)).collect();
        assert_eq!(t.inputs, want, "diagram {n}");
        for r in 0..t.rows.len() {
            let bits = t.assignment(r);
            let look = |name: &str| bits[inputs.iter().position(|i| *i == name).unwrap()];
            assert_eq!(t.rows[r], Truth3::from_bool(f(&look)), "diagram {n}, row {r}");
        }
    }
}

#[test]
fn path_value_is_negation_parity() {
    for name in concrete_names() {
        let g = window(&name, 6, WindowMode::Restricted);
        let root = by_name(&name).unwrap().root();
        for target in g.nodes() {
            for p in find_paths(&g, &root, target, 8) {
                let negs = p.arrows().filter(|a| a.sign == Sign::Neg).count();
                let want = if negs % 2 == 0 { Sign::Pos } else { Sign::Neg };
                assert_eq!(path_value(&p), want, "{name}: {p:?}");
            }
        }
    }
}

#[test]
fn tower2_pattern() {
    let g = tower2();
    let ps = find_paths(&g, &id("x0"), &id("x4"), 8);
    assert_eq!(ps.len(), 4);
    let values: Vec<Sign> = ps.iter().map(path_value).collect();
    assert_eq!(values, [Sign::Pos, Sign::Neg, Sign::Neg, Sign::Pos]);
    // lower part contradictions meet at x4, upper part ones at x2
    let lower = [(0, 1), (2, 3)];
    for i in 0..4 {
        for j in i + 1..4 {
            let at = first_contradiction(&ps[i], &ps[j]).unwrap();
            let want = if lower.contains(&(i, j)) { "x4" } else { "x2" };
            assert_eq!(at, id(want), "pair ({i}, {j})");
        }
    }
    // contradiction by value only holds across the sign classes
    assert!(contradictory(&ps[0], &ps[1]));
    assert!(!contradictory(&ps[1], &ps[2]));
    assert!(!contradictory(&ps[0], &ps[3]));
}

#[test]
fn no_odd_loops_in_the_gallery() {
    for name in concrete_names() {
        let g = window(&name, 6, WindowMode::Restricted);
        let root = by_name(&name).unwrap().root();
        for end in g.nodes() {
            let r = odd_loop_scan(&g, &root, end, ODD_LOOP_MAX_LEN);
            assert!(r.violations.is_empty(), "{name} to {end}: {:?}", r.violations[0]);
        }
    }
}

#[test]
fn diamond_census() {
    assert_eq!(find_diamonds(&window("diamond:rhombus-basic", 8, WindowMode::Remainder)).len(), 7);
    for depth in 2..=8 {
        assert!(find_diamonds(&window("yablo", depth, WindowMode::Restricted)).is_empty());
    }
}

#[test]
fn essential_chain_reduces_to_yablo() {
    let g = window("diamond:essential", 10, WindowMode::Restricted);
    let chain: Vec<NodeId> = (0..6).map(|i| id(&format!("x:{i}"))).collect();
    let w = check_yablo_condition(&g, &chain, CHAIN_PATH_LEN).unwrap();
    assert_eq!(w.paths.len(), 15);
    for ((i, j), p) in &w.paths {
        assert_eq!((p.start(), p.end()), (&chain[*i], &chain[*j]));
        assert_eq!(path_value(p), Sign::Neg);
    }
    let reduced = reduce_via_trivialization(&g, &w).unwrap();
    assert!(is_yablo_shaped(&reduced, &chain).unwrap());
}

#[test]
fn raw_blade_teeth_do_not_chain() {
    let g = window("sawblade:raw", 6, WindowMode::Restricted);
    let root = by_name("sawblade:raw").unwrap().root();
    // the root, a successor of it, and one of that node's successors
    let a = g.successors(&root).map(|(m, _)| m.clone()).next().unwrap();
    let b = g.successors(&a).map(|(m, _)| m.clone()).next().unwrap();
    assert!(check_yablo_condition(&g, &[root, a, b], CHAIN_PATH_LEN).is_err());
}
