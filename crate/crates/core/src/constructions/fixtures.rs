//! Small fixed graphs used as worked examples.

use crate::graph::{FiniteGraph, GraphBuilder};
use crate::node::{id, Sign};
use Sign::{Neg, Pos};

fn from_arrows(arrows: &[(&str, &str, Sign)]) -> FiniteGraph {
    let mut b = GraphBuilder::new();
    for (a, c, s) in arrows {
        b.arrow(id(a), id(c), *s);
    }
    b.build().expect("fixture is a DAG")
}

/// `x -o y -o z`, `x -o z`.
pub fn example_basic() -> FiniteGraph {
    from_arrows(&[("x", "y", Neg), ("y", "z", Neg), ("x", "z", Neg)])
}

/// [`example_basic`] plus `y -o y'`.
pub fn example_basic_extended() -> FiniteGraph {
    from_arrows(&[("x", "y", Neg), ("y", "z", Neg), ("x", "z", Neg), ("y", "y'", Neg)])
}

/// `x0 -o x1 -> x2 -o x3 -> x4` with shortcuts `x0 -> x2`, `x2 -> x4`.
pub fn tower2() -> FiniteGraph {
    from_arrows(&[
        ("x0", "x1", Neg),
        ("x1", "x2", Pos),
        ("x2", "x3", Neg),
        ("x3", "x4", Pos),
        ("x2", "x4", Pos),
        ("x0", "x2", Pos),
    ])
}

/// The five small logic diagrams; root `x`, every node a conjunction.
/// Their effective functions of `x` are `~z`, `~z`, `z'`, `T`, `z' & ~u`.
pub fn logic_diagram(n: u8) -> Option<FiniteGraph> {
    let arrows: &[(&str, &str, Sign)] = match n {
        1 => &[("x", "y", Neg), ("x", "z", Neg), ("y", "z", Neg), ("y", "y'", Neg), ("y'", "z", Neg)],
        2 => &[
            ("x", "y", Neg),
            ("x", "z", Neg),
            ("y", "y''", Neg),
            ("y", "y'", Neg),
            ("y'", "z", Neg),
            ("y''", "z", Pos),
        ],
        3 => &[("x", "y", Neg), ("x", "z", Neg), ("y", "z", Neg), ("y", "z'", Neg), ("z", "z'", Neg)],
        4 => &[
            ("x", "y", Neg),
            ("x", "z", Neg),
            ("y", "y'", Neg),
            ("y", "z", Neg),
            ("y'", "z", Neg),
            ("z", "z'", Neg),
            ("z", "z''", Neg),
            ("z'", "z''", Neg),
        ],
        5 => &[
            ("x", "z", Neg),
            ("x", "y", Neg),
            ("x", "u", Neg),
            ("y", "z", Neg),
            ("y", "u'", Neg),
            ("y", "u", Neg),
            ("z", "z'", Neg),
            ("u'", "u", Neg),
        ],
        _ => return None,
    };
    Some(from_arrows(arrows))
}
