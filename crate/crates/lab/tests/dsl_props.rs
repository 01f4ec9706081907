use paradox_core::formula::{Atom, Dnf, DnfSpec, Literal};
use paradox_core::solver::Clamp;
use paradox_core::{FiniteGraph, GraphBuilder, NodeId, Sign};
use paradox_lab::dot::export_dot;
use paradox_lab::dsl::{parse_dsl, render_graph, DslDocument};
use proptest::prelude::*;

const NAMES: [&str; 8] = ["x", "y", "y'", "z:0", "z:1", "u''", "a:b:2", "w"];

/// Conjunctions of (successor pick, polarity); a pick of 7 stands for a constant.
type Picks = Vec<Vec<(usize, bool)>>;

#[derive(Debug, Clone)]
struct Shape {
    n: usize,
    arrows: Vec<(usize, usize, bool)>,
    // per node: None for the default conjunction, else disjuncts of successor picks
    formulas: Vec<Option<Picks>>,
    clamps: Vec<(usize, bool)>,
}

fn shape() -> impl Strategy<Value = Shape> {
    (1..=NAMES.len())
        .prop_flat_map(|n| {
            let arrows = prop::collection::vec((0..n, 0..n, any::<bool>()), 0..12);
            let formulas = prop::collection::vec(
                prop::option::weighted(
                    0.4,
                    prop::collection::vec(prop::collection::vec((0..8usize, any::<bool>()), 0..3), 1..3),
                ),
                n,
            );
            let clamps = prop::collection::vec((0..n, any::<bool>()), 0..3);
            (Just(n), arrows, formulas, clamps)
        })
        .prop_map(|(n, arrows, formulas, clamps)| {
            // keep arrows pointing forward so the graph is a DAG
            let arrows = arrows.into_iter().filter(|(a, b, _)| a < b).collect();
            Shape { n, arrows, formulas, clamps }
        })
}

fn build(s: &Shape) -> (FiniteGraph, Vec<Clamp>) {
    let id = |i: usize| NodeId::new(NAMES[i]).unwrap();
    let mut b = GraphBuilder::new();
    let mut succ: Vec<Vec<(usize, Sign)>> = vec![Vec::new(); s.n];
    for i in 0..s.n {
        b.node(id(i));
    }
    for &(a, c, neg) in &s.arrows {
        if succ[a].iter().any(|(m, _)| *m == c) {
            continue;
        }
        let sign = if neg { Sign::Neg } else { Sign::Pos };
        b.arrow(id(a), id(c), sign);
        succ[a].push((c, sign));
    }
    for (i, f) in s.formulas.iter().enumerate() {
        let (Some(disjuncts), false) = (f, succ[i].is_empty()) else { continue };
        let dnf = disjuncts
            .iter()
            .map(|conj| {
                let mut atoms: Vec<Atom> = conj
                    .iter()
                    .map(|&(k, t)| {
                        let (m, sign) = succ[i][k % succ[i].len()];
                        // an occasional constant in place of a literal
                        if k == 7 {
                            if t {
                                Atom::True
                            } else {
                                Atom::False
                            }
                        } else {
                            Atom::Lit(Literal::from_sign(id(m), sign))
                        }
                    })
                    .collect();
                if atoms.is_empty() {
                    atoms.push(Atom::True);
                }
                atoms
            })
            .collect();
        b.formula(id(i), DnfSpec::Explicit(Dnf::new(dnf)));
    }
    let g = b.build().expect("forward arrows and sign-matched literals");
    let mut clamps: Vec<Clamp> = Vec::new();
    for &(i, v) in &s.clamps {
        if clamps.iter().all(|c| c.node != id(i)) {
            clamps.push(Clamp::new(id(i), v));
        }
    }
    (g, clamps)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn render_then_parse_is_identity(s in shape()) {
        let (g, clamps) = build(&s);
        let text = render_graph(&g, &clamps);
        let (g2, c2) = parse_dsl(&text).unwrap();
        prop_assert_eq!(&g2, &g, "{}", text);
        prop_assert_eq!(&c2, &clamps);
        prop_assert_eq!(DslDocument::parse(&text).unwrap().render(), text.clone());
        prop_assert_eq!(render_graph(&g2, &c2), text);
        prop_assert_eq!(export_dot(&g2), export_dot(&g));
    }
}
