//! Machine (JSON) and human (text) renderings of analysis results.
//! JSON objects are `serde_json` maps without `preserve_order`, so keys
//! come out sorted and output is byte-stable.

use std::fmt::Write;

use serde_json::{json, Value};

use paradox_core::cells::{CellClass, Diamond, YabloCell};
use paradox_core::certify::{CertLevel, CertifyReport, ChainWitness, Escape, Verdict};
use paradox_core::paths::{path_value, Path};
use paradox_core::solver::{Clamp, EscapeSearch, RuleReport, SatOutcome};
use paradox_core::{NodeId, Valuation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// A rendered result in both formats.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub json: Value,
    pub text: String,
}

impl Report {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.text.clone(),
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("values serialize");
                s.push('\n');
                s
            }
        }
    }
}

fn valuation_json(v: &Valuation) -> Value {
    Value::Object(v.iter().map(|(k, t)| (k.to_string(), Value::String(t.to_string()))).collect())
}

fn valuation_text(v: &Valuation) -> String {
    v.iter().map(|(k, t)| format!("{k}={t}")).collect::<Vec<_>>().join(" ")
}

fn ids(nodes: &[NodeId]) -> Value {
    Value::Array(nodes.iter().map(|n| Value::String(n.to_string())).collect())
}

fn outcome_json(o: &SatOutcome) -> Value {
    match o {
        SatOutcome::Sat(m) => json!({ "result": "sat", "model": valuation_json(m) }),
        SatOutcome::Unsat(core) => json!({ "result": "unsat", "core": ids(core) }),
        SatOutcome::Unknown(b) => json!({ "result": "unknown", "budget": b }),
    }
}

fn outcome_text(o: &SatOutcome) -> String {
    match o {
        SatOutcome::Sat(m) => format!("sat\nmodel: {}\n", valuation_text(m)),
        SatOutcome::Unsat(core) => {
            format!("unsat\ncore: {}\n", core.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(" "))
        }
        SatOutcome::Unknown(b) => format!("unknown (budget {b} exhausted)\n"),
    }
}

pub fn sat(source: &str, mode: Option<&str>, depth: Option<usize>, clamps: &[Clamp], o: &SatOutcome) -> Report {
    let json = json!({
        "source": source,
        "mode": mode,
        "depth": depth,
        "clamps": clamps.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "outcome": outcome_json(o),
    });
    let mut text = source.to_string();
    if let (Some(m), Some(d)) = (mode, depth) {
        write!(text, " ({m}, depth {d})").unwrap();
    }
    if !clamps.is_empty() {
        let cs: Vec<String> = clamps.iter().map(|c| c.to_string()).collect();
        write!(text, " with {}", cs.join(" ")).unwrap();
    }
    text.push_str(": ");
    text.push_str(&outcome_text(o));
    Report { json, text }
}

pub fn rule(construction: &str, r: &RuleReport) -> Report {
    let violations: Vec<Value> = r
        .violations
        .iter()
        .map(|v| json!({ "node": v.node.to_string(), "assigned": v.assigned.to_string(), "evaluated": v.evaluated.to_string() }))
        .collect();
    let json = json!({
        "construction": construction,
        "rule": r.rule,
        "depth": r.depth,
        "checked": r.checked,
        "violations": violations,
    });
    let mut text = format!(
        "{construction}: rule {} checked on {} nodes to depth {}: {} violation(s)\n",
        r.rule,
        r.checked,
        r.depth,
        r.violations.len()
    );
    for v in &r.violations {
        writeln!(text, "  {} assigned {} but evaluates to {}", v.node, v.assigned, v.evaluated).unwrap();
    }
    Report { json, text }
}

pub fn escape(construction: &str, depth: usize, s: &EscapeSearch) -> Report {
    let root = s.window.root.to_string();
    let json = json!({
        "construction": construction,
        "depth": depth,
        "root": root,
        "rootFalse": outcome_json(&s.root_false),
        "rootTrue": outcome_json(&s.root_true),
        "escapeFound": s.has_candidate(),
    });
    let text = format!(
        "{construction} depth {depth}\n{root}=F: {}{root}=T: {}",
        outcome_text(&s.root_false),
        outcome_text(&s.root_true)
    );
    Report { json, text }
}

fn path_json(p: &Path) -> Value {
    json!({ "path": p.to_string(), "value": path_value(p).to_string(), "length": p.len() })
}

fn witness_json(w: &ChainWitness) -> Value {
    let paths: Vec<Value> = w
        .paths
        .iter()
        .map(|((i, j), p)| json!({ "from": w.chain[*i].to_string(), "to": w.chain[*j].to_string(), "path": p.to_string() }))
        .collect();
    json!({ "chain": ids(&w.chain), "paths": paths })
}

fn verdict_json(v: &Verdict) -> Value {
    match v {
        Verdict::CertifiedParadoxical(d) => json!({ "kind": v.label(), "depth": d }),
        Verdict::EscapeFound(Escape::Rule(r)) => json!({ "kind": v.label(), "rule": r.render() }),
        Verdict::EscapeFound(Escape::Model(m)) => json!({ "kind": v.label(), "model": valuation_json(m) }),
        Verdict::Inconclusive(why) => json!({ "kind": v.label(), "reason": why }),
    }
}

fn verdict_text(v: &Verdict) -> String {
    match v {
        Verdict::CertifiedParadoxical(d) => format!("certified paradoxical at depth {d}"),
        Verdict::EscapeFound(Escape::Rule(r)) => format!("escape found: {}", r.render()),
        Verdict::EscapeFound(Escape::Model(m)) => format!("escape found: {}", valuation_text(m)),
        Verdict::Inconclusive(why) => format!("inconclusive: {why}"),
    }
}

pub fn certify(r: &CertifyReport) -> Report {
    let per_node: serde_json::Map<String, Value> = r
        .per_node
        .iter()
        .map(|(n, s)| {
            (
                n.to_string(),
                json!({
                    "allArrowsNeg": s.all_arrows_neg,
                    "localTransWitness": s.local_trans_witness.as_ref().map(|k| k.to_string()),
                    "plusImpossible": s.plus_impossible,
                    "minusImpossible": s.minus_impossible,
                }),
            )
        })
        .collect();
    let level = r.level.as_ref().map(|l| match l {
        CertLevel::Arrow => "arrow",
        CertLevel::Path => "path",
    });
    let json = json!({
        "construction": r.construction,
        "depth": r.depth,
        "verdict": verdict_json(&r.verdict),
        "level": level,
        "caveat": r.caveat,
        "perNode": Value::Object(per_node),
        "witness": r.witness.as_ref().map(witness_json),
        "notes": r.notes,
    });
    let mut text = format!("{} depth {}: {}\n", r.construction, r.depth, verdict_text(&r.verdict));
    if let Some(l) = level {
        writeln!(text, "level: {l}").unwrap();
    }
    if let Some(w) = &r.witness {
        for ((i, j), p) in &w.paths {
            writeln!(text, "  {} .. {}: {p}", w.chain[*i], w.chain[*j]).unwrap();
        }
    }
    for n in &r.notes {
        writeln!(text, "note: {n}").unwrap();
    }
    if matches!(r.verdict, Verdict::CertifiedParadoxical(_)) {
        writeln!(text, "caveat: {}", r.caveat).unwrap();
    }
    Report { json, text }
}

pub fn paths(from: &NodeId, to: &NodeId, max_len: usize, found: &[Path]) -> Report {
    let json = json!({
        "from": from.to_string(),
        "to": to.to_string(),
        "maxLen": max_len,
        "paths": found.iter().map(path_json).collect::<Vec<_>>(),
    });
    let mut text = format!("{} path(s) from {from} to {to} of length <= {max_len}\n", found.len());
    for p in found {
        writeln!(text, "  {} {p}", path_value(p)).unwrap();
    }
    Report { json, text }
}

pub fn cells(classes: &[(NodeId, CellClass)], ycs: &[YabloCell]) -> Report {
    let json = json!({
        "classes": Value::Object(classes.iter().map(|(n, c)| (n.to_string(), Value::String(c.as_str().into()))).collect()),
        "yabloCells": ycs.iter().map(|c| json!({ "head": c.head.to_string(), "knee": c.knee.to_string(), "foot": c.foot.to_string() })).collect::<Vec<_>>(),
    });
    let mut text = String::new();
    for (n, c) in classes {
        writeln!(text, "{n}: {c}").unwrap();
    }
    writeln!(text, "{} Yablo cell(s)", ycs.len()).unwrap();
    for c in ycs {
        writeln!(text, "  head {} knee {} foot {}", c.head, c.knee, c.foot).unwrap();
    }
    Report { json, text }
}

pub fn diamonds(found: &[Diamond]) -> Report {
    let json = json!({
        "count": found.len(),
        "diamonds": found
            .iter()
            .map(|d| json!({ "head": d.head.to_string(), "kneeNeg": d.knee_neg.to_string(), "kneePos": d.knee_pos.to_string(), "meet": d.meet.to_string() }))
            .collect::<Vec<_>>(),
    });
    let mut text = format!("{} diamond(s)\n", found.len());
    for d in found {
        writeln!(text, "  {} -o {} -o {}, {} -o {} -> {}", d.head, d.knee_neg, d.meet, d.head, d.knee_pos, d.meet)
            .unwrap();
    }
    Report { json, text }
}

pub fn negtype(x: &NodeId, z: &NodeId, t: Option<usize>) -> Report {
    let json = json!({ "from": x.to_string(), "to": z.to_string(), "negationType": t });
    let text = match t {
        Some(t) => format!("negation type of {x} to {z}: {t}\n"),
        None => format!("{x} to {z}: no negation type\n"),
    };
    Report { json, text }
}

pub fn condition_yablo(chain: &[NodeId], result: &Result<(ChainWitness, bool), (usize, usize)>) -> Report {
    match result {
        Ok((w, shaped)) => {
            let json =
                json!({ "chain": ids(chain), "holds": true, "witness": witness_json(w), "reducesToYablo": shaped });
            let mut text = format!("condition holds on {} chain nodes\n", chain.len());
            for ((i, j), p) in &w.paths {
                writeln!(text, "  {} .. {}: {p}", chain[*i], chain[*j]).unwrap();
            }
            writeln!(
                text,
                "after trivialization the chain {} the Yablo pattern",
                if *shaped { "computes" } else { "does not compute" }
            )
            .unwrap();
            Report { json, text }
        }
        Err((i, j)) => {
            let json = json!({ "chain": ids(chain), "holds": false, "failingPair": [chain[*i].to_string(), chain[*j].to_string()] });
            let text = format!("condition fails: no negative path from {} to {}\n", chain[*i], chain[*j]);
            Report { json, text }
        }
    }
}
