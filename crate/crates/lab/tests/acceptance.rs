//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! The process fails when the set of failing criteria differs from
//! `KNOWN_RED`. Known failures are still printed as FAIL, with the reason.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use paradox_core::cells::find_diamonds;
use paradox_core::certify::{
    certify_paradoxical, chain_tables, check_yablo_condition, reduce_via_trivialization, yablo_table, CHAIN_PATH_LEN,
    EXPECTED_VERDICTS,
};
use paradox_core::constructions::fixtures::{logic_diagram, tower2};
use paradox_core::constructions::{by_name, NAMES};
use paradox_core::formula::{negate_dnf, Atom, Dnf, Literal};
use paradox_core::paths::{find_paths, first_contradiction, odd_loop_scan, path_value, ODD_LOOP_MAX_LEN};
use paradox_core::semantics::effective_function;
use paradox_core::{id, truncate, FiniteGraph, NodeId, Sign, Truth3, WindowMode};
use paradox_lab::dsl::DslDocument;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

/// Criteria expected to fail, with the reason.
const KNOWN_RED: &[(usize, &str)] = &[(
    5,
    "sawblade:closed has free teeth, so back nodes false and teeth true is a model at every depth; \
     certify reports that escape instead of a certificate",
)];

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

struct Run {
    code: i32,
    json: Value,
    raw: String,
    elapsed: Duration,
}

fn lab(args: &[&str]) -> Run {
    let t = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_paradox-lab")).args(args).output().expect("binary runs");
    let elapsed = t.elapsed();
    let raw = String::from_utf8(out.stdout).expect("utf-8 output");
    let json = serde_json::from_str(&raw).unwrap_or(Value::Null);
    Run { code: out.status.code().unwrap_or(-1), json, raw, elapsed }
}

fn sat_run(gen: &str, mode: &str, depth: usize, clamp: &str) -> Run {
    let d = depth.to_string();
    lab(&["check", "sat", "--gen", gen, "--mode", mode, "--depth", &d, "--clamp", clamp, "--format", "json"])
}

fn result(r: &Run) -> &str {
    r.json["outcome"]["result"].as_str().unwrap_or("?")
}

fn c1() -> Check {
    for depth in 3..=12 {
        for clamp in ["x:0=T", "x:0=F"] {
            let r = sat_run("yablo", "remainder", depth, clamp);
            ensure(result(&r) == "sat" && r.code == 0, || format!("depth {depth}, {clamp}: {}", result(&r)))?;
            ensure(r.elapsed < Duration::from_secs(1), || format!("depth {depth}, {clamp}: took {:?}", r.elapsed))?;
        }
    }
    Ok(())
}

fn c2() -> Check {
    for depth in 2..=12 {
        let r = sat_run("yablo", "restricted", depth, "x:0=T");
        ensure(result(&r) == "unsat" && r.code == 1, || format!("depth {depth}: {}", result(&r)))?;
        let core = r.json["outcome"]["core"].as_array().map_or(usize::MAX, Vec::len);
        ensure(core <= 3, || format!("depth {depth}: core of {core} nodes"))?;
    }
    Ok(())
}

fn c3() -> Check {
    for depth in 4..=10 {
        let t = sat_run("procrastination", "remainder", depth, "Y:1=T");
        ensure(result(&t) == "unsat", || format!("depth {depth}, Y:1=T: {}", result(&t)))?;
        let f = sat_run("procrastination", "remainder", depth, "Y:1=F");
        ensure(result(&f) == "sat", || format!("depth {depth}, Y:1=F: {}", result(&f)))?;
    }
    let r =
        lab(&["check", "rule", "--gen", "procrastination", "--rule", "all-false", "--depth", "50", "--format", "json"]);
    ensure(r.code == 0 && r.json["violations"].as_array().is_some_and(Vec::is_empty), || r.raw.clone())
}

fn rule_holds(gen: &str, rule: &str, depth: &str) -> Check {
    let r = lab(&["check", "rule", "--gen", gen, "--rule", rule, "--depth", depth, "--format", "json"]);
    let ok = r.code == 0
        && r.json["violations"].as_array().is_some_and(Vec::is_empty)
        && r.json["checked"].as_u64().is_some_and(|c| c > 0);
    ensure(ok, || format!("{gen} with {rule}: {}", r.raw))
}

fn c4() -> Check {
    rule_holds("oa2", "oa2-rows", "20")?;
    rule_holds("two-arrow", "all-false", "20")?;
    let r = lab(&["check", "escape", "--gen", "sawblade:raw", "--depth", "6", "--format", "json"]);
    ensure(r.code == 0 && r.json["rootTrue"]["result"] == "sat", || format!("raw blade: {}", r.raw))
}

fn c5() -> Check {
    let mut wrong = Vec::new();
    for &(name, want) in EXPECTED_VERDICTS {
        let gen = by_name(name).map_err(|e| e.to_string())?;
        let mut seen = BTreeSet::new();
        for depth in [4, 6, 8] {
            let r = certify_paradoxical(gen.as_ref(), depth).map_err(|e| format!("{name}: {e}"))?;
            let got = r.verdict.outcome();
            seen.insert(format!("{got:?}"));
            if got != Some(want) {
                wrong.push(format!("{name} at depth {depth}: {} (expected {want:?})", r.verdict.label()));
            }
        }
        ensure(seen.len() == 1, || format!("{name} changes verdict across depths: {seen:?}"))?;
    }
    ensure(wrong.is_empty(), || wrong.join("; "))
}

fn c6() -> Check {
    type F = fn(&dyn Fn(&str) -> bool) -> bool;
    let expected: [(u8, &[&str], F); 5] = [
        (1, &["z"], |v| !v("z")),
        (2, &["z"], |v| !v("z")),
        (3, &["z'"], |v| v("z'")),
        (4, &["z''"], |_| true),
        (5, &["u", "z'"], |v| v("z'") && !v("u")),
    ];
    for (n, inputs, f) in expected {
        let g = logic_diagram(n).ok_or("missing diagram")?;
        let t = effective_function(&g, &id("x")).map_err(|e| e.to_string())?;
        let want: Vec<NodeId> = inputs.iter().map(|s| id(s)).collect();
        ensure(t.inputs == want, || format!("diagram {n}: inputs {:?}", t.inputs))?;
        for r in 0..t.rows.len() {
            let bits = t.assignment(r);
            let look = |name: &str| bits[inputs.iter().position(|i| *i == name).unwrap()];
            ensure(t.rows[r] == Truth3::from_bool(f(&look)), || format!("diagram {n}, row {r}"))?;
        }
    }
    Ok(())
}

fn random_dnf(rng: &mut ChaCha8Rng) -> Dnf {
    let vars = ["a", "b", "c", "d"];
    let disjuncts = (0..rng.gen_range(1..=3))
        .map(|_| {
            (0..rng.gen_range(1..=3))
                .map(|_| match rng.gen_range(0..10) {
                    0 => Atom::True,
                    1 => Atom::False,
                    _ => Atom::Lit(Literal::new(id(vars[rng.gen_range(0..4)]), rng.gen_bool(0.5))),
                })
                .collect()
        })
        .collect();
    Dnf::new(disjuncts)
}

fn c7() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(1000);
    let vars = ["a", "b", "c", "d"];
    for case in 0..1000 {
        let d = random_dnf(&mut rng);
        let n = negate_dnf(&d).map_err(|e| e.to_string())?;
        let nn = negate_dnf(&n).map_err(|e| e.to_string())?;
        for bits in 0..16u32 {
            let at = |x: &NodeId| vars.iter().position(|v| *v == x.as_str()).map(|k| bits >> k & 1 == 1);
            let ev = |f: &Dnf| f.eval_bool(at).map_err(|e| e.to_string());
            let (a, b, c) = (ev(&d)?, ev(&n)?, ev(&nn)?);
            ensure(b == !a && c == a, || format!("case {case}: {d} / {n} / {nn}"))?;
        }
    }
    Ok(())
}

fn concrete_names() -> Vec<String> {
    NAMES
        .iter()
        .map(|n| n.replace("<d>", "2").replace("<order>", "enumeration").replace("<cols|inf>", "3"))
        .map(|n| n.replace("<heights|inf>", "inf"))
        .collect()
}

fn window(name: &str, depth: usize, mode: WindowMode) -> Result<FiniteGraph, String> {
    let gen = by_name(name).map_err(|e| e.to_string())?;
    Ok(truncate(gen.as_ref(), depth, mode).map_err(|e| e.to_string())?.graph)
}

fn c8() -> Check {
    for name in concrete_names() {
        let g = window(&name, 6, WindowMode::Restricted)?;
        let root = by_name(&name).map_err(|e| e.to_string())?.root();
        for target in g.nodes() {
            for p in find_paths(&g, &root, target, 8) {
                let negs = p.arrows().filter(|a| a.sign == Sign::Neg).count();
                let want = if negs % 2 == 0 { Sign::Pos } else { Sign::Neg };
                ensure(path_value(&p) == want, || format!("{name}: {p:?}"))?;
            }
            let r = odd_loop_scan(&g, &root, target, ODD_LOOP_MAX_LEN);
            ensure(r.violations.is_empty(), || format!("{name}: odd loop to {target}"))?;
        }
    }
    let g = tower2();
    let ps = find_paths(&g, &id("x0"), &id("x4"), 8);
    ensure(ps.len() == 4, || format!("tower2 has {} paths", ps.len()))?;
    // lower part pairs meet at x4, the rest at x2
    let lower = [(0, 1), (2, 3)];
    for i in 0..4 {
        for j in i + 1..4 {
            let want = id(if lower.contains(&(i, j)) { "x4" } else { "x2" });
            let got = first_contradiction(&ps[i], &ps[j]);
            ensure(got.as_ref() == Some(&want), || format!("tower2 pair ({i}, {j}): {got:?}"))?;
        }
    }
    Ok(())
}

fn c9() -> Check {
    let n = find_diamonds(&window("diamond:rhombus-basic", 8, WindowMode::Remainder)?).len();
    ensure(n == 7, || format!("rhombus-basic has {n} diamonds"))?;
    for depth in 2..=8 {
        let n = find_diamonds(&window("yablo", depth, WindowMode::Restricted)?).len();
        ensure(n == 0, || format!("yablo depth {depth} has {n} diamonds"))?;
    }
    Ok(())
}

fn c10() -> Check {
    let chain: Vec<NodeId> = (0..6).map(|i| id(&format!("x:{i}"))).collect();
    let g = window("diamond:essential", 10, WindowMode::Restricted)?;
    let w = check_yablo_condition(&g, &chain, CHAIN_PATH_LEN).map_err(|(i, j)| format!("no path {i} to {j}"))?;
    ensure(w.paths.len() == 15, || format!("{} witness paths", w.paths.len()))?;
    let reduced = reduce_via_trivialization(&g, &w).map_err(|e| e.to_string())?;
    let got = chain_tables(&reduced, &chain).map_err(|e| e.to_string())?;
    // the last chain node is free in both graphs, so it has no table
    let prefix = window("yablo", chain.len() - 1, WindowMode::Restricted)?;
    let want = chain_tables(&prefix, &chain).map_err(|e| e.to_string())?;
    ensure(got == want, || format!("tables differ from the Yablo prefix: {got:?} vs {want:?}"))?;
    let direct: Vec<_> = (0..chain.len() - 1).map(|i| Some(yablo_table(&chain[i + 1..]))).collect();
    ensure(want == direct, || String::from("the Yablo prefix is not the conjunction pattern"))
}

fn golden() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn c11() -> Check {
    let reports: &[&[&str]] = &[
        &["certify", "--gen", "oa3", "--depth", "6", "--format", "json"],
        &["check", "escape", "--gen", "diamond:versuch-left", "--depth", "5", "--format", "json"],
        &["check", "sat", "--gen", "sawblade:composed:2", "--depth", "5", "--format", "json"],
        &[
            "condition-yablo",
            "--gen",
            "diamond:essential",
            "--depth",
            "10",
            "--chain",
            "x:0,x:1,x:2,x:3,x:4,x:5",
            "--format",
            "json",
        ],
    ];
    for args in reports {
        let (a, b) = (lab(args), lab(args));
        ensure(a.json != Value::Null && a.raw == b.raw, || format!("{args:?} not reproducible"))?;
    }
    let tmp = std::env::temp_dir().join(format!("acceptance-{}", std::process::id()));
    fs::create_dir_all(&tmp).map_err(|e| e.to_string())?;
    let mut dots = Vec::new();
    for k in 0..2 {
        let out = tmp.join(format!("oa1_{k}.dot"));
        lab(&["gen", "oa1", "--depth", "5", "-o", out.to_str().unwrap()]);
        dots.push(fs::read(&out).map_err(|e| e.to_string())?);
    }
    fs::remove_dir_all(&tmp).ok();
    ensure(!dots[0].is_empty() && dots[0] == dots[1], || String::from("DOT output differs between runs"))?;
    let mut count = 0;
    for entry in fs::read_dir(golden()).map_err(|e| e.to_string())? {
        let p = entry.map_err(|e| e.to_string())?.path();
        if p.extension().is_some_and(|e| e == "dsl") {
            let text = fs::read_to_string(&p).map_err(|e| e.to_string())?;
            let doc = DslDocument::parse(&text).map_err(|e| format!("{}: {e}", p.display()))?;
            ensure(doc.render() == text, || format!("{} does not round-trip", p.display()))?;
            count += 1;
        }
    }
    ensure(count >= 10, || format!("only {count} corpus files"))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("yablo remainder windows are satisfiable both ways", c1),
        ("yablo restricted windows refute the root with a small core", c2),
        ("procrastination is refutable only on the true side", c3),
        ("printed escape valuations hold", c4),
        ("certification gallery matches the expected verdicts", c5),
        ("logic diagrams compute their functions", c6),
        ("DNF negation is a semantic complement", c7),
        ("path values, Tower2 pattern, no odd loops", c8),
        ("diamond census", c9),
        ("essential chain reduces to the Yablo pattern", c10),
        ("deterministic reports and DSL round trip", c11),
    ];
    let mut red = BTreeSet::new();
    for (k, (title, check)) in criteria.iter().enumerate() {
        let n = k + 1;
        let t = Instant::now();
        match check() {
            Ok(()) => println!("PASS {n:>2} {title} ({:.2?})", t.elapsed()),
            Err(why) => {
                println!("FAIL {n:>2} {title}: {why}");
                red.insert(n);
            }
        }
    }
    let known: BTreeSet<usize> = KNOWN_RED.iter().map(|(n, _)| *n).collect();
    for (n, why) in KNOWN_RED {
        println!("known failure {n}: {why}");
    }
    if red != known {
        println!("failing criteria {red:?} differ from the known set {known:?}");
        std::process::exit(1);
    }
}
