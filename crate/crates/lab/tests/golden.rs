use std::fs;
use std::path::{Path, PathBuf};

use clap::Parser;
use paradox_lab::cli::{run, Cli};
use paradox_lab::dot::export_dot;
use paradox_lab::dsl::{parse_dsl, render_graph, DslDocument};

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn files(ext: &str) -> Vec<PathBuf> {
    let mut v: Vec<PathBuf> = fs::read_dir(golden_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == ext))
        .collect();
    v.sort();
    v
}

/// Report files and the command that produced them.
const REPORTS: &[(&str, &[&str])] = &[
    ("certify_yablo_d4.json", &["certify", "--gen", "yablo", "--depth", "4", "--format", "json"]),
    ("certify_essential_d4.json", &["certify", "--gen", "diamond:essential", "--depth", "4", "--format", "json"]),
    ("certify_two_arrow_d4.json", &["certify", "--gen", "two-arrow", "--depth", "4", "--format", "json"]),
    (
        "sat_yablo_restricted_d4.json",
        &[
            "check",
            "sat",
            "--gen",
            "yablo",
            "--depth",
            "4",
            "--mode",
            "restricted",
            "--clamp",
            "x:0=T",
            "--format",
            "json",
        ],
    ),
    ("rule_oa2_d6.json", &["check", "rule", "--gen", "oa2", "--rule", "oa2-rows", "--depth", "6", "--format", "json"]),
    ("escape_raw_d3.json", &["check", "escape", "--gen", "sawblade:raw", "--depth", "3", "--format", "json"]),
    (
        "condition_essential.json",
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
    ),
];

pub fn run_args(args: &[&str]) -> String {
    let mut v = vec!["paradox-lab"];
    v.extend_from_slice(args);
    run(Cli::try_parse_from(v).unwrap()).unwrap().stdout
}

#[test]
fn dsl_corpus_round_trips() {
    let dsl = files("dsl");
    assert!(dsl.len() >= 10);
    for p in dsl {
        let text = fs::read_to_string(&p).unwrap();
        let doc = DslDocument::parse(&text).unwrap();
        assert_eq!(doc.render(), text, "{}", p.display());
        assert_eq!(DslDocument::parse(&doc.render()).unwrap(), doc);
        let (g, clamps) = parse_dsl(&text).unwrap();
        let again = render_graph(&g, &clamps);
        let (g2, c2) = parse_dsl(&again).unwrap();
        assert_eq!((g, clamps), (g2, c2), "{}", p.display());
    }
}

#[test]
fn dot_matches_golden() {
    for p in files("dsl") {
        let (g, _) = parse_dsl(&fs::read_to_string(&p).unwrap()).unwrap();
        let want = fs::read_to_string(p.with_extension("dot")).unwrap();
        assert_eq!(export_dot(&g), want, "{}", p.display());
    }
}

#[test]
fn reports_match_golden() {
    for (file, args) in REPORTS {
        let want = fs::read_to_string(golden_dir().join(file)).unwrap();
        let first = run_args(args);
        assert_eq!(first, want, "{file}");
        assert_eq!(run_args(args), first, "{file} not deterministic");
    }
}

#[test]
fn diamonds_report() {
    let p = golden_dir().join("rhombus_basic.dsl");
    let out = run_args(&["diamonds", p.to_str().unwrap(), "--format", "json"]);
    assert_eq!(out, fs::read_to_string(golden_dir().join("diamonds_rhombus.json")).unwrap());
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["count"], 7);
}
