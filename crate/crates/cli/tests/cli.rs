use std::process::{Command, Output};

use proptest::prelude::*;
use virmod::text::{parse_descriptor, parse_element, parse_scalar, render_descriptor, render_element, render_scalar};
use virmod_core::{Rational, Scalar};

fn virmod(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_virmod"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const VERMA_L: &str = "L(vac(r=0;1); lambda=2; a=0; b=0)";

#[test]
fn act_prints_the_image() {
    let o = virmod(&["act", "--module", VERMA_L, "--element", "|vac> (x) t^0", "-k", "1"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("t^1"), "{out}");
    assert!(out.contains("d(-1)|vac>"), "{out}");
}

#[test]
fn out_of_range_generator_exits_2() {
    let o = virmod(&["act", "--module", VERMA_L, "--element", "d(1)|vac> (x) t^0", "-k", "0"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("index 1 not a PBW generator"), "{err}");
}

#[test]
fn bad_descriptor_exits_2() {
    let o = virmod(&["axioms", "--module", "L(vac(r=0;1); lambda=2)"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn unknown_check_exits_2() {
    let o = virmod(&["report", "--check", "no-such-check"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn report_list_names_every_check() {
    let o = virmod(&["report", "--list"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 12);
}

#[test]
fn json_file_gets_one_record_per_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.jsonl");
    let o = virmod(&["report", "--check", "extraction", "--json", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 100);
    for l in lines {
        let v: serde_json::Value = serde_json::from_str(l).unwrap();
        assert_eq!(v["check"], "extraction");
        assert_eq!(v["status"], "pass");
        assert!(v.get("elapsed").is_none());
    }
}

#[test]
fn same_seed_same_bytes() {
    let args = [
        "report",
        "--check",
        "extraction",
        "--check",
        "simplicity-evidence",
        "--seed",
        "11",
    ];
    let a = virmod(&args);
    let b = virmod(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let c = virmod(&["report", "--check", "extraction", "--seed", "12"]);
    assert_ne!(stdout(&a).lines().next(), stdout(&c).lines().next());
}

#[test]
fn timings_add_elapsed() {
    let o = virmod(&["report", "--check", "bracket-laws", "--timings"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert!(v["elapsed"].as_f64().is_some());
}

#[test]
fn classify_e_reports_a_case() {
    let o = virmod(&["classify-e", "--module", "E(lambda=2; b=1/3; gamma=-2; p=1/2)"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["case"].is_string());
}

#[test]
fn scan_of_a_trapped_generator_is_not_full() {
    let o = virmod(&[
        "scan",
        "--module",
        "L(vac(r=0;1); lambda=1; a=0; b=0)",
        "--element",
        "|vac> (x) t^0",
    ]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["witness"]["full"], false);
    assert!(v["witness"]["dims"]
        .as_array()
        .unwrap()
        .iter()
        .all(|d| d[1].as_u64().unwrap() <= 1));
}

#[test]
fn dual_pair_is_isomorphic() {
    let o = virmod(&[
        "iso",
        "--module",
        "L(vac(r=0;1); lambda=2; a=1/3; b=2)",
        "--other",
        "L(vac(r=0;1); lambda=1/2; a=1/3; b=2)",
    ]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["status"], "pass");
}

fn small() -> impl Strategy<Value = Scalar> {
    (-9i64..=9, 1i64..=6, -9i64..=9, 1i64..=6, any::<bool>()).prop_map(|(p, q, r, t, real)| {
        let im = if real { Rational::ZERO } else { Rational::new(r, t) };
        Scalar::new(Rational::new(p, q), im)
    })
}

proptest! {
    #[test]
    fn scalars_round_trip(c in small()) {
        prop_assert_eq!(parse_scalar(&render_scalar(&c)).unwrap(), c);
    }

    #[test]
    fn elements_round_trip(
        terms in proptest::collection::vec((0u32..3, 0u32..3, -4i64..=4, small()), 1..4)
    ) {
        let text = terms
            .iter()
            .map(|(i, j, n, c)| format!("({})*d(-1)^{i}*d(0)^{j}|vac> (x) t^{n}", render_scalar(c)))
            .collect::<Vec<_>>()
            .join(" + ");
        let parsed = parse_element(&text, Some(1)).unwrap();
        let again = parse_element(&render_element(&parsed), Some(1)).unwrap();
        prop_assert_eq!(again, parsed);
    }

    #[test]
    fn descriptors_round_trip(lam in small(), a in small(), b in small(), m1 in small(), m2 in small()) {
        let text = format!(
            "L(vac(r=1;{},{}); lambda={}; a={}; b={})",
            render_scalar(&m1), render_scalar(&m2), render_scalar(&lam), render_scalar(&a), render_scalar(&b)
        );
        match parse_descriptor(&text) {
            Ok(d) => prop_assert_eq!(parse_descriptor(&render_descriptor(&d)).unwrap(), d),
            Err(_) => prop_assert!(lam.is_zero()),
        }
    }
}
