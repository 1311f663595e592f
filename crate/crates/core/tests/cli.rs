//! The command line against direct library calls.

use num_bigint::BigInt;
use serde_json::{json, Value};

use toric_ccc::cli::{run_with, Report, Status};
use toric_ccc::fm::{fm3_region, fm_case2, fm_line_bundle_case1, fm_line_bundle_case2, poset_embedding_report};
use toric_ccc::stackyfan::{crepant_a1, discrepancy_example, p13, same_base_p12_p13, same_base_p13_p12};
use toric_ccc::thetapos::{hom_constructible, ThetaIndex};

fn data(name: &str) -> String {
    format!("{}/data/{name}.json", env!("CARGO_MANIFEST_DIR"))
}

fn ccc(args: &[&str]) -> (i32, Report) {
    let mut argv = vec!["ccc", "--format", "json-lines"];
    argv.extend_from_slice(args);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run_with(argv, &mut out, &mut err);
    let text = String::from_utf8(out).unwrap();
    assert_eq!(text.lines().count(), 1, "{text}");
    (code, Report::parse(&text).unwrap())
}

fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn ints(v: &Value) -> Vec<BigInt> {
    v.as_array().unwrap().iter().map(|x| BigInt::from(x.as_i64().unwrap())).collect()
}

#[test]
fn same_base_bundle() {
    let (code, r) = ccc(&["fm", "same-base", &data("same_base_p12_p13"), "--bundle", "3,0"]);
    assert_eq!(code, 0);
    assert_eq!(r.payload, json!({"bundle": [4, 0]}));
    let s = same_base_p12_p13();
    for c1 in -4..=4 {
        let arg = format!("{c1},-1");
        let (_, r) = ccc(&["fm", "same-base", &data("same_base_p12_p13"), "--bundle", &arg]);
        let want = fm_line_bundle_case1(&s, &big(&[c1, -1])).unwrap().unwrap();
        assert_eq!(ints(&r.payload["bundle"]), want);
    }
}

#[test]
fn same_base_theta() {
    let (_, r) = ccc(&["fm", "same-base", &data("same_base_p12_p13"), "--theta", "cone=0;t=-3"]);
    assert_eq!(r.payload["theta"], "cone=0;t=-4");
}

#[test]
fn contract_push_bundles() {
    for (name, s) in [("crepant_a1", crepant_a1()), ("discrepancy", discrepancy_example())] {
        for (a, b) in [(0, 0), (-3, 2), (5, -1)] {
            let arg = format!("{a},{b}");
            let (code, r) = ccc(&["fm", "contract-push", &data(name), "--bundle", &arg]);
            assert_eq!(code, 0);
            assert_eq!(ints(&r.payload["bundle"]), fm_line_bundle_case2(&s, &big(&[a, b])).unwrap());
        }
    }
}

#[test]
fn contract_push_theta() {
    let s = crepant_a1();
    let (_, r) = ccc(&["fm", "contract-push", &data("crepant_a1"), "--theta", "cone=0,1;t=1,2"]);
    let img = fm_case2(&s, &"cone=0,1;t=1,2".parse().unwrap()).unwrap();
    assert_eq!(r.payload["cech"].as_array().unwrap().len(), img.cech.len());
    assert_eq!(r.payload["support"], serde_json::to_value(&img.support).unwrap());
}

#[test]
fn contract_pull_region() {
    let s = crepant_a1();
    let (code, r) = ccc(&["fm", "contract-pull", &data("crepant_a1"), "--J", "0,2", "--phi", "-1,1"]);
    assert_eq!(code, 0);
    let region = fm3_region(&s, &"cone=0,2;t=-1,1".parse().unwrap()).unwrap();
    assert_eq!(r.payload["staircase"], true);
    assert_eq!(r.payload["s1"], region.s1().unwrap().to_string());
    assert_eq!(r.payload["inner"], serde_json::to_value(region.inner()).unwrap());
    assert_eq!(r.payload["outer"], serde_json::to_value(region.outer()).unwrap());
}

#[test]
fn hom_with_oracle() {
    let f = p13();
    for (a, b) in [("cone=0;t=1", "cone=0;t=2"), ("cone=0;t=2", "cone=0;t=1"), ("cone=;t=", "cone=1;t=0")] {
        let (code, r) = ccc(&["hom", &data("p13"), "--theta1", a, "--theta2", b, "--oracle"]);
        assert_eq!(code, 0);
        let want = hom_constructible(&f, &a.parse().unwrap(), &b.parse().unwrap()).unwrap();
        assert_eq!(r.payload["value"], serde_json::to_value(want.value).unwrap());
        assert_eq!(r.payload["oracle"], r.payload["value"]);
    }
}

#[test]
fn poset_embedding_both_ways() {
    let (code, r) = ccc(&["check", "poset-embedding", &data("same_base_p12_p13"), "--window", "4"]);
    assert_eq!((code, r.status), (0, Status::Ok));
    let (code, r) = ccc(&["check", "poset-embedding", &data("same_base_p13_p12"), "--window", "4"]);
    assert_eq!((code, r.status), (2, Status::CheckFailed));
    let lib = poset_embedding_report(&same_base_p13_p12(), 4).unwrap();
    assert_eq!(r.witnesses.len(), lib.violations.len());
    let w: ThetaIndex = serde_json::from_value(r.witnesses[0]["theta1"].clone()).unwrap();
    assert_eq!(w, lib.violations[0].theta1);
    assert!(poset_embedding_report(&same_base_p12_p13(), 4).unwrap().embedding);
}

#[test]
fn small_sweeps() {
    let (code, r) = ccc(&["check", "hom-oracle", &data("p1"), "--window", "2"]);
    assert_eq!(code, 0, "{:?}", r.payload);
    let (code, r) = ccc(&["check", "case3-sandwich", &data("crepant_a1"), "--window", "1", "--box", "1"]);
    assert_eq!(code, 0, "{:?}", r.payload);
    let (code, r) = ccc(&["check", "contractibility-2d", &data("crepant_a1"), "--window", "1", "--box", "4", "--step", "1/4"]);
    assert_eq!(code, 0, "{:?}", r.payload);
    assert_eq!(r.payload["step"], "1/4");
}

#[test]
fn validate_kinds() {
    for (name, kind) in [("p13", "fan"), ("same_base_p12_p13", "same-base"), ("o_minus_3", "contraction")] {
        let (code, r) = ccc(&["validate", &data(name)]);
        assert_eq!(code, 0);
        assert_eq!(r.payload["kind"], kind);
    }
}

#[test]
fn invalid_input() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"dim":1,"rays":[{"v":[2],"weight":1}],"max_cones":[[0]]}"#).unwrap();
    let (code, r) = ccc(&["validate", bad.to_str().unwrap()]);
    assert_eq!((code, r.status), (1, Status::InvalidInput));
    assert!(r.payload["error"].is_string());
    let (code, _) = ccc(&["fm", "same-base", &data("p13"), "--bundle", "1,0"]);
    assert_eq!(code, 1);
    let (code, _) = ccc(&["fm", "contract-pull", &data("discrepancy"), "--J", "0,2", "--phi", "0,0"]);
    assert_eq!(code, 1);
    let (code, _) = ccc(&["no-such-command"]);
    assert_eq!(code, 1);
}

#[test]
fn plots() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("l.svg");
    let (code, _) = ccc(&["plot", "lagrangian", &data("p13"), "-o", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    let golden = std::fs::read(format!("{}/tests/golden/p13_lagrangian.svg", env!("CARGO_MANIFEST_DIR"))).unwrap();
    assert_eq!(std::fs::read(&out).unwrap(), golden);
    for args in [
        vec!["--theta", "cone=0,1;t=0,0"],
        vec!["--J", "0,2", "--phi", "0,0"],
    ] {
        let out = dir.path().join("r.svg");
        let mut argv = vec!["plot", "region"];
        let file = data("crepant_a1");
        argv.push(&file);
        argv.extend(args);
        argv.extend(["-o", out.to_str().unwrap()]);
        let (code, r) = ccc(&argv);
        assert_eq!(code, 0, "{:?}", r.payload);
        let svg = std::fs::read_to_string(&out).unwrap();
        assert!(svg.starts_with("<svg") && svg.contains("<path"));
    }
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_ccc");
    let run = |args: &[&str]| std::process::Command::new(bin).args(args).output().unwrap();
    let ok = run(&["validate", &data("p13")]);
    assert_eq!(ok.status.code(), Some(0));
    let failed = run(&["check", "poset-embedding", &data("same_base_p13_p12")]);
    assert_eq!(failed.status.code(), Some(2));
    let r = Report::parse(&String::from_utf8(failed.stdout).unwrap()).unwrap();
    assert!(!r.witnesses.is_empty());
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["validate", "/nonexistent.json"]).status.code(), Some(1));
}
