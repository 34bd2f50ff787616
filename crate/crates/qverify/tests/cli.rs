use qseries::identities::{find, sample_domain, verify, Status, DEFAULT_Q_RANGE};
use qverify::config::{parse_q_seq, parse_tol_override};
use qverify::*;
use std::process::Command;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_qverify"));
    c.env_remove("QVERIFY_PRECISION");
    c
}

fn code(c: &mut Command) -> i32 {
    c.output().unwrap().status.code().unwrap()
}

#[test]
fn list_is_sorted_and_complete() {
    let out = cmd_list();
    let ids: Vec<&str> = out.lines().map(|l| l.split('\t').next().unwrap()).collect();
    assert!(ids.len() >= 30);
    assert!(ids.contains(&"ismail-masson-3.13"));
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
    assert!(out.lines().all(|l| l.split('\t').count() == 3));

    let o = bin().arg("list").output().unwrap();
    assert!(o.status.success());
    assert_eq!(String::from_utf8(o.stdout).unwrap(), out);
}

#[test]
fn config_validation() {
    assert!(RunConfig::default().validate().is_ok());
    let bad = [
        RunConfig { q_range: [0.04, 0.9], ..RunConfig::default() },
        RunConfig { q_range: [0.1, 0.96], ..RunConfig::default() },
        RunConfig { q_range: [0.5, 0.5], ..RunConfig::default() },
        RunConfig { samples: 0, ..RunConfig::default() },
        RunConfig { identities: vec!["nope".into()], ..RunConfig::default() },
        RunConfig { identities: vec![], ..RunConfig::default() },
        RunConfig { precision: "quad".into(), ..RunConfig::default() },
        RunConfig { weight: Some("square".into()), ..RunConfig::default() },
        RunConfig { workers: Some(0), ..RunConfig::default() },
        RunConfig { tol_overrides: [("qgauss-1.17".to_string(), -1.0)].into(), ..RunConfig::default() },
        RunConfig { tol_overrides: [("nope".to_string(), 1e-3)].into(), ..RunConfig::default() },
    ];
    for cfg in bad {
        let e = cfg.validate().unwrap_err();
        assert_eq!(e.exit_code(), EXIT_USAGE, "{cfg:?}");
    }
    assert!(RunConfig { precision: "F64".into(), ..RunConfig::default() }.validate().is_ok());
}

#[test]
fn selection_follows_registry_order() {
    let cfg = RunConfig { identities: vec!["qgauss-1.17".into(), "euler-beta-limit".into(), "qgauss-1.17".into()], ..RunConfig::default() };
    assert_eq!(cfg.selected().unwrap(), ["euler-beta-limit", "qgauss-1.17"]);
    assert_eq!(RunConfig::default().selected().unwrap().len(), 30);
}

#[test]
fn flag_parsers() {
    assert_eq!(parse_tol_override("qgauss-1.17=1e-6").unwrap(), ("qgauss-1.17".to_string(), 1e-6));
    assert!(parse_tol_override("qgauss-1.17").is_err());
    assert!(parse_tol_override("x=abc").is_err());
    assert_eq!(parse_q_seq("0.9, 0.99,0.999").unwrap(), vec![0.9, 0.99, 0.999]);
    assert!(parse_q_seq("0.9,x").is_err());
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(bin().args(["run", "--identity", "no-such-id"])), 2);
    assert_eq!(code(bin().args(["run", "--q-lo", "0.01"])), 2);
    assert_eq!(code(bin().args(["run", "--samples", "0"])), 2);
    assert_eq!(code(bin().args(["run", "--tol-override", "broken"])), 2);
    assert_eq!(code(bin().args(["frobnicate"])), 2);
    assert_eq!(code(bin().args(["limits", "--q-seq", "0.99,0.9"])), 2);
    assert_eq!(code(bin().args(["limits", "--q-seq", "0.9,1.2"])), 2);
    assert_eq!(code(bin().args(["run", "--identity", "qgauss-1.17", "--samples", "2"]).env("QVERIFY_PRECISION", "quad")), 2);
}

#[test]
fn precision_env_accepts_double() {
    let o = bin()
        .args(["run", "--identity", "qgauss-1.17", "--samples", "3"])
        .env("QVERIFY_PRECISION", "f64")
        .output()
        .unwrap();
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn run_writes_reports_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let run = |tag: &str, workers: &str| {
        let csv = dir.path().join(format!("{tag}.csv"));
        let json = dir.path().join(format!("{tag}.json"));
        let o = bin()
            .args(["run", "--identity", "ramanujan-1psi1-1.16,askey-roy-1.7", "--samples", "5", "--seed", "11"])
            .args(["--workers", workers, "--csv", csv.to_str().unwrap(), "--report", json.to_str().unwrap()])
            .output()
            .unwrap();
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stdout));
        (std::fs::read(csv).unwrap(), std::fs::read_to_string(json).unwrap())
    };
    let (csv1, json1) = run("a", "1");
    let (csv2, json2) = run("b", "2");
    assert_eq!(csv1, csv2);
    assert_eq!(json1, json2);

    let text = String::from_utf8(csv1).unwrap();
    assert_eq!(text.lines().count(), 11);
    assert!(text.starts_with("identity,index,status,q,"));

    let v: serde_json::Value = serde_json::from_str(&json1).unwrap();
    assert_eq!(v["seed"], 11);
    let blocks = v["identities"].as_array().unwrap();
    assert_eq!(blocks.len(), 2);
    let r = &blocks[0]["reports"][0];
    for k in ["identity", "anchor", "point", "lhs", "rhs", "abs_err", "rel_err", "status", "receipts"] {
        assert!(r.get(k).is_some(), "{k}");
    }
    assert!(r["lhs"]["re"].is_f64() && r["lhs"]["im"].is_f64());
}

#[test]
fn config_file_with_flag_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cfg.json");
    std::fs::write(&path, r#"{"identities": ["qgauss-1.17"], "samples": 4, "seed": 3, "q_range": [0.2, 0.6]}"#).unwrap();
    let mut cfg = RunConfig::from_file(&path).unwrap();
    assert_eq!(cfg.samples, 4);
    assert_eq!(cfg.q_range, [0.2, 0.6]);
    cfg.samples = 2;
    let report = cmd_run(&cfg).unwrap();
    assert_eq!(report.identities[0].reports.len(), 2);
    assert!(report.identities[0].reports.iter().all(|r| (0.2..0.6).contains(&r.point.q)));

    let csv = dir.path().join("out.csv");
    let o = bin()
        .args(["run", "--config", path.to_str().unwrap(), "--samples", "3", "--csv", csv.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(o.status.success());
    assert_eq!(std::fs::read_to_string(csv).unwrap().lines().count(), 4);

    std::fs::write(&path, r#"{"identities": ["qgauss-1.17"], "sample": 4}"#).unwrap();
    assert_eq!(RunConfig::from_file(&path).unwrap_err().exit_code(), EXIT_USAGE);
    assert_eq!(code(bin().args(["run", "--config", path.to_str().unwrap()])), 2);
}

#[test]
fn tolerance_override_reaches_the_reports() {
    let cfg = RunConfig {
        identities: vec!["qgauss-1.17".into()],
        samples: 3,
        tol_overrides: [("qgauss-1.17".to_string(), 1e-5)].into(),
        ..RunConfig::default()
    };
    let report = cmd_run(&cfg).unwrap();
    assert!(report.identities[0].reports.iter().all(|r| r.tolerance == 1e-5));
    assert_eq!(report.identities[0].tolerance, 1e-5);
}

#[test]
fn weight_applies_only_to_matching_slots() {
    let cfg = RunConfig {
        identities: vec!["master-fold-2.5".into(), "antiperiodic-4.4".into(), "qgauss-1.17".into()],
        samples: 2,
        weight: Some("cosine".into()),
        ..RunConfig::default()
    };
    let report = cmd_run(&cfg).unwrap();
    let w: Vec<(&str, Option<&str>)> =
        report.identities.iter().map(|b| (b.identity.as_str(), b.reports[0].weight.as_deref())).collect();
    assert_eq!(w, [("qgauss-1.17", None), ("master-fold-2.5", Some("cosine")), ("antiperiodic-4.4", Some("sine"))]);
    assert_eq!(run_exit_code(&report), EXIT_PASS);
}

#[test]
fn exit_status_ignores_rejections_but_not_failures() {
    let rec = find("qgauss-1.17").unwrap();
    let p = &sample_domain(rec, 1, 1, DEFAULT_Q_RANGE).unwrap()[0];
    let cfg = RunConfig { identities: vec!["qgauss-1.17".into()], samples: 1, ..RunConfig::default() };
    let mut report = cmd_run(&cfg).unwrap();
    assert_eq!(run_exit_code(&report), EXIT_PASS);

    let mut rejected = verify(rec, p, None, rec.tolerance);
    rejected.status = Status::RejectedConditioning;
    report.identities[0].reports.push(rejected);
    assert_eq!(run_exit_code(&report), EXIT_PASS);

    let mut failed = verify(rec, p, None, rec.tolerance);
    failed.status = Status::Fail;
    report.identities[0].reports.push(failed);
    assert_eq!(run_exit_code(&report), EXIT_FAIL);
}

#[test]
fn limits_command() {
    let reports = cmd_limits(&[0.9, 0.99, 0.999]).unwrap();
    assert_eq!(reports.len(), 5);
    assert!(reports.iter().all(|r| r.monotone == Some(true)));
    assert_eq!(limits_exit_code(&reports), EXIT_PASS);
    assert!(format_limits(&reports).contains("monotone"));

    let single = cmd_limits(&[0.95]).unwrap();
    assert!(single.iter().all(|r| r.monotone.is_none()));
    assert_eq!(limits_exit_code(&single), EXIT_PASS);

    assert_eq!(cmd_limits(&[0.99, 0.9]).unwrap_err().exit_code(), EXIT_USAGE);

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("limits.json");
    let o = bin().args(["limits", "--report", path.to_str().unwrap()]).output().unwrap();
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 5);
}
