use ggbraids::cli::{run, EXIT_CONFIG, EXIT_OK, EXIT_PROPERTY, EXIT_USAGE};

fn tmp(name: &str) -> std::path::PathBuf {
    let d = std::env::temp_dir().join(format!("ggbraids-cli-{}", std::process::id()));
    std::fs::create_dir_all(&d).unwrap();
    d.join(name)
}

fn args(list: &[&str]) -> Vec<String> {
    std::iter::once("ggbraid")
        .chain(list.iter().copied())
        .map(String::from)
        .collect()
}

#[test]
fn usage_and_config_errors() {
    assert_eq!(run(args(&[])), EXIT_USAGE);
    assert_eq!(run(args(&["frobnicate"])), EXIT_USAGE);
    assert_eq!(
        run(args(&["verify-case-table", "--epsilon", "0.9999"])),
        EXIT_CONFIG
    );
    let cfg = tmp("bad_group.json");
    std::fs::write(&cfg, r#"{"elements": ["e", "d1sq"]}"#).unwrap();
    assert_eq!(
        run(args(&["sweep", "--config", cfg.to_str().unwrap()])),
        EXIT_CONFIG
    );
    assert_eq!(run(args(&["estimate", "--samples", "10"])), EXIT_CONFIG);
}

#[test]
fn zero_class_sweep_reports_zeros() {
    let cfg = tmp("zero.json");
    std::fs::write(&cfg, r#"{"class": {"qm": null, "degree": 1, "group": "P3"}, "epsilon": [0.5, 0.2], "n_samples": 500}"#)
        .unwrap();
    let out = tmp("zero_out.json");
    let code = run(args(&[
        "sweep",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]));
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    for p in v["result"]["points"].as_array().unwrap() {
        assert_eq!(p["mean"], 0.0);
    }
    assert!(v["config"]["class"].is_object());
    assert_eq!(v["regions"].as_array().unwrap().len(), 2);
    let csv = std::fs::read_to_string(out.with_extension("csv")).unwrap();
    assert!(csv.starts_with("epsilon,type,"));
}

#[test]
fn verify_symbolic_surfaces() {
    for s in ["sphere", "torus"] {
        let out = tmp(&format!("verify_{s}.json"));
        assert_eq!(
            run(args(&[
                "verify-case-table",
                "--surface",
                s,
                "--out",
                out.to_str().unwrap()
            ])),
            EXIT_OK
        );
    }
}

#[test]
fn selftest_passes_and_mutation_fails() {
    let out = tmp("selftest.json");
    assert_eq!(
        run(args(&["selftest", "--out", out.to_str().unwrap()])),
        EXIT_OK
    );
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(!text.contains("\"passed\": false"));
    assert_eq!(
        run(args(&[
            "selftest",
            "--mutate-crossing-sign",
            "--out",
            out.to_str().unwrap()
        ])),
        EXIT_PROPERTY
    );
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let failed: Vec<&str> = v["result"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|p| p["passed"] == false)
        .map(|p| p["name"].as_str().unwrap())
        .collect();
    assert!(failed.contains(&"disc case table"), "{failed:?}");
}

#[test]
fn same_seed_same_bytes() {
    let (a, b) = (tmp("det_a.json"), tmp("det_b.json"));
    for p in [&a, &b] {
        let code = run(args(&[
            "estimate",
            "--epsilon",
            "0.3,0.2",
            "--samples",
            "1500",
            "--seed",
            "9",
            "--out",
            p.to_str().unwrap(),
        ]));
        assert_eq!(code, EXIT_OK);
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}
