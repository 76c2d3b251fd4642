use peircelab::harness::{
    default_suite, lookup, parse_config, registered_properties, run_suite, run_trial, trial_seed,
    ModelKind, PropertySpec,
};
use peircelab::Error;

fn spec(name: &str, trials: usize, seed: u64) -> PropertySpec {
    PropertySpec {
        name: name.to_owned(),
        dims: vec![2, 3],
        trials,
        tol: 1e-9,
        seed,
        models: None,
    }
}

#[test]
fn identical_configs_give_identical_json() {
    let config = vec![
        spec("fundamental-identity", 20, 42),
        spec("peirce-rules", 10, 42),
    ];
    let a = run_suite(&config).unwrap().to_json();
    let b = run_suite(&config).unwrap().to_json();
    assert_eq!(a, b);
    assert!(!a.contains("time"));
}

#[test]
fn seeds_change_the_inputs() {
    let p = lookup("ternary-identity").unwrap();
    let s1 = trial_seed(1, p.name, ModelKind::Rect, 3, 0);
    let s2 = trial_seed(2, p.name, ModelKind::Rect, 3, 0);
    assert_ne!(s1, s2);
    let o1 = run_trial(p, ModelKind::Rect, 3, 0, s1, 1e-9);
    let o2 = run_trial(p, ModelKind::Rect, 3, 0, s2, 1e-9);
    assert_ne!(o1.input_hash, o2.input_hash);
}

#[test]
fn a_trial_replays_from_its_sub_seed() {
    let p = lookup("wor-witness").unwrap();
    let seed = trial_seed(9, p.name, ModelKind::Cstar, 3, 17);
    let a = run_trial(p, ModelKind::Cstar, 3, 17, seed, 1e-9);
    let b = run_trial(p, ModelKind::Cstar, 3, 17, seed, 1e-9);
    assert_eq!(a.input_hash, b.input_hash);
    assert_eq!(format!("{:?}", a.result), format!("{:?}", b.result));
}

#[test]
fn impossible_tolerance_reports_a_replayable_failure() {
    let mut s = spec("triple-product-linearity", 5, 3);
    s.tol = 0.0;
    s.models = Some(vec![ModelKind::Cstar]);
    let report = run_suite(&[s]).unwrap();
    let p = &report.properties[0];
    // some trial carries rounding error, and zero tolerance rejects it
    assert!(!report.pass && p.failures > 0);
    let f = p.first_failure.as_ref().unwrap();
    let replay = run_trial(
        lookup(&p.name).unwrap(),
        f.model,
        f.dim,
        f.trial,
        f.sub_seed,
        0.0,
    );
    assert_eq!(format!("{:016x}", replay.input_hash), f.input_hash);
}

#[test]
fn report_json_shape() {
    let report = run_suite(&[spec("svd-reconstruction", 3, 1)]).unwrap();
    let v: serde_json::Value = serde_json::from_str(&report.to_json()).unwrap();
    assert_eq!(v["pass"], true);
    let p = &v["properties"][0];
    for key in [
        "name",
        "anchor",
        "models",
        "dims",
        "trials",
        "failures",
        "worst_residual",
        "tol",
        "seed",
    ] {
        assert!(p.get(key).is_some(), "missing {key}");
    }
    assert_eq!(p["trials"], 3 * 2 * 3);
    assert_eq!(v["environment"]["rng"], "chacha8");
}

#[test]
fn config_errors() {
    let bad = r#"[{"name":"nope","dims":[2],"trials":1,"tol":1e-9,"seed":1}]"#;
    assert!(matches!(parse_config(bad), Err(Error::UnknownProperty(_))));
    let extra = r#"[{"name":"peirce-rules","dims":[2],"trials":1,"tol":1e-9,"seed":1,"x":0}]"#;
    assert!(parse_config(extra).is_err());
    let ok = r#"[{"name":"peirce-rules","dims":[2],"trials":1,"tol":1e-9,"seed":1,"models":["jbstar"]}]"#;
    assert_eq!(
        parse_config(ok).unwrap()[0].models,
        Some(vec![ModelKind::Jbstar])
    );
}

#[test]
fn default_suite_covers_the_registry() {
    let suite = default_suite(5);
    assert_eq!(suite.len(), registered_properties().len());
    assert!(suite.iter().all(|s| s.dims == [2, 3, 4] && s.seed == 5));
}
