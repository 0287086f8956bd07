use leveler::{run_with_env, SUITE_SCHEMA};
use serde_json::Value;

struct Run {
    code: i32,
    out: String,
    err: String,
}

fn leveler(args: &[&str]) -> Run {
    leveler_env(args, None)
}

fn leveler_env(args: &[&str], env: Option<&str>) -> Run {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("leveler").chain(args.iter().copied());
    let code = run_with_env(argv, env, &mut out, &mut err);
    Run {
        code,
        out: String::from_utf8(out).unwrap(),
        err: String::from_utf8(err).unwrap(),
    }
}

fn json_of(args: &[&str]) -> (i32, String, Value) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let run = leveler(&full);
    let doc: Value =
        serde_json::from_str(&run.out).unwrap_or_else(|e| panic!("{args:?}: {e}\n{}", run.out));
    (run.code, run.out, doc)
}

#[test]
fn exit_code_matrix() {
    let cases: &[(&[&str], i32)] = &[
        (&["torus-word", "5", "3"], 0),
        (&["torus-word", "2", "4"], 1),
        (&["torus-word", "five", "3"], 1),
        (&["recognize", "m l"], 0),
        (&["recognize", "l m"], 0),
        (&["recognize", "m x"], 1),
        (&["conway", "13", "4"], 0),
        (&["conway", "13", "0"], 1),
        (&["conway", "4", "3"], 1),
        (&["cf-value", "4,-2,2,-2"], 0),
        (&["cf-value", "4,0"], 1),
        (&["cf-value", "2,x"], 1),
        (&["describe", "13", "4", "--position", "rho1"], 0),
        (&["describe", "13", "4", "--position", "rho3"], 1),
        (
            &[
                "describe",
                "13",
                "4",
                "--position",
                "rho2",
                "--expansion",
                "3,4",
            ],
            0,
        ),
        (
            &[
                "describe",
                "13",
                "4",
                "--position",
                "rho2",
                "--expansion",
                "3,6",
            ],
            1,
        ),
        (&["level-bound", "--form", "even-odd", "6,3,-10,3,6,4"], 0),
        (&["level-bound", "--form", "all-even", "6,3"], 1),
        (&["level-bound", "--form", "wrong", "6,4"], 1),
        (&["optimize", "13", "4", "--position", "rho2"], 0),
        (&["optimize", "12", "4", "--position", "rho2"], 1),
        (&["simplify", "m m^-1 l"], 0),
        (&["simplify", "m^"], 1),
        (&["equiv", "m s^2 l", "m s^2 l"], 0),
        (&["equiv", "m", "l"], 0),
        (&["equiv", "m s m s", "1"], 0),
        (
            &["--budget-nodes", "3", "equiv", "l^-1 m l", "s^2 m s m s m"],
            2,
        ),
        (&["equiv", "m s", "q"], 1),
        (&["equiv11", "l m", "m l"], 0),
        (
            &["--budget-nodes", "2", "equiv11", "m l m l", "m^2 l^3 m^-1"],
            2,
        ),
        (&["parse11", "m^-1 s^-1 m l^-1 m^3 l^-1 m^3"], 0),
        (&["parse11", "s m"], 1),
        (&["one-one-length", "m s^2 l"], 0),
        (&["one-one-length", "m s^2 l", "--budget-nodes", "0"], 1),
        (&["one-one-length", "m s^2 l", "--workers", "0"], 1),
        (&["bogus"], 1),
        (&[], 1),
    ];
    for (args, code) in cases {
        let run = leveler(args);
        assert_eq!(
            run.code, *code,
            "{args:?}\nstdout: {}\nstderr: {}",
            run.out, run.err
        );
        if *code == 1 {
            assert!(!run.err.is_empty(), "{args:?} gave no message");
        }
    }
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(leveler(&["--help"]).code, 0);
    assert_eq!(leveler(&["--version"]).code, 0);
}

#[test]
fn text_outputs() {
    assert_eq!(
        leveler(&["describe", "13", "4", "--position", "rho1"])
            .out
            .trim(),
        "m s^-2 l^-1 s^-2 l^-2"
    );
    assert_eq!(
        leveler(&["torus-word", "5", "3"]).out.trim(),
        "m l m l^2 m l^2"
    );
    assert_eq!(
        leveler(&["recognize", "l m"]).out.trim(),
        "not a torus word"
    );
    assert_eq!(leveler(&["recognize", "m l^-1"]).out.trim(), "(-1, 1)");
    assert_eq!(leveler(&["conway", "13", "4"]).out.trim(), "[4,-2,2,-2]");
    let eq = leveler(&["equiv", "m s^2 l", "m s^2 l"]);
    assert_eq!(
        (eq.code, eq.out.lines().next()),
        (0, Some("Equivalent (0 steps)"))
    );
}

#[test]
fn json_documents_have_the_envelope_and_round_trip() {
    let invocations: &[&[&str]] = &[
        &["torus-word", "-5", "3"],
        &["recognize", "m l m l^2 m l^2"],
        &["conway", "13", "4"],
        &["cf-value", "6,3,-10,3,6,4"],
        &["describe", "13", "4", "--position", "rho2"],
        &["level-bound", "--form", "odd-even", "3,4"],
        &["optimize", "13", "4", "--position", "rho2"],
        &["simplify", "l s^2 m m l"],
        &["equiv", "l^-1 m l", "s^2 m"],
        &["equiv", "m", "l"],
        &["--budget-nodes", "3", "equiv", "l^-1 m l", "s^2 m s m s m"],
        &["equiv11", "l m", "m l"],
        &["parse11", "m l^-1 m s^-1 m^-1 l m^-1 l m^-1"],
        &["one-one-length", "m s^2 l"],
        &["conway", "4", "3"],
    ];
    for args in invocations {
        let (_, text, doc) = json_of(args);
        for key in ["command", "input", "result", "budget", "elapsed_ms"] {
            assert!(doc.get(key).is_some(), "{args:?} lacks {key}");
        }
        let again = serde_json::to_string_pretty(&doc).unwrap();
        assert_eq!(again, text.trim_end(), "{args:?}");
    }
}

#[test]
fn json_fields() {
    let (_, _, doc) = json_of(&["torus-word", "5", "3"]);
    assert_eq!(doc["result"]["word"], "m l m l^2 m l^2");
    assert_eq!(doc["result"]["path"][0], serde_json::json!([0, 0]));
    assert_eq!(doc["result"]["path"].as_array().unwrap().len(), 9);
    let (_, _, doc) = json_of(&["one-one-length", "m s^2 l"]);
    assert_eq!(doc["result"]["upper"], 1);
    assert_eq!(doc["result"]["lower_status"], "exact");
    assert_eq!(doc["result"]["witness"]["word"], "l^-1 m^-1 l^-1 m^-2");
    let (_, _, doc) = json_of(&["conway", "1000000000000000000000001", "2"]);
    let first = doc["result"]["expansion"][0].to_string();
    assert_eq!(first, "500000000000000000000000");
    let (code, _, doc) = json_of(&["conway", "4", "3"]);
    assert_eq!(code, 1);
    assert!(doc["result"]["error"].is_string());
}

#[test]
fn certificates_in_json_replay() {
    let (_, _, doc) = json_of(&["equiv", "l^-1 m l", "s^2 m"]);
    let cert: leveler_core::Certificate =
        serde_json::from_value(doc["result"]["certificate"].clone()).unwrap();
    assert!(leveler_core::replay(&cert));
    let (_, _, doc) = json_of(&["one-one-length", "m s^-2 l^-1 s^-2 l^-1"]);
    let cert: leveler_core::Certificate =
        serde_json::from_value(doc["result"]["certificate"].clone()).unwrap();
    assert!(leveler_core::replay_one_one(&cert));
}

#[test]
fn workers_do_not_change_results() {
    let invocations: &[&[&str]] = &[
        &["equiv", "l^-1 m l", "s^2 m"],
        &["equiv11", "m s^2 l", "l^-1 m^-1 l^-1 m^-2"],
        &["one-one-length", "m s^-2 l^-1 s^-2 l^-2"],
        &[
            "--budget-nodes",
            "5000",
            "one-one-length",
            "m s^-4 l^-1 s^-2 l^-1",
        ],
    ];
    for args in invocations {
        let mut one = vec!["--workers", "1"];
        one.extend_from_slice(args);
        let mut four = vec!["--workers", "4"];
        four.extend_from_slice(args);
        let (c1, _, d1) = json_of(&one);
        let (c4, _, d4) = json_of(&four);
        assert_eq!(c1, c4, "{args:?}");
        assert_eq!(d1["result"], d4["result"], "{args:?}");
    }
}

#[test]
fn budget_environment_variable() {
    let args = ["--json", "equiv", "l^-1 m l", "s^2 m s m s m"];
    let run = leveler_env(&args, Some("3"));
    assert_eq!(run.code, 2);
    let doc: Value = serde_json::from_str(&run.out).unwrap();
    assert_eq!(doc["budget"]["nodes"], 3);
    // The flag wins over the environment.
    let run = leveler_env(
        &["--budget-nodes", "7", "--json", "simplify", "m"],
        Some("3"),
    );
    let doc: Value = serde_json::from_str(&run.out).unwrap();
    assert_eq!(doc["budget"]["nodes"], 7);
    assert_eq!(leveler_env(&["simplify", "m"], Some("lots")).code, 1);
    assert_eq!(leveler_env(&["simplify", "m"], Some("0")).code, 1);
}

#[test]
fn starved_suite_reports_unknown() {
    let (code, _, doc) = json_of(&["--budget-nodes", "10", "paper-suite"]);
    assert_ne!(code, 0);
    let unknown = doc["result"]["unknown"].as_u64().unwrap();
    assert!(unknown > 0);
    assert_eq!(doc["result"]["failed"], 0);
    for case in doc["result"]["cases"].as_array().unwrap() {
        if case["status"] == "unknown" {
            let id = case["id"].as_str().unwrap();
            assert!(
                id.starts_with("equiv") || id.starts_with("one-one-length"),
                "{id}"
            );
        }
    }
}

#[test]
fn suite_document_matches_schema() {
    let schema: Value = serde_json::from_str(SUITE_SCHEMA).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    let (code, _, doc) = json_of(&["--budget-nodes", "20000", "paper-suite"]);
    assert!(code == 0 || code == 2);
    let errors: Vec<String> = validator.iter_errors(&doc).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{errors:?}");
    let printed = leveler(&["paper-suite", "--schema"]);
    assert_eq!(printed.code, 0);
    assert_eq!(serde_json::from_str::<Value>(&printed.out).unwrap(), schema);
    let mut broken = doc.clone();
    broken["result"]["cases"][0]["status"] = "maybe".into();
    assert!(!validator.is_valid(&broken));
}
