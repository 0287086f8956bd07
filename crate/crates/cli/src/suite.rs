//! Regression suite over the published worked examples.

use std::time::Instant;

use leveler_core::{
    conway_params, equivalent, level_bound_rho1, one_one_length_upper, parse_one_one, replay,
    rho1_word, rho2_word, torus_word, BraidWord, Budget, CFExpansion, CfForm, EquivalenceVerdict,
    Rational, TorusType,
};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::{Outcome, RunConfig, Status};

/// JSON schema of the `paper-suite --json` document.
pub const SUITE_SCHEMA: &str = include_str!("../schema/paper-suite.schema.json");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SuiteStatus {
    Pass,
    Fail,
    /// A budgeted search stopped before reaching the expected answer.
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteResult {
    pub id: String,
    pub expected: String,
    pub actual: String,
    pub status: SuiteStatus,
    pub wall_ms: f64,
}

struct Actual {
    text: String,
    /// The answer came from a search that ran out of budget.
    budget_limited: bool,
}

impl Actual {
    fn exact(text: impl Into<String>) -> Self {
        Actual {
            text: text.into(),
            budget_limited: false,
        }
    }
}

fn case(id: &str, expected: &str, f: impl FnOnce() -> Actual) -> SuiteResult {
    let started = Instant::now();
    let actual = f();
    let wall_ms = (started.elapsed().as_secs_f64() * 1e6).round() / 1e3;
    let status = if actual.text == expected {
        SuiteStatus::Pass
    } else if actual.budget_limited {
        SuiteStatus::Unknown
    } else {
        SuiteStatus::Fail
    };
    SuiteResult {
        id: id.to_string(),
        expected: expected.to_string(),
        actual: actual.text,
        status,
        wall_ms,
    }
}

fn w(text: &str) -> BraidWord {
    text.parse().expect("suite words parse")
}

fn expansion(entries: &[i64]) -> CFExpansion {
    let form = if entries.iter().all(|e| e % 2 == 0) {
        CfForm::AllEven
    } else {
        CfForm::EvenOdd
    };
    CFExpansion::from_i64(entries, form).expect("suite expansions are valid")
}

fn show<T: ToString, E: std::fmt::Display>(r: Result<T, E>) -> String {
    match r {
        Ok(x) => x.to_string(),
        Err(e) => format!("error: {e}"),
    }
}

fn length_case(
    id: &str,
    expected: &str,
    word: &str,
    budget: &Budget,
    fmt: fn(usize, String) -> String,
) -> SuiteResult {
    case(id, expected, || {
        match one_one_length_upper(&w(word), budget) {
            Ok(rep) => {
                let detail = match rep.witness.torus_type() {
                    Some(t) => format!("{t}|{}", rep.witness.flatten()),
                    None => rep.witness.to_string(),
                };
                Actual {
                    text: fmt(rep.upper, detail),
                    budget_limited: rep.stats.discovered >= rep.stats.max_nodes,
                }
            }
            Err(e) => Actual::exact(format!("error: {e}")),
        }
    })
}

/// Runs every golden case with the budget of `config`.
pub fn paper_suite(config: &RunConfig) -> Vec<SuiteResult> {
    let budget = config.budget();
    let mut out = Vec::new();

    let torus = [
        ((5, 3), "m l m l^2 m l^2"),
        ((-5, 3), "m l^-2 m l^-2 m l^-1"),
        ((-5, -3), "l^-2 m^-1 l^-2 m^-1 l^-1 m^-1"),
        ((5, -3), "l m^-1 l^2 m^-1 l^2 m^-1"),
        ((1, 0), "l"),
        ((-1, 0), "l^-1"),
        ((0, 1), "m"),
        ((0, -1), "m^-1"),
    ];
    for ((p, q), expected) in torus {
        out.push(case(&format!("torus-word {p} {q}"), expected, || {
            Actual::exact(show(TorusType::new(p, q).map(|t| show(torus_word(t)))))
        }));
    }

    out.push(case("conway 13/4", "[4,-2,2,-2]", || {
        Actual::exact(show(Rational::new(13, 4).and_then(|r| conway_params(&r))))
    }));

    type Describe = fn(&CFExpansion) -> Result<BraidWord, leveler_core::CfError>;
    let descriptions: [(&str, Describe, &[i64], &str); 3] = [
        ("rho1", rho1_word, &[-2, 2], "m s^2 l"),
        ("rho1", rho1_word, &[4, -2, 2, -2], "m s^-2 l^-1 s^-2 l^-2"),
        ("rho2", rho2_word, &[4, -2, 2, -2], "m s^-4 l^-1 s^-2 l^-1"),
    ];
    for (name, f, entries, expected) in descriptions {
        let e = expansion(entries);
        out.push(case(&format!("describe {name} {e}"), expected, || {
            Actual::exact(show(f(&e)))
        }));
    }

    let bounds: [(&[i64], &str); 3] = [
        (&[6, 2, 2, -2, 2, -2, 2, -2, 2, -2, 2, 2, 6, 4], "9"),
        (&[6, 3, -10, 3, 6, 4], "6"),
        (&[4, -2, 2, -2], "3"),
    ];
    for (entries, expected) in bounds {
        let e = expansion(entries);
        out.push(case(&format!("level-bound rho1 {e}"), expected, || {
            Actual::exact(show(level_bound_rho1(&e)))
        }));
    }

    for rel in ["m s m s", "l s l s", "l^-1 m l m^-1 s^-2"] {
        out.push(case(
            &format!("equiv {rel} = 1"),
            "equivalent, certificate replays",
            || match equivalent(&w(rel), &BraidWord::identity(), &budget) {
                Ok(EquivalenceVerdict::Equivalent(cert)) if replay(&cert) => {
                    Actual::exact("equivalent, certificate replays")
                }
                Ok(EquivalenceVerdict::Equivalent(_)) => {
                    Actual::exact("equivalent, certificate fails replay")
                }
                Ok(EquivalenceVerdict::Distinct { .. }) => Actual::exact("distinct"),
                Ok(EquivalenceVerdict::Unknown(_)) => Actual {
                    text: "unknown".into(),
                    budget_limited: true,
                },
                Err(e) => Actual::exact(format!("error: {e}")),
            },
        ));
    }

    out.push(length_case(
        "one-one-length m s^2 l",
        "upper 1, witness l^-1 m^-1 l^-1 m^-2",
        "m s^2 l",
        &budget,
        |upper, detail| match detail.split_once('|') {
            Some((_, word)) => format!("upper {upper}, witness {word}"),
            None => format!("upper {upper}, witness {detail}"),
        },
    ));
    out.push(length_case(
        "one-one-length m s^-4 l^-1 s^-2 l^-1",
        "upper <= 2",
        "m s^-4 l^-1 s^-2 l^-1",
        &budget,
        |upper, _| {
            if upper <= 2 {
                "upper <= 2".to_string()
            } else {
                format!("upper {upper}")
            }
        },
    ));
    for (n, expected) in [
        (1, "upper 1, type (3, -2)"),
        (2, "upper 1, type (5, -2)"),
        (3, "upper 1, type (7, -2)"),
    ] {
        let word = format!("m{}", " s^-2 l^-1".repeat(n));
        out.push(length_case(
            &format!("one-one-length {word}"),
            expected,
            &word,
            &budget,
            |upper, detail| match detail.split_once('|') {
                Some((t, _)) => format!("upper {upper}, type {t}"),
                None => format!("upper {upper}"),
            },
        ));
    }

    let pretzels = [
        (
            "m^-1 s^-1 m l^-1 m^3 l^-1 m^3",
            "k 2, types (0, -1) (-2, 7)",
        ),
        (
            "m l^-1 m s^-1 m^-1 l m^-1 l m^-1",
            "k 2, types (-1, 2) (2, -3)",
        ),
    ];
    for (word, expected) in pretzels {
        out.push(case(&format!("parse11 {word}"), expected, || {
            Actual::exact(match parse_one_one(&w(word)) {
                Ok(x) => {
                    let types: Vec<String> = x
                        .blocks()
                        .iter()
                        .map(|b| b.torus_type.to_string())
                        .collect();
                    format!("k {}, types {}", x.k(), types.join(" "))
                }
                Err(e) => format!("error: {e}"),
            })
        }));
    }
    out
}

pub(crate) fn outcome(cases: &[SuiteResult]) -> Outcome {
    let count = |s: SuiteStatus| cases.iter().filter(|c| c.status == s).count();
    let (passed, failed, unknown) = (
        count(SuiteStatus::Pass),
        count(SuiteStatus::Fail),
        count(SuiteStatus::Unknown),
    );
    let mut lines: Vec<String> = cases
        .iter()
        .map(|c| {
            let tag = match c.status {
                SuiteStatus::Pass => "PASS",
                SuiteStatus::Fail => "FAIL",
                SuiteStatus::Unknown => "UNKNOWN",
            };
            let mut line = format!("{tag:<8}{:<56}{:>10.1} ms", c.id, c.wall_ms);
            if c.status != SuiteStatus::Pass {
                line += &format!(
                    "\n        expected: {}\n        actual:   {}",
                    c.expected, c.actual
                );
            }
            line
        })
        .collect();
    lines.push(format!(
        "{passed} passed, {failed} failed, {unknown} unknown"
    ));
    let status = if failed > 0 {
        Status::Failed
    } else if unknown > 0 {
        Status::Unknown
    } else {
        Status::Definite
    };
    Outcome {
        result: json!({ "cases": cases, "passed": passed, "failed": failed, "unknown": unknown }),
        text: lines.join("\n"),
        status,
    }
}
