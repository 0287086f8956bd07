use leveler_core::two_bridge::parse_entries;
use leveler_core::{
    cf_value, conway_params, directed_path, equivalent, one_one_equivalent, one_one_length_upper,
    optimize_expansion, parity, parse_one_one, recognize_torus_word, reduce_11, torus_word,
    BraidWord, CFExpansion, CfForm, EquivalenceVerdict, OneOneWord, OptimizeCaps, Position,
    Rational, SearchStats, TorusType,
};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::{CliError, Command, Outcome, RunConfig, Status};

fn input<E: std::fmt::Display>(what: &str) -> impl FnOnce(E) -> CliError + '_ {
    move |e| CliError::Input(format!("{what}: {e}"))
}

fn word(text: &str) -> Result<BraidWord, CliError> {
    text.parse()
        .map_err(input(&format!("malformed word {text:?}")))
}

fn integer(text: &str) -> Result<BigInt, CliError> {
    text.trim()
        .parse()
        .map_err(input(&format!("malformed integer {text:?}")))
}

fn rational(p: &str, q: &str) -> Result<Rational, CliError> {
    Rational::new(integer(p)?, integer(q)?).map_err(input("invalid rational"))
}

fn entries(text: &str) -> Result<Vec<BigInt>, CliError> {
    parse_entries(text).map_err(input(&format!("malformed expansion {text:?}")))
}

fn position(text: &str) -> Result<Position, CliError> {
    text.parse()
        .map_err(|_| CliError::Usage(format!("--position must be rho1 or rho2, got {text:?}")))
}

/// Exact JSON number; the `arbitrary_precision` feature keeps every digit.
fn big(x: &BigInt) -> Value {
    serde_json::from_str(&x.to_string()).expect("integers are JSON numbers")
}

fn expansion_json(e: &CFExpansion) -> Value {
    Value::Array(e.entries().iter().map(big).collect())
}

fn torus_json(t: TorusType) -> Value {
    json!({ "p": t.p(), "q": t.q() })
}

fn definite(result: Value, text: String) -> Outcome {
    Outcome {
        result,
        text,
        status: Status::Definite,
    }
}

pub(crate) fn dispatch(cmd: &Command, config: &RunConfig) -> Result<Outcome, CliError> {
    match cmd {
        Command::TorusWord { p, q } => {
            let t = TorusType::new(*p, *q).map_err(|e| CliError::Input(e.to_string()))?;
            let w = torus_word(t).map_err(|e| CliError::Input(e.to_string()))?;
            let path = directed_path(t).map_err(|e| CliError::Input(e.to_string()))?;
            let result = json!({ "p": p, "q": q, "word": w.to_string(), "path": path.vertices });
            Ok(definite(result, w.to_string()))
        }
        Command::Recognize { word: text } => {
            let w = word(text)?;
            let t = recognize_torus_word(&w);
            let result = json!({ "word": w.to_string(), "torus_type": t.map(torus_json) });
            let line = t.map_or_else(|| "not a torus word".to_string(), |t| t.to_string());
            Ok(definite(result, line))
        }
        Command::Conway { p, q } => {
            let r = rational(p, q)?;
            let e = conway_params(&r).map_err(|e| CliError::Input(e.to_string()))?;
            let result = json!({ "value": r.to_string(), "expansion": expansion_json(&e) });
            Ok(definite(result, e.to_string()))
        }
        Command::CfValue { entries: text } => {
            let es = entries(text)?;
            let e = [CfForm::AllEven, CfForm::EvenOdd, CfForm::OddEven]
                .into_iter()
                .find_map(|form| CFExpansion::new(es.clone(), form).ok())
                .ok_or_else(|| {
                    CliError::Input(format!(
                        "{text:?} is not an expansion: it needs an even number of nonzero entries, every other one even"
                    ))
                })?;
            let value = cf_value(&e).map_err(|e| CliError::Input(e.to_string()))?;
            let result = json!({
                "expansion": Value::Array(es.iter().map(big).collect()),
                "value": value.to_string(),
            });
            Ok(definite(result, value.to_string()))
        }
        Command::Describe {
            p,
            q,
            position: pos,
            expansion,
        } => {
            let r = rational(p, q)?;
            let pos = position(pos)?;
            let e = match expansion {
                Some(text) => given_expansion(&r, pos, entries(text)?)?,
                None => conway_params(&r).map_err(|e| CliError::Input(e.to_string()))?,
            };
            let w = pos.word(&e).map_err(|e| CliError::Input(e.to_string()))?;
            let bound = pos.bound(&e).map_err(|e| CliError::Input(e.to_string()))?;
            let result = json!({
                "value": r.to_string(),
                "position": position_name(pos),
                "expansion": expansion_json(&e),
                "form": e.form().name(),
                "word": w.to_string(),
                "bound": bound,
            });
            Ok(definite(result, w.to_string()))
        }
        Command::LevelBound {
            form,
            entries: text,
        } => {
            let form: CfForm = form.parse().map_err(|_| {
                CliError::Usage(format!(
                    "--form must be all-even, even-odd or odd-even, got {form:?}"
                ))
            })?;
            let e = CFExpansion::new(entries(text)?, form)
                .map_err(|e| CliError::Input(e.to_string()))?;
            let rho1 = (form != CfForm::OddEven)
                .then(|| Position::Rho1.bound(&e).expect("form admits rho1"));
            let rho2 = (form != CfForm::EvenOdd)
                .then(|| Position::Rho2.bound(&e).expect("form admits rho2"));
            let line = match (rho1, rho2) {
                (Some(a), Some(b)) => format!("rho1 {a}\nrho2 {b}"),
                (Some(a), None) => a.to_string(),
                (None, Some(b)) => b.to_string(),
                (None, None) => unreachable!("every form admits a position"),
            };
            let result = json!({
                "expansion": expansion_json(&e),
                "form": form.name(),
                "rho1": rho1,
                "rho2": rho2,
            });
            Ok(definite(result, line))
        }
        Command::Optimize {
            p,
            q,
            position: pos,
            max_entry,
            max_len,
        } => {
            let r = rational(p, q)?;
            let pos = position(pos)?;
            let caps = OptimizeCaps {
                max_entry: max_entry.as_deref().map(integer).transpose()?,
                max_len: *max_len,
            };
            let (e, bound) =
                optimize_expansion(&r, pos, &caps).map_err(|e| CliError::Input(e.to_string()))?;
            let conway = conway_params(&r).map_err(|e| CliError::Input(e.to_string()))?;
            let conway_bound = pos.bound(&conway).expect("all-even admits both positions");
            let w = pos.word(&e).map_err(|e| CliError::Input(e.to_string()))?;
            let result = json!({
                "value": r.to_string(),
                "position": position_name(pos),
                "expansion": expansion_json(&e),
                "form": e.form().name(),
                "bound": bound,
                "conway_bound": conway_bound,
                "word": w.to_string(),
            });
            let text = format!("expansion {e}\nbound {bound}\nword {w}");
            Ok(definite(result, text))
        }
        Command::Simplify { word: text } => {
            let w = word(text)?;
            let par = parity(&w);
            let reduced = reduce_11(&w);
            let result = json!({
                "word": w.to_string(),
                "letters": w.len(),
                "parity": par,
                "reduced_11": reduced.to_string(),
            });
            Ok(definite(result, w.to_string()))
        }
        Command::Equiv { w1, w2 } => {
            let (a, b) = (word(w1)?, word(w2)?);
            let v =
                equivalent(&a, &b, &config.budget()).map_err(|e| CliError::Usage(e.to_string()))?;
            Ok(verdict(v))
        }
        Command::Equiv11 { w1, w2 } => {
            let (a, b) = (word(w1)?, word(w2)?);
            let v = one_one_equivalent(&a, &b, &config.budget())
                .map_err(|e| CliError::Usage(e.to_string()))?;
            Ok(verdict(v))
        }
        Command::Parse11 { word: text } => {
            let w = word(text)?;
            let parsed = parse_one_one(&w).map_err(input("not a (1,1)-word"))?;
            let mut lines = vec![parsed.to_string(), format!("k {}", parsed.k())];
            for (j, b) in parsed.blocks().iter().enumerate() {
                lines.push(format!("block {} {} {}", j + 1, b.torus_type, b.word));
            }
            Ok(definite(one_one_json(&parsed), lines.join("\n")))
        }
        Command::OneOneLength { word: text } => {
            let w = word(text)?;
            let rep = one_one_length_upper(&w, &config.budget())
                .map_err(|e| CliError::Usage(e.to_string()))?;
            let lower = serde_json::to_value(rep.lower_status).expect("serializes");
            let mut lines = vec![
                format!("upper {}", rep.upper),
                format!("witness {}", rep.witness),
                format!("lower_status {}", lower.as_str().unwrap_or_default()),
            ];
            if let Some(t) = rep.witness.torus_type() {
                lines.push(format!("torus_type {t}"));
            }
            if let Some(remark) = rep.remark {
                lines.push(format!("remark {remark}"));
            }
            let result = json!({
                "upper": rep.upper,
                "witness": one_one_json(&rep.witness),
                "lower_status": lower,
                "remark": rep.remark,
                "stats": stats_json(&rep.stats),
                "certificate": rep.cert,
            });
            Ok(definite(result, lines.join("\n")))
        }
        Command::PaperSuite { .. } => {
            let cases = crate::suite::paper_suite(config);
            Ok(crate::suite::outcome(&cases))
        }
    }
}

fn given_expansion(r: &Rational, pos: Position, es: Vec<BigInt>) -> Result<CFExpansion, CliError> {
    let e = CFExpansion::new(es.clone(), CfForm::AllEven)
        .or_else(|_| CFExpansion::new(es, pos.form()))
        .map_err(|e| CliError::Input(e.to_string()))?;
    if !leveler_core::validate_expansion(r, &e) {
        return Err(CliError::Input(format!("{e} does not evaluate to {r}")));
    }
    Ok(e)
}

fn position_name(pos: Position) -> &'static str {
    match pos {
        Position::Rho1 => "rho1",
        Position::Rho2 => "rho2",
    }
}

fn stats_json(stats: &SearchStats) -> Value {
    serde_json::to_value(stats).expect("serializes")
}

fn one_one_json(x: &OneOneWord) -> Value {
    let blocks: Vec<Value> = x
        .blocks()
        .iter()
        .map(|b| json!({ "word": b.word.to_string(), "torus_type": torus_json(b.torus_type) }))
        .collect();
    json!({
        "display": x.to_string(),
        "word": x.flatten().to_string(),
        "k": x.k(),
        "blocks": blocks,
        "seps": x.seps(),
    })
}

fn verdict(v: EquivalenceVerdict) -> Outcome {
    match v {
        EquivalenceVerdict::Equivalent(cert) => {
            let mut lines = vec![format!("Equivalent ({} steps)", cert.steps.len())];
            if let Some(words) = cert.words() {
                for (mv, w) in cert.steps.iter().zip(words.iter().skip(1)) {
                    lines.push(format!("  {mv}: {}", BraidWord::from_letters(w)));
                }
            }
            let result = json!({
                "verdict": "equivalent",
                "steps": cert.steps.len(),
                "certificate": cert,
            });
            definite(result, lines.join("\n"))
        }
        EquivalenceVerdict::Distinct {
            invariant,
            left,
            right,
        } => {
            let result = json!({
                "verdict": "distinct",
                "invariant": invariant,
                "left": left,
                "right": right,
            });
            definite(result, format!("Distinct ({invariant} {left} vs {right})"))
        }
        EquivalenceVerdict::Unknown(stats) => {
            let why = if stats.space_exhausted {
                format!("every word up to {} letters explored", stats.max_len)
            } else {
                format!("node budget {} exhausted", stats.max_nodes)
            };
            Outcome {
                result: json!({ "verdict": "unknown", "stats": stats_json(&stats) }),
                text: format!("Unknown ({why})"),
                status: Status::Unknown,
            }
        }
    }
}
