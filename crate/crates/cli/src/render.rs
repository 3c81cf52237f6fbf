use clap::ValueEnum;
use omql_core::demo::cell_text;
use omql_core::reconstruct::ReconstructionResult;
use omql_core::verify::{Coverage, LawReport, Status, Theorem14Report, Witness};
use omql_core::{OmpPoset, SetValuation, Subset, TimeFrame, ValidationReport};
use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Tsv,
    Json,
}

pub fn names(poset: &OmpPoset, s: &Subset) -> Vec<String> {
    poset.subset_names(s)
}

fn json_pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

pub fn subset(poset: &OmpPoset, s: &Subset, format: Format) -> String {
    let n = names(poset, s);
    match format {
        Format::Json => json_pretty(&json!(n)),
        _ => format!("{}\n", cell_text(&n)),
    }
}

/// A time-indexed table with one column per labelled set-valuation.
pub fn time_table(
    poset: &OmpPoset,
    frame: &TimeFrame,
    columns: &[(String, &SetValuation)],
    format: Format,
) -> String {
    match format {
        Format::Json => {
            let cols: Vec<Value> = columns
                .iter()
                .map(|(label, x)| {
                    let values: Vec<Value> = frame
                        .names()
                        .iter()
                        .zip(x.values())
                        .map(|(t, s)| json!({"time": t, "value": names(poset, s)}))
                        .collect();
                    json!({"expr": label, "values": values})
                })
                .collect();
            json_pretty(&Value::Array(cols))
        }
        Format::Tsv | Format::Table => {
            let sep = if format == Format::Tsv { "\t" } else { "  " };
            let mut rows = vec![std::iter::once("t".to_string())
                .chain(columns.iter().map(|(l, _)| l.clone()))
                .collect::<Vec<_>>()];
            for (t, name) in frame.names().iter().enumerate() {
                rows.push(
                    std::iter::once(name.clone())
                        .chain(
                            columns
                                .iter()
                                .map(|(_, x)| cell_text(&names(poset, x.at(t)))),
                        )
                        .collect(),
                );
            }
            align(&rows, sep, format == Format::Table)
        }
    }
}

fn align(rows: &[Vec<String>], sep: &str, pad: bool) -> String {
    let widths: Vec<usize> = (0..rows[0].len())
        .map(|c| rows.iter().map(|r| r[c].chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for r in rows {
        let cells: Vec<String> = r
            .iter()
            .zip(&widths)
            .map(|(s, &w)| {
                if pad {
                    format!("{s}{}", " ".repeat(w - s.chars().count()))
                } else {
                    s.clone()
                }
            })
            .collect();
        out.push_str(cells.join(sep).trim_end());
        out.push('\n');
    }
    out
}

fn status_str(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "fail",
        Status::Vacuous => "vacuous",
    }
}

fn coverage_json(c: &Coverage) -> Value {
    match c {
        Coverage::Exhaustive { count } => json!({"kind": "exhaustive", "count": count}),
        Coverage::Sampled { count, seed } => {
            json!({"kind": "sampled", "count": count, "seed": seed})
        }
        Coverage::Instance => json!({"kind": "instance"}),
    }
}

fn witness_json(w: &Option<Witness>) -> Value {
    match w {
        None => Value::Null,
        Some(w) => {
            let bindings: serde_json::Map<String, Value> = w
                .bindings
                .iter()
                .map(|(k, v)| (k.clone(), json!(v)))
                .collect();
            json!({"bindings": bindings, "time": w.time, "detail": w.detail})
        }
    }
}

pub fn report_json(r: &LawReport) -> Value {
    json!({
        "law": r.law,
        "universe": r.universe,
        "coverage": coverage_json(&r.coverage),
        "status": status_str(r.status),
        "verdict": r.verdict(),
        "checked": r.checked,
        "witness": witness_json(&r.witness),
    })
}

pub fn reports(rs: &[LawReport], format: Format) -> String {
    match format {
        Format::Json => json_pretty(&Value::Array(rs.iter().map(report_json).collect())),
        Format::Table => rs.iter().map(|r| r.line() + "\n").collect(),
        Format::Tsv => {
            let mut out = String::from("law\tstatus\tcoverage\tchecked\twitness\n");
            for r in rs {
                out.push_str(&format!(
                    "{}\t{}\t{}\t{}\t{}\n",
                    r.law,
                    status_str(r.status),
                    r.coverage,
                    r.checked,
                    r.witness
                        .as_ref()
                        .map(|w| w.to_string())
                        .unwrap_or_default()
                ));
            }
            out
        }
    }
}

pub fn theorem14(rs: &[Theorem14Report], format: Format) -> String {
    match format {
        Format::Json => json_pretty(&Value::Array(
            rs.iter()
                .map(|r| {
                    let (x, y, z) = r.ops;
                    json!({
                        "direction": r.direction.to_string(),
                        "ops": {"X": x.to_string(), "Y": y.to_string(), "Z": z.to_string()},
                        "status": status_str(r.status()),
                        "hypothesis": report_json(&r.hypothesis),
                        "conclusion": report_json(&r.conclusion),
                    })
                })
                .collect(),
        )),
        Format::Table => rs
            .iter()
            .flat_map(|r| r.lines())
            .map(|l| l + "\n")
            .collect(),
        Format::Tsv => {
            let mut out = String::from("direction\tX\tY\tZ\tstatus\thypothesis\tconclusion\n");
            for r in rs {
                let (x, y, z) = r.ops;
                out.push_str(&format!(
                    "{}\t{x}\t{y}\t{z}\t{}\t{}\t{}\n",
                    r.direction,
                    status_str(r.status()),
                    status_str(r.hypothesis.status),
                    status_str(r.conclusion.status),
                ));
            }
            out
        }
    }
}

pub fn validation(poset: &OmpPoset, r: &ValidationReport, format: Format) -> String {
    match format {
        Format::Json => {
            let failures: Vec<Value> = r
                .failures
                .iter()
                .map(|f| {
                    json!({
                        "axiom": f.axiom.name(),
                        "violations": f.violations,
                        "witness": f.witness.iter().map(|&e| poset.name(e)).collect::<Vec<_>>(),
                    })
                })
                .collect();
            json_pretty(
                &json!({"elements": poset.len(), "valid": r.is_valid(), "failures": failures}),
            )
        }
        _ => {
            let mut out = format!("{} elements\n", poset.len());
            for l in r.lines(poset) {
                out.push_str(&l.replacen(": ", if format == Format::Tsv { "\t" } else { ": " }, 1));
                out.push('\n');
            }
            out
        }
    }
}

pub fn reconstruction(
    res: &ReconstructionResult,
    verify: Option<&[LawReport]>,
    format: Format,
) -> String {
    let names = res.frame.names();
    let pair = |&(s, t): &(usize, usize)| (names[s].clone(), names[t].clone());
    let symbol = match res.mode {
        omql_core::reconstruct::Mode::Star => "R*",
        omql_core::reconstruct::Mode::Bar => "R̄",
    };
    match format {
        Format::Json => {
            let ledger: Vec<Value> = res
                .ledger
                .iter()
                .map(|e| {
                    json!({
                        "claim": e.claim,
                        "op": e.op.to_string(),
                        "holds": e.holds(),
                        "checked": e.checked,
                        "failures": e.failures,
                        "witness": witness_json(&e.witness),
                    })
                })
                .collect();
            let mut v = json!({
                "mode": res.mode.to_string(),
                "coverage": coverage_json(&res.coverage),
                "definitive": res.definitive(),
                "times": names,
                "relation": res.relation(),
                "contains_original": res.contains_original,
                "extra": res.extra.iter().map(pair).collect::<Vec<_>>(),
                "ledger": ledger,
            });
            if let Some(rs) = verify {
                v["verify"] = Value::Array(rs.iter().map(report_json).collect());
            }
            json_pretty(&v)
        }
        _ => {
            let mut out = format!("{symbol} ({}, {})\n", res.mode, res.coverage);
            for l in res.matrix_lines() {
                out.push_str(&l);
                out.push('\n');
            }
            out.push_str(&format!(
                "R ⊆ {symbol}: {}\n",
                if res.contains_original { "yes" } else { "NO" }
            ));
            let extra: Vec<String> = res
                .extra
                .iter()
                .map(pair)
                .map(|(s, t)| format!("({s},{t})"))
                .collect();
            out.push_str(&format!(
                "{symbol} ∖ R: {}\n",
                if extra.is_empty() {
                    "none".to_string()
                } else {
                    extra.join(" ")
                }
            ));
            if !res.definitive() {
                out.push_str("note: sampled quantifiers, the relation over-approximates\n");
            }
            for e in &res.ledger {
                let mut l = format!(
                    "{}: {} [{} checked, {} failures]",
                    e.claim,
                    if e.holds() { "holds" } else { "FAIL" },
                    e.checked,
                    e.failures
                );
                if let Some(w) = &e.witness {
                    l.push_str(&format!(" witness: {w}"));
                }
                out.push_str(&l);
                out.push('\n');
            }
            if let Some(rs) = verify {
                out.push_str(&reports(rs, format));
            }
            out
        }
    }
}
