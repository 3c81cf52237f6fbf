//! Line-based text formats for posets, frames and valuations.
//!
//! All formats ignore blank lines and `#` comments.
//!
//! ```text
//! # poset
//! element 0
//! element a
//! element a'
//! element 1
//! cover 0 a        # or: le 0 a
//! inv a a'
//! bottom 0         # optional, derived otherwise
//! top 1            # optional
//!
//! # frame
//! time 1
//! time 2
//! rel 1 2
//!
//! # valuation            # set-valuation
//! 1 a                    1 a b
//! 2 a'                   2 a'
//! ```

use std::path::Path;

use crate::error::{OmqlError, Result};
use crate::frame::TimeFrame;
use crate::poset::{OmpPoset, PosetBuilder};
use crate::validate::validate_omp;
use crate::valuation::{SetValuation, Valuation};

fn lines(src: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    src.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("");
        let words: Vec<&str> = body.split_whitespace().collect();
        (!words.is_empty()).then_some((i + 1, words))
    })
}

fn at_line<T>(line: usize, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        OmqlError::Parse { .. } => e,
        other => OmqlError::Parse {
            line,
            message: other.to_string(),
        },
    })
}

fn arity(line: usize, words: &[&str], n: usize) -> Result<()> {
    if words.len() == n + 1 {
        Ok(())
    } else {
        Err(OmqlError::Parse {
            line,
            message: format!("`{}` takes {n} argument(s)", words[0]),
        })
    }
}

/// Parses the poset format. The result is closed under transitivity but not
/// checked against the orthomodular axioms.
pub fn parse_poset(src: &str) -> Result<OmpPoset> {
    let mut b = PosetBuilder::new();
    let mut last = 0;
    for (line, w) in lines(src) {
        last = line;
        match w[0] {
            "element" => {
                arity(line, &w, 1)?;
                at_line(line, b.element(w[1]).map(|_| ()))?;
            }
            "cover" | "le" => {
                arity(line, &w, 2)?;
                at_line(line, b.le(w[1], w[2]).map(|_| ()))?;
            }
            "inv" => {
                arity(line, &w, 2)?;
                at_line(line, b.inv(w[1], w[2]).map(|_| ()))?;
            }
            "bottom" => {
                arity(line, &w, 1)?;
                at_line(line, b.bottom(w[1]).map(|_| ()))?;
            }
            "top" => {
                arity(line, &w, 1)?;
                at_line(line, b.top(w[1]).map(|_| ()))?;
            }
            other => {
                return Err(OmqlError::Parse {
                    line,
                    message: format!("unknown directive `{other}`"),
                })
            }
        }
    }
    at_line(last, b.build())
}

/// Parses and validates; any axiom failure becomes an error carrying the
/// first witness.
pub fn parse_omp(src: &str) -> Result<OmpPoset> {
    let poset = parse_poset(src)?;
    let report = validate_omp(&poset);
    if report.is_valid() {
        Ok(poset)
    } else {
        Err(OmqlError::Invalid(report.summary(&poset)))
    }
}

pub fn parse_frame(src: &str) -> Result<TimeFrame> {
    let mut names: Vec<String> = Vec::new();
    let mut pairs = Vec::new();
    let mut last = 0;
    for (line, w) in lines(src) {
        last = line;
        match w[0] {
            "time" => {
                arity(line, &w, 1)?;
                if names.iter().any(|n| n == w[1]) {
                    return Err(OmqlError::Parse {
                        line,
                        message: format!("duplicate time point `{}`", w[1]),
                    });
                }
                names.push(w[1].to_string());
            }
            "rel" => {
                arity(line, &w, 2)?;
                let find = |n: &str| {
                    names.iter().position(|x| x == n).ok_or(OmqlError::Parse {
                        line,
                        message: format!("unknown time point `{n}`"),
                    })
                };
                pairs.push((find(w[1])?, find(w[2])?));
            }
            other => {
                return Err(OmqlError::Parse {
                    line,
                    message: format!("unknown directive `{other}`"),
                })
            }
        }
    }
    at_line(last, TimeFrame::from_pairs(names, &pairs))
}

fn parse_rows<T>(
    src: &str,
    frame: &TimeFrame,
    mut row: impl FnMut(usize, &[&str]) -> Result<T>,
) -> Result<Vec<T>> {
    let mut slots: Vec<Option<T>> = (0..frame.len()).map(|_| None).collect();
    for (line, w) in lines(src) {
        let t = at_line(line, frame.time(w[0]))?;
        if w.len() < 2 {
            return Err(OmqlError::Parse {
                line,
                message: "missing value".into(),
            });
        }
        if slots[t].is_some() {
            return Err(OmqlError::Parse {
                line,
                message: format!("time point `{}` assigned twice", w[0]),
            });
        }
        slots[t] = Some(at_line(line, row(line, &w[1..]))?);
    }
    slots
        .into_iter()
        .enumerate()
        .map(|(t, v)| {
            v.ok_or_else(|| OmqlError::Parse {
                line: 0,
                message: format!("no value for time point `{}`", frame.name(t)),
            })
        })
        .collect()
}

/// `<time> <element>` per line, every time point exactly once.
pub fn parse_valuation(src: &str, poset: &OmpPoset, frame: &TimeFrame) -> Result<Valuation> {
    let values = parse_rows(src, frame, |line, rest| {
        if rest.len() != 1 {
            return Err(OmqlError::Parse {
                line,
                message: "a valuation takes exactly one element per time point".into(),
            });
        }
        poset.element(rest[0])
    })?;
    Ok(Valuation::new(values))
}

/// `<time> <e1> <e2> ...` per line, every time point exactly once.
pub fn parse_setvaluation(src: &str, poset: &OmpPoset, frame: &TimeFrame) -> Result<SetValuation> {
    let values = parse_rows(src, frame, |_, rest| poset.subset(rest.iter().copied()))?;
    SetValuation::new(values)
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| OmqlError::Parse {
        line: 0,
        message: format!("{}: {e}", path.display()),
    })
}

/// Reads a poset file; with `validate` the orthomodular axioms must hold.
pub fn load_poset(path: &Path, validate: bool) -> Result<OmpPoset> {
    let src = read(path)?;
    if validate {
        parse_omp(&src)
    } else {
        parse_poset(&src)
    }
}

pub fn load_frame(path: &Path) -> Result<TimeFrame> {
    parse_frame(&read(path)?)
}

pub fn load_valuation(path: &Path, poset: &OmpPoset, frame: &TimeFrame) -> Result<Valuation> {
    parse_valuation(&read(path)?, poset, frame)
}

pub fn load_setvaluation(path: &Path, poset: &OmpPoset, frame: &TimeFrame) -> Result<SetValuation> {
    parse_setvaluation(&read(path)?, poset, frame)
}

/// Covering pairs (Hasse edges) in declaration order.
pub fn cover_pairs(poset: &OmpPoset) -> Vec<(String, String)> {
    let mut out = Vec::new();
    for a in poset.elems() {
        for b in poset.elems() {
            if a == b || !poset.leq(a, b) {
                continue;
            }
            let covered = poset
                .elems()
                .all(|c| c == a || c == b || !(poset.leq(a, c) && poset.leq(c, b)));
            if covered {
                out.push((poset.name(a).to_string(), poset.name(b).to_string()));
            }
        }
    }
    out
}

/// Serializes a poset back to the text format using cover pairs.
pub fn write_poset(poset: &OmpPoset) -> String {
    let mut s = String::new();
    for name in poset.names() {
        s.push_str(&format!("element {name}\n"));
    }
    s.push_str(&format!(
        "bottom {}\ntop {}\n",
        poset.name(poset.bottom()),
        poset.name(poset.top())
    ));
    for (lo, hi) in cover_pairs(poset) {
        s.push_str(&format!("cover {lo} {hi}\n"));
    }
    for a in poset.elems() {
        let b = poset.inv(a);
        if a <= b {
            s.push_str(&format!("inv {} {}\n", poset.name(a), poset.name(b)));
        }
    }
    s
}
