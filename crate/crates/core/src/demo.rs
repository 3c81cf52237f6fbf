//! The worked example on the 20-element poset: eight expressions evaluated
//! on the reflexive chain of three time points, and the four relations they
//! witness.

use crate::error::Result;
use crate::fixtures;
use crate::frame::TimeFrame;
use crate::order::{Comparison, RelationKind};
use crate::poset::OmpPoset;
use crate::verify::{eval_inequality, is_proper, Env, Expr, Value};

/// One table row: the expression and its value per time point, each value
/// as ascending element names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Row {
    pub label: String,
    pub cells: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub lhs: String,
    pub symbol: &'static str,
    pub rhs: String,
    pub holds: bool,
    /// Holds, the sides differ, and the converse fails.
    pub proper: bool,
}

impl Relation {
    pub fn line(&self) -> String {
        format!(
            "{} {} {}: {}",
            self.lhs,
            self.symbol,
            self.rhs,
            match (self.holds, self.proper) {
                (true, true) => "holds, proper",
                (true, false) => "holds, not proper",
                _ => "FAILS",
            }
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Example {
    pub times: Vec<String>,
    pub rows: Vec<Row>,
    pub relations: Vec<Relation>,
}

/// Formats a cell the way the table prints it: bare name for singletons.
pub fn cell_text(names: &[String]) -> String {
    match names {
        [one] => one.clone(),
        many => format!("{{{}}}", many.join(",")),
    }
}

impl Example {
    /// Aligned plain-text table followed by the relation lines.
    pub fn render_table(&self) -> String {
        let mut grid = vec![std::iter::once("t".to_string())
            .chain(self.times.iter().cloned())
            .collect::<Vec<_>>()];
        for r in &self.rows {
            grid.push(
                std::iter::once(format!("{}(t)", r.label))
                    .chain(r.cells.iter().map(|c| cell_text(c)))
                    .collect(),
            );
        }
        let widths: Vec<usize> = (0..grid[0].len())
            .map(|c| {
                grid.iter()
                    .map(|row| row[c].chars().count())
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let mut out = String::new();
        for (i, row) in grid.iter().enumerate() {
            let cells: Vec<String> = row
                .iter()
                .zip(&widths)
                .enumerate()
                .map(|(c, (s, &w))| {
                    let pad = w - s.chars().count();
                    if c == 0 {
                        format!("{}{s}", " ".repeat(pad))
                    } else {
                        format!("{s}{}", " ".repeat(pad))
                    }
                })
                .collect();
            out.push_str(format!("{} | {}", cells[0], cells[1..].join("  ")).trim_end());
            out.push('\n');
            if i == 0 {
                let rule: usize =
                    widths[0] + 3 + widths[1..].iter().sum::<usize>() + 2 * (widths.len() - 2);
                out.push_str(&"-".repeat(rule));
                out.push('\n');
            }
        }
        out.push('\n');
        for r in &self.relations {
            out.push_str(&r.line());
            out.push('\n');
        }
        out
    }

    pub fn render_tsv(&self) -> String {
        let mut out = format!("expr\t{}\n", self.times.join("\t"));
        for r in &self.rows {
            let cells: Vec<String> = r.cells.iter().map(|c| cell_text(c)).collect();
            out.push_str(&format!("{}\t{}\n", r.label, cells.join("\t")));
        }
        for r in &self.relations {
            out.push_str(&format!(
                "relation\t{}\t{}\t{}\t{}\n",
                r.lhs,
                r.symbol,
                r.rhs,
                if r.proper {
                    "proper"
                } else if r.holds {
                    "holds"
                } else {
                    "fails"
                }
            ));
        }
        out
    }
}

/// Evaluates the example on `poset` (which must carry the example's element
/// names) over the reflexive chain of three points.
pub fn example1(poset: &OmpPoset) -> Result<Example> {
    let frame = TimeFrame::chain_le(3);
    let (p, q) = fixtures::example1_valuations(poset);
    let mut env = Env::new(poset, &frame);
    env.bind("p", Value::Exact(p))?;
    env.bind("q", Value::Exact(q))?;

    let specs: [(&str, RelationKind, &str); 4] = [
        ("H(phi(odot(p,q)))", RelationKind::All, "odot(H(p),H(q))"),
        (
            "H(phi(imp(p,q)))",
            RelationKind::ExistsLower,
            "imp(H(p),H(q))",
        ),
        ("G(phi(odot(p,q)))", RelationKind::All, "odot(G(p),G(q))"),
        (
            "G(phi(imp(p,q)))",
            RelationKind::ExistsUpper,
            "imp(G(p),G(q))",
        ),
    ];
    let mut rows = Vec::new();
    let mut relations = Vec::new();
    for (l, kind, r) in specs {
        let (l, r) = (Expr::parse(l)?, Expr::parse(r)?);
        for e in [&l, &r] {
            let x = env.eval(e)?.as_setvaluation(poset)?;
            rows.push(Row {
                label: e.to_string(),
                cells: x.values().iter().map(|s| poset.subset_names(s)).collect(),
            });
        }
        let cmp = Comparison::Rel(kind);
        relations.push(Relation {
            lhs: l.to_string(),
            symbol: kind.symbol(),
            rhs: r.to_string(),
            holds: eval_inequality(&env, &l, cmp, &r)?.passed(),
            proper: is_proper(&env, &l, cmp, &r)?,
        });
    }
    Ok(Example {
        times: frame.names().to_vec(),
        rows,
        relations,
    })
}
