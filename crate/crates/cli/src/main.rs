mod render;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use omql_core::connectives::{imp_sets, odot_sets};
use omql_core::order::compare_subsets;
use omql_core::reconstruct::{build_r_bar, build_r_star, verify_reconstruction};
use omql_core::tense::{star, star_cross_checked, tense};
use omql_core::valuation::DEFAULT_PHI_CAP;
use omql_core::verify::universe::{DEFAULT_SAMPLE, DEFAULT_SEED, DEFAULT_VALUATION_CAP};
use omql_core::verify::{
    check_adjointness_lemma, check_composition_laws, check_divisibility_sweep, check_dynamic_pair,
    check_theorem14, check_units, composition_laws, theorem14_universe, AdjointnessUniverse,
    Direction, DynamicPair, LawReport, Source, Status,
};
use omql_core::{
    demo, fixtures, format, validate_omp, Comparison, OmpPoset, Subset, TenseOp, TimeFrame,
    Valuation,
};
use render::Format;

#[derive(Parser)]
#[command(
    name = "omql",
    version,
    about = "Tense operators on finite orthomodular posets"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct PosetArgs {
    /// Poset file, or a built-in name: fig1, bool1 .. bool6.
    #[arg(long, default_value = "fig1")]
    poset: String,
    /// Accept a poset file that fails the orthomodular axioms.
    #[arg(long)]
    no_validate: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Relation {
    /// Reflexive chain s ≤ t.
    ChainLe,
    /// Strict chain s < t.
    ChainLt,
    /// Every pair related.
    Total,
}

#[derive(Args)]
struct FrameArgs {
    /// Frame file. Without it the frame comes from --relation and --times.
    #[arg(long, conflicts_with = "relation")]
    frame: Option<PathBuf>,
    #[arg(long, value_enum)]
    relation: Option<Relation>,
    #[arg(long, default_value_t = 3)]
    times: usize,
}

#[derive(Args)]
struct SourceArgs {
    /// Quantify over every valuation; fails above the cap.
    #[arg(long, conflicts_with_all = ["sample", "seed"])]
    exhaustive: bool,
    /// Number of seeded random valuations.
    #[arg(long)]
    sample: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args)]
struct ValArgs {
    /// Valuation file with `<time> <element>` lines.
    #[arg(long, conflicts_with = "values")]
    val: Option<PathBuf>,
    /// Inline valuation, comma separated in time order, e.g. "i',i',f'".
    #[arg(long)]
    values: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Check the orthomodular poset axioms.
    Validate {
        #[command(flatten)]
        poset: PosetArgs,
    },
    /// x ⊙ y or x → y for elements or sets, e.g. --lhs a --rhs "{f,i}".
    Eval {
        #[command(flatten)]
        poset: PosetArgs,
        #[arg(long, value_enum)]
        op: ConnOp,
        #[arg(long, allow_hyphen_values = true)]
        lhs: String,
        #[arg(long, allow_hyphen_values = true)]
        rhs: String,
    },
    /// Compare two subsets: le, le1, le2, sq, eq1, eq2 or eq.
    Cmp {
        #[command(flatten)]
        poset: PosetArgs,
        #[arg(long, value_parser = parse_comparison)]
        kind: Comparison,
        #[arg(long)]
        lhs: String,
        #[arg(long)]
        rhs: String,
    },
    /// A tense operator applied to a valuation.
    Tense {
        #[command(flatten)]
        poset: PosetArgs,
        #[command(flatten)]
        frame: FrameArgs,
        #[arg(long, value_parser = parse_tense)]
        op: TenseOp,
        #[command(flatten)]
        val: ValArgs,
    },
    /// The composition Y*X = Y∘φ∘X, given as --ops Y,X.
    Star {
        #[command(flatten)]
        poset: PosetArgs,
        #[command(flatten)]
        frame: FrameArgs,
        #[arg(long, value_parser = parse_pair)]
        ops: (TenseOp, TenseOp),
        #[command(flatten)]
        val: ValArgs,
        /// Recompute through an explicit enumeration of φ.
        #[arg(long)]
        cross_check: bool,
    },
    /// Law checks.
    Check {
        #[command(subcommand)]
        check: Check,
    },
    /// Rebuild the time relation from the induced operators.
    Reconstruct {
        #[command(flatten)]
        poset: PosetArgs,
        #[command(flatten)]
        frame: FrameArgs,
        #[arg(long, value_enum)]
        mode: ModeArg,
        #[command(flatten)]
        source: SourceArgs,
        /// Re-derive the operators from the result and recheck every claim.
        #[arg(long)]
        verify: bool,
    },
    /// Built-in worked examples.
    Demo {
        #[arg(value_enum)]
        example: DemoName,
    },
}

#[derive(Subcommand)]
enum Check {
    /// (P1)-(P3) for (P,G) and (F,H).
    DynamicPair {
        #[command(flatten)]
        poset: PosetArgs,
        #[command(flatten)]
        frame: FrameArgs,
        #[command(flatten)]
        source: SourceArgs,
        /// PG or FH; both when omitted.
        #[arg(long, value_parser = parse_dynamic)]
        pair: Option<DynamicPair>,
    },
    /// Composition and sandwich laws; the frame must be reflexive.
    Laws {
        #[command(flatten)]
        poset: PosetArgs,
        #[command(flatten)]
        frame: FrameArgs,
        #[command(flatten)]
        source: SourceArgs,
    },
    /// Adjointness, divisibility and unit laws of the connectives.
    Adjointness {
        #[command(flatten)]
        poset: PosetArgs,
        #[arg(long, value_enum, default_value_t = AdjUniverse::Auto)]
        universe: AdjUniverse,
    },
    /// Transfer of ⊙ and → through tense operators, hypothesis reported apart.
    Theorem14 {
        #[command(flatten)]
        poset: PosetArgs,
        #[command(flatten)]
        frame: FrameArgs,
        #[command(flatten)]
        source: SourceArgs,
        /// i or ii; both when omitted.
        #[arg(long, value_parser = parse_direction)]
        direction: Option<Direction>,
        /// X,Y,Z; every triple when omitted.
        #[arg(long, value_parser = parse_triple)]
        ops: Option<(TenseOp, TenseOp, TenseOp)>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ConnOp {
    Odot,
    Imp,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Star,
    Bar,
}

#[derive(Clone, Copy, ValueEnum)]
enum AdjUniverse {
    Auto,
    Elements,
    Subsets,
}

#[derive(Clone, Copy, ValueEnum)]
enum DemoName {
    Example1,
}

fn parse_comparison(s: &str) -> Result<Comparison, String> {
    s.parse().map_err(|e: omql_core::OmqlError| e.to_string())
}

fn parse_tense(s: &str) -> Result<TenseOp, String> {
    s.parse().map_err(|e: omql_core::OmqlError| e.to_string())
}

fn parse_dynamic(s: &str) -> Result<DynamicPair, String> {
    s.parse().map_err(|e: omql_core::OmqlError| e.to_string())
}

fn parse_direction(s: &str) -> Result<Direction, String> {
    s.parse().map_err(|e: omql_core::OmqlError| e.to_string())
}

fn parse_ops(s: &str, n: usize) -> Result<Vec<TenseOp>, String> {
    let ops = s
        .split(',')
        .map(|o| parse_tense(o.trim()))
        .collect::<Result<Vec<_>, _>>()?;
    if ops.len() != n {
        return Err(format!(
            "expected {n} comma-separated operators, got {}",
            ops.len()
        ));
    }
    Ok(ops)
}

fn parse_pair(s: &str) -> Result<(TenseOp, TenseOp), String> {
    let o = parse_ops(s, 2)?;
    Ok((o[0], o[1]))
}

fn parse_triple(s: &str) -> Result<(TenseOp, TenseOp, TenseOp), String> {
    let o = parse_ops(s, 3)?;
    Ok((o[0], o[1], o[2]))
}

/// Enumeration caps: (valuations, φ members). OMQL_CAP overrides both.
fn caps() -> Result<(u128, u128)> {
    match std::env::var("OMQL_CAP") {
        Ok(v) => {
            let cap: u128 = v
                .trim()
                .replace('_', "")
                .parse()
                .with_context(|| format!("OMQL_CAP must be a positive integer, got `{v}`"))?;
            Ok((cap, cap))
        }
        Err(_) => Ok((DEFAULT_VALUATION_CAP, DEFAULT_PHI_CAP)),
    }
}

impl PosetArgs {
    fn load(&self) -> Result<OmpPoset> {
        let path = Path::new(&self.poset);
        if path.exists() {
            return format::load_poset(path, !self.no_validate)
                .with_context(|| format!("loading {}", path.display()));
        }
        fixtures::builtin(&self.poset)
            .ok_or_else(|| anyhow!("`{}` is neither a file nor a built-in poset", self.poset))
    }
}

impl FrameArgs {
    fn load(&self) -> Result<TimeFrame> {
        if let Some(path) = &self.frame {
            return format::load_frame(path).with_context(|| format!("loading {}", path.display()));
        }
        if self.times == 0 {
            bail!("--times must be at least 1");
        }
        Ok(match self.relation.unwrap_or(Relation::ChainLe) {
            Relation::ChainLe => TimeFrame::chain_le(self.times),
            Relation::ChainLt => TimeFrame::chain_lt(self.times),
            Relation::Total => TimeFrame::total(self.times),
        })
    }
}

impl SourceArgs {
    fn source(&self) -> Source {
        if self.exhaustive {
            Source::Exhaustive
        } else if self.sample.is_some() || self.seed.is_some() {
            Source::Sampled {
                count: self.sample.unwrap_or(DEFAULT_SAMPLE),
                seed: self.seed.unwrap_or(DEFAULT_SEED),
            }
        } else {
            Source::Auto
        }
    }
}

impl ValArgs {
    fn load(&self, poset: &OmpPoset, frame: &TimeFrame) -> Result<Valuation> {
        let q = match (&self.val, &self.values) {
            (Some(path), _) => format::load_valuation(path, poset, frame)
                .with_context(|| format!("loading {}", path.display()))?,
            (None, Some(list)) => {
                let names: Vec<&str> = list.split(',').map(str::trim).collect();
                Valuation::from_names(poset, &names)?
            }
            (None, None) => bail!("a valuation is required: --val FILE or --values LIST"),
        };
        q.check(poset, frame.len())?;
        Ok(q)
    }
}

/// `a` or `{a,b}`.
fn parse_set(poset: &OmpPoset, s: &str) -> Result<Subset> {
    let inner = s.trim().trim_start_matches('{').trim_end_matches('}');
    let names: Vec<&str> = inner
        .split(',')
        .map(str::trim)
        .filter(|n| !n.is_empty())
        .collect();
    if names.is_empty() {
        bail!("empty set `{s}`");
    }
    Ok(poset.subset(names)?)
}

/// 1 if any report failed with its hypothesis met, 0 otherwise.
fn law_exit(reports: &[LawReport]) -> u8 {
    u8::from(reports.iter().any(|r| !r.acceptable()))
}

fn run(cli: Cli) -> Result<u8> {
    let fmt = cli.format;
    let (cap, phi_cap) = caps()?;
    let out: String;
    let code = match cli.command {
        Command::Validate { poset } => {
            let p = PosetArgs {
                no_validate: true,
                ..poset
            }
            .load()?;
            let report = validate_omp(&p);
            out = render::validation(&p, &report, fmt);
            u8::from(!report.is_valid())
        }
        Command::Eval {
            poset,
            op,
            lhs,
            rhs,
        } => {
            let p = poset.load()?;
            let (b, c) = (parse_set(&p, &lhs)?, parse_set(&p, &rhs)?);
            let r = match op {
                ConnOp::Odot => odot_sets(&p, &b, &c)?,
                ConnOp::Imp => imp_sets(&p, &b, &c)?,
            };
            out = render::subset(&p, &r, fmt);
            0
        }
        Command::Cmp {
            poset,
            kind,
            lhs,
            rhs,
        } => {
            let p = poset.load()?;
            let (b, c) = (parse_set(&p, &lhs)?, parse_set(&p, &rhs)?);
            let holds = compare_subsets(&p, kind, &b, &c)?;
            out = match fmt {
                render::Format::Json => format!(
                    "{}\n",
                    serde_json::json!({"lhs": lhs, "kind": kind.symbol(), "rhs": rhs, "holds": holds})
                ),
                _ => format!(
                    "{lhs} {kind} {rhs}: {}\n",
                    if holds { "holds" } else { "fails" }
                ),
            };
            0
        }
        Command::Tense {
            poset,
            frame,
            op,
            val,
        } => {
            let (p, f) = (poset.load()?, frame.load()?);
            let q = val.load(&p, &f)?;
            let x = tense(&p, &f, op, &q)?;
            out = render::time_table(&p, &f, &[(format!("{op}(q)"), &x)], fmt);
            0
        }
        Command::Star {
            poset,
            frame,
            ops: (y, x),
            val,
            cross_check,
        } => {
            let (p, f) = (poset.load()?, frame.load()?);
            let q = val.load(&p, &f)?;
            let r = if cross_check {
                star_cross_checked(&p, &f, y, x, &q, phi_cap)?
            } else {
                star(&p, &f, y, x, &q)?
            };
            out = render::time_table(&p, &f, &[(format!("{y}*{x}(q)"), &r)], fmt);
            0
        }
        Command::Check { check } => match check {
            Check::DynamicPair {
                poset,
                frame,
                source,
                pair,
            } => {
                let (p, f) = (poset.load()?, frame.load()?);
                let pairs = pair.map_or(vec![DynamicPair::PG, DynamicPair::FH], |d| vec![d]);
                let mut reports = Vec::new();
                for d in pairs {
                    reports.extend(check_dynamic_pair(d, &p, &f, source.source(), cap)?);
                }
                out = render::reports(&reports, fmt);
                law_exit(&reports)
            }
            Check::Laws {
                poset,
                frame,
                source,
            } => {
                let (p, f) = (poset.load()?, frame.load()?);
                let reports =
                    check_composition_laws(&p, &f, &composition_laws(), source.source(), cap)?;
                out = render::reports(&reports, fmt);
                law_exit(&reports)
            }
            Check::Adjointness { poset, universe } => {
                let p = poset.load()?;
                let universe = match universe {
                    AdjUniverse::Auto => AdjointnessUniverse::Auto,
                    AdjUniverse::Elements => AdjointnessUniverse::Elements,
                    AdjUniverse::Subsets => AdjointnessUniverse::Subsets,
                };
                let reports = vec![
                    check_adjointness_lemma(&p, universe)?,
                    check_divisibility_sweep(&p)?,
                    check_units(&p)?,
                ];
                out = render::reports(&reports, fmt);
                law_exit(&reports)
            }
            Check::Theorem14 {
                poset,
                frame,
                source,
                direction,
                ops,
            } => {
                let (p, f) = (poset.load()?, frame.load()?);
                let uni = theorem14_universe(&p, f.len(), source.source(), cap)?;
                let dirs = direction.map_or(vec![Direction::I, Direction::II], |d| vec![d]);
                let triples = match ops {
                    Some(t) => vec![t],
                    None => {
                        const ALL: [TenseOp; 4] = [TenseOp::P, TenseOp::F, TenseOp::H, TenseOp::G];
                        let mut v = Vec::new();
                        for x in ALL {
                            for y in ALL {
                                for z in ALL {
                                    v.push((x, y, z));
                                }
                            }
                        }
                        v
                    }
                };
                let mut reports = Vec::new();
                for d in dirs {
                    for &t in &triples {
                        reports.push(check_theorem14(&p, &f, d, t, &uni)?);
                    }
                }
                out = render::theorem14(&reports, fmt);
                u8::from(reports.iter().any(|r| r.status() == Status::Fail))
            }
        },
        Command::Reconstruct {
            poset,
            frame,
            mode,
            source,
            verify,
        } => {
            let (p, f) = (poset.load()?, frame.load()?);
            let src = source.source();
            let res = match mode {
                ModeArg::Star => build_r_star(&p, &f, src, cap)?,
                ModeArg::Bar => build_r_bar(&p, &f, src, cap)?,
            };
            let checks = if verify {
                Some(verify_reconstruction(&res, &p, &f, src, cap)?)
            } else {
                None
            };
            out = render::reconstruction(&res, checks.as_deref(), fmt);
            let failed = !res.contains_original
                || res.ledger.iter().any(|e| !e.holds())
                || checks.as_deref().is_some_and(|c| law_exit(c) != 0);
            u8::from(failed)
        }
        Command::Demo { example } => match example {
            DemoName::Example1 => {
                let ex = demo::example1(&fixtures::fig1())?;
                out = match fmt {
                    Format::Table => ex.render_table(),
                    Format::Tsv => ex.render_tsv(),
                    Format::Json => demo_json(&ex),
                };
                u8::from(ex.relations.iter().any(|r| !r.holds))
            }
        },
    };
    print!("{out}");
    Ok(code)
}

fn demo_json(ex: &demo::Example) -> String {
    use serde_json::json;
    let rows: Vec<_> = ex
        .rows
        .iter()
        .map(|r| {
            let values: Vec<_> = ex
                .times
                .iter()
                .zip(&r.cells)
                .map(|(t, c)| json!({"time": t, "value": c}))
                .collect();
            json!({"expr": r.label, "values": values})
        })
        .collect();
    let relations: Vec<_> = ex
        .relations
        .iter()
        .map(|r| json!({"lhs": r.lhs, "relation": r.symbol, "rhs": r.rhs, "holds": r.holds, "proper": r.proper}))
        .collect();
    let mut s = serde_json::to_string_pretty(&json!({"rows": rows, "relations": relations}))
        .expect("json values serialize");
    s.push('\n');
    s
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
