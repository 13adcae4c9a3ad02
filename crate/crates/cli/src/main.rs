//! `abslice`: evaluate model decompositions, Milnor invariants, gropes and
//! Bing cells, and check A-B slice obstructions from the command line.

mod dot;
mod input;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use abslice_core::abslice::{check_obstruction, ABSliceInstance};
use abslice_core::bingcell::{height_of, validate_plumbing, validate_tree, BingCellTree};
use abslice_core::diag::Diagnostic;
use abslice_core::grope::{from_decomp_side, grope_class, grope_complement};
use abslice_core::lambda::{all_witness_reports, eval_lambda, side_report, Choice, Lambda};
use abslice_core::linkhom::{
    bing_double, essential_certificate, first_non_vanishing_mu, linking_matrix, mu_distinct,
    MuCertificate, TRIVIAL_REPORT,
};
use abslice_core::modeltree::{
    dualize, handle_counts, handle_structure, height, Fixture, HandleCounts, HandleStructure, Side,
};
use abslice_core::word::GenIndex;
use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(name = "abslice", version, about = "A-B slice obstructions for links")]
struct Cli {
    /// Render tree-valued output as Graphviz DOT instead of JSON.
    #[arg(long, global = true)]
    dot: bool,
    /// Write output to FILE instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Model decompositions of the 4-ball.
    #[command(subcommand)]
    Model(ModelCmd),
    /// Link presentations and Milnor invariants.
    #[command(subcommand)]
    Link(LinkCmd),
    /// Gropes and their complements.
    #[command(subcommand)]
    Grope(GropeCmd),
    /// Bing cell trees.
    #[command(subcommand)]
    Cell(CellCmd),
    /// The obstruction pipeline.
    #[command(subcommand)]
    Abslice(AbsliceCmd),
    /// Render a decomposition, grope or cell as DOT.
    EmitDot(EmitDotArgs),
    /// Named decompositions.
    #[command(subcommand)]
    Fixtures(FixturesCmd),
}

#[derive(Args, Debug)]
struct ModelArg {
    /// Fixture shorthand (a1b1:g, a2b2, a2b2prime, a3b3, a3b3prime), a JSON
    /// file, or `-` for stdin.
    #[arg(long, visible_alias = "fixture", value_name = "MODEL")]
    model: String,
}

#[derive(Args, Debug)]
struct SideArg {
    #[arg(long, default_value = "A")]
    side: Side,
}

#[derive(Subcommand, Debug)]
enum ModelCmd {
    /// I_λ of both sides.
    Eval(ModelArg),
    /// The tie-broken Bing cell witness with its choice log.
    Witness(ModelArg),
    /// Every witness over every admissible choice.
    WitnessesAll {
        #[command(flatten)]
        model: ModelArg,
        /// Stop after this many witnesses.
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Symbolic Kirby data; both sides unless --side is given.
    Handles {
        #[command(flatten)]
        model: ModelArg,
        #[arg(long)]
        side: Option<Side>,
    },
    /// Dual of one side's Kirby data, i.e. the other side's.
    Dual {
        #[command(flatten)]
        model: ModelArg,
        #[command(flatten)]
        side: SideArg,
    },
}

#[derive(Args, Debug)]
struct LinkArg {
    /// Catalog name (unlink:N, hopf, borromean, bing:i,j,...), a JSON file,
    /// or `-` for stdin.
    #[arg(long, value_name = "LINK")]
    link: String,
}

#[derive(Subcommand, Debug)]
enum LinkCmd {
    /// μ for one index sequence, or all first non-vanishing invariants.
    Mu {
        #[command(flatten)]
        link: LinkArg,
        /// Distinct component indices i_1,...,i_k,j.
        #[arg(long, value_delimiter = ',')]
        index: Option<Vec<u32>>,
    },
    /// Bing-double one component.
    Double {
        #[command(flatten)]
        link: LinkArg,
        #[arg(long)]
        component: u32,
    },
    /// Certificate of homotopic essentialness, if any.
    Essential(LinkArg),
}

#[derive(Args, Debug)]
struct GropeArg {
    /// Grope JSON file, `-` for stdin, or `bare:g`.
    #[arg(
        long,
        value_name = "GROPE",
        conflicts_with = "model",
        required_unless_present = "model"
    )]
    grope: Option<String>,
    /// Take the grope formed by one side of a decomposition instead.
    #[arg(long, value_name = "MODEL")]
    model: Option<String>,
    #[arg(long, default_value = "A")]
    side: Side,
}

#[derive(Subcommand, Debug)]
enum GropeCmd {
    Class(GropeArg),
    /// Bing cell tree of the complement.
    Complement(GropeArg),
}

#[derive(Subcommand, Debug)]
enum CellCmd {
    /// Check valence rules, and optionally a plumbing pattern.
    Validate {
        /// Cell JSON file, `-` for stdin, or `model:B:L1,L2,...`.
        #[arg(long)]
        cell: String,
        /// Plumbing pattern JSON file.
        #[arg(long)]
        plumbing: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
enum AbsliceCmd {
    /// Exit status 0 when obstructed, 2 when inconclusive.
    Check {
        #[arg(long, required_unless_present = "instance")]
        link: Option<String>,
        /// One per component, in component order.
        #[arg(long, conflicts_with = "instance")]
        model: Vec<String>,
        /// Instance JSON file with `link` and `decompositions`.
        #[arg(long)]
        instance: Option<String>,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct EmitDotArgs {
    #[arg(long)]
    model: Option<String>,
    #[arg(long)]
    grope: Option<String>,
    #[arg(long)]
    cell: Option<String>,
}

#[derive(Subcommand, Debug)]
enum FixturesCmd {
    List,
}

#[derive(Serialize)]
struct Eval {
    #[serde(flatten)]
    lambda: Lambda,
    robust: Side,
    height: usize,
}

#[derive(Serialize)]
struct Enumerated {
    witness: BingCellTree,
    choices: Vec<Choice>,
}

#[derive(Serialize)]
struct BothSides {
    counts: HandleCounts,
    #[serde(rename = "A")]
    a: HandleStructure,
    #[serde(rename = "B")]
    b: HandleStructure,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct MuValue {
    index_seq: Vec<GenIndex>,
    value: serde_json::Value,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct Essential {
    essential: bool,
    certificate: Option<MuCertificate>,
    linking_matrix: Vec<Vec<i64>>,
    report: String,
}

#[derive(Serialize)]
struct CellReport {
    valid: bool,
    height: usize,
    diagnostics: Vec<Diagnostic>,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct FixtureInfo {
    name: String,
    height: usize,
    #[serde(flatten)]
    lambda: Lambda,
}

/// Rendered output and process status.
struct Outcome {
    text: String,
    code: u8,
}

impl Outcome {
    fn json<T: Serialize>(value: &T) -> Result<Self> {
        let mut text = serde_json::to_string_pretty(value)?;
        text.push('\n');
        Ok(Outcome { text, code: 0 })
    }

    fn dot(text: String) -> Self {
        Outcome { text, code: 0 }
    }

    fn with_code(mut self, code: u8) -> Self {
        self.code = code;
        self
    }
}

fn no_dot(dot: bool) -> Result<()> {
    if dot {
        bail!("this command has no DOT rendering");
    }
    Ok(())
}

/// Integers that fit are JSON numbers, larger ones decimal strings.
fn big_json(v: impl ToString) -> serde_json::Value {
    let s = v.to_string();
    match s.parse::<i64>() {
        Ok(x) => x.into(),
        Err(_) => s.into(),
    }
}

fn run_model(cmd: &ModelCmd, dot: bool) -> Result<Outcome> {
    match cmd {
        ModelCmd::Eval(m) => {
            no_dot(dot)?;
            let t = input::decomposition(&m.model)?;
            let lambda = eval_lambda(&t)?;
            Outcome::json(&Eval {
                lambda,
                robust: lambda.winner().expect("complementary").opposite(),
                height: height(&t),
            })
        }
        ModelCmd::Witness(m) => {
            let r = side_report(&input::decomposition(&m.model)?)?;
            if dot {
                Ok(Outcome::dot(dot::cell_tree(&r.witness)))
            } else {
                Outcome::json(&r)
            }
        }
        ModelCmd::WitnessesAll { model, limit } => {
            no_dot(dot)?;
            let t = input::decomposition(&model.model)?;
            let all: Vec<Enumerated> = all_witness_reports(&t)?
                .into_iter()
                .take(limit.unwrap_or(usize::MAX))
                .map(|(witness, choices)| Enumerated { witness, choices })
                .collect();
            Outcome::json(&all)
        }
        ModelCmd::Handles { model, side } => {
            no_dot(dot)?;
            let t = input::decomposition(&model.model)?;
            match side {
                Some(s) => Outcome::json(&handle_structure(&t, *s)),
                None => Outcome::json(&BothSides {
                    counts: handle_counts(&t),
                    a: handle_structure(&t, Side::A),
                    b: handle_structure(&t, Side::B),
                }),
            }
        }
        ModelCmd::Dual { model, side } => {
            no_dot(dot)?;
            let t = input::decomposition(&model.model)?;
            Outcome::json(&dualize(&handle_structure(&t, side.side)))
        }
    }
}

fn run_link(cmd: &LinkCmd, dot: bool) -> Result<Outcome> {
    no_dot(dot)?;
    match cmd {
        LinkCmd::Mu { link, index } => {
            let l = input::link(&link.link)?;
            match index {
                Some(ix) => {
                    let seq = ix
                        .iter()
                        .map(|&i| GenIndex::new(i))
                        .collect::<abslice_core::Result<Vec<_>>>()?;
                    let v = mu_distinct(&l, &seq)?;
                    Outcome::json(&MuValue {
                        index_seq: seq,
                        value: big_json(v),
                    })
                }
                None => Outcome::json(&first_non_vanishing_mu(&l)?),
            }
        }
        LinkCmd::Double { link, component } => {
            let l = input::link(&link.link)?;
            Outcome::json(&bing_double(&l, GenIndex::new(*component)?)?)
        }
        LinkCmd::Essential(link) => {
            let l = input::link(&link.link)?;
            let certificate = essential_certificate(&l)?;
            let report = match &certificate {
                Some(c) => format!("homotopically essential: {c}"),
                None => TRIVIAL_REPORT.to_string(),
            };
            Outcome::json(&Essential {
                essential: certificate.is_some(),
                certificate,
                linking_matrix: linking_matrix(&l),
                report,
            })
        }
    }
}

fn grope_input(g: &GropeArg) -> Result<abslice_core::grope::GropeTree> {
    match (&g.grope, &g.model) {
        (Some(s), _) => input::grope(s),
        (None, Some(m)) => {
            let t = input::decomposition(m)?;
            from_decomp_side(&t, g.side).map_err(|e| {
                anyhow::anyhow!("side {} is not a grope at {}: {}", g.side, e.path, e.reason)
            })
        }
        (None, None) => bail!("one of --grope or --model is required"),
    }
}

fn run(cli: &Cli) -> Result<Outcome> {
    let dot = cli.dot;
    match &cli.command {
        Command::Model(cmd) => run_model(cmd, dot),
        Command::Link(cmd) => run_link(cmd, dot),
        Command::Grope(GropeCmd::Class(g)) => {
            no_dot(dot)?;
            Outcome::json(&grope_class(&grope_input(g)?))
        }
        Command::Grope(GropeCmd::Complement(g)) => {
            let c = grope_complement(&grope_input(g)?)?;
            if dot {
                Ok(Outcome::dot(dot::cell_tree(&c)))
            } else {
                Outcome::json(&c)
            }
        }
        Command::Cell(CellCmd::Validate { cell, plumbing }) => {
            no_dot(dot)?;
            let t = input::cell(cell)?;
            let mut diagnostics = validate_tree(&t);
            if let Some(p) = plumbing {
                diagnostics.extend(validate_plumbing(&t, &input::plumbing(p)?));
            }
            for d in &diagnostics {
                eprintln!("{d}");
            }
            let valid = diagnostics.is_empty();
            let out = Outcome::json(&CellReport {
                valid,
                height: height_of(&t),
                diagnostics,
            })?;
            Ok(if valid { out } else { out.with_code(1) })
        }
        Command::Abslice(AbsliceCmd::Check {
            link,
            model,
            instance,
        }) => {
            no_dot(dot)?;
            let inst = match (instance, link) {
                (Some(f), _) => input::instance(f)?,
                (None, Some(l)) => {
                    let trees = model
                        .iter()
                        .map(|m| input::decomposition(m))
                        .collect::<Result<Vec<_>>>()?;
                    ABSliceInstance::new(input::link(l)?, trees)?
                }
                (None, None) => bail!("one of --link or --instance is required"),
            };
            let v = check_obstruction(&inst)?;
            let code = v.conclusion.exit_code() as u8;
            Ok(Outcome::json(&v)?.with_code(code))
        }
        Command::EmitDot(a) => {
            let text = match (&a.model, &a.grope, &a.cell) {
                (Some(m), _, _) => dot::decomp_tree(&input::decomposition(m)?),
                (_, Some(g), _) => dot::grope(&input::grope(g)?),
                (_, _, Some(c)) => dot::cell_tree(&input::cell(c)?),
                _ => unreachable!("clap enforces exactly one input"),
            };
            Ok(Outcome::dot(text))
        }
        Command::Fixtures(FixturesCmd::List) => {
            no_dot(dot)?;
            let list = Fixture::all()
                .into_iter()
                .map(|f| {
                    let t = f.tree();
                    Ok(FixtureInfo {
                        name: f.to_string(),
                        height: height(&t),
                        lambda: eval_lambda(&t)?,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            Outcome::json(&list)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = run(&cli).and_then(|o| {
        match &cli.out {
            Some(path) => {
                fs::write(path, &o.text).with_context(|| format!("writing {}", path.display()))?
            }
            None => print!("{}", o.text),
        }
        Ok(o.code)
    });
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
