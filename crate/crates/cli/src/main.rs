//! nanodisc: generate discs, color them, verify witnesses, run the exact
//! solver, cut out blocks, render, and run the standing report.
//!
//! Exit codes: 0 claim holds, 1 claim fails, 2 usage or malformed input,
//! 3 budget exhausted.

mod render;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use nanodisc_core::blocks::{extract_block, split_hemispheres, Side};
use nanodisc_core::coloring::{used_colors, verify, TotalColoring};
use nanodisc_core::constructive::{color_family, explore, ConstructiveError, SearchOutcome};
use nanodisc_core::disc::{check_structure, generate, Nanodisc};
use nanodisc_core::json::{
    block_to_doc, disc_to_doc, doc_to_coloring, doc_to_disc, doc_to_graph, doc_to_problem,
    result_to_doc, to_canonical_string, witness_to_doc, ColoringDoc, GraphDoc, ProblemDoc,
    WitnessDoc,
};
use nanodisc_core::solver::{
    check_no_uniform_radial, export_cnf, solve, Budget, RadialScope, SolveStatus, Symmetry,
};

const EXIT_CLAIM_FAILS: u8 = 1;
const EXIT_BUDGET: u8 = 3;
const BUDGET_ENV: &str = "NANODISC_BUDGET_NODES";
const DEFAULT_WALL: Duration = Duration::from_secs(600);

#[derive(Parser)]
#[command(name = "nanodisc", version, about = "Total colorings of fullerene nanodiscs")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate the canonical disc of a given radius
    Gen {
        #[arg(long)]
        radius: usize,
        /// Output file; stdout when omitted
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Produce a verified coloring witness bundle for a disc
    Color {
        /// Disc graph document
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Strategy::Constructive)]
        strategy: Strategy,
        /// Search node budget (seeded search only; overrides the
        /// NANODISC_BUDGET_NODES variable and the 10-minute default)
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a coloring against a graph
    Verify {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        coloring: PathBuf,
    },
    /// Run the exact solver on a problem or bare graph document
    Solve {
        #[arg(long = "in")]
        input: PathBuf,
        /// Color budget; required when the input is a bare graph document
        #[arg(long)]
        k: Option<u8>,
        /// Search node budget (same precedence as for color)
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the DIMACS CNF encoding here instead of solving
        #[arg(long)]
        cnf: Option<PathBuf>,
    },
    /// Cut one block out of a disc hemisphere
    Blocks {
        /// Disc graph document
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = SideArg::Outer)]
        side: SideArg,
        /// Block index: 1, 3, or 5
        #[arg(long, default_value_t = 1)]
        index: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Render a graph or witness document
    Export {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the standing checks and emit a machine-readable summary
    Report {
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Strategy {
    Constructive,
    SeededSearch,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SideArg {
    Outer,
    Inner,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Dot,
    Svg,
    Json,
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

fn run(cli: Cli) -> Result<u8> {
    match cli.cmd {
        Cmd::Gen { radius, out } => cmd_gen(radius, out.as_deref()),
        Cmd::Color {
            input,
            strategy,
            budget,
            out,
        } => cmd_color(&input, strategy, budget, out.as_deref()),
        Cmd::Verify { graph, coloring } => cmd_verify(&graph, &coloring),
        Cmd::Solve {
            input,
            k,
            budget,
            out,
            cnf,
        } => cmd_solve(&input, k, budget, out.as_deref(), cnf.as_deref()),
        Cmd::Blocks {
            input,
            side,
            index,
            out,
        } => cmd_blocks(&input, side, index, out.as_deref()),
        Cmd::Export { input, format, out } => cmd_export(&input, format, out.as_deref()),
        Cmd::Report { out } => cmd_report(out.as_deref()),
    }
}

/// Writes `content` to `out`, or to stdout when no file is given; the
/// human-readable `note` goes to stdout in the first case and stderr in
/// the second, keeping stdout machine-clean.
fn emit(out: Option<&Path>, content: &str, note: &str) -> Result<()> {
    match out {
        Some(path) => {
            fs::write(path, content).with_context(|| format!("writing {}", path.display()))?;
            if !note.is_empty() {
                println!("{note}");
            }
        }
        None => {
            print!("{content}");
            if !note.is_empty() {
                eprintln!("{note}");
            }
        }
    }
    Ok(())
}

fn read_to_string(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn read_disc(path: &Path) -> Result<Nanodisc> {
    let doc: GraphDoc = serde_json::from_str(&read_to_string(path)?)
        .with_context(|| format!("{} is not a graph document", path.display()))?;
    doc_to_disc(&doc).with_context(|| format!("{} is not a valid disc", path.display()))
}

/// Node budget precedence: explicit flag, then NANODISC_BUDGET_NODES, then
/// a 10-minute wall-clock default.
fn search_budget(flag: Option<u64>) -> Result<Budget> {
    if let Some(n) = flag {
        return Ok(Budget::nodes(n));
    }
    match std::env::var(BUDGET_ENV) {
        Ok(s) => {
            let n: u64 = s
                .parse()
                .with_context(|| format!("{BUDGET_ENV} must be a node count, got {s:?}"))?;
            Ok(Budget::nodes(n))
        }
        Err(_) => Ok(Budget {
            nodes: None,
            wall: Some(DEFAULT_WALL),
        }),
    }
}

fn cmd_gen(radius: usize, out: Option<&Path>) -> Result<u8> {
    let d = generate(radius)?;
    let g = d.graph();
    let faces: usize = d.layers().iter().map(|l| l.faces.len()).sum();
    let note = format!(
        "{} vertices, {} edges, {} faces, girth {}",
        g.vertex_count(),
        g.edge_count(),
        faces,
        g.girth()?
    );
    emit(out, &to_canonical_string(&disc_to_doc(&d)), &note)?;
    Ok(0)
}

fn cmd_color(
    input: &Path,
    strategy: Strategy,
    budget: Option<u64>,
    out: Option<&Path>,
) -> Result<u8> {
    let d = read_disc(input)?;
    let witness = match strategy {
        Strategy::Constructive => match color_family(&d) {
            Ok(w) => w,
            Err(ConstructiveError::RadiusNotInFamily(r)) => {
                eprintln!(
                    "radius {r} is outside the constructive family r = 5+3k; \
                     use --strategy seeded-search"
                );
                return Ok(2);
            }
            Err(e) => return Err(e.into()),
        },
        Strategy::SeededSearch => match explore(&d, &search_budget(budget)?)? {
            SearchOutcome::Witness(w) => *w,
            SearchOutcome::Inconclusive(attempts) => {
                let nodes: u64 = attempts.iter().map(|a| a.stats.nodes).sum();
                eprintln!(
                    "inconclusive: budget exhausted after {} strategies, {} nodes",
                    attempts.len(),
                    nodes
                );
                return Ok(EXIT_BUDGET);
            }
            SearchOutcome::Unsatisfiable(_) => {
                eprintln!("no 4-total coloring exists for this instance");
                return Ok(EXIT_CLAIM_FAILS);
            }
        },
    };
    if !(witness.report.is_proper() && witness.report.is_total()) {
        bail!("witness failed verification; this is a bug");
    }
    let note = format!("Type 1 witness: {} colors", used_colors(&witness.coloring));
    emit(out, &to_canonical_string(&witness_to_doc(&witness)), &note)?;
    Ok(0)
}

fn cmd_verify(graph: &Path, coloring: &Path) -> Result<u8> {
    let gdoc: GraphDoc = serde_json::from_str(&read_to_string(graph)?)
        .with_context(|| format!("{} is not a graph document", graph.display()))?;
    let g = doc_to_graph(&gdoc)?;
    let cdoc: ColoringDoc = serde_json::from_str(&read_to_string(coloring)?)
        .with_context(|| format!("{} is not a coloring document", coloring.display()))?;
    let c = doc_to_coloring(&cdoc)?;
    let report = verify(&g, &c)?;
    for conflict in &report.conflicts {
        println!("conflict: {conflict}");
    }
    if !report.uncolored.is_empty() {
        let n = report.uncolored.len();
        println!("{n} uncolored element{}", if n == 1 { "" } else { "s" });
    }
    if report.is_proper() && report.is_total() {
        println!("proper and total with {} colors", used_colors(&c));
        Ok(0)
    } else {
        Ok(EXIT_CLAIM_FAILS)
    }
}

fn cmd_solve(
    input: &Path,
    k: Option<u8>,
    budget: Option<u64>,
    out: Option<&Path>,
    cnf: Option<&Path>,
) -> Result<u8> {
    let text = read_to_string(input)?;
    let parts = if let Ok(doc) = serde_json::from_str::<ProblemDoc>(&text) {
        doc_to_problem(&doc)?
    } else {
        let gdoc: GraphDoc = serde_json::from_str(&text)
            .with_context(|| format!("{} is neither a problem nor a graph document", input.display()))?;
        let Some(k) = k else {
            bail!("--k is required when the input is a bare graph document");
        };
        nanodisc_core::json::ProblemParts {
            graph: doc_to_graph(&gdoc)?,
            k,
            pins: TotalColoring::new(k),
            symmetry: Symmetry::FixElement,
            distinct: Vec::new(),
        }
    };

    if let Some(path) = cnf {
        let dimacs = export_cnf(&parts.as_problem())?;
        emit(Some(path), &dimacs, "wrote DIMACS encoding")?;
        return Ok(0);
    }

    let result = solve(&parts.as_problem(), &search_budget(budget)?)?;
    let (code, note) = match &result.status {
        SolveStatus::Sat(c) => {
            let report = verify(&parts.graph, c)?;
            if !(report.is_proper() && report.is_total()) {
                bail!("solver witness failed verification; this is a bug");
            }
            (0, format!("sat with {} colors", used_colors(c)))
        }
        SolveStatus::Unsat => (EXIT_CLAIM_FAILS, "unsat".to_string()),
        SolveStatus::BudgetExceeded => (
            EXIT_BUDGET,
            format!("budget exceeded after {} nodes", result.stats.nodes),
        ),
    };
    emit(out, &to_canonical_string(&result_to_doc(&result)), &note)?;
    Ok(code)
}

fn cmd_blocks(input: &Path, side: SideArg, index: usize, out: Option<&Path>) -> Result<u8> {
    if !(index == 1 || index == 3 || index == 5) {
        bail!("--index must be 1, 3, or 5");
    }
    let d = read_disc(input)?;
    let (outer, inner) = split_hemispheres(&d)?;
    let h = match side {
        SideArg::Outer => outer,
        SideArg::Inner => inner,
    };
    let b = extract_block(&h, index)?;
    let g = b.graph();
    let note = format!(
        "{} block {}: {} vertices, {} edges, {} semiedges",
        match h.side() {
            Side::Outer => "outer",
            Side::Inner => "inner",
        },
        index,
        g.vertex_count(),
        g.edge_count(),
        g.semiedge_count()
    );
    emit(out, &to_canonical_string(&block_to_doc(&b)), &note)?;
    Ok(0)
}

fn cmd_export(input: &Path, format: Format, out: Option<&Path>) -> Result<u8> {
    let text = read_to_string(input)?;
    let witness = serde_json::from_str::<WitnessDoc>(&text).ok();
    let (gdoc, coloring) = match &witness {
        Some(w) => (w.graph.clone(), Some(doc_to_coloring(&w.coloring)?)),
        None => {
            let gdoc: GraphDoc = serde_json::from_str(&text).with_context(|| {
                format!("{} is neither a witness nor a graph document", input.display())
            })?;
            (gdoc, None)
        }
    };

    let content = match format {
        Format::Json => match witness {
            Some(w) => to_canonical_string(&w),
            None => canonical_graph_json(&gdoc)?,
        },
        Format::Dot => {
            let g = doc_to_graph(&gdoc)?;
            render::to_dot(&g, coloring.as_ref())
        }
        Format::Svg => {
            if gdoc.radius.is_some() {
                let d = doc_to_disc(&gdoc)?;
                render::disc_svg(&d, coloring.as_ref())
            } else {
                let g = doc_to_graph(&gdoc)?;
                render::ring_svg(&g, coloring.as_ref())
            }
        }
    };
    emit(out, &content, "")?;
    Ok(0)
}

/// Re-emits a graph document in canonical form, revalidating discs on
/// the way through.
fn canonical_graph_json(gdoc: &GraphDoc) -> Result<String> {
    let doc = if gdoc.radius.is_some() {
        disc_to_doc(&doc_to_disc(gdoc)?)
    } else if gdoc.block.is_some() {
        let mut doc = nanodisc_core::json::graph_to_doc(&doc_to_graph(gdoc)?);
        doc.block = gdoc.block.clone();
        doc
    } else {
        nanodisc_core::json::graph_to_doc(&doc_to_graph(gdoc)?)
    };
    Ok(to_canonical_string(&doc))
}

fn cmd_report(out: Option<&Path>) -> Result<u8> {
    let mut checks: Vec<(String, bool, String)> = Vec::new();

    for r in 2..=8 {
        let (pass, detail) = match generate(r) {
            Ok(d) => {
                let rep = check_structure(&d);
                let failing: Vec<&str> = rep
                    .checks
                    .iter()
                    .filter(|c| !c.pass)
                    .map(|c| c.name.as_str())
                    .collect();
                (rep.is_ok(), if failing.is_empty() {
                    format!("{} invariants", rep.checks.len())
                } else {
                    failing.join(", ")
                })
            }
            Err(e) => (false, e.to_string()),
        };
        checks.push((format!("structure r={r}"), pass, detail));
    }

    for r in [5usize, 8] {
        let (pass, detail) = match generate(r).map_err(anyhow::Error::from).and_then(|d| {
            color_family(&d).map_err(anyhow::Error::from)
        }) {
            Ok(w) => (
                w.report.is_proper() && w.report.is_total(),
                format!(
                    "{} elements, {} colors",
                    w.coloring.len(),
                    used_colors(&w.coloring)
                ),
            ),
            Err(e) => (false, e.to_string()),
        };
        checks.push((format!("family witness r={r}"), pass, detail));
    }

    {
        let (pass, detail) = match generate(2).map_err(anyhow::Error::from).and_then(|d| {
            check_no_uniform_radial(&d, RadialScope::CapOnly, &Budget::UNLIMITED)
                .map_err(anyhow::Error::from)
        }) {
            Ok(res) => match res.status {
                SolveStatus::Unsat => (true, format!("unsat after {} nodes", res.stats.nodes)),
                SolveStatus::Sat(_) => (false, "unexpected witness".into()),
                SolveStatus::BudgetExceeded => (false, "budget exceeded".into()),
            },
            Err(e) => (false, e.to_string()),
        };
        checks.push(("uniform radial impossibility r=2 (caps)".into(), pass, detail));
    }

    let all_pass = checks.iter().all(|(_, pass, _)| *pass);
    for (name, pass, detail) in &checks {
        println!("{} - {name} ({detail})", if *pass { "ok" } else { "FAIL" });
    }
    let doc = serde_json::json!({
        "all_pass": all_pass,
        "checks": checks
            .iter()
            .map(|(name, pass, detail)| serde_json::json!({
                "name": name, "pass": pass, "detail": detail,
            }))
            .collect::<Vec<_>>(),
    });
    let mut body = serde_json::to_string_pretty(&doc)?;
    body.push('\n');
    if let Some(path) = out {
        fs::write(path, &body).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(if all_pass { 0 } else { EXIT_CLAIM_FAILS })
}
