use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use fcgraph::dims::{dims_table, DimsRow, DEFAULT_MAX_N};
use fcgraph::json::{combination_terms, combination_value, graph_value, parse_combination, parse_graph};
use fcgraph::suites::{run_suite, RunConfig, Suite, SuiteReport};
use fcgraph_core::fourterm::{path_tree, tree_action, FourTermWorkspace};
use fcgraph_core::invariants::{framed_chromatic, w_invariant_with, WBase};
use fcgraph_core::reduction::{psi, red_normal_form};
use fcgraph_core::{canonical_form, LinearCombination, Scalar};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "fcgraph", version, about = "Framed colored graphs, 4-term relations and their invariants")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Seed for the randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads (defaults to the number of cores).
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Basis {
    /// Red-only coordinates.
    Red,
    /// All-black coordinates.
    Black,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Base {
    MinusTwo,
    Two,
}

#[derive(Subcommand)]
enum Command {
    /// Graded dimensions of the quotient and its primitive parts.
    Dims {
        #[arg(long, default_value_t = DEFAULT_MAX_N)]
        max_n: usize,
        /// Allow gradings above the default limit.
        #[arg(long)]
        allow_large: bool,
    },
    /// Run a verification suite and print its report.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long)]
        max_n: Option<usize>,
        /// Number of seeded samples in the randomized checks.
        #[arg(long, default_value_t = 128)]
        samples: usize,
        /// Omit per-check timings so that output is reproducible.
        #[arg(long)]
        no_timings: bool,
    },
    /// Framed chromatic polynomial and W of a red graph or combination.
    Invariant {
        /// JSON graph or combination file, `-` for stdin.
        #[arg(long)]
        graph: PathBuf,
        /// Evaluate the chromatic polynomial, e.g. `s0=2,s1=-1/3`.
        #[arg(long)]
        eval: Option<String>,
        #[arg(long, value_enum, default_value_t = Base::MinusTwo)]
        w_base: Base,
    },
    /// Rewrite a graph or combination in the red or black basis.
    Reduce {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_enum)]
        to: Basis,
    },
    /// Act with the framing-0 path on `tree` vertices on a connected red graph.
    Act {
        #[arg(long)]
        tree: usize,
        #[arg(long)]
        graph: PathBuf,
    },
    /// Attach the path tree at every vertex pair and compare the classes.
    Attach {
        #[arg(long)]
        tree: usize,
        #[arg(long)]
        graph: PathBuf,
    },
}

/// Input problems exit with status 2, failed verification with status 1.
enum Failure {
    Input(anyhow::Error),
    Verification,
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Failure {
        Failure::Input(e.into())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    if let Some(workers) = cli.workers {
        if workers == 0 {
            return Err(anyhow!("--workers must be positive").into());
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build_global()
            .context("starting worker pool")?;
    }
    let format = cli.format;
    match cli.command {
        Command::Dims { max_n, allow_large } => {
            if max_n > DEFAULT_MAX_N && !allow_large {
                return Err(anyhow!("--max-n {max_n} exceeds {DEFAULT_MAX_N}; pass --allow-large to proceed").into());
            }
            print_dims(format, &dims_table(max_n))?;
        }
        Command::Verify { suite, max_n, samples, no_timings } => {
            let cfg = RunConfig {
                max_n: max_n.unwrap_or(suite.default_max_n()),
                seed: cli.seed,
                samples,
                timings: !no_timings,
            };
            let report = run_suite(suite, &cfg);
            print_report(format, &report)?;
            if !report.passed {
                return Err(Failure::Verification);
            }
        }
        Command::Invariant { graph, eval, w_base } => {
            let x = read_input(&graph)?;
            let base = match w_base {
                Base::MinusTwo => WBase::MinusTwo,
                Base::Two => WBase::Two,
            };
            let chromatic = framed_chromatic(&x)?;
            let w = w_invariant_with(&x, base)?;
            let mut out = json!({"chromatic": chromatic.to_string(), "w": w.to_string()});
            if let Some(spec) = eval {
                let (s0, s1) = parse_eval(&spec)?;
                out["value"] = json!(chromatic.eval(&s0, &s1).to_string());
            }
            print_record(format, &out)?;
        }
        Command::Reduce { graph, to } => {
            let x = read_input(&graph)?;
            let y = match to {
                Basis::Red => red_normal_form(&x),
                Basis::Black => psi(&x),
            };
            print_combination(format, &y)?;
        }
        Command::Act { tree, graph } => {
            let gamma = parse_graph(&read_text(&graph)?)?;
            if tree == 0 {
                return Err(anyhow!("--tree must be positive").into());
            }
            let key = tree_action(&path_tree(tree), &gamma)?;
            let x = LinearCombination::basis(key.clone());
            let chromatic = framed_chromatic(&x)?;
            let w = w_invariant_with(&x, WBase::MinusTwo)?;
            let out = json!({
                "graph": graph_value(&key.to_graph()),
                "chromatic": chromatic.to_string(),
                "w": w.to_string(),
            });
            print_record(format, &out)?;
        }
        Command::Attach { tree, graph } => {
            let gamma = parse_graph(&read_text(&graph)?)?;
            if tree == 0 {
                return Err(anyhow!("--tree must be positive").into());
            }
            let mut ws = FourTermWorkspace::default();
            let report = ws.attachment_experiment(&path_tree(tree), &gamma)?;
            let attachments: Vec<Value> = report
                .attachments
                .iter()
                .map(|(t, w, k)| json!({"tree_vertex": t, "graph_vertex": w, "graph": graph_value(&k.to_graph())}))
                .collect();
            let out = json!({"independent": report.independent, "attachments": attachments});
            match format {
                Format::Json => emit(&serde_json::to_string_pretty(&out).expect("serializable"))?,
                Format::Csv => {
                    let mut w = csv::Writer::from_writer(io::stdout());
                    w.write_record(["tree_vertex", "graph_vertex", "graph"]).context("writing CSV")?;
                    for (t, v, k) in &report.attachments {
                        w.write_record([t.to_string(), v.to_string(), graph_value(&k.to_graph()).to_string()])
                            .context("writing CSV")?;
                    }
                    w.flush().context("writing CSV")?;
                }
                Format::Text => {
                    let mut text = format!("independent: {}\n", report.independent);
                    for (t, v, k) in &report.attachments {
                        text.push_str(&format!("{t} {v} {}\n", graph_value(&k.to_graph())));
                    }
                    emit(text.trim_end())?;
                }
            }
        }
    }
    Ok(())
}

fn read_text(path: &Path) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text).context("reading stdin")?;
        Ok(text)
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

/// A single graph object or a list of terms.
fn read_input(path: &Path) -> Result<LinearCombination> {
    let text = read_text(path)?;
    if text.trim_start().starts_with('[') {
        Ok(parse_combination(&text)?)
    } else {
        Ok(LinearCombination::basis(canonical_form(&parse_graph(&text)?)))
    }
}

fn parse_eval(spec: &str) -> Result<(Scalar, Scalar)> {
    let (mut s0, mut s1) = (None, None);
    for part in spec.split(',') {
        let (name, value) = part.split_once('=').ok_or_else(|| anyhow!("expected name=value in {part:?}"))?;
        let value: Scalar = value.trim().parse().map_err(|e| anyhow!("{name}: {e}"))?;
        match name.trim() {
            "s0" => s0 = Some(value),
            "s1" => s1 = Some(value),
            other => bail!("unknown variable {other:?}; expected s0 or s1"),
        }
    }
    match (s0, s1) {
        (Some(a), Some(b)) => Ok((a, b)),
        _ => bail!("--eval needs both s0 and s1"),
    }
}

fn emit(text: &str) -> Result<()> {
    let mut out = io::stdout().lock();
    writeln!(out, "{text}").context("writing output")
}

fn print_dims(format: Format, rows: &[DimsRow]) -> Result<()> {
    match format {
        Format::Json => emit(&serde_json::to_string_pretty(rows).expect("serializable")),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(io::stdout());
            w.write_record(DimsRow::HEADER).context("writing CSV")?;
            for row in rows {
                w.write_record(row.cells().map(|c| c.to_string())).context("writing CSV")?;
            }
            w.flush().context("writing CSV")
        }
        Format::Text => {
            let mut text = DimsRow::HEADER.map(|h| format!("{h:>10}")).concat();
            for row in rows {
                text.push('\n');
                text.push_str(&row.cells().map(|c| format!("{c:>10}")).concat());
            }
            emit(&text)
        }
    }
}

fn print_report(format: Format, report: &SuiteReport) -> Result<()> {
    match format {
        Format::Json => emit(&serde_json::to_string_pretty(report).expect("serializable")),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(io::stdout());
            w.write_record(["suite", "check", "passed", "checked", "detail"]).context("writing CSV")?;
            for c in &report.checks {
                w.write_record([
                    report.suite,
                    &c.name,
                    if c.passed { "true" } else { "false" },
                    &c.checked.to_string(),
                    c.detail.as_deref().unwrap_or(""),
                ])
                .context("writing CSV")?;
            }
            w.flush().context("writing CSV")
        }
        Format::Text => {
            let mut text = format!(
                "{} (max n {}, seed {}): {}",
                report.suite,
                report.max_n,
                report.seed,
                if report.passed { "PASS" } else { "FAIL" }
            );
            for c in &report.checks {
                text.push_str(&format!(
                    "\n  {:<32} {} ({} checked)",
                    c.name,
                    if c.passed { "PASS" } else { "FAIL" },
                    c.checked
                ));
                if let Some(d) = &c.detail {
                    text.push_str(&format!("\n    {d}"));
                }
                if let Some(ms) = c.elapsed_ms {
                    text.push_str(&format!("\n    {ms} ms"));
                }
                if let Some(x) = &c.counterexample {
                    text.push_str(&format!("\n    counterexample: {x}"));
                }
            }
            emit(&text)
        }
    }
}

/// Flat records: nested values are written as JSON in CSV and text output.
fn print_record(format: Format, record: &Value) -> Result<()> {
    let fields = record.as_object().expect("records are objects");
    let cell = |v: &Value| v.as_str().map(str::to_string).unwrap_or_else(|| v.to_string());
    match format {
        Format::Json => emit(&serde_json::to_string(record).expect("serializable")),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(io::stdout());
            w.write_record(fields.keys()).context("writing CSV")?;
            w.write_record(fields.values().map(cell)).context("writing CSV")?;
            w.flush().context("writing CSV")
        }
        Format::Text => emit(&fields.iter().map(|(k, v)| format!("{k}: {}", cell(v))).collect::<Vec<_>>().join("\n")),
    }
}

fn print_combination(format: Format, x: &LinearCombination) -> Result<()> {
    match format {
        Format::Json => emit(&serde_json::to_string(&combination_value(x)).expect("serializable")),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(io::stdout());
            w.write_record(["coeff", "graph"]).context("writing CSV")?;
            for t in combination_terms(x) {
                w.write_record([t.coeff, serde_json::to_string(&t.graph).expect("serializable")])
                    .context("writing CSV")?;
            }
            w.flush().context("writing CSV")
        }
        Format::Text => {
            let lines: Vec<String> = combination_terms(x)
                .into_iter()
                .map(|t| format!("{} * {}", t.coeff, serde_json::to_string(&t.graph).expect("serializable")))
                .collect();
            emit(if lines.is_empty() { "0".to_string() } else { lines.join("\n") }.as_str())
        }
    }
}
