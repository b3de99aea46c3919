use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use hexapauli::blackhole::{self, ChargeInput};
use hexapauli::certify::{self, CertifyConfig, Scope};
use hexapauli::fano::{self, FlagTable, OperatorLabelling};
use hexapauli::group::{self, DEFAULT_ELEMENT_BUDGET};
use hexapauli::hexagon::{self, HexagonModel};
use hexapauli::{mub, Error, Execution, SCHEMA};

const THREADS_VAR: &str = "HEXAPAULI_THREADS";

#[derive(Parser, Debug)]
#[command(
    name = "hexapauli",
    version,
    about = "Three-qubit Pauli geometry, checked exactly"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Seed for the randomized checks.
    #[arg(long, global = true, default_value_t = blackhole::DEFAULT_SEED)]
    seed: u64,

    /// Number of random configurations per randomized check.
    #[arg(long, global = true, default_value_t = blackhole::DEFAULT_TRIALS)]
    trials: usize,

    /// Element and search-node budget for group closures and automorphism search.
    #[arg(long, global = true, default_value_t = DEFAULT_ELEMENT_BUDGET)]
    budget: usize,

    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the 7x7 product table (1) or its letter-labelled form (2).
    Table { which: u8 },
    /// Run assertion suites; exits nonzero if any assertion fails.
    Certify {
        #[arg(default_value = "all", value_parser = parse_scope)]
        scope: Scope,
    },
    /// Write a graph in DOT format.
    ExportGraph {
        #[arg(value_enum)]
        which: GraphKind,
    },
    /// Evaluate J4 and the entropy for charges given as JSON (a path, `-` for stdin, or inline).
    Entropy { input: String },
    /// List the orbits of the order-7 automorphism on the 63 operators.
    Orbits,
    /// Build the nine eigenbases and check they are mutually unbiased.
    MubReport,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Dot,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum GraphKind {
    Hexagon,
    Heawood,
    Coxeter,
    #[value(name = "fano_incidence", alias = "fano-incidence")]
    FanoIncidence,
    #[value(name = "oriented_fano", alias = "oriented-fano")]
    OrientedFano,
}

fn parse_scope(s: &str) -> Result<Scope, String> {
    s.parse()
}

fn format_or(cli: &Cli, default: Format, allowed: &[Format]) -> Result<Format> {
    let f = cli.format.unwrap_or(default);
    if !allowed.contains(&f) {
        bail!("format {f:?} is not available for this command");
    }
    Ok(f)
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn configure_threads() -> Result<()> {
    let Ok(raw) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| anyhow!("{THREADS_VAR} must be a positive integer, got {raw:?}"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .context("configuring the thread pool")
}

fn table(cli: &Cli, which: u8) -> Result<String> {
    let f = format_or(cli, Format::Csv, &[Format::Csv, Format::Json])?;
    let t = FlagTable::standard();
    match (which, f) {
        (1, Format::Csv) => Ok(t.to_csv()),
        (2, Format::Csv) => Ok(hexagon::table2_csv()),
        (1, _) => {
            let rows: Vec<Value> = (0..7)
                .map(|i| {
                    let cells: Vec<Value> = (0..7)
                        .map(|j| json!({ "entry": t.entry(i, j).to_string(), "symmetric": t.flag_mask[i][j] }))
                        .collect();
                    json!({ "line": t.labelling.line_ops[i].to_string(), "cells": cells })
                })
                .collect();
            let cols: Vec<String> = t
                .labelling
                .point_ops
                .iter()
                .map(|p| p.to_string())
                .collect();
            Ok(pretty(
                &json!({ "schema": SCHEMA, "table": 1, "points": cols, "rows": rows }),
            ))
        }
        (2, _) => {
            let grid = hexagon::table2_grid();
            let rows: Vec<Value> = grid
                .iter()
                .enumerate()
                .map(|(r, row)| {
                    json!({
                        "line": format!("i{}", r + 1),
                        "cells": row.iter().map(|l| l.to_string()).collect::<Vec<_>>(),
                    })
                })
                .collect();
            let cols: Vec<String> = (1..=7).map(|k| format!("h{k}")).collect();
            Ok(pretty(
                &json!({ "schema": SCHEMA, "table": 2, "points": cols, "rows": rows }),
            ))
        }
        (n, _) => Err(Error::UnknownTable(n).into()),
    }
}

fn export_graph(cli: &Cli, which: GraphKind) -> Result<String> {
    format_or(cli, Format::Dot, &[Format::Dot])?;
    let m = hexagon::build_hexagon()?;
    Ok(match which {
        GraphKind::Hexagon => hexagon::hexagon_dot(&m),
        GraphKind::Heawood | GraphKind::Coxeter => {
            let fr = hexagon::flag_removal_components(&m, cli.budget)?;
            if which == GraphKind::Heawood {
                hexagon::component_dot("heawood", &fr.heawood, &m)
            } else {
                hexagon::component_dot("coxeter", &fr.coxeter, &m)
            }
        }
        GraphKind::FanoIncidence => FlagTable::standard().incidence_dot(),
        GraphKind::OrientedFano => {
            let special = fano::special_set();
            let lines = fano::orient_dual_fano(&special, &OperatorLabelling::standard())?;
            fano::oriented_dot(&lines, &special)
        }
    })
}

fn read_input(input: &str) -> Result<String> {
    if input.trim_start().starts_with('{') {
        Ok(input.to_string())
    } else if input == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(input).with_context(|| format!("reading {input}"))
    }
}

fn entropy(cli: &Cli, input: &str) -> Result<String> {
    let f = format_or(cli, Format::Json, &[Format::Json, Format::Text])?;
    let parsed: ChargeInput = serde_json::from_str(&read_input(input)?).context(
        "charges must be {\"charges\": {\"a0\": n, ..}} or {\"x\": [[..]], \"y\": [[..]]}",
    )?;
    let c = parsed.to_configuration()?;
    let m = hexagon::build_hexagon()?;
    let dict = blackhole::build_gamma_dictionary(&m)?;
    let e = blackhole::entropy(&c, &dict);
    if f == Format::Text {
        return Ok(format!(
            "J4 (Cartan)   = {}\nJ4 (Cremmer)  = {}\nforms agree   = {}\nclass         = {}\nS = pi sqrt|J4| = {}\n",
            e.j4_cartan, e.j4_cremmer, e.forms_agree, e.classification, e.entropy_text
        ));
    }
    Ok(pretty(&json!({
        "schema": SCHEMA,
        "command": "entropy",
        "j4_cartan": { "numerator": e.j4_cartan, "denominator": "1" },
        "j4_cremmer": {
            "re": { "numerator": e.j4_cremmer_re[0], "denominator": e.j4_cremmer_re[1] },
            "im": { "numerator": e.j4_cremmer_im[0], "denominator": e.j4_cremmer_im[1] },
        },
        "forms_agree": e.forms_agree,
        "classification": e.classification,
        "entropy": e.entropy_text,
    })))
}

fn orbits(cli: &Cli) -> Result<String> {
    let f = format_or(cli, Format::Json, &[Format::Json, Format::Text])?;
    let d = group::orbits_under(&group::build_generators().alpha)?;
    if f == Format::Json {
        return Ok(pretty(&group::orbit_report(&d)));
    }
    let mut out = String::new();
    for o in &d.orbits {
        let tag = o.tag.map(String::from).unwrap_or_else(|| "?".into());
        let members: Vec<String> = o.members.iter().map(|p| p.to_string()).collect();
        out.push_str(&format!("{tag}: {}\n", members.join(" ")));
    }
    Ok(out)
}

fn mub_report(cli: &Cli, m: &HexagonModel) -> Result<(String, bool)> {
    let f = format_or(cli, Format::Json, &[Format::Json, Format::Text])?;
    let sets = mub::build_commuting_sets(m);
    let bases = mub::all_bases(&sets)?;
    let r = mub::certify_unbiased(&bases, Execution::default());
    let text = if f == Format::Json {
        pretty(&mub::mub_report_json(&sets, &bases, &r))
    } else {
        let mut out = String::new();
        for s in &sets {
            let members: Vec<String> = s.members.iter().map(|p| p.to_string()).collect();
            out.push_str(&format!("{}: {}\n", s.name(), members.join(" ")));
        }
        out.push_str(&format!(
            "bases={}, orthogonal={}, unbiased_pairs={}/{}\n",
            r.bases, r.orthogonal, r.unbiased_pairs, r.total_pairs
        ));
        out
    };
    Ok((text, r.passed()))
}

fn run(cli: &Cli) -> Result<bool> {
    configure_threads()?;
    let (text, ok) = match &cli.command {
        Command::Table { which } => (table(cli, *which)?, true),
        Command::Certify { scope } => {
            let f = format_or(cli, Format::Text, &[Format::Text, Format::Json])?;
            let cfg = CertifyConfig {
                seed: cli.seed,
                trials: cli.trials,
                budget: cli.budget,
                exec: Execution::default(),
            };
            let r = certify::certify(*scope, &cfg)?;
            let text = match f {
                Format::Json => pretty(&r.to_json()),
                _ => r.to_text(),
            };
            (text, r.passed())
        }
        Command::ExportGraph { which } => (export_graph(cli, *which)?, true),
        Command::Entropy { input } => (entropy(cli, input)?, true),
        Command::Orbits => (orbits(cli)?, true),
        Command::MubReport => mub_report(cli, &hexagon::build_hexagon()?)?,
    };
    match &cli.out {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("writing {}", path.display()))?
        }
        None => io::stdout().write_all(text.as_bytes())?,
    }
    Ok(ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
