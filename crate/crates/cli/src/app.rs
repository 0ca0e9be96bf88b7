//! Argument definitions and command dispatch.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use dicke_core::{Error, SqueezedVacuumParams};

use crate::config::Config;
use crate::error::{usage, Failure};
use crate::grid::{parse_atoms, parse_half_integer, parse_m, parse_xi};
use crate::sweep::{self, Mode, Order, SweepSpec, PATH_TOLERANCE};
use crate::{oracle, plot, report, table1};

#[derive(Debug, Parser)]
#[command(
    name = "dicke-ent",
    version,
    about = "Entanglement of squeezed-vacuum-driven Dicke states"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// E and rotated variances along a xi grid (default N=100, all m, xi 0:3:0.01)
    SweepXi(SweepArgs),
    /// E across atom numbers of matching parity (default N 2:100, m=1, xi 0.8,1.0)
    SweepN(SweepArgs),
    /// The N=100 table of E for m=10..50 and xi in {0, 0.1, 0.2, 3}
    Table1 {
        /// Compare against the reference values and fail on mismatch
        #[arg(long)]
        check: bool,
    },
    /// Full report for a single point
    Report(ReportArgs),
    /// Run the dense and tensor-product cross-checks
    OracleCheck {
        /// Largest atom number for the tensor-product checks (2..=4)
        #[arg(long, default_value_t = 4)]
        max_n: u32,
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Write a gnuplot script for a sweep CSV
    Plot(PlotArgs),
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Atom number: 100, 2:100 or 4,10,51
    #[arg(long)]
    pub n: Option<String>,
    /// Dicke labels: 10,20 or -3/2 or all
    #[arg(long, allow_hyphen_values = true)]
    pub m: Option<String>,
    /// Field parameter grid: start:stop:step or a list
    #[arg(long)]
    pub xi: Option<String>,
    #[arg(long, value_enum)]
    pub mode: Option<Mode>,
    /// Shorthand for --mode oracle
    #[arg(long, conflicts_with = "mode")]
    pub oracle: bool,
    /// Skip points with vanishing mean spin instead of failing
    #[arg(long)]
    pub skip_degenerate: bool,
    /// Evaluate points on this many worker threads
    #[arg(long)]
    pub jobs: Option<usize>,
    /// CSV destination (default: stdout)
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// key = value file mirroring these flags; flags take precedence
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    #[arg(long)]
    pub n: String,
    #[arg(long, allow_hyphen_values = true)]
    pub m: String,
    #[arg(long)]
    pub xi: String,
    /// Also evaluate the dense path and print the discrepancy
    #[arg(long)]
    pub oracle: bool,
}

#[derive(Debug, Args)]
pub struct PlotArgs {
    #[arg(long, value_enum)]
    pub style: plot::Style,
    /// Sweep CSV to plot
    #[arg(long)]
    pub csv: PathBuf,
    /// Dicke label for fig3 (default 40 when present)
    #[arg(long, allow_hyphen_values = true)]
    pub m: Option<String>,
    /// Script destination (default: stdout)
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn output(path: Option<&Path>) -> Result<Box<dyn Write>, Failure> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(io::stdout().lock()),
    })
}

pub fn resolve_sweep(
    args: &SweepArgs,
    order: Order,
) -> Result<(SweepSpec, Option<PathBuf>), Failure> {
    let cfg = match &args.config {
        Some(path) => Config::load(path)?,
        None => Config::default(),
    };
    let (n_default, m_default, xi_default) = match order {
        Order::ByXi => ("100", "all", "0:3:0.01"),
        Order::ByAtoms => ("2:100", "1", "0.8,1.0"),
    };
    let pick = |flag: &Option<String>, key: &str, default: &str| {
        flag.clone()
            .or_else(|| cfg.get(key).map(str::to_string))
            .unwrap_or_else(|| default.to_string())
    };
    let mode = if args.oracle {
        Mode::Oracle
    } else if let Some(mode) = args.mode {
        mode
    } else if let Some(text) = cfg.get("mode") {
        text.parse()?
    } else if cfg.flag("oracle")? {
        Mode::Oracle
    } else {
        Mode::ClosedForm
    };
    let jobs = match (args.jobs, cfg.get("jobs")) {
        (Some(j), _) => Some(j),
        (None, Some(text)) => Some(text.parse().map_err(|_| {
            usage(format!(
                "config key 'jobs' expects an integer, got '{text}'"
            ))
        })?),
        (None, None) => None,
    };
    if jobs == Some(0) {
        return Err(usage("--jobs must be at least 1"));
    }
    let spec = SweepSpec {
        atoms: parse_atoms(&pick(&args.n, "n", n_default))?,
        m: parse_m(&pick(&args.m, "m", m_default))?,
        xi: parse_xi(&pick(&args.xi, "xi", xi_default))?,
        mode,
        skip_degenerate: args.skip_degenerate || cfg.flag("skip-degenerate")?,
        jobs,
        order,
    };
    let out = args
        .out
        .clone()
        .or_else(|| cfg.get("out").map(PathBuf::from));
    Ok((spec, out))
}

fn cmd_sweep(args: &SweepArgs, order: Order) -> Result<(), Failure> {
    let (spec, out) = resolve_sweep(args, order)?;
    let results = sweep::run(&spec)?;
    let rows = sweep::collect_rows(&results, spec.skip_degenerate)?;
    sweep::write_csv(output(out.as_deref())?, &rows)?;
    eprintln!("{} rows", rows.len());
    let bad = sweep::discrepancies(&results);
    for (p, d) in &bad {
        eprintln!(
            "path mismatch at N={} 2m={} xi={}: {d:.3e}",
            p.n_atoms(),
            p.two_m(),
            p.xi()
        );
    }
    if !bad.is_empty() {
        return Err(Failure::CheckFailed(format!(
            "{} points exceed relative tolerance {PATH_TOLERANCE:e}",
            bad.len()
        )));
    }
    Ok(())
}

fn cmd_table1(check: bool) -> Result<(), Failure> {
    let cells = table1::compute();
    print!("{}", table1::render(&cells));
    if check {
        let bad = table1::mismatches(&cells);
        for line in &bad {
            eprintln!("mismatch: {line}");
        }
        if !bad.is_empty() {
            return Err(Failure::CheckFailed(format!(
                "{} of {} entries outside tolerance",
                bad.len(),
                cells.len()
            )));
        }
        println!("all {} entries within tolerance", cells.len());
    }
    Ok(())
}

fn cmd_report(args: &ReportArgs) -> Result<(), Failure> {
    let n: u32 = args
        .n
        .trim()
        .parse()
        .map_err(|_| usage(format!("invalid atom count '{}'", args.n)))?;
    let two_m = parse_half_integer(&args.m)?;
    let xi = match parse_xi(&args.xi)?.as_slice() {
        [xi] => *xi,
        _ => return Err(usage("report takes a single xi")),
    };
    let params = SqueezedVacuumParams::new(n, two_m, xi).map_err(|e| usage(e.to_string()))?;
    let point = report::build(&params, args.oracle).map_err(|e| match e {
        Error::DegenerateFrame { magnitude } => Failure::Degenerate {
            n_atoms: n,
            two_m,
            xi,
            magnitude,
        },
        other => usage(other.to_string()),
    })?;
    print!("{}", point.text);
    match point.discrepancy {
        Some(d) if !(d <= PATH_TOLERANCE) => {
            Err(Failure::CheckFailed(format!("paths disagree by {d:.3e}")))
        }
        _ => Ok(()),
    }
}

fn cmd_oracle_check(max_n: u32, inject_fault: bool) -> Result<(), Failure> {
    let checks = oracle::run(max_n, inject_fault)?;
    print!("{}", oracle::render(&checks));
    let failed = checks.iter().filter(|c| !c.passed()).count();
    if failed > 0 {
        return Err(Failure::CheckFailed(format!(
            "{failed} of {} checks failed",
            checks.len()
        )));
    }
    println!("all {} checks passed", checks.len());
    Ok(())
}

fn cmd_plot(args: &PlotArgs) -> Result<(), Failure> {
    let summary = plot::summarize(&args.csv)?;
    let two_m = match &args.m {
        Some(text) => Some(parse_half_integer(text)?),
        None => summary.two_m.contains(&80).then_some(80),
    };
    let text = plot::script(args.style, &args.csv, &summary, two_m)?;
    output(args.out.as_deref())?.write_all(text.as_bytes())?;
    Ok(())
}

pub fn run(cli: Cli) -> Result<(), Failure> {
    match &cli.command {
        Command::SweepXi(args) => cmd_sweep(args, Order::ByXi),
        Command::SweepN(args) => cmd_sweep(args, Order::ByAtoms),
        Command::Table1 { check } => cmd_table1(*check),
        Command::Report(args) => cmd_report(args),
        Command::OracleCheck {
            max_n,
            inject_fault,
        } => cmd_oracle_check(*max_n, *inject_fault),
        Command::Plot(args) => cmd_plot(args),
    }
}
