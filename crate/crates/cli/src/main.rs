use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod commands;

/// Numerical klt / log canonical classification of surface singularity
/// dual graphs.
#[derive(Parser, Debug)]
#[command(name = "dualgraph", version, about)]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Treat input graphs as non-minimal resolutions (skips the a >= 2r rule).
    #[arg(long, global = true)]
    non_minimal: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GraphInput {
    /// Graph file in the text or JSON format; `-` reads standard input.
    file: PathBuf,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Numerical class with the coefficients of Delta_Y.
    Classify(GraphInput),
    /// Canonical degrees, Delta_Y and discrepancies per curve.
    Discrepancy(GraphInput),
    /// Family of the classification table the graph instantiates.
    Match(GraphInput),
    /// Compare the family's promised class with the computed one.
    Crosscheck(GraphInput),
    /// Blow up a rational point and print the new graph.
    Blowup {
        #[command(flatten)]
        input: GraphInput,
        /// `vertex=<id>,m=<1|2>` or `edge=<id1>:<id2>`.
        #[arg(long)]
        at: String,
    },
    /// Split a cusp of parameter r into a cusp of parameter 1.
    Basechange(GraphInput),
    /// Analyze the cubic a y^2 + x^3 + b x + c over F_p.
    Curve {
        #[arg(long)]
        p: u64,
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
        #[arg(long, allow_hyphen_values = true)]
        b: i64,
        #[arg(long, allow_hyphen_values = true)]
        c: i64,
        /// Also scan for singular points over F_p (1) or F_{p^2} (2).
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=2))]
        scan_ext: Option<u32>,
    },
    /// Enumerate graphs within bounds and cross-check each one.
    Audit {
        #[arg(long)]
        max_vertices: u32,
        #[arg(long)]
        max_a: u32,
        #[arg(long)]
        max_r: u32,
        #[arg(long)]
        max_g: u32,
        #[arg(long)]
        max_edge: u32,
        /// Pinned unmatched graphs; new unmatched graphs fail the audit.
        #[arg(long)]
        allowlist: Option<PathBuf>,
        /// Write this run's unmatched graphs as an allowlist.
        #[arg(long)]
        write_allowlist: Option<PathBuf>,
        /// Worker threads (defaults to all cores).
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Graphviz rendering of the graph.
    Dot(GraphInput),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = commands::Options {
        json: cli.json,
        non_minimal: cli.non_minimal,
    };
    let result = match cli.command {
        Command::Classify(input) => commands::classify(&opts, &input.file),
        Command::Discrepancy(input) => commands::discrepancy(&opts, &input.file),
        Command::Match(input) => commands::family(&opts, &input.file),
        Command::Crosscheck(input) => commands::crosscheck(&opts, &input.file),
        Command::Blowup { input, at } => commands::blowup(&opts, &input.file, &at),
        Command::Basechange(input) => commands::basechange(&opts, &input.file),
        Command::Curve {
            p,
            a,
            b,
            c,
            scan_ext,
        } => commands::curve(&opts, p, a, b, c, scan_ext),
        Command::Audit {
            max_vertices,
            max_a,
            max_r,
            max_g,
            max_edge,
            allowlist,
            write_allowlist,
            jobs,
        } => {
            let bounds = dualgraph_core::EnumBounds {
                max_vertices,
                max_a,
                max_r,
                max_g,
                max_edge_mult: max_edge,
            };
            commands::audit(
                &opts,
                &bounds,
                allowlist.as_deref(),
                write_allowlist.as_deref(),
                jobs,
            )
        }
        Command::Dot(input) => commands::dot(&opts, &input.file),
    };
    match result {
        Ok(out) => {
            print!("{}", out.stdout);
            ExitCode::from(out.code)
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.code())
        }
    }
}
