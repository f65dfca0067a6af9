//! `edcrg`: evaluate CRGs, generate constructions, report bounds on the
//! edit distance function of `Forb(K_{2,t})`, and run the oracles.

mod commands;
mod output;

use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use output::Format;

#[derive(Debug, Parser)]
#[command(name = "edcrg", version, about = "Edit distance of Forb(K_{2,t}) via colored regularity graphs")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Human, global = true)]
    format: Format,
    /// Cap on worker threads.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Work with a CRG file.
    #[command(subcommand)]
    Crg(CrgCommand),
    /// Generate a construction's CRG, e.g. `gen paley(13)` or
    /// `gen --construction paley --params q=13`.
    Gen(GenArgs),
    /// Bounds on ed(p).
    #[command(subcommand)]
    Bounds(BoundsCommand),
    /// Brute-force oracles.
    #[command(subcommand)]
    Oracle(OracleCommand),
    /// Run a self-check suite.
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::Quick)]
        suite: SuiteArg,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SuiteArg {
    Quick,
    Paper,
}

#[derive(Debug, Args)]
struct CrgProb {
    /// CRG file.
    #[arg(long)]
    crg: PathBuf,
    /// Edge probability, `a/b` or decimal.
    #[arg(long)]
    p: String,
    /// Solve in exact rational arithmetic.
    #[arg(long)]
    exact: bool,
}

#[derive(Debug, Subcommand)]
enum CrgCommand {
    /// f_K(p) and g_K(p).
    Eval(CrgProb),
    /// Whether the CRG is p-core, with its minimizers.
    Pcore(CrgProb),
    /// Whether the CRG forbids K_{2,t}.
    Forbid {
        #[arg(long)]
        crg: PathBuf,
        #[arg(long)]
        t: usize,
    },
}

#[derive(Debug, Args)]
struct GenArgs {
    /// Call form such as `triangular_complement(6)`.
    call: Option<String>,
    #[arg(long, conflicts_with = "call")]
    construction: Option<String>,
    /// `key=value` pairs, comma separated.
    #[arg(long, requires = "construction")]
    params: Option<String>,
}

#[derive(Debug, Subcommand)]
enum BoundsCommand {
    /// Upper and lower bound at one point.
    At {
        #[arg(long)]
        t: usize,
        #[arg(long)]
        p: String,
    },
    /// Both envelopes sampled on a grid.
    Envelope {
        #[arg(long)]
        t: usize,
        #[arg(long, default_value = "0")]
        from: String,
        #[arg(long, default_value = "1")]
        to: String,
        #[arg(long, default_value_t = 101)]
        samples: usize,
    },
    /// Prime powers q whose Füredi lines enter the envelope.
    Qlist {
        #[arg(long)]
        t: usize,
    },
    /// Tangency of an SRG equality line with the general lower bound.
    Tangency {
        #[arg(long)]
        t: usize,
        #[arg(long)]
        d: usize,
    },
    /// Upper curves for t; for 5 <= t <= 8 also the summary list and its
    /// re-derivation.
    Catalog {
        #[arg(long)]
        t: usize,
    },
}

#[derive(Debug, Subcommand)]
enum OracleCommand {
    /// Exact edit distance of a small graph to Forb(K_{2,t}).
    Dist {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        t: usize,
        /// Largest edit count searched.
        #[arg(long, default_value_t = 12)]
        budget: usize,
    },
    /// Edit distances of sampled G(n, p).
    Gnp {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: String,
        #[arg(long)]
        t: usize,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 12)]
        budget: usize,
    },
    /// Grid-search value of g_K(p).
    G {
        #[arg(long)]
        crg: PathBuf,
        #[arg(long)]
        p: String,
        #[arg(long, default_value_t = 100)]
        resolution: usize,
    },
    /// Scan all CRGs up to a given order.
    Scan {
        #[arg(long, default_value_t = 3)]
        max_k: usize,
        #[arg(long)]
        p: String,
        #[arg(long)]
        t: usize,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match commands::run(&cli.command) {
        Ok((out, ok)) => {
            let rendered = out.render(cli.format);
            let written = match &cli.out {
                Some(path) => std::fs::write(path, rendered).map_err(|e| format!("cannot write {}: {e}", path.display())),
                None => std::io::stdout().write_all(rendered.as_bytes()).map_err(|e| e.to_string()),
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
