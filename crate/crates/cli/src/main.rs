mod commands;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use commands::{CliError, Ctx, Kind};
use report::{Report, Status};

#[derive(Parser)]
#[command(name = "sextactic", version, about = "Osculating geometry of Fermat curves, computed exactly")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Seed for the randomized coordinate changes of the resultant oracle.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Bits of precision for the complex embeddings shown next to exact values.
    #[arg(long, global = true, default_value_t = 128)]
    precision: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Suppress progress output on stderr.
    #[arg(long, global = true)]
    quiet: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Args)]
struct DegreeArg {
    #[arg(long, short)]
    degree: u32,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Theorem {
    Main,
    InvariantIntersection,
}

#[derive(Subcommand)]
enum Command {
    /// Inflection or sextactic points.
    Points {
        #[command(flatten)]
        d: DegreeArg,
        #[arg(long, value_enum, default_value_t = Kind::Sextactic)]
        kind: Kind,
    },
    /// Tangent lines at the special points, with contact orders.
    Tangents {
        #[command(flatten)]
        d: DegreeArg,
        #[arg(long, value_enum, default_value_t = Kind::Sextactic)]
        kind: Kind,
    },
    /// Osculating conics at the special points, with contact orders.
    Conic {
        #[command(flatten)]
        d: DegreeArg,
        #[arg(long, value_enum, default_value_t = Kind::Sextactic)]
        kind: Kind,
    },
    /// The 2-Hessian and its factorization.
    Hessian2 {
        #[command(flatten)]
        d: DegreeArg,
    },
    /// Singular points of a line arrangement.
    Census {
        #[command(flatten)]
        d: DegreeArg,
        /// e.g. B, M, BzMxNy, xyz+B, F+BzMxNy
        #[arg(long)]
        arrangement: String,
        #[arg(long)]
        with_fermat: bool,
    },
    /// Tjurina total and the quadratic freeness criterion.
    Freeness {
        #[command(flatten)]
        d: DegreeArg,
        #[arg(long)]
        arrangement: String,
        #[arg(long)]
        with_fermat: bool,
    },
    /// Lines through three or more sextactic points.
    Collinear {
        #[command(flatten)]
        d: DegreeArg,
    },
    /// Exact certificates for the concurrency statements.
    Verify {
        #[command(flatten)]
        d: DegreeArg,
        #[arg(long, value_enum)]
        theorem: Theorem,
        /// Only this grid line (index into the 9d lines B, M, N).
        #[arg(long)]
        line_index: Option<usize>,
        #[arg(long, default_value_t = 2)]
        osc_degree: u32,
    },
    /// Every check, for each degree in a range.
    All {
        #[arg(long, default_value_t = 3)]
        d_min: u32,
        #[arg(long, default_value_t = 6)]
        d_max: u32,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(j) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(j).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let progress = !cli.quiet;
    let ctx = |degree: u32| Ctx { degree, seed: cli.seed, precision: cli.precision, progress };
    let (name, degree, uses_seed, result) = match &cli.command {
        Command::Points { d, kind } => ("points", Some(d.degree), false, commands::points(&ctx(d.degree), *kind)),
        Command::Tangents { d, kind } => ("tangents", Some(d.degree), true, commands::tangents(&ctx(d.degree), *kind)),
        Command::Conic { d, kind } => ("conic", Some(d.degree), false, commands::conic(&ctx(d.degree), *kind)),
        Command::Hessian2 { d } => ("hessian2", Some(d.degree), false, commands::hessian2(&ctx(d.degree))),
        Command::Census { d, arrangement, with_fermat } => {
            ("census", Some(d.degree), false, commands::census(&ctx(d.degree), arrangement, *with_fermat))
        }
        Command::Freeness { d, arrangement, with_fermat } => {
            ("freeness", Some(d.degree), false, commands::freeness(&ctx(d.degree), arrangement, *with_fermat))
        }
        Command::Collinear { d } => ("collinear", Some(d.degree), false, commands::collinear(&ctx(d.degree))),
        Command::Verify { d, theorem, line_index, osc_degree } => {
            let c = ctx(d.degree);
            let r = match theorem {
                Theorem::Main => commands::verify_main(&c, *line_index),
                Theorem::InvariantIntersection => commands::verify_invariant(&c, *osc_degree),
            };
            ("verify", Some(d.degree), false, r)
        }
        Command::All { d_min, d_max } => {
            ("all", None, true, commands::all(*d_min, *d_max, cli.seed, cli.precision, progress))
        }
    };
    let outcome = match result {
        Ok(o) => o,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let (report, table) = Report::new(name, degree, uses_seed.then_some(cli.seed), outcome);
    let text = match cli.format {
        Format::Json => serde_json::to_string_pretty(&report).expect("serializable") + "\n",
        Format::Table => table.render(report.status, &report.failures),
    };
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    if report.status == Status::Ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
