//! Batch verification commands over the soergel engine.
//!
//! Every subcommand prints a table or JSON report and exits zero only
//! when all of its checks pass, so grids can run under CI. A cache
//! directory, given by flag or by SOERGEL_CACHE_DIR, persists built
//! complexes and finished rows of hom dimensions between runs; warm
//! reruns reproduce reports byte for byte.

mod cache;
mod commands;
mod report;

use anyhow::Result;
use clap::{Args, Parser, Subcommand, ValueEnum};
use commands::{parse_range, Ctx, WhichComplex, WhichTest};
use soergel::coxeter::CoxeterSystem;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

#[derive(Parser)]
#[command(
    name = "soergel",
    version,
    about = "Exact verification of Rouquier complex Hom formulas over small Weyl groups"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Args)]
struct Common {
    /// Coxeter type: A1, A2, A3, B2, B3 or G2
    #[arg(long = "type", value_name = "TYPE", default_value = "A2")]
    group: String,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Cache directory; SOERGEL_CACHE_DIR is the fallback
    #[arg(long)]
    cache_dir: Option<PathBuf>,
    /// Worker threads for independent cells
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Per-cell time budget in seconds; unfinished cells are skipped
    #[arg(long)]
    timeout_per_cell: Option<f64>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Verify dim Hom_K(F_x, E_y[i]) in degree d against the
    /// vanishing formula on a grid of cells
    RouquierFormula {
        #[command(flatten)]
        common: Common,
        /// Comma-separated element words, or "all"
        #[arg(long, default_value = "all")]
        x: String,
        /// Comma-separated element words, or "all"
        #[arg(long, default_value = "all")]
        y: String,
        /// Shift range lo:hi
        #[arg(long, value_parser = parse_range, allow_hyphen_values = true, default_value = "-4:4")]
        i_range: (i64, i64),
        /// Internal degree range lo:hi
        #[arg(long, value_parser = parse_range, allow_hyphen_values = true, default_value = "-2:12")]
        d_range: (i64, i64),
    },
    /// Test exactness of augmented complexes against the support
    /// filtration, element by element
    DeltaExact {
        #[command(flatten)]
        common: Common,
        /// Comma-separated element words, or "all"
        #[arg(long, default_value = "all")]
        w: String,
        /// Which augmented complex to build
        #[arg(long, value_enum, default_value_t = WhichComplex::F)]
        which: WhichComplex,
        /// Which exactness test to run; defaults to the matching one
        #[arg(long, value_enum)]
        test: Option<WhichTest>,
    },
    /// Check that every support subquotient of F_x and E_x minimizes
    /// to zero except the expected standard line at y = x
    Almostsplit {
        #[command(flatten)]
        common: Common,
        /// Comma-separated element words, or "all"
        #[arg(long, default_value = "all")]
        x: String,
    },
    /// Cohomology of the complex of a braid word, with the expected
    /// identification in degree zero
    Cohomology {
        #[command(flatten)]
        common: Common,
        /// Braid word such as "s1 s2^-1 s1"
        #[arg(long)]
        word: String,
    },
    /// Standard and costandard characters of a Bott-Samelson bimodule
    Characters {
        #[command(flatten)]
        common: Common,
        /// Generator word such as "s1 s2 s1", or "e"
        #[arg(long)]
        word: String,
    },
    /// Raw Hom dimensions between the complexes of two braid words
    Homdim {
        #[command(flatten)]
        common: Common,
        /// Braid word of the source complex
        #[arg(long)]
        source: String,
        /// Braid word of the target complex
        #[arg(long)]
        target: String,
        /// Shift range lo:hi
        #[arg(long, value_parser = parse_range, allow_hyphen_values = true, default_value = "-2:2")]
        i_range: (i64, i64),
        /// Internal degree range lo:hi
        #[arg(long, value_parser = parse_range, allow_hyphen_values = true, default_value = "0:8")]
        d_range: (i64, i64),
    },
}

fn make_ctx(common: &Common) -> Result<Ctx> {
    let sys = CoxeterSystem::build(&common.group).map_err(|e| anyhow::anyhow!("{}", e))?;
    let dir = common
        .cache_dir
        .clone()
        .or_else(|| std::env::var_os("SOERGEL_CACHE_DIR").map(PathBuf::from));
    let cache = cache::Cache::open(dir.as_deref())?;
    Ok(Ctx {
        sys,
        group: common.group.clone(),
        cache,
        jobs: common.jobs,
        timeout_per_cell: common.timeout_per_cell.map(Duration::from_secs_f64),
    })
}

fn emit<T: serde::Serialize>(format: Format, report: &T, table: String, pass: bool) -> ExitCode {
    match format {
        Format::Table => print!("{}", table),
        Format::Json => println!("{}", serde_json::to_string_pretty(report).unwrap()),
    }
    if pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    Ok(match cli.cmd {
        Cmd::RouquierFormula {
            common,
            x,
            y,
            i_range,
            d_range,
        } => {
            let ctx = make_ctx(&common)?;
            let r = commands::rouquier_formula(&ctx, &x, &y, i_range, d_range)?;
            emit(common.format, &r, r.to_table(), r.summary.all_pass())
        }
        Cmd::DeltaExact {
            common,
            w,
            which,
            test,
        } => {
            let ctx = make_ctx(&common)?;
            let r = commands::delta_exact(&ctx, &w, which, test)?;
            emit(common.format, &r, r.to_table(), r.all_pass)
        }
        Cmd::Almostsplit { common, x } => {
            let ctx = make_ctx(&common)?;
            let r = commands::almostsplit(&ctx, &x)?;
            emit(common.format, &r, r.to_table(), r.all_pass)
        }
        Cmd::Cohomology { common, word } => {
            let ctx = make_ctx(&common)?;
            let r = commands::cohomology_cmd(&ctx, &word)?;
            emit(common.format, &r, r.to_table(), r.all_pass)
        }
        Cmd::Characters { common, word } => {
            let ctx = make_ctx(&common)?;
            let r = commands::characters_cmd(&ctx, &word)?;
            emit(common.format, &r, r.to_table(), r.consistent)
        }
        Cmd::Homdim {
            common,
            source,
            target,
            i_range,
            d_range,
        } => {
            let ctx = make_ctx(&common)?;
            let r = commands::homdim(&ctx, &source, &target, i_range, d_range)?;
            emit(common.format, &r, r.to_table(), true)
        }
    })
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {:#}", e);
            ExitCode::from(2)
        }
    }
}
