use std::collections::HashSet;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use triquad_core::classifier::classify_with;
use triquad_core::formulas::RouteRegistry;
use triquad_core::report::{
    csv_writer, quad_query, scan, verify_examples, write_csv_header, write_csv_record, QuadQuery, ScanFilter,
    ScanOptions, ScanRecord,
};
use triquad_core::{Config, Context, Error, DEFAULT_CEILING};

const EXIT_REGRESSION: u8 = 1;
const EXIT_BAD_INPUT: u8 = 2;
const EXIT_RANGE: u8 = 3;

/// 2-class groups of L_d = Q(zeta_8, sqrt d) for odd square-free d.
#[derive(Parser)]
#[command(name = "triquad", version)]
struct Cli {
    /// Class-group cache file (line-delimited, append-only).
    #[arg(long, global = true)]
    cache: Option<PathBuf>,

    /// Largest d accepted.
    #[arg(long, global = true, default_value_t = DEFAULT_CEILING)]
    ceiling: u64,

    /// Search bound for the Diophantine parametrizations.
    #[arg(long, global = true)]
    search_bound: Option<u64>,

    /// Comma-separated h2 routes to use, in order (see `routes`).
    #[arg(long, global = true, value_delimiter = ',')]
    routes: Option<Vec<String>>,

    /// Add per-record timing (breaks byte-identical output).
    #[arg(long, global = true)]
    timing: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify Cl_2(L_d) for one d.
    Classify {
        d: u64,
        #[arg(long)]
        json: bool,
    },
    /// Classify every odd square-free d in a range.
    Scan {
        #[arg(long)]
        min: u64,
        #[arg(long)]
        max: u64,
        /// 24, 222, rank2, rank3 or all.
        #[arg(long, default_value = "all")]
        filter: String,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Recompute the published example values.
    VerifyPaper {
        #[arg(long)]
        json: bool,
    },
    /// Query a quadratic field Q(sqrt m): h2, structure or unit.
    Quad {
        #[arg(allow_negative_numbers = true)]
        m: i64,
        query: String,
    },
    /// List the available h2 routes.
    Routes,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Integrity(_) => EXIT_REGRESSION,
        Error::OutOfRange(_) | Error::SearchExhausted { .. } | Error::Inconclusive { .. } => EXIT_RANGE,
        _ => EXIT_BAD_INPUT,
    }
}

fn io_err(e: io::Error) -> Error {
    Error::Precondition(format!("write failed: {e}"))
}

fn registry(cli: &Cli) -> Result<RouteRegistry, Error> {
    match &cli.routes {
        None => Ok(RouteRegistry::standard()),
        Some(names) => {
            let names: Vec<&str> = names.iter().map(String::as_str).collect();
            RouteRegistry::select(&names)
        }
    }
}

fn run(cli: &Cli, ctx: &Context, out: &mut impl Write) -> Result<u8, Error> {
    let registry = registry(cli)?;
    match &cli.command {
        Command::Classify { d, json } => {
            let t = Instant::now();
            let v = classify_with(ctx, &registry, *d)?;
            if *json {
                let mut r = ScanRecord::from(&v);
                if cli.timing {
                    r.timing_ms = Some(t.elapsed().as_secs_f64() * 1e3);
                }
                writeln!(out, "{}", r.to_json()).map_err(io_err)?;
            } else {
                writeln!(out, "{v}").map_err(io_err)?;
            }
        }
        Command::Scan { min, max, filter, format } => {
            let opts = ScanOptions { min: *min, max: *max, filter: filter.parse::<ScanFilter>()?, timing: cli.timing };
            let result = scan(ctx, &registry, &opts)?;
            match format {
                Format::Csv => {
                    let mut w = csv_writer(&mut *out);
                    write_csv_header(&mut w)?;
                    for r in &result.records {
                        write_csv_record(&mut w, r)?;
                    }
                    w.flush().map_err(io_err)?;
                    drop(w);
                    writeln!(out, "# {}", result.summary).map_err(io_err)?;
                }
                Format::Json => {
                    for r in &result.records {
                        writeln!(out, "{}", r.to_json()).map_err(io_err)?;
                    }
                    let footer = serde_json::json!({ "summary": result.summary });
                    writeln!(out, "{footer}").map_err(io_err)?;
                }
            }
        }
        Command::VerifyPaper { json } => {
            let report = verify_examples(ctx, &registry)?;
            if *json {
                writeln!(out, "{}", serde_json::to_string_pretty(&report).expect("report serializes"))
                    .map_err(io_err)?;
            } else {
                writeln!(out, "{report}").map_err(io_err)?;
            }
            if !report.all_pass() {
                return Ok(EXIT_REGRESSION);
            }
        }
        Command::Quad { m, query } => {
            let answer = quad_query(ctx, *m, query.parse::<QuadQuery>()?)?;
            writeln!(out, "{answer}").map_err(io_err)?;
        }
        Command::Routes => {
            let all = RouteRegistry::all();
            let standard = RouteRegistry::standard().names();
            for r in all.routes() {
                let tag = if standard.contains(&r.name()) { "standard" } else { "opt-in" };
                writeln!(out, "{:<15} {:<9} {}", r.name(), tag, r.description()).map_err(io_err)?;
            }
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut config = Config::with_ceiling(cli.ceiling);
    config.search_bound = cli.search_bound;
    let ctx = Context::new(config);

    let mut known = HashSet::new();
    if let Some(path) = &cli.cache {
        if let Err(e) = ctx.load_cache(path) {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_BAD_INPUT);
        }
        known = ctx.cache().entries().into_iter().map(|e| e.discriminant).collect();
    }

    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let code = match run(&cli, &ctx, &mut out) {
        Ok(c) => c,
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {e}");
            exit_code(&e)
        }
    };
    if out.flush().is_err() {
        return ExitCode::from(EXIT_BAD_INPUT);
    }

    if let Some(path) = &cli.cache {
        if let Err(e) = ctx.save_cache(path, &known) {
            eprintln!("error: {e}");
            return ExitCode::from(code.max(EXIT_BAD_INPUT));
        }
    }
    ExitCode::from(code)
}
