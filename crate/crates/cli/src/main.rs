//! astir: exact tables, polynomials, certified roots, peaks, bounds, series,
//! verification suites, row caches, and b-file cross-checks for partitions
//! without singleton blocks.
//!
//! Exit status: 0 success, 1 verification failure, 2 usage or input error.

mod bfile;
mod suites;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use assoc_stirling::bounds;
use assoc_stirling::cache;
use assoc_stirling::numeric::{format_sig17, ratio_string};
use assoc_stirling::ogf::OgfLadder;
use assoc_stirling::peaks;
use assoc_stirling::poly;
use assoc_stirling::real_roots::{brackets_to_json, DFamilyRoots};
use assoc_stirling::triangles::{Tables, TriangleKind};
use assoc_stirling::Error;

const CACHE_ENV: &str = "ASTIR_CACHE";

#[derive(Parser)]
#[command(
    name = "astir",
    version,
    about = "Exact-arithmetic toolkit for set partitions without singleton blocks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args)]
struct FormatArg {
    /// Output format
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum PolyFamily {
    /// D_n(x): blocks of size >= 2
    D,
    /// S_n(x): Stirling second kind
    S,
    /// C_n(x) = x(x+1)...(x+n-1)
    C,
    /// d_{n,r}(x): cycles longer than r
    Dr,
}

#[derive(Subcommand)]
enum Command {
    /// Print one triangle row
    Table {
        /// Triangle kind: D, S, C, Dr:r, or Dm:m
        #[arg(long)]
        kind: String,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Print a horizontal generating polynomial
    Poly {
        #[arg(long, value_enum)]
        family: PolyFamily,
        #[arg(long)]
        n: usize,
        /// Minimal excluded cycle length for --family dr
        #[arg(long, default_value_t = 1)]
        r: usize,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Certified root brackets of D_n
    Roots {
        #[arg(long)]
        n: usize,
        /// Relative bracket width
        #[arg(long, default_value_t = 1e-6)]
        eps: f64,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Peak location, Darroch check, and the Bell identities at n
    Peak {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Samuelson bound versus the certified leftmost root of D_n
    Bound {
        #[arg(long, conflicts_with = "probe")]
        n: Option<usize>,
        /// Relative refinement of the leftmost root
        #[arg(long, default_value_t = 1e-9)]
        eps: f64,
        /// Comma-separated n values for the leftmost-zero scaling probe
        /// (z*/n^3 per parity with fitted constants; CSV-friendly)
        #[arg(long)]
        probe: Option<String>,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Coefficients of the ordinary generating function f_k
    Series {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        /// Print the whole prefix 0..=n instead of the single coefficient
        #[arg(long)]
        prefix: bool,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Run a named verification suite
    Verify {
        /// One of: recurrence, interlacing, realroots, logconcavity, darroch,
        /// identities, congruence, ogf, asymptotics, bounds, oracle,
        /// normality, all
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 60)]
        max_n: usize,
        #[arg(long, default_value_t = 1e-3)]
        eps: f64,
    },
    /// Export or import the plain-text row cache
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
    /// Compare a b-file (`index value` lines) against exact computation
    Crosscheck {
        #[arg(long)]
        path: PathBuf,
        /// d-total, bell, or d-col (with --k)
        #[arg(long)]
        sequence: String,
        #[arg(long)]
        k: Option<usize>,
    },
}

#[derive(Subcommand)]
enum CacheAction {
    /// Write rows 0..=max-n of the listed kinds
    Export {
        /// Destination (defaults to $ASTIR_CACHE)
        #[arg(long)]
        path: Option<PathBuf>,
        /// Comma-separated kinds, e.g. D,S,Dr:1,Dm:3
        #[arg(long, default_value = "D,S,C")]
        kinds: String,
        #[arg(long, default_value_t = 40)]
        max_n: usize,
    },
    /// Read a cache file, verifying every row against the recurrence
    Import {
        /// Source (defaults to $ASTIR_CACHE)
        #[arg(long)]
        path: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    // Die quietly on a closed pipe (e.g. `astir table ... | head`).
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn require_positive(eps: f64) -> Result<(), Error> {
    if eps > 0.0 && eps.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("eps must be positive, got {eps}")))
    }
}

fn cache_path(path: Option<PathBuf>) -> Result<PathBuf, Error> {
    path.or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from))
        .ok_or_else(|| Error::InvalidArgument(format!("no --path given and {CACHE_ENV} unset")))
}

fn run(cli: Cli) -> Result<bool, Error> {
    match cli.command {
        Command::Table { kind, n, format } => {
            let kind = TriangleKind::parse(&kind)?;
            let mut tables = Tables::new();
            let row = tables.triangle_row(kind, n).to_vec();
            match format.format {
                Format::Json => {
                    let values: Vec<serde_json::Value> =
                        row.iter().map(|v| json!(v.to_string())).collect();
                    println!("{}", serde_json::Value::Array(values));
                }
                Format::Csv => {
                    println!("k,value");
                    for (k, v) in row.iter().enumerate() {
                        println!("{k},{v}");
                    }
                }
                Format::Text => {
                    let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
                    println!("{} row {}: {}", kind, n, cells.join(" "));
                }
            }
            Ok(true)
        }
        Command::Poly { family, n, r, format } => {
            let mut tables = Tables::new();
            let p = match family {
                PolyFamily::D => poly::d_poly(&mut tables, n),
                PolyFamily::S => poly::s_poly(&mut tables, n),
                PolyFamily::C => poly::c_poly(&mut tables, n),
                PolyFamily::Dr => poly::dr_poly(&mut tables, n, r),
            };
            match format.format {
                Format::Json => println!("{}", p.to_json()),
                Format::Csv => {
                    println!("k,coefficient");
                    for (k, c) in p.coeffs().iter().enumerate() {
                        println!("{k},{c}");
                    }
                }
                Format::Text => println!("{p}"),
            }
            Ok(true)
        }
        Command::Roots { n, eps, format } => {
            require_positive(eps)?;
            if n < 2 {
                return Err(Error::InvalidArgument("roots are reported for n >= 2".into()));
            }
            let mut tables = Tables::new();
            let brackets = if n < 4 {
                // D_2 = D_3 = x
                assoc_stirling::real_roots::isolate_roots(&poly::d_poly(&mut tables, n))?
            } else {
                let mut family = DFamilyRoots::new();
                let p = poly::d_poly(&mut tables, n);
                family
                    .all_brackets(&mut tables, n)?
                    .iter()
                    .map(|b| b.refine_relative(&p, eps))
                    .collect()
            };
            match format.format {
                Format::Json => println!("{}", brackets_to_json(&brackets)),
                Format::Csv => {
                    println!("index,lo,hi,approx");
                    for (i, b) in brackets.iter().enumerate() {
                        println!(
                            "{i},{},{},{}",
                            ratio_string(b.lo()),
                            ratio_string(b.hi()),
                            format_sig17(b.approx_f64())
                        );
                    }
                }
                Format::Text => {
                    println!("D_{n} has {} certified real roots:", brackets.len());
                    for b in &brackets {
                        println!(
                            "  ({}, {}) ~ {:.6}",
                            ratio_string(b.lo()),
                            ratio_string(b.hi()),
                            b.approx_f64()
                        );
                    }
                }
            }
            Ok(true)
        }
        Command::Peak { n, format } => {
            let mut tables = Tables::new();
            let report = peaks::peak_report_json(&mut tables, n)?;
            match format.format {
                Format::Json => println!("{report}"),
                Format::Csv => {
                    println!("n,mu,peaks,darroch_ok");
                    let peaks_list = report["peaks"]
                        .as_array()
                        .unwrap()
                        .iter()
                        .map(|v| v.to_string())
                        .collect::<Vec<_>>()
                        .join(";");
                    println!(
                        "{n},{},{},{}",
                        report["mu"].as_str().unwrap(),
                        peaks_list,
                        report["darroch_ok"]
                    );
                }
                Format::Text => {
                    println!("n = {n}");
                    println!("mean block count mu = {}", report["mu"].as_str().unwrap());
                    println!("peak indices = {}", report["peaks"]);
                    println!("darroch |mu - m| < 1: {}", report["darroch_ok"]);
                    println!(
                        "identities a/b/c: {} {} {}",
                        report["identities"]["a"], report["identities"]["b"], report["identities"]["c"]
                    );
                }
            }
            Ok(true)
        }
        Command::Bound { n, eps, probe, format } => {
            require_positive(eps)?;
            let mut tables = Tables::new();
            let mut family = DFamilyRoots::new();
            if let Some(list) = probe {
                let mut ns = Vec::new();
                for tok in list.split(',') {
                    ns.push(tok.trim().parse::<usize>().map_err(|_| {
                        Error::InvalidArgument(format!("bad probe entry {tok:?}"))
                    })?);
                }
                let probe = bounds::leftmost_scaling_probe(&mut tables, &mut family, &ns, eps)?;
                match format.format {
                    Format::Json => {
                        let rows: Vec<serde_json::Value> = probe
                            .rows
                            .iter()
                            .map(|r| {
                                json!({
                                    "n": r.n,
                                    "parity": r.parity,
                                    "x_minus": format_sig17(r.x_minus),
                                    "z_star": format_sig17(r.z_star),
                                    "ratio": format_sig17(r.ratio),
                                })
                            })
                            .collect();
                        println!(
                            "{}",
                            json!({
                                "rows": rows,
                                "fitted_c_even": probe.fitted_c_even,
                                "fitted_c_odd": probe.fitted_c_odd,
                                "residuals": probe.residuals,
                            })
                        );
                    }
                    _ => {
                        print!("{}", probe.to_csv());
                        if let Some(c) = probe.fitted_c_even {
                            println!("# fitted c_even = {}", format_sig17(c));
                        }
                        if let Some(c) = probe.fitted_c_odd {
                            println!("# fitted c_odd = {}", format_sig17(c));
                        }
                    }
                }
                return Ok(true);
            }
            let n = n.ok_or_else(|| Error::InvalidArgument("bound needs --n or --probe".into()))?;
            let report = bounds::samuelson_vs_actual(&mut tables, &mut family, n, eps)?;
            match format.format {
                Format::Json => println!("{}", report.to_json()),
                Format::Csv => {
                    println!("n,x_minus,z_star,ratio");
                    println!(
                        "{n},{},{},{}",
                        format_sig17(report.x_minus),
                        format_sig17(report.z_star_approx),
                        format_sig17(report.estimate_over_actual)
                    );
                }
                Format::Text => {
                    println!("n = {n} (deg D_n = {})", n / 2);
                    println!("a1 = {}", ratio_string(&report.a1));
                    println!("a2 = {}", ratio_string(&report.a2));
                    println!("samuelson x- ~ {:.6}", report.x_minus);
                    println!(
                        "leftmost root z* in ({}, {}) ~ {:.6}",
                        ratio_string(report.z_star_bracket.lo()),
                        ratio_string(report.z_star_bracket.hi()),
                        report.z_star_approx
                    );
                    println!("|x-| / |z*| = {:.6}", report.estimate_over_actual);
                }
            }
            Ok(true)
        }
        Command::Series { k, n, prefix, format } => {
            if k < 1 {
                return Err(Error::InvalidArgument("series needs k >= 1".into()));
            }
            let mut ladder = OgfLadder::new();
            let f = ladder.f_k(k)?;
            if prefix {
                let coeffs = f.series_prefix(n)?;
                match format.format {
                    Format::Json => {
                        let arr: Vec<serde_json::Value> =
                            coeffs.iter().map(|c| json!(ratio_string(c))).collect();
                        println!("{}", serde_json::Value::Array(arr));
                    }
                    Format::Csv => {
                        println!("n,coefficient");
                        for (i, c) in coeffs.iter().enumerate() {
                            println!("{i},{}", ratio_string(c));
                        }
                    }
                    Format::Text => {
                        let cells: Vec<String> = coeffs.iter().map(ratio_string).collect();
                        println!("[x^0..x^{n}] f_{k} = {}", cells.join(" "));
                    }
                }
            } else {
                let c = f.series_coeff(n)?;
                match format.format {
                    Format::Json => println!("{}", json!(ratio_string(&c))),
                    Format::Csv => println!("n,coefficient\n{n},{}", ratio_string(&c)),
                    Format::Text => println!("[x^{n}] f_{k} = {}", ratio_string(&c)),
                }
            }
            Ok(true)
        }
        Command::Verify { suite, max_n, eps } => {
            require_positive(eps)?;
            let mut ctx = suites::SuiteContext::new(max_n, eps);
            let ok = suites::run_suite(&mut ctx, &suite)?;
            println!("{}", if ok { "verification passed" } else { "verification FAILED" });
            Ok(ok)
        }
        Command::Cache { action } => match action {
            CacheAction::Export { path, kinds, max_n } => {
                let path = cache_path(path)?;
                let mut tables = Tables::new();
                let mut out = String::new();
                for token in kinds.split(',') {
                    let kind = TriangleKind::parse(token.trim())?;
                    out.push_str(&cache::export_rows(&mut tables, kind, max_n));
                }
                std::fs::write(&path, &out)?;
                println!("wrote {} lines to {}", out.lines().count(), path.display());
                Ok(true)
            }
            CacheAction::Import { path } => {
                let path = cache_path(path)?;
                let text = std::fs::read_to_string(&path)?;
                let mut tables = Tables::new();
                let report = cache::import(&mut tables, &text)?;
                println!(
                    "verified and accepted {} rows across {} kinds",
                    report.rows_accepted, report.kinds
                );
                Ok(true)
            }
        },
        Command::Crosscheck { path, sequence, k } => {
            let kind = bfile::SequenceKind::parse(&sequence, k)?;
            let text = std::fs::read_to_string(&path)?;
            let mut tables = Tables::new();
            match bfile::crosscheck(&mut tables, kind, &text)? {
                bfile::CrosscheckOutcome::Agreement { entries } => {
                    println!("all {entries} entries agree");
                    Ok(true)
                }
                bfile::CrosscheckOutcome::Empty => {
                    eprintln!("warning: b-file has no data lines; vacuous agreement");
                    println!("all 0 entries agree");
                    Ok(true)
                }
                bfile::CrosscheckOutcome::Mismatch { index, file_value, computed } => {
                    println!("mismatch at index {index}: file has {file_value}, computed {computed}");
                    Ok(false)
                }
            }
        }
    }
}
