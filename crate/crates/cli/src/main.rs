use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use latchain::dsl::{self, Built};
use latchain::par::Exec;
use latchain::poly::{
    f_from_h, h_from_f, interlaces, is_real_rooted, is_unit_interval_rooted, parse_rat,
    roots_in_interval, sturm_real_root_count, ExactPoly, RootRange,
};
use latchain::poset::{diamond_product, write_poset};
use latchain::report::{write_csv, write_jsonl, CheckReport};
use latchain::verify::{self, default_instances, suite_run, SUITES};

const PASS: u8 = 0;
const FAIL: u8 = 1;
const USAGE: u8 = 2;

#[derive(Parser)]
#[command(
    name = "latchain",
    version,
    about = "Exact chain-polynomial checks for posets and geometric lattices"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite over its seeded corpus or an instance file.
    Suite {
        name: String,
        /// One family string per line; `#` starts a comment.
        #[arg(long)]
        instances: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Worker threads (1 runs sequentially).
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Print only the summary line.
        #[arg(long, short)]
        quiet: bool,
    },
    /// Polynomial utilities; coefficients are lowest degree first, e.g. "1 4 5 2".
    Poly {
        #[command(subcommand)]
        op: PolyOp,
    },
    /// Build a family and write it in the poset text format.
    Build {
        dsl: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum PolyOp {
    /// Real-rootedness (exit 1 if not).
    RealRooted { p: String },
    /// Every root real and in [-1, 0] (exit 1 if not).
    UnitRooted { p: String },
    /// Every root real and in [lo, hi] (exit 1 if not).
    RootsIn {
        p: String,
        #[arg(allow_hyphen_values = true)]
        lo: String,
        #[arg(allow_hyphen_values = true)]
        hi: String,
    },
    /// Distinct real roots, on the whole line or in (lo, hi].
    Count {
        p: String,
        #[arg(allow_hyphen_values = true)]
        lo: Option<String>,
        #[arg(allow_hyphen_values = true)]
        hi: Option<String>,
    },
    /// Whether g interlaces f (exit 1 if not).
    Interlaces { g: String, f: String },
    /// (1-t)^n f(t/(1-t)).
    HFromF { f: String, n: usize },
    /// Inverse of h-from-f.
    FFromH { h: String, n: usize },
    /// Diamond product on the binomial basis.
    Diamond { f: String, g: String },
    /// A_n(t; q) by enumeration of S_n (q = 1 by default).
    Eulerian { n: usize, q: Option<String> },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match run(cli.command) {
        Ok(c) => c,
        Err(msg) => {
            eprintln!("error: {msg}");
            USAGE
        }
    };
    ExitCode::from(code)
}

fn run(cmd: Command) -> Result<u8, String> {
    match cmd {
        Command::Suite {
            name,
            instances,
            seed,
            jobs,
            json,
            csv,
            quiet,
        } => run_suite(
            &name,
            instances.as_deref(),
            seed,
            jobs,
            json.as_deref(),
            csv.as_deref(),
            quiet,
        ),
        Command::Poly { op } => run_poly(op),
        Command::Build { dsl, out } => run_build(&dsl, out.as_deref()),
    }
}

fn read_instances(path: &Path) -> Result<Vec<String>, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    Ok(text
        .lines()
        .map(|l| l.split('#').next().unwrap().trim())
        .filter(|l| !l.is_empty())
        .map(String::from)
        .collect())
}

fn run_suite(
    name: &str,
    instances: Option<&Path>,
    seed: u64,
    jobs: Option<usize>,
    json: Option<&Path>,
    csv: Option<&Path>,
    quiet: bool,
) -> Result<u8, String> {
    if !SUITES.contains(&name) {
        return Err(format!(
            "unknown suite `{name}` (known: {})",
            SUITES.join(", ")
        ));
    }
    let list = match instances {
        Some(p) => read_instances(p)?,
        None => default_instances(name, seed).map_err(|e| e.to_string())?,
    };
    let exec = if jobs == Some(1) {
        Exec::Sequential
    } else {
        Exec::Parallel
    };
    let reports = with_jobs(jobs, || suite_run(name, &list, exec)).map_err(|e| e.to_string())?;
    let stdout = io::stdout();
    let mut out = stdout.lock();
    if !quiet {
        for r in &reports {
            print_report(&mut out, r).map_err(|e| e.to_string())?;
        }
    }
    let failed = reports.iter().filter(|r| !r.passed()).count();
    writeln!(
        out,
        "suite {name}: {} instances, {} checks, {} passed, {failed} failed",
        list.len(),
        reports.len(),
        reports.len() - failed
    )
    .map_err(|e| e.to_string())?;
    if let Some(p) = json {
        let f = File::create(p).map_err(|e| format!("{}: {e}", p.display()))?;
        write_jsonl(BufWriter::new(f), &reports).map_err(|e| e.to_string())?;
    }
    if let Some(p) = csv {
        let f = File::create(p).map_err(|e| format!("{}: {e}", p.display()))?;
        write_csv(BufWriter::new(f), &reports).map_err(|e| e.to_string())?;
    }
    Ok(if failed == 0 { PASS } else { FAIL })
}

fn print_report(out: &mut impl Write, r: &CheckReport) -> io::Result<()> {
    write!(
        out,
        "{:<5} {} | {}",
        r.verdict.as_str(),
        r.instance,
        r.property
    )?;
    if !r.passed() {
        write!(out, " | {}", r.witness)?;
    }
    writeln!(out)
}

#[cfg(feature = "parallel")]
fn with_jobs<R: Send>(jobs: Option<usize>, f: impl FnOnce() -> R + Send) -> R {
    match jobs {
        Some(n) if n > 1 => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(f),
            Err(_) => f(),
        },
        _ => f(),
    }
}

#[cfg(not(feature = "parallel"))]
fn with_jobs<R: Send>(_jobs: Option<usize>, f: impl FnOnce() -> R + Send) -> R {
    f()
}

fn poly(s: &str) -> Result<ExactPoly, String> {
    s.parse().map_err(|e| format!("`{s}`: {e}"))
}

fn verdict(ok: bool) -> u8 {
    println!("{ok}");
    if ok {
        PASS
    } else {
        FAIL
    }
}

fn run_poly(op: PolyOp) -> Result<u8, String> {
    let e = |x: latchain::poly::PolyError| x.to_string();
    match op {
        PolyOp::RealRooted { p } => Ok(verdict(is_real_rooted(&poly(&p)?).map_err(e)?)),
        PolyOp::UnitRooted { p } => Ok(verdict(is_unit_interval_rooted(&poly(&p)?).map_err(e)?)),
        PolyOp::RootsIn { p, lo, hi } => {
            let (lo, hi) = (parse_rat(&lo).map_err(e)?, parse_rat(&hi).map_err(e)?);
            let p = poly(&p)?;
            let ok =
                is_real_rooted(&p).map_err(e)? && roots_in_interval(&p, &lo, &hi).map_err(e)?;
            Ok(verdict(ok))
        }
        PolyOp::Count { p, lo, hi } => {
            let range = match (lo, hi) {
                (None, None) => RootRange::Whole,
                (Some(lo), Some(hi)) => {
                    RootRange::HalfOpen(parse_rat(&lo).map_err(e)?, parse_rat(&hi).map_err(e)?)
                }
                _ => return Err("give both lo and hi, or neither".into()),
            };
            println!("{}", sturm_real_root_count(&poly(&p)?, &range).map_err(e)?);
            Ok(PASS)
        }
        PolyOp::Interlaces { g, f } => Ok(verdict(interlaces(&poly(&g)?, &poly(&f)?).map_err(e)?)),
        PolyOp::HFromF { f, n } => {
            println!("{}", h_from_f(&poly(&f)?, n).map_err(e)?);
            Ok(PASS)
        }
        PolyOp::FFromH { h, n } => {
            println!("{}", f_from_h(&poly(&h)?, n).map_err(e)?);
            Ok(PASS)
        }
        PolyOp::Diamond { f, g } => {
            println!("{}", diamond_product(&poly(&f)?, &poly(&g)?));
            Ok(PASS)
        }
        PolyOp::Eulerian { n, q } => {
            let q = parse_rat(q.as_deref().unwrap_or("1")).map_err(e)?;
            println!("{}", verify::q_eulerian(n, &q).map_err(|x| x.to_string())?);
            Ok(PASS)
        }
    }
}

fn run_build(s: &str, out: Option<&Path>) -> Result<u8, String> {
    let text = match dsl::build(s).map_err(|e| e.to_string())? {
        Built::Rows { rows, .. } => rows.to_string(),
        built => write_poset(built.poset().expect("lattice families carry a poset")),
    };
    match out {
        Some(p) => fs::write(p, text).map_err(|e| format!("{}: {e}", p.display()))?,
        None => print!("{text}"),
    }
    Ok(PASS)
}
