//! Command-line front end: verification suites, enumerations, homology,
//! census tables and trace evaluations, all emitting deterministic JSON.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use dihedra::barthh::{build_bar, homology};
use dihedra::crossed::{enumerate_g, Flavor};
use dihedra::freemonad::FreeMonad;
use dihedra::mattrace::{trace_q, MatrixElem};
use dihedra::monoid::PointedMonoid;
use dihedra::operad::{CommOperad, HyperOperad, MayOperad};
use dihedra::report::Report;
use dihedra::suites;

#[derive(Parser)]
#[command(name = "dihedra", about = "Operad, word-group and bar-construction calculators", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Seed for randomized suites (echoed in the report).
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the JSON output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker count (accepted for compatibility; suites are deterministic
    /// and currently single-threaded).
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite; exits nonzero when any case fails.
    Verify {
        /// One of: perm, hyper, dn, crossed, bar, homology, trace, monad, all.
        target: String,
        #[arg(long)]
        kmax: Option<usize>,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        q: Option<usize>,
        #[arg(long)]
        r: Option<usize>,
        /// Monoid file (or builtin: trivial, c2, c3, c4, idem).
        #[arg(long)]
        monoid: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Enumerate the automorphism simplicial set of a crossed simplicial
    /// category.
    Enumerate {
        /// One of: dT (involutive), dC (cyclic), dD (dihedral).
        #[arg(long)]
        flavor: String,
        #[arg(long, default_value_t = 1)]
        r: usize,
        #[arg(long, default_value_t = 4)]
        degrees: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Integer homology of the bar construction of a monoid.
    Homology {
        #[arg(long)]
        monoid: String,
        #[arg(long, default_value_t = 3)]
        degrees: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Filtration census of the free construction of an operad.
    Census {
        /// One of: M, N, H.
        #[arg(long)]
        operad: String,
        /// Number of letters besides the basepoint and the unit.
        #[arg(long, default_value_t = 1)]
        letters: usize,
        #[arg(long, default_value_t = 3)]
        j: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Evaluate the trace on a tuple of matrices.
    Trace {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: usize,
        #[arg(long)]
        monoid: String,
        /// JSON array of matrices, each a list of [row, col, value] entries.
        #[arg(long)]
        input: String,
        #[command(flatten)]
        common: Common,
    },
}

fn load_monoid(source: &str) -> Result<PointedMonoid, String> {
    match source {
        "trivial" => return Ok(PointedMonoid::trivial()),
        "c2" => return Ok(PointedMonoid::cyclic_group(2)),
        "c3" => return Ok(PointedMonoid::cyclic_group(3)),
        "c4" => return Ok(PointedMonoid::cyclic_group(4)),
        "idem" => return Ok(PointedMonoid::idempotent()),
        _ => {}
    }
    let text =
        std::fs::read_to_string(source).map_err(|e| format!("cannot read {source}: {e}"))?;
    PointedMonoid::parse(&text).map_err(|e| e.to_string())
}

fn emit(common: &Common, value: &serde_json::Value) -> Result<(), String> {
    let text = serde_json::to_string_pretty(value).expect("serializable value");
    match &common.out {
        Some(path) => std::fs::write(path, text).map_err(|e| e.to_string()),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn report_value(reports: &[Report]) -> serde_json::Value {
    serde_json::to_value(reports).expect("reports serialize")
}

fn run() -> Result<bool, String> {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify {
            target,
            kmax,
            samples,
            n,
            q,
            r,
            monoid,
            common,
        } => {
            let reports: Vec<Report> = match target.as_str() {
                "perm" => vec![suites::perm_suite(kmax.unwrap_or(4))],
                "hyper" => vec![suites::hyper_suite(kmax.unwrap_or(3))],
                "dn" => vec![suites::dn_suite(samples.unwrap_or(1000), common.seed)],
                "crossed" => vec![suites::crossed_suite(
                    kmax.unwrap_or(5),
                    r.unwrap_or(3),
                    common.seed,
                )],
                "bar" => {
                    let m = load_monoid(monoid.as_deref().unwrap_or("c2"))?;
                    vec![suites::bar_suite(&m, q.unwrap_or(4), r.unwrap_or(3))
                        .map_err(|e| e.to_string())?]
                }
                "homology" => vec![suites::homology_suite(common.seed)],
                "trace" => {
                    let m = load_monoid(monoid.as_deref().unwrap_or("c2"))?;
                    vec![suites::trace_suite(n.unwrap_or(2), q.unwrap_or(2), &m)]
                }
                "monad" => vec![suites::monad_suite(samples.unwrap_or(500), common.seed)],
                "all" => suites::all_suites(common.seed),
                other => return Err(format!("unknown verify target `{other}`")),
            };
            let ok = reports.iter().all(Report::ok);
            emit(&common, &report_value(&reports))?;
            Ok(ok)
        }
        Command::Enumerate {
            flavor,
            r,
            degrees,
            common,
        } => {
            let flavor = Flavor::parse(&flavor, r).map_err(|e| e.to_string())?;
            let census = enumerate_g(flavor, degrees).map_err(|e| e.to_string())?;
            emit(&common, &serde_json::to_value(&census).expect("census serializes"))?;
            Ok(true)
        }
        Command::Homology {
            monoid,
            degrees,
            common,
        } => {
            let m = load_monoid(&monoid)?;
            let bar = build_bar(&m, degrees + 1).map_err(|e| e.to_string())?;
            let groups = homology(&bar, degrees).map_err(|e| e.to_string())?;
            emit(&common, &serde_json::to_value(&groups).expect("groups serialize"))?;
            Ok(true)
        }
        Command::Census {
            operad,
            letters,
            j,
            common,
        } => {
            let alphabet = letters + 2;
            let table = match operad.as_str() {
                "M" => {
                    let p = MayOperad;
                    FreeMonad::new(&p, alphabet)
                        .and_then(|fm| fm.census(j))
                        .map_err(|e| e.to_string())?
                }
                "N" => {
                    let p = CommOperad;
                    FreeMonad::new(&p, alphabet)
                        .and_then(|fm| fm.census(j))
                        .map_err(|e| e.to_string())?
                }
                "H" => {
                    let p = HyperOperad;
                    FreeMonad::new(&p, alphabet)
                        .and_then(|fm| fm.census(j))
                        .map_err(|e| e.to_string())?
                }
                other => return Err(format!("unknown operad `{other}`")),
            };
            emit(&common, &serde_json::to_value(&table).expect("table serializes"))?;
            Ok(true)
        }
        Command::Trace {
            n,
            q,
            monoid,
            input,
            common,
        } => {
            let m = load_monoid(&monoid)?;
            let raw: Vec<Vec<(usize, usize, usize)>> =
                serde_json::from_str(&input).map_err(|e| format!("bad input JSON: {e}"))?;
            if raw.len() != q + 1 {
                return Err(format!("expected {} matrices, found {}", q + 1, raw.len()));
            }
            let ms: Vec<MatrixElem> = raw
                .into_iter()
                .map(|entries| MatrixElem::new(n, entries))
                .collect::<Result<_, _>>()
                .map_err(|e| e.to_string())?;
            let out = trace_q(&ms, &m).map_err(|e| e.to_string())?;
            let value = serde_json::json!({
                "q": out.q,
                "arity": out.arity(),
                "permutations": out
                    .perms
                    .iter()
                    .map(|p| p.images().to_vec())
                    .collect::<Vec<_>>(),
                "coordinates": out
                    .coords
                    .iter()
                    .map(|c| match c {
                        dihedra::barthh::SmashTuple::Star => serde_json::Value::Null,
                        dihedra::barthh::SmashTuple::Tuple(v) =>
                            serde_json::to_value(v).expect("tuple serializes"),
                    })
                    .collect::<Vec<_>>(),
            });
            emit(&common, &value)?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
