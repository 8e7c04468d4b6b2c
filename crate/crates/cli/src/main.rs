use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand};
use kst_core::drc::{drc_exact_stats, minimal_constant, parse_rational, DrcParams, DrcSampler};
use kst_core::field::make_field;
use kst_core::hypergraph::{parse_hyp, write_hyp, UniformHypergraph};
use kst_core::norm::{build_norm_partition, krs_exhaustive, verify_cover_property, EdgeColoredBipartiteFamily};
use kst_core::product::{best_residue, build_product, construction_report, pigeonhole_bound, reports_to_csv, ProductParams};
use kst_core::verifier::{find_kst, find_pattern, BipartitePattern, Budget};
use kst_core::{Error, Rational};
use num_bigint::BigUint;

#[derive(Parser)]
#[command(name = "kst", version, about = "Norm-graph constructions, exhaustive verifiers and dependent random choice experiments")]
struct Cli {
    /// Worker threads for parallel searches (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Elementary search steps allowed before giving up.
    #[arg(long, global = true, default_value_t = 1_000_000_000)]
    budget: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the norm-partition family and write it as .ebf.
    ConstructNorm {
        #[arg(long)]
        s: usize,
        #[arg(long)]
        h: u64,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build a residue-class product from an .ebf family and write it as .hyp.
    ConstructProduct {
        #[arg(long)]
        family: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, conflicts_with = "best", required_unless_present = "best")]
        rho: Option<usize>,
        #[arg(long)]
        best: bool,
        /// Append this many isolated vertices.
        #[arg(long, default_value_t = 0)]
        pad: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run an exact check on a .hyp or .ebf file.
    Verify(VerifyArgs),
    /// Sample the weighted random set, or print exact claim statistics.
    Drc {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        t: usize,
        /// Rational greater than 1, e.g. `2`, `3/2` or `1.5`.
        #[arg(long)]
        alpha: String,
        /// The constant C (default: smallest feasible value for s and r).
        #[arg(long)]
        c: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        exact_stats: bool,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Tabulate constructions against the lower-bound scale.
    BoundTable {
        #[arg(long)]
        s: usize,
        #[arg(long, num_args = 1.., value_delimiter = ',')]
        t: Vec<u64>,
        #[arg(long, num_args = 1.., value_delimiter = ',')]
        k: Vec<usize>,
        #[arg(long)]
        n_target: u64,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

#[derive(Args)]
#[command(group(ArgGroup::new("check").required(true).args(["kst", "pattern", "cover", "krs"])))]
struct VerifyArgs {
    #[arg(long)]
    input: PathBuf,
    /// Search for K_{s,t}: `--kst S T`.
    #[arg(long, num_args = 2, value_names = ["S", "T"])]
    kst: Option<Vec<usize>>,
    /// Search for the pattern in FILE.
    #[arg(long)]
    pattern: Option<PathBuf>,
    /// Check the cover property of an .ebf family with this bound.
    #[arg(long)]
    cover: Option<usize>,
    /// Exhaustive solution counts over the family's field.
    #[arg(long)]
    krs: bool,
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::BudgetExceeded { .. } => 4,
            Error::Parse { .. } => 3,
            Error::EmptyAfterPrune => 1,
            Error::Internal(_) => 1,
            _ => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure { code: 3, message: format!("{}: {e}", path.display()) }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| io_failure(path, e))
}

fn parse_file<T>(path: &Path, parse: impl FnOnce(&str) -> kst_core::Result<T>) -> Result<T, Failure> {
    let text = read(path)?;
    parse(&text).map_err(|e| {
        let f = Failure::from(e);
        Failure { code: f.code, message: format!("{}: {}", path.display(), f.message) }
    })
}

/// Writes to `path`, or to stdout when absent.
fn emit(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| io_failure(p, e)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Verdict exit status: 0 pass, 1 fail.
type Outcome = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: cannot configure {n} threads: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> Outcome {
    let budget = cli.budget;
    match cli.command {
        Command::ConstructNorm { s, h, p, out } => construct_norm(s, h, p, out.as_deref()),
        Command::ConstructProduct { family, k, rho, best, pad, out } => {
            construct_product(&family, k, rho, best, pad, out.as_deref(), budget)
        }
        Command::Verify(args) => verify(args, budget),
        Command::Drc { input, s, t, alpha, c, seed, exact_stats, csv } => {
            drc(&input, s, t, &alpha, c.as_deref(), seed, exact_stats, csv.as_deref(), budget)
        }
        Command::BoundTable { s, t, k, n_target, csv } => bound_table(s, &t, &k, n_target, csv.as_deref(), budget),
    }
}

fn construct_norm(s: usize, h: u64, p: u64, out: Option<&Path>) -> Outcome {
    let f = build_norm_partition(s, h, p)?;
    emit(out, &f.to_ebf())?;
    eprintln!("side={} m={} union_edges={}", f.side_size(), f.m(), f.union_edge_count());
    Ok(0)
}

fn construct_product(family: &Path, k: usize, rho: Option<usize>, best: bool, pad: usize, out: Option<&Path>, budget: u64) -> Outcome {
    let f = parse_file(family, EdgeColoredBipartiteFamily::parse_ebf)?;
    let rho = match (rho, best) {
        (Some(r), _) => r,
        (None, _) => best_residue(&f, k)?.0,
    };
    let g = build_product(&f, ProductParams { k, rho }, budget)?;
    let floor = pigeonhole_bound(&f, k);
    let summary = format!("rho={rho} edges={}", g.edge_count());
    if best && BigUint::from(g.edge_count()) < floor {
        return Err(Error::Internal(format!("best residue has fewer than {floor} edges")).into());
    }
    let g = if pad > 0 { g.padded(pad) } else { g };
    emit(out, &write_hyp(&g))?;
    if out.is_some() {
        println!("{summary}");
    } else {
        eprintln!("{summary}");
    }
    Ok(0)
}

fn load_hyp(path: &Path) -> Result<UniformHypergraph, Failure> {
    parse_file(path, parse_hyp)
}

fn verify(args: VerifyArgs, budget: u64) -> Outcome {
    let steps = Budget::new(budget);
    if let Some(st) = &args.kst {
        let h = load_hyp(&args.input)?;
        return Ok(match find_kst(&h, st[0], st[1], &steps)? {
            None => {
                println!("FREE");
                0
            }
            Some(cert) => {
                println!("FOUND");
                print!("{}", cert.to_text());
                1
            }
        });
    }
    if let Some(pfile) = &args.pattern {
        let h = load_hyp(&args.input)?;
        let p = parse_file(pfile, BipartitePattern::parse)?;
        return Ok(match find_pattern(&h, &p, &steps)? {
            None => {
                println!("NOTFOUND");
                0
            }
            Some(emb) => {
                println!("FOUND");
                print!("{}", emb.to_text(&p));
                1
            }
        });
    }
    let f = parse_file(&args.input, EdgeColoredBipartiteFamily::parse_ebf)?;
    if let Some(bound) = args.cover {
        let report = verify_cover_property(&f, f.s(), bound);
        let worst = report.worst.as_ref().map_or(0, |w| w.count);
        return Ok(match &report.failure {
            None => {
                println!("PASS max={worst} bound={bound} sets={}", report.sets_checked);
                0
            }
            Some(w) => {
                let set: Vec<String> = w.set.iter().map(ToString::to_string).collect();
                println!("FAIL side={:?} set={} count={} color={}", w.side, set.join(","), w.count, w.color);
                1
            }
        });
    }
    // norm-system solution counts
    let field = make_field(f.p(), f.s() - 1)?;
    let summary = krs_exhaustive(&field)?;
    let bound: usize = (1..f.s()).product();
    let verdict = if summary.max_count <= bound { "PASS" } else { "FAIL" };
    println!("{verdict} max={} bound={bound} systems={}", summary.max_count, summary.systems);
    Ok(u8::from(summary.max_count > bound))
}

#[allow(clippy::too_many_arguments)]
fn drc(
    input: &Path,
    s: usize,
    t: usize,
    alpha: &str,
    c: Option<&str>,
    seed: u64,
    exact_stats: bool,
    csv: Option<&Path>,
    budget: u64,
) -> Outcome {
    let h = load_hyp(input)?;
    let alpha = parse_rational(alpha)?;
    let c = match c {
        Some(text) => parse_rational(text)?,
        None => Rational::from_integer(minimal_constant(s.max(2), h.uniformity().max(3)).into()),
    };
    let params = DrcParams::new(s, t, alpha, c)?;
    if exact_stats {
        let stats = drc_exact_stats(&h, &params, budget)?;
        emit(csv, &stats.to_csv()?)?;
        eprintln!(
            "D={} ({}) threshold={} edges={} pruned_edges={}",
            stats.d,
            if stats.d_exact { "exact" } else { "lower approximation" },
            stats.threshold,
            stats.edges,
            stats.pruned_edges
        );
        return Ok(u8::from(!stats.all_hold()));
    }
    let sampler = DrcSampler::new(&h, &params, budget)?;
    let out = sampler.sample(seed);
    let mut text = format!("seed={}\n", out.seed);
    let join = |v: &[u32]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
    match &out.tuple {
        Some(tuple) => writeln!(text, "tuple={}", join(tuple)).unwrap(),
        None => writeln!(text, "tuple=none").unwrap(),
    }
    writeln!(text, "A={}", join(&out.a)).unwrap();
    writeln!(text, "p={}", sampler.table().total()).unwrap();
    writeln!(text, "weights_sha256={}", out.weights_hash).unwrap();
    emit(csv, &text)?;
    Ok(0)
}

fn bound_table(s: usize, ts: &[u64], ks: &[usize], n_target: u64, csv: Option<&Path>, budget: u64) -> Outcome {
    let mut reports = Vec::new();
    for &t in ts {
        for &k in ks {
            let (r, _) = construction_report(s, t, k, n_target, budget)?;
            eprintln!(
                "t={t} k={k}: chain {} (chain_ratio={:.11e}, pigeonhole={})",
                if r.chain_holds { "holds" } else { "FAILS" },
                r.chain_ratio,
                r.pigeonhole_bound
            );
            reports.push(r);
        }
    }
    emit(csv, &reports_to_csv(&reports)?)?;
    Ok(u8::from(reports.iter().any(|r| !r.chain_holds)))
}
