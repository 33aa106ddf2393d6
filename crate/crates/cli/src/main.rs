//! `voro`: exact computations with well-rounded configurations and the
//! Voronoi complex of `GL_N(Z)`.
//!
//! Exit codes: 0 success, 1 failed check, 2 budget exhausted, 3 input error.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand};
use voronoi_core::complex::{assemble_complex, build_layers, RankLayer};
use voronoi_core::enumerate::{
    count_codes_prime, enumerate_perfect_forms, enumerate_rank_n, rank_n, RankNOptions, RankPlusOptions,
};
use voronoi_core::equiv::{are_equivalent, automorphism_group, IntMat};
use voronoi_core::homology::{homology_of_complex, torsion_prime_bound};
use voronoi_core::io::records::write_record;
use voronoi_core::io::{cached_layer, parse_records, RecordMeta, RunConfig};
use voronoi_core::realize::{test_realizability_with, RealizabilityVerdict, Refutation};
use voronoi_core::reproduce::{reproduce, ReproOptions, Status, Target};
use voronoi_core::{minimal_vectors, Error, QuadraticForm, VectorConfiguration};

#[derive(Parser)]
#[command(name = "voro", version, about = "Well-rounded configurations, perfect forms and the Voronoi complex")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Minimum and minimal vectors of a form file.
    Minvec { form: PathBuf },
    /// Realizability of the first record of a file.
    Realize {
        config: PathBuf,
        #[arg(long)]
        max_iterations: Option<usize>,
        #[arg(long)]
        max_pool: Option<usize>,
    },
    /// Class representatives of perfection rank R in dimension N.
    Enumerate {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        rank: usize,
        /// Largest index for rank R = N; with --count-only, the largest prime.
        #[arg(long)]
        max_index: Option<u64>,
        /// Only count sublattice codes for primes up to --max-index.
        #[arg(long)]
        count_only: bool,
        /// Count codes for this prime only.
        #[arg(long, requires = "count_only")]
        prime: Option<i64>,
        /// Continue interrupted layers from the cache.
        #[arg(long)]
        resume: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Perfect forms in dimension N.
    Perfect {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// A unimodular P with P·A = B, or NONE.
    Isom { a: PathBuf, b: PathBuf },
    /// Stabilizer generators, order and orientation flag.
    Stab { config: PathBuf },
    /// Differentials of the Voronoi complex in sparse triplet form.
    Complex {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Homology of the Voronoi complex.
    Homology {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        mod_bound: Option<u64>,
    },
    /// Recompute a reference table: table1, table2, table3, table4, sigma8.
    Reproduce {
        target: String,
        /// Wall-clock budget in seconds.
        #[arg(long)]
        budget_secs: Option<u64>,
        /// Largest dimension for table1 and table2.
        #[arg(long)]
        max_dim: Option<usize>,
    },
}

enum Outcome {
    Ok,
    Fail,
    Budget,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::BudgetExhausted { .. } | Error::Undecided(_) => 2,
        Error::DifferentialSanityFailed(_) | Error::Certificate(_) | Error::IncompleteLayers(_) => 1,
        _ => 3,
    }
}

fn read_config(path: &Path) -> Result<VectorConfiguration, Error> {
    let text = fs::read_to_string(path)?;
    let mut recs = parse_records(&text)?;
    for w in &recs.warnings {
        eprintln!("warning: {}: {w}", path.display());
    }
    if recs.configs.is_empty() {
        return Err(Error::IncompleteInput(format!("{} holds no record", path.display())));
    }
    Ok(recs.configs.swap_remove(0))
}

fn matrix(m: &IntMat) -> String {
    m.iter().map(|r| r.iter().map(i64::to_string).collect::<Vec<_>>().join(" ")).collect::<Vec<_>>().join("\n")
}

fn records_with_meta(configs: &[VectorConfiguration]) -> Result<String, Error> {
    let mut s = String::new();
    for (i, v) in configs.iter().enumerate() {
        if i > 0 {
            s.push('\n');
        }
        write_record(&mut s, v, Some(&RecordMeta::compute(v)?));
    }
    Ok(s)
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Error> {
    match out {
        Some(p) => fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn run(cli: Cli, cfg: &RunConfig) -> Result<Outcome, Error> {
    match cli.cmd {
        Cmd::Minvec { form } => {
            let a = QuadraticForm::parse(&fs::read_to_string(form)?)?;
            let (m, v) = minimal_vectors(&a)?;
            println!("# minimum {m}");
            let mut s = String::new();
            write_record(&mut s, &v, None);
            print!("{s}");
        }
        Cmd::Realize { config, max_iterations, max_pool } => {
            let v = read_config(&config)?;
            let mut opts = cfg.realize_options();
            opts.max_iterations = max_iterations.unwrap_or(opts.max_iterations);
            opts.max_pool = max_pool.unwrap_or(opts.max_pool);
            let rep = test_realizability_with(&v, &opts)?;
            match &rep.verdict {
                RealizabilityVerdict::Realizable { witness } => {
                    println!("REALIZABLE");
                    print!("{}", witness.to_text());
                }
                RealizabilityVerdict::NotRealizable(r) => {
                    println!("NOT REALIZABLE");
                    match r {
                        Refutation::ForcedZero => println!("# equal values force the zero form"),
                        Refutation::LowerBound { lambda, pool, .. } => {
                            println!("# lambda_opt {lambda} over a pool of {}", pool.len())
                        }
                        Refutation::Infeasible { pool, .. } => println!("# infeasible over a pool of {}", pool.len()),
                    }
                }
            }
            println!("iterations {}", rep.iterations);
            println!("pool {}", rep.pool_size);
        }
        Cmd::Enumerate { dim, rank, max_index, count_only, prime, resume, out } => {
            if count_only {
                let primes: Vec<i64> = match prime {
                    Some(p) => vec![p],
                    None => {
                        let top = max_index.ok_or_else(|| Error::Invalid("--count-only needs --max-index or --prime".into()))?;
                        (2..=top as i64).filter(|&p| (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)).collect()
                    }
                };
                let mut s = String::new();
                for p in primes {
                    writeln!(s, "p={p} codes={}", count_codes_prime(dim, p, false)).unwrap();
                }
                emit(out.as_deref(), &s)?;
                return Ok(Outcome::Ok);
            }
            if rank < dim || rank > dim * (dim + 1) / 2 {
                return Err(Error::Invalid(format!("rank {rank} outside {dim}..={}", dim * (dim + 1) / 2)));
            }
            let classes = if rank == dim && max_index.is_some() {
                let c = enumerate_rank_n(dim, &RankNOptions { max_index, ..Default::default() })?;
                eprintln!("index histogram {:?}", rank_n::index_histogram(&c));
                c.into_iter().map(|c| c.config).collect()
            } else {
                let opts = RankPlusOptions { realize: cfg.realize_options(), ..Default::default() };
                cached_layer(&cfg.cache_dir, dim, rank, &opts, resume)?
            };
            eprintln!("{} classes", classes.len());
            emit(out.as_deref(), &records_with_meta(&classes)?)?;
        }
        Cmd::Perfect { dim, out } => {
            let forms = enumerate_perfect_forms(dim)?;
            let mut s = String::new();
            for (i, f) in forms.iter().enumerate() {
                if i > 0 {
                    s.push('\n');
                }
                for line in f.form.to_text().lines() {
                    writeln!(s, "# form {line}").unwrap();
                }
                write_record(&mut s, &f.min_vectors, Some(&RecordMeta::compute(&f.min_vectors)?));
            }
            eprintln!("{} perfect forms", forms.len());
            emit(out.as_deref(), &s)?;
        }
        Cmd::Isom { a, b } => {
            let (a, b) = (read_config(&a)?, read_config(&b)?);
            match are_equivalent(&a, &b)? {
                Some(p) => println!("{}", matrix(&p)),
                None => println!("NONE"),
            }
        }
        Cmd::Stab { config } => {
            let v = read_config(&config)?;
            let g = automorphism_group(&v)?;
            println!("order {}", g.order);
            println!("orientation-faithful {}", u8::from(g.orientation_faithful()));
            for (k, (m, c)) in g.generators.iter().zip(&g.characters).enumerate() {
                println!("# generator {k} character {c}");
                println!("{}", matrix(m));
            }
        }
        Cmd::Complex { dim, out } => {
            let layers: Vec<RankLayer> = build_layers(dim, dim * (dim + 1) / 2)?;
            let c = assemble_complex(dim, &layers)?;
            fs::create_dir_all(&out)?;
            for (r, d) in &c.differentials {
                fs::write(out.join(format!("d{r}.txt")), d.to_text(*r))?;
                println!("rank {r}: sigma_star {} sigma {} d {}x{} nnz {}", c.sigma_star_sizes[r], c.sigma_size(*r), d.rows, d.cols, d.entries.len());
            }
            println!("dd=0 verified");
        }
        Cmd::Homology { dim, mod_bound } => {
            let layers = build_layers(dim, dim * (dim + 1) / 2)?;
            let c = assemble_complex(dim, &layers)?;
            let rep = homology_of_complex(&c, mod_bound.unwrap_or_else(|| torsion_prime_bound(dim)))?;
            print!("{}", rep.to_table());
        }
        Cmd::Reproduce { target, budget_secs, max_dim } => {
            let target: Target = target.parse()?;
            let mut opts = ReproOptions { budget: budget_secs.map(Duration::from_secs), ..Default::default() };
            if let Some(m) = max_dim {
                opts.table1_max = m;
                opts.table2_max = m;
            }
            let rep = reproduce(target, &opts)?;
            println!("{rep}");
            return Ok(match rep.status() {
                Status::Pass => Outcome::Ok,
                Status::Fail => Outcome::Fail,
                Status::Budget => Outcome::Budget,
            });
        }
    }
    Ok(Outcome::Ok)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let cfg = match RunConfig::from_env() {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(3);
        }
    };
    if let Some(t) = cfg.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("warning: {e}");
        }
    }
    match run(cli, &cfg) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Ok(Outcome::Budget) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
