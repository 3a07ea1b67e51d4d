use std::fs::File;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use garside::braid::{normal_form, x_a, x_b, BraidWord, SimpleBraid};
use garside::census::{
    ball_count, exact_pa_bound, measure_pa_proportion, ratio_to_f64, sphere_counts, spheres_csv,
};
use garside::certify::{Certifier, SubwordReading};
use garside::graph::{
    build_graph, check_length5, count_table, lift, spectral_radius, GraphCache, LWGraph, LoopReading,
    DEFAULT_LIFT_CAP,
};
use garside::{verify, Error};
use serde_json::json;

const DEFAULT_MAX_STRANDS: usize = 7;

#[derive(Parser)]
#[command(name = "garside", version, about = "Braid normal forms, left-weighting graph counts and rigid pseudo-Anosov certification")]
struct Cli {
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Number of strands.
    #[arg(long, default_value_t = 3)]
    n: usize,
    /// Output file (default: stdout).
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Graph cache file; read if present, written otherwise.
    #[arg(long)]
    cache: Option<PathBuf>,
    /// Bound on lifted graph vertices.
    #[arg(long, default_value_t = DEFAULT_LIFT_CAP)]
    lift_cap: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Pattern {
    Xa,
    Xb,
}

#[derive(Subcommand)]
enum Command {
    /// Left normal form of a braid word such as `s1 S2 D`.
    Nf {
        #[command(flatten)]
        common: Common,
        word: Vec<String>,
    },
    /// Build the left-weighting graph and check length-5 connectivity.
    Graph {
        #[command(flatten)]
        common: Common,
    },
    /// Exact path and loop counts, optionally avoiding patterns.
    Counts {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 20)]
        lmax: usize,
        #[arg(long, value_enum)]
        pattern: Vec<Pattern>,
        /// Let loop occurrences wrap around the base point.
        #[arg(long)]
        cyclic: bool,
    },
    /// Spectral radius of the graph and of each pattern-avoiding lift.
    Spectrum {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum)]
        pattern: Vec<Pattern>,
    },
    /// Certify a rigid braid given as a word.
    Certify {
        #[command(flatten)]
        common: Common,
        /// Also search the factors of the square (reading up to τ).
        #[arg(long)]
        tau_closed: bool,
        word: Vec<String>,
    },
    /// Sphere sizes by normal-form shape, `l = 1..=lmax`.
    Sphere {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 10)]
        lmax: usize,
    },
    /// Ball size for radius `l`.
    Ball {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 5)]
        l: usize,
    },
    /// Certified fraction of uniform rigid samples against the exact bound.
    Sample {
        #[command(flatten)]
        common: Common,
        /// Number of factors; with `--lmax`, the first of a range.
        #[arg(long, default_value_t = 20)]
        l: usize,
        #[arg(long)]
        lmax: Option<usize>,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = verify::SEED)]
        seed: u64,
    },
    /// Run the acceptance criteria; exit 1 if any fails.
    Verify {
        /// Restrict to one strand count.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

enum Failure {
    Usage(String),
    Cap(String),
    Verify,
    Other(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::LiftCap { .. } | Error::SizeGuard(_) => Failure::Cap(e.to_string()),
            Error::Parse { .. }
            | Error::StrandCount(_)
            | Error::GeneratorIndex { .. }
            | Error::NotRigid
            | Error::EmptyNormalForm
            | Error::Invalid(_) => Failure::Usage(e.to_string()),
            other => Failure::Other(other.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Other(e.to_string())
    }
}

type Outcome = std::result::Result<(), Failure>;

fn max_strands() -> usize {
    std::env::var("GARSIDE_MAX_N").ok().and_then(|s| s.parse().ok()).unwrap_or(DEFAULT_MAX_STRANDS)
}

fn check_n(n: usize) -> Outcome {
    if n < 3 || n > max_strands() {
        return Err(Failure::Usage(format!("--n must be in 3..={}", max_strands())));
    }
    Ok(())
}

fn emit(out: &Option<PathBuf>, text: &str) -> Outcome {
    match out {
        Some(p) => File::create(p)?.write_all(text.as_bytes())?,
        None => io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn load_graph(c: &Common) -> std::result::Result<LWGraph, Failure> {
    check_n(c.n)?;
    if let Some(path) = &c.cache {
        if path.exists() {
            let cache = GraphCache::read_from(File::open(path)?)?;
            if cache.header.n == c.n {
                return Ok(cache.to_graph()?);
            }
        }
        let g = build_graph(c.n)?;
        write_cache(path, &GraphCache::from_graph(&g))?;
        return Ok(g);
    }
    Ok(build_graph(c.n)?)
}

fn write_cache(path: &Path, cache: &GraphCache) -> Outcome {
    cache.write_to(io::BufWriter::new(File::create(path)?))?;
    Ok(())
}

fn parse_word(n: usize, parts: &[String]) -> std::result::Result<BraidWord, Failure> {
    Ok(BraidWord::parse(n, &parts.join(" "))?)
}

fn patterns(n: usize, ps: &[Pattern]) -> std::result::Result<Vec<(String, Vec<SimpleBraid>)>, Failure> {
    ps.iter()
        .map(|p| {
            let (name, x) = match p {
                Pattern::Xa => ("x_A", x_a(n)?),
                Pattern::Xb => ("x_B", x_b(n)?),
            };
            Ok((name.to_string(), x.factors().to_vec()))
        })
        .collect()
}

fn run(cli: Cli) -> Outcome {
    if let Some(t) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| Failure::Other(e.to_string()))?;
    }
    match cli.command {
        Command::Nf { common, word } => {
            check_n(common.n)?;
            let x = normal_form(&parse_word(common.n, &word)?);
            let rigid = if x.canonical_length() == 0 { None } else { Some(x.is_rigid()?) };
            let text = match common.format {
                Format::Json => json!({
                    "normal_form": x.to_string(),
                    "inf": x.inf(),
                    "sup": x.sup(),
                    "len": x.canonical_length(),
                    "rigid": rigid,
                })
                .to_string()
                    + "\n",
                _ => format!(
                    "{x}\ninf {} sup {} len {} rigid {}\n",
                    x.inf(),
                    x.sup(),
                    x.canonical_length(),
                    rigid.map_or("n/a".to_string(), |r| r.to_string())
                ),
            };
            emit(&common.out, &text)
        }
        Command::Graph { common } => {
            let g = load_graph(&common)?;
            let c = check_length5(&g);
            match common.format {
                Format::Json => {
                    // the cache format doubles as the JSON export
                    let mut buf = vec![];
                    GraphCache::from_graph(&g).write_to(&mut buf)?;
                    emit(&common.out, &(String::from_utf8(buf).expect("json is utf-8") + "\n"))
                }
                _ => emit(
                    &common.out,
                    &format!(
                        "n {} vertices {} edges {} length5_positive {}\n",
                        g.n(),
                        g.vertex_count(),
                        g.edge_count(),
                        c.all_positive
                    ),
                ),
            }
        }
        Command::Counts { common, lmax, pattern, cyclic } => {
            let g = load_graph(&common)?;
            let pats: Vec<Vec<SimpleBraid>> = patterns(g.n(), &pattern)?.into_iter().map(|(_, p)| p).collect();
            let reading = if cyclic { LoopReading::Cyclic } else { LoopReading::Linear };
            let t = count_table(&g, lmax, &pats, reading, common.lift_cap)?;
            let text = match common.format {
                Format::Json => {
                    let rows: Vec<_> = t
                        .rows
                        .iter()
                        .map(|r| {
                            json!({
                                "l": r.l,
                                "N": r.paths.to_string(),
                                "N°": r.loops.to_string(),
                                "N_w": r.paths_avoiding.as_ref().map(|x| x.to_string()),
                                "N°_w": r.loops_avoiding.as_ref().map(|x| x.to_string()),
                            })
                        })
                        .collect();
                    json!({ "n": t.n, "rows": rows }).to_string() + "\n"
                }
                _ => t.to_csv(),
            };
            emit(&common.out, &text)
        }
        Command::Spectrum { common, pattern } => {
            let g = load_graph(&common)?;
            let base = spectral_radius(g.adjacency());
            let mut avoiding = vec![];
            for (name, p) in patterns(g.n(), &pattern)? {
                let k = p.len().saturating_sub(1).max(1);
                let l = lift(&g, k, common.lift_cap)?.forbid(&g, &p)?;
                avoiding.push((name, spectral_radius(l.adjacency()), l.vertex_count()));
            }
            let text = match common.format {
                Format::Json => json!({
                    "n": g.n(),
                    "gamma": base,
                    "avoiding": avoiding.iter().map(|(name, r, size)| json!({
                        "pattern": name, "gamma_w": r, "lift_vertices": size,
                        "gap": base.lower - r.upper,
                    })).collect::<Vec<_>>(),
                })
                .to_string()
                    + "\n",
                _ => {
                    let mut s = format!("gamma {:.12} [{:.12}, {:.12}]\n", base.gamma, base.lower, base.upper);
                    for (name, r, size) in &avoiding {
                        s += &format!(
                            "gamma_w {name} {:.12} [{:.12}, {:.12}] gap {:.3e} lift {size}\n",
                            r.gamma,
                            r.lower,
                            r.upper,
                            base.lower - r.upper
                        );
                    }
                    s
                }
            };
            emit(&common.out, &text)
        }
        Command::Certify { common, tau_closed, word } => {
            check_n(common.n)?;
            let x = normal_form(&parse_word(common.n, &word)?);
            let reading = if tau_closed { SubwordReading::TauClosed } else { SubwordReading::Literal };
            let v = Certifier::new(common.n)?.with_reading(reading).certify(&x)?;
            emit(&common.out, &(v.to_json() + "\n"))
        }
        Command::Sphere { common, lmax } => {
            let g = load_graph(&common)?;
            let rows = sphere_counts(&g, lmax);
            let text = match common.format {
                Format::Json => serde_json::to_string(&rows).expect("serializable") + "\n",
                _ => spheres_csv(&rows),
            };
            emit(&common.out, &text)
        }
        Command::Ball { common, l } => {
            let g = load_graph(&common)?;
            let b = ball_count(&g, l);
            let text = match common.format {
                Format::Json => json!({ "n": g.n(), "l": l, "ball": b.to_string() }).to_string() + "\n",
                _ => format!("{b}\n"),
            };
            emit(&common.out, &text)
        }
        Command::Sample { common, l, lmax, samples, seed } => {
            let g = load_graph(&common)?;
            if samples == 0 {
                return Err(Failure::Usage("--samples must be positive".into()));
            }
            let hi = lmax.unwrap_or(l);
            let mut csv = String::from("l,exact_bound_num,exact_bound_den,sampled,ci_lo,ci_hi\n");
            let mut reports = vec![];
            for r in l..=hi {
                let bound = exact_pa_bound(&g, r)?;
                let rep = measure_pa_proportion(&g, r, samples, seed)?;
                csv += &format!(
                    "{r},{},{},{},{},{}\n",
                    bound.numer(),
                    bound.denom(),
                    rep.proportion_certified,
                    rep.ci_lo,
                    rep.ci_hi
                );
                reports.push(json!({
                    "report": rep,
                    "exact_bound": ratio_to_f64(&bound),
                    "exact_bound_num": bound.numer().to_string(),
                    "exact_bound_den": bound.denom().to_string(),
                }));
            }
            let text = match common.format {
                Format::Json => json!(reports).to_string() + "\n",
                _ => csv,
            };
            emit(&common.out, &text)
        }
        Command::Verify { n, out, format } => {
            let reports = match n {
                Some(n) => {
                    check_n(n)?;
                    verify::run_for(n)
                }
                None => verify::run_all(),
            };
            let text = match format {
                Format::Json => serde_json::to_string(&reports).expect("serializable") + "\n",
                _ => reports.iter().map(|r| format!("{r}\n")).collect(),
            };
            emit(&out, &text)?;
            if reports.iter().all(|r| r.passed) {
                Ok(())
            } else {
                Err(Failure::Verify)
            }
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verify) => ExitCode::from(1),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Cap(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
        Err(Failure::Other(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}
