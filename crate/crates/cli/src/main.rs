//! `hybridline` — exact hybrid-topology toolkit on the rational line.

use clap::{Parser, Subcommand};

use hybridline::cover::CoverFile;
use hybridline::decompose::{self, Decomposition};
use hybridline::exactsets::{parse_rset, RSet, Rat, Topology};
use hybridline::qbase;
use hybridline::qmetric;
use hybridline::separation::{self, UrysohnSpec};

use hybridline_cli::fuzz::{fuzz_cover, FuzzSpec};
use hybridline_cli::suite::{run_suite, Suite, SuiteConfig};
use hybridline_cli::{parse_cover, parse_label, parse_numeric, CliError};

#[derive(Parser)]
#[command(
    name = "hybridline",
    about = "Exact hybrid topologies on the rational line: covers, quasi-metrics, decompositions, separation",
    long_about = "Builds hybrid topologies from 4-covers of the real line (two-sided, isolated, \
right half-open, or left half-open neighborhoods per point), synthesizes their countable base \
and non-archimedean quasi-metric, and checks the constructions' laws with exact rational \
arithmetic.\n\nA <cover> argument is a preset (real-line, sorgenfrey, sorgenfrey-left, \
hattori-approx, discrete) or a path to a JSON cover file. Numerics are exact: p/q or 2^-k. \
The environment variable HYBRIDLINE_MAX_LEVEL (a decimal, or 2^k) caps bounded searches; \
the default is 64."
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Validate a cover and print its canonical JSON form
    Validate { cover: String },
    /// Decide membership of a point in a set literal
    Member { set: String, x: String },
    /// Print the region of the line carrying the given label (1..4)
    Region { cover: String, label: u8 },
    /// Print the basic neighborhood of x with the given radius
    Nbhd {
        cover: String,
        x: String,
        eps: String,
    },
    /// Close a set in the euclidean, lower-limit, or upper-limit topology
    Closure {
        set: String,
        #[arg(long, default_value = "real", value_parser = ["real", "lower", "upper"])]
        topology: String,
    },
    /// Stream the synthesized closed families F(n), H(n) as JSON records
    Decompose {
        cover: String,
        #[arg(long, default_value_t = 8)]
        levels: u64,
    },
    /// Stream the base families at x and the minimal neighborhoods Mₙ(x)
    Base {
        cover: String,
        x: String,
        #[arg(long, default_value_t = 8)]
        levels: u64,
    },
    /// Exact quasi-metric distance ρ(x, y) with its witnessing family
    Qdist {
        cover: String,
        x: String,
        y: String,
        /// Refuse distances whose separation level exceeds this bound
        #[arg(long)]
        max_level: Option<u64>,
    },
    /// The ball of radius 2⁻ⁿ around x, i.e. the minimal neighborhood Mₙ(x)
    Ball { cover: String, x: String, n: u64 },
    /// Run a reproducible property suite; exit 0 iff no violations
    Check {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        samples: u64,
        #[arg(long, default_value_t = 16)]
        levels: u64,
        /// How many fuzzed covers to append to the presets
        #[arg(long, default_value_t = 6)]
        fuzz_covers: u64,
        /// Negative control: corrupt every decomposition before checking
        #[arg(long, hide = true)]
        corrupt: bool,
    },
    /// Separating neighborhoods for two disjoint closed sets
    Separate {
        cover: String,
        #[arg(long)]
        c0: String,
        #[arg(long)]
        c1: String,
        #[arg(long, default_value_t = 5)]
        samples: u64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Evaluate the separating function of x against a closed set
    Urysohn {
        cover: String,
        #[arg(long)]
        set: String,
        #[arg(long)]
        x: String,
        /// Comma-separated points to evaluate at
        #[arg(long)]
        eval: String,
    },
    /// Countability-based classification of a cover
    Classify { cover: String },
    /// Print a deterministic fuzzed cover for a seed
    Fuzz {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        max_breakpoints: u64,
        #[arg(long, default_value_t = 2)]
        max_point_overrides: u64,
        #[arg(long, default_value_t = 1)]
        max_gen_overrides: u64,
    },
    /// Emit (y, ρ(x,y)) pairs as CSV for external plotting
    PlotData {
        cover: String,
        x: String,
        #[arg(long, allow_hyphen_values = true, default_value = "-2")]
        lo: String,
        #[arg(long, allow_hyphen_values = true, default_value = "2")]
        hi: String,
        #[arg(long, default_value_t = 65)]
        count: u64,
    },
}

fn main() {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(1);
        }
    }
}

fn topology_of(name: &str) -> Topology {
    match name {
        "lower" => Topology::LowerLimit,
        "upper" => Topology::UpperLimit,
        _ => Topology::Real,
    }
}

fn run(cmd: Cmd) -> Result<i32, CliError> {
    match cmd {
        Cmd::Validate { cover } => {
            let (id, c) = parse_cover(&cover)?;
            let canonical = serde_json::to_string(&CoverFile::from_cover(&c))
                .expect("canonical covers serialize");
            println!("{canonical}");
            eprintln!("{id}: valid cover");
            Ok(0)
        }
        Cmd::Member { set, x } => {
            let s = parse_rset(&set)?;
            let x = parse_numeric(&x)?;
            println!("{}", s.member(&x));
            Ok(0)
        }
        Cmd::Region { cover, label } => {
            let (_, c) = parse_cover(&cover)?;
            let l = parse_label(label)?;
            println!("{}", c.region(l)?);
            Ok(0)
        }
        Cmd::Nbhd { cover, x, eps } => {
            let (_, c) = parse_cover(&cover)?;
            let x = parse_numeric(&x)?;
            let eps = parse_numeric(&eps)?;
            if !eps.is_positive() {
                return Err(CliError::Usage("radius must be positive".into()));
            }
            let nbhd = c.local_base_nbhd(&x, &eps);
            println!("label {}: {}", nbhd.label.as_u8(), nbhd.set);
            Ok(0)
        }
        Cmd::Closure { set, topology } => {
            let s = parse_rset(&set)?;
            println!("{}", s.closure(topology_of(&topology))?);
            Ok(0)
        }
        Cmd::Decompose { cover, levels } => {
            let (_, c) = parse_cover(&cover)?;
            let d = Decomposition::synthesize(&c)?;
            for n in 0..=levels {
                let f = d.f(n)?;
                let h = d.h(n)?;
                println!(
                    "{}",
                    serde_json::json!({ "n": n, "f": f.to_string(), "h": h.to_string() })
                );
            }
            Ok(0)
        }
        Cmd::Base { cover, x, levels } => {
            let (_, c) = parse_cover(&cover)?;
            let x = parse_numeric(&x)?;
            let d = Decomposition::synthesize(&c)?;
            let ladder = qbase::min_nbhd_prefix(&c, &d, levels, &x)?;
            for (n, m) in ladder.iter().enumerate() {
                let desc = qbase::descriptor(n as u64);
                println!(
                    "{}",
                    serde_json::json!({
                        "n": n,
                        "family": desc.to_string(),
                        "min_nbhd": m.to_string(),
                    })
                );
            }
            Ok(0)
        }
        Cmd::Qdist {
            cover,
            x,
            y,
            max_level,
        } => {
            let (_, c) = parse_cover(&cover)?;
            let x = parse_numeric(&x)?;
            let y = parse_numeric(&y)?;
            let d = Decomposition::synthesize(&c)?;
            let dist = qmetric::qdist(&c, &d, &x, &y)?;
            match &dist.exponent {
                None => println!("0"),
                Some(e) => {
                    if let Some(cap) = max_level {
                        if e > &num_bigint::BigUint::from(cap) {
                            return Err(CliError::Usage(format!(
                                "separation level {e} exceeds --max-level {cap}"
                            )));
                        }
                    }
                    println!("{dist}");
                    eprintln!("separating family: {}", qbase::describe_level(e));
                }
            }
            Ok(0)
        }
        Cmd::Ball { cover, x, n } => {
            let (_, c) = parse_cover(&cover)?;
            let x = parse_numeric(&x)?;
            let d = Decomposition::synthesize(&c)?;
            println!("{}", qmetric::ball(&c, &d, &x, n)?);
            Ok(0)
        }
        Cmd::Check {
            suite,
            seed,
            samples,
            levels,
            fuzz_covers,
            corrupt,
        } => {
            let cfg = SuiteConfig {
                suite: Suite::parse(&suite)?,
                seed,
                samples,
                levels,
                corrupt,
            };
            let mut covers = vec![
                (
                    "real-line".to_string(),
                    hybridline::cover::FourCover::real_line(),
                ),
                (
                    "sorgenfrey".to_string(),
                    hybridline::cover::FourCover::sorgenfrey(),
                ),
                (
                    "sorgenfrey-left".to_string(),
                    hybridline::cover::FourCover::sorgenfrey_left(),
                ),
                (
                    "hattori-approx".to_string(),
                    hybridline::cover::FourCover::hattori_approx(),
                ),
            ];
            for i in 0..fuzz_covers {
                let spec = FuzzSpec {
                    seed: seed.wrapping_add(i + 1),
                    ..FuzzSpec::default()
                };
                covers.push((format!("fuzz-{i}"), fuzz_cover(&spec)));
            }
            let report = run_suite(&cfg, &covers)?;
            print!("{}", report.to_jsonl());
            Ok(if report.failures() == 0 { 0 } else { 1 })
        }
        Cmd::Separate {
            cover,
            c0,
            c1,
            samples,
            seed,
        } => {
            let (_, c) = parse_cover(&cover)?;
            let s0 = parse_rset(&c0)?;
            let s1 = parse_rset(&c1)?;
            let mut rng = qmetric::SplitMix64::new(seed);
            let pick = |set: &RSet, rng: &mut qmetric::SplitMix64| -> Vec<Rat> {
                let pool = set.sample_members(3 * samples as usize);
                let mut out = Vec::new();
                for _ in 0..samples.min(pool.len() as u64) {
                    let p = rng.pick(&pool).clone();
                    if !out.contains(&p) {
                        out.push(p);
                    }
                }
                out
            };
            let p0 = pick(&s0, &mut rng);
            let p1 = pick(&s1, &mut rng);
            let report = separation::check_normality(&c, &s0, &s1, &p0, &p1)?;
            for x in &p0 {
                let sep = separation::sep_nbhd(&c, x, &s1)?;
                println!("c0 {}: n={} separator={}", sep.center, sep.n_of_c, sep.set);
            }
            for x in &p1 {
                let sep = separation::sep_nbhd(&c, x, &s0)?;
                println!("c1 {}: n={} separator={}", sep.center, sep.n_of_c, sep.set);
            }
            if report.violations.is_empty() {
                println!("disjoint: all {} separator pairs", report.pairs_checked);
                Ok(0)
            } else {
                for v in &report.violations {
                    println!("violation: {v}");
                }
                Ok(1)
            }
        }
        Cmd::Urysohn {
            cover,
            set,
            x,
            eval,
        } => {
            let (_, c) = parse_cover(&cover)?;
            let e = parse_rset(&set)?;
            let x = parse_numeric(&x)?;
            let eps = separation::choose_epsilon(&c, &x, &e)?;
            let spec = UrysohnSpec::new(&c, x, eps.clone(), e)?;
            println!("epsilon = {eps}");
            for part in eval.split(',').filter(|p| !p.trim().is_empty()) {
                let t = parse_numeric(part)?;
                println!("f({t}) = {}", separation::urysohn_eval(&spec, &t));
            }
            Ok(0)
        }
        Cmd::Classify { cover } => {
            let (_, c) = parse_cover(&cover)?;
            let (verdict, _) = decompose::classify(&c)?;
            println!(
                "{}",
                serde_json::json!({
                    "quasi_metrizable": verdict.quasi_metrizable,
                    "metrizable_sufficient": verdict.metrizable_sufficient,
                    "second_countable": verdict.second_countable,
                })
            );
            Ok(0)
        }
        Cmd::Fuzz {
            seed,
            max_breakpoints,
            max_point_overrides,
            max_gen_overrides,
        } => {
            let c = fuzz_cover(&FuzzSpec {
                max_breakpoints,
                max_point_overrides,
                max_gen_overrides,
                seed,
            });
            println!(
                "{}",
                serde_json::to_string(&CoverFile::from_cover(&c))
                    .expect("canonical covers serialize")
            );
            Ok(0)
        }
        Cmd::PlotData {
            cover,
            x,
            lo,
            hi,
            count,
        } => {
            let (_, c) = parse_cover(&cover)?;
            let x = parse_numeric(&x)?;
            let lo = parse_numeric(&lo)?;
            let hi = parse_numeric(&hi)?;
            if count < 2 || lo >= hi {
                return Err(CliError::Usage("need --count >= 2 and --lo < --hi".into()));
            }
            let d = Decomposition::synthesize(&c)?;
            let step = &(&hi - &lo) / &Rat::int(count as i64 - 1);
            println!("y,rho");
            for i in 0..count {
                let y = &lo + &(&step * &Rat::int(i as i64));
                let dist = qmetric::qdist(&c, &d, &x, &y)?;
                println!("{y},{dist}");
            }
            Ok(0)
        }
    }
}
