use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use hypermono::constructions::ThreeLayerVariant;
use hypermono::error::{Error, Result};
use hypermono::experiment::{
    compare, preset, rows_csv, write_outputs, Backend, Construction, ExperimentSpec, HostGraph,
    Instance, OutputFormat, Overrides, PatternSpec, PRESETS,
};
use hypermono::io::{self, Document};
use hypermono::limits::{
    binom2_poisson_law, compound_weighted_law, poisson_law, shared_component_law, DiscreteLaw,
    SharedComponentSpec, DEFAULT_TAIL_TOL,
};
use hypermono::moments::{moment_matrix, variance_w};
use hypermono::montecarlo::{
    exact_law_bounded, exact_law_weighted_bounded, simulate_t, simulate_w, SimulationConfig,
    DEFAULT_ENUMERATION_BOUND,
};
use hypermono::ordering::{order_connected_edges, overlap_profile, EdgeOrdering};

/// Monochromatic substructures in random colorings of hypergraphs.
#[derive(Parser)]
#[command(name = "hypermono", version)]
struct Cli {
    /// Experiment spec (JSON) for `compare`.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    replicates: Option<u64>,
    #[arg(long, global = true)]
    shards: Option<usize>,
    /// Output file, or directory for `compare`.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Clique,
    Copies,
    Ap,
    CorrEr,
    VertexCopies,
    AppendixA,
    AppendixB,
}

#[derive(Clone, Copy, ValueEnum)]
enum Variant {
    Nested,
    Pairwise,
}

#[derive(Clone, Copy, ValueEnum)]
enum LawKind {
    Poisson,
    Shared,
    Compound,
    Binom2,
}

#[derive(Subcommand)]
enum Command {
    /// Build a hypergraph family and write it as JSON.
    Construct {
        family: Family,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        r: usize,
        #[arg(long, default_value_t = 0.1)]
        p: f64,
        #[arg(long, default_value_t = 0.0)]
        rho: f64,
        #[arg(long, default_value_t = 0.2)]
        lambda: f64,
        #[arg(long, value_enum, default_value_t = Variant::Nested)]
        variant: Variant,
        /// Host graph file; the complete graph when absent.
        #[arg(long)]
        graph: Option<PathBuf>,
        /// Pattern name (repeatable), e.g. triangle, path-3, star-3, complete-4.
        #[arg(long = "pattern")]
        patterns: Vec<String>,
        /// Progression lengths for `ap` (repeatable); defaults to `--r`.
        #[arg(long = "length")]
        lengths: Vec<usize>,
    },
    /// Closed-form moments of a hypergraph, multiplex or weighted file.
    Moments {
        file: PathBuf,
        /// Number of colors (repeatable for a sweep).
        #[arg(long = "c", required = true)]
        c: Vec<u32>,
    },
    /// Exact law of the count vector by enumerating all colorings.
    Exact {
        file: PathBuf,
        #[arg(long)]
        c: u32,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_BOUND as u64)]
        bound: u64,
    },
    /// Monte Carlo law of the count vector.
    Simulate {
        file: PathBuf,
        #[arg(long)]
        c: u32,
    },
    /// Run an experiment spec or preset against its limit laws.
    Compare {
        /// Preset name, used when `--config` is absent.
        #[arg(long)]
        preset: Option<String>,
        /// Comma-separated sizes overriding the spec.
        #[arg(long, value_delimiter = ',')]
        sizes: Option<Vec<usize>>,
        #[arg(long)]
        exact: bool,
    },
    /// Print a named experiment spec.
    Preset {
        name: Option<String>,
        #[arg(long)]
        list: bool,
    },
    /// Tabulate a limit law.
    Limit {
        law: LawKind,
        /// Rates: one value for `poisson`, one per weight class for `compound`.
        #[arg(long, value_delimiter = ',')]
        rates: Vec<f64>,
        /// Shared component as `1,2=0.3` (repeatable).
        #[arg(long = "component")]
        components: Vec<String>,
        #[arg(long)]
        dimension: Option<usize>,
        #[arg(long, default_value_t = 1.0)]
        mu: f64,
        #[arg(long, default_value_t = DEFAULT_TAIL_TOL)]
        tail_tol: f64,
    },
    /// Order the edges of a connected hypergraph file with an intermediate overlap.
    Order { file: PathBuf },
}

/// Writes to stdout; a closed pipe ends output quietly.
fn stdout(text: &str) -> Result<()> {
    let mut out = std::io::stdout().lock();
    let tail = if text.ends_with('\n') { "" } else { "\n" };
    match out.write_all(text.as_bytes()).and_then(|_| out.write_all(tail.as_bytes())) {
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        other => Ok(other?),
    }
}

fn emit(cli: &Cli, text: &str) -> Result<()> {
    match &cli.out {
        Some(path) => io::write_string(path, text),
        None => stdout(text),
    }
}

fn emit_law(cli: &Cli, law: &DiscreteLaw, json: impl FnOnce() -> Result<String>) -> Result<()> {
    match cli.format {
        Format::Csv => emit(cli, &law.to_csv()),
        Format::Json => emit(cli, &json()?),
    }
}

fn instance(path: &Path) -> Result<Instance> {
    Ok(match io::read_document(path)? {
        Document::Hypergraph(h) => Instance::Multiplex(hypermono::hypergraph::Multiplex::single(h)),
        Document::Multiplex(m) => Instance::Multiplex(m),
        Document::Weighted(w) => Instance::Weighted(w),
    })
}

fn parse_component(s: &str) -> Result<(Vec<usize>, f64)> {
    let (set, rate) = s
        .split_once('=')
        .ok_or_else(|| Error::invalid(format!("component {s:?} is not of the form 1,2=0.3")))?;
    let set = set
        .split(',')
        .map(|v| v.trim().parse::<usize>())
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|_| Error::invalid(format!("bad layer set in {s:?}")))?;
    let rate = rate
        .trim()
        .parse::<f64>()
        .map_err(|_| Error::invalid(format!("bad rate in {s:?}")))?;
    Ok((set, rate))
}

fn run(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::Construct {
            family,
            n,
            r,
            p,
            rho,
            lambda,
            variant,
            graph,
            patterns,
            lengths,
        } => {
            let host = match graph {
                Some(g) => HostGraph::File {
                    path: g.display().to_string(),
                },
                None => HostGraph::Complete,
            };
            let pats: Vec<PatternSpec> = if patterns.is_empty() {
                vec![PatternSpec::named("triangle")]
            } else {
                patterns.iter().map(|s| PatternSpec::named(s)).collect()
            };
            let construction = match family {
                Family::Clique => Construction::Clique { host, r: *r },
                Family::Copies => Construction::Copies {
                    host,
                    patterns: pats,
                },
                Family::Ap => Construction::Ap {
                    lengths: if lengths.is_empty() {
                        vec![*r]
                    } else {
                        lengths.clone()
                    },
                },
                Family::CorrEr => Construction::CorrelatedEr {
                    r: *r,
                    p: *p,
                    rho: *rho,
                },
                Family::VertexCopies => Construction::VertexCopies {
                    host,
                    pattern: pats[0].clone(),
                    bound: None,
                },
                Family::AppendixA => Construction::AppendixA,
                Family::AppendixB => Construction::AppendixB {
                    lambda: *lambda,
                    variant: match variant {
                        Variant::Nested => ThreeLayerVariant::Nested,
                        Variant::Pairwise => ThreeLayerVariant::Pairwise,
                    },
                },
            };
            let mut rng = ChaCha8Rng::seed_from_u64(cli.seed.unwrap_or(0));
            emit(cli, &construction.build(*n, &mut rng)?.to_json()?)
        }
        Command::Moments { file, c } => {
            let inst = instance(file)?;
            match cli.format {
                Format::Json => {
                    let reports = c
                        .iter()
                        .map(|&c| {
                            Ok(match &inst {
                                Instance::Multiplex(m) => {
                                    serde_json::json!({"c": c, "moments": moment_matrix(m, c)?})
                                }
                                Instance::Weighted(w) => {
                                    serde_json::json!({"c": c, "moments": variance_w(w, c)?})
                                }
                            })
                        })
                        .collect::<Result<Vec<_>>>()?;
                    emit(cli, &io::to_json(&reports)?)
                }
                Format::Csv => {
                    let mut out = String::from("c,layer,mean,variance\n");
                    for &c in c {
                        match &inst {
                            Instance::Multiplex(m) => {
                                let mm = moment_matrix(m, c)?;
                                for (i, v) in mm.variances.iter().enumerate() {
                                    out.push_str(&format!(
                                        "{c},{},{:e},{:e}\n",
                                        i + 1,
                                        v.mean,
                                        v.variance
                                    ));
                                }
                            }
                            Instance::Weighted(w) => {
                                let v = variance_w(w, c)?;
                                out.push_str(&format!(
                                    "{c},weighted,{:e},{:e}\n",
                                    v.mean, v.variance
                                ));
                            }
                        }
                    }
                    emit(cli, &out)
                }
            }
        }
        Command::Exact { file, c, bound } => {
            let exact = match instance(file)? {
                Instance::Multiplex(m) => exact_law_bounded(&m, *c, *bound as u128)?,
                Instance::Weighted(w) => exact_law_weighted_bounded(&w, *c, *bound as u128)?,
            };
            let law = exact.law();
            emit_law(cli, &law, || io::to_json(&law))
        }
        Command::Simulate { file, c } => {
            let cfg = SimulationConfig::new(
                *c,
                cli.replicates.unwrap_or(100_000),
                cli.seed.unwrap_or(0),
                cli.shards.unwrap_or(1),
            )?;
            let emp = match instance(file)? {
                Instance::Multiplex(m) => simulate_t(&m, &cfg)?,
                Instance::Weighted(w) => simulate_w(&w, &cfg)?,
            };
            emit_law(cli, &emp.law, || io::to_json(&emp))
        }
        Command::Compare {
            preset: name,
            sizes,
            exact,
        } => {
            let mut spec = match (&cli.config, name) {
                (Some(path), _) => ExperimentSpec::read(path)?,
                (None, Some(name)) => preset(name)?,
                (None, None) => return Err(Error::invalid("compare needs --config or --preset")),
            };
            Overrides {
                seed: cli.seed,
                replicates: cli.replicates,
                shards: cli.shards,
                sizes: sizes.clone(),
                backend: exact.then_some(Backend::Exact),
            }
            .apply(&mut spec);
            let out = compare(&spec)?;
            stdout(&rows_csv(&out.rows))?;
            let dir = cli
                .out
                .clone()
                .unwrap_or_else(|| PathBuf::from("out").join(&spec.scenario));
            let format = match cli.format {
                Format::Csv => OutputFormat::Csv,
                Format::Json => OutputFormat::Json,
            };
            write_outputs(&dir, &out, format)?;
            eprintln!("wrote {}", dir.display());
            Ok(())
        }
        Command::Preset { name, list } => match (name, list) {
            (_, true) | (None, false) => emit(cli, &PRESETS.join("\n")),
            (Some(name), false) => emit(cli, &io::to_json(&preset(name)?)?),
        },
        Command::Limit {
            law,
            rates,
            components,
            dimension,
            mu,
            tail_tol,
        } => {
            let law = match law {
                LawKind::Poisson => match rates.as_slice() {
                    [rate] => poisson_law(*rate, *tail_tol)?,
                    _ => return Err(Error::invalid("poisson needs exactly one --rates value")),
                },
                LawKind::Shared => {
                    let comps = components
                        .iter()
                        .map(|s| parse_component(s))
                        .collect::<Result<Vec<_>>>()?;
                    let d = dimension.unwrap_or_else(|| {
                        comps
                            .iter()
                            .flat_map(|(s, _)| s.iter().copied())
                            .max()
                            .unwrap_or(0)
                    });
                    shared_component_law(&SharedComponentSpec::new(d, comps)?, *tail_tol)?
                }
                LawKind::Compound => compound_weighted_law(rates, *tail_tol)?,
                LawKind::Binom2 => binom2_poisson_law(*mu, *tail_tol)?,
            };
            emit_law(cli, &law, || io::to_json(&law))
        }
        Command::Order { file } => {
            let h = io::read_hypergraph(file)?;
            let ordering = order_connected_edges(h.edges())?;
            let perm = ordering.permutation().to_vec();
            let status = match ordering {
                EdgeOrdering::Valid(_) => "valid",
                EdgeOrdering::NotApplicable(_) => "not-applicable",
            };
            let report = serde_json::json!({
                "status": status,
                "order": perm,
                "overlaps": overlap_profile(h.edges(), &perm),
            });
            emit(cli, &io::to_json(&report)?)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
