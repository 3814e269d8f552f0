//! Experiment specifications, named presets and the compare runner used by
//! the command-line tool.
//!
//! A spec lists one or more arms. Each arm builds an instance for every size
//! `n`, picks `c` by the color rule, obtains the law of the count vector by
//! simulation or exact enumeration, and reports the total variation distance
//! to each target law together with mean and covariance gaps.

use std::path::Path;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::constructions::{
    ap_hypergraph, appendix_star_hypergraph, appendix_three_multiplex, clique_hypergraph,
    copies_hypergraph, sample_correlated_er, sample_correlated_er_sparse,
    vertex_copy_weighted_hypergraph, CorrelatedErParams, GraphFile, PatternGraph, SimpleGraph,
    ThreeLayerVariant, DEFAULT_SUBSET_BOUND,
};
use crate::error::{Error, Result};
use crate::hypergraph::{Multiplex, WeightedUniformHypergraph};
use crate::io::{self, Document};
use crate::limits::{
    binom2_poisson_law, compound_weighted_law, law_moments, poisson_law, shared_component_law,
    tv_distance, DiscreteLaw, SharedComponentSpec, DEFAULT_TAIL_TOL,
};
use crate::moments::{condition_ratios, mean_t, moment_matrix, variance_w};
use crate::montecarlo::{
    exact_law_bounded, exact_law_weighted_bounded, simulate_t, simulate_w, SimulationConfig,
    DEFAULT_ENUMERATION_BOUND,
};

pub const PRESETS: &[&str] = &[
    "birthday",
    "edge-color",
    "ap",
    "corr-er",
    "weighted",
    "appendix-a",
    "appendix-b",
];

/// A pattern by name (`edge`, `triangle`, `path-k`, `cycle-k`, `star-k`,
/// `complete-k`) or as an explicit graph.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PatternSpec {
    Named(String),
    Graph(GraphFile),
}

impl PatternSpec {
    pub fn named(name: &str) -> Self {
        PatternSpec::Named(name.to_string())
    }

    pub fn build(&self) -> Result<PatternGraph> {
        match self {
            PatternSpec::Graph(g) => PatternGraph::new(SimpleGraph::try_from(g.clone())?),
            PatternSpec::Named(name) => {
                let sized = |prefix: &str| -> Option<Result<usize>> {
                    name.strip_prefix(prefix).map(|k| {
                        k.parse::<usize>()
                            .map_err(|_| Error::invalid(format!("bad pattern size in {name:?}")))
                    })
                };
                match name.as_str() {
                    "edge" => PatternGraph::path(2),
                    "triangle" => Ok(PatternGraph::triangle()),
                    _ => {
                        if let Some(k) = sized("path-") {
                            PatternGraph::path(k?)
                        } else if let Some(k) = sized("cycle-") {
                            PatternGraph::cycle(k?)
                        } else if let Some(k) = sized("star-") {
                            PatternGraph::star(k?)
                        } else if let Some(k) = sized("complete-") {
                            PatternGraph::complete(k?)
                        } else {
                            Err(Error::invalid(format!("unknown pattern {name:?}")))
                        }
                    }
                }
            }
        }
    }
}

/// Host graph on `n` vertices.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum HostGraph {
    Complete,
    /// `G(n, p)` with `p = mean_degree / (n - 1)`.
    ErdosRenyi {
        mean_degree: f64,
    },
    /// Vertex-disjoint copies of small blocks; part `i` receives
    /// `floor(share_i n / |V(block_i)|)` copies, the rest of `[0, n)` is isolated.
    Blocks {
        parts: Vec<BlockPart>,
    },
    File {
        path: String,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlockPart {
    pub pattern: PatternSpec,
    pub share: f64,
}

impl HostGraph {
    pub fn build(&self, n: usize, rng: &mut ChaCha8Rng) -> Result<SimpleGraph> {
        match self {
            HostGraph::Complete => Ok(SimpleGraph::complete(n)),
            HostGraph::ErdosRenyi { mean_degree } => {
                let p = (mean_degree / (n.max(2) - 1) as f64).min(1.0);
                SimpleGraph::erdos_renyi(n, p, rng)
            }
            HostGraph::Blocks { parts } => {
                let mut pieces = Vec::new();
                let mut used = 0;
                for part in parts {
                    let block = part.pattern.build()?.graph().clone();
                    let copies =
                        (part.share * n as f64 / block.num_vertices() as f64).floor() as usize;
                    used += copies * block.num_vertices();
                    pieces.push(SimpleGraph::disjoint_copies(&block, copies));
                }
                if used > n {
                    return Err(Error::invalid("block shares exceed the vertex budget"));
                }
                pieces.push(SimpleGraph::empty(n - used));
                Ok(SimpleGraph::disjoint_union(&pieces))
            }
            HostGraph::File { path } => io::read_graph(path),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum Construction {
    /// `r`-cliques of the host graph.
    Clique {
        host: HostGraph,
        r: usize,
    },
    /// One layer per pattern: edge sets of its copies in the host.
    Copies {
        host: HostGraph,
        patterns: Vec<PatternSpec>,
    },
    /// One layer per progression length, ground set `[1, n]`.
    Ap {
        lengths: Vec<usize>,
    },
    CorrelatedEr {
        r: usize,
        p: f64,
        rho: f64,
    },
    /// Weighted vertex sets of pattern copies.
    VertexCopies {
        host: HostGraph,
        pattern: PatternSpec,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        bound: Option<u32>,
    },
    AppendixA,
    AppendixB {
        lambda: f64,
        variant: ThreeLayerVariant,
    },
    File {
        path: String,
    },
}

/// A built instance: a multiplex, or a weighted hypergraph.
#[derive(Clone, Debug)]
pub enum Instance {
    Multiplex(Multiplex),
    Weighted(WeightedUniformHypergraph),
}

impl Instance {
    pub fn num_vertices(&self) -> usize {
        match self {
            Instance::Multiplex(m) => m.num_vertices(),
            Instance::Weighted(w) => w.base().num_vertices(),
        }
    }

    /// Edge count (total weight for weighted instances) and uniformity of the
    /// first layer, used by the mean color rule.
    fn first_layer(&self) -> (u64, usize) {
        match self {
            Instance::Multiplex(m) => {
                let l = &m.layers()[0];
                (l.num_edges() as u64, l.uniformity())
            }
            Instance::Weighted(w) => (w.total_weight(), w.base().uniformity()),
        }
    }

    /// Per-layer means (weight layers for weighted instances).
    pub fn layer_means(&self, c: u32) -> Result<Vec<f64>> {
        let layers = match self {
            Instance::Multiplex(m) => m.clone(),
            Instance::Weighted(w) => w.weight_layers(),
        };
        layers.layers().iter().map(|l| mean_t(l, c)).collect()
    }

    pub fn dimension(&self) -> usize {
        match self {
            Instance::Multiplex(m) => m.num_layers(),
            Instance::Weighted(_) => 1,
        }
    }

    pub fn to_json(&self) -> Result<String> {
        match self {
            Instance::Multiplex(m) if m.num_layers() == 1 => io::hypergraph_json(&m.layers()[0]),
            Instance::Multiplex(m) => io::multiplex_json(m),
            Instance::Weighted(w) => io::weighted_json(w),
        }
    }
}

impl Construction {
    /// Builds the instance for size `n`; random families draw from `rng`.
    pub fn build(&self, n: usize, rng: &mut ChaCha8Rng) -> Result<Instance> {
        let single = |h| Instance::Multiplex(Multiplex::single(h));
        Ok(match self {
            Construction::Clique { host, r } => {
                single(clique_hypergraph(&host.build(n, rng)?, *r)?)
            }
            Construction::Copies { host, patterns } => {
                let g = host.build(n, rng)?;
                let layers = patterns
                    .iter()
                    .map(|p| Ok(copies_hypergraph(&g, &p.build()?)?.hypergraph))
                    .collect::<Result<Vec<_>>>()?;
                Instance::Multiplex(Multiplex::new(layers)?)
            }
            Construction::Ap { lengths } => {
                let set: Vec<u64> = (1..=n as u64).collect();
                let layers = lengths
                    .iter()
                    .map(|&r| Ok(ap_hypergraph(&set, r)?.hypergraph))
                    .collect::<Result<Vec<_>>>()?;
                Instance::Multiplex(Multiplex::new(layers)?)
            }
            Construction::CorrelatedEr { r, p, rho } => {
                let params = CorrelatedErParams::new(n, *r, *p, *rho)?;
                let dense_ok = crate::subsets::binomial(n as u64, *r as u64)
                    .is_some_and(|b| b <= DEFAULT_SUBSET_BOUND);
                let m = if dense_ok || *r != 2 {
                    sample_correlated_er(&params, DEFAULT_SUBSET_BOUND, rng)?
                } else {
                    sample_correlated_er_sparse(&params, rng)?
                };
                Instance::Multiplex(m)
            }
            Construction::VertexCopies {
                host,
                pattern,
                bound,
            } => Instance::Weighted(vertex_copy_weighted_hypergraph(
                &host.build(n, rng)?,
                &pattern.build()?,
                *bound,
            )?),
            Construction::AppendixA => single(appendix_star_hypergraph(n)?),
            Construction::AppendixB { lambda, variant } => {
                Instance::Multiplex(appendix_three_multiplex(n, *lambda, *variant)?)
            }
            Construction::File { path } => match io::read_document(path)? {
                Document::Hypergraph(h) => single(h),
                Document::Multiplex(m) => Instance::Multiplex(m),
                Document::Weighted(w) => Instance::Weighted(w),
            },
        })
    }
}

/// How the number of colors follows the size.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "kebab-case")]
pub enum ColorRule {
    Fixed {
        c: u32,
    },
    /// `c = ceil(lambda n^exponent)`.
    Power {
        lambda: f64,
        exponent: f64,
    },
    /// Smallest `c` with `|E_1| / c^(r-1) <= lambda` for the first layer
    /// (total weight for weighted instances).
    Mean {
        lambda: f64,
    },
}

impl ColorRule {
    pub fn colors(&self, n: usize, instance: &Instance) -> Result<u32> {
        let c = match *self {
            ColorRule::Fixed { c } => c as f64,
            ColorRule::Power { lambda, exponent } => (lambda * (n as f64).powf(exponent)).ceil(),
            ColorRule::Mean { lambda } => {
                if lambda <= 0.0 {
                    return Err(Error::invalid("mean rule needs lambda > 0"));
                }
                let (m, r) = instance.first_layer();
                let target = m as f64 / lambda;
                let mut c = target.powf(1.0 / (r - 1) as f64).ceil().max(1.0);
                // guard against rounding in the root
                while c > 1.0 && m as f64 / (c - 1.0).powi(r as i32 - 1) <= lambda {
                    c -= 1.0;
                }
                while m as f64 / c.powi(r as i32 - 1) > lambda {
                    c += 1.0;
                }
                c
            }
        };
        if !(1.0..=u32::MAX as f64).contains(&c) {
            return Err(Error::invalid(format!("color rule produced c = {c}")));
        }
        Ok(c as u32)
    }
}

/// Poisson rates for a target law.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "kebab-case")]
pub enum Rates {
    Fixed {
        values: Vec<f64>,
    },
    /// Layer means at the current size.
    MeanPerSize,
    /// Layer means at the largest size of the sweep.
    MeanAtLargest,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "law", rename_all = "kebab-case")]
pub enum TargetSpec {
    /// Independent Poisson coordinates.
    Poisson {
        rates: Rates,
    },
    SharedComponent {
        spec: SharedComponentSpec,
    },
    /// `sum_i i Z_i` over weight classes.
    Compound {
        rates: Rates,
    },
    Binom2Poisson {
        mu: f64,
    },
}

impl TargetSpec {
    pub fn label(&self) -> String {
        match self {
            TargetSpec::Poisson { .. } => "poisson".into(),
            TargetSpec::SharedComponent { .. } => "shared-component".into(),
            TargetSpec::Compound { .. } => "compound".into(),
            TargetSpec::Binom2Poisson { .. } => "binom2-poisson".into(),
        }
    }

    fn needs_largest(&self) -> bool {
        matches!(
            self,
            TargetSpec::Poisson {
                rates: Rates::MeanAtLargest
            } | TargetSpec::Compound {
                rates: Rates::MeanAtLargest
            }
        )
    }

    /// Builds the law; `means` holds the per-size and largest-size layer means.
    pub fn law(
        &self,
        means: &[f64],
        largest: Option<&[f64]>,
        tail_tol: f64,
    ) -> Result<DiscreteLaw> {
        let pick = |rates: &Rates| -> Result<Vec<f64>> {
            Ok(match rates {
                Rates::Fixed { values } => values.clone(),
                Rates::MeanPerSize => means.to_vec(),
                Rates::MeanAtLargest => largest
                    .ok_or_else(|| Error::invalid("largest-size means unavailable"))?
                    .to_vec(),
            })
        };
        match self {
            TargetSpec::Poisson { rates } => {
                let rates = pick(rates)?;
                if rates.len() == 1 {
                    return poisson_law(rates[0], tail_tol);
                }
                let spec = SharedComponentSpec::new(
                    rates.len(),
                    rates
                        .iter()
                        .enumerate()
                        .map(|(i, &r)| (vec![i + 1], r))
                        .collect(),
                )?;
                shared_component_law(&spec, tail_tol)
            }
            TargetSpec::SharedComponent { spec } => shared_component_law(spec, tail_tol),
            TargetSpec::Compound { rates } => compound_weighted_law(&pick(rates)?, tail_tol),
            TargetSpec::Binom2Poisson { mu } => binom2_poisson_law(*mu, tail_tol),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Arm {
    pub label: String,
    pub construction: Construction,
    pub targets: Vec<TargetSpec>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Backend {
    MonteCarlo,
    Exact,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimulationSpec {
    pub backend: Backend,
    pub replicates: u64,
    pub seed: u64,
    pub shards: usize,
    #[serde(default = "default_bound")]
    pub enumeration_bound: u64,
}

fn default_bound() -> u64 {
    DEFAULT_ENUMERATION_BOUND as u64
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentSpec {
    pub scenario: String,
    pub description: String,
    pub sizes: Vec<usize>,
    pub colors: ColorRule,
    pub simulation: SimulationSpec,
    #[serde(default = "default_tail_tol")]
    pub tail_tol: f64,
    pub arms: Vec<Arm>,
}

fn default_tail_tol() -> f64 {
    DEFAULT_TAIL_TOL
}

impl ExperimentSpec {
    pub fn validate(&self) -> Result<()> {
        if self.sizes.is_empty() {
            return Err(Error::invalid("sizes must not be empty"));
        }
        if self.arms.is_empty() {
            return Err(Error::invalid("at least one arm is required"));
        }
        if let Some(a) = self.arms.iter().find(|a| a.targets.is_empty()) {
            return Err(Error::invalid(format!("arm {:?} has no target", a.label)));
        }
        if self.simulation.replicates == 0 || self.simulation.shards == 0 {
            return Err(Error::invalid("replicates and shards must be at least 1"));
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let spec: ExperimentSpec = serde_json::from_str(text)?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)?;
        ExperimentSpec::from_json(&text).map_err(|e| match e {
            Error::Io(_) => e,
            other => Error::Format {
                path: path.display().to_string(),
                message: other.to_string(),
            },
        })
    }
}

fn mc(replicates: u64) -> SimulationSpec {
    SimulationSpec {
        backend: Backend::MonteCarlo,
        replicates,
        seed: 20_240_601,
        shards: 4,
        enumeration_bound: default_bound(),
    }
}

fn arm(label: &str, construction: Construction, targets: Vec<TargetSpec>) -> Arm {
    Arm {
        label: label.into(),
        construction,
        targets,
    }
}

/// Shared-component limit of the three-layer construction.
pub fn three_layer_limit(variant: ThreeLayerVariant, lambda: f64) -> SharedComponentSpec {
    let shared = lambda * lambda / 2.0;
    let components = match variant {
        ThreeLayerVariant::Nested => vec![
            (vec![1], 0.5 - shared),
            (vec![2], 0.5 - shared),
            (vec![3], 0.5 - shared),
            (vec![1, 2, 3], shared),
        ],
        ThreeLayerVariant::Pairwise => vec![
            (vec![1], 0.5 - 2.0 * shared),
            (vec![2], 0.5 - 2.0 * shared),
            (vec![3], 0.5 - 2.0 * shared),
            (vec![1, 2], shared),
            (vec![1, 3], shared),
            (vec![2, 3], shared),
        ],
    };
    SharedComponentSpec::new(3, components).expect("valid three-layer spec")
}

/// The named experiment.
pub fn preset(name: &str) -> Result<ExperimentSpec> {
    let poisson = |rates| TargetSpec::Poisson { rates };
    let spec = match name {
        "birthday" => ExperimentSpec {
            scenario: name.into(),
            description: "monochromatic edges of K_n with c = ceil(C(n,2)/lambda)".into(),
            sizes: vec![50, 100, 200],
            colors: ColorRule::Mean { lambda: 1.0 },
            simulation: mc(100_000),
            tail_tol: DEFAULT_TAIL_TOL,
            arms: vec![arm(
                "complete-graph",
                Construction::Clique {
                    host: HostGraph::Complete,
                    r: 2,
                },
                vec![poisson(Rates::Fixed { values: vec![1.0] })],
            )],
        },
        "edge-color" => ExperimentSpec {
            scenario: name.into(),
            description: "monochromatic triangles and 3-stars in edge-colored disjoint K_4 blocks"
                .into(),
            sizes: vec![200, 800, 3200],
            colors: ColorRule::Mean { lambda: 1.0 },
            simulation: mc(100_000),
            tail_tol: DEFAULT_TAIL_TOL,
            arms: vec![arm(
                "k4-blocks",
                Construction::Copies {
                    host: HostGraph::Blocks {
                        parts: vec![BlockPart {
                            pattern: PatternSpec::named("complete-4"),
                            share: 1.0,
                        }],
                    },
                    patterns: vec![PatternSpec::named("triangle"), PatternSpec::named("star-3")],
                },
                vec![poisson(Rates::MeanPerSize)],
            )],
        },
        "ap" => ExperimentSpec {
            scenario: name.into(),
            description: "monochromatic 3-term progressions in [n] with c = n^(2/(r-1))".into(),
            sizes: vec![100, 300, 1000],
            colors: ColorRule::Power {
                lambda: 1.0,
                exponent: 1.0,
            },
            simulation: mc(100_000),
            tail_tol: DEFAULT_TAIL_TOL,
            arms: vec![arm(
                "ap-3",
                Construction::Ap { lengths: vec![3] },
                vec![poisson(Rates::MeanAtLargest)],
            )],
        },
        "corr-er" => ExperimentSpec {
            scenario: name.into(),
            description: "correlated Erdos-Renyi graph pair with lambda = 1, lambda_12 = 0.3"
                .into(),
            sizes: vec![100, 300],
            colors: ColorRule::Mean { lambda: 1.0 },
            simulation: mc(100_000),
            tail_tol: DEFAULT_TAIL_TOL,
            arms: vec![arm(
                "r2-p0.1-rho0.02",
                Construction::CorrelatedEr {
                    r: 2,
                    p: 0.1,
                    rho: 0.02,
                },
                vec![TargetSpec::SharedComponent {
                    spec: SharedComponentSpec::new(
                        2,
                        vec![(vec![1], 0.7), (vec![2], 0.7), (vec![1, 2], 0.3)],
                    )?,
                }],
            )],
        },
        "weighted" => ExperimentSpec {
            scenario: name.into(),
            description:
                "monochromatic 3-vertex paths in vertex-colored path, triangle and K_4 blocks"
                    .into(),
            sizes: vec![600, 2400, 9600],
            colors: ColorRule::Mean { lambda: 1.0 },
            simulation: mc(100_000),
            tail_tol: DEFAULT_TAIL_TOL,
            arms: vec![
                arm(
                    "path-triangle-blocks",
                    Construction::VertexCopies {
                        host: HostGraph::Blocks {
                            parts: vec![
                                BlockPart {
                                    pattern: PatternSpec::named("path-3"),
                                    share: 0.5,
                                },
                                BlockPart {
                                    pattern: PatternSpec::named("triangle"),
                                    share: 0.5,
                                },
                            ],
                        },
                        pattern: PatternSpec::named("path-3"),
                        bound: None,
                    },
                    vec![TargetSpec::Compound {
                        rates: Rates::MeanPerSize,
                    }],
                ),
                arm(
                    "k4-blocks",
                    Construction::VertexCopies {
                        host: HostGraph::Blocks {
                            parts: vec![BlockPart {
                                pattern: PatternSpec::named("complete-4"),
                                share: 1.0,
                            }],
                        },
                        pattern: PatternSpec::named("path-3"),
                        bound: None,
                    },
                    vec![TargetSpec::Compound {
                        rates: Rates::MeanPerSize,
                    }],
                ),
            ],
        },
        "appendix-a" => ExperimentSpec {
            scenario: name.into(),
            description: "all triples through one vertex, c = n; Poisson versus C(Z,2)".into(),
            sizes: vec![100, 200, 500],
            colors: ColorRule::Power {
                lambda: 1.0,
                exponent: 1.0,
            },
            simulation: mc(100_000),
            tail_tol: DEFAULT_TAIL_TOL,
            arms: vec![arm(
                "star-triples",
                Construction::AppendixA,
                vec![
                    poisson(Rates::MeanPerSize),
                    TargetSpec::Binom2Poisson { mu: 1.0 },
                ],
            )],
        },
        "appendix-b" => {
            let lambda = 0.2;
            let b = |variant, label: &str| {
                arm(
                    label,
                    Construction::AppendixB { lambda, variant },
                    vec![TargetSpec::SharedComponent {
                        spec: three_layer_limit(variant, lambda),
                    }],
                )
            };
            ExperimentSpec {
                scenario: name.into(),
                description:
                    "three complete-graph layers, nested versus pairwise overlaps, c = n^2".into(),
                sizes: vec![100, 200, 400],
                colors: ColorRule::Power {
                    lambda: 1.0,
                    exponent: 2.0,
                },
                simulation: mc(100_000),
                tail_tol: DEFAULT_TAIL_TOL,
                arms: vec![
                    b(ThreeLayerVariant::Nested, "nested"),
                    b(ThreeLayerVariant::Pairwise, "pairwise"),
                ],
            }
        }
        _ => {
            return Err(Error::invalid(format!(
                "unknown preset {name:?}; available: {}",
                PRESETS.join(", ")
            )))
        }
    };
    Ok(spec)
}

/// Overrides applied on top of a spec from the command line.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub replicates: Option<u64>,
    pub shards: Option<usize>,
    pub sizes: Option<Vec<usize>>,
    pub backend: Option<Backend>,
}

impl Overrides {
    pub fn apply(&self, spec: &mut ExperimentSpec) {
        if let Some(s) = self.seed {
            spec.simulation.seed = s;
        }
        if let Some(r) = self.replicates {
            spec.simulation.replicates = r;
        }
        if let Some(s) = self.shards {
            spec.simulation.shards = s;
        }
        if let Some(s) = &self.sizes {
            spec.sizes = s.clone();
        }
        if let Some(b) = self.backend {
            spec.simulation.backend = b;
        }
    }
}

/// One line of the comparison table.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CompareRow {
    pub arm: String,
    pub target: String,
    pub n: usize,
    pub c: u32,
    pub tv: f64,
    pub mean_gap: f64,
    pub var_gap: f64,
    pub runtime_ms: f64,
}

/// Closed-form moments recorded for each arm and size.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SizeResult {
    pub arm: String,
    pub n: usize,
    pub c: u32,
    pub layer_means: Vec<f64>,
    pub means: Vec<f64>,
    pub covariance: Vec<Vec<f64>>,
    pub max_condition_ratio: f64,
    pub empirical_mean: Vec<f64>,
    pub empirical_covariance: Vec<Vec<f64>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub spec: ExperimentSpec,
    pub seed: u64,
    pub version: String,
    pub started_unix: u64,
    pub finished_unix: u64,
    pub results: Vec<SizeResult>,
    pub rows: Vec<CompareRow>,
}

/// Outcome of a compare run: the table and the reconstructing manifest.
#[derive(Clone, Debug)]
pub struct CompareOutput {
    pub rows: Vec<CompareRow>,
    pub manifest: RunManifest,
    /// Law of the count vector per (arm, size), in run order.
    pub laws: Vec<(String, usize, DiscreteLaw)>,
}

fn unix_now() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

/// Generator for building the instance of `arm_index` at size `n`; kept apart
/// from the simulation streams.
fn construction_rng(seed: u64, arm_index: usize, n: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(u64::MAX - ((arm_index as u64) << 32 | n as u64));
    rng
}

struct Moments {
    means: Vec<f64>,
    covariance: Vec<Vec<f64>>,
    max_ratio: f64,
}

fn closed_form(instance: &Instance, c: u32) -> Result<Moments> {
    Ok(match instance {
        Instance::Multiplex(m) => {
            let mm = moment_matrix(m, c)?;
            let max_ratio = m
                .layers()
                .iter()
                .map(|l| condition_ratios(l, c).map(|r| r.max()))
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .fold(0.0, f64::max);
            Moments {
                means: mm.means,
                covariance: mm.covariance,
                max_ratio,
            }
        }
        Instance::Weighted(w) => {
            let v = variance_w(w, c)?;
            let max_ratio = w
                .weight_layers()
                .layers()
                .iter()
                .map(|l| condition_ratios(l, c).map(|r| r.max()))
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .fold(0.0, f64::max);
            Moments {
                means: vec![v.mean],
                covariance: vec![vec![v.variance]],
                max_ratio,
            }
        }
    })
}

/// Law of the count vector for `instance` with `c` colors.
pub fn instance_law(instance: &Instance, c: u32, sim: &SimulationSpec) -> Result<DiscreteLaw> {
    let bound = sim.enumeration_bound as u128;
    Ok(match (sim.backend, instance) {
        (Backend::Exact, Instance::Multiplex(m)) => exact_law_bounded(m, c, bound)?.law(),
        (Backend::Exact, Instance::Weighted(w)) => exact_law_weighted_bounded(w, c, bound)?.law(),
        (Backend::MonteCarlo, inst) => {
            let cfg = SimulationConfig::new(c, sim.replicates, sim.seed, sim.shards)?;
            match inst {
                Instance::Multiplex(m) => simulate_t(m, &cfg)?.law,
                Instance::Weighted(w) => simulate_w(w, &cfg)?.law,
            }
        }
    })
}

fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

/// Runs every arm at every size against every target.
pub fn compare(spec: &ExperimentSpec) -> Result<CompareOutput> {
    spec.validate()?;
    let started_unix = unix_now();
    let largest_n = *spec.sizes.iter().max().expect("sizes checked non-empty");
    let mut rows = Vec::new();
    let mut results = Vec::new();
    let mut laws = Vec::new();
    for (ai, arm) in spec.arms.iter().enumerate() {
        let largest = if arm.targets.iter().any(TargetSpec::needs_largest) {
            let inst = arm.construction.build(
                largest_n,
                &mut construction_rng(spec.simulation.seed, ai, largest_n),
            )?;
            let c = spec.colors.colors(largest_n, &inst)?;
            Some(inst.layer_means(c)?)
        } else {
            None
        };
        for &n in &spec.sizes {
            let clock = Instant::now();
            let inst = arm
                .construction
                .build(n, &mut construction_rng(spec.simulation.seed, ai, n))?;
            let c = spec.colors.colors(n, &inst)?;
            let moments = closed_form(&inst, c)?;
            let layer_means = inst.layer_means(c)?;
            let law = instance_law(&inst, c, &spec.simulation)?;
            let elapsed = clock.elapsed().as_secs_f64() * 1e3;
            let emp = law_moments(&law);
            for target in &arm.targets {
                let t = target.law(&layer_means, largest.as_deref(), spec.tail_tol)?;
                if t.dimension() != law.dimension() {
                    return Err(Error::DimensionMismatch {
                        left: law.dimension(),
                        right: t.dimension(),
                    });
                }
                let tm = law_moments(&t);
                let var_gap = emp
                    .covariance
                    .iter()
                    .zip(&tm.covariance)
                    .map(|(a, b)| max_abs_diff(a, b))
                    .fold(0.0, f64::max);
                rows.push(CompareRow {
                    arm: arm.label.clone(),
                    target: target.label(),
                    n,
                    c,
                    tv: tv_distance(&law, &t)?,
                    mean_gap: max_abs_diff(&emp.mean, &tm.mean),
                    var_gap,
                    runtime_ms: elapsed,
                });
            }
            results.push(SizeResult {
                arm: arm.label.clone(),
                n,
                c,
                layer_means,
                means: moments.means,
                covariance: moments.covariance,
                max_condition_ratio: moments.max_ratio,
                empirical_mean: emp.mean,
                empirical_covariance: emp.covariance,
            });
            laws.push((arm.label.clone(), n, law));
        }
    }
    let manifest = RunManifest {
        spec: spec.clone(),
        seed: spec.simulation.seed,
        version: env!("CARGO_PKG_VERSION").to_string(),
        started_unix,
        finished_unix: unix_now(),
        results,
        rows: rows.clone(),
    };
    Ok(CompareOutput {
        rows,
        manifest,
        laws,
    })
}

/// Deterministic table: identical bytes for identical spec and seed.
pub fn rows_csv(rows: &[CompareRow]) -> String {
    let mut out = String::from("arm,target,n,c,tv,mean_gap,var_gap\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{:e},{:e},{:e}\n",
            r.arm, r.target, r.n, r.c, r.tv, r.mean_gap, r.var_gap
        ));
    }
    out
}

/// Wall-clock times, kept out of the deterministic table.
pub fn timing_csv(rows: &[CompareRow]) -> String {
    let mut out = String::from("arm,target,n,runtime_ms\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{:.3}\n",
            r.arm, r.target, r.n, r.runtime_ms
        ));
    }
    out
}

/// Writes the table, timings and manifest into `dir`.
pub fn write_outputs(dir: &Path, out: &CompareOutput, format: OutputFormat) -> Result<()> {
    match format {
        OutputFormat::Csv => io::write_string(dir.join("compare.csv"), &rows_csv(&out.rows))?,
        OutputFormat::Json => {
            let stable: Vec<serde_json::Value> = out
                .rows
                .iter()
                .map(|r| {
                    serde_json::json!({
                        "arm": r.arm, "target": r.target, "n": r.n, "c": r.c,
                        "tv": r.tv, "mean_gap": r.mean_gap, "var_gap": r.var_gap,
                    })
                })
                .collect();
            io::write_string(dir.join("compare.json"), &io::to_json(&stable)?)?
        }
    }
    io::write_string(dir.join("timing.csv"), &timing_csv(&out.rows))?;
    io::write_string(dir.join("manifest.json"), &io::to_json(&out.manifest)?)?;
    Ok(())
}
