//! Seeded simulation of monochromatic counts and exact enumeration of their
//! law over all `c^n` colorings.
//!
//! Replicates are grouped into fixed blocks of [`BLOCK_SIZE`]; block `b` draws
//! from the ChaCha8 stream `b` of the generator seeded with the configured
//! seed. Shards only decide which thread runs which blocks, so the result is
//! identical for every shard count.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::{Coloring, Multiplex, VertexId, WeightedUniformHypergraph};
use crate::limits::DiscreteLaw;
use crate::subsets::{binomial, for_each_subset, KeyPacker, SubsetKey};

/// Replicates per random stream.
pub const BLOCK_SIZE: u64 = 4096;

/// Default cap on `c^n` for exact enumeration.
pub const DEFAULT_ENUMERATION_BOUND: u128 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimulationConfig {
    pub c: u32,
    pub replicates: u64,
    pub seed: u64,
    pub shards: usize,
}

impl SimulationConfig {
    pub fn new(c: u32, replicates: u64, seed: u64, shards: usize) -> Result<Self> {
        let cfg = SimulationConfig {
            c,
            replicates,
            seed,
            shards,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.c == 0 {
            return Err(Error::NoColors);
        }
        if self.replicates == 0 {
            return Err(Error::invalid("replicates must be at least 1"));
        }
        if self.shards == 0 {
            return Err(Error::invalid("shards must be at least 1"));
        }
        Ok(())
    }
}

/// Provenance attached to an empirical law.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimulationMetadata {
    pub seed: u64,
    pub replicates: u64,
    pub shards: usize,
    pub c: u32,
}

/// Empirical law of simulated count vectors; every mass is `count / replicates`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EmpiricalLaw {
    pub metadata: SimulationMetadata,
    pub law: DiscreteLaw,
}

/// I.i.d. uniform colors in `1..=c`.
pub fn sample_coloring<R: Rng + ?Sized>(n: usize, c: u32, rng: &mut R) -> Result<Coloring> {
    if c == 0 {
        return Err(Error::NoColors);
    }
    let colors = (0..n).map(|_| rng.random_range(1..=c)).collect();
    Coloring::new(colors, c)
}

/// Edges of every layer, flattened, each tagged with its layer and weight.
struct Instance {
    n: usize,
    dimension: usize,
    uniformity: Vec<usize>,
    start: Vec<usize>,
    vertices: Vec<VertexId>,
    layer: Vec<usize>,
    weight: Vec<u64>,
}

impl Instance {
    fn from_multiplex(m: &Multiplex) -> Self {
        let mut inst = Instance::empty(m.num_vertices(), m.num_layers());
        for (i, l) in m.layers().iter().enumerate() {
            for e in l.edges() {
                inst.push(e.vertices(), i, 1);
            }
        }
        inst
    }

    fn from_weighted(wh: &WeightedUniformHypergraph) -> Self {
        let mut inst = Instance::empty(wh.base().num_vertices(), 1);
        for (e, &w) in wh.base().edges().iter().zip(wh.weights()) {
            inst.push(e.vertices(), 0, w as u64);
        }
        inst
    }

    fn empty(n: usize, dimension: usize) -> Self {
        Instance {
            n,
            dimension,
            uniformity: Vec::new(),
            start: vec![0],
            vertices: Vec::new(),
            layer: Vec::new(),
            weight: Vec::new(),
        }
    }

    fn push(&mut self, vs: &[VertexId], layer: usize, weight: u64) {
        self.vertices.extend_from_slice(vs);
        self.start.push(self.vertices.len());
        self.uniformity.push(vs.len());
        self.layer.push(layer);
        self.weight.push(weight);
    }

    fn num_edges(&self) -> usize {
        self.layer.len()
    }

    #[inline]
    fn edge(&self, i: usize) -> &[VertexId] {
        &self.vertices[self.start[i]..self.start[i + 1]]
    }

    fn totals(&self) -> Vec<u64> {
        let mut out = vec![0; self.dimension];
        for i in 0..self.num_edges() {
            out[self.layer[i]] += self.weight[i];
        }
        out
    }
}

/// Edges of one uniformity keyed by vertex set, for lookups from inside a
/// color class.
struct ClassIndex {
    r: usize,
    map: FxHashMap<SubsetKey, (u32, u32)>,
    layer: Vec<usize>,
    weight: Vec<u64>,
}

enum Strategy {
    Scan,
    Classes(Vec<ClassIndex>),
}

/// Per-replicate counter choosing between a full edge scan and enumerating
/// vertex subsets inside each color class, by expected work.
struct Counter<'a> {
    inst: &'a Instance,
    c: u32,
    packer: KeyPacker,
    strategy: Strategy,
    min_r: usize,
}

struct Scratch {
    colors: Vec<u32>,
    order: Vec<VertexId>,
    pairs: Vec<(u32, VertexId)>,
    ranges: Vec<(u32, u32)>,
    counts: Vec<u64>,
}

impl<'a> Counter<'a> {
    fn new(inst: &'a Instance, c: u32) -> Self {
        let packer = KeyPacker::new(inst.n);
        let mut rs: Vec<usize> = inst.uniformity.clone();
        rs.sort_unstable();
        rs.dedup();
        let scan_cost: f64 = inst.vertices.len() as f64 + 1.0;
        let class_cost: f64 = rs
            .iter()
            .map(|&r| {
                let subsets = binomial(inst.n as u64, r as u64).map_or(f64::INFINITY, |b| b as f64);
                8.0 * r as f64 * subsets / (c as f64).powi(r as i32 - 1)
            })
            .sum::<f64>()
            + 4.0 * inst.n as f64
            + if (c as usize) <= 4 * inst.n {
                c as f64
            } else {
                0.0
            };
        let strategy = if class_cost < scan_cost {
            Strategy::Classes(rs.iter().map(|&r| Self::index(inst, r, &packer)).collect())
        } else {
            Strategy::Scan
        };
        Counter {
            inst,
            c,
            packer,
            strategy,
            min_r: rs.first().copied().unwrap_or(usize::MAX),
        }
    }

    fn index(inst: &Instance, r: usize, packer: &KeyPacker) -> ClassIndex {
        let mut grouped: BTreeMap<&[VertexId], Vec<usize>> = BTreeMap::new();
        for i in 0..inst.num_edges() {
            if inst.uniformity[i] == r {
                grouped.entry(inst.edge(i)).or_default().push(i);
            }
        }
        let mut map = FxHashMap::default();
        let (mut layer, mut weight) = (Vec::new(), Vec::new());
        for (vs, ids) in grouped {
            let a = layer.len() as u32;
            for i in ids {
                layer.push(inst.layer[i]);
                weight.push(inst.weight[i]);
            }
            map.insert(packer.key(vs), (a, layer.len() as u32));
        }
        ClassIndex {
            r,
            map,
            layer,
            weight,
        }
    }

    fn scratch(&self) -> Scratch {
        Scratch {
            colors: vec![0; self.inst.n],
            order: Vec::with_capacity(self.inst.n),
            pairs: Vec::with_capacity(self.inst.n),
            ranges: Vec::new(),
            counts: vec![0; self.inst.dimension],
        }
    }

    /// Counts for the 0-based colors in `s.colors`, written to `s.counts`.
    fn count(&self, s: &mut Scratch) {
        s.counts.iter_mut().for_each(|x| *x = 0);
        match &self.strategy {
            Strategy::Scan => {
                let inst = self.inst;
                for i in 0..inst.num_edges() {
                    let e = inst.edge(i);
                    let x = s.colors[e[0] as usize];
                    if e[1..].iter().all(|&v| s.colors[v as usize] == x) {
                        s.counts[inst.layer[i]] += inst.weight[i];
                    }
                }
            }
            Strategy::Classes(indices) => {
                self.group(s);
                let Scratch {
                    order,
                    ranges,
                    counts,
                    ..
                } = s;
                for &(a, b) in ranges.iter() {
                    let class = &order[a as usize..b as usize];
                    for idx in indices {
                        if class.len() < idx.r {
                            continue;
                        }
                        for_each_subset(class, idx.r, |sub| {
                            if let Some(&(a, b)) = idx.map.get(&self.packer.key(sub)) {
                                for k in a as usize..b as usize {
                                    counts[idx.layer[k]] += idx.weight[k];
                                }
                            }
                        });
                    }
                }
            }
        }
    }

    /// Fills `order` with vertices grouped by color (ascending inside each
    /// group) and `ranges` with the groups large enough to hold an edge.
    fn group(&self, s: &mut Scratch) {
        let n = self.inst.n;
        s.order.clear();
        s.ranges.clear();
        if (self.c as usize) <= 4 * n {
            let c = self.c as usize;
            let mut start = vec![0u32; c + 1];
            for &x in &s.colors {
                start[x as usize + 1] += 1;
            }
            for i in 0..c {
                start[i + 1] += start[i];
            }
            s.order.resize(n, 0);
            let mut fill = start.clone();
            for (v, &x) in s.colors.iter().enumerate() {
                s.order[fill[x as usize] as usize] = v as VertexId;
                fill[x as usize] += 1;
            }
            for i in 0..c {
                if (start[i + 1] - start[i]) as usize >= self.min_r {
                    s.ranges.push((start[i], start[i + 1]));
                }
            }
        } else {
            s.pairs.clear();
            s.pairs.extend(
                s.colors
                    .iter()
                    .enumerate()
                    .map(|(v, &x)| (x, v as VertexId)),
            );
            s.pairs.sort_unstable();
            s.order.extend(s.pairs.iter().map(|p| p.1));
            let mut i = 0;
            while i < n {
                let mut j = i + 1;
                while j < n && s.pairs[j].0 == s.pairs[i].0 {
                    j += 1;
                }
                if j - i >= self.min_r {
                    s.ranges.push((i as u32, j as u32));
                }
                i = j;
            }
        }
    }
}

fn simulate(inst: &Instance, cfg: &SimulationConfig) -> Result<EmpiricalLaw> {
    cfg.validate()?;
    let counter = Counter::new(inst, cfg.c);
    let blocks = cfg.replicates.div_ceil(BLOCK_SIZE);
    let shards = (cfg.shards as u64).min(blocks).max(1);
    let per = blocks.div_ceil(shards);
    let tallies: Vec<FxHashMap<Vec<u64>, u64>> = (0..shards)
        .into_par_iter()
        .map(|s| {
            let mut tally: FxHashMap<Vec<u64>, u64> = FxHashMap::default();
            let mut scratch = counter.scratch();
            for b in s * per..((s + 1) * per).min(blocks) {
                let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
                rng.set_stream(b);
                let reps = BLOCK_SIZE.min(cfg.replicates - b * BLOCK_SIZE);
                for _ in 0..reps {
                    for x in scratch.colors.iter_mut() {
                        *x = rng.random_range(0..cfg.c);
                    }
                    counter.count(&mut scratch);
                    match tally.get_mut(scratch.counts.as_slice()) {
                        Some(k) => *k += 1,
                        None => {
                            tally.insert(scratch.counts.clone(), 1);
                        }
                    }
                }
            }
            tally
        })
        .collect();
    let mut merged: BTreeMap<Vec<u64>, u64> = BTreeMap::new();
    for t in tallies {
        for (k, v) in t {
            *merged.entry(k).or_insert(0) += v;
        }
    }
    Ok(EmpiricalLaw {
        metadata: SimulationMetadata {
            seed: cfg.seed,
            replicates: cfg.replicates,
            shards: cfg.shards,
            c: cfg.c,
        },
        law: DiscreteLaw::from_counts(inst.dimension, merged, cfg.replicates)?,
    })
}

/// Empirical joint law of the per-layer monochromatic counts.
pub fn simulate_t(m: &Multiplex, cfg: &SimulationConfig) -> Result<EmpiricalLaw> {
    simulate(&Instance::from_multiplex(m), cfg)
}

/// Empirical law of the weighted count.
pub fn simulate_w(wh: &WeightedUniformHypergraph, cfg: &SimulationConfig) -> Result<EmpiricalLaw> {
    simulate(&Instance::from_weighted(wh), cfg)
}

/// Exact law as integer counts over the `c^n` colorings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactLaw {
    pub dimension: usize,
    pub counts: BTreeMap<Vec<u64>, u128>,
    pub denominator: u128,
}

impl ExactLaw {
    pub fn law(&self) -> DiscreteLaw {
        let d = self.denominator as f64;
        DiscreteLaw::new(
            self.dimension,
            self.counts.iter().map(|(k, &v)| (k.clone(), v as f64 / d)),
            0.0,
        )
        .expect("exact masses are normalized")
    }

    pub fn prob(&self, outcome: &[u64]) -> BigRational {
        let k = self.counts.get(outcome).copied().unwrap_or(0);
        BigRational::new(BigInt::from(k), BigInt::from(self.denominator))
    }

    /// Exact mean vector and covariance matrix.
    pub fn moments(&self) -> (Vec<BigRational>, Vec<Vec<BigRational>>) {
        let d = self.dimension;
        let den = BigInt::from(self.denominator);
        let mut s1 = vec![BigInt::zero(); d];
        let mut s2 = vec![vec![BigInt::zero(); d]; d];
        for (x, &k) in &self.counts {
            let k = BigInt::from(k);
            for i in 0..d {
                s1[i] += &k * x[i];
                for j in 0..d {
                    s2[i][j] += &k * x[i] * x[j];
                }
            }
        }
        let mean: Vec<BigRational> = s1
            .iter()
            .map(|s| BigRational::new(s.clone(), den.clone()))
            .collect();
        let cov = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| BigRational::new(s2[i][j].clone(), den.clone()) - &mean[i] * &mean[j])
                    .collect()
            })
            .collect();
        (mean, cov)
    }
}

fn enumerate(inst: &Instance, c: u32, bound: u128) -> Result<ExactLaw> {
    if c == 0 {
        return Err(Error::NoColors);
    }
    let n = inst.n;
    let total = (c as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if total > bound {
        return Err(Error::ResourceBound {
            what: "colorings",
            required: total,
            limit: bound,
        });
    }
    let d = inst.dimension;
    if c == 1 || n == 0 {
        return Ok(ExactLaw {
            dimension: d,
            counts: BTreeMap::from([(inst.totals(), 1)]),
            denominator: 1,
        });
    }
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); n];
    for i in 0..inst.num_edges() {
        for &v in inst.edge(i) {
            incident[v as usize].push(i);
        }
    }
    // Colorings with vertex 0 colored 0 represent every class of the
    // color-permutation symmetry once; split further on vertex 1.
    let first_free = if n >= 2 { 2 } else { 1 };
    let heads: Vec<u32> = if n >= 2 { (0..c).collect() } else { vec![0] };
    let parts: Vec<FxHashMap<Vec<u64>, u128>> = heads
        .into_par_iter()
        .map(|head| {
            let mut colors = vec![0u32; n];
            if n >= 2 {
                colors[1] = head;
            }
            let mono = |colors: &[u32], i: usize| {
                let e = inst.edge(i);
                let x = colors[e[0] as usize];
                e[1..].iter().all(|&v| colors[v as usize] == x)
            };
            let mut flag: Vec<bool> = (0..inst.num_edges()).map(|i| mono(&colors, i)).collect();
            let mut counts = vec![0u64; d];
            for i in 0..inst.num_edges() {
                if flag[i] {
                    counts[inst.layer[i]] += inst.weight[i];
                }
            }
            let mut tally: FxHashMap<Vec<u64>, u128> = FxHashMap::default();
            loop {
                match tally.get_mut(counts.as_slice()) {
                    Some(k) => *k += 1,
                    None => {
                        tally.insert(counts.clone(), 1);
                    }
                }
                let mut v = n;
                loop {
                    if v == first_free {
                        return tally;
                    }
                    v -= 1;
                    let wrapped = colors[v] + 1 == c;
                    colors[v] = if wrapped { 0 } else { colors[v] + 1 };
                    for &i in &incident[v] {
                        let now = mono(&colors, i);
                        if now != flag[i] {
                            flag[i] = now;
                            if now {
                                counts[inst.layer[i]] += inst.weight[i];
                            } else {
                                counts[inst.layer[i]] -= inst.weight[i];
                            }
                        }
                    }
                    if !wrapped {
                        break;
                    }
                }
            }
        })
        .collect();
    let mut merged: BTreeMap<Vec<u64>, u128> = BTreeMap::new();
    for p in parts {
        for (k, v) in p {
            *merged.entry(k).or_insert(0) += v * c as u128;
        }
    }
    Ok(ExactLaw {
        dimension: d,
        counts: merged,
        denominator: total,
    })
}

/// Exact joint law of the per-layer counts, enumerating all `c^n` colorings.
pub fn exact_law(m: &Multiplex, c: u32) -> Result<ExactLaw> {
    exact_law_bounded(m, c, DEFAULT_ENUMERATION_BOUND)
}

pub fn exact_law_bounded(m: &Multiplex, c: u32, bound: u128) -> Result<ExactLaw> {
    enumerate(&Instance::from_multiplex(m), c, bound)
}

/// Exact law of the weighted count.
pub fn exact_law_weighted(wh: &WeightedUniformHypergraph, c: u32) -> Result<ExactLaw> {
    exact_law_weighted_bounded(wh, c, DEFAULT_ENUMERATION_BOUND)
}

pub fn exact_law_weighted_bounded(
    wh: &WeightedUniformHypergraph,
    c: u32,
    bound: u128,
) -> Result<ExactLaw> {
    enumerate(&Instance::from_weighted(wh), c, bound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::UniformHypergraph;
    use crate::limits::tv_distance;

    fn single() -> UniformHypergraph {
        UniformHypergraph::new(3, 3, vec![vec![0, 1, 2]]).unwrap()
    }

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn exact_single_edge() {
        let law = exact_law(&Multiplex::single(single()), 2).unwrap();
        assert_eq!(law.prob(&[0]), q(3, 4));
        assert_eq!(law.prob(&[1]), q(1, 4));
        let one = exact_law(&Multiplex::single(single()), 1).unwrap();
        assert_eq!(one.law(), DiscreteLaw::point_mass(vec![1]));
    }

    #[test]
    fn exact_fixture_variance() {
        let h = UniformHypergraph::new(3, 5, vec![vec![0, 1, 2], vec![0, 1, 3], vec![2, 3, 4]])
            .unwrap();
        let (mean, cov) = exact_law(&Multiplex::single(h), 2).unwrap().moments();
        assert_eq!(mean[0], q(3, 4));
        assert_eq!(cov[0][0], q(11, 16));
    }

    #[test]
    fn identical_layers_lie_on_diagonal() {
        let h = UniformHypergraph::new(2, 4, vec![vec![0, 1], vec![1, 2], vec![2, 3]]).unwrap();
        let law = exact_law(&Multiplex::new(vec![h.clone(), h]).unwrap(), 3).unwrap();
        assert!(law.counts.keys().all(|k| k[0] == k[1]));
    }

    #[test]
    fn weighted_exact() {
        let w = WeightedUniformHypergraph::new(single(), vec![3], 3).unwrap();
        let law = exact_law_weighted(&w, 3).unwrap();
        assert_eq!(law.prob(&[0]), q(8, 9));
        assert_eq!(law.prob(&[3]), q(1, 9));
    }

    #[test]
    fn bound_is_enforced() {
        let h = UniformHypergraph::new(2, 30, vec![vec![0, 1]]).unwrap();
        assert!(matches!(
            exact_law(&Multiplex::single(h), 2),
            Err(Error::ResourceBound { .. })
        ));
    }

    #[test]
    fn simulation_is_shard_invariant() {
        let h = UniformHypergraph::new(3, 6, vec![vec![0, 1, 2], vec![1, 2, 3], vec![3, 4, 5]])
            .unwrap();
        let m = Multiplex::single(h);
        let a = simulate_t(&m, &SimulationConfig::new(2, 20_000, 9, 1).unwrap()).unwrap();
        let b = simulate_t(&m, &SimulationConfig::new(2, 20_000, 9, 4).unwrap()).unwrap();
        assert_eq!(a.law, b.law);
        let exact = exact_law(&m, 2).unwrap().law();
        assert!(tv_distance(&a.law, &exact).unwrap() < 0.02);
    }

    #[test]
    fn both_strategies_agree() {
        // many colors favour class enumeration, few colors the scan
        let edges: Vec<Vec<u32>> = (0..40u32).map(|i| vec![i, i + 1, i + 2]).collect();
        let h = UniformHypergraph::new(3, 42, edges).unwrap();
        let inst = Instance::from_multiplex(&Multiplex::single(h));
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for c in [1u32, 2, 5, 40, 500] {
            let counter = Counter::new(&inst, c);
            let scan = Counter {
                strategy: Strategy::Scan,
                ..Counter::new(&inst, c)
            };
            let (mut s1, mut s2) = (counter.scratch(), scan.scratch());
            for _ in 0..200 {
                for x in s1.colors.iter_mut() {
                    *x = rng.random_range(0..c);
                }
                s2.colors.clone_from(&s1.colors);
                counter.count(&mut s1);
                scan.count(&mut s2);
                assert_eq!(s1.counts, s2.counts);
            }
        }
    }

    #[test]
    fn empty_layer_is_point_mass() {
        let h = UniformHypergraph::empty(3, 10).unwrap();
        let e = simulate_t(
            &Multiplex::single(h),
            &SimulationConfig::new(3, 100, 0, 1).unwrap(),
        )
        .unwrap();
        assert_eq!(e.law, DiscreteLaw::point_mass(vec![0]));
    }

    #[test]
    fn coloring_sampler() {
        let mut a = ChaCha8Rng::seed_from_u64(3);
        let mut b = ChaCha8Rng::seed_from_u64(3);
        assert_eq!(
            sample_coloring(50, 4, &mut a).unwrap(),
            sample_coloring(50, 4, &mut b).unwrap()
        );
        let x = sample_coloring(20, 1, &mut a).unwrap();
        assert!(x.colors().iter().all(|&v| v == 1));
    }
}
