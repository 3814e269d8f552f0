//! Uniform hypergraphs, multiplexes, weighted hypergraphs and colorings,
//! together with the intersection statistics used by the moment formulas.
//!
//! All vertices are dense `0..n` integers. Edge sets are kept sorted
//! lexicographically and free of duplicates, so iteration order is canonical.

use std::collections::BTreeSet;

use rustc_hash::FxHashMap;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::subsets::{binomial, for_each_subset, KeyPacker, SubsetKey};

pub type VertexId = u32;

/// Strictly increasing vertex list.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Hyperedge(Vec<VertexId>);

impl Hyperedge {
    /// Sorts `vertices` and rejects repeats. `position` is only used in errors.
    pub fn new(mut vertices: Vec<VertexId>, position: usize) -> Result<Self> {
        vertices.sort_unstable();
        if let Some(w) = vertices.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::RepeatedVertex {
                edge: position,
                vertex: w[0],
            });
        }
        Ok(Hyperedge(vertices))
    }

    pub(crate) fn from_sorted(vertices: Vec<VertexId>) -> Self {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        Hyperedge(vertices)
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    /// Size of the intersection with `other` (merge of two sorted lists).
    pub fn intersection_size(&self, other: &Hyperedge) -> usize {
        sorted_intersection_size(&self.0, &other.0)
    }

    pub fn is_subset_of(&self, other: &Hyperedge) -> bool {
        sorted_intersection_size(&self.0, &other.0) == self.0.len()
    }
}

pub(crate) fn sorted_intersection_size(a: &[VertexId], b: &[VertexId]) -> usize {
    let (mut i, mut j, mut n) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                n += 1;
                i += 1;
                j += 1;
            }
        }
    }
    n
}

/// An `r`-uniform hypergraph on the vertex set `[0, n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniformHypergraph {
    r: usize,
    n: usize,
    edges: Vec<Hyperedge>,
}

impl UniformHypergraph {
    /// Validates and canonicalizes the edge list. Duplicate edges are rejected.
    pub fn new(r: usize, n: usize, edges: Vec<Vec<VertexId>>) -> Result<Self> {
        check_shape(r, n)?;
        let mut out = Vec::with_capacity(edges.len());
        for (pos, e) in edges.into_iter().enumerate() {
            out.push(validate_edge(r, n, e, pos)?);
        }
        let mut order: Vec<usize> = (0..out.len()).collect();
        order.sort_by(|&a, &b| out[a].cmp(&out[b]).then(a.cmp(&b)));
        for w in order.windows(2) {
            if out[w[0]] == out[w[1]] {
                return Err(Error::DuplicateEdge { edge: w[1] });
            }
        }
        out.sort_unstable();
        Ok(UniformHypergraph { r, n, edges: out })
    }

    /// Hypergraph with no edges.
    pub fn empty(r: usize, n: usize) -> Result<Self> {
        check_shape(r, n)?;
        Ok(UniformHypergraph {
            r,
            n,
            edges: Vec::new(),
        })
    }

    /// Builds from already validated edges, sorting and deduplicating them.
    pub(crate) fn from_edges_dedup(r: usize, n: usize, mut edges: Vec<Hyperedge>) -> Self {
        edges.sort_unstable();
        edges.dedup();
        debug_assert!(edges
            .iter()
            .all(|e| e.len() == r && e.0.last().is_none_or(|&v| (v as usize) < n)));
        UniformHypergraph { r, n, edges }
    }

    pub fn uniformity(&self) -> usize {
        self.r
    }

    pub fn num_vertices(&self) -> usize {
        self.n
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Hyperedge] {
        &self.edges
    }

    pub fn contains_edge(&self, e: &Hyperedge) -> bool {
        self.edges.binary_search(e).is_ok()
    }

    /// Raw vertex lists, useful for serialization.
    pub fn edge_lists(&self) -> Vec<Vec<VertexId>> {
        self.edges.iter().map(|e| e.0.clone()).collect()
    }

    fn check_compatible(&self, other: &UniformHypergraph) -> Result<()> {
        if self.n != other.n {
            return Err(Error::VertexCountMismatch {
                left: self.n,
                right: other.n,
            });
        }
        if self.r != other.r {
            return Err(Error::UniformityMismatch {
                left: self.r,
                right: other.r,
            });
        }
        Ok(())
    }

    fn set_op(&self, other: &UniformHypergraph, keep: impl Fn(bool, bool) -> bool) -> Result<Self> {
        self.check_compatible(other)?;
        let (a, b) = (&self.edges, &other.edges);
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::new();
        while i < a.len() || j < b.len() {
            let ord = match (a.get(i), b.get(j)) {
                (Some(x), Some(y)) => x.cmp(y),
                (Some(_), None) => std::cmp::Ordering::Less,
                _ => std::cmp::Ordering::Greater,
            };
            match ord {
                std::cmp::Ordering::Less => {
                    if keep(true, false) {
                        out.push(a[i].clone());
                    }
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    if keep(false, true) {
                        out.push(b[j].clone());
                    }
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    if keep(true, true) {
                        out.push(a[i].clone());
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Ok(UniformHypergraph {
            r: self.r,
            n: self.n,
            edges: out,
        })
    }

    /// Edge-set union on the shared vertex set.
    pub fn union(&self, other: &UniformHypergraph) -> Result<Self> {
        self.set_op(other, |x, y| x || y)
    }

    /// Edges of `self` that are not in `other`.
    pub fn difference(&self, other: &UniformHypergraph) -> Result<Self> {
        self.set_op(other, |x, y| x && !y)
    }

    pub fn intersection(&self, other: &UniformHypergraph) -> Result<Self> {
        self.set_op(other, |x, y| x && y)
    }

    /// Number of edges containing the vertex set `s` (`1 <= |s| <= r`).
    pub fn containing_count(&self, s: &[VertexId]) -> Result<u64> {
        let t = s.len();
        if t == 0 || t > self.r {
            return Err(Error::SubsetSize { t, r: self.r });
        }
        let s = Hyperedge::new(s.to_vec(), 0)?;
        if let Some(&v) = s.0.iter().find(|&&v| v as usize >= self.n) {
            return Err(Error::VertexOutOfRange {
                edge: 0,
                vertex: v,
                n: self.n,
            });
        }
        Ok(self.edges.iter().filter(|e| s.is_subset_of(e)).count() as u64)
    }

    /// `K(t, H)`: ordered pairs of distinct edges sharing exactly `t` vertices,
    /// for `0 <= t <= r - 1`.
    pub fn pairs_sharing(&self, t: usize) -> Result<u64> {
        if t >= self.r {
            return Err(Error::IntersectionOutOfRange {
                t,
                min: 0,
                max: self.r - 1,
            });
        }
        Ok(self.intersection_profile()[t])
    }

    /// Ordered pair counts for every exact intersection size `0..r`, built from
    /// subset containment counts and inverted by inclusion-exclusion.
    ///
    /// Let `A_j` be the number of unordered edge pairs whose intersection
    /// contains a given `j`-subset, summed over subsets. Then
    /// `A_j = sum_{t >= j} C(t, j) N_t`, so `N_t = sum_{j >= t} (-1)^{j-t} C(j, t) A_j`.
    pub fn intersection_profile(&self) -> Vec<u64> {
        let r = self.r;
        let m = self.edges.len() as i128;
        let mut a = vec![0i128; r + 1];
        a[0] = m * (m - 1) / 2;
        for (j, counts) in subset_counts(self, 1..r).into_iter().enumerate() {
            a[j + 1] = counts
                .values()
                .map(|&c| (c as i128) * (c as i128 - 1) / 2)
                .sum();
        }
        (0..r)
            .map(|t| {
                let unordered = invert_containment(&a, t);
                debug_assert!(unordered >= 0);
                2 * unordered as u64
            })
            .collect()
    }

    /// Direct `O(m^2 r)` pairwise scan; same output as [`intersection_profile`].
    ///
    /// [`intersection_profile`]: UniformHypergraph::intersection_profile
    pub fn intersection_profile_pairwise(&self) -> Vec<u64> {
        let mut out = vec![0u64; self.r + 1];
        for (i, e1) in self.edges.iter().enumerate() {
            for e2 in &self.edges[i + 1..] {
                out[e1.intersection_size(e2)] += 2;
            }
        }
        out.truncate(self.r);
        out
    }

    /// Count of monochromatic edges under `coloring`.
    pub fn count_monochromatic(&self, coloring: &Coloring) -> Result<u64> {
        coloring.check_len(self.n)?;
        Ok(self
            .edges
            .iter()
            .filter(|e| coloring.is_monochromatic(e))
            .count() as u64)
    }

    /// Splits the edge set into the truncation set (every `t`-subset with
    /// `2 <= t <= r-1` lies in at most `eps * c^(r-t)` edges) and the rest.
    /// For `r = 2` the threshold family is empty; every edge is kept and the
    /// split is flagged as undefined.
    pub fn truncation_split(&self, eps: f64, c: u32) -> Result<TruncationSplit> {
        if !(eps > 0.0) || !eps.is_finite() {
            return Err(Error::invalid(format!("eps must be positive, got {eps}")));
        }
        if c == 0 {
            return Err(Error::NoColors);
        }
        let r = self.r;
        if r == 2 {
            return Ok(TruncationSplit {
                kept: self.clone(),
                removed: UniformHypergraph::empty(r, self.n)?,
                undefined_for_graphs: true,
            });
        }
        let packer = KeyPacker::new(self.n);
        let counts = subset_counts(self, 2..r);
        let thresholds: Vec<f64> = (2..r)
            .map(|t| eps * (c as f64).powi((r - t) as i32))
            .collect();
        let mut kept = Vec::new();
        let mut removed = Vec::new();
        for e in &self.edges {
            let mut ok = true;
            for (idx, t) in (2..r).enumerate() {
                for_each_subset(&e.0, t, |s| {
                    if ok && counts[idx][&packer.key(s)] as f64 > thresholds[idx] {
                        ok = false;
                    }
                });
                if !ok {
                    break;
                }
            }
            if ok {
                kept.push(e.clone());
            } else {
                removed.push(e.clone());
            }
        }
        Ok(TruncationSplit {
            kept: UniformHypergraph {
                r,
                n: self.n,
                edges: kept,
            },
            removed: UniformHypergraph {
                r,
                n: self.n,
                edges: removed,
            },
            undefined_for_graphs: false,
        })
    }
}

/// Result of [`UniformHypergraph::truncation_split`].
#[derive(Clone, Debug)]
pub struct TruncationSplit {
    pub kept: UniformHypergraph,
    pub removed: UniformHypergraph,
    /// Set when `r = 2`, where the threshold set is not defined.
    pub undefined_for_graphs: bool,
}

fn check_shape(r: usize, n: usize) -> Result<()> {
    if r < 2 {
        return Err(Error::InvalidUniformity(r));
    }
    if n < r {
        return Err(Error::TooFewVertices { n, r });
    }
    if n > VertexId::MAX as usize {
        return Err(Error::invalid(format!("too many vertices: {n}")));
    }
    Ok(())
}

fn validate_edge(r: usize, n: usize, e: Vec<VertexId>, pos: usize) -> Result<Hyperedge> {
    if e.len() != r {
        return Err(Error::EdgeSize {
            edge: pos,
            expected: r,
            found: e.len(),
        });
    }
    if let Some(&v) = e.iter().find(|&&v| v as usize >= n) {
        return Err(Error::VertexOutOfRange {
            edge: pos,
            vertex: v,
            n,
        });
    }
    Hyperedge::new(e, pos)
}

/// `counts[j]` maps every `(sizes.start + j)`-subset of some edge to the
/// number of edges containing it.
pub(crate) fn subset_counts(
    h: &UniformHypergraph,
    sizes: std::ops::Range<usize>,
) -> Vec<FxHashMap<SubsetKey, u64>> {
    let packer = KeyPacker::new(h.n);
    sizes
        .map(|j| {
            let mut map: FxHashMap<SubsetKey, u64> = FxHashMap::default();
            for e in &h.edges {
                for_each_subset(&e.0, j, |s| *map.entry(packer.key(s)).or_insert(0) += 1);
            }
            map
        })
        .collect()
}

fn invert_containment(a: &[i128], t: usize) -> i128 {
    let mut acc = 0i128;
    for j in t..a.len() {
        let coef = binomial(j as u64, t as u64).expect("small binomial") as i128;
        if (j - t) % 2 == 0 {
            acc += coef * a[j];
        } else {
            acc -= coef * a[j];
        }
    }
    acc
}

/// `K(t, H1, H2)` for every `t` in `0..=min(r1, r2)`: ordered cross pairs
/// `(e1, e2)` with `e1` in `h1`, `e2` in `h2` and `|e1 ∩ e2| = t`. An edge
/// present in both layers pairs with itself only at `t = r1 = r2`.
pub fn cross_intersection_profile(
    h1: &UniformHypergraph,
    h2: &UniformHypergraph,
) -> Result<Vec<u64>> {
    if h1.n != h2.n {
        return Err(Error::VertexCountMismatch {
            left: h1.n,
            right: h2.n,
        });
    }
    let rmin = h1.r.min(h2.r);
    let mut a = vec![0i128; rmin + 1];
    a[0] = h1.edges.len() as i128 * h2.edges.len() as i128;
    let c1 = subset_counts(h1, 1..rmin + 1);
    let c2 = subset_counts(h2, 1..rmin + 1);
    for j in 1..=rmin {
        let (small, large) = if c1[j - 1].len() <= c2[j - 1].len() {
            (&c1[j - 1], &c2[j - 1])
        } else {
            (&c2[j - 1], &c1[j - 1])
        };
        a[j] = small
            .iter()
            .filter_map(|(k, &x)| large.get(k).map(|&y| x as i128 * y as i128))
            .sum();
    }
    Ok((0..=rmin)
        .map(|t| {
            let v = invert_containment(&a, t);
            debug_assert!(v >= 0);
            v as u64
        })
        .collect())
}

/// Pairwise version of [`cross_intersection_profile`].
pub fn cross_intersection_profile_pairwise(
    h1: &UniformHypergraph,
    h2: &UniformHypergraph,
) -> Result<Vec<u64>> {
    if h1.n != h2.n {
        return Err(Error::VertexCountMismatch {
            left: h1.n,
            right: h2.n,
        });
    }
    let mut out = vec![0u64; h1.r.min(h2.r) + 1];
    for e1 in &h1.edges {
        for e2 in &h2.edges {
            out[e1.intersection_size(e2)] += 1;
        }
    }
    Ok(out)
}

/// `K(t, H1, H2)` for a single `t`.
pub fn pairs_sharing_across(
    t: usize,
    h1: &UniformHypergraph,
    h2: &UniformHypergraph,
) -> Result<u64> {
    let max = h1.r.min(h2.r);
    if h1.n == h2.n && t > max {
        return Err(Error::IntersectionOutOfRange { t, min: 0, max });
    }
    Ok(cross_intersection_profile(h1, h2)?[t])
}

/// Partition of the vertices covered by `edges` into connected components,
/// where two edges are linked when they share a vertex. Components are sorted
/// and listed by smallest vertex.
pub fn connected_components(edges: &[Hyperedge]) -> Vec<Vec<VertexId>> {
    let vertices: Vec<VertexId> = edges
        .iter()
        .flat_map(|e| e.0.iter().copied())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let index = |v: VertexId| vertices.binary_search(&v).unwrap();
    let mut parent: Vec<usize> = (0..vertices.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for e in edges {
        if let Some((&first, rest)) = e.0.split_first() {
            let a = find(&mut parent, index(first));
            for &v in rest {
                let b = find(&mut parent, index(v));
                if a != b {
                    let (lo, hi) = (a.min(b), a.max(b));
                    parent[hi] = lo;
                }
            }
        }
    }
    let mut groups: Vec<Vec<VertexId>> = Vec::new();
    let mut slot: FxHashMap<usize, usize> = FxHashMap::default();
    for (i, &v) in vertices.iter().enumerate() {
        let root = find(&mut parent, i);
        let g = *slot.entry(root).or_insert_with(|| {
            groups.push(Vec::new());
            groups.len() - 1
        });
        groups[g].push(v);
    }
    groups
}

/// Layers sharing one vertex set. Uniformities may differ between layers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multiplex {
    n: usize,
    layers: Vec<UniformHypergraph>,
}

impl Multiplex {
    pub fn new(layers: Vec<UniformHypergraph>) -> Result<Self> {
        let n = layers.first().ok_or(Error::EmptyMultiplex)?.n;
        if let Some(l) = layers.iter().find(|l| l.n != n) {
            return Err(Error::VertexCountMismatch {
                left: n,
                right: l.n,
            });
        }
        Ok(Multiplex { n, layers })
    }

    pub fn single(layer: UniformHypergraph) -> Self {
        Multiplex {
            n: layer.n,
            layers: vec![layer],
        }
    }

    pub fn num_vertices(&self) -> usize {
        self.n
    }

    pub fn layers(&self) -> &[UniformHypergraph] {
        &self.layers
    }

    pub fn num_layers(&self) -> usize {
        self.layers.len()
    }

    /// One monochromatic count per layer.
    pub fn count_monochromatic(&self, coloring: &Coloring) -> Result<Vec<u64>> {
        self.layers
            .iter()
            .map(|l| l.count_monochromatic(coloring))
            .collect()
    }
}

/// A uniform hypergraph whose edges carry integer weights in `[1, K]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedUniformHypergraph {
    base: UniformHypergraph,
    weights: Vec<u32>,
    bound: u32,
}

impl WeightedUniformHypergraph {
    /// `weights[i]` belongs to `base.edges()[i]`.
    pub fn new(base: UniformHypergraph, weights: Vec<u32>, bound: u32) -> Result<Self> {
        if bound == 0 {
            return Err(Error::invalid("weight bound K must be at least 1"));
        }
        if weights.len() != base.edges.len() {
            return Err(Error::WeightCount {
                weights: weights.len(),
                edges: base.edges.len(),
            });
        }
        if let Some((i, &w)) = weights
            .iter()
            .enumerate()
            .find(|(_, &w)| w == 0 || w > bound)
        {
            return Err(Error::WeightOutOfRange {
                edge: i,
                weight: w,
                bound,
            });
        }
        Ok(WeightedUniformHypergraph {
            base,
            weights,
            bound,
        })
    }

    /// Builds from unsorted `(edge, weight)` pairs; the bound is the largest weight.
    pub fn from_pairs(r: usize, n: usize, pairs: Vec<(Vec<VertexId>, u32)>) -> Result<Self> {
        let (edges, weights): (Vec<_>, Vec<_>) = pairs.into_iter().unzip();
        let raw = edges.clone();
        let base = UniformHypergraph::new(r, n, edges)?;
        let mut sorted = vec![0u32; weights.len()];
        for (e, w) in raw.into_iter().zip(weights) {
            let e = Hyperedge::new(e, 0)?;
            let i = base.edges.binary_search(&e).expect("edge present");
            sorted[i] = w;
        }
        let bound = sorted.iter().copied().max().unwrap_or(1).max(1);
        WeightedUniformHypergraph::new(base, sorted, bound)
    }

    /// All weights equal to one.
    pub fn unit(base: UniformHypergraph) -> Self {
        let weights = vec![1; base.num_edges()];
        WeightedUniformHypergraph {
            base,
            weights,
            bound: 1,
        }
    }

    pub fn base(&self) -> &UniformHypergraph {
        &self.base
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn total_weight(&self) -> u64 {
        self.weights.iter().map(|&w| w as u64).sum()
    }

    /// Weighted monochromatic count `sum_e w_e 1{e monochromatic}`.
    pub fn count_weighted(&self, coloring: &Coloring) -> Result<u64> {
        coloring.check_len(self.base.n)?;
        Ok(self
            .base
            .edges
            .iter()
            .zip(&self.weights)
            .filter(|(e, _)| coloring.is_monochromatic(e))
            .map(|(_, &w)| w as u64)
            .sum())
    }

    /// `sum w_{e1} w_{e2}` over ordered pairs of distinct edges sharing exactly
    /// `t` vertices, for every `t` in `0..r`. Same inclusion-exclusion as
    /// [`UniformHypergraph::intersection_profile`] with weight sums per subset.
    pub fn weighted_intersection_profile(&self) -> Vec<u128> {
        let r = self.base.r;
        let packer = KeyPacker::new(self.base.n);
        let pair_mass = |s1: i128, s2: i128| (s1 * s1 - s2) / 2;
        let mut a = vec![0i128; r + 1];
        let s1: i128 = self.weights.iter().map(|&w| w as i128).sum();
        let s2: i128 = self.weights.iter().map(|&w| (w as i128).pow(2)).sum();
        a[0] = pair_mass(s1, s2);
        for (j, slot) in a.iter_mut().enumerate().take(r).skip(1) {
            let mut map: FxHashMap<SubsetKey, (i128, i128)> = FxHashMap::default();
            for (e, &w) in self.base.edges.iter().zip(&self.weights) {
                let w = w as i128;
                for_each_subset(&e.0, j, |s| {
                    let x = map.entry(packer.key(s)).or_insert((0, 0));
                    x.0 += w;
                    x.1 += w * w;
                });
            }
            *slot = map.values().map(|&(x1, x2)| pair_mass(x1, x2)).sum();
        }
        (0..r)
            .map(|t| {
                let v = invert_containment(&a, t);
                debug_assert!(v >= 0);
                2 * v as u128
            })
            .collect()
    }

    /// Pairwise version of [`weighted_intersection_profile`].
    ///
    /// [`weighted_intersection_profile`]: WeightedUniformHypergraph::weighted_intersection_profile
    pub fn weighted_intersection_profile_pairwise(&self) -> Vec<u128> {
        let edges = &self.base.edges;
        let mut out = vec![0u128; self.base.r];
        for i in 0..edges.len() {
            for j in i + 1..edges.len() {
                let w = self.weights[i] as u128 * self.weights[j] as u128;
                out[edges[i].intersection_size(&edges[j])] += 2 * w;
            }
        }
        out
    }

    /// Layer `i` (index `i - 1`) holds the edges of weight exactly `i`.
    pub fn weight_layers(&self) -> Multiplex {
        let mut buckets: Vec<Vec<Hyperedge>> = vec![Vec::new(); self.bound as usize];
        for (e, &w) in self.base.edges.iter().zip(&self.weights) {
            buckets[w as usize - 1].push(e.clone());
        }
        let layers = buckets
            .into_iter()
            .map(|edges| UniformHypergraph {
                r: self.base.r,
                n: self.base.n,
                edges,
            })
            .collect();
        Multiplex {
            n: self.base.n,
            layers,
        }
    }
}

/// Colors `1..=c` assigned to vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring {
    colors: Vec<u32>,
    c: u32,
}

impl Coloring {
    pub fn new(colors: Vec<u32>, c: u32) -> Result<Self> {
        if c == 0 {
            return Err(Error::NoColors);
        }
        if let Some((index, &color)) = colors.iter().enumerate().find(|(_, &x)| x == 0 || x > c) {
            return Err(Error::ColorOutOfRange { index, color, c });
        }
        Ok(Coloring { colors, c })
    }

    /// Every vertex gets color 1.
    pub fn constant(n: usize, c: u32) -> Result<Self> {
        Coloring::new(vec![1; n], c)
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    pub fn num_colors(&self) -> u32 {
        self.c
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    fn check_len(&self, n: usize) -> Result<()> {
        if self.colors.len() != n {
            return Err(Error::ColoringLength {
                expected: n,
                found: self.colors.len(),
            });
        }
        Ok(())
    }

    #[inline]
    pub fn is_monochromatic(&self, e: &Hyperedge) -> bool {
        match e.0.split_first() {
            Some((&first, rest)) => {
                let x = self.colors[first as usize];
                rest.iter().all(|&v| self.colors[v as usize] == x)
            }
            None => true,
        }
    }
}
