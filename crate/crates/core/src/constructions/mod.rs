//! Builders for the hypergraph families: clique hypergraphs, subgraph-copy
//! hypergraphs, arithmetic-progression hypergraphs, weighted vertex-copy
//! hypergraphs, the two counterexample families and the correlated
//! Erdős–Rényi multiplex.

mod correlated;
mod graph;

use std::ops::Range;

use itertools::Itertools;
use rustc_hash::{FxHashMap, FxHashSet};
use serde::{Deserialize, Serialize};

pub use correlated::{
    sample_correlated_er, sample_correlated_er_sparse, CorrelatedErParams, DEFAULT_SUBSET_BOUND,
};
pub use graph::{GraphFile, PatternGraph, SimpleGraph, PATTERN_VERTEX_LIMIT};

use crate::error::{Error, Result};
use crate::hypergraph::{
    Hyperedge, Multiplex, UniformHypergraph, VertexId, WeightedUniformHypergraph,
};
use graph::for_each_embedding;

/// Hypergraph on `V(G)` whose edges are the `r`-subsets inducing a clique.
pub fn clique_hypergraph(g: &SimpleGraph, r: usize) -> Result<UniformHypergraph> {
    if r < 2 {
        return Err(Error::InvalidUniformity(r));
    }
    let mut edges = Vec::new();
    let mut stack: Vec<VertexId> = Vec::with_capacity(r);

    // extend cliques through higher-numbered common neighbours only
    fn grow(
        g: &SimpleGraph,
        r: usize,
        candidates: &[VertexId],
        stack: &mut Vec<VertexId>,
        out: &mut Vec<Hyperedge>,
    ) {
        if stack.len() == r {
            out.push(Hyperedge::from_sorted(stack.clone()));
            return;
        }
        for (i, &v) in candidates.iter().enumerate() {
            if candidates.len() - i < r - stack.len() {
                break;
            }
            let next: Vec<VertexId> = candidates[i + 1..]
                .iter()
                .copied()
                .filter(|&w| g.has_edge(v, w))
                .collect();
            stack.push(v);
            grow(g, r, &next, stack, out);
            stack.pop();
        }
    }

    let all: Vec<VertexId> = (0..g.num_vertices() as u32).collect();
    grow(g, r, &all, &mut stack, &mut edges);
    Ok(UniformHypergraph::from_edges_dedup(
        r,
        g.num_vertices(),
        edges,
    ))
}

/// Subgraph-copy hypergraph together with the host edge behind each vertex.
#[derive(Clone, Debug)]
pub struct CopiesHypergraph {
    pub hypergraph: UniformHypergraph,
    /// `edge_of_vertex[i]` is the host edge represented by hypergraph vertex `i`.
    pub edge_of_vertex: Vec<(VertexId, VertexId)>,
}

/// `|E(F)|`-uniform hypergraph on `E(G)` whose edges are the edge sets of
/// copies of `F` in `G`. Copies are identified by their edge sets.
pub fn copies_hypergraph(g: &SimpleGraph, f: &PatternGraph) -> Result<CopiesHypergraph> {
    let pattern_edges = f.graph().edges();
    let r = pattern_edges.len();
    if r == 0 {
        return Err(Error::EmptyPattern);
    }
    let order = f.search_order(false);
    let mut pos_of = vec![usize::MAX; f.graph().num_vertices()];
    for (i, &v) in order.iter().enumerate() {
        pos_of[v as usize] = i;
    }
    let mapped: Vec<(usize, usize)> = pattern_edges
        .iter()
        .map(|&(a, b)| (pos_of[a as usize], pos_of[b as usize]))
        .collect();
    let mut seen: FxHashSet<Vec<VertexId>> = FxHashSet::default();
    for_each_embedding(f, &order, g, |image| {
        let mut key: Vec<VertexId> = mapped
            .iter()
            .map(|&(a, b)| g.edge_index(image[a], image[b]).expect("embedded edge") as VertexId)
            .collect();
        key.sort_unstable();
        seen.insert(key);
    });
    let edges = seen.into_iter().map(Hyperedge::from_sorted).collect();
    Ok(CopiesHypergraph {
        hypergraph: UniformHypergraph::from_edges_dedup(r, g.num_edges(), edges),
        edge_of_vertex: g.edges().to_vec(),
    })
}

/// Arithmetic-progression hypergraph together with the integer behind each vertex.
#[derive(Clone, Debug)]
pub struct ApHypergraph {
    pub hypergraph: UniformHypergraph,
    /// Sorted, distinct members of the ground set; vertex `i` is `values[i]`.
    pub values: Vec<u64>,
}

/// All `r`-term progressions `{a, a + d, ..., a + (r-1) d}`, `d >= 1`, inside
/// the set `a`, as unordered vertex sets.
pub fn ap_hypergraph(set: &[u64], r: usize) -> Result<ApHypergraph> {
    if r < 3 {
        return Err(Error::invalid(format!(
            "progressions need at least 3 terms, got {r}"
        )));
    }
    let values: Vec<u64> = set.iter().copied().sorted_unstable().dedup().collect();
    let Some(&max) = values.last() else {
        return Ok(ApHypergraph {
            hypergraph: UniformHypergraph::from_edges_dedup(r, 0, Vec::new()),
            values,
        });
    };
    let min = values[0];
    let span = (max - min) as usize;
    let mut member = vec![u32::MAX; span + 1];
    for (i, &v) in values.iter().enumerate() {
        member[(v - min) as usize] = i as u32;
    }
    let steps = (r - 1) as u64;
    let mut edges = Vec::new();
    let mut buf = Vec::with_capacity(r);
    for &a in &values {
        let mut d = 1u64;
        while a + steps * d <= max {
            buf.clear();
            for k in 0..r as u64 {
                let idx = member[(a + k * d - min) as usize];
                if idx == u32::MAX {
                    break;
                }
                buf.push(idx);
            }
            if buf.len() == r {
                edges.push(Hyperedge::from_sorted(buf.clone()));
            }
            d += 1;
        }
    }
    Ok(ApHypergraph {
        hypergraph: UniformHypergraph::from_edges_dedup(r, values.len(), edges),
        values,
    })
}

/// Number of permutations of `V(F)` preserving adjacency, by exhaustive search.
pub fn automorphism_count(f: &PatternGraph) -> u64 {
    let g = f.graph();
    let k = g.num_vertices();
    (0..k as u32)
        .permutations(k)
        .filter(|perm| {
            g.edges()
                .iter()
                .all(|&(u, v)| g.has_edge(perm[u as usize], perm[v as usize]))
        })
        .count() as u64
}

/// `|V(F)|`-uniform weighted hypergraph on `V(G)`: the `|V(F)|`-subsets `s`
/// with at least one copy of `F` in `G[s]`, weighted by the number of such
/// copies. `bound` caps the weights (default: the largest weight).
pub fn vertex_copy_weighted_hypergraph(
    g: &SimpleGraph,
    f: &PatternGraph,
    bound: Option<u32>,
) -> Result<WeightedUniformHypergraph> {
    let k = f.graph().num_vertices();
    if k < 2 {
        return Err(Error::invalid("pattern needs at least 2 vertices"));
    }
    let aut = automorphism_count(f);
    let order = f.search_order(true);
    let mut maps: FxHashMap<Vec<VertexId>, u64> = FxHashMap::default();
    for_each_embedding(f, &order, g, |image| {
        let mut key = image.to_vec();
        key.sort_unstable();
        *maps.entry(key).or_insert(0) += 1;
    });
    let mut pairs: Vec<(Hyperedge, u32)> = maps
        .into_iter()
        .map(|(s, m)| {
            debug_assert_eq!(m % aut, 0);
            (Hyperedge::from_sorted(s), (m / aut) as u32)
        })
        .collect();
    pairs.sort_unstable();
    let max_weight = pairs.iter().map(|p| p.1).max().unwrap_or(1);
    let bound = bound.unwrap_or(max_weight);
    let (edges, weights): (Vec<_>, Vec<_>) = pairs.into_iter().unzip();
    let base = UniformHypergraph::from_edges_dedup(k, g.num_vertices(), edges);
    WeightedUniformHypergraph::new(base, weights, bound)
}

/// Every triple containing vertex 0: `{0, a, b}` for `1 <= a < b < n`.
pub fn appendix_star_hypergraph(n: usize) -> Result<UniformHypergraph> {
    if n < 3 {
        return Err(Error::TooFewVertices { n, r: 3 });
    }
    let edges = (1..n as u32)
        .tuple_combinations()
        .map(|(a, b)| Hyperedge::from_sorted(vec![0, a, b]))
        .collect();
    Ok(UniformHypergraph::from_edges_dedup(3, n, edges))
}

/// Overlap pattern of the three-layer counterexample.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ThreeLayerVariant {
    /// One common block of size `floor(λ n)` shared by all three vertex sets.
    Nested,
    /// Three pairwise blocks of size `floor(λ n)`, no vertex in all three sets.
    Pairwise,
}

/// Vertex blocks behind [`appendix_three_multiplex`].
///
/// Nested: `shared = [0, m)`, private block `i` follows, each of size `n - m`,
/// universe `3n - 2m`. Pairwise: `pair_12 = [0, m)`, `pair_13 = [m, 2m)`,
/// `pair_23 = [2m, 3m)`, then private blocks of size `n - 2m`, universe `3n - 3m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThreeLayerLayout {
    pub variant: ThreeLayerVariant,
    pub overlap: usize,
    pub universe: usize,
    /// For each layer, the blocks whose union is its vertex set.
    pub layer_blocks: [Vec<Range<VertexId>>; 3],
}

impl ThreeLayerLayout {
    pub fn new(n: usize, lambda: f64, variant: ThreeLayerVariant) -> Result<Self> {
        if !(lambda > 0.0 && lambda < 0.25) {
            return Err(Error::invalid(format!("lambda {lambda} outside (0, 1/4)")));
        }
        if n < 2 {
            return Err(Error::TooFewVertices { n, r: 2 });
        }
        let m = (lambda * n as f64).floor() as u32;
        let n32 = n as u32;
        let block = |start: u32, len: u32| start..start + len;
        Ok(match variant {
            ThreeLayerVariant::Nested => {
                let shared = block(0, m);
                let p = n32 - m;
                let private = [block(m, p), block(m + p, p), block(m + 2 * p, p)];
                ThreeLayerLayout {
                    variant,
                    overlap: m as usize,
                    universe: (3 * n32 - 2 * m) as usize,
                    layer_blocks: private.map(|pr| vec![shared.clone(), pr]),
                }
            }
            ThreeLayerVariant::Pairwise => {
                let (b12, b13, b23) = (block(0, m), block(m, m), block(2 * m, m));
                let p = n32 - 2 * m;
                let base = 3 * m;
                ThreeLayerLayout {
                    variant,
                    overlap: m as usize,
                    universe: (3 * n32 - 3 * m) as usize,
                    layer_blocks: [
                        vec![b12.clone(), b13.clone(), block(base, p)],
                        vec![b12, b23.clone(), block(base + p, p)],
                        vec![b13, b23, block(base + 2 * p, p)],
                    ],
                }
            }
        })
    }

    /// Sorted vertex set of layer `i` (0-based).
    pub fn layer_vertices(&self, i: usize) -> Vec<VertexId> {
        self.layer_blocks[i]
            .iter()
            .flat_map(|r| r.clone())
            .sorted_unstable()
            .collect()
    }
}

/// Three 2-uniform layers, each the complete graph on its own block of `n`
/// vertices, arranged as described by [`ThreeLayerLayout`].
pub fn appendix_three_multiplex(
    n: usize,
    lambda: f64,
    variant: ThreeLayerVariant,
) -> Result<Multiplex> {
    let layout = ThreeLayerLayout::new(n, lambda, variant)?;
    let layers = (0..3)
        .map(|i| {
            let vs = layout.layer_vertices(i);
            let edges = vs
                .iter()
                .tuple_combinations()
                .map(|(&a, &b)| Hyperedge::from_sorted(vec![a, b]))
                .collect();
            UniformHypergraph::from_edges_dedup(2, layout.universe, edges)
        })
        .collect();
    Multiplex::new(layers)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cliques() {
        assert_eq!(
            clique_hypergraph(&SimpleGraph::complete(4), 3)
                .unwrap()
                .num_edges(),
            4
        );
        assert_eq!(
            clique_hypergraph(&SimpleGraph::complete(3), 3)
                .unwrap()
                .num_edges(),
            1
        );
        assert_eq!(
            clique_hypergraph(&SimpleGraph::empty(4), 2)
                .unwrap()
                .num_edges(),
            0
        );
        let k5 = clique_hypergraph(&SimpleGraph::complete(5), 2).unwrap();
        assert_eq!(k5.num_edges(), 10);
    }

    #[test]
    fn copies() {
        let c = copies_hypergraph(&SimpleGraph::complete(4), &PatternGraph::triangle()).unwrap();
        assert_eq!(c.hypergraph.uniformity(), 3);
        assert_eq!(c.hypergraph.num_vertices(), 6);
        assert_eq!(c.hypergraph.num_edges(), 4);

        let edge = PatternGraph::path(2).unwrap();
        let c = copies_hypergraph(&SimpleGraph::cycle(5).unwrap(), &edge).unwrap();
        assert_eq!(c.hypergraph.num_edges(), 5);
        assert!(c.hypergraph.edges().iter().all(|e| e.len() == 1));

        let c = copies_hypergraph(&SimpleGraph::path(3), &PatternGraph::triangle()).unwrap();
        assert_eq!(c.hypergraph.num_edges(), 0);

        let none = PatternGraph::new(SimpleGraph::empty(3)).unwrap();
        assert!(matches!(
            copies_hypergraph(&SimpleGraph::complete(4), &none),
            Err(Error::EmptyPattern)
        ));
    }

    #[test]
    fn progressions() {
        let ap = ap_hypergraph(&[1, 2, 3, 4, 5], 3).unwrap();
        let sets: Vec<Vec<u64>> = ap
            .hypergraph
            .edges()
            .iter()
            .map(|e| {
                e.vertices()
                    .iter()
                    .map(|&i| ap.values[i as usize])
                    .collect()
            })
            .collect();
        assert_eq!(
            sets,
            vec![vec![1, 2, 3], vec![1, 3, 5], vec![2, 3, 4], vec![3, 4, 5]]
        );
        let ten: Vec<u64> = (1..=10).collect();
        assert_eq!(ap_hypergraph(&ten, 3).unwrap().hypergraph.num_edges(), 20);
        assert_eq!(ap_hypergraph(&[1, 2], 3).unwrap().hypergraph.num_edges(), 0);
        assert_eq!(ap_hypergraph(&[], 3).unwrap().hypergraph.num_edges(), 0);
        // gaps in the ground set
        let odd = ap_hypergraph(&[1, 3, 4, 5, 7], 3).unwrap();
        assert_eq!(odd.hypergraph.num_edges(), 4);
        assert!(ap_hypergraph(&ten, 2).is_err());
    }

    #[test]
    fn automorphisms() {
        assert_eq!(automorphism_count(&PatternGraph::triangle()), 6);
        assert_eq!(automorphism_count(&PatternGraph::path(3).unwrap()), 2);
        assert_eq!(automorphism_count(&PatternGraph::cycle(4).unwrap()), 8);
        assert_eq!(automorphism_count(&PatternGraph::star(3).unwrap()), 6);
    }

    #[test]
    fn vertex_copies() {
        let w = vertex_copy_weighted_hypergraph(
            &SimpleGraph::complete(4),
            &PatternGraph::path(3).unwrap(),
            None,
        )
        .unwrap();
        assert_eq!(w.base().num_edges(), 4);
        assert!(w.weights().iter().all(|&x| x == 3));

        let g = SimpleGraph::new(5, vec![(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (1, 3)]).unwrap();
        let tri = vertex_copy_weighted_hypergraph(&g, &PatternGraph::triangle(), None).unwrap();
        assert!(tri.weights().iter().all(|&x| x == 1));
        assert_eq!(tri.base(), &clique_hypergraph(&g, 3).unwrap());

        let empty = vertex_copy_weighted_hypergraph(
            &SimpleGraph::empty(5),
            &PatternGraph::path(3).unwrap(),
            None,
        )
        .unwrap();
        assert_eq!(empty.base().num_edges(), 0);

        assert!(matches!(
            vertex_copy_weighted_hypergraph(
                &SimpleGraph::complete(4),
                &PatternGraph::path(3).unwrap(),
                Some(2)
            ),
            Err(Error::WeightOutOfRange { .. })
        ));
    }

    #[test]
    fn star_family() {
        assert_eq!(appendix_star_hypergraph(4).unwrap().num_edges(), 3);
        let h = appendix_star_hypergraph(10).unwrap();
        assert_eq!(h.num_edges(), 36);
        assert_eq!(h.containing_count(&[0]).unwrap(), 36);
    }

    #[test]
    fn three_layers() {
        let nested = appendix_three_multiplex(20, 0.2, ThreeLayerVariant::Nested).unwrap();
        assert_eq!(nested.num_vertices(), 52);
        let l = nested.layers();
        assert!(l.iter().all(|x| x.num_edges() == 190));
        let triple = l[0]
            .intersection(&l[1])
            .unwrap()
            .intersection(&l[2])
            .unwrap();
        assert_eq!(triple.num_edges(), 6);
        assert_eq!(l[0].intersection(&l[1]).unwrap(), triple);

        let pairwise = appendix_three_multiplex(20, 0.2, ThreeLayerVariant::Pairwise).unwrap();
        assert_eq!(pairwise.num_vertices(), 48);
        let l = pairwise.layers();
        assert!(l.iter().all(|x| x.num_edges() == 190));
        let triple = l[0]
            .intersection(&l[1])
            .unwrap()
            .intersection(&l[2])
            .unwrap();
        assert_eq!(triple.num_edges(), 0);
        assert_eq!(l[0].intersection(&l[1]).unwrap().num_edges(), 6);

        assert!(appendix_three_multiplex(20, 0.25, ThreeLayerVariant::Nested).is_err());
        assert!(appendix_three_multiplex(20, 0.0, ThreeLayerVariant::Nested).is_err());
    }
}
