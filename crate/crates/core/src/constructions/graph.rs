use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::VertexId;

/// Largest pattern accepted by the exhaustive automorphism and copy searches.
pub const PATTERN_VERTEX_LIMIT: usize = 8;

/// Undirected simple graph on `[0, n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleGraph {
    n: usize,
    edges: Vec<(VertexId, VertexId)>,
    adj: Vec<Vec<VertexId>>,
}

impl SimpleGraph {
    /// Endpoints are normalized to `(min, max)`; repeated edges are merged,
    /// loops and out-of-range endpoints rejected.
    pub fn new(n: usize, edges: Vec<(VertexId, VertexId)>) -> Result<Self> {
        let mut norm = Vec::with_capacity(edges.len());
        for (i, (u, v)) in edges.into_iter().enumerate() {
            if u == v {
                return Err(Error::RepeatedVertex { edge: i, vertex: u });
            }
            if let Some(w) = [u, v].into_iter().find(|&w| w as usize >= n) {
                return Err(Error::VertexOutOfRange {
                    edge: i,
                    vertex: w,
                    n,
                });
            }
            norm.push((u.min(v), u.max(v)));
        }
        norm.sort_unstable();
        norm.dedup();
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &norm {
            adj[u as usize].push(v);
            adj[v as usize].push(u);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        Ok(SimpleGraph {
            n,
            edges: norm,
            adj,
        })
    }

    pub fn empty(n: usize) -> Self {
        SimpleGraph {
            n,
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
        }
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n as u32)
            .flat_map(|u| (u + 1..n as u32).map(move |v| (u, v)))
            .collect();
        SimpleGraph::new(n, edges).expect("valid complete graph")
    }

    /// Path on `k` vertices.
    pub fn path(k: usize) -> Self {
        let edges = (1..k as u32).map(|v| (v - 1, v)).collect();
        SimpleGraph::new(k, edges).expect("valid path")
    }

    /// Cycle on `k >= 3` vertices.
    pub fn cycle(k: usize) -> Result<Self> {
        if k < 3 {
            return Err(Error::invalid("a cycle needs at least 3 vertices"));
        }
        let mut edges: Vec<_> = (1..k as u32).map(|v| (v - 1, v)).collect();
        edges.push((0, k as u32 - 1));
        SimpleGraph::new(k, edges)
    }

    /// Star with centre 0 and `leaves` leaves.
    pub fn star(leaves: usize) -> Self {
        let edges = (1..=leaves as u32).map(|v| (0, v)).collect();
        SimpleGraph::new(leaves + 1, edges).expect("valid star")
    }

    /// `G(n, p)`: each pair independently with probability `p`.
    pub fn erdos_renyi<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::invalid(format!(
                "edge probability {p} outside [0, 1]"
            )));
        }
        let mut edges = Vec::new();
        for u in 0..n as u32 {
            for v in u + 1..n as u32 {
                if rng.random::<f64>() < p {
                    edges.push((u, v));
                }
            }
        }
        SimpleGraph::new(n, edges)
    }

    /// Vertex-disjoint copies of `block`, the `i`-th copy shifted by `i * |V(block)|`.
    pub fn disjoint_copies(block: &SimpleGraph, copies: usize) -> Self {
        let k = block.n as u32;
        let edges = (0..copies as u32)
            .flat_map(|i| {
                block
                    .edges
                    .iter()
                    .map(move |&(u, v)| (u + i * k, v + i * k))
            })
            .collect();
        SimpleGraph::new(block.n * copies, edges).expect("shifted copies stay valid")
    }

    /// Disjoint union of several graphs, in order.
    pub fn disjoint_union(parts: &[SimpleGraph]) -> Self {
        let mut offset = 0u32;
        let mut edges = Vec::new();
        for g in parts {
            edges.extend(g.edges.iter().map(|&(u, v)| (u + offset, v + offset)));
            offset += g.n as u32;
        }
        SimpleGraph::new(offset as usize, edges).expect("shifted parts stay valid")
    }

    pub fn num_vertices(&self) -> usize {
        self.n
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Sorted `(u, v)` pairs with `u < v`.
    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adj[v as usize]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v as usize].len()
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        (u as usize) < self.n && self.adj[u as usize].binary_search(&v).is_ok()
    }

    /// Position of edge `{u, v}` in [`edges`](SimpleGraph::edges).
    pub fn edge_index(&self, u: VertexId, v: VertexId) -> Option<usize> {
        self.edges.binary_search(&(u.min(v), u.max(v))).ok()
    }

    pub fn to_file(&self) -> GraphFile {
        GraphFile {
            num_vertices: self.n,
            edges: self.edges.iter().map(|&(u, v)| [u, v]).collect(),
        }
    }
}

/// JSON shape `{"num_vertices": n, "edges": [[u, v], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    pub num_vertices: usize,
    pub edges: Vec<[VertexId; 2]>,
}

impl TryFrom<GraphFile> for SimpleGraph {
    type Error = Error;

    fn try_from(f: GraphFile) -> Result<Self> {
        SimpleGraph::new(
            f.num_vertices,
            f.edges.into_iter().map(|[u, v]| (u, v)).collect(),
        )
    }
}

/// A small graph used as a pattern. At most [`PATTERN_VERTEX_LIMIT`] vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternGraph(SimpleGraph);

impl PatternGraph {
    pub fn new(graph: SimpleGraph) -> Result<Self> {
        if graph.n > PATTERN_VERTEX_LIMIT {
            return Err(Error::PatternTooLarge {
                found: graph.n,
                limit: PATTERN_VERTEX_LIMIT,
            });
        }
        Ok(PatternGraph(graph))
    }

    pub fn complete(k: usize) -> Result<Self> {
        PatternGraph::new(SimpleGraph::complete(k))
    }

    pub fn triangle() -> Self {
        PatternGraph(SimpleGraph::complete(3))
    }

    pub fn path(k: usize) -> Result<Self> {
        PatternGraph::new(SimpleGraph::path(k))
    }

    pub fn cycle(k: usize) -> Result<Self> {
        PatternGraph::new(SimpleGraph::cycle(k)?)
    }

    pub fn star(leaves: usize) -> Result<Self> {
        PatternGraph::new(SimpleGraph::star(leaves))
    }

    pub fn graph(&self) -> &SimpleGraph {
        &self.0
    }

    /// Vertex order in which every vertex after the first in its component has
    /// an earlier neighbour; components start at their highest-degree vertex.
    pub(crate) fn search_order(&self, include_isolated: bool) -> Vec<VertexId> {
        let g = &self.0;
        let mut placed = vec![false; g.n];
        let mut order = Vec::with_capacity(g.n);
        loop {
            let start = (0..g.n as u32)
                .filter(|&v| !placed[v as usize] && (include_isolated || g.degree(v) > 0))
                .max_by_key(|&v| (g.degree(v), std::cmp::Reverse(v)));
            let Some(start) = start else { break };
            placed[start as usize] = true;
            order.push(start);
            let mut head = order.len() - 1;
            while head < order.len() {
                let v = order[head];
                head += 1;
                for &w in g.neighbors(v) {
                    if !placed[w as usize] {
                        placed[w as usize] = true;
                        order.push(w);
                    }
                }
            }
        }
        order
    }
}

/// Calls `f` with every injective map from the pattern vertices in `order`
/// into `host` that sends pattern edges to host edges. `f` receives the image
/// of `order[i]` at position `i`.
pub(crate) fn for_each_embedding<F: FnMut(&[VertexId])>(
    pattern: &PatternGraph,
    order: &[VertexId],
    host: &SimpleGraph,
    mut f: F,
) {
    let p = pattern.graph();
    let k = order.len();
    let mut pos_of = vec![usize::MAX; p.n];
    for (i, &v) in order.iter().enumerate() {
        pos_of[v as usize] = i;
    }
    // earlier[i]: positions of pattern neighbours of order[i] placed before it
    let earlier: Vec<Vec<usize>> = order
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            p.neighbors(v)
                .iter()
                .map(|&w| pos_of[w as usize])
                .filter(|&j| j < i)
                .collect()
        })
        .collect();
    let mut image: Vec<VertexId> = Vec::with_capacity(k);
    let mut used = vec![false; host.n];
    let all: Vec<VertexId> = (0..host.n as u32).collect();

    #[allow(clippy::too_many_arguments)]
    fn rec<F: FnMut(&[VertexId])>(
        depth: usize,
        k: usize,
        earlier: &[Vec<usize>],
        host: &SimpleGraph,
        all: &[VertexId],
        image: &mut Vec<VertexId>,
        used: &mut [bool],
        f: &mut F,
    ) {
        if depth == k {
            f(image);
            return;
        }
        let nbrs = &earlier[depth];
        let candidates: &[VertexId] = match nbrs.first() {
            Some(&j) => host.neighbors(image[j]),
            None => all,
        };
        for &cand in candidates {
            if used[cand as usize] {
                continue;
            }
            if nbrs.iter().skip(1).any(|&j| !host.has_edge(image[j], cand)) {
                continue;
            }
            used[cand as usize] = true;
            image.push(cand);
            rec(depth + 1, k, earlier, host, all, image, used, f);
            image.pop();
            used[cand as usize] = false;
        }
    }

    rec(0, k, &earlier, host, &all, &mut image, &mut used, &mut f);
}
