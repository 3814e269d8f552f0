//! Orderings of a connected edge tuple in which every edge after the first
//! meets the union of its predecessors, and at least one edge meets it in
//! between 2 and `r - 1` vertices.
//!
//! The construction starts from any connectivity-respecting order. If that
//! order has no intermediate overlap, the first non-repeated edge that is
//! fully covered by its predecessors (`i0`) is moved to the front together
//! with a neighbour sharing at least two of its vertices, or spliced in right
//! after the second predecessor that touches it (`i1`, `i2`), where its
//! overlap is exactly two.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::hypergraph::{connected_components, Hyperedge, VertexId};

/// Outcome of [`order_connected_edges`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EdgeOrdering {
    /// A permutation (indices into the input tuple) meeting both conditions.
    Valid(Vec<usize>),
    /// The union has exactly `b r - b + 1` vertices, so every connected order
    /// has overlaps in `{1, r}` only. A connected order is attached.
    NotApplicable(Vec<usize>),
}

impl EdgeOrdering {
    pub fn permutation(&self) -> &[usize] {
        match self {
            EdgeOrdering::Valid(p) | EdgeOrdering::NotApplicable(p) => p,
        }
    }
}

/// `t_i = |e_{σ(i)} ∩ (e_{σ(1)} ∪ ... ∪ e_{σ(i-1)})|` for `i = 2..=k`.
pub fn overlap_profile(edges: &[Hyperedge], order: &[usize]) -> Vec<usize> {
    let mut covered: BTreeSet<VertexId> = BTreeSet::new();
    let mut out = Vec::with_capacity(order.len().saturating_sub(1));
    for (pos, &i) in order.iter().enumerate() {
        let e = edges[i].vertices();
        if pos > 0 {
            out.push(e.iter().filter(|v| covered.contains(v)).count());
        }
        covered.extend(e.iter().copied());
    }
    out
}

/// True when `order` is a permutation of the tuple with every `t_i >= 1` and
/// some `t_i` in `[2, r - 1]`.
pub fn is_valid_ordering(edges: &[Hyperedge], order: &[usize], r: usize) -> bool {
    let mut seen = vec![false; edges.len()];
    if order.len() != edges.len() {
        return false;
    }
    for &i in order {
        if i >= edges.len() || std::mem::replace(&mut seen[i], true) {
            return false;
        }
    }
    let t = overlap_profile(edges, order);
    t.iter().all(|&x| x >= 1) && t.iter().any(|&x| (2..r).contains(&x))
}

/// Number of distinct edges and size of the vertex union.
pub fn tuple_shape(edges: &[Hyperedge]) -> (usize, usize) {
    let distinct: BTreeSet<&Hyperedge> = edges.iter().collect();
    let union: BTreeSet<VertexId> = edges
        .iter()
        .flat_map(|e| e.vertices().iter().copied())
        .collect();
    (distinct.len(), union.len())
}

/// Orders a connected tuple of `r`-vertex edges (repeats allowed).
///
/// Returns [`EdgeOrdering::NotApplicable`] when the union has exactly
/// `b r - b + 1` vertices (`b` distinct edges). Errors on an empty or
/// disconnected tuple, mixed edge sizes, and on `r = 2`, where the interval
/// `[2, r - 1]` is empty.
pub fn order_connected_edges(edges: &[Hyperedge]) -> Result<EdgeOrdering> {
    let r = edges.first().ok_or(Error::EmptyTuple)?.len();
    if let Some((i, e)) = edges.iter().enumerate().find(|(_, e)| e.len() != r) {
        return Err(Error::EdgeSize {
            edge: i,
            expected: r,
            found: e.len(),
        });
    }
    if connected_components(edges).len() != 1 {
        return Err(Error::Disconnected);
    }
    let (b, union) = tuple_shape(edges);
    if union == b * r - b + 1 {
        return Ok(EdgeOrdering::NotApplicable(extend_connected(
            edges,
            vec![0],
        )));
    }
    if r < 3 {
        return Err(Error::UniformityTooSmall(r));
    }

    let sigma = extend_connected(edges, vec![0]);
    let t = overlap_profile(edges, &sigma);
    if t.iter().any(|&x| (2..r).contains(&x)) {
        return Ok(EdgeOrdering::Valid(sigma));
    }

    // Every overlap is 1 or r. Some edge with overlap r must be new, otherwise
    // the union would have exactly b r - b + 1 vertices.
    let e = |pos: usize| &edges[sigma[pos]];
    let i0 = (1..sigma.len())
        .find(|&p| t[p - 1] == r && !(0..p).any(|q| e(q) == e(p)))
        .expect("a fully covered new edge exists when the union is small");
    let i1 = (0..i0)
        .find(|&p| e(p).intersection_size(e(i0)) > 0)
        .expect("a covered edge meets an earlier edge");
    let order = if e(i1).intersection_size(e(i0)) >= 2 {
        extend_connected(edges, vec![sigma[i0], sigma[i1]])
    } else {
        let shared = *e(i1)
            .vertices()
            .iter()
            .find(|v| e(i0).contains(**v))
            .expect("single shared vertex");
        let i2 = (i1 + 1..i0)
            .find(|&p| {
                e(p).vertices()
                    .iter()
                    .any(|&v| v != shared && e(i0).contains(v))
            })
            .expect("remaining vertices of the covered edge are reached before it");
        if e(i2).intersection_size(e(i0)) >= 2 {
            extend_connected(edges, vec![sigma[i0], sigma[i2]])
        } else {
            let mut prefix: Vec<usize> = sigma[..=i2].to_vec();
            prefix.push(sigma[i0]);
            extend_connected(edges, prefix)
        }
    };
    debug_assert!(is_valid_ordering(edges, &order, r));
    Ok(EdgeOrdering::Valid(order))
}

/// Appends the remaining edges, always choosing the lowest index that meets
/// the current union. The tuple must be connected.
fn extend_connected(edges: &[Hyperedge], mut order: Vec<usize>) -> Vec<usize> {
    let mut used = vec![false; edges.len()];
    let mut covered: BTreeSet<VertexId> = BTreeSet::new();
    for &i in &order {
        used[i] = true;
        covered.extend(edges[i].vertices().iter().copied());
    }
    while order.len() < edges.len() {
        let next = (0..edges.len())
            .find(|&i| !used[i] && edges[i].vertices().iter().any(|v| covered.contains(v)))
            .expect("tuple is connected");
        used[next] = true;
        covered.extend(edges[next].vertices().iter().copied());
        order.push(next);
    }
    order
}
