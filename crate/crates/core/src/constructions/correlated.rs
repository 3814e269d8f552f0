use rand::Rng;
use rand_distr::{Distribution, Geometric};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::{Hyperedge, Multiplex, UniformHypergraph, VertexId};
use crate::subsets::binomial;

/// Default cap on the number of `r`-subsets the dense sampler visits.
pub const DEFAULT_SUBSET_BOUND: u128 = 50_000_000;

/// Parameters of the two-layer correlated Erdős–Rényi model.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorrelatedErParams {
    pub n: usize,
    pub r: usize,
    pub p: f64,
    pub rho: f64,
}

impl CorrelatedErParams {
    pub fn new(n: usize, r: usize, p: f64, rho: f64) -> Result<Self> {
        let params = CorrelatedErParams { n, r, p, rho };
        params.validate()?;
        Ok(params)
    }

    /// Joint inclusion probability `rho + p^2`.
    pub fn p12(&self) -> f64 {
        self.rho + self.p * self.p
    }

    /// Probabilities of (both, only first, only second, neither).
    pub fn cells(&self) -> [f64; 4] {
        let p12 = self.p12();
        [p12, self.p - p12, self.p - p12, 1.0 - 2.0 * self.p + p12]
    }

    pub fn validate(&self) -> Result<()> {
        if self.r < 2 {
            return Err(Error::InvalidUniformity(self.r));
        }
        if self.n < self.r {
            return Err(Error::TooFewVertices {
                n: self.n,
                r: self.r,
            });
        }
        if !(self.p > 0.0 && self.p < 1.0) {
            return Err(Error::invalid(format!("p = {} outside (0, 1)", self.p)));
        }
        if !(self.rho >= 0.0 && self.rho < self.p * (1.0 - self.p)) {
            return Err(Error::invalid(format!(
                "rho = {} outside [0, p(1-p)) = [0, {})",
                self.rho,
                self.p * (1.0 - self.p)
            )));
        }
        if self.cells().iter().any(|&q| q < 0.0) {
            return Err(Error::invalid("negative cell probability"));
        }
        Ok(())
    }
}

fn build(params: &CorrelatedErParams, l1: Vec<Hyperedge>, l2: Vec<Hyperedge>) -> Result<Multiplex> {
    Multiplex::new(vec![
        UniformHypergraph::from_edges_dedup(params.r, params.n, l1),
        UniformHypergraph::from_edges_dedup(params.r, params.n, l2),
    ])
}

/// Visits every `r`-subset of `[0, n)` in lexicographic order and places it
/// in one of the four cells independently. Errors when `C(n, r)` exceeds `bound`.
pub fn sample_correlated_er<R: Rng + ?Sized>(
    params: &CorrelatedErParams,
    bound: u128,
    rng: &mut R,
) -> Result<Multiplex> {
    params.validate()?;
    let total = binomial(params.n as u64, params.r as u64).unwrap_or(u128::MAX);
    if total > bound {
        return Err(Error::ResourceBound {
            what: "r-subsets",
            required: total,
            limit: bound,
        });
    }
    let [both, only1, only2, _] = params.cells();
    let (mut l1, mut l2) = (Vec::new(), Vec::new());
    let r = params.r;
    let n = params.n as VertexId;
    let mut s: Vec<VertexId> = (0..r as VertexId).collect();
    loop {
        let u: f64 = rng.random();
        if u < both {
            l1.push(Hyperedge::from_sorted(s.clone()));
            l2.push(Hyperedge::from_sorted(s.clone()));
        } else if u < both + only1 {
            l1.push(Hyperedge::from_sorted(s.clone()));
        } else if u < both + only1 + only2 {
            l2.push(Hyperedge::from_sorted(s.clone()));
        }
        let Some(i) = (0..r).rev().find(|&i| s[i] < n - (r - i) as VertexId) else {
            break;
        };
        s[i] += 1;
        for j in i + 1..r {
            s[j] = s[j - 1] + 1;
        }
    }
    build(params, l1, l2)
}

/// Graph case (`r = 2`) for large `n`: jumps between occupied pairs with
/// geometric gaps over the lexicographic pair order, then splits each
/// occupied pair among the three non-empty cells.
pub fn sample_correlated_er_sparse<R: Rng + ?Sized>(
    params: &CorrelatedErParams,
    rng: &mut R,
) -> Result<Multiplex> {
    params.validate()?;
    if params.r != 2 {
        return Err(Error::invalid("the sparse sampler handles r = 2 only"));
    }
    let [both, only1, _, neither] = params.cells();
    let occupied = 1.0 - neither;
    let n = params.n as u64;
    let total = n * (n - 1) / 2;
    let gap = Geometric::new(occupied).map_err(|e| Error::invalid(e.to_string()))?;
    let (mut l1, mut l2) = (Vec::new(), Vec::new());
    // row u holds pairs (u, u+1..n); row_start(u) = u n - u(u+1)/2
    let row_start = |u: u64| u * n - u * (u + 1) / 2;
    let mut idx = gap.sample(rng);
    let mut u = 0u64;
    while idx < total {
        while row_start(u + 1) <= idx {
            u += 1;
        }
        let v = u + 1 + (idx - row_start(u));
        let e = Hyperedge::from_sorted(vec![u as VertexId, v as VertexId]);
        let x: f64 = rng.random::<f64>() * occupied;
        if x < both {
            l1.push(e.clone());
            l2.push(e);
        } else if x < both + only1 {
            l1.push(e);
        } else {
            l2.push(e);
        }
        idx = idx.saturating_add(1).saturating_add(gap.sample(rng));
    }
    build(params, l1, l2)
}
