//! Closed-form first and second moments of monochromatic counts.
//!
//! Every quantity is assembled exactly over the rationals from integer pair
//! counts and powers of `1/c`, then rounded once. The [`exact`] submodule
//! returns the unrounded values.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::{Multiplex, UniformHypergraph, WeightedUniformHypergraph};

/// Mean and variance of `T(H)` with the variance split into the diagonal
/// term `r1` and the per-intersection-size terms `r2[t]`, `2 <= t <= r-1`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MomentReport {
    pub mean: f64,
    pub variance: f64,
    pub r1: f64,
    pub r2: BTreeMap<usize, f64>,
    /// `K(t, H)` for the same `t` as `r2`.
    pub k: BTreeMap<usize, u64>,
}

/// `Cov(T(H1), T(H2))` split into the shared-edge term `q1` and the
/// per-intersection-size terms `q2[t]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CovarianceReport {
    pub covariance: f64,
    pub q1: f64,
    pub q2: BTreeMap<usize, f64>,
    /// Edges present in both layers (zero for different uniformities).
    pub shared_edges: u64,
    /// `K(t, H1, H2)` for the same `t` as `q2`.
    pub k_cross: BTreeMap<usize, u64>,
}

/// Mean and variance of the weighted count `W(H)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeightedMomentReport {
    pub mean: f64,
    pub variance: f64,
    pub u1: f64,
    pub u2: BTreeMap<usize, f64>,
}

/// `K(t, H) / c^(2r-t-1)` for `2 <= t <= r-1`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub ratios: BTreeMap<usize, f64>,
}

impl ConditionReport {
    /// Largest ratio, zero when there are none.
    pub fn max(&self) -> f64 {
        self.ratios.values().copied().fold(0.0, f64::max)
    }
}

/// Covariance report for layers `i < j`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CovarianceEntry {
    pub i: usize,
    pub j: usize,
    pub report: CovarianceReport,
}

/// Mean vector and covariance matrix of the count vector of a multiplex.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MomentMatrix {
    pub means: Vec<f64>,
    pub covariance: Vec<Vec<f64>>,
    pub variances: Vec<MomentReport>,
    pub covariances: Vec<CovarianceEntry>,
}

fn f(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

fn map_f(m: &BTreeMap<usize, BigRational>) -> BTreeMap<usize, f64> {
    m.iter().map(|(&t, x)| (t, f(x))).collect()
}

/// `|E(H)| / c^(r-1)`.
pub fn mean_t(h: &UniformHypergraph, c: u32) -> Result<f64> {
    Ok(f(&exact::mean_t(h, c)?))
}

pub fn variance_t(h: &UniformHypergraph, c: u32) -> Result<MomentReport> {
    let e = exact::variance_t(h, c)?;
    Ok(MomentReport {
        mean: f(&e.mean),
        variance: f(&e.variance),
        r1: f(&e.r1),
        r2: map_f(&e.r2),
        k: e.k,
    })
}

pub fn covariance_t(
    h1: &UniformHypergraph,
    h2: &UniformHypergraph,
    c: u32,
) -> Result<CovarianceReport> {
    let e = exact::covariance_t(h1, h2, c)?;
    Ok(CovarianceReport {
        covariance: f(&e.covariance),
        q1: f(&e.q1),
        q2: map_f(&e.q2),
        shared_edges: e.shared_edges,
        k_cross: e.k_cross,
    })
}

pub fn moment_matrix(m: &Multiplex, c: u32) -> Result<MomentMatrix> {
    let d = m.num_layers();
    let variances = m
        .layers()
        .iter()
        .map(|l| variance_t(l, c))
        .collect::<Result<Vec<_>>>()?;
    let mut covariance = vec![vec![0.0; d]; d];
    let mut covariances = Vec::new();
    for i in 0..d {
        covariance[i][i] = variances[i].variance;
        for j in i + 1..d {
            let report = covariance_t(&m.layers()[i], &m.layers()[j], c)?;
            covariance[i][j] = report.covariance;
            covariance[j][i] = report.covariance;
            covariances.push(CovarianceEntry { i, j, report });
        }
    }
    Ok(MomentMatrix {
        means: variances.iter().map(|v| v.mean).collect(),
        covariance,
        variances,
        covariances,
    })
}

/// `sum_e w_e / c^(r-1)`.
pub fn mean_w(wh: &WeightedUniformHypergraph, c: u32) -> Result<f64> {
    Ok(f(&exact::mean_w(wh, c)?))
}

pub fn variance_w(wh: &WeightedUniformHypergraph, c: u32) -> Result<WeightedMomentReport> {
    let e = exact::variance_w(wh, c)?;
    Ok(WeightedMomentReport {
        mean: f(&e.mean),
        variance: f(&e.variance),
        u1: f(&e.u1),
        u2: map_f(&e.u2),
    })
}

pub fn condition_ratios(h: &UniformHypergraph, c: u32) -> Result<ConditionReport> {
    check_colors(c)?;
    let r = h.uniformity();
    let k = h.intersection_profile();
    let ratios = (2..r)
        .map(|t| {
            let denom = exact::pow(c, 2 * r - t - 1);
            (t, f(&(BigRational::from_integer(k[t].into()) / denom)))
        })
        .collect();
    Ok(ConditionReport { ratios })
}

fn check_colors(c: u32) -> Result<()> {
    if c == 0 {
        Err(Error::NoColors)
    } else {
        Ok(())
    }
}

/// Exact rational versions of the moment formulas.
pub mod exact {
    use super::*;
    use num_bigint::BigInt;
    use num_traits::{One, Zero};

    #[derive(Clone, Debug, PartialEq)]
    pub struct Moments {
        pub mean: BigRational,
        pub variance: BigRational,
        pub r1: BigRational,
        pub r2: BTreeMap<usize, BigRational>,
        pub k: BTreeMap<usize, u64>,
    }

    #[derive(Clone, Debug, PartialEq)]
    pub struct Covariance {
        pub covariance: BigRational,
        pub q1: BigRational,
        pub q2: BTreeMap<usize, BigRational>,
        pub shared_edges: u64,
        pub k_cross: BTreeMap<usize, u64>,
    }

    #[derive(Clone, Debug, PartialEq)]
    pub struct WeightedMoments {
        pub mean: BigRational,
        pub variance: BigRational,
        pub u1: BigRational,
        pub u2: BTreeMap<usize, BigRational>,
    }

    pub(crate) fn pow(c: u32, k: usize) -> BigRational {
        BigRational::from_integer(BigInt::from(c).pow(k as u32))
    }

    fn int(x: impl Into<BigInt>) -> BigRational {
        BigRational::from_integer(x.into())
    }

    /// `(1/c^a)(1 - 1/c^b)`: covariance of the indicators of two edges whose
    /// union has `a + 1` vertices and which share `b + 1` vertices.
    fn pair_cov(c: u32, a: usize, b: usize) -> BigRational {
        (BigRational::one() - pow(c, b).recip()) / pow(c, a)
    }

    pub fn mean_t(h: &UniformHypergraph, c: u32) -> Result<BigRational> {
        check_colors(c)?;
        Ok(int(h.num_edges() as u64) / pow(c, h.uniformity() - 1))
    }

    pub fn variance_t(h: &UniformHypergraph, c: u32) -> Result<Moments> {
        let mean = mean_t(h, c)?;
        let r = h.uniformity();
        let r1 = int(h.num_edges() as u64) * pair_cov(c, r - 1, r - 1);
        let profile = h.intersection_profile();
        let k: BTreeMap<usize, u64> = (2..r).map(|t| (t, profile[t])).collect();
        let r2: BTreeMap<usize, BigRational> = k
            .iter()
            .map(|(&t, &kt)| (t, int(kt) * pair_cov(c, 2 * r - t - 1, t - 1)))
            .collect();
        let variance = r2.values().fold(r1.clone(), |acc, x| acc + x);
        Ok(Moments {
            mean,
            variance,
            r1,
            r2,
            k,
        })
    }

    pub fn covariance_t(
        h1: &UniformHypergraph,
        h2: &UniformHypergraph,
        c: u32,
    ) -> Result<Covariance> {
        check_colors(c)?;
        let (r1, r2) = (h1.uniformity(), h2.uniformity());
        let profile = crate::hypergraph::cross_intersection_profile(h1, h2)?;
        let rmin = r1.min(r2);
        let shared_edges = if r1 == r2 { profile[r1] } else { 0 };
        let q1 = if r1 == r2 {
            int(shared_edges) * pair_cov(c, r1 - 1, r1 - 1)
        } else {
            BigRational::zero()
        };
        let top = if r1 == r2 {
            rmin.saturating_sub(1)
        } else {
            rmin
        };
        let k_cross: BTreeMap<usize, u64> = (2..=top).map(|t| (t, profile[t])).collect();
        let q2: BTreeMap<usize, BigRational> = k_cross
            .iter()
            .map(|(&t, &kt)| (t, int(kt) * pair_cov(c, r1 + r2 - t - 1, t - 1)))
            .collect();
        let covariance = q2.values().fold(q1.clone(), |acc, x| acc + x);
        Ok(Covariance {
            covariance,
            q1,
            q2,
            shared_edges,
            k_cross,
        })
    }

    pub fn mean_w(wh: &WeightedUniformHypergraph, c: u32) -> Result<BigRational> {
        check_colors(c)?;
        Ok(int(wh.total_weight()) / pow(c, wh.base().uniformity() - 1))
    }

    pub fn variance_w(wh: &WeightedUniformHypergraph, c: u32) -> Result<WeightedMoments> {
        let mean = mean_w(wh, c)?;
        let r = wh.base().uniformity();
        let squares: u64 = wh.weights().iter().map(|&w| (w as u64).pow(2)).sum();
        let u1 = int(squares) * pair_cov(c, r - 1, r - 1);
        let profile = wh.weighted_intersection_profile();
        let u2: BTreeMap<usize, BigRational> = (2..r)
            .map(|t| (t, int(profile[t]) * pair_cov(c, 2 * r - t - 1, t - 1)))
            .collect();
        let variance = u2.values().fold(u1.clone(), |acc, x| acc + x);
        Ok(WeightedMoments {
            mean,
            variance,
            u1,
            u2,
        })
    }
}
