//! Finite-support laws over integer tuples: the Poisson-type limit laws,
//! total variation distance and moments of a law.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default truncation tolerance for limit laws.
pub const DEFAULT_TAIL_TOL: f64 = 1e-10;

const NORMALIZATION_TOL: f64 = 1e-12;

/// Largest dimension accepted by [`shared_component_law`].
pub const MAX_SHARED_DIMENSION: usize = 4;

/// Probability mass function on `d`-tuples of non-negative integers, plus the
/// probability removed by truncation.
#[derive(Clone, Debug, PartialEq)]
pub struct DiscreteLaw {
    dimension: usize,
    pmf: BTreeMap<Vec<u64>, f64>,
    tail_mass: f64,
}

#[derive(Serialize, Deserialize)]
struct LawPoint {
    outcome: Vec<u64>,
    probability: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LawFile {
    dimension: usize,
    tail_mass: f64,
    points: Vec<LawPoint>,
}

impl Serialize for DiscreteLaw {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        LawFile {
            dimension: self.dimension,
            tail_mass: self.tail_mass,
            points: self
                .pmf
                .iter()
                .map(|(k, &p)| LawPoint {
                    outcome: k.clone(),
                    probability: p,
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for DiscreteLaw {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let file = LawFile::deserialize(d)?;
        DiscreteLaw::new(
            file.dimension,
            file.points.into_iter().map(|p| (p.outcome, p.probability)),
            file.tail_mass,
        )
        .map_err(serde::de::Error::custom)
    }
}

impl DiscreteLaw {
    /// Validates dimension, non-negativity and normalization. Repeated
    /// outcomes are summed; zero masses are dropped.
    pub fn new(
        dimension: usize,
        points: impl IntoIterator<Item = (Vec<u64>, f64)>,
        tail_mass: f64,
    ) -> Result<Self> {
        if dimension == 0 {
            return Err(Error::invalid("law dimension must be at least 1"));
        }
        if !(tail_mass >= 0.0 && tail_mass.is_finite()) {
            return Err(Error::invalid(format!("invalid tail mass {tail_mass}")));
        }
        let mut pmf = BTreeMap::new();
        for (x, p) in points {
            if x.len() != dimension {
                return Err(Error::DimensionMismatch {
                    left: dimension,
                    right: x.len(),
                });
            }
            if !(p >= 0.0 && p.is_finite()) {
                return Err(Error::invalid(format!("invalid probability {p} at {x:?}")));
            }
            if p > 0.0 {
                *pmf.entry(x).or_insert(0.0) += p;
            }
        }
        let law = DiscreteLaw {
            dimension,
            pmf,
            tail_mass,
        };
        let total = law.total_mass() + tail_mass;
        if (total - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::invalid(format!("masses sum to {total}, not 1")));
        }
        Ok(law)
    }

    /// Law whose masses are `count / total`.
    pub fn from_counts(
        dimension: usize,
        counts: impl IntoIterator<Item = (Vec<u64>, u64)>,
        total: u64,
    ) -> Result<Self> {
        if total == 0 {
            return Err(Error::invalid("no observations"));
        }
        let counts: Vec<_> = counts.into_iter().collect();
        let seen: u64 = counts.iter().map(|c| c.1).sum();
        if seen != total {
            return Err(Error::invalid(format!(
                "counts sum to {seen}, expected {total}"
            )));
        }
        let t = total as f64;
        DiscreteLaw::new(
            dimension,
            counts.into_iter().map(|(x, k)| (x, k as f64 / t)),
            0.0,
        )
    }

    pub fn point_mass(outcome: Vec<u64>) -> Self {
        DiscreteLaw {
            dimension: outcome.len().max(1),
            pmf: BTreeMap::from([(outcome, 1.0)]),
            tail_mass: 0.0,
        }
    }

    /// Renormalizes away rounding drift so that masses plus tail equal one.
    fn from_truncated(dimension: usize, pmf: BTreeMap<Vec<u64>, f64>) -> Self {
        let mut pmf = pmf;
        pmf.retain(|_, p| *p > 0.0);
        let total: f64 = pmf.values().sum();
        DiscreteLaw {
            dimension,
            pmf,
            tail_mass: (1.0 - total).max(0.0),
        }
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn tail_mass(&self) -> f64 {
        self.tail_mass
    }

    pub fn pmf(&self) -> &BTreeMap<Vec<u64>, f64> {
        &self.pmf
    }

    pub fn prob(&self, outcome: &[u64]) -> f64 {
        self.pmf.get(outcome).copied().unwrap_or(0.0)
    }

    pub fn support_size(&self) -> usize {
        self.pmf.len()
    }

    pub fn total_mass(&self) -> f64 {
        self.pmf.values().sum()
    }

    /// Law of coordinate `i`.
    pub fn marginal(&self, i: usize) -> Result<DiscreteLaw> {
        if i >= self.dimension {
            return Err(Error::DimensionMismatch {
                left: self.dimension,
                right: i + 1,
            });
        }
        let mut pmf = BTreeMap::new();
        for (x, &p) in &self.pmf {
            *pmf.entry(vec![x[i]]).or_insert(0.0) += p;
        }
        Ok(DiscreteLaw {
            dimension: 1,
            pmf,
            tail_mass: self.tail_mass,
        })
    }

    /// CSV with columns `t1..td,probability`, one row per support point.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for i in 1..=self.dimension {
            let _ = write!(out, "t{i},");
        }
        out.push_str("probability\n");
        for (x, p) in &self.pmf {
            for v in x {
                let _ = write!(out, "{v},");
            }
            let _ = writeln!(out, "{p:e}");
        }
        out
    }
}

/// Mean vector and covariance matrix of a law's truncated pmf.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LawMoments {
    pub mean: Vec<f64>,
    pub covariance: Vec<Vec<f64>>,
}

pub fn law_moments(law: &DiscreteLaw) -> LawMoments {
    let d = law.dimension;
    let mut mean = vec![0.0; d];
    for (x, &p) in &law.pmf {
        for i in 0..d {
            mean[i] += p * x[i] as f64;
        }
    }
    let mut covariance = vec![vec![0.0; d]; d];
    for (x, &p) in &law.pmf {
        for i in 0..d {
            let di = x[i] as f64 - mean[i];
            for j in 0..d {
                covariance[i][j] += p * di * (x[j] as f64 - mean[j]);
            }
        }
    }
    LawMoments { mean, covariance }
}

/// `1/2 sum |P(x) - Q(x)| + 1/2 (tail_P + tail_Q)`, capped at one.
pub fn tv_distance(p: &DiscreteLaw, q: &DiscreteLaw) -> Result<f64> {
    if p.dimension != q.dimension {
        return Err(Error::DimensionMismatch {
            left: p.dimension,
            right: q.dimension,
        });
    }
    let mut acc = 0.0;
    for (x, &a) in &p.pmf {
        acc += (a - q.prob(x)).abs();
    }
    for (x, &b) in &q.pmf {
        if !p.pmf.contains_key(x) {
            acc += b;
        }
    }
    Ok((0.5 * (acc + p.tail_mass + q.tail_mass)).min(1.0))
}

fn check_tol(tail_tol: f64) -> Result<()> {
    if !(tail_tol > 0.0 && tail_tol < 1.0) {
        return Err(Error::invalid(format!(
            "tail tolerance {tail_tol} outside (0, 1)"
        )));
    }
    Ok(())
}

fn check_rate(rate: f64) -> Result<()> {
    if !(rate >= 0.0 && rate.is_finite()) {
        return Err(Error::invalid(format!(
            "Poisson rate {rate} must be finite and >= 0"
        )));
    }
    Ok(())
}

/// `Pois(lambda)` masses for `0..=k_max`, where `k_max` is the first index past
/// the mode at which the geometric bound on the remaining tail is below `tol`.
fn poisson_masses(lambda: f64, tol: f64) -> Vec<f64> {
    if lambda == 0.0 {
        return vec![1.0];
    }
    let ln_lambda = lambda.ln();
    let mut log_p = -lambda;
    let mut out = vec![log_p.exp()];
    let mut k = 0u64;
    loop {
        k += 1;
        log_p += ln_lambda - (k as f64).ln();
        let pk = log_p.exp();
        out.push(pk);
        let ratio = lambda / (k as f64 + 1.0);
        if ratio < 1.0 && pk * ratio / (1.0 - ratio) < tol {
            return out;
        }
    }
}

pub fn poisson_law(lambda: f64, tail_tol: f64) -> Result<DiscreteLaw> {
    check_rate(lambda)?;
    check_tol(tail_tol)?;
    let pmf = poisson_masses(lambda, tail_tol)
        .into_iter()
        .enumerate()
        .map(|(k, p)| (vec![k as u64], p))
        .collect();
    Ok(DiscreteLaw::from_truncated(1, pmf))
}

/// Rates `lambda_S` of the independent components `Z_S`; `set` lists the
/// coordinates (1-based) that `Z_S` contributes to.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SharedComponentSpec {
    pub dimension: usize,
    pub components: Vec<SharedComponent>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SharedComponent {
    pub set: Vec<usize>,
    pub rate: f64,
}

impl SharedComponentSpec {
    pub fn new(dimension: usize, components: Vec<(Vec<usize>, f64)>) -> Result<Self> {
        let spec = SharedComponentSpec {
            dimension,
            components: components
                .into_iter()
                .map(|(set, rate)| SharedComponent { set, rate })
                .collect(),
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.dimension == 0 {
            return Err(Error::invalid("dimension must be at least 1"));
        }
        let mut seen = std::collections::BTreeSet::new();
        for c in &self.components {
            check_rate(c.rate)?;
            let mut s = c.set.clone();
            s.sort_unstable();
            s.dedup();
            if s.is_empty() || s.len() != c.set.len() {
                return Err(Error::invalid(format!("invalid component set {:?}", c.set)));
            }
            if s.iter().any(|&i| i == 0 || i > self.dimension) {
                return Err(Error::invalid(format!(
                    "component set {:?} outside 1..={}",
                    c.set, self.dimension
                )));
            }
            if !seen.insert(s) {
                return Err(Error::invalid(format!(
                    "component set {:?} listed twice",
                    c.set
                )));
            }
        }
        Ok(())
    }

    /// `sum_{S containing i} lambda_S` for every coordinate.
    pub fn marginal_rates(&self) -> Vec<f64> {
        (1..=self.dimension)
            .map(|i| {
                self.components
                    .iter()
                    .filter(|c| c.set.contains(&i))
                    .map(|c| c.rate)
                    .sum()
            })
            .collect()
    }

    /// `Cov(T_i, T_j) = sum_{S containing i and j} lambda_S`.
    pub fn covariance(&self) -> Vec<Vec<f64>> {
        let d = self.dimension;
        let mut out = vec![vec![0.0; d]; d];
        for c in &self.components {
            for &i in &c.set {
                for &j in &c.set {
                    out[i - 1][j - 1] += c.rate;
                }
            }
        }
        out
    }
}

/// Joint law of `T_i = sum_{S containing i} Z_S` with independent
/// `Z_S ~ Pois(lambda_S)`, by truncated convolution.
pub fn shared_component_law(spec: &SharedComponentSpec, tail_tol: f64) -> Result<DiscreteLaw> {
    spec.validate()?;
    check_tol(tail_tol)?;
    let d = spec.dimension;
    if d > MAX_SHARED_DIMENSION {
        return Err(Error::invalid(format!(
            "dimension {d} exceeds {MAX_SHARED_DIMENSION}"
        )));
    }
    let active: Vec<&SharedComponent> = spec.components.iter().filter(|c| c.rate > 0.0).collect();
    let per = tail_tol / active.len().max(1) as f64;
    let mut pmf: BTreeMap<Vec<u64>, f64> = BTreeMap::from([(vec![0; d], 1.0)]);
    for c in active {
        let masses = poisson_masses(c.rate, per);
        let mut next = BTreeMap::new();
        for (x, &p) in &pmf {
            for (k, &q) in masses.iter().enumerate() {
                let mut y = x.clone();
                for &i in &c.set {
                    y[i - 1] += k as u64;
                }
                *next.entry(y).or_insert(0.0) += p * q;
            }
        }
        pmf = next;
    }
    Ok(DiscreteLaw::from_truncated(d, pmf))
}

/// Law of `sum_i i Z_i` with independent `Z_i ~ Pois(rates[i - 1])`.
pub fn compound_weighted_law(rates: &[f64], tail_tol: f64) -> Result<DiscreteLaw> {
    if rates.is_empty() {
        return Err(Error::invalid("at least one weight class is required"));
    }
    check_tol(tail_tol)?;
    for &r in rates {
        check_rate(r)?;
    }
    let active = rates.iter().filter(|&&r| r > 0.0).count().max(1);
    let per = tail_tol / active as f64;
    let mut pmf: BTreeMap<u64, f64> = BTreeMap::from([(0, 1.0)]);
    for (i, &rate) in rates.iter().enumerate() {
        if rate == 0.0 {
            continue;
        }
        let step = i as u64 + 1;
        let masses = poisson_masses(rate, per);
        let mut next = BTreeMap::new();
        for (&x, &p) in &pmf {
            for (k, &q) in masses.iter().enumerate() {
                *next.entry(x + step * k as u64).or_insert(0.0) += p * q;
            }
        }
        pmf = next;
    }
    Ok(DiscreteLaw::from_truncated(
        1,
        pmf.into_iter().map(|(x, p)| (vec![x], p)).collect(),
    ))
}

/// Law of `C(Z, 2)` for `Z ~ Pois(mu)`.
pub fn binom2_poisson_law(mu: f64, tail_tol: f64) -> Result<DiscreteLaw> {
    check_rate(mu)?;
    check_tol(tail_tol)?;
    let mut pmf = BTreeMap::new();
    for (k, p) in poisson_masses(mu, tail_tol).into_iter().enumerate() {
        let k = k as u64;
        *pmf.entry(vec![k * k.saturating_sub(1) / 2]).or_insert(0.0) += p;
    }
    Ok(DiscreteLaw::from_truncated(1, pmf))
}
