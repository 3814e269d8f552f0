//! Independent reference computations shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::seq::index::sample;
use rand::Rng;

pub type Edges = Vec<Vec<u32>>;

pub fn rat(a: i64, b: i64) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

pub fn to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap()
}

/// `m` distinct random `r`-subsets of `[0, n)`, sorted.
pub fn random_edges<R: Rng>(rng: &mut R, n: usize, r: usize, m: usize) -> Edges {
    let mut seen = BTreeSet::new();
    let mut tries = 0;
    while seen.len() < m && tries < 50 * m + 50 {
        let mut e: Vec<u32> = sample(rng, n, r).into_iter().map(|v| v as u32).collect();
        e.sort_unstable();
        seen.insert(e);
        tries += 1;
    }
    seen.into_iter().collect()
}

fn mono(colors: &[u32], e: &[u32]) -> bool {
    e.iter()
        .all(|&v| colors[v as usize] == colors[e[0] as usize])
}

/// Outcome counts of the weighted count vector over all `c^n` colorings.
pub fn enumerate_weighted(
    layers: &[(Edges, Vec<u64>)],
    n: usize,
    c: u32,
) -> BTreeMap<Vec<u64>, u64> {
    let mut colors = vec![0u32; n];
    let mut out = BTreeMap::new();
    loop {
        let x: Vec<u64> = layers
            .iter()
            .map(|(edges, w)| {
                edges
                    .iter()
                    .zip(w)
                    .filter(|(e, _)| mono(&colors, e))
                    .map(|(_, &w)| w)
                    .sum()
            })
            .collect();
        *out.entry(x).or_insert(0) += 1;
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            colors[i] += 1;
            if colors[i] < c {
                break;
            }
            colors[i] = 0;
            i += 1;
        }
    }
}

pub fn enumerate(layers: &[Edges], n: usize, c: u32) -> BTreeMap<Vec<u64>, u64> {
    let weighted: Vec<(Edges, Vec<u64>)> = layers
        .iter()
        .map(|l| (l.clone(), vec![1; l.len()]))
        .collect();
    enumerate_weighted(&weighted, n, c)
}

/// Mean vector and covariance matrix of an enumerated law.
pub fn rational_moments(
    counts: &BTreeMap<Vec<u64>, u64>,
) -> (Vec<BigRational>, Vec<Vec<BigRational>>) {
    let total: u64 = counts.values().sum();
    let d = counts.keys().next().map_or(0, Vec::len);
    let p = |k: u64| rat(k as i64, total as i64);
    let mut mean = vec![BigRational::zero(); d];
    for (x, &k) in counts {
        for i in 0..d {
            mean[i] += p(k) * BigRational::from_integer(x[i].into());
        }
    }
    let mut cov = vec![vec![BigRational::zero(); d]; d];
    for (x, &k) in counts {
        for i in 0..d {
            for j in 0..d {
                let a = BigRational::from_integer(x[i].into()) - &mean[i];
                let b = BigRational::from_integer(x[j].into()) - &mean[j];
                cov[i][j] += p(k) * a * b;
            }
        }
    }
    (mean, cov)
}

pub fn law_f64(counts: &BTreeMap<Vec<u64>, u64>) -> BTreeMap<Vec<u64>, f64> {
    let total: u64 = counts.values().sum();
    counts
        .iter()
        .map(|(x, &k)| (x.clone(), k as f64 / total as f64))
        .collect()
}

/// Ordered pairs of distinct edges by overlap size, index `t` in `0..=r`.
pub fn pairs_by_overlap(edges: &Edges, r: usize) -> Vec<u64> {
    let mut out = vec![0; r + 1];
    for (i, a) in edges.iter().enumerate() {
        for (j, b) in edges.iter().enumerate() {
            if i != j {
                out[a.iter().filter(|v| b.contains(v)).count()] += 1;
            }
        }
    }
    out
}

pub fn tv(p: &BTreeMap<Vec<u64>, f64>, q: &BTreeMap<Vec<u64>, f64>) -> f64 {
    let keys: BTreeSet<&Vec<u64>> = p.keys().chain(q.keys()).collect();
    let s: f64 = keys
        .into_iter()
        .map(|k| (p.get(k).unwrap_or(&0.0) - q.get(k).unwrap_or(&0.0)).abs())
        .sum();
    let missing = (1.0 - p.values().sum::<f64>()).abs() + (1.0 - q.values().sum::<f64>()).abs();
    0.5 * (s + missing)
}

pub fn poisson_pmf(lambda: f64, k: u64) -> f64 {
    let mut p = (-lambda).exp();
    for i in 1..=k {
        p *= lambda / i as f64;
    }
    p
}

/// `t_i` of the ordering, for `i = 2..=k`.
pub fn overlaps(edges: &Edges, order: &[usize]) -> Vec<usize> {
    let mut seen: BTreeSet<u32> = BTreeSet::new();
    let mut out = Vec::new();
    for (pos, &i) in order.iter().enumerate() {
        if pos > 0 {
            out.push(edges[i].iter().filter(|v| seen.contains(v)).count());
        }
        seen.extend(edges[i].iter().copied());
    }
    out
}

pub fn satisfies_lemma(edges: &Edges, order: &[usize], r: usize) -> bool {
    let mut sorted = order.to_vec();
    sorted.sort_unstable();
    if sorted != (0..edges.len()).collect::<Vec<_>>() {
        return false;
    }
    let t = overlaps(edges, order);
    t.iter().all(|&x| x >= 1) && t.iter().any(|&x| (2..r).contains(&x))
}

/// First permutation satisfying both conditions, by exhaustive search.
pub fn search_ordering(edges: &Edges, r: usize) -> Option<Vec<usize>> {
    (0..edges.len())
        .permutations(edges.len())
        .find(|p| satisfies_lemma(edges, p, r))
}

/// Random connected tuple of `k` edges of size `r` (repeats allowed) over a
/// small vertex pool, each edge after the first meeting an earlier one.
pub fn random_connected_tuple<R: Rng>(rng: &mut R, k: usize, r: usize, pool: usize) -> Edges {
    let mut edges: Edges = Vec::new();
    while edges.len() < k {
        if !edges.is_empty() && rng.random_bool(0.15) {
            let e = edges[rng.random_range(0..edges.len())].clone();
            edges.push(e);
            continue;
        }
        let mut e: Vec<u32> = sample(rng, pool, r).into_iter().map(|v| v as u32).collect();
        if let Some(prev) = (!edges.is_empty()).then(|| &edges[rng.random_range(0..edges.len())]) {
            let v = prev[rng.random_range(0..r)];
            if !e.contains(&v) {
                e[0] = v;
            }
        }
        e.sort_unstable();
        edges.push(e);
    }
    // shuffle so that the input order itself is not always connected
    for i in (1..edges.len()).rev() {
        let j = rng.random_range(0..=i);
        edges.swap(i, j);
    }
    edges
}

pub fn distinct_count(edges: &Edges) -> usize {
    edges.iter().collect::<BTreeSet<_>>().len()
}

pub fn union_size(edges: &Edges) -> usize {
    edges.iter().flatten().collect::<BTreeSet<_>>().len()
}

/// `r`-term progressions in `set`, found by checking every `r`-subset.
pub fn count_aps(set: &[u64], r: usize) -> usize {
    set.iter()
        .combinations(r)
        .filter(|s| {
            let mut s: Vec<u64> = s.iter().map(|&&x| x).collect();
            s.sort_unstable();
            let d = s[1] - s[0];
            d > 0 && s.windows(2).all(|w| w[1] - w[0] == d)
        })
        .count()
}

/// Monochromatic edges of a coloring, checked directly.
pub fn count_mono(edges: &Edges, colors: &[u32]) -> u64 {
    edges.iter().filter(|e| mono(colors, e)).count() as u64
}
