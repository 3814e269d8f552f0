//! Monochromatic copies of a pattern under vertex coloring, as a weighted
//! hypergraph count.
//!
//! cargo run --release --example weighted_copies

use hypermono::constructions::{vertex_copy_weighted_hypergraph, PatternGraph, SimpleGraph};
use hypermono::limits::{compound_weighted_law, tv_distance, DEFAULT_TAIL_TOL};
use hypermono::moments::{mean_t, variance_w};
use hypermono::montecarlo::{simulate_w, SimulationConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let blocks = [
        SimpleGraph::disjoint_copies(&SimpleGraph::path(3), 400),
        SimpleGraph::disjoint_copies(&SimpleGraph::complete(3), 400),
    ];
    let g = SimpleGraph::disjoint_union(&blocks);
    let wh = vertex_copy_weighted_hypergraph(&g, &PatternGraph::path(3)?, None)?;
    let c = ((wh.total_weight() as f64).sqrt().ceil()) as u32;
    let layers = wh.weight_layers();
    let rates = layers
        .layers()
        .iter()
        .map(|l| mean_t(l, c))
        .collect::<Result<Vec<_>, _>>()?;
    let v = variance_w(&wh, c)?;
    println!(
        "c {c}, weight-class rates {rates:.3?}, mean {:.3}, variance {:.3}",
        v.mean, v.variance
    );

    let emp = simulate_w(&wh, &SimulationConfig::new(c, 200_000, 5, 4)?)?;
    let target = compound_weighted_law(&rates, DEFAULT_TAIL_TOL)?;
    println!("TV to sum of i Z_i: {:.4}", tv_distance(&emp.law, &target)?);
    for w in 0..7 {
        println!(
            "P(W = {w}) {:.4} vs {:.4}",
            emp.law.prob(&[w]),
            target.prob(&[w])
        );
    }
    Ok(())
}
