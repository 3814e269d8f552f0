//! Matching first two moments without a Poisson limit.
//!
//! cargo run --release --example counterexamples

use hypermono::constructions::{
    appendix_star_hypergraph, appendix_three_multiplex, ThreeLayerVariant,
};
use hypermono::experiment::three_layer_limit;
use hypermono::hypergraph::Multiplex;
use hypermono::limits::*;
use hypermono::moments::{moment_matrix, variance_t};
use hypermono::montecarlo::{simulate_t, SimulationConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n = 300;
    let star = appendix_star_hypergraph(n)?;
    let v = variance_t(&star, n as u32)?;
    println!(
        "star triples: mean {:.3}, variance {:.3}",
        v.mean, v.variance
    );
    let emp = simulate_t(
        &Multiplex::single(star),
        &SimulationConfig::new(n as u32, 100_000, 1, 4)?,
    )?;
    let pois = poisson_law(v.mean, DEFAULT_TAIL_TOL)?;
    let binom2 = binom2_poisson_law(1.0, DEFAULT_TAIL_TOL)?;
    println!(
        "TV to Poisson {:.3}, to C(Z,2) {:.3}",
        tv_distance(&emp.law, &pois)?,
        tv_distance(&emp.law, &binom2)?
    );

    let (n, lambda) = (200, 0.2);
    let c = (n * n) as u32;
    for variant in [ThreeLayerVariant::Nested, ThreeLayerVariant::Pairwise] {
        let m = appendix_three_multiplex(n, lambda, variant)?;
        let mm = moment_matrix(&m, c)?;
        let emp = simulate_t(&m, &SimulationConfig::new(c, 100_000, 2, 4)?)?;
        let limit = shared_component_law(&three_layer_limit(variant, lambda), DEFAULT_TAIL_TOL)?;
        println!(
            "{variant:?}: cov(1,2) {:.4}, P(T = (1,1,1)) {:.4}, TV to limit {:.4}",
            mm.covariance[0][1],
            emp.law.prob(&[1, 1, 1]),
            tv_distance(&emp.law, &limit)?
        );
    }
    Ok(())
}
