//! Monochromatic edges of K_n with about C(n,2) colors, against Pois(1).
//!
//! cargo run --release --example birthday

use hypermono::constructions::{clique_hypergraph, SimpleGraph};
use hypermono::hypergraph::Multiplex;
use hypermono::limits::{poisson_law, tv_distance, DEFAULT_TAIL_TOL};
use hypermono::montecarlo::{simulate_t, SimulationConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let target = poisson_law(1.0, DEFAULT_TAIL_TOL)?;
    for n in [20, 50, 100, 200] {
        let h = clique_hypergraph(&SimpleGraph::complete(n), 2)?;
        let c = h.num_edges() as u32;
        let cfg = SimulationConfig::new(c, 200_000, 42, 4)?;
        let emp = simulate_t(&Multiplex::single(h), &cfg)?;
        println!(
            "n {n:>3}  c {c:>6}  P(no collision) {:.4}  TV {:.4}",
            emp.law.prob(&[0]),
            tv_distance(&emp.law, &target)?
        );
    }
    Ok(())
}
