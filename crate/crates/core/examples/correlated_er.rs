//! Two correlated random graphs colored together: joint law of the two
//! monochromatic edge counts.
//!
//! cargo run --release --example correlated_er

use hypermono::constructions::{sample_correlated_er, CorrelatedErParams, DEFAULT_SUBSET_BOUND};
use hypermono::limits::{shared_component_law, tv_distance, SharedComponentSpec, DEFAULT_TAIL_TOL};
use hypermono::moments::moment_matrix;
use hypermono::montecarlo::{simulate_t, SimulationConfig};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let params = CorrelatedErParams::new(300, 2, 0.1, 0.02)?;
    let m = sample_correlated_er(
        &params,
        DEFAULT_SUBSET_BOUND,
        &mut ChaCha8Rng::seed_from_u64(3),
    )?;
    let (a, b) = (&m.layers()[0], &m.layers()[1]);
    let shared = a.intersection(b)?.num_edges();
    let c = a.num_edges() as u32;
    println!(
        "edges {} / {}, shared {shared}, c {c}",
        a.num_edges(),
        b.num_edges()
    );

    let mm = moment_matrix(&m, c)?;
    println!(
        "means {:.3?}, covariance {:.3}",
        mm.means, mm.covariance[0][1]
    );

    let s = mm.covariance[0][1];
    let spec = SharedComponentSpec::new(
        2,
        vec![
            (vec![1], mm.means[0] - s),
            (vec![2], mm.means[1] - s),
            (vec![1, 2], s),
        ],
    )?;
    let emp = simulate_t(&m, &SimulationConfig::new(c, 100_000, 8, 4)?)?;
    let limit = shared_component_law(&spec, DEFAULT_TAIL_TOL)?;
    println!(
        "TV to shared-component law: {:.4}",
        tv_distance(&emp.law, &limit)?
    );
    Ok(())
}
