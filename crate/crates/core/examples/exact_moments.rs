//! Exact mean, variance and covariance of monochromatic edge counts.
//!
//! cargo run --example exact_moments

use hypermono::hypergraph::{Multiplex, UniformHypergraph};
use hypermono::moments::{condition_ratios, exact, moment_matrix};
use hypermono::montecarlo::exact_law;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let h = UniformHypergraph::new(3, 5, vec![vec![0, 1, 2], vec![0, 1, 3], vec![2, 3, 4]])?;
    let m = exact::variance_t(&h, 2)?;
    println!(
        "E T = {}, Var T = {} = {} + {}",
        m.mean, m.variance, m.r1, m.r2[&2]
    );
    println!("K(2, H) = {}", m.k[&2]);

    let law = exact_law(&Multiplex::single(h.clone()), 2)?;
    let (mean, cov) = law.moments();
    println!(
        "from all 32 colorings: mean {}, variance {}",
        mean[0], cov[0][0]
    );

    let a = UniformHypergraph::new(3, 4, vec![vec![0, 1, 2]])?;
    let b = UniformHypergraph::new(3, 4, vec![vec![0, 1, 3]])?;
    println!("Cov = {}", exact::covariance_t(&a, &b, 2)?.covariance);

    let pair = UniformHypergraph::new(2, 5, vec![vec![0, 1], vec![3, 4]])?;
    let mm = moment_matrix(&Multiplex::new(vec![h.clone(), pair])?, 3)?;
    println!("means {:?}", mm.means);
    println!("covariance {:?}", mm.covariance);
    println!(
        "condition ratios at c=10: {:?}",
        condition_ratios(&h, 10)?.ratios
    );
    Ok(())
}
