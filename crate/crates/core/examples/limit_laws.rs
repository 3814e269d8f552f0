//! Tabulates the limit laws and distances between them.
//!
//! cargo run --example limit_laws

use hypermono::constructions::ThreeLayerVariant;
use hypermono::experiment::three_layer_limit;
use hypermono::limits::*;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let tol = DEFAULT_TAIL_TOL;
    let pois = poisson_law(0.5, tol)?;
    let binom2 = binom2_poisson_law(1.0, tol)?;
    println!("P(Pois(1/2) = 2) = {:.4}", pois.prob(&[2]));
    println!("P(C(Z,2) = 2)    = {:.4}", binom2.prob(&[2]));
    println!("TV = {:.4}", tv_distance(&pois, &binom2)?);

    let joint =
        SharedComponentSpec::new(2, vec![(vec![1], 0.7), (vec![2], 0.7), (vec![1, 2], 0.3)])?;
    let law = shared_component_law(&joint, tol)?;
    let m = law_moments(&law);
    println!(
        "shared pair: means {:?}, covariance {:.3}",
        m.mean, m.covariance[0][1]
    );

    let compound = compound_weighted_law(&[0.5, 0.0, 1.0 / 6.0], tol)?;
    print!(
        "{}",
        compound
            .to_csv()
            .lines()
            .take(6)
            .collect::<Vec<_>>()
            .join("\n")
    );
    println!();

    let nested = shared_component_law(&three_layer_limit(ThreeLayerVariant::Nested, 0.2), tol)?;
    let pairwise = shared_component_law(&three_layer_limit(ThreeLayerVariant::Pairwise, 0.2), tol)?;
    println!(
        "three layers, equal first two moments, TV {:.4}",
        tv_distance(&nested, &pairwise)?
    );
    Ok(())
}
