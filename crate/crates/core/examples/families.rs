//! Builds each hypergraph family and prints its size and mean count.
//!
//! cargo run --example families

use hypermono::constructions::{
    ap_hypergraph, appendix_star_hypergraph, clique_hypergraph, copies_hypergraph, PatternGraph,
    SimpleGraph,
};
use hypermono::io;
use hypermono::moments::mean_t;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let k12 = SimpleGraph::complete(12);

    let triangles = clique_hypergraph(&k12, 3)?;
    println!(
        "triangles of K_12: {} edges, mean at c=4: {:.3}",
        triangles.num_edges(),
        mean_t(&triangles, 4)?
    );

    let copies = copies_hypergraph(&k12, &PatternGraph::cycle(4)?)?;
    println!(
        "4-cycles of K_12 as edge sets: {} edges on {} vertices (host edges)",
        copies.hypergraph.num_edges(),
        copies.hypergraph.num_vertices()
    );

    let ints: Vec<u64> = (1..=100).collect();
    let aps = ap_hypergraph(&ints, 3)?;
    println!(
        "3-term progressions in [100]: {}",
        aps.hypergraph.num_edges()
    );

    let star = appendix_star_hypergraph(8)?;
    println!("triples through vertex 0 in [8]: {}", star.num_edges());

    let small = ap_hypergraph(&[1, 2, 3, 5, 7], 3)?;
    println!("{}", io::hypergraph_json(&small.hypergraph)?);
    Ok(())
}
