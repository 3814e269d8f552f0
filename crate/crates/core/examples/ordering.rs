//! Orders a connected edge tuple so that some edge overlaps its
//! predecessors in between 2 and r-1 vertices.
//!
//! cargo run --example ordering

use hypermono::hypergraph::Hyperedge;
use hypermono::ordering::{order_connected_edges, overlap_profile, tuple_shape};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let tuples: [Vec<Vec<u32>>; 3] = [
        vec![vec![0, 1, 2], vec![2, 3, 4], vec![1, 2, 3]],
        vec![
            vec![0, 1, 2, 3],
            vec![3, 4, 5, 6],
            vec![6, 7, 8, 9],
            vec![0, 1, 2, 3],
        ],
        vec![vec![4, 5, 6], vec![0, 1, 2], vec![2, 3, 4], vec![0, 1, 5]],
    ];
    for raw in tuples {
        let edges = raw
            .into_iter()
            .enumerate()
            .map(|(i, e)| Hyperedge::new(e, i))
            .collect::<Result<Vec<_>, _>>()?;
        let (b, union) = tuple_shape(&edges);
        let out = order_connected_edges(&edges)?;
        let p = out.permutation();
        println!(
            "{b} distinct edges, {union} vertices: {out:?}, overlaps {:?}",
            overlap_profile(&edges, p)
        );
    }
    Ok(())
}
