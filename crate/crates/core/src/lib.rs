pub mod constructions;
pub mod error;
pub mod experiment;
pub mod hypergraph;
pub mod io;
pub mod limits;
pub mod moments;
pub mod montecarlo;
pub mod ordering;
pub mod subsets;
