//! Exact combinatorics of analytic chord diagrams, bushes, cordages,
//! their generating series, and combinatorial curves on the sphere.

pub mod analyticity;
pub mod cordage;
pub mod curves;
pub mod diagram;
pub mod enumeration;
pub mod error;
pub mod graph;
pub mod series;

pub use diagram::{
    canonical_cyclic, canonical_dihedral, connected_components, mutate, parse_diagram,
    stabilizer_order, CyclicDiagram, DihedralDiagram, LinearDiagram, RectangleSymmetry,
    RootedDiagram,
};
pub use error::{Error, Result};
pub use graph::{BushMethod, GraphTree, SimpleGraph, SkTree};
