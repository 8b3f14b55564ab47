//! Plabic graphs as rotation systems.

mod families;
mod graph;
mod moves;
mod symmetry;
mod trips;

pub use families::{build_checkboard, build_dual, build_rectangle, rectangle_representative, Family, GridGraph};
pub use graph::{edge_of, twin, Colour, EdgeId, Faces, GraphJson, HalfEdge, PlabicGraph, Vertex, VertexId, VertexJson};
pub use trips::{FaceLabels, ReducednessWitness, Trip};
