//! Kauffman bracket state sums, extreme-term coefficients via chord
//! interlacement graphs, and spread bounds from the non-alternating skeleton
//! of a link diagram.

pub mod circlegraph;
pub mod diagram;
pub mod error;
pub mod fixtures;
pub mod polynomial;
pub mod realize;
pub mod skeleton;
pub mod states;
pub mod table;

pub use circlegraph::{
    extreme_coefficient, f_bruteforce, f_recursive, intersection_graph, refined_spread, ChordDiagramOnCircle,
    ExtremeCoefficientReport, IntersectionGraph, RefinedSpread,
};
pub use diagram::{parse_corpus, parse_pd, CrossingSign, DiagramReport, HalfEdge, PdCode, PdCrossing, PlanarDiagram};
pub use error::{Error, Result};
pub use polynomial::IntLaurent;
pub use skeleton::{build_skeleton, classify_edges, skeleton_bounds, split_skeleton, EdgeKind, Skeleton, SkeletonBounds};
pub use states::{
    bracket_bruteforce, bracket_bruteforce_with_cap, extreme_bounds, extreme_state, jones_data, resolve,
    surface_characteristics, ExtremeBounds, ExtremeStateData, Marker, State, StateResolution,
};
pub use table::{TableEntry, TableOptions, TableRow};
