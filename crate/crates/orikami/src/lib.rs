//! Self-intersecting flat origami: foldings of the unit square into space,
//! the knots traced by folded loops, and constructions that realize a
//! prescribed knot as a folded loop.

pub mod analysis;
pub mod construct;
pub mod error;
pub mod folding;
pub mod generators;
pub mod geometry;
pub mod io;
pub mod knotid;
pub mod num;

pub use error::{Error, Result};
pub use num::{Scalar, Tolerance};

/// Double-precision aliases for the generic core types.
pub type Vec2 = geometry::V2<f64>;
pub type Vec3 = geometry::V3<f64>;
pub type Seg2 = geometry::Segment2<f64>;
pub type Embedding = geometry::RigidEmbedding<f64>;
pub type Tol = num::Tolerance<f64>;
pub type Pattern = folding::CreasePattern<f64>;
pub type Fold = folding::Folding<f64>;
pub type Loop = folding::PaperLoop<f64>;
pub type Polyline3 = folding::SpatialPolyline<f64>;

pub use analysis::{
    is_injective, properness_verdict, self_intersections, ContactKind, IntersectionFinding,
    PropernessReport, Verdict, Witness,
};
pub use construct::{
    build_cone_folding, choose_apex, construct_from_sticks, loop_with_crossings,
    reference_diagram, solve_apex_height, unfold_to_pattern, ConeConstruction, CrossingOverride,
    StickCrossing, StickDiagram,
};
pub use folding::{
    build_pattern, crease_edge_count, fold_loop, fold_point, validate_folding, ValidationReport,
};
pub use generators::{
    improper_fixture, improper_fixture_restricted, simple_fold_sequence, single_crease,
    torus_folding, TorusParams,
};
pub use knotid::{certify, Diagram, KnotReport, Laurent};
