//! Identifying the knot traced by a closed spatial polyline: project along a
//! regular direction, read off a diagram, reduce it, and compute polynomial
//! invariants.

pub mod alexander;
pub mod bracket;
pub mod builder;
pub mod diagram;
pub mod laurent;

pub use alexander::{alexander, determinant};
pub use bracket::{jones, kauffman_bracket, CROSSING_BUDGET};
pub use builder::{diagram_from_flat_path, diagram_from_polyline, diagram_from_projection, diagram_from_sticks};
pub use diagram::Diagram;
pub use laurent::{det_laurent, Laurent};

use serde::Serialize;

use crate::error::Result;
use crate::geometry::{generic_direction, polyline_scale, V3};
use crate::num::Scalar;

pub(crate) fn depth_eps<S: Scalar>(points: &[V3<S>], tol: S) -> S {
    (tol * S::s(10.0)).max(S::s(1e-12)) * polyline_scale(points)
}

/// Everything the identification pipeline learned about one loop.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KnotReport {
    /// Crossings in the raw projected diagram.
    pub crossing_count_raw: usize,
    /// Crossings after Reidemeister reduction.
    pub crossing_count: usize,
    pub writhe: i64,
    pub determinant: u64,
    pub alexander: Laurent,
    pub jones: Laurent,
    /// True when every computed invariant matches the unknot.
    pub invariants_trivial: bool,
    /// The projection direction used.
    pub direction: [f64; 3],
}

/// Invariants of an already-built diagram.
pub fn report_for_diagram(d: &Diagram, direction: [f64; 3]) -> Result<KnotReport> {
    let reduced = d.simplified();
    let alex = alexander(&reduced)?;
    let det = alex.eval_pm_one(true).unsigned_abs() as u64;
    let v = jones(&reduced)?;
    let trivial = det == 1 && alex == Laurent::one() && v == Laurent::one();
    Ok(KnotReport {
        crossing_count_raw: d.crossing_count(),
        crossing_count: reduced.crossing_count(),
        writhe: reduced.writhe(),
        determinant: det,
        alexander: alex,
        jones: v,
        invariants_trivial: trivial,
        direction,
    })
}

/// Identify the knot traced by a closed polyline: pick a seeded regular
/// projection, build the diagram, reduce, and compute invariants.
pub fn certify<S: Scalar>(points: &[V3<S>], seed: u64, tol: S) -> Result<KnotReport> {
    let dir = generic_direction(points, seed, tol)?;
    let d = builder::diagram_from_projection(points, dir, tol)?;
    report_for_diagram(
        &d,
        [dir.x.to_f64_lossy(), dir.y.to_f64_lossy(), dir.z.to_f64_lossy()],
    )
}
