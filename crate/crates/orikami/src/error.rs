use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Input outside the unit square, an invalid parameter, or a malformed request.
    #[error("domain error: {0}")]
    Domain(String),

    /// A vector operation received a (near-)zero vector.
    #[error("degenerate vector (norm below tolerance)")]
    DegenerateVector,

    /// Source/target triangles are not congruent; carries the worst distance defect.
    #[error("triangles are not congruent (worst edge-length defect {defect})")]
    NonCongruent { defect: f64 },

    /// No regular projection direction found within the retry budget.
    #[error("no generic projection direction found after {attempts} attempts")]
    NonGenericDirection { attempts: usize },

    /// Crease graph is not an embedded planar subdivision of the square.
    #[error("invalid crease pattern: {0}")]
    NonPlanarInput(String),

    /// A folding failed validation badly enough that downstream work is unsafe.
    #[error("invalid folding: {0}")]
    InvalidFolding(String),

    /// The traced curve is not an embedded closed loop.
    #[error("not a knot: {0}")]
    NotAKnot(String),

    /// Diagram exceeds the exact-state-sum budget; simplify first.
    #[error(
        "diagram has {crossings} crossings, above the exact bracket budget of {budget}; \
         run simplify before computing polynomial invariants"
    )]
    CrossingBudget { crossings: usize, budget: usize },

    /// Diagram data is structurally unusable (bad labels, split components, ...).
    #[error("unsupported diagram: {0}")]
    UnsupportedDiagram(String),

    /// Requested crossing overrides disagree with the geometry they describe.
    #[error("specification error: {0}")]
    Specification(String),

    /// The cone construction could not be carried out on this input.
    #[error("construction error: {0}")]
    Construction(String),

    /// A numeric search (bracketing, bisection) failed to converge.
    #[error("numeric error: {0}")]
    Numeric(String),

    /// Rejection sampling exhausted its attempt budget.
    #[error("generation error: {0}")]
    Generation(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    /// Serialization/deserialization failure, naming the offending key when known.
    #[error("format error: {0}")]
    Format(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
