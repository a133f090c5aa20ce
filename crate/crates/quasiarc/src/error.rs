use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid surface: {0}")]
    InvalidSurface(String),

    #[error("invalid arc: {0}")]
    InvalidArc(String),

    #[error("arc {0} does not belong to the census of {1}")]
    UnknownArc(String, String),

    #[error("arc {0} is not a member of the facet")]
    ArcNotInFacet(String),

    #[error("expected exactly one flip completion, found {found}")]
    FlipCompletion { found: usize },

    #[error("not a triangulation: {0}")]
    NotATriangulation(String),

    #[error("facet is outside the expected family: {0}")]
    WrongFamily(String),

    #[error("parity mismatch: {0}")]
    Parity(String),

    #[error("ground sets overlap on {0}")]
    GroundOverlap(String),

    #[error("duplicate facet in order: {0}")]
    DuplicateFacet(String),

    #[error("order does not match the facets of the complex: {0}")]
    OrderMismatch(String),

    #[error("cap exceeded: {0}")]
    CapExceeded(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("oracle resolution must be at least 4, got {0}")]
    Resolution(usize),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
