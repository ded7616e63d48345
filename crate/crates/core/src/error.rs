use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("cone is not proper (nontrivial lineality space)")]
    NotProper,

    #[error("cone is not proper and generating")]
    NotProperGenerating,

    #[error("polygon vertices are not in strictly convex counterclockwise position")]
    NotConvexPosition,

    #[error("cone is not the homogenization of a polygon in R^3")]
    NotPolygonCone,

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("no functional cuts off ray {0} from the remaining extremal rays")]
    NoVertexFigureFunctional(usize),

    #[error("linear map is not positive")]
    NotPositive,

    #[error("invalid retraction: {0}")]
    InvalidRetraction(String),

    #[error("index {index} out of range (length {len})")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub(crate) fn check_dim(context: &'static str, expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            context,
            expected,
            found,
        })
    }
}
