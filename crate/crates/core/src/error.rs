//! Error type shared across the crate.
//!
//! Messages name the offending field or constraint so frontends can print a
//! single-line diagnostic and map the error to an exit status.

use std::fmt;

/// Everything that can go wrong constructing bodies or evaluating
/// geometric operators on them.
#[derive(Clone, Debug, PartialEq)]
pub enum GeomError {
    /// A shape failed validation; `field` names the offending datum.
    InvalidShape { field: String, message: String },
    /// An operator precondition on its numeric arguments was violated.
    Domain { message: String },
    /// The operator needs the origin strictly inside the body and it is not.
    OriginNotInterior { what: String },
    /// A curvature-based quantity was requested for a body without a
    /// curvature function (polygons). Smoothing is the supported recourse.
    CurvatureUndefined { what: String },
    /// A centrally-symmetric body was required.
    NotCentrallySymmetric { what: String },
    /// Input or output file handling failed.
    Io { message: String },
}

impl GeomError {
    pub fn invalid_shape(field: impl Into<String>, message: impl Into<String>) -> Self {
        GeomError::InvalidShape {
            field: field.into(),
            message: message.into(),
        }
    }

    pub fn domain(message: impl Into<String>) -> Self {
        GeomError::Domain {
            message: message.into(),
        }
    }

    pub fn origin_not_interior(what: impl Into<String>) -> Self {
        GeomError::OriginNotInterior { what: what.into() }
    }

    pub fn curvature_undefined(what: impl Into<String>) -> Self {
        GeomError::CurvatureUndefined { what: what.into() }
    }

    pub fn not_centrally_symmetric(what: impl Into<String>) -> Self {
        GeomError::NotCentrallySymmetric { what: what.into() }
    }

    pub fn io(message: impl Into<String>) -> Self {
        GeomError::Io {
            message: message.into(),
        }
    }
}

impl fmt::Display for GeomError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeomError::InvalidShape { field, message } => {
                write!(f, "invalid shape: field `{field}`: {message}")
            }
            GeomError::Domain { message } => write!(f, "domain error: {message}"),
            GeomError::OriginNotInterior { what } => {
                write!(f, "{what}: origin must lie in the interior of the body")
            }
            GeomError::CurvatureUndefined { what } => write!(
                f,
                "{what}: curvature function undefined for a polygon; smooth it first \
                 (Minkowski sum with a small disk)"
            ),
            GeomError::NotCentrallySymmetric { what } => {
                write!(f, "{what}: body must be centrally symmetric about the origin")
            }
            GeomError::Io { message } => write!(f, "io error: {message}"),
        }
    }
}

impl std::error::Error for GeomError {}

impl From<std::io::Error> for GeomError {
    fn from(e: std::io::Error) -> Self {
        GeomError::io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, GeomError>;
