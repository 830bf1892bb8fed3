//! The universal cover `X(Γ)` of the Salvetti complex, developed to finite
//! radius, and the convex geometry used on it: medians, gates, coarse
//! intersections of standard subcomplexes, parallel transport, periodic
//! rays, mirrors and orthants.
//!
//! Vertices of `X(Γ)` are group elements in canonical form; distances are
//! 1-skeleton (ℓ¹) distances. Queries that need cells outside the developed
//! region fail with [`GeometryError::InsufficientRadius`] rather than
//! extending the ball.

mod ball;
mod convex;
pub mod growth;
mod ray;
mod word;

use thiserror::Error;

pub use ball::{BallCube, BallJson, DevelopedBall, WallId, WallKey, DEFAULT_CAP};
pub use convex::{CoarseIntersection, StandardSubcomplex, Transport};
pub use ray::{AngleVerdict, Direction, MirrorLine, Orthant, PeriodicRay, MAX_HORIZON};
pub use word::{canonicalize, GroupElement, Letter, Raag};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeometryError {
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("ball of radius {radius} has {projected} vertices, over the cap of {cap}")]
    CapExceeded { radius: usize, projected: String, cap: usize },
    #[error("insufficient radius: {0}")]
    InsufficientRadius(String),
    #[error("vertex {0} is outside the developed ball")]
    NotInBall(String),
    #[error("transport blocked at step {step}: letter {letter} does not span a cube with the transported cube")]
    ObstructedTransport { step: usize, letter: String },
    #[error("word {0} is not geodesic")]
    NotGeodesic(String),
    #[error("orthant cannot be spanned: {0}")]
    SpanObstructed(String),
    #[error("invalid ray: {0}")]
    InvalidRay(String),
    #[error("horizon {horizon} exceeds the limit of {limit}")]
    HorizonExceeded { horizon: usize, limit: usize },
    #[error("generator set is not a clique: {0}")]
    NotAClique(String),
}
