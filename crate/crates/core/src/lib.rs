//! Planar convex geometry for K-density analysis: bodies in four
//! representations, sectional density profiles, boundary expansion
//! coefficients, and the affine inequality chain.

pub mod asymptotics;
pub mod body;
pub mod density;
pub mod error;
pub mod geom;
pub mod grid;
pub mod inequalities;
pub mod polygon;
pub mod report;
pub mod shape;

pub use body::{hausdorff_distance, BoundaryPoint, ConvexBody};
pub use error::{GeomError, Result};
pub use geom::{Direction, Vec2};
pub use grid::SupportGrid;
