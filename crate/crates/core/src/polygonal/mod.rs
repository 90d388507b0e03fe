//! Square and rectangle billiards, the equilateral triangle, their half-well
//! folds, and closed-orbit tables.
//!
//! Triangle coordinates put the vertices at `(0, 0)` and `(±a/2, √3a/2)`,
//! so the bisector is the `y` axis. The triangle spectrum is indexed by
//! `m >= 2n`; `m = 2n` carries only the parity-zero state.

mod isosceles;
mod orbits;
mod rect;
mod triangle;

pub use isosceles::IsoscelesBilliard;
pub use orbits::{
    isosceles_closed_orbits, square_closed_orbits, triangle_closed_orbits, ClosedOrbit, Launch,
    OrbitKind,
};
pub use rect::{AxisWindows, RectBilliard, RevivalStatus, SquareSymmetryState};
pub use triangle::{HalfTriangleBilliard, TriangleBilliard, TriangleState};
