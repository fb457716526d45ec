//! Geometric resolution of zero-dimensional polynomial systems over Q.
//!
//! Systems are given as straight-line programs. The solver intersects one
//! hypersurface at a time, lifting zero-dimensional fibers to curves with a
//! Newton operator over truncated power series. Quotient algebras are then
//! used for consistency decisions, Bezout witnesses and approximation bounds.

pub mod arith;
pub mod error;
pub mod linalg;
pub mod slp;
pub mod fiber;
pub mod newton;
pub mod solver;
pub mod duality;
pub mod liouville;
