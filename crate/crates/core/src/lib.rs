//! Exact analysis of singular points of affine hypersurfaces and curves: multiplicity,
//! tangent cones, geometric tangents, branches and ordinariness tests.

pub mod arith;
pub mod branches;
pub mod cli;
pub mod cone;
pub mod graded;
pub mod groebner;
pub mod linalg;
pub mod mpoly;
pub mod points;
pub mod subvariety;
