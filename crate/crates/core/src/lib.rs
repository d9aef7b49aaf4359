//! Exact computations with ℤ₂ⁿ-graded (higher graded) linear algebra.
//!
//! The crate provides truncated ℤ₂ⁿ-Grassmann algebras Λ over ℚ, homogeneous
//! block matrices over Λ with their inverses, Λ-points of Cartesian
//! ℤ₂ⁿ-domains together with polynomial morphisms between them, the
//! canonical action of GL(p|q̲) on ℝ^{p|q̲}, and the dictionary between
//! degree-0 linear maps and linear morphisms.
//!
//! Λ is always truncated at a total-degree cap. The generator ideal is then
//! nilpotent, so Λ is trivially complete for its generator-adic topology and
//! series such as inverses are finite sums.

pub mod action;
pub mod degree;
pub mod error;
pub mod gmatrix;
pub mod grassmann;
pub mod linalg;
pub mod linspace;
pub mod points;
pub mod random;
pub mod series;
pub mod shape;
pub mod text;

pub use action::{
    action_as_morphism, canonical_action, check_action_axioms, matrix_to_point,
    module_action, point_to_matrix, ActionReport, Convention, Witness,
};
pub use degree::{enumerate_degrees, Degree};
pub use error::{Error, ErrorKind, Result};
pub use gmatrix::{gl0_coordinates, gl0_dimension, GMatrix};
pub use grassmann::{int, rat, Algebra, AlgebraMorphism, AlgebraSpec, GElement, Monomial, Rational};
pub use linalg::RatMatrix;
pub use linspace::{
    flat_inverse, flat_iso, is_linear_morphism, manifoldify, sym_basis, sym_mul, vectorify,
    BlockDiagMap, SymElement, SymMonomial,
};
pub use points::{point_map, reconstruct_linear_map, zdr_apply, LambdaPoint};
pub use series::{Morphism, Series};
pub use shape::GradedShape;
