// SPDX-License-Identifier: Apache-2.0

//! Unitarization of uniformly bounded representations of finite measured
//! groupoids.
//!
//! The pipeline takes a representation `ρ` of a finite measured groupoid into
//! invertible `n × n` matrices, forms at each unit `x` the Gram set
//! `B_x = {ρ(g)*ρ(g) : s(g) = x}`, computes the circumcenter `σ(x)` of `B_x`
//! for the affine-invariant metric on positive definite matrices, and
//! conjugates by `ψ(x) = σ(x)^{1/2}`:
//!
//! ```text
//! u(g) = ψ(t(g)) ρ(g) ψ(s(g))⁻¹
//! ```
//!
//! Circumcenters come with an a-posteriori certificate bounding the distance
//! to the exact circumcenter.

// `!(x > 0.0)` style tests are how NaN gets rejected alongside bad values.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod circumcenter;
pub mod error;
pub mod geometry;
pub mod groupoid;
pub mod json;
pub mod linalg;
pub mod random;
pub mod representation;
pub mod selftest;

pub use circumcenter::{
    certify, radius_at, radius_lower_bound, solve, CircumcenterResult, PointSet, SolverOptions, SolverScheme, TraceRow,
};
pub use error::{Error, ErrorKind, Result};
pub use geometry::{congruence, distance, geodesic, in_ball, midpoint, GlcBall, SpdPoint};
pub use groupoid::{build_action_groupoid, ActionGroupoidSpec, Arrow, FiniteGroup, FiniteMeasuredGroupoid, Invariance};
pub use linalg::{
    l2_norm, matrix_function, operator_norm, spectral_decompose, Complex, ComplexMatrix, HermitianMatrix,
    MatrixFunction, NormalizedTrace, PositiveDefiniteMatrix, SpectralDecomposition,
};
pub use representation::{
    check_representation, generate_instance, gram_set, twisted_representation, uniform_bound, unitarize,
    verify_similarity, ArrowResidual, Representation, SimilarityCheck, SimilarityWitness, Unitarization,
    UnitarizationReport, UnitaryGroupRep, Violation, ViolationKind,
};
pub use selftest::{run_selftest, SelftestConfig, SelftestReport};
