// SPDX-License-Identifier: Apache-2.0

//! Affine-invariant geometry on positive definite matrices.
//!
//! `d(a, b) = ‖log(a^{-1/2} b a^{-1/2})‖_2` makes the positive cone a
//! Hadamard space; congruences `a ↦ g* a g` act by isometries and geodesics
//! are `γ(t) = a^{1/2} (a^{-1/2} b a^{-1/2})^t a^{1/2}`.

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, HermitianMatrix, NormalizedTrace, PositiveDefiniteMatrix, PD_FLOOR};

/// Relative tolerance for geodesic identities (two nested decompositions).
pub const GEO_TOL: f64 = 1e-7;

/// A point of the positive cone together with the trace defining its metric.
#[derive(Debug, Clone, PartialEq)]
pub struct SpdPoint {
    value: PositiveDefiniteMatrix,
    trace: NormalizedTrace,
}

impl SpdPoint {
    pub fn new(value: PositiveDefiniteMatrix) -> Self {
        let trace = NormalizedTrace::new(value.dim());
        Self { value, trace }
    }

    pub fn from_matrix(m: ComplexMatrix) -> Result<Self> {
        Ok(Self::new(PositiveDefiniteMatrix::from_matrix(m)?))
    }

    pub fn from_diagonal(diag: &[f64]) -> Result<Self> {
        Ok(Self::new(PositiveDefiniteMatrix::from_diagonal(diag)?))
    }

    pub fn identity(dim: usize) -> Self {
        Self::new(PositiveDefiniteMatrix::identity(dim))
    }

    pub fn dim(&self) -> usize {
        self.trace.dim()
    }

    pub fn trace(&self) -> NormalizedTrace {
        self.trace
    }

    pub fn value(&self) -> &PositiveDefiniteMatrix {
        &self.value
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        self.value.as_matrix()
    }

    pub fn into_value(self) -> PositiveDefiniteMatrix {
        self.value
    }

    fn check_compatible(&self, other: &SpdPoint) -> Result<()> {
        if self.trace != other.trace {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(())
    }

    /// `a^{-1/2} b a^{-1/2}`, the representative of `b` in the tangent frame at `a`.
    fn whiten(&self, b: &SpdPoint) -> HermitianMatrix {
        let w = self.value.inv_sqrt();
        let m = &(w.as_matrix() * b.matrix()) * w.as_matrix();
        HermitianMatrix::from_trusted(m)
    }

    /// Logarithm map in whitened coordinates: `log(a^{-1/2} b a^{-1/2})`.
    ///
    /// The plain L2 norm of the result equals `d(a, b)`, and the map is
    /// 1-Lipschitz from the cone into that Euclidean space.
    pub fn log_map(&self, b: &SpdPoint) -> Result<HermitianMatrix> {
        self.check_compatible(b)?;
        let pd = PositiveDefiniteMatrix::new(self.whiten(b))?;
        Ok(pd.log())
    }

    /// Exponential map from whitened coordinates: `a^{1/2} exp(v) a^{1/2}`.
    pub fn exp_map(&self, v: &HermitianMatrix) -> Result<SpdPoint> {
        if v.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: v.dim(),
            });
        }
        let e = v.exp()?;
        let r = self.value.sqrt();
        let m = &(r.as_matrix() * e.as_matrix()) * r.as_matrix();
        Ok(SpdPoint::new(PositiveDefiniteMatrix::new(
            HermitianMatrix::from_trusted(m),
        )?))
    }
}

/// The bounded set `GL_c = {x : 1/c ≤ x ≤ c}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GlcBall {
    c: f64,
    dim: usize,
}

impl GlcBall {
    pub fn new(c: f64, dim: usize) -> Result<Self> {
        if !(c > 1.0) || !c.is_finite() {
            return Err(Error::ParameterOutOfRange {
                name: "c",
                value: c,
                range: "(1, inf)",
            });
        }
        Ok(Self { c, dim })
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
}

pub fn distance(a: &SpdPoint, b: &SpdPoint) -> Result<f64> {
    a.check_compatible(b)?;
    let pd = PositiveDefiniteMatrix::new(a.whiten(b))?;
    let n = pd.dim() as f64;
    let s: f64 = pd.spectrum().eigenvalues.iter().map(|l| l.ln().powi(2)).sum();
    Ok((s / n).sqrt())
}

/// Point at parameter `t` on the geodesic from `a` to `b`.
pub fn geodesic(a: &SpdPoint, b: &SpdPoint, t: f64) -> Result<SpdPoint> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::ParameterOutOfRange {
            name: "t",
            value: t,
            range: "[0, 1]",
        });
    }
    a.check_compatible(b)?;
    if t == 0.0 {
        return Ok(a.clone());
    }
    if t == 1.0 {
        return Ok(b.clone());
    }
    let inner = PositiveDefiniteMatrix::new(a.whiten(b))?.power(t)?;
    let r = a.value.sqrt();
    let m = &(r.as_matrix() * inner.as_matrix()) * r.as_matrix();
    Ok(SpdPoint::new(PositiveDefiniteMatrix::new(
        HermitianMatrix::from_trusted(m),
    )?))
}

pub fn midpoint(a: &SpdPoint, b: &SpdPoint) -> Result<SpdPoint> {
    geodesic(a, b, 0.5)
}

/// The isometry `a ↦ g* a g`.
pub fn congruence(g: &ComplexMatrix, a: &SpdPoint) -> Result<SpdPoint> {
    if g.dim() != a.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: g.dim(),
        });
    }
    let sv = g.singular_values()?;
    let (smin, smax) = (sv[0], sv[sv.len() - 1]);
    if !(smax > 0.0) || smin <= PD_FLOOR * smax {
        return Err(Error::SingularTransform);
    }
    let m = &(&g.adjoint() * a.matrix()) * g;
    Ok(SpdPoint::new(PositiveDefiniteMatrix::new(
        HermitianMatrix::from_trusted(m),
    )?))
}

/// Whether the spectrum of `a` lies in `[1/(c(1+slack)), c(1+slack)]`.
pub fn in_ball(a: &SpdPoint, ball: &GlcBall, slack: f64) -> bool {
    let c = ball.c * (1.0 + slack);
    a.dim() == ball.dim && a.value.eig_min() >= 1.0 / c && a.value.eig_max() <= c
}
