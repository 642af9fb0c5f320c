// SPDX-License-Identifier: Apache-2.0

//! Certified circumcenters of finite sets of positive definite matrices.
//!
//! For a candidate `θ` and any lower bound `ℓ ≤ r(B)` on the circumradius, the
//! semi-parallelogram inequality gives
//!
//! ```text
//! d(θ, σ)² ≤ 2 (r(θ, B)² - ℓ²)
//! ```
//!
//! where `σ` is the true circumcenter. Two lower bounds are combined:
//! half the diameter of `B`, and the Euclidean circumradius of `log_θ(B)`
//! (valid because the logarithm map of a Hadamard space is 1-Lipschitz, and
//! exact when `θ = σ`).

mod ball;

use std::fmt;

use crate::error::{Error, Result};
use crate::geometry::{distance, geodesic, in_ball, GlcBall, SpdPoint};
use crate::linalg::{ComplexMatrix, HermitianMatrix, NormalizedTrace};

use ball::{enclosing_ball_dual, DualBall};

/// Absolute slack in containment checks against a reported ball.
pub const CERT_TOL: f64 = 1e-9;
/// Relative slack for input points against their `GL_c` ball.
pub const POINT_SLACK: f64 = 1e-9;
/// Relative slack allowed for iterates and the returned center.
pub const CENTER_SLACK: f64 = 1e-6;
pub const DEFAULT_MAX_ITER: usize = 100_000;

/// Consecutive iterations without a better certificate before giving up.
const STALL_WINDOW: usize = 25;
/// Multiplier on the observed disagreement between two evaluations of each
/// distance when estimating their rounding error.
const ROUNDING_SAFETY: f64 = 4.0;
/// Relative spread below which distances count as tied.
const TIE_TOL: f64 = 1e-12;

/// A nonempty finite set of points inside a common `GL_c` ball.
#[derive(Debug, Clone)]
pub struct PointSet {
    points: Vec<SpdPoint>,
    ball: GlcBall,
}

impl PointSet {
    pub fn new(points: Vec<SpdPoint>, ball: GlcBall) -> Result<Self> {
        let first = points.first().ok_or(Error::EmptySet)?;
        let dim = first.dim();
        if ball.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: ball.dim(),
            });
        }
        for p in &points {
            if p.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: p.dim(),
                });
            }
            if !in_ball(p, &ball, POINT_SLACK) {
                return Err(Error::NumericalEscape {
                    c: ball.c(),
                    eig_min: p.value().eig_min(),
                    eig_max: p.value().eig_max(),
                });
            }
        }
        Ok(Self { points, ball })
    }

    /// Wraps `points` in the smallest `GL_c` ball containing them.
    pub fn enclosing(points: Vec<SpdPoint>) -> Result<Self> {
        let first = points.first().ok_or(Error::EmptySet)?;
        let c = points
            .iter()
            .map(|p| p.value().eig_max().max(1.0 / p.value().eig_min()))
            .fold(1.0 + 1e-9, f64::max);
        let ball = GlcBall::new(c, first.dim())?;
        Self::new(points, ball)
    }

    pub fn points(&self) -> &[SpdPoint] {
        &self.points
    }

    pub fn ball(&self) -> GlcBall {
        self.ball
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.points[0].dim()
    }

    fn check_point(&self, theta: &SpdPoint) -> Result<()> {
        if theta.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: theta.dim(),
            });
        }
        Ok(())
    }
}

fn farthest(dists: impl IntoIterator<Item = f64>) -> (f64, usize) {
    let dists: Vec<f64> = dists.into_iter().collect();
    let max = dists.iter().copied().fold(0.0, f64::max);
    let cut = max - TIE_TOL * (1.0 + max);
    let index = dists.iter().position(|&d| d >= cut).unwrap_or(0);
    (max, index)
}

/// `max_{b ∈ B} d(θ, b)` and the smallest index attaining it.
pub fn radius_at(theta: &SpdPoint, set: &PointSet) -> Result<(f64, usize)> {
    set.check_point(theta)?;
    let dists = set
        .points
        .iter()
        .map(|b| distance(theta, b))
        .collect::<Result<Vec<_>>>()?;
    Ok(farthest(dists))
}

/// Half the diameter of `B`, a lower bound on its circumradius in any metric
/// space.
pub fn radius_lower_bound(set: &PointSet) -> Result<f64> {
    let mut diam: f64 = 0.0;
    for (i, a) in set.points.iter().enumerate() {
        for b in &set.points[i + 1..] {
            diam = diam.max(distance(a, b)?);
        }
    }
    Ok(diam / 2.0)
}

/// Output of [`certify`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Certificate {
    /// Guaranteed upper bound on `d(candidate, σ)`.
    pub error_bound: f64,
    /// `r(candidate, B)² - ℓ²`.
    pub radius_gap: f64,
    pub radius_at: f64,
    pub lower_bound: f64,
    /// Estimated absolute error of the computed distances; zero until
    /// [`Certificate::with_rounding`] is applied.
    pub rounding: f64,
}

impl Certificate {
    fn from_bounds(radius_at: f64, lower: f64) -> Self {
        let lower_bound = lower.min(radius_at);
        let radius_gap = (radius_at - lower_bound) * (radius_at + lower_bound);
        Self {
            error_bound: (2.0 * radius_gap.max(0.0)).sqrt(),
            radius_gap,
            radius_at,
            lower_bound,
            rounding: 0.0,
        }
    }

    /// Widens the bound for distance errors of size `eta`: the true radius
    /// is at most `r + eta` and the true lower bound at least `ℓ - eta`.
    /// Near the center the gap is second order, so this term dominates once
    /// the iterate is within about `sqrt(eta r)` of it.
    fn with_rounding(mut self, eta: f64) -> Self {
        let upper = self.radius_at + eta;
        let lower = (self.lower_bound - eta).max(0.0);
        self.error_bound = (2.0 * (upper - lower) * (upper + lower)).sqrt();
        self.rounding = eta;
        self
    }
}

/// Whitened logarithms of the set seen from one base point.
struct TangentFrame {
    point: SpdPoint,
    logs: Vec<HermitianMatrix>,
    radius: f64,
    farthest: usize,
    dual: DualBall,
}

impl TangentFrame {
    fn at(point: SpdPoint, set: &PointSet) -> Result<Self> {
        let logs = set
            .points
            .iter()
            .map(|b| point.log_map(b))
            .collect::<Result<Vec<_>>>()?;
        let m = logs.len();
        let trace = NormalizedTrace::new(point.dim());
        let mut gram = vec![0.0; m * m];
        for i in 0..m {
            for j in i..m {
                let v = trace.inner(logs[i].as_matrix(), logs[j].as_matrix())?;
                gram[i * m + j] = v;
                gram[j * m + i] = v;
            }
        }
        let (radius, farthest) = farthest((0..m).map(|i| gram[i * m + i].max(0.0).sqrt()));
        let dual = enclosing_ball_dual(&gram, m);
        Ok(Self {
            point,
            logs,
            radius,
            farthest,
            dual,
        })
    }

    fn certificate(&self, pairwise: f64) -> Certificate {
        Certificate::from_bounds(self.radius, pairwise.max(self.dual.radius_sq.sqrt()))
    }

    /// Estimate of the absolute error in the computed distances, taken from
    /// the disagreement with distances whitened at the other endpoint.
    fn rounding(&self, set: &PointSet) -> Result<f64> {
        let mut worst: f64 = 0.0;
        for (b, log) in set.points.iter().zip(&self.logs) {
            let other = distance(b, &self.point)?;
            worst = worst.max((log.as_matrix().l2_norm() - other).abs());
        }
        let floor = 2.0 * self.point.dim() as f64 * f64::EPSILON * (1.0 + self.radius);
        Ok(ROUNDING_SAFETY * worst + floor)
    }

    fn sound_certificate(&self, pairwise: f64, set: &PointSet) -> Result<Certificate> {
        Ok(self.certificate(pairwise).with_rounding(self.rounding(set)?))
    }

    /// Center of the Euclidean enclosing ball of the logarithms.
    fn step(&self) -> HermitianMatrix {
        let n = self.point.dim();
        let mut acc = ComplexMatrix::zeros(n);
        for (w, &l) in self.logs.iter().zip(&self.dual.weights) {
            if l > 0.0 {
                acc = &acc + &w.as_matrix().scale(l);
            }
        }
        HermitianMatrix::from_trusted(acc)
    }
}

/// Certificate for `candidate` as an approximate circumcenter of `B`.
pub fn certify(candidate: &SpdPoint, set: &PointSet) -> Result<Certificate> {
    set.check_point(candidate)?;
    let pairwise = radius_lower_bound(set)?;
    let frame = TangentFrame::at(candidate.clone(), set)?;
    frame.sound_certificate(pairwise, set)
}

/// Iteration scheme used by [`solve`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolverScheme {
    /// Move to the exponential of the Euclidean circumcenter of the whitened
    /// logarithms, with backtracking so the radius never increases.
    TangentBall,
    /// `x ← γ(x, farthest point, 1/(k+2))`, the geodesic Bădoiu–Clarkson walk.
    FarthestPoint,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions {
    pub eps: f64,
    pub max_iter: usize,
    pub scheme: SolverScheme,
    pub record_trace: bool,
}

impl SolverOptions {
    pub fn new(eps: f64) -> Self {
        Self { eps, ..Self::default() }
    }

    pub fn with_max_iter(mut self, max_iter: usize) -> Self {
        self.max_iter = max_iter;
        self
    }

    pub fn with_scheme(mut self, scheme: SolverScheme) -> Self {
        self.scheme = scheme;
        self
    }

    pub fn with_trace(mut self, record: bool) -> Self {
        self.record_trace = record;
        self
    }
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            eps: 1e-6,
            max_iter: DEFAULT_MAX_ITER,
            scheme: SolverScheme::TangentBall,
            record_trace: false,
        }
    }
}

/// One row of a convergence trace.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceRow {
    pub iteration: usize,
    pub radius_at_iterate: f64,
    pub error_bound: f64,
}

#[derive(Debug, Clone)]
pub struct CircumcenterResult {
    pub center: SpdPoint,
    pub radius_at_center: f64,
    pub radius_lower_bound: f64,
    pub center_error_bound: f64,
    pub iterations: usize,
    pub converged: bool,
    pub trace: Vec<TraceRow>,
}

impl fmt::Display for CircumcenterResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "radius {:.6e} (lower {:.6e}), error bound {:.3e} after {} iterations{}",
            self.radius_at_center,
            self.radius_lower_bound,
            self.center_error_bound,
            self.iterations,
            if self.converged { "" } else { " (not converged)" }
        )
    }
}

struct Best {
    frame: TangentFrame,
    cert: Certificate,
}

impl Best {
    fn offer(slot: &mut Option<Best>, frame: &TangentFrame, cert: Certificate) -> bool {
        let better = match slot {
            None => true,
            Some(b) => {
                cert.error_bound < b.cert.error_bound
                    || (cert.error_bound == b.cert.error_bound && cert.radius_at < b.cert.radius_at)
            }
        };
        if better {
            *slot = Some(Best {
                frame: TangentFrame {
                    point: frame.point.clone(),
                    logs: Vec::new(),
                    radius: frame.radius,
                    farthest: frame.farthest,
                    dual: frame.dual.clone(),
                },
                cert,
            });
        }
        better
    }
}

/// Approximates the circumcenter of `B` until the certificate drops below
/// `eps`, the iteration budget runs out, or progress stalls.
pub fn solve(set: &PointSet, opts: &SolverOptions) -> Result<CircumcenterResult> {
    if !(opts.eps > 0.0) {
        return Err(Error::ParameterOutOfRange {
            name: "eps",
            value: opts.eps,
            range: "(0, inf)",
        });
    }
    if opts.max_iter == 0 {
        return Err(Error::ParameterOutOfRange {
            name: "max_iter",
            value: 0.0,
            range: "[1, inf)",
        });
    }
    let pairwise = radius_lower_bound(set)?;
    let mut frame = TangentFrame::at(set.points[0].clone(), set)?;
    let mut best: Option<Best> = None;
    let mut trace = Vec::new();
    let mut since_improvement = 0;
    let mut iterations = 0;

    for k in 0..opts.max_iter {
        iterations = k + 1;
        let cert = frame.certificate(pairwise);
        if opts.record_trace {
            trace.push(TraceRow {
                iteration: k,
                radius_at_iterate: cert.radius_at,
                error_bound: cert.error_bound,
            });
        }
        if Best::offer(&mut best, &frame, cert) {
            since_improvement = 0;
        } else {
            since_improvement += 1;
        }
        if cert.error_bound <= opts.eps && frame.sound_certificate(pairwise, set)?.error_bound <= opts.eps {
            break;
        }
        if opts.scheme == SolverScheme::TangentBall && since_improvement >= STALL_WINDOW {
            break;
        }
        let next = match opts.scheme {
            SolverScheme::TangentBall => tangent_ball_step(&frame, set)?,
            SolverScheme::FarthestPoint => {
                let t = 1.0 / (k as f64 + 2.0);
                let x = geodesic(&frame.point, &set.points[frame.farthest], t)?;
                if !in_ball(&x, &set.ball, CENTER_SLACK) {
                    return Err(Error::NumericalEscape {
                        c: set.ball.c(),
                        eig_min: x.value().eig_min(),
                        eig_max: x.value().eig_max(),
                    });
                }
                Some(TangentFrame::at(x, set)?)
            }
        };
        match next {
            Some(f) => frame = f,
            None => break,
        }
    }

    let Best { frame, .. } = best.expect("at least one iterate");
    let cert = frame.sound_certificate(pairwise, set)?;
    let converged = cert.error_bound <= opts.eps;
    if !in_ball(&frame.point, &set.ball, CENTER_SLACK) {
        return Err(Error::NumericalEscape {
            c: set.ball.c(),
            eig_min: frame.point.value().eig_min(),
            eig_max: frame.point.value().eig_max(),
        });
    }
    Ok(CircumcenterResult {
        center: frame.point,
        radius_at_center: cert.radius_at,
        radius_lower_bound: cert.lower_bound,
        center_error_bound: cert.error_bound,
        iterations,
        converged,
        trace,
    })
}

/// Backtracking step toward the exponential of the tangent circumcenter.
/// Returns `None` when no step size reduces the radius beyond roundoff.
fn tangent_ball_step(frame: &TangentFrame, set: &PointSet) -> Result<Option<TangentFrame>> {
    let step = frame.step();
    let norm = step.as_matrix().l2_norm();
    if norm <= f64::EPSILON * (1.0 + frame.radius) {
        return Ok(None);
    }
    let allowance = 4.0 * f64::EPSILON * (1.0 + frame.radius);
    let mut scale = 1.0;
    for _ in 0..50 {
        let v = HermitianMatrix::from_trusted(step.as_matrix().scale(scale));
        let x = frame.point.exp_map(&v)?;
        if in_ball(&x, &set.ball, CENTER_SLACK) {
            let next = TangentFrame::at(x, set)?;
            if next.radius <= frame.radius + allowance {
                return Ok(Some(next));
            }
        }
        scale *= 0.5;
    }
    Ok(None)
}
