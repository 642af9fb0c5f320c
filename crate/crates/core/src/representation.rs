// SPDX-License-Identifier: Apache-2.0

//! Matrix representations of finite measured groupoids and their
//! unitarization.
//!
//! For a uniformly bounded representation `ρ`, the Gram set at a unit `x` is
//! `B_x = {ρ(g)*ρ(g) : src(g) = x}`. Since `ρ(g)* B_{tgt(g)} ρ(g) = B_{src(g)}`
//! and congruences are isometries, the circumcenters `σ(x)` satisfy
//! `ρ(g)* σ(tgt g) ρ(g) = σ(src g)`, so with `ψ = σ^{1/2}` the conjugate
//! `u(g) = ψ(tgt g) ρ(g) ψ(src g)⁻¹` is unitary.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::circumcenter::{solve, CircumcenterResult, PointSet, SolverOptions};
use crate::error::{Error, Result};
use crate::geometry::{GlcBall, SpdPoint};
use crate::groupoid::{action_arrow_index, ActionGroupoidSpec, FiniteGroup, FiniteMeasuredGroupoid};
use crate::linalg::{Complex, ComplexMatrix, HermitianMatrix, PositiveDefiniteMatrix, FUNC_TOL};
use crate::random::{random_invertible, seeded};

/// Relative tolerance for functoriality at load, scaled by `max(1, C²)`.
pub const REP_TOL: f64 = 1e-9;
/// Gram elements closer than this (in normalized L2) are merged.
pub const DEDUP_TOL: f64 = 1e-9;
/// Safety factor in the unitarity threshold `K (ε + func_tol) C²`.
pub const THRESHOLD_MARGIN: f64 = 10.0;

/// A representation `g ↦ ρ(g)` indexed by arrow.
#[derive(Debug, Clone, PartialEq)]
pub struct Representation {
    groupoid: FiniteMeasuredGroupoid,
    dim: usize,
    matrices: Vec<ComplexMatrix>,
    uniform_bound: f64,
}

impl Representation {
    /// Validated constructor: shapes, finiteness and the representation
    /// identities at [`REP_TOL`].
    pub fn new(groupoid: FiniteMeasuredGroupoid, dim: usize, matrices: Vec<ComplexMatrix>) -> Result<Self> {
        let rep = Self::unchecked(groupoid, dim, matrices)?;
        let tol = REP_TOL * rep.uniform_bound.powi(2).max(1.0);
        if let Some(v) = check_representation(&rep, tol).into_iter().next() {
            return Err(Error::InvalidRepresentation(v.to_string()));
        }
        Ok(rep)
    }

    /// Checks shapes and finiteness only; the identities may fail.
    pub fn unchecked(groupoid: FiniteMeasuredGroupoid, dim: usize, matrices: Vec<ComplexMatrix>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidRepresentation("dimension must be positive".into()));
        }
        if matrices.len() != groupoid.arrow_count() {
            let covered = matrices.len().min(groupoid.arrow_count());
            return Err(match groupoid.arrows().get(covered) {
                Some(a) => Error::MissingArrow(a.id.clone()),
                None => Error::InvalidRepresentation(format!(
                    "{} matrices for {} arrows",
                    matrices.len(),
                    groupoid.arrow_count()
                )),
            });
        }
        for (g, m) in matrices.iter().enumerate() {
            if m.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: m.dim(),
                });
            }
            if !m.is_finite() {
                return Err(Error::InvalidRepresentation(format!(
                    "non-finite entry in arrow {}",
                    groupoid.arrows()[g].id
                )));
            }
        }
        let mut rep = Self {
            groupoid,
            dim,
            matrices,
            uniform_bound: 0.0,
        };
        rep.uniform_bound = compute_uniform_bound(&rep)?;
        Ok(rep)
    }

    /// Builds from a map keyed by arrow id.
    pub fn from_map(
        groupoid: FiniteMeasuredGroupoid,
        dim: usize,
        mut arrows: HashMap<String, ComplexMatrix>,
    ) -> Result<Self> {
        let mut matrices = Vec::with_capacity(groupoid.arrow_count());
        for a in groupoid.arrows() {
            matrices.push(arrows.remove(&a.id).ok_or_else(|| Error::MissingArrow(a.id.clone()))?);
        }
        if let Some(extra) = arrows.keys().min() {
            return Err(Error::InvalidRepresentation(format!("unknown arrow {extra}")));
        }
        Self::new(groupoid, dim, matrices)
    }

    pub fn groupoid(&self) -> &FiniteMeasuredGroupoid {
        &self.groupoid
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrices(&self) -> &[ComplexMatrix] {
        &self.matrices
    }

    pub fn matrix(&self, g: usize) -> &ComplexMatrix {
        &self.matrices[g]
    }

    pub fn uniform_bound(&self) -> f64 {
        self.uniform_bound
    }

    /// `w* ρ w` for a constant matrix `w`.
    pub fn conjugated(&self, w: &ComplexMatrix) -> Result<Self> {
        if w.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: w.dim(),
            });
        }
        let wa = w.adjoint();
        let matrices = self.matrices.iter().map(|m| &(&wa * m) * w).collect();
        Self::unchecked(self.groupoid.clone(), self.dim, matrices)
    }

    /// The representation with one arrow replaced, unvalidated.
    pub fn with_arrow(&self, g: usize, m: ComplexMatrix) -> Result<Self> {
        let mut matrices = self.matrices.clone();
        matrices[g] = m;
        Self::unchecked(self.groupoid.clone(), self.dim, matrices)
    }
}

fn compute_uniform_bound(rep: &Representation) -> Result<f64> {
    let mut bound: f64 = 0.0;
    for g in 0..rep.matrices.len() {
        if rep.groupoid.is_essential(g) {
            bound = bound.max(rep.matrices[g].operator_norm()?);
        }
    }
    if !bound.is_finite() {
        return Err(Error::NotUniformlyBounded);
    }
    Ok(bound)
}

/// `max ‖ρ(g)‖` over arrows between units of positive weight.
pub fn uniform_bound(rep: &Representation) -> f64 {
    rep.uniform_bound
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViolationKind {
    /// `ρ(hg) ≠ ρ(h)ρ(g)`.
    Composition,
    /// `ρ(1_x) ≠ I`.
    Unit,
    /// `ρ(g⁻¹)ρ(g) ≠ I`.
    Inverse,
}

/// One failed identity. `arrows` holds `[h, g, hg]` for a composition,
/// `[g, g⁻¹]` for an inverse and `[1_x]` for a unit.
#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub arrows: Vec<String>,
    pub residual: f64,
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let a = &self.arrows;
        match self.kind {
            ViolationKind::Composition => write!(f, "composition fails at ({}, {}) with product {}", a[0], a[1], a[2])?,
            ViolationKind::Unit => write!(f, "unit arrow {} is not the identity", a[0])?,
            ViolationKind::Inverse => write!(f, "inverse fails at {} against {}", a[0], a[1])?,
        }
        write!(f, " (residual {:e})", self.residual)
    }
}

/// Every identity among positive-weight units whose residual exceeds `tol`.
pub fn check_representation(rep: &Representation, tol: f64) -> Vec<Violation> {
    let g = &rep.groupoid;
    let id = ComplexMatrix::identity(rep.dim);
    let name = |a: usize| g.arrows()[a].id.clone();
    let mut out = Vec::new();
    for x in 0..g.unit_count() {
        if g.is_null(x) {
            continue;
        }
        let e = g.unit_arrow(x);
        let r = (&rep.matrices[e] - &id).l2_norm();
        if r > tol {
            out.push(Violation {
                kind: ViolationKind::Unit,
                arrows: vec![name(e)],
                residual: r,
            });
        }
    }
    for a in 0..g.arrow_count() {
        if !g.is_essential(a) {
            continue;
        }
        let prod = &rep.matrices[g.inverse(a)] * &rep.matrices[a];
        let r = (&prod - &id).l2_norm();
        if r > tol {
            out.push(Violation {
                kind: ViolationKind::Inverse,
                arrows: vec![name(a), name(g.inverse(a))],
                residual: r,
            });
        }
    }
    let checks: Vec<Violation> = g
        .composable_pairs()
        .into_par_iter()
        .filter(|&(h, a, _)| g.is_essential(h) && g.is_essential(a))
        .filter_map(|(h, a, ha)| {
            let prod = &rep.matrices[h] * &rep.matrices[a];
            let r = (&rep.matrices[ha] - &prod).l2_norm();
            (r > tol).then(|| Violation {
                kind: ViolationKind::Composition,
                arrows: vec![name(h), name(a), name(ha)],
                residual: r,
            })
        })
        .collect();
    out.extend(checks);
    out
}

/// The Gram set `B_x = {ρ(g)*ρ(g) : src(g) = x}` with near-duplicates merged,
/// placed in the ball `GL_c` with `c = C²`.
pub fn gram_set(rep: &Representation, x: usize) -> Result<PointSet> {
    let g = &rep.groupoid;
    if x >= g.unit_count() {
        return Err(Error::UnknownUnit(x.to_string()));
    }
    if g.is_null(x) {
        return Err(Error::NullUnit(g.units()[x].clone()));
    }
    let mut kept: Vec<ComplexMatrix> = Vec::new();
    for a in 0..g.arrow_count() {
        if g.src(a) != x || !g.is_essential(a) {
            continue;
        }
        let m = &rep.matrices[a].adjoint() * &rep.matrices[a];
        if kept.iter().all(|k| (k - &m).l2_norm() > DEDUP_TOL) {
            kept.push(m);
        }
    }
    let points = kept
        .into_iter()
        .map(|m| Ok(SpdPoint::new(PositiveDefiniteMatrix::new(HermitianMatrix::new(m)?)?)))
        .collect::<Result<Vec<_>>>()?;
    // C bounds ρ(g⁻¹) = ρ(g)⁻¹ too, so the spectrum lies in [1/C², C²]; the
    // max below only absorbs roundoff in that inverse relation.
    let c = points
        .iter()
        .map(|p| p.value().eig_max().max(1.0 / p.value().eig_min()))
        .fold(rep.uniform_bound.powi(2).max(1.0 + 1e-9), f64::max);
    PointSet::new(points, GlcBall::new(c, rep.dim)?)
}

/// Per-unit data of a similarity to a unitary representation.
#[derive(Debug, Clone)]
pub struct SimilarityWitness {
    /// `ψ(x) = σ(x)^{1/2}`; the identity at null units.
    pub psi: Vec<PositiveDefiniteMatrix>,
    pub sigma: Vec<PositiveDefiniteMatrix>,
    /// Circumcenter solves, absent at null units.
    pub certificates: Vec<Option<CircumcenterResult>>,
}

impl SimilarityWitness {
    /// `ψ` as plain matrices, the form [`verify_similarity`] takes.
    pub fn psi_matrices(&self) -> Vec<ComplexMatrix> {
        self.psi.iter().map(|p| p.as_matrix().clone()).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArrowResidual {
    pub arrow: usize,
    /// `‖u(g)*u(g) - I‖_2`.
    pub unitarity: f64,
    /// `‖ρ(g)* σ(tgt g) ρ(g) - σ(src g)‖_2`.
    pub equivariance: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct UnitarizationReport {
    pub max_unitarity_residual: f64,
    pub max_equivariance_residual: f64,
    pub max_certificate_bound: f64,
    pub uniform_bound: f64,
    /// `K (ε + func_tol) C²`.
    pub threshold: f64,
    pub per_arrow: Vec<ArrowResidual>,
    pub unconverged_units: Vec<usize>,
}

impl UnitarizationReport {
    /// All solves converged and the unitarity residual is within threshold.
    pub fn passed(&self) -> bool {
        self.unconverged_units.is_empty() && self.max_unitarity_residual <= self.threshold
    }

    pub fn ensure_converged(&self, groupoid: &FiniteMeasuredGroupoid) -> Result<()> {
        if self.unconverged_units.is_empty() {
            return Ok(());
        }
        Err(Error::SolverFailure {
            units: self
                .unconverged_units
                .iter()
                .map(|&x| groupoid.units()[x].clone())
                .collect(),
        })
    }
}

#[derive(Debug, Clone)]
pub struct Unitarization {
    pub witness: SimilarityWitness,
    pub unitary: Representation,
    pub report: UnitarizationReport,
}

/// Runs the Gram set, circumcenter and square root pipeline.
///
/// Unconverged solves do not abort: the partial result is returned and the
/// affected units are listed in the report.
pub fn unitarize(rep: &Representation, opts: &SolverOptions) -> Result<Unitarization> {
    if !rep.uniform_bound.is_finite() {
        return Err(Error::NotUniformlyBounded);
    }
    let g = &rep.groupoid;
    let dim = rep.dim;
    let solves: Vec<Option<CircumcenterResult>> = (0..g.unit_count())
        .into_par_iter()
        .map(|x| {
            if g.is_null(x) {
                return Ok(None);
            }
            solve(&gram_set(rep, x)?, opts).map(Some)
        })
        .collect::<Result<_>>()?;

    let mut sigma = Vec::with_capacity(solves.len());
    let mut psi = Vec::with_capacity(solves.len());
    let mut psi_inv = Vec::with_capacity(solves.len());
    for s in &solves {
        let value = match s {
            Some(r) => r.center.value().clone(),
            None => PositiveDefiniteMatrix::identity(dim),
        };
        psi.push(value.sqrt());
        psi_inv.push(value.inv_sqrt());
        sigma.push(value);
    }

    let id = ComplexMatrix::identity(dim);
    let unitary_matrices: Vec<ComplexMatrix> = (0..g.arrow_count())
        .map(|a| &(psi[g.tgt(a)].as_matrix() * &rep.matrices[a]) * psi_inv[g.src(a)].as_matrix())
        .collect();
    let per_arrow: Vec<ArrowResidual> = (0..g.arrow_count())
        .filter(|&a| g.is_essential(a))
        .map(|a| {
            let u = &unitary_matrices[a];
            let unitarity = (&(&u.adjoint() * u) - &id).l2_norm();
            let r = &rep.matrices[a];
            let pulled = &(&r.adjoint() * sigma[g.tgt(a)].as_matrix()) * r;
            let equivariance = (&pulled - sigma[g.src(a)].as_matrix()).l2_norm();
            ArrowResidual {
                arrow: a,
                unitarity,
                equivariance,
            }
        })
        .collect();

    let c2 = rep.uniform_bound.powi(2).max(1.0);
    let report = UnitarizationReport {
        max_unitarity_residual: per_arrow.iter().map(|r| r.unitarity).fold(0.0, f64::max),
        max_equivariance_residual: per_arrow.iter().map(|r| r.equivariance).fold(0.0, f64::max),
        max_certificate_bound: solves
            .iter()
            .flatten()
            .map(|r| r.center_error_bound)
            .fold(0.0, f64::max),
        uniform_bound: rep.uniform_bound,
        threshold: THRESHOLD_MARGIN * (opts.eps + FUNC_TOL) * c2,
        per_arrow,
        unconverged_units: solves
            .iter()
            .enumerate()
            .filter(|(_, s)| s.as_ref().is_some_and(|r| !r.converged))
            .map(|(x, _)| x)
            .collect(),
    };
    Ok(Unitarization {
        witness: SimilarityWitness {
            psi,
            sigma,
            certificates: solves,
        },
        unitary: Representation::unchecked(g.clone(), dim, unitary_matrices)?,
        report,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimilarityCheck {
    pub passed: bool,
    pub max_residual: f64,
    /// `(arrow, ‖ρ₂(g) - h(tgt g) ρ₁(g) h(src g)⁻¹‖_2)` for positive-weight arrows.
    pub per_arrow: Vec<(usize, f64)>,
}

/// Whether `ρ₂(g) = h(tgt g) ρ₁(g) h(src g)⁻¹` within `tol` on every arrow
/// between positive-weight units.
pub fn verify_similarity(
    rho1: &Representation,
    rho2: &Representation,
    h: &[ComplexMatrix],
    tol: f64,
) -> Result<SimilarityCheck> {
    let g = &rho1.groupoid;
    if rho2.groupoid.units() != g.units() || rho2.groupoid.arrows() != g.arrows() || rho2.groupoid.mu() != g.mu() {
        return Err(Error::InvalidRepresentation(
            "representations live on different groupoids".into(),
        ));
    }
    if rho2.dim != rho1.dim {
        return Err(Error::DimensionMismatch {
            expected: rho1.dim,
            found: rho2.dim,
        });
    }
    if h.len() != g.unit_count() {
        return Err(Error::DimensionMismatch {
            expected: g.unit_count(),
            found: h.len(),
        });
    }
    if let Some(m) = h.iter().find(|m| m.dim() != rho1.dim) {
        return Err(Error::DimensionMismatch {
            expected: rho1.dim,
            found: m.dim(),
        });
    }
    let h_inv = h.iter().map(|m| m.inverse()).collect::<Result<Vec<_>>>()?;
    let per_arrow: Vec<(usize, f64)> = (0..g.arrow_count())
        .filter(|&a| g.is_essential(a))
        .map(|a| {
            let conj = &(&h[g.tgt(a)] * &rho1.matrices[a]) * &h_inv[g.src(a)];
            (a, (&rho2.matrices[a] - &conj).l2_norm())
        })
        .collect();
    let max_residual = per_arrow.iter().map(|r| r.1).fold(0.0, f64::max);
    Ok(SimilarityCheck {
        passed: max_residual <= tol,
        max_residual,
        per_arrow,
    })
}

/// A unitary representation of a finite group.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryGroupRep {
    group: FiniteGroup,
    dim: usize,
    matrices: Vec<ComplexMatrix>,
}

impl UnitaryGroupRep {
    /// Checks unitarity and multiplicativity within [`REP_TOL`].
    pub fn new(group: FiniteGroup, matrices: Vec<ComplexMatrix>) -> Result<Self> {
        if matrices.len() != group.order() {
            return Err(Error::InvalidBaseRep(format!(
                "{} matrices for a group of order {}",
                matrices.len(),
                group.order()
            )));
        }
        let dim = matrices[0].dim();
        if dim == 0 || matrices.iter().any(|m| m.dim() != dim || !m.is_finite()) {
            return Err(Error::InvalidBaseRep("matrices must share a positive dimension".into()));
        }
        let id = ComplexMatrix::identity(dim);
        for (a, m) in matrices.iter().enumerate() {
            let r = (&(&m.adjoint() * m) - &id).l2_norm();
            if r > REP_TOL {
                return Err(Error::InvalidBaseRep(format!(
                    "element {} is not unitary (residual {r:e})",
                    group.labels()[a]
                )));
            }
        }
        for a in 0..group.order() {
            for b in 0..group.order() {
                let r = (&matrices[group.mul(a, b)] - &(&matrices[a] * &matrices[b])).l2_norm();
                if r > REP_TOL {
                    return Err(Error::InvalidBaseRep(format!(
                        "not multiplicative at ({}, {}) (residual {r:e})",
                        group.labels()[a],
                        group.labels()[b]
                    )));
                }
            }
        }
        Ok(Self { group, dim, matrices })
    }

    pub fn trivial(group: FiniteGroup, dim: usize) -> Result<Self> {
        let matrices = vec![ComplexMatrix::identity(dim); group.order()];
        Self::new(group, matrices)
    }

    /// Left regular representation on `ℂ^Γ`.
    pub fn regular(group: FiniteGroup) -> Self {
        let n = group.order();
        let matrices = (0..n)
            .map(|a| {
                ComplexMatrix::from_fn(n, |i, j| {
                    if group.mul(a, j) == i {
                        Complex::new(1.0, 0.0)
                    } else {
                        Complex::new(0.0, 0.0)
                    }
                })
            })
            .collect();
        Self::new(group, matrices).expect("regular representation")
    }

    /// One-dimensional character `a ↦ exp(2πi·k·a/n)` of `ℤ/n`.
    pub fn cyclic_character(n: usize, k: usize) -> Self {
        let matrices = (0..n)
            .map(|a| {
                let angle = 2.0 * std::f64::consts::PI * ((k * a) % n) as f64 / n as f64;
                ComplexMatrix::from_fn(1, |_, _| Complex::from_polar(1.0, angle))
            })
            .collect();
        Self::new(FiniteGroup::cyclic(n), matrices).expect("character")
    }

    /// Permutation matrices of a permutation group.
    pub fn permutation(group: FiniteGroup) -> Result<Self> {
        let perms = (0..group.order())
            .map(|a| {
                group
                    .permutation(a)
                    .ok_or_else(|| Error::InvalidBaseRep("group elements are not permutations".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        let k = perms[0].len();
        let matrices = perms
            .iter()
            .map(|p| {
                ComplexMatrix::from_fn(k, |i, j| {
                    if p[j] == i {
                        Complex::new(1.0, 0.0)
                    } else {
                        Complex::new(0.0, 0.0)
                    }
                })
            })
            .collect();
        Self::new(group, matrices)
    }

    /// Block diagonal sum.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.group != other.group {
            return Err(Error::InvalidBaseRep("direct sum of different groups".into()));
        }
        let (p, q) = (self.dim, other.dim);
        let matrices = self
            .matrices
            .iter()
            .zip(&other.matrices)
            .map(|(a, b)| {
                ComplexMatrix::from_fn(p + q, |i, j| match (i < p, j < p) {
                    (true, true) => a[(i, j)],
                    (false, false) => b[(i - p, j - p)],
                    _ => Complex::new(0.0, 0.0),
                })
            })
            .collect();
        Self::new(self.group.clone(), matrices)
    }

    /// `w u(γ) w*` for a unitary `w`.
    pub fn conjugated(&self, w: &ComplexMatrix) -> Result<Self> {
        if w.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: w.dim(),
            });
        }
        let wa = w.adjoint();
        let matrices = self.matrices.iter().map(|m| &(w * m) * &wa).collect();
        Self::new(self.group.clone(), matrices)
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrices(&self) -> &[ComplexMatrix] {
        &self.matrices
    }
}

/// `ρ(γ, x) = h(γ·x) u₀(γ) h(x)⁻¹` on the action groupoid of `spec`.
pub fn twisted_representation(
    spec: &ActionGroupoidSpec,
    base: &UnitaryGroupRep,
    h: &[ComplexMatrix],
) -> Result<Representation> {
    if base.group != spec.group {
        return Err(Error::InvalidBaseRep(
            "base representation is for a different group".into(),
        ));
    }
    if h.len() != spec.units.len() {
        return Err(Error::DimensionMismatch {
            expected: spec.units.len(),
            found: h.len(),
        });
    }
    if let Some(m) = h.iter().find(|m| m.dim() != base.dim) {
        return Err(Error::DimensionMismatch {
            expected: base.dim,
            found: m.dim(),
        });
    }
    let groupoid = spec.build()?;
    let h_inv = h.iter().map(|m| m.inverse()).collect::<Result<Vec<_>>>()?;
    let k = spec.units.len();
    let mut matrices = vec![ComplexMatrix::zeros(base.dim); groupoid.arrow_count()];
    for a in 0..spec.group.order() {
        for x in 0..k {
            let y = spec.act(a, x);
            matrices[action_arrow_index(spec, a, x)] = &(&h[y] * &base.matrices[a]) * &h_inv[x];
        }
    }
    Representation::new(groupoid, base.dim, matrices)
}

/// A seeded instance `ρ(γ, x) = h(γ·x) u₀(γ) h(x)⁻¹` with each `h(x)` of
/// condition number `cond_bound`, so `‖ρ(g)‖ ≤ cond_bound`.
pub fn generate_instance(
    spec: &ActionGroupoidSpec,
    base: &UnitaryGroupRep,
    cond_bound: f64,
    seed: u64,
) -> Result<Representation> {
    if !(cond_bound >= 1.0) || !cond_bound.is_finite() {
        return Err(Error::ParameterOutOfRange {
            name: "cond_bound",
            value: cond_bound,
            range: "[1, inf)",
        });
    }
    let mut rng = seeded(seed);
    let h: Vec<ComplexMatrix> = (0..spec.units.len())
        .map(|_| random_invertible(&mut rng, base.dim, cond_bound))
        .collect();
    twisted_representation(spec, base, &h)
}
