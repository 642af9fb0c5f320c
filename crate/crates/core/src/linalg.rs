// SPDX-License-Identifier: Apache-2.0

//! Dense complex matrices and the Hermitian functional calculus.
//!
//! Everything here works under the normalized trace `τ = Tr / n`, so the
//! identity has unit L2 norm in every dimension and tolerances can be stated
//! without reference to `n`.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type Complex = Complex64;

/// Relative reconstruction tolerance of the eigensolver.
pub const SPECTRAL_TOL: f64 = 1e-10;
/// Relative tolerance for functional identities such as `sqrt(a)^2 = a`.
pub const FUNC_TOL: f64 = 1e-8;
/// Largest asymmetry, relative to `‖a‖_2`, silently removed by symmetrization.
pub const HERMITIAN_TOL: f64 = 1e-10;
/// Eigenvalues below `PD_FLOOR * eig_max` are treated as non-positive.
pub const PD_FLOOR: f64 = 1e-12;

const MAX_JACOBI_SWEEPS: usize = 80;

/// Square complex matrix stored row-major.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex>,
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{}) [", self.dim, self.dim)?;
        for i in 0..self.dim {
            write!(f, "  ")?;
            for j in 0..self.dim {
                let z = self[(i, j)];
                write!(f, "{:+.6e}{:+.6e}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl std::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex;

    fn index(&self, (i, j): (usize, usize)) -> &Complex {
        &self.data[i * self.dim + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex {
        &mut self.data[i * self.dim + j]
    }
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![Complex::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(f(i, j));
            }
        }
        Self { dim, data }
    }

    /// Builds a matrix from rows, rejecting ragged input and non-finite scalars.
    pub fn from_rows(rows: Vec<Vec<Complex>>) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::Parse("matrix must have at least one row".into()));
        }
        let mut data = Vec::with_capacity(dim * dim);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != dim {
                return Err(Error::RaggedMatrix {
                    rows: dim,
                    row: i,
                    len: row.len(),
                });
            }
            for (j, z) in row.into_iter().enumerate() {
                if !z.re.is_finite() || !z.im.is_finite() {
                    return Err(Error::NonFinite { row: i, col: j });
                }
                data.push(z);
            }
        }
        Ok(Self { dim, data })
    }

    /// Real matrix from row slices. Panics on ragged input; meant for literals.
    pub fn from_real(rows: &[&[f64]]) -> Self {
        let dim = rows.len();
        Self::from_fn(dim, |i, j| {
            assert_eq!(rows[i].len(), dim, "ragged literal");
            Complex::new(rows[i][j], 0.0)
        })
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = Complex::new(d, 0.0);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex] {
        &self.data
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Complex]> {
        self.data.chunks(self.dim.max(1))
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)].conj())
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn trace(&self) -> Complex {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `((1/n) Σ |x_ij|²)^{1/2}`, the L2 norm under the normalized trace.
    pub fn l2_norm(&self) -> f64 {
        if self.dim == 0 {
            return 0.0;
        }
        (self.data.iter().map(|z| z.norm_sqr()).sum::<f64>() / self.dim as f64).sqrt()
    }

    /// Largest singular value.
    pub fn operator_norm(&self) -> Result<f64> {
        let gram = HermitianMatrix::from_trusted(&self.adjoint() * self);
        let spec = spectral_decompose(&gram)?;
        Ok(spec.eigenvalues.last().copied().unwrap_or(0.0).max(0.0).sqrt())
    }

    /// Singular values in ascending order.
    pub fn singular_values(&self) -> Result<Vec<f64>> {
        let gram = HermitianMatrix::from_trusted(&self.adjoint() * self);
        let spec = spectral_decompose(&gram)?;
        Ok(spec.eigenvalues.iter().map(|&l| l.max(0.0).sqrt()).collect())
    }

    /// Inverse by Gaussian elimination with partial pivoting.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.dim;
        let scale = self.max_abs();
        if n == 0 || scale == 0.0 {
            return Err(Error::SingularTransform);
        }
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        let floor = f64::EPSILON * scale * n as f64;
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&r, &s| a[(r, col)].norm().total_cmp(&a[(s, col)].norm()))
                .expect("nonempty pivot range");
            if a[(pivot, col)].norm() <= floor {
                return Err(Error::SingularTransform);
            }
            if pivot != col {
                for j in 0..n {
                    a.data.swap(pivot * n + j, col * n + j);
                    inv.data.swap(pivot * n + j, col * n + j);
                }
            }
            let p = a[(col, col)].inv();
            for j in 0..n {
                a[(col, j)] *= p;
                inv[(col, j)] *= p;
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a[(r, col)];
                if f == Complex::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    let (ac, ic) = (a[(col, j)], inv[(col, j)]);
                    a[(r, j)] -= f * ac;
                    inv[(r, j)] -= f * ic;
                }
            }
        }
        Ok(inv)
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(self * other)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(self - other)
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in product");
        let n = self.dim;
        let mut out = ComplexMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                let row = &rhs.data[k * n..(k + 1) * n];
                let dst = &mut out.data[i * n..(i + 1) * n];
                for (d, b) in dst.iter_mut().zip(row) {
                    *d += a * b;
                }
            }
        }
        out
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in sum");
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in difference");
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

/// The normalized trace `τ = (1/n) Tr` on `n × n` matrices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NormalizedTrace {
    dim: usize,
}

impl NormalizedTrace {
    pub fn new(dim: usize) -> Self {
        assert!(dim > 0, "trace on a zero-dimensional algebra");
        Self { dim }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn check(&self, x: &ComplexMatrix) -> Result<()> {
        if x.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: x.dim(),
            });
        }
        Ok(())
    }

    pub fn apply(&self, x: &ComplexMatrix) -> Result<Complex> {
        self.check(x)?;
        Ok(x.trace() / self.dim as f64)
    }

    /// `τ(x* x)^{1/2}`.
    pub fn l2_norm(&self, x: &ComplexMatrix) -> Result<f64> {
        self.check(x)?;
        Ok(x.l2_norm())
    }

    /// Real part of `τ(x* y)`; for Hermitian pairs this is the full inner product.
    pub fn inner(&self, x: &ComplexMatrix, y: &ComplexMatrix) -> Result<f64> {
        self.check(x)?;
        self.check(y)?;
        let s: f64 = x
            .entries()
            .iter()
            .zip(y.entries())
            .map(|(a, b)| (a.conj() * b).re)
            .sum();
        Ok(s / self.dim as f64)
    }
}

/// A matrix equal to its adjoint.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix(ComplexMatrix);

impl HermitianMatrix {
    /// Symmetrizes `a` to `(a + a*)/2`, failing when the asymmetry exceeds
    /// `HERMITIAN_TOL · ‖a‖_2`.
    pub fn new(a: ComplexMatrix) -> Result<Self> {
        if !a.is_finite() {
            return Err(Error::NonFinite { row: 0, col: 0 });
        }
        let asymmetry = (&a - &a.adjoint()).max_abs();
        let tolerance = HERMITIAN_TOL * a.l2_norm();
        if asymmetry > tolerance {
            return Err(Error::NotHermitian { asymmetry, tolerance });
        }
        Ok(Self::from_trusted(a))
    }

    /// Symmetrizes without checking; for products known to be Hermitian in
    /// exact arithmetic.
    pub(crate) fn from_trusted(a: ComplexMatrix) -> Self {
        let n = a.dim();
        let m = ComplexMatrix::from_fn(n, |i, j| {
            if i == j {
                Complex::new(a[(i, i)].re, 0.0)
            } else {
                (a[(i, j)] + a[(j, i)].conj()) * 0.5
            }
        });
        Self(m)
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        Self(ComplexMatrix::from_diagonal(diag))
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn as_matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.0
    }

    pub fn decompose(&self) -> Result<SpectralDecomposition> {
        spectral_decompose(self)
    }

    /// Matrix exponential; always positive definite.
    pub fn exp(&self) -> Result<PositiveDefiniteMatrix> {
        let spec = self.decompose()?;
        let values = spec.eigenvalues.iter().map(|l| l.exp()).collect();
        PositiveDefiniteMatrix::from_spectrum(spec.eigenvectors, values)
    }
}

/// `a = V · diag(λ) · V*` with `λ` ascending and `V` unitary.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl SpectralDecomposition {
    /// `V · diag(f(λ)) · V*`.
    pub fn reconstruct_with(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let values: Vec<f64> = self.eigenvalues.iter().map(|&l| f(l)).collect();
        assemble(&self.eigenvectors, &values)
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        assemble(&self.eigenvectors, &self.eigenvalues)
    }
}

fn assemble(v: &ComplexMatrix, values: &[f64]) -> ComplexMatrix {
    let n = v.dim();
    let mut out = ComplexMatrix::zeros(n);
    for i in 0..n {
        for j in i..n {
            let mut s = Complex::new(0.0, 0.0);
            for (k, &l) in values.iter().enumerate() {
                s += v[(i, k)] * v[(j, k)].conj() * l;
            }
            out[(i, j)] = s;
            out[(j, i)] = s.conj();
        }
        out[(i, i)].im = 0.0;
    }
    out
}

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
/// rotations; eigenvalues come back ascending.
pub fn spectral_decompose(a: &HermitianMatrix) -> Result<SpectralDecomposition> {
    let n = a.dim();
    let mut m = a.as_matrix().clone();
    let mut v = ComplexMatrix::identity(n);
    let frob = m.entries().iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let negligible = 1e-300_f64.max(frob * 1e-18);

    let mut converged = n <= 1;
    for _sweep in 0..MAX_JACOBI_SWEEPS {
        if converged {
            break;
        }
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[(p, q)];
                let r = apq.norm();
                if r <= negligible {
                    continue;
                }
                let app = m[(p, p)].re;
                let aqq = m[(q, q)].re;
                if r <= f64::EPSILON * 0.5 * (app.abs() * aqq.abs()).sqrt() {
                    continue;
                }
                rotated = true;
                let phase = apq / r;
                let tau = (aqq - app) / (2.0 * r);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let ph_c = phase.conj();
                // m <- m J with J = [[c, s], [-s e^{-iφ}, c e^{-iφ}]]
                for k in 0..n {
                    let mkp = m[(k, p)];
                    let mkq = m[(k, q)];
                    m[(k, p)] = mkp * c - mkq * ph_c * s;
                    m[(k, q)] = mkp * s + mkq * ph_c * c;
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * c - vkq * ph_c * s;
                    v[(k, q)] = vkp * s + vkq * ph_c * c;
                }
                // m <- J* m
                for k in 0..n {
                    let mpk = m[(p, k)];
                    let mqk = m[(q, k)];
                    m[(p, k)] = mpk * c - mqk * phase * s;
                    m[(q, k)] = mpk * s + mqk * phase * c;
                }
                m[(p, q)] = Complex::new(0.0, 0.0);
                m[(q, p)] = Complex::new(0.0, 0.0);
                m[(p, p)].im = 0.0;
                m[(q, q)].im = 0.0;
            }
        }
        if !rotated {
            converged = true;
        }
    }
    if !converged {
        return Err(Error::NonConvergence {
            sweeps: MAX_JACOBI_SWEEPS,
        });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(i, i)].re.total_cmp(&m[(j, j)].re));
    let eigenvalues = order.iter().map(|&i| m[(i, i)].re).collect();
    let eigenvectors = ComplexMatrix::from_fn(n, |i, j| v[(i, order[j])]);
    Ok(SpectralDecomposition {
        eigenvalues,
        eigenvectors,
    })
}

/// Scalar functions available through the functional calculus.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MatrixFunction {
    Log,
    Sqrt,
    InvSqrt,
    Power(f64),
}

impl MatrixFunction {
    fn eval(self, x: f64) -> f64 {
        match self {
            MatrixFunction::Log => x.ln(),
            MatrixFunction::Sqrt => x.sqrt(),
            MatrixFunction::InvSqrt => 1.0 / x.sqrt(),
            MatrixFunction::Power(t) => x.powf(t),
        }
    }
}

/// A Hermitian matrix with strictly positive spectrum, carrying its
/// eigendecomposition so repeated matrix functions are cheap.
#[derive(Debug, Clone, PartialEq)]
pub struct PositiveDefiniteMatrix {
    base: HermitianMatrix,
    spectrum: SpectralDecomposition,
}

impl PositiveDefiniteMatrix {
    pub fn new(base: HermitianMatrix) -> Result<Self> {
        let spectrum = base.decompose()?;
        let eig_min = spectrum.eigenvalues.first().copied().unwrap_or(0.0);
        let eig_max = spectrum.eigenvalues.last().copied().unwrap_or(0.0);
        let floor = PD_FLOOR * eig_max;
        if !(eig_max > 0.0) || eig_min <= floor {
            return Err(Error::NotPositiveDefinite { eig_min, floor });
        }
        Ok(Self { base, spectrum })
    }

    pub fn from_matrix(a: ComplexMatrix) -> Result<Self> {
        Self::new(HermitianMatrix::new(a)?)
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            base: HermitianMatrix(ComplexMatrix::identity(dim)),
            spectrum: SpectralDecomposition {
                eigenvalues: vec![1.0; dim],
                eigenvectors: ComplexMatrix::identity(dim),
            },
        }
    }

    pub fn from_diagonal(diag: &[f64]) -> Result<Self> {
        Self::new(HermitianMatrix::from_real_diagonal(diag))
    }

    /// Builds `V diag(λ) V*` from a unitary `V` and positive `λ`.
    pub(crate) fn from_spectrum(eigenvectors: ComplexMatrix, eigenvalues: Vec<f64>) -> Result<Self> {
        let mut order: Vec<usize> = (0..eigenvalues.len()).collect();
        order.sort_by(|&i, &j| eigenvalues[i].total_cmp(&eigenvalues[j]));
        let values: Vec<f64> = order.iter().map(|&i| eigenvalues[i]).collect();
        let vectors = ComplexMatrix::from_fn(eigenvectors.dim(), |i, j| eigenvectors[(i, order[j])]);
        let eig_min = values.first().copied().unwrap_or(0.0);
        let eig_max = values.last().copied().unwrap_or(0.0);
        let floor = PD_FLOOR * eig_max;
        if !(eig_max > 0.0) || eig_min <= floor || !eig_max.is_finite() {
            return Err(Error::NotPositiveDefinite { eig_min, floor });
        }
        let base = HermitianMatrix(assemble(&vectors, &values));
        Ok(Self {
            base,
            spectrum: SpectralDecomposition {
                eigenvalues: values,
                eigenvectors: vectors,
            },
        })
    }

    pub fn dim(&self) -> usize {
        self.base.dim()
    }

    pub fn as_hermitian(&self) -> &HermitianMatrix {
        &self.base
    }

    pub fn as_matrix(&self) -> &ComplexMatrix {
        self.base.as_matrix()
    }

    pub fn spectrum(&self) -> &SpectralDecomposition {
        &self.spectrum
    }

    pub fn eig_min(&self) -> f64 {
        self.spectrum.eigenvalues[0]
    }

    pub fn eig_max(&self) -> f64 {
        *self.spectrum.eigenvalues.last().expect("nonempty spectrum")
    }

    /// `V · diag(f(λ)) · V*` as a Hermitian matrix.
    pub fn apply(&self, f: MatrixFunction) -> HermitianMatrix {
        HermitianMatrix(self.spectrum.reconstruct_with(|x| f.eval(x)))
    }

    pub fn log(&self) -> HermitianMatrix {
        self.apply(MatrixFunction::Log)
    }

    /// Positive-definite result of a positive scalar function of the spectrum.
    pub fn map_positive(&self, f: MatrixFunction) -> Result<Self> {
        if f == MatrixFunction::Log {
            return Err(Error::ParameterOutOfRange {
                name: "function",
                value: 0.0,
                range: "sqrt, inv_sqrt or power",
            });
        }
        let values = self.spectrum.eigenvalues.iter().map(|&x| f.eval(x)).collect();
        Self::from_spectrum(self.spectrum.eigenvectors.clone(), values)
    }

    pub fn sqrt(&self) -> Self {
        self.map_positive(MatrixFunction::Sqrt)
            .expect("square root of a positive definite matrix")
    }

    pub fn inv_sqrt(&self) -> Self {
        self.map_positive(MatrixFunction::InvSqrt)
            .expect("inverse square root of a positive definite matrix")
    }

    pub fn power(&self, t: f64) -> Result<Self> {
        self.map_positive(MatrixFunction::Power(t))
    }

    pub fn inverse(&self) -> Self {
        self.map_positive(MatrixFunction::Power(-1.0))
            .expect("inverse of a positive definite matrix")
    }

    /// Condition number `eig_max / eig_min`.
    pub fn condition(&self) -> f64 {
        self.eig_max() / self.eig_min()
    }
}

/// Applies a scalar function to a positive definite matrix. `Log` yields a
/// general Hermitian matrix; the other functions stay positive definite.
pub fn matrix_function(a: &PositiveDefiniteMatrix, f: MatrixFunction) -> HermitianMatrix {
    a.apply(f)
}

/// `((1/n) Σ |x_ij|²)^{1/2}` checked against the trace's dimension.
pub fn l2_norm(x: &ComplexMatrix, trace: &NormalizedTrace) -> Result<f64> {
    trace.l2_norm(x)
}

pub fn operator_norm(x: &ComplexMatrix) -> Result<f64> {
    x.operator_norm()
}

/// Cyclic Jacobi for small real symmetric matrices stored row-major.
/// Returns ascending eigenvalues and column eigenvectors.
pub(crate) fn real_symmetric_eigen(a: &[f64], n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut m = a.to_vec();
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let frob = m.iter().map(|x| x * x).sum::<f64>().sqrt();
    let negligible = 1e-300_f64.max(frob * 1e-18);
    for _ in 0..MAX_JACOBI_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[p * n + q];
                if apq.abs() <= negligible {
                    continue;
                }
                let app = m[p * n + p];
                let aqq = m[q * n + q];
                if apq.abs() <= f64::EPSILON * 0.5 * (app.abs() * aqq.abs()).sqrt() {
                    continue;
                }
                rotated = true;
                let tau = (aqq - app) / (2.0 * apq);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (mkp, mkq) = (m[k * n + p], m[k * n + q]);
                    m[k * n + p] = c * mkp - s * mkq;
                    m[k * n + q] = s * mkp + c * mkq;
                    let (vkp, vkq) = (v[k * n + p], v[k * n + q]);
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
                for k in 0..n {
                    let (mpk, mqk) = (m[p * n + k], m[q * n + k]);
                    m[p * n + k] = c * mpk - s * mqk;
                    m[q * n + k] = s * mpk + c * mqk;
                }
                m[p * n + q] = 0.0;
                m[q * n + p] = 0.0;
            }
        }
        if !rotated {
            break;
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[i * n + i].total_cmp(&m[j * n + j]));
    let values = order.iter().map(|&i| m[i * n + i]).collect();
    let mut vectors = vec![0.0; n * n];
    for (col, &src) in order.iter().enumerate() {
        for row in 0..n {
            vectors[row * n + col] = v[row * n + src];
        }
    }
    (values, vectors)
}
