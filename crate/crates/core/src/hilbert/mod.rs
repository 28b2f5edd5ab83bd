//! Dense complex linear algebra for the subspace lattice of a finite Hilbert space.
//!
//! Closed subspaces are carried by their orthogonal projectors. All matrix
//! comparisons are absolute Frobenius-norm checks against a [`Tolerance`].

mod lattice;

use std::fmt;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub use lattice::{commutator_norm, DistributivityReport, Lattice, StateClass};

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

/// Absolute comparison threshold for matrix and vector equalities.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Tolerance(f64);

impl Tolerance {
    pub const DEFAULT: Tolerance = Tolerance(1e-9);

    pub fn new(eps: f64) -> Result<Tolerance> {
        if eps > 0.0 && eps < 1e-3 {
            Ok(Tolerance(eps))
        } else {
            Err(Error::InvalidTolerance(eps))
        }
    }

    pub fn eps(self) -> f64 {
        self.0
    }

    /// Threshold used for eigenvalue and rank decisions.
    pub fn spectral(self) -> f64 {
        self.0.sqrt()
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance::DEFAULT
    }
}

pub(crate) fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Rectangular complex matrix with finite entries.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix(CMatrix);

impl ComplexMatrix {
    pub fn new(m: CMatrix) -> Result<ComplexMatrix> {
        if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(ComplexMatrix(m))
    }

    /// Build from row-major rows; every row must have the same length.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<ComplexMatrix> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != ncols) {
            return Err(Error::DimensionMismatch {
                expected: ncols,
                found: bad.len(),
            });
        }
        Self::new(CMatrix::from_fn(nrows, ncols, |i, j| rows[i][j]))
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Result<ComplexMatrix> {
        let rows: Vec<Vec<Complex64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| c(x, 0.0)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    pub fn to_rows(&self) -> Vec<Vec<Complex64>> {
        (0..self.0.nrows())
            .map(|i| (0..self.0.ncols()).map(|j| self.0[(i, j)]).collect())
            .collect()
    }

    pub fn shape(&self) -> (usize, usize) {
        self.0.shape()
    }

    pub fn as_matrix(&self) -> &CMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> CMatrix {
        self.0
    }
}

/// Complex vector. States used for truth evaluation must be unit vectors;
/// basis inputs to [`Lattice::projector_from_basis`] need not be.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector(CVector);

impl StateVector {
    pub fn new(entries: Vec<Complex64>) -> Result<StateVector> {
        if entries
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::NonFinite);
        }
        Ok(StateVector(CVector::from_vec(entries)))
    }

    pub fn from_real(entries: &[f64]) -> StateVector {
        StateVector(CVector::from_iterator(
            entries.len(),
            entries.iter().map(|&x| c(x, 0.0)),
        ))
    }

    pub(crate) fn from_vector(v: CVector) -> StateVector {
        StateVector(v)
    }

    pub fn basis(dim: usize, k: usize) -> StateVector {
        let mut v = CVector::zeros(dim);
        v[k] = c(1.0, 0.0);
        StateVector(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn norm(&self) -> f64 {
        self.0.norm()
    }

    pub fn is_normalized(&self, tol: Tolerance) -> bool {
        (self.norm() - 1.0).abs() <= tol.eps()
    }

    pub fn as_vector(&self) -> &CVector {
        &self.0
    }

    pub fn entries(&self) -> Vec<Complex64> {
        self.0.iter().copied().collect()
    }

    pub fn distance(&self, other: &StateVector) -> f64 {
        (&self.0 - &other.0).norm()
    }

    /// Kronecker product `self ⊗ other`.
    pub fn tensor(&self, other: &StateVector) -> StateVector {
        StateVector(self.0.kronecker(&other.0))
    }

    pub fn scale(&self, z: Complex64) -> StateVector {
        StateVector(&self.0 * z)
    }

    pub fn add(&self, other: &StateVector) -> Result<StateVector> {
        check_dim(self.dim(), other.dim())?;
        Ok(StateVector(&self.0 + &other.0))
    }
}

/// Orthogonal projector: a Hermitian idempotent square matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Projector(CMatrix);

impl Projector {
    /// Validate `m` against the projector invariants at tolerance `tol`.
    pub fn new(m: ComplexMatrix, tol: Tolerance) -> Result<Projector> {
        let m = m.into_matrix();
        let (rows, cols) = m.shape();
        if rows != cols {
            return Err(Error::NotSquare { rows, cols });
        }
        let herm = (&m - m.adjoint()).norm();
        if herm > tol.eps() {
            return Err(Error::NotHermitian { deviation: herm });
        }
        let idem = (&m * &m - &m).norm();
        if idem > tol.eps() {
            return Err(Error::NotIdempotent { deviation: idem });
        }
        Ok(Projector(m))
    }

    /// Wrap a matrix known to be a projector up to rounding; re-symmetrizes it.
    pub(crate) fn from_trusted(m: CMatrix) -> Projector {
        let h = (&m + m.adjoint()) * c(0.5, 0.0);
        Projector(h)
    }

    pub fn zero(dim: usize) -> Projector {
        Projector(CMatrix::zeros(dim, dim))
    }

    pub fn identity(dim: usize) -> Projector {
        Projector(CMatrix::identity(dim, dim))
    }

    /// Rank-one projector `|v><v| / <v|v>`.
    pub fn ray(v: &StateVector) -> Projector {
        let n = v.0.norm_squared();
        Projector(&v.0 * v.0.adjoint() / c(n, 0.0))
    }

    /// Diagonal projector with ones at `diag[k] == true`.
    pub fn diagonal(diag: &[bool]) -> Projector {
        let n = diag.len();
        Projector(CMatrix::from_fn(n, n, |i, j| {
            if i == j && diag[i] {
                c(1.0, 0.0)
            } else {
                c(0.0, 0.0)
            }
        }))
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.0
    }

    pub fn to_complex_matrix(&self) -> ComplexMatrix {
        ComplexMatrix(self.0.clone())
    }

    /// Orthocomplement `I - P`.
    pub fn ortho(&self) -> Projector {
        Projector(CMatrix::identity(self.dim(), self.dim()) - &self.0)
    }

    /// Rank, i.e. the trace rounded to the nearest integer.
    pub fn rank(&self) -> usize {
        self.0.trace().re.round().max(0.0) as usize
    }

    /// Frobenius distance to `other`.
    pub fn distance(&self, other: &Projector) -> f64 {
        (&self.0 - &other.0).norm()
    }

    pub fn approx_eq(&self, other: &Projector, tol: Tolerance) -> bool {
        self.dim() == other.dim() && self.distance(other) <= tol.eps()
    }

    pub fn is_zero(&self, tol: Tolerance) -> bool {
        self.0.norm() <= tol.eps()
    }

    pub fn is_identity(&self, tol: Tolerance) -> bool {
        self.approx_eq(&Projector::identity(self.dim()), tol)
    }

    /// `P ⊗ Q` acting on the tensor product space.
    pub fn tensor(&self, other: &Projector) -> Projector {
        Projector(self.0.kronecker(&other.0))
    }

    pub fn apply(&self, psi: &StateVector) -> Result<StateVector> {
        check_dim(self.dim(), psi.dim())?;
        Ok(StateVector(&self.0 * &psi.0))
    }
}

impl fmt::Display for Projector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.dim() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.dim() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write_complex(f, self.0[(i, j)])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

fn write_complex(f: &mut fmt::Formatter<'_>, z: Complex64) -> fmt::Result {
    let clean = |x: f64| if x.abs() < 1e-12 { 0.0 } else { x };
    let (re, im) = (clean(z.re), clean(z.im));
    if im == 0.0 {
        write!(f, "{}", round6(re))
    } else if re == 0.0 {
        write!(f, "{}i", round6(im))
    } else if im < 0.0 {
        write!(f, "{}-{}i", round6(re), round6(-im))
    } else {
        write!(f, "{}+{}i", round6(re), round6(im))
    }
}

fn round6(x: f64) -> f64 {
    (x * 1e6).round() / 1e6
}

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

/// Spin axis of a Pauli matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X,
    Z,
}

/// Eigenprojectors `(plus, minus)` of the Pauli matrix along `axis`.
pub fn pauli_eigenprojectors(axis: Axis) -> (Projector, Projector) {
    match axis {
        Axis::Z => (
            Projector::diagonal(&[true, false]),
            Projector::diagonal(&[false, true]),
        ),
        Axis::X => {
            let h = c(0.5, 0.0);
            (
                Projector(CMatrix::from_row_slice(2, 2, &[h, h, h, h])),
                Projector(CMatrix::from_row_slice(2, 2, &[h, -h, -h, h])),
            )
        }
    }
}

/// Normalized spin-up / spin-down vectors along `axis`.
pub fn pauli_eigenvectors(axis: Axis) -> (StateVector, StateVector) {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    match axis {
        Axis::Z => (
            StateVector::from_real(&[1.0, 0.0]),
            StateVector::from_real(&[0.0, 1.0]),
        ),
        Axis::X => (
            StateVector::from_real(&[r, r]),
            StateVector::from_real(&[r, -r]),
        ),
    }
}
