use nalgebra::SymmetricEigen;
use serde::{Deserialize, Serialize};

use super::{c, check_dim, CMatrix, CVector, Projector, StateVector, Tolerance};
use crate::error::{Error, Result};

/// Outcome of testing a unit state against a projector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum StateClass {
    /// `P psi = psi`
    True,
    /// `P psi = 0`
    False,
    /// neither: the state is not an eigenvector of `P`
    Indeterminate,
}

#[derive(Debug, Clone)]
pub struct DistributivityReport {
    /// `P ∧ (Q ∨ R)`
    pub lhs: Projector,
    /// `(P ∧ Q) ∨ (P ∧ R)`
    pub rhs: Projector,
    pub distributive: bool,
}

/// Lattice operations on projectors at a fixed tolerance.
#[derive(Debug, Clone, Copy, Default)]
pub struct Lattice {
    tol: Tolerance,
}

impl Lattice {
    pub fn new(tol: Tolerance) -> Lattice {
        Lattice { tol }
    }

    pub fn tolerance(&self) -> Tolerance {
        self.tol
    }

    /// Projector onto the span of `vectors` in dimension `dim`.
    ///
    /// Modified Gram-Schmidt with one re-orthogonalization pass; a vector whose
    /// residual falls below `sqrt(eps)` of its own norm is treated as dependent.
    pub fn projector_from_basis(&self, dim: usize, vectors: &[StateVector]) -> Result<Projector> {
        let mut basis: Vec<CVector> = Vec::new();
        for v in vectors {
            check_dim(dim, v.dim())?;
            let original = v.norm();
            if original == 0.0 {
                continue;
            }
            let mut w = v.as_vector().clone();
            for _ in 0..2 {
                for e in &basis {
                    let coeff = e.dotc(&w);
                    w -= e * coeff;
                }
            }
            let n = w.norm();
            if n > self.tol.spectral() * original {
                basis.push(w / c(n, 0.0));
            }
        }
        let mut m = CMatrix::zeros(dim, dim);
        for e in &basis {
            m += e * e.adjoint();
        }
        Ok(Projector::from_trusted(m))
    }

    pub fn commutes(&self, p: &Projector, q: &Projector) -> Result<bool> {
        check_dim(p.dim(), q.dim())?;
        Ok(commutator_norm(p, q) <= self.tol.eps())
    }

    /// Projector onto `ran P ∩ ran Q`: the eigenspace of `P + Q` at eigenvalue 2.
    pub fn meet(&self, p: &Projector, q: &Projector) -> Result<Projector> {
        check_dim(p.dim(), q.dim())?;
        let n = p.dim();
        let sum = p.matrix() + q.matrix();
        let sum = (&sum + sum.adjoint()) * c(0.5, 0.0);
        let eig = SymmetricEigen::new(sum);
        let mut m = CMatrix::zeros(n, n);
        for (k, lambda) in eig.eigenvalues.iter().enumerate() {
            if (lambda - 2.0).abs() <= self.tol.spectral() {
                let v = eig.eigenvectors.column(k);
                m += v * v.adjoint();
            }
        }
        Ok(Projector::from_trusted(m))
    }

    /// Projector onto the closed span of `ran P ∪ ran Q`.
    pub fn join(&self, p: &Projector, q: &Projector) -> Result<Projector> {
        Ok(self.meet(&p.ortho(), &q.ortho())?.ortho())
    }

    /// Sasaki hook `¬P ∨ (P ∧ Q)`.
    pub fn sasaki_hook(&self, p: &Projector, q: &Projector) -> Result<Projector> {
        self.join(&p.ortho(), &self.meet(p, q)?)
    }

    /// Range inclusion `ran P ⊆ ran Q`.
    pub fn leq(&self, p: &Projector, q: &Projector) -> Result<bool> {
        check_dim(p.dim(), q.dim())?;
        Ok((q.matrix() * p.matrix() - p.matrix()).norm() <= self.tol.eps())
    }

    pub fn distributivity_witness(
        &self,
        p: &Projector,
        q: &Projector,
        r: &Projector,
    ) -> Result<DistributivityReport> {
        check_dim(p.dim(), q.dim())?;
        check_dim(p.dim(), r.dim())?;
        let lhs = self.meet(p, &self.join(q, r)?)?;
        let rhs = self.join(&self.meet(p, q)?, &self.meet(p, r)?)?;
        let distributive = lhs.approx_eq(&rhs, self.tol);
        Ok(DistributivityReport {
            lhs,
            rhs,
            distributive,
        })
    }

    /// Orthomodular law for `P ≤ Q`: `Q = P ∨ (Q ∧ ¬P)`.
    pub fn orthomodular_check(&self, p: &Projector, q: &Projector) -> Result<bool> {
        if !self.leq(p, q)? {
            return Err(Error::Precondition(
                "orthomodular check needs P <= Q".into(),
            ));
        }
        let rebuilt = self.join(p, &self.meet(q, &p.ortho())?)?;
        Ok(q.approx_eq(&rebuilt, self.tol))
    }

    pub fn apply_and_classify(&self, p: &Projector, psi: &StateVector) -> Result<StateClass> {
        check_dim(p.dim(), psi.dim())?;
        if !psi.is_normalized(self.tol) {
            return Err(Error::NotNormalized { norm: psi.norm() });
        }
        let image = p.apply(psi)?;
        if image.distance(psi) <= self.tol.eps() {
            Ok(StateClass::True)
        } else if image.norm() <= self.tol.eps() {
            Ok(StateClass::False)
        } else {
            Ok(StateClass::Indeterminate)
        }
    }

    /// Normalized image `P psi / |P psi|`.
    pub fn collapse(&self, psi: &StateVector, p: &Projector) -> Result<StateVector> {
        let image = p.apply(psi)?;
        let amplitude = image.norm();
        if amplitude <= self.tol.eps() {
            return Err(Error::ZeroAmplitude { amplitude });
        }
        Ok(StateVector::from_vector(
            image.as_vector() / c(amplitude, 0.0),
        ))
    }
}

/// `|PQ - QP|_F`
pub fn commutator_norm(p: &Projector, q: &Projector) -> f64 {
    (p.matrix() * q.matrix() - q.matrix() * p.matrix()).norm()
}
