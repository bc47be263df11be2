//! Complex 4×4 linear algebra: Hermitian eigensolver, PSD square root, and
//! the spin-flip (σy⊗σy) operations.
//!
//! Everything is sized for the two-qubit problem, so the eigensolver is a
//! hand-rolled cyclic complex Jacobi iteration rather than a dependency on a
//! general-purpose LAPACK binding. At 4×4 the method converges in a handful
//! of sweeps and delivers near machine-precision spectra.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::states::{DensityMatrix4, PureTwoQubit};
use crate::tol;

pub const C_ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const C_ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Dense complex 4×4 matrix, row-major: `self.0[row][col]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CMatrix4(pub [[Complex64; 4]; 4]);

impl CMatrix4 {
    pub fn zero() -> Self {
        CMatrix4([[C_ZERO; 4]; 4])
    }

    pub fn identity() -> Self {
        let mut m = Self::zero();
        for i in 0..4 {
            m.0[i][i] = C_ONE;
        }
        m
    }

    pub fn from_fn(mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zero();
        for i in 0..4 {
            for j in 0..4 {
                m.0[i][j] = f(i, j);
            }
        }
        m
    }

    /// Real diagonal matrix.
    pub fn diagonal(d: [f64; 4]) -> Self {
        Self::from_fn(|i, j| {
            if i == j {
                Complex64::new(d[i], 0.0)
            } else {
                C_ZERO
            }
        })
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(|i, j| self.0[j][i].conj())
    }

    /// Entrywise complex conjugate.
    pub fn conjugate(&self) -> Self {
        Self::from_fn(|i, j| self.0[i][j].conj())
    }

    pub fn trace(&self) -> Complex64 {
        (0..4).map(|i| self.0[i][i]).sum()
    }

    /// Outer product |v⟩⟨v|.
    pub fn outer(v: &[Complex64; 4]) -> Self {
        Self::from_fn(|i, j| v[i] * v[j].conj())
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Complex64; 4]) -> [Complex64; 4] {
        let mut out = [C_ZERO; 4];
        for i in 0..4 {
            for j in 0..4 {
                out[i] += self.0[i][j] * v[j];
            }
        }
        out
    }

    pub fn frobenius(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Frobenius norm of the strictly off-diagonal part.
    fn off_diagonal_norm(&self) -> f64 {
        let mut acc = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                if i != j {
                    acc += self.0[i][j].norm_sqr();
                }
            }
        }
        acc.sqrt()
    }

    /// max |m[i][j] − conj(m[j][i])| over all entries.
    pub fn hermiticity_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                worst = worst.max((self.0[i][j] - self.0[j][i].conj()).norm());
            }
        }
        worst
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                worst = worst.max((self.0[i][j] - other.0[i][j]).norm());
            }
        }
        worst
    }

    pub fn is_finite(&self) -> bool {
        self.0
            .iter()
            .flatten()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

impl std::ops::Add for CMatrix4 {
    type Output = CMatrix4;
    fn add(self, rhs: CMatrix4) -> CMatrix4 {
        CMatrix4::from_fn(|i, j| self.0[i][j] + rhs.0[i][j])
    }
}

impl std::ops::Sub for CMatrix4 {
    type Output = CMatrix4;
    fn sub(self, rhs: CMatrix4) -> CMatrix4 {
        CMatrix4::from_fn(|i, j| self.0[i][j] - rhs.0[i][j])
    }
}

impl std::ops::Mul for CMatrix4 {
    type Output = CMatrix4;
    fn mul(self, rhs: CMatrix4) -> CMatrix4 {
        let mut out = CMatrix4::zero();
        for i in 0..4 {
            for k in 0..4 {
                let aik = self.0[i][k];
                if aik == C_ZERO {
                    continue;
                }
                for j in 0..4 {
                    out.0[i][j] += aik * rhs.0[k][j];
                }
            }
        }
        out
    }
}

impl std::ops::Mul<f64> for CMatrix4 {
    type Output = CMatrix4;
    fn mul(self, rhs: f64) -> CMatrix4 {
        CMatrix4::from_fn(|i, j| self.0[i][j] * rhs)
    }
}

/// Eigenvalues (descending) with matching orthonormal eigenvectors;
/// `eigenvectors[k]` pairs with `eigenvalues[k]`.
#[derive(Clone, Debug)]
pub struct HermEigenSystem {
    pub eigenvalues: [f64; 4],
    pub eigenvectors: [[Complex64; 4]; 4],
}

impl HermEigenSystem {
    /// Reassemble Σ λk |vk⟩⟨vk| (diagnostic / testing aid).
    pub fn reconstruct(&self) -> CMatrix4 {
        let mut m = CMatrix4::zero();
        for k in 0..4 {
            m = m + CMatrix4::outer(&self.eigenvectors[k]) * self.eigenvalues[k];
        }
        m
    }
}

/// Jacobi rotation in the (p, q) plane that annihilates `a[p][q]`.
///
/// Factors the 2×2 Hermitian block as D M D† with M real symmetric and D a
/// phase, then applies the classical symmetric-Jacobi angle to M. The
/// embedded unitary has columns (c, −s·e^{−iθ}) and (s, c·e^{−iθ}).
fn jacobi_rotation(a: &CMatrix4, p: usize, q: usize) -> CMatrix4 {
    let apq = a.0[p][q];
    let r = apq.norm();
    let phase = apq / r;
    let tau = (a.0[q][q].re - a.0[p][p].re) / (2.0 * r);
    let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let mut g = CMatrix4::identity();
    g.0[p][p] = Complex64::new(c, 0.0);
    g.0[p][q] = Complex64::new(s, 0.0);
    g.0[q][p] = -s * phase.conj();
    g.0[q][q] = c * phase.conj();
    g
}

/// Full eigensystem of a Hermitian 4×4 matrix by cyclic complex Jacobi.
///
/// The input must be Hermitian within [`tol::HERMITICITY_INPUT`]; sweeps are
/// capped at [`tol::JACOBI_MAX_SWEEPS`].
pub fn herm_eigensystem(m: &CMatrix4) -> Result<HermEigenSystem> {
    if !m.is_finite() {
        return Err(Error::NonFiniteInput);
    }
    if m.hermiticity_defect() > tol::HERMITICITY_INPUT {
        return Err(Error::NonHermitianInput);
    }

    let mut a = *m;
    let mut v = CMatrix4::identity();
    let scale = a.frobenius().max(1.0);
    let floor = tol::JACOBI_OFF * scale;
    let mut converged = false;

    for _ in 0..=tol::JACOBI_MAX_SWEEPS {
        if a.off_diagonal_norm() <= floor {
            converged = true;
            break;
        }
        for p in 0..3 {
            for q in (p + 1)..4 {
                // Entries already below a share of the floor cannot keep the
                // off-diagonal norm above it, so skip them (this also avoids a
                // 0/0 phase).
                if a.0[p][q].norm() <= floor / 3.0 {
                    continue;
                }
                let g = jacobi_rotation(&a, p, q);
                a = g.adjoint() * a * g;
                v = v * g;
            }
        }
    }
    if !converged {
        return Err(Error::ConvergenceFailure(tol::JACOBI_MAX_SWEEPS));
    }

    let mut order = [0usize, 1, 2, 3];
    order.sort_by(|&i, &j| a.0[j][j].re.partial_cmp(&a.0[i][i].re).unwrap());

    let mut eigenvalues = [0.0; 4];
    let mut eigenvectors = [[C_ZERO; 4]; 4];
    for (k, &idx) in order.iter().enumerate() {
        eigenvalues[k] = a.0[idx][idx].re;
        for row in 0..4 {
            eigenvectors[k][row] = v.0[row][idx];
        }
    }
    Ok(HermEigenSystem {
        eigenvalues,
        eigenvectors,
    })
}

/// Principal square root of a Hermitian PSD matrix.
///
/// Round-off eigenvalues in (−[`tol::EIG_HARD_NEGATIVE`], 0) clamp to 0;
/// anything lower is a genuinely indefinite input and errors.
pub fn matrix_sqrt_psd(m: &CMatrix4) -> Result<CMatrix4> {
    let eig = herm_eigensystem(m)?;
    let mut out = CMatrix4::zero();
    for k in 0..4 {
        let lam = eig.eigenvalues[k];
        if lam < -tol::EIG_HARD_NEGATIVE {
            return Err(Error::NegativeSpectrum(lam));
        }
        // Eigenvalues inside the clamp band are numerical zeros; keeping
        // them would inject √λ ≈ 1e-8-scale noise into the root.
        if lam > tol::EIG_CLAMP {
            out = out + CMatrix4::outer(&eig.eigenvectors[k]) * lam.sqrt();
        }
    }
    Ok(out)
}

/// σy ⊗ σy in the computational basis |00⟩, |01⟩, |10⟩, |11⟩.
pub fn sigma_yy() -> CMatrix4 {
    let mut m = CMatrix4::zero();
    m.0[0][3] = -C_ONE;
    m.0[1][2] = C_ONE;
    m.0[2][1] = C_ONE;
    m.0[3][0] = -C_ONE;
    m
}

/// Spin flip of a pure state: |ψ̃⟩ = (σy⊗σy)|ψ*⟩, i.e.
/// (a, b, c, d) ↦ (−d̄, c̄, b̄, −ā). Exact involution in floating point.
pub fn spin_flip_pure(psi: &PureTwoQubit) -> PureTwoQubit {
    let [a, b, c, d] = psi.amps;
    PureTwoQubit::from_normalized([-d.conj(), c.conj(), b.conj(), -a.conj()])
}

/// Spin flip of a density matrix: ρ̃ = (σy⊗σy) ρ* (σy⊗σy).
pub fn spin_flip_density(rho: &DensityMatrix4) -> DensityMatrix4 {
    let s = sigma_yy();
    DensityMatrix4::new_unchecked(s * rho.matrix().conjugate() * s)
}
