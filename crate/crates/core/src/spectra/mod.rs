//! Right/standard spectra through the complex adjoint, invertibility, and
//! left-eigenvalue residuals.

mod eigen;

pub use eigen::{complex_eigenvalues, EigenSolver, SWEEPS_PER_DIM};

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qmat::{complex_embed_vector, complex_unembed_vector, ComplexMatrix, QMatrix, C64};
use crate::quat::Quaternion;

/// Imaginary parts above this count as strictly positive.
pub const IMAG_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport {
    /// One representative per conjugate pair, `Im ≥ 0`.
    pub standard: Vec<C64>,
    /// All `2n` eigenvalues of `Ψ(A)`.
    pub all_adjoint: Vec<C64>,
    pub residual_tol: f64,
}

impl SpectrumReport {
    /// Largest distance between an adjoint eigenvalue and the conjugate of its
    /// greedy partner.
    pub fn pairing_distance(&self) -> f64 {
        let mut pool: Vec<C64> = self.all_adjoint.clone();
        let mut worst: f64 = 0.0;
        while let Some(l) = pool.pop() {
            let target = l.conj();
            let (k, d) = pool
                .iter()
                .enumerate()
                .map(|(k, &z)| (k, (z - target).norm()))
                .min_by(|a, b| a.1.total_cmp(&b.1))
                .unwrap_or((usize::MAX, f64::INFINITY));
            if k == usize::MAX {
                return f64::INFINITY;
            }
            pool.swap_remove(k);
            worst = worst.max(d);
        }
        worst
    }

    /// Standard eigenvalues as quaternions `a + b·i`.
    pub fn standard_quaternions(&self) -> Vec<Quaternion> {
        self.standard.iter().map(|&c| Quaternion::from_complex(c)).collect()
    }
}

fn sort_key(a: &C64, b: &C64) -> std::cmp::Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

/// Splits the adjoint spectrum into `n` standard eigenvalues. Real ones come
/// in pairs and only every other one is kept.
fn select_standard(all: &[C64], n: usize) -> Vec<C64> {
    let mut upper: Vec<C64> = all.iter().copied().filter(|z| z.im > IMAG_TOL).collect();
    let mut real: Vec<C64> = all.iter().copied().filter(|z| z.im.abs() <= IMAG_TOL).collect();
    real.sort_by(sort_key);
    upper.extend(real.iter().step_by(2).map(|z| C64::new(z.re, z.im.abs())));
    if upper.len() != n {
        // ill-separated pairs; fall back to the n largest imaginary parts
        let mut v = all.to_vec();
        v.sort_by(|a, b| b.im.total_cmp(&a.im));
        upper = v.into_iter().take(n).map(|z| C64::new(z.re, z.im.max(0.0))).collect();
    }
    upper.sort_by(sort_key);
    upper
}

pub fn standard_eigenvalues(a: &QMatrix) -> Result<SpectrumReport> {
    standard_eigenvalues_with(&mut EigenSolver::new(), a)
}

pub fn standard_eigenvalues_with(solver: &mut EigenSolver, a: &QMatrix) -> Result<SpectrumReport> {
    let psi = a.complex_adjoint();
    let all = solver.eigenvalues(&psi)?;
    let standard = select_standard(&all, a.n());
    Ok(SpectrumReport { standard, all_adjoint: all, residual_tol: 1e-8 * psi.frobenius_norm().max(1.0) })
}

fn singular_values(m: &ComplexMatrix) -> DVector<f64> {
    m.0.clone().svd(false, false).singular_values
}

pub fn smallest_singular_value(m: &ComplexMatrix) -> f64 {
    singular_values(m).min()
}

pub fn spectral_norm(m: &ComplexMatrix) -> f64 {
    singular_values(m).max()
}

/// `Ψ(A)` nonsingular relative to its Frobenius norm.
pub fn is_invertible(a: &QMatrix) -> bool {
    let psi = a.complex_adjoint();
    let scale = psi.frobenius_norm();
    if scale == 0.0 {
        return false;
    }
    let smallest = match complex_eigenvalues(&psi) {
        Ok(eig) => eig.iter().map(|z| z.norm()).fold(f64::INFINITY, f64::min),
        Err(_) => smallest_singular_value(&psi),
    };
    smallest > 1e-10 * scale
}

/// `σ_min(Ψ(A − λI)) / (‖Ψ(A)‖₂ + |λ|)`; vanishes exactly on left eigenvalues.
pub fn left_eigen_residual(a: &QMatrix, lambda: Quaternion) -> f64 {
    let shifted = a.shift_diagonal(lambda).complex_adjoint();
    let denom = spectral_norm(&a.complex_adjoint()) + lambda.norm();
    let s = smallest_singular_value(&shifted);
    if denom == 0.0 {
        s
    } else {
        s / denom
    }
}

/// Right eigenvector for a complex right eigenvalue `λ`, so that `A·x ≈ x·λ`,
/// by inverse iteration on `Ψ(A) − λI` with one refinement step.
pub fn right_eigenvector(a: &QMatrix, lambda: C64) -> Result<Vec<Quaternion>> {
    let psi = a.complex_adjoint();
    let m = psi.dim();
    let scale = psi.frobenius_norm().max(1.0);
    let shift = lambda + C64::new(1e-10 * scale, 1e-10 * scale);
    let lu = (psi.0 - DMatrix::<C64>::identity(m, m) * shift).lu();
    let mut v = DVector::from_fn(m, |k, _| C64::new(1.0 + 0.1 * k as f64, 0.3 - 0.05 * k as f64));
    for _ in 0..2 {
        let next = lu.solve(&v).ok_or(Error::Singular)?;
        let norm = next.norm();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::Singular);
        }
        v = next / C64::new(norm, 0.0);
    }
    let x = complex_unembed_vector(&v);
    let scale = x.iter().map(|q| q.norm_sqr()).sum::<f64>().sqrt();
    Ok(x.into_iter().map(|q| q / scale).collect())
}

/// `‖A·x − x·λ‖` over the vector.
pub fn right_residual(a: &QMatrix, x: &[Quaternion], lambda: Quaternion) -> Result<f64> {
    let ax = a.mul_vec(x)?;
    Ok(ax.iter().zip(x).map(|(&l, &r)| (l - r * lambda).norm_sqr()).sum::<f64>().sqrt())
}

/// Embedding check used by tests: `ψ(x)` is an eigenvector of `Ψ(A)`.
pub fn adjoint_residual(a: &QMatrix, x: &[Quaternion], lambda: C64) -> f64 {
    let v = complex_embed_vector(x);
    (&a.complex_adjoint().0 * &v - &v * lambda).norm()
}
