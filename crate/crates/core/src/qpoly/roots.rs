//! Zeros by class refinement. Every zero lies in the class of a standard
//! eigenvalue `a + bi` of the companion matrix. On that class `z = a + b·u`
//! with `u` a unit pure imaginary, and `zʲ = Aⱼ + Bⱼ·u` with real `Aⱼ, Bⱼ`,
//! so `p(z)` collapses to `c + d·u` (left) or `c + u·d` (right) and a single
//! quaternion division decides the class.

use serde::{Deserialize, Serialize};

use super::{QPolynomial, Side};
use crate::error::Result;
use crate::qmat::C64;
use crate::quat::Quaternion;
use crate::spectra::standard_eigenvalues;

/// Acceptance for `u` being a unit pure imaginary.
pub const UNIT_IMAG_TOL: f64 = 1e-6;
/// Two candidates closer than this are one zero (or one class).
pub const MERGE_TOL: f64 = 1e-6;

/// The whole class `{a + b·u : |u| = 1, Re u = 0}` consists of zeros.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SphericalClass {
    pub re: f64,
    pub imag_norm: f64,
}

impl SphericalClass {
    pub fn modulus(&self) -> f64 {
        self.re.hypot(self.imag_norm)
    }

    pub fn member(&self, u: Quaternion) -> Quaternion {
        let u = u.imag();
        Quaternion::real(self.re) + u.scale(self.imag_norm / u.norm())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RootSet {
    pub isolated: Vec<Quaternion>,
    pub spherical: Vec<SphericalClass>,
    /// Standard eigenvalues whose class holds no zero.
    pub empty_classes: Vec<C64>,
    pub residual_tol: f64,
}

impl RootSet {
    /// Moduli of all isolated zeros and classes, ascending.
    pub fn moduli(&self) -> Vec<f64> {
        let mut v: Vec<f64> = self.isolated.iter().map(|z| z.norm()).chain(self.spherical.iter().map(|s| s.modulus())).collect();
        v.sort_by(f64::total_cmp);
        v
    }
}

/// `(Aⱼ, Bⱼ)` for `j = 0..=m` with `(a + b·u)ʲ = Aⱼ + Bⱼ·u`.
fn class_powers(a: f64, b: f64, m: usize) -> Vec<(f64, f64)> {
    let mut v = Vec::with_capacity(m + 1);
    v.push((1.0, 0.0));
    for j in 0..m {
        let (x, y) = v[j];
        v.push((a * x - b * y, b * x + a * y));
    }
    v
}

fn is_unit_imag(u: Quaternion) -> bool {
    u.re().abs() < UNIT_IMAG_TOL && (u.imag_norm() - 1.0).abs() < UNIT_IMAG_TOL
}

pub fn roots(p: &QPolynomial) -> Result<RootSet> {
    let m = p.degree();
    let coeff_norm: f64 = p.coeffs().iter().map(|q| q.norm()).sum();
    let spectrum = standard_eigenvalues(&p.companion())?;
    let mut set = RootSet { isolated: Vec::new(), spherical: Vec::new(), empty_classes: Vec::new(), residual_tol: 1e-8 };

    for s in spectrum.standard {
        let (a, b) = (s.re, s.im.max(0.0));
        let scale = (1.0 + s.norm()).powi(m as i32);
        let zero_tol = 1e-8 * coeff_norm * scale;
        if b <= 1e-9 * (1.0 + s.norm()) {
            let z = Quaternion::real(a);
            if p.eval(z).norm() <= zero_tol {
                push_isolated(&mut set.isolated, z);
            } else {
                set.empty_classes.push(s);
            }
            continue;
        }
        let pw = class_powers(a, b, m);
        let c: Quaternion = p.coeffs().iter().zip(&pw).map(|(&q, &(x, _))| q.scale(x)).sum();
        let d: Quaternion = p.coeffs().iter().zip(&pw).map(|(&q, &(_, y))| q.scale(y)).sum();
        if c.norm() <= zero_tol && d.norm() <= zero_tol {
            push_spherical(&mut set.spherical, SphericalClass { re: a, imag_norm: b });
            continue;
        }
        let Ok(dinv) = d.inverse() else {
            set.empty_classes.push(s);
            continue;
        };
        let u = match p.side() {
            Side::Left => -(dinv * c),
            Side::Right => -(c * dinv),
        };
        if is_unit_imag(u) {
            let u = u.imag() / u.imag_norm();
            push_isolated(&mut set.isolated, Quaternion::real(a) + u.scale(b));
        } else {
            set.empty_classes.push(s);
        }
    }
    set.isolated.retain(|z| !set.spherical.iter().any(|c| Quaternion::same_class(*z, Quaternion::new(c.re, c.imag_norm, 0.0, 0.0), MERGE_TOL)));
    Ok(set)
}

fn push_isolated(v: &mut Vec<Quaternion>, z: Quaternion) {
    if !v.iter().any(|w| (*w - z).norm() < MERGE_TOL) {
        v.push(z);
    }
}

fn push_spherical(v: &mut Vec<SphericalClass>, c: SphericalClass) {
    if !v.iter().any(|w| (w.re - c.re).abs() < MERGE_TOL && (w.imag_norm - c.imag_norm).abs() < MERGE_TOL) {
        v.push(c);
    }
}
