//! Real quaternions `q = w + x·i + y·j + z·k` with Hamilton multiplication.
//!
//! Multiplication is associative but not commutative, so every product in
//! this crate keeps its factors in the written order.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use nalgebra::Complex;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Default tolerance for [`Quaternion::same_class`].
pub const CLASS_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quaternion {
    pub const ZERO: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Quaternion = Quaternion::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Quaternion = Quaternion::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Quaternion = Quaternion::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 1.0);

    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Quaternion { w, x, y, z }
    }

    pub const fn real(w: f64) -> Self {
        Quaternion::new(w, 0.0, 0.0, 0.0)
    }

    /// Embeds the complex number `a + b·i`.
    pub fn from_complex(c: Complex<f64>) -> Self {
        Quaternion::new(c.re, c.im, 0.0, 0.0)
    }

    /// Builds `c1 + c2·j` from its two complex parts.
    pub fn from_complex_pair(c1: Complex<f64>, c2: Complex<f64>) -> Self {
        Quaternion::new(c1.re, c1.im, c2.re, c2.im)
    }

    /// Splits `q = c1 + c2·j` into `(c1, c2)`, with `c1 = w + x·i` and `c2 = y + z·i`.
    pub fn to_complex_pair(self) -> (Complex<f64>, Complex<f64>) {
        (Complex::new(self.w, self.x), Complex::new(self.y, self.z))
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.w, self.x, self.y, self.z]
    }

    pub fn from_array(a: [f64; 4]) -> Self {
        Quaternion::new(a[0], a[1], a[2], a[3])
    }

    pub fn conj(self) -> Self {
        Quaternion::new(self.w, -self.x, -self.y, -self.z)
    }

    pub fn norm_sqr(self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    /// Modulus `|q|`, computed without intermediate overflow.
    pub fn norm(self) -> f64 {
        self.w.hypot(self.x).hypot(self.y.hypot(self.z))
    }

    pub fn re(self) -> f64 {
        self.w
    }

    /// Vector part `x·i + y·j + z·k`.
    pub fn imag(self) -> Self {
        Quaternion::new(0.0, self.x, self.y, self.z)
    }

    pub fn imag_norm(self) -> f64 {
        self.x.hypot(self.y).hypot(self.z)
    }

    pub fn inverse(self) -> Result<Self> {
        let n2 = self.norm_sqr();
        if n2 == 0.0 {
            return Err(Error::ZeroInverse);
        }
        Ok(self.conj() / n2)
    }

    pub fn scale(self, s: f64) -> Self {
        Quaternion::new(self.w * s, self.x * s, self.y * s, self.z * s)
    }

    pub fn is_zero(self) -> bool {
        self.w == 0.0 && self.x == 0.0 && self.y == 0.0 && self.z == 0.0
    }

    pub fn is_real(self, tol: f64) -> bool {
        self.imag_norm() <= tol
    }

    /// Non-negative integer power by repeated right multiplication.
    pub fn powi(self, k: u32) -> Self {
        (0..k).fold(Quaternion::ONE, |acc, _| acc * self)
    }

    /// Largest componentwise distance.
    pub fn max_abs_diff(self, other: Self) -> f64 {
        let d = self - other;
        d.w.abs().max(d.x.abs()).max(d.y.abs()).max(d.z.abs())
    }

    pub fn approx_eq(self, other: Self, tol: f64) -> bool {
        self.max_abs_diff(other) <= tol
    }

    /// Whether `p` lies in the similarity class `[q] = {ρ⁻¹qρ}`, which is
    /// characterized by equal real parts and equal imaginary moduli.
    pub fn same_class(p: Self, q: Self, tol: f64) -> bool {
        (p.w - q.w).abs() <= tol && (p.imag_norm() - q.imag_norm()).abs() <= tol
    }

    /// Representative `Re(q) + |Im(q)|·i` of the class `[q]`.
    pub fn class_representative(self) -> Complex<f64> {
        Complex::new(self.w, self.imag_norm())
    }
}

impl Add for Quaternion {
    type Output = Quaternion;
    fn add(self, o: Quaternion) -> Quaternion {
        Quaternion::new(self.w + o.w, self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;
    fn sub(self, o: Quaternion) -> Quaternion {
        Quaternion::new(self.w - o.w, self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        Quaternion::new(-self.w, -self.x, -self.y, -self.z)
    }
}

impl Mul for Quaternion {
    type Output = Quaternion;
    fn mul(self, b: Quaternion) -> Quaternion {
        let a = self;
        Quaternion::new(
            a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
            a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
            a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w,
        )
    }
}

impl Mul<f64> for Quaternion {
    type Output = Quaternion;
    fn mul(self, s: f64) -> Quaternion {
        self.scale(s)
    }
}

impl Mul<Quaternion> for f64 {
    type Output = Quaternion;
    fn mul(self, q: Quaternion) -> Quaternion {
        q.scale(self)
    }
}

impl Div<f64> for Quaternion {
    type Output = Quaternion;
    fn div(self, s: f64) -> Quaternion {
        Quaternion::new(self.w / s, self.x / s, self.y / s, self.z / s)
    }
}

impl AddAssign for Quaternion {
    fn add_assign(&mut self, o: Quaternion) {
        *self = *self + o;
    }
}

impl SubAssign for Quaternion {
    fn sub_assign(&mut self, o: Quaternion) {
        *self = *self - o;
    }
}

impl Sum for Quaternion {
    fn sum<I: Iterator<Item = Quaternion>>(iter: I) -> Quaternion {
        iter.fold(Quaternion::ZERO, |a, b| a + b)
    }
}

impl From<f64> for Quaternion {
    fn from(w: f64) -> Self {
        Quaternion::real(w)
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prec = f.precision().unwrap_or(4);
        write!(f, "{:.*}", prec, self.w)?;
        for (v, unit) in [(self.x, "i"), (self.y, "j"), (self.z, "k")] {
            let sign = if v.is_sign_negative() { '-' } else { '+' };
            write!(f, "{sign}{:.*}{unit}", prec, v.abs())?;
        }
        Ok(())
    }
}

impl Serialize for Quaternion {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_array().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Quaternion {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        <[f64; 4]>::deserialize(d).map(Quaternion::from_array)
    }
}
