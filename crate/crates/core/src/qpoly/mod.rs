//! One-sided simple monic quaternionic polynomials
//! `p_l(z) = Σ qⱼ zʲ` (left coefficients) and `p_r(z) = Σ zʲ qⱼ` (right
//! coefficients), their companion matrices, zeros and zero bounds.

mod bounds;
mod powers;
mod roots;

pub use bounds::{opfer_comparison, zero_bounds, BoundMethod, BoundReport, OpferComparison, PcVariant, PowerVariant};
pub use powers::{companion_square, companion_power_structured};
pub use roots::{roots, RootSet, SphericalClass};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qmat::QMatrix;
use crate::quat::Quaternion;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PolyJson", into = "PolyJson")]
pub struct QPolynomial {
    side: Side,
    coeffs: Vec<Quaternion>,
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    side: Side,
    coeffs: Vec<Quaternion>,
}

impl TryFrom<PolyJson> for QPolynomial {
    type Error = Error;
    fn try_from(p: PolyJson) -> Result<Self> {
        QPolynomial::new(p.side, p.coeffs)
    }
}

impl From<QPolynomial> for PolyJson {
    fn from(p: QPolynomial) -> Self {
        PolyJson { side: p.side, coeffs: p.coeffs }
    }
}

impl QPolynomial {
    /// `coeffs` lists `q₀..q_m`; `q_m` must be exactly 1.
    pub fn new(side: Side, coeffs: Vec<Quaternion>) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(Error::Shape("polynomial degree must be at least 1".into()));
        }
        if coeffs.last() != Some(&Quaternion::ONE) {
            return Err(Error::NotMonic);
        }
        Ok(QPolynomial { side, coeffs })
    }

    /// Monic polynomial from its lower coefficients `q₀..q_{m−1}`.
    pub fn monic(side: Side, lower: &[Quaternion]) -> Result<Self> {
        let mut c = lower.to_vec();
        c.push(Quaternion::ONE);
        QPolynomial::new(side, c)
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `q₀..q_m`.
    pub fn coeffs(&self) -> &[Quaternion] {
        &self.coeffs
    }

    /// `qⱼ`, zero outside `0..=m`.
    pub fn coeff(&self, j: isize) -> Quaternion {
        if j < 0 {
            return Quaternion::ZERO;
        }
        self.coeffs.get(j as usize).copied().unwrap_or(Quaternion::ZERO)
    }

    pub fn eval(&self, z: Quaternion) -> Quaternion {
        let mut zj = Quaternion::ONE;
        let mut acc = Quaternion::ZERO;
        for (j, &q) in self.coeffs.iter().enumerate() {
            if j > 0 {
                zj = zj * z;
            }
            acc += match self.side {
                Side::Left => q * zj,
                Side::Right => zj * q,
            };
        }
        acc
    }

    /// Left: ones on the superdiagonal, last row `(−q₀, …, −q_{m−1})`.
    /// Right: the transpose of that.
    pub fn companion(&self) -> QMatrix {
        let m = self.degree();
        let left = QMatrix::from_fn(m, |i, j| {
            if i == m - 1 {
                -self.coeffs[j]
            } else if j == i + 1 {
                Quaternion::ONE
            } else {
                Quaternion::ZERO
            }
        });
        match self.side {
            Side::Left => left,
            Side::Right => left.transpose(),
        }
    }

    /// Monic reversal, whose zeros are the reciprocals of these zeros:
    /// left `q₀⁻¹q_{m−k}`, right `q_{m−k}q₀⁻¹`.
    pub fn reversal(&self) -> Result<Self> {
        let q0 = self.coeffs[0];
        if q0.is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let inv = q0.inverse()?;
        let m = self.degree();
        let mut c = Vec::with_capacity(m + 1);
        c.push(inv);
        for k in 1..m {
            c.push(match self.side {
                Side::Left => inv * self.coeffs[m - k],
                Side::Right => self.coeffs[m - k] * inv,
            });
        }
        c.push(Quaternion::ONE);
        Ok(QPolynomial { side: self.side, coeffs: c })
    }

    /// Conjugated coefficients on the opposite side; its zeros are the
    /// conjugates of these zeros.
    pub fn tilde(&self) -> Self {
        QPolynomial { side: self.side.flip(), coeffs: self.coeffs.iter().map(|q| q.conj()).collect() }
    }

    /// `Σ_{j<m} |qⱼ|`.
    pub fn lower_norm_sum(&self) -> f64 {
        self.coeffs[..self.degree()].iter().map(|q| q.norm()).sum()
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::{QPolynomial, Side};
    use crate::quat::Quaternion;

    const I: Quaternion = Quaternion::I;
    const J: Quaternion = Quaternion::J;
    const K: Quaternion = Quaternion::K;

    fn q(w: f64, x: f64, y: f64, z: f64) -> Quaternion {
        Quaternion::new(w, x, y, z)
    }

    /// `z² + jz + 2`
    pub fn small(side: Side) -> QPolynomial {
        QPolynomial::monic(side, &[Quaternion::real(2.0), J]).unwrap()
    }

    /// `z³ − kz² + (k − j)z + (i + j)`
    pub fn cubic(side: Side) -> QPolynomial {
        QPolynomial::monic(side, &[I + J, K - J, -K]).unwrap()
    }

    /// Degree six with two spherical zero classes.
    pub fn sextic(side: Side) -> QPolynomial {
        let lower = [
            q(-12.0, 0.0, 6.0, 0.0),
            q(0.0, 6.0, 0.0, 18.0),
            q(-4.0, 0.0, 5.0, 0.0),
            q(0.0, 5.0, 0.0, 15.0),
            q(3.0, 0.0, 1.0, 0.0),
            q(0.0, 1.0, 0.0, 3.0),
        ];
        QPolynomial::monic(side, &lower).unwrap()
    }
}
