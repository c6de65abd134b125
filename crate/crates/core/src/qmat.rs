//! Dense square quaternionic matrices and their complex adjoint embedding.
//!
//! A quaternionic matrix `A` splits uniquely as `A = A₁ + A₂·j` with complex
//! `A₁`, `A₂`. The complex adjoint
//!
//! ```text
//! Ψ(A) = [  A₁     A₂  ]
//!        [ -conj(A₂)  conj(A₁) ]
//! ```
//!
//! is an injective algebra homomorphism into 2n×2n complex matrices, and it is
//! how inverses and spectra are computed here. Vectors embed the same way:
//! `x = x₁ + x₂·j ↦ [x₁; -conj(x₂)]`.

use std::ops::{Index, IndexMut};

use nalgebra::{Complex, DMatrix, DVector};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{check_holder_p, check_weights, Error, Result};
use crate::quat::Quaternion;

pub type C64 = Complex<f64>;

/// Square complex matrix, used for `Ψ(A)` and spectra.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix(pub DMatrix<C64>);

impl ComplexMatrix {
    pub fn from_row_slice(m: usize, data: &[C64]) -> Self {
        ComplexMatrix(DMatrix::from_row_slice(m, m, data))
    }

    pub fn identity(m: usize) -> Self {
        ComplexMatrix(DMatrix::identity(m, m))
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.0.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs_diff(&self, other: &ComplexMatrix) -> f64 {
        self.0.iter().zip(other.0.iter()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }
}

/// Dense n×n quaternionic matrix stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct QMatrix {
    n: usize,
    data: Vec<Quaternion>,
}

/// Deleted and full absolute row/column sums of one index.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RowStats {
    /// `rᵢ = Σ_{j≠i} |aᵢⱼ|`
    pub row: f64,
    /// `cᵢ = Σ_{j≠i} |aⱼᵢ|`
    pub col: f64,
    /// `rᵢ′ = rᵢ + |aᵢᵢ|`
    pub row_full: f64,
    /// `cᵢ′ = cᵢ + |aᵢᵢ|`
    pub col_full: f64,
}

impl QMatrix {
    pub fn new(n: usize, data: Vec<Quaternion>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Shape("dimension must be at least 1".into()));
        }
        if data.len() != n * n {
            return Err(Error::Shape(format!("{} entries for a {n}x{n} matrix", data.len())));
        }
        Ok(QMatrix { n, data })
    }

    pub fn from_rows(rows: Vec<Vec<Quaternion>>) -> Result<Self> {
        let n = rows.len();
        if let Some(bad) = rows.iter().position(|r| r.len() != n) {
            return Err(Error::Shape(format!("row {bad} has {} entries, expected {n}", rows[bad].len())));
        }
        QMatrix::new(n, rows.into_iter().flatten().collect())
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Quaternion) -> Self {
        assert!(n > 0, "dimension must be at least 1");
        let data = (0..n * n).map(|k| f(k / n, k % n)).collect();
        QMatrix { n, data }
    }

    pub fn zeros(n: usize) -> Self {
        QMatrix::from_fn(n, |_, _| Quaternion::ZERO)
    }

    pub fn identity(n: usize) -> Self {
        QMatrix::from_fn(n, |i, j| if i == j { Quaternion::ONE } else { Quaternion::ZERO })
    }

    /// Real diagonal matrix.
    pub fn diag(d: &[f64]) -> Self {
        QMatrix::from_fn(d.len(), |i, j| if i == j { Quaternion::real(d[i]) } else { Quaternion::ZERO })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn row(&self, i: usize) -> &[Quaternion] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Quaternion]> {
        self.data.chunks(self.n)
    }

    pub fn diagonal(&self) -> Vec<Quaternion> {
        (0..self.n).map(|i| self[(i, i)]).collect()
    }

    pub fn entries(&self) -> &[Quaternion] {
        &self.data
    }

    pub fn map(&self, f: impl Fn(Quaternion) -> Quaternion) -> Self {
        QMatrix { n: self.n, data: self.data.iter().map(|&q| f(q)).collect() }
    }

    pub fn transpose(&self) -> Self {
        QMatrix::from_fn(self.n, |i, j| self[(j, i)])
    }

    /// Entrywise conjugate `Ā`.
    pub fn conj(&self) -> Self {
        self.map(Quaternion::conj)
    }

    /// `Aᴴ = (Ā)ᵀ`.
    pub fn conj_transpose(&self) -> Self {
        QMatrix::from_fn(self.n, |i, j| self[(j, i)].conj())
    }

    fn check_dim(&self, other: &QMatrix) -> Result<()> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { left: self.n, right: other.n })
        }
    }

    pub fn add(&self, other: &QMatrix) -> Result<Self> {
        self.check_dim(other)?;
        Ok(QMatrix { n: self.n, data: self.data.iter().zip(&other.data).map(|(&a, &b)| a + b).collect() })
    }

    pub fn sub(&self, other: &QMatrix) -> Result<Self> {
        self.check_dim(other)?;
        Ok(QMatrix { n: self.n, data: self.data.iter().zip(&other.data).map(|(&a, &b)| a - b).collect() })
    }

    /// `A - λI` for a quaternion `λ` placed on the diagonal.
    pub fn shift_diagonal(&self, lambda: Quaternion) -> Self {
        let mut out = self.clone();
        for i in 0..self.n {
            out[(i, i)] -= lambda;
        }
        out
    }

    /// `(AB)ᵢⱼ = Σₖ aᵢₖ·bₖⱼ`, accumulated in increasing `k`.
    pub fn matmul(&self, other: &QMatrix) -> Result<Self> {
        self.check_dim(other)?;
        let n = self.n;
        Ok(QMatrix::from_fn(n, |i, j| (0..n).map(|k| self[(i, k)] * other[(k, j)]).sum()))
    }

    /// `A·x` for a column vector.
    pub fn mul_vec(&self, x: &[Quaternion]) -> Result<Vec<Quaternion>> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch { left: self.n, right: x.len() });
        }
        Ok(self.rows().map(|r| r.iter().zip(x).map(|(&a, &b)| a * b).sum()).collect())
    }

    pub fn max_abs_diff(&self, other: &QMatrix) -> f64 {
        self.data.iter().zip(&other.data).map(|(&a, &b)| a.max_abs_diff(b)).fold(0.0, f64::max)
    }

    /// Largest modulus distance between corresponding entries.
    pub fn max_entry_distance(&self, other: &QMatrix) -> f64 {
        self.data.iter().zip(&other.data).map(|(&a, &b)| (a - b).norm()).fold(0.0, f64::max)
    }

    pub fn max_entry_norm(&self) -> f64 {
        self.data.iter().map(|q| q.norm()).fold(0.0, f64::max)
    }

    /// First diagonal entry whose imaginary part exceeds `tol`.
    pub fn non_real_diagonal(&self, tol: f64) -> Option<usize> {
        (0..self.n).find(|&i| !self[(i, i)].is_real(tol))
    }

    /// Complex adjoint `Ψ(A)`.
    pub fn complex_adjoint(&self) -> ComplexMatrix {
        let n = self.n;
        let mut m = DMatrix::<C64>::zeros(2 * n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                let (a1, a2) = self[(i, j)].to_complex_pair();
                m[(i, j)] = a1;
                m[(i, j + n)] = a2;
                m[(i + n, j)] = -a2.conj();
                m[(i + n, j + n)] = a1.conj();
            }
        }
        ComplexMatrix(m)
    }

    /// Recovers `A` from the top block row of a complex adjoint.
    pub fn from_complex_adjoint(m: &ComplexMatrix) -> Result<Self> {
        let dim = m.dim();
        if dim == 0 || dim % 2 != 0 {
            return Err(Error::Shape(format!("complex adjoint must have even positive dimension, got {dim}")));
        }
        let n = dim / 2;
        Ok(QMatrix::from_fn(n, |i, j| Quaternion::from_complex_pair(m.0[(i, j)], m.0[(i, j + n)])))
    }

    /// Deleted row sum `rᵢ`.
    pub fn row_sum(&self, i: usize) -> f64 {
        (0..self.n).filter(|&j| j != i).map(|j| self[(i, j)].norm()).sum()
    }

    /// Deleted column sum `cᵢ`.
    pub fn col_sum(&self, i: usize) -> f64 {
        (0..self.n).filter(|&j| j != i).map(|j| self[(j, i)].norm()).sum()
    }

    pub fn row_stats(&self, i: usize) -> RowStats {
        let d = self[(i, i)].norm();
        let (row, col) = (self.row_sum(i), self.col_sum(i));
        RowStats { row, col, row_full: row + d, col_full: col + d }
    }

    /// Hölder deleted row norm `nᵢ⁽ᵖ⁾ = (Σ_{j≠i} |aᵢⱼ|ᵖ)^{1/p}`.
    pub fn holder_norm(&self, i: usize, p: f64) -> Result<f64> {
        check_holder_p(p)?;
        let s: f64 = (0..self.n).filter(|&j| j != i).map(|j| self[(i, j)].norm().powf(p)).sum();
        Ok(s.powf(1.0 / p))
    }

    /// `W⁻¹AW` for `W = diag(w)`: entry `(i, j)` becomes `aᵢⱼ·wⱼ/wᵢ`.
    pub fn scale_similarity(&self, w: &[f64]) -> Result<Self> {
        check_weights(w, self.n)?;
        Ok(QMatrix::from_fn(self.n, |i, j| self[(i, j)].scale(w[j] / w[i])))
    }

    /// Inverse through `Ψ(A)⁻¹ = Ψ(A⁻¹)`.
    pub fn inverse(&self) -> Result<Self> {
        if !crate::spectra::is_invertible(self) {
            return Err(Error::Singular);
        }
        let inv = self.complex_adjoint().0.try_inverse().ok_or(Error::Singular)?;
        QMatrix::from_complex_adjoint(&ComplexMatrix(inv))
    }

    /// `Aᵗ` for a nonzero integer `t`. Exponents of 8 and above use binary
    /// exponentiation, smaller ones repeated right multiplication.
    pub fn power(&self, t: i32) -> Result<Self> {
        if t == 0 {
            return Err(Error::InvalidParameter("matrix power exponent must be nonzero".into()));
        }
        let base = if t < 0 { self.inverse()? } else { self.clone() };
        let e = t.unsigned_abs();
        if e < 8 {
            let mut acc = base.clone();
            for _ in 1..e {
                acc = acc.matmul(&base)?;
            }
            return Ok(acc);
        }
        let mut result: Option<QMatrix> = None;
        let mut sq = base;
        let mut k = e;
        loop {
            if k & 1 == 1 {
                result = Some(match result {
                    None => sq.clone(),
                    Some(r) => r.matmul(&sq)?,
                });
            }
            k >>= 1;
            if k == 0 {
                break;
            }
            sq = sq.matmul(&sq)?;
        }
        Ok(result.expect("exponent is nonzero"))
    }
}

impl Index<(usize, usize)> for QMatrix {
    type Output = Quaternion;
    fn index(&self, (i, j): (usize, usize)) -> &Quaternion {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Quaternion {
        &mut self.data[i * self.n + j]
    }
}

/// `ψ(x) = [x₁; -conj(x₂)]` for `x = x₁ + x₂·j`.
pub fn complex_embed_vector(x: &[Quaternion]) -> DVector<C64> {
    let n = x.len();
    DVector::from_fn(2 * n, |k, _| {
        if k < n {
            x[k].to_complex_pair().0
        } else {
            -x[k - n].to_complex_pair().1.conj()
        }
    })
}

/// Inverse of [`complex_embed_vector`].
pub fn complex_unembed_vector(v: &DVector<C64>) -> Vec<Quaternion> {
    let n = v.len() / 2;
    (0..n).map(|k| Quaternion::from_complex_pair(v[k], -v[k + n].conj())).collect()
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    n: usize,
    entries: Vec<Vec<Quaternion>>,
}

impl Serialize for QMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixJson { n: self.n, entries: self.rows().map(<[Quaternion]>::to_vec).collect() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for QMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = MatrixJson::deserialize(d)?;
        if raw.entries.len() != raw.n {
            return Err(serde::de::Error::custom(format!("n = {} but {} rows given", raw.n, raw.entries.len())));
        }
        QMatrix::from_rows(raw.entries).map_err(serde::de::Error::custom)
    }
}
