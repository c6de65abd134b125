//! Dense complex eigenvalue solver: balancing, Householder reduction to upper
//! Hessenberg form, then single-shift QR sweeps with Wilkinson shifts and
//! deflation on the trailing subdiagonal.

use crate::error::{Error, Result};
use crate::qmat::{ComplexMatrix, C64};

/// Sweep budget per unit of dimension.
pub const SWEEPS_PER_DIM: usize = 60;

/// Reusable solver; holds the working Hessenberg matrix between calls.
#[derive(Debug, Default)]
pub struct EigenSolver {
    h: Vec<C64>,
    n: usize,
}

fn abs1(c: C64) -> f64 {
    c.re.abs() + c.im.abs()
}

impl EigenSolver {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    fn at(&self, i: usize, j: usize) -> C64 {
        self.h[i * self.n + j]
    }

    #[inline]
    fn at_mut(&mut self, i: usize, j: usize) -> &mut C64 {
        &mut self.h[i * self.n + j]
    }

    /// All eigenvalues of `m`, in deflation order.
    pub fn eigenvalues(&mut self, m: &ComplexMatrix) -> Result<Vec<C64>> {
        let n = m.dim();
        self.n = n;
        self.h.clear();
        self.h.extend((0..n * n).map(|k| m.0[(k / n, k % n)]));
        if n == 0 {
            return Ok(Vec::new());
        }
        if self.h.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::InvalidParameter("matrix has non-finite entries".into()));
        }
        self.balance();
        self.hessenberg();
        self.qr_sweeps()
    }

    fn balance(&mut self) {
        const RADIX: f64 = 2.0;
        let n = self.n;
        loop {
            let mut done = true;
            for i in 0..n {
                let mut c = 0.0;
                let mut r = 0.0;
                for j in (0..n).filter(|&j| j != i) {
                    c += abs1(self.at(j, i));
                    r += abs1(self.at(i, j));
                }
                if c == 0.0 || r == 0.0 {
                    continue;
                }
                let s = c + r;
                let mut f = 1.0;
                let mut g = r / RADIX;
                while c < g {
                    f *= RADIX;
                    c *= RADIX * RADIX;
                }
                g = r * RADIX;
                while c >= g {
                    f /= RADIX;
                    c /= RADIX * RADIX;
                }
                if (c + r) / f < 0.95 * s {
                    done = false;
                    for j in 0..n {
                        *self.at_mut(i, j) /= f;
                        *self.at_mut(j, i) *= f;
                    }
                }
            }
            if done {
                break;
            }
        }
    }

    fn hessenberg(&mut self) {
        let n = self.n;
        let mut v = vec![C64::new(0.0, 0.0); n];
        for k in 0..n.saturating_sub(2) {
            let norm: f64 = (k + 1..n).map(|i| self.at(i, k).norm_sqr()).sum::<f64>().sqrt();
            if norm == 0.0 {
                continue;
            }
            let x0 = self.at(k + 1, k);
            let phase = if x0.norm() == 0.0 { C64::new(1.0, 0.0) } else { x0 / x0.norm() };
            let alpha = -phase * norm;
            for i in k + 1..n {
                v[i] = self.at(i, k);
            }
            v[k + 1] -= alpha;
            let vnorm: f64 = (k + 1..n).map(|i| v[i].norm_sqr()).sum::<f64>().sqrt();
            if vnorm == 0.0 {
                continue;
            }
            for vi in v.iter_mut().skip(k + 1) {
                *vi /= vnorm;
            }
            // H <- (I - 2vv*) H
            for j in k..n {
                let dot: C64 = (k + 1..n).map(|i| v[i].conj() * self.at(i, j)).sum();
                for i in k + 1..n {
                    let d = v[i] * dot * 2.0;
                    *self.at_mut(i, j) -= d;
                }
            }
            // H <- H (I - 2vv*)
            for i in 0..n {
                let dot: C64 = (k + 1..n).map(|j| self.at(i, j) * v[j]).sum();
                for j in k + 1..n {
                    let d = dot * v[j].conj() * 2.0;
                    *self.at_mut(i, j) -= d;
                }
            }
            for i in k + 2..n {
                *self.at_mut(i, k) = C64::new(0.0, 0.0);
            }
        }
    }

    fn wilkinson_shift(&self, hi: usize) -> C64 {
        let a = self.at(hi - 1, hi - 1);
        let b = self.at(hi - 1, hi);
        let c = self.at(hi, hi - 1);
        let d = self.at(hi, hi);
        let half = (a - d) * 0.5;
        let disc = (half * half + b * c).sqrt();
        let mid = (a + d) * 0.5;
        let (m1, m2) = (mid + disc, mid - disc);
        if (m1 - d).norm() <= (m2 - d).norm() {
            m1
        } else {
            m2
        }
    }

    fn qr_sweeps(&mut self) -> Result<Vec<C64>> {
        let n = self.n;
        let cap = SWEEPS_PER_DIM * n;
        let eps = f64::EPSILON;
        let hnorm = self.h.iter().map(|c| c.norm()).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
        let mut eig = vec![C64::new(0.0, 0.0); n];
        let mut hi = n - 1;
        let mut total = 0usize;
        let mut its = 0usize;
        let mut rots: Vec<(C64, C64)> = Vec::with_capacity(n);
        loop {
            if hi == 0 {
                eig[0] = self.at(0, 0);
                break;
            }
            let mut l = hi;
            while l > 0 {
                let mut s = abs1(self.at(l - 1, l - 1)) + abs1(self.at(l, l));
                if s == 0.0 {
                    s = hnorm;
                }
                if abs1(self.at(l, l - 1)) <= eps * s {
                    *self.at_mut(l, l - 1) = C64::new(0.0, 0.0);
                    break;
                }
                l -= 1;
            }
            if l == hi {
                eig[hi] = self.at(hi, hi);
                hi -= 1;
                its = 0;
                continue;
            }
            total += 1;
            its += 1;
            if total > cap {
                return Err(Error::NoConvergence { dim: n, iterations: total });
            }
            let mu = if its % 10 == 0 {
                // exceptional shift to break cycles
                let sub = abs1(self.at(hi, hi - 1)) + if hi >= 2 { abs1(self.at(hi - 1, hi - 2)) } else { 0.0 };
                self.at(hi, hi) + C64::new(0.75 * sub, 0.0)
            } else {
                self.wilkinson_shift(hi)
            };
            for k in l..=hi {
                *self.at_mut(k, k) -= mu;
            }
            rots.clear();
            for k in l..hi {
                let a = self.at(k, k);
                let b = self.at(k + 1, k);
                let r = a.norm().hypot(b.norm());
                let (c, s) = if r == 0.0 { (C64::new(1.0, 0.0), C64::new(0.0, 0.0)) } else { (a / r, b / r) };
                for j in k..=hi {
                    let x = self.at(k, j);
                    let y = self.at(k + 1, j);
                    *self.at_mut(k, j) = c.conj() * x + s.conj() * y;
                    *self.at_mut(k + 1, j) = -s * x + c * y;
                }
                rots.push((c, s));
            }
            for (idx, &(c, s)) in rots.iter().enumerate() {
                let k = l + idx;
                for i in l..=(k + 1).min(hi) {
                    let x = self.at(i, k);
                    let y = self.at(i, k + 1);
                    *self.at_mut(i, k) = x * c + y * s;
                    *self.at_mut(i, k + 1) = -x * s.conj() + y * c.conj();
                }
            }
            for k in l..=hi {
                *self.at_mut(k, k) += mu;
            }
        }
        Ok(eig)
    }
}

/// Eigenvalues of a dense complex matrix.
pub fn complex_eigenvalues(m: &ComplexMatrix) -> Result<Vec<C64>> {
    EigenSolver::new().eigenvalues(m)
}
