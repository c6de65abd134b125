//! Powers of companion matrices without general matrix products.
//!
//! For the left companion `C`, row `i` of `Cᵗ` is the unit row `e_{i+t}` when
//! `i + t ≤ m`, otherwise the last row `L_{i+t−m}` of a lower power, where
//! `L₀ = e_m` and `L_s = L_{s−1}·C`. The right companion is handled by the
//! same scheme on columns, `K₀ = e_m` and `K_s = C·K_{s−1}`.

use super::{QPolynomial, Side};
use crate::error::{Error, Result};
use crate::qmat::QMatrix;
use crate::quat::Quaternion;

fn unit(m: usize, k: usize) -> Vec<Quaternion> {
    let mut v = vec![Quaternion::ZERO; m];
    v[k] = Quaternion::ONE;
    v
}

/// Last rows `L₁..L_t` (left) or last columns `K₁..K_t` (right).
fn tails(p: &QPolynomial, t: usize) -> Vec<Vec<Quaternion>> {
    let m = p.degree();
    let neg: Vec<Quaternion> = p.coeffs()[..m].iter().map(|&q| -q).collect();
    let mut out = Vec::with_capacity(t + 1);
    out.push(unit(m, m - 1));
    for s in 1..=t {
        let prev = &out[s - 1];
        let last = prev[m - 1];
        let next: Vec<Quaternion> = (0..m)
            .map(|k| {
                let prod = match p.side() {
                    Side::Left => last * neg[k],
                    Side::Right => neg[k] * last,
                };
                if k == 0 {
                    prod
                } else {
                    prev[k - 1] + prod
                }
            })
            .collect();
        out.push(next);
    }
    out
}

/// `Cᵗ` for the companion of `p`, `t ≥ 1`.
pub fn companion_power_structured(p: &QPolynomial, t: usize) -> Result<QMatrix> {
    if t == 0 {
        return Err(Error::InvalidParameter("structured power needs t >= 1".into()));
    }
    let m = p.degree();
    let tails = tails(p, t);
    let line = |i: usize| -> Vec<Quaternion> {
        if i + t < m {
            unit(m, i + t)
        } else {
            tails[i + t + 1 - m].clone()
        }
    };
    let lines: Vec<Vec<Quaternion>> = (0..m).map(line).collect();
    Ok(match p.side() {
        Side::Left => QMatrix::from_fn(m, |i, j| lines[i][j]),
        Side::Right => QMatrix::from_fn(m, |i, j| lines[j][i]),
    })
}

/// Closed-form square of the companion of `p` after optional conjugation
/// (`tilde`) and reversal. Covers the eight left/right, plain/conjugate,
/// direct/reversal squares.
pub fn companion_square(p: &QPolynomial, tilde: bool, reversal: bool) -> Result<QMatrix> {
    let mut base = if tilde { p.tilde() } else { p.clone() };
    if reversal {
        base = base.reversal()?;
    }
    let m = base.degree();
    let q = |j: isize| base.coeff(j);
    let top = m as isize - 1;
    let entry = |i: usize, j: usize| -> Quaternion {
        // (i, j) in left orientation, 1-based indices
        let (i, j) = (i as isize + 1, j as isize + 1);
        let m = m as isize;
        if i <= m - 2 {
            if j == i + 2 {
                Quaternion::ONE
            } else {
                Quaternion::ZERO
            }
        } else if i == m - 1 {
            -q(j - 1)
        } else {
            let prod = match base.side() {
                Side::Left => q(top) * q(j - 1),
                Side::Right => q(j - 1) * q(top),
            };
            prod - q(j - 2)
        }
    };
    Ok(match base.side() {
        Side::Left => QMatrix::from_fn(m, entry),
        Side::Right => QMatrix::from_fn(m, |i, j| entry(j, i)),
    })
}
