//! Annuli `lower ≤ |z| ≤ upper` containing every zero. Upper bounds come
//! from Ostrowski-type radii of companion matrices (or their powers), lower
//! bounds from the same quantity on the reversal polynomial.

use serde::{Deserialize, Serialize};

use super::{companion_power_structured, QPolynomial, Side};
use crate::error::{check_gamma, check_weights, Error, Result};
use crate::qmat::QMatrix;
use crate::quat::Quaternion;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PowerVariant {
    /// Companion of `p` itself.
    Direct,
    /// Companion of the conjugate-coefficient polynomial on the other side.
    Conjugate,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PcVariant {
    #[serde(rename = "1a")]
    LeftDirect,
    #[serde(rename = "1b")]
    LeftConjugate,
    #[serde(rename = "2a")]
    RightDirect,
    #[serde(rename = "2b")]
    RightConjugate,
}

impl PcVariant {
    pub const ALL: [PcVariant; 4] = [PcVariant::LeftDirect, PcVariant::LeftConjugate, PcVariant::RightDirect, PcVariant::RightConjugate];

    pub fn side(self) -> Side {
        match self {
            PcVariant::LeftDirect | PcVariant::LeftConjugate => Side::Left,
            _ => Side::Right,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            PcVariant::LeftDirect => "1a",
            PcVariant::LeftConjugate => "1b",
            PcVariant::RightDirect => "2a",
            PcVariant::RightConjugate => "2b",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "method", content = "params", rename_all = "kebab-case")]
pub enum BoundMethod {
    Ostrowski { gamma: f64 },
    Co1,
    Co2,
    Scaled { weights: Vec<f64>, gamma: f64 },
    Cs1 { weights: Vec<f64> },
    Cs2 { weights: Vec<f64> },
    Kojima,
    Power { t: usize, gamma: f64, variant: PowerVariant },
    Pc { variant: PcVariant },
}

pub const GAMMA_GRID: [f64; 5] = [0.0, 0.25, 0.5, 0.75, 1.0];

impl BoundMethod {
    pub fn name(&self) -> &'static str {
        match self {
            BoundMethod::Ostrowski { .. } => "ostrowski",
            BoundMethod::Co1 => "co1",
            BoundMethod::Co2 => "co2",
            BoundMethod::Scaled { .. } => "scaled",
            BoundMethod::Cs1 { .. } => "cs1",
            BoundMethod::Cs2 { .. } => "cs2",
            BoundMethod::Kojima => "kojima",
            BoundMethod::Power { .. } => "power",
            BoundMethod::Pc { .. } => "pc",
        }
    }

    /// Whether the method is defined for polynomials of this side.
    pub fn applies_to(&self, side: Side) -> bool {
        match self {
            BoundMethod::Ostrowski { .. } | BoundMethod::Power { .. } => true,
            BoundMethod::Pc { variant } => variant.side() == side,
            _ => side == Side::Left,
        }
    }

    /// The parameter-free battery run by `--method all`.
    pub fn battery(side: Side) -> Vec<BoundMethod> {
        let mut v: Vec<BoundMethod> = GAMMA_GRID.iter().map(|&gamma| BoundMethod::Ostrowski { gamma }).collect();
        v.extend([BoundMethod::Co1, BoundMethod::Co2, BoundMethod::Kojima]);
        for t in [2, 3] {
            for variant in [PowerVariant::Direct, PowerVariant::Conjugate] {
                v.extend(GAMMA_GRID.iter().map(|&gamma| BoundMethod::Power { t, gamma, variant }));
            }
        }
        v.extend(PcVariant::ALL.iter().map(|&variant| BoundMethod::Pc { variant }));
        v.retain(|m| m.applies_to(side));
        v
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    #[serde(flatten)]
    pub method: BoundMethod,
    pub side: Side,
    pub lower: f64,
    pub upper: f64,
    /// Set when `q₀ = 0` and the lower bound degenerates to 0.
    pub lower_degenerate: bool,
}

impl BoundReport {
    pub fn contains(&self, modulus: f64, tol: f64) -> bool {
        modulus >= self.lower - tol && modulus <= self.upper + tol
    }
}

/// `max_i r′ᵢ^{γ/t} c′ᵢ^{(1−γ)/t}`.
fn ostrowski_max(c: &QMatrix, gamma: f64, t: f64) -> f64 {
    (0..c.n())
        .map(|i| {
            let s = c.row_stats(i);
            s.row_full.powf(gamma / t) * s.col_full.powf((1.0 - gamma) / t)
        })
        .fold(0.0, f64::max)
}

/// Reciprocal of `upper_of(reversal)`, or a flagged 0 when `q₀ = 0`.
fn reversal_lower(p: &QPolynomial, upper_of: impl Fn(&QPolynomial) -> Result<f64>) -> Result<(f64, bool)> {
    if p.coeffs()[0].is_zero() {
        return Ok((0.0, true));
    }
    let u = upper_of(&p.reversal()?)?;
    Ok((if u > 0.0 { 1.0 / u } else { 0.0 }, false))
}

fn require_side(p: &QPolynomial, method: &BoundMethod) -> Result<()> {
    if method.applies_to(p.side()) {
        Ok(())
    } else {
        let expected = if p.side() == Side::Left { "right" } else { "left" };
        Err(Error::SideMismatch { method: method.name().into(), expected: expected.into() })
    }
}

fn n(q: Quaternion) -> f64 {
    q.norm()
}

fn kojima_upper(p: &QPolynomial) -> Result<f64> {
    let m = p.degree() as isize;
    let q = |j: isize| p.coeff(j);
    let mut best = 0.0f64;
    for j in 0..m {
        let den = q(j + 1).norm();
        if den == 0.0 {
            return Err(Error::ZeroDivisor(format!("kojima bound needs q{} != 0", j + 1)));
        }
        let f = if j == 0 { 1.0 } else { 2.0 };
        best = best.max(f * n(q(j)) / den);
    }
    Ok(best)
}

/// `(upper, lower)` closed forms for the squared companions.
fn pc_bounds(p: &QPolynomial, variant: PcVariant) -> Result<(f64, f64, bool)> {
    let m = p.degree() as isize;
    if m < 2 {
        return Err(Error::InvalidParameter("pc bounds need degree at least 2".into()));
    }
    let q = |j: isize| p.coeff(j);
    let c = |x: Quaternion| x.conj();
    let sq = f64::sqrt;
    let inner = 2..m;

    let upper = match variant {
        PcVariant::LeftDirect => {
            let s1: f64 = (0..m).map(|j| n(q(j))).sum();
            let s2: f64 = (0..m).map(|j| n(q(m - 1) * q(j) - q(j - 1))).sum();
            1f64.max(sq(s1)).max(sq(s2))
        }
        PcVariant::LeftConjugate => {
            let mut v = sq(n(q(0)) + n(c(q(0)) * c(q(m - 1)))).max(sq(n(q(1)) + n(c(q(1)) * c(q(m - 1)) - c(q(0)))));
            for j in inner.clone() {
                v = v.max(sq(1.0 + n(q(j)) + n(c(q(j)) * c(q(m - 1)) - c(q(j - 1)))));
            }
            v
        }
        PcVariant::RightDirect => {
            let mut v = sq(n(q(0)) + n(q(0) * q(m - 1))).max(sq(n(q(1)) + n(q(1) * q(m - 1) - q(0))));
            for j in inner.clone() {
                v = v.max(sq(1.0 + n(q(j)) + n(q(j) * q(m - 1) - q(j - 1))));
            }
            v
        }
        PcVariant::RightConjugate => {
            let s1: f64 = (0..m).map(|j| n(q(j))).sum();
            let s2: f64 = (0..m).map(|j| n(c(q(m - 1)) * c(q(j)) - c(q(j - 1)))).sum();
            1f64.max(sq(s1)).max(sq(s2))
        }
    };

    if q(0).is_zero() {
        return Ok((upper, 0.0, true));
    }
    let i0 = q(0).inverse()?;
    let l = |j: isize| i0 * q(j);
    let r = |j: isize| q(j) * i0;
    let beta = match variant {
        PcVariant::LeftDirect => {
            // the first sum runs through j = m, where q₀⁻¹q_m = q₀⁻¹
            let s1: f64 = (1..=m).map(|j| n(l(j))).sum();
            let s2: f64 = (0..m).map(|j| n(l(1) * l(m - j) - l(m - j + 1))).sum();
            1f64.max(sq(s1)).max(sq(s2))
        }
        PcVariant::LeftConjugate => {
            let mut v = sq(n(i0) + n(c(i0) * c(r(1)))).max(sq(n(r(m - 1)) + n(c(r(m - 1)) * c(r(1)) - c(i0))));
            for j in inner.clone() {
                v = v.max(sq(1.0 + n(r(m - j)) + n(c(r(m - j)) * c(r(1)) - c(r(m - j + 1)))));
            }
            v
        }
        PcVariant::RightDirect => {
            let mut v = sq(n(i0) + n(i0 * r(1))).max(sq(n(r(m - 1)) + n(r(m - 1) * r(1) - i0)));
            for j in inner {
                v = v.max(sq(1.0 + n(r(m - j)) + n(r(m - j) * r(1) - r(m - j + 1))));
            }
            v
        }
        PcVariant::RightConjugate => {
            let s1: f64 = (1..=m).map(|j| n(l(j))).sum();
            let s2: f64 = (0..m).map(|j| n(c(l(1)) * c(l(m - j)) - c(l(m - j + 1)))).sum();
            1f64.max(sq(s1)).max(sq(s2))
        }
    };
    Ok((upper, 1.0 / beta, false))
}

/// Upper/lower closed forms for diagonal weights `w₁..w_m`, column (`γ = 0`)
/// or row (`γ = 1`) flavour.
fn cs_bounds(p: &QPolynomial, w: &[f64], rows: bool) -> Result<(f64, f64, bool)> {
    let m = p.degree();
    check_weights(w, m)?;
    let wt = |j: usize| if j == 0 { 0.0 } else { w[j - 1] };
    let wm = w[m - 1];
    let q = |j: usize| p.coeffs()[j].norm();
    let q0 = q(0);
    let chain = (1..m).map(|j| wt(j) / wt(j + 1)).fold(0.0, f64::max);
    let upper = if rows {
        chain.max((0..m).map(|i| wm * q(i) / wt(i + 1)).sum())
    } else {
        (0..m).map(|j| (wt(j) + wm * q(j)) / wt(j + 1)).fold(0.0, f64::max)
    };
    if q0 == 0.0 {
        return Ok((upper, 0.0, true));
    }
    // |q_{m−j}| pairs with w_{j+1}; q_m = 1
    let inv = if rows {
        chain.max((0..m).map(|i| wm * q(m - i) / (q0 * wt(i + 1))).sum())
    } else {
        (0..m).map(|j| (q0 * wt(j) + wm * q(m - j)) / (q0 * wt(j + 1))).fold(0.0, f64::max)
    };
    Ok((upper, 1.0 / inv, false))
}

pub fn zero_bounds(p: &QPolynomial, method: &BoundMethod) -> Result<BoundReport> {
    require_side(p, method)?;
    let m = p.degree();
    let (upper, lower, degenerate) = match method {
        BoundMethod::Ostrowski { gamma } => {
            check_gamma(*gamma)?;
            let up = ostrowski_max(&p.companion(), *gamma, 1.0);
            let (lo, d) = reversal_lower(p, |r| Ok(ostrowski_max(&r.companion(), *gamma, 1.0)))?;
            (up, lo, d)
        }
        BoundMethod::Co1 => {
            let q0 = p.coeffs()[0].norm();
            let tail = p.coeffs()[1..m].iter().map(|q| q.norm());
            let up = tail.clone().map(|x| 1.0 + x).fold(q0, f64::max);
            let den = tail.map(|x| q0 + x).fold(1.0, f64::max);
            (up, q0 / den, q0 == 0.0)
        }
        BoundMethod::Co2 => {
            let q0 = p.coeffs()[0].norm();
            let up = p.lower_norm_sum().max(1.0);
            let den = q0.max(1.0 + p.coeffs()[1..m].iter().map(|q| q.norm()).sum::<f64>());
            (up, q0 / den, q0 == 0.0)
        }
        BoundMethod::Scaled { weights, gamma } => {
            check_gamma(*gamma)?;
            check_weights(weights, m)?;
            let inv: Vec<f64> = weights.iter().map(|w| 1.0 / w).collect();
            let f = |r: &QPolynomial| -> Result<f64> { Ok(ostrowski_max(&r.companion().scale_similarity(&inv)?, *gamma, 1.0)) };
            let up = f(p)?;
            let (lo, d) = reversal_lower(p, f)?;
            (up, lo, d)
        }
        BoundMethod::Cs1 { weights } => cs_bounds(p, weights, false)?,
        BoundMethod::Cs2 { weights } => cs_bounds(p, weights, true)?,
        BoundMethod::Kojima => {
            let up = kojima_upper(p)?;
            let (lo, d) = reversal_lower(p, kojima_upper)?;
            (up, lo, d)
        }
        BoundMethod::Power { t, gamma, variant } => {
            check_gamma(*gamma)?;
            if *t < 2 {
                return Err(Error::InvalidParameter(format!("power bound needs t >= 2, got {t}")));
            }
            let base = match variant {
                PowerVariant::Direct => p.clone(),
                PowerVariant::Conjugate => p.tilde(),
            };
            let f = |r: &QPolynomial| -> Result<f64> { Ok(ostrowski_max(&companion_power_structured(r, *t)?, *gamma, *t as f64)) };
            let up = f(&base)?;
            let (lo, d) = reversal_lower(&base, f)?;
            (up, lo, d)
        }
        BoundMethod::Pc { variant } => pc_bounds(p, *variant)?,
    };
    Ok(BoundReport { method: method.clone(), side: p.side(), lower: lower.max(0.0), upper: upper.max(0.0), lower_degenerate: degenerate })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OpferComparison {
    /// `max{|q₀|, 1 + |qᵢ|}` over `1 ≤ i ≤ m−1`.
    pub alpha: f64,
    /// `max{1, Σ_{i<m} |qᵢ|}`.
    pub opfer: f64,
    pub alpha_le_opfer: bool,
}

pub fn opfer_comparison(p: &QPolynomial) -> OpferComparison {
    let m = p.degree();
    let q0 = p.coeffs()[0].norm();
    let alpha = p.coeffs()[1..m].iter().map(|q| 1.0 + q.norm()).fold(q0, f64::max);
    let opfer = p.lower_norm_sum().max(1.0);
    OpferComparison { alpha, opfer, alpha_le_opfer: alpha <= opfer }
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::{sextic, cubic};
    use super::super::roots;
    use super::*;
    use crate::testing::{random_quaternion, rng};
    use proptest::prelude::*;
    use rand::Rng;

    const I: Quaternion = Quaternion::I;
    const J: Quaternion = Quaternion::J;
    const K: Quaternion = Quaternion::K;

    fn q(w: f64, x: f64, y: f64, z: f64) -> Quaternion {
        Quaternion::new(w, x, y, z)
    }

    fn pair(p: &QPolynomial, m: BoundMethod) -> (f64, f64) {
        let r = zero_bounds(p, &m).unwrap();
        (r.lower, r.upper)
    }

    fn near(got: (f64, f64), expect: (f64, f64), tol: f64) {
        assert!((got.0 - expect.0).abs() <= tol && (got.1 - expect.1).abs() <= tol, "{got:?} vs {expect:?}");
    }

    #[test]
    fn sextic_closed_form_bounds() {
        let p = sextic(Side::Left);
        near(pair(&p, BoundMethod::Co1), (0.4142, 19.9737), 1e-4);
        near(pair(&p, BoundMethod::Co2), (0.2766, 60.9291), 1e-4);
        near(pair(&p, BoundMethod::Co1), pair(&p, BoundMethod::Ostrowski { gamma: 0.0 }), 1e-12);
        assert!((pair(&p, BoundMethod::Co2).1 - pair(&p, BoundMethod::Ostrowski { gamma: 1.0 }).1).abs() < 1e-12);
        let (lo, up) = pair(&p, BoundMethod::Ostrowski { gamma: 0.25 });
        assert!((lo - 0.3744).abs() < 1e-4);
        // maximum over every row; the last row alone gives 8.1415
        assert!((up - 9.4481).abs() < 1e-4, "{up}");
        let c = p.companion();
        let last = c.row_stats(5);
        assert!((last.row_full.powf(0.25) * last.col_full.powf(0.75) - 8.1415).abs() < 1e-4);
    }

    #[test]
    fn cubic_pc_table() {
        let cases = [
            (Side::Left, PcVariant::LeftDirect, (0.6156, 2.3655)),
            (Side::Left, PcVariant::LeftConjugate, (0.6078, 1.9656)),
            (Side::Right, PcVariant::RightDirect, (0.6078, 1.9319)),
            (Side::Right, PcVariant::RightConjugate, (0.6436, 2.1355)),
        ];
        for (side, variant, expect) in cases {
            let p = cubic(side);
            let closed = pair(&p, BoundMethod::Pc { variant });
            near(closed, expect, 1e-4);
            let pv = if matches!(variant, PcVariant::LeftDirect | PcVariant::RightDirect) { PowerVariant::Direct } else { PowerVariant::Conjugate };
            near(pair(&p, BoundMethod::Power { t: 2, gamma: 1.0, variant: pv }), closed, 1e-12);
        }
    }

    #[test]
    fn pc_closed_forms_match_squares() {
        let mut r = rng(89);
        for k in 0..200 {
            let m = 3 + k % 4;
            let lower: Vec<Quaternion> = (0..m).map(|_| { let s = r.gen_range(0.1..3.0); random_quaternion(&mut r, s) }).collect();
            for variant in PcVariant::ALL {
                let p = QPolynomial::monic(variant.side(), &lower).unwrap();
                let pv = if matches!(variant, PcVariant::LeftDirect | PcVariant::RightDirect) { PowerVariant::Direct } else { PowerVariant::Conjugate };
                let (a, b) = (pair(&p, BoundMethod::Pc { variant }), pair(&p, BoundMethod::Power { t: 2, gamma: 1.0, variant: pv }));
                near(a, b, 1e-9);
            }
        }
    }

    #[test]
    fn cs_forms_match_scaled() {
        let mut r = rng(97);
        for k in 0..50 {
            let m = 1 + k % 5;
            let lower: Vec<Quaternion> = (0..m).map(|_| random_quaternion(&mut r, 2.0)).collect();
            let w: Vec<f64> = (0..m).map(|_| r.gen_range(0.2..4.0)).collect();
            let p = QPolynomial::monic(Side::Left, &lower).unwrap();
            near(pair(&p, BoundMethod::Cs1 { weights: w.clone() }), pair(&p, BoundMethod::Scaled { weights: w.clone(), gamma: 0.0 }), 1e-10);
            near(pair(&p, BoundMethod::Cs2 { weights: w.clone() }), pair(&p, BoundMethod::Scaled { weights: w.clone(), gamma: 1.0 }), 1e-10);
            let ones = vec![1.0; m];
            near(pair(&p, BoundMethod::Scaled { weights: ones, gamma: 0.5 }), pair(&p, BoundMethod::Ostrowski { gamma: 0.5 }), 1e-12);
        }
    }

    #[test]
    fn kojima_is_a_weighted_specialization() {
        let p = sextic(Side::Left);
        let mut w: Vec<f64> = p.coeffs()[1..6].iter().map(|q| q.norm()).collect();
        w.push(1.0);
        assert!((pair(&p, BoundMethod::Kojima).1 - pair(&p, BoundMethod::Cs1 { weights: w }).1).abs() < 1e-12);
        let bad = QPolynomial::monic(Side::Left, &[I, Quaternion::ZERO, J]).unwrap();
        assert!(matches!(zero_bounds(&bad, &BoundMethod::Kojima), Err(Error::ZeroDivisor(_))));
    }

    #[test]
    fn zero_constant_term() {
        let p = QPolynomial::monic(Side::Left, &[Quaternion::ZERO; 3]).unwrap();
        let r = zero_bounds(&p, &BoundMethod::Co2).unwrap();
        assert_eq!((r.lower, r.upper, r.lower_degenerate), (0.0, 1.0, true));
        let r = zero_bounds(&p, &BoundMethod::Ostrowski { gamma: 0.5 }).unwrap();
        assert!(r.lower_degenerate && r.lower == 0.0);
        assert!(zero_bounds(&p, &BoundMethod::Pc { variant: PcVariant::LeftDirect }).unwrap().lower_degenerate);
    }

    #[test]
    fn parameter_and_side_errors() {
        let p = cubic(Side::Right);
        assert!(matches!(zero_bounds(&p, &BoundMethod::Co1), Err(Error::SideMismatch { .. })));
        assert!(matches!(zero_bounds(&p, &BoundMethod::Pc { variant: PcVariant::LeftDirect }), Err(Error::SideMismatch { .. })));
        assert!(zero_bounds(&p, &BoundMethod::Ostrowski { gamma: -0.1 }).is_err());
        assert!(zero_bounds(&p, &BoundMethod::Power { t: 1, gamma: 0.5, variant: PowerVariant::Direct }).is_err());
        let l = cubic(Side::Left);
        assert!(zero_bounds(&l, &BoundMethod::Scaled { weights: vec![1.0, 2.0], gamma: 0.5 }).is_err());
        let lin = QPolynomial::monic(Side::Left, &[K]).unwrap();
        assert!(zero_bounds(&lin, &BoundMethod::Pc { variant: PcVariant::LeftDirect }).is_err());
    }

    #[test]
    fn json_layout() {
        let r = zero_bounds(&cubic(Side::Left), &BoundMethod::Power { t: 2, gamma: 1.0, variant: PowerVariant::Direct }).unwrap();
        let v: serde_json::Value = serde_json::to_value(&r).unwrap();
        assert_eq!(v["method"], "power");
        assert_eq!(v["params"]["t"], 2);
        assert_eq!(v["params"]["variant"], "direct");
        assert_eq!(v["side"], "left");
        let back: BoundReport = serde_json::from_value(v).unwrap();
        assert_eq!(back, r);
        let v = serde_json::to_value(zero_bounds(&cubic(Side::Left), &BoundMethod::Co1).unwrap()).unwrap();
        assert_eq!(v["method"], "co1");
        let v = serde_json::to_value(BoundMethod::Pc { variant: PcVariant::RightConjugate }).unwrap();
        assert_eq!(v["params"]["variant"], "2b");
    }

    #[test]
    fn opfer_examples() {
        let p1 = QPolynomial::monic(Side::Left, &[K.scale(0.5), K.scale(-2.0), q(0.0, 1.0, 2.0, 2.0)]).unwrap();
        let c = opfer_comparison(&p1);
        assert_eq!((c.alpha, c.opfer, c.alpha_le_opfer), (4.0, 5.5, true));
        let p2 = QPolynomial::monic(Side::Left, &[I.scale(0.5), q(0.0, 0.2, 0.3, 0.0), J.scale(0.5)]).unwrap();
        let c = opfer_comparison(&p2);
        assert_eq!(c.alpha, 1.5);
        assert!((c.opfer - (1.0 + 0.13f64.sqrt())).abs() < 1e-15);
        assert!((c.opfer - 1.36).abs() < 1e-3 && !c.alpha_le_opfer);
        let units = QPolynomial::monic(Side::Left, &[I, J, K]).unwrap();
        let c = opfer_comparison(&units);
        assert_eq!((c.alpha, c.opfer, c.alpha_le_opfer), (2.0, 3.0, true));
    }

    #[test]
    fn sextic_power_bounds_against_opfer() {
        let p = sextic(Side::Left);
        let t = pair(&p, BoundMethod::Co2).1;
        for gamma in GAMMA_GRID {
            let (_, up) = pair(&p, BoundMethod::Power { t: 2, gamma, variant: PowerVariant::Direct });
            assert!(up <= t);
        }
    }

    fn random_poly(seed: u64, m: usize, side: Side) -> QPolynomial {
        let mut r = rng(seed);
        let scale = r.gen_range(0.2..4.0);
        let lower: Vec<Quaternion> = (0..m).map(|_| random_quaternion(&mut r, scale)).collect();
        QPolynomial::monic(side, &lower).unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn bounds_contain_zero_moduli(seed in any::<u64>(), m in 1usize..7, left in any::<bool>()) {
            let side = if left { Side::Left } else { Side::Right };
            let p = random_poly(seed, m, side);
            let moduli = roots(&p).unwrap().moduli();
            let mut methods = BoundMethod::battery(side);
            let w: Vec<f64> = (0..m).map(|k| 0.5 + (seed.wrapping_add(k as u64) % 7) as f64).collect();
            if side == Side::Left {
                methods.push(BoundMethod::Cs1 { weights: w.clone() });
                methods.push(BoundMethod::Cs2 { weights: w.clone() });
                methods.push(BoundMethod::Scaled { weights: w, gamma: 0.3 });
            }
            for method in methods {
                let rep = match zero_bounds(&p, &method) {
                    Ok(r) => r,
                    Err(Error::InvalidParameter(_)) if m < 2 => continue,
                    Err(e) => return Err(TestCaseError::fail(format!("{method:?}: {e}"))),
                };
                prop_assert!(rep.lower <= rep.upper * (1.0 + 1e-12));
                for &z in &moduli {
                    prop_assert!(rep.contains(z, 1e-9), "{method:?} {rep:?} misses {z}");
                }
            }
        }

        #[test]
        fn alpha_below_opfer_for_large_constant(seed in any::<u64>(), m in 1usize..8) {
            let mut p = random_poly(seed, m, Side::Left).coeffs().to_vec();
            if p[0].norm() < 1.0 {
                p[0] = if p[0].is_zero() { Quaternion::ONE } else { p[0] / p[0].norm() };
            }
            let c = opfer_comparison(&QPolynomial::new(Side::Left, p).unwrap());
            // |q0| is normalized to 1 only up to rounding
            prop_assert!(c.alpha <= c.opfer * (1.0 + 1e-12), "{c:?}");
        }
    }
}
