//! Inclusion regions for left and right eigenvalues: unions of balls and of
//! ovals of Cassini, built from deleted row/column sums.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{check_gamma, check_holder_p, Error, Result};
use crate::qmat::{QMatrix, C64};
use crate::quat::Quaternion;

/// Relative slack added to radii and bounds in membership tests.
pub const MEMBERSHIP_SLACK: f64 = 1e-9;

/// Diagonal entries with imaginary modulus above this are not real.
pub const REAL_DIAG_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Region {
    Ball { center: Quaternion, radius: f64 },
    Cassini { c1: Quaternion, c2: Quaternion, bound: f64 },
    Union { parts: Vec<Region> },
    Intersection { parts: Vec<Region> },
}

fn slack(x: f64) -> f64 {
    x + MEMBERSHIP_SLACK * (1.0 + x)
}

impl Region {
    pub fn ball(center: Quaternion, radius: f64) -> Self {
        Region::Ball { center, radius: radius.max(0.0) }
    }

    pub fn cassini(c1: Quaternion, c2: Quaternion, bound: f64) -> Self {
        Region::Cassini { c1, c2, bound: bound.max(0.0) }
    }

    pub fn contains(&self, q: Quaternion) -> bool {
        match self {
            Region::Ball { center, radius } => (q - *center).norm() <= slack(*radius),
            Region::Cassini { c1, c2, bound } => (q - *c1).norm() * (q - *c2).norm() <= slack(*bound),
            Region::Union { parts } => parts.iter().any(|r| r.contains(q)),
            Region::Intersection { parts } => parts.iter().all(|r| r.contains(q)),
        }
    }

    /// Ball and Cassini leaves, depth first.
    pub fn leaves(&self) -> Vec<&Region> {
        match self {
            Region::Union { parts } | Region::Intersection { parts } => parts.iter().flat_map(Region::leaves).collect(),
            leaf => vec![leaf],
        }
    }

    /// Radii of the top-level balls, in order. Non-ball parts are skipped.
    pub fn radii(&self) -> Vec<f64> {
        self.leaves()
            .into_iter()
            .filter_map(|r| match r {
                Region::Ball { radius, .. } => Some(*radius),
                _ => None,
            })
            .collect()
    }

    /// Cassini bounds of the leaves, in order.
    pub fn bounds(&self) -> Vec<f64> {
        self.leaves()
            .into_iter()
            .filter_map(|r| match r {
                Region::Cassini { bound, .. } => Some(*bound),
                _ => None,
            })
            .collect()
    }

    /// Whether some element `a + b·u` (u a unit pure imaginary) of the class
    /// lies in the region. Balls are decided in closed form; other shapes
    /// by scanning a dense set of directions.
    pub fn class_meets(&self, a: f64, b: f64) -> bool {
        match self {
            Region::Ball { center, radius } => {
                let d = (a - center.w).hypot(b.abs() - center.imag_norm());
                d <= slack(*radius)
            }
            Region::Union { parts } => parts.iter().any(|r| r.class_meets(a, b)),
            _ => class_directions(self).into_iter().any(|u| self.contains(Quaternion::real(a) + u.scale(b))),
        }
    }
}

fn unit_imag(q: Quaternion) -> Option<Quaternion> {
    let n = q.imag_norm();
    (n > 0.0).then(|| q.imag() / n)
}

fn class_directions(r: &Region) -> Vec<Quaternion> {
    const N: usize = 4096;
    let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
    let mut dirs: Vec<Quaternion> = (0..N)
        .map(|k| {
            let y = 1.0 - 2.0 * (k as f64 + 0.5) / N as f64;
            let rad = (1.0 - y * y).sqrt();
            let th = golden * k as f64;
            Quaternion::new(0.0, rad * th.cos(), y, rad * th.sin())
        })
        .collect();
    for leaf in r.leaves() {
        let centers = match leaf {
            Region::Ball { center, .. } => vec![*center],
            Region::Cassini { c1, c2, .. } => vec![*c1, *c2],
            _ => vec![],
        };
        for c in centers.into_iter().filter_map(unit_imag) {
            dirs.push(c);
            dirs.push(-c);
        }
    }
    dirs
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RegionKind {
    GerschRow,
    GerschCol,
    OstrowskiLeft,
    OstrowskiRightRealDiag,
    BrauerCol,
    BrauerLeftOstrowski,
    BrauerRightRealDiag,
    HolderLeft,
    HolderRightRealDiag,
}

impl RegionKind {
    pub const ALL: [RegionKind; 9] = [
        RegionKind::GerschRow,
        RegionKind::GerschCol,
        RegionKind::OstrowskiLeft,
        RegionKind::OstrowskiRightRealDiag,
        RegionKind::BrauerCol,
        RegionKind::BrauerLeftOstrowski,
        RegionKind::BrauerRightRealDiag,
        RegionKind::HolderLeft,
        RegionKind::HolderRightRealDiag,
    ];

    pub fn requires_real_diagonal(self) -> bool {
        matches!(self, RegionKind::OstrowskiRightRealDiag | RegionKind::BrauerRightRealDiag | RegionKind::HolderRightRealDiag)
    }

    pub fn is_cassini(self) -> bool {
        matches!(self, RegionKind::BrauerCol | RegionKind::BrauerLeftOstrowski | RegionKind::BrauerRightRealDiag)
    }

    pub fn is_holder(self) -> bool {
        matches!(self, RegionKind::HolderLeft | RegionKind::HolderRightRealDiag)
    }

    /// Localizes right eigenvalues rather than left ones.
    pub fn is_right(self) -> bool {
        self.requires_real_diagonal()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegionSpec {
    pub kind: RegionKind,
    pub gamma: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<f64>>,
}

impl RegionSpec {
    pub fn new(kind: RegionKind) -> Self {
        RegionSpec { kind, gamma: 1.0, p: None, weights: None }
    }

    pub fn gamma(mut self, gamma: f64) -> Self {
        self.gamma = gamma;
        self
    }

    pub fn p(mut self, p: f64) -> Self {
        self.p = Some(p);
        self
    }

    pub fn weights(mut self, w: Vec<f64>) -> Self {
        self.weights = Some(w);
        self
    }
}

/// `rᵢ^γ cᵢ^{1−γ}` for every row.
pub fn ostrowski_radii(a: &QMatrix, gamma: f64) -> Vec<f64> {
    (0..a.n()).map(|i| a.row_sum(i).powf(gamma) * a.col_sum(i).powf(1.0 - gamma)).collect()
}

/// `(n−1)^{(1−γ)/q} rᵢ^γ (nᵢ⁽ᵖ⁾)^{1−γ}` with `1/p + 1/q = 1`.
pub fn holder_radii(a: &QMatrix, gamma: f64, p: f64) -> Result<Vec<f64>> {
    check_holder_p(p)?;
    let q = p / (p - 1.0);
    let lead = ((a.n() - 1) as f64).powf((1.0 - gamma) / q);
    (0..a.n()).map(|i| Ok(lead * a.row_sum(i).powf(gamma) * a.holder_norm(i, p)?.powf(1.0 - gamma))).collect()
}

fn check_real_diagonal(a: &QMatrix) -> Result<()> {
    match a.non_real_diagonal(REAL_DIAG_TOL) {
        Some(i) => Err(Error::NonRealDiagonal { index: i + 1, value: format!("{}", a[(i, i)]) }),
        None => Ok(()),
    }
}

pub fn build_region(a: &QMatrix, spec: &RegionSpec) -> Result<Region> {
    check_gamma(spec.gamma)?;
    if spec.kind.requires_real_diagonal() {
        check_real_diagonal(a)?;
    }
    let p = if spec.kind.is_holder() {
        let p = spec.p.ok_or_else(|| Error::InvalidParameter("Hölder regions need an exponent p".into()))?;
        check_holder_p(p)?;
        p
    } else {
        0.0
    };
    let scaled;
    let b = match &spec.weights {
        Some(w) => {
            scaled = a.scale_similarity(w)?;
            &scaled
        }
        None => a,
    };
    let n = b.n();
    let g = spec.gamma;
    let centers = b.diagonal();
    let rho = match spec.kind {
        RegionKind::GerschRow => (0..n).map(|i| b.row_sum(i)).collect(),
        RegionKind::GerschCol | RegionKind::BrauerCol => (0..n).map(|i| b.col_sum(i)).collect(),
        RegionKind::OstrowskiLeft
        | RegionKind::OstrowskiRightRealDiag
        | RegionKind::BrauerLeftOstrowski
        | RegionKind::BrauerRightRealDiag => ostrowski_radii(b, g),
        RegionKind::HolderLeft | RegionKind::HolderRightRealDiag => holder_radii(b, g, p)?,
    };
    let parts = if spec.kind.is_cassini() {
        if n == 1 {
            vec![Region::ball(centers[0], 0.0)]
        } else {
            let mut v = Vec::with_capacity(n * (n - 1) / 2);
            for i in 0..n {
                for j in i + 1..n {
                    v.push(Region::cassini(centers[i], centers[j], rho[i] * rho[j]));
                }
            }
            v
        }
    } else {
        centers.iter().zip(&rho).map(|(&c, &r)| Region::ball(c, r)).collect()
    };
    Ok(Region::Union { parts })
}

/// Intersection of the weighted regions over a finite family of weights.
pub fn build_minimal_region(a: &QMatrix, spec: &RegionSpec, weight_family: &[Vec<f64>]) -> Result<Region> {
    if weight_family.is_empty() {
        return Err(Error::InvalidParameter("weight family is empty".into()));
    }
    let parts = weight_family
        .iter()
        .map(|w| build_region(a, &RegionSpec { weights: Some(w.clone()), ..spec.clone() }))
        .collect::<Result<Vec<_>>>()?;
    Ok(Region::Intersection { parts })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InclusionReport {
    pub included: bool,
    pub witness: Option<Quaternion>,
    pub samples: usize,
    pub seed: u64,
}

fn uniform_in_ball(rng: &mut ChaCha8Rng) -> Quaternion {
    loop {
        let v = Quaternion::from_array([0; 4].map(|_| rng.gen_range(-1.0..1.0)));
        let n = v.norm_sqr();
        if n <= 1.0 && n > 1e-12 {
            return v;
        }
    }
}

fn unit_direction(rng: &mut ChaCha8Rng) -> Quaternion {
    let v = uniform_in_ball(rng);
    v / v.norm()
}

/// Distance from `c1` along `u` to the boundary of the oval, by bisection.
fn oval_boundary(c1: Quaternion, c2: Quaternion, bound: f64, u: Quaternion) -> f64 {
    let d = (c1 - c2).norm() / 2.0;
    let f = |t: f64| t * (c1 + u.scale(t) - c2).norm() - bound;
    let (mut lo, mut hi) = (0.0, d + (d * d + bound).sqrt());
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if f(mid) <= 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

fn sample_leaf(leaf: &Region, rng: &mut ChaCha8Rng) -> Quaternion {
    let mode = rng.gen_range(0..3u8);
    match *leaf {
        Region::Ball { center, radius } => match mode {
            0 => center + uniform_in_ball(rng).scale(radius + center.norm() + 1.0),
            1 => center + unit_direction(rng).scale(radius * (1.0 + rng.gen_range(-1e-3..1e-3))),
            _ => center + unit_direction(rng).scale(radius * rng.gen::<f64>().powf(0.25)),
        },
        Region::Cassini { c1, c2, bound } => {
            let mid = (c1 + c2).scale(0.5);
            let d = (c1 - c2).norm() / 2.0;
            let reach = (bound + d * d).sqrt() + d;
            let (from, to) = if rng.gen::<bool>() { (c1, c2) } else { (c2, c1) };
            match mode {
                0 => mid + uniform_in_ball(rng).scale(reach + mid.norm() + 1.0),
                1 => {
                    let u = unit_direction(rng);
                    let t = oval_boundary(from, to, bound, u);
                    from + u.scale(t * (1.0 + rng.gen_range(-1e-3..1e-3)))
                }
                _ => {
                    let u = unit_direction(rng);
                    let t = oval_boundary(from, to, bound, u);
                    from + u.scale(t * rng.gen::<f64>())
                }
            }
        }
        _ => unreachable!("leaves are balls or ovals"),
    }
}

/// Monte Carlo check that `inner ⊆ outer`. Each sample owns a generator
/// stream keyed by its index, so the outcome does not depend on scheduling.
pub fn sampled_inclusion(inner: &Region, outer: &Region, seed: u64, count: usize) -> InclusionReport {
    let leaves = inner.leaves();
    let witness = (0..count as u64).into_par_iter().find_map_first(|idx| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(idx);
        let leaf = leaves[rng.gen_range(0..leaves.len())];
        let q = sample_leaf(leaf, &mut rng);
        (inner.contains(q) && !outer.contains(q)).then_some(q)
    });
    InclusionReport { included: witness.is_none(), witness, samples: count, seed }
}

/// `|aᵢᵢ| > rᵢ^γ cᵢ^{1−γ}` for every `i`.
pub fn invertibility_sufficient(a: &QMatrix, gamma: f64) -> Result<bool> {
    check_gamma(gamma)?;
    let rho = ostrowski_radii(a, gamma);
    Ok((0..a.n()).all(|i| a[(i, i)].norm() > rho[i]))
}

/// `|aᵢᵢ||aⱼⱼ| > ρᵢρⱼ` for every pair `i ≠ j`, with `ρ = rᵢ^γ cᵢ^{1−γ}`.
pub fn invertibility_sufficient_brauer(a: &QMatrix, gamma: f64) -> Result<bool> {
    check_gamma(gamma)?;
    let rho = ostrowski_radii(a, gamma);
    let d: Vec<f64> = a.diagonal().iter().map(|q| q.norm()).collect();
    let n = a.n();
    if n == 1 {
        return Ok(d[0] > 0.0);
    }
    Ok((0..n).all(|i| (0..n).filter(|&j| j != i).all(|j| d[i] * d[j] > rho[i] * rho[j])))
}

/// `Re(aᵢᵢ) + (n−1)^{(1−γ)/q} rᵢ^γ (nᵢ⁽ᵖ⁾)^{1−γ} < 0` for every row.
pub fn stability_sufficient(a: &QMatrix, gamma: f64, p: f64) -> Result<bool> {
    check_gamma(gamma)?;
    let rho = holder_radii(a, gamma, p)?;
    Ok((0..a.n()).all(|i| a[(i, i)].re() + rho[i] < 0.0))
}

/// Complex-plane description of one region leaf.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "lowercase")]
pub enum ComplexShape {
    Disc { center: [f64; 2], radius: f64, projected: bool },
    Oval { c1: [f64; 2], c2: [f64; 2], bound: f64, projected: bool },
    Point { center: [f64; 2], projected: bool },
}

/// `(w, x)` when the j, k parts vanish, otherwise the class
/// representative `w ± |Im|·i` carrying the sign of `x`.
fn to_plane(q: Quaternion) -> ([f64; 2], bool) {
    if q.y.abs() <= REAL_DIAG_TOL && q.z.abs() <= REAL_DIAG_TOL {
        ([q.w, q.x], false)
    } else {
        let s = if q.x < 0.0 { -1.0 } else { 1.0 };
        ([q.w, s * q.imag_norm()], true)
    }
}

pub fn export_complex_discs(r: &Region) -> Vec<ComplexShape> {
    r.leaves()
        .into_iter()
        .map(|leaf| match *leaf {
            Region::Ball { center, radius } => {
                let (c, projected) = to_plane(center);
                if radius == 0.0 {
                    ComplexShape::Point { center: c, projected }
                } else {
                    ComplexShape::Disc { center: c, radius, projected }
                }
            }
            Region::Cassini { c1, c2, bound } => {
                let (a, pa) = to_plane(c1);
                let (b, pb) = to_plane(c2);
                ComplexShape::Oval { c1: a, c2: b, bound, projected: pa || pb }
            }
            _ => unreachable!("leaves are balls or ovals"),
        })
        .collect()
}

/// Standard eigenvalue as the quaternion `a + b·i`.
pub fn as_quaternion(z: C64) -> Quaternion {
    Quaternion::from_complex(z)
}
