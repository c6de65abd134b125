//! Seeded inputs for the benchmarks.

use quatloc::{QMatrix, QPolynomial, Quaternion, Side};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const SIZES: [usize; 4] = [4, 8, 16, 32];
pub const DEGREES: [usize; 3] = [3, 6, 12];

fn quaternion(rng: &mut ChaCha8Rng) -> Quaternion {
    Quaternion::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

pub fn matrix(n: usize, seed: u64) -> QMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    QMatrix::from_fn(n, |_, _| quaternion(&mut rng))
}

/// Like [`matrix`] with a real diagonal, for the right-eigenvalue regions.
pub fn real_diagonal_matrix(n: usize, seed: u64) -> QMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    QMatrix::from_fn(n, |i, j| if i == j { Quaternion::real(rng.gen_range(-4.0..4.0)) } else { quaternion(&mut rng) })
}

pub fn polynomial(side: Side, degree: usize, seed: u64) -> QPolynomial {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut lower: Vec<Quaternion> = (0..degree).map(|_| quaternion(&mut rng)).collect();
    // keep the constant term away from zero so every lower bound is informative
    lower[0] = lower[0] + Quaternion::real(2.0);
    QPolynomial::monic(side, &lower).expect("monic")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inputs_are_deterministic() {
        assert_eq!(matrix(5, 3), matrix(5, 3));
        assert_ne!(matrix(5, 3), matrix(5, 4));
        assert!(real_diagonal_matrix(6, 1).diagonal().iter().all(|d| d.is_real(0.0)));
        assert_eq!(polynomial(Side::Left, 6, 2).degree(), 6);
    }
}
