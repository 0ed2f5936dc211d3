//! Seeded randomness for test data: Gaussian matrices and Haar-random unitaries.

use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::tensor::{c, ComplexMatrix, ComplexVector, C64};

pub struct Rng(ChaCha8Rng);

impl Rng {
    pub fn seeded(seed: u64) -> Self {
        Rng(ChaCha8Rng::seed_from_u64(seed))
    }

    pub fn normal(&mut self) -> f64 {
        StandardNormal.sample(&mut self.0)
    }

    pub fn gaussian(&mut self) -> C64 {
        c(self.normal(), self.normal()) * std::f64::consts::FRAC_1_SQRT_2
    }

    pub fn below(&mut self, n: usize) -> usize {
        use rand::Rng as _;
        self.0.random_range(0..n)
    }
}

pub fn random_vector(rng: &mut Rng, n: usize) -> ComplexVector {
    ComplexVector::from_fn(n, |_, _| rng.gaussian())
}

pub fn random_matrix(rng: &mut Rng, r: usize, cols: usize) -> ComplexMatrix {
    DMatrix::from_fn(r, cols, |_, _| rng.gaussian())
}

/// Haar-distributed unitary: QR of a Gaussian matrix with the phases of R
/// moved into Q.
pub fn random_unitary(rng: &mut Rng, n: usize) -> ComplexMatrix {
    let g = random_matrix(rng, n, n);
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { c(1.0, 0.0) };
        for i in 0..n {
            q[(i, j)] *= phase;
        }
    }
    q
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::unitarity_residual;

    #[test]
    fn random_unitary_is_unitary() {
        let mut rng = Rng::seeded(11);
        for n in 1..6 {
            assert!(unitarity_residual(&random_unitary(&mut rng, n)) < 1e-13);
        }
    }

    #[test]
    fn seeding_is_deterministic() {
        let a = random_matrix(&mut Rng::seeded(5), 3, 3);
        let b = random_matrix(&mut Rng::seeded(5), 3, 3);
        assert_eq!(a, b);
    }
}
