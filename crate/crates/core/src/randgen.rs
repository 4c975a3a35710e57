//! Seeded random matrix generation for tests and search routines. All
//! functions take an explicit generator handle so runs are reproducible.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::config::Config;
use crate::eig::eigenvalues;
use crate::error::Result;
use crate::matrix::ComplexMatrix;

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Entries are standard complex Gaussians (independent N(0,1) parts).
pub fn complex_gaussian(rng: &mut impl Rng, rows: usize, cols: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| {
        Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    })
}

/// Haar-adjacent random unitary: orthonormalize a complex Gaussian matrix
/// column by column (modified Gram-Schmidt with one reorthogonalization).
pub fn random_unitary(rng: &mut impl Rng, n: usize) -> ComplexMatrix {
    loop {
        let g = complex_gaussian(rng, n, n);
        if let Some(q) = orthonormalize(&g) {
            return q;
        }
        // Exactly dependent Gaussian columns have probability zero, but a
        // retry keeps the function total.
    }
}

fn orthonormalize(g: &ComplexMatrix) -> Option<ComplexMatrix> {
    let n = g.rows();
    let mut q = g.clone();
    for j in 0..n {
        for _ in 0..2 {
            for k in 0..j {
                let mut dot = Complex64::new(0.0, 0.0);
                for i in 0..n {
                    dot += q[(i, k)].conj() * q[(i, j)];
                }
                for i in 0..n {
                    let delta = dot * q[(i, k)];
                    q[(i, j)] -= delta;
                }
            }
        }
        let norm: f64 = (0..n).map(|i| q[(i, j)].norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-12 {
            return None;
        }
        for i in 0..n {
            q[(i, j)] /= norm;
        }
    }
    Some(q)
}

/// U diag(values) U* for a random unitary U: a normal matrix with the
/// prescribed spectrum.
pub fn normal_with_spectrum(
    rng: &mut impl Rng,
    values: &[Complex64],
) -> ComplexMatrix {
    let u = random_unitary(rng, values.len());
    let d = ComplexMatrix::diag(values);
    &(&u * &d) * &u.adjoint()
}

/// Gaussian matrix rescaled so its spectral radius equals the target.
pub fn with_spectral_radius(
    rng: &mut impl Rng,
    n: usize,
    target: f64,
    config: &Config,
) -> Result<ComplexMatrix> {
    assert!(target > 0.0, "spectral radius target must be positive");
    loop {
        let g = complex_gaussian(rng, n, n);
        let rho = eigenvalues(&g, config)?.spectral_radius();
        if rho > 1e-8 {
            return Ok(g.scale(Complex64::new(target / rho, 0.0)));
        }
    }
}

/// Random Hermitian positive semidefinite matrix G*G/n.
pub fn random_psd(rng: &mut impl Rng, n: usize) -> ComplexMatrix {
    let g = complex_gaussian(rng, n, n);
    (&g.adjoint() * &g).scale(Complex64::new(1.0 / n as f64, 0.0))
}
