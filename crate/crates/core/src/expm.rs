//! Matrix exponential by Pade approximation with scaling and squaring.

use num_complex::Complex64;

use crate::config::Config;
use crate::lu::Lu;
use crate::matrix::ComplexMatrix;

/// Degree-13 Pade coefficients for exp; the unscaled approximant is accurate
/// to double precision whenever the 1-norm is at most THETA13.
const PADE13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];
const THETA13: f64 = 5.371920351148152;

/// exp(M) for any square complex M. Always converges on finite input; the
/// relative accuracy target is config.exp_tol.
pub fn matrix_exp(m: &ComplexMatrix, config: &Config) -> ComplexMatrix {
    assert!(m.is_square(), "matrix_exp of a non-square matrix");
    let n = m.rows();
    let norm = m.norm_one();
    let squarings = if norm > THETA13 {
        (norm / THETA13).log2().ceil() as u32
    } else {
        0
    };
    let scaled = m.scale(Complex64::new(0.5f64.powi(squarings as i32), 0.0));

    let ident = ComplexMatrix::identity(n);
    let a2 = &scaled * &scaled;
    let a4 = &a2 * &a2;
    let a6 = &a2 * &a4;

    let lin = |c6: f64, c4: f64, c2: f64, c0: f64| -> ComplexMatrix {
        let mut acc = ident.scale(Complex64::new(c0, 0.0));
        acc = &acc + &a2.scale(Complex64::new(c2, 0.0));
        acc = &acc + &a4.scale(Complex64::new(c4, 0.0));
        &acc + &a6.scale(Complex64::new(c6, 0.0))
    };

    let u_inner = lin(PADE13[13], PADE13[11], PADE13[9], PADE13[7]);
    let u = &scaled * &(&(&a6 * &u_inner) + &lin(0.0, PADE13[5], PADE13[3], PADE13[1]));
    let v_inner = lin(PADE13[12], PADE13[10], PADE13[8], PADE13[6]);
    let v = &(&a6 * &v_inner) + &lin(0.0, PADE13[4], PADE13[2], PADE13[0]);

    // exp(scaled) ~ (V - U)^{-1} (V + U). V - U is provably nonsingular in
    // this norm regime, so the factorization cannot fail here.
    let lhs = &v - &u;
    let rhs = &v + &u;
    let factored = Lu::factor(&lhs, config.rank_tol.min(1e-14))
        .expect("pade denominator is nonsingular for a scaled input");
    let mut e = factored.solve(&rhs);
    for _ in 0..squarings {
        e = &e * &e;
    }
    e
}
