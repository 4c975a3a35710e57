//! Dense complex operator-equation toolkit.
//!
//! The crate solves four families of matrix equations (`AX - XB = C`,
//! `AXB - CXD = E`, `T1 X T2 - X = Y`, and `A*XA + t AXA = Y`) by every
//! route whose hypotheses the inputs satisfy: direct Kronecker solves,
//! resolvent contour integrals, exponential integrals, and operator
//! series. Around the solvers sit the supporting pieces: spectral
//! separation diagnostics, similarity certificates for solvability, a
//! numerical checker for the adjoint-intertwining property, operator
//! class predicates, and Schatten-norm commutator approximation.
//!
//! Everything is pure and deterministic: randomness enters only through
//! explicitly seeded generators, and every solver re-substitutes its
//! answer into the equation and reports the residual as evidence.
//!
//! Matrices are dense, complex, and desk-scale; the numerical kernels
//! (LU, QR eigenvalues, Jacobi SVD, Pade exponential) live here too and
//! carry their own accuracy tests.

pub mod approx;
pub mod config;
pub mod eig;
pub mod error;
pub mod expm;
pub mod kron;
pub mod lu;
pub mod matrix;
pub mod randgen;
pub mod rothfp;
pub mod schatten;
pub mod separation;
pub mod solve;
pub mod svd;

pub use config::Config;
pub use error::{Error, Result};
pub use matrix::ComplexMatrix;
