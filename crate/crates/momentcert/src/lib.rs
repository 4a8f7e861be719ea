//! Exact-arithmetic toolkit for pseudo-moment certificates.
//!
//! A pseudo-moment certificate is a linear functional `l_y` on forms of
//! degree 2d that is nonnegative on every square (its moment matrix
//! `M_d(y)` is positive semidefinite) yet strictly negative on a given
//! form `p` — an irrefutable proof that `p` is not a sum of squares.
//!
//! Everything here is computed over arbitrary-precision rationals (and,
//! where convex decompositions demand it, over `Q(sqrt 2)`); there is no
//! floating point anywhere on a verification path. The crate provides
//!
//! - [`exactnum`]: big rationals and the quadratic extension with exact
//!   sign determination,
//! - [`linalg`]: rank, kernel bases, characteristic polynomials and
//!   positive-semidefiniteness tests for symmetric matrices,
//! - [`forms`]: graded-lex monomial bases, sparse forms, and the four
//!   classical positive non-SOS forms (Motzkin, Robinson, the Reznick
//!   octic, Choi-Lam),
//! - [`moments`]: moment matrices, the extreme-ray rank test, and the
//!   certificate verifier,
//! - [`symmetry`]: signed-permutation group actions, Reynolds averaging,
//!   orbit-parameter embeddings and block diagonalization,
//! - [`generators`]: the constructive certificate generators and
//!   enumeration routines for the four forms.
//!
//! The crate is `no_std` (with `alloc`); IO, file formats and the CLI
//! live in the companion `momentcert-cli` crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod exactnum;
pub mod forms;
pub mod generators;
pub mod linalg;
pub mod moments;
pub mod symmetry;

pub use exactnum::{QuadExt, Rational, Scalar};
pub use forms::{Form, FormId, FormSpace, MultiIndex};
pub use moments::{ExtremalityWitness, MomentMatrix, PseudoMomentVector, VerificationReport};
pub use symmetry::{OrbitParams, SignedPermutation};

