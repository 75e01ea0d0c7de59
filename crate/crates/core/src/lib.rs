//! Garside-theoretic invariants of finite non-degenerate involutive
//! set-theoretic solutions of the Yang-Baxter equation.
//!
//! Given a solution (X, r) with |X| = n, encoded by the permutations
//! sigma_x, this crate computes:
//!
//! - the diagonal map D, the class m, condition (C), frozen words and
//!   the retraction tower ([`solution`]);
//! - the germ of m^n simple elements Div(Delta^{m-1}) and faithful group
//!   arithmetic on pi-vectors in Z^n ([`group`]);
//! - the left-brace structure: brace addition, lambda maps, the socle
//!   ([`brace`]);
//! - the affine matrix representation psi, the exact dimension and a
//!   basis of the image of the induced algebra homomorphism ([`rep`]);
//! - independent brute-force cross-checks ([`oracle`]).
//!
//! All linear algebra is exact (arbitrary-precision rationals); there is
//! no floating point anywhere in the crate.

pub mod brace;
pub mod error;
pub mod group;
pub mod oracle;
pub mod perm;
pub mod rep;
pub mod solution;

pub use error::{Error, Result};
