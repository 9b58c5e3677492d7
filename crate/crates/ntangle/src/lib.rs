//! Degree-4 polynomial SLOCC invariants of odd-n qubit pure states.
//!
//! For an n-qubit state with amplitudes `a_0 .. a_{2^n - 1}` (qubit 1 in the
//! most significant bit) and odd n, the crate evaluates the family
//!
//! ```text
//! Z^k = B(X at k)^2 + B(Z at k)^2 - B(I at k)^2,    k = 1..n,
//! ```
//!
//! where `B(op at k)` is the conjugation-free bilinear pairing `a^T (O a)`
//! of the operator string carrying `op` at slot k and the spin flip
//! `T = i sigma_y` everywhere else (see [`pauli`] for why the unconjugated
//! pairing is the right normalization). Each Z^k is a degree-4 homogeneous
//! polynomial in the amplitudes and picks up the factor `(prod_m det A_m)^2`
//! under local invertible transforms `A_1 x .. x A_n`.
//!
//! What the crate provides, per module:
//!
//! - [`state`]: statevector values, JSON file I/O, named states, seeded
//!   Haar-random sampling.
//! - [`pauli`]: the four operator labels, the bit-stride one-qubit kernel,
//!   and the bilinear pairing.
//! - [`invariants`]: matrix-free Z^k / tau_k evaluation, tabulated
//!   closed-form routes for n = 3 and 5, and the hyperdeterminant-based
//!   residual tangle for three qubits.
//! - [`slocc`]: conditioned random invertible transforms and covariance
//!   residuals.
//! - [`symbolic`]: exact integer-coefficient expansion of the forms, which
//!   settles the three-qubit equality `Z^1 = Z^2 = Z^3` and the five-qubit
//!   pairwise inequality at the coefficient level.
//! - [`cli`]: the `ntangle` binary surface (compute / verify /
//!   counterexample / symbolic-check).
//!
//! The runnable `examples/` directory walks through each capability.

pub mod cli;
pub mod error;
pub mod invariants;
pub mod pauli;
pub mod slocc;
pub mod state;
pub mod symbolic;
mod tables;

pub use error::{Error, Result};
pub use invariants::{tau_k, z_all, z_invariant, InvariantReport};
pub use state::QubitState;
