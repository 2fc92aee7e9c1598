//! Exact computations in `SL_n(Z)` and its congruence quotients.
//!
//! - [`matrix`]: arbitrary-precision integer matrices.
//! - [`modular`]: moduli with CRT factorization, matrices over `Z/N`,
//!   enumeration of `SL_n(Z/N)` and its order formula.
//! - [`words`]: elementary generators and decomposition over `Z`, `Z/p^k`
//!   and `Z/N`, plus lifting from `SL_n(Z/N)` to `SL_n(Z)`.
//! - [`congruence`]: principal congruence subgroups `Γ(N)`.
//! - [`torsion`]: exact orders, torsion spectra, the Minkowski probe.
//! - [`residual`]: the quotient maps `Γ(p^k) → sl_n(Z/p)` and finite-quotient
//!   witnesses.
//! - [`cli`]: the command-line front end.
//!
//! Matrices use a compact text format: rows separated by `;`, entries by
//! `,` (`"1,2;0,1"`); matrices over `Z/N` append `" mod N"`.

pub mod cli;
pub mod congruence;
pub mod error;
pub mod matrix;
pub mod modular;
pub mod residual;
pub mod selfcheck;
pub mod torsion;
pub mod words;

pub use congruence::{gamma_index, gamma_level, gamma_member, sample_gamma, successive_quotient_order, Level};
pub use error::{Error, Result};
pub use matrix::{mat_det, mat_inv_sl, mat_mul, sample_sl, IntMatrix, MatrixUnit};
pub use modular::{crt_split, enumerate_sl, mod_reduce, sl_order_formula, ModMatrix, Modulus};
pub use residual::{
    phi_general, phi_k, phi_preimage, power_congruence_check, witness_p, witness_rf, CongruenceWitness,
    TracelessMatrix,
};
pub use torsion::{candidate_orders, matrix_order, minkowski_probe, mod_spectrum, spectrum_bound, OrderResult, TorsionSpectrum};
pub use words::{decompose_int, decompose_local, decompose_mod, eval_word, lift_to_int, ElementaryGen, ElementaryWord, Ring};
