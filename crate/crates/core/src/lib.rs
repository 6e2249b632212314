//! Exact-arithmetic models for the combinatorial shadow of category O of the
//! cyclotomic rational Cherednik algebra attached to the wreath product
//! G(l,1,n) = (Z/l) wr S_n.
//!
//! Everything here is computed over exact scalar rings: rationals, the
//! cyclotomic field Q(zeta_l), Laurent polynomials in a formal parameter
//! kappa, and Laurent polynomials in the quantum parameters q and v.  There
//! is no floating point anywhere.
//!
//! The main layers, bottom to top:
//!
//! * [`partition`] / [`multipartition`] — l-multipartitions, boxes, hooks,
//!   residues, transposes, dominance, and the canonical column-lexicographic
//!   enumeration.
//! * [`scalar`] — the coefficient ring Q(zeta_l)[kappa, kappa^-1] with a
//!   symbolic or a fixed rational kappa.
//! * [`params`] — Cherednik parameters (kappa, s), the spherical /
//!   aspherical classification, faithfulness, and charge normal forms.
//! * [`characters`] — c-functions, fake degrees, and graded characters of
//!   standard modules.
//! * [`kgroup`] — the K-group shadow: restriction / induction matrices and
//!   the joint injectivity test for ([Res], graded character).
//! * [`crystal`] / [`fock`] — the level-l Fock space: crystal operators and
//!   the quantum gl_infinity action.
//! * [`canonical`] — bar involution via the quasi-R-matrix, dual canonical
//!   basis, decomposition matrices, radical filtrations, Gram forms.
//! * [`kl`] — independent Kazhdan-Lusztig-polynomial oracles used to
//!   cross-check the canonical basis.
//! * [`bridge`] — the dictionary between multipartitions and column-strict
//!   tableaux labelling simples in a parabolic category O of gl_N.

pub mod bridge;
pub mod canonical;
pub mod caps;
pub mod characters;
pub mod crystal;
pub mod cyclotomic;
pub mod error;
pub mod fock;
pub mod kgroup;
pub mod kl;
pub mod laurent;
pub mod linalg;
pub mod multipartition;
pub mod params;
pub mod partition;
pub mod perm;
pub mod scalar;
pub mod verify;

pub use caps::Caps;
pub use error::{Error, Result};
pub use laurent::LaurentPoly;
pub use multipartition::{BoxPos, Multipartition};
pub use params::Charge;
pub use partition::Partition;
pub use scalar::{Kappa, Scalar};
