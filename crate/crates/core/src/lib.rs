//! Exact verification of subset-sum bounds for m-covers.
//!
//! A finite system of residue classes `a_s(n_s)` is an *m-cover* of the
//! integers when every integer lies in at least `m` of the classes. For such
//! a system and any integer weights `m_s`, each fractional part reached by a
//! subset sum `Σ_{s∈I} m_s/n_s` is reached by at least `2^m` subsets. This
//! crate computes those counts exactly and checks the bound together with
//! its consequences, and does the same for residue classes `α + βO_K` in
//! rings of integers `O_K = Z[γ]`.
//!
//! * [`arith`]: rationals, lcm, Hermite normal form
//! * [`cover`]: residue classes, covering function, multiplicity
//! * [`spectrum`]: subset-count tables and the integer-side verifiers
//! * [`construct`]: explicit extremal and unsplittable systems
//! * [`field`]: number-field arithmetic and the `O_K` verifiers
//! * [`cli`]: the `coverkit` command-line front end

pub mod arith;
pub mod cli;
pub mod construct;
pub mod cover;
pub mod error;
pub mod field;
pub mod report;
pub mod spectrum;
mod subset_dp;

pub use arith::{frac_part, lcm_all, IntMatrix, Rational};
pub use cover::{CoverSystem, ResidueClass};
pub use error::{Error, Result};
pub use field::{NFCoverSystem, NFElement, NFResidueClass, NumberField};
pub use report::Verdict;
pub use spectrum::{ExtendedSpectrumReport, SpectrumReport};
