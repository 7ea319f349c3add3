//! Exact computation of generic orders and Sylow `ℓ`-subgroup structure of
//! finite reductive groups.
//!
//! A finite reductive group is specified by a list of quasi-simple factors
//! (series, rank, twist, descent factor) together with a real parameter
//! `q = p^(a/η)`, where `η = 2` exactly for the Suzuki and Ree groups.  From
//! this data the crate computes:
//!
//! * the factored generic order `q^N · ∏ Φ(q^n)^{n_Φ}` over cyclotomic or
//!   `q`-cyclotomic polynomials ([`order`]),
//! * for a prime `ℓ ≠ p`, the structure of a Sylow `ℓ`-subgroup: the integers
//!   `d(ℓ)` and `D(ℓ)`, the distinguished factor `Φ`, the abelian torus layer
//!   and the complex reflection group `W_Φ` on top of it ([`analyzer`]),
//! * exact integer-lattice realizations of the same objects (reflection
//!   representations, Smith normal forms, eigenspace searches) used as an
//!   independent route to the torus structure ([`lattice`]),
//! * and ground truth by brute force: enumeration of small classical matrix
//!   groups over finite fields and explicit Sylow subgroup construction
//!   ([`oracle`]).
//!
//! Everything is exact; there is no floating point anywhere in the crate.

pub mod analyzer;
pub mod arith;
pub mod cyclofield;
pub mod cyclotomic;
pub mod group_data;
pub mod lattice;
pub mod oracle;
pub mod order;
pub mod poly;

mod error;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
