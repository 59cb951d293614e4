//! Exact computational toolkit for product-set growth in `SL(2,p)`.
//!
//! Builds symmetric generating subsets `S` of `SL(2,p)` with small triple
//! product `S³`, measures the growth ratio `Δ(S) = log|S³| / log|S|`, and
//! checks the structural facts behind the constructions:
//!
//! * exact arithmetic in `F_p`, including square roots and elements of
//!   prescribed multiplicative order ([`field`]),
//! * full enumeration of `SL(2,p)` with a stable dense index ([`sl2`]),
//! * dense bit-vector set algebra: products, triple products, subgroup
//!   closure, double cosets and coset cores ([`growth`]),
//! * the subgroup catalog (triangular, cyclic, generalized quaternion and
//!   the exceptional double covers) together with the subgroup-plus-two and
//!   subgroup-plus-coset-core set constructions ([`constructions`]),
//! * an exhaustive symmetry-pruned backtrack search over symmetric subsets
//!   of `SL(2,5)` ([`search`]),
//! * local-minimum verification by add/remove/swap perturbations
//!   ([`perturb`]).
//!
//! The [`verify`] module bundles the full battery of reproduction checks
//! behind one entry point; the companion CLI crate exposes it as
//! `sl2-growth verify-all`.

pub mod constructions;
mod error;
pub mod field;
pub mod growth;
pub mod perturb;
pub mod search;
pub mod sl2;
pub mod verify;

pub use error::{Error, Result};
