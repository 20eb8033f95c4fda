//! Computations for equivariant Boij-Söderberg theory on Grassmannians.
//!
//! The crate works with `GL_k`-equivariant Betti tables over the coordinate
//! ring of `k × n` matrices and with `GL`-cohomology tables of sheaves on
//! `Gr(k, n)`. Everything is exact: integers are arbitrary precision and table
//! entries are rationals.
//!
//! Module map:
//!
//! - [`young`]: partitions, weakly decreasing integer sequences, tableau counts
//!   and `GL(k)` dimensions.
//! - [`tables`]: Betti, rank Betti and cohomology tables plus their JSON form.
//! - [`herzog_kuhl`]: Stanley's change-of-basis coefficients, the equivariant
//!   Herzog-Kühl system and the pure-table enumerator.
//! - [`graph`]: Betti graphs of square-matrix rank tables, derived-cone
//!   membership with decompositions or Hall certificates.
//! - [`pairing`]: the Betti × cohomology pairing and a Borel-Weil-Bott
//!   calculator for probe bundles.
//! - [`homology_matcher`]: perfect matchings read off from invertible maps,
//!   exact complexes and filtered double complexes.

pub mod graph;
pub mod herzog_kuhl;
pub mod homology_matcher;
pub mod linalg;
pub mod matching;
pub mod pairing;
pub mod rational;
pub mod tables;
pub mod young;

pub use rational::Rational;
pub use tables::{BettiTable, CohomologyTable, RankBettiTable, SchurVector};
pub use young::{IntSeq, Partition};
