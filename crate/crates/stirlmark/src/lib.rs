//! Exact enumeration and verification engine for the combinatorics of
//! Stirling permutations and marked permutations.
//!
//! The crate builds every object family involved (permutations, marked and
//! colored permutations, Stirling permutations in one-line and cycle form,
//! perfect matchings, bicolored increasing binary trees), computes their
//! statistics, implements the bijections and sign-reversing involutions that
//! relate them, and verifies every identity between enumerative polynomials
//! and exponential generating functions by exhaustive enumeration on one side
//! and exact truncated-series arithmetic on the other.
//!
//! All arithmetic is exact: polynomial coefficients are arbitrary-precision
//! rationals, and series are truncated power series in `t` whose coefficients
//! are sparse multivariate polynomials. No floating point is used anywhere.
//!
//! The main entry points are:
//!
//! - [`poly::MPoly`] and [`series::TSeries`] for exact arithmetic,
//! - [`objects`] for object types, validation and text/JSON encodings,
//! - [`stats`] for statistic computation,
//! - [`generate`] for exhaustive deterministic generators,
//! - [`maps`] for the bijections and involutions,
//! - [`named`] for the named generating functions,
//! - [`verify`] for identity checkers that compare an enumerative side
//!   against an analytic side and report a witness on mismatch.
//!
//! Every major capability has a runnable example under `examples/`; the
//! `stirlmark` binary exposes the same functionality as a command line tool.

pub mod generate;
pub mod maps;
pub mod named;
pub mod objects;
pub mod poly;
pub mod series;
pub mod stats;
pub mod verify;
