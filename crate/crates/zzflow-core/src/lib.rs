//! Exact combinatorics of the contracted zigzag graph's flow polytope
//! under the length-reverse-length framing: routes and their coherence
//! cliques, groves, integer flows with elementary moves and offset
//! sequences, the dual graph with its grid embedding, and the h*
//! polynomial with the permutation statistics that share it.
//!
//! Everything here is exact enumeration and cross-verification; no
//! floating point, no sampling. The [`verify`] module packages the
//! theorems and conjectures as named checks.

pub mod cliques;
pub mod dual;
pub mod error;
pub mod flows;
pub mod graph;
pub mod groves;
pub mod hstar;
pub mod offsets;
pub mod verify;

mod bitset;

pub use error::{Error, Result};
