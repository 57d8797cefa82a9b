//! Exact counting of maximal matchings in polygon chains and polygon rings.
//!
//! A polygon chain is a row of polygonal faces, consecutive faces glued
//! along one shared edge; a polygon ring closes the row back on itself. Face
//! shapes are written `t(s,k)`: a face with `s` sides whose exiting shared
//! edge sits `k` edges past the entering one. Counting maximal matchings on
//! these graphs reduces to a product of 9x9 transfer matrices — one matrix
//! per face shape — so counts for rings with tens of thousands of faces are
//! exact and fast, while a brute-force enumeration oracle provides the
//! ground truth on small instances.
//!
//! The crate is `no_std` (it allocates, counts are arbitrary-precision).
//!
//! ```
//! use polymatch::{count_ring, parse_ring, MatrixCache};
//!
//! let spec = parse_ring("t(2)t(3)t(3)t(1)t(3)t(3)t(3)t(2)t(2)t(3)t(3)").unwrap();
//! let mut cache = MatrixCache::new();
//! assert_eq!(count_ring(&spec, &mut cache).to_string(), "2804280");
//! ```

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod matgen;
pub mod notation;
pub mod oracle;
pub mod polygraph;
pub mod transfer;

/// Arbitrary-precision count.
pub type Count = num_bigint::BigUint;

pub use notation::{parse_chain, parse_ring, ChainSpec, FaceSpec, ParseError, RingSpec};
pub use oracle::{count_maximal, mm_vector, ConstraintSet, MMVector};
pub use polygraph::{build_chain, build_gadget, build_ring, Graph, MarkedGraph};
pub use transfer::{chain_vector, count_chain, count_cycle, count_ring, MatrixCache, TransferMatrix};
