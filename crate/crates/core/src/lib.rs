//! Exact-arithmetic kernels for computable real closed fields.
//!
//! Everything in this crate is exact: rationals are arbitrary-precision,
//! interval endpoints are rational, and no operation ever rounds through
//! floating point.  The crate is `no_std`-compatible (with `alloc`); all IO,
//! file formats, and the command-line front end live in the companion
//! `rcflab-cli` crate.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod constructions;
pub mod cuts;
pub mod enumeration;
pub mod exactnum;
pub mod nonarch;
pub mod rcf;
pub mod rng;
