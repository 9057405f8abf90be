//! Monotone-path reachability in Barak–Erdős random graphs.
//!
//! A Barak–Erdős graph on vertices `1, 2, 3, ...` contains each forward edge
//! `(i, j)`, `i < j`, independently with probability `p`. This crate computes
//! the probability that vertex `n` is reachable from vertex `1` along an
//! increasing path in three independent ways:
//!
//! * [`exact`]: the Markov chain of the number of reachable vertices,
//!   propagated exactly, plus a brute-force enumerator for tiny graphs;
//! * [`gap`]: Monte Carlo over the independent geometric gaps between
//!   consecutive reachable vertices;
//! * [`asymptotics`]: the closed-form limit law inside the critical window
//!   `p = (log n - log log n + x) / n`.
//!
//! [`stats`] holds the goodness-of-fit machinery used to compare them, and
//! [`rng`] the reproducible per-trial random streams and variate samplers.
//!
//! The crate is `no_std` and only needs `alloc`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod asymptotics;
mod error;
pub mod exact;
pub mod gap;
pub mod math;
pub mod rng;
pub mod stats;

pub use error::{Error, Result};
