//! Exact Chow and augmented Chow polynomials of finite graded posets.
//!
//! Flag statistics come from chain counting over the poset, the polynomials
//! from their isolated-subset expansion, and every real-rootedness or
//! interlacing verdict is decided exactly with Sturm sequences over big
//! rationals. A recursive family of descent-generating polynomials provides
//! an independent route to the same gamma expansions and the interlacing
//! diagrams that certify them.

pub mod chow;
pub mod classical;
pub mod descent;
pub mod format;
pub mod fuzz;
pub mod golden;
pub mod interlace;
pub mod poly;
pub mod poset;
pub mod rng;
pub mod roots;
pub mod sets;
