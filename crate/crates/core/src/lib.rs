//! Bijective encodings between natural numbers and combinatorial objects.
//!
//! Every codec in this crate is a pair of mutually inverse functions between
//! [`Natural`] and some family of finite structures:
//!
//! - [`setfun`]: finite sets (Ackermann's flat step), finite functions and
//!   run-length encodings of bit strings,
//! - [`pairing`]: Cantor, Pepis and bit-merge pairings, k-ary tupling and
//!   the length-prefixed tuple codec,
//! - [`permcodec`]: factoradics, Lehmer codes and permutations of any size,
//! - [`hftree`]: the generic rose tree with `unrank` (unfold) and `rank`
//!   (fold), lifting each flat codec to a hereditarily finite universe.
//!
//! ```
//! use hfcodec_core::{hftree::{self, Codec}, Natural};
//!
//! let codec = Codec::hfs(0u32);
//! let tree = hftree::unrank(&codec, &Natural::from(42u32));
//! assert_eq!(hftree::rank(&codec, &tree).unwrap(), Natural::from(42u32));
//! ```

mod error;
pub mod hftree;
pub mod natbits;
pub mod pairing;
pub mod permcodec;
pub mod setfun;

pub use error::{Error, Result};

/// Unbounded non-negative integer; the rank domain of every codec.
pub use num_bigint::BigUint as Natural;
