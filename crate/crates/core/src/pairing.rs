//! Pairing functions `Nat × Nat ↔ Nat`, k-ary tupling by bit interleaving
//! and the length-prefixed codec for tuples of any arity.
//!
//! Each pairing `J` comes with an unpairing returning both `K(z)` and `L(z)`
//! at once as a [`NatPair`], so `J(K(z), L(z)) = z` reads as
//! `pair(&unpair(z)) == z`.

use std::ops::Deref;

use num_traits::Zero;

use crate::natbits::{self, exp2, set_bits, two_s, MAX_BITS};
use crate::{Error, Natural, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct NatPair {
    pub first: Natural,
    pub second: Natural,
}

impl NatPair {
    pub fn new(first: impl Into<Natural>, second: impl Into<Natural>) -> Self {
        NatPair {
            first: first.into(),
            second: second.into(),
        }
    }
}

impl From<(Natural, Natural)> for NatPair {
    fn from((first, second): (Natural, Natural)) -> Self {
        NatPair { first, second }
    }
}

/// A tuple of arity at least one.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NatTuple(Vec<Natural>);

impl NatTuple {
    pub fn new(items: Vec<Natural>) -> Result<Self> {
        if items.is_empty() {
            return Err(Error::InvalidArity);
        }
        Ok(NatTuple(items))
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn items(&self) -> &[Natural] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<Natural> {
        self.0
    }
}

impl Deref for NatTuple {
    type Target = [Natural];

    fn deref(&self) -> &[Natural] {
        &self.0
    }
}

/// Cantor's pairing `(x+y)(x+y+1)/2 + y`.
pub fn cantor_pair(x: &Natural, y: &Natural) -> Natural {
    let s = x + y;
    ((&s * (&s + 1u32)) >> 1u32) + y
}

pub fn cantor_unpair(z: &Natural) -> NatPair {
    // w is the largest triangular index with w(w+1)/2 <= z
    let root = (z * 8u32 + 1u32).sqrt();
    let w = (root - 1u32) >> 1u32;
    let base = (&w * (&w + 1u32)) >> 1u32;
    let second = z - base;
    let first = w - &second;
    NatPair { first, second }
}

/// Pepis-Kalmar-Robinson pairing `2^x (2y + 1) - 1`.
///
/// Fails with [`Error::TooLarge`] when `x` exceeds [`natbits::MAX_BITS`].
pub fn pepis_pair(x: &Natural, y: &Natural) -> Result<Natural> {
    Ok(exp2(x)? * ((y << 1u32) + 1u32) - 1u32)
}

/// First component is the dyadic valuation of `n + 1`, second is
/// `((n + 1) / 2^first - 1) / 2`.
pub fn pepis_unpair(n: &Natural) -> NatPair {
    let m = n + 1u32;
    let k = two_s(&m).expect("n + 1 is positive");
    // m >> k is odd, so dropping one more bit computes (odd - 1) / 2
    NatPair {
        first: Natural::from(k),
        second: m >> (k + 1),
    }
}

const fn spread(x: u32) -> u64 {
    let mut x = x as u64;
    x = (x | (x << 16)) & 0x0000_FFFF_0000_FFFF;
    x = (x | (x << 8)) & 0x00FF_00FF_00FF_00FF;
    x = (x | (x << 4)) & 0x0F0F_0F0F_0F0F_0F0F;
    x = (x | (x << 2)) & 0x3333_3333_3333_3333;
    x = (x | (x << 1)) & 0x5555_5555_5555_5555;
    x
}

const fn compact(x: u64) -> u32 {
    let mut x = x & 0x5555_5555_5555_5555;
    x = (x | (x >> 1)) & 0x3333_3333_3333_3333;
    x = (x | (x >> 2)) & 0x0F0F_0F0F_0F0F_0F0F;
    x = (x | (x >> 4)) & 0x00FF_00FF_00FF_00FF;
    x = (x | (x >> 8)) & 0x0000_FFFF_0000_FFFF;
    x = (x | (x >> 16)) & 0x0000_0000_FFFF_FFFF;
    x as u32
}

/// Interleaves bits: bit `i` of `first` lands on bit `2i`, bit `j` of
/// `second` on bit `2j + 1`.
pub fn bitmerge_pair(p: &NatPair) -> Natural {
    let a = p.first.to_u32_digits();
    let b = p.second.to_u32_digits();
    let len = a.len().max(b.len());
    let digit = |v: &[u32], i: usize| v.get(i).copied().unwrap_or(0);
    let mut out = Vec::with_capacity(2 * len);
    for i in 0..len {
        let w = spread(digit(&a, i)) | (spread(digit(&b, i)) << 1);
        out.push(w as u32);
        out.push((w >> 32) as u32);
    }
    Natural::new(out)
}

/// Inverse of [`bitmerge_pair`]: even bits form `first`, odd bits `second`.
pub fn bitmerge_unpair(n: &Natural) -> NatPair {
    let (evens, odds): (Vec<u32>, Vec<u32>) = n
        .iter_u64_digits()
        .map(|w| (compact(w), compact(w >> 1)))
        .unzip();
    NatPair {
        first: Natural::new(evens),
        second: Natural::new(odds),
    }
}

/// Splits `n` into `k` components; component `i` collects bits
/// `i, i + k, i + 2k, ...` of `n`.
pub fn to_tuple(k: usize, n: &Natural) -> Result<NatTuple> {
    if k == 0 {
        return Err(Error::InvalidArity);
    }
    if k == 1 {
        return Ok(NatTuple(vec![n.clone()]));
    }
    let k64 = k as u64;
    let mut columns: Vec<Vec<u64>> = vec![Vec::new(); k];
    for p in set_bits(n) {
        columns[(p % k64) as usize].push(p / k64);
    }
    Ok(NatTuple(
        columns.into_iter().map(natbits::from_set_bits).collect(),
    ))
}

/// Merges the bits of `ns`, `k = ns.len()` at a time; inverse of
/// [`to_tuple`] at arity `k`.
pub fn from_tuple(ns: &[Natural]) -> Result<Natural> {
    let k = ns.len() as u64;
    match ns {
        [] => return Err(Error::InvalidArity),
        [x] => return Ok(x.clone()),
        _ => {}
    }
    let width = ns.iter().map(|x| x.bits()).max().unwrap_or(0);
    if width.saturating_mul(k) > MAX_BITS {
        return Err(Error::TooLarge {
            exponent: Natural::from(width) * k,
        });
    }
    Ok(natbits::from_set_bits(ns.iter().enumerate().flat_map(
        |(i, x)| set_bits(x).map(move |j| j * k + i as u64),
    )))
}

/// Encodes a tuple of any length by pairing `length - 1` with the merged
/// bits: `[] ↦ 0`, otherwise `pepis_pair(len - 1, from_tuple(ns))`.
///
/// `[0]` is rejected: it would also encode to 0.
pub fn ftuple2nat(ns: &[Natural]) -> Result<Natural> {
    match ns {
        [] => Ok(Natural::zero()),
        [x] if x.is_zero() => Err(Error::NonCanonicalTuple),
        _ => pepis_pair(&Natural::from(ns.len() - 1), &from_tuple(ns)?),
    }
}

/// Inverse of [`ftuple2nat`]; never yields `[0]`.
pub fn nat2ftuple(n: &Natural) -> Vec<Natural> {
    if n.is_zero() {
        return Vec::new();
    }
    let NatPair { first, second } = pepis_unpair(n);
    let arity = usize::try_from(&first).expect("dyadic valuation fits in usize") + 1;
    to_tuple(arity, &second).expect("arity >= 1").into_vec()
}
