//! Flat bijections behind Ackermann's encoding: finite sets of naturals,
//! finite functions (via prefix sums) and run-length encodings.

use std::ops::Deref;

use num_traits::{ToPrimitive, Zero};

use crate::natbits::{self, exponent, set_bits, BitList, MAX_BITS};
use crate::{Error, Natural, Result};

/// A finite set of naturals, stored as a strictly increasing sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct NatSet(Vec<Natural>);

impl NatSet {
    pub fn new(elems: Vec<Natural>) -> Result<Self> {
        if let Some(index) = elems.windows(2).position(|w| w[0] >= w[1]) {
            return Err(Error::InvalidSet { index: index + 1 });
        }
        Ok(NatSet(elems))
    }

    pub fn elems(&self) -> &[Natural] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<Natural> {
        self.0
    }
}

impl Deref for NatSet {
    type Target = [Natural];

    fn deref(&self) -> &[Natural] {
        &self.0
    }
}

/// `Σ 2^e` over the elements.
pub fn set2nat(s: &NatSet) -> Result<Natural> {
    let positions = s.iter().map(exponent).collect::<Result<Vec<u64>>>()?;
    Ok(natbits::from_set_bits(positions))
}

/// Exponents of the set bits of `n`, increasing.
pub fn nat2set(n: &Natural) -> NatSet {
    NatSet(set_bits(n).map(Natural::from).collect())
}

/// Prefix sums of `f(i) + 1`, each decremented; always strictly increasing.
pub fn fun2set(f: &[Natural]) -> NatSet {
    let mut acc = Natural::zero();
    let elems = f
        .iter()
        .map(|v| {
            acc += v + 1u32;
            &acc - 1u32
        })
        .collect();
    NatSet(elems)
}

/// Gaps between consecutive elements (the first measured from -1).
pub fn set2fun(s: &NatSet) -> Vec<Natural> {
    let mut next = Natural::zero();
    s.iter()
        .map(|x| {
            let gap = x - &next;
            next = x + 1u32;
            gap
        })
        .collect()
}

pub fn fun2nat(f: &[Natural]) -> Result<Natural> {
    set2nat(&fun2set(f))
}

pub fn nat2fun(n: &Natural) -> Vec<Natural> {
    set2fun(&nat2set(n))
}

/// Run-length encodes a bit list: a run of `m` equal bits becomes `m - 1`.
pub fn bits2rle(bits: &[u8]) -> Vec<Natural> {
    bits.chunk_by(|a, b| a == b)
        .map(|run| Natural::from(run.len() - 1))
        .collect()
}

/// Inverse of [`bits2rle`] on bit lists ending in 1: the last run is ones
/// and runs alternate towards the front.
pub fn rle2bits(runs: &[Natural]) -> Result<BitList> {
    let mut lens = Vec::with_capacity(runs.len());
    let mut total = 0u64;
    for r in runs {
        let len = r
            .to_u64()
            .and_then(|x| x.checked_add(1))
            .filter(|x| total + x <= MAX_BITS)
            .ok_or_else(|| Error::TooLarge {
                exponent: Natural::from(total) + r,
            })?;
        total += len;
        lens.push(len as usize);
    }
    let mut bits = Vec::with_capacity(total as usize);
    let last = lens.len();
    for (i, len) in lens.into_iter().enumerate() {
        let bit = ((last - 1 - i) % 2 == 0) as u8;
        bits.extend(std::iter::repeat_n(bit, len));
    }
    Ok(bits)
}

pub fn nat2rle(n: &Natural) -> Vec<Natural> {
    bits2rle(&natbits::to_rbits0(n))
}

pub fn rle2nat(runs: &[Natural]) -> Result<Natural> {
    natbits::from_rbits(&rle2bits(runs)?)
}
