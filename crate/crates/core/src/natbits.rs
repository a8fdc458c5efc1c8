//! Natural-number primitives: base conversion, little-endian bit lists and
//! bit counting.
//!
//! Bit lists are little-endian: index `i` holds the coefficient of `2^i`.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::{Error, Natural, Result};

/// Largest bit length a computed result may have (2^30 bits, 128 MiB).
///
/// Exponents arriving from user data (set elements, Pepis first components,
/// run lengths) are checked against this before anything is allocated.
pub const MAX_BITS: u64 = 1 << 30;

/// Little-endian list of binary digits.
pub type BitList = Vec<u8>;

/// Digits of a number in an explicit base, least significant first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DigitList {
    base: Natural,
    digits: Vec<Natural>,
}

impl DigitList {
    /// Validates `base >= 2` and `digit < base` for every digit.
    pub fn new(base: Natural, digits: Vec<Natural>) -> Result<Self> {
        check_base(&base)?;
        if let Some((index, digit)) = digits.iter().enumerate().find(|(_, d)| **d >= base) {
            return Err(Error::InvalidDigit {
                index,
                digit: digit.clone(),
                base,
            });
        }
        Ok(DigitList { base, digits })
    }

    pub fn base(&self) -> &Natural {
        &self.base
    }

    pub fn digits(&self) -> &[Natural] {
        &self.digits
    }

    pub fn into_digits(self) -> Vec<Natural> {
        self.digits
    }

    /// The number these digits denote.
    pub fn value(&self) -> Natural {
        horner(&self.base, &self.digits)
    }
}

fn check_base(base: &Natural) -> Result<()> {
    if *base < BigUint::from(2u32) {
        return Err(Error::InvalidBase(base.clone()));
    }
    Ok(())
}

fn horner(base: &Natural, digits: &[Natural]) -> Natural {
    digits
        .iter()
        .rev()
        .fold(Natural::zero(), |acc, d| acc * base + d)
}

/// Digits of `n` in `base`, least significant first. Zero is `[0]`; for
/// `n > 0` the last digit is nonzero.
pub fn to_base(base: &Natural, n: &Natural) -> Result<DigitList> {
    check_base(base)?;
    let digits = if n.is_zero() {
        vec![Natural::zero()]
    } else if let Some(shift) = power_of_two_exponent(base).filter(|s| *s <= 64) {
        chunk_bits(n, shift)
    } else {
        let mut digits = Vec::new();
        let mut rest = n.clone();
        while !rest.is_zero() {
            let (q, r) = rest.div_rem(base);
            digits.push(r);
            rest = q;
        }
        digits
    };
    Ok(DigitList {
        base: base.clone(),
        digits,
    })
}

fn power_of_two_exponent(base: &Natural) -> Option<u64> {
    (base.count_ones() == 1).then(|| base.bits() - 1)
}

/// Splits the bits of `n > 0` into consecutive `width`-bit chunks.
fn chunk_bits(n: &Natural, width: u64) -> Vec<Natural> {
    let total = n.bits();
    let count = total.div_ceil(width);
    (0..count)
        .map(|c| {
            let lo = c * width;
            let hi = (lo + width).min(total);
            let mut d = 0u64;
            for pos in lo..hi {
                if n.bit(pos) {
                    d |= 1 << (pos - lo);
                }
            }
            Natural::from(d)
        })
        .collect()
}

/// `Σ digits[i] * base^i`; fails on `base < 2` or a digit `>= base`.
pub fn from_base(base: &Natural, digits: &[Natural]) -> Result<Natural> {
    check_base(base)?;
    if let Some((index, digit)) = digits.iter().enumerate().find(|(_, d)| *d >= base) {
        return Err(Error::InvalidDigit {
            index,
            digit: digit.clone(),
            base: base.clone(),
        });
    }
    Ok(horner(base, digits))
}

/// Bits of `n`, least significant first; zero is `[0]`.
pub fn to_rbits(n: &Natural) -> BitList {
    if n.is_zero() {
        return vec![0];
    }
    (0..n.bits()).map(|i| n.bit(i) as u8).collect()
}

/// Like [`to_rbits`] except that zero maps to the empty list.
pub fn to_rbits0(n: &Natural) -> BitList {
    if n.is_zero() {
        Vec::new()
    } else {
        to_rbits(n)
    }
}

pub fn from_rbits(bits: &[u8]) -> Result<Natural> {
    let mut n = Natural::zero();
    for (index, &b) in bits.iter().enumerate() {
        match b {
            0 => {}
            1 => n.set_bit(index as u64, true),
            _ => {
                return Err(Error::InvalidDigit {
                    index,
                    digit: Natural::from(b),
                    base: Natural::from(2u32),
                })
            }
        }
    }
    Ok(n)
}

/// Bits of `n` padded with zeros to exactly `width` entries.
///
/// Zero pads its canonical `[0]`, so `to_maxbits(k, 0)` is `k` zeros.
pub fn to_maxbits(width: usize, n: &Natural) -> Result<BitList> {
    let mut bits = to_rbits(n);
    if bits.len() > width {
        return Err(Error::Overflow {
            value: n.clone(),
            needed: bits.len() as u64,
            width,
        });
    }
    bits.resize(width, 0);
    Ok(bits)
}

/// Least `x >= 1` with `2^x > n`, so `bitcount(0) == 1`.
pub fn bitcount(n: &Natural) -> u64 {
    n.bits().max(1)
}

/// Largest [`bitcount`] in `ns`; 0 for an empty slice.
pub fn max_bitcount(ns: &[Natural]) -> u64 {
    ns.iter().map(bitcount).max().unwrap_or(0)
}

/// Exponent of the largest power of two dividing `n`; `None` for zero.
pub fn two_s(n: &Natural) -> Option<u64> {
    n.trailing_zeros()
}

/// Converts an exponent to `u64`, rejecting anything beyond [`MAX_BITS`].
pub fn exponent(e: &Natural) -> Result<u64> {
    match e.to_u64() {
        Some(x) if x < MAX_BITS => Ok(x),
        _ => Err(Error::TooLarge {
            exponent: e.clone(),
        }),
    }
}

pub fn exp2(e: &Natural) -> Result<Natural> {
    Ok(Natural::one() << exponent(e)?)
}

/// Positions of the set bits of `n`, in increasing order.
pub fn set_bits(n: &Natural) -> impl Iterator<Item = u64> + '_ {
    n.iter_u64_digits().enumerate().flat_map(|(w, word)| {
        let base = w as u64 * 64;
        let mut rest = word;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let tz = rest.trailing_zeros() as u64;
            rest &= rest - 1;
            Some(base + tz)
        })
    })
}

/// Builds the number whose set bits are exactly `positions` (duplicates are
/// idempotent).
pub fn from_set_bits(positions: impl IntoIterator<Item = u64>) -> Natural {
    let mut words: Vec<u64> = Vec::new();
    for p in positions {
        let w = (p / 64) as usize;
        if w >= words.len() {
            words.resize(w + 1, 0);
        }
        words[w] |= 1 << (p % 64);
    }
    words_to_natural(&words)
}

fn words_to_natural(words: &[u64]) -> Natural {
    let halves: Vec<u32> = words
        .iter()
        .flat_map(|w| [*w as u32, (*w >> 32) as u32])
        .collect();
    Natural::from_slice(&halves)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nat(x: u64) -> Natural {
        Natural::from(x)
    }

    fn nats(xs: &[u64]) -> Vec<Natural> {
        xs.iter().copied().map(nat).collect()
    }

    #[test]
    fn to_base_examples() {
        assert_eq!(
            to_base(&nat(2), &nat(42)).unwrap().digits(),
            nats(&[0, 1, 0, 1, 0, 1])
        );
        assert_eq!(to_base(&nat(2), &nat(0)).unwrap().digits(), nats(&[0]));
        assert_eq!(
            to_base(&nat(8), &nat(2008)).unwrap().digits(),
            nats(&[0, 3, 7, 3])
        );
        assert_eq!(
            to_base(&nat(10), &nat(2008)).unwrap().digits(),
            nats(&[8, 0, 0, 2])
        );
    }

    #[test]
    fn invalid_base() {
        assert!(matches!(
            to_base(&nat(1), &nat(5)),
            Err(Error::InvalidBase(_))
        ));
        assert!(matches!(
            from_base(&nat(0), &[]),
            Err(Error::InvalidBase(_))
        ));
        assert!(DigitList::new(nat(1), vec![]).is_err());
    }

    #[test]
    fn from_base_examples() {
        assert_eq!(
            from_base(&nat(2), &nats(&[0, 1, 0, 1, 0, 1])).unwrap(),
            nat(42)
        );
        assert_eq!(from_base(&nat(2), &[]).unwrap(), nat(0));
        assert_eq!(from_base(&nat(32), &nats(&[25, 20])).unwrap(), nat(665));
        assert_eq!(
            from_base(&nat(8), &nats(&[0, 8])),
            Err(Error::InvalidDigit {
                index: 1,
                digit: nat(8),
                base: nat(8)
            })
        );
    }

    #[test]
    fn digit_list_carries_base() {
        let dl = DigitList::new(nat(32), nats(&[25, 20])).unwrap();
        assert_eq!(dl.value(), nat(665));
        assert_eq!(dl.base(), &nat(32));
        assert!(DigitList::new(nat(3), nats(&[3])).is_err());
    }

    #[test]
    fn rbits() {
        assert_eq!(to_rbits(&nat(2008)), vec![0, 0, 0, 1, 1, 0, 1, 1, 1, 1, 1]);
        assert_eq!(to_rbits(&nat(0)), vec![0]);
        assert_eq!(from_rbits(&[1]).unwrap(), nat(1));
        assert!(from_rbits(&[0, 2]).is_err());
        assert_eq!(to_rbits0(&nat(0)), Vec::<u8>::new());
        assert_eq!(to_rbits0(&nat(1)), vec![1]);
        assert_eq!(to_rbits0(&nat(2008)), to_rbits(&nat(2008)));
    }

    #[test]
    fn maxbits() {
        assert_eq!(to_maxbits(2, &nat(1)).unwrap(), vec![1, 0]);
        assert_eq!(to_maxbits(2, &nat(3)).unwrap(), vec![1, 1]);
        assert_eq!(to_maxbits(2, &nat(0)).unwrap(), vec![0, 0]);
        assert!(matches!(
            to_maxbits(2, &nat(4)),
            Err(Error::Overflow { needed: 3, .. })
        ));
        // zero still needs its canonical [0]
        assert!(to_maxbits(0, &nat(0)).is_err());
    }

    #[test]
    fn bitcounts() {
        assert_eq!(bitcount(&nat(0)), 1);
        assert_eq!(bitcount(&nat(4)), 3);
        assert_eq!(max_bitcount(&nats(&[1, 0, 2, 1, 3])), 2);
        assert_eq!(max_bitcount(&[]), 0);
    }

    #[test]
    fn dyadic() {
        assert_eq!(two_s(&nat(0)), None);
        assert_eq!(two_s(&nat(1)), Some(0));
        assert_eq!(two_s(&nat(42)), Some(1));
        assert_eq!(two_s(&(Natural::one() << 300u32)), Some(300));
    }

    #[test]
    fn exponent_limit() {
        assert_eq!(exp2(&nat(10)).unwrap(), nat(1024));
        assert!(matches!(exp2(&nat(MAX_BITS)), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn set_bit_scan() {
        let n = (Natural::one() << 200u32) + nat(0b1010);
        assert_eq!(set_bits(&n).collect::<Vec<_>>(), vec![1, 3, 200]);
        assert_eq!(from_set_bits([1, 3, 200]), n);
        assert_eq!(set_bits(&nat(0)).count(), 0);
        assert_eq!(from_set_bits([]), nat(0));
    }
}
