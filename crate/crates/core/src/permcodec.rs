//! Factoradics, Lehmer codes and permutation ranking.
//!
//! Permutations of a fixed size `k` are ranked lexicographically in
//! `0..k!` through their Lehmer code read as a factoradic number. Shifting
//! each size block by `sf(k) = 0! + 1! + ... + (k-1)!` turns this into a
//! bijection between all naturals and all finite permutations.

use num_traits::{One, ToPrimitive, Zero};

use crate::{Error, Natural, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    /// Least significant digit first; digit `i` lies in `0..=i`.
    RightToLeft,
    /// Most significant digit first.
    LeftToRight,
}

/// Factoradic digits tagged with their orientation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Factoradic {
    pub digits: Vec<Natural>,
    pub orientation: Orientation,
}

impl Factoradic {
    pub fn of(n: &Natural, orientation: Orientation) -> Self {
        let digits = match orientation {
            Orientation::RightToLeft => fr(n),
            Orientation::LeftToRight => fl(n),
        };
        Factoradic {
            digits,
            orientation,
        }
    }

    pub fn value(&self) -> Natural {
        match self.orientation {
            Orientation::RightToLeft => rf(&self.digits),
            Orientation::LeftToRight => lf(&self.digits),
        }
    }
}

/// Factoradic digits of `n`, least significant first. `fr(0) == [0]`.
pub fn fr(n: &Natural) -> Vec<Natural> {
    if n.is_zero() {
        return vec![Natural::zero()];
    }
    let mut digits = Vec::new();
    let mut rest = n.clone();
    let mut radix = 1u64;
    while !rest.is_zero() {
        let r = &rest % radix;
        rest /= radix;
        digits.push(r);
        radix += 1;
    }
    digits
}

/// `Σ digits[i] * i!`.
pub fn rf(digits: &[Natural]) -> Natural {
    let mut fact = Natural::one();
    let mut sum = Natural::zero();
    for (i, d) in digits.iter().enumerate() {
        if i > 0 {
            fact *= i as u64;
        }
        sum += d * &fact;
    }
    sum
}

pub fn fl(n: &Natural) -> Vec<Natural> {
    let mut digits = fr(n);
    digits.reverse();
    digits
}

pub fn lf(digits: &[Natural]) -> Natural {
    let mut reversed = digits.to_vec();
    reversed.reverse();
    rf(&reversed)
}

/// A rearrangement of `0..k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(mapping: Vec<usize>) -> Result<Self> {
        let k = mapping.len();
        let mut seen = vec![false; k];
        for (i, &v) in mapping.iter().enumerate() {
            if v >= k {
                return Err(Error::NotAPermutation {
                    reason: format!("entry {v} at position {i} is not below the length {k}"),
                });
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::NotAPermutation {
                    reason: format!("entry {v} repeats at position {i}"),
                });
            }
        }
        Ok(Permutation(mapping))
    }

    pub fn from_naturals(values: &[Natural]) -> Result<Self> {
        let k = values.len();
        let mapping = values
            .iter()
            .enumerate()
            .map(|(i, v)| {
                v.to_usize().ok_or_else(|| Error::NotAPermutation {
                    reason: format!("entry {v} at position {i} is not below the length {k}"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(mapping)
    }

    pub fn identity(k: usize) -> Self {
        Permutation((0..k).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn to_naturals(&self) -> Vec<Natural> {
        self.0.iter().map(|&v| Natural::from(v)).collect()
    }
}

/// Per-position count of later, smaller entries.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LehmerCode(Vec<usize>);

impl LehmerCode {
    /// Checks `digits[i] <= k - 1 - i`.
    pub fn new(digits: Vec<usize>) -> Result<Self> {
        let k = digits.len();
        for (index, &d) in digits.iter().enumerate() {
            let bound = k - 1 - index;
            if d > bound {
                return Err(Error::InvalidLehmer {
                    index,
                    digit: Natural::from(d),
                    bound,
                });
            }
        }
        Ok(LehmerCode(digits))
    }

    pub fn from_naturals(digits: &[Natural]) -> Result<Self> {
        let k = digits.len();
        let small = digits
            .iter()
            .enumerate()
            .map(|(index, d)| {
                d.to_usize().ok_or_else(|| Error::InvalidLehmer {
                    index,
                    digit: d.clone(),
                    bound: k - 1 - index,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(small)
    }

    pub fn digits(&self) -> &[usize] {
        &self.0
    }

    pub fn to_naturals(&self) -> Vec<Natural> {
        self.0.iter().map(|&d| Natural::from(d)).collect()
    }
}

/// A permutation size together with a rank below `size!`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SizedRank {
    pub size: usize,
    pub rank: Natural,
}

impl SizedRank {
    pub fn new(size: usize, rank: impl Into<Natural>) -> Self {
        SizedRank {
            size,
            rank: rank.into(),
        }
    }
}

pub fn perm2lehmer(p: &Permutation) -> LehmerCode {
    let ps = p.as_slice();
    let digits = ps
        .iter()
        .enumerate()
        .map(|(i, &x)| ps[i + 1..].iter().filter(|&&y| y < x).count())
        .collect();
    LehmerCode(digits)
}

/// Picks, for each digit, the element at that index from the shrinking
/// ordered pool `0..k`.
pub fn lehmer2perm(code: &LehmerCode) -> Permutation {
    let mut pool: Vec<usize> = (0..code.0.len()).collect();
    Permutation(code.0.iter().map(|&d| pool.remove(d)).collect())
}

/// The `rank`-th permutation of `0..size` in lexicographic order.
pub fn nth2perm(sr: &SizedRank) -> Result<Permutation> {
    let overflow = || Error::RankOverflow {
        size: sr.size,
        rank: sr.rank.clone(),
    };
    if sr.rank.is_zero() {
        return Ok(Permutation::identity(sr.size));
    }
    let digits = fl(&sr.rank);
    if digits.len() > sr.size {
        return Err(overflow());
    }
    let mut code = vec![0usize; sr.size - digits.len()];
    // fl digits are bounded by their factorial position, so they fit
    code.extend(
        digits
            .iter()
            .map(|d| d.to_usize().expect("factoradic digit")),
    );
    Ok(lehmer2perm(&LehmerCode(code)))
}

pub fn perm2nth(p: &Permutation) -> SizedRank {
    let code = perm2lehmer(p);
    SizedRank {
        size: p.len(),
        rank: lf(&code.to_naturals()),
    }
}

/// `0! + 1! + ... + (n-1)!`; `sf(0) == 0`.
pub fn sf(n: usize) -> Natural {
    let mut fact = Natural::one();
    let mut sum = Natural::zero();
    for i in 0..n {
        if i > 0 {
            fact *= i as u64;
        }
        sum += &fact;
    }
    sum
}

/// Splits `n` into the largest `k` with `sf(k) <= n` and the offset
/// `n - sf(k)`, which is below `k!`.
pub fn to_sf(n: &Natural) -> SizedRank {
    let mut k = 0usize;
    let mut sum = Natural::zero();
    let mut fact = Natural::one(); // k!
    loop {
        let next = &sum + &fact;
        if next > *n {
            break;
        }
        sum = next;
        k += 1;
        fact *= k as u64;
    }
    SizedRank {
        size: k,
        rank: n - sum,
    }
}

pub fn nat2perm(n: &Natural) -> Permutation {
    if n.is_zero() {
        return Permutation::default();
    }
    nth2perm(&to_sf(n)).expect("to_sf rank is below size!")
}

pub fn perm2nat(p: &Permutation) -> Natural {
    let SizedRank { size, rank } = perm2nth(p);
    sf(size) + rank
}
