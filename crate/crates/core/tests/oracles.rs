//! Fast implementations checked against slow, independent reference
//! formulations.

use hfcodec_core::natbits::{self, bitcount};
use hfcodec_core::pairing::{self, NatPair};
use hfcodec_core::permcodec::{self, Permutation, SizedRank};
use hfcodec_core::setfun::{self, NatSet};
use hfcodec_core::Natural;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn nat(x: u64) -> Natural {
    Natural::from(x)
}

fn random_natural(rng: &mut impl Rng, bits: usize) -> Natural {
    let words: Vec<u32> = (0..bits.div_ceil(32)).map(|_| rng.gen()).collect();
    Natural::new(words)
}

/// Tuple split through the base-2^k digit matrix: expand in base 2^k, pad
/// each digit to k bits, transpose, read each row back as a number.
fn to_tuple_by_transpose(k: usize, n: &Natural) -> Vec<Natural> {
    let base = Natural::one() << k;
    let digits = natbits::to_base(&base, n).unwrap();
    let rows: Vec<Vec<u8>> = digits
        .digits()
        .iter()
        .map(|d| natbits::to_maxbits(k, d).unwrap())
        .collect();
    (0..k)
        .map(|i| {
            let column: Vec<u8> = rows.iter().map(|r| r[i]).collect();
            natbits::from_rbits(&column).unwrap()
        })
        .collect()
}

/// Inverse through the transposed matrix, with column width max_bitcount.
fn from_tuple_by_transpose(ns: &[Natural]) -> Natural {
    let k = ns.len();
    let width = natbits::max_bitcount(ns) as usize;
    let columns: Vec<Vec<u8>> = ns
        .iter()
        .map(|x| natbits::to_maxbits(width, x).unwrap())
        .collect();
    let digits: Vec<Natural> = (0..width)
        .map(|j| {
            let row: Vec<u8> = columns.iter().map(|c| c[j]).collect();
            natbits::from_rbits(&row).unwrap()
        })
        .collect();
    natbits::from_base(&(Natural::one() << k), &digits).unwrap()
}

/// Bit-merge through sets of exponents: even exponents from the first
/// component, odd from the second.
fn bitmerge_pair_by_sets(p: &NatPair) -> Natural {
    let evens = setfun::nat2set(&p.first)
        .iter()
        .map(|x| x * 2u32)
        .collect::<Vec<_>>();
    let odds = setfun::nat2set(&p.second)
        .iter()
        .map(|x| x * 2u32 + 1u32)
        .collect::<Vec<_>>();
    let mut all: Vec<Natural> = evens.into_iter().chain(odds).collect();
    all.sort();
    setfun::set2nat(&NatSet::new(all).unwrap()).unwrap()
}

fn bitmerge_unpair_by_sets(n: &Natural) -> NatPair {
    let (xs, ys): (Vec<Natural>, Vec<Natural>) = setfun::nat2set(n)
        .into_vec()
        .into_iter()
        .partition(|x| !x.bit(0));
    let halve = |v: Vec<Natural>| {
        let s = NatSet::new(v.into_iter().map(|x| x >> 1u32).collect()).unwrap();
        setfun::set2nat(&s).unwrap()
    };
    NatPair {
        first: halve(xs),
        second: halve(ys),
    }
}

/// Exponents of 2 by repeated halving.
fn nat2set_by_halving(n: &Natural) -> Vec<Natural> {
    let mut out = Vec::new();
    let mut rest = n.clone();
    let mut x = Natural::zero();
    while !rest.is_zero() {
        if rest.bit(0) {
            out.push(x.clone());
        }
        rest >>= 1u32;
        x += 1u32;
    }
    out
}

/// Dyadic valuation by repeated halving (n > 0).
fn two_s_by_halving(n: &Natural) -> u64 {
    let mut rest = n.clone();
    let mut k = 0;
    while !rest.bit(0) {
        rest >>= 1u32;
        k += 1;
    }
    k
}

fn bitcount_by_search(n: u64) -> u64 {
    (1u64..).find(|&x| (1u128 << x) > n as u128).unwrap()
}

fn factorial(n: u64) -> Natural {
    (1..=n).fold(Natural::one(), |acc, i| acc * i)
}

fn sf_by_summation(n: u64) -> Natural {
    (0..n).map(factorial).sum()
}

fn long_division_digits(base: u64, mut n: u64) -> Vec<u64> {
    let mut out = vec![n % base];
    n /= base;
    while n > 0 {
        out.push(n % base);
        n /= base;
    }
    out
}

/// All permutations of 0..k in lexicographic order, by recursion on the
/// first element.
fn lexicographic_permutations(k: usize) -> Vec<Vec<usize>> {
    fn go(pool: &[usize], prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if pool.is_empty() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..pool.len() {
            let mut rest = pool.to_vec();
            let x = rest.remove(i);
            prefix.push(x);
            go(&rest, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(&(0..k).collect::<Vec<_>>(), &mut Vec::new(), &mut out);
    out
}

#[test]
fn to_base_matches_long_division() {
    for base in [2u64, 3, 8, 10, 16, 32] {
        for n in 0..3000u64 {
            let got: Vec<u64> = natbits::to_base(&nat(base), &nat(n))
                .unwrap()
                .digits()
                .iter()
                .map(|d| d.to_u64().unwrap())
                .collect();
            assert_eq!(got, long_division_digits(base, n), "base {base}, n {n}");
        }
    }
    assert_eq!(long_division_digits(8, 2008), vec![0, 3, 7, 3]);
}

#[test]
fn bitcount_matches_search() {
    for n in 0..=10_000u64 {
        assert_eq!(bitcount(&nat(n)), bitcount_by_search(n), "n = {n}");
    }
}

#[test]
fn two_s_matches_halving() {
    for n in 1..5000u64 {
        assert_eq!(natbits::two_s(&nat(n)), Some(two_s_by_halving(&nat(n))));
    }
}

#[test]
fn nat2set_matches_halving() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let samples = (0..2000u64)
        .map(nat)
        .chain((0..100).map(|_| random_natural(&mut rng, 256)));
    for n in samples {
        assert_eq!(setfun::nat2set(&n).into_vec(), nat2set_by_halving(&n));
    }
}

#[test]
fn tuple_matches_transposition() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for k in 1..=8usize {
        for n in (0..2000u64)
            .map(nat)
            .chain((0..20).map(|_| random_natural(&mut rng, 256)))
        {
            let fast = pairing::to_tuple(k, &n).unwrap().into_vec();
            assert_eq!(fast, to_tuple_by_transpose(k, &n), "k = {k}, n = {n}");
            assert_eq!(from_tuple_by_transpose(&fast), n);
            assert_eq!(pairing::from_tuple(&fast).unwrap(), n);
        }
    }
    assert_eq!(
        to_tuple_by_transpose(3, &nat(42)),
        vec![nat(2), nat(1), nat(2)]
    );
}

#[test]
fn bitmerge_matches_set_formulation() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in (0..5000u64)
        .map(nat)
        .chain((0..200).map(|_| random_natural(&mut rng, 256)))
    {
        let p = pairing::bitmerge_unpair(&n);
        assert_eq!(p, bitmerge_unpair_by_sets(&n));
        assert_eq!(pairing::bitmerge_pair(&p), bitmerge_pair_by_sets(&p));
    }
}

#[test]
fn cantor_unpair_matches_brute_force() {
    // every z <= 5000 has its preimage with x + y <= 100
    let mut inverse = vec![None; 5001];
    for x in 0..=100u64 {
        for y in 0..=100u64 - x {
            let z = pairing::cantor_pair(&nat(x), &nat(y)).to_usize().unwrap();
            if z <= 5000 {
                assert!(inverse[z].is_none());
                inverse[z] = Some(NatPair::new(x, y));
            }
        }
    }
    for (z, pre) in inverse.into_iter().enumerate() {
        assert_eq!(Some(pairing::cantor_unpair(&nat(z as u64))), pre, "z = {z}");
    }
}

#[test]
fn cantor_unpair_beyond_float_precision() {
    let x = (Natural::one() << 200u32) + 12345u32;
    let y = (Natural::one() << 190u32) + 99u32;
    let z = pairing::cantor_pair(&x, &y);
    assert_eq!(pairing::cantor_unpair(&z), NatPair::new(x, y));
}

#[test]
fn nth2perm_is_lexicographic() {
    for k in 0..=6usize {
        let all = lexicographic_permutations(k);
        assert_eq!(all.len() as u64, factorial(k as u64).to_u64().unwrap());
        for (r, p) in all.iter().enumerate() {
            let got = permcodec::nth2perm(&SizedRank::new(k, r as u64)).unwrap();
            assert_eq!(got.as_slice(), &p[..], "k = {k}, r = {r}");
        }
    }
}

#[test]
fn lehmer_code_counts_later_smaller() {
    for k in 0..=6usize {
        for p in lexicographic_permutations(k) {
            let code = permcodec::perm2lehmer(&Permutation::new(p.clone()).unwrap());
            for (i, &d) in code.digits().iter().enumerate() {
                let count = (i + 1..k).filter(|&j| p[j] < p[i]).count();
                assert_eq!(d, count);
            }
        }
    }
}

#[test]
fn sf_matches_factorial_sum() {
    for n in 0..=30u64 {
        assert_eq!(permcodec::sf(n as usize), sf_by_summation(n), "n = {n}");
    }
    assert_eq!(sf_by_summation(8), nat(5914));
}

#[test]
fn to_sf_matches_linear_search() {
    for n in 1..6000u64 {
        // largest k with sf(k) <= n
        let k = (0..)
            .take_while(|&k| sf_by_summation(k) <= nat(n))
            .last()
            .unwrap();
        let expected = SizedRank::new(k as usize, nat(n) - sf_by_summation(k));
        assert_eq!(permcodec::to_sf(&nat(n)), expected, "n = {n}");
    }
}

#[test]
fn fun2set_matches_prefix_sums() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..500 {
        let f: Vec<u64> = (0..rng.gen_range(0..12))
            .map(|_| rng.gen_range(0..6))
            .collect();
        let mut acc = 0u64;
        let expected: Vec<Natural> = f
            .iter()
            .map(|v| {
                acc += v + 1;
                nat(acc - 1)
            })
            .collect();
        let got = setfun::fun2set(&f.iter().copied().map(nat).collect::<Vec<_>>());
        assert_eq!(got.into_vec(), expected);
    }
}
