//! Runs every round-trip law and worked example and reports one line per
//! law. Law suites run in parallel; the report keeps declaration order.

use hfcodec_core::hftree::{self, Codec};
use hfcodec_core::pairing::{self, NatPair};
use hfcodec_core::permcodec::{self, Permutation, SizedRank};
use hfcodec_core::setfun::{self, NatSet};
use hfcodec_core::Natural;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::CliError;

/// Random big-value trials per law.
pub const RANDOM_TRIALS: usize = 64;
/// Bit width of random trial values.
pub const RANDOM_BITS: usize = 256;

#[derive(Debug, Clone)]
pub struct Params {
    pub max_n: u64,
    pub seed: u64,
}

impl Params {
    /// `0..max_n` followed by seeded random values; the stream depends on
    /// the law name so suites stay independent of scheduling.
    pub fn samples(&self, law: &str) -> impl Iterator<Item = Natural> {
        let salt = law.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| {
            (h ^ u64::from(b)).wrapping_mul(0x100_0000_01b3)
        });
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed ^ salt);
        let randoms: Vec<Natural> = (0..RANDOM_TRIALS)
            .map(|_| random_natural(&mut rng, RANDOM_BITS))
            .collect();
        (0..self.max_n).map(Natural::from).chain(randoms)
    }
}

pub fn random_natural(rng: &mut impl Rng, bits: usize) -> Natural {
    let words: Vec<u32> = (0..bits.div_ceil(32)).map(|_| rng.gen()).collect();
    Natural::new(words)
}

pub type Check = fn(&Params) -> Result<(), String>;

#[derive(Clone, Copy)]
pub struct Law {
    pub name: &'static str,
    pub check: Check,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub name: &'static str,
    pub failure: Option<String>,
}

#[derive(Debug, Clone)]
pub struct Report {
    pub outcomes: Vec<Outcome>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.failure.is_none())
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for o in &self.outcomes {
            match &o.failure {
                None => out.push_str(&format!("PASS {}\n", o.name)),
                Some(why) => out.push_str(&format!("FAIL {}: {why}\n", o.name)),
            }
        }
        let failed = self.outcomes.iter().filter(|o| o.failure.is_some()).count();
        out.push_str(&format!("{} laws, {} failed", self.outcomes.len(), failed));
        out
    }
}

pub fn run(laws: &[Law], params: &Params) -> Report {
    let outcomes = laws
        .par_iter()
        .map(|law| Outcome {
            name: law.name,
            failure: (law.check)(params).err(),
        })
        .collect();
    Report { outcomes }
}

/// `selfcheck MAX_N SEED` over the given laws.
pub fn cmd_selfcheck(laws: &[Law], max_n: &Natural, seed: &Natural) -> Result<Report, CliError> {
    let max_n = max_n
        .to_u64()
        .ok_or_else(|| CliError::usage(format!("MAX_N {max_n} is too large")))?;
    let seed = seed.iter_u64_digits().next().unwrap_or(0);
    Ok(run(laws, &Params { max_n, seed }))
}

/// A law that always fails, for exercising the failure path end to end.
pub const INJECTED_FAULT: Law = Law {
    name: "injected fault",
    check: |_| Err("deliberately broken".to_string()),
};

fn nat(x: u64) -> Natural {
    Natural::from(x)
}

fn nats(xs: &[u64]) -> Vec<Natural> {
    xs.iter().copied().map(nat).collect()
}

fn expect<T: PartialEq + std::fmt::Debug>(what: &str, got: T, want: T) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got:?}, expected {want:?}"))
    }
}

fn ok<T, E: std::fmt::Display>(what: &str, r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| format!("{what}: {e}"))
}

fn tree_codecs(u: u32) -> [Codec; 5] {
    [
        Codec::hfs(u),
        Codec::hff(u),
        Codec::hff1(u),
        Codec::hff2(u),
        Codec::hfp(u),
    ]
}

pub fn laws() -> Vec<Law> {
    vec![
        Law {
            name: "golden pairings",
            check: golden_pairings,
        },
        Law {
            name: "golden sets and functions",
            check: golden_setfun,
        },
        Law {
            name: "golden permutations",
            check: golden_permutations,
        },
        Law {
            name: "golden trees",
            check: golden_trees,
        },
        Law {
            name: "cantor round trip",
            check: cantor_round_trip,
        },
        Law {
            name: "pepis round trip",
            check: pepis_round_trip,
        },
        Law {
            name: "bitmerge round trip",
            check: bitmerge_round_trip,
        },
        Law {
            name: "tuple round trip",
            check: tuple_round_trip,
        },
        Law {
            name: "ftuple round trip",
            check: ftuple_round_trip,
        },
        Law {
            name: "set round trip",
            check: set_round_trip,
        },
        Law {
            name: "fun round trip",
            check: fun_round_trip,
        },
        Law {
            name: "rle round trip",
            check: rle_round_trip,
        },
        Law {
            name: "factoradic round trip",
            check: factoradic_round_trip,
        },
        Law {
            name: "perm round trip",
            check: perm_round_trip,
        },
        Law {
            name: "sized perm round trip",
            check: sized_perm_round_trip,
        },
        Law {
            name: "tree round trip",
            check: tree_round_trip,
        },
        Law {
            name: "tree atom bound",
            check: tree_atom_bound,
        },
        Law {
            name: "tree serialize round trip",
            check: tree_serialize_round_trip,
        },
    ]
}

fn golden_pairings(_: &Params) -> Result<(), String> {
    let cantor: Vec<Natural> = (0..4u64)
        .flat_map(|x| (0..4u64).map(move |y| pairing::cantor_pair(&nat(x), &nat(y))))
        .collect();
    expect(
        "cantor table",
        cantor,
        nats(&[0, 2, 5, 9, 1, 4, 8, 13, 3, 7, 12, 18, 6, 11, 17, 24]),
    )?;
    let pepis = (0..4u64)
        .flat_map(|x| (0..4u64).map(move |y| pairing::pepis_pair(&nat(x), &nat(y))))
        .collect::<Result<Vec<_>, _>>();
    expect(
        "pepis table",
        ok("pepis", pepis)?,
        nats(&[0, 2, 4, 6, 1, 5, 9, 13, 3, 11, 19, 27, 7, 23, 39, 55]),
    )?;
    expect(
        "pepis(1,10)",
        ok("pepis", pairing::pepis_pair(&nat(1), &nat(10)))?,
        nat(41),
    )?;
    expect(
        "pepis(10,1)",
        ok("pepis", pairing::pepis_pair(&nat(10), &nat(1)))?,
        nat(3071),
    )?;
    expect(
        "bitmerge 2008",
        pairing::bitmerge_unpair(&nat(2008)),
        NatPair::new(60u32, 26u32),
    )?;
    expect(
        "to_tuple(3,42)",
        ok("to_tuple", pairing::to_tuple(3, &nat(42)))?.into_vec(),
        nats(&[2, 1, 2]),
    )?;
    expect(
        "from_tuple [2,1,2]",
        ok("from_tuple", pairing::from_tuple(&nats(&[2, 1, 2])))?,
        nat(42),
    )?;
    expect(
        "ftuple2nat",
        ok("ftuple2nat", pairing::ftuple2nat(&nats(&[1, 0, 2, 1, 3])))?,
        nat(21295),
    )?;
    expect(
        "nat2ftuple 21295",
        pairing::nat2ftuple(&nat(21295)),
        nats(&[1, 0, 2, 1, 3]),
    )?;
    let first: Vec<Vec<Natural>> = (0..16).map(|n| pairing::nat2ftuple(&nat(n))).collect();
    let want: Vec<Vec<Natural>> = [
        &[][..],
        &[0, 0],
        &[1],
        &[0, 0, 0],
        &[2],
        &[1, 0],
        &[3],
        &[0, 0, 0, 0],
        &[4],
        &[0, 1],
        &[5],
        &[1, 0, 0],
        &[6],
        &[1, 1],
        &[7],
        &[0, 0, 0, 0, 0],
    ]
    .iter()
    .map(|t| nats(t))
    .collect();
    expect("nat2ftuple 0..15", first, want)
}

fn golden_setfun(_: &Params) -> Result<(), String> {
    let f = nats(&[1, 0, 2, 1, 2]);
    let s = setfun::fun2set(&f);
    expect("fun2set", s.clone().into_vec(), nats(&[1, 2, 5, 7, 10]))?;
    expect("set2fun", setfun::set2fun(&s), f)?;
    expect(
        "nat2fun 2008",
        setfun::nat2fun(&nat(2008)),
        nats(&[3, 0, 1, 0, 0, 0, 0]),
    )?;
    expect(
        "fun2nat",
        ok("fun2nat", setfun::fun2nat(&nats(&[3, 0, 1, 0, 0, 0, 0])))?,
        nat(2008),
    )?;
    expect(
        "nat2set 42",
        setfun::nat2set(&nat(42)).into_vec(),
        nats(&[1, 3, 5]),
    )
}

fn golden_permutations(_: &Params) -> Result<(), String> {
    expect("fr 42", permcodec::fr(&nat(42)), nats(&[0, 0, 0, 3, 1]))?;
    expect("fl 42", permcodec::fl(&nat(42)), nats(&[1, 3, 0, 0, 0]))?;
    expect("rf", permcodec::rf(&nats(&[0, 0, 0, 3, 1])), nat(42))?;
    expect("lf", permcodec::lf(&nats(&[1, 3, 0, 0, 0])), nat(42))?;
    let p5 = ok("nth2perm", permcodec::nth2perm(&SizedRank::new(5, 42u32)))?;
    expect("nth2perm (5,42)", p5.as_slice(), &[1, 4, 0, 2, 3][..])?;
    expect(
        "perm2nth",
        permcodec::perm2nth(&p5),
        SizedRank::new(5, 42u32),
    )?;
    let p8 = ok("nth2perm", permcodec::nth2perm(&SizedRank::new(8, 2008u32)))?;
    expect(
        "nth2perm (8,2008)",
        p8.as_slice(),
        &[0, 3, 6, 5, 4, 7, 1, 2][..],
    )?;
    expect(
        "perm2nth",
        permcodec::perm2nth(&p8),
        SizedRank::new(8, 2008u32),
    )?;
    let p = permcodec::nat2perm(&nat(2008));
    expect("nat2perm 2008", p.as_slice(), &[1, 4, 3, 2, 0, 5, 6][..])?;
    expect("perm2nat", permcodec::perm2nat(&p), nat(2008))
}

fn golden_trees(_: &Params) -> Result<(), String> {
    let cases: [(Codec, u64, &str); 13] = [
        (
            Codec::hfs(0u32),
            42,
            "F [F [F []],F [F [],F [F []]],F [F [],F [F [F []]]]]",
        ),
        (Codec::hff(0u32), 0, "F []"),
        (Codec::hff(0u32), 1, "F [F []]"),
        (Codec::hff(0u32), 42, "F [F [F []],F [F []],F [F []]]"),
        (
            Codec::hff(0u32),
            12345,
            "F [F [],F [F [F []]],F [],F [],F [F [F []],F []],F []]",
        ),
        (Codec::hff1(0u32), 0, "F []"),
        (Codec::hff1(0u32), 1, "F [F [],F []]"),
        (Codec::hff1(0u32), 42, "F [F [F [F [],F [],F []],F []]]"),
        (
            Codec::hff1(0u32),
            12345,
            "F [F [F [F [F [F [],F []]],F []]],F [F [],F [],F [F [],F []]]]",
        ),
        (Codec::hff2(0u32), 0, "F []"),
        (Codec::hff2(0u32), 1, "F [F []]"),
        (Codec::hff2(0u32), 42, "F [F [],F [],F [],F [],F [],F []]"),
        (
            Codec::hff2(0u32),
            12345,
            "F [F [],F [F []],F [F [],F []],F [F [],F [],F []],F [F []]]",
        ),
    ];
    for (c, n, want) in cases {
        let t = hftree::unrank(&c, &nat(n));
        expect(&format!("{} {n}", c.name()), t.to_string().as_str(), want)?;
        expect(
            &format!("{} rank {n}", c.name()),
            ok("rank", hftree::rank(&c, &t))?,
            nat(n),
        )?;
    }
    expect(
        "setShow 42",
        hftree::show(&Codec::hfs(0u32), &nat(42)).as_str(),
        "{{{}},{{},{{}}},{{},{{{}}}}}",
    )?;
    let big = nat(1234567890);
    expect(
        "funShow",
        hftree::show(&Codec::hff(10u32), &big).as_str(),
        "(3 2 0 1 7 0 1 2 0 2 2)",
    )?;
    expect(
        "funShow1",
        hftree::show(&Codec::hff1(10u32), &big).as_str(),
        "(((((0 3)) (((2 0 1))) 1)))",
    )?;
    expect(
        "funShow2",
        hftree::show(&Codec::hff2(10u32), &big).as_str(),
        "(2 0 1 1 0 0 6 1 0 0 1 1 1 0 1 0)",
    )?;
    let stream: Vec<String> = hftree::enumerate(&Codec::hfs(0u32), nat(0))
        .take(5)
        .map(|t| t.to_string())
        .collect();
    expect(
        "first five sets",
        stream.join(","),
        "F [],F [F []],F [F [F []]],F [F [],F [F []]],F [F [F [F []]]]".to_string(),
    )
}

fn check_all(
    p: &Params,
    law: &str,
    f: impl Fn(&Natural) -> Result<(), String>,
) -> Result<(), String> {
    p.samples(law).try_for_each(|n| f(&n))
}

fn cantor_round_trip(p: &Params) -> Result<(), String> {
    check_all(p, "cantor", |n| {
        let q = pairing::cantor_unpair(n);
        expect(
            &format!("cantor {n}"),
            &pairing::cantor_pair(&q.first, &q.second),
            n,
        )?;
        expect(
            &format!("cantor unpair {n}"),
            pairing::cantor_unpair(&pairing::cantor_pair(n, n)),
            NatPair::new(n.clone(), n.clone()),
        )
    })
}

fn pepis_round_trip(p: &Params) -> Result<(), String> {
    check_all(p, "pepis", |n| {
        let q = pairing::pepis_unpair(n);
        expect(
            &format!("pepis {n}"),
            &ok("pepis", pairing::pepis_pair(&q.first, &q.second))?,
            n,
        )
    })
}

fn bitmerge_round_trip(p: &Params) -> Result<(), String> {
    check_all(p, "bitmerge", |n| {
        let q = pairing::bitmerge_unpair(n);
        expect(&format!("bitmerge {n}"), &pairing::bitmerge_pair(&q), n)?;
        expect(
            &format!("to_tuple 2 {n}"),
            ok("to_tuple", pairing::to_tuple(2, n))?.into_vec(),
            vec![q.first, q.second],
        )
    })
}

fn tuple_round_trip(p: &Params) -> Result<(), String> {
    check_all(p, "tuple", |n| {
        for k in 1..=5 {
            let t = ok("to_tuple", pairing::to_tuple(k, n))?;
            expect(
                &format!("tuple {k} {n}"),
                &ok("from_tuple", pairing::from_tuple(&t))?,
                n,
            )?;
        }
        Ok(())
    })
}

fn ftuple_round_trip(p: &Params) -> Result<(), String> {
    check_all(p, "ftuple", |n| {
        expect(
            &format!("ftuple {n}"),
            &ok("ftuple2nat", pairing::ftuple2nat(&pairing::nat2ftuple(n)))?,
            n,
        )
    })
}

fn set_round_trip(p: &Params) -> Result<(), String> {
    check_all(p, "set", |n| {
        let s = setfun::nat2set(n);
        expect(&format!("set {n}"), &ok("set2nat", setfun::set2nat(&s))?, n)?;
        ok("set is increasing", NatSet::new(s.into_vec())).map(drop)
    })
}

fn fun_round_trip(p: &Params) -> Result<(), String> {
    check_all(p, "fun", |n| {
        let f = setfun::nat2fun(n);
        let s = setfun::fun2set(&f);
        if !s.windows(2).all(|w| w[0] < w[1]) {
            return Err(format!("fun2set not increasing at {n}"));
        }
        expect(&format!("fun {n}"), &ok("fun2nat", setfun::fun2nat(&f))?, n)
    })
}

fn rle_round_trip(p: &Params) -> Result<(), String> {
    check_all(p, "rle", |n| {
        expect(
            &format!("rle {n}"),
            &ok("rle2nat", setfun::rle2nat(&setfun::nat2rle(n)))?,
            n,
        )
    })
}

fn factoradic_round_trip(p: &Params) -> Result<(), String> {
    check_all(p, "factoradic", |n| {
        expect(&format!("fr {n}"), &permcodec::rf(&permcodec::fr(n)), n)?;
        expect(&format!("fl {n}"), &permcodec::lf(&permcodec::fl(n)), n)
    })
}

fn perm_round_trip(p: &Params) -> Result<(), String> {
    check_all(p, "perm", |n| {
        let perm = permcodec::nat2perm(n);
        let code = permcodec::perm2lehmer(&perm);
        if code
            .digits()
            .iter()
            .enumerate()
            .any(|(i, &d)| d >= perm.len() - i)
        {
            return Err(format!("Lehmer digit out of bounds at {n}"));
        }
        expect(&format!("perm {n}"), &permcodec::perm2nat(&perm), n)
    })
}

fn sized_perm_round_trip(p: &Params) -> Result<(), String> {
    check_all(p, "sized perm", |n| {
        let perm = permcodec::nat2perm(n);
        let sr = permcodec::perm2nth(&perm);
        expect(
            &format!("nth2perm {n}"),
            ok("nth2perm", permcodec::nth2perm(&sr))?,
            perm.clone(),
        )?;
        let back = ok("permutation", Permutation::new(perm.as_slice().to_vec()))?;
        expect(&format!("permutation {n}"), back, perm)
    })
}

fn tree_round_trip(p: &Params) -> Result<(), String> {
    for u in [0u32, 2, 10] {
        for c in tree_codecs(u) {
            check_all(p, c.name(), |n| {
                let t = hftree::unrank(&c, n);
                expect(
                    &format!("{} u={u} {n}", c.name()),
                    &ok("rank", hftree::rank(&c, &t))?,
                    n,
                )
            })?;
        }
    }
    Ok(())
}

fn tree_atom_bound(p: &Params) -> Result<(), String> {
    for u in [0u32, 2, 10] {
        for c in tree_codecs(u) {
            check_all(p, c.name(), |n| {
                let t = hftree::unrank(&c, n);
                match hftree::max_atom(&t) {
                    Some(a) if a >= Natural::from(u) => {
                        Err(format!("{} u={u} {n}: atom {a}", c.name()))
                    }
                    _ => Ok(()),
                }
            })?;
        }
    }
    Ok(())
}

fn tree_serialize_round_trip(p: &Params) -> Result<(), String> {
    for c in tree_codecs(10) {
        check_all(p, c.name(), |n| {
            let t = hftree::unrank(&c, n);
            let back = ok("deserialize", hftree::deserialize(&hftree::serialize(&t)))?;
            expect(&format!("{} serialize {n}", c.name()), back, t)
        })?;
    }
    Ok(())
}
