//! Command implementations behind the `hfcodec` binary.
//!
//! Each command returns its output as text (or streams it for
//! `enumerate`) so the binary stays a thin argument parser and the
//! behaviour can be tested without spawning processes.

pub mod input;
pub mod selfcheck;

use std::io::{self, Write};

use clap::ValueEnum;
use hfcodec_core::hftree::{self, Codec, RenderStyle, Tree};
use hfcodec_core::pairing::{self, NatPair};
use hfcodec_core::permcodec::{self, Permutation, SizedRank};
use hfcodec_core::setfun::{self, NatSet};
use hfcodec_core::Natural;
use num_traits::{ToPrimitive, Zero};

use input::{format_list, parse_list, parse_natural};

/// Environment variable capping the nesting depth of parsed trees.
pub const RECURSION_LIMIT_VAR: &str = "HFCODEC_RECURSION_LIMIT";

pub const EXIT_SELFCHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Codec(#[from] hfcodec_core::Error),
    #[error("{0}")]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    pub fn exit_code(&self) -> i32 {
        EXIT_USAGE
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, ValueEnum)]
pub enum CodecName {
    Set,
    Fun,
    Ftuple,
    Rle,
    Perm,
    FactoradicR,
    FactoradicL,
    PairCantor,
    PairPepis,
    PairBitmerge,
    Tuple,
    Hfs,
    Hff,
    Hff1,
    Hff2,
    Hfp,
}

impl CodecName {
    pub const ALL: [CodecName; 16] = [
        CodecName::Set,
        CodecName::Fun,
        CodecName::Ftuple,
        CodecName::Rle,
        CodecName::Perm,
        CodecName::FactoradicR,
        CodecName::FactoradicL,
        CodecName::PairCantor,
        CodecName::PairPepis,
        CodecName::PairBitmerge,
        CodecName::Tuple,
        CodecName::Hfs,
        CodecName::Hff,
        CodecName::Hff1,
        CodecName::Hff2,
        CodecName::Hfp,
    ];

    /// The tree codec for hierarchical names, `None` for flat ones.
    pub fn tree_codec(self, ulimit: &Natural) -> Option<Codec> {
        let u = ulimit.clone();
        Some(match self {
            CodecName::Hfs => Codec::hfs(u),
            CodecName::Hff => Codec::hff(u),
            CodecName::Hff1 => Codec::hff1(u),
            CodecName::Hff2 => Codec::hff2(u),
            CodecName::Hfp => Codec::hfp(u),
            _ => return None,
        })
    }

    pub fn is_hierarchical(self) -> bool {
        self.tree_codec(&Natural::zero()).is_some()
    }

    pub fn label(self) -> String {
        self.to_possible_value()
            .map(|v| v.get_name().to_string())
            .unwrap_or_default()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, ValueEnum)]
pub enum OutputFormat {
    /// Bracketed decimal list (flat codecs)
    List,
    /// Brace or parenthesis notation
    Show,
    /// Lossless tree text (hierarchical codecs)
    Tree,
    /// Graphviz DAG with shared subtrees merged (hierarchical codecs)
    Dot,
    /// Space-separated decimals (flat codecs)
    Decimal,
}

#[derive(Debug, Clone)]
pub struct Options {
    pub ulimit: Natural,
    pub arity: Option<usize>,
    pub sized: bool,
    pub format: Option<OutputFormat>,
    pub depth_limit: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            ulimit: Natural::zero(),
            arity: None,
            sized: false,
            format: None,
            depth_limit: hftree::DEFAULT_DEPTH_LIMIT,
        }
    }
}

impl Options {
    /// Reads [`RECURSION_LIMIT_VAR`] if set.
    pub fn depth_limit_from_env() -> Result<usize, CliError> {
        match std::env::var(RECURSION_LIMIT_VAR) {
            Ok(v) => v.trim().parse().map_err(|_| {
                CliError::usage(format!(
                    "{RECURSION_LIMIT_VAR} must be a non-negative integer, got {v:?}"
                ))
            }),
            Err(_) => Ok(hftree::DEFAULT_DEPTH_LIMIT),
        }
    }
}

/// A decoded structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decoded {
    Flat(Vec<Natural>),
    Tree(Tree),
}

fn required_arity(opts: &Options) -> Result<usize, CliError> {
    match opts.arity {
        Some(0) => Err(CliError::usage("--arity must be at least 1")),
        Some(k) => Ok(k),
        None => Err(CliError::usage("codec tuple requires --arity K")),
    }
}

fn pair_list(p: NatPair) -> Vec<Natural> {
    vec![p.first, p.second]
}

/// Unranks `n` under the named codec.
pub fn decode(codec: CodecName, n: &Natural, opts: &Options) -> Result<Decoded, CliError> {
    if let Some(c) = codec.tree_codec(&opts.ulimit) {
        return Ok(Decoded::Tree(hftree::unrank(&c, n)));
    }
    let flat = match codec {
        CodecName::Set => setfun::nat2set(n).into_vec(),
        CodecName::Fun => setfun::nat2fun(n),
        CodecName::Ftuple => pairing::nat2ftuple(n),
        CodecName::Rle => setfun::nat2rle(n),
        CodecName::Perm => permcodec::nat2perm(n).to_naturals(),
        CodecName::FactoradicR => permcodec::fr(n),
        CodecName::FactoradicL => permcodec::fl(n),
        CodecName::PairCantor => pair_list(pairing::cantor_unpair(n)),
        CodecName::PairPepis => pair_list(pairing::pepis_unpair(n)),
        CodecName::PairBitmerge => pair_list(pairing::bitmerge_unpair(n)),
        CodecName::Tuple => pairing::to_tuple(required_arity(opts)?, n)?.into_vec(),
        _ => unreachable!("hierarchical codecs handled above"),
    };
    Ok(Decoded::Flat(flat))
}

/// Decodes a size and a rank into a permutation (`--sized`).
pub fn decode_sized(size: &Natural, rank: &Natural) -> Result<Vec<Natural>, CliError> {
    let size = size
        .to_usize()
        .ok_or_else(|| CliError::usage(format!("permutation size {size} is too large")))?;
    let sr = SizedRank::new(size, rank.clone());
    Ok(permcodec::nth2perm(&sr)?.to_naturals())
}

/// Renders a decoded structure; unsupported format/codec combinations are
/// usage errors.
pub fn format_decoded(codec: CodecName, d: &Decoded, opts: &Options) -> Result<String, CliError> {
    let unsupported = |f: OutputFormat| {
        CliError::usage(format!(
            "format {} is not available for codec {}",
            f.to_possible_value()
                .map(|v| v.get_name().to_string())
                .unwrap_or_default(),
            codec.label()
        ))
    };
    match d {
        Decoded::Flat(ns) => match opts.format.unwrap_or(OutputFormat::List) {
            OutputFormat::List => Ok(format_list(ns)),
            OutputFormat::Decimal => Ok(ns
                .iter()
                .map(|n| n.to_string())
                .collect::<Vec<_>>()
                .join(" ")),
            OutputFormat::Show => {
                let style = if codec == CodecName::Set {
                    RenderStyle::set()
                } else {
                    RenderStyle::function()
                };
                let items: Vec<String> = ns.iter().map(|n| n.to_string()).collect();
                Ok(format!(
                    "{}{}{}",
                    style.open,
                    items.join(&style.separator),
                    style.close
                ))
            }
            f @ (OutputFormat::Tree | OutputFormat::Dot) => Err(unsupported(f)),
        },
        Decoded::Tree(t) => match opts.format.unwrap_or(OutputFormat::Tree) {
            OutputFormat::Tree => Ok(hftree::serialize(t)),
            OutputFormat::Show => {
                let c = codec.tree_codec(&opts.ulimit).expect("tree codec");
                Ok(hftree::render(c.style(), &opts.ulimit, t)?)
            }
            OutputFormat::Dot => Ok(hftree::to_dag(t).to_dot().trim_end().to_string()),
            f @ (OutputFormat::List | OutputFormat::Decimal) => Err(unsupported(f)),
        },
    }
}

/// `decode`: one or two numeric arguments (two only for `perm --sized`).
pub fn cmd_decode(codec: CodecName, values: &[String], opts: &Options) -> Result<String, CliError> {
    if codec != CodecName::Tuple && opts.arity.is_some() {
        return Err(CliError::usage("--arity only applies to codec tuple"));
    }
    if opts.sized {
        if codec != CodecName::Perm {
            return Err(CliError::usage("--sized only applies to codec perm"));
        }
        let words: Vec<&str> = values
            .iter()
            .flat_map(|v| v.split([' ', ',']))
            .filter(|w| !w.is_empty())
            .collect();
        let [size, rank] = words[..] else {
            return Err(CliError::usage(
                "--sized decode expects a size and a rank, e.g. \"8 2008\"",
            ));
        };
        let perm = decode_sized(&parse_natural(size)?, &parse_natural(rank)?)?;
        return format_decoded(codec, &Decoded::Flat(perm), opts);
    }
    let [value] = values else {
        return Err(CliError::usage("decode expects exactly one natural number"));
    };
    let n = parse_natural(value)?;
    format_decoded(codec, &decode(codec, &n, opts)?, opts)
}

fn exact_pair(ns: Vec<Natural>) -> Result<(Natural, Natural), CliError> {
    match <[Natural; 2]>::try_from(ns) {
        Ok([x, y]) => Ok((x, y)),
        Err(ns) => Err(CliError::usage(format!(
            "a pair needs exactly 2 elements, got {}",
            ns.len()
        ))),
    }
}

/// `encode`: ranks a structure given as text.
pub fn cmd_encode(codec: CodecName, text: &str, opts: &Options) -> Result<String, CliError> {
    if let Some(c) = codec.tree_codec(&opts.ulimit) {
        let t = hftree::deserialize_with_limit(text.trim(), opts.depth_limit)?;
        return Ok(hftree::rank(&c, &t)?.to_string());
    }
    if opts.sized && codec != CodecName::Perm {
        return Err(CliError::usage("--sized only applies to codec perm"));
    }
    let ns = parse_list(text)?;
    let n = match codec {
        CodecName::Set => setfun::set2nat(&NatSet::new(ns)?)?,
        CodecName::Fun => setfun::fun2nat(&ns)?,
        CodecName::Ftuple => pairing::ftuple2nat(&ns)?,
        CodecName::Rle => setfun::rle2nat(&ns)?,
        CodecName::Perm => {
            let p = Permutation::from_naturals(&ns)?;
            if opts.sized {
                let SizedRank { size, rank } = permcodec::perm2nth(&p);
                return Ok(format!("{size} {rank}"));
            }
            permcodec::perm2nat(&p)
        }
        CodecName::FactoradicR => permcodec::rf(&ns),
        CodecName::FactoradicL => permcodec::lf(&ns),
        CodecName::PairCantor => {
            let (x, y) = exact_pair(ns)?;
            pairing::cantor_pair(&x, &y)
        }
        CodecName::PairPepis => {
            let (x, y) = exact_pair(ns)?;
            pairing::pepis_pair(&x, &y)?
        }
        CodecName::PairBitmerge => {
            let (x, y) = exact_pair(ns)?;
            pairing::bitmerge_pair(&NatPair::new(x, y))
        }
        CodecName::Tuple => {
            if let Some(k) = opts.arity {
                if k != ns.len() {
                    return Err(CliError::usage(format!(
                        "--arity {k} but the tuple has {} elements",
                        ns.len()
                    )));
                }
            }
            pairing::from_tuple(&ns)?
        }
        _ => unreachable!("hierarchical codecs handled above"),
    };
    Ok(n.to_string())
}

/// `enumerate`: writes one decoded structure per line for
/// `from..from + count`. A closed downstream pipe ends the stream quietly.
pub fn cmd_enumerate(
    codec: CodecName,
    from: &Natural,
    count: &Natural,
    opts: &Options,
    out: &mut impl Write,
) -> Result<(), CliError> {
    if codec == CodecName::Tuple {
        required_arity(opts)?;
    }
    if opts.sized {
        return Err(CliError::usage("--sized is not supported by enumerate"));
    }
    // validate the format once before streaming
    format_decoded(codec, &decode(codec, from, opts)?, opts)?;
    let mut n = from.clone();
    let end = from + count;
    while n < end {
        let line = format_decoded(codec, &decode(codec, &n, opts)?, opts)?;
        match writeln!(out, "{line}") {
            Err(e) if e.kind() == io::ErrorKind::BrokenPipe => return Ok(()),
            other => other?,
        }
        n += 1u32;
    }
    match out.flush() {
        Err(e) if e.kind() == io::ErrorKind::BrokenPipe => Ok(()),
        other => Ok(other?),
    }
}
