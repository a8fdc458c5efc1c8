use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hfcodec::input::parse_natural;
use hfcodec::selfcheck::{self, INJECTED_FAULT};
use hfcodec::{
    cmd_decode, cmd_encode, cmd_enumerate, CliError, CodecName, Options, OutputFormat,
    EXIT_SELFCHECK_FAILED,
};
use hfcodec_core::Natural;

/// Bijections between natural numbers and sets, functions, permutations
/// and their hereditarily finite trees.
#[derive(Parser)]
#[command(name = "hfcodec", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Codec name (alternative to the positional CODEC)
    #[arg(long = "codec", value_enum, global = true)]
    codec_flag: Option<CodecName>,
    /// Atoms 0..ULIMIT stand for themselves in trees
    #[arg(long, default_value = "0", value_parser = natural_arg, global = true)]
    ulimit: Natural,
    /// Tuple arity (codec tuple only)
    #[arg(long, global = true)]
    arity: Option<usize>,
    #[arg(long, value_enum, global = true)]
    format: Option<OutputFormat>,
    /// Permutations as a size and rank pair "k r"
    #[arg(long, global = true)]
    sized: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Print the structure with the given rank
    Decode {
        /// CODEC followed by N (or K R with --sized); CODEC may be given by --codec instead
        #[arg(required = true, num_args = 1..=3)]
        args: Vec<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Print the rank of a structure: a list like [1,2] or a tree like (a2 ())
    Encode {
        /// CODEC followed by the structure; CODEC may be given by --codec instead
        #[arg(required = true, num_args = 1..=2)]
        args: Vec<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Print structures FROM..FROM+COUNT, one per line
    Enumerate {
        /// CODEC FROM COUNT; CODEC may be given by --codec instead
        #[arg(required = true, num_args = 2..=3)]
        args: Vec<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Decode with brace or parenthesis rendering
    Show {
        #[arg(required = true, num_args = 1..=3)]
        args: Vec<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Decode a tree to a Graphviz DAG with shared subtrees merged
    Dot {
        #[arg(required = true, num_args = 1..=2)]
        args: Vec<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Check every round-trip law and worked example
    Selfcheck {
        #[arg(value_parser = natural_arg)]
        max_n: Natural,
        #[arg(value_parser = natural_arg)]
        seed: Natural,
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
}

fn natural_arg(s: &str) -> Result<Natural, String> {
    parse_natural(s).map_err(|e| e.to_string())
}

/// Splits off the codec: from `--codec`, or else the first positional.
fn resolve(
    args: Vec<String>,
    common: Common,
    format: Option<OutputFormat>,
) -> Result<(CodecName, Vec<String>, Options), CliError> {
    let (codec, rest) = match common.codec_flag {
        Some(c) => (c, args),
        None => {
            let mut it = args.into_iter();
            let name = it.next().unwrap_or_default();
            let c = <CodecName as clap::ValueEnum>::from_str(&name, false)
                .map_err(|_| CliError::usage(format!("unknown codec {name:?}")))?;
            (c, it.collect())
        }
    };
    let format = match (format, common.format) {
        (Some(forced), Some(given)) if forced != given => {
            return Err(CliError::usage("--format conflicts with the subcommand"));
        }
        (forced, given) => forced.or(given),
    };
    let opts = Options {
        ulimit: common.ulimit,
        arity: common.arity,
        sized: common.sized,
        format,
        depth_limit: Options::depth_limit_from_env()?,
    };
    Ok((codec, rest, opts))
}

fn print(text: &str) -> Result<(), CliError> {
    let mut out = io::stdout().lock();
    match writeln!(out, "{text}").and_then(|()| out.flush()) {
        Err(e) if e.kind() == io::ErrorKind::BrokenPipe => Ok(()),
        other => Ok(other?),
    }
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Decode { args, common } => {
            let (codec, rest, opts) = resolve(args, common, None)?;
            print(&cmd_decode(codec, &rest, &opts)?)?;
        }
        Command::Show { args, common } => {
            let (codec, rest, opts) = resolve(args, common, Some(OutputFormat::Show))?;
            print(&cmd_decode(codec, &rest, &opts)?)?;
        }
        Command::Dot { args, common } => {
            let (codec, rest, opts) = resolve(args, common, Some(OutputFormat::Dot))?;
            print(&cmd_decode(codec, &rest, &opts)?)?;
        }
        Command::Encode { args, common } => {
            let (codec, rest, opts) = resolve(args, common, None)?;
            let [text] = &rest[..] else {
                return Err(CliError::usage("encode expects exactly one structure"));
            };
            print(&cmd_encode(codec, text, &opts)?)?;
        }
        Command::Enumerate { args, common } => {
            let (codec, rest, opts) = resolve(args, common, None)?;
            let [from, count] = &rest[..] else {
                return Err(CliError::usage("enumerate expects FROM and COUNT"));
            };
            let mut out = io::BufWriter::new(io::stdout().lock());
            cmd_enumerate(
                codec,
                &parse_natural(from)?,
                &parse_natural(count)?,
                &opts,
                &mut out,
            )?;
        }
        Command::Selfcheck {
            max_n,
            seed,
            inject_fault,
        } => {
            let mut laws = selfcheck::laws();
            if inject_fault {
                laws.push(INJECTED_FAULT);
            }
            let report = selfcheck::cmd_selfcheck(&laws, &max_n, &seed)?;
            print(&report.render())?;
            if !report.passed() {
                return Ok(ExitCode::from(EXIT_SELFCHECK_FAILED as u8));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("hfcodec: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
