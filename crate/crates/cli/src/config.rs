//! Flags, environment, config file and defaults, merged in that order.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use divint::Limits;
use serde::Deserialize;

use crate::error::{CliError, CliResult};

/// Looked up in the working directory when `--config` is not given.
pub const DEFAULT_CONFIG: &str = "divint.toml";

#[derive(Parser, Debug)]
#[command(
    name = "divint",
    version,
    about = "Maximal pairwise non-coprime families of divisors"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Default)]
pub struct GlobalArgs {
    #[arg(long, global = true, value_enum, env = "DIVINT_FORMAT")]
    pub format: Option<Format>,
    /// Worker threads; 0 uses one per core.
    #[arg(long, global = true, env = "DIVINT_THREADS")]
    pub threads: Option<usize>,
    /// Directory for the antichain cache. Caching is off without it.
    #[arg(long, global = true, env = "DIVINT_CACHE_DIR")]
    pub cache_dir: Option<PathBuf>,
    #[arg(long, global = true, env = "DIVINT_NO_CACHE")]
    pub no_cache: bool,
    #[arg(long, global = true, env = "DIVINT_CONFIG")]
    pub config: Option<PathBuf>,
    /// Largest ground set for antichain enumeration.
    #[arg(long, global = true, env = "DIVINT_MAX_K")]
    pub max_k: Option<usize>,
    #[arg(long, global = true, env = "DIVINT_MAX_DIVISORS")]
    pub max_divisors: Option<u64>,
    #[arg(long, global = true, env = "DIVINT_MAX_PRIMES")]
    pub max_primes: Option<usize>,
    #[arg(long, global = true, env = "DIVINT_MAX_RADICAL_N")]
    pub max_radical_n: Option<usize>,
    #[arg(long, global = true, env = "DIVINT_MAX_DIRECT")]
    pub max_direct: Option<u64>,
    /// Families are listed only while their total size stays below this.
    #[arg(long, global = true, env = "DIVINT_MAX_MATERIALIZE")]
    pub max_materialize: Option<u64>,
    #[arg(long, global = true, env = "DIVINT_MAX_UNIVERSE")]
    pub max_universe: Option<u64>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Least size of a maximal N-set.
    Bound(SigArgs),
    /// Minimum-size maximal N-sets and their generators.
    Extremal(ExtremalArgs),
    /// Number of minimum-size maximal N-sets.
    Count(SigArgs),
    /// Intersecting cover antichains on a k-element ground set.
    Antichains(AntichainArgs),
    /// Every maximal N-set, by exhaustive search.
    Oracle(OracleArgs),
    /// Complement matchings on up-sets, or pairings on extremal N-sets.
    Matching(MatchingArgs),
    /// Least maximal families inside the omega(d) = t or Omega(d) = t divisors.
    Openprob(OpenprobArgs),
    /// Re-check every claim across a grid of signatures.
    Verify(VerifyArgs),
}

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct SigArgs {
    /// Exponents, e.g. 2,1,1,1.
    #[arg(long, value_name = "EXPONENTS")]
    pub sig: Option<String>,
    /// An integer to factor, e.g. 420.
    #[arg(long = "n", value_name = "INTEGER")]
    pub n: Option<u64>,
}

#[derive(Args, Debug, Clone)]
#[group(required = false, multiple = false)]
pub struct OptSigArgs {
    #[arg(long, value_name = "EXPONENTS")]
    pub sig: Option<String>,
    #[arg(long = "n", value_name = "INTEGER")]
    pub n: Option<u64>,
}

#[derive(Args, Debug, Clone)]
pub struct ExtremalArgs {
    #[command(flatten)]
    pub input: SigArgs,
    /// Also print the members of each closure.
    #[arg(long)]
    pub list: bool,
    /// Classify a family given as divisors of N, e.g. 15,21,35.
    #[arg(long, value_name = "DIVISORS")]
    pub classify: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct AntichainArgs {
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub list: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    RadicalLift,
    DirectClique,
}

#[derive(Args, Debug, Clone)]
pub struct OracleArgs {
    #[command(flatten)]
    pub input: SigArgs,
    #[arg(long, value_enum, default_value = "radical-lift")]
    pub method: MethodArg,
    #[arg(long)]
    pub list: bool,
}

#[derive(Args, Debug, Clone)]
pub struct MatchingArgs {
    #[command(flatten)]
    pub input: OptSigArgs,
    /// Check every non-constant up-set on a ground set of this size.
    #[arg(long, conflicts_with_all = ["sig", "n"])]
    pub k: Option<usize>,
    #[arg(long)]
    pub list: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Omega,
    Bigomega,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MaximalityArg {
    Restricted,
    Global,
}

#[derive(Args, Debug, Clone)]
pub struct OpenprobArgs {
    /// A single signature; without it the grid below is swept.
    #[command(flatten)]
    pub input: OptSigArgs,
    #[arg(long, default_value_t = 4)]
    pub max_n: usize,
    #[arg(long, default_value_t = 2)]
    pub max_exp: u32,
    #[arg(long, value_delimiter = ',', default_value = "2,3")]
    pub t: Vec<u32>,
    /// Both modes when omitted.
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
    #[arg(long, value_enum, default_value = "restricted")]
    pub maximality: MaximalityArg,
    #[arg(long)]
    pub allow_t1: bool,
    /// Include the minimum-size witnesses.
    #[arg(long)]
    pub list: bool,
}

#[derive(Args, Debug, Clone)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 3)]
    pub max_n: usize,
    #[arg(long, default_value_t = 2)]
    pub max_exp: u32,
    #[arg(long, hide = true, value_name = "CLAIM")]
    pub inject_fault: Option<String>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

/// Contents of a config file. Keys mirror the long flag names.
#[derive(Clone, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct FileConfig {
    pub format: Option<Format>,
    pub threads: Option<usize>,
    pub cache_dir: Option<PathBuf>,
    pub no_cache: Option<bool>,
    pub max_k: Option<usize>,
    pub max_divisors: Option<u64>,
    pub max_primes: Option<usize>,
    pub max_radical_n: Option<usize>,
    pub max_direct: Option<u64>,
    pub max_materialize: Option<u64>,
    pub max_universe: Option<u64>,
}

impl FileConfig {
    pub fn parse(text: &str) -> Result<FileConfig, String> {
        toml::from_str(text).map_err(|e| e.message().to_string())
    }

    fn load(path: &Path) -> CliResult<FileConfig> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Read {
            path: path.to_path_buf(),
            source,
        })?;
        FileConfig::parse(&text).map_err(|message| CliError::Config {
            path: path.to_path_buf(),
            message,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub format: Format,
    pub limits: Limits,
    /// `None` when caching is disabled.
    pub cache_dir: Option<PathBuf>,
}

impl RunConfig {
    pub fn resolve(args: &GlobalArgs) -> CliResult<RunConfig> {
        let file = match &args.config {
            Some(path) => FileConfig::load(path)?,
            None if Path::new(DEFAULT_CONFIG).is_file() => {
                FileConfig::load(Path::new(DEFAULT_CONFIG))?
            }
            None => FileConfig::default(),
        };
        RunConfig::merge(args, &file)
    }

    pub fn merge(args: &GlobalArgs, file: &FileConfig) -> CliResult<RunConfig> {
        let d = Limits::default();
        let limits = Limits {
            max_divisors: positive(
                "max-divisors",
                args.max_divisors.or(file.max_divisors),
                d.max_divisors,
            )?,
            max_primes: positive(
                "max-primes",
                args.max_primes.or(file.max_primes),
                d.max_primes,
            )?,
            antichain_k: positive("max-k", args.max_k.or(file.max_k), d.antichain_k)?,
            radical_n: positive(
                "max-radical-n",
                args.max_radical_n.or(file.max_radical_n),
                d.radical_n,
            )?,
            direct_divisors: positive(
                "max-direct",
                args.max_direct.or(file.max_direct),
                d.direct_divisors,
            )?,
            materialize: positive(
                "max-materialize",
                args.max_materialize.or(file.max_materialize),
                d.materialize,
            )?,
            universe: positive(
                "max-universe",
                args.max_universe.or(file.max_universe),
                d.universe,
            )?,
            threads: args.threads.or(file.threads).unwrap_or(d.threads),
        };
        let no_cache = args.no_cache || file.no_cache.unwrap_or(false);
        let cache_dir = args.cache_dir.clone().or_else(|| file.cache_dir.clone());
        Ok(RunConfig {
            format: args.format.or(file.format).unwrap_or_default(),
            limits,
            cache_dir: if no_cache { None } else { cache_dir },
        })
    }
}

fn positive<T: Copy + PartialEq + Default>(
    name: &str,
    value: Option<T>,
    default: T,
) -> CliResult<T> {
    match value {
        Some(v) if v == T::default() => Err(CliError::Usage(format!("--{name} must be positive"))),
        Some(v) => Ok(v),
        None => Ok(default),
    }
}
