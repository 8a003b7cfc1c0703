//! Command-line interface. [`run`] returns the process exit code:
//! 0 ok, 1 a check failed, 2 bad usage, 3 uncertified or out of budget.

use std::path::PathBuf;
use std::str::FromStr;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use hermicode_core::budget::Budget;
use hermicode_core::counting::{self, NpCase};
use hermicode_core::dualcode::mindist::{min_distance, Method, MinDistOptions, StopReason};
use hermicode_core::dualcode::peel::{peel, PeelFailure, PeelOptions};
use hermicode_core::dualcode::{construct_pair_word, is_codeword, IncidenceMatrix, PairWordSpec};
use hermicode_core::gf::FieldCtx;
use log::info;
use num_bigint::BigUint;
use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::cache::{open_space, GeneratorCache};
use crate::clock::SystemClock;
use crate::formats::{self, CodeWordFile, MinDistFile, PartRecord, PeelFile};
use crate::header::{Header, DEFAULT_SEED};
use crate::suites::{self, Suite, SuiteConfig, Workbench};
use crate::{Error, Result};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_UNCERTIFIED: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "hermicode", version, about = "Hermitian varieties, their generators and the dual code of points and generators")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Generator cache directory; HERMICODE_CACHE_DIR takes precedence.
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Output file (a directory for `enumerate`); stdout when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Enumerate variety points and generators.
    Enumerate(EnumerateArgs),
    /// Evaluate a closed-form count.
    Count(CountArgs),
    /// Run verification suites and write a CSV of checks.
    Verify(VerifyArgs),
    /// Build a pair word, or a random combination of them.
    Construct(ConstructArgs),
    /// Minimum distance of the dual code.
    Mindist(MindistArgs),
    /// Decompose a code word into pair words.
    Peel(PeelArgs),
}

#[derive(Debug, Clone, Default, Args)]
pub struct FieldArgs {
    /// Characteristic; use with --h.
    #[arg(long)]
    pub p: Option<u32>,
    /// Exponent with q = p^h.
    #[arg(long)]
    pub h: Option<u32>,
    /// q, the square root of the field order.
    #[arg(long)]
    pub q: Option<u32>,
    /// q or q², comma separated where several fields are allowed. A
    /// perfect square is read as q², any other value as q.
    #[arg(long)]
    pub qq: Option<String>,
}

impl FieldArgs {
    /// Field orders `q²`, defaulting to 4.
    pub fn orders(&self) -> Result<Vec<u32>> {
        let given = [self.p.is_some() || self.h.is_some(), self.q.is_some(), self.qq.is_some()];
        if given.iter().filter(|&&g| g).count() > 1 {
            return Err(Error::Usage("give only one of --p/--h, --q, --qq".into()));
        }
        if let (Some(p), Some(h)) = (self.p, self.h) {
            return Ok(vec![FieldCtx::new(p, h)?.order()]);
        }
        if self.p.is_some() || self.h.is_some() {
            return Err(Error::Usage("--p and --h go together".into()));
        }
        if let Some(q) = self.q {
            return Ok(vec![q.checked_mul(q).ok_or_else(|| Error::Usage(format!("q = {q} is too large")))?]);
        }
        let Some(list) = &self.qq else { return Ok(vec![4]) };
        list.split(',').map(|t| parse_qq(t.trim())).collect()
    }

    pub fn field(&self) -> Result<Arc<FieldCtx>> {
        match self.orders()?.as_slice() {
            [o] => Ok(Arc::new(FieldCtx::from_order(*o)?)),
            _ => Err(Error::Usage("this command takes a single field".into())),
        }
    }

    pub fn q(&self) -> Result<u64> {
        Ok(self.field()?.q() as u64)
    }
}

fn parse_qq(t: &str) -> Result<u32> {
    let v: u32 = t.parse().map_err(|_| Error::Usage(format!("--qq expects integers, got {t:?}")))?;
    let r = (v as f64).sqrt().round() as u32;
    if r >= 2 && r * r == v {
        Ok(v)
    } else {
        v.checked_mul(v).ok_or_else(|| Error::Usage(format!("q = {v} is too large")))
    }
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    #[arg(long, default_value_t = 1)]
    pub n: usize,
}

#[derive(Debug, Args)]
pub struct CountArgs {
    /// theta, mu, generators, through, c_nj, N, N_prime, n_P, weight,
    /// min_weight, sigma or alpha.
    #[arg(long)]
    pub formula: String,
    #[command(flatten)]
    pub field: FieldArgs,
    #[arg(long, allow_hyphen_values = true)]
    pub n: Option<i64>,
    /// Dimension argument of theta and mu.
    #[arg(long, allow_hyphen_values = true)]
    pub m: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    pub i: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    pub j: Option<i64>,
    #[arg(long)]
    pub k: Option<i64>,
    /// Case number 1 to 4 of the through-a-point count.
    #[arg(long)]
    pub case: Option<u8>,
    /// Positive rational such as 1/2 or 3.
    #[arg(long)]
    pub delta: Option<String>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Suite name or `all`.
    #[arg(long, default_value = "all")]
    pub suite: String,
    #[command(flatten)]
    pub field: FieldArgs,
    /// A single n; otherwise every n from 1 to --max-n.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, default_value_t = 2)]
    pub max_n: usize,
    /// Sample size for randomized checks.
    #[arg(long)]
    pub trials: Option<usize>,
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    #[arg(long, default_value_t = 1)]
    pub n: usize,
    /// Vertex dimension of the standard n-space to use.
    #[arg(long, allow_hyphen_values = true)]
    pub i: Option<isize>,
    #[arg(long, default_value_t = 1)]
    pub alpha: u8,
    /// Instead of --i, add this many pair words on random n-spaces.
    #[arg(long, conflicts_with = "i")]
    pub random: Option<usize>,
}

#[derive(Debug, Args)]
pub struct MindistArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    #[arg(long, default_value_t = 1)]
    pub n: usize,
    /// exhaustive, enum or bz; chosen by size when absent.
    #[arg(long)]
    pub method: Option<String>,
    /// Wall-clock budget; 0 means unlimited.
    #[arg(long, default_value_t = 600.0)]
    pub budget_sec: f64,
    #[arg(long)]
    pub budget_steps: Option<u64>,
    /// Largest support the exhaustive search visits.
    #[arg(long, default_value_t = 8)]
    pub max_support: usize,
    /// Code word files whose weights seed the upper bound.
    #[arg(long)]
    pub seed_word: Vec<PathBuf>,
    /// Do not seed with the lightest constructed pair word.
    #[arg(long)]
    pub no_construct_seed: bool,
}

#[derive(Debug, Args)]
pub struct PeelArgs {
    /// Code word file written by `construct`.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, default_value_t = 32)]
    pub top_k: usize,
    #[arg(long, default_value_t = 64)]
    pub max_steps: usize,
    #[arg(long)]
    pub budget_sec: Option<f64>,
}

pub fn run(cli: &Cli) -> Result<i32> {
    let cache = GeneratorCache::resolve(cli.cache_dir.as_deref());
    match &cli.command {
        Command::Enumerate(a) => enumerate(cli, a, cache.as_ref()),
        Command::Count(a) => count(cli, a),
        Command::Verify(a) => verify(cli, a, cache),
        Command::Construct(a) => construct(cli, a, cache.as_ref()),
        Command::Mindist(a) => mindist(cli, a, cache.as_ref()),
        Command::Peel(a) => peel_cmd(cli, a, cache.as_ref()),
    }
}

fn enumerate(cli: &Cli, a: &EnumerateArgs, cache: Option<&GeneratorCache>) -> Result<i32> {
    let (space, status) = open_space(a.field.field()?, a.n, cache)?;
    info!("generator cache: {}", status.label());
    let header = Header::for_space(&space, cli.seed);
    if let Some(dir) = &cli.out {
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        formats::emit(Some(&dir.join("points.jsonl")), &formats::points_jsonl(&header, &space)?)?;
        formats::emit(Some(&dir.join("generators.jsonl")), &formats::generators_jsonl(&header, &space)?)?;
    }
    let summary = json!({
        "header": header,
        "points": space.point_count(),
        "generators": space.generators().len(),
    });
    formats::emit(None, &formats::to_json_pretty(&summary)?)?;
    Ok(EXIT_OK)
}

fn big(v: &BigUint) -> Value {
    Value::Number(serde_json::Number::from_str(&v.to_string()).expect("decimal integer"))
}

fn rational(r: &BigRational) -> Value {
    if r.is_integer() {
        Value::Number(serde_json::Number::from_str(&r.to_integer().to_string()).expect("decimal integer"))
    } else {
        Value::String(r.to_string())
    }
}

fn need<T: Copy>(v: Option<T>, flag: &str, formula: &str) -> Result<T> {
    v.ok_or_else(|| Error::Usage(format!("formula {formula} needs {flag}")))
}

fn parse_delta(s: &str) -> Result<BigRational> {
    let bad = || Error::Usage(format!("--delta expects a rational such as 1/2, got {s:?}"));
    let r = match s.split_once('/') {
        Some((a, b)) => {
            let (a, b): (i64, i64) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
            if b == 0 {
                return Err(bad());
            }
            BigRational::new(a.into(), b.into())
        }
        None => BigRational::from_integer(s.trim().parse::<i64>().map_err(|_| bad())?.into()),
    };
    Ok(r)
}

fn count(cli: &Cli, a: &CountArgs) -> Result<i32> {
    let q = a.field.q()?;
    let f = a.formula.as_str();
    let mut params = serde_json::Map::new();
    params.insert("q".into(), json!(q));
    let mut param = |name: &str, v: Option<i64>| -> Result<i64> {
        let v = need(v, &format!("--{name}"), f)?;
        params.insert(name.into(), json!(v));
        Ok(v)
    };
    let value = match f {
        "theta" => big(&counting::theta(param("m", a.m)?, q * q)?),
        "mu" => big(&counting::mu(param("m", a.m)?, q)?),
        "generators" => big(&counting::generator_count(param("n", a.n)?, q)?),
        "through" => big(&counting::generators_through_k(param("n", a.n)?, param("k", a.k)?, q)?),
        "c_nj" => big(&counting::c_nj(param("n", a.n)?, param("j", a.j)?, q)?),
        "N" => big(&counting::N_ni(param("n", a.n)?, param("i", a.i)?, q)?),
        "N_prime" => big(&counting::N_prime(param("n", a.n)?, param("i", a.i)?, q)?),
        "n_P" => {
            let (n, i) = (param("n", a.n)?, param("i", a.i)?);
            let case = param("case", a.case.map(i64::from))?;
            let case = NpCase::from_number(u8::try_from(case).unwrap_or(0))?;
            big(&counting::n_p(n, i, case, q)?)
        }
        "weight" => big(&counting::pair_word_weight(param("n", a.n)?, param("i", a.i)?, q)?),
        "min_weight" => big(&counting::min_pair_weight(param("n", a.n)?, q)?),
        "sigma" => rational(&counting::sigma_threshold(param("n", a.n)?, param("i", a.i)?, q)?),
        "alpha" => {
            let (n, i) = (param("n", a.n)?, param("i", a.i)?);
            let delta = parse_delta(a.delta.as_deref().ok_or_else(|| Error::Usage("formula alpha needs --delta".into()))?)?;
            params.insert("delta".into(), rational(&delta));
            let t = counting::alpha_roots(n, i, q, &delta)?;
            json!({
                "alpha": t.alpha_decimal,
                "alpha_prime": t.alpha_prime_decimal,
                "digits": counting::ROOT_DIGITS,
                "exact": t.exact.as_ref().map(|(x, y)| [x.to_string(), y.to_string()]),
                "real": t.discriminant_nonneg,
                "sum": rational(&t.sum()),
            })
        }
        other => return Err(Error::Usage(format!("unknown formula {other:?}"))),
    };
    let out = json!({ "formula": f, "params": Value::Object(params), "value": value });
    formats::emit(cli.out.as_deref(), &formats::to_json_pretty(&out)?)?;
    Ok(EXIT_OK)
}

fn verify(cli: &Cli, a: &VerifyArgs, cache: Option<GeneratorCache>) -> Result<i32> {
    let suites = Suite::parse_list(&a.suite)?;
    let ns = match a.n {
        Some(n) => vec![n],
        None => (1..=a.max_n).collect(),
    };
    let cfg = SuiteConfig { orders: a.field.orders()?, ns, trials: a.trials, seed: cli.seed, cache };
    let mut bench = Workbench::new(cfg);
    let mut rows = Vec::new();
    for s in suites {
        let start = std::time::Instant::now();
        let r = bench.run(s)?;
        info!("suite {}: {} checks in {:.2?}", s.name(), r.len(), start.elapsed());
        rows.extend(r);
    }
    formats::emit(cli.out.as_deref(), &suites::rows_csv(&rows)?)?;
    let failed = rows.iter().filter(|r| !r.ok).count();
    eprintln!("{} checks, {failed} failed", rows.len());
    Ok(if failed == 0 { EXIT_OK } else { EXIT_CHECK_FAILED })
}

fn construct(cli: &Cli, a: &ConstructArgs, cache: Option<&GeneratorCache>) -> Result<i32> {
    let (space, _) = open_space(a.field.field()?, a.n, cache)?;
    let (word, specs) = match (a.i, a.random) {
        (Some(i), None) => {
            let spec = PairWordSpec::new(&space, space.make_nspace(i)?, a.alpha)?;
            (construct_pair_word(&space, &spec)?, vec![spec])
        }
        (None, Some(k)) => {
            let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
            suites::random_combination(&space, k, &mut rng)?
        }
        _ => return Err(Error::Usage("construct needs --i or --random".into())),
    };
    let a_mat = IncidenceMatrix::build(&space)?;
    if !is_codeword(&word, &a_mat)? {
        return Err(hermicode_core::Error::Invariant("constructed word fails a generator check".into()).into());
    }
    if word.is_zero() {
        log::warn!("the construction gives the zero word");
    }
    let parts = specs.iter().map(PartRecord::from).collect();
    let file = CodeWordFile::new(Header::for_space(&space, cli.seed), &word, parts);
    formats::emit(cli.out.as_deref(), &formats::to_json(&file)?)?;
    Ok(EXIT_OK)
}

fn mindist(cli: &Cli, a: &MindistArgs, cache: Option<&GeneratorCache>) -> Result<i32> {
    let (space, _) = open_space(a.field.field()?, a.n, cache)?;
    let header = Header::for_space(&space, cli.seed);
    let mat = IncidenceMatrix::build(&space)?;
    let method = match &a.method {
        Some(m) => Some(Method::parse(m).ok_or_else(|| Error::Usage(format!("unknown method {m:?}")))?),
        None => None,
    };
    let mut seeds = Vec::new();
    for path in &a.seed_word {
        let file: CodeWordFile = formats::read_json(path)?;
        header.ensure_compatible(&file.header)?;
        seeds.push(file.word()?);
    }
    if !a.no_construct_seed {
        let i = (a.n as isize - 3).max(-1);
        let spec = PairWordSpec::new(&space, space.make_nspace(i)?, 1)?;
        seeds.push(construct_pair_word(&space, &spec)?);
    }
    let opts = MinDistOptions { method, max_support: a.max_support, seeds, ..Default::default() };
    let clock = SystemClock::start();
    let mut budget = if a.budget_sec > 0.0 { Budget::timed(&clock, a.budget_sec) } else { Budget::UNLIMITED };
    if let Some(s) = a.budget_steps {
        budget = budget.with_steps(s);
    }
    let report = min_distance(&mat, &opts, &budget)?;
    info!("mindist {}: {:.3}s, {} steps, stop {}", report.method.name(), report.seconds, report.steps, formats::stop_name(report.stop));
    let file = MinDistFile::new(header, &report);
    formats::emit(cli.out.as_deref(), &formats::to_json(&file)?)?;
    Ok(match (report.certified, report.stop) {
        (true, _) => EXIT_OK,
        (false, StopReason::Completed) => EXIT_CHECK_FAILED,
        (false, _) => EXIT_UNCERTIFIED,
    })
}

fn peel_cmd(cli: &Cli, a: &PeelArgs, cache: Option<&GeneratorCache>) -> Result<i32> {
    let file: CodeWordFile = formats::read_json(&a.input)?;
    let (space, _) = open_space(file.header.field()?, file.header.n, cache)?;
    let word = file.word()?;
    let clock = SystemClock::start();
    let budget = match a.budget_sec {
        Some(s) => Budget::timed(&clock, s),
        None => Budget::UNLIMITED,
    };
    let opts = PeelOptions { top_k: a.top_k, max_steps: a.max_steps, ..Default::default() };
    let out = peel(&space, &word, &opts, &budget)?;
    let mut header = file.header.clone();
    header.seed = cli.seed;
    let report = PeelFile::new(header, &word, &out);
    formats::emit(cli.out.as_deref(), &formats::to_json(&report)?)?;
    Ok(match out.failure {
        None => EXIT_OK,
        Some(PeelFailure::BudgetExhausted) => EXIT_UNCERTIFIED,
        Some(_) => EXIT_CHECK_FAILED,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn qq_is_read_tolerantly() {
        let f = |s: &str| FieldArgs { qq: Some(s.into()), ..Default::default() }.orders();
        assert_eq!(f("2").unwrap(), vec![4]);
        assert_eq!(f("4").unwrap(), vec![4]);
        assert_eq!(f("2,9").unwrap(), vec![4, 9]);
        assert_eq!(f("3").unwrap(), vec![9]);
        assert_eq!(f("8").unwrap(), vec![64]);
        assert!(f("x").is_err());
        let both = FieldArgs { q: Some(2), qq: Some("2".into()), ..Default::default() };
        assert!(both.orders().is_err());
        let ph = FieldArgs { p: Some(3), h: Some(1), ..Default::default() };
        assert_eq!(ph.orders().unwrap(), vec![9]);
        assert_eq!(FieldArgs::default().orders().unwrap(), vec![4]);
    }

    #[test]
    fn deltas() {
        assert_eq!(parse_delta("1/2").unwrap(), BigRational::new(1.into(), 2.into()));
        assert_eq!(parse_delta("3").unwrap(), BigRational::from_integer(3.into()));
        assert!(parse_delta("1/0").is_err());
        assert!(parse_delta("a").is_err());
    }
}
