use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::Arc;

use serde::de::DeserializeOwned;
use serde::Serialize;

use cyclie::kv::Framing;
use cyclie::serial::from_json_str;
use cyclie::{Alphabet, Error};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Math(Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Math(e) => match e {
                Error::Parse(_) | Error::Precondition(_) | Error::AlphabetMismatch | Error::ArityMismatch { .. } => 2,
                _ => 1,
            },
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Math(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Math(e)
    }
}

pub type CliResult<T> = Result<T, CliError>;

pub fn usage<T>(msg: impl Into<String>) -> CliResult<T> {
    Err(CliError::Usage(msg.into()))
}

/// Settings shared by every command, after `key=value` overrides.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub g: usize,
    pub n: usize,
    pub cutoff: usize,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub framing: Option<Framing>,
    #[serde(skip)]
    pub input: Option<PathBuf>,
    pub params: BTreeMap<String, String>,
}

pub struct Flags {
    pub g: Option<usize>,
    pub n: Option<usize>,
    pub cutoff: Option<usize>,
    pub seed: Option<u64>,
    pub framing: Option<PathBuf>,
    pub input: Option<PathBuf>,
}

fn parse_value<T: FromStr>(key: &str, v: &str) -> CliResult<T> {
    v.parse().or_else(|_| usage(format!("bad value {v:?} for {key}")))
}

impl RunConfig {
    pub fn new(flags: Flags, pairs: &[String]) -> CliResult<Self> {
        let mut params = BTreeMap::new();
        for p in pairs {
            let Some((k, v)) = p.split_once('=') else {
                return usage(format!("expected key=value, found {p:?}"));
            };
            if params.insert(k.to_string(), v.to_string()).is_some() {
                return usage(format!("{k} given twice"));
            }
        }
        let mut take = |key: &str| params.remove(key);
        let g = match take("g") {
            Some(v) => parse_value("g", &v)?,
            None => flags.g.unwrap_or(1),
        };
        let n = match take("n") {
            Some(v) => parse_value("n", &v)?,
            None => flags.n.unwrap_or(0),
        };
        let cutoff = match take("cutoff") {
            Some(v) => parse_value("cutoff", &v)?,
            None => flags.cutoff.unwrap_or(6),
        };
        let seed = match take("seed") {
            Some(v) => parse_value("seed", &v)?,
            None => flags.seed.unwrap_or(0),
        };
        if cutoff < 2 {
            return usage("cutoff must be at least 2");
        }
        let framing = match &flags.framing {
            Some(path) => {
                let f: Framing = read_json(path)?;
                f.validate()?;
                if f.genus() != g || f.boundary_count() != n {
                    return usage(format!(
                        "framing is for (g, n) = ({}, {}), not ({g}, {n})",
                        f.genus(),
                        f.boundary_count()
                    ));
                }
                Some(f)
            }
            None => None,
        };
        Ok(RunConfig { g, n, cutoff, seed, framing, input: flags.input, params })
    }

    pub fn alphabet(&self) -> Arc<Alphabet> {
        Alphabet::surface(self.g, self.n)
    }

    pub fn framing_or_zero(&self) -> Framing {
        self.framing.clone().unwrap_or_else(|| Framing::zero(self.g, self.n))
    }

    /// Rejects parameters the command does not know.
    pub fn allow(&self, keys: &[&str]) -> CliResult<()> {
        match self.params.keys().find(|k| !keys.contains(&k.as_str())) {
            Some(k) => usage(format!("unknown parameter {k:?}")),
            None => Ok(()),
        }
    }

    pub fn get<T: FromStr>(&self, key: &str, default: T) -> CliResult<T> {
        match self.params.get(key) {
            Some(v) => parse_value(key, v),
            None => Ok(default),
        }
    }

    pub fn require<T: FromStr>(&self, key: &str) -> CliResult<T> {
        match self.params.get(key) {
            Some(v) => parse_value(key, v),
            None => usage(format!("missing parameter {key}")),
        }
    }

    /// A single integer `a` or an inclusive range `a..b`.
    pub fn range(&self, key: &str, default: (i64, i64)) -> CliResult<(i64, i64)> {
        let Some(v) = self.params.get(key) else {
            return Ok(default);
        };
        let (lo, hi) = match v.split_once("..") {
            Some((a, b)) => (parse_value(key, a)?, parse_value(key, b.trim_start_matches('='))?),
            None => {
                let x = parse_value(key, v)?;
                (x, x)
            }
        };
        if lo > hi {
            return usage(format!("empty range {v:?} for {key}"));
        }
        Ok((lo, hi))
    }

    pub fn input_path(&self) -> CliResult<&Path> {
        match &self.input {
            Some(p) => Ok(p),
            None => usage("this command needs --in <file>"),
        }
    }
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text = std::fs::read_to_string(path).or_else(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    Ok(from_json_str(&text)?)
}
