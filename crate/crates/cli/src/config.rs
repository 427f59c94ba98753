//! Run configuration: a flat key-value file, overridden by command-line flags.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use flagbethe_core::tensor::Weight;
use flagbethe_core::Rat;
use serde::Deserialize;

use crate::UsageError;

/// How the parameters `K_1, …, K_N` are treated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KModeSpec {
    Symbolic,
    Values(Vec<Rat>),
    /// Zone sweep over the listed scales `c > 1`.
    Zone(Vec<Rat>),
}

impl FromStr for KModeSpec {
    type Err = UsageError;

    fn from_str(s: &str) -> Result<Self, UsageError> {
        let list = |body: &str| -> Result<Vec<Rat>, UsageError> {
            body.split(',').map(|t| t.parse::<Rat>().map_err(UsageError)).collect()
        };
        match s.split_once('=') {
            None if s == "symbolic" => Ok(KModeSpec::Symbolic),
            Some(("values", body)) => Ok(KModeSpec::Values(list(body)?)),
            Some(("zone", body)) => {
                let scales = list(body)?;
                if scales.iter().any(|c| *c <= Rat::one()) {
                    return Err(UsageError(format!("zone scales must exceed 1: {s}")));
                }
                Ok(KModeSpec::Zone(scales))
            }
            _ => Err(UsageError(format!(
                "k-mode must be symbolic, values=v1,v2,... or zone=c1,c2,...; got {s:?}"
            ))),
        }
    }
}

impl fmt::Display for KModeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[Rat]| v.iter().map(Rat::to_string).collect::<Vec<_>>().join(",");
        match self {
            KModeSpec::Symbolic => f.write_str("symbolic"),
            KModeSpec::Values(v) => write!(f, "values={}", join(v)),
            KModeSpec::Zone(v) => write!(f, "zone={}", join(v)),
        }
    }
}

/// Symbolic `z`, or a generic rational point drawn from a seed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZMode {
    Symbolic,
    Seed(u64),
}

impl FromStr for ZMode {
    type Err = UsageError;

    fn from_str(s: &str) -> Result<Self, UsageError> {
        match s.split_once('=') {
            None if s == "symbolic" => Ok(ZMode::Symbolic),
            Some(("seed", v)) => v
                .parse()
                .map(ZMode::Seed)
                .map_err(|_| UsageError(format!("bad seed {v:?}"))),
            _ => Err(UsageError(format!("z-mode must be symbolic or seed=<int>; got {s:?}"))),
        }
    }
}

impl fmt::Display for ZMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ZMode::Symbolic => f.write_str("symbolic"),
            ZMode::Seed(s) => write!(f, "seed={s}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckConfig {
    pub check: String,
    pub n_big: usize,
    pub n: usize,
    pub lambda: Option<Weight>,
    pub jmax: usize,
    pub k_mode: KModeSpec,
    pub z_mode: ZMode,
    pub degree_bound: usize,
    pub report: Option<PathBuf>,
    /// Record wall-clock timings (set to false for byte-identical reports).
    pub timing: bool,
}

pub const DEFAULT_JMAX: usize = 4;
pub const DEFAULT_DEGREE_BOUND: usize = 4;

impl CheckConfig {
    pub fn new(check: &str, n_big: usize, n: usize) -> Self {
        CheckConfig {
            check: check.to_string(),
            n_big,
            n,
            lambda: None,
            jmax: DEFAULT_JMAX,
            k_mode: KModeSpec::Symbolic,
            z_mode: ZMode::Symbolic,
            degree_bound: DEFAULT_DEGREE_BOUND,
            report: None,
            timing: true,
        }
    }

    /// The weights a check runs over: the given one, or all with `|λ| = n`.
    pub fn weights(&self) -> Vec<Weight> {
        match &self.lambda {
            Some(l) => vec![l.clone()],
            None => Weight::all(self.n_big, self.n),
        }
    }

    pub fn dominant_weights(&self) -> Vec<Weight> {
        self.weights().into_iter().filter(Weight::is_dominant).collect()
    }
}

/// A `λ` given as `"2,1"` or as an array.
#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum LambdaField {
    Text(String),
    List(Vec<usize>),
}

impl LambdaField {
    fn parts(&self) -> Result<Vec<usize>, UsageError> {
        match self {
            LambdaField::List(v) => Ok(v.clone()),
            LambdaField::Text(s) => s
                .split(',')
                .map(|t| t.trim().parse().map_err(|_| UsageError(format!("bad lambda {s:?}"))))
                .collect(),
        }
    }
}

/// Every field optional; file values are overridden field by field.
#[derive(Clone, Debug, Default, Deserialize, PartialEq)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct PartialConfig {
    pub check: Option<String>,
    #[serde(rename = "N")]
    pub n_big: Option<usize>,
    pub n: Option<usize>,
    pub lambda: Option<LambdaField>,
    pub jmax: Option<usize>,
    pub k_mode: Option<String>,
    pub z_mode: Option<String>,
    pub degree_bound: Option<usize>,
    pub report: Option<PathBuf>,
    pub timing: Option<bool>,
}

impl PartialConfig {
    pub fn from_file(path: &Path) -> Result<Self, UsageError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| UsageError(format!("cannot read config {}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| UsageError(format!("config {}: {e}", path.display())))
    }

    /// `other` wins wherever it has a value.
    pub fn overridden_by(self, other: PartialConfig) -> PartialConfig {
        PartialConfig {
            check: other.check.or(self.check),
            n_big: other.n_big.or(self.n_big),
            n: other.n.or(self.n),
            lambda: other.lambda.or(self.lambda),
            jmax: other.jmax.or(self.jmax),
            k_mode: other.k_mode.or(self.k_mode),
            z_mode: other.z_mode.or(self.z_mode),
            degree_bound: other.degree_bound.or(self.degree_bound),
            report: other.report.or(self.report),
            timing: other.timing.or(self.timing),
        }
    }

    pub fn resolve(self) -> Result<CheckConfig, UsageError> {
        let missing = |f: &str| UsageError(format!("missing required setting {f}"));
        let check = self.check.ok_or_else(|| missing("check"))?;
        let n_big = self.n_big.ok_or_else(|| missing("N"))?;
        let n = self.n.ok_or_else(|| missing("n"))?;
        if n_big == 0 || n == 0 {
            return Err(UsageError("N and n must be positive".into()));
        }
        let lambda = match self.lambda {
            None => None,
            Some(l) => {
                let parts = l.parts()?;
                if parts.len() != n_big {
                    return Err(UsageError(format!("lambda {parts:?} does not have N = {n_big} parts")));
                }
                if parts.iter().sum::<usize>() != n {
                    return Err(UsageError(format!("lambda {parts:?} does not sum to n = {n}")));
                }
                Some(Weight::new(parts).map_err(|e| UsageError(e.to_string()))?)
            }
        };
        let k_mode: KModeSpec = match self.k_mode {
            Some(s) => s.parse()?,
            None => KModeSpec::Symbolic,
        };
        if let KModeSpec::Values(v) = &k_mode {
            if v.len() != n_big {
                return Err(UsageError(format!("k-mode lists {} values for N = {n_big}", v.len())));
            }
        }
        let z_mode = match self.z_mode {
            Some(s) => s.parse()?,
            None => ZMode::Symbolic,
        };
        Ok(CheckConfig {
            check,
            n_big,
            n,
            lambda,
            jmax: self.jmax.unwrap_or(DEFAULT_JMAX),
            k_mode,
            z_mode,
            degree_bound: self.degree_bound.unwrap_or(DEFAULT_DEGREE_BOUND),
            report: self.report,
            timing: self.timing.unwrap_or(true),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_round_trip() {
        for s in ["symbolic", "values=1,-2,7/3", "zone=100,1000"] {
            assert_eq!(s.parse::<KModeSpec>().unwrap().to_string(), s);
        }
        assert!("zone=1,10".parse::<KModeSpec>().is_err());
        assert!("values=a".parse::<KModeSpec>().is_err());
        assert_eq!("seed=42".parse::<ZMode>().unwrap(), ZMode::Seed(42));
        assert!("seed=-1".parse::<ZMode>().is_err());
    }

    #[test]
    fn file_then_flags() {
        let file: PartialConfig = toml::from_str(
            "check = \"commutativity\"\nN = 2\nn = 3\nlambda = \"2,1\"\njmax = 2\nz-mode = \"seed=5\"\n",
        )
        .unwrap();
        let flags = PartialConfig {
            jmax: Some(3),
            ..Default::default()
        };
        let c = file.overridden_by(flags).resolve().unwrap();
        assert_eq!(c.jmax, 3);
        assert_eq!(c.z_mode, ZMode::Seed(5));
        assert_eq!(c.lambda.unwrap().parts(), &[2, 1]);
        assert!(toml::from_str::<PartialConfig>("bogus = 1").is_err());
    }

    #[test]
    fn validation() {
        let base = PartialConfig {
            check: Some("x".into()),
            n_big: Some(2),
            n: Some(3),
            ..Default::default()
        };
        let bad = PartialConfig {
            lambda: Some(LambdaField::List(vec![1, 1])),
            ..base.clone()
        };
        assert!(bad.resolve().is_err());
        let bad = PartialConfig {
            k_mode: Some("values=1".into()),
            ..base.clone()
        };
        assert!(bad.resolve().is_err());
        assert!(PartialConfig { n: None, ..base }.resolve().is_err());
    }
}
