use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use clap::{Args, ValueEnum};
use serde::{Deserialize, Serialize};

use fmodule::coeff::{make_ring, RingParams};
use fmodule::hopf::CoproductRoute;
use fmodule::universal::Convention;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum ConventionArg {
    Araki,
    Hazewinkel,
}

impl From<ConventionArg> for Convention {
    fn from(c: ConventionArg) -> Convention {
        match c {
            ConventionArg::Araki => Convention::Araki,
            ConventionArg::Hazewinkel => Convention::Hazewinkel,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum RouteArg {
    Witt,
    Logmatch,
}

impl From<RouteArg> for CoproductRoute {
    fn from(r: RouteArg) -> CoproductRoute {
        match r {
            RouteArg::Witt => CoproductRoute::Witt,
            RouteArg::Logmatch => CoproductRoute::Logmatch,
        }
    }
}

/// Every setting, as given on the command line or in a TOML config file.
/// Command-line values take precedence over the file.
#[derive(Clone, Debug, Default, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Settings {
    /// Residue characteristic.
    #[arg(long, global = true)]
    pub p: Option<i64>,
    /// Ramification degree.
    #[arg(long, global = true)]
    pub e: Option<i64>,
    /// Residue degree.
    #[arg(long, global = true)]
    pub f: Option<i64>,
    /// Unit in π^e = u·p.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub u: Option<i64>,
    #[arg(long, global = true, value_enum)]
    pub convention: Option<ConventionArg>,
    /// Degree bound.
    #[arg(long = "D", global = true)]
    #[serde(rename = "D")]
    pub d: Option<u64>,
    /// Number of logarithm coefficients.
    #[arg(long, global = true)]
    pub n: Option<u32>,
    /// Generator index.
    #[arg(long, global = true)]
    pub k: Option<u32>,
    /// Height.
    #[arg(long, global = true)]
    pub h: Option<u32>,
    /// Highest generator index used by a suite.
    #[arg(long, global = true)]
    pub kmax: Option<u32>,
    /// Number of Witt variables.
    #[arg(long, global = true)]
    pub m: Option<u32>,
    /// Witt index sequence such as "(1,2)".
    #[arg(long, global = true)]
    pub seq: Option<String>,
    /// Index of a classical Witt polynomial (instead of --seq).
    #[arg(long, global = true)]
    pub classical: Option<u32>,
    #[arg(long, global = true, value_enum)]
    pub route: Option<RouteArg>,
    #[arg(long, global = true, value_enum)]
    pub output: Option<OutputFormat>,
    /// Cache directory (overrides FMODULE_CACHE_DIR).
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
}

pub const CACHE_ENV: &str = "FMODULE_CACHE_DIR";

impl Settings {
    pub fn load(path: &Path) -> anyhow::Result<Settings> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        toml::from_str(&text).with_context(|| format!("parsing {}", path.display()))
    }

    /// `self` with unset fields filled from `base`.
    pub fn over(self, base: Settings) -> Settings {
        Settings {
            p: self.p.or(base.p),
            e: self.e.or(base.e),
            f: self.f.or(base.f),
            u: self.u.or(base.u),
            convention: self.convention.or(base.convention),
            d: self.d.or(base.d),
            n: self.n.or(base.n),
            k: self.k.or(base.k),
            h: self.h.or(base.h),
            kmax: self.kmax.or(base.kmax),
            m: self.m.or(base.m),
            seq: self.seq.or(base.seq),
            classical: self.classical.or(base.classical),
            route: self.route.or(base.route),
            output: self.output.or(base.output),
            cache_dir: self.cache_dir.or(base.cache_dir),
        }
    }

    pub fn ring(&self) -> anyhow::Result<RingParams> {
        let Some(p) = self.p else { bail!("--p is required") };
        Ok(make_ring(p, self.e.unwrap_or(1), self.f.unwrap_or(1), self.u.unwrap_or(1))?)
    }

    pub fn convention(&self) -> Convention {
        self.convention.unwrap_or(ConventionArg::Araki).into()
    }

    pub fn output(&self) -> OutputFormat {
        self.output.unwrap_or(OutputFormat::Text)
    }

    pub fn positive(name: &str, v: Option<u32>, default: u32) -> anyhow::Result<u32> {
        let v = v.unwrap_or(default);
        if v == 0 {
            bail!("--{name} must be positive");
        }
        Ok(v)
    }

    pub fn cache_dir(&self) -> Option<PathBuf> {
        self.cache_dir.clone().or_else(|| std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(PathBuf::from))
    }
}
