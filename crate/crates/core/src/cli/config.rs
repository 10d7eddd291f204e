use std::path::Path;
use std::str::FromStr;

use clap::ValueEnum;

use super::{BranchArg, CliError, Format};

/// Settings read from a `key=value` file. Blank lines and `#` comments are
/// ignored; unknown keys are an error.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConfigFile {
    pub mass_mev: Option<f64>,
    pub u0_mev_fm: Option<f64>,
    pub a_inv_fm: Option<Vec<f64>>,
    pub hbar_c: Option<f64>,
    pub n_max: Option<usize>,
    pub j_max: Option<usize>,
    pub branch: Option<BranchArg>,
    pub format: Option<Format>,
    pub tolerance: Option<f64>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut cfg = ConfigFile::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = |msg: &str| CliError::Usage(format!("config line {}: {msg}: {raw}", lineno + 1));
            let (key, value) = line.split_once('=').ok_or_else(|| bad("expected key=value"))?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "mass_mev" => cfg.mass_mev = Some(number(value).ok_or_else(|| bad("bad number"))?),
                "u0_mev_fm" => cfg.u0_mev_fm = Some(number(value).ok_or_else(|| bad("bad number"))?),
                "a_inv_fm" => {
                    let list: Option<Vec<f64>> = value.split(',').map(|v| number(v.trim())).collect();
                    cfg.a_inv_fm = Some(list.ok_or_else(|| bad("bad number list"))?);
                }
                "hbar_c" => cfg.hbar_c = Some(number(value).ok_or_else(|| bad("bad number"))?),
                "n_max" => cfg.n_max = Some(number(value).ok_or_else(|| bad("bad integer"))?),
                "j_max" => cfg.j_max = Some(number(value).ok_or_else(|| bad("bad integer"))?),
                "branch" => cfg.branch = Some(BranchArg::from_str(value, true).map_err(|_| bad("unknown branch"))?),
                "format" => cfg.format = Some(Format::from_str(value, true).map_err(|_| bad("unknown format"))?),
                "tolerance" => cfg.tolerance = Some(number(value).ok_or_else(|| bad("bad number"))?),
                _ => return Err(bad("unknown key")),
            }
        }
        Ok(cfg)
    }
}

fn number<T: FromStr>(s: &str) -> Option<T> {
    s.parse().ok()
}
