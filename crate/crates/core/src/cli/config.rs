use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::codes::BitString;
use crate::error::{Error, Result};
use crate::kolmogorov::McConfig;
use crate::qpl::{ConditionSpec, MachineSpec, Mode};

/// Settings read from `--config`; every field is optional and command-line
/// flags take precedence.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    #[serde(rename = "W")]
    pub workspace: Option<usize>,
    pub mode: Option<Mode>,
    pub n: Option<usize>,
    pub m: Option<usize>,
    pub aux: Option<BitString>,
    pub max_len: Option<usize>,
    pub fuel: Option<u64>,
    pub epsilon: Option<f64>,
    pub alpha: Option<f64>,
    pub trials: Option<u64>,
    pub seed: Option<u64>,
    pub workers: Option<usize>,
    pub table: Option<PathBuf>,
    pub state: Option<PathBuf>,
    pub out: Option<PathBuf>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        serde_json::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
    }

    /// Fields set in `over` replace those in `self`.
    pub fn overlay(self, over: ConfigFile) -> ConfigFile {
        macro_rules! pick {
            ($($f:ident),*) => { ConfigFile { $($f: over.$f.or(self.$f)),* } };
        }
        pick!(
            workspace, mode, n, m, aux, max_len, fuel, epsilon, alpha, trials, seed, workers,
            table, state, out
        )
    }
}

/// The validated parameters of one invocation. Its digest identifies the
/// computation; output paths and worker counts do not enter it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub command: String,
    pub machine: MachineSpec,
    pub cond: ConditionSpec,
    pub max_len: Option<usize>,
    pub fuel: Option<u64>,
    pub mc: McConfig,
    pub table: Option<PathBuf>,
    pub state: Option<PathBuf>,
    #[serde(skip)]
    pub out: Option<PathBuf>,
    #[serde(skip)]
    pub workers: usize,
}

impl RunConfig {
    pub fn resolve(command: &str, c: ConfigFile) -> Result<Self> {
        let n = c.n.unwrap_or(1);
        let mut cond = ConditionSpec::new(n);
        cond.m = c.m;
        cond.aux = c.aux.unwrap_or_default();
        let w = c.workspace.unwrap_or_else(|| cond.output_width() + 2);
        let machine = MachineSpec::new(w, c.mode.unwrap_or(Mode::CondN))?;
        cond.validate(&machine)?;
        let mut mc = McConfig::new(
            c.epsilon.unwrap_or(0.25),
            c.alpha.unwrap_or(0.01),
            c.seed.unwrap_or(0),
        );
        mc.k = c.trials;
        let workers = c.workers.unwrap_or(1);
        if workers == 0 {
            return Err(Error::Config("workers must be at least 1".into()));
        }
        Ok(Self {
            command: command.to_string(),
            machine,
            cond,
            max_len: c.max_len,
            fuel: c.fuel,
            mc,
            table: c.table,
            state: c.state,
            out: c.out,
            workers,
        })
    }

    pub fn digest(&self) -> String {
        let json = serde_json::to_string(self).expect("config serializes");
        hex::encode(Sha256::digest(json.as_bytes()))
    }
}
