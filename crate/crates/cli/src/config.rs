//! Run configuration: seeds, depths and enclosure widths.
//!
//! The seed fully determines every sampled grid and pair list, so two runs
//! with the same configuration produce byte-identical reports.

use std::collections::BTreeMap;
use std::path::Path;

use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};

use qsolovay_core::files::{
    parse_fixture_file, parse_machine_file, standard_fixtures, toy_machine_34,
};
use qsolovay_core::rational::{parse_rational, Rational};
use qsolovay_core::{LeftCEReal, PrefixFreeMachine};

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default)]
pub struct RunConfig {
    /// Stage depth for sequence-level checks.
    pub depth: u64,
    /// Seed for every sampled grid and pair list.
    pub seed: u64,
    /// Default number of samples per check.
    pub sample_count: usize,
    /// Depth of bit accessors backing expansion-driven witnesses.
    pub bit_depth: u64,
    /// Enclosure width for crossover abscissae, as "p/q".
    pub eps_t: String,
    /// Enclosure width for curve evaluation, as "p/q".
    pub eps_eval: String,
    /// Report output directory.
    pub out_dir: String,
    /// Extra fixture definitions merged over the built-in set.
    pub fixtures_path: Option<String>,
    /// Extra machine definitions merged over the built-in toy machine.
    pub machines_path: Option<String>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            depth: 64,
            seed: 1729,
            sample_count: 50,
            bit_depth: 4096,
            eps_t: "1/16777216".into(),   // 2^-24
            eps_eval: "1/1048576".into(), // 2^-20
            out_dir: "reports".into(),
            fixtures_path: None,
            machines_path: None,
        }
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        let cfg: RunConfig = serde_json::from_str(&text)
            .with_context(|| format!("parsing config {}", path.display()))?;
        Ok(cfg)
    }

    pub fn eps_t(&self) -> Result<Rational> {
        Ok(parse_rational(&self.eps_t)?)
    }

    pub fn eps_eval(&self) -> Result<Rational> {
        Ok(parse_rational(&self.eps_eval)?)
    }

    pub fn machines(&self) -> Result<BTreeMap<String, PrefixFreeMachine>> {
        let mut out = BTreeMap::new();
        let toy = toy_machine_34();
        out.insert(toy.id.clone(), toy);
        if let Some(path) = &self.machines_path {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading machines {}", path))?;
            for m in parse_machine_file(&text)? {
                out.insert(m.id.clone(), m);
            }
        }
        Ok(out)
    }

    pub fn fixtures(&self) -> Result<BTreeMap<String, LeftCEReal>> {
        let mut out = standard_fixtures();
        if let Some(path) = &self.fixtures_path {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading fixtures {}", path))?;
            let machines = self.machines()?;
            for (label, real) in parse_fixture_file(&text, &machines)? {
                out.insert(label, real);
            }
        }
        Ok(out)
    }

    pub fn fixture(&self, label: &str) -> Result<LeftCEReal> {
        self.fixtures()?
            .remove(label)
            .with_context(|| format!("unknown fixture {:?}", label))
    }
}
