use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::braid::{BraidWord, GroupId};
use crate::cochain::{ClassSpec, CochainHandle, QmSpec, QmTerm, DEFAULT_DEPTH};
use crate::error::{Error, Result};
use crate::integrator::{EstimateOptions, MIN_SAMPLES};
use crate::rho::{build_regions, p_group, RegionSpec};
use crate::trajectory::Surface;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CommandKind {
    VerifyCaseTable,
    Sweep,
    Estimate,
    Selftest,
}

/// Everything a run depends on. Embedded verbatim in every report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub command: CommandKind,
    pub surface: Surface,
    pub epsilon: Vec<f64>,
    pub class: ClassSpec,
    pub elements: Vec<String>,
    pub n_samples: usize,
    pub seed: u64,
    pub workers: usize,
    pub audit_fraction: f64,
    #[serde(default)]
    pub stratified: bool,
    /// Case-table verification: configurations per reachable type.
    pub configs_per_type: usize,
    /// Case-table verification: extra random words on top of the fixed set.
    pub random_words: usize,
    pub max_word_len: usize,
    /// Not echoed into reports, so the same run is byte-identical wherever it lands.
    #[serde(default, skip_serializing)]
    pub out: Option<PathBuf>,
}

pub const SWEEP_EPSILONS: [f64; 5] = [0.5, 0.3, 0.2, 0.1, 0.05];

/// Brooks `h_{first second}` on the quotient group of `surface`, degree 1.
pub fn default_class(surface: Surface) -> ClassSpec {
    let qm = match surface {
        Surface::Disc => QmSpec::default_test_class(),
        s => {
            let g = p_group(s);
            let n = g.generator_names();
            QmSpec {
                group: g,
                terms: vec![QmTerm {
                    pattern: format!("{} {}", n[0], n[1]),
                    weight: 1.0,
                }],
                depth: DEFAULT_DEPTH,
                pullback: None,
            }
        }
    };
    ClassSpec {
        qm: Some(qm),
        degree: 1,
        group: None,
    }
}

/// `(e, [g1,g2]^2)` in the quotient group of `surface`.
pub fn default_elements(surface: Surface) -> Vec<String> {
    let n = p_group(surface).generator_names();
    let comm = format!("{0} {1} {0}^-1 {1}^-1", n[0], n[1]);
    vec!["e".into(), format!("{comm} {comm}")]
}

impl RunConfig {
    pub fn defaults(command: CommandKind, surface: Surface) -> RunConfig {
        let epsilon = match command {
            CommandKind::Sweep => SWEEP_EPSILONS.to_vec(),
            _ => vec![0.2],
        };
        RunConfig {
            command,
            surface,
            epsilon,
            class: default_class(surface),
            elements: default_elements(surface),
            n_samples: 100_000,
            seed: 0,
            workers: 1,
            audit_fraction: 0.02,
            stratified: false,
            configs_per_type: 25,
            random_words: 10,
            max_word_len: 8,
            out: None,
        }
    }

    /// Overlays the keys of a JSON object on this config.
    pub fn overlay(&self, patch: &serde_json::Value) -> Result<RunConfig> {
        let serde_json::Value::Object(patch) = patch else {
            return Err(Error::InvalidConfig(
                "config file must hold a JSON object".into(),
            ));
        };
        let mut base = serde_json::to_value(self)?;
        let obj = base
            .as_object_mut()
            .expect("struct serializes to an object");
        for (k, v) in patch {
            obj.insert(k.clone(), v.clone());
        }
        let mut out: RunConfig =
            serde_json::from_value(base).map_err(|e| Error::InvalidConfig(e.to_string()))?;
        if out.out.is_none() {
            out.out = self.out.clone();
        }
        Ok(out)
    }

    pub fn group(&self) -> GroupId {
        p_group(self.surface)
    }

    pub fn options(&self) -> EstimateOptions {
        EstimateOptions {
            n_samples: self.n_samples,
            seed: self.seed,
            audit_fraction: self.audit_fraction,
            workers: self.workers,
            stratified: self.stratified,
            ..EstimateOptions::default()
        }
    }

    pub fn parse_elements(&self) -> Result<Vec<BraidWord>> {
        let g = self.group();
        self.elements
            .iter()
            .map(|w| BraidWord::parse(&g, w))
            .collect()
    }

    pub fn regions(&self) -> Result<Vec<RegionSpec>> {
        self.epsilon
            .iter()
            .map(|&e| build_regions(self.surface, e))
            .collect()
    }

    pub fn cochain(&self) -> Result<CochainHandle> {
        let c = self.class.build()?;
        if *c.group() != self.group() {
            return Err(Error::GroupMismatch {
                expected: self.group().to_string(),
                found: c.group().to_string(),
            });
        }
        Ok(c)
    }

    /// Checks every precondition the command relies on before any work.
    pub fn validate(&self) -> Result<()> {
        if self.epsilon.is_empty() {
            return Err(Error::InvalidConfig("no epsilon given".into()));
        }
        self.regions()?;
        if !(0.0..=1.0).contains(&self.audit_fraction) {
            return Err(Error::InvalidConfig(format!(
                "audit fraction {} outside [0,1]",
                self.audit_fraction
            )));
        }
        match self.command {
            CommandKind::Sweep | CommandKind::Estimate => {
                if self.command == CommandKind::Sweep
                    && self.epsilon.windows(2).any(|w| w[1] >= w[0])
                {
                    return Err(Error::InvalidConfig(
                        "sweep epsilons must be strictly decreasing".into(),
                    ));
                }
                if self.n_samples < MIN_SAMPLES {
                    return Err(Error::InsufficientSamples {
                        got: self.n_samples,
                        min: MIN_SAMPLES,
                    });
                }
                let c = self.cochain()?;
                let el = self.parse_elements()?;
                if el.len() != c.degree() + 1 {
                    return Err(Error::InvalidConfig(format!(
                        "degree {} class needs {} elements, got {}",
                        c.degree(),
                        c.degree() + 1,
                        el.len()
                    )));
                }
            }
            CommandKind::VerifyCaseTable => {
                if self.configs_per_type == 0 {
                    return Err(Error::InvalidConfig(
                        "configs_per_type must be positive".into(),
                    ));
                }
            }
            CommandKind::Selftest => {}
        }
        Ok(())
    }
}
