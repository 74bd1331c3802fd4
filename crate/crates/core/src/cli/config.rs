use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::additivity::Formulation;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FormulationFlag {
    Modern,
    Classical,
    Both,
}

impl FormulationFlag {
    pub fn list(self) -> Vec<Formulation> {
        match self {
            FormulationFlag::Modern => vec![Formulation::Modern],
            FormulationFlag::Classical => vec![Formulation::Classical],
            FormulationFlag::Both => vec![Formulation::Modern, Formulation::Classical],
        }
    }
}

/// A corpus instance and its size, written `name` or `name:size`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InstanceSpec {
    pub name: String,
    pub size: usize,
}

impl InstanceSpec {
    pub fn label(&self) -> String {
        format!("{}:{}", self.name, self.size)
    }
}

/// One flat document; every key is optional and unknown keys are rejected.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SuiteConfig {
    pub instances: Vec<String>,
    /// Size for descriptors that carry none.
    pub size: usize,
    pub trunc: usize,
    pub n_max: usize,
    pub m_max: usize,
    pub k_max: usize,
    pub budget: usize,
    pub formulation: FormulationFlag,
    pub out: PathBuf,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            instances: vec!["pointed_sets:2".into(), "vect_f2:1".into()],
            size: 2,
            trunc: 3,
            n_max: 2,
            m_max: 1,
            k_max: 2,
            budget: 200_000,
            formulation: FormulationFlag::Both,
            out: PathBuf::from("reports"),
        }
    }
}

impl SuiteConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: SuiteConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string().trim_end().to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |key: &str, why: &str| Err(Error::Config(format!("key `{}`: {}", key, why)));
        if self.instances.is_empty() {
            return bad("instances", "at least one instance is required");
        }
        for (key, v) in [("size", self.size), ("trunc", self.trunc), ("n_max", self.n_max), ("budget", self.budget)] {
            if v == 0 {
                return bad(key, "must be positive");
            }
        }
        if self.trunc < self.n_max + 1 {
            return bad("trunc", &format!("must be at least n_max + 1 = {}", self.n_max + 1));
        }
        if self.m_max > self.n_max {
            return bad("m_max", "must not exceed n_max");
        }
        self.instance_specs().map(|_| ())
    }

    pub fn instance_specs(&self) -> Result<Vec<InstanceSpec>> {
        self.instances
            .iter()
            .enumerate()
            .map(|(k, d)| {
                let (name, size) = match d.split_once(':') {
                    Some((n, s)) => (n, s.parse::<usize>().map_err(|_| Error::Config(format!("key `instances`, entry {}: bad size in {:?}", k + 1, d)))?),
                    None => (d.as_str(), self.size),
                };
                if !matches!(name, "pointed_sets" | "vect_f2") {
                    return Err(Error::Config(format!("key `instances`, entry {}: unknown instance {:?}", k + 1, name)));
                }
                if size == 0 {
                    return Err(Error::Config(format!("key `instances`, entry {}: size must be positive", k + 1)));
                }
                Ok(InstanceSpec { name: name.to_string(), size })
            })
            .collect()
    }
}
