//! Figure presets: parameter sets transcribed from the figure captions,
//! stored as data and overridable by a user file.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Deserialize;

use crate::{CliError, CliResult};

const EMBEDDED: &str = include_str!("../presets.toml");

#[derive(Debug, Clone, Deserialize)]
pub struct Preset {
    /// Caption citation carried into emitted metadata.
    pub citation: String,
    pub description: String,
    #[serde(default)]
    pub values: BTreeMap<String, toml::Value>,
}

impl Preset {
    pub fn number(&self, key: &str) -> CliResult<f64> {
        match self.values.get(key) {
            Some(toml::Value::Float(x)) => Ok(*x),
            Some(toml::Value::Integer(x)) => Ok(*x as f64),
            _ => Err(CliError::Usage(format!("preset lacks numeric key `{key}`"))),
        }
    }

    pub fn count(&self, key: &str) -> CliResult<usize> {
        match self.values.get(key) {
            Some(toml::Value::Integer(x)) if *x >= 2 => Ok(*x as usize),
            _ => Err(CliError::Usage(format!("preset lacks count key `{key}`"))),
        }
    }

    pub fn list(&self, key: &str) -> CliResult<Vec<f64>> {
        match self.values.get(key) {
            Some(toml::Value::Array(items)) => items
                .iter()
                .map(|v| match v {
                    toml::Value::Float(x) => Ok(*x),
                    toml::Value::Integer(x) => Ok(*x as f64),
                    _ => Err(CliError::Usage(format!("preset key `{key}` is not numeric"))),
                })
                .collect(),
            _ => Err(CliError::Usage(format!("preset lacks list key `{key}`"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct PresetSet {
    presets: BTreeMap<String, Preset>,
}

impl PresetSet {
    pub fn embedded() -> Self {
        let presets: BTreeMap<String, Preset> =
            toml::from_str(EMBEDDED).expect("embedded presets parse");
        Self { presets }
    }

    /// Embedded presets with user replacements merged in by id.
    pub fn with_override(path: &Path) -> CliResult<Self> {
        let mut base = Self::embedded();
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read presets {}: {e}", path.display())))?;
        let user: BTreeMap<String, Preset> = toml::from_str(&text)
            .map_err(|e| CliError::Usage(format!("presets {}: {e}", path.display())))?;
        base.presets.extend(user);
        Ok(base)
    }

    pub fn get(&self, id: &str) -> Option<&Preset> {
        self.presets.get(id)
    }

    pub fn ids(&self) -> impl Iterator<Item = &str> {
        self.presets.keys().map(String::as_str)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_presets_cover_all_figures() {
        let set = PresetSet::embedded();
        for i in 1..=11 {
            let id = format!("fig{i}");
            let p = set.get(&id).unwrap_or_else(|| panic!("missing {id}"));
            assert!(!p.citation.is_empty());
        }
    }

    #[test]
    fn caption_constants_present() {
        let set = PresetSet::embedded();
        let fig8 = set.get("fig8").unwrap();
        assert_eq!(fig8.number("c1").unwrap(), 20.0);
        assert_eq!(fig8.number("c2").unwrap(), 20.0);
        let fig5 = set.get("fig5").unwrap();
        assert_eq!(fig5.list("c2_list").unwrap(), vec![0.278, 0.220, 0.500]);
        assert!(fig5.citation.contains("5.000, 0.278"));
    }
}
