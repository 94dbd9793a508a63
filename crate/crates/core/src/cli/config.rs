use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::halgebra::Window;
use crate::qscalar::Field;

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum FieldConfig {
    Symbolic,
    Numeric { q: String },
}

impl FieldConfig {
    pub fn build(&self) -> Result<Field> {
        match self {
            FieldConfig::Symbolic => Ok(Field::symbolic()),
            FieldConfig::Numeric { q } => Field::numeric_str(q),
        }
    }
}

/// Settings read from a JSON config file; every key is optional.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub field: FieldConfig,
    pub window: Window,
    pub depth: usize,
    pub seed: u64,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            field: FieldConfig::Symbolic,
            window: Window::new(-4, 4, 6).expect("valid window"),
            depth: 3,
            seed: 0,
        }
    }
}

impl Config {
    pub fn load(path: &Path) -> Result<Config> {
        let text = std::fs::read_to_string(path)?;
        let cfg: Config = serde_json::from_str(&text)?;
        if cfg.depth == 0 {
            return Err(Error::InvalidArgument("config depth must be >= 1".into()));
        }
        Ok(cfg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_partial_config() {
        let cfg: Config = serde_json::from_str(r#"{"field": {"mode": "numeric", "q": "2"}, "seed": 9}"#).unwrap();
        assert_eq!(cfg.field, FieldConfig::Numeric { q: "2".into() });
        assert_eq!(cfg.seed, 9);
        assert_eq!(cfg.depth, 3);
        assert!(cfg.field.build().is_ok());
        let bad: Config = serde_json::from_str(r#"{"field": {"mode": "numeric", "q": "-1"}}"#).unwrap();
        assert!(bad.field.build().is_err());
        assert!(serde_json::from_str::<Config>(r#"{"colour": 1}"#).is_err());
    }
}
