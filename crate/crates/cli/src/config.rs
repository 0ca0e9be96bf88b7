//! `key = value` configuration files whose keys mirror the sweep flags.

use std::collections::BTreeMap;
use std::path::Path;

use crate::error::{usage, Failure};

pub const KEYS: [&str; 8] = [
    "n",
    "m",
    "xi",
    "mode",
    "oracle",
    "skip-degenerate",
    "jobs",
    "out",
];

#[derive(Debug, Default, Clone, PartialEq)]
pub struct Config {
    values: BTreeMap<String, String>,
}

impl Config {
    pub fn parse(text: &str) -> Result<Self, Failure> {
        let mut values = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                usage(format!("config line {}: expected key = value", lineno + 1))
            })?;
            let key = key.trim().replace('_', "-");
            if !KEYS.contains(&key.as_str()) {
                return Err(usage(format!(
                    "config line {}: unknown key '{key}'",
                    lineno + 1
                )));
            }
            values.insert(key, value.trim().to_string());
        }
        Ok(Self { values })
    }

    pub fn load(path: &Path) -> Result<Self, Failure> {
        let text = std::fs::read_to_string(path).map_err(|source| Failure::MissingInput {
            path: path.to_path_buf(),
            source,
        })?;
        Self::parse(&text)
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    pub fn flag(&self, key: &str) -> Result<bool, Failure> {
        match self.get(key) {
            None => Ok(false),
            Some(v) => v.parse::<bool>().map_err(|_| {
                usage(format!(
                    "config key '{key}' expects true or false, got '{v}'"
                ))
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_key_values_and_comments() {
        let cfg =
            Config::parse("# sweep\nn = 100\nm=10,20  # two curves\n\nskip_degenerate = true\n")
                .unwrap();
        assert_eq!(cfg.get("n"), Some("100"));
        assert_eq!(cfg.get("m"), Some("10,20"));
        assert!(cfg.flag("skip-degenerate").unwrap());
        assert!(!cfg.flag("oracle").unwrap());
        assert_eq!(cfg.get("xi"), None);
    }

    #[test]
    fn rejects_malformed_lines() {
        assert!(Config::parse("n 100").is_err());
        assert!(Config::parse("colour = red").is_err());
        assert!(Config::parse("oracle = yes")
            .unwrap()
            .flag("oracle")
            .is_err());
    }
}
