//! `key=value` parameter files.
//!
//! One pair per line; `#` starts a comment; blank lines are ignored. Keys are
//! the [`ParamField`] keys. Missing keys keep their defaults.

use thiserror::Error;

use crate::params::{ParamField, SystemParams};

#[derive(Debug, Error, PartialEq)]
pub enum ConfigError {
    #[error("line {line}: expected key=value, got {text:?}")]
    Syntax { line: usize, text: String },
    #[error("line {line}: unknown key {key:?}")]
    UnknownKey { line: usize, key: String },
    #[error("line {line}: key {key:?} given more than once")]
    DuplicateKey { line: usize, key: String },
    #[error("line {line}: cannot parse {value:?} as a number for {key}")]
    BadValue { line: usize, key: String, value: String },
}

/// Values explicitly present in a config file or on the command line.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ParamOverrides {
    entries: Vec<(ParamField, f64)>,
}

impl ParamOverrides {
    pub fn new() -> Self {
        Self::default()
    }

    /// Later calls for the same field win.
    pub fn insert(&mut self, field: ParamField, value: f64) {
        if let Some(slot) = self.entries.iter_mut().find(|(f, _)| *f == field) {
            slot.1 = value;
        } else {
            self.entries.push((field, value));
        }
    }

    pub fn get(&self, field: ParamField) -> Option<f64> {
        self.entries.iter().find(|(f, _)| *f == field).map(|&(_, v)| v)
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn apply(&self, base: SystemParams) -> SystemParams {
        self.entries.iter().fold(base, |p, &(f, v)| p.with(f, v))
    }

    /// `other` takes precedence over `self`.
    pub fn merged_with(&self, other: &ParamOverrides) -> ParamOverrides {
        let mut out = self.clone();
        for &(f, v) in &other.entries {
            out.insert(f, v);
        }
        out
    }
}

pub fn parse_config(text: &str) -> Result<ParamOverrides, ConfigError> {
    let mut out = ParamOverrides::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content.split_once('=').ok_or_else(|| ConfigError::Syntax {
            line,
            text: raw.to_string(),
        })?;
        let (key, value) = (key.trim(), value.trim());
        let field = ParamField::from_key(key).ok_or_else(|| ConfigError::UnknownKey {
            line,
            key: key.to_string(),
        })?;
        if out.get(field).is_some() {
            return Err(ConfigError::DuplicateKey { line, key: key.to_string() });
        }
        let parsed: f64 = value.parse().map_err(|_| ConfigError::BadValue {
            line,
            key: key.to_string(),
            value: value.to_string(),
        })?;
        out.insert(field, parsed);
    }
    Ok(out)
}

/// Render a full parameter set in the config format, one key per line.
pub fn render_config(params: &SystemParams) -> String {
    ParamField::ALL
        .iter()
        .map(|&f| format!("{}={}\n", f.key(), params.get(f)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_keys_comments_and_blanks() {
        let text = "# Fig. 6 dot-dashed\nomega_c = 1.69\n\nr1=1.5  # pump\n r2=2.43\n";
        let o = parse_config(text).unwrap();
        let p = o.apply(SystemParams::default());
        assert_eq!(p.omega_c, 1.69);
        assert_eq!(p.r1, 1.5);
        assert_eq!(p.r2, 2.43);
        assert_eq!(p.gamma21, 1.0);
        assert_eq!(p.omega_scale, 100.0);
    }

    #[test]
    fn rejects_unknown_and_malformed() {
        assert!(matches!(
            parse_config("gamma=1"),
            Err(ConfigError::UnknownKey { line: 1, .. })
        ));
        assert!(matches!(
            parse_config("\nr1 1.5"),
            Err(ConfigError::Syntax { line: 2, .. })
        ));
        assert!(matches!(
            parse_config("r1=abc"),
            Err(ConfigError::BadValue { .. })
        ));
        assert!(matches!(
            parse_config("r1=1\nr1=2"),
            Err(ConfigError::DuplicateKey { line: 2, .. })
        ));
    }

    #[test]
    fn later_overrides_win() {
        let file = parse_config("r1=1\nomega_c=2").unwrap();
        let mut flags = ParamOverrides::new();
        flags.insert(ParamField::R1, 3.0);
        let p = file.merged_with(&flags).apply(SystemParams::default());
        assert_eq!((p.r1, p.omega_c), (3.0, 2.0));
    }

    #[test]
    fn render_parses_back() {
        let p = SystemParams { r1: 1.5, omega_c: 1.69, r2: 2.4316795211235, ..Default::default() };
        let back = parse_config(&render_config(&p)).unwrap().apply(SystemParams::default());
        assert_eq!(back, p);
    }
}
