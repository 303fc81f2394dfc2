use std::cell::RefCell;
use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};

/// Subcommand name, `key=value` parameters and output directory.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub subcommand: String,
    params: BTreeMap<String, String>,
    pub out_dir: PathBuf,
    used: RefCell<BTreeSet<String>>,
    resolved: RefCell<BTreeMap<String, String>>,
}

/// Parse `key=value` lines; blank lines and `#` comments are skipped.
pub fn parse_pairs(text: &str) -> Result<Vec<(String, String)>> {
    let mut out = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        out.push(split_pair(line).map_err(|_| Error::config(line, format!("line {} is not key=value", n + 1)))?);
    }
    Ok(out)
}

fn split_pair(s: &str) -> Result<(String, String)> {
    match s.split_once('=') {
        Some((k, v)) if !k.trim().is_empty() => Ok((k.trim().to_string(), v.trim().to_string())),
        _ => Err(Error::config(s, "expected key=value")),
    }
}

impl RunConfig {
    /// Later pairs override earlier ones.
    pub fn new(subcommand: &str, pairs: impl IntoIterator<Item = (String, String)>, out_dir: &Path) -> Self {
        Self {
            subcommand: subcommand.to_string(),
            params: pairs.into_iter().collect(),
            out_dir: out_dir.to_path_buf(),
            used: RefCell::default(),
            resolved: RefCell::default(),
        }
    }

    /// Config file contents followed by command-line overrides.
    pub fn from_sources(subcommand: &str, file: Option<&str>, overrides: &[String], out_dir: &Path) -> Result<Self> {
        let mut pairs = match file {
            Some(text) => parse_pairs(text)?,
            None => Vec::new(),
        };
        for o in overrides {
            pairs.push(split_pair(o)?);
        }
        Ok(Self::new(subcommand, pairs, out_dir))
    }

    fn raw(&self, key: &str) -> Option<&str> {
        self.used.borrow_mut().insert(key.to_string());
        self.params.get(key).map(String::as_str)
    }

    fn record(&self, key: &str, value: String) {
        self.resolved.borrow_mut().insert(key.to_string(), value);
    }

    pub fn has(&self, key: &str) -> bool {
        self.raw(key).is_some()
    }

    pub fn string(&self, key: &str, default: &str) -> String {
        let v = self.raw(key).unwrap_or(default).to_string();
        self.record(key, v.clone());
        v
    }

    pub fn required_string(&self, key: &str) -> Result<String> {
        let v = self.raw(key).ok_or_else(|| Error::config(key, "required key missing"))?.to_string();
        self.record(key, v.clone());
        Ok(v)
    }

    pub fn f64(&self, key: &str, default: f64) -> Result<f64> {
        let v = match self.raw(key) {
            Some(s) => parse_f64(key, s)?,
            None => default,
        };
        self.record(key, format!("{v:?}"));
        Ok(v)
    }

    pub fn positive(&self, key: &str, default: f64) -> Result<f64> {
        let v = self.f64(key, default)?;
        if !(v > 0.0) {
            return Err(Error::config(key, format!("must be positive, got {v}")));
        }
        Ok(v)
    }

    /// Optional number; the literal `none` counts as absent.
    pub fn optional_f64(&self, key: &str) -> Result<Option<f64>> {
        let v = match self.raw(key) {
            None | Some("none") => None,
            Some(s) => Some(parse_f64(key, s)?),
        };
        self.record(key, v.map_or("none".into(), |v| format!("{v:?}")));
        Ok(v)
    }

    pub fn bool(&self, key: &str, default: bool) -> Result<bool> {
        let v = match self.raw(key) {
            None => default,
            Some("true" | "1" | "yes") => true,
            Some("false" | "0" | "no") => false,
            Some(s) => return Err(Error::config(key, format!("expected true or false, got `{s}`"))),
        };
        self.record(key, v.to_string());
        Ok(v)
    }

    pub fn list(&self, key: &str, default: &[f64]) -> Result<Vec<f64>> {
        let v = match self.raw(key) {
            None => default.to_vec(),
            Some("") => Vec::new(),
            Some(s) => s.split(',').map(|x| parse_f64(key, x.trim())).collect::<Result<_>>()?,
        };
        self.record(key, v.iter().map(|x| format!("{x:?}")).collect::<Vec<_>>().join(","));
        Ok(v)
    }

    pub fn pair(&self, key: &str, default: (f64, f64)) -> Result<(f64, f64)> {
        let v = self.list(key, &[default.0, default.1])?;
        match v[..] {
            [a, b] => Ok((a, b)),
            _ => Err(Error::config(key, format!("expected two comma-separated numbers, got {}", v.len()))),
        }
    }

    /// Reject keys nobody asked for.
    pub fn finish(&self) -> Result<()> {
        let used = self.used.borrow();
        match self.params.keys().find(|k| !used.contains(*k)) {
            Some(k) => Err(Error::config(k.clone(), format!("unknown key for `{}`", self.subcommand))),
            None => Ok(()),
        }
    }

    /// Every parameter read so far, defaults included.
    pub fn resolved(&self) -> Vec<(String, String)> {
        self.resolved.borrow().iter().map(|(k, v)| (k.clone(), v.clone())).collect()
    }
}

fn parse_f64(key: &str, s: &str) -> Result<f64> {
    let v: f64 = s.parse().map_err(|_| Error::config(key, format!("`{s}` is not a number")))?;
    if !v.is_finite() {
        return Err(Error::config(key, format!("`{s}` is not finite")));
    }
    Ok(v)
}
