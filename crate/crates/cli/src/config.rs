//! Flat key-value config files with repeatable sweep keys.
//!
//! ```text
//! # sweep keys may repeat; values are numbers, complex literals,
//! # or start:stop:step ranges
//! n = 0
//! n = 1
//! v = -0.5:1.5:1.0
//! lambda = 0.5
//! max-radius = 0.999
//! ```
//!
//! Command-line flags override the file per key.

use std::collections::BTreeMap;
use std::path::Path;

use num_complex::Complex64;

use crate::values::{parse_complex, parse_sweep};

/// Parsed config file: key -> accumulated raw values in file order.
#[derive(Debug, Clone, Default)]
pub struct FileConfig {
    entries: BTreeMap<String, Vec<String>>,
}

fn normalize(key: &str) -> String {
    key.trim().to_ascii_lowercase().replace('_', "-")
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, String> {
        let mut entries: BTreeMap<String, Vec<String>> = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| format!("config line {}: expected 'key = value'", idx + 1))?;
            let value = value.trim();
            if value.is_empty() {
                return Err(format!("config line {}: empty value", idx + 1));
            }
            entries
                .entry(normalize(key))
                .or_default()
                .push(value.to_string());
        }
        Ok(Self { entries })
    }

    pub fn raw(&self, key: &str) -> Option<&[String]> {
        self.entries.get(&normalize(key)).map(|v| v.as_slice())
    }
}

/// A flag value (already split by clap) or the config fallback, expanded to
/// the sweep it denotes.
pub fn sweep_f64(
    flag: &Option<Vec<String>>,
    file: &FileConfig,
    key: &str,
    default: &[f64],
) -> Result<Vec<f64>, String> {
    let raw: Option<Vec<String>> = flag
        .clone()
        .or_else(|| file.raw(key).map(|v| v.to_vec()));
    match raw {
        None => Ok(default.to_vec()),
        Some(entries) => {
            let mut out = Vec::new();
            for e in entries {
                out.extend(parse_sweep(&e).map_err(|m| format!("{key}: {m}"))?);
            }
            Ok(out)
        }
    }
}

/// Integer sweep (n values); ranges step through integers.
pub fn sweep_u32(
    flag: &Option<Vec<String>>,
    file: &FileConfig,
    key: &str,
    default: &[u32],
) -> Result<Vec<u32>, String> {
    let floats = sweep_f64(
        flag,
        file,
        key,
        &default.iter().map(|&x| x as f64).collect::<Vec<_>>(),
    )?;
    floats
        .into_iter()
        .map(|x| {
            if x >= 0.0 && x.fract() == 0.0 {
                Ok(x as u32)
            } else {
                Err(format!("{key}: '{x}' is not a nonnegative integer"))
            }
        })
        .collect()
}

/// Complex value list.
pub fn sweep_complex(
    flag: &Option<Vec<String>>,
    file: &FileConfig,
    key: &str,
    default: &[Complex64],
) -> Result<Vec<Complex64>, String> {
    let raw: Option<Vec<String>> = flag
        .clone()
        .or_else(|| file.raw(key).map(|v| v.to_vec()));
    match raw {
        None => Ok(default.to_vec()),
        Some(entries) => entries
            .iter()
            .map(|e| parse_complex(e).map_err(|m| format!("{key}: {m}")))
            .collect(),
    }
}

/// Scalar with flag-over-file precedence.
pub fn scalar<T: std::str::FromStr>(
    flag: Option<T>,
    file: &FileConfig,
    key: &str,
    default: T,
) -> Result<T, String> {
    if let Some(v) = flag {
        return Ok(v);
    }
    match file.raw(key) {
        Some(values) => values
            .last()
            .unwrap()
            .parse()
            .map_err(|_| format!("{key}: cannot parse '{}'", values.last().unwrap())),
        None => Ok(default),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_repeatable_keys_and_comments() {
        let cfg = FileConfig::parse(
            "# sweep\nn = 0\nn = 1\nv = -0.5:1.5:1.0\nmax_radius = 0.99 # inline\n",
        )
        .unwrap();
        assert_eq!(cfg.raw("n").unwrap().len(), 2);
        assert_eq!(cfg.raw("max-radius").unwrap(), ["0.99"]);
        let ns = sweep_u32(&None, &cfg, "n", &[7]).unwrap();
        assert_eq!(ns, vec![0, 1]);
        let vs = sweep_f64(&None, &cfg, "v", &[]).unwrap();
        assert_eq!(vs, vec![-0.5, 0.5, 1.5]);
    }

    #[test]
    fn flags_override_file() {
        let cfg = FileConfig::parse("lambda = 0.25\n").unwrap();
        let flag = Some(vec!["1.0".to_string()]);
        assert_eq!(sweep_f64(&flag, &cfg, "lambda", &[]).unwrap(), vec![1.0]);
        assert_eq!(sweep_f64(&None, &cfg, "lambda", &[]).unwrap(), vec![0.25]);
        assert_eq!(scalar(Some(9usize), &cfg, "trunc", 40).unwrap(), 9);
    }

    #[test]
    fn rejects_malformed_lines() {
        assert!(FileConfig::parse("just words\n").is_err());
        assert!(FileConfig::parse("n =\n").is_err());
    }
}
