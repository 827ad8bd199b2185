//! Plain-text `key = value` experiment configs.
//!
//! Keys mirror the long command-line flags one-to-one; values given on the
//! command line win over the file. Unknown or malformed keys are rejected.

use std::collections::BTreeMap;
use std::str::FromStr;

#[derive(Debug, Default)]
pub struct ConfigMap {
    entries: BTreeMap<String, String>,
}

impl ConfigMap {
    pub fn parse(text: &str) -> Result<Self, String> {
        let mut entries = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| format!("line {}: expected 'key = value', got '{raw}'", lineno + 1))?;
            let key = key.trim().to_string();
            let value = value.trim().to_string();
            if key.is_empty() || value.is_empty() {
                return Err(format!("line {}: empty key or value", lineno + 1));
            }
            if entries.insert(key.clone(), value).is_some() {
                return Err(format!("line {}: duplicate key '{key}'", lineno + 1));
            }
        }
        Ok(ConfigMap { entries })
    }

    pub fn load(path: &str) -> Result<Self, String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read config '{path}': {e}"))?;
        Self::parse(&text)
    }

    /// Remove and parse the value for `key`, if present.
    pub fn take<T: FromStr>(&mut self, key: &str) -> Result<Option<T>, String>
    where
        T::Err: std::fmt::Display,
    {
        match self.entries.remove(key) {
            None => Ok(None),
            Some(v) => v
                .parse::<T>()
                .map(Some)
                .map_err(|e| format!("config key '{key}': cannot parse '{v}': {e}")),
        }
    }

    /// Error out if any unconsumed keys remain.
    pub fn finish(self) -> Result<(), String> {
        if self.entries.is_empty() {
            Ok(())
        } else {
            let keys: Vec<&str> = self.entries.keys().map(|s| s.as_str()).collect();
            Err(format!("unknown config keys: {}", keys.join(", ")))
        }
    }
}

/// Flag value if given, else config value, else the default.
pub fn resolve<T: FromStr>(
    flag: Option<T>,
    config: &mut ConfigMap,
    key: &str,
    default: T,
) -> Result<T, String>
where
    T::Err: std::fmt::Display,
{
    Ok(flag.or(config.take(key)?).unwrap_or(default))
}

/// Like [`resolve`] but with no default: the value stays optional.
pub fn resolve_opt<T: FromStr>(
    flag: Option<T>,
    config: &mut ConfigMap,
    key: &str,
) -> Result<Option<T>, String>
where
    T::Err: std::fmt::Display,
{
    Ok(flag.or(config.take(key)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_comments_and_whitespace() {
        let mut c = ConfigMap::parse("# heading\n n = 24 # trailing\n\nsigma-over-delta=3.2\n").unwrap();
        assert_eq!(c.take::<usize>("n").unwrap(), Some(24));
        assert_eq!(c.take::<f64>("sigma-over-delta").unwrap(), Some(3.2));
        c.finish().unwrap();
    }

    #[test]
    fn rejects_unknown_and_duplicate_keys() {
        let c = ConfigMap::parse("bogus = 1\n").unwrap();
        assert!(c.finish().is_err());
        assert!(ConfigMap::parse("a = 1\na = 2\n").is_err());
        assert!(ConfigMap::parse("just a line\n").is_err());
    }

    #[test]
    fn flags_win_over_file_values() {
        let mut c = ConfigMap::parse("n = 8\n").unwrap();
        assert_eq!(resolve(Some(24usize), &mut c, "n", 12).unwrap(), 24);
        let mut c = ConfigMap::parse("n = 8\n").unwrap();
        assert_eq!(resolve(None::<usize>, &mut c, "n", 12).unwrap(), 8);
        let mut c = ConfigMap::default();
        assert_eq!(resolve(None::<usize>, &mut c, "n", 12).unwrap(), 12);
    }
}
