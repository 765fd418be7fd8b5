//! Plain `key = value` config files. Flags given on the command line win
//! over file values.

use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};

pub const KEYS: &[&str] = &[
    "n",
    "a",
    "b",
    "k",
    "goal",
    "maker",
    "breaker",
    "seed",
    "trials",
    "b-values",
    "tiebreak",
    "edgepick",
    "stage1-degree",
    "epsilon",
    "delta",
    "r",
    "threads",
    "out",
];

#[derive(Debug, Default, Clone)]
pub struct Config {
    values: BTreeMap<String, String>,
}

impl Config {
    pub fn load(path: &Path) -> Result<Config> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
        Config::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Config> {
        let mut values = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| anyhow!("config line {}: expected key=value", i + 1))?;
            let key = key.trim().replace('_', "-");
            if !KEYS.contains(&key.as_str()) {
                bail!("config line {}: unknown key '{key}'", i + 1);
            }
            values.insert(key, value.trim().to_string());
        }
        Ok(Config { values })
    }

    pub fn get<T>(&self, key: &str) -> Result<Option<T>>
    where
        T: FromStr,
        T::Err: std::fmt::Display,
    {
        self.values
            .get(key)
            .map(|v| v.parse::<T>().map_err(|e| anyhow!("config key '{key}': {e}")))
            .transpose()
    }

    /// Flag value, else file value, else `default`.
    pub fn pick<T>(&self, flag: Option<T>, key: &str, default: T) -> Result<T>
    where
        T: FromStr,
        T::Err: std::fmt::Display,
    {
        Ok(match flag {
            Some(v) => v,
            None => self.get(key)?.unwrap_or(default),
        })
    }

    /// Like [`Config::pick`] with no default.
    pub fn require<T>(&self, flag: Option<T>, key: &str) -> Result<T>
    where
        T: FromStr,
        T::Err: std::fmt::Display,
    {
        match flag {
            Some(v) => Ok(v),
            None => self.get(key)?.ok_or_else(|| anyhow!("missing --{key}")),
        }
    }
}

/// `1..20`, `1..=20`, `2,4,8` or a mix like `1..5,10`.
pub fn parse_b_values(text: &str) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        if let Some((lo, hi)) = part.split_once("..") {
            let hi = hi.strip_prefix('=').unwrap_or(hi);
            let (lo, hi): (usize, usize) = (lo.trim().parse()?, hi.trim().parse()?);
            if lo > hi {
                bail!("empty range '{part}'");
            }
            out.extend(lo..=hi);
        } else {
            out.push(part.parse()?);
        }
    }
    if out.is_empty() {
        bail!("no b values given");
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_pairs_and_comments() {
        let c = Config::parse("# sweep\nn = 40\nb_values=1..20\n\ntrials= 7\n").unwrap();
        assert_eq!(c.get::<usize>("n").unwrap(), Some(40));
        assert_eq!(c.get::<String>("b-values").unwrap().as_deref(), Some("1..20"));
        assert_eq!(c.pick(Some(3usize), "trials", 1).unwrap(), 3);
        assert_eq!(c.pick(None, "trials", 1usize).unwrap(), 7);
        assert_eq!(c.pick(None, "a", 1usize).unwrap(), 1);
    }

    #[test]
    fn rejects_unknown_keys_and_bad_lines() {
        assert!(Config::parse("colour=red").is_err());
        assert!(Config::parse("n 40").is_err());
        let c = Config::parse("n=forty").unwrap();
        assert!(c.get::<usize>("n").is_err());
    }

    #[test]
    fn b_value_lists() {
        assert_eq!(parse_b_values("1..4").unwrap(), vec![1, 2, 3, 4]);
        assert_eq!(parse_b_values("1..=3,7").unwrap(), vec![1, 2, 3, 7]);
        assert_eq!(parse_b_values("5").unwrap(), vec![5]);
        assert!(parse_b_values("4..1").is_err());
        assert!(parse_b_values("").is_err());
    }
}
