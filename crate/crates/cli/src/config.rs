//! `key = value` configuration files. Keys are the long flag names.

use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

use egyfrac::operators::OperatorSet;
use egyfrac::{Natural, PartsParity, RestrictionProfile};

use crate::args::{Format, ProfileArgs};

const KEYS: &[&str] = &[
    "format",
    "threads",
    "node-budget",
    "max-results",
    "max-denominator",
    "progress-every",
    "distinct",
    "odd-only",
    "min-denominator",
    "parts-parity",
    "forbid-lcm-divisible-by",
    "ops",
    "depth",
];

#[derive(Debug, Default, Clone)]
pub struct FileConfig {
    values: BTreeMap<String, String>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        Self::parse(&text).map_err(|e| format!("{}: {e}", path.display()))
    }

    pub fn parse(text: &str) -> Result<Self, String> {
        let mut values = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| format!("line {}: expected key = value", i + 1))?;
            let key = k.trim().replace('_', "-");
            if !KEYS.contains(&key.as_str()) {
                return Err(format!("line {}: unknown key {key:?}", i + 1));
            }
            values.insert(key, v.trim().to_string());
        }
        Ok(FileConfig { values })
    }

    pub fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>, String>
    where
        T::Err: std::fmt::Display,
    {
        self.values
            .get(key)
            .map(|v| v.parse::<T>().map_err(|e| format!("config key {key}: {e}")))
            .transpose()
    }

    pub fn flag(&self, key: &str) -> Result<bool, String> {
        Ok(self.get::<bool>(key)?.unwrap_or(false))
    }

    pub fn format(&self) -> Result<Option<Format>, String> {
        match self.values.get("format").map(String::as_str) {
            None => Ok(None),
            Some("jsonl") => Ok(Some(Format::Jsonl)),
            Some("csv") => Ok(Some(Format::Csv)),
            Some("human") => Ok(Some(Format::Human)),
            Some(other) => Err(format!("config key format: unknown format {other:?}")),
        }
    }

    pub fn ops(&self) -> Result<Option<OperatorSet>, String> {
        self.get("ops")
    }

    /// The flags' profile laid over the file's.
    pub fn profile(&self, flags: &ProfileArgs) -> Result<RestrictionProfile, String> {
        let mut p = RestrictionProfile::unrestricted()
            .with_distinct(flags.distinct || self.flag("distinct")?)
            .with_odd_only(flags.odd_only || self.flag("odd-only")?);
        if let Some(m) = flags
            .min_denominator
            .clone()
            .or(self.get::<Natural>("min-denominator")?)
        {
            p = p.with_min_denominator(m);
        }
        if let Some(pp) = flags.parts_parity.or(self.get::<PartsParity>("parts-parity")?) {
            p = p.with_parts_parity(pp);
        }
        let forbid = if flags.forbid_lcm_divisible_by.is_empty() {
            match self.values.get("forbid-lcm-divisible-by") {
                Some(v) => v
                    .split(',')
                    .map(|x| {
                        x.trim()
                            .parse::<Natural>()
                            .map_err(|e| format!("config key forbid-lcm-divisible-by: {e}"))
                    })
                    .collect::<Result<Vec<_>, _>>()?,
                None => Vec::new(),
            }
        } else {
            flags.forbid_lcm_divisible_by.clone()
        };
        for f in forbid {
            p = p.forbid_lcm_divisible_by(f);
        }
        p.check().map_err(|e| e.to_string())?;
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_keys_comments_and_underscores() {
        let c = FileConfig::parse("# campaign\nthreads = 4\nnode_budget=100 # cap\n\ndistinct = true\n").unwrap();
        assert_eq!(c.get::<usize>("threads").unwrap(), Some(4));
        assert_eq!(c.get::<u64>("node-budget").unwrap(), Some(100));
        assert!(c.flag("distinct").unwrap());
        assert!(!c.flag("odd-only").unwrap());
    }

    #[test]
    fn rejects_unknown_and_malformed() {
        assert!(FileConfig::parse("colour = red").is_err());
        assert!(FileConfig::parse("threads").is_err());
        let c = FileConfig::parse("threads = many").unwrap();
        assert!(c.get::<usize>("threads").is_err());
        assert!(FileConfig::parse("format = xml").unwrap().format().is_err());
    }

    #[test]
    fn flags_override_file_profile() {
        let c = FileConfig::parse("min-denominator = 3\nforbid-lcm-divisible-by = 105, 4\nparts-parity = odd").unwrap();
        let p = c.profile(&ProfileArgs::default()).unwrap();
        assert_eq!(p.min_denominator, 3u64);
        assert_eq!(p.forbid_lcm_divisible_by.len(), 2);
        let flags = ProfileArgs {
            min_denominator: Some(5u32.into()),
            forbid_lcm_divisible_by: vec![7u32.into()],
            ..ProfileArgs::default()
        };
        let p = c.profile(&flags).unwrap();
        assert_eq!(p.min_denominator, 5u64);
        assert_eq!(p.forbid_lcm_divisible_by, vec![Natural::from(7u32)]);
        assert_eq!(p.parts_parity, PartsParity::Odd);
    }
}
