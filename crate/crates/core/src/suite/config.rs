//! Flat key = value configuration for verification runs.

use crate::arith::Rational;
use crate::error::{Error, Result};

pub const ALL_SUITES: [&str; 9] = [
    "algebraic-identities",
    "residue-basics",
    "coherence",
    "octagon",
    "sequence12",
    "sequence13",
    "nullity",
    "surjectivity",
    "morita",
];

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub a: Rational,
    pub b: Rational,
    pub seed: u64,
    pub trials: u32,
    pub height_bound: i64,
    pub degree_bound: usize,
    /// Suite names to run, in the canonical order; empty means all.
    pub suites: Vec<String>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            a: Rational::from_int(-1),
            b: Rational::from_int(-1),
            seed: 0,
            trials: 20,
            height_bound: 10,
            degree_bound: crate::arith::FACTOR_DEGREE_BOUND,
            suites: vec![],
        }
    }
}

impl SuiteConfig {
    /// Parses "key = value" lines; '#' starts a comment. Unknown keys error.
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = SuiteConfig::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("line {}: expected key = value", lineno + 1)))?;
            let key = key.trim();
            let value = value.trim();
            match key {
                "a" => cfg.a = Rational::parse(value)?,
                "b" => cfg.b = Rational::parse(value)?,
                "seed" => {
                    cfg.seed = value
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad seed {value:?}")))?
                }
                "trials" => {
                    cfg.trials = value
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad trials {value:?}")))?
                }
                "height_bound" => {
                    cfg.height_bound = value
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad height_bound {value:?}")))?
                }
                "degree_bound" => {
                    cfg.degree_bound = value
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad degree_bound {value:?}")))?
                }
                "suites" => {
                    cfg.suites = value
                        .split(',')
                        .map(|s| s.trim().to_string())
                        .filter(|s| !s.is_empty())
                        .collect()
                }
                other => return Err(Error::Parse(format!("unknown config key {other:?}"))),
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 || self.height_bound <= 0 {
            return Err(Error::Parse("trials and height_bound must be positive".into()));
        }
        if self.degree_bound > crate::arith::FACTOR_DEGREE_BOUND {
            return Err(Error::Parse(format!(
                "degree_bound exceeds the supported bound {}",
                crate::arith::FACTOR_DEGREE_BOUND
            )));
        }
        for s in &self.suites {
            if !ALL_SUITES.contains(&s.as_str()) {
                return Err(Error::Parse(format!("unknown suite {s:?}")));
            }
        }
        Ok(())
    }

    /// The suite names that will actually run, in canonical order.
    pub fn selected_suites(&self) -> Vec<&'static str> {
        ALL_SUITES
            .iter()
            .copied()
            .filter(|name| self.suites.is_empty() || self.suites.iter().any(|s| s == name))
            .collect()
    }

    pub fn config_line(&self) -> String {
        format!(
            "a={} b={} seed={} trials={} height_bound={} degree_bound={}",
            self.a, self.b, self.seed, self.trials, self.height_bound, self.degree_bound
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_round_trip() {
        let text = "a = -1\nb = -7 # comment\nseed = 42\ntrials=5\nsuites = nullity, octagon\n";
        let cfg = SuiteConfig::parse(text).unwrap();
        assert_eq!(cfg.a, Rational::from_int(-1));
        assert_eq!(cfg.b, Rational::from_int(-7));
        assert_eq!(cfg.seed, 42);
        assert_eq!(cfg.selected_suites(), vec!["octagon", "nullity"]);
    }

    #[test]
    fn rejects_unknown_keys_and_suites() {
        assert!(SuiteConfig::parse("zzz = 1").is_err());
        assert!(SuiteConfig::parse("suites = nope").is_err());
    }
}
