use serde::{Deserialize, Serialize};

use crate::complex::RegionSpec;
use crate::error::{Error, Result};
use crate::houghton::{Character, EventualInjection};

/// Every check the runner knows, in report order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    Fixtures,
    FlagLinks,
    BlanketConvexity,
    BlanketIntersections,
    DescendingLinks,
    AscendingLinks,
    MorseGap,
    Germ,
    Cover,
    Nerve,
    StrongNerve,
}

impl Check {
    pub const ALL: [Check; 11] = [
        Check::Fixtures,
        Check::FlagLinks,
        Check::BlanketConvexity,
        Check::BlanketIntersections,
        Check::DescendingLinks,
        Check::AscendingLinks,
        Check::MorseGap,
        Check::Germ,
        Check::Cover,
        Check::Nerve,
        Check::StrongNerve,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Fixtures => "fixtures",
            Check::FlagLinks => "flag_links",
            Check::BlanketConvexity => "blanket_convexity",
            Check::BlanketIntersections => "blanket_intersections",
            Check::DescendingLinks => "descending_links",
            Check::AscendingLinks => "ascending_links",
            Check::MorseGap => "morse_gap",
            Check::Germ => "germ",
            Check::Cover => "cover",
            Check::Nerve => "nerve",
            Check::StrongNerve => "strong_nerve",
        }
    }

    pub fn parse(s: &str) -> Result<Check> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s.trim())
            .ok_or_else(|| Error::Config(format!("unknown check `{s}`")))
    }

    pub fn needs_chi(self) -> bool {
        matches!(
            self,
            Check::AscendingLinks | Check::MorseGap | Check::Cover | Check::Nerve | Check::StrongNerve
        )
    }

    pub fn needs_region(self) -> bool {
        self != Check::Fixtures
    }
}

/// Experiment parameters as read from JSON or the command line. Absent
/// fields take the defaults described on [`ExperimentConfig::resolve`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub name: String,
    pub n: usize,
    pub chi: Option<Vec<i64>>,
    pub f_bound: Option<u64>,
    pub window: Option<usize>,
    pub image_window: Option<usize>,
    pub translation_bound: Option<i64>,
    pub seeds: Option<Vec<String>>,
    pub checks: Option<Vec<Check>>,
    /// Not echoed in reports, which must not depend on it.
    #[serde(skip_serializing)]
    pub jobs: Option<usize>,
    pub max_vertices: Option<usize>,
    pub allow_large_n: bool,
    pub timings: bool,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            name: "experiment".into(),
            n: 2,
            chi: None,
            f_bound: None,
            window: None,
            image_window: None,
            translation_bound: None,
            seeds: None,
            checks: None,
            jobs: None,
            max_vertices: None,
            allow_large_n: false,
            timings: false,
        }
    }
}

/// A validated configuration.
#[derive(Clone, Debug)]
pub struct Resolved {
    pub name: String,
    pub spec: RegionSpec,
    pub chi: Option<Character>,
    pub seeds: Vec<EventualInjection>,
    pub checks: Vec<Check>,
    pub jobs: Option<usize>,
    pub max_vertices: usize,
    pub timings: bool,
}

pub const DEFAULT_MAX_VERTICES: usize = 2_000_000;

/// `prod_{i in S} tau_i` for every subset `S` of the rays.
pub fn tau_products(n: usize) -> Result<Vec<EventualInjection>> {
    (0u32..1 << n)
        .map(|mask| {
            (1..=n).filter(|i| mask >> (i - 1) & 1 == 1).try_fold(EventualInjection::identity(n), |acc, i| {
                acc.compose(&EventualInjection::transposition_tau(i, n)?)
            })
        })
        .collect()
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    /// Fills in defaults and validates:
    ///
    /// * `f_bound = 3n - 3`, `window = max(2, 2n - 2)`,
    ///   `image_window = 4` for `n = 2` and `2` otherwise,
    ///   `translation_bound = max(window, image_window)`;
    /// * seeds: the products of the transpositions `tau_i` that the region
    ///   admits (explicit seeds must all be admitted);
    /// * checks: all of them, minus the character checks when no character
    ///   is given.
    pub fn resolve(&self) -> Result<Resolved> {
        let n = self.n;
        if n < 2 {
            return Err(Error::Config("n must be at least 2".into()));
        }
        if n > 3 && !self.allow_large_n {
            return Err(Error::Config(format!("n = {n} is large; pass allow_large_n to run it")));
        }
        if n > 8 {
            return Err(Error::Config("n above 8 is not supported".into()));
        }
        let window = self.window.unwrap_or((2 * n - 2).max(2));
        let image_window = self.image_window.unwrap_or(if n == 2 { 4 } else { 2 });
        let mut spec = RegionSpec::new(n, window)
            .with_f_bound(self.f_bound.unwrap_or(3 * n as u64 - 3))
            .with_image_window(image_window);
        if let Some(t) = self.translation_bound {
            spec = spec.with_translation_bound(t);
        }
        let chi = match &self.chi {
            Some(c) => {
                let chi = Character::new(c.clone()).map_err(|e| Error::Config(e.to_string()))?;
                if chi.n() != n {
                    return Err(Error::Config(format!("character has {} coefficients, n = {n}", chi.n())));
                }
                if chi.is_zero() {
                    return Err(Error::Config("character is zero".into()));
                }
                let std = chi.standard_form().map_err(|e| Error::Config(e.to_string()))?;
                spec = spec.with_chi(std.clone(), 0);
                Some(std)
            }
            None => None,
        };
        spec.validate().map_err(|e| Error::Config(e.to_string()))?;
        let seeds = match &self.seeds {
            Some(list) => {
                let seeds = list
                    .iter()
                    .map(|s| s.parse::<EventualInjection>().map_err(|e| Error::Config(format!("seed `{s}`: {e}"))))
                    .collect::<Result<Vec<_>>>()?;
                if seeds.is_empty() {
                    return Err(Error::Config("seed list is empty".into()));
                }
                if let Some(bad) = seeds.iter().find(|s| !spec.admits(s)) {
                    return Err(Error::Config(format!("seed {bad} lies outside the region")));
                }
                seeds
            }
            None => {
                let seeds: Vec<_> = tau_products(n)?.into_iter().filter(|s| spec.admits(s)).collect();
                if seeds.is_empty() {
                    return Err(Error::Config("no default seed lies in the region".into()));
                }
                seeds
            }
        };
        let checks = match &self.checks {
            Some(list) => {
                let mut list = list.clone();
                list.sort();
                list.dedup();
                if chi.is_none() {
                    if let Some(c) = list.iter().find(|c| c.needs_chi()) {
                        return Err(Error::Config(format!("check `{}` needs a character", c.name())));
                    }
                }
                list
            }
            None => Check::ALL.into_iter().filter(|c| chi.is_some() || !c.needs_chi()).collect(),
        };
        if self.jobs == Some(0) {
            return Err(Error::Config("jobs must be positive".into()));
        }
        Ok(Resolved {
            name: self.name.clone(),
            spec,
            chi,
            seeds,
            checks,
            jobs: self.jobs,
            max_vertices: self.max_vertices.unwrap_or(DEFAULT_MAX_VERTICES),
            timings: self.timings,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_resolve() {
        let r = ExperimentConfig {
            chi: Some(vec![-1, 0]),
            ..Default::default()
        }
        .resolve()
        .unwrap();
        assert_eq!(r.spec.f_bound, 3);
        assert_eq!(r.checks.len(), Check::ALL.len());
        assert_eq!(r.seeds.len(), 4);
        let plain = ExperimentConfig::default().resolve().unwrap();
        assert!(plain.checks.iter().all(|c| !c.needs_chi()));
    }

    #[test]
    fn bad_configs_are_rejected() {
        let bad = |c: ExperimentConfig| matches!(c.resolve(), Err(Error::Config(_)));
        assert!(bad(ExperimentConfig { n: 1, ..Default::default() }));
        assert!(bad(ExperimentConfig { n: 4, ..Default::default() }));
        assert!(bad(ExperimentConfig { chi: Some(vec![1, 1]), ..Default::default() }));
        assert!(bad(ExperimentConfig { chi: Some(vec![1, 1, 0]), ..Default::default() }));
        assert!(bad(ExperimentConfig { window: Some(0), ..Default::default() }));
        assert!(bad(ExperimentConfig { checks: Some(vec![Check::Cover]), ..Default::default() }));
        assert!(bad(ExperimentConfig { seeds: Some(vec!["junk".into()]), ..Default::default() }));
        assert!(ExperimentConfig::from_json(r#"{"n": 2, "bogus": 1}"#).is_err());
        let c = ExperimentConfig::from_json(r#"{"n": 3, "chi": [-1, -1, 0], "checks": ["cover"]}"#).unwrap();
        assert_eq!(c.checks, Some(vec![Check::Cover]));
    }
}
