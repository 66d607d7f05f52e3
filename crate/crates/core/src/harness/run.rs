use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use super::checks::{run_check, Context};
use super::config::{Check, ExperimentConfig, Resolved};
use super::report::{summarise, CheckRecord, RegionStats, Report, Status};
use crate::complex::{enumerate_region_capped, CubicalComplex};
use crate::error::{Error, Result};

/// Builds the region described by a resolved configuration.
pub fn build_region(cfg: &Resolved) -> Result<CubicalComplex> {
    enumerate_region_capped(&cfg.seeds, &cfg.spec, Some(cfg.max_vertices))
}

fn in_pool<R: Send>(jobs: Option<usize>, f: impl FnOnce() -> R + Send) -> Result<R> {
    match jobs {
        None => Ok(f()),
        Some(j) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(j)
                .build()
                .map_err(|e| Error::Config(e.to_string()))?;
            Ok(pool.install(f))
        }
    }
}

pub fn region_stats(x: &CubicalComplex) -> RegionStats {
    RegionStats {
        vertices: x.vertex_count(),
        cubes: x.cube_counts(),
        interior_vertices: x.interior_count(),
        components: x.connected_components().len(),
    }
}

/// Runs the configured checks. Configuration problems are errors; a region
/// that cannot be built (for instance because it exceeds the vertex cap)
/// yields a partial report with every region check failed.
pub fn run(config: &ExperimentConfig) -> Result<Report> {
    let cfg = config.resolve()?;
    in_pool(cfg.jobs, || run_resolved(config, &cfg))?
}

fn run_resolved(config: &ExperimentConfig, cfg: &Resolved) -> Result<Report> {
    let needs_region = cfg.checks.iter().any(|c| c.needs_region());
    let built = if needs_region { Some(build_region(cfg)) } else { None };
    let (region, region_error) = match built {
        Some(Ok(x)) => (Some(x), None),
        Some(Err(e)) => (None, Some(e.to_string())),
        None => (None, None),
    };
    let checks: Vec<CheckRecord> = match &region {
        Some(x) => {
            let ctx = Context::new(cfg, x);
            cfg.checks.par_iter().map(|&c| timed(c, cfg.timings, || run_check(c, &ctx))).collect()
        }
        None => {
            let empty = CubicalComplex::full_on_vertices(cfg.spec.n, Vec::new(), None)?;
            let ctx = Context::new(cfg, &empty);
            cfg.checks
                .iter()
                .map(|&c| match (&region_error, c.needs_region()) {
                    (Some(e), true) => CheckRecord::failed(c.name(), &format!("region not built: {e}")),
                    _ => timed(c, cfg.timings, || run_check(c, &ctx)),
                })
                .collect()
        }
    };
    Ok(Report {
        config: config.clone(),
        region_spec: serde_json::to_value(&cfg.spec).expect("spec serialises"),
        seeds: cfg.seeds.iter().map(|s| s.to_string()).collect(),
        region: region.as_ref().map(region_stats),
        region_error,
        summary: summarise(&checks),
        checks,
    })
}

fn timed(check: Check, timings: bool, f: impl FnOnce() -> CheckRecord) -> CheckRecord {
    let start = Instant::now();
    let mut r = f();
    debug_assert_eq!(r.name, check.name());
    if timings {
        r.wall_ms = Some(start.elapsed().as_millis());
    }
    r
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub window: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub region: Option<RegionStats>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub region_error: Option<String>,
    pub statuses: BTreeMap<String, Status>,
    pub metrics: BTreeMap<String, i64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepReport {
    pub config: ExperimentConfig,
    pub windows: Vec<usize>,
    pub rows: Vec<SweepRow>,
    /// Check statuses agree across all windows.
    pub stable: bool,
    /// For each tracked metric, the first window from which its value no
    /// longer changes within the sweep.
    pub stabilized_from: BTreeMap<String, usize>,
    /// Windows before a change in a component count: their results may be
    /// truncation artifacts.
    pub unreliable_windows: Vec<usize>,
}

impl SweepReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("sweep serialises");
        s.push('\n');
        s
    }
}

/// Reruns `config` for each window in increasing order and reports whether
/// statuses and tracked metrics stabilise.
pub fn stability_sweep(config: &ExperimentConfig, windows: &[usize]) -> Result<SweepReport> {
    if windows.is_empty() || windows.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Config("sweep windows must be a nonempty increasing list".into()));
    }
    let mut rows = Vec::new();
    for &w in windows {
        let mut c = config.clone();
        c.window = Some(w);
        c.timings = false;
        let r = run(&c)?;
        let mut metrics = BTreeMap::new();
        for rec in &r.checks {
            for (k, v) in &rec.metrics {
                metrics.insert(format!("{}.{}", rec.name, k), *v);
            }
        }
        if let Some(s) = &r.region {
            metrics.insert("region.components".into(), s.components as i64);
            metrics.insert("region.vertices".into(), s.vertices as i64);
        }
        rows.push(SweepRow {
            window: w,
            region: r.region.clone(),
            region_error: r.region_error.clone(),
            statuses: r.checks.iter().map(|c| (c.name.clone(), c.status)).collect(),
            metrics,
        });
    }
    let stable = rows.windows(2).all(|p| p[0].statuses == p[1].statuses && p[0].region_error.is_none() == p[1].region_error.is_none());
    let keys: Vec<String> = rows.iter().flat_map(|r| r.metrics.keys().cloned()).collect::<std::collections::BTreeSet<_>>().into_iter().collect();
    let mut stabilized_from = BTreeMap::new();
    let mut unreliable = std::collections::BTreeSet::new();
    for k in &keys {
        let vals: Vec<Option<i64>> = rows.iter().map(|r| r.metrics.get(k).copied()).collect();
        let last = vals.last().copied().flatten();
        let mut from = rows.len() - 1;
        while from > 0 && vals[from - 1] == last {
            from -= 1;
        }
        stabilized_from.insert(k.clone(), rows[from].window);
        if k.ends_with("components") {
            unreliable.extend(rows[..from].iter().map(|r| r.window));
        }
    }
    Ok(SweepReport {
        config: config.clone(),
        windows: windows.to_vec(),
        rows,
        stable,
        stabilized_from,
        unreliable_windows: unreliable.into_iter().collect(),
    })
}

