use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use houghton_core::complex::io::{read_complex, write_complex, write_simplicial};
use houghton_core::harness::{
    build_region, region_stats, run, stability_sweep, Check, ExperimentConfig, Report,
};
use houghton_core::morse::{cover_pieces, nerve};
use houghton_core::topology::homology;
use houghton_core::{Error, Result};

#[derive(Parser)]
#[command(name = "houghton", version, about = "Finite experiments on the Houghton cube complexes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the region and print its statistics.
    Build {
        #[command(flatten)]
        common: Common,
        /// Write the region in the text complex format.
        #[arg(long)]
        export: Option<PathBuf>,
        /// Read a complex file instead of building one, and report its homology.
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Flag, descending and ascending link checks.
    Links(Common),
    /// Blanket convexity, intersections and ray germs.
    Blankets(Common),
    /// The cover of the superlevel region.
    Cover(Common),
    /// Nerve, sphere witness and strong-nerve checks.
    Nerve {
        #[command(flatten)]
        common: Common,
        /// Write the nerve with its piece labels.
        #[arg(long)]
        export: Option<PathBuf>,
    },
    /// Every applicable check.
    VerifyAll(Common),
    /// Homology of the classical fixtures.
    Fixtures(Common),
    /// Rerun the checks for several windows.
    Sweep {
        #[command(flatten)]
        common: Common,
        /// Increasing list of windows.
        #[arg(long, value_delimiter = ',', default_value = "2,3,4")]
        windows: Vec<usize>,
    },
}

#[derive(Args, Clone, Default)]
struct Common {
    /// JSON configuration; flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    n: Option<usize>,
    /// Character coefficients, e.g. `-1,-1,0`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    chi: Option<Vec<i64>>,
    #[arg(long)]
    f_bound: Option<u64>,
    #[arg(long)]
    window: Option<usize>,
    #[arg(long)]
    image_window: Option<usize>,
    #[arg(long)]
    translation_bound: Option<i64>,
    /// File with one seed encoding per line.
    #[arg(long)]
    seeds: Option<PathBuf>,
    /// Comma-separated check names (verify-all and sweep only).
    #[arg(long, value_delimiter = ',')]
    checks: Option<Vec<String>>,
    /// Write the JSON report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long)]
    max_vertices: Option<usize>,
    /// Permit n >= 4.
    #[arg(long)]
    allow_large_n: bool,
    /// Include wall times in the report.
    #[arg(long)]
    timings: bool,
    #[arg(long)]
    name: Option<String>,
}

impl Common {
    fn config(&self, default_checks: Option<&[Check]>) -> Result<ExperimentConfig> {
        let mut c = match &self.config {
            Some(p) => ExperimentConfig::from_json(&fs::read_to_string(p)?)?,
            None => ExperimentConfig::default(),
        };
        if let Some(v) = self.n {
            c.n = v;
        }
        if let Some(v) = &self.chi {
            c.chi = Some(v.clone());
        }
        if let Some(v) = self.f_bound {
            c.f_bound = Some(v);
        }
        if let Some(v) = self.window {
            c.window = Some(v);
        }
        if let Some(v) = self.image_window {
            c.image_window = Some(v);
        }
        if let Some(v) = self.translation_bound {
            c.translation_bound = Some(v);
        }
        if let Some(p) = &self.seeds {
            let text = fs::read_to_string(p)?;
            c.seeds = Some(
                text.lines()
                    .map(str::trim)
                    .filter(|l| !l.is_empty() && !l.starts_with('#'))
                    .map(String::from)
                    .collect(),
            );
        }
        if let Some(v) = &self.checks {
            c.checks = Some(v.iter().map(|s| Check::parse(s)).collect::<Result<_>>()?);
        }
        if let Some(v) = self.jobs {
            c.jobs = Some(v);
        }
        if let Some(v) = self.max_vertices {
            c.max_vertices = Some(v);
        }
        if let Some(v) = &self.name {
            c.name = v.clone();
        }
        c.allow_large_n |= self.allow_large_n;
        c.timings |= self.timings;
        if let Some(list) = default_checks {
            let with_chi = c.chi.is_some();
            c.checks = Some(list.iter().copied().filter(|k| with_chi || !k.needs_chi()).collect());
        }
        Ok(c)
    }

    fn emit(&self, text: &str) -> Result<()> {
        match &self.out {
            Some(p) => fs::write(p, text)?,
            None => print!("{text}"),
        }
        Ok(())
    }
}

fn finish(common: &Common, report: &Report) -> Result<ExitCode> {
    common.emit(&report.to_json())?;
    Ok(if report.all_pass() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn checked(common: &Common, checks: &[Check]) -> Result<ExitCode> {
    finish(common, &run(&common.config(Some(checks))?)?)
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json");
    s.push('\n');
    s
}

fn execute(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Build { common, export, input } => {
            if let Some(p) = input {
                let x = read_complex(&fs::read_to_string(&p)?)?;
                let h = homology(&x.chain_complex()?, false)?;
                let v = serde_json::json!({
                    "region": region_stats(&x),
                    "betti": h.betti,
                    "torsion": h.torsion.iter().map(|t| t.iter().map(|d| d.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
                });
                common.emit(&pretty(&v))?;
                return Ok(ExitCode::SUCCESS);
            }
            let cfg = common.config(Some(&[]))?.resolve()?;
            let x = match build_region(&cfg) {
                Ok(x) => x,
                Err(e @ Error::RegionTooLarge(_)) => {
                    common.emit(&pretty(&serde_json::json!({ "region_error": e.to_string() })))?;
                    return Ok(ExitCode::from(1));
                }
                Err(e) => return Err(e),
            };
            if let Some(p) = export {
                fs::write(p, write_complex(&x))?;
            }
            let v = serde_json::json!({ "spec": cfg.spec, "region": region_stats(&x) });
            common.emit(&pretty(&v))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Links(c) => checked(&c, &[Check::FlagLinks, Check::DescendingLinks, Check::AscendingLinks]),
        Command::Blankets(c) => checked(&c, &[Check::BlanketConvexity, Check::BlanketIntersections, Check::Germ]),
        Command::Cover(c) => {
            require_chi(&c)?;
            checked(&c, &[Check::Cover])
        }
        Command::Nerve { common, export } => {
            require_chi(&common)?;
            let config = common.config(Some(&[Check::Nerve, Check::StrongNerve]))?;
            let report = run(&config)?;
            if let Some(p) = export {
                let cfg = config.resolve()?;
                let x = build_region(&cfg)?;
                let cov = cover_pieces(&x, cfg.chi.as_ref().expect("checked above"))?;
                let l = nerve(&cov)?;
                fs::write(p, write_simplicial(&l, &cov.labels()))?;
            }
            finish(&common, &report)
        }
        Command::VerifyAll(c) => {
            let config = c.config(None)?;
            finish(&c, &run(&config)?)
        }
        Command::Fixtures(c) => checked(&c, &[Check::Fixtures]),
        Command::Sweep { common, windows } => {
            let config = common.config(None)?;
            let sweep = stability_sweep(&config, &windows)?;
            common.emit(&sweep.to_json())?;
            let all_pass = sweep
                .rows
                .iter()
                .all(|r| r.region_error.is_none() && r.statuses.values().all(|s| *s != houghton_core::harness::Status::Fail));
            Ok(if all_pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
    }
}

fn require_chi(c: &Common) -> Result<()> {
    if c.config(None)?.chi.is_none() {
        return Err(Error::Config("this subcommand needs --chi".into()));
    }
    Ok(())
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
