//! Size sweeps with a log-log growth fit.

use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::fit::{fit_power_law, PowerFit};
use super::{Engine, HarnessError, SCHEMA_VERSION};
use crate::lemma::lemma1_construct;
use crate::pointset::{generate_random2, generate_random3};
use crate::tetrahedra::brute_force_balanced_tetrahedra;
use crate::theorem::theorem_construct;
use crate::triangles::{brute_force_triangles, radial_sweep_triangles, Pattern};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub dim: usize,
    pub sizes: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    pub engine: Engine,
    pub coord_bound: i64,
    /// Worker threads; 0 uses the global pool.
    pub jobs: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub n: usize,
    pub trial: usize,
    pub seed: u64,
    pub count: usize,
    pub seconds: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SizeSummary {
    pub n: usize,
    pub mean: f64,
    pub min: usize,
    pub max: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub schema: u32,
    pub config: SweepConfig,
    /// What each row counts.
    pub metric: String,
    pub rows: Vec<SweepRow>,
    pub per_size: Vec<SizeSummary>,
    pub fit: Option<PowerFit>,
    /// Exponents the measured slope is read against; not enforced.
    pub reference_slopes: BTreeMap<String, f64>,
    pub timings: BTreeMap<String, f64>,
}

/// Seed of trial `t` at size `n`; distinct for distinct `(n, t)` below 2^20 trials.
pub fn trial_seed(base: u64, n: usize, trial: usize) -> u64 {
    base.wrapping_add((n as u64) << 20).wrapping_add(trial as u64)
}

fn metric(dim: usize, engine: Engine) -> Result<&'static str, HarnessError> {
    Ok(match (dim, engine) {
        (2, Engine::Oracle) => "oracle empty red (2,1)-triangles",
        (2, Engine::Sweep) => "sweep empty red (2,1)-triangles",
        (2, Engine::Construct) => "constructed empty red (2,1)-triangles",
        (3, Engine::Oracle) => "oracle empty balanced tetrahedra",
        (3, Engine::Construct) => "constructed empty balanced tetrahedra",
        (3, Engine::Sweep) => return Err(HarnessError::Usage("the sweep engine is planar only".into())),
        (d, _) => return Err(HarnessError::Usage(format!("dimension must be 2 or 3, got {d}"))),
    })
}

fn run_trial(cfg: &SweepConfig, n: usize, trial: usize) -> Result<SweepRow, HarnessError> {
    let seed = trial_seed(cfg.seed, n, trial);
    let fail = |reason: String| HarnessError::TrialFailed { n, trial, seed, reason };
    let start = Instant::now();
    let count = if cfg.dim == 2 {
        let set = generate_random2::<i32>(n, n, seed, cfg.coord_bound).map_err(|e| fail(e.to_string()))?;
        match cfg.engine {
            Engine::Oracle => brute_force_triangles(&set, Pattern::RedRedBlue).len(),
            Engine::Sweep => radial_sweep_triangles(&set, Pattern::RedRedBlue).len(),
            Engine::Construct => {
                let w = lemma1_construct(&set).map_err(|e| fail(e.to_string()))?;
                if w.rejected > 0 {
                    return Err(fail(format!("{} constructed triangles failed re-verification", w.rejected)));
                }
                w.triangles.len()
            }
        }
    } else {
        let set = generate_random3::<i32>(n, n, seed, cfg.coord_bound).map_err(|e| fail(e.to_string()))?;
        match cfg.engine {
            Engine::Oracle => brute_force_balanced_tetrahedra(&set).len(),
            _ => {
                let out = theorem_construct(&set).map_err(|e| fail(e.to_string()))?;
                if out.rejected() > 0 || out.skipped_apexes() > 0 || out.max_multiplicity() > 2 {
                    return Err(fail(format!(
                        "theorem pipeline invariant broken: {} rejected, {} skipped, multiplicity {}",
                        out.rejected(),
                        out.skipped_apexes(),
                        out.max_multiplicity()
                    )));
                }
                out.tetrahedra.len()
            }
        }
    };
    Ok(SweepRow { n, trial, seed, count, seconds: start.elapsed().as_secs_f64() })
}

pub fn run_sweep(cfg: &SweepConfig) -> Result<SweepReport, HarnessError> {
    let metric = metric(cfg.dim, cfg.engine)?;
    let mut sizes = cfg.sizes.clone();
    sizes.sort_unstable();
    sizes.dedup();
    if sizes.len() < 3 {
        return Err(HarnessError::Usage("a sweep needs at least 3 distinct sizes".into()));
    }
    if cfg.trials == 0 {
        return Err(HarnessError::Usage("a sweep needs at least one trial per size".into()));
    }
    let jobs: Vec<(usize, usize)> = cfg
        .sizes
        .iter()
        .flat_map(|&n| (0..cfg.trials).map(move |t| (n, t)))
        .collect();
    let start = Instant::now();
    let work = || jobs.par_iter().map(|&(n, t)| run_trial(cfg, n, t)).collect::<Result<Vec<_>, _>>();
    let mut rows = if cfg.jobs > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.jobs)
            .build()
            .map_err(|e| HarnessError::Usage(e.to_string()))?
            .install(work)?
    } else {
        work()?
    };
    rows.sort_by_key(|r| (r.n, r.trial));
    rows.dedup_by_key(|r| (r.n, r.trial));

    let per_size: Vec<SizeSummary> = sizes
        .iter()
        .map(|&n| {
            let counts: Vec<usize> = rows.iter().filter(|r| r.n == n).map(|r| r.count).collect();
            SizeSummary {
                n,
                mean: counts.iter().sum::<usize>() as f64 / counts.len() as f64,
                min: counts.iter().copied().min().unwrap_or(0),
                max: counts.iter().copied().max().unwrap_or(0),
            }
        })
        .collect();
    let fit = fit_power_law(&per_size.iter().map(|s| (s.n as f64, s.mean)).collect::<Vec<_>>());
    let reference_slopes: BTreeMap<String, f64> = if cfg.dim == 2 {
        [("lemma1".to_string(), 1.5), ("conjecture2".to_string(), 2.0)].into()
    } else {
        [("theorem".to_string(), 2.5), ("conjecture1".to_string(), 3.0)].into()
    };
    let mut timings = BTreeMap::new();
    timings.insert("total".to_string(), start.elapsed().as_secs_f64());
    Ok(SweepReport {
        schema: SCHEMA_VERSION,
        config: cfg.clone(),
        metric: metric.to_string(),
        rows,
        per_size,
        fit,
        reference_slopes,
        timings,
    })
}
