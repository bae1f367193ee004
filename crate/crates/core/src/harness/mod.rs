//! Experiment driver: counting, bound checks, growth sweeps and the
//! invariant suite behind the `holes` command-line tool.

mod fit;
mod sweep;
mod verify;

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

use num_integer::Roots;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::io::{read_points, Instance, PointFileError};
use crate::lemma::{lemma1_construct, Branch, LemmaError};
use crate::pointset::{generate_random2, generate_random3, GenerateError, Validation};
use crate::tetrahedra::brute_force_balanced_tetrahedra;
use crate::theorem::{theorem_construct, TheoremError};
use crate::triangles::{brute_force_triangles, radial_sweep_triangles, rotating_line_triangles, Pattern};
use crate::{PlanarSet, SpatialSet};

pub use fit::{fit_power_law, PowerFit};
pub use sweep::{run_sweep, trial_seed, SizeSummary, SweepConfig, SweepReport, SweepRow};
pub use verify::{verify_pipeline, SweepEngineFn, VerifyConfig, VerifyEntry, VerifyReport};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error(transparent)]
    File(#[from] PointFileError),
    #[error(transparent)]
    Generate(#[from] GenerateError),
    #[error(transparent)]
    Lemma(#[from] LemmaError),
    #[error(transparent)]
    Theorem(#[from] TheoremError),
    #[error("{0}")]
    Usage(String),
    #[error("trial failed at n = {n}, trial {trial} (seed {seed}): {reason}")]
    TrialFailed { n: usize, trial: usize, seed: u64, reason: String },
}

impl HarnessError {
    /// Input problems, as opposed to failed checks.
    pub fn is_input_error(&self) -> bool {
        !matches!(self, HarnessError::TrialFailed { .. })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Engine {
    Oracle,
    Sweep,
    Construct,
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Engine::Oracle => "oracle",
            Engine::Sweep => "sweep",
            Engine::Construct => "construct",
        })
    }
}

impl FromStr for Engine {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "oracle" => Ok(Engine::Oracle),
            "sweep" => Ok(Engine::Sweep),
            "construct" => Ok(Engine::Construct),
            _ => Err(format!("unknown engine {s:?}; expected oracle, sweep or construct")),
        }
    }
}

/// `ceil(n^(3/2) / 32)`, computed exactly.
pub fn lemma1_threshold(n: usize) -> u64 {
    let cube = (n as u128).pow(3);
    let mut t = (cube.sqrt() / 32) as u64;
    while 1024 * (t as u128) * (t as u128) < cube {
        t += 1;
    }
    t
}

/// `ceil(n^(5/2))`, the growth reference for balanced tetrahedra.
pub fn theorem_reference(n: usize) -> u64 {
    let fifth = (n as u128).pow(5);
    let mut t = fifth.sqrt();
    if t * t < fifth {
        t += 1;
    }
    t as u64
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InstanceDescriptor {
    pub dim: usize,
    pub n_red: usize,
    pub n_blue: usize,
    pub seed: Option<u64>,
    pub coord_bound: Option<i64>,
    pub source: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LemmaCounts {
    pub triangles: usize,
    pub small_m_anchors: usize,
    pub large_m_anchors: usize,
    pub small_m_triangles: usize,
    pub large_m_triangles: usize,
    pub anchors_meeting_branch_bound: usize,
    /// Many-runs anchors whose endpoint count reaches `2m - 2`.
    pub large_m_meeting_endpoint_bound: usize,
    /// Many-runs anchors whose endpoint count reaches `2 sqrt(m) - 2`.
    pub large_m_meeting_printed_bound: usize,
    pub intervals: usize,
    pub intervals_meeting_required: usize,
    pub hull_violations: usize,
    pub rejected: usize,
    pub max_multiplicity: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TheoremCounts {
    pub tetrahedra: usize,
    pub apexes: usize,
    pub skipped_apexes: usize,
    pub side_invariant_holds: usize,
    pub planar_triangles: usize,
    pub rejected: usize,
    pub max_multiplicity: usize,
    pub within_multiplicity_two: usize,
    pub multiplicity_histogram: BTreeMap<String, usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ConstructionCounts {
    Lemma(LemmaCounts),
    Theorem(TheoremCounts),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RotatingLineCounts {
    pub triangles: usize,
    pub rrb: usize,
    pub bbr: usize,
    pub emissions: usize,
    pub empty_sides: usize,
    pub outside_oracle: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Counts {
    /// Brute-force counts by pattern (`rrb`, `bbr`, `rrr`, `bbb`, or
    /// `balanced` in 3D), plus `rrb+bbr` when both are present.
    pub oracle: BTreeMap<String, usize>,
    /// Angular-sweep counts by pattern.
    pub sweep: BTreeMap<String, usize>,
    pub construction: Option<ConstructionCounts>,
    pub rotating_line: Option<RotatingLineCounts>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundCheck {
    pub name: String,
    /// Path of the count this check reads, e.g. `oracle.rrb`.
    pub count: String,
    pub threshold: u64,
    pub observed: u64,
    pub pass: bool,
    /// Informational checks never fail a run.
    pub gating: bool,
}

impl BoundCheck {
    fn new(name: &str, count: &str, threshold: u64, observed: usize, gating: bool) -> Self {
        BoundCheck {
            name: name.to_string(),
            count: count.to_string(),
            threshold,
            observed: observed as u64,
            pass: observed as u64 >= threshold,
            gating,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub schema: u32,
    pub instance: InstanceDescriptor,
    pub engine: Engine,
    pub counts: Counts,
    pub bound_checks: Vec<BoundCheck>,
    pub fit: Option<PowerFit>,
    /// Seconds per phase.
    pub timings: BTreeMap<String, f64>,
}

impl ExperimentReport {
    pub fn failed_gates(&self) -> Vec<&BoundCheck> {
        self.bound_checks.iter().filter(|c| c.gating && !c.pass).collect()
    }

    /// Looks up the value named by a check's `count` path.
    pub fn count_value(&self, path: &str) -> Option<usize> {
        let (head, tail) = path.split_once('.')?;
        match head {
            "oracle" => self.counts.oracle.get(tail).copied(),
            "sweep" => self.counts.sweep.get(tail).copied(),
            "rotating_line" => {
                let r = self.counts.rotating_line.as_ref()?;
                match tail {
                    "triangles" => Some(r.triangles),
                    "emissions" => Some(r.emissions),
                    _ => None,
                }
            }
            "construction" => match self.counts.construction.as_ref()? {
                ConstructionCounts::Lemma(l) => match tail {
                    "triangles" => Some(l.triangles),
                    "anchors_meeting_branch_bound" => Some(l.anchors_meeting_branch_bound),
                    "intervals_meeting_required" => Some(l.intervals_meeting_required),
                    _ => None,
                },
                ConstructionCounts::Theorem(t) => match tail {
                    "tetrahedra" => Some(t.tetrahedra),
                    "within_multiplicity_two" => Some(t.within_multiplicity_two),
                    "side_invariant_holds" => Some(t.side_invariant_holds),
                    _ => None,
                },
            },
            _ => None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Where a counted instance comes from.
#[derive(Clone, Debug)]
pub enum CountSource {
    File { path: PathBuf, validation: Validation },
    Generate { dim: usize, n_red: usize, n_blue: usize, seed: u64, coord_bound: i64 },
}

pub fn load_instance(source: &CountSource) -> Result<(Instance, InstanceDescriptor), HarnessError> {
    match source {
        CountSource::File { path, validation } => {
            let inst: Instance = read_points(path, *validation)?;
            let desc = InstanceDescriptor {
                dim: inst.dim(),
                n_red: inst.red_count(),
                n_blue: inst.blue_count(),
                seed: None,
                coord_bound: None,
                source: path.display().to_string(),
            };
            Ok((inst, desc))
        }
        &CountSource::Generate { dim, n_red, n_blue, seed, coord_bound } => {
            let inst = match dim {
                2 => Instance::Planar(generate_random2(n_red, n_blue, seed, coord_bound)?),
                3 => Instance::Spatial(generate_random3(n_red, n_blue, seed, coord_bound)?),
                d => return Err(HarnessError::Usage(format!("dimension must be 2 or 3, got {d}"))),
            };
            let desc = InstanceDescriptor {
                dim,
                n_red,
                n_blue,
                seed: Some(seed),
                coord_bound: Some(coord_bound),
                source: "generated".to_string(),
            };
            Ok((inst, desc))
        }
    }
}

fn timed<R>(timings: &mut BTreeMap<String, f64>, phase: &str, f: impl FnOnce() -> R) -> R {
    let start = Instant::now();
    let r = f();
    timings.insert(phase.to_string(), start.elapsed().as_secs_f64());
    r
}

pub fn lemma_counts(w: &crate::lemma::LemmaWitness) -> LemmaCounts {
    let large: Vec<_> = w.anchors.iter().filter(|a| a.branch == Branch::LargeM).collect();
    let intervals: Vec<_> = w.anchors.iter().flat_map(|a| a.intervals.iter()).collect();
    LemmaCounts {
        triangles: w.triangles.len(),
        small_m_anchors: w.small_m_anchors(),
        large_m_anchors: w.large_m_anchors(),
        small_m_triangles: w.anchors.iter().map(|a| a.small_m_emitted).sum(),
        large_m_triangles: w.anchors.iter().map(|a| a.large_m_emitted).sum(),
        anchors_meeting_branch_bound: w.anchors.iter().filter(|a| a.branch_bound_met()).count(),
        large_m_meeting_endpoint_bound: large.iter().filter(|a| a.large_m_emitted >= a.large_m_required).count(),
        large_m_meeting_printed_bound: large
            .iter()
            .filter(|a| a.large_m_emitted as f64 >= a.large_m_printed_bound)
            .count(),
        intervals: intervals.len(),
        intervals_meeting_required: intervals.iter().filter(|r| r.emitted >= r.required).count(),
        hull_violations: intervals.iter().filter(|r| !r.hull_clean).count(),
        rejected: w.rejected,
        max_multiplicity: w.max_multiplicity(),
    }
}

pub fn theorem_counts(out: &crate::theorem::TheoremOutput) -> TheoremCounts {
    TheoremCounts {
        tetrahedra: out.tetrahedra.len(),
        apexes: out.apexes.len(),
        skipped_apexes: out.skipped_apexes(),
        side_invariant_holds: out.apexes.iter().filter(|a| a.side_invariant_holds()).count(),
        planar_triangles: out.apexes.iter().map(|a| a.planar_triangles).sum(),
        rejected: out.rejected(),
        max_multiplicity: out.max_multiplicity(),
        within_multiplicity_two: out.multiplicity.values().filter(|&&m| m <= 2).count(),
        multiplicity_histogram: out
            .multiplicity_histogram()
            .into_iter()
            .map(|(k, v)| (k.to_string(), v))
            .collect(),
    }
}

fn planar_pattern_checks(checks: &mut Vec<BoundCheck>, prefix: &str, counts: &BTreeMap<String, usize>, set: &PlanarSet) {
    let n = set.red_count();
    if let Some(&rrb) = counts.get("rrb") {
        let lemma_applies = n >= 22 && set.blue_count() + 1 >= n;
        checks.push(BoundCheck::new("lemma1", &format!("{prefix}.rrb"), lemma1_threshold(n), rrb, lemma_applies));
        checks.push(BoundCheck::new(
            "conjecture2_quadratic",
            &format!("{prefix}.rrb"),
            (n * n) as u64,
            rrb,
            false,
        ));
    }
    if let Some(&total) = counts.get("rrb+bbr") {
        checks.push(BoundCheck::new(
            "red_plus_blue_quadratic",
            &format!("{prefix}.rrb+bbr"),
            (n * n) as u64,
            total,
            set.is_balanced() && n >= 3,
        ));
    }
}

fn planar_counts(
    set: &PlanarSet,
    patterns: &[Pattern],
    enumerate: impl Fn(&PlanarSet, Pattern) -> usize,
) -> BTreeMap<String, usize> {
    let mut counts: BTreeMap<String, usize> =
        patterns.iter().map(|&p| (p.name().to_string(), enumerate(set, p))).collect();
    if let (Some(&a), Some(&b)) = (counts.get("rrb"), counts.get("bbr")) {
        counts.insert("rrb+bbr".to_string(), a + b);
    }
    counts
}

fn count_planar(
    set: &PlanarSet,
    engine: Engine,
    patterns: &[Pattern],
    counts: &mut Counts,
    checks: &mut Vec<BoundCheck>,
    timings: &mut BTreeMap<String, f64>,
) -> Result<(), HarnessError> {
    match engine {
        Engine::Oracle => {
            counts.oracle = timed(timings, "oracle", || {
                planar_counts(set, patterns, |s, p| brute_force_triangles(s, p).len())
            });
            planar_pattern_checks(checks, "oracle", &counts.oracle, set);
        }
        Engine::Sweep => {
            counts.sweep = timed(timings, "sweep", || {
                planar_counts(set, patterns, |s, p| radial_sweep_triangles(s, p).len())
            });
            planar_pattern_checks(checks, "sweep", &counts.sweep, set);
        }
        Engine::Construct => {
            let witness = timed(timings, "lemma1_construct", || lemma1_construct(set))?;
            let lc = lemma_counts(&witness);
            checks.push(BoundCheck::new(
                "lemma1_branch_bounds",
                "construction.anchors_meeting_branch_bound",
                witness.anchors.len() as u64,
                lc.anchors_meeting_branch_bound,
                true,
            ));
            checks.push(BoundCheck::new(
                "lemma1_interval_counts",
                "construction.intervals_meeting_required",
                lc.intervals as u64,
                lc.intervals_meeting_required,
                true,
            ));
            counts.construction = Some(ConstructionCounts::Lemma(lc));

            if set.red_count() > 0 && set.blue_count() > 0 && set.len() >= 3 {
                let line = timed(timings, "rotating_line", || rotating_line_triangles(set));
                let oracle_rrb = brute_force_triangles(set, Pattern::RedRedBlue);
                let oracle_bbr = brute_force_triangles(set, Pattern::BlueBlueRed);
                let outside = line
                    .triangles
                    .iter()
                    .filter(|t| !oracle_rrb.contains(t) && !oracle_bbr.contains(t))
                    .count();
                let rl = RotatingLineCounts {
                    triangles: line.triangles.len(),
                    rrb: line.triangles.iter().filter(|t| t.pattern == Pattern::RedRedBlue).count(),
                    bbr: line.triangles.iter().filter(|t| t.pattern == Pattern::BlueBlueRed).count(),
                    emissions: line.emissions.len(),
                    empty_sides: line.empty_sides,
                    outside_oracle: outside,
                };
                // A (2,1)-triangle has two bichromatic edges, each emitting it at most once per side.
                checks.push(BoundCheck::new(
                    "rotating_line_half_emissions",
                    "rotating_line.triangles",
                    rl.emissions.div_ceil(2) as u64,
                    rl.triangles,
                    true,
                ));
                counts.rotating_line = Some(rl);
            }
        }
    }
    Ok(())
}

fn count_spatial(
    set: &SpatialSet,
    engine: Engine,
    counts: &mut Counts,
    checks: &mut Vec<BoundCheck>,
    timings: &mut BTreeMap<String, f64>,
) -> Result<(), HarnessError> {
    let n = set.red_count();
    match engine {
        Engine::Oracle => {
            let c = timed(timings, "oracle", || brute_force_balanced_tetrahedra(set).len());
            counts.oracle.insert("balanced".to_string(), c);
            checks.push(BoundCheck::new("theorem_reference", "oracle.balanced", theorem_reference(n), c, false));
            checks.push(BoundCheck::new("conjecture1_cubic", "oracle.balanced", (n as u64).pow(3), c, false));
        }
        Engine::Sweep => {
            return Err(HarnessError::Usage("the sweep engine is planar only; use oracle or construct in 3D".into()))
        }
        Engine::Construct => {
            let out = timed(timings, "theorem_construct", || theorem_construct(set))?;
            let tc = theorem_counts(&out);
            checks.push(BoundCheck::new(
                "theorem_multiplicity_at_most_two",
                "construction.within_multiplicity_two",
                tc.tetrahedra as u64,
                tc.within_multiplicity_two,
                true,
            ));
            checks.push(BoundCheck::new(
                "theorem_side_counts",
                "construction.side_invariant_holds",
                tc.apexes as u64,
                tc.side_invariant_holds,
                true,
            ));
            checks.push(BoundCheck::new(
                "theorem_reference",
                "construction.tetrahedra",
                theorem_reference(n),
                tc.tetrahedra,
                false,
            ));
            counts.construction = Some(ConstructionCounts::Theorem(tc));
        }
    }
    Ok(())
}

/// Counts one instance with the chosen engine and evaluates bound checks.
/// `patterns` applies to planar instances; empty means all four.
pub fn count_instance(
    instance: &Instance,
    descriptor: InstanceDescriptor,
    engine: Engine,
    patterns: &[Pattern],
) -> Result<ExperimentReport, HarnessError> {
    let patterns: Vec<Pattern> = if patterns.is_empty() { Pattern::ALL.to_vec() } else { patterns.to_vec() };
    let mut counts = Counts::default();
    let mut checks = Vec::new();
    let mut timings = BTreeMap::new();
    match instance {
        Instance::Planar(set) => count_planar(set, engine, &patterns, &mut counts, &mut checks, &mut timings)?,
        Instance::Spatial(set) => count_spatial(set, engine, &mut counts, &mut checks, &mut timings)?,
    }
    Ok(ExperimentReport {
        schema: SCHEMA_VERSION,
        instance: descriptor,
        engine,
        counts,
        bound_checks: checks,
        fit: None,
        timings,
    })
}

pub fn run_count(source: &CountSource, engine: Engine, patterns: &[Pattern]) -> Result<ExperimentReport, HarnessError> {
    let (instance, descriptor) = load_instance(source)?;
    count_instance(&instance, descriptor, engine, patterns)
}

/// Removes every `timings` field, recursively, for reproducibility checks.
pub fn strip_timings(value: &mut serde_json::Value) {
    match value {
        serde_json::Value::Object(map) => {
            map.remove("timings");
            map.values_mut().for_each(strip_timings);
        }
        serde_json::Value::Array(items) => items.iter_mut().for_each(strip_timings),
        _ => {}
    }
}
