//! One-shot invariant suite over seeded random instances and optional files.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{lemma1_threshold, SCHEMA_VERSION};
use crate::io::{read_points, Instance};
use crate::lemma::lemma1_construct;
use crate::pointset::{generate_random2, generate_random3, Validation};
use crate::projection::{side_counts, OrientedPlane};
use crate::tetrahedra::brute_force_balanced_tetrahedra;
use crate::theorem::theorem_construct;
use crate::triangles::{brute_force_triangles, radial_sweep_triangles, rotating_line_triangles, Pattern, Triangle};
use crate::{PlanarSet, SpatialSet};

/// Planar enumerator checked against the brute-force oracle.
pub type SweepEngineFn = fn(&PlanarSet, Pattern) -> BTreeSet<Triangle>;

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub seeds: Vec<u64>,
    pub sizes2: Vec<usize>,
    pub sizes3: Vec<usize>,
    pub coord_bound: i64,
    pub files: Vec<PathBuf>,
    pub sweep_engine: SweepEngineFn,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seeds: vec![1, 2, 3],
            sizes2: vec![4, 8, 22],
            sizes3: vec![4, 6, 8],
            coord_bound: 1 << 20,
            files: Vec::new(),
            sweep_engine: radial_sweep_triangles,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyEntry {
    /// `module.invariant`.
    pub invariant: String,
    /// `seed=<s> dim=<d> n=<n>` or the input file path.
    pub instance: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub schema: u32,
    pub seeds: Vec<u64>,
    pub sizes2: Vec<usize>,
    pub sizes3: Vec<usize>,
    pub files: Vec<String>,
    pub entries: Vec<VerifyEntry>,
    pub passed: usize,
    pub failed: usize,
    pub timings: std::collections::BTreeMap<String, f64>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &VerifyEntry> {
        self.entries.iter().filter(|e| !e.pass)
    }
}

struct Recorder<'a> {
    instance: &'a str,
    entries: Vec<VerifyEntry>,
}

impl Recorder<'_> {
    fn check(&mut self, invariant: &str, pass: bool, detail: impl Into<String>) {
        self.entries.push(VerifyEntry {
            invariant: invariant.to_string(),
            instance: self.instance.to_string(),
            pass,
            detail: if pass { String::new() } else { detail.into() },
        });
    }
}

fn verify_planar(set: &PlanarSet, cfg: &VerifyConfig, rec: &mut Recorder<'_>) {
    let mut oracle = Vec::new();
    let mut mismatched = Vec::new();
    for pat in Pattern::ALL {
        let brute = brute_force_triangles(set, pat);
        if (cfg.sweep_engine)(set, pat) != brute {
            mismatched.push(pat.name());
        }
        oracle.push(brute);
    }
    rec.check(
        "empty_triangles_2d.oracle_equivalence",
        mismatched.is_empty(),
        format!("sweep differs from brute force for patterns {mismatched:?}"),
    );
    let (rrb, bbr) = (&oracle[0], &oracle[1]);
    let n = set.red_count();

    if set.blue_count() + 1 >= n {
        let w = lemma1_construct(set).expect("precondition checked");
        let outside = w.triangles.iter().filter(|t| !rrb.contains(t)).count();
        rec.check(
            "empty_triangles_2d.witness_soundness",
            outside == 0 && w.rejected == 0,
            format!("{outside} witness triangles outside the oracle, {} rejected", w.rejected),
        );
        let weak: Vec<usize> = w.anchors.iter().filter(|a| !a.branch_bound_met()).map(|a| a.anchor).collect();
        let short_intervals = w
            .anchors
            .iter()
            .flat_map(|a| a.intervals.iter())
            .filter(|r| r.emitted < r.required)
            .count();
        rec.check(
            "empty_triangles_2d.branch_bounds",
            weak.is_empty() && short_intervals == 0,
            format!("anchors below their branch bound: {weak:?}; intervals below |J|(|J|-1)/2: {short_intervals}"),
        );
        let dirty = w.anchors.iter().flat_map(|a| a.intervals.iter()).filter(|r| !r.hull_clean).count();
        rec.check(
            "empty_triangles_2d.subinterval_hull",
            dirty == 0,
            format!("{dirty} subintervals whose hull contains other points"),
        );
        if n >= 22 {
            let t = lemma1_threshold(n);
            rec.check(
                "empty_triangles_2d.lemma1_bound",
                rrb.len() as u64 >= t,
                format!("{} empty red (2,1)-triangles < {t}", rrb.len()),
            );
        }
    }
    if set.red_count() > 0 && set.blue_count() > 0 && set.len() >= 3 {
        let line = rotating_line_triangles(set);
        let outside = line.triangles.iter().filter(|t| !rrb.contains(t) && !bbr.contains(t)).count();
        rec.check(
            "empty_triangles_2d.rotating_line_soundness",
            outside == 0,
            format!("{outside} rotating-line triangles outside the oracle"),
        );
    }
    if set.is_balanced() && n >= 3 {
        let total = rrb.len() + bbr.len();
        rec.check(
            "empty_triangles_2d.red_plus_blue_quadratic",
            total >= n * n,
            format!("{total} empty (2,1)-triangles < n^2 = {}", n * n),
        );
    }
}

fn verify_spatial(set: &SpatialSet, rec: &mut Recorder<'_>) {
    if !set.is_balanced() || set.len() < 4 {
        return;
    }
    let oracle = brute_force_balanced_tetrahedra(set);
    let out = match theorem_construct(set) {
        Ok(out) => out,
        Err(e) => {
            rec.check("empty_tetrahedra_3d.pipeline", false, e.to_string());
            return;
        }
    };
    let outside = out.tetrahedra.iter().filter(|t| !oracle.contains(t)).count();
    rec.check(
        "empty_tetrahedra_3d.soundness",
        outside == 0 && out.rejected() == 0,
        format!("{outside} tetrahedra outside the oracle, {} rejected", out.rejected()),
    );
    rec.check(
        "empty_tetrahedra_3d.multiplicity",
        out.max_multiplicity() <= 2,
        format!("a tetrahedron was produced by {} apexes", out.max_multiplicity()),
    );
    rec.check(
        "empty_tetrahedra_3d.side_counts",
        out.skipped_apexes() == 0 && out.apexes.iter().all(|a| a.side_invariant_holds()),
        format!("{} skipped apexes", out.skipped_apexes()),
    );
    let need = set.red_count() / 2;
    let bad_planes: Vec<usize> = out
        .apexes
        .iter()
        .filter(|a| {
            let normal = a.normal.clone().map(|c| c.parse().expect("normal component"));
            let plane = OrientedPlane::through(normal, set.point(a.apex));
            let c = side_counts(set, a.apex, &plane);
            c.on_plane != 0 || c.red_above < need || c.red_below < need
        })
        .map(|a| a.apex)
        .collect();
    rec.check(
        "empty_tetrahedra_3d.halving_plane",
        bad_planes.is_empty(),
        format!("planes failing the recount at apexes {bad_planes:?}"),
    );
}

fn verify_instance(instance: &Instance, cfg: &VerifyConfig, label: &str) -> Vec<VerifyEntry> {
    let mut rec = Recorder { instance: label, entries: Vec::new() };
    let audit = match instance {
        Instance::Planar(s) => s.validate_general_position(),
        Instance::Spatial(s) => s.validate_general_position(),
    };
    rec.check("pointset.general_position", audit.is_ok(), audit.err().map(|v| v.to_string()).unwrap_or_default());
    match instance {
        Instance::Planar(s) => verify_planar(s, cfg, &mut rec),
        Instance::Spatial(s) => verify_spatial(s, &mut rec),
    }
    rec.entries
}

enum Job {
    Generated { dim: usize, n: usize, seed: u64 },
    File(PathBuf),
}

fn run_job(job: &Job, cfg: &VerifyConfig) -> Vec<VerifyEntry> {
    match job {
        &Job::Generated { dim, n, seed } => {
            let label = format!("seed={seed} dim={dim} n={n}");
            let generated = if dim == 2 {
                generate_random2(n, n, seed, cfg.coord_bound).map(Instance::Planar)
            } else {
                generate_random3(n, n, seed, cfg.coord_bound).map(Instance::Spatial)
            };
            match generated {
                Ok(inst) => verify_instance(&inst, cfg, &label),
                Err(e) => vec![VerifyEntry {
                    invariant: "pointset.generate".into(),
                    instance: label,
                    pass: false,
                    detail: e.to_string(),
                }],
            }
        }
        Job::File(path) => {
            let label = path.display().to_string();
            match read_points(path, Validation::Full) {
                Ok(inst) => verify_instance(&inst, cfg, &label),
                Err(e) => vec![VerifyEntry {
                    invariant: "pointset.general_position".into(),
                    instance: label,
                    pass: false,
                    detail: e.to_string(),
                }],
            }
        }
    }
}

/// Runs every invariant on every configured instance. Entries come out in
/// job order regardless of scheduling.
pub fn verify_pipeline(cfg: &VerifyConfig) -> VerifyReport {
    let start = Instant::now();
    let mut jobs = Vec::new();
    for &seed in &cfg.seeds {
        jobs.extend(cfg.sizes2.iter().map(|&n| Job::Generated { dim: 2, n, seed }));
        jobs.extend(cfg.sizes3.iter().map(|&n| Job::Generated { dim: 3, n, seed }));
    }
    jobs.extend(cfg.files.iter().cloned().map(Job::File));
    let entries: Vec<VerifyEntry> = jobs.par_iter().flat_map_iter(|j| run_job(j, cfg)).collect();
    let failed = entries.iter().filter(|e| !e.pass).count();
    let mut timings = std::collections::BTreeMap::new();
    timings.insert("total".to_string(), start.elapsed().as_secs_f64());
    VerifyReport {
        schema: SCHEMA_VERSION,
        seeds: cfg.seeds.clone(),
        sizes2: cfg.sizes2.clone(),
        sizes3: cfg.sizes3.clone(),
        files: cfg.files.iter().map(|p| p.display().to_string()).collect(),
        passed: entries.len() - failed,
        failed,
        entries,
        timings,
    }
}
