//! Empty balanced tetrahedra built from planar witnesses.
//!
//! For each blue apex: split the red points evenly by a plane through the
//! apex, keep the side with more blue points, project it centrally onto a
//! parallel plane, collect empty red (2,1)-triangles there, and lift each
//! back to a tetrahedron with the apex as fourth vertex.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coord::Coordinate;
use crate::lemma::lemma1_construct;
use crate::pointset::{BichromaticSet3, Color};
use crate::projection::{central_project, halving_plane, side_counts, ProjectionError, Side, SideCounts};
use crate::tetrahedra::{is_empty_tetrahedron, Tetrahedron};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TheoremError {
    #[error("set is not balanced: {red} red, {blue} blue")]
    NotBalanced { red: usize, blue: usize },
    #[error(transparent)]
    Projection(#[from] ProjectionError),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ApexRecord {
    pub apex: usize,
    pub normal: [String; 3],
    pub side: Side,
    pub counts: SideCounts,
    pub projected_red: usize,
    pub projected_blue: usize,
    /// Empty red (2,1)-triangles found in the projected set.
    pub planar_triangles: usize,
    pub lifted: usize,
    /// Lifted tetrahedra failing the 3D emptiness/balance re-check.
    pub rejected: usize,
    /// Reason the planar step was not run, if it was not.
    pub skipped: Option<String>,
}

impl ApexRecord {
    /// The projected side satisfies `blue >= red - 1`.
    pub fn side_invariant_holds(&self) -> bool {
        self.projected_blue + 1 >= self.projected_red
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct TheoremOutput {
    pub tetrahedra: BTreeSet<Tetrahedron>,
    pub apexes: Vec<ApexRecord>,
    /// How many apexes produced each tetrahedron.
    pub multiplicity: BTreeMap<Tetrahedron, usize>,
}

impl TheoremOutput {
    pub fn max_multiplicity(&self) -> usize {
        self.multiplicity.values().copied().max().unwrap_or(0)
    }

    /// Histogram: multiplicity -> number of tetrahedra.
    pub fn multiplicity_histogram(&self) -> BTreeMap<usize, usize> {
        let mut h = BTreeMap::new();
        for &m in self.multiplicity.values() {
            *h.entry(m).or_default() += 1;
        }
        h
    }

    pub fn skipped_apexes(&self) -> usize {
        self.apexes.iter().filter(|a| a.skipped.is_some()).count()
    }

    pub fn rejected(&self) -> usize {
        self.apexes.iter().map(|a| a.rejected).sum()
    }
}

fn process_apex<T: Coordinate>(
    set: &BichromaticSet3<T>,
    p: usize,
) -> Result<(ApexRecord, BTreeSet<Tetrahedron>), TheoremError> {
    let plane = halving_plane(set, p)?;
    let counts = side_counts(set, p, &plane);
    let side = if counts.blue_above >= counts.blue_below { Side::Above } else { Side::Below };
    let mut record = ApexRecord {
        apex: p,
        normal: plane.normal_strings(),
        side,
        counts,
        projected_red: 0,
        projected_blue: 0,
        planar_triangles: 0,
        lifted: 0,
        rejected: 0,
        skipped: None,
    };
    let mut lifted = BTreeSet::new();
    let proj = match central_project(set, p, &plane, side) {
        Ok(proj) => proj,
        Err(ProjectionError::EmptySide) => return Ok((record, lifted)),
        Err(e) => return Err(e.into()),
    };
    record.projected_red = proj.base.red_count();
    record.projected_blue = proj.base.blue_count();
    if !record.side_invariant_holds() {
        record.skipped = Some(format!(
            "projected side has {} red and {} blue points",
            record.projected_red, record.projected_blue
        ));
        eprintln!("warning: apex {p} skipped: {}", record.skipped.as_deref().unwrap_or_default());
        return Ok((record, lifted));
    }
    let witness = lemma1_construct(&proj.base).expect("side invariant checked above");
    record.planar_triangles = witness.triangles.len();
    for tri in &witness.triangles {
        let [a, b, c] = tri.indices.map(|i| proj.preimage[i]);
        let tet = Tetrahedron::new(set, [a, b, c, p]);
        if tet.is_balanced() && is_empty_tetrahedron(set, tet.indices) {
            lifted.insert(tet);
        } else {
            record.rejected += 1;
        }
    }
    record.lifted = lifted.len();
    Ok((record, lifted))
}

/// Runs the per-apex pipeline for every blue point of a balanced set.
pub fn theorem_construct<T: Coordinate>(set: &BichromaticSet3<T>) -> Result<TheoremOutput, TheoremError> {
    if !set.is_balanced() {
        return Err(TheoremError::NotBalanced { red: set.red_count(), blue: set.blue_count() });
    }
    let per_apex: Vec<(ApexRecord, BTreeSet<Tetrahedron>)> = set
        .indices_of(Color::Blue)
        .into_par_iter()
        .map(|p| process_apex(set, p))
        .collect::<Result<_, _>>()?;
    let mut out = TheoremOutput::default();
    for (record, tets) in per_apex {
        for t in tets {
            *out.multiplicity.entry(t).or_default() += 1;
            out.tetrahedra.insert(t);
        }
        out.apexes.push(record);
    }
    Ok(out)
}
