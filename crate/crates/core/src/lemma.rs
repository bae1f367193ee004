//! Constructive enumeration of empty red (2,1)-triangles around red anchors.
//!
//! For each red anchor `p` the other points are ordered clockwise around `p`
//! and split into maximal runs of consecutive red points. With few runs
//! (`m <= isqrt(n)`), each run yields a large empty family grown from blue
//! points ordered by distance to the run's hull; with many runs, every run
//! endpoint next to a blue point closes an empty triangle with `p`.

use std::collections::{BTreeMap, BTreeSet};

use num_integer::Roots;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::angular::{clockwise_within_half_turn, sort_clockwise};
use crate::coord::Coordinate;
use crate::hull::ConvexHull;
use crate::pointset::{BichromaticSet2, Color};
use crate::triangles::{is_empty_triangle, Pattern, Triangle};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LemmaError {
    #[error("anchor {0} is not a red point")]
    NotRed(usize),
    #[error("interval {index} out of range ({count} intervals)")]
    NoSuchInterval { index: usize, count: usize },
    #[error("interval {0} has no contiguous half-size run avoiding the anchor's hull")]
    NoSubinterval(usize),
    #[error("needs blue_count >= red_count - 1, got {red} red and {blue} blue")]
    TooFewBlue { red: usize, blue: usize },
}

/// Maximal run of consecutive red points, as positions in the circular order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RedInterval {
    pub start: usize,
    pub len: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadialDecomposition {
    pub anchor: usize,
    /// All other indices, clockwise around the anchor.
    pub order: Vec<usize>,
    pub intervals: Vec<RedInterval>,
}

impl RadialDecomposition {
    pub fn m(&self) -> usize {
        self.intervals.len()
    }

    fn at(&self, pos: usize) -> usize {
        self.order[pos % self.order.len()]
    }

    /// Point indices of a run of `len` positions starting at `start`.
    pub fn run(&self, start: usize, len: usize) -> Vec<usize> {
        (0..len).map(|k| self.at(start + k)).collect()
    }

    pub fn interval_indices(&self, i: usize) -> Vec<usize> {
        let iv = self.intervals[i];
        self.run(iv.start, iv.len)
    }
}

pub fn radial_decompose<T: Coordinate>(set: &BichromaticSet2<T>, p: usize) -> Result<RadialDecomposition, LemmaError> {
    if set.color(p) != Color::Red {
        return Err(LemmaError::NotRed(p));
    }
    let mut order: Vec<usize> = (0..set.len()).filter(|&i| i != p).collect();
    sort_clockwise(set.point(p), set.points(), &mut order);
    let len = order.len();
    let mut intervals = Vec::new();
    match order.iter().position(|&i| set.color(i) == Color::Blue) {
        None if len > 0 => intervals.push(RedInterval { start: 0, len }),
        None => {}
        Some(first_blue) => {
            let mut run: Option<RedInterval> = None;
            for k in 1..=len {
                let pos = (first_blue + k) % len;
                if set.color(order[pos]) == Color::Red {
                    match run.as_mut() {
                        Some(r) => r.len += 1,
                        None => run = Some(RedInterval { start: pos, len: 1 }),
                    }
                } else if let Some(r) = run.take() {
                    intervals.push(r);
                }
            }
        }
    }
    Ok(RadialDecomposition { anchor: p, order, intervals })
}

/// Contiguous part of a red run whose hull avoids the anchor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subinterval {
    pub start: usize,
    pub indices: Vec<usize>,
    /// Points of the set other than the run itself inside its hull; the
    /// construction relies on this being empty.
    pub foreign_in_hull: Vec<usize>,
}

/// Picks the longest contiguous sub-run of interval `i` with at least
/// `ceil(len / 2)` points spanning less than a half turn around the anchor.
pub fn choose_subinterval<T: Coordinate>(
    set: &BichromaticSet2<T>,
    dec: &RadialDecomposition,
    i: usize,
) -> Result<Subinterval, LemmaError> {
    let iv = *dec
        .intervals
        .get(i)
        .ok_or(LemmaError::NoSuchInterval { index: i, count: dec.m() })?;
    let p = set.point(dec.anchor);
    let min_len = iv.len.div_ceil(2);
    for len in (min_len..=iv.len).rev() {
        for offset in 0..=iv.len - len {
            let start = iv.start + offset;
            let first = set.point(dec.at(start));
            let last = set.point(dec.at(start + len - 1));
            if len == 1 || clockwise_within_half_turn(p, first, last) {
                let indices = dec.run(start, len);
                let hull = ConvexHull::new(&indices.iter().map(|&k| set.point(k).clone()).collect::<Vec<_>>());
                let foreign_in_hull = (0..set.len())
                    .filter(|k| !indices.contains(k) && hull.contains(set.point(*k)))
                    .collect();
                return Ok(Subinterval { start: start % dec.order.len(), indices, foreign_in_hull });
            }
        }
    }
    Err(LemmaError::NoSubinterval(i))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Branch {
    SmallM,
    LargeM,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IntervalRecord {
    pub interval_len: usize,
    pub subinterval_len: usize,
    /// `|J| (|J| - 1) / 2`.
    pub required: usize,
    pub emitted: usize,
    pub hull_clean: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnchorRecord {
    pub anchor: usize,
    pub m: usize,
    pub branch: Branch,
    pub intervals: Vec<IntervalRecord>,
    pub small_m_emitted: usize,
    pub large_m_emitted: usize,
    /// `2m - 2`, the endpoint count the many-runs case supports.
    pub large_m_required: usize,
    /// `2 sqrt(m) - 2`, the bound as printed for the many-runs case.
    pub large_m_printed_bound: f64,
    /// Distinct triangles produced from this anchor.
    pub distinct: usize,
}

impl AnchorRecord {
    /// Whether the bound of this anchor's branch holds.
    pub fn branch_bound_met(&self) -> bool {
        match self.branch {
            Branch::SmallM => self.intervals.iter().all(|r| r.emitted >= r.required),
            Branch::LargeM => self.large_m_emitted >= self.large_m_required,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct LemmaWitness {
    pub triangles: BTreeSet<Triangle>,
    pub anchors: Vec<AnchorRecord>,
    /// Candidate triangles that failed re-verification.
    pub rejected: usize,
    /// Histogram: number of construction phases producing a triangle ->
    /// number of triangles produced that many times.
    pub multiplicity: BTreeMap<usize, usize>,
}

impl LemmaWitness {
    pub fn per_anchor_counts(&self) -> BTreeMap<usize, usize> {
        self.anchors.iter().map(|a| (a.anchor, a.distinct)).collect()
    }

    pub fn small_m_anchors(&self) -> usize {
        self.anchors.iter().filter(|a| a.branch == Branch::SmallM).count()
    }

    pub fn large_m_anchors(&self) -> usize {
        self.anchors.len() - self.small_m_anchors()
    }

    pub fn max_multiplicity(&self) -> usize {
        self.multiplicity.keys().next_back().copied().unwrap_or(0)
    }
}

struct AnchorOutput {
    record: AnchorRecord,
    // One entry per construction phase (interval for the few-runs family,
    // the endpoint family as a whole).
    phases: Vec<BTreeSet<Triangle>>,
    rejected: usize,
}

fn accept<T: Coordinate>(set: &BichromaticSet2<T>, tri: Triangle, into: &mut BTreeSet<Triangle>, rejected: &mut usize) {
    if tri.pattern == Pattern::RedRedBlue && is_empty_triangle(set, tri.indices) {
        into.insert(tri);
    } else {
        *rejected += 1;
    }
}

/// Layered family for one run: blue points `q_1, q_2, ...` by distance to the
/// hull of `J`; at layer `j`, consecutive red points around `q_j` inside
/// `Conv(J + q_1..q_j)` with at least one in `J` give empty triangles.
fn layered_family<T: Coordinate>(set: &BichromaticSet2<T>, sub: &[usize], rejected: &mut usize) -> BTreeSet<Triangle> {
    let mut out = BTreeSet::new();
    if sub.len() < 2 {
        return out;
    }
    let pts = set.points();
    let hull_j = ConvexHull::new(&sub.iter().map(|&k| pts[k].clone()).collect::<Vec<_>>());
    let mut blues: Vec<_> = set
        .indices_of(Color::Blue)
        .into_iter()
        .map(|q| (hull_j.sq_distance(&pts[q]), q))
        .collect();
    blues.sort();
    let mut generators: Vec<_> = sub.iter().map(|&k| pts[k].clone()).collect();
    for &(_, q) in blues.iter().take(sub.len() - 1) {
        generators.push(pts[q].clone());
        let hull = ConvexHull::new(&generators);
        let mut layer: Vec<usize> = (0..pts.len()).filter(|&k| k != q && hull.contains(&pts[k])).collect();
        sort_clockwise(&pts[q], pts, &mut layer);
        let len = layer.len();
        if len < 2 {
            continue;
        }
        for k in 0..len {
            let (x, y) = (layer[k], layer[(k + 1) % len]);
            let both_red = set.color(x) == Color::Red && set.color(y) == Color::Red;
            let touches_run = sub.contains(&x) || sub.contains(&y);
            if both_red && touches_run && clockwise_within_half_turn(&pts[q], &pts[x], &pts[y]) {
                accept(set, Triangle::new(set, q, x, y), &mut out, rejected);
            }
        }
    }
    out
}

/// Endpoints of each run paired with the neighboring blue point, whenever the
/// two are less than a half turn apart around the anchor.
fn endpoint_family<T: Coordinate>(set: &BichromaticSet2<T>, dec: &RadialDecomposition, rejected: &mut usize) -> BTreeSet<Triangle> {
    let mut out = BTreeSet::new();
    let total = dec.order.len();
    let p = dec.anchor;
    let center = set.point(p);
    for iv in &dec.intervals {
        let first = dec.at(iv.start);
        let last = dec.at(iv.start + iv.len - 1);
        let before = dec.at(iv.start + total - 1);
        let after = dec.at(iv.start + iv.len);
        if set.color(before) == Color::Blue && clockwise_within_half_turn(center, set.point(before), set.point(first)) {
            accept(set, Triangle::new(set, p, before, first), &mut out, rejected);
        }
        if set.color(after) == Color::Blue && clockwise_within_half_turn(center, set.point(last), set.point(after)) {
            accept(set, Triangle::new(set, p, last, after), &mut out, rejected);
        }
    }
    out
}

fn process_anchor<T: Coordinate>(set: &BichromaticSet2<T>, p: usize, n: usize) -> AnchorOutput {
    let dec = radial_decompose(set, p).expect("anchor is red");
    let m = dec.m();
    let branch = if m <= n.sqrt() { Branch::SmallM } else { Branch::LargeM };
    let mut rejected = 0;
    let mut phases = Vec::with_capacity(m + 1);
    let mut intervals = Vec::with_capacity(m);
    for i in 0..m {
        let sub = choose_subinterval(set, &dec, i).expect("a half-size run always spans under a half turn");
        let family = layered_family(set, &sub.indices, &mut rejected);
        let j = sub.indices.len();
        intervals.push(IntervalRecord {
            interval_len: dec.intervals[i].len,
            subinterval_len: j,
            required: j * (j - 1) / 2,
            emitted: family.len(),
            hull_clean: sub.foreign_in_hull.is_empty(),
        });
        phases.push(family);
    }
    let endpoints = endpoint_family(set, &dec, &mut rejected);
    let large_m_emitted = endpoints.len();
    phases.push(endpoints);
    let distinct = phases.iter().flatten().collect::<BTreeSet<_>>().len();
    AnchorOutput {
        record: AnchorRecord {
            anchor: p,
            m,
            branch,
            small_m_emitted: intervals.iter().map(|r| r.emitted).sum(),
            intervals,
            large_m_emitted,
            large_m_required: (2 * m).saturating_sub(2),
            large_m_printed_bound: 2.0 * (m as f64).sqrt() - 2.0,
            distinct,
        },
        phases,
        rejected,
    }
}

/// Runs both constructions around every red anchor and returns the verified
/// union. Requires `blue_count >= red_count - 1`.
pub fn lemma1_construct<T: Coordinate>(set: &BichromaticSet2<T>) -> Result<LemmaWitness, LemmaError> {
    let (red, blue) = (set.red_count(), set.blue_count());
    if blue + 1 < red {
        return Err(LemmaError::TooFewBlue { red, blue });
    }
    let outputs: Vec<AnchorOutput> = set
        .indices_of(Color::Red)
        .into_par_iter()
        .map(|p| process_anchor(set, p, red))
        .collect();
    let mut counts: BTreeMap<Triangle, usize> = BTreeMap::new();
    let mut witness = LemmaWitness::default();
    for out in outputs {
        for tri in out.phases.into_iter().flatten() {
            *counts.entry(tri).or_default() += 1;
        }
        witness.rejected += out.rejected;
        witness.anchors.push(out.record);
    }
    for (tri, c) in counts {
        witness.triangles.insert(tri);
        *witness.multiplicity.entry(c).or_default() += 1;
    }
    Ok(witness)
}
