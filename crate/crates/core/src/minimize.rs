//! Exact search for the smallest tile systems that strictly self-assemble a
//! finite shape, optionally restricted to directed systems.
//!
//! Candidates are generated up to glue relabeling. The `4k` glue slots of a
//! `k`-type system are visited direction-major (every north slot, then
//! south, east, west); each slot is null or joins a glue class, and classes
//! are numbered in order of first use, which is a restricted growth string
//! over the non-null slots. Each class gets strength 1 or 2 when it opens.
//! Only normalized systems are generated: a class that appears on a north
//! side must appear on a south side and vice versa, likewise east and west.
//! Every normalized system is emitted exactly once up to relabeling.
//!
//! The search space grows very quickly with `k` (it is hard for NP in
//! directed mode and for the second level of the polynomial hierarchy in
//! general), so this is meant for shapes of a handful of cells.

use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::explore::{double_glue_lint, is_directed, judge, strictly_self_assembles, Answer};
use crate::geometry::{Bound, Direction, Point, Shape};
use crate::model::{Glue, TileIndex, TileSystem, TileType};

/// Slots in direction-major visiting order.
const GROUPS: [Direction; 4] = [Direction::North, Direction::South, Direction::East, Direction::West];

/// Glue classes for every slot of a `k`-type system.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GlueAssignment {
    k: usize,
    /// Class per slot, indexed `tile * 4 + direction`; 0 is the null class.
    classes: Vec<u8>,
    /// Strength per class; entry 0 (null) is 0.
    strengths: Vec<u8>,
}

impl GlueAssignment {
    pub fn tile_count(&self) -> usize {
        self.k
    }

    pub fn class(&self, tile: TileIndex, d: Direction) -> u8 {
        self.classes[tile * 4 + d.index()]
    }

    pub fn strength(&self, tile: TileIndex, d: Direction) -> u8 {
        self.strengths[self.class(tile, d) as usize]
    }

    pub fn class_count(&self) -> usize {
        self.strengths.len() - 1
    }

    /// Tile types `T0..` with glue labels `g1..` named after their classes.
    pub fn tile_types(&self) -> Vec<TileType> {
        (0..self.k)
            .map(|t| {
                let glues = Direction::ALL.map(|d| match self.class(t, d) {
                    0 => Glue::null(),
                    c => Glue::new(format!("g{c}"), self.strengths[c as usize] as u32),
                });
                TileType::new(format!("T{t}"), glues)
            })
            .collect()
    }

    pub fn system(&self, seed_tile: TileIndex, seed_position: Point) -> TileSystem {
        TileSystem::new(self.tile_types(), seed_tile, seed_position)
            .expect("generated assignments are normalized")
    }
}

/// Lazy enumeration of canonical glue assignments for `k` tile types, in
/// restricted-growth order.
pub struct GlueAssignments {
    k: usize,
    /// Slot index (tile * 4 + dir) for each depth.
    order: Vec<usize>,
    /// Option chosen at each depth; `None` before the first visit.
    choice: Vec<Option<usize>>,
    classes: Vec<u8>,
    strengths: Vec<u8>,
    // Per class, which directions it has been used on (bitmask over N,E,S,W).
    used: Vec<u8>,
    // Saved `used` bit per depth to undo on backtrack.
    undo: Vec<Option<(u8, u8, bool)>>,
    depth: usize,
    done: bool,
}

impl GlueAssignments {
    pub fn new(k: usize) -> Self {
        let order: Vec<usize> = GROUPS
            .iter()
            .flat_map(|d| (0..k).map(move |t| t * 4 + d.index()))
            .collect();
        let n = order.len();
        GlueAssignments {
            k,
            order,
            choice: vec![None; n],
            classes: vec![0; 4 * k],
            strengths: vec![0],
            used: vec![0],
            undo: vec![None; n],
            depth: 0,
            done: k == 0,
        }
    }

    fn group(&self, depth: usize) -> Direction {
        GROUPS[depth / self.k]
    }

    /// Options at the current depth: 0 = null, 1..=m existing class,
    /// m+1 = new class strength 1, m+2 = new class strength 2.
    fn option_allowed(&self, depth: usize, opt: usize) -> bool {
        let m = self.strengths.len() - 1;
        let group = self.group(depth);
        if opt == 0 {
            return true;
        }
        if opt <= m {
            return match group {
                Direction::North | Direction::East => true,
                // Classes here must already pair with the opposite side.
                Direction::South => self.used[opt] & bit(Direction::North) != 0,
                Direction::West => self.used[opt] & bit(Direction::East) != 0,
            };
        }
        opt <= m + 2 && matches!(group, Direction::North | Direction::East)
    }

    fn apply(&mut self, depth: usize, opt: usize) {
        let slot = self.order[depth];
        let d = self.group(depth);
        let m = self.strengths.len() - 1;
        let (class, opened) = if opt == 0 {
            (0u8, false)
        } else if opt <= m {
            (opt as u8, false)
        } else {
            self.strengths.push((opt - m) as u8);
            self.used.push(0);
            ((m + 1) as u8, true)
        };
        self.classes[slot] = class;
        let prev = self.used[class as usize];
        self.used[class as usize] |= bit(d);
        self.undo[depth] = Some((class, prev, opened));
    }

    fn retract(&mut self, depth: usize) {
        if let Some((class, prev, opened)) = self.undo[depth].take() {
            self.used[class as usize] = prev;
            if opened {
                self.strengths.pop();
                self.used.pop();
            }
            self.classes[self.order[depth]] = 0;
        }
    }

    /// Group-closing constraints checked after the last slot of a group.
    fn group_closed_ok(&self, depth: usize) -> bool {
        let last_of_group = (depth + 1).is_multiple_of(self.k);
        if !last_of_group {
            return true;
        }
        match self.group(depth) {
            Direction::South => self.used[1..]
                .iter()
                .all(|&u| u & bit(Direction::North) == 0 || u & bit(Direction::South) != 0),
            Direction::West => self.used[1..]
                .iter()
                .all(|&u| u & bit(Direction::East) == 0 || u & bit(Direction::West) != 0),
            _ => true,
        }
    }

    fn snapshot(&self) -> GlueAssignment {
        GlueAssignment {
            k: self.k,
            classes: self.classes.clone(),
            strengths: self.strengths.clone(),
        }
    }
}

fn bit(d: Direction) -> u8 {
    1 << d.index()
}

impl Iterator for GlueAssignments {
    type Item = GlueAssignment;

    fn next(&mut self) -> Option<GlueAssignment> {
        let n = self.order.len();
        if self.done {
            return None;
        }
        // After yielding a leaf we resume at the last depth.
        if self.depth == n {
            self.depth = n - 1;
        }
        loop {
            let depth = self.depth;
            self.retract(depth);
            let start = self.choice[depth].map_or(0, |c| c + 1);
            let m = self.strengths.len() - 1;
            let next_opt = (start..=m + 2).find(|&o| self.option_allowed(depth, o));
            match next_opt {
                Some(opt) => {
                    self.choice[depth] = Some(opt);
                    self.apply(depth, opt);
                    if !self.group_closed_ok(depth) {
                        continue;
                    }
                    if depth + 1 == n {
                        self.depth = n;
                        return Some(self.snapshot());
                    }
                    self.depth += 1;
                    self.choice[self.depth] = None;
                }
                None => {
                    self.choice[depth] = None;
                    if depth == 0 {
                        self.done = true;
                        return None;
                    }
                    self.depth -= 1;
                }
            }
        }
    }
}

/// A necessary condition for strict self-assembly that a candidate failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Prune {
    /// (a) A shape with more than one point needs a seed with some
    /// positive glue: otherwise the seed alone is terminal.
    InertSeed,
    /// (b) The seed carries a double glue facing outside the shape. Its
    /// partner exists (the system is normalized), so a tile attaches there.
    SeedDoubleGlueOutside,
    /// (c) The first tile to join a lone seed binds to the seed only, so it
    /// needs a double bond, on a side facing into the shape.
    NoInwardDoubleGlue,
    /// (d) In a terminal assembly of the shape, the tile at every non-seed
    /// point attached with strength ≥ 2 from in-shape neighbours, so some
    /// tile type has glue strength ≥ 2 summed over the in-shape sides of
    /// that point.
    UnbindablePoint,
}

/// Applies pruning rules (a) through (d) in order.
pub fn prune(assignment: &GlueAssignment, seed_tile: TileIndex, seed_position: Point, shape: &Shape) -> Option<Prune> {
    let seed_strength = |d: Direction| assignment.strength(seed_tile, d);
    if shape.len() > 1 && Direction::ALL.iter().all(|&d| seed_strength(d) == 0) {
        return Some(Prune::InertSeed);
    }
    let inside = |p: Point, d: Direction| shape.contains(p.step(d));
    if Direction::ALL
        .iter()
        .any(|&d| seed_strength(d) == 2 && !inside(seed_position, d))
    {
        return Some(Prune::SeedDoubleGlueOutside);
    }
    if shape.len() > 1
        && !Direction::ALL
            .iter()
            .any(|&d| seed_strength(d) == 2 && inside(seed_position, d))
    {
        return Some(Prune::NoInwardDoubleGlue);
    }
    for p in shape.iter().filter(|&p| p != seed_position) {
        let bindable = (0..assignment.tile_count()).any(|t| {
            let total: u32 = Direction::ALL
                .iter()
                .filter(|&&d| inside(p, d))
                .map(|&d| assignment.strength(t, d) as u32)
                .sum();
            total >= 2
        });
        if !bindable {
            return Some(Prune::UnbindablePoint);
        }
    }
    None
}

/// One candidate of the search, identified by its position in the
/// canonical enumeration.
#[derive(Clone, Debug)]
pub struct Candidate {
    pub index: u64,
    pub assignment: GlueAssignment,
    pub seed_tile: TileIndex,
    pub seed_position: Point,
}

impl Candidate {
    pub fn system(&self) -> TileSystem {
        self.assignment.system(self.seed_tile, self.seed_position)
    }
}

/// Every candidate with `k` tile types for `shape`, pruned or not: glue
/// assignment outermost, then seed tile, then seed position over the orbit
/// representatives of the shape's symmetry group.
pub fn candidates(k: usize, shape: &Shape) -> impl Iterator<Item = Candidate> {
    let reps = shape.orbit_representatives();
    let mut index = 0u64;
    GlueAssignments::new(k).flat_map(move |assignment| {
        let reps = reps.clone();
        let mut out = Vec::with_capacity(k * reps.len());
        for seed_tile in 0..k {
            for &seed_position in &reps {
                out.push(Candidate {
                    index,
                    assignment: assignment.clone(),
                    seed_tile,
                    seed_position,
                });
                index += 1;
            }
        }
        out
    })
}

/// Normalized systems with exactly `k` tile types, one per relabeling class
/// and shape-symmetry orbit of the seed position, with pruned candidates
/// skipped.
pub fn enumerate_canonical_systems(k: usize, shape: &Shape) -> impl Iterator<Item = TileSystem> + '_ {
    candidates(k, shape)
        .filter(move |c| prune(&c.assignment, c.seed_tile, c.seed_position, shape).is_none())
        .map(|c| c.system())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchMode {
    /// Strict self-assembly only.
    General,
    /// Strict self-assembly by a directed system.
    Directed,
}

/// Limits on a minimization run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    /// Maximum number of candidates to consider, across all `k`.
    pub max_systems: Option<u64>,
    /// Wall-clock limit for the whole run.
    pub time_limit: Option<Duration>,
    /// Assemblies each candidate's exploration may enumerate.
    pub per_candidate: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_systems: None,
            time_limit: None,
            per_candidate: 100_000,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MinStatus {
    Found,
    NotFoundUpTo { kmax: usize },
    BudgetExceeded,
}

#[derive(Clone, Debug)]
pub struct MinResult {
    pub mode: SearchMode,
    pub k_star: Option<usize>,
    pub certificate: Option<TileSystem>,
    /// Largest `k` whose candidates were all rejected.
    pub exhausted_k: usize,
    /// Candidates considered, pruned ones included.
    pub systems_tested: u64,
    pub status: MinStatus,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Outcome {
    Reject,
    Strict,
    StrictDirected,
    Unknown,
}

fn evaluate(c: &Candidate, shape: &Shape, per_candidate: usize) -> Outcome {
    if prune(&c.assignment, c.seed_tile, c.seed_position, shape).is_some() {
        return Outcome::Reject;
    }
    let sys = c.system();
    let Ok(j) = judge(&sys, shape, per_candidate) else {
        return Outcome::Reject;
    };
    if !double_glue_lint(&sys, shape, &j.report).is_empty() {
        return Outcome::Reject;
    }
    match (j.strict.answer, j.directed.answer) {
        (Answer::Yes, Answer::Yes) => Outcome::StrictDirected,
        (Answer::Yes, _) => Outcome::Strict,
        (Answer::No, _) => Outcome::Reject,
        (Answer::Inconclusive, _) => Outcome::Unknown,
    }
}

/// Re-verifies a certificate from scratch, through the standalone verdict
/// functions rather than the combined judgement used during search.
pub fn verify_certificate(sys: &TileSystem, shape: &Shape, mode: SearchMode, budget: usize) -> bool {
    let strict = strictly_self_assembles(sys, shape, budget).is_ok_and(|v| v.is_yes());
    match mode {
        SearchMode::General => strict,
        SearchMode::Directed => {
            strict && is_directed(sys, &Bound::from(shape), budget).is_ok_and(|v| v.is_yes())
        }
    }
}

const CHUNK: usize = 2048;

struct ModeState {
    mode: SearchMode,
    result: Option<MinResult>,
}

/// Searches both modes at once over a shared enumeration; a mode stops
/// contributing once it has its answer.
fn search(shape: &Shape, modes: &[SearchMode], kmax: usize, budget: SearchBudget) -> Vec<MinResult> {
    let start = Instant::now();
    let mut states: Vec<ModeState> = modes.iter().map(|&mode| ModeState { mode, result: None }).collect();
    let mut tested: u64 = 0;
    let mut exhausted_k = 0;

    let finish_budget = |states: &mut Vec<ModeState>, tested: u64, exhausted_k: usize| {
        for s in states.iter_mut().filter(|s| s.result.is_none()) {
            s.result = Some(MinResult {
                mode: s.mode,
                k_star: None,
                certificate: None,
                exhausted_k,
                systems_tested: tested,
                status: MinStatus::BudgetExceeded,
            });
        }
    };

    'ks: for k in 1..=kmax {
        let mut iter = candidates(k, shape);
        let mut unknown = false;
        loop {
            let chunk: Vec<Candidate> = iter.by_ref().take(CHUNK).collect();
            if chunk.is_empty() {
                break;
            }
            let outcomes: Vec<Outcome> = chunk
                .par_iter()
                .map(|c| evaluate(c, shape, budget.per_candidate))
                .collect();
            for (c, outcome) in chunk.iter().zip(outcomes) {
                if budget.max_systems.is_some_and(|m| tested >= m) {
                    finish_budget(&mut states, tested, exhausted_k);
                    break 'ks;
                }
                tested += 1;
                if outcome == Outcome::Unknown {
                    unknown = true;
                }
                for s in states.iter_mut().filter(|s| s.result.is_none()) {
                    let accept = match s.mode {
                        SearchMode::General => matches!(outcome, Outcome::Strict | Outcome::StrictDirected),
                        SearchMode::Directed => outcome == Outcome::StrictDirected,
                    };
                    if accept {
                        s.result = Some(MinResult {
                            mode: s.mode,
                            k_star: Some(k),
                            certificate: Some(c.system()),
                            exhausted_k: k - 1,
                            systems_tested: tested,
                            status: MinStatus::Found,
                        });
                    }
                }
                if states.iter().all(|s| s.result.is_some()) {
                    break 'ks;
                }
            }
            if budget.time_limit.is_some_and(|t| start.elapsed() > t) {
                finish_budget(&mut states, tested, exhausted_k);
                break 'ks;
            }
        }
        if unknown {
            finish_budget(&mut states, tested, exhausted_k);
            break;
        }
        exhausted_k = k;
    }
    for s in states.iter_mut().filter(|s| s.result.is_none()) {
        s.result = Some(MinResult {
            mode: s.mode,
            k_star: None,
            certificate: None,
            exhausted_k,
            systems_tested: tested,
            status: MinStatus::NotFoundUpTo { kmax },
        });
    }
    states
        .into_iter()
        .map(|s| {
            let r = s.result.unwrap();
            if let Some(cert) = &r.certificate {
                assert!(
                    verify_certificate(cert, shape, r.mode, budget.per_candidate),
                    "search accepted a certificate that fails re-verification"
                );
            }
            r
        })
        .collect()
}

/// Smallest `k ≤ kmax` such that some `k`-type system (directed, in
/// [`SearchMode::Directed`]) strictly self-assembles `shape`.
///
/// `k` ascends from 1 and, within `k`, the first accepted candidate in
/// canonical order wins, so the certificate is deterministic. The
/// certificate is re-verified before it is returned.
pub fn min_tile_set(shape: &Shape, mode: SearchMode, kmax: usize, budget: SearchBudget) -> MinResult {
    search(shape, &[mode], kmax, budget).pop().unwrap()
}

/// General and directed minimum tile sets for `shape` from one shared
/// enumeration.
#[derive(Clone, Debug)]
pub struct GapResult {
    pub general: MinResult,
    pub directed: MinResult,
}

impl GapResult {
    /// Directed minus general tile complexity, when both were found.
    pub fn gap(&self) -> Option<i64> {
        Some(self.directed.k_star? as i64 - self.general.k_star? as i64)
    }
}

pub fn complexity_gap(shape: &Shape, kmax: usize, budget: SearchBudget) -> GapResult {
    let mut results = search(shape, &[SearchMode::General, SearchMode::Directed], kmax, budget);
    let directed = results.pop().unwrap();
    let general = results.pop().unwrap();
    GapResult { general, directed }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn assignment_counts() {
        // Independent count from the exponential generating function of
        // balanced glue classes (two strengths each) times a free null class.
        assert_eq!(GlueAssignments::new(1).count(), 11);
        assert_eq!(GlueAssignments::new(2).count(), 1339);
    }

    #[test]
    fn assignment_count_three() {
        assert_eq!(GlueAssignments::new(3).count(), 618_827);
    }
}
