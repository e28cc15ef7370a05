//! Exhaustive enumeration of producible assemblies inside a finite bound,
//! and the directedness / strict self-assembly verdicts built on it.
//!
//! Exploration is a closure of the seed under single-tile attachment,
//! deduplicated by [`CanonicalKey`]. Attachments at points outside the bound
//! are recorded as escapes but never expanded, so the enumerated set is
//! exactly the set of producible assemblies whose domain lies in the bound.
//! An enumerated assembly is terminal when it has no frontier attachment at
//! all, inside or outside the bound.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::assembly::{Assembly, Attachment, CanonicalKey, Step};
use crate::geometry::{Bound, Direction, Point, Shape};
use crate::model::{TileIndex, TileSystem};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExploreError {
    #[error("seed position {0} lies outside the exploration bound")]
    SeedOutsideBound(Point),
    #[error("exploration budget must be at least 1")]
    ZeroBudget,
}

/// Order in which open assemblies are expanded. Every order enumerates the
/// same set when exploration completes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SearchOrder {
    #[default]
    BreadthFirst,
    DepthFirst,
    /// Expand a uniformly random open assembly, seeded for replay.
    Random(u64),
    /// Level-synchronous breadth-first search with successor generation
    /// spread over the rayon pool. Produces exactly the sequential
    /// breadth-first result.
    ParallelBreadthFirst,
}

/// Conditions under which exploration stops before the closure is complete.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct HaltOn {
    /// Stop once two producible assemblies disagree at some point.
    pub conflict: bool,
    /// Stop at the first attachment outside the bound.
    pub escape: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExploreOptions {
    /// Maximum number of distinct assemblies to enumerate.
    pub budget: usize,
    pub order: SearchOrder,
    pub halt: HaltOn,
}

impl ExploreOptions {
    pub fn new(budget: usize) -> Self {
        ExploreOptions {
            budget,
            order: SearchOrder::BreadthFirst,
            halt: HaltOn::default(),
        }
    }

    pub fn order(mut self, order: SearchOrder) -> Self {
        self.order = order;
        self
    }

    pub fn halt(mut self, halt: HaltOn) -> Self {
        self.halt = halt;
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ExploreStatus {
    /// Every enumerated assembly was fully expanded and nothing escaped.
    Complete,
    /// Fully expanded inside the bound, but some attachment lies outside it.
    BoundExceeded,
    /// More distinct assemblies exist than the budget allows.
    BudgetExceeded,
    /// Stopped early on a [`HaltOn`] condition.
    Halted,
}

/// A producible assembly together with an attachment outside the bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Escape {
    /// Steps from the seed to `assembly`.
    pub sequence: Vec<Step>,
    pub assembly: Assembly,
    pub attachment: Step,
}

/// Two producible assemblies placing different tile types at `point`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Conflict {
    pub point: Point,
    /// Tile types in increasing order.
    pub tiles: [TileIndex; 2],
    /// Steps from the seed producing an assembly with `tiles[i]` at `point`.
    pub sequences: [Vec<Step>; 2],
}

#[derive(Clone, Debug)]
pub struct ExplorationReport {
    pub status: ExploreStatus,
    pub producible_count: usize,
    pub terminal_keys: BTreeSet<CanonicalKey>,
    /// Terminal assemblies ordered by canonical key.
    pub terminals: Vec<Assembly>,
    /// Every tile type placed at each point in some enumerated assembly.
    pub position_types: BTreeMap<Point, BTreeSet<TileIndex>>,
    /// Least escaping attachment, by (point, tile).
    pub escape_witness: Option<Escape>,
    /// Least conflicting point and tile pair.
    pub conflict: Option<Conflict>,
}

/// A finished exploration: the report plus every enumerated assembly in
/// discovery order.
#[derive(Clone, Debug)]
pub struct Exploration {
    pub report: ExplorationReport,
    pub assemblies: Vec<Assembly>,
}

impl Exploration {
    pub fn keys(&self) -> BTreeSet<CanonicalKey> {
        self.assemblies.iter().map(Assembly::key).collect()
    }
}

struct Node {
    assembly: Assembly,
    parent: Option<usize>,
    step: Option<Step>,
}

struct Expansion {
    children: Vec<(Step, Assembly, CanonicalKey)>,
    escapes: Vec<Attachment>,
    terminal: bool,
}

fn expand(sys: &TileSystem, bound: &Bound, a: &Assembly) -> Expansion {
    let mut attachments = Vec::new();
    for p in a.perimeter() {
        a.attachments_at(sys, p, &mut attachments);
    }
    let terminal = attachments.is_empty();
    let mut children = Vec::new();
    let mut escapes = Vec::new();
    for att in attachments {
        if bound.contains(att.point) {
            let child = a.with_unchecked(att.point, att.tile);
            let key = child.key();
            children.push((att.step(), child, key));
        } else {
            escapes.push(att);
        }
    }
    Expansion {
        children,
        escapes,
        terminal,
    }
}

struct Explorer<'a> {
    sys: &'a TileSystem,
    halt: HaltOn,
    budget: usize,
    nodes: Vec<Node>,
    seen: HashSet<CanonicalKey>,
    terminal_nodes: Vec<usize>,
    position_types: BTreeMap<Point, BTreeSet<TileIndex>>,
    first_seen: HashMap<(Point, TileIndex), usize>,
    escape: Option<(Step, CanonicalKey, usize)>,
    conflict: Option<(Point, [TileIndex; 2])>,
    budget_hit: bool,
    halted: bool,
}

impl<'a> Explorer<'a> {
    fn new(sys: &'a TileSystem, opts: &ExploreOptions) -> Self {
        let seed = Assembly::seed(sys);
        let mut ex = Explorer {
            sys,
            halt: opts.halt,
            budget: opts.budget,
            nodes: Vec::new(),
            seen: HashSet::new(),
            terminal_nodes: Vec::new(),
            position_types: BTreeMap::new(),
            first_seen: HashMap::new(),
            escape: None,
            conflict: None,
            budget_hit: false,
            halted: false,
        };
        let key = seed.key();
        ex.seen.insert(key);
        ex.nodes.push(Node {
            assembly: seed,
            parent: None,
            step: None,
        });
        ex.record_placement(Step::new(sys.seed_position(), sys.seed_tile()), 0);
        ex
    }

    fn stopped(&self) -> bool {
        self.budget_hit || self.halted
    }

    fn record_placement(&mut self, step: Step, node: usize) {
        let types = self.position_types.entry(step.point).or_default();
        if types.insert(step.tile) {
            self.first_seen.insert((step.point, step.tile), node);
            if types.len() >= 2 {
                let lo = *types.iter().next().unwrap();
                let hi = *types.iter().nth(1).unwrap();
                let candidate = (step.point, [lo, hi]);
                if self.conflict.is_none_or(|c| candidate < c) {
                    self.conflict = Some(candidate);
                }
                if self.halt.conflict {
                    self.halted = true;
                }
            }
        }
    }

    /// Merges the expansion of `node`, returning indices of new assemblies.
    fn merge(&mut self, node: usize, exp: Expansion) -> Vec<usize> {
        if exp.terminal {
            self.terminal_nodes.push(node);
        }
        for att in exp.escapes {
            let step = att.step();
            let replace = match &self.escape {
                None => true,
                Some((s, k, _)) => {
                    step < *s || (step == *s && self.nodes[node].assembly.key() < *k)
                }
            };
            if replace {
                self.escape = Some((step, self.nodes[node].assembly.key(), node));
            }
            if self.halt.escape {
                self.halted = true;
                return Vec::new();
            }
        }
        let mut fresh = Vec::new();
        for (step, child, key) in exp.children {
            if self.seen.contains(&key) {
                continue;
            }
            if self.nodes.len() >= self.budget {
                self.budget_hit = true;
                return fresh;
            }
            self.seen.insert(key);
            let idx = self.nodes.len();
            self.nodes.push(Node {
                assembly: child,
                parent: Some(node),
                step: Some(step),
            });
            fresh.push(idx);
            self.record_placement(step, idx);
            if self.halted {
                return fresh;
            }
        }
        fresh
    }

    fn sequence_to(&self, mut node: usize) -> Vec<Step> {
        let mut steps = Vec::new();
        while let Some(parent) = self.nodes[node].parent {
            steps.push(self.nodes[node].step.expect("non-root nodes carry a step"));
            node = parent;
        }
        steps.reverse();
        steps
    }

    fn run(&mut self, bound: &Bound, order: SearchOrder) {
        match order {
            SearchOrder::BreadthFirst => {
                let mut queue = VecDeque::from([0usize]);
                while let Some(i) = queue.pop_front() {
                    let exp = expand(self.sys, bound, &self.nodes[i].assembly);
                    queue.extend(self.merge(i, exp));
                    if self.stopped() {
                        break;
                    }
                }
            }
            SearchOrder::DepthFirst => {
                let mut stack = vec![0usize];
                while let Some(i) = stack.pop() {
                    let exp = expand(self.sys, bound, &self.nodes[i].assembly);
                    let fresh = self.merge(i, exp);
                    stack.extend(fresh.into_iter().rev());
                    if self.stopped() {
                        break;
                    }
                }
            }
            SearchOrder::Random(seed) => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let mut open = vec![0usize];
                while !open.is_empty() {
                    let j = rng.random_range(0..open.len());
                    let i = open.swap_remove(j);
                    let exp = expand(self.sys, bound, &self.nodes[i].assembly);
                    open.extend(self.merge(i, exp));
                    if self.stopped() {
                        break;
                    }
                }
            }
            SearchOrder::ParallelBreadthFirst => {
                let mut level = vec![0usize];
                'levels: while !level.is_empty() {
                    let sys = self.sys;
                    let nodes = &self.nodes;
                    let expansions: Vec<Expansion> = level
                        .par_iter()
                        .map(|&i| expand(sys, bound, &nodes[i].assembly))
                        .collect();
                    let mut next = Vec::new();
                    for (&i, exp) in level.iter().zip(expansions) {
                        next.extend(self.merge(i, exp));
                        if self.stopped() {
                            break 'levels;
                        }
                    }
                    level = next;
                }
            }
        }
    }

    fn finish(self) -> Exploration {
        let status = if self.budget_hit {
            ExploreStatus::BudgetExceeded
        } else if self.halted {
            ExploreStatus::Halted
        } else if self.escape.is_some() {
            ExploreStatus::BoundExceeded
        } else {
            ExploreStatus::Complete
        };
        let escape_witness = self.escape.as_ref().map(|&(step, _, node)| Escape {
            sequence: self.sequence_to(node),
            assembly: self.nodes[node].assembly.clone(),
            attachment: step,
        });
        let conflict = self.conflict.map(|(point, tiles)| Conflict {
            point,
            tiles,
            sequences: tiles.map(|t| self.sequence_to(self.first_seen[&(point, t)])),
        });
        let mut terminals: Vec<(CanonicalKey, Assembly)> = self
            .terminal_nodes
            .iter()
            .map(|&i| (self.nodes[i].assembly.key(), self.nodes[i].assembly.clone()))
            .collect();
        terminals.sort_by(|a, b| a.0.cmp(&b.0));
        let report = ExplorationReport {
            status,
            producible_count: self.nodes.len(),
            terminal_keys: terminals.iter().map(|(k, _)| k.clone()).collect(),
            terminals: terminals.into_iter().map(|(_, a)| a).collect(),
            position_types: self.position_types,
            escape_witness,
            conflict,
        };
        Exploration {
            report,
            assemblies: self.nodes.into_iter().map(|n| n.assembly).collect(),
        }
    }
}

/// Enumerates producible assemblies of `sys` inside `bound`.
pub fn explore_with(
    sys: &TileSystem,
    bound: &Bound,
    opts: &ExploreOptions,
) -> Result<Exploration, ExploreError> {
    if !bound.contains(sys.seed_position()) {
        return Err(ExploreError::SeedOutsideBound(sys.seed_position()));
    }
    if opts.budget == 0 {
        return Err(ExploreError::ZeroBudget);
    }
    let mut ex = Explorer::new(sys, opts);
    ex.run(bound, opts.order);
    Ok(ex.finish())
}

/// Breadth-first exploration of `sys` inside `bound`, enumerating at most
/// `budget` distinct assemblies.
pub fn explore(sys: &TileSystem, bound: &Bound, budget: usize) -> Result<ExplorationReport, ExploreError> {
    explore_with(sys, bound, &ExploreOptions::new(budget)).map(|e| e.report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Answer {
    Yes,
    No,
    Inconclusive,
}

/// Evidence backing a `No` answer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// Two producible assemblies disagree at a point.
    Conflict(Conflict),
    /// A producible assembly can grow at a point outside the target shape.
    ///
    /// Growing on from that assembly along any fair sequence reaches a
    /// terminal assembly (possibly an infinite limit) whose shape contains
    /// the point, so the system cannot strictly self-assemble the shape.
    OutOfShape(Escape),
    /// A terminal assembly whose shape is not the target shape.
    WrongShape {
        sequence: Vec<Step>,
        assembly: Assembly,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub answer: Answer,
    pub witness: Option<Witness>,
    /// Status of the exploration the verdict was read from.
    pub status: ExploreStatus,
}

impl Verdict {
    pub fn is_yes(&self) -> bool {
        self.answer == Answer::Yes
    }

    pub fn is_no(&self) -> bool {
        self.answer == Answer::No
    }

    fn no(witness: Witness, status: ExploreStatus) -> Self {
        Verdict {
            answer: Answer::No,
            witness: Some(witness),
            status,
        }
    }

    fn plain(answer: Answer, status: ExploreStatus) -> Self {
        Verdict {
            answer,
            witness: None,
            status,
        }
    }
}

impl Witness {
    /// Re-checks the witness from scratch by replaying its sequences with
    /// checked attachments. `shape` is the target shape for strictness
    /// witnesses.
    pub fn check(&self, sys: &TileSystem, shape: Option<&Shape>) -> bool {
        match self {
            Witness::Conflict(c) => {
                if c.tiles[0] == c.tiles[1] {
                    return false;
                }
                c.sequences.iter().zip(c.tiles).all(|(seq, t)| {
                    Assembly::from_steps(sys, seq).is_ok_and(|a| a.get(c.point) == Some(t))
                })
            }
            Witness::OutOfShape(e) => {
                let Some(shape) = shape else { return false };
                let Ok(a) = Assembly::from_steps(sys, &e.sequence) else {
                    return false;
                };
                a == e.assembly
                    && !shape.contains(e.attachment.point)
                    && a.attach(sys, e.attachment.point, e.attachment.tile).is_ok()
            }
            Witness::WrongShape { sequence, assembly } => {
                let Some(shape) = shape else { return false };
                let Ok(a) = Assembly::from_steps(sys, sequence) else {
                    return false;
                };
                a == *assembly && a.is_terminal(sys) && a.shape() != *shape
            }
        }
    }
}

/// Bounded directedness check.
///
/// `No` as soon as two producible assemblies disagree at a point; `Yes` when
/// exploration completes inside `bound` with one tile type per point;
/// `Inconclusive` when growth leaves the bound or the budget runs out.
pub fn is_directed(sys: &TileSystem, bound: &Bound, budget: usize) -> Result<Verdict, ExploreError> {
    let opts = ExploreOptions::new(budget).halt(HaltOn {
        conflict: true,
        escape: false,
    });
    let report = explore_with(sys, bound, &opts)?.report;
    Ok(directed_verdict(&report))
}

fn directed_verdict(report: &ExplorationReport) -> Verdict {
    if let Some(c) = &report.conflict {
        return Verdict::no(Witness::Conflict(c.clone()), report.status);
    }
    match report.status {
        ExploreStatus::Complete => Verdict::plain(Answer::Yes, report.status),
        _ => Verdict::plain(Answer::Inconclusive, report.status),
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StrictError {
    #[error("seed position {0} is not in the target shape")]
    SeedOutsideShape(Point),
    #[error(transparent)]
    Explore(#[from] ExploreError),
}

/// Decides whether every terminal assembly of `sys` has shape `shape`,
/// exploring with the shape itself as the bound.
pub fn strictly_self_assembles(
    sys: &TileSystem,
    shape: &Shape,
    budget: usize,
) -> Result<Verdict, StrictError> {
    Ok(judge(sys, shape, budget)?.strict)
}

/// Strictness and directedness verdicts read off a single exploration of
/// `shape`.
#[derive(Clone, Debug)]
pub struct Judgement {
    pub strict: Verdict,
    /// Directedness inside the shape. Only meaningful when `strict` is
    /// `Yes`, since otherwise growth leaves the explored region.
    pub directed: Verdict,
    pub report: ExplorationReport,
}

pub fn judge(sys: &TileSystem, shape: &Shape, budget: usize) -> Result<Judgement, StrictError> {
    if !shape.contains(sys.seed_position()) {
        return Err(StrictError::SeedOutsideShape(sys.seed_position()));
    }
    let opts = ExploreOptions::new(budget).halt(HaltOn {
        conflict: false,
        escape: true,
    });
    let report = explore_with(sys, &Bound::from(shape), &opts)?.report;
    Ok(judge_report(sys, shape, report))
}

pub(crate) fn judge_report(sys: &TileSystem, shape: &Shape, report: ExplorationReport) -> Judgement {
    let status = report.status;
    let strict = if let Some(e) = &report.escape_witness {
        Verdict::no(Witness::OutOfShape(e.clone()), status)
    } else if status == ExploreStatus::BudgetExceeded {
        Verdict::plain(Answer::Inconclusive, status)
    } else {
        match report.terminals.iter().find(|a| a.len() != shape.len()) {
            // Terminals lie inside the shape, so a wrong shape is a smaller one.
            Some(a) => Verdict::no(
                Witness::WrongShape {
                    sequence: a
                        .producing_sequence(sys)
                        .expect("enumerated assemblies are producible"),
                    assembly: a.clone(),
                },
                status,
            ),
            None => Verdict::plain(Answer::Yes, status),
        }
    };
    let directed = directed_verdict(&report);
    Judgement {
        strict,
        directed,
        report,
    }
}

/// A double glue facing a point outside the target shape.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LintViolation {
    pub point: Point,
    pub direction: Direction,
    pub tile: TileIndex,
}

/// Every placement seen during exploration of `shape` whose tile carries a
/// double glue on a side facing outside `shape`.
///
/// In a normalized system some tile carries the partner glue, so it could
/// attach across that side: a non-empty result refutes strictness.
pub fn double_glue_lint(sys: &TileSystem, shape: &Shape, report: &ExplorationReport) -> Vec<LintViolation> {
    let mut out = Vec::new();
    for (&point, tiles) in &report.position_types {
        for &tile in tiles {
            for d in Direction::ALL {
                if sys.tile(tile).glue(d).is_double() && !shape.contains(point.step(d)) {
                    out.push(LintViolation {
                        point,
                        direction: d,
                        tile,
                    });
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::TileType;
    use crate::systems::{coop, nds, ray};

    type Placements = Vec<(Point, TileIndex)>;

    /// Every assembly reachable by some attachment order inside `bound`,
    /// found by trying all orders without deduplicating the search.
    fn all_orders(sys: &TileSystem, bound: &Bound) -> BTreeSet<Placements> {
        fn go(sys: &TileSystem, bound: &Bound, a: &Assembly, out: &mut BTreeSet<Placements>) {
            out.insert(a.iter().collect());
            for att in a.frontier_attachments(sys) {
                if bound.contains(att.point) {
                    go(sys, bound, &a.attach(sys, att.point, att.tile).unwrap(), out);
                }
            }
        }
        let mut out = BTreeSet::new();
        go(sys, bound, &Assembly::seed(sys), &mut out);
        out
    }

    fn p(x: i32, y: i32) -> Point {
        Point::new(x, y)
    }

    #[test]
    fn inert_seed() {
        let sys = TileSystem::new(vec![TileType::inert("S")], 0, Point::ORIGIN).unwrap();
        let r = explore(&sys, &Bound::rectangle(3, 3, p(-1, -1)), 10).unwrap();
        assert_eq!(r.status, ExploreStatus::Complete);
        assert_eq!(r.producible_count, 1);
        assert_eq!(r.terminals, vec![Assembly::seed(&sys)]);
    }

    #[test]
    fn nds_domino() {
        let sys = nds();
        let bound = Bound::rectangle(2, 1, Point::ORIGIN);
        assert_eq!(all_orders(&sys, &bound).len(), 3);
        let r = explore(&sys, &bound, 10).unwrap();
        assert_eq!(r.status, ExploreStatus::Complete);
        assert_eq!(r.producible_count, 3);
        assert_eq!(r.terminal_keys.len(), 2);
        assert_eq!(r.position_types[&p(1, 0)], BTreeSet::from([1, 2]));
    }

    #[test]
    fn coop_square() {
        let sys = coop();
        let bound = Bound::rectangle(2, 2, Point::ORIGIN);
        let oracle = all_orders(&sys, &bound);
        let ex = explore_with(&sys, &bound, &ExploreOptions::new(100)).unwrap();
        assert_eq!(ex.report.status, ExploreStatus::Complete);
        assert_eq!(ex.report.producible_count, oracle.len());
        // {S}, {S,R}, {S,U}, {S,R,U}, {S,R,U,K}
        assert_eq!(oracle.len(), 5);
        let found: BTreeSet<Placements> = ex.assemblies.iter().map(|a| a.iter().collect()).collect();
        assert_eq!(found, oracle);
        assert_eq!(ex.report.terminals.len(), 1);
        assert_eq!(ex.report.terminals[0].len(), 4);
    }

    #[test]
    fn budget_and_errors() {
        let sys = nds();
        let r = explore(&sys, &Bound::rectangle(2, 1, Point::ORIGIN), 2).unwrap();
        assert_eq!(r.status, ExploreStatus::BudgetExceeded);
        assert_eq!(r.producible_count, 2);
        assert_eq!(
            explore(&sys, &Bound::rectangle(2, 1, p(5, 5)), 2).unwrap_err(),
            ExploreError::SeedOutsideBound(Point::ORIGIN)
        );
        assert_eq!(
            explore(&sys, &Bound::rectangle(2, 1, Point::ORIGIN), 0).unwrap_err(),
            ExploreError::ZeroBudget
        );
    }

    #[test]
    fn escapes_are_recorded_not_expanded() {
        let sys = ray();
        let r = explore(&sys, &Bound::rectangle(3, 1, p(-1, 0)), 100).unwrap();
        assert_eq!(r.status, ExploreStatus::BoundExceeded);
        // {0}, {-1,0}, {0,1}, {-1,0,1}
        assert_eq!(r.producible_count, 4);
        assert!(r.terminals.is_empty());
        let e = r.escape_witness.unwrap();
        assert_eq!(e.attachment, Step::new(p(-2, 0), 0));
    }

    #[test]
    fn directed_verdicts() {
        let v = is_directed(&nds(), &Bound::rectangle(2, 1, Point::ORIGIN), 100).unwrap();
        assert!(v.is_no());
        let Some(Witness::Conflict(c)) = &v.witness else {
            panic!("expected a conflict witness")
        };
        assert_eq!(c.point, p(1, 0));
        assert_eq!(c.tiles, [1, 2]);
        assert!(v.witness.as_ref().unwrap().check(&nds(), None));

        let v = is_directed(&coop(), &Bound::rectangle(2, 2, Point::ORIGIN), 100).unwrap();
        assert!(v.is_yes());

        let v = is_directed(&ray(), &Bound::rectangle(5, 5, p(-2, -2)), 100).unwrap();
        assert_eq!(v.answer, Answer::Inconclusive);
    }

    #[test]
    fn strict_verdicts() {
        let domino = Shape::rectangle(2, 1, Point::ORIGIN).unwrap();
        assert!(strictly_self_assembles(&nds(), &domino, 100).unwrap().is_yes());
        let square = Shape::rectangle(2, 2, Point::ORIGIN).unwrap();
        assert!(strictly_self_assembles(&coop(), &square, 100).unwrap().is_yes());

        let v = strictly_self_assembles(&ray(), &domino, 100).unwrap();
        assert!(v.is_no());
        let Some(w @ Witness::OutOfShape(e)) = &v.witness else {
            panic!("expected an out-of-shape witness")
        };
        assert!([p(2, 0), p(-1, 0)].contains(&e.attachment.point));
        assert!(w.check(&ray(), Some(&domino)));

        let far = Shape::rectangle(2, 1, p(4, 4)).unwrap();
        assert_eq!(
            strictly_self_assembles(&nds(), &far, 100).unwrap_err(),
            StrictError::SeedOutsideShape(Point::ORIGIN)
        );
    }

    #[test]
    fn wrong_shape_terminal() {
        let line = Shape::rectangle(3, 1, Point::ORIGIN).unwrap();
        let v = strictly_self_assembles(&nds(), &line, 100).unwrap();
        assert!(v.is_no());
        let w = v.witness.unwrap();
        assert!(matches!(w, Witness::WrongShape { .. }));
        assert!(w.check(&nds(), Some(&line)));
    }

    #[test]
    fn lint_examples() {
        let domino = Shape::rectangle(2, 1, Point::ORIGIN).unwrap();
        let r = explore(&nds(), &Bound::from(&domino), 100).unwrap();
        assert!(double_glue_lint(&nds(), &domino, &r).is_empty());

        let sys = TileSystem::new(
            vec![
                TileType::inert("S").with(Direction::North, crate::Glue::new("h", 2)),
                TileType::inert("T").with(Direction::South, crate::Glue::new("h", 2)),
            ],
            0,
            Point::ORIGIN,
        )
        .unwrap();
        let point = Shape::single(Point::ORIGIN);
        let r = explore(&sys, &Bound::from(&point), 100).unwrap();
        assert_eq!(
            double_glue_lint(&sys, &point, &r),
            vec![LintViolation {
                point: Point::ORIGIN,
                direction: Direction::North,
                tile: 0
            }]
        );

        let square = Shape::rectangle(2, 2, Point::ORIGIN).unwrap();
        let r = explore(&coop(), &Bound::from(&square), 100).unwrap();
        assert!(double_glue_lint(&coop(), &square, &r).is_empty());
    }

    #[test]
    fn orders_agree() {
        let bound = Bound::rectangle(3, 3, p(-1, -1));
        for sys in [nds(), coop(), ray()] {
            let base = explore_with(&sys, &bound, &ExploreOptions::new(1000)).unwrap();
            for order in [
                SearchOrder::DepthFirst,
                SearchOrder::Random(3),
                SearchOrder::ParallelBreadthFirst,
            ] {
                let other = explore_with(&sys, &bound, &ExploreOptions::new(1000).order(order)).unwrap();
                assert_eq!(base.keys(), other.keys());
                assert_eq!(base.report.terminal_keys, other.report.terminal_keys);
                assert_eq!(base.report.escape_witness, other.report.escape_witness);
            }
        }
    }
}
