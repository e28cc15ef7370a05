//! Assemblies and their local growth semantics.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{is_connected, Direction, Point, Shape};
use crate::model::{TileIndex, TileSystem, TEMPERATURE};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AssemblyError {
    #[error("assembly is empty")]
    Empty,
    #[error("assembly domain is not connected")]
    Disconnected,
    #[error("tile index {tile} at {point} is not in the tile system")]
    UnknownTile { point: Point, tile: TileIndex },
    #[error("point {0} is already occupied")]
    Occupied(Point),
    #[error("tile {tile} cannot attach at {point}: total bond strength {strength} is below 2")]
    NotOnFrontier {
        point: Point,
        tile: TileIndex,
        strength: u32,
    },
}

/// A single tile placement: tile type `tile` at `point`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Step {
    pub point: Point,
    pub tile: TileIndex,
}

impl Step {
    pub fn new(point: Point, tile: TileIndex) -> Self {
        Step { point, tile }
    }
}

/// A frontier attachment together with the total strength it binds with.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Attachment {
    pub point: Point,
    pub tile: TileIndex,
    pub strength: u32,
}

impl Attachment {
    pub fn step(&self) -> Step {
        Step::new(self.point, self.tile)
    }
}

/// Deterministic byte encoding of an assembly: the placement count, then
/// every occupied point as `(y, x)` in y-major order, then the tile index of
/// each point in the same order; all integers 4-byte little-endian.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey(Vec<u8>);

impl CanonicalKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }
}

/// A finite, connected, non-empty partial map from points to tile types.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Assembly {
    tiles: BTreeMap<Point, TileIndex>,
}

impl Assembly {
    pub fn new<I: IntoIterator<Item = (Point, TileIndex)>>(placements: I) -> Result<Self, AssemblyError> {
        let tiles: BTreeMap<Point, TileIndex> = placements.into_iter().collect();
        if tiles.is_empty() {
            return Err(AssemblyError::Empty);
        }
        let domain: BTreeSet<Point> = tiles.keys().copied().collect();
        if !is_connected(&domain) {
            return Err(AssemblyError::Disconnected);
        }
        Ok(Assembly { tiles })
    }

    pub fn single(point: Point, tile: TileIndex) -> Self {
        Assembly {
            tiles: BTreeMap::from([(point, tile)]),
        }
    }

    /// The seed assembly of `sys`.
    pub fn seed(sys: &TileSystem) -> Self {
        Assembly::single(sys.seed_position(), sys.seed_tile())
    }

    /// Checks that every tile index exists in `sys`.
    pub fn validate(&self, sys: &TileSystem) -> Result<(), AssemblyError> {
        match self.tiles.iter().find(|(_, &t)| t >= sys.len()) {
            Some((&point, &tile)) => Err(AssemblyError::UnknownTile { point, tile }),
            None => Ok(()),
        }
    }

    pub fn get(&self, p: Point) -> Option<TileIndex> {
        self.tiles.get(&p).copied()
    }

    pub fn contains(&self, p: Point) -> bool {
        self.tiles.contains_key(&p)
    }

    pub fn len(&self) -> usize {
        self.tiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tiles.is_empty()
    }

    /// Placements in y-major point order.
    pub fn iter(&self) -> impl Iterator<Item = (Point, TileIndex)> + '_ {
        self.tiles.iter().map(|(&p, &t)| (p, t))
    }

    pub fn domain(&self) -> impl Iterator<Item = Point> + '_ {
        self.tiles.keys().copied()
    }

    pub fn shape(&self) -> Shape {
        Shape::new(self.domain()).expect("assembly domains are connected and non-empty")
    }

    pub fn key(&self) -> CanonicalKey {
        let mut bytes = Vec::with_capacity(4 + self.tiles.len() * 12);
        bytes.extend_from_slice(&(self.tiles.len() as u32).to_le_bytes());
        for p in self.tiles.keys() {
            bytes.extend_from_slice(&p.y.to_le_bytes());
            bytes.extend_from_slice(&p.x.to_le_bytes());
        }
        for &t in self.tiles.values() {
            bytes.extend_from_slice(&(t as u32).to_le_bytes());
        }
        CanonicalKey(bytes)
    }

    /// `self ⊑ other`: every placement of `self` appears in `other`.
    pub fn is_subassembly_of(&self, other: &Assembly) -> bool {
        self.tiles.len() <= other.tiles.len()
            && self.tiles.iter().all(|(p, t)| other.tiles.get(p) == Some(t))
    }

    /// Total strength with which `tile` would bind at the empty point `p`.
    pub fn attachment_strength(&self, sys: &TileSystem, p: Point, tile: TileIndex) -> u32 {
        p.neighbors()
            .filter_map(|(d, q)| self.tiles.get(&q).map(|&nb| sys.bond(tile, d, nb) as u32))
            .sum()
    }

    /// Empty points adjacent to the assembly, in y-major order.
    pub fn perimeter(&self) -> BTreeSet<Point> {
        self.tiles
            .keys()
            .flat_map(|p| p.neighbors().map(|(_, q)| q))
            .filter(|q| !self.tiles.contains_key(q))
            .collect()
    }

    /// Every `(point, tile)` that can attach with total strength at least 2,
    /// sorted by point then tile.
    ///
    /// An attachment that binds with strength ≥ 2 to a 2-stable assembly
    /// leaves it 2-stable: any cut of the grown binding graph either isolates
    /// the new tile (weight ≥ 2) or restricts to a cut of the old one
    /// (weight ≥ 2). So no global stability check is needed here.
    pub fn frontier_attachments(&self, sys: &TileSystem) -> Vec<Attachment> {
        let mut out = Vec::new();
        for p in self.perimeter() {
            self.attachments_at(sys, p, &mut out);
        }
        out
    }

    pub(crate) fn attachments_at(&self, sys: &TileSystem, p: Point, out: &mut Vec<Attachment>) {
        let neighbors: Vec<(Direction, TileIndex)> = p
            .neighbors()
            .filter_map(|(d, q)| self.tiles.get(&q).map(|&t| (d, t)))
            .collect();
        for tile in 0..sys.len() {
            let strength: u32 = neighbors
                .iter()
                .map(|&(d, nb)| sys.bond(tile, d, nb) as u32)
                .sum();
            if strength >= TEMPERATURE {
                out.push(Attachment {
                    point: p,
                    tile,
                    strength,
                });
            }
        }
    }

    /// The frontier point set: projection of [`Self::frontier_attachments`].
    pub fn frontier(&self, sys: &TileSystem) -> BTreeSet<Point> {
        self.frontier_attachments(sys)
            .into_iter()
            .map(|a| a.point)
            .collect()
    }

    pub fn is_terminal(&self, sys: &TileSystem) -> bool {
        self.perimeter().into_iter().all(|p| {
            let mut v = Vec::new();
            self.attachments_at(sys, p, &mut v);
            v.is_empty()
        })
    }

    /// `self + (p ↦ tile)`, checking that the attachment is on the frontier.
    /// The input is left untouched.
    pub fn attach(&self, sys: &TileSystem, p: Point, tile: TileIndex) -> Result<Assembly, AssemblyError> {
        if tile >= sys.len() {
            return Err(AssemblyError::UnknownTile { point: p, tile });
        }
        if self.tiles.contains_key(&p) {
            return Err(AssemblyError::Occupied(p));
        }
        let strength = self.attachment_strength(sys, p, tile);
        if strength < TEMPERATURE {
            return Err(AssemblyError::NotOnFrontier { point: p, tile, strength });
        }
        Ok(self.with_unchecked(p, tile))
    }

    /// Adds a placement without any checks. Callers guarantee `(p, tile)` is
    /// a frontier attachment.
    pub(crate) fn with_unchecked(&self, p: Point, tile: TileIndex) -> Assembly {
        let mut tiles = self.tiles.clone();
        tiles.insert(p, tile);
        Assembly { tiles }
    }

    /// Some attachment order producing `self` from the seed of `sys`, or
    /// `None` if `self` is not producible.
    ///
    /// Greedy order is complete: if `self` is producible, the first tile of a
    /// valid order that is not yet placed always binds with strength ≥ 2 to
    /// the tiles already placed.
    pub fn producing_sequence(&self, sys: &TileSystem) -> Option<Vec<Step>> {
        if self.get(sys.seed_position()) != Some(sys.seed_tile()) {
            return None;
        }
        let mut current = Assembly::seed(sys);
        let mut steps = Vec::with_capacity(self.len() - 1);
        while current.len() < self.len() {
            let next = current
                .perimeter()
                .into_iter()
                .filter_map(|p| self.get(p).map(|t| (p, t)))
                .find(|&(p, t)| current.attachment_strength(sys, p, t) >= TEMPERATURE)?;
            current = current.with_unchecked(next.0, next.1);
            steps.push(Step::new(next.0, next.1));
        }
        Some(steps)
    }

    /// Replays `steps` from the seed of `sys`, checking every attachment.
    pub fn from_steps(sys: &TileSystem, steps: &[Step]) -> Result<Assembly, AssemblyError> {
        steps
            .iter()
            .try_fold(Assembly::seed(sys), |a, s| a.attach(sys, s.point, s.tile))
    }
}

/// Weighted edge of a [`BindingGraph`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct BindingEdge {
    pub a: Point,
    pub b: Point,
    pub weight: u32,
}

/// Occupied points with an edge between adjacent tiles that interact,
/// weighted by the shared glue strength.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BindingGraph {
    pub vertices: Vec<Point>,
    pub edges: Vec<BindingEdge>,
}

impl BindingGraph {
    pub fn of(assembly: &Assembly, sys: &TileSystem) -> Result<Self, AssemblyError> {
        assembly.validate(sys)?;
        let vertices: Vec<Point> = assembly.domain().collect();
        let mut edges = Vec::new();
        for (p, t) in assembly.iter() {
            for d in [Direction::East, Direction::North] {
                let q = p.step(d);
                if let Some(u) = assembly.get(q) {
                    let w = sys.bond(t, d, u);
                    if w > 0 {
                        edges.push(BindingEdge {
                            a: p,
                            b: q,
                            weight: w as u32,
                        });
                    }
                }
            }
        }
        Ok(BindingGraph { vertices, edges })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Glue, TileType};
    use Direction::*;

    fn p(x: i32, y: i32) -> Point {
        Point::new(x, y)
    }

    /// Seed with east (g,2); B carries west (g,2).
    fn domino() -> TileSystem {
        TileSystem::new(
            vec![
                TileType::inert("S").with(East, Glue::new("g", 2)),
                TileType::inert("B").with(West, Glue::new("g", 2)),
            ],
            0,
            Point::ORIGIN,
        )
        .unwrap()
    }

    fn coop() -> TileSystem {
        TileSystem::new(
            vec![
                TileType::inert("S")
                    .with(East, Glue::new("e", 2))
                    .with(North, Glue::new("n", 2)),
                TileType::inert("R")
                    .with(West, Glue::new("e", 2))
                    .with(North, Glue::new("c", 1)),
                TileType::inert("U")
                    .with(South, Glue::new("n", 2))
                    .with(East, Glue::new("c", 1)),
                TileType::inert("K")
                    .with(West, Glue::new("c", 1))
                    .with(South, Glue::new("c", 1)),
            ],
            0,
            Point::ORIGIN,
        )
        .unwrap()
    }

    #[test]
    fn inert_seed_has_empty_frontier() {
        let sys = TileSystem::new(vec![TileType::inert("S")], 0, Point::ORIGIN).unwrap();
        let seed = Assembly::seed(&sys);
        assert!(seed.frontier_attachments(&sys).is_empty());
        assert!(seed.is_terminal(&sys));
    }

    #[test]
    fn double_glue_frontier() {
        let sys = domino().with_seed(0, p(3, -2)).unwrap();
        let seed = Assembly::seed(&sys);
        let f = seed.frontier_attachments(&sys);
        assert_eq!(
            f,
            vec![Attachment {
                point: p(4, -2),
                tile: 1,
                strength: 2
            }]
        );
        let grown = seed.attach(&sys, p(4, -2), 1).unwrap();
        assert_eq!(grown.len(), 2);
        assert_eq!(seed.len(), 1);
    }

    #[test]
    fn cooperative_attachment_needs_both_neighbors() {
        let sys = coop();
        let seed = Assembly::seed(&sys);
        let tiles_at = |a: &Assembly, q: Point| -> Vec<TileIndex> {
            a.frontier_attachments(&sys)
                .into_iter()
                .filter(|x| x.point == q)
                .map(|x| x.tile)
                .collect()
        };
        let r = seed.attach(&sys, p(1, 0), 1).unwrap();
        assert!(tiles_at(&r, p(1, 1)).is_empty());
        let ru = r.attach(&sys, p(0, 1), 2).unwrap();
        let corner: Vec<Attachment> = ru
            .frontier_attachments(&sys)
            .into_iter()
            .filter(|x| x.point == p(1, 1))
            .collect();
        assert_eq!(
            corner,
            vec![Attachment {
                point: p(1, 1),
                tile: 3,
                strength: 2
            }]
        );
    }

    #[test]
    fn attach_errors() {
        let sys = coop();
        let seed = Assembly::seed(&sys);
        assert_eq!(
            seed.attach(&sys, Point::ORIGIN, 1).unwrap_err(),
            AssemblyError::Occupied(Point::ORIGIN)
        );
        let r = seed.attach(&sys, p(1, 0), 1).unwrap();
        assert!(matches!(
            r.attach(&sys, p(1, 1), 3),
            Err(AssemblyError::NotOnFrontier { strength: 1, .. })
        ));
    }

    #[test]
    fn subassembly_examples() {
        let sys = coop();
        let seed = Assembly::seed(&sys);
        let full = Assembly::from_steps(
            &sys,
            &[Step::new(p(1, 0), 1), Step::new(p(0, 1), 2), Step::new(p(1, 1), 3)],
        )
        .unwrap();
        assert!(seed.is_subassembly_of(&full));
        assert!(full.is_subassembly_of(&full));
        assert!(!full.is_subassembly_of(&seed));
        let other = Assembly::new([(p(0, 0), 0), (p(1, 0), 2)]).unwrap();
        let mine = Assembly::new([(p(0, 0), 0), (p(1, 0), 1)]).unwrap();
        assert!(!other.is_subassembly_of(&mine));
    }

    #[test]
    fn binding_graph_examples() {
        let sys = domino();
        let g = BindingGraph::of(&Assembly::seed(&sys), &sys).unwrap();
        assert_eq!((g.vertices.len(), g.edges.len()), (1, 0));
        let two = Assembly::new([(p(0, 0), 0), (p(1, 0), 1)]).unwrap();
        let g = BindingGraph::of(&two, &sys).unwrap();
        assert_eq!(g.edges, vec![BindingEdge { a: p(0, 0), b: p(1, 0), weight: 2 }]);

        let s = Glue::new("s", 1);
        let all = TileType::new("A", [s.clone(), s.clone(), s.clone(), s]);
        let sys = TileSystem::new(vec![all], 0, Point::ORIGIN).unwrap();
        let block = Assembly::new([(p(0, 0), 0), (p(1, 0), 0), (p(0, 1), 0), (p(1, 1), 0)]).unwrap();
        let g = BindingGraph::of(&block, &sys).unwrap();
        assert_eq!(g.vertices.len(), 4);
        assert_eq!(g.edges.len(), 4);
        assert!(g.edges.iter().all(|e| e.weight == 1));

        let bogus = Assembly::single(Point::ORIGIN, 7);
        assert!(matches!(
            BindingGraph::of(&bogus, &sys),
            Err(AssemblyError::UnknownTile { tile: 7, .. })
        ));
    }

    #[test]
    fn assemblies_must_be_connected() {
        assert_eq!(
            Assembly::new([(p(0, 0), 0), (p(0, 2), 0)]).unwrap_err(),
            AssemblyError::Disconnected
        );
        assert_eq!(Assembly::new([]).unwrap_err(), AssemblyError::Empty);
    }

    #[test]
    fn canonical_key_layout() {
        let a = Assembly::new([(p(1, 0), 2), (p(0, 0), 0)]).unwrap();
        let k = a.key();
        let mut expect = vec![];
        expect.extend_from_slice(&2u32.to_le_bytes());
        for (y, x) in [(0i32, 0i32), (0, 1)] {
            expect.extend_from_slice(&y.to_le_bytes());
            expect.extend_from_slice(&x.to_le_bytes());
        }
        expect.extend_from_slice(&0u32.to_le_bytes());
        expect.extend_from_slice(&2u32.to_le_bytes());
        assert_eq!(k.as_bytes(), &expect[..]);
        let b = Assembly::new([(p(1, 0), 1), (p(0, 0), 0)]).unwrap();
        assert_ne!(k, b.key());
    }
}
