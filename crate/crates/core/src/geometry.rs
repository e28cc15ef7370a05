//! Lattice points, directions, shapes and exploration bounds on the square grid.

use std::cmp::Ordering;
use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A point of the integer lattice. Serialized as `[x, y]`.
///
/// Points order y-major, x-minor; this is the order used by canonical keys
/// and every sorted listing produced by the crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "[i32; 2]", into = "[i32; 2]")]
pub struct Point {
    pub x: i32,
    pub y: i32,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0, y: 0 };

    pub const fn new(x: i32, y: i32) -> Self {
        Point { x, y }
    }

    pub fn step(self, dir: Direction) -> Point {
        let (dx, dy) = dir.offset();
        Point::new(self.x + dx, self.y + dy)
    }

    pub fn neighbors(self) -> impl Iterator<Item = (Direction, Point)> {
        Direction::ALL.into_iter().map(move |d| (d, self.step(d)))
    }

    pub fn is_adjacent(self, other: Point) -> bool {
        (self.x - other.x).abs() + (self.y - other.y).abs() == 1
    }
}

impl Ord for Point {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.y, self.x).cmp(&(other.y, other.x))
    }
}

impl PartialOrd for Point {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<[i32; 2]> for Point {
    fn from([x, y]: [i32; 2]) -> Self {
        Point::new(x, y)
    }
}

impl From<Point> for [i32; 2] {
    fn from(p: Point) -> Self {
        [p.x, p.y]
    }
}

impl From<(i32, i32)> for Point {
    fn from((x, y): (i32, i32)) -> Self {
        Point::new(x, y)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// A side of a tile. The standardized side order is N, E, S, W.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    North,
    East,
    South,
    West,
}

impl Direction {
    pub const ALL: [Direction; 4] = [
        Direction::North,
        Direction::East,
        Direction::South,
        Direction::West,
    ];

    pub fn opposite(self) -> Direction {
        match self {
            Direction::North => Direction::South,
            Direction::East => Direction::West,
            Direction::South => Direction::North,
            Direction::West => Direction::East,
        }
    }

    /// Unit vector of this side: N=(0,1), E=(1,0), S=(0,-1), W=(-1,0).
    pub fn offset(self) -> (i32, i32) {
        match self {
            Direction::North => (0, 1),
            Direction::East => (1, 0),
            Direction::South => (0, -1),
            Direction::West => (-1, 0),
        }
    }

    /// Position in the standardized N, E, S, W order.
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Direction::North => "north",
            Direction::East => "east",
            Direction::South => "south",
            Direction::West => "west",
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ShapeError {
    #[error("shape is empty")]
    Empty,
    #[error("shape not connected")]
    Disconnected,
}

/// A finite, non-empty set of points whose full grid graph is connected.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Shape {
    points: BTreeSet<Point>,
}

impl Shape {
    pub fn new<I: IntoIterator<Item = Point>>(points: I) -> Result<Self, ShapeError> {
        let points: BTreeSet<Point> = points.into_iter().collect();
        if points.is_empty() {
            return Err(ShapeError::Empty);
        }
        if !is_connected(&points) {
            return Err(ShapeError::Disconnected);
        }
        Ok(Shape { points })
    }

    pub fn single(p: Point) -> Self {
        Shape {
            points: BTreeSet::from([p]),
        }
    }

    /// `width` x `height` rectangle with lower-left corner `origin`.
    pub fn rectangle(width: u32, height: u32, origin: Point) -> Result<Self, ShapeError> {
        let pts = (0..height as i32)
            .flat_map(|dy| (0..width as i32).map(move |dx| Point::new(origin.x + dx, origin.y + dy)));
        Shape::new(pts)
    }

    pub fn points(&self) -> &BTreeSet<Point> {
        &self.points
    }

    pub fn contains(&self, p: Point) -> bool {
        self.points.contains(&p)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = Point> + '_ {
        self.points.iter().copied()
    }

    /// Number of 4-adjacent pairs inside the shape.
    pub fn adjacency_count(&self) -> usize {
        self.points
            .iter()
            .map(|p| {
                [Direction::East, Direction::North]
                    .into_iter()
                    .filter(|&d| self.points.contains(&p.step(d)))
                    .count()
            })
            .sum()
    }

    /// True iff the full grid graph of the shape is acyclic.
    pub fn is_tree(&self) -> bool {
        self.adjacency_count() + 1 == self.points.len()
    }

    /// Symmetries of the square that carry the shape onto itself (up to
    /// translation), returned as point maps.
    pub fn symmetries(&self) -> Vec<Symmetry> {
        let (min_x, min_y) = self.min_corner();
        SquareTransform::ALL
            .into_iter()
            .filter_map(|t| {
                let moved: Vec<Point> = self.points.iter().map(|&p| t.apply(p)).collect();
                let mx = moved.iter().map(|p| p.x).min().unwrap();
                let my = moved.iter().map(|p| p.y).min().unwrap();
                let shift = (min_x - mx, min_y - my);
                let image: BTreeSet<Point> = moved
                    .into_iter()
                    .map(|p| Point::new(p.x + shift.0, p.y + shift.1))
                    .collect();
                (image == self.points).then_some(Symmetry { transform: t, shift })
            })
            .collect()
    }

    /// One representative (the least point) of every orbit of the shape's
    /// points under its symmetry group.
    pub fn orbit_representatives(&self) -> Vec<Point> {
        let syms = self.symmetries();
        self.points
            .iter()
            .copied()
            .filter(|&p| syms.iter().all(|s| s.apply(p) >= p))
            .collect()
    }

    fn min_corner(&self) -> (i32, i32) {
        let min_x = self.points.iter().map(|p| p.x).min().unwrap();
        let min_y = self.points.iter().map(|p| p.y).min().unwrap();
        (min_x, min_y)
    }

    /// Inclusive bounding box as `(min, max)`.
    pub fn bounding_box(&self) -> (Point, Point) {
        let (min_x, min_y) = self.min_corner();
        let max_x = self.points.iter().map(|p| p.x).max().unwrap();
        let max_y = self.points.iter().map(|p| p.y).max().unwrap();
        (Point::new(min_x, min_y), Point::new(max_x, max_y))
    }
}

pub(crate) fn is_connected(points: &BTreeSet<Point>) -> bool {
    let Some(&start) = points.iter().next() else {
        return true;
    };
    let mut seen = BTreeSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(p) = queue.pop_front() {
        for (_, q) in p.neighbors() {
            if points.contains(&q) && seen.insert(q) {
                queue.push_back(q);
            }
        }
    }
    seen.len() == points.len()
}

/// The eight symmetries of the square, as linear maps on the lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SquareTransform {
    Identity,
    Rotate90,
    Rotate180,
    Rotate270,
    FlipX,
    FlipY,
    Transpose,
    AntiTranspose,
}

impl SquareTransform {
    pub const ALL: [SquareTransform; 8] = [
        SquareTransform::Identity,
        SquareTransform::Rotate90,
        SquareTransform::Rotate180,
        SquareTransform::Rotate270,
        SquareTransform::FlipX,
        SquareTransform::FlipY,
        SquareTransform::Transpose,
        SquareTransform::AntiTranspose,
    ];

    pub fn apply(self, p: Point) -> Point {
        let Point { x, y } = p;
        match self {
            SquareTransform::Identity => Point::new(x, y),
            SquareTransform::Rotate90 => Point::new(-y, x),
            SquareTransform::Rotate180 => Point::new(-x, -y),
            SquareTransform::Rotate270 => Point::new(y, -x),
            SquareTransform::FlipX => Point::new(-x, y),
            SquareTransform::FlipY => Point::new(x, -y),
            SquareTransform::Transpose => Point::new(y, x),
            SquareTransform::AntiTranspose => Point::new(-y, -x),
        }
    }

    /// Image of a tile side under the transform.
    pub fn apply_direction(self, d: Direction) -> Direction {
        let (dx, dy) = d.offset();
        let q = self.apply(Point::new(dx, dy));
        Direction::ALL
            .into_iter()
            .find(|e| e.offset() == (q.x, q.y))
            .expect("square symmetries permute unit vectors")
    }
}

/// A square symmetry followed by a translation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Symmetry {
    pub transform: SquareTransform,
    pub shift: (i32, i32),
}

impl Symmetry {
    pub fn apply(&self, p: Point) -> Point {
        let q = self.transform.apply(p);
        Point::new(q.x + self.shift.0, q.y + self.shift.1)
    }
}

/// Finite region that exploration may grow into. Unlike [`Shape`] it need
/// not be connected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bound {
    points: BTreeSet<Point>,
}

impl Bound {
    pub fn new<I: IntoIterator<Item = Point>>(points: I) -> Self {
        Bound {
            points: points.into_iter().collect(),
        }
    }

    /// `width` x `height` rectangle with lower-left corner `origin`.
    pub fn rectangle(width: u32, height: u32, origin: Point) -> Self {
        Bound::new(
            (0..height as i32).flat_map(|dy| {
                (0..width as i32).map(move |dx| Point::new(origin.x + dx, origin.y + dy))
            }),
        )
    }

    pub fn contains(&self, p: Point) -> bool {
        self.points.contains(&p)
    }

    pub fn points(&self) -> &BTreeSet<Point> {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

impl From<&Shape> for Bound {
    fn from(shape: &Shape) -> Self {
        Bound {
            points: shape.points.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[(i32, i32)]) -> Vec<Point> {
        v.iter().map(|&p| p.into()).collect()
    }

    #[test]
    fn opposite_is_an_involution() {
        for d in Direction::ALL {
            assert_eq!(d.opposite().opposite(), d);
            let (dx, dy) = d.offset();
            let (ox, oy) = d.opposite().offset();
            assert_eq!((dx + ox, dy + oy), (0, 0));
        }
    }

    #[test]
    fn points_order_y_major() {
        let mut v = pts(&[(1, 0), (0, 1), (0, 0), (-1, 1)]);
        v.sort();
        assert_eq!(v, pts(&[(0, 0), (1, 0), (-1, 1), (0, 1)]));
    }

    #[test]
    fn trees() {
        assert!(Shape::single(Point::ORIGIN).is_tree());
        let line = Shape::rectangle(4, 1, Point::ORIGIN).unwrap();
        assert!(line.is_tree());
        let block = Shape::rectangle(2, 2, Point::ORIGIN).unwrap();
        assert_eq!(block.adjacency_count(), 4);
        assert!(!block.is_tree());
    }

    #[test]
    fn rejects_disconnected_and_empty() {
        assert_eq!(
            Shape::new(pts(&[(0, 0), (2, 0)])).unwrap_err(),
            ShapeError::Disconnected
        );
        assert_eq!(Shape::new(vec![]).unwrap_err(), ShapeError::Empty);
    }

    #[test]
    fn symmetry_groups() {
        let square = Shape::rectangle(2, 2, Point::ORIGIN).unwrap();
        assert_eq!(square.symmetries().len(), 8);
        assert_eq!(square.orbit_representatives(), pts(&[(0, 0)]));

        let line = Shape::rectangle(3, 1, Point::ORIGIN).unwrap();
        assert_eq!(line.symmetries().len(), 4);
        assert_eq!(line.orbit_representatives(), pts(&[(0, 0), (1, 0)]));

        let ell = Shape::new(pts(&[(0, 1), (0, 0), (1, 0)])).unwrap();
        assert_eq!(ell.symmetries().len(), 2);
        assert_eq!(ell.orbit_representatives(), pts(&[(0, 0), (1, 0)]));
    }

    #[test]
    fn transforms_permute_directions() {
        for t in SquareTransform::ALL {
            let mut image: Vec<Direction> =
                Direction::ALL.iter().map(|&d| t.apply_direction(d)).collect();
            image.sort();
            assert_eq!(image, Direction::ALL.to_vec());
        }
        assert_eq!(
            SquareTransform::Rotate90.apply_direction(Direction::East),
            Direction::North
        );
    }
}
