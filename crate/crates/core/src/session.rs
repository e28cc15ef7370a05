//! Interactive step-by-step assembly with undo and named branches.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::assembly::{Assembly, Attachment, Step};
use crate::geometry::Point;
use crate::model::TileSystem;

/// Name under which [`Session::diff`] resolves the live assembly.
pub const CURRENT: &str = "current";

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SessionError {
    #[error("unknown tile type {0:?}")]
    UnknownTile(String),
    #[error("tile {tile:?} cannot attach at ({x}, {y})", x = point.x, y = point.y)]
    IllegalAttachment { point: Point, tile: String },
    #[error("nothing to undo: the assembly is the seed")]
    AtSeed,
    #[error("unknown branch {0:?}")]
    UnknownBranch(String),
    #[error("branch name must not be empty or {CURRENT:?}")]
    BadBranchName,
}

/// One point where two assemblies differ. `None` means unoccupied.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiffEntry {
    pub point: Point,
    pub a: Option<String>,
    pub b: Option<String>,
}

#[derive(Clone, Debug)]
pub struct Session {
    system: TileSystem,
    history: Vec<Step>,
    assemblies: Vec<Assembly>,
    branches: BTreeMap<String, Vec<Step>>,
}

impl Session {
    pub fn new(system: TileSystem) -> Self {
        let seed = Assembly::seed(&system);
        Session {
            system,
            history: Vec::new(),
            assemblies: vec![seed],
            branches: BTreeMap::new(),
        }
    }

    pub fn system(&self) -> &TileSystem {
        &self.system
    }

    pub fn current(&self) -> &Assembly {
        self.assemblies.last().expect("the seed is never popped")
    }

    pub fn history(&self) -> &[Step] {
        &self.history
    }

    pub fn frontier(&self) -> Vec<Attachment> {
        self.current().frontier_attachments(&self.system)
    }

    pub fn attach(&mut self, point: Point, tile: &str) -> Result<Attachment, SessionError> {
        let index = self
            .system
            .index_of(tile)
            .ok_or_else(|| SessionError::UnknownTile(tile.to_string()))?;
        let next = self
            .current()
            .attach(&self.system, point, index)
            .map_err(|_| SessionError::IllegalAttachment {
                point,
                tile: tile.to_string(),
            })?;
        let strength = self.current().attachment_strength(&self.system, point, index);
        self.history.push(Step::new(point, index));
        self.assemblies.push(next);
        Ok(Attachment {
            point,
            tile: index,
            strength,
        })
    }

    pub fn undo(&mut self) -> Result<Step, SessionError> {
        let step = self.history.pop().ok_or(SessionError::AtSeed)?;
        self.assemblies.pop();
        Ok(step)
    }

    /// Saves the current history under `name`, replacing any branch of that name.
    pub fn save_branch(&mut self, name: &str) -> Result<(), SessionError> {
        if name.is_empty() || name == CURRENT {
            return Err(SessionError::BadBranchName);
        }
        self.branches.insert(name.to_string(), self.history.clone());
        Ok(())
    }

    pub fn branches(&self) -> &BTreeMap<String, Vec<Step>> {
        &self.branches
    }

    /// Replaces the live history with a saved branch.
    pub fn checkout(&mut self, name: &str) -> Result<(), SessionError> {
        let steps = self
            .branches
            .get(name)
            .ok_or_else(|| SessionError::UnknownBranch(name.to_string()))?
            .clone();
        let mut assemblies = vec![Assembly::seed(&self.system)];
        for s in &steps {
            let next = assemblies.last().unwrap().with_unchecked(s.point, s.tile);
            assemblies.push(next);
        }
        self.history = steps;
        self.assemblies = assemblies;
        Ok(())
    }

    fn resolve(&self, name: &str) -> Result<Assembly, SessionError> {
        if name == CURRENT {
            return Ok(self.current().clone());
        }
        let steps = self
            .branches
            .get(name)
            .ok_or_else(|| SessionError::UnknownBranch(name.to_string()))?;
        Ok(Assembly::from_steps(&self.system, steps).expect("branches hold recorded legal steps"))
    }

    /// Points where branches `a` and `b` place different tiles, in point order.
    pub fn diff(&self, a: &str, b: &str) -> Result<Vec<DiffEntry>, SessionError> {
        let left = self.resolve(a)?;
        let right = self.resolve(b)?;
        let mut points: Vec<Point> = left.domain().chain(right.domain()).collect();
        points.sort();
        points.dedup();
        let name = |t: Option<usize>| t.map(|t| self.system.name(t).to_string());
        Ok(points
            .into_iter()
            .filter(|&p| left.get(p) != right.get(p))
            .map(|p| DiffEntry {
                point: p,
                a: name(left.get(p)),
                b: name(right.get(p)),
            })
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::systems::nds;

    #[test]
    fn attach_undo_branch_diff() {
        let mut s = Session::new(nds());
        assert_eq!(s.undo(), Err(SessionError::AtSeed));
        assert!(matches!(
            s.attach(Point::new(0, 1), "B"),
            Err(SessionError::IllegalAttachment { .. })
        ));
        assert_eq!(s.attach(Point::new(1, 0), "Q"), Err(SessionError::UnknownTile("Q".into())));
        let att = s.attach(Point::new(1, 0), "B").unwrap();
        assert_eq!(att.strength, 2);
        s.save_branch("b").unwrap();
        s.undo().unwrap();
        s.attach(Point::new(1, 0), "C").unwrap();
        s.save_branch("c").unwrap();
        let diff = s.diff("b", "c").unwrap();
        assert_eq!(
            diff,
            vec![DiffEntry {
                point: Point::new(1, 0),
                a: Some("B".into()),
                b: Some("C".into())
            }]
        );
        assert!(s.diff("c", CURRENT).unwrap().is_empty());
        s.checkout("b").unwrap();
        assert_eq!(s.current().get(Point::new(1, 0)), Some(1));
        assert_eq!(s.diff("x", "b"), Err(SessionError::UnknownBranch("x".into())));
        assert_eq!(s.save_branch(CURRENT), Err(SessionError::BadBranchName));
    }
}
