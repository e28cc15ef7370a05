//! Glues, tile types and temperature-2 tile systems.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{Direction, Point};

/// Index of a tile type within its [`TileSystem`].
pub type TileIndex = usize;

/// The only temperature supported.
pub const TEMPERATURE: u32 = 2;

/// A glue: a label and a strength of 0 (null), 1 (single) or 2 (double).
///
/// Labels compare by exact, case-sensitive string equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Glue {
    pub label: String,
    pub strength: u8,
}

impl Glue {
    /// Builds a glue, clamping strengths above 2 down to 2.
    pub fn new(label: impl Into<String>, strength: u32) -> Self {
        Glue {
            label: label.into(),
            strength: strength.min(2) as u8,
        }
    }

    pub fn null() -> Self {
        Glue {
            label: String::new(),
            strength: 0,
        }
    }

    pub fn is_null(&self) -> bool {
        self.strength == 0
    }

    pub fn is_double(&self) -> bool {
        self.strength == 2
    }
}

impl Default for Glue {
    fn default() -> Self {
        Glue::null()
    }
}

impl fmt::Display for Glue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.label, self.strength)
    }
}

/// A named unit square with one glue per side, stored in N, E, S, W order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TileType {
    pub name: String,
    glues: [Glue; 4],
}

impl TileType {
    pub fn new(name: impl Into<String>, glues: [Glue; 4]) -> Self {
        TileType {
            name: name.into(),
            glues,
        }
    }

    /// A tile type whose sides are all null glues.
    pub fn inert(name: impl Into<String>) -> Self {
        TileType::new(name, Default::default())
    }

    /// Replaces the glue on side `d`.
    pub fn with(mut self, d: Direction, glue: Glue) -> Self {
        self.glues[d.index()] = glue;
        self
    }

    pub fn glue(&self, d: Direction) -> &Glue {
        &self.glues[d.index()]
    }

    pub fn glues(&self) -> &[Glue; 4] {
        &self.glues
    }
}

/// Strength with which `a` binds to `b` placed on its `d` side.
///
/// Positive iff the abutting glues are equal in label and strength and that
/// strength is positive.
pub fn interacts(a: &TileType, d: Direction, b: &TileType) -> u8 {
    let ga = a.glue(d);
    if ga.strength > 0 && ga == b.glue(d.opposite()) {
        ga.strength
    } else {
        0
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SystemError {
    #[error("tile system has no tile types")]
    Empty,
    #[error("seed tile index {index} out of range for {count} tile types")]
    SeedOutOfRange { index: usize, count: usize },
    #[error("duplicate tile type name {0:?}")]
    DuplicateName(String),
    #[error("tile {tile:?} has a positive glue with an empty label on its {side} side")]
    EmptyLabel { tile: String, side: Direction },
    #[error("glue {glue} on the {side} side of tile {tile:?} needs normalization")]
    NotNormalized {
        tile: String,
        side: Direction,
        glue: Glue,
    },
}

/// Glue as read from user input, before strengths are normalized.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct RawGlue {
    pub label: String,
    pub strength: u32,
}

impl RawGlue {
    pub fn new(label: impl Into<String>, strength: u32) -> Self {
        RawGlue {
            label: label.into(),
            strength,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawTileType {
    pub name: String,
    /// N, E, S, W.
    pub glues: [RawGlue; 4],
}

/// A tile system with arbitrary strengths and temperature, as accepted by
/// [`normalize_system`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawTileSystem {
    pub tile_types: Vec<RawTileType>,
    pub seed_tile: usize,
    pub seed_position: Point,
    pub temperature: u32,
}

/// Something [`normalize_system`] changed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NormalizeWarning {
    /// A strength above 2 was lowered to 2.
    Clamped {
        tile: String,
        side: Direction,
        label: String,
        from: u32,
    },
    /// A positive glue with no partner on the opposite side of any tile type
    /// was demoted to strength 0.
    EffectivelyNull {
        tile: String,
        side: Direction,
        label: String,
        strength: u8,
    },
    /// The requested temperature was replaced by 2.
    Temperature { from: u32 },
}

impl NormalizeWarning {
    pub fn kind(&self) -> &'static str {
        match self {
            NormalizeWarning::Clamped { .. } => "clamped",
            NormalizeWarning::EffectivelyNull { .. } => "effectively null",
            NormalizeWarning::Temperature { .. } => "temperature",
        }
    }
}

impl fmt::Display for NormalizeWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormalizeWarning::Clamped {
                tile,
                side,
                label,
                from,
            } => write!(
                f,
                "clamped: glue {label:?} on the {side} side of {tile:?} had strength {from}, now 2"
            ),
            NormalizeWarning::EffectivelyNull {
                tile,
                side,
                label,
                strength,
            } => write!(
                f,
                "effectively null: glue ({label},{strength}) on the {side} side of {tile:?} \
                 has no partner on any {} side; demoted to strength 0",
                side.opposite()
            ),
            NormalizeWarning::Temperature { from } => {
                write!(f, "temperature: {from} replaced by 2")
            }
        }
    }
}

/// A normalized, singly-seeded, temperature-2 tile system.
///
/// Every positive glue has a partner on the opposite side of some tile
/// type, and all strengths are 0, 1 or 2. Bond strengths between every pair
/// of tile types are tabulated at construction.
#[derive(Clone, Debug)]
pub struct TileSystem {
    tile_types: Vec<TileType>,
    seed_tile: TileIndex,
    seed_position: Point,
    // bonds[(a * 4 + d) * k + b]
    bonds: Vec<u8>,
}

impl PartialEq for TileSystem {
    fn eq(&self, other: &Self) -> bool {
        self.tile_types == other.tile_types
            && self.seed_tile == other.seed_tile
            && self.seed_position == other.seed_position
    }
}

impl Eq for TileSystem {}

impl TileSystem {
    /// Builds a system from tile types that are already normalized.
    ///
    /// Use [`normalize_system`] for arbitrary input.
    pub fn new(
        tile_types: Vec<TileType>,
        seed_tile: TileIndex,
        seed_position: Point,
    ) -> Result<Self, SystemError> {
        check_shape(tile_types.len(), seed_tile)?;
        let mut names = HashSet::new();
        for t in &tile_types {
            if !names.insert(t.name.as_str()) {
                return Err(SystemError::DuplicateName(t.name.clone()));
            }
            for d in Direction::ALL {
                let g = t.glue(d);
                if g.strength > 2 {
                    return Err(SystemError::NotNormalized {
                        tile: t.name.clone(),
                        side: d,
                        glue: g.clone(),
                    });
                }
                if g.strength > 0 && g.label.is_empty() {
                    return Err(SystemError::EmptyLabel {
                        tile: t.name.clone(),
                        side: d,
                    });
                }
            }
        }
        let partners = side_glues(&tile_types);
        for t in &tile_types {
            for d in Direction::ALL {
                let g = t.glue(d);
                if g.strength > 0 && !partners.contains(&(d.opposite(), g)) {
                    return Err(SystemError::NotNormalized {
                        tile: t.name.clone(),
                        side: d,
                        glue: g.clone(),
                    });
                }
            }
        }
        Ok(Self::assemble(tile_types, seed_tile, seed_position))
    }

    fn assemble(tile_types: Vec<TileType>, seed_tile: TileIndex, seed_position: Point) -> Self {
        let k = tile_types.len();
        let mut bonds = vec![0u8; k * 4 * k];
        for (a, ta) in tile_types.iter().enumerate() {
            for d in Direction::ALL {
                for (b, tb) in tile_types.iter().enumerate() {
                    bonds[(a * 4 + d.index()) * k + b] = interacts(ta, d, tb);
                }
            }
        }
        TileSystem {
            tile_types,
            seed_tile,
            seed_position,
            bonds,
        }
    }

    pub fn tile_types(&self) -> &[TileType] {
        &self.tile_types
    }

    pub fn tile(&self, index: TileIndex) -> &TileType {
        &self.tile_types[index]
    }

    pub fn len(&self) -> usize {
        self.tile_types.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tile_types.is_empty()
    }

    pub fn seed_tile(&self) -> TileIndex {
        self.seed_tile
    }

    pub fn seed_position(&self) -> Point {
        self.seed_position
    }

    pub fn temperature(&self) -> u32 {
        TEMPERATURE
    }

    pub fn index_of(&self, name: &str) -> Option<TileIndex> {
        self.tile_types.iter().position(|t| t.name == name)
    }

    pub fn name(&self, index: TileIndex) -> &str {
        &self.tile_types[index].name
    }

    /// Tabulated [`interacts`] between tile `a` and tile `b` on its `d` side.
    #[inline]
    pub fn bond(&self, a: TileIndex, d: Direction, b: TileIndex) -> u8 {
        self.bonds[(a * 4 + d.index()) * self.tile_types.len() + b]
    }

    /// Same system with the seed moved to another tile type or position.
    pub fn with_seed(&self, seed_tile: TileIndex, seed_position: Point) -> Result<Self, SystemError> {
        check_shape(self.tile_types.len(), seed_tile)?;
        let mut sys = self.clone();
        sys.seed_tile = seed_tile;
        sys.seed_position = seed_position;
        Ok(sys)
    }

    pub fn to_raw(&self) -> RawTileSystem {
        RawTileSystem {
            tile_types: self
                .tile_types
                .iter()
                .map(|t| RawTileType {
                    name: t.name.clone(),
                    glues: t
                        .glues
                        .clone()
                        .map(|g| RawGlue::new(g.label, g.strength as u32)),
                })
                .collect(),
            seed_tile: self.seed_tile,
            seed_position: self.seed_position,
            temperature: TEMPERATURE,
        }
    }
}

fn check_shape(count: usize, seed_tile: usize) -> Result<(), SystemError> {
    if count == 0 {
        return Err(SystemError::Empty);
    }
    if seed_tile >= count {
        return Err(SystemError::SeedOutOfRange {
            index: seed_tile,
            count,
        });
    }
    Ok(())
}

fn side_glues(tiles: &[TileType]) -> BTreeSet<(Direction, &Glue)> {
    tiles
        .iter()
        .flat_map(|t| Direction::ALL.into_iter().map(move |d| (d, t.glue(d))))
        .filter(|(_, g)| g.strength > 0)
        .collect()
}

/// Result of [`normalize_system`].
#[derive(Clone, Debug)]
pub struct Normalized {
    pub system: TileSystem,
    pub warnings: Vec<NormalizeWarning>,
}

/// Normalizes a raw system into a temperature-2 [`TileSystem`].
///
/// Strengths above 2 are clamped to 2, positive glues without a partner on
/// the opposite side of any tile type are demoted to strength 0, and the
/// temperature is forced to 2. Every change is reported as a warning.
pub fn normalize_system(raw: &RawTileSystem) -> Result<Normalized, SystemError> {
    check_shape(raw.tile_types.len(), raw.seed_tile)?;
    let mut warnings = Vec::new();
    if raw.temperature != TEMPERATURE {
        warnings.push(NormalizeWarning::Temperature {
            from: raw.temperature,
        });
    }
    let mut tiles: Vec<TileType> = Vec::with_capacity(raw.tile_types.len());
    for rt in &raw.tile_types {
        let mut glues: [Glue; 4] = Default::default();
        for d in Direction::ALL {
            let rg = &rt.glues[d.index()];
            if rg.strength > 2 {
                warnings.push(NormalizeWarning::Clamped {
                    tile: rt.name.clone(),
                    side: d,
                    label: rg.label.clone(),
                    from: rg.strength,
                });
            }
            if rg.strength > 0 && rg.label.is_empty() {
                return Err(SystemError::EmptyLabel {
                    tile: rt.name.clone(),
                    side: d,
                });
            }
            glues[d.index()] = Glue::new(rg.label.clone(), rg.strength);
        }
        tiles.push(TileType::new(rt.name.clone(), glues));
    }

    // Demotion only removes glues that have no partner, so it cannot strip
    // the partner of a surviving glue; one pass suffices.
    let partners: BTreeSet<(Direction, Glue)> = side_glues(&tiles)
        .into_iter()
        .map(|(d, g)| (d, g.clone()))
        .collect();
    for t in &mut tiles {
        for d in Direction::ALL {
            let g = &mut t.glues[d.index()];
            if g.strength > 0 && !partners.contains(&(d.opposite(), g.clone())) {
                warnings.push(NormalizeWarning::EffectivelyNull {
                    tile: t.name.clone(),
                    side: d,
                    label: g.label.clone(),
                    strength: g.strength,
                });
                g.strength = 0;
            }
        }
    }

    let mut names = HashSet::new();
    for t in &tiles {
        if !names.insert(t.name.clone()) {
            return Err(SystemError::DuplicateName(t.name.clone()));
        }
    }
    Ok(Normalized {
        system: TileSystem::assemble(tiles, raw.seed_tile, raw.seed_position),
        warnings,
    })
}
