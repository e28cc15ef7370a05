//! JSON and text file formats: tile systems, shapes, and the machine-readable
//! forms of exploration reports, verdicts and minimization results.
//!
//! Every serializer here is canonical: fixed field order, sorted listings,
//! two-space indented JSON with a trailing newline. Identical inputs give
//! byte-identical output.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::assembly::{Assembly, Step};
use crate::explore::{Answer, Conflict, Escape, ExplorationReport, ExploreStatus, Verdict, Witness};
use crate::geometry::{Direction, Point, Shape, ShapeError};
use crate::minimize::{GapResult, MinResult, MinStatus, SearchMode};
use crate::model::{
    normalize_system, NormalizeWarning, RawGlue, RawTileSystem, RawTileType, SystemError, TileIndex,
    TileSystem, TEMPERATURE,
};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("{path}: {message}")]
    Json { path: String, message: String },
    #[error("temperature must be 2, found {0}")]
    Temperature(u32),
    #[error("unsupported schema_version {0}")]
    SchemaVersion(u32),
    #[error("unknown seed tile {0:?}")]
    UnknownSeedTile(String),
    #[error(transparent)]
    System(#[from] SystemError),
    #[error("{0}")]
    Shape(#[from] ShapeError),
    #[error("malformed grid character {ch:?} at row {row}, column {column}")]
    GridCharacter { ch: char, row: usize, column: usize },
}

fn from_json<'de, T: Deserialize<'de>>(text: &'de str) -> Result<T, DocumentError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        DocumentError::Json {
            path,
            message: e.into_inner().to_string(),
        }
    })
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("document types always serialize");
    s.push('\n');
    s
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GlueDocument {
    #[serde(default)]
    pub label: String,
    #[serde(default)]
    pub strength: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TileDocument {
    pub name: String,
    #[serde(default)]
    pub north: GlueDocument,
    #[serde(default)]
    pub east: GlueDocument,
    #[serde(default)]
    pub south: GlueDocument,
    #[serde(default)]
    pub west: GlueDocument,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeedDocument {
    pub tile: String,
    #[serde(default = "origin")]
    pub position: Point,
}

fn origin() -> Point {
    Point::ORIGIN
}

fn default_schema() -> u32 {
    SCHEMA_VERSION
}

fn default_temperature() -> u32 {
    TEMPERATURE
}

/// On-disk form of a tile system.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemDocument {
    #[serde(default = "default_schema")]
    pub schema_version: u32,
    #[serde(default)]
    pub name: String,
    #[serde(default = "default_temperature")]
    pub temperature: u32,
    pub tile_types: Vec<TileDocument>,
    pub seed: SeedDocument,
}

impl SystemDocument {
    pub fn from_system(name: &str, sys: &TileSystem) -> Self {
        let glue = |t: TileIndex, d: Direction| {
            let g = sys.tile(t).glue(d);
            GlueDocument {
                label: g.label.clone(),
                strength: g.strength as u32,
            }
        };
        SystemDocument {
            schema_version: SCHEMA_VERSION,
            name: name.to_string(),
            temperature: TEMPERATURE,
            tile_types: (0..sys.len())
                .map(|t| TileDocument {
                    name: sys.name(t).to_string(),
                    north: glue(t, Direction::North),
                    east: glue(t, Direction::East),
                    south: glue(t, Direction::South),
                    west: glue(t, Direction::West),
                })
                .collect(),
            seed: SeedDocument {
                tile: sys.name(sys.seed_tile()).to_string(),
                position: sys.seed_position(),
            },
        }
    }

    /// Validates and normalizes the document.
    pub fn to_system(&self) -> Result<ParsedSystem, DocumentError> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(DocumentError::SchemaVersion(self.schema_version));
        }
        if self.temperature != TEMPERATURE {
            return Err(DocumentError::Temperature(self.temperature));
        }
        let seed_tile = self
            .tile_types
            .iter()
            .position(|t| t.name == self.seed.tile)
            .ok_or_else(|| DocumentError::UnknownSeedTile(self.seed.tile.clone()))?;
        let raw_glue = |g: &GlueDocument| RawGlue::new(g.label.clone(), g.strength);
        let raw = RawTileSystem {
            tile_types: self
                .tile_types
                .iter()
                .map(|t| RawTileType {
                    name: t.name.clone(),
                    glues: [
                        raw_glue(&t.north),
                        raw_glue(&t.east),
                        raw_glue(&t.south),
                        raw_glue(&t.west),
                    ],
                })
                .collect(),
            seed_tile,
            seed_position: self.seed.position,
            temperature: self.temperature,
        };
        let normalized = normalize_system(&raw)?;
        Ok(ParsedSystem {
            name: self.name.clone(),
            system: normalized.system,
            warnings: normalized.warnings,
        })
    }
}

/// A parsed, normalized system with the warnings normalization raised.
#[derive(Clone, Debug)]
pub struct ParsedSystem {
    pub name: String,
    pub system: TileSystem,
    pub warnings: Vec<NormalizeWarning>,
}

pub fn parse_system(text: &str) -> Result<ParsedSystem, DocumentError> {
    let doc: SystemDocument = from_json(text)?;
    doc.to_system()
}

pub fn serialize_system(name: &str, sys: &TileSystem) -> String {
    to_json(&SystemDocument::from_system(name, sys))
}

/// Which of the two shape formats a text is in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShapeForm {
    /// JSON, either `{"points": [[x, y], ...]}` or `{"grid": ..., "origin": [x, y]}`.
    Json,
    /// Bare ASCII grid.
    Grid,
    /// JSON if the text starts with `{`, grid otherwise.
    Auto,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum GridText {
    Text(String),
    Rows(Vec<String>),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ShapeJson {
    #[serde(default)]
    points: Option<Vec<Point>>,
    #[serde(default)]
    grid: Option<GridText>,
    #[serde(default)]
    origin: Option<Point>,
}

#[derive(Serialize)]
struct ShapePointsOut<'a> {
    points: &'a BTreeSet<Point>,
}

/// Parses a shape.
///
/// In the grid form `#` marks a point and `.` an empty cell. The first text
/// row is the topmost (largest y) and the leftmost column is x = 0, so the
/// bottom-left cell of the grid sits at `origin` (default `[0, 0]`).
pub fn parse_shape(text: &str, form: ShapeForm) -> Result<Shape, DocumentError> {
    let json = match form {
        ShapeForm::Json => true,
        ShapeForm::Grid => false,
        ShapeForm::Auto => text.trim_start().starts_with('{'),
    };
    if !json {
        return parse_grid(text, Point::ORIGIN);
    }
    let doc: ShapeJson = from_json(text)?;
    match (doc.points, doc.grid) {
        (Some(points), None) => {
            if doc.origin.is_some() {
                return Err(DocumentError::Json {
                    path: "origin".into(),
                    message: "origin only applies to the grid form".into(),
                });
            }
            Ok(Shape::new(points)?)
        }
        (None, Some(grid)) => {
            let text = match grid {
                GridText::Text(t) => t,
                GridText::Rows(rows) => rows.join("\n"),
            };
            parse_grid(&text, doc.origin.unwrap_or(Point::ORIGIN))
        }
        _ => Err(DocumentError::Json {
            path: ".".into(),
            message: "expected exactly one of `points` or `grid`".into(),
        }),
    }
}

fn parse_grid(text: &str, origin: Point) -> Result<Shape, DocumentError> {
    let rows: Vec<&str> = text.trim_end_matches(['\n', '\r']).lines().collect();
    let height = rows.len() as i32;
    let mut points = Vec::new();
    for (r, row) in rows.iter().enumerate() {
        let y = origin.y + height - 1 - r as i32;
        for (c, ch) in row.trim_end_matches('\r').chars().enumerate() {
            match ch {
                '#' => points.push(Point::new(origin.x + c as i32, y)),
                '.' => {}
                _ => {
                    return Err(DocumentError::GridCharacter {
                        ch,
                        row: r + 1,
                        column: c + 1,
                    })
                }
            }
        }
    }
    Ok(Shape::new(points)?)
}

/// Coordinate-form JSON for a shape.
pub fn serialize_shape(shape: &Shape) -> String {
    to_json(&ShapePointsOut {
        points: shape.points(),
    })
}

/// Grid form of a shape, anchored at its bounding box's lower-left corner.
pub fn shape_to_grid(shape: &Shape) -> String {
    let (min, max) = shape.bounding_box();
    let mut out = String::new();
    for y in (min.y..=max.y).rev() {
        for x in min.x..=max.x {
            out.push(if shape.contains(Point::new(x, y)) { '#' } else { '.' });
        }
        out.push('\n');
    }
    out
}

/// A placement with the tile named.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlacementDocument {
    pub point: Point,
    pub tile: String,
}

pub fn placements(sys: &TileSystem, a: &Assembly) -> Vec<PlacementDocument> {
    a.iter()
        .map(|(point, t)| PlacementDocument {
            point,
            tile: sys.name(t).to_string(),
        })
        .collect()
}

pub fn steps_doc(sys: &TileSystem, steps: &[Step]) -> Vec<PlacementDocument> {
    steps
        .iter()
        .map(|s| PlacementDocument {
            point: s.point,
            tile: sys.name(s.tile).to_string(),
        })
        .collect()
}

/// Resolves named steps against `sys`.
pub fn steps_from_doc(sys: &TileSystem, doc: &[PlacementDocument]) -> Option<Vec<Step>> {
    doc.iter()
        .map(|p| sys.index_of(&p.tile).map(|t| Step::new(p.point, t)))
        .collect()
}

#[derive(Serialize)]
struct PositionTypesDocument {
    point: Point,
    tiles: Vec<String>,
}

#[derive(Serialize)]
struct EscapeDocument {
    point: Point,
    tile: String,
    assembly: Vec<PlacementDocument>,
    sequence: Vec<PlacementDocument>,
}

#[derive(Serialize)]
struct ConflictDocument {
    point: Point,
    tiles: [String; 2],
    sequences: [Vec<PlacementDocument>; 2],
}

#[derive(Serialize)]
struct ReportDocument {
    status: ExploreStatus,
    producible_count: usize,
    terminal_keys: Vec<String>,
    terminals: Vec<Vec<PlacementDocument>>,
    position_types: Vec<PositionTypesDocument>,
    escape_witness: Option<EscapeDocument>,
    conflict: Option<ConflictDocument>,
}

fn escape_doc(sys: &TileSystem, e: &Escape) -> EscapeDocument {
    EscapeDocument {
        point: e.attachment.point,
        tile: sys.name(e.attachment.tile).to_string(),
        assembly: placements(sys, &e.assembly),
        sequence: steps_doc(sys, &e.sequence),
    }
}

fn conflict_doc(sys: &TileSystem, c: &Conflict) -> ConflictDocument {
    ConflictDocument {
        point: c.point,
        tiles: c.tiles.map(|t| sys.name(t).to_string()),
        sequences: [steps_doc(sys, &c.sequences[0]), steps_doc(sys, &c.sequences[1])],
    }
}

pub fn report_json(sys: &TileSystem, report: &ExplorationReport) -> String {
    to_json(&ReportDocument {
        status: report.status,
        producible_count: report.producible_count,
        terminal_keys: report.terminal_keys.iter().map(|k| k.to_hex()).collect(),
        terminals: report.terminals.iter().map(|a| placements(sys, a)).collect(),
        position_types: report
            .position_types
            .iter()
            .map(|(&point, tiles)| PositionTypesDocument {
                point,
                tiles: tiles.iter().map(|&t| sys.name(t).to_string()).collect(),
            })
            .collect(),
        escape_witness: report.escape_witness.as_ref().map(|e| escape_doc(sys, e)),
        conflict: report.conflict.as_ref().map(|c| conflict_doc(sys, c)),
    })
}

#[derive(Serialize)]
#[serde(untagged)]
enum WitnessDocument {
    Conflict {
        point: Point,
        tiles: [String; 2],
        kind: &'static str,
        sequences: [Vec<PlacementDocument>; 2],
    },
    OutOfShape {
        point: Point,
        tile: String,
        kind: &'static str,
        sequence: Vec<PlacementDocument>,
    },
    WrongShape {
        kind: &'static str,
        assembly: Vec<PlacementDocument>,
        sequence: Vec<PlacementDocument>,
    },
}

#[derive(Serialize)]
struct VerdictDocument {
    answer: Answer,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<WitnessDocument>,
    #[serde(skip_serializing_if = "Option::is_none")]
    reason: Option<ExploreStatus>,
}

fn witness_doc(sys: &TileSystem, w: &Witness) -> WitnessDocument {
    match w {
        Witness::Conflict(c) => WitnessDocument::Conflict {
            point: c.point,
            tiles: c.tiles.map(|t| sys.name(t).to_string()),
            kind: "conflict",
            sequences: [steps_doc(sys, &c.sequences[0]), steps_doc(sys, &c.sequences[1])],
        },
        Witness::OutOfShape(e) => WitnessDocument::OutOfShape {
            point: e.attachment.point,
            tile: sys.name(e.attachment.tile).to_string(),
            kind: "out_of_shape",
            sequence: steps_doc(sys, &e.sequence),
        },
        Witness::WrongShape { sequence, assembly } => WitnessDocument::WrongShape {
            kind: "wrong_shape",
            assembly: placements(sys, assembly),
            sequence: steps_doc(sys, sequence),
        },
    }
}

/// `{"answer": ...}` plus a witness for `No` and the exploration status for
/// `Inconclusive`.
pub fn verdict_json(sys: &TileSystem, v: &Verdict) -> String {
    to_json(&VerdictDocument {
        answer: v.answer,
        witness: v.witness.as_ref().map(|w| witness_doc(sys, w)),
        reason: (v.answer == Answer::Inconclusive).then_some(v.status),
    })
}

#[derive(Serialize)]
struct MinResultDocument {
    k_star: Option<usize>,
    mode: SearchMode,
    status: MinStatus,
    exhausted_k: usize,
    systems_tested: u64,
    certificate: Option<SystemDocument>,
}

fn min_doc(r: &MinResult) -> MinResultDocument {
    MinResultDocument {
        k_star: r.k_star,
        mode: r.mode,
        status: r.status,
        exhausted_k: r.exhausted_k,
        systems_tested: r.systems_tested,
        certificate: r
            .certificate
            .as_ref()
            .map(|c| SystemDocument::from_system(&certificate_name(r), c)),
    }
}

pub fn certificate_name(r: &MinResult) -> String {
    let mode = match r.mode {
        SearchMode::General => "general",
        SearchMode::Directed => "directed",
    };
    format!("min-{mode}-{}", r.k_star.unwrap_or(0))
}

pub fn min_result_json(r: &MinResult) -> String {
    to_json(&min_doc(r))
}

#[derive(Serialize)]
struct GapDocument {
    general: MinResultDocument,
    directed: MinResultDocument,
    gap: Option<i64>,
}

pub fn gap_json(g: &GapResult) -> String {
    to_json(&GapDocument {
        general: min_doc(&g.general),
        directed: min_doc(&g.directed),
        gap: g.gap(),
    })
}
