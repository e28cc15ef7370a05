//! Simulation, verification and tile-set minimization for the abstract Tile
//! Assembly Model at temperature 2.
//!
//! Start with [`TileSystem`] and the reference systems in [`systems`], grow
//! assemblies with [`Assembly::attach`] or [`sample_sequence`], enumerate them
//! with [`explore`], and ask questions with [`is_directed`],
//! [`strictly_self_assembles`] and [`min_tile_set`]. The guide in `book/`
//! walks through each step.

pub mod assembly;
pub mod document;
pub mod explore;
pub mod geometry;
pub mod minimize;
pub mod model;
pub mod render;
pub mod sequence;
pub mod session;
pub mod stability;
pub mod systems;

pub use assembly::{Assembly, AssemblyError, Attachment, BindingGraph, CanonicalKey, Step};
pub use explore::{
    double_glue_lint, explore, explore_with, is_directed, judge, strictly_self_assembles, Answer,
    Conflict, Escape, ExplorationReport, ExploreError, ExploreOptions, ExploreStatus, HaltOn,
    SearchOrder, Verdict, Witness,
};
pub use geometry::{Bound, Direction, Point, Shape, ShapeError};
pub use model::{
    interacts, normalize_system, Glue, NormalizeWarning, RawGlue, RawTileSystem, RawTileType,
    SystemError, TileIndex, TileSystem, TileType,
};
pub use sequence::{sample_sequence, sample_sequence_with, AssemblySequence, Policy};
pub use stability::{is_tau_stable, min_cut_weight};
pub use document::{
    parse_shape, parse_system, serialize_shape, serialize_system, DocumentError, ParsedSystem,
    ShapeForm, SystemDocument,
};
pub use minimize::{
    complexity_gap, min_tile_set, verify_certificate, GapResult, MinResult, MinStatus,
    SearchBudget, SearchMode,
};
pub use render::{render_svg, RenderOptions};
pub use session::{DiffEntry, Session, SessionError};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/model.md")]
    mod model {}
    #[doc = include_str!("../../../book/src/assemblies.md")]
    mod assemblies {}
    #[doc = include_str!("../../../book/src/exploration.md")]
    mod exploration {}
    #[doc = include_str!("../../../book/src/verdicts.md")]
    mod verdicts {}
    #[doc = include_str!("../../../book/src/minimization.md")]
    mod minimization {}
    #[doc = include_str!("../../../book/src/formats.md")]
    mod formats {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../book/src/server.md")]
    mod server {}
}
