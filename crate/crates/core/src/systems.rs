//! Small reference systems used throughout the docs and tests.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geometry::{Direction::*, Point};
use crate::model::{normalize_system, Glue, RawGlue, RawTileSystem, RawTileType, TileSystem, TileType};

/// Nondeterministic domino: seed `S` with east `(g,2)`; `B` and `C` both
/// carry west `(g,2)`. Strictly self-assembles the domino at (0,0),(1,0)
/// but is not directed.
pub fn nds() -> TileSystem {
    TileSystem::new(
        vec![
            TileType::inert("S").with(East, Glue::new("g", 2)),
            TileType::inert("B").with(West, Glue::new("g", 2)),
            TileType::inert("C").with(West, Glue::new("g", 2)),
        ],
        0,
        Point::ORIGIN,
    )
    .expect("reference system is normalized")
}

/// Cooperative 2x2 square: `R` and `U` attach to the seed by double glues,
/// then `K` fills the corner (1,1) with two single bonds.
pub fn coop() -> TileSystem {
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
    .expect("reference system is normalized")
}

/// Directed domino: seed `S` with east `(g,2)` and `B` with west `(g,2)`.
pub fn domino() -> TileSystem {
    TileSystem::new(
        vec![
            TileType::inert("S").with(East, Glue::new("g", 2)),
            TileType::inert("B").with(West, Glue::new("g", 2)),
        ],
        0,
        Point::ORIGIN,
    )
    .expect("reference system is normalized")
}

/// A single tile type with east and west `(g,2)`: grows forever along the
/// x axis.
pub fn ray() -> TileSystem {
    TileSystem::new(
        vec![TileType::inert("A")
            .with(East, Glue::new("g", 2))
            .with(West, Glue::new("g", 2))],
        0,
        Point::ORIGIN,
    )
    .expect("reference system is normalized")
}

/// A random normalized system with between 1 and `max_tiles` tile types
/// over `labels` glue labels, seeded at the origin by tile `T0`. Each side
/// is null with probability 2/5, otherwise a uniform label with strength 1
/// or 2. Replays identically for the same `rng_seed`.
pub fn random_system(rng_seed: u64, max_tiles: usize, labels: usize) -> TileSystem {
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let count = rng.random_range(1..=max_tiles.max(1));
    let tile_types = (0..count)
        .map(|i| RawTileType {
            name: format!("T{i}"),
            glues: std::array::from_fn(|_| {
                if labels == 0 || rng.random_range(0..5) < 2 {
                    RawGlue::default()
                } else {
                    let label = rng.random_range(0..labels);
                    RawGlue::new(format!("g{label}"), rng.random_range(1..=2))
                }
            }),
        })
        .collect();
    let raw = RawTileSystem {
        tile_types,
        seed_tile: 0,
        seed_position: Point::ORIGIN,
        temperature: 2,
    };
    normalize_system(&raw).expect("generated names are distinct").system
}
