//! Sampling assembly sequences.

use std::collections::{BTreeSet, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::assembly::{Assembly, Attachment, Step};
use crate::geometry::Point;
use crate::model::TileSystem;

/// How the next attachment is chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Policy {
    /// Uniform over all frontier `(point, tile)` pairs.
    Uniform,
    /// Service the frontier point that has waited longest, choosing a tile
    /// uniformly among those that fit there. A point entering the frontier
    /// is filled within as many steps as there are points queued ahead of
    /// it, which is the finite-horizon form of fairness.
    Fair,
}

/// Steps taken from the seed, and whether the last assembly is terminal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssemblySequence {
    pub steps: Vec<Step>,
    pub terminal: bool,
}

impl AssemblySequence {
    /// Every assembly of the sequence, starting with the seed.
    pub fn assemblies(&self, sys: &TileSystem) -> Vec<Assembly> {
        let mut out = vec![Assembly::seed(sys)];
        for s in &self.steps {
            let next = out
                .last()
                .unwrap()
                .attach(sys, s.point, s.tile)
                .expect("sampled steps are frontier attachments");
            out.push(next);
        }
        out
    }

    pub fn final_assembly(&self, sys: &TileSystem) -> Assembly {
        self.assemblies(sys).pop().unwrap()
    }
}

/// Grows the seed of `sys` one attachment at a time until the assembly is
/// terminal or `max_steps` attachments were made. Replays identically for
/// the same `rng_seed`.
pub fn sample_sequence(sys: &TileSystem, rng_seed: u64, policy: Policy, max_steps: usize) -> AssemblySequence {
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    match policy {
        Policy::Uniform => sample_sequence_with(sys, max_steps, |_, options| {
            Some(rng.random_range(0..options.len()))
        }),
        Policy::Fair => {
            let mut queue: VecDeque<Point> = VecDeque::new();
            sample_sequence_with(sys, max_steps, |_, options| {
                let frontier: BTreeSet<Point> = options.iter().map(|a| a.point).collect();
                // Points only leave the frontier by being filled.
                queue.retain(|p| frontier.contains(p));
                for p in frontier {
                    if !queue.contains(&p) {
                        queue.push_back(p);
                    }
                }
                let target = queue.pop_front()?;
                let fits: Vec<usize> = options
                    .iter()
                    .enumerate()
                    .filter(|(_, a)| a.point == target)
                    .map(|(i, _)| i)
                    .collect();
                Some(fits[rng.random_range(0..fits.len())])
            })
        }
    }
}

/// Like [`sample_sequence`], with the choice delegated to `choose`, which
/// receives the current assembly and its sorted frontier attachments and
/// returns an index into them, or `None` to stop.
pub fn sample_sequence_with<F>(sys: &TileSystem, max_steps: usize, mut choose: F) -> AssemblySequence
where
    F: FnMut(&Assembly, &[Attachment]) -> Option<usize>,
{
    let mut current = Assembly::seed(sys);
    let mut steps = Vec::new();
    loop {
        let options = current.frontier_attachments(sys);
        if options.is_empty() {
            return AssemblySequence {
                steps,
                terminal: true,
            };
        }
        if steps.len() >= max_steps {
            break;
        }
        let Some(i) = choose(&current, &options) else {
            break;
        };
        let Some(att) = options.get(i) else {
            break;
        };
        current = current.with_unchecked(att.point, att.tile);
        steps.push(att.step());
    }
    AssemblySequence {
        steps,
        terminal: false,
    }
}
