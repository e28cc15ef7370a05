//! SVG drawing of assemblies.
//!
//! Output is a pure function of the assembly, the system and the options:
//! cells are written in point order and all coordinates are integers.

use std::collections::BTreeSet;
use std::fmt::Write;

use crate::assembly::Assembly;
use crate::geometry::{Direction, Point};
use crate::model::TileSystem;

const CELL: i32 = 48;
const MARGIN: i32 = 8;
const TICK: i32 = 6;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RenderOptions {
    /// Outline the points where a tile could attach next.
    pub frontier: bool,
}

fn escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for ch in text.chars() {
        match ch {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&#39;"),
            c => out.push(c),
        }
    }
    out
}

pub fn render_svg(sys: &TileSystem, assembly: &Assembly, options: RenderOptions) -> String {
    let frontier: BTreeSet<Point> = if options.frontier {
        assembly.frontier(sys)
    } else {
        BTreeSet::new()
    };
    let all: Vec<Point> = assembly.domain().chain(frontier.iter().copied()).collect();
    let (min_x, max_x, min_y, max_y) = if all.is_empty() {
        (0, 0, 0, 0)
    } else {
        (
            all.iter().map(|p| p.x).min().unwrap(),
            all.iter().map(|p| p.x).max().unwrap(),
            all.iter().map(|p| p.y).min().unwrap(),
            all.iter().map(|p| p.y).max().unwrap(),
        )
    };
    let width = (max_x - min_x + 1) * CELL + 2 * MARGIN;
    let height = (max_y - min_y + 1) * CELL + 2 * MARGIN;
    // Screen y grows downward, so the top row is max_y.
    let corner = |p: Point| (MARGIN + (p.x - min_x) * CELL, MARGIN + (max_y - p.y) * CELL);

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(svg, r##"<rect width="{width}" height="{height}" fill="#ffffff"/>"##);
    for (p, t) in assembly.iter() {
        let (x, y) = corner(p);
        let seed = p == sys.seed_position() && t == sys.seed_tile();
        let fill = if seed { "#f4d58d" } else { "#dfe7f2" };
        let _ = writeln!(
            svg,
            r##"<g class="tile" data-x="{}" data-y="{}"><rect x="{x}" y="{y}" width="{CELL}" height="{CELL}" fill="{fill}" stroke="#333333" stroke-width="1"/>"##,
            p.x, p.y
        );
        let _ = writeln!(
            svg,
            r##"<text x="{}" y="{}" font-family="monospace" font-size="12" text-anchor="middle" fill="#111111">{}</text>"##,
            x + CELL / 2,
            y + CELL / 2 + 4,
            escape(sys.name(t))
        );
        for d in Direction::ALL {
            let strength = sys.tile(t).glue(d).strength as i32;
            for i in 0..strength {
                let _ = writeln!(svg, "{}", tick(x, y, d, i, strength));
            }
        }
        svg.push_str("</g>\n");
    }
    for p in &frontier {
        let (x, y) = corner(*p);
        let _ = writeln!(
            svg,
            r##"<rect class="frontier" data-x="{}" data-y="{}" x="{}" y="{}" width="{}" height="{}" fill="none" stroke="#c0392b" stroke-width="2" stroke-dasharray="4 3"/>"##,
            p.x,
            p.y,
            x + 2,
            y + 2,
            CELL - 4,
            CELL - 4
        );
    }
    svg.push_str("</svg>\n");
    svg
}

/// One tick mark perpendicular to side `d`; `count` ticks are spread evenly.
fn tick(x: i32, y: i32, d: Direction, i: i32, count: i32) -> String {
    let along = CELL * (i + 1) / (count + 1);
    let (x1, y1, x2, y2) = match d {
        Direction::North => (x + along, y, x + along, y + TICK),
        Direction::South => (x + along, y + CELL, x + along, y + CELL - TICK),
        Direction::West => (x, y + along, x + TICK, y + along),
        Direction::East => (x + CELL, y + along, x + CELL - TICK, y + along),
    };
    format!(r##"<line class="glue" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="#333333" stroke-width="2"/>"##)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::systems::{coop, nds};

    #[test]
    fn deterministic() {
        let sys = coop();
        let a = Assembly::from_steps(&sys, &[]).unwrap();
        let first = render_svg(&sys, &a, RenderOptions { frontier: true });
        assert_eq!(first, render_svg(&sys, &a, RenderOptions { frontier: true }));
        assert!(first.starts_with("<svg "));
        assert!(first.ends_with("</svg>\n"));
    }

    #[test]
    fn nds_frontier_overlay_marks_one_cell() {
        let sys = nds();
        let svg = render_svg(&sys, &Assembly::seed(&sys), RenderOptions { frontier: true });
        assert_eq!(svg.matches(r#"class="frontier""#).count(), 1);
        assert!(svg.contains(r#"class="frontier" data-x="1" data-y="0""#));
        let plain = render_svg(&sys, &Assembly::seed(&sys), RenderOptions::default());
        assert!(!plain.contains("frontier"));
    }

    #[test]
    fn ticks_follow_strength() {
        let sys = coop();
        let svg = render_svg(&sys, &Assembly::seed(&sys), RenderOptions::default());
        // Seed S has two double glues.
        assert_eq!(svg.matches(r#"class="glue""#).count(), 4);
        assert_eq!(svg.matches(r#"class="tile""#).count(), 1);
    }

    #[test]
    fn names_are_escaped() {
        assert_eq!(escape("a<b>&\"'"), "a&lt;b&gt;&amp;&quot;&#39;");
    }
}
