//! SVG and ASCII pictures of conformations, shape sequences and curves.
//!
//! Lattice points use the axial-to-plane map `(x + y/2, y·√3/2)` at
//! `UNIT` pixels per lattice step, with `y` pointing up.

use std::fmt::Write as _;

use crate::embed::{ShapeKind, ShapeSequence};
use crate::format::ConformationDump;
use crate::lsystem::Curve;
use crate::Point;

pub const UNIT: f64 = 24.0;
pub const BEAD_RADIUS: f64 = 0.3;
pub const MARGIN: f64 = 1.0;
pub const SEED_FILL: &str = "#c0392b";
pub const BEAD_FILL: &str = "#2c3e50";
pub const BACKBONE: &str = "#7f8c8d";
pub const BOND: &str = "#2980b9";
pub const POINT_SHAPE_FILL: &str = "#e74c3c";
pub const SEGMENT_SHAPE_FILL: &str = "#3498db";
pub const SHAPE_OPACITY: f64 = 0.35;
pub const CURVE_STROKE: &str = "#27ae60";

fn plane(p: Point) -> (f64, f64) {
    p.to_plane::<f64>()
}

#[derive(Default)]
struct Canvas {
    body: String,
    min: (f64, f64),
    max: (f64, f64),
    empty: bool,
}

impl Canvas {
    fn new() -> Self {
        Canvas { empty: true, ..Default::default() }
    }

    fn see(&mut self, (x, y): (f64, f64)) {
        if self.empty {
            self.min = (x, y);
            self.max = (x, y);
            self.empty = false;
        } else {
            self.min = (self.min.0.min(x), self.min.1.min(y));
            self.max = (self.max.0.max(x), self.max.1.max(y));
        }
    }

    /// Screen coordinates: scaled, with `y` flipped.
    fn xy((x, y): (f64, f64)) -> (f64, f64) {
        (x * UNIT, -y * UNIT)
    }

    fn line(&mut self, a: Point, b: Point, stroke: &str, width: f64, dashed: bool) {
        let (pa, pb) = (plane(a), plane(b));
        self.see(pa);
        self.see(pb);
        let ((x1, y1), (x2, y2)) = (Self::xy(pa), Self::xy(pb));
        let dash = if dashed { " stroke-dasharray=\"4 3\"" } else { "" };
        let _ = writeln!(
            self.body,
            "<line x1=\"{x1:.2}\" y1=\"{y1:.2}\" x2=\"{x2:.2}\" y2=\"{y2:.2}\" stroke=\"{stroke}\" stroke-width=\"{width:.2}\"{dash}/>"
        );
    }

    fn polyline(&mut self, pts: &[Point], stroke: &str, width: f64) {
        if pts.len() < 2 {
            return;
        }
        let mut coords = Vec::with_capacity(pts.len());
        for &p in pts {
            let q = plane(p);
            self.see(q);
            let (x, y) = Self::xy(q);
            coords.push(format!("{x:.2},{y:.2}"));
        }
        let _ = writeln!(
            self.body,
            "<polyline points=\"{}\" fill=\"none\" stroke=\"{stroke}\" stroke-width=\"{width:.2}\" stroke-linejoin=\"round\"/>",
            coords.join(" ")
        );
    }

    fn circle(&mut self, p: Point, fill: &str, title: &str) {
        let q = plane(p);
        self.see(q);
        let (x, y) = Self::xy(q);
        let _ = writeln!(
            self.body,
            "<circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"{:.2}\" fill=\"{fill}\"><title>{title}</title></circle>",
            BEAD_RADIUS * UNIT
        );
    }

    /// Hexagonal Voronoi cell of a lattice point.
    fn cell(&mut self, p: Point, fill: &str) {
        let (cx, cy) = plane(p);
        self.see((cx, cy));
        let r = 1.0 / 3f64.sqrt();
        let mut coords = Vec::with_capacity(6);
        for k in 0..6 {
            let a = std::f64::consts::PI / 6.0 + k as f64 * std::f64::consts::PI / 3.0;
            let (x, y) = Self::xy((cx + r * a.cos(), cy + r * a.sin()));
            coords.push(format!("{x:.2},{y:.2}"));
        }
        let _ = writeln!(self.body, "<polygon points=\"{}\" fill=\"{fill}\" fill-opacity=\"{SHAPE_OPACITY:.2}\"/>", coords.join(" "));
    }

    fn finish(self) -> String {
        let (min, max) = if self.empty { ((0.0, 0.0), (0.0, 0.0)) } else { (self.min, self.max) };
        let x = (min.0 - MARGIN) * UNIT;
        let y = -(max.1 + MARGIN) * UNIT;
        let w = (max.0 - min.0 + 2.0 * MARGIN) * UNIT;
        let h = (max.1 - min.1 + 2.0 * MARGIN) * UNIT;
        let mut s = String::new();
        let _ = writeln!(
            s,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{x:.2} {y:.2} {w:.2} {h:.2}\" width=\"{w:.0}\" height=\"{h:.0}\">"
        );
        let _ = writeln!(s, "<rect x=\"{x:.2}\" y=\"{y:.2}\" width=\"{w:.2}\" height=\"{h:.2}\" fill=\"white\"/>");
        s.push_str(&self.body);
        s.push_str("</svg>\n");
        s
    }
}

fn draw_conformation(c: &mut Canvas, dump: &ConformationDump, seed_len: usize) {
    c.polyline(&dump.positions, BACKBONE, 3.0);
    for &(i, j) in &dump.bonds {
        c.line(dump.positions[i], dump.positions[j], BOND, 2.0, true);
    }
    for (k, (&p, t)) in dump.positions.iter().zip(&dump.types).enumerate() {
        let fill = if k < seed_len { SEED_FILL } else { BEAD_FILL };
        c.circle(p, fill, &format!("{k} {t}"));
    }
}

/// Beads as circles, the backbone as a polyline, bonds dashed. The first
/// `seed_len` beads are drawn in the seed colour.
pub fn svg_conformation(dump: &ConformationDump, seed_len: usize) -> String {
    let mut c = Canvas::new();
    draw_conformation(&mut c, dump, seed_len);
    c.finish()
}

/// Shapes as translucent cells, optionally with a conformation on top.
pub fn svg_shapes(seq: &ShapeSequence, overlay: Option<(&ConformationDump, usize)>) -> String {
    let mut c = Canvas::new();
    for s in &seq.shapes {
        let fill = match s.kind {
            ShapeKind::Point => POINT_SHAPE_FILL,
            ShapeKind::Segment => SEGMENT_SHAPE_FILL,
        };
        for &p in &s.points {
            c.cell(p, fill);
        }
    }
    if let Some((dump, seed_len)) = overlay {
        draw_conformation(&mut c, dump, seed_len);
    }
    c.finish()
}

/// The curve's vertices joined by a polyline (rhombus coordinates are
/// drawn slanted, as axial coordinates).
pub fn svg_curve(curve: &Curve) -> String {
    let mut c = Canvas::new();
    c.polyline(&curve.vertices, CURVE_STROKE, 2.0);
    c.finish()
}

/// Text grid: row `y` from top to bottom, column `2x + y`, so that
/// lattice neighbours stay adjacent on screen.
fn ascii(points: impl Iterator<Item = (Point, char)>) -> String {
    let cells: Vec<(Point, char)> = points.collect();
    if cells.is_empty() {
        return String::new();
    }
    let col = |p: Point| 2 * p.x + p.y;
    let min_c = cells.iter().map(|c| col(c.0)).min().unwrap_or(0);
    let max_c = cells.iter().map(|c| col(c.0)).max().unwrap_or(0);
    let min_y = cells.iter().map(|c| c.0.y).min().unwrap_or(0);
    let max_y = cells.iter().map(|c| c.0.y).max().unwrap_or(0);
    let width = (max_c - min_c + 1) as usize;
    let mut grid = vec![vec![' '; width]; (max_y - min_y + 1) as usize];
    for (p, ch) in cells {
        grid[(max_y - p.y) as usize][(col(p) - min_c) as usize] = ch;
    }
    let mut s = String::new();
    for row in grid {
        let line: String = row.into_iter().collect();
        s.push_str(line.trim_end());
        s.push('\n');
    }
    s
}

/// Each bead shown by the first character of its type; seed beads as `#`.
pub fn ascii_conformation(dump: &ConformationDump, seed_len: usize) -> String {
    ascii(dump.positions.iter().zip(&dump.types).enumerate().map(|(k, (&p, t))| {
        (p, if k < seed_len { '#' } else { t.chars().next().unwrap_or('?') })
    }))
}

/// Point shapes as `o`, segment shapes as `:`.
pub fn ascii_shapes(seq: &ShapeSequence) -> String {
    ascii(seq.shapes.iter().flat_map(|s| {
        let ch = if s.kind == ShapeKind::Point { 'o' } else { ':' };
        s.points.iter().map(move |&p| (p, ch))
    }))
}

pub fn ascii_curve(curve: &Curve) -> String {
    ascii(curve.vertices.iter().map(|&p| (p, '*')))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dump(n: usize) -> ConformationDump {
        ConformationDump {
            positions: (0..n as i32).map(|x| Point::new(x, 0)).collect(),
            types: vec!["a".into(); n],
            bonds: Vec::new(),
        }
    }

    #[test]
    fn single_bead() {
        let s = svg_conformation(&dump(1), 0);
        assert_eq!(s.matches("<circle").count(), 1);
        assert_eq!(s.matches("<line").count() + s.matches("<polyline").count(), 0);
    }

    #[test]
    fn counts_and_determinism() {
        let mut d = dump(5);
        d.positions[3] = Point::new(1, 1);
        d.positions[4] = Point::new(0, 1);
        d.bonds = vec![(1, 3), (0, 4)];
        let s = svg_conformation(&d, 2);
        assert_eq!(s.matches("<circle").count(), 5);
        assert_eq!(s.matches("<polyline").count(), 1);
        assert_eq!(s.matches("stroke-dasharray").count(), 2);
        assert_eq!(s.matches(SEED_FILL).count(), 2);
        assert_eq!(s, svg_conformation(&d, 2));
    }

    #[test]
    fn ascii_layout() {
        let d = ConformationDump {
            positions: vec![Point::new(0, 0), Point::new(1, 0), Point::new(0, 1)],
            types: vec!["a".into(), "b".into(), "c".into()],
            bonds: vec![],
        };
        assert_eq!(ascii_conformation(&d, 0), " c\na b\n");
    }
}
