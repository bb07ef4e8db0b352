//! Shape decompositions of curves in the OS lattice and the drawing relation.
//!
//! A curve with vertices `v_1, v_2, …` becomes the sequence
//! `S_p[1], S_l[1], S_p[2], S_l[2], …` of pairwise disjoint point sets.
//! Sequence position `k` holds `S_p[k/2 + 1]` for even `k` and
//! `S_l[(k+1)/2]` for odd `k`.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::engine::FoldResult;
use crate::error::{EmbedError, ShapeViolation};
use crate::lsystem::{Curve, CurveLattice};
use crate::{Point, Transform};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ShapeParams {
    pub d: i32,
    pub l: i32,
}

impl ShapeParams {
    pub fn new(d: i32, l: i32) -> Result<Self, EmbedError> {
        if d < 1 || l < 1 {
            return Err(EmbedError::Params { d, l });
        }
        Ok(ShapeParams { d, l })
    }

    /// Lattice distance in Λ_o between the images of adjacent curve vertices
    /// along one lattice axis: a point shape spans `d` edges and a segment
    /// shape `l` points, plus one step to cross over.
    pub fn stride(&self) -> i32 {
        self.d + self.l + 1
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum ShapeKind {
    Point,
    Segment,
}

impl ShapeKind {
    pub fn name(self) -> &'static str {
        match self {
            ShapeKind::Point => "point",
            ShapeKind::Segment => "segment",
        }
    }

    pub fn at(k: usize) -> Self {
        if k.is_multiple_of(2) {
            ShapeKind::Point
        } else {
            ShapeKind::Segment
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Shape {
    pub kind: ShapeKind,
    /// Position in the sequence.
    pub index: usize,
    /// Sorted, without duplicates.
    pub points: Vec<Point>,
}

impl Shape {
    pub fn new(kind: ShapeKind, index: usize, points: impl IntoIterator<Item = Point>) -> Self {
        let set: BTreeSet<Point> = points.into_iter().collect();
        Shape { kind, index, points: set.into_iter().collect() }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: Point) -> bool {
        self.points.binary_search(&p).is_ok()
    }

    pub fn is_connected(&self) -> bool {
        let Some(&start) = self.points.first() else { return false };
        let mut seen = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(p) = queue.pop_front() {
            for q in p.neighbors() {
                if self.contains(q) && seen.insert(q) {
                    queue.push_back(q);
                }
            }
        }
        seen.len() == self.points.len()
    }
}

#[derive(Clone, Debug)]
pub struct ShapeSequence {
    pub shapes: Vec<Shape>,
    pub params: ShapeParams,
    pub curve: Option<Curve>,
    /// Short description of the construction, recorded in dumps.
    pub geometry: String,
    owner: HashMap<Point, usize>,
}

impl ShapeSequence {
    /// Builds the point index. Points claimed by several shapes keep the
    /// earliest owner; `validate_shape_sequence` reports the overlap.
    pub fn new(shapes: Vec<Shape>, params: ShapeParams, curve: Option<Curve>, geometry: impl Into<String>) -> Self {
        let mut owner = HashMap::new();
        for s in &shapes {
            for &p in &s.points {
                owner.entry(p).or_insert(s.index);
            }
        }
        ShapeSequence { shapes, params, curve, geometry: geometry.into(), owner }
    }

    pub fn len(&self) -> usize {
        self.shapes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.shapes.is_empty()
    }

    /// Shape containing `p`, if any.
    pub fn locate(&self, p: Point) -> Option<usize> {
        self.owner.get(&p).copied()
    }

    /// `S_p[i]`, 1-based.
    pub fn point_shape(&self, i: usize) -> Option<&Shape> {
        i.checked_sub(1).and_then(|k| self.shapes.get(2 * k))
    }

    /// `S_l[i]`, 1-based.
    pub fn segment_shape(&self, i: usize) -> Option<&Shape> {
        i.checked_sub(1).and_then(|k| self.shapes.get(2 * k + 1))
    }

    /// Number of `S_pl` indices (the last one may lack its segment).
    pub fn pl_count(&self) -> usize {
        self.shapes.len().div_ceil(2)
    }

    pub fn total_points(&self) -> usize {
        self.shapes.iter().map(Shape::len).sum()
    }

    /// The same sequence moved by `g`.
    pub fn transformed(&self, g: &Transform) -> ShapeSequence {
        let shapes = self
            .shapes
            .iter()
            .map(|s| Shape::new(s.kind, s.index, s.points.iter().map(|&p| g.apply(p))))
            .collect();
        ShapeSequence::new(shapes, self.params, None, self.geometry.clone())
    }
}

/// Second-neighbour direction of Λ_o matching Koch heading `k`.
fn koch_axis(k: usize) -> Point {
    Point::new(1, 1).rotate(k as i32)
}

/// Image of a Λ_c point: Λ_c is rotated by 30 degrees against Λ_o and
/// scaled so that one Λ_c unit spans `d + l + 1` second-neighbour steps.
pub fn koch_vertex_image(v: Point, params: ShapeParams) -> Point {
    let m = params.stride();
    Point::new(m * (v.x - v.y), m * (v.x + 2 * v.y))
}

/// Point shape of the Koch embedding: hexagon whose sides have `d` edges.
fn koch_point_shape(center: Point, d: i32) -> Vec<Point> {
    crate::lattice::hex_region(center, d).expect("d >= 1")
}

/// Segment shape leaving the origin towards `(1, 1)`. Rows are lines
/// `x + y = f` for `f = d+1 ..= d+1+2l`, centred on the axis `x = y` and
/// alternating `d` and `d + 1` points, starting and ending with `d`.
fn koch_segment_template(d: i32, l: i32) -> Vec<Point> {
    let mut out = Vec::new();
    for t in 0..=2 * l {
        let f = d + 1 + t;
        let count = if t % 2 == 0 { d } else { d + 1 };
        for s in 0..count {
            let g = 1 - count + 2 * s;
            debug_assert_eq!((f + g).rem_euclid(2), 0);
            out.push(Point::new((f + g) / 2, (f - g) / 2));
        }
    }
    out
}

fn unit_heading(curve: &Curve, lattice: CurveLattice) -> Result<Vec<usize>, EmbedError> {
    if curve.lattice != lattice {
        return Err(EmbedError::WrongLattice(format!("expected {lattice:?}, found {:?}", curve.lattice)));
    }
    curve
        .segments()
        .enumerate()
        .map(|(i, (a, b))| lattice.heading_index(b - a).ok_or(EmbedError::NotUnitStep { index: i }))
        .collect()
}

fn finish(shapes: Vec<Shape>, params: ShapeParams, curve: &Curve, geometry: String) -> Result<ShapeSequence, EmbedError> {
    let seq = ShapeSequence::new(shapes, params, Some(curve.clone()), geometry);
    match validate_shape_sequence(&seq) {
        Ok(()) => Ok(seq),
        Err(v) => {
            let first = &v[0];
            let (a, b) = match *first {
                ShapeViolation::Empty(k) | ShapeViolation::Disconnected(k) => (k, k),
                ShapeViolation::Alternation { index, .. } => (index, index),
                ShapeViolation::Overlap { a, b, .. }
                | ShapeViolation::NotAdjacent { a, b }
                | ShapeViolation::Adjacent { a, b } => (a, b),
            };
            Err(EmbedError::Collision { a, b, reason: first.to_string() })
        }
    }
}

/// Embed a curve on the triangular lattice Λ_c into Λ_o.
pub fn embed_koch(curve: &Curve, params: ShapeParams) -> Result<ShapeSequence, EmbedError> {
    ShapeParams::new(params.d, params.l)?;
    let headings = unit_heading(curve, CurveLattice::Triangular)?;
    let template = koch_segment_template(params.d, params.l);
    let mut shapes = Vec::with_capacity(2 * curve.vertices.len());
    for (i, &v) in curve.vertices.iter().enumerate() {
        let c = koch_vertex_image(v, params);
        shapes.push(Shape::new(ShapeKind::Point, 2 * i, koch_point_shape(c, params.d)));
        if let Some(&h) = headings.get(i) {
            debug_assert_eq!(koch_vertex_image(curve.vertices[i + 1], params) - c, koch_axis(h).scale(params.stride()));
            let pts = template.iter().map(|p| c + p.rotate(h as i32));
            shapes.push(Shape::new(ShapeKind::Segment, 2 * i + 1, pts));
        }
    }
    let geometry = format!(
        "koch-hex d={} l={} stride={} sp=hex(radius d) sl=rows(d,d+1,...,d; centred)",
        params.d,
        params.l,
        params.stride()
    );
    finish(shapes, params, curve, geometry)
}

/// Image of a rhombus-lattice point `(x, y)`: the rhombus axes are the Λ_o
/// axes `(1, 0)` and `(0, 1)`, scaled by `d + l`.
pub fn minkowski_vertex_image(v: Point, params: ShapeParams) -> Point {
    v.scale(params.stride())
}

/// `S_p(x, y)`: the rhombus with `d` edges per side whose lowest corner is
/// the vertex image.
pub fn minkowski_point_shape(x: i32, y: i32, params: ShapeParams) -> Vec<Point> {
    let (m, w) = (params.stride(), params.d + 1);
    let mut out = Vec::with_capacity((w * w) as usize);
    for i in 0..w {
        for j in 0..w {
            out.push(Point::new(x * m + i, y * m + j));
        }
    }
    out
}

/// `S_l(x, y, dx, dy)`: the parallelogram of `l` rows, each as wide as a
/// side of `S_p`, leaving vertex `(x, y)` in the unit direction `(dx, dy)`.
pub fn minkowski_segment_shape(x: i32, y: i32, dx: i32, dy: i32, params: ShapeParams) -> Option<Vec<Point>> {
    let (m, w, l) = (params.stride(), params.d + 1, params.l);
    let (bx, by) = (x * m, y * m);
    let mut out = Vec::with_capacity((w * l) as usize);
    for s in 0..l {
        for j in 0..w {
            out.push(match (dx, dy) {
                (1, 0) => Point::new(bx + w + s, by + j),
                (-1, 0) => Point::new(bx - 1 - s, by + j),
                (0, 1) => Point::new(bx + j, by + w + s),
                (0, -1) => Point::new(bx + j, by - 1 - s),
                _ => return None,
            });
        }
    }
    Some(out)
}

/// Embed a curve on the square lattice, read as the rhombus lattice Λ_r, into Λ_o.
pub fn embed_minkowski(curve: &Curve, params: ShapeParams) -> Result<ShapeSequence, EmbedError> {
    ShapeParams::new(params.d, params.l)?;
    let headings = unit_heading(curve, CurveLattice::Rhombus)?;
    let mut shapes = Vec::with_capacity(2 * curve.vertices.len());
    for (i, &v) in curve.vertices.iter().enumerate() {
        shapes.push(Shape::new(ShapeKind::Point, 2 * i, minkowski_point_shape(v.x, v.y, params)));
        if let Some(&h) = headings.get(i) {
            let u = CurveLattice::Rhombus.heading(h);
            let pts = minkowski_segment_shape(v.x, v.y, u.x, u.y, params).expect("unit heading");
            shapes.push(Shape::new(ShapeKind::Segment, 2 * i + 1, pts));
        }
    }
    let geometry = format!("minkowski-rhombus d={} l={} stride={} sp=rhombus(d+1 x d+1) sl=parallelogram(d+1 x l)", params.d, params.l, params.stride());
    finish(shapes, params, curve, geometry)
}

/// Check non-emptiness, connectivity, alternation, disjointness, and that
/// shapes are adjacent exactly when consecutive.
///
/// Two segment shapes meeting at the same curve vertex (positions `k` and
/// `k + 2` with `k` odd) are allowed to touch: adjacency is only demanded
/// between points and segments.
pub fn validate_shape_sequence(seq: &ShapeSequence) -> Result<(), Vec<ShapeViolation>> {
    let mut out = Vec::new();
    for (k, s) in seq.shapes.iter().enumerate() {
        let expected = ShapeKind::at(k);
        if s.kind != expected {
            out.push(ShapeViolation::Alternation { index: k, found: s.kind.name(), expected: expected.name() });
        }
        if s.is_empty() {
            out.push(ShapeViolation::Empty(k));
        } else if !s.is_connected() {
            out.push(ShapeViolation::Disconnected(k));
        }
    }
    let mut owner: HashMap<Point, usize> = HashMap::new();
    for (k, s) in seq.shapes.iter().enumerate() {
        for &p in &s.points {
            if let Some(&a) = owner.get(&p) {
                if a != k {
                    out.push(ShapeViolation::Overlap { a, b: k, point: p.to_string() });
                }
            } else {
                owner.insert(p, k);
            }
        }
    }
    let mut touching = BTreeSet::new();
    for (&p, &a) in &owner {
        for q in p.neighbors() {
            if let Some(&b) = owner.get(&q) {
                if a < b {
                    touching.insert((a, b));
                }
            }
        }
    }
    for k in 1..seq.shapes.len() {
        if !touching.contains(&(k - 1, k)) {
            out.push(ShapeViolation::NotAdjacent { a: k - 1, b: k });
        }
    }
    for &(a, b) in &touching {
        let shared_vertex = a % 2 == 1 && b == a + 2;
        if b != a + 1 && !shared_vertex {
            out.push(ShapeViolation::Adjacent { a, b });
        }
    }
    if out.is_empty() {
        Ok(())
    } else {
        Err(out)
    }
}

/// Where a drawing attempt failed.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct DrawingViolation {
    /// Global index of the first bead that leaves the shape order.
    pub bead: usize,
    /// Shape containing that bead, if any.
    pub shape: Option<usize>,
    /// Shape the bead was allowed to be in (current or next).
    pub expected: usize,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DrawingWitness {
    /// `indices[k]` is the last bead index inside shape `k`.
    pub indices: Vec<usize>,
    pub violation: Option<DrawingViolation>,
    /// Beads per shape over the covered prefix.
    pub counts: Vec<usize>,
}

impl DrawingWitness {
    pub fn is_drawing(&self) -> bool {
        self.violation.is_none()
    }

    /// Bead counts of fully covered shapes of one kind (the last covered
    /// shape may still be filling up and is left out).
    pub fn complete_counts(&self, kind: ShapeKind) -> Vec<usize> {
        let full = self.counts.len().saturating_sub(1);
        (0..full).filter(|&k| ShapeKind::at(k) == kind).map(|k| self.counts[k]).collect()
    }

    /// Whether every fully covered shape of `kind` holds the same number of beads.
    pub fn constant_counts(&self, kind: ShapeKind) -> bool {
        let c = self.complete_counts(kind);
        c.windows(2).all(|w| w[0] == w[1])
    }
}

/// Greedy segmentation of `positions[seed_len..]` into consecutive runs inside
/// `S_0, S_1, …`. Because shapes are disjoint, a witness exists exactly when
/// the shape index along the path starts at 0 and never jumps or goes back.
pub fn verify_positions(positions: &[Point], seed_len: usize, seq: &ShapeSequence) -> DrawingWitness {
    let mut indices: Vec<usize> = Vec::new();
    let mut counts: Vec<usize> = Vec::new();
    let mut violation = None;
    for (b, &p) in positions.iter().enumerate().skip(seed_len) {
        let current = indices.len().checked_sub(1);
        let found = seq.locate(p);
        let ok = match (current, found) {
            (None, Some(0)) => true,
            (Some(c), Some(s)) => s == c || s == c + 1,
            _ => false,
        };
        if !ok {
            let expected = current.map_or(0, |c| c + 1).min(seq.len().saturating_sub(1));
            violation = Some(DrawingViolation { bead: b, shape: found, expected });
            break;
        }
        let s = found.expect("checked");
        if s == indices.len() {
            indices.push(b);
            counts.push(1);
        } else {
            indices[s] = b;
            counts[s] += 1;
        }
    }
    DrawingWitness { indices, violation, counts }
}

/// Check the drawing relation for a fold. Seed beads are exempt.
pub fn verify_drawing(fold: &FoldResult, seq: &ShapeSequence) -> DrawingWitness {
    verify_positions(fold.configuration.positions(), fold.seed_len, seq)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lsystem::{interpret_turtle, LSystem, TurtleSemantics};

    fn pt(x: i32, y: i32) -> Point {
        Point::new(x, y)
    }

    fn koch(n: u32) -> Curve {
        interpret_turtle(&LSystem::koch().expand(n), &TurtleSemantics::koch(), pt(0, 0), 0).unwrap()
    }

    fn minkowski(n: u32) -> Curve {
        interpret_turtle(&LSystem::minkowski().expand(n), &TurtleSemantics::minkowski(), pt(0, 0), 0).unwrap()
    }

    #[test]
    fn koch_shape_sizes() {
        let p = ShapeParams::new(2, 3).unwrap();
        let seq = embed_koch(&koch(1), p).unwrap();
        assert_eq!(seq.point_shape(1).unwrap().len(), 19);
        assert_eq!(seq.segment_shape(1).unwrap().len(), 17);
        for (d, l) in [(1, 1), (2, 3), (3, 4), (4, 2)] {
            assert_eq!(koch_segment_template(d, l).len() as i32, 2 * d * l + d + l);
        }
    }

    #[test]
    fn koch_rows() {
        let t = koch_segment_template(2, 3);
        let mut rows: Vec<(i32, usize)> = Vec::new();
        for p in &t {
            let f = p.x + p.y;
            match rows.iter_mut().find(|r| r.0 == f) {
                Some(r) => r.1 += 1,
                None => rows.push((f, 1)),
            }
        }
        rows.sort();
        let counts: Vec<usize> = rows.iter().map(|r| r.1).collect();
        assert_eq!(counts, vec![2, 3, 2, 3, 2, 3, 2]);
        let set: BTreeSet<Point> = t.iter().copied().collect();
        assert!(t.iter().all(|p| set.contains(&p.reflect())));
    }

    #[test]
    fn koch_embeddings_valid() {
        for (d, l) in [(2, 3), (2, 4), (3, 3), (3, 4)] {
            let p = ShapeParams::new(d, l).unwrap();
            let seq = embed_koch(&koch(3), p).unwrap();
            assert_eq!(seq.len(), 2 * 64 + 1);
        }
        let seq = embed_koch(&koch(2), ShapeParams::new(2, 3).unwrap()).unwrap();
        let points = seq.shapes.iter().filter(|s| s.kind == ShapeKind::Point).count();
        assert_eq!((points, seq.len() - points), (17, 16));
        assert_eq!(seq.total_points(), 17 * 19 + 16 * 17);
    }

    #[test]
    fn minkowski_shapes() {
        let p = ShapeParams::new(2, 3).unwrap();
        assert_eq!(minkowski_point_shape(0, 0, p).len(), 9);
        let up = minkowski_segment_shape(1, 2, 0, 1, p).unwrap();
        assert_eq!(up.len(), 9);
        let base = minkowski_vertex_image(pt(1, 2), p);
        assert!(up.iter().all(|q| q.y > base.y + 2 && q.x >= base.x && q.x < base.x + 3));
        let down = minkowski_segment_shape(1, 3, 0, -1, p).unwrap();
        assert_eq!(up.iter().collect::<BTreeSet<_>>(), down.iter().collect::<BTreeSet<_>>());
        let seq = embed_minkowski(&minkowski(1), p).unwrap();
        assert_eq!(seq.len(), 17);
        for (d, l) in [(2, 3), (2, 4), (3, 3), (3, 4)] {
            embed_minkowski(&minkowski(3), ShapeParams::new(d, l).unwrap()).unwrap();
        }
    }

    #[test]
    fn wrong_lattice_and_params() {
        assert!(matches!(embed_koch(&minkowski(1), ShapeParams { d: 2, l: 3 }), Err(EmbedError::WrongLattice(_))));
        assert_eq!(ShapeParams::new(0, 3), Err(EmbedError::Params { d: 0, l: 3 }));
        assert!(matches!(embed_koch(&koch(1), ShapeParams { d: 2, l: 0 }), Err(EmbedError::Params { .. })));
    }

    #[test]
    fn validation_catches_problems() {
        let p = ShapeParams { d: 1, l: 1 };
        let a = Shape::new(ShapeKind::Point, 0, [pt(0, 0)]);
        let b = Shape::new(ShapeKind::Segment, 1, [pt(1, 0)]);
        let c = Shape::new(ShapeKind::Point, 2, [pt(2, 0)]);
        let ok = ShapeSequence::new(vec![a.clone(), b.clone(), c.clone()], p, None, "");
        assert_eq!(validate_shape_sequence(&ok), Ok(()));

        let touching = Shape::new(ShapeKind::Point, 2, [pt(2, 0), pt(1, 1), pt(0, 1)]);
        let bad = ShapeSequence::new(vec![a.clone(), b.clone(), touching], p, None, "");
        assert!(validate_shape_sequence(&bad).unwrap_err().contains(&ShapeViolation::Adjacent { a: 0, b: 2 }));

        let split = Shape::new(ShapeKind::Segment, 1, [pt(1, 0), pt(5, 5)]);
        let bad = ShapeSequence::new(vec![a.clone(), split, c.clone()], p, None, "");
        assert!(validate_shape_sequence(&bad).unwrap_err().contains(&ShapeViolation::Disconnected(1)));

        let far = Shape::new(ShapeKind::Point, 2, [pt(9, 0)]);
        let bad = ShapeSequence::new(vec![a, b, far], p, None, "");
        assert!(validate_shape_sequence(&bad).unwrap_err().contains(&ShapeViolation::NotAdjacent { a: 1, b: 2 }));
    }

    #[test]
    fn isometry_moves_every_point() {
        let seq = embed_koch(&koch(1), ShapeParams::new(2, 3).unwrap()).unwrap();
        let g = Transform::new(2, true, pt(5, -3));
        let moved = seq.transformed(&g);
        assert_eq!(validate_shape_sequence(&moved), Ok(()));
        for s in &seq.shapes {
            for &p in &s.points {
                assert_eq!(moved.locate(g.apply(p)), Some(s.index));
            }
        }
    }

    /// Three hexagons in a row along the x axis, each of radius 1.
    fn corridor() -> ShapeSequence {
        let shapes = (0..3)
            .map(|k| Shape::new(ShapeKind::at(k), k, crate::lattice::hex_region(pt(3 * k as i32, 0), 1).unwrap()))
            .collect();
        ShapeSequence::new(shapes, ShapeParams { d: 2, l: 1 }, None, "corridor")
    }

    #[test]
    fn monotone_path_is_a_drawing() {
        let seq = corridor();
        assert_eq!(validate_shape_sequence(&seq), Ok(()));
        let path: Vec<Point> = [(-5, 0), (-1, 0), (0, 0), (1, 0), (2, 0), (3, 0), (4, 0), (5, 0), (6, 0)]
            .iter()
            .map(|&(x, y)| pt(x, y))
            .collect();
        let w = verify_positions(&path, 1, &seq);
        assert!(w.is_drawing());
        assert_eq!(w.indices, vec![3, 6, 8]);
        assert_eq!(w.counts, vec![3, 3, 2]);
    }

    #[test]
    fn escaping_bead_is_reported() {
        let seq = corridor();
        let path: Vec<Point> = [(0, 0), (1, 0), (2, 0), (3, 0), (3, 1), (3, 2)].iter().map(|&(x, y)| pt(x, y)).collect();
        let w = verify_positions(&path, 0, &seq);
        assert_eq!(w.violation, Some(DrawingViolation { bead: 5, shape: None, expected: 2 }));
        assert_eq!(w.indices, vec![1, 4]);
    }

    #[test]
    fn empty_cases() {
        let seq = ShapeSequence::new(Vec::new(), ShapeParams { d: 1, l: 1 }, None, "");
        let w = verify_positions(&[pt(0, 0)], 1, &seq);
        assert!(w.is_drawing());
        assert!(w.indices.is_empty());
    }
}
