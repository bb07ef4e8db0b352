//! Deterministic context-free L-systems and turtle interpretation.
//!
//! Curves are drawn either on the triangular lattice (headings are the six
//! axial directions, turns are multiples of 60 degrees) or on a square
//! lattice whose coordinates are later read as rhombus coordinates (four
//! headings, turns of 90 degrees).

use std::collections::{BTreeMap, BTreeSet};

use crate::error::CurveError;
use crate::Point;

/// `G = (V, C, ω, P)` with at most one production per variable.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LSystem {
    pub variables: BTreeSet<char>,
    pub constants: BTreeSet<char>,
    pub axiom: String,
    pub rules: BTreeMap<char, String>,
}

impl LSystem {
    pub fn new(
        variables: impl IntoIterator<Item = char>,
        constants: impl IntoIterator<Item = char>,
        axiom: &str,
        rules: impl IntoIterator<Item = (char, String)>,
    ) -> Result<Self, CurveError> {
        let variables: BTreeSet<char> = variables.into_iter().collect();
        let constants: BTreeSet<char> = constants.into_iter().collect();
        if let Some(&c) = variables.intersection(&constants).next() {
            return Err(CurveError::Overlap(c));
        }
        let known = |c: char| variables.contains(&c) || constants.contains(&c);
        if let Some(c) = axiom.chars().find(|&c| !known(c)) {
            return Err(CurveError::UnknownSymbol(c));
        }
        let mut map = BTreeMap::new();
        for (head, body) in rules {
            if !variables.contains(&head) {
                return Err(CurveError::RuleForConstant(head));
            }
            if let Some(c) = body.chars().find(|&c| !known(c)) {
                return Err(CurveError::UnknownSymbol(c));
            }
            if map.insert(head, body).is_some() {
                return Err(CurveError::DuplicateRule(head));
            }
        }
        Ok(LSystem { variables, constants, axiom: axiom.to_string(), rules: map })
    }

    /// `F → F+F-F+F` from axiom `F`.
    pub fn koch() -> Self {
        LSystem::new(['F'], ['+', '-'], "F", [('F', "F+F-F+F".to_string())]).expect("valid")
    }

    /// `F → F+F-F-FF+F+F-F` from axiom `F`.
    pub fn minkowski() -> Self {
        LSystem::new(['F'], ['+', '-'], "F", [('F', "F+F-F-FF+F+F-F".to_string())]).expect("valid")
    }

    /// One parallel rewrite of `s`.
    pub fn rewrite(&self, s: &str) -> String {
        let mut out = String::with_capacity(s.len() * 4);
        for c in s.chars() {
            match self.rules.get(&c) {
                Some(body) => out.push_str(body),
                None => out.push(c),
            }
        }
        out
    }

    /// `n` parallel rewrites of the axiom.
    pub fn expand(&self, n: u32) -> String {
        let mut s = self.axiom.clone();
        for _ in 0..n {
            s = self.rewrite(&s);
        }
        s
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CurveLattice {
    /// Six headings, 60 degree steps.
    Triangular,
    /// Four headings, 90 degree steps; drawn slanted inside the triangular lattice.
    Rhombus,
}

impl CurveLattice {
    pub fn headings(self) -> usize {
        match self {
            CurveLattice::Triangular => 6,
            CurveLattice::Rhombus => 4,
        }
    }

    pub fn step_degrees(self) -> i32 {
        360 / self.headings() as i32
    }

    /// Unit vector for heading `k`.
    pub fn heading(self, k: usize) -> Point {
        match self {
            CurveLattice::Triangular => Point::direction(k),
            CurveLattice::Rhombus => [Point::new(1, 0), Point::new(0, 1), Point::new(-1, 0), Point::new(0, -1)][k % 4],
        }
    }

    pub fn heading_index(self, v: Point) -> Option<usize> {
        (0..self.headings()).find(|&k| self.heading(k) == v)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TurtleAction {
    Move,
    /// Counter-clockwise turn by this many heading steps (negative turns right).
    Turn(i32),
    NoOp,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TurtleSemantics {
    pub lattice: CurveLattice,
    pub actions: BTreeMap<char, TurtleAction>,
}

impl TurtleSemantics {
    /// `F` moves, `+` turns left 60°, `-` turns right 120°.
    pub fn koch() -> Self {
        TurtleSemantics::from_angles(CurveLattice::Triangular, &['F'], 60, 120, &[]).expect("valid")
    }

    /// `F` moves, `+` turns left 90°, `-` turns right 90°.
    pub fn minkowski() -> Self {
        TurtleSemantics::from_angles(CurveLattice::Rhombus, &['F'], 90, 90, &[]).expect("valid")
    }

    /// `movers` step forward, `+`/`-` turn by the given angles, `idle` do nothing.
    pub fn from_angles(lattice: CurveLattice, movers: &[char], left: i32, right: i32, idle: &[char]) -> Result<Self, CurveError> {
        let step = lattice.step_degrees();
        for angle in [left, right] {
            if angle % step != 0 {
                return Err(CurveError::Angle { angle, step });
            }
        }
        let mut actions = BTreeMap::new();
        for &c in movers {
            actions.insert(c, TurtleAction::Move);
        }
        for &c in idle {
            actions.insert(c, TurtleAction::NoOp);
        }
        actions.insert('+', TurtleAction::Turn(left / step));
        actions.insert('-', TurtleAction::Turn(-right / step));
        Ok(TurtleSemantics { lattice, actions })
    }
}

/// Vertices visited by the turtle. Consecutive vertices are unit apart on
/// the curve's lattice.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Curve {
    pub lattice: CurveLattice,
    pub vertices: Vec<Point>,
    pub turn_string: String,
}

impl Curve {
    pub fn segments(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        self.vertices.windows(2).map(|w| (w[0], w[1]))
    }

    pub fn segment_count(&self) -> usize {
        self.vertices.len().saturating_sub(1)
    }

    pub fn endpoint(&self) -> Point {
        *self.vertices.last().expect("a curve has at least one vertex")
    }

    /// Heading index of every segment.
    pub fn headings(&self) -> Vec<usize> {
        self.segments().map(|(a, b)| self.lattice.heading_index(b - a).expect("unit step")).collect()
    }

    pub fn is_self_avoiding(&self) -> bool {
        let set: BTreeSet<Point> = self.vertices.iter().copied().collect();
        set.len() == self.vertices.len()
    }
}

/// Run the turtle over `s` from `start` facing heading index `heading`.
pub fn interpret_turtle(s: &str, sem: &TurtleSemantics, start: Point, heading: usize) -> Result<Curve, CurveError> {
    let n = sem.lattice.headings() as i32;
    let mut dir = heading as i32 % n;
    let mut at = start;
    let mut vertices = vec![start];
    for c in s.chars() {
        match sem.actions.get(&c) {
            Some(TurtleAction::Move) => {
                at = at + sem.lattice.heading(dir as usize);
                vertices.push(at);
            }
            Some(TurtleAction::Turn(k)) => dir = (dir + k).rem_euclid(n),
            Some(TurtleAction::NoOp) => {}
            None => return Err(CurveError::NoAction(c)),
        }
    }
    Ok(Curve { lattice: sem.lattice, vertices, turn_string: s.to_string() })
}

/// Smallest `p` in `1..=min(max_p, |s|)` with `s[i] = s[i + p]` wherever
/// both are defined.
///
/// This is a period of the given prefix only; the infinite word it was cut
/// from need not have it.
pub fn min_period(s: &str, max_p: usize) -> Option<usize> {
    let b = s.as_bytes();
    (1..=max_p.min(b.len())).find(|&p| (0..b.len() - p).all(|i| b[i] == b[i + p]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(x: i32, y: i32) -> Point {
        Point::new(x, y)
    }

    /// Independent recurrence: L(n) = L(n-1) + (|rule| - 1)·k^(n-1), F-count = k^n.
    fn check_lengths(g: &LSystem, k: usize, depth: u32) {
        let body = g.rules[&'F'].len();
        let mut len = 1usize;
        for n in 0..=depth {
            let s = g.expand(n);
            assert_eq!(s.len(), len, "depth {n}");
            assert_eq!(s.chars().filter(|&c| c == 'F').count(), k.pow(n));
            len += (body - 1) * k.pow(n);
        }
    }

    #[test]
    fn koch_expansion() {
        let g = LSystem::koch();
        assert_eq!(g.expand(0), "F");
        assert_eq!(g.expand(1), "F+F-F+F");
        let s3 = g.expand(3);
        assert_eq!(s3.chars().filter(|&c| c == 'F').count(), 64);
        assert_eq!(s3.len(), 127);
        check_lengths(&g, 4, 6);
    }

    #[test]
    fn minkowski_expansion() {
        let g = LSystem::minkowski();
        assert_eq!(g.expand(1), "F+F-F-FF+F+F-F");
        check_lengths(&g, 8, 4);
    }

    #[test]
    fn expansion_composes() {
        for g in [LSystem::koch(), LSystem::minkowski()] {
            let mut s = g.expand(1);
            s = g.rewrite(&s);
            assert_eq!(s, g.expand(2));
            assert!(g.expand(3).starts_with(&g.expand(2)));
        }
    }

    #[test]
    fn koch_turtle() {
        let c = interpret_turtle("F+F-F+F", &TurtleSemantics::koch(), pt(0, 0), 0).unwrap();
        assert_eq!(c.vertices, vec![pt(0, 0), pt(1, 0), pt(1, 1), pt(2, 0), pt(3, 0)]);
        for n in 0..=5u32 {
            let c = interpret_turtle(&LSystem::koch().expand(n), &TurtleSemantics::koch(), pt(0, 0), 0).unwrap();
            assert_eq!(c.endpoint(), pt(3i32.pow(n), 0));
        }
    }

    #[test]
    fn minkowski_turtle() {
        let c = interpret_turtle("F+F-F-FF+F+F-F", &TurtleSemantics::minkowski(), pt(0, 0), 0).unwrap();
        assert_eq!(c.vertices.len(), 9);
        assert_eq!(c.endpoint(), pt(4, 0));
        for n in 0..=5u32 {
            let c = interpret_turtle(&LSystem::minkowski().expand(n), &TurtleSemantics::minkowski(), pt(0, 0), 0).unwrap();
            assert_eq!(c.endpoint(), pt(4i32.pow(n), 0));
        }
    }

    #[test]
    fn curves_do_not_touch_themselves() {
        let k = interpret_turtle(&LSystem::koch().expand(6), &TurtleSemantics::koch(), pt(0, 0), 0).unwrap();
        assert!(k.is_self_avoiding());
        let m = interpret_turtle(&LSystem::minkowski().expand(4), &TurtleSemantics::minkowski(), pt(0, 0), 0).unwrap();
        assert!(m.is_self_avoiding());
    }

    #[test]
    fn empty_string_and_unknown_symbols() {
        let c = interpret_turtle("", &TurtleSemantics::koch(), pt(2, 3), 0).unwrap();
        assert_eq!(c.vertices, vec![pt(2, 3)]);
        assert_eq!(interpret_turtle("FX", &TurtleSemantics::koch(), pt(0, 0), 0), Err(CurveError::NoAction('X')));
    }

    #[test]
    fn definition_errors() {
        assert_eq!(LSystem::new(['F'], ['F'], "F", []), Err(CurveError::Overlap('F')));
        assert_eq!(LSystem::new(['F'], ['+'], "FX", []), Err(CurveError::UnknownSymbol('X')));
        assert_eq!(LSystem::new(['F'], ['+'], "F", [('+', "F".into())]), Err(CurveError::RuleForConstant('+')));
        assert_eq!(
            LSystem::new(['F'], ['+'], "F", [('F', "F".into()), ('F', "FF".into())]),
            Err(CurveError::DuplicateRule('F'))
        );
        assert_eq!(
            TurtleSemantics::from_angles(CurveLattice::Rhombus, &['F'], 60, 90, &[]),
            Err(CurveError::Angle { angle: 60, step: 90 })
        );
    }

    fn brute_period(s: &str, max_p: usize) -> Option<usize> {
        let c: Vec<char> = s.chars().collect();
        for p in 1..=max_p {
            if p > c.len() {
                break;
            }
            let mut ok = true;
            for i in 0..c.len() {
                if i + p < c.len() && c[i] != c[i + p] {
                    ok = false;
                }
            }
            if ok {
                return Some(p);
            }
        }
        None
    }

    #[test]
    fn periods() {
        assert_eq!(min_period("abab", 4), Some(2));
        assert_eq!(min_period("F+F-F+F", 7), Some(4));
        assert_eq!(brute_period("F+F-F+F", 7), Some(4));
        let k4 = LSystem::koch().expand(4);
        assert_eq!(min_period(&k4, 100), brute_period(&k4, 100));
        assert_eq!(min_period(&k4, 100), None);
        assert_eq!(min_period(&k4, k4.len()), brute_period(&k4, k4.len()));
    }
}
