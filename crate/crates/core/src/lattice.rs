//! Triangular lattice arithmetic in axial coordinates.
//!
//! Points are `(x, y)` pairs over any signed primitive integer. The six unit
//! offsets, listed counter-clockwise starting east, are
//! `(1,0) (0,1) (-1,1) (-1,0) (0,-1) (1,-1)`; rotating by 60 degrees maps
//! `(x, y)` to `(-y, x + y)` and the reflection swaps the two coordinates.

use std::cmp::Ordering;
use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Neg, Sub};

use num_traits::{Float, NumCast, PrimInt, Signed};

use crate::error::LatticeError;

/// Integer type usable as an axial coordinate.
pub trait Coord: PrimInt + Signed + Hash + fmt::Debug + fmt::Display + Send + Sync + 'static {}

impl<T> Coord for T where T: PrimInt + Signed + Hash + fmt::Debug + fmt::Display + Send + Sync + 'static {}

/// A vertex of the triangular lattice.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct LatticePoint<T> {
    pub x: T,
    pub y: T,
}

/// Unit offsets in counter-clockwise order, starting east.
pub const DIRECTIONS: [(i8, i8); 6] = [(1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1)];

fn lit<T: Coord>(v: i8) -> T {
    <T as NumCast>::from(v).expect("small literal fits every coordinate type")
}

impl<T: Coord> LatticePoint<T> {
    pub fn new(x: T, y: T) -> Self {
        LatticePoint { x, y }
    }

    pub fn origin() -> Self {
        LatticePoint::new(T::zero(), T::zero())
    }

    /// The unit offset with index `k` (taken modulo 6).
    pub fn direction(k: usize) -> Self {
        let (x, y) = DIRECTIONS[k % 6];
        LatticePoint::new(lit(x), lit(y))
    }

    /// Index of `self` among the six unit offsets, if it is one.
    pub fn direction_index(self) -> Option<usize> {
        (0..6).find(|&k| Self::direction(k) == self)
    }

    pub fn neighbors(self) -> [Self; 6] {
        let mut out = [self; 6];
        for (k, slot) in out.iter_mut().enumerate() {
            *slot = self + Self::direction(k);
        }
        out
    }

    pub fn is_adjacent(self, other: Self) -> bool {
        hex_distance(self, other) == T::one()
    }

    /// Rotate about the origin by `k` multiples of 60 degrees counter-clockwise.
    pub fn rotate(self, k: i32) -> Self {
        let mut p = self;
        for _ in 0..k.rem_euclid(6) {
            p = LatticePoint::new(-p.y, p.x + p.y);
        }
        p
    }

    /// Mirror across the line through the origin and `(1, 1)`.
    pub fn reflect(self) -> Self {
        LatticePoint::new(self.y, self.x)
    }

    pub fn scale(self, k: T) -> Self {
        LatticePoint::new(self.x * k, self.y * k)
    }

    /// Euclidean position with unit spacing and a 60 degree basis.
    pub fn to_plane<F: Float>(self) -> (F, F) {
        let x: F = NumCast::from(self.x).expect("coordinate fits in a float");
        let y: F = NumCast::from(self.y).expect("coordinate fits in a float");
        let half = F::from(0.5).unwrap();
        let h = F::from(3.0).unwrap().sqrt() * half;
        (x + y * half, y * h)
    }

    /// Convert to another coordinate width.
    pub fn cast<U: Coord>(self) -> Option<LatticePoint<U>> {
        Some(LatticePoint::new(NumCast::from(self.x)?, NumCast::from(self.y)?))
    }
}

impl<T: Coord> Add for LatticePoint<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        LatticePoint::new(self.x + o.x, self.y + o.y)
    }
}

impl<T: Coord> Sub for LatticePoint<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        LatticePoint::new(self.x - o.x, self.y - o.y)
    }
}

impl<T: Coord> Neg for LatticePoint<T> {
    type Output = Self;
    fn neg(self) -> Self {
        LatticePoint::new(-self.x, -self.y)
    }
}

impl<T: fmt::Display> fmt::Display for LatticePoint<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// The six neighbors of `p`.
pub fn neighbors<T: Coord>(p: LatticePoint<T>) -> [LatticePoint<T>; 6] {
    p.neighbors()
}

/// Shortest-path length between `p` and `q` in the lattice graph.
pub fn hex_distance<T: Coord>(p: LatticePoint<T>, q: LatticePoint<T>) -> T {
    let d = p - q;
    (d.x.abs() + d.y.abs() + (d.x + d.y).abs()) / lit(2)
}

/// A point isometry of the lattice followed by a translation.
///
/// Applied to a point as: reflect (if set), rotate, then translate.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Isometry<T> {
    pub rotation: u8,
    pub reflected: bool,
    pub translation: LatticePoint<T>,
}

impl<T: Coord> Isometry<T> {
    pub fn identity() -> Self {
        Isometry { rotation: 0, reflected: false, translation: LatticePoint::origin() }
    }

    pub fn new(rotation: i32, reflected: bool, translation: LatticePoint<T>) -> Self {
        Isometry { rotation: rotation.rem_euclid(6) as u8, reflected, translation }
    }

    pub fn translation(t: LatticePoint<T>) -> Self {
        Isometry::new(0, false, t)
    }

    /// All twelve isometries fixing the origin.
    pub fn point_group() -> impl Iterator<Item = Self> {
        (0..12).map(|k| Isometry::new(k % 6, k >= 6, LatticePoint::origin()))
    }

    /// The linear part only.
    pub fn apply_linear(&self, p: LatticePoint<T>) -> LatticePoint<T> {
        let p = if self.reflected { p.reflect() } else { p };
        p.rotate(self.rotation as i32)
    }

    pub fn apply(&self, p: LatticePoint<T>) -> LatticePoint<T> {
        self.apply_linear(p) + self.translation
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        // reflect ∘ rotate(b) = rotate(-b) ∘ reflect
        let b = if self.reflected { -(other.rotation as i32) } else { other.rotation as i32 };
        Isometry::new(
            self.rotation as i32 + b,
            self.reflected ^ other.reflected,
            self.apply_linear(other.translation) + self.translation,
        )
    }

    pub fn inverse(&self) -> Self {
        let linear = if self.reflected {
            Isometry::new(self.rotation as i32, true, LatticePoint::origin())
        } else {
            Isometry::new(-(self.rotation as i32), false, LatticePoint::origin())
        };
        Isometry { translation: -linear.apply_linear(self.translation), ..linear }
    }
}

/// All points within hex distance `radius` of `center`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct HexRegion<T> {
    pub center: LatticePoint<T>,
    pub radius: T,
}

impl<T: Coord> HexRegion<T> {
    pub fn new(center: LatticePoint<T>, radius: T) -> Result<Self, LatticeError> {
        if radius < T::zero() {
            return Err(LatticeError::NegativeRadius(radius.to_i64().unwrap_or(i64::MIN)));
        }
        Ok(HexRegion { center, radius })
    }

    pub fn contains(&self, p: LatticePoint<T>) -> bool {
        hex_distance(self.center, p) <= self.radius
    }

    /// `1 + 3r(r + 1)`.
    pub fn len(&self) -> usize {
        let r = self.radius.to_usize().unwrap_or(0);
        1 + 3 * r * (r + 1)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Points in row-major order (by `y`, then `x`).
    pub fn points(&self) -> impl Iterator<Item = LatticePoint<T>> + '_ {
        let r = self.radius;
        num_iter(-r, r).flat_map(move |dy| {
            let lo = (-r).max(-r - dy);
            let hi = r.min(r - dy);
            num_iter(lo, hi).map(move |dx| self.center + LatticePoint::new(dx, dy))
        })
    }
}

fn num_iter<T: Coord>(lo: T, hi: T) -> impl Iterator<Item = T> {
    let mut cur = lo;
    std::iter::from_fn(move || {
        if cur > hi {
            None
        } else {
            let v = cur;
            cur = cur + T::one();
            Some(v)
        }
    })
}

/// Points within hex distance `radius` of `center`, in row-major order.
pub fn hex_region<T: Coord>(center: LatticePoint<T>, radius: T) -> Result<Vec<LatticePoint<T>>, LatticeError> {
    Ok(HexRegion::new(center, radius)?.points().collect())
}

/// Canonical encoding of a decorated point sequence up to congruence.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Canonical<T> {
    pub key: Vec<u8>,
    /// Maps the input points into the canonical frame.
    pub transform: Isometry<T>,
}

impl<T> Canonical<T> {
    pub fn hex(&self) -> String {
        to_hex(&self.key)
    }
}

pub(crate) fn to_hex(bytes: &[u8]) -> String {
    const DIGITS: &[u8; 16] = b"0123456789abcdef";
    let mut s = String::with_capacity(bytes.len() * 2);
    for b in bytes {
        s.push(DIGITS[(b >> 4) as usize] as char);
        s.push(DIGITS[(b & 15) as usize] as char);
    }
    s
}

fn push_coord<T: Coord>(out: &mut Vec<u8>, v: T) {
    let v = v.to_i64().expect("coordinate fits in i64");
    // flipping the sign bit makes byte order agree with numeric order
    out.extend_from_slice(&((v as u64) ^ (1 << 63)).to_be_bytes());
}

/// Canonicalize an ordered point sequence with per-point labels and
/// index-pair bonds.
///
/// Every one of the twelve point isometries is applied, each image is
/// translated so that its lexicographically smallest point sits at the
/// origin, and the smallest serialization wins. Sequence order is kept, so
/// a path and its reversal are generally distinct.
pub fn canonicalize<T: Coord>(points: &[LatticePoint<T>], labels: &[u32], bonds: &[(usize, usize)]) -> Canonical<T> {
    assert_eq!(points.len(), labels.len(), "one label per point");
    let mut bond_list: Vec<(usize, usize)> = bonds.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
    bond_list.sort_unstable();
    bond_list.dedup();

    let mut best: Option<Canonical<T>> = None;
    let mut image = Vec::with_capacity(points.len());
    for g in Isometry::point_group() {
        image.clear();
        image.extend(points.iter().map(|&p| g.apply_linear(p)));
        let min = image.iter().copied().min().unwrap_or_else(LatticePoint::origin);
        let mut key = Vec::with_capacity(4 + points.len() * 20 + bond_list.len() * 8);
        key.extend_from_slice(&(points.len() as u32).to_be_bytes());
        for (p, label) in image.iter().zip(labels) {
            let q = *p - min;
            push_coord(&mut key, q.x);
            push_coord(&mut key, q.y);
            key.extend_from_slice(&label.to_be_bytes());
        }
        for &(a, b) in &bond_list {
            key.extend_from_slice(&(a as u32).to_be_bytes());
            key.extend_from_slice(&(b as u32).to_be_bytes());
        }
        let better = match &best {
            None => true,
            Some(b) => key.cmp(&b.key) == Ordering::Less,
        };
        if better {
            let transform = Isometry { translation: -min, ..g };
            best = Some(Canonical { key, transform });
        }
    }
    best.expect("point group is nonempty")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::{HashMap, HashSet, VecDeque};

    type P = LatticePoint<i32>;

    fn p(x: i32, y: i32) -> P {
        P::new(x, y)
    }

    fn bfs_distances(from: P, limit: i32) -> HashMap<P, i32> {
        let mut dist = HashMap::new();
        dist.insert(from, 0);
        let mut queue = VecDeque::from([from]);
        while let Some(q) = queue.pop_front() {
            let d = dist[&q];
            if d == limit {
                continue;
            }
            for n in q.neighbors() {
                if let std::collections::hash_map::Entry::Vacant(e) = dist.entry(n) {
                    e.insert(d + 1);
                    queue.push_back(n);
                }
            }
        }
        dist
    }

    #[test]
    fn neighbors_of_origin() {
        let got: HashSet<P> = neighbors(p(0, 0)).into_iter().collect();
        let want: HashSet<P> = [p(1, 0), p(0, 1), p(-1, 1), p(-1, 0), p(0, -1), p(1, -1)].into_iter().collect();
        assert_eq!(got, want);
        let shifted: Vec<P> = neighbors(p(2, -1)).to_vec();
        let want: Vec<P> = neighbors(p(0, 0)).iter().map(|&q| q + p(2, -1)).collect();
        assert_eq!(shifted, want);
    }

    #[test]
    fn distance_examples() {
        assert_eq!(hex_distance(p(3, 4), p(3, 4)), 0);
        assert_eq!(hex_distance(p(0, 0), p(1, -1)), 1);
        let bfs = bfs_distances(p(0, 0), 4);
        assert_eq!(bfs[&p(2, -1)], 2);
        assert_eq!(hex_distance(p(0, 0), p(2, -1)), 2);
    }

    #[test]
    fn distance_matches_bfs_in_a_ball() {
        let bfs = bfs_distances(p(0, 0), 6);
        for (q, d) in bfs {
            assert_eq!(hex_distance(p(0, 0), q), d, "at {q}");
        }
    }

    #[test]
    fn region_sizes_match_bfs() {
        for r in 0..=8 {
            let region = hex_region(p(1, -2), r).unwrap();
            let bfs = bfs_distances(p(1, -2), r);
            assert_eq!(region.len(), bfs.len());
            assert_eq!(region.len(), (1 + 3 * r * (r + 1)) as usize);
            assert_eq!(HexRegion::new(p(1, -2), r).unwrap().len(), region.len());
            let set: HashSet<P> = region.into_iter().collect();
            assert!(bfs.keys().all(|q| set.contains(q)));
        }
        assert_eq!(hex_region(p(0, 0), 0).unwrap(), vec![p(0, 0)]);
        assert_eq!(hex_region(p(0, 0), 1).unwrap().len(), 7);
        assert_eq!(hex_region(p(0, 0), 2).unwrap().len(), 19);
    }

    #[test]
    fn negative_radius_rejected() {
        assert!(matches!(hex_region(p(0, 0), -1), Err(LatticeError::NegativeRadius(-1))));
    }

    #[test]
    fn rotation_and_reflection_formulas() {
        assert_eq!(p(1, 0).rotate(1), p(0, 1));
        assert_eq!(p(2, 3).rotate(1), p(-3, 5));
        assert_eq!(p(2, 3).rotate(6), p(2, 3));
        assert_eq!(p(2, 3).reflect(), p(3, 2));
        for k in 0..6 {
            assert_eq!(P::direction(k).rotate(1), P::direction(k + 1));
        }
    }

    #[test]
    fn canonical_examples() {
        let path = [p(0, 0), p(1, 0), p(2, 0), p(2, 1)];
        let labels = [0, 1, 0, 1];
        let base = canonicalize(&path, &labels, &[(0, 2)]);
        let rotated: Vec<P> = path.iter().map(|q| q.rotate(1) + p(5, -7)).collect();
        assert_eq!(canonicalize(&rotated, &labels, &[(0, 2)]).key, base.key);
        let reflected: Vec<P> = path.iter().map(|q| q.reflect()).collect();
        assert_eq!(canonicalize(&reflected, &labels, &[(2, 0)]).key, base.key);

        let straight = [p(0, 0), p(1, 0), p(2, 0)];
        let bent = [p(0, 0), p(1, 0), p(1, 1)];
        let l = [0, 0, 0];
        assert_ne!(canonicalize(&straight, &l, &[]).key, canonicalize(&bent, &l, &[]).key);
        // exhaustive: no isometry image of the bent path equals the straight one up to translation
        for g in Isometry::point_group() {
            let img: Vec<P> = bent.iter().map(|&q| g.apply(q)).collect();
            let t = straight[0] - img[0];
            assert!(img.iter().zip(&straight).any(|(a, b)| *a + t != *b));
        }
    }

    #[test]
    fn reversal_is_not_a_congruence() {
        let path = [p(0, 0), p(1, 0), p(2, 0), p(2, 1)];
        let rev: Vec<P> = path.iter().rev().copied().collect();
        let l = [0, 0, 0, 0];
        assert_ne!(canonicalize(&path, &l, &[]).key, canonicalize(&rev, &l, &[]).key);
    }

    #[test]
    fn canonical_transform_maps_into_frame() {
        let path = [p(3, 1), p(4, 1), p(4, 2), p(3, 3)];
        let c = canonicalize(&path, &[0; 4], &[]);
        let image: Vec<P> = path.iter().map(|&q| c.transform.apply(q)).collect();
        assert_eq!(image.iter().copied().min().unwrap(), p(0, 0));
        assert_eq!(c.hex().len(), c.key.len() * 2);
    }

    fn arb_point() -> impl Strategy<Value = P> {
        (-50i32..50, -50i32..50).prop_map(|(x, y)| p(x, y))
    }

    fn arb_isometry() -> impl Strategy<Value = Isometry<i32>> {
        (0i32..6, any::<bool>(), arb_point()).prop_map(|(r, f, t)| Isometry::new(r, f, t))
    }

    proptest! {
        #[test]
        fn distance_is_a_metric(a in arb_point(), b in arb_point(), c in arb_point()) {
            prop_assert_eq!(hex_distance(a, b), hex_distance(b, a));
            prop_assert!(hex_distance(a, b) >= 0);
            prop_assert!(hex_distance(a, c) <= hex_distance(a, b) + hex_distance(b, c));
        }

        #[test]
        fn neighbors_at_distance_one(a in arb_point()) {
            for n in a.neighbors() {
                prop_assert_eq!(hex_distance(a, n), 1);
            }
        }

        #[test]
        fn isometries_preserve_distance(g in arb_isometry(), a in arb_point(), b in arb_point()) {
            prop_assert_eq!(hex_distance(g.apply(a), g.apply(b)), hex_distance(a, b));
        }

        #[test]
        fn compose_and_inverse(g in arb_isometry(), h in arb_isometry(), a in arb_point()) {
            prop_assert_eq!(g.compose(&h).apply(a), g.apply(h.apply(a)));
            prop_assert_eq!(g.inverse().apply(g.apply(a)), a);
            prop_assert_eq!(g.compose(&g.inverse()), Isometry::identity());
        }

        #[test]
        fn canonical_form_is_congruence_invariant(
            g in arb_isometry(),
            pts in proptest::collection::hash_set(arb_point(), 1..8),
            seed in any::<u32>(),
        ) {
            let pts: Vec<P> = pts.into_iter().collect();
            let labels: Vec<u32> = (0..pts.len() as u32).map(|i| (i.wrapping_mul(seed)) % 3).collect();
            let bonds: Vec<(usize, usize)> = (1..pts.len()).step_by(2).map(|i| (i - 1, i)).collect();
            let moved: Vec<P> = pts.iter().map(|&q| g.apply(q)).collect();
            prop_assert_eq!(canonicalize(&pts, &labels, &bonds).key, canonicalize(&moved, &labels, &bonds).key);
        }
    }
}
