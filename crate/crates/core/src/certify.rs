//! Pigeonhole certificates that a cyclic OS cannot draw a curve.
//!
//! For a delay bound `δ(n)`, the maximal event horizon `E(i,n)` of shape
//! pair `S_pl[i]` is the union of hexagons of radius `δ(n)+1` centred on
//! `S_pl[i]` and on the points of `S_l[i-1]` next to `S_p[i]`. Its reach
//! `r_{i,n}` is the earliest pair index it meets, and the dependency depth
//! is `D_{i,n} = max_{1≤j≤i} (j - r_{j,n})`. If `1 + gcd(p_o, p_pl)·5^{D·p_pl} ≤ i`
//! for some `i`, two pairs share their whole context and the curve's turn
//! sequence would be periodic.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;

use crate::embed::{embed_koch, embed_minkowski, ShapeParams, ShapeSequence};
use crate::error::{CertifyError, EmbedError};
use crate::lsystem::{interpret_turtle, min_period, CurveLattice, LSystem, TurtleSemantics};
use crate::Point;

/// `cd·d + cl·l + c`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct AffineBound {
    pub cd: i64,
    pub cl: i64,
    pub c: i64,
}

impl AffineBound {
    pub fn new(cd: i64, cl: i64, c: i64) -> Self {
        AffineBound { cd, cl, c }
    }

    pub fn eval(&self, p: ShapeParams) -> i64 {
        self.cd * p.d as i64 + self.cl * p.l as i64 + self.c
    }
}

/// Upper bounds `δ(n)` on the delay, one per level.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DelayBoundFamily {
    pub curve: String,
    pub levels: BTreeMap<u32, AffineBound>,
}

impl DelayBoundFamily {
    pub fn new(curve: impl Into<String>) -> Self {
        DelayBoundFamily { curve: curve.into(), levels: BTreeMap::new() }
    }

    /// `δ(1) = 3d+3l+1`, `δ(2) = 12d+12l+10`.
    pub fn koch() -> Self {
        DelayBoundFamily::new("koch").with_level(1, AffineBound::new(3, 3, 1)).with_level(2, AffineBound::new(12, 12, 10))
    }

    /// `δ(1) = 3d+3l+4`, `δ(2) = 15d+15l+28`.
    pub fn minkowski() -> Self {
        DelayBoundFamily::new("minkowski").with_level(1, AffineBound::new(3, 3, 4)).with_level(2, AffineBound::new(15, 15, 28))
    }

    pub fn with_level(mut self, n: u32, bound: AffineBound) -> Self {
        self.levels.insert(n, bound);
        self
    }

    pub fn delta(&self, n: u32, p: ShapeParams) -> Result<i64, CertifyError> {
        self.levels.get(&n).map(|b| b.eval(p)).ok_or(CertifyError::MissingLevel(n))
    }

    /// Whether `δ(n)` is positive and strictly increasing over the defined levels.
    pub fn is_increasing(&self, p: ShapeParams) -> bool {
        let v: Vec<i64> = self.levels.values().map(|b| b.eval(p)).collect();
        v.first().is_none_or(|&x| x >= 1) && v.windows(2).all(|w| w[0] < w[1])
    }
}

/// An L-system with its turtle; the turtle's lattice picks the embedding.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CurveSource {
    pub id: String,
    pub lsystem: LSystem,
    pub turtle: TurtleSemantics,
}

impl CurveSource {
    pub fn koch() -> Self {
        CurveSource { id: "koch".into(), lsystem: LSystem::koch(), turtle: TurtleSemantics::koch() }
    }

    pub fn minkowski() -> Self {
        CurveSource { id: "minkowski".into(), lsystem: LSystem::minkowski(), turtle: TurtleSemantics::minkowski() }
    }

    pub fn sequence(&self, depth: u32, params: ShapeParams) -> Result<ShapeSequence, EmbedError> {
        let s = self.lsystem.expand(depth);
        let curve = interpret_turtle(&s, &self.turtle, Point::origin(), 0)
            .map_err(|e| EmbedError::WrongLattice(e.to_string()))?;
        match self.turtle.lattice {
            CurveLattice::Triangular => embed_koch(&curve, params),
            CurveLattice::Rhombus => embed_minkowski(&curve, params),
        }
    }
}

/// Points of a shape sequence bucketed by row `y`, sorted by `x`.
pub struct ShapeIndex {
    rows: HashMap<i32, Vec<(i32, usize)>>,
    last: usize,
}

impl ShapeIndex {
    pub fn new(seq: &ShapeSequence) -> Self {
        let mut rows: HashMap<i32, Vec<(i32, usize)>> = HashMap::new();
        for s in &seq.shapes {
            for p in &s.points {
                rows.entry(p.y).or_default().push((p.x, s.index));
            }
        }
        for r in rows.values_mut() {
            r.sort_unstable();
        }
        ShapeIndex { rows, last: seq.len().saturating_sub(1) }
    }

    /// Shapes with a point in row `y` between `lo` and `hi` inclusive.
    fn scan(&self, y: i32, lo: i32, hi: i32, out: &mut BTreeSet<usize>) {
        if let Some(row) = self.rows.get(&y) {
            let start = row.partition_point(|&(x, _)| x < lo);
            for &(x, k) in &row[start..] {
                if x > hi {
                    break;
                }
                out.insert(k);
            }
        }
    }
}

/// `E(i,n)` as merged `x` intervals per row, with the shapes it meets.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HorizonRegion {
    pub index: usize,
    pub level: u32,
    pub radius: i64,
    pub centers: Vec<Point>,
    pub rows: BTreeMap<i32, Vec<(i32, i32)>>,
    /// Sequence positions of the shapes meeting the region.
    pub shapes: BTreeSet<usize>,
}

impl HorizonRegion {
    /// Pair indices (1-based) of the shapes meeting the region.
    pub fn pair_indices(&self) -> BTreeSet<usize> {
        self.shapes.iter().map(|k| k / 2 + 1).collect()
    }

    /// `r_{i,n}`.
    pub fn reach(&self) -> usize {
        self.shapes.first().map_or(self.index, |k| k / 2 + 1)
    }

    pub fn contains(&self, p: Point) -> bool {
        self.rows.get(&p.y).is_some_and(|iv| iv.iter().any(|&(a, b)| a <= p.x && p.x <= b))
    }

    pub fn len(&self) -> usize {
        self.rows.values().flatten().map(|&(a, b)| (b - a + 1) as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn points(&self) -> impl Iterator<Item = Point> + '_ {
        self.rows.iter().flat_map(|(&y, iv)| iv.iter().flat_map(move |&(a, b)| (a..=b).map(move |x| Point::new(x, y))))
    }
}

/// Centres of the hexagons making up `E(i,n)`.
pub fn horizon_centers(i: usize, seq: &ShapeSequence) -> Result<Vec<Point>, CertifyError> {
    let sp = seq.point_shape(i).ok_or(CertifyError::OutOfRange { index: i, len: seq.pl_count() })?;
    let mut centers: BTreeSet<Point> = sp.points.iter().copied().collect();
    if let Some(sl) = seq.segment_shape(i) {
        centers.extend(sl.points.iter().copied());
    }
    if let Some(prev) = i.checked_sub(1).and_then(|j| seq.segment_shape(j)) {
        centers.extend(prev.points.iter().copied().filter(|p| p.neighbors().iter().any(|q| sp.contains(*q))));
    }
    Ok(centers.into_iter().collect())
}

fn merge(mut iv: Vec<(i32, i32)>) -> Vec<(i32, i32)> {
    iv.sort_unstable();
    let mut out: Vec<(i32, i32)> = Vec::with_capacity(iv.len());
    for (a, b) in iv {
        match out.last_mut() {
            Some(last) if a <= last.1 + 1 => last.1 = last.1.max(b),
            _ => out.push((a, b)),
        }
    }
    out
}

fn region_with(i: usize, level: u32, radius: i64, seq: &ShapeSequence, index: &ShapeIndex) -> Result<HorizonRegion, CertifyError> {
    let centers = horizon_centers(i, seq)?;
    let r = radius as i32;
    let mut raw: BTreeMap<i32, Vec<(i32, i32)>> = BTreeMap::new();
    for c in &centers {
        for dy in -r..=r {
            let (lo, hi) = if dy >= 0 { (-r, r - dy) } else { (-r - dy, r) };
            raw.entry(c.y + dy).or_default().push((c.x + lo, c.x + hi));
        }
    }
    let rows: BTreeMap<i32, Vec<(i32, i32)>> = raw.into_iter().map(|(y, iv)| (y, merge(iv))).collect();
    let mut shapes = BTreeSet::new();
    for (&y, iv) in &rows {
        for &(a, b) in iv {
            index.scan(y, a, b, &mut shapes);
        }
    }
    if shapes.contains(&index.last) {
        return Err(CertifyError::Boundary { index: i, len: seq.pl_count() });
    }
    Ok(HorizonRegion { index: i, level, radius, centers, rows, shapes })
}

/// `E(i,n)` for pair index `i` (1-based).
pub fn horizon_region(i: usize, n: u32, seq: &ShapeSequence, family: &DelayBoundFamily) -> Result<HorizonRegion, CertifyError> {
    let radius = family.delta(n, seq.params)? + 1;
    region_with(i, n, radius, seq, &ShapeIndex::new(seq))
}

/// Reach and depth for `i = 1 ..= end` at one level.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DependencyProfile {
    pub level: u32,
    pub delta: i64,
    pub window: (usize, usize),
    /// Expansion depth at which the intersecting shape sets were stable.
    pub expansion_depth: u32,
    /// `reach[i-1] = r_{i,n}`.
    pub reach: Vec<usize>,
    /// `depth[i-1] = D_{i,n}`.
    pub depth: Vec<usize>,
}

impl DependencyProfile {
    pub fn r(&self, i: usize) -> usize {
        self.reach[i - 1]
    }

    pub fn d(&self, i: usize) -> usize {
        self.depth[i - 1]
    }

    fn in_window(&self) -> &[usize] {
        &self.depth[self.window.0 - 1..self.window.1]
    }

    /// Whether `D_{i,n}` takes one value over the window.
    pub fn is_constant(&self) -> bool {
        let w = self.in_window();
        w.iter().all(|&x| x == w[0])
    }

    pub fn max_depth(&self) -> usize {
        self.in_window().iter().copied().max().unwrap_or(0)
    }

    pub fn min_depth(&self) -> usize {
        self.in_window().iter().copied().min().unwrap_or(0)
    }

    /// Largest `i - r_{i,n}` over the window (the per-index lag).
    pub fn max_lag(&self) -> usize {
        (self.window.0..=self.window.1).map(|i| i - self.r(i)).max().unwrap_or(0)
    }
}

/// Intersecting shape sets and reaches for `i = 1 ..= end` on one sequence.
pub fn region_sets(seq: &ShapeSequence, radius: i64, level: u32, end: usize) -> Result<Vec<BTreeSet<usize>>, CertifyError> {
    let index = ShapeIndex::new(seq);
    (1..=end).map(|i| region_with(i, level, radius, seq, &index).map(|r| r.shapes)).collect()
}

/// Profile from the shape sets of `E(1,n) … E(end,n)`.
pub fn profile_from_sets(level: u32, delta: i64, window: (usize, usize), expansion_depth: u32, sets: &[BTreeSet<usize>]) -> DependencyProfile {
    let mut reach = Vec::with_capacity(sets.len());
    let mut depth = Vec::with_capacity(sets.len());
    let mut running = 0usize;
    for (j0, set) in sets.iter().enumerate() {
        let j = j0 + 1;
        let r = set.first().map_or(j, |k| k / 2 + 1).min(j);
        running = running.max(j - r);
        reach.push(r);
        depth.push(running);
    }
    DependencyProfile { level, delta, window, expansion_depth, reach, depth }
}

fn check_window(window: (usize, usize)) -> Result<(), CertifyError> {
    if window.0 == 0 || window.0 > window.1 {
        return Err(CertifyError::Window { start: window.0, end: window.1 });
    }
    Ok(())
}

/// Deepest expansion tried before giving up.
pub const MAX_EXPANSION_DEPTH: u32 = 12;

/// Dependency profile on the shortest expansion from `start_depth` on whose
/// intersecting shape sets agree with those of the next depth.
pub fn dependency_depth(
    source: &CurveSource,
    params: ShapeParams,
    family: &DelayBoundFamily,
    n: u32,
    window: (usize, usize),
    start_depth: u32,
) -> Result<DependencyProfile, CertifyError> {
    check_window(window)?;
    let delta = family.delta(n, params)?;
    let mut depth = start_depth;
    let mut here = sets_at(source, params, delta, n, window.1, depth);
    while depth < MAX_EXPANSION_DEPTH {
        let next = sets_at(source, params, delta, n, window.1, depth + 1);
        if let (Ok(a), Ok(b)) = (&here, &next) {
            if a == b {
                return Ok(profile_from_sets(n, delta, window, depth, a));
            }
        }
        if let Err(e) = &here {
            if !matches!(e, CertifyError::Boundary { .. } | CertifyError::OutOfRange { .. }) {
                return Err(e.clone());
            }
        }
        here = next;
        depth += 1;
    }
    Err(CertifyError::Unstable(MAX_EXPANSION_DEPTH))
}

fn sets_at(
    source: &CurveSource,
    params: ShapeParams,
    delta: i64,
    n: u32,
    end: usize,
    depth: u32,
) -> Result<Vec<BTreeSet<usize>>, CertifyError> {
    let seq = source.sequence(depth, params)?;
    if seq.pl_count() <= end {
        return Err(CertifyError::OutOfRange { index: end, len: seq.pl_count() });
    }
    region_sets(&seq, delta + 1, n, end)
}

/// `1 + g·5^{D·p_pl}`.
pub fn threshold(g: u64, d: u64, p_pl: u64) -> BigUint {
    let e = u32::try_from(d * p_pl).expect("exponent fits in u32");
    BigUint::one() + BigUint::from(g) * BigUint::from(5u32).pow(e)
}

/// Outcome of the Thm-3 style test at one level.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LevelVerdict {
    pub level: u32,
    pub profile: DependencyProfile,
    /// Smallest window index meeting its own threshold.
    pub window_witness: Option<(usize, BigUint)>,
    /// Threshold implied by a depth that is constant over the window; the
    /// witness index is the threshold itself, beyond the window.
    pub extrapolated: Option<BigUint>,
}

impl LevelVerdict {
    pub fn holds(&self) -> bool {
        self.window_witness.is_some() || self.extrapolated.is_some()
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CertifyInput {
    pub source: CurveSource,
    pub params: ShapeParams,
    pub p_o: u64,
    pub p_pl: u64,
    pub family: DelayBoundFamily,
    pub levels: Vec<u32>,
    pub window: (usize, usize),
    pub start_depth: u32,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CertificateReport {
    pub curve: String,
    pub params: ShapeParams,
    pub p_o: u64,
    pub p_pl: u64,
    pub gcd: u64,
    /// Smallest period of the expanded turn string, if it has one no longer
    /// than half its length.
    pub turn_period: Option<usize>,
    pub levels: Vec<LevelVerdict>,
    /// Some tested level meets the threshold condition.
    pub thm3: bool,
    /// Every tested level meets it.
    pub thm4: bool,
    /// Depth constant over the window at every tested level.
    pub thm5: bool,
}

impl CertificateReport {
    pub fn conclusive(&self) -> bool {
        self.thm3
    }

    /// `key: value` lines, one block per level.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "curve: {}", self.curve);
        let _ = writeln!(s, "d: {}", self.params.d);
        let _ = writeln!(s, "l: {}", self.params.l);
        let _ = writeln!(s, "p_o: {}", self.p_o);
        let _ = writeln!(s, "p_pl: {}", self.p_pl);
        let _ = writeln!(s, "gcd: {}", self.gcd);
        let _ = writeln!(s, "turn-period: {}", self.turn_period.map_or("none".to_string(), |p| p.to_string()));
        for v in &self.levels {
            let p = &v.profile;
            let _ = writeln!(s);
            let _ = writeln!(s, "level: {}", v.level);
            let _ = writeln!(s, "delta: {}", p.delta);
            let _ = writeln!(s, "expansion-depth: {}", p.expansion_depth);
            let _ = writeln!(s, "window: {}..{}", p.window.0, p.window.1);
            let _ = writeln!(s, "reach-lag-max: {}", p.max_lag());
            let _ = writeln!(s, "depth-min: {}", p.min_depth());
            let _ = writeln!(s, "depth-max: {}", p.max_depth());
            let _ = writeln!(s, "depth-constant: {}", p.is_constant());
            match &v.window_witness {
                Some((i, t)) => {
                    let _ = writeln!(s, "witness: {i}");
                    let _ = writeln!(s, "threshold: {t}");
                }
                None => match &v.extrapolated {
                    Some(t) => {
                        let _ = writeln!(s, "witness: {t} (beyond window, depth constant)");
                        let _ = writeln!(s, "threshold: {t}");
                    }
                    None => {
                        let _ = writeln!(s, "witness: none");
                    }
                },
            }
            let _ = writeln!(s, "condition: {}", v.holds());
        }
        let _ = writeln!(s);
        let _ = writeln!(s, "thm3: {}", self.thm3);
        let _ = writeln!(s, "thm4: {}", self.thm4);
        let _ = writeln!(s, "thm5: {}", self.thm5);
        if self.thm5 {
            let _ = writeln!(s, "note: depth constancy holds over the analyzed window only (desk-scale evidence, not a proof for all i)");
        }
        if let Some(p) = self.turn_period {
            let _ = writeln!(s, "note: the expanded turn string has period {p}; the curve may be periodic, no impossibility verdict");
        }
        let _ = writeln!(s, "verdict: {}", if self.thm5 { "impossible (any delay, any period)" } else if self.thm4 { "impossible for the tested delay bounds" } else if self.thm3 { "impossible for some tested delay bound" } else { "inconclusive" });
        s
    }
}

/// Run every requested level and derive the verdicts.
pub fn certify(input: &CertifyInput) -> Result<CertificateReport, CertifyError> {
    if input.p_o == 0 || input.p_pl == 0 {
        return Err(CertifyError::Period);
    }
    check_window(input.window)?;
    let gcd = input.p_o.gcd(&input.p_pl);
    let mut levels = Vec::new();
    for &n in &input.levels {
        let profile = dependency_depth(&input.source, input.params, &input.family, n, input.window, input.start_depth)?;
        let window_witness = (input.window.0..=input.window.1).find_map(|i| {
            let t = threshold(gcd, profile.d(i) as u64, input.p_pl);
            (t <= BigUint::from(i)).then_some((i, t))
        });
        let extrapolated = (window_witness.is_none() && profile.is_constant())
            .then(|| threshold(gcd, profile.d(input.window.1) as u64, input.p_pl));
        levels.push(LevelVerdict { level: n, profile, window_witness, extrapolated });
    }
    let expansion = input.source.lsystem.expand(levels.iter().map(|v| v.profile.expansion_depth).max().unwrap_or(input.start_depth));
    let turn_period = min_period(&expansion, expansion.len() / 2);
    let periodic = turn_period.is_some();
    let thm3 = !periodic && levels.iter().any(LevelVerdict::holds);
    let thm4 = !periodic && !levels.is_empty() && levels.iter().all(LevelVerdict::holds);
    let thm5 = thm4 && levels.iter().all(|v| v.profile.is_constant());
    Ok(CertificateReport {
        curve: input.source.id.clone(),
        params: input.params,
        p_o: input.p_o,
        p_pl: input.p_pl,
        gcd,
        turn_period,
        levels,
        thm3,
        thm4,
        thm5,
    })
}
