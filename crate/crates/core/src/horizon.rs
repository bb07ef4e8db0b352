//! Event horizons: the part of a configuration that can influence the
//! stabilization of a bead.
//!
//! The nascent chain of a delay-δ system stays within hex distance δ of the
//! previously stabilized bead, so only beads within distance δ + 1 of it can
//! bond with or block the chain. A horizon records those beads relative to
//! the anchor, their residual arities, their path order, and the transcript
//! beads still to come, then canonicalizes the lot.

use std::collections::BTreeSet;

use crate::error::HorizonError;
use crate::lattice::{canonicalize, hex_distance, Canonical, Isometry};
use crate::system::{BeadType, Configuration, OritatamiSystem};
use crate::Point;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PlacedBead {
    /// Position relative to the anchor.
    pub offset: Point,
    pub bead: BeadType,
    /// Global index in the configuration.
    pub index: usize,
    /// Arity minus the interactions this bead already has.
    pub residual: usize,
}

/// Context for stabilizing one bead.
#[derive(Clone, Debug)]
pub struct EventHorizon {
    /// Global index of the bead being stabilized.
    pub bead_index: usize,
    /// Absolute position of the previous bead.
    pub anchor: Point,
    pub delay: usize,
    pub arity: usize,
    /// In-hexagon beads in path order; the anchor comes last.
    pub placed: Vec<PlacedBead>,
    /// Interactions among placed beads, as indices into `placed`.
    pub bonds: Vec<(usize, usize)>,
    pub phase: usize,
    /// The next `delay` transcript beads (fewer at the end of a finite transcript).
    pub upcoming: Vec<BeadType>,
    canonical: Canonical<i32>,
    key: Vec<u8>,
}

impl EventHorizon {
    /// Congruence-invariant encoding of contents and upcoming beads.
    pub fn canonical_key(&self) -> &[u8] {
        &self.key
    }

    pub fn canonical_hex(&self) -> String {
        crate::lattice::to_hex(&self.key)
    }

    /// Offsets of the placed beads in path order.
    pub fn tail_order(&self) -> impl Iterator<Item = Point> + '_ {
        self.placed.iter().map(|b| b.offset)
    }

    /// Maps absolute positions of this horizon's configuration into the
    /// shared canonical frame.
    pub fn to_frame(&self) -> Isometry<i32> {
        self.canonical.transform.compose(&Isometry::translation(-self.anchor))
    }

    /// The isometry carrying this horizon's configuration onto `other`'s,
    /// when the two horizons are equal.
    pub fn relate(&self, other: &EventHorizon) -> Option<Isometry<i32>> {
        if self.key != other.key || self.phase != other.phase {
            return None;
        }
        Some(other.to_frame().inverse().compose(&self.to_frame()))
    }
}

/// Horizon for stabilizing global bead `i` of `conf` under `sys`.
///
/// Only beads with index below `i` are considered, so `conf` may also be a
/// finished fold.
pub fn extract_horizon(conf: &Configuration, i: usize, sys: &OritatamiSystem) -> Result<EventHorizon, HorizonError> {
    let seed_len = sys.seed.len();
    if i == 0 {
        return Err(HorizonError::NoAnchor(i));
    }
    if i < seed_len {
        return Err(HorizonError::SeedBead { index: i, seed_len });
    }
    if i > conf.len() {
        return Err(HorizonError::BeyondPrefix { index: i, len: conf.len() });
    }
    let anchor = conf.positions()[i - 1];
    let reach = (sys.delay + 1) as i32;
    let mut degree = vec![0usize; i];
    let mut inner_bonds = Vec::new();
    for (a, b) in conf.bonds() {
        if b < i {
            degree[a] += 1;
            degree[b] += 1;
            inner_bonds.push((a, b));
        }
    }
    let mut slot = vec![usize::MAX; i];
    let mut placed = Vec::new();
    for k in 0..i {
        let p = conf.positions()[k];
        if hex_distance(anchor, p) <= reach {
            slot[k] = placed.len();
            placed.push(PlacedBead {
                offset: p - anchor,
                bead: conf.beads()[k],
                index: k,
                residual: sys.arity.saturating_sub(degree[k]),
            });
        }
    }
    let bonds: Vec<(usize, usize)> = inner_bonds
        .into_iter()
        .filter(|&(a, b)| slot[a] != usize::MAX && slot[b] != usize::MAX)
        .map(|(a, b)| (slot[a], slot[b]))
        .collect();
    let t = i - seed_len;
    let phase = sys.transcript.phase(t);
    let upcoming: Vec<BeadType> = (0..sys.delay).map_while(|k| sys.transcript.get(t + k)).collect();

    let offsets: Vec<Point> = placed.iter().map(|b| b.offset).collect();
    let labels: Vec<u32> = placed.iter().map(|b| ((b.bead.0 as u32) << 16) | b.residual.min(0xffff) as u32).collect();
    let canonical = canonicalize(&offsets, &labels, &bonds);
    let mut key = canonical.key.clone();
    key.extend_from_slice(&(upcoming.len() as u32).to_be_bytes());
    for b in &upcoming {
        key.extend_from_slice(&b.0.to_be_bytes());
    }
    Ok(EventHorizon {
        bead_index: i,
        anchor,
        delay: sys.delay,
        arity: sys.arity,
        placed,
        bonds,
        phase,
        upcoming,
        canonical,
        key,
    })
}

/// Equal canonical contents and equal phase.
pub fn horizons_equal(h1: &EventHorizon, h2: &EventHorizon) -> Result<bool, HorizonError> {
    if h1.delay != h2.delay || h1.arity != h2.arity {
        return Err(HorizonError::Mismatch(h1.delay, h2.delay, h1.arity, h2.arity));
    }
    Ok(h1.key == h2.key && h1.phase == h2.phase)
}

/// Union of the horizons of beads `i..=j`, taken at the moment bead `i`
/// is stabilized.
#[derive(Clone, Debug)]
pub struct RangeHorizon {
    pub centers: Vec<Point>,
    pub region: BTreeSet<Point>,
    /// Beads with index below `i` inside the region: `(index, position, type)`.
    pub contents: Vec<(usize, Point, BeadType)>,
}

/// Hexagons of radius δ + 1 around the predecessor of every bead in `i..=j`.
///
/// Predecessor positions are read from `conf` when it holds them (for a
/// finished fold); otherwise the last position in `conf` stands in.
/// Contents are restricted to beads stabilized before `i`.
pub fn range_horizon(conf: &Configuration, i: usize, j: usize, sys: &OritatamiSystem) -> Result<RangeHorizon, HorizonError> {
    if i > j {
        return Err(HorizonError::EmptyRange { start: i, end: j });
    }
    // validates i against the seed and the configuration
    extract_horizon(conf, i, sys)?;
    let reach = (sys.delay + 1) as i32;
    let last = conf.len() - 1;
    let centers: Vec<Point> = (i..=j).map(|k| conf.positions()[(k - 1).min(last)]).collect();
    let mut region = BTreeSet::new();
    for c in &centers {
        region.extend(crate::lattice::HexRegion::new(*c, reach).expect("radius is positive").points());
    }
    let contents = (0..i)
        .filter(|&k| region.contains(&conf.positions()[k]))
        .map(|k| (k, conf.positions()[k], conf.beads()[k]))
        .collect();
    Ok(RangeHorizon { centers, region, contents })
}

/// Whether beads `i` and `j` of `conf` were stabilized congruently under
/// `g`: the position and the earlier interaction partners of `i` map onto
/// those of `j`.
pub fn stabilized_congruently(conf: &Configuration, i: usize, j: usize, g: &Isometry<i32>) -> bool {
    let pos = conf.positions();
    if g.apply(pos[i]) != pos[j] {
        return false;
    }
    let mapped: BTreeSet<Point> = conf.earlier_partners(i).into_iter().map(|k| g.apply(pos[k])).collect();
    let target: BTreeSet<Point> = conf.earlier_partners(j).into_iter().map(|k| pos[k]).collect();
    mapped == target
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{fold, TieMode};
    use crate::system::{Alphabet, Ruleset, Transcript};

    fn pt(x: i32, y: i32) -> Point {
        Point::new(x, y)
    }

    fn sys_with(seed: Configuration, delay: usize) -> OritatamiSystem {
        OritatamiSystem::new(
            Alphabet::new(&["a", "b"]).unwrap(),
            Transcript::cyclic(vec![BeadType(0), BeadType(1)]),
            Ruleset::from_pairs([(BeadType(0), BeadType(1))]),
            delay,
            2,
            seed,
        )
        .unwrap()
    }

    fn line(n: i32) -> Configuration {
        Configuration::new((0..n).map(|x| pt(x, 0)).collect(), (0..n).map(|k| BeadType((k % 2) as u16)).collect(), [])
    }

    #[test]
    fn far_beads_excluded() {
        // delay 2: radius 3; bead 0 at distance 4 from the anchor
        let sys = sys_with(line(5), 2);
        let h = extract_horizon(&sys.seed, 5, &sys).unwrap();
        assert_eq!(h.placed.len(), 4);
        assert!(h.placed.iter().all(|b| b.index >= 1));
        assert_eq!(h.tail_order().last(), Some(pt(0, 0)));
        assert!(h.placed.iter().all(|b| hex_distance(pt(0, 0), b.offset) <= 3));
    }

    #[test]
    fn errors() {
        let sys = sys_with(line(5), 2);
        assert_eq!(extract_horizon(&sys.seed, 0, &sys).unwrap_err(), HorizonError::NoAnchor(0));
        assert!(matches!(extract_horizon(&sys.seed, 3, &sys), Err(HorizonError::SeedBead { .. })));
        assert!(matches!(extract_horizon(&sys.seed, 6, &sys), Err(HorizonError::BeyondPrefix { .. })));
        let other = OritatamiSystem { delay: 3, ..sys.clone() };
        let h1 = extract_horizon(&sys.seed, 5, &sys).unwrap();
        let h2 = extract_horizon(&other.seed, 5, &other).unwrap();
        assert!(horizons_equal(&h1, &h2).is_err());
        assert!(matches!(range_horizon(&sys.seed, 5, 4, &sys), Err(HorizonError::EmptyRange { .. })));
    }

    #[test]
    fn same_context_beyond_the_hexagon_does_not_matter() {
        // two seeds agreeing within radius 3 of the head, differing further out
        let near = [pt(3, 0), pt(4, 0), pt(5, 0), pt(6, 0)];
        let mut a: Vec<Point> = vec![pt(0, 0), pt(1, 0), pt(2, 0)];
        a.extend(near);
        let mut b: Vec<Point> = vec![pt(0, 1), pt(1, 1), pt(2, 1)];
        b.extend(near);
        let beads: Vec<BeadType> = (0..7).map(|k| BeadType((k % 2) as u16)).collect();
        let sa = sys_with(Configuration::new(a, beads.clone(), []), 2);
        let sb = sys_with(Configuration::new(b, beads, []), 2);
        let ha = extract_horizon(&sa.seed, 7, &sa).unwrap();
        let hb = extract_horizon(&sb.seed, 7, &sb).unwrap();
        assert!(horizons_equal(&ha, &hb).unwrap());
        assert_eq!(ha.canonical_hex(), hb.canonical_hex());
    }

    #[test]
    fn rotated_configuration_has_equal_horizon() {
        let sys = sys_with(line(4), 2);
        let r = fold(&sys, 6, TieMode::Conformation);
        let conf = r.configuration.prefix(r.seed_len + r.trace.len());
        let g = Isometry::new(2, false, pt(3, -8));
        let moved = Configuration::new(
            conf.positions().iter().map(|&p| g.apply(p)).collect(),
            conf.beads().to_vec(),
            conf.bonds().collect::<Vec<_>>(),
        );
        let sys2 = OritatamiSystem { seed: moved.prefix(4), ..sys.clone() };
        for i in 4..=conf.len() {
            let h1 = extract_horizon(&conf, i, &sys).unwrap();
            let h2 = extract_horizon(&moved, i, &sys2).unwrap();
            assert!(horizons_equal(&h1, &h1).unwrap());
            assert!(horizons_equal(&h1, &h2).unwrap());
            let rel = h1.relate(&h2).unwrap();
            assert_eq!(rel.apply(h1.anchor), h2.anchor);
        }
    }

    #[test]
    fn range_horizon_basics() {
        let sys = sys_with(line(5), 1);
        let single = range_horizon(&sys.seed, 5, 5, &sys).unwrap();
        let h = extract_horizon(&sys.seed, 5, &sys).unwrap();
        assert_eq!(single.region.len(), 19);
        let inside: BTreeSet<usize> = single.contents.iter().map(|c| c.0).collect();
        let want: BTreeSet<usize> = h.placed.iter().map(|b| b.index).collect();
        assert_eq!(inside, want);
        let wide = range_horizon(&sys.seed, 5, 9, &sys).unwrap();
        assert!(wide.contents.iter().all(|c| c.0 < 5));
        assert_eq!(wide.region, single.region);
    }
}
