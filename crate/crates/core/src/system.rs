//! Bead types, rulesets, transcripts and configurations.
//!
//! Indices are 0-based throughout: bead `k` of a configuration sits at
//! `positions()[k]`, and an interaction `(i, j)` needs `i + 2 <= j`.

use std::collections::{BTreeSet, HashMap};

use crate::error::{SystemError, Violation};
use crate::Point;

/// Index of a symbol in an [`Alphabet`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct BeadType(pub u16);

impl BeadType {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Alphabet {
    names: Vec<String>,
    lookup: HashMap<String, BeadType>,
}

impl Alphabet {
    /// Build from symbol names. Repeated names are an error.
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self, String> {
        let mut a = Alphabet::default();
        for n in names {
            a.insert(n.as_ref())?;
        }
        Ok(a)
    }

    pub fn insert(&mut self, name: &str) -> Result<BeadType, String> {
        if self.lookup.contains_key(name) {
            return Err(format!("duplicate symbol '{name}'"));
        }
        let id = BeadType(self.names.len() as u16);
        self.names.push(name.to_string());
        self.lookup.insert(name.to_string(), id);
        Ok(id)
    }

    pub fn get(&self, name: &str) -> Option<BeadType> {
        self.lookup.get(name).copied()
    }

    pub fn name(&self, b: BeadType) -> &str {
        &self.names[b.index()]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn contains(&self, b: BeadType) -> bool {
        b.index() < self.names.len()
    }
}

/// Symmetric set of bead-type pairs that may interact.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Ruleset {
    pairs: BTreeSet<(BeadType, BeadType)>,
}

impl Ruleset {
    pub fn new() -> Self {
        Ruleset::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (BeadType, BeadType)>) -> Self {
        let mut r = Ruleset::new();
        for (a, b) in pairs {
            r.insert(a, b);
        }
        r
    }

    pub fn insert(&mut self, a: BeadType, b: BeadType) {
        self.pairs.insert((a.min(b), a.max(b)));
    }

    pub fn allows(&self, a: BeadType, b: BeadType) -> bool {
        self.pairs.contains(&(a.min(b), a.max(b)))
    }

    /// Normalized unordered pairs, smaller id first.
    pub fn pairs(&self) -> impl Iterator<Item = (BeadType, BeadType)> + '_ {
        self.pairs.iter().copied()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TranscriptKind {
    Finite,
    Cyclic,
}

/// A finite transcript, or the infinite repetition of a period word.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Transcript {
    pub kind: TranscriptKind,
    pub beads: Vec<BeadType>,
}

impl Transcript {
    pub fn finite(beads: Vec<BeadType>) -> Self {
        Transcript { kind: TranscriptKind::Finite, beads }
    }

    pub fn cyclic(period: Vec<BeadType>) -> Self {
        Transcript { kind: TranscriptKind::Cyclic, beads: period }
    }

    /// Bead at transcript position `t`; cyclic transcripts never run out.
    pub fn get(&self, t: usize) -> Option<BeadType> {
        match self.kind {
            TranscriptKind::Finite => self.beads.get(t).copied(),
            TranscriptKind::Cyclic if self.beads.is_empty() => None,
            TranscriptKind::Cyclic => Some(self.beads[t % self.beads.len()]),
        }
    }

    /// `None` for cyclic transcripts.
    pub fn len(&self) -> Option<usize> {
        match self.kind {
            TranscriptKind::Finite => Some(self.beads.len()),
            TranscriptKind::Cyclic => None,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.beads.is_empty()
    }

    /// Period of a cyclic transcript.
    pub fn period(&self) -> Option<usize> {
        match self.kind {
            TranscriptKind::Finite => None,
            TranscriptKind::Cyclic => Some(self.beads.len()),
        }
    }

    /// Phase of transcript position `t`: `t mod period`, or `t` itself
    /// for finite transcripts.
    pub fn phase(&self, t: usize) -> usize {
        match self.period() {
            Some(p) if p > 0 => t % p,
            _ => t,
        }
    }
}

/// A directed lattice path with bead types and interactions.
///
/// The constructor does not validate; see [`Configuration::violations`].
#[derive(Clone, Debug, Default)]
pub struct Configuration {
    positions: Vec<Point>,
    beads: Vec<BeadType>,
    bonds: BTreeSet<(usize, usize)>,
    degree: Vec<usize>,
    occupied: HashMap<Point, usize>,
}

impl PartialEq for Configuration {
    fn eq(&self, other: &Self) -> bool {
        self.positions == other.positions && self.beads == other.beads && self.bonds == other.bonds
    }
}

impl Eq for Configuration {}

impl Configuration {
    pub fn new(positions: Vec<Point>, beads: Vec<BeadType>, bonds: impl IntoIterator<Item = (usize, usize)>) -> Self {
        assert_eq!(positions.len(), beads.len(), "one bead type per position");
        let mut occupied = HashMap::with_capacity(positions.len());
        for (k, &p) in positions.iter().enumerate() {
            occupied.entry(p).or_insert(k);
        }
        let mut c = Configuration {
            degree: vec![0; positions.len()],
            positions,
            beads,
            bonds: BTreeSet::new(),
            occupied,
        };
        for (i, j) in bonds {
            let (i, j) = (i.min(j), i.max(j));
            if c.bonds.insert((i, j)) {
                if let Some(d) = c.degree.get_mut(i) {
                    *d += 1;
                }
                if let Some(d) = c.degree.get_mut(j) {
                    *d += 1;
                }
            }
        }
        c
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn positions(&self) -> &[Point] {
        &self.positions
    }

    pub fn beads(&self) -> &[BeadType] {
        &self.beads
    }

    /// Interactions as sorted `(i, j)` pairs with `i < j`.
    pub fn bonds(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.bonds.iter().copied()
    }

    pub fn bond_count(&self) -> usize {
        self.bonds.len()
    }

    pub fn has_bond(&self, i: usize, j: usize) -> bool {
        self.bonds.contains(&(i.min(j), i.max(j)))
    }

    /// Number of interactions of bead `k`.
    pub fn degree(&self, k: usize) -> usize {
        self.degree[k]
    }

    pub fn head(&self) -> Option<Point> {
        self.positions.last().copied()
    }

    /// Bead index occupying `p`, if any.
    pub fn occupant(&self, p: Point) -> Option<usize> {
        self.occupied.get(&p).copied()
    }

    /// Partners of bead `k` with a smaller index.
    pub fn earlier_partners(&self, k: usize) -> Vec<usize> {
        self.bonds.range((0, k)..=(k, k)).filter(|&&(_, j)| j == k).map(|&(i, _)| i).collect()
    }

    /// Append a bead bonded to `partners` (earlier indices).
    pub fn push(&mut self, p: Point, bead: BeadType, partners: &[usize]) {
        let k = self.positions.len();
        self.positions.push(p);
        self.beads.push(bead);
        self.degree.push(partners.len());
        self.occupied.insert(p, k);
        for &q in partners {
            self.bonds.insert((q, k));
            self.degree[q] += 1;
        }
    }

    /// Undo the last [`push`](Self::push).
    pub fn pop(&mut self) {
        let k = self.positions.len() - 1;
        let partners = self.earlier_partners(k);
        for q in partners {
            self.bonds.remove(&(q, k));
            self.degree[q] -= 1;
        }
        let p = self.positions.pop().expect("nonempty");
        self.beads.pop();
        self.degree.pop();
        if self.occupied.get(&p) == Some(&k) {
            self.occupied.remove(&p);
        }
    }

    /// Prefix of the first `n` beads, keeping interactions among them.
    pub fn prefix(&self, n: usize) -> Configuration {
        Configuration::new(
            self.positions[..n].to_vec(),
            self.beads[..n].to_vec(),
            self.bonds.iter().copied().filter(|&(_, j)| j < n),
        )
    }

    /// Every broken path, interaction, validity or arity invariant.
    pub fn violations(&self, ruleset: &Ruleset, arity: usize) -> Vec<Violation> {
        let mut out = Vec::new();
        let mut seen: HashMap<Point, usize> = HashMap::new();
        for (k, &p) in self.positions.iter().enumerate() {
            if k > 0 && !p.is_adjacent(self.positions[k - 1]) {
                out.push(Violation::NotAdjacent { index: k });
            }
            if let Some(&prev) = seen.get(&p) {
                out.push(Violation::Revisit { index: k, previous: prev });
            } else {
                seen.insert(p, k);
            }
        }
        let n = self.len();
        let mut degree = vec![0usize; n];
        for &(i, j) in &self.bonds {
            if j >= n {
                out.push(Violation::BondOutOfRange { i, j });
                continue;
            }
            if i + 2 > j {
                out.push(Violation::InteractionSpan { i, j });
            }
            if !self.positions[i].is_adjacent(self.positions[j]) {
                out.push(Violation::BondNotAdjacent { i, j });
            }
            if !ruleset.allows(self.beads[i], self.beads[j]) {
                out.push(Violation::InvalidBond { i, j });
            }
            degree[i] += 1;
            degree[j] += 1;
        }
        for (k, &count) in degree.iter().enumerate() {
            if count > arity {
                out.push(Violation::ArityExceeded { index: k, count, arity });
            }
        }
        out
    }
}

/// `U(C) = -|H|`.
pub fn energy(c: &Configuration) -> i64 {
    -(c.bond_count() as i64)
}

/// The 6-tuple: alphabet, transcript, ruleset, delay, arity and seed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OritatamiSystem {
    pub alphabet: Alphabet,
    pub transcript: Transcript,
    pub ruleset: Ruleset,
    pub delay: usize,
    pub arity: usize,
    pub seed: Configuration,
}

impl OritatamiSystem {
    /// Build and validate.
    pub fn new(
        alphabet: Alphabet,
        transcript: Transcript,
        ruleset: Ruleset,
        delay: usize,
        arity: usize,
        seed: Configuration,
    ) -> Result<Self, SystemError> {
        let sys = OritatamiSystem { alphabet, transcript, ruleset, delay, arity, seed };
        validate_system(&sys).map_err(SystemError::Invalid)?;
        Ok(sys)
    }

    /// Transcript bead for global bead index `k` (seed beads come first).
    pub fn transcript_bead(&self, k: usize) -> Option<BeadType> {
        k.checked_sub(self.seed.len()).and_then(|t| self.transcript.get(t))
    }
}

/// Check every invariant of the tuple and its seed.
pub fn validate_system(sys: &OritatamiSystem) -> Result<(), Vec<Violation>> {
    let mut out = Vec::new();
    if sys.delay < 1 {
        out.push(Violation::ZeroDelay);
    }
    if sys.arity < 1 {
        out.push(Violation::ZeroArity);
    }
    if sys.alphabet.is_empty() {
        out.push(Violation::EmptyAlphabet);
    }
    if sys.transcript.is_empty() {
        out.push(Violation::EmptyTranscript);
    }
    if sys.seed.is_empty() {
        out.push(Violation::EmptySeed);
    }
    let mut unknown: BTreeSet<usize> = BTreeSet::new();
    for b in sys.transcript.beads.iter().chain(sys.seed.beads()) {
        if !sys.alphabet.contains(*b) {
            unknown.insert(b.index());
        }
    }
    for (a, b) in sys.ruleset.pairs() {
        for x in [a, b] {
            if !sys.alphabet.contains(x) {
                unknown.insert(x.index());
            }
        }
    }
    out.extend(unknown.into_iter().map(Violation::UnknownBead));
    out.extend(sys.seed.violations(&sys.ruleset, sys.arity));
    if out.is_empty() {
        Ok(())
    } else {
        Err(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(x: i32, y: i32) -> Point {
        Point::new(x, y)
    }

    fn glider_parts() -> (Alphabet, BeadType, BeadType) {
        let alphabet = Alphabet::new(&["a", "A"]).unwrap();
        let a = alphabet.get("a").unwrap();
        let abar = alphabet.get("A").unwrap();
        (alphabet, a, abar)
    }

    fn line(n: i32) -> Vec<Point> {
        (0..n).map(|x| pt(x, 0)).collect()
    }

    #[test]
    fn transcript_indexing() {
        let t = Transcript::cyclic(vec![BeadType(0), BeadType(1)]);
        assert_eq!(t.get(5), Some(BeadType(1)));
        assert_eq!(t.phase(5), 1);
        assert_eq!(t.len(), None);
        let f = Transcript::finite(vec![BeadType(0)]);
        assert_eq!(f.get(1), None);
        assert_eq!(f.phase(7), 7);
    }

    #[test]
    fn energy_is_negative_bond_count() {
        let c = Configuration::new(line(3), vec![BeadType(0); 3], []);
        assert_eq!(energy(&c), 0);
        let pos = vec![pt(0, 0), pt(1, 0), pt(1, 1), pt(0, 1), pt(-1, 1), pt(-1, 0)];
        let c = Configuration::new(pos, vec![BeadType(0); 6], [(0, 2), (0, 3), (0, 4), (0, 5)]);
        assert_eq!(energy(&c), -4);
    }

    #[test]
    fn span_violation() {
        let (alphabet, a, abar) = glider_parts();
        let seed = Configuration::new(line(3), vec![a, abar, a], [(0, 1)]);
        let sys = OritatamiSystem {
            alphabet,
            transcript: Transcript::cyclic(vec![abar]),
            ruleset: Ruleset::from_pairs([(a, abar)]),
            delay: 3,
            arity: 4,
            seed,
        };
        let v = validate_system(&sys).unwrap_err();
        assert!(v.contains(&Violation::InteractionSpan { i: 0, j: 1 }));
        assert!(v.iter().any(|x| x.to_string().contains("interaction span < 2")));
    }

    #[test]
    fn arity_violation() {
        let (alphabet, a, abar) = glider_parts();
        // bead 0 at the center of a ring of its neighbors, bonded to five of them
        let pos = vec![pt(0, 0), pt(1, 0), pt(1, -1), pt(0, -1), pt(-1, 0), pt(-1, 1), pt(0, 1)];
        let beads = vec![a, abar, abar, abar, abar, abar, abar];
        let seed = Configuration::new(pos, beads, [(0, 2), (0, 3), (0, 4), (0, 5), (0, 6)]);
        let sys = OritatamiSystem {
            alphabet,
            transcript: Transcript::cyclic(vec![abar]),
            ruleset: Ruleset::from_pairs([(a, abar)]),
            delay: 3,
            arity: 4,
            seed,
        };
        let v = validate_system(&sys).unwrap_err();
        assert_eq!(v, vec![Violation::ArityExceeded { index: 0, count: 5, arity: 4 }]);
    }

    #[test]
    fn path_and_rule_violations() {
        let (alphabet, a, _) = glider_parts();
        let seed = Configuration::new(vec![pt(0, 0), pt(2, 0), pt(0, 0)], vec![a; 3], [(0, 2)]);
        let sys = OritatamiSystem {
            alphabet,
            transcript: Transcript::finite(vec![a]),
            ruleset: Ruleset::new(),
            delay: 0,
            arity: 1,
            seed,
        };
        let v = validate_system(&sys).unwrap_err();
        assert!(v.contains(&Violation::ZeroDelay));
        assert!(v.contains(&Violation::NotAdjacent { index: 1 }));
        assert!(v.contains(&Violation::Revisit { index: 2, previous: 0 }));
        assert!(v.contains(&Violation::InvalidBond { i: 0, j: 2 }));
        assert!(v.contains(&Violation::BondNotAdjacent { i: 0, j: 2 }));
    }

    #[test]
    fn unknown_symbols_rejected() {
        let (alphabet, a, _) = glider_parts();
        let seed = Configuration::new(line(1), vec![a], []);
        let sys = OritatamiSystem {
            alphabet,
            transcript: Transcript::finite(vec![BeadType(7)]),
            ruleset: Ruleset::new(),
            delay: 1,
            arity: 1,
            seed,
        };
        assert_eq!(validate_system(&sys).unwrap_err(), vec![Violation::UnknownBead(7)]);
    }

    #[test]
    fn push_pop_restores_state() {
        let (_, a, abar) = glider_parts();
        let mut c = Configuration::new(vec![pt(0, 0), pt(1, 0)], vec![a, a], []);
        let before = c.clone();
        c.push(pt(0, 1), abar, &[0]);
        assert_eq!(c.degree(0), 1);
        assert_eq!(c.earlier_partners(2), vec![0]);
        assert_eq!(c.occupant(pt(0, 1)), Some(2));
        c.pop();
        assert_eq!(c, before);
        assert_eq!(c.degree(0), 0);
        assert_eq!(c.occupant(pt(0, 1)), None);
    }

    #[test]
    fn ruleset_is_symmetric() {
        let r = Ruleset::from_pairs([(BeadType(2), BeadType(0))]);
        assert!(r.allows(BeadType(0), BeadType(2)));
        assert!(r.allows(BeadType(2), BeadType(0)));
        assert!(!r.allows(BeadType(0), BeadType(0)));
        assert_eq!(r.pairs().collect::<Vec<_>>(), vec![(BeadType(0), BeadType(2))]);
    }
}
