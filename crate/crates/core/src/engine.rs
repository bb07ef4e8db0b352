//! Delay-δ stabilization and folding.
//!
//! A step places bead `i + 1` at every free neighbor of the head, with every
//! admissible subset of interactions, and scores each choice by the best
//! energy reachable with up to `δ - 1` further nascent beads. The argmin
//! choices are compared; a unique one is stabilized, several form a tie.
//!
//! The lookahead is an exhaustive depth-first search with branch-and-bound:
//! each remaining bead can add at most `min(α, 5)` interactions, and a
//! branch is cut only when that bound cannot reach the value still needed.
//! Cuts never remove a member of an argmin set.

use crate::system::{BeadType, Configuration, OritatamiSystem, Ruleset};
use crate::Point;

/// A position for the next bead together with its interactions.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Placement {
    pub position: Point,
    /// Earlier bead indices, ascending.
    pub partners: Vec<usize>,
}

/// A placement and the best total energy its lookahead reaches.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Candidate {
    pub placement: Placement,
    pub energy: i64,
}

/// How ties between argmin placements are judged.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum TieMode {
    /// Position and interaction set must both be unique.
    #[default]
    Conformation,
    /// Only the position must be unique; among the interaction sets at that
    /// position the largest, then lexicographically smallest, is kept.
    Position,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Step {
    Stabilized(Candidate),
    /// Every argmin member, sorted by placement.
    Tie(Vec<Candidate>),
    DeadEnd,
}

/// Placements of bead type `bead` at the head of `conf`.
pub fn placements(conf: &Configuration, bead: BeadType, ruleset: &Ruleset, arity: usize) -> Vec<Placement> {
    let mut out = Vec::new();
    let Some(head) = conf.head() else {
        return out;
    };
    for p in head.neighbors() {
        if conf.occupant(p).is_some() {
            continue;
        }
        let eligible = eligible_partners(conf, p, bead, ruleset, arity);
        for mask in 0u32..(1 << eligible.len()) {
            if mask.count_ones() as usize > arity {
                continue;
            }
            let mut partners: Vec<usize> =
                (0..eligible.len()).filter(|&k| mask & (1 << k) != 0).map(|k| eligible[k]).collect();
            partners.sort_unstable();
            out.push(Placement { position: p, partners });
        }
    }
    out
}

/// All single-bead elongations of `conf` by `bead`.
pub fn elongations(conf: &Configuration, bead: BeadType, ruleset: &Ruleset, arity: usize) -> Vec<Configuration> {
    placements(conf, bead, ruleset, arity)
        .into_iter()
        .map(|pl| {
            let mut c = conf.clone();
            c.push(pl.position, bead, &pl.partners);
            c
        })
        .collect()
}

/// Beads a new bead at `p` may bond with: adjacent, not the current head,
/// rule-compatible and below arity.
fn eligible_partners(conf: &Configuration, p: Point, bead: BeadType, ruleset: &Ruleset, arity: usize) -> Vec<usize> {
    let head = conf.len() - 1;
    let mut out = Vec::new();
    for q in p.neighbors() {
        if let Some(k) = conf.occupant(q) {
            if k < head && conf.degree(k) < arity && ruleset.allows(conf.beads()[k], bead) {
                out.push(k);
            }
        }
    }
    out
}

struct Lookahead<'a> {
    conf: Configuration,
    sys: &'a OritatamiSystem,
    per_bead: i64,
}

impl<'a> Lookahead<'a> {
    fn new(conf: &Configuration, sys: &'a OritatamiSystem) -> Self {
        Lookahead { conf: conf.clone(), sys, per_bead: sys.arity.min(5) as i64 }
    }

    /// Most interactions reachable by adding up to `remaining` beads from
    /// global index `next`. Exact whenever the result is at least `need`.
    fn best_gain(&mut self, next: usize, remaining: usize, need: i64) -> i64 {
        let mut best = 0;
        if remaining == 0 {
            return best;
        }
        let Some(bead) = self.sys.transcript_bead(next) else {
            return best;
        };
        let arity = self.sys.arity;
        let head = self.conf.head().expect("configuration is nonempty");
        let rest_bound = (remaining as i64 - 1) * self.per_bead;
        for p in head.neighbors() {
            if self.conf.occupant(p).is_some() {
                continue;
            }
            let eligible = eligible_partners(&self.conf, p, bead, &self.sys.ruleset, arity);
            let here = eligible.len().min(arity) as i64;
            if here + rest_bound <= best || here + rest_bound < need {
                continue;
            }
            if remaining == 1 {
                best = best.max(here);
                continue;
            }
            for mask in 0u32..(1 << eligible.len()) {
                let size = mask.count_ones() as i64;
                if size as usize > arity || size + rest_bound <= best || size + rest_bound < need {
                    continue;
                }
                let partners: Vec<usize> =
                    (0..eligible.len()).filter(|&k| mask & (1 << k) != 0).map(|k| eligible[k]).collect();
                self.conf.push(p, bead, &partners);
                let sub_need = need.max(best + 1) - size;
                let v = size + self.best_gain(next + 1, remaining - 1, sub_need);
                self.conf.pop();
                best = best.max(v);
            }
        }
        best
    }

    /// Gain of `placement` plus its best continuation, exact when at least `need`.
    fn score(&mut self, placement: &Placement, bead: BeadType, need: i64) -> i64 {
        let size = placement.partners.len() as i64;
        let next = self.conf.len() + 1;
        self.conf.push(placement.position, bead, &placement.partners);
        let v = size + self.best_gain(next, self.sys.delay - 1, need.saturating_sub(size));
        self.conf.pop();
        v
    }
}

/// Exact lookahead energy of every placement of the next bead, without
/// cross-candidate pruning. Useful for inspection and testing.
pub fn evaluate_candidates(conf: &Configuration, sys: &OritatamiSystem) -> Vec<Candidate> {
    let Some(bead) = sys.transcript_bead(conf.len()) else {
        return Vec::new();
    };
    let base = conf.bond_count() as i64;
    let mut la = Lookahead::new(conf, sys);
    placements(conf, bead, &sys.ruleset, sys.arity)
        .into_iter()
        .map(|pl| {
            let gain = la.score(&pl, bead, i64::MIN);
            Candidate { placement: pl, energy: -(base + gain) }
        })
        .collect()
}

/// Stabilize the bead following `conf` (global index `conf.len()`).
pub fn stabilize_next(conf: &Configuration, sys: &OritatamiSystem, mode: TieMode) -> Step {
    let Some(bead) = sys.transcript_bead(conf.len()) else {
        return Step::DeadEnd;
    };
    let options = placements(conf, bead, &sys.ruleset, sys.arity);
    if options.is_empty() {
        return Step::DeadEnd;
    }
    let base = conf.bond_count() as i64;
    let mut la = Lookahead::new(conf, sys);
    let rest_bound = (sys.delay as i64 - 1) * la.per_bead;
    let mut best = i64::MIN;
    let mut argmin: Vec<Placement> = Vec::new();
    for pl in options {
        if pl.partners.len() as i64 + rest_bound < best {
            continue;
        }
        let v = la.score(&pl, bead, best);
        if v > best {
            best = v;
            argmin.clear();
        }
        if v == best {
            argmin.push(pl);
        }
    }
    argmin.sort();
    let energy = -(base + best);
    let mut members: Vec<Candidate> =
        argmin.into_iter().map(|placement| Candidate { placement, energy }).collect();
    if members.len() == 1 {
        return Step::Stabilized(members.pop().unwrap());
    }
    if mode == TieMode::Position && members.iter().all(|m| m.placement.position == members[0].placement.position) {
        members.sort_by(|a, b| {
            b.placement.partners.len().cmp(&a.placement.partners.len()).then(a.placement.partners.cmp(&b.placement.partners))
        });
        return Step::Stabilized(members.swap_remove(0));
    }
    Step::Tie(members)
}

/// One stabilized bead.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TraceStep {
    /// Global bead index (seed beads first).
    pub index: usize,
    pub bead: BeadType,
    pub position: Point,
    pub partners: Vec<usize>,
    /// Energy of the whole configuration once this bead is stabilized.
    pub energy: i64,
    /// Best lookahead energy that selected this placement.
    pub lookahead_energy: i64,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum FoldOutcome {
    /// A finite transcript was fully folded.
    Terminal,
    /// Several argmin placements for the bead at `index`.
    Nondeterministic { index: usize, candidates: Vec<Candidate> },
    /// No free neighbor for the bead at `index`.
    Blocked { index: usize },
    /// `max_beads` transcript beads were stabilized.
    StepLimit,
}

#[derive(Clone, Debug)]
pub struct FoldResult {
    pub outcome: FoldOutcome,
    pub configuration: Configuration,
    pub seed_len: usize,
    pub trace: Vec<TraceStep>,
}

impl FoldResult {
    pub fn is_deterministic(&self) -> bool {
        !matches!(self.outcome, FoldOutcome::Nondeterministic { .. })
    }

    /// Number of transcript beads stabilized.
    pub fn folded(&self) -> usize {
        self.trace.len()
    }
}

/// Fold up to `max_beads` transcript beads.
pub fn fold(sys: &OritatamiSystem, max_beads: usize, mode: TieMode) -> FoldResult {
    let mut conf = sys.seed.clone();
    let seed_len = conf.len();
    let mut trace = Vec::new();
    let outcome = loop {
        let index = conf.len();
        if sys.transcript_bead(index).is_none() {
            break FoldOutcome::Terminal;
        }
        if trace.len() >= max_beads {
            break FoldOutcome::StepLimit;
        }
        match stabilize_next(&conf, sys, mode) {
            Step::Stabilized(c) => {
                let bead = sys.transcript_bead(index).expect("checked above");
                conf.push(c.placement.position, bead, &c.placement.partners);
                trace.push(TraceStep {
                    index,
                    bead,
                    position: c.placement.position,
                    partners: c.placement.partners,
                    energy: crate::system::energy(&conf),
                    lookahead_energy: c.energy,
                });
            }
            Step::Tie(candidates) => break FoldOutcome::Nondeterministic { index, candidates },
            Step::DeadEnd => break FoldOutcome::Blocked { index },
        }
    };
    FoldResult { outcome, configuration: conf, seed_len, trace }
}
