//! Search small seeds for the (A A A a a a)^ω glider: rule (a, A), delay 3,
//! arity 4. Prints every seed whose fold is deterministic for 60 beads and
//! settles into a translation with period 6.
//!
//! cargo run --release -p oritatami --example glider_search -- [max_seed_len]

use oritatami::engine::{evaluate_candidates, fold, FoldOutcome, TieMode};
use oritatami::system::{Alphabet, BeadType, Configuration, OritatamiSystem, Ruleset, Transcript};
use oritatami::Point;

fn walks(len: usize) -> Vec<Vec<Point>> {
    let mut out = Vec::new();
    let mut path = vec![Point::new(0, 0), Point::new(1, 0)];
    extend(&mut path, len, &mut out);
    out
}

fn extend(path: &mut Vec<Point>, len: usize, out: &mut Vec<Vec<Point>>) {
    if path.len() == len {
        out.push(path.clone());
        return;
    }
    let head = *path.last().unwrap();
    for n in head.neighbors() {
        if !path.contains(&n) {
            path.push(n);
            extend(path, len, out);
            path.pop();
        }
    }
}

fn main() {
    let max_len: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(6);
    let alphabet = Alphabet::new(&["a", "A"]).unwrap();
    let (a, abar) = (BeadType(0), BeadType(1));
    let transcript = Transcript::cyclic(vec![abar, abar, abar, a, a, a]);
    let rules = Ruleset::from_pairs([(a, abar)]);
    for len in 2..=max_len {
        for path in walks(len) {
            for mask in 0u32..(1 << len) {
                let beads: Vec<BeadType> = (0..len).map(|k| if mask & (1 << k) != 0 { abar } else { a }).collect();
                let seed = Configuration::new(path.clone(), beads.clone(), []);
                let sys = OritatamiSystem::new(alphabet.clone(), transcript.clone(), rules.clone(), 3, 4, seed).unwrap();
                let r = fold(&sys, 60, TieMode::Conformation);
                if r.outcome != FoldOutcome::StepLimit {
                    continue;
                }
                let pos = r.configuration.positions();
                let start = len + 12;
                let v = pos[start + 6] - pos[start];
                if v == Point::new(0, 0) || !(start..pos.len() - 6).all(|k| pos[k + 6] - pos[k] == v) {
                    continue;
                }
                let first = evaluate_candidates(&sys.seed, &sys);
                let gains: Vec<i64> = first.iter().map(|c| -c.energy).collect();
                let seed_txt: Vec<String> = path.iter().zip(&beads).map(|(p, b)| format!("{} {} {}", p.x, p.y, alphabet.name(*b))).collect();
                println!("len {len} v {v} first-step gains {gains:?} seed [{}]", seed_txt.join(", "));
            }
        }
    }
}
