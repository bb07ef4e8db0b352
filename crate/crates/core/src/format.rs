//! Line-based text formats.
//!
//! Every file starts with `format-version 1`. Blank lines and everything
//! after `#` are ignored. Errors carry the 1-based line number.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::str::FromStr;

use crate::certify::{AffineBound, CurveSource, DelayBoundFamily};
use crate::embed::{Shape, ShapeKind, ShapeParams, ShapeSequence};
use crate::error::{FormatError, ParseError};
use crate::lsystem::{CurveLattice, LSystem, TurtleSemantics};
use crate::system::{Alphabet, BeadType, Configuration, OritatamiSystem, Ruleset, Transcript, TranscriptKind};
use crate::Point;

pub const FORMAT_VERSION: u32 = 1;

/// Non-empty lines with comments stripped, split into words.
fn lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("");
        let words: Vec<&str> = body.split_whitespace().collect();
        (!words.is_empty()).then_some((i + 1, words))
    })
}

/// Checks the header and returns the remaining lines.
fn body(text: &str) -> Result<Vec<(usize, Vec<&str>)>, ParseError> {
    let mut it = lines(text);
    match it.next() {
        Some((n, w)) if w.first() == Some(&"format-version") => {
            if w.len() != 2 || w[1] != FORMAT_VERSION.to_string() {
                return Err(ParseError::new(n, format!("unsupported format version '{}'", w[1..].join(" "))));
            }
        }
        Some((n, _)) => return Err(ParseError::new(n, "expected 'format-version 1' header")),
        None => return Err(ParseError::new(1, "empty file, expected 'format-version 1' header")),
    }
    Ok(it.collect())
}

fn num<T: FromStr>(line: usize, word: &str, what: &str) -> Result<T, ParseError> {
    word.parse().map_err(|_| ParseError::new(line, format!("malformed {what} '{word}'")))
}

fn arity(line: usize, w: &[&str], n: usize) -> Result<(), ParseError> {
    if w.len() != n + 1 {
        return Err(ParseError::new(line, format!("'{}' takes {n} argument(s), found {}", w[0], w.len() - 1)));
    }
    Ok(())
}

fn once<T>(slot: &mut Option<(usize, T)>, line: usize, name: &str, v: T) -> Result<(), ParseError> {
    if let Some((prev, _)) = slot {
        return Err(ParseError::new(line, format!("duplicate '{name}' (first on line {prev})")));
    }
    *slot = Some((line, v));
    Ok(())
}

/// Parse an OS definition and validate it.
pub fn parse_os_file(text: &str) -> Result<OritatamiSystem, FormatError> {
    let mut alphabet: Option<(usize, Alphabet)> = None;
    let mut delay: Option<(usize, usize)> = None;
    let mut arity_: Option<(usize, usize)> = None;
    let mut transcript: Option<(usize, Transcript)> = None;
    let mut rules = Ruleset::new();
    let mut seed: Vec<(Point, BeadType)> = Vec::new();
    let mut bonds: Vec<(usize, usize)> = Vec::new();
    let sym = |a: &Option<(usize, Alphabet)>, line: usize, s: &str| -> Result<BeadType, ParseError> {
        let (_, a) = a.as_ref().ok_or_else(|| ParseError::new(line, "'alphabet' must come before bead symbols"))?;
        a.get(s).ok_or_else(|| ParseError::new(line, format!("unknown symbol '{s}'")))
    };
    for (n, w) in body(text)? {
        match w[0] {
            "alphabet" => {
                if w.len() < 2 {
                    return Err(ParseError::new(n, "'alphabet' needs at least one symbol").into());
                }
                let a = Alphabet::new(&w[1..]).map_err(|e| ParseError::new(n, e))?;
                once(&mut alphabet, n, "alphabet", a)?;
            }
            "delay" => {
                arity(n, &w, 1)?;
                once(&mut delay, n, "delay", num(n, w[1], "integer")?)?;
            }
            "arity" => {
                arity(n, &w, 1)?;
                once(&mut arity_, n, "arity", num(n, w[1], "integer")?)?;
            }
            "rule" => {
                arity(n, &w, 2)?;
                let (a, b) = (sym(&alphabet, n, w[1])?, sym(&alphabet, n, w[2])?);
                rules.insert(a, b);
            }
            "transcript" => {
                if w.len() < 3 {
                    return Err(ParseError::new(n, "'transcript' needs a kind and at least one symbol").into());
                }
                let beads = w[2..].iter().map(|s| sym(&alphabet, n, s)).collect::<Result<Vec<_>, _>>()?;
                let t = match w[1] {
                    "cyclic" => Transcript::cyclic(beads),
                    "finite" => Transcript::finite(beads),
                    k => return Err(ParseError::new(n, format!("transcript kind must be 'cyclic' or 'finite', found '{k}'")).into()),
                };
                once(&mut transcript, n, "transcript", t)?;
            }
            "seed" => {
                arity(n, &w, 3)?;
                let p = Point::new(num(n, w[1], "coordinate")?, num(n, w[2], "coordinate")?);
                seed.push((p, sym(&alphabet, n, w[3])?));
            }
            "seedbond" => {
                arity(n, &w, 2)?;
                bonds.push((num(n, w[1], "seed index")?, num(n, w[2], "seed index")?));
            }
            d => return Err(ParseError::new(n, format!("unknown directive '{d}'")).into()),
        }
    }
    let end = text.lines().count().max(1);
    let missing = |what: &str| ParseError::new(end, format!("missing '{what}' directive"));
    let (_, alphabet) = alphabet.ok_or_else(|| missing("alphabet"))?;
    let (_, delay) = delay.ok_or_else(|| missing("delay"))?;
    let (_, arity_) = arity_.ok_or_else(|| missing("arity"))?;
    let (_, transcript) = transcript.ok_or_else(|| missing("transcript"))?;
    let (positions, beads): (Vec<Point>, Vec<BeadType>) = seed.into_iter().unzip();
    let conf = Configuration::new(positions, beads, bonds);
    Ok(OritatamiSystem::new(alphabet, transcript, rules, delay, arity_, conf)?)
}

/// Canonical text of a system: fixed directive order, each rule pair once.
pub fn emit_os_file(sys: &OritatamiSystem) -> String {
    let name = |b: BeadType| sys.alphabet.name(b).to_string();
    let mut s = String::new();
    let _ = writeln!(s, "format-version {FORMAT_VERSION}");
    let _ = writeln!(s, "alphabet {}", sys.alphabet.names().join(" "));
    let _ = writeln!(s, "delay {}", sys.delay);
    let _ = writeln!(s, "arity {}", sys.arity);
    for (a, b) in sys.ruleset.pairs() {
        let _ = writeln!(s, "rule {} {}", name(a), name(b));
    }
    let kind = match sys.transcript.kind {
        TranscriptKind::Cyclic => "cyclic",
        TranscriptKind::Finite => "finite",
    };
    let words: Vec<String> = sys.transcript.beads.iter().map(|&b| name(b)).collect();
    let _ = writeln!(s, "transcript {kind} {}", words.join(" "));
    for (p, &b) in sys.seed.positions().iter().zip(sys.seed.beads()) {
        let _ = writeln!(s, "seed {} {} {}", p.x, p.y, name(b));
    }
    for (i, j) in sys.seed.bonds() {
        let _ = writeln!(s, "seedbond {i} {j}");
    }
    s
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CurveKind {
    Koch,
    Minkowski,
    Custom,
}

/// A curve, its embedding parameters and its delay bounds.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CurveSpec {
    pub kind: CurveKind,
    pub source: CurveSource,
    pub iterations: u32,
    pub params: ShapeParams,
    pub family: DelayBoundFamily,
}

impl CurveSpec {
    pub fn builtin(kind: CurveKind, iterations: u32, params: ShapeParams) -> Self {
        let (source, family) = match kind {
            CurveKind::Minkowski => (CurveSource::minkowski(), DelayBoundFamily::minkowski()),
            _ => (CurveSource::koch(), DelayBoundFamily::koch()),
        };
        CurveSpec { kind, source, iterations, params, family }
    }
}

pub const DEFAULT_ITERATIONS: u32 = 3;
pub const DEFAULT_D: i32 = 2;
pub const DEFAULT_L: i32 = 3;

/// Parse a curve spec. Custom systems move on `F` and `G`, turn on `+`
/// and `-`, and ignore every other symbol.
pub fn parse_curve_spec(text: &str) -> Result<CurveSpec, ParseError> {
    let mut kind: Option<(usize, CurveKind)> = None;
    let mut axiom: Option<(usize, String)> = None;
    let mut rules: Vec<(usize, char, String)> = Vec::new();
    let mut left: Option<(usize, i32)> = None;
    let mut right: Option<(usize, i32)> = None;
    let mut lattice: Option<(usize, CurveLattice)> = None;
    let mut iterations: Option<(usize, u32)> = None;
    let mut d: Option<(usize, i32)> = None;
    let mut l: Option<(usize, i32)> = None;
    let mut bounds: Vec<(usize, u32, AffineBound)> = Vec::new();
    for (n, w) in body(text)? {
        match w[0] {
            "lsystem" => {
                arity(n, &w, 1)?;
                let k = match w[1] {
                    "koch" => CurveKind::Koch,
                    "minkowski" => CurveKind::Minkowski,
                    "custom" => CurveKind::Custom,
                    o => return Err(ParseError::new(n, format!("unknown lsystem '{o}'"))),
                };
                once(&mut kind, n, "lsystem", k)?;
            }
            "axiom" => {
                arity(n, &w, 1)?;
                once(&mut axiom, n, "axiom", w[1].to_string())?;
            }
            "rule" => {
                arity(n, &w, 2)?;
                let mut chars = w[1].chars();
                let (Some(head), None) = (chars.next(), chars.next()) else {
                    return Err(ParseError::new(n, format!("rule head must be one symbol, found '{}'", w[1])));
                };
                rules.push((n, head, w[2].to_string()));
            }
            "angle-left" => {
                arity(n, &w, 1)?;
                once(&mut left, n, "angle-left", num(n, w[1], "angle")?)?;
            }
            "angle-right" => {
                arity(n, &w, 1)?;
                once(&mut right, n, "angle-right", num(n, w[1], "angle")?)?;
            }
            "lattice" => {
                arity(n, &w, 1)?;
                let lat = match w[1] {
                    "triangular" => CurveLattice::Triangular,
                    "rhombus" => CurveLattice::Rhombus,
                    o => return Err(ParseError::new(n, format!("lattice must be 'triangular' or 'rhombus', found '{o}'"))),
                };
                once(&mut lattice, n, "lattice", lat)?;
            }
            "iterations" => {
                arity(n, &w, 1)?;
                once(&mut iterations, n, "iterations", num(n, w[1], "iteration count")?)?;
            }
            "shape-d" => {
                arity(n, &w, 1)?;
                once(&mut d, n, "shape-d", num(n, w[1], "integer")?)?;
            }
            "shape-l" => {
                arity(n, &w, 1)?;
                once(&mut l, n, "shape-l", num(n, w[1], "integer")?)?;
            }
            "delay-bound" => {
                arity(n, &w, 4)?;
                let level: u32 = num(n, w[1], "level")?;
                if level == 0 {
                    return Err(ParseError::new(n, "delay-bound levels start at 1"));
                }
                let b = AffineBound::new(num(n, w[2], "coefficient")?, num(n, w[3], "coefficient")?, num(n, w[4], "constant")?);
                bounds.push((n, level, b));
            }
            o => return Err(ParseError::new(n, format!("unknown directive '{o}'"))),
        }
    }
    let end = text.lines().count().max(1);
    let (kline, kind) = kind.ok_or_else(|| ParseError::new(end, "missing 'lsystem' directive"))?;
    let (dn, d) = d.unwrap_or((kline, DEFAULT_D));
    let (ln, l) = l.unwrap_or((kline, DEFAULT_L));
    let params = ShapeParams::new(d, l).map_err(|e| ParseError::new(dn.max(ln), e.to_string()))?;
    let iterations = iterations.map_or(DEFAULT_ITERATIONS, |x| x.1);
    let mut spec = match kind {
        CurveKind::Koch | CurveKind::Minkowski => {
            let custom_line = axiom
                .as_ref()
                .map(|a| a.0)
                .into_iter()
                .chain(rules.first().map(|r| r.0))
                .chain(left.map(|x| x.0))
                .chain(right.map(|x| x.0))
                .chain(lattice.map(|x| x.0))
                .min();
            if let Some(n) = custom_line {
                return Err(ParseError::new(n, "built-in L-systems do not accept axiom, rule, angle or lattice overrides"));
            }
            CurveSpec::builtin(kind, iterations, params)
        }
        CurveKind::Custom => {
            let (_, axiom) = axiom.ok_or_else(|| ParseError::new(kline, "custom lsystem needs 'axiom'"))?;
            let (_, lat) = lattice.ok_or_else(|| ParseError::new(kline, "custom lsystem needs 'lattice'"))?;
            let step = 360 / lat.headings() as i32;
            let left = left.map_or(step, |x| x.1);
            let right = right.map_or(step, |x| x.1);
            let heads: BTreeSet<char> = rules.iter().map(|r| r.1).collect();
            let mut vars: BTreeSet<char> = heads.clone();
            vars.extend(['F', 'G'].into_iter().filter(|c| axiom.contains(*c) || rules.iter().any(|r| r.2.contains(*c))));
            let symbols: BTreeSet<char> = axiom.chars().chain(rules.iter().flat_map(|r| r.2.chars())).collect();
            let consts: BTreeSet<char> = symbols.difference(&vars).copied().collect();
            let ls = LSystem::new(vars.clone(), consts.clone(), &axiom, rules.iter().map(|r| (r.1, r.2.clone())))
                .map_err(|e| ParseError::new(rules.first().map_or(kline, |r| r.0), e.to_string()))?;
            let idle: Vec<char> = vars.iter().chain(consts.iter()).copied().filter(|c| !matches!(c, 'F' | 'G' | '+' | '-')).collect();
            let turtle = TurtleSemantics::from_angles(lat, &['F', 'G'], left, right, &idle)
                .map_err(|e| ParseError::new(kline, e.to_string()))?;
            CurveSpec {
                kind,
                source: CurveSource { id: "custom".into(), lsystem: ls, turtle },
                iterations,
                params,
                family: DelayBoundFamily::new("custom"),
            }
        }
    };
    for (_, level, b) in bounds {
        spec.family.levels.insert(level, b);
    }
    Ok(spec)
}

/// Canonical text of a curve spec.
pub fn emit_curve_spec(spec: &CurveSpec) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "format-version {FORMAT_VERSION}");
    match spec.kind {
        CurveKind::Koch => s.push_str("lsystem koch\n"),
        CurveKind::Minkowski => s.push_str("lsystem minkowski\n"),
        CurveKind::Custom => {
            let t = &spec.source.turtle;
            let step = t.lattice.step_degrees();
            let turn = |c: char| match t.actions.get(&c) {
                Some(crate::lsystem::TurtleAction::Turn(k)) => k.abs() * step,
                _ => step,
            };
            s.push_str("lsystem custom\n");
            let _ = writeln!(s, "lattice {}", if t.lattice == CurveLattice::Triangular { "triangular" } else { "rhombus" });
            let _ = writeln!(s, "axiom {}", spec.source.lsystem.axiom);
            for (h, b) in &spec.source.lsystem.rules {
                let _ = writeln!(s, "rule {h} {b}");
            }
            let _ = writeln!(s, "angle-left {}", turn('+'));
            let _ = writeln!(s, "angle-right {}", turn('-'));
        }
    }
    let _ = writeln!(s, "iterations {}", spec.iterations);
    let _ = writeln!(s, "shape-d {}", spec.params.d);
    let _ = writeln!(s, "shape-l {}", spec.params.l);
    let builtin = match spec.kind {
        CurveKind::Koch => DelayBoundFamily::koch().levels,
        CurveKind::Minkowski => DelayBoundFamily::minkowski().levels,
        CurveKind::Custom => Default::default(),
    };
    for (level, b) in &spec.family.levels {
        if builtin.get(level) != Some(b) {
            let _ = writeln!(s, "delay-bound {level} {} {} {}", b.cd, b.cl, b.c);
        }
    }
    s
}

/// Beads and bonds of a configuration with symbolic bead types.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ConformationDump {
    pub positions: Vec<Point>,
    pub types: Vec<String>,
    pub bonds: Vec<(usize, usize)>,
}

impl ConformationDump {
    pub fn from_configuration(conf: &Configuration, alphabet: &Alphabet) -> Self {
        ConformationDump {
            positions: conf.positions().to_vec(),
            types: conf.beads().iter().map(|&b| alphabet.name(b).to_string()).collect(),
            bonds: conf.bonds().collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn emit(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "format-version {FORMAT_VERSION}");
        for (k, (p, t)) in self.positions.iter().zip(&self.types).enumerate() {
            let _ = writeln!(s, "bead {k} {} {} {t}", p.x, p.y);
        }
        for (i, j) in &self.bonds {
            let _ = writeln!(s, "bond {i} {j}");
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut dump = ConformationDump { positions: Vec::new(), types: Vec::new(), bonds: Vec::new() };
        let mut bond_lines = Vec::new();
        for (n, w) in body(text)? {
            match w[0] {
                "bead" => {
                    arity(n, &w, 4)?;
                    let k: usize = num(n, w[1], "bead index")?;
                    if k != dump.positions.len() {
                        return Err(ParseError::new(n, format!("bead index {k} out of order, expected {}", dump.positions.len())));
                    }
                    dump.positions.push(Point::new(num(n, w[2], "coordinate")?, num(n, w[3], "coordinate")?));
                    dump.types.push(w[4].to_string());
                }
                "bond" => {
                    arity(n, &w, 2)?;
                    let (i, j): (usize, usize) = (num(n, w[1], "bead index")?, num(n, w[2], "bead index")?);
                    bond_lines.push((n, i.min(j), i.max(j)));
                }
                o => return Err(ParseError::new(n, format!("unknown directive '{o}'"))),
            }
        }
        for (n, i, j) in bond_lines {
            if j >= dump.positions.len() {
                return Err(ParseError::new(n, format!("bond ({i}, {j}) refers to a missing bead")));
            }
            dump.bonds.push((i, j));
        }
        dump.bonds.sort_unstable();
        dump.bonds.dedup();
        Ok(dump)
    }
}

/// One line per shape point: `<shape-index> <kind> <x> <y>`, after a
/// `params` line and a `geometry` line describing the construction.
pub fn emit_shape_dump(seq: &ShapeSequence) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "format-version {FORMAT_VERSION}");
    let _ = writeln!(s, "params {} {}", seq.params.d, seq.params.l);
    let _ = writeln!(s, "geometry {}", seq.geometry);
    for sh in &seq.shapes {
        for p in &sh.points {
            let _ = writeln!(s, "{} {} {} {}", sh.index, sh.kind.name(), p.x, p.y);
        }
    }
    s
}

pub fn parse_shape_dump(text: &str) -> Result<ShapeSequence, ParseError> {
    let mut params = None;
    let mut geometry = String::new();
    let mut shapes: Vec<(ShapeKind, Vec<Point>)> = Vec::new();
    for (n, w) in body(text)? {
        match w[0] {
            "params" => {
                arity(n, &w, 2)?;
                let p = ShapeParams::new(num(n, w[1], "integer")?, num(n, w[2], "integer")?).map_err(|e| ParseError::new(n, e.to_string()))?;
                params = Some(p);
            }
            "geometry" => geometry = w[1..].join(" "),
            _ => {
                if w.len() != 4 {
                    return Err(ParseError::new(n, "expected '<shape-index> <kind> <x> <y>'"));
                }
                let k: usize = num(n, w[0], "shape index")?;
                let kind = match w[1] {
                    "point" => ShapeKind::Point,
                    "segment" => ShapeKind::Segment,
                    o => return Err(ParseError::new(n, format!("unknown shape kind '{o}'"))),
                };
                let p = Point::new(num(n, w[2], "coordinate")?, num(n, w[3], "coordinate")?);
                if k == shapes.len() {
                    shapes.push((kind, Vec::new()));
                } else if k + 1 != shapes.len() {
                    return Err(ParseError::new(n, format!("shape index {k} out of order")));
                }
                if shapes[k].0 != kind {
                    return Err(ParseError::new(n, format!("shape {k} changes kind")));
                }
                shapes[k].1.push(p);
            }
        }
    }
    let params = params.unwrap_or(ShapeParams { d: DEFAULT_D, l: DEFAULT_L });
    let shapes = shapes.into_iter().enumerate().map(|(k, (kind, pts))| Shape::new(kind, k, pts)).collect();
    Ok(ShapeSequence::new(shapes, params, None, geometry))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::{SystemError, Violation};

    const GLIDER: &str = "format-version 1
# glider
alphabet a A
delay 3
arity 4
rule A a
transcript cyclic A A A a a a
seed 0 0 a
seed 1 0 A
seed 0 1 a
seed 1 1 a
";

    #[test]
    fn os_round_trip() {
        let sys = parse_os_file(GLIDER).unwrap();
        assert_eq!(sys.delay, 3);
        assert_eq!(sys.arity, 4);
        assert_eq!(sys.seed.len(), 4);
        let a = sys.alphabet.get("a").unwrap();
        let abar = sys.alphabet.get("A").unwrap();
        assert!(sys.ruleset.allows(a, abar) && sys.ruleset.allows(abar, a));
        let text = emit_os_file(&sys);
        assert_eq!(text.lines().filter(|l| l.starts_with("rule")).count(), 1);
        let again = parse_os_file(&text).unwrap();
        assert_eq!(again, sys);
        assert_eq!(emit_os_file(&again), text);
    }

    #[test]
    fn os_errors_name_lines() {
        let bad = GLIDER.replace("rule A a", "rule a b");
        assert_eq!(parse_os_file(&bad), Err(ParseError::new(6, "unknown symbol 'b'").into()));
        let bad = GLIDER.replace("seed 1 0 A", "seed 1 x A");
        assert_eq!(parse_os_file(&bad), Err(ParseError::new(9, "malformed coordinate 'x'").into()));
        let bad = GLIDER.replace("delay 3", "lookahead 3");
        assert_eq!(parse_os_file(&bad), Err(ParseError::new(4, "unknown directive 'lookahead'").into()));
        let bad = GLIDER.replace("format-version 1", "format-version 2");
        assert!(matches!(parse_os_file(&bad), Err(FormatError::Parse(ParseError { line: 1, .. }))));
        let bad = GLIDER.replace("delay 3\n", "");
        assert!(matches!(parse_os_file(&bad), Err(FormatError::Parse(e)) if e.message.contains("delay")));
        let bad = format!("{GLIDER}seedbond 0 1\n");
        match parse_os_file(&bad) {
            Err(FormatError::System(SystemError::Invalid(v))) => assert!(v.contains(&Violation::InteractionSpan { i: 0, j: 1 })),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn curve_specs() {
        let k = parse_curve_spec("format-version 1\nlsystem koch\niterations 4\nshape-d 3\nshape-l 4\n").unwrap();
        assert_eq!((k.kind, k.iterations, k.params), (CurveKind::Koch, 4, ShapeParams { d: 3, l: 4 }));
        assert_eq!(k.source.lsystem.expand(1), "F+F-F+F");
        assert_eq!(parse_curve_spec(&emit_curve_spec(&k)).unwrap(), k);
        let e = parse_curve_spec("format-version 1\nlsystem koch\naxiom F\n").unwrap_err();
        assert_eq!(e.line, 3);
        let c = parse_curve_spec(
            "format-version 1\nlsystem custom\nlattice rhombus\naxiom F\nrule F F+F-F\nangle-left 90\nangle-right 90\ndelay-bound 1 1 1 0\n",
        )
        .unwrap();
        assert_eq!(c.source.lsystem.expand(1), "F+F-F");
        assert_eq!(c.family.delta(1, c.params), Ok(5));
        assert_eq!(parse_curve_spec(&emit_curve_spec(&c)).unwrap(), c);
        let e = parse_curve_spec("format-version 1\nlsystem custom\nlattice rhombus\naxiom F\nangle-left 60\n").unwrap_err();
        assert_eq!(e.line, 2);
        let e = parse_curve_spec("format-version 1\nlsystem koch\nshape-d 0\n").unwrap_err();
        assert_eq!(e.line, 3);
    }

    #[test]
    fn conformation_round_trip() {
        let sys = parse_os_file(GLIDER).unwrap();
        let fold = crate::engine::fold(&sys, 12, Default::default());
        let dump = ConformationDump::from_configuration(&fold.configuration, &sys.alphabet);
        let text = dump.emit();
        assert_eq!(ConformationDump::parse(&text).unwrap(), dump);
        assert_eq!(ConformationDump::parse(&text).unwrap().emit(), text);
        assert_eq!(ConformationDump::parse("format-version 1\nbead 1 0 0 a\n").unwrap_err().line, 2);
    }

    #[test]
    fn shape_dump_round_trip() {
        let spec = CurveSpec::builtin(CurveKind::Koch, 1, ShapeParams { d: 2, l: 3 });
        let seq = spec.source.sequence(1, spec.params).unwrap();
        let text = emit_shape_dump(&seq);
        let back = parse_shape_dump(&text).unwrap();
        assert_eq!(back.shapes, seq.shapes);
        assert_eq!(back.geometry, seq.geometry);
        assert_eq!(emit_shape_dump(&back), text);
    }
}
