use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("negative radius {0}")]
    NegativeRadius(i64),
}

/// A single broken invariant of a system or configuration.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Violation {
    #[error("delay must be at least 1")]
    ZeroDelay,
    #[error("arity must be at least 1")]
    ZeroArity,
    #[error("alphabet is empty")]
    EmptyAlphabet,
    #[error("transcript is empty")]
    EmptyTranscript,
    #[error("seed is empty")]
    EmptySeed,
    #[error("bead type id {0} is not in the alphabet")]
    UnknownBead(usize),
    #[error("seed bead {index} is not adjacent to bead {}", index - 1)]
    NotAdjacent { index: usize },
    #[error("seed bead {index} revisits the point of bead {previous}")]
    Revisit { index: usize, previous: usize },
    #[error("interaction span < 2 in bond ({i}, {j})")]
    InteractionSpan { i: usize, j: usize },
    #[error("bond ({i}, {j}) refers to a bead outside the path")]
    BondOutOfRange { i: usize, j: usize },
    #[error("bond ({i}, {j}) joins non-adjacent points")]
    BondNotAdjacent { i: usize, j: usize },
    #[error("bond ({i}, {j}) is not allowed by the ruleset")]
    InvalidBond { i: usize, j: usize },
    #[error("bond ({i}, {j}) is listed twice")]
    DuplicateBond { i: usize, j: usize },
    #[error("bead {index} has {count} interactions, arity is {arity}")]
    ArityExceeded { index: usize, count: usize, arity: usize },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SystemError {
    #[error("invalid system: {}", list(.0))]
    Invalid(Vec<Violation>),
}

fn list(v: &[Violation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HorizonError {
    #[error("bead {0} has no predecessor to anchor a horizon")]
    NoAnchor(usize),
    #[error("bead {index} is not a transcript bead (seed has {seed_len} beads)")]
    SeedBead { index: usize, seed_len: usize },
    #[error("bead {index} lies beyond the stabilized prefix of length {len}")]
    BeyondPrefix { index: usize, len: usize },
    #[error("range start {start} exceeds range end {end}")]
    EmptyRange { start: usize, end: usize },
    #[error("horizons extracted with different parameters (delay {0} vs {1}, arity {2} vs {3})")]
    Mismatch(usize, usize, usize, usize),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CurveError {
    #[error("symbol '{0}' is both a variable and a constant")]
    Overlap(char),
    #[error("symbol '{0}' is neither a variable nor a constant")]
    UnknownSymbol(char),
    #[error("variable '{0}' has more than one rule")]
    DuplicateRule(char),
    #[error("rule for '{0}' whose head is not a variable")]
    RuleForConstant(char),
    #[error("turtle has no action for symbol '{0}'")]
    NoAction(char),
    #[error("angle {angle} is not a multiple of {step} degrees")]
    Angle { angle: i32, step: i32 },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EmbedError {
    #[error("shape parameters must be positive (d = {d}, l = {l})")]
    Params { d: i32, l: i32 },
    #[error("curve does not live on the expected lattice: {0}")]
    WrongLattice(String),
    #[error("curve step {index} is not a unit move")]
    NotUnitStep { index: usize },
    #[error("shapes {a} and {b} collide: {reason}")]
    Collision { a: usize, b: usize, reason: String },
}

/// A broken invariant of a shape sequence. Shape indices are sequence positions.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ShapeViolation {
    #[error("shape {0} is empty")]
    Empty(usize),
    #[error("shape {0} is not grid-connected")]
    Disconnected(usize),
    #[error("shape {index} is a {found}, alternation expects a {expected}")]
    Alternation { index: usize, found: &'static str, expected: &'static str },
    #[error("shapes {a} and {b} share point {point}")]
    Overlap { a: usize, b: usize, point: String },
    #[error("consecutive shapes {a} and {b} are not adjacent")]
    NotAdjacent { a: usize, b: usize },
    #[error("non-consecutive shapes {a} and {b} are adjacent")]
    Adjacent { a: usize, b: usize },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CertifyError {
    #[error("no delay bound for level {0}")]
    MissingLevel(u32),
    #[error("shape index {index} outside the expansion (1..={len})")]
    OutOfRange { index: usize, len: usize },
    #[error("horizon region of shape {index} reaches the end of the expansion ({len} shapes); expand deeper")]
    Boundary { index: usize, len: usize },
    #[error("window {start}..{end} is empty or starts at 0")]
    Window { start: usize, end: usize },
    #[error("period values must be positive")]
    Period,
    #[error("intersecting shape sets did not stabilize up to depth {0}")]
    Unstable(u32),
    #[error(transparent)]
    Embed(#[from] EmbedError),
}

/// A parse failure with its 1-based source line.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, message: impl Into<String>) -> Self {
        ParseError { line, message: message.into() }
    }
}

/// Failure to load a file: syntax, or a well-formed but invalid system.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormatError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    System(#[from] SystemError),
}
