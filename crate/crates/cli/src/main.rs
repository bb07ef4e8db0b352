use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use oritatami::certify::{certify, horizon_region, CertifyInput};
use oritatami::embed::{validate_shape_sequence, verify_drawing, ShapeKind, ShapeSequence};
use oritatami::engine::{fold, FoldOutcome, FoldResult, TieMode};
use oritatami::error::{CertifyError, FormatError};
use oritatami::format::{emit_shape_dump, parse_curve_spec, parse_os_file, ConformationDump, CurveSpec};
use oritatami::horizon::extract_horizon;
use oritatami::lsystem::{interpret_turtle, min_period, Curve};
use oritatami::render::{ascii_conformation, svg_conformation, svg_shapes};
use oritatami::system::OritatamiSystem;
use oritatami::Point;

#[derive(Parser)]
#[command(name = "oritatami", version, about = "Oritatami folding, curve embeddings and impossibility certificates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum TieArg {
    Conformation,
    Position,
}

#[derive(Subcommand)]
enum Command {
    /// Fold a system and report the outcome.
    Fold {
        os_file: PathBuf,
        #[arg(long)]
        max_beads: usize,
        /// Print one line per stabilized bead.
        #[arg(long)]
        trace: bool,
        /// Write the conformation dump here.
        #[arg(long)]
        dump: Option<PathBuf>,
        /// Write an SVG picture here.
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Print an ASCII picture.
        #[arg(long)]
        ascii: bool,
        #[arg(long, value_enum, default_value = "conformation")]
        tie_mode: TieArg,
    },
    /// Expand an L-system and describe the curve.
    Lsystem {
        curve_spec: PathBuf,
        #[arg(long)]
        print_string: bool,
        #[arg(long)]
        stats: bool,
    },
    /// Build and validate the shape sequence of a curve.
    Embed {
        curve_spec: PathBuf,
        #[arg(long)]
        dump: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Check whether a fold draws a curve.
    Verify {
        os_file: PathBuf,
        curve_spec: PathBuf,
        #[arg(long)]
        max_beads: usize,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Canonical event-horizon keys per step, and repeats.
    Horizons {
        os_file: PathBuf,
        #[arg(long)]
        max_beads: usize,
    },
    /// Decide the pigeonhole conditions for a curve.
    Certify {
        curve_spec: PathBuf,
        #[arg(long)]
        p_o: u64,
        #[arg(long)]
        p_pl: u64,
        /// Comma-separated delay-bound levels.
        #[arg(long, default_value = "1", value_delimiter = ',')]
        levels: Vec<u32>,
        /// Index window `A..B`.
        #[arg(long, default_value = "10..2000")]
        window: String,
        /// Starting expansion depth (deepened until stable).
        #[arg(long)]
        expansion_depth: Option<u32>,
        /// Write the shapes and `E(i,n)` of this pair index as a dump.
        #[arg(long)]
        region: Option<usize>,
        #[arg(long, requires = "region")]
        region_dump: Option<PathBuf>,
    },
}

enum Fail {
    Usage(String),
    Validation(String),
    Inconclusive,
}

type Outcome = Result<(), Fail>;

fn read(path: &Path) -> Result<String, Fail> {
    std::fs::read_to_string(path).map_err(|e| Fail::Usage(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Fail> {
    std::fs::write(path, text).map_err(|e| Fail::Usage(format!("{}: {e}", path.display())))
}

fn load_os(path: &Path) -> Result<OritatamiSystem, Fail> {
    parse_os_file(&read(path)?).map_err(|e| match e {
        FormatError::Parse(p) => Fail::Validation(format!("{}:{}: {}", path.display(), p.line, p.message)),
        FormatError::System(s) => Fail::Validation(format!("{}: {s}", path.display())),
    })
}

fn load_curve(path: &Path) -> Result<CurveSpec, Fail> {
    parse_curve_spec(&read(path)?).map_err(|p| Fail::Validation(format!("{}:{}: {}", path.display(), p.line, p.message)))
}

fn curve_of(spec: &CurveSpec) -> Result<Curve, Fail> {
    let s = spec.source.lsystem.expand(spec.iterations);
    interpret_turtle(&s, &spec.source.turtle, Point::origin(), 0).map_err(|e| Fail::Validation(e.to_string()))
}

fn shapes_of(spec: &CurveSpec) -> Result<ShapeSequence, Fail> {
    spec.source.sequence(spec.iterations, spec.params).map_err(|e| Fail::Validation(e.to_string()))
}

fn outcome_line(r: &FoldResult) -> String {
    match &r.outcome {
        FoldOutcome::Terminal => "terminal".into(),
        FoldOutcome::StepLimit => "step-limit".into(),
        FoldOutcome::Blocked { index } => format!("blocked at bead {index}"),
        FoldOutcome::Nondeterministic { index, candidates } => {
            let pos: Vec<String> = candidates.iter().map(|c| c.placement.position.to_string()).collect();
            format!("nondeterministic at bead {index} (tied positions {})", pos.join(" "))
        }
    }
}

fn cmd_fold(
    os_file: &Path,
    max_beads: usize,
    trace: bool,
    dump: Option<&Path>,
    svg: Option<&Path>,
    ascii: bool,
    tie: TieArg,
) -> Outcome {
    let sys = load_os(os_file)?;
    let mode = match tie {
        TieArg::Conformation => TieMode::Conformation,
        TieArg::Position => TieMode::Position,
    };
    let r = fold(&sys, max_beads, mode);
    let mut out = String::new();
    if trace {
        for t in &r.trace {
            let partners: Vec<String> = t.partners.iter().map(|p| p.to_string()).collect();
            let _ = writeln!(
                out,
                "step {} {} {} {} bonds [{}] energy {} lookahead {}",
                t.index,
                sys.alphabet.name(t.bead),
                t.position.x,
                t.position.y,
                partners.join(","),
                t.energy,
                t.lookahead_energy
            );
        }
    }
    let _ = writeln!(out, "outcome: {}", outcome_line(&r));
    let _ = writeln!(out, "deterministic: {}", r.is_deterministic());
    let _ = writeln!(out, "stabilized: {}", r.folded());
    let _ = writeln!(out, "energy: {}", oritatami::system::energy(&r.configuration));
    let d = ConformationDump::from_configuration(&r.configuration, &sys.alphabet);
    if ascii {
        out.push_str(&ascii_conformation(&d, r.seed_len));
    }
    print!("{out}");
    if let Some(p) = dump {
        write(p, &d.emit())?;
    }
    if let Some(p) = svg {
        write(p, &svg_conformation(&d, r.seed_len))?;
    }
    Ok(())
}

fn cmd_lsystem(spec_path: &Path, print_string: bool, stats: bool) -> Outcome {
    let spec = load_curve(spec_path)?;
    let s = spec.source.lsystem.expand(spec.iterations);
    if print_string {
        println!("{s}");
    }
    if stats || !print_string {
        let curve = curve_of(&spec)?;
        let end = curve.endpoint();
        println!("iterations: {}", spec.iterations);
        println!("length: {}", s.len());
        println!("segments: {}", curve.segment_count());
        println!("vertices: {}", curve.vertices.len());
        println!("endpoint: {} {}", end.x, end.y);
        println!("self-avoiding: {}", curve.is_self_avoiding());
        match min_period(&s, s.len() / 2) {
            Some(p) => println!("period: {p}"),
            None => println!("period: none up to {}", s.len() / 2),
        }
    }
    Ok(())
}

fn cmd_embed(spec_path: &Path, dump: Option<&Path>, svg: Option<&Path>) -> Outcome {
    let spec = load_curve(spec_path)?;
    let seq = shapes_of(&spec)?;
    validate_shape_sequence(&seq).map_err(|v| Fail::Validation(v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("\n")))?;
    let points = seq.shapes.iter().filter(|s| s.kind == ShapeKind::Point).count();
    println!("geometry: {}", seq.geometry);
    println!("point-shapes: {points}");
    println!("segment-shapes: {}", seq.len() - points);
    println!("point-shape-size: {}", seq.shapes.first().map_or(0, |s| s.len()));
    println!("segment-shape-size: {}", seq.shapes.get(1).map_or(0, |s| s.len()));
    println!("total-points: {}", seq.total_points());
    println!("valid: true");
    if let Some(p) = dump {
        write(p, &emit_shape_dump(&seq))?;
    }
    if let Some(p) = svg {
        write(p, &svg_shapes(&seq, None))?;
    }
    Ok(())
}

fn cmd_verify(os_file: &Path, spec_path: &Path, max_beads: usize, svg: Option<&Path>) -> Outcome {
    let sys = load_os(os_file)?;
    let spec = load_curve(spec_path)?;
    let seq = shapes_of(&spec)?;
    let r = fold(&sys, max_beads, TieMode::Conformation);
    println!("outcome: {}", outcome_line(&r));
    let w = verify_drawing(&r, &seq);
    let idx: Vec<String> = w.indices.iter().map(|i| i.to_string()).collect();
    println!("indices: {}", idx.join(" "));
    let counts: Vec<String> = w.counts.iter().map(|c| c.to_string()).collect();
    println!("counts: {}", counts.join(" "));
    println!("constant-point-counts: {}", w.constant_counts(ShapeKind::Point));
    println!("constant-segment-counts: {}", w.constant_counts(ShapeKind::Segment));
    match w.violation {
        None => println!("drawing: yes"),
        Some(v) => {
            let found = v.shape.map_or("no shape".to_string(), |s| format!("shape {s}"));
            println!("drawing: no");
            println!("violation: bead {} lies in {found}, expected shape {} or earlier", v.bead, v.expected);
        }
    }
    if let Some(p) = svg {
        let d = ConformationDump::from_configuration(&r.configuration, &sys.alphabet);
        write(p, &svg_shapes(&seq, Some((&d, r.seed_len))))?;
    }
    if r.is_deterministic() {
        Ok(())
    } else {
        Err(Fail::Inconclusive)
    }
}

fn cmd_horizons(os_file: &Path, max_beads: usize) -> Outcome {
    let sys = load_os(os_file)?;
    let r = fold(&sys, max_beads, TieMode::Conformation);
    let conf = &r.configuration;
    let mut seen: HashMap<Vec<u8>, usize> = HashMap::new();
    let mut repeats = Vec::new();
    for i in r.seed_len..conf.len() {
        let h = extract_horizon(conf, i, &sys).map_err(|e| Fail::Validation(format!("step {i}: {e}")))?;
        println!("step {i} phase {} key {}", h.phase, h.canonical_hex());
        match seen.get(h.canonical_key()) {
            Some(&j) => repeats.push((j, i, h.phase)),
            None => {
                seen.insert(h.canonical_key().to_vec(), i);
            }
        }
    }
    for (j, i, phase) in &repeats {
        println!("repeat {j} {i} phase {phase}");
    }
    println!("outcome: {}", outcome_line(&r));
    println!("distinct: {}", seen.len());
    println!("repeats: {}", repeats.len());
    Ok(())
}

fn parse_window(s: &str) -> Result<(usize, usize), Fail> {
    let bad = || Fail::Usage(format!("window must look like A..B, found '{s}'"));
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

#[allow(clippy::too_many_arguments)]
fn cmd_certify(
    spec_path: &Path,
    p_o: u64,
    p_pl: u64,
    levels: Vec<u32>,
    window: &str,
    expansion_depth: Option<u32>,
    region: Option<usize>,
    region_dump: Option<&Path>,
) -> Outcome {
    let spec = load_curve(spec_path)?;
    let window = parse_window(window)?;
    let input = CertifyInput {
        source: spec.source.clone(),
        params: spec.params,
        p_o,
        p_pl,
        family: spec.family.clone(),
        levels: levels.clone(),
        window,
        start_depth: expansion_depth.unwrap_or(spec.iterations),
    };
    let report = certify(&input).map_err(|e| match e {
        CertifyError::Window { .. } | CertifyError::Period => Fail::Usage(e.to_string()),
        CertifyError::Unstable(_) => {
            eprintln!("{e}");
            Fail::Inconclusive
        }
        other => Fail::Validation(other.to_string()),
    })?;
    print!("{}", report.to_text());
    if let Some(i) = region {
        let depth = report.levels.iter().map(|v| v.profile.expansion_depth).max().unwrap_or(spec.iterations);
        let seq = spec.source.sequence(depth, spec.params).map_err(|e| Fail::Validation(e.to_string()))?;
        let mut text = String::new();
        for &n in &levels {
            let e = horizon_region(i, n, &seq, &spec.family).map_err(|e| Fail::Validation(e.to_string()))?;
            let pairs: Vec<String> = e.pair_indices().iter().map(|k| k.to_string()).collect();
            println!("region {i} level {n}: reach {} pairs {}", e.reach(), pairs.join(" "));
            for p in e.points() {
                let _ = writeln!(text, "horizon {n} {} {}", p.x, p.y);
            }
        }
        if let Some(path) = region_dump {
            let mut dump = emit_shape_dump(&seq);
            dump.push_str(&text);
            write(path, &dump)?;
        }
    }
    if report.conclusive() {
        Ok(())
    } else {
        Err(Fail::Inconclusive)
    }
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Fold { os_file, max_beads, trace, dump, svg, ascii, tie_mode } => {
            cmd_fold(&os_file, max_beads, trace, dump.as_deref(), svg.as_deref(), ascii, tie_mode)
        }
        Command::Lsystem { curve_spec, print_string, stats } => cmd_lsystem(&curve_spec, print_string, stats),
        Command::Embed { curve_spec, dump, svg } => cmd_embed(&curve_spec, dump.as_deref(), svg.as_deref()),
        Command::Verify { os_file, curve_spec, max_beads, svg } => cmd_verify(&os_file, &curve_spec, max_beads, svg.as_deref()),
        Command::Horizons { os_file, max_beads } => cmd_horizons(&os_file, max_beads),
        Command::Certify { curve_spec, p_o, p_pl, levels, window, expansion_depth, region, region_dump } => {
            cmd_certify(&curve_spec, p_o, p_pl, levels, &window, expansion_depth, region, region_dump.as_deref())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Fail::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Fail::Validation(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Fail::Inconclusive) => ExitCode::from(3),
    }
}
