//! Command-line front end. Every subcommand writes `<stem>.report` and
//! `<stem>.manifest.json` atomically into the output directory and echoes
//! the report on stdout.
//!
//! Exit codes: 0 success, 2 parse error, 3 precondition failure,
//! 4 uncertifiable comparison, 5 internal inconsistency.

mod error;
mod manifest;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::census::{run_census, CensusOptions};
use crate::fillings::{
    closed_volume_chain, drilling_ratio, enumerate_short_slopes, fkp_length_cutoff, CuspShape,
    SlopeFlag,
};
use crate::geometry::{
    enumerate_triples, ortho_spectrum, validate_diagram, CuspDiagram, Spectrum, TripleClass,
    ValidationFailure,
};
use crate::io::{write_atomic, DecimalInterval, DiagramFile, TriangulationFile};
use crate::momdetect::{area_lower_bound, find_mom_structures, AreaFlags};
use crate::rigor::{ideal_tetra_volume, lobachevsky, triangulation_volume, Interval};

pub use error::{CliError, ErrorKind};
pub use manifest::{sha256_hex, InputDigest, RunManifest};

#[derive(Debug, Parser)]
#[command(
    name = "momtools",
    version,
    about = "Verified volume bounds for cusped hyperbolic 3-manifolds"
)]
pub struct Cli {
    /// Directory receiving the report and its manifest.
    #[arg(long, global = true, default_value = ".")]
    pub out_dir: PathBuf,
    /// Do not echo the report on stdout.
    #[arg(long, global = true)]
    pub quiet: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Enclose the Lobachevsky function at an angle such as `pi/3` or `0.5±1e-20`.
    Lob { theta: String },
    /// Enclose the volume of an ideal triangulation.
    Volume { triangulation: PathBuf },
    /// Orthodistance spectrum and horoball triples of a cusp diagram.
    Spectrum {
        diagram: PathBuf,
        #[arg(long)]
        cutoff: String,
    },
    /// Combinatorial Mom-n structures of a cusp diagram and the cusp area bound.
    Momfind {
        diagram: PathBuf,
        #[arg(long)]
        n: usize,
        /// Spectrum cutoff; defaults to the largest orthodistance of a listed ball.
        #[arg(long)]
        cutoff: Option<String>,
    },
    /// Enumerate Mom-2 or Mom-3 dipyramid gluings.
    Census {
        #[arg(long, value_parser = clap::value_parser!(u8).range(2..=3))]
        mom: u8,
        /// Record completed branches in this file.
        #[arg(long, conflicts_with = "resume")]
        checkpoint: Option<PathBuf>,
        /// Continue from this checkpoint file, and keep updating it.
        #[arg(long)]
        resume: Option<PathBuf>,
        /// Worker threads (default: MOMTOOLS_WORKERS, then all cores).
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Slopes short enough that filling may land below a target volume.
    Slopes {
        /// Cusp shape in the diagram format; only the lattice line is used.
        shape: PathBuf,
        #[arg(long)]
        parent_vol: String,
        #[arg(long)]
        target_vol: String,
    },
    /// Closed-manifold volume bound from a cusped one by drilling.
    Chain {
        #[arg(long)]
        cusped_bound: String,
    },
}

/// The result of a subcommand before it is written out.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stem: String,
    pub report: String,
    pub inputs: Vec<InputDigest>,
}

/// Paths of the files written by [`run`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Written {
    pub report: PathBuf,
    pub manifest: PathBuf,
    pub outcome: Outcome,
}

/// Runs the command and writes its report and manifest.
pub fn run(cli: &Cli, argv: &[String]) -> Result<Written, CliError> {
    let outcome = execute(&cli.command)?;
    std::fs::create_dir_all(&cli.out_dir).map_err(|e| {
        CliError::new(
            ErrorKind::Precondition,
            format!("cannot create {}: {e}", cli.out_dir.display()),
        )
    })?;
    let report = cli.out_dir.join(format!("{}.report", outcome.stem));
    let manifest_path = cli.out_dir.join(format!("{}.manifest.json", outcome.stem));
    let manifest = RunManifest {
        command: argv.to_vec(),
        inputs: outcome.inputs.clone(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        seed: 0,
        report: report.display().to_string(),
        output_sha256: sha256_hex(outcome.report.as_bytes()),
    };
    let write = |path: &Path, bytes: &[u8]| {
        write_atomic(path, bytes).map_err(|e| {
            CliError::new(
                ErrorKind::Precondition,
                format!("cannot write {}: {e}", path.display()),
            )
        })
    };
    write(&report, outcome.report.as_bytes())?;
    write(&manifest_path, manifest.to_json().as_bytes())?;
    Ok(Written {
        report,
        manifest: manifest_path,
        outcome,
    })
}

/// Computes the report of a subcommand without touching the file system,
/// apart from reading inputs and the census checkpoint.
pub fn execute(command: &Command) -> Result<Outcome, CliError> {
    match command {
        Command::Lob { theta } => lob(theta),
        Command::Volume { triangulation } => volume(triangulation),
        Command::Spectrum { diagram, cutoff } => spectrum(diagram, cutoff),
        Command::Momfind { diagram, n, cutoff } => momfind(diagram, *n, cutoff.as_deref()),
        Command::Census {
            mom,
            checkpoint,
            resume,
            workers,
        } => census(
            *mom as usize,
            checkpoint.as_ref(),
            resume.as_ref(),
            *workers,
        ),
        Command::Slopes {
            shape,
            parent_vol,
            target_vol,
        } => slopes(shape, parent_vol, target_vol),
        Command::Chain { cusped_bound } => chain(cusped_bound),
    }
}

fn read_input(path: &Path) -> Result<(String, InputDigest), CliError> {
    let bytes = std::fs::read(path).map_err(|e| {
        CliError::new(
            ErrorKind::Precondition,
            format!("cannot read {}: {e}", path.display()),
        )
    })?;
    let digest = InputDigest {
        path: path.display().to_string(),
        sha256: sha256_hex(&bytes),
    };
    let text = String::from_utf8(bytes).map_err(|e| {
        CliError::new(
            ErrorKind::Parse,
            format!("{}: not UTF-8 text: {e}", path.display()),
        )
    })?;
    Ok((text, digest))
}

/// Parses a command-line number as an exact decimal interval.
pub fn parse_number(name: &str, text: &str) -> Result<Interval, CliError> {
    text.parse::<DecimalInterval>()
        .map(|d| d.to_interval())
        .map_err(|e| {
            CliError::new(
                ErrorKind::Parse,
                format!("argument {name} '{text}', column 1: {e}"),
            )
        })
}

/// Parses `pi`, `pi/k`, `m*pi/k`, `mpi/k` or a decimal interval.
pub fn parse_angle(text: &str) -> Result<Interval, CliError> {
    let Some(at) = text.find("pi") else {
        return parse_number("theta", text);
    };
    let err = |column: usize, what: &str| {
        CliError::new(
            ErrorKind::Parse,
            format!("argument theta '{text}', column {column}: {what}"),
        )
    };
    let coeff = text[..at].strip_suffix('*').unwrap_or(&text[..at]);
    let num: i64 = if coeff.is_empty() {
        1
    } else {
        coeff
            .parse()
            .map_err(|_| err(1, "expected an integer multiple of pi"))?
    };
    let rest = &text[at + 2..];
    let den: i64 = if rest.is_empty() {
        1
    } else {
        let digits = rest
            .strip_prefix('/')
            .ok_or_else(|| err(at + 3, "expected '/'"))?;
        digits
            .parse()
            .ok()
            .filter(|&d: &i64| d > 0)
            .ok_or_else(|| err(at + 4, "expected a positive integer denominator"))?
    };
    Ok((Interval::pi() * Interval::from_int(num)).checked_div(&Interval::from_int(den))?)
}

fn lob(theta: &str) -> Result<Outcome, CliError> {
    let t = parse_angle(theta)?;
    let value = lobachevsky(t)?;
    let mut report = String::new();
    writeln!(
        report,
        "LOB theta={t} value={value} width={:e}",
        value.width()
    )
    .unwrap();
    Ok(Outcome {
        stem: "lob".into(),
        report,
        inputs: Vec::new(),
    })
}

fn volume(path: &Path) -> Result<Outcome, CliError> {
    let (text, digest) = read_input(path)?;
    let tri = TriangulationFile::parse(&text).map_err(|e| CliError::from(e).in_file(path))?;
    tri.check_involution()
        .map_err(|e| CliError::from(e).in_file(path))?;
    let sol = tri.shape_solution()?;
    let total = triangulation_volume(&sol)?;
    let mut report = String::new();
    writeln!(
        report,
        "TRIANGULATION name={} tetrahedra={} cusps={} delta={}",
        tri.name,
        tri.tets.len(),
        tri.cusps,
        sol.delta
    )
    .unwrap();
    for (i, z) in sol.shapes.iter().enumerate() {
        let v = ideal_tetra_volume(&z.inflate(sol.delta.hi()))?;
        writeln!(report, "TET {i} shape={z} volume={v}").unwrap();
    }
    writeln!(report, "VOLUME value={total} width={:e}", total.width()).unwrap();
    Ok(Outcome {
        stem: "volume".into(),
        report,
        inputs: vec![digest],
    })
}

fn load_diagram(path: &Path) -> Result<(CuspDiagram, InputDigest), CliError> {
    let (text, digest) = read_input(path)?;
    let file = DiagramFile::parse(&text).map_err(|e| CliError::from(e).in_file(path))?;
    let d = file
        .to_diagram()
        .map_err(|e| CliError::from(e).in_file(path))?;
    let v = validate_diagram(&d);
    if !v.is_valid() {
        let reasons: Vec<String> = v.failures.iter().map(|f| f.to_string()).collect();
        // An undecidable spectrum is a numeric failure, not a bad diagram.
        let kind = v
            .failures
            .iter()
            .find_map(|f| match f {
                ValidationFailure::Spectrum(e) => Some(CliError::from(e.clone()).kind),
                _ => None,
            })
            .filter(|_| v.failures.len() == 1)
            .unwrap_or(ErrorKind::Precondition);
        return Err(CliError::new(
            kind,
            format!(
                "{}: invalid diagram: {}",
                path.display(),
                reasons.join("; ")
            ),
        ));
    }
    Ok((d, digest))
}

fn spectrum_lines(
    report: &mut String,
    d: &CuspDiagram,
    cutoff: Interval,
) -> Result<(Spectrum, Vec<TripleClass>), CliError> {
    let s = ortho_spectrum(d, cutoff)?;
    let triples = enumerate_triples(d, &s)?;
    writeln!(report, "SPECTRUM cutoff={cutoff} classes={}", s.len()).unwrap();
    for c in &s.classes {
        writeln!(
            report,
            "ORTHO n={} o={} e={} pairs={}",
            c.index,
            c.ortho,
            c.e,
            c.witnesses.len()
        )
        .unwrap();
    }
    for t in &triples {
        let [a, b, c] = t.kind;
        writeln!(
            report,
            "TRIPLE type=({a},{b},{c}) classes={}",
            t.multiplicity
        )
        .unwrap();
    }
    Ok((s, triples))
}

fn spectrum(path: &Path, cutoff: &str) -> Result<Outcome, CliError> {
    let cutoff = parse_number("--cutoff", cutoff)?;
    let (d, digest) = load_diagram(path)?;
    let mut report = String::new();
    spectrum_lines(&mut report, &d, cutoff)?;
    Ok(Outcome {
        stem: "spectrum".into(),
        report,
        inputs: vec![digest],
    })
}

fn momfind(path: &Path, n: usize, cutoff: Option<&str>) -> Result<Outcome, CliError> {
    if n < 2 {
        return Err(CliError::new(
            ErrorKind::Precondition,
            format!("--n must be at least 2, got {n}"),
        ));
    }
    let (d, digest) = load_diagram(path)?;
    let cutoff = match cutoff {
        Some(c) => parse_number("--cutoff", c)?,
        None => {
            let mut hi = 0.0f64;
            for b in &d.balls {
                hi = hi.max((-b.diameter.ln()?).hi());
            }
            Interval::point(hi)
        }
    };
    let mut report = String::new();
    let (s, triples) = spectrum_lines(&mut report, &d, cutoff)?;
    for m in find_mom_structures(&triples, n) {
        writeln!(report, "{m}").unwrap();
    }
    if s.len() >= 3 {
        // Every pair of full-sized balls lies in some class; if none is in
        // class 1 there is no (1,1,1) triple and those centers are e_2 apart.
        let no_triple = !triples.iter().any(|t| t.kind == [1, 1, 1]);
        let flags = AreaFlags {
            no_equilateral_triples: no_triple,
            center_distance_at_least_e2: no_triple,
            ..AreaFlags::default()
        };
        let bound = area_lower_bound(s.e(2)?, s.e(3)?, flags)?;
        writeln!(report, "{bound}").unwrap();
    }
    Ok(Outcome {
        stem: format!("momfind-n{n}"),
        report,
        inputs: vec![digest],
    })
}

fn census(
    mom: usize,
    checkpoint: Option<&PathBuf>,
    resume: Option<&PathBuf>,
    workers: Option<usize>,
) -> Result<Outcome, CliError> {
    let opts = CensusOptions {
        workers,
        checkpoint: resume.or(checkpoint).cloned(),
        resume: resume.is_some(),
    };
    let r = run_census(mom, &opts)?;
    Ok(Outcome {
        stem: format!("census-mom{mom}"),
        report: r.to_string(),
        inputs: Vec::new(),
    })
}

fn slopes(path: &Path, parent: &str, target: &str) -> Result<Outcome, CliError> {
    let parent = parse_number("--parent-vol", parent)?;
    let target = parse_number("--target-vol", target)?;
    let (text, digest) = read_input(path)?;
    let file = DiagramFile::parse(&text).map_err(|e| CliError::from(e).in_file(path))?;
    let lattice = file
        .to_diagram()
        .map_err(|e| CliError::from(e).in_file(path))?
        .lattice;
    let shape = CuspShape::new(lattice.mu, lattice.lambda)?;
    let bound = fkp_length_cutoff(parent, target)?;
    let found = enumerate_short_slopes(&shape, bound.length_cutoff)?;
    let mut report = String::new();
    writeln!(report, "{bound}").unwrap();
    writeln!(
        report,
        "NOTE cutoff inverts the volume bound in its unconditional form; \
         as first stated it required every filling slope to be longer than 2pi"
    )
    .unwrap();
    for s in &found {
        writeln!(report, "{s}").unwrap();
    }
    let borderline = found
        .iter()
        .filter(|s| s.flag == SlopeFlag::Borderline)
        .count();
    writeln!(
        report,
        "SLOPES total={} borderline={borderline}",
        found.len()
    )
    .unwrap();
    Ok(Outcome {
        stem: "slopes".into(),
        report,
        inputs: vec![digest],
    })
}

fn chain(bound: &str) -> Result<Outcome, CliError> {
    let cusped = parse_number("--cusped-bound", bound)?;
    let closed = closed_volume_chain(cusped)?;
    let mut report = String::new();
    writeln!(
        report,
        "CHAIN cusped={cusped} ratio={} closed={closed}",
        drilling_ratio()
    )
    .unwrap();
    writeln!(
        report,
        "NOTE assumes an embedded tube of radius at least log(3)/2 about the drilled geodesic"
    )
    .unwrap();
    Ok(Outcome {
        stem: "chain".into(),
        report,
        inputs: Vec::new(),
    })
}
