//! `gcover`: builds reduction instances, constructs and verifies covers and
//! cut sequences, runs the exhaustive searches and renders SVG.
//!
//! Exit status: 0 accept / found / consistent, 1 reject / none, 2 usage or
//! format error, 3 internal inconsistency.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::Serialize;

use guillotine_core::corpus::PointsFile;
use guillotine_core::geom::parse_rational;
use guillotine_core::oracle::{
    bounded_guillotine_search, certify_instance, min_segment_cover, CertifyError, SearchOptions, SearchResult,
    DEFAULT_CAP,
};
use guillotine_core::reduction::{InstanceFile, ReductionError, DEFAULT_RETRIES};
use guillotine_core::svg::{render, Layer, RenderError, RenderSpec};
use guillotine_core::witness::WitnessError;
use guillotine_core::{
    build_instance, guillotine_witness, sat_solve, validate, verify_guillotine_sequence, verify_segment_cover,
    Assignment, BuildOptions, CutSequence, FormulaSpec, Point, ReductionInstance, SegmentCover, Verdict,
};

#[derive(Parser, Debug)]
#[command(name = "gcover", version, about = "Disjoint segment and guillotine cover reduction toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build instance.json from formula.json.
    Gen {
        #[arg(long)]
        formula: PathBuf,
        #[arg(long, default_value_t = DEFAULT_RETRIES)]
        retries: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve the formula; prints the assignment or UNSAT.
    Sat {
        #[arg(long)]
        formula: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build cover.json and cuts.json from an instance and an assignment.
    Witness {
        #[arg(long)]
        instance: PathBuf,
        /// Preferred assignment; solved from the formula when omitted.
        #[arg(long)]
        assignment: Option<PathBuf>,
        /// Output path for the cover.
        #[arg(long)]
        cover: PathBuf,
        /// Output path for the cut sequence.
        #[arg(long)]
        cuts: PathBuf,
    },
    /// Check a cover or a cut sequence.
    Verify {
        #[arg(long, conflicts_with = "points", required_unless_present = "points")]
        instance: Option<PathBuf>,
        #[arg(long)]
        points: Option<PathBuf>,
        #[arg(long, conflicts_with = "cuts", required_unless_present = "cuts")]
        cover: Option<PathBuf>,
        #[arg(long)]
        cuts: Option<PathBuf>,
        /// Budget; defaults to the instance's k.
        #[arg(long)]
        limit: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exhaustive search for a cover within `--limit`.
    Oracle {
        #[arg(long, conflicts_with = "points", required_unless_present = "points")]
        instance: Option<PathBuf>,
        #[arg(long)]
        points: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = OracleMode::Segments)]
        mode: OracleMode,
        #[arg(long)]
        limit: usize,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap_points: usize,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build, solve, construct and search; checks both agree.
    Certify {
        #[arg(long)]
        formula: PathBuf,
        #[arg(long, default_value_t = DEFAULT_RETRIES)]
        retries: usize,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap_points: usize,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw the instance with an optional cover and cut sequence.
    Render {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        cover: Option<PathBuf>,
        #[arg(long)]
        cuts: Option<PathBuf>,
        /// Output units per coordinate unit, as an integer or `p/q`.
        #[arg(long, default_value = "100")]
        scale: String,
        /// Comma separated subset of points,gadget-zoom,drawing,cover,cuts.
        #[arg(long, value_delimiter = ',')]
        layers: Option<Vec<String>>,
        #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
        label_cuts: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OracleMode {
    Segments,
    Guillotine,
}

const ACCEPT: u8 = 0;
const REJECT: u8 = 1;

/// An error together with its exit status.
struct Failure {
    code: u8,
    error: anyhow::Error,
}

impl Failure {
    fn usage(error: anyhow::Error) -> Self {
        Failure { code: 2, error }
    }

    fn inconsistent(error: anyhow::Error) -> Self {
        Failure { code: 3, error }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(error: anyhow::Error) -> Self {
        Failure::usage(error)
    }
}

type Outcome = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Gen { formula, retries, out } => gen(&formula, retries, out.as_deref()),
        Command::Sat { formula, out } => sat(&formula, out.as_deref()),
        Command::Witness { instance, assignment, cover, cuts } => {
            witness(&instance, assignment.as_deref(), &cover, &cuts)
        }
        Command::Verify { instance, points, cover, cuts, limit, out } => {
            let source = PointSource::new(instance, points);
            let target = match (cover, cuts) {
                (Some(c), None) => Target::Cover(c),
                (None, Some(c)) => Target::Cuts(c),
                _ => unreachable!("clap enforces exactly one of --cover and --cuts"),
            };
            verify(&source, &target, limit, out.as_deref())
        }
        Command::Oracle { instance, points, mode, limit, cap_points, threads, out } => {
            let source = PointSource::new(instance, points);
            let search = SearchOptions { cap: cap_points, threads: threads.max(1) };
            oracle(&source, mode, limit, &search, out.as_deref())
        }
        Command::Certify { formula, retries, cap_points, threads, out } => {
            let search = SearchOptions { cap: cap_points, threads: threads.max(1) };
            certify(&formula, retries, &search, out.as_deref())
        }
        Command::Render { instance, cover, cuts, scale, layers, label_cuts, out } => {
            let spec = render_spec(&scale, layers, label_cuts)?;
            render_cmd(&instance, cover.as_deref(), cuts.as_deref(), &spec, out.as_deref())
        }
    }
}

// ---- file plumbing ----

fn check_inputs(paths: &[Option<&Path>]) -> anyhow::Result<()> {
    for path in paths.iter().flatten() {
        if !path.is_file() {
            return Err(anyhow!("input {} is not a readable file", path.display()));
        }
    }
    Ok(())
}

fn check_outputs(paths: &[Option<&Path>]) -> anyhow::Result<()> {
    for path in paths.iter().flatten() {
        let parent = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
        if !parent.is_dir() {
            return Err(anyhow!("output directory {} does not exist", parent.display()));
        }
    }
    Ok(())
}

fn read_json<T: DeserializeOwned>(path: &Path, what: &str) -> anyhow::Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("{} is not a valid {what} file", path.display()))
}

fn json_text<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("serializable");
    text.push('\n');
    text
}

fn write_text(path: &Path, text: &str) -> anyhow::Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

/// Writes to `out`, or prints when no path is given.
fn emit(out: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => write_text(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_instance(path: &Path) -> Result<ReductionInstance, Failure> {
    let file: InstanceFile = read_json(path, "instance")?;
    file.to_instance()
        .with_context(|| format!("{} does not reproduce from its own formula", path.display()))
        .map_err(Failure::usage)
}

enum PointSource {
    Instance(PathBuf),
    Points(PathBuf),
}

impl PointSource {
    fn new(instance: Option<PathBuf>, points: Option<PathBuf>) -> Self {
        match (instance, points) {
            (Some(i), None) => PointSource::Instance(i),
            (None, Some(p)) => PointSource::Points(p),
            _ => unreachable!("clap enforces exactly one of --instance and --points"),
        }
    }

    fn path(&self) -> &Path {
        match self {
            PointSource::Instance(p) | PointSource::Points(p) => p,
        }
    }

    /// Points plus the instance budget when there is one. Only the point
    /// list is needed, so the instance is not rebuilt.
    fn load(&self) -> anyhow::Result<(Vec<Point>, Option<usize>)> {
        match self {
            PointSource::Instance(path) => {
                let file: InstanceFile = read_json(path, "instance")?;
                Ok((file.coordinates(), Some(file.k)))
            }
            PointSource::Points(path) => Ok((read_json::<PointsFile>(path, "points")?.points, None)),
        }
    }
}

enum Target {
    Cover(PathBuf),
    Cuts(PathBuf),
}

fn build_options(retries: usize) -> anyhow::Result<BuildOptions> {
    if retries > DEFAULT_RETRIES {
        return Err(anyhow!("--retries {retries} exceeds the maximum of {DEFAULT_RETRIES}"));
    }
    Ok(BuildOptions { retries, ..BuildOptions::default() })
}

/// Formula errors are the caller's fault; a valid formula that cannot be
/// built means the construction is broken.
fn reduction_failure(e: ReductionError) -> Failure {
    match e {
        ReductionError::Formula(_) => Failure::usage(anyhow!(e).context("formula rejected")),
        other => Failure::inconsistent(anyhow!(other).context("construction failed on a valid formula")),
    }
}

// ---- subcommands ----

fn gen(formula: &Path, retries: usize, out: Option<&Path>) -> Outcome {
    check_inputs(&[Some(formula)])?;
    check_outputs(&[out])?;
    let options = build_options(retries)?;
    let spec: FormulaSpec = read_json(formula, "formula")?;
    let instance = build_instance(&spec, &options).map_err(reduction_failure)?;
    let text = json_text(&InstanceFile::from(&instance));
    emit(out, &text)?;
    if out.is_some() {
        println!(
            "{} points, k = {}, retry {}, {} coordinate bits",
            instance.points.len(),
            instance.budget,
            instance.retry,
            instance.max_coordinate_bits()
        );
    }
    Ok(ACCEPT)
}

fn sat(formula: &Path, out: Option<&Path>) -> Outcome {
    check_inputs(&[Some(formula)])?;
    check_outputs(&[out])?;
    let spec: FormulaSpec = read_json(formula, "formula")?;
    let formula = validate(&spec).context("formula rejected")?;
    match sat_solve(&formula) {
        Some(assignment) => {
            let text = json_text(&assignment);
            match out {
                Some(path) => {
                    write_text(path, &text)?;
                    println!("SAT {}", serde_json::to_string(&assignment).expect("serializable"));
                }
                None => print!("{text}"),
            }
            Ok(ACCEPT)
        }
        None => {
            println!("UNSAT");
            Ok(REJECT)
        }
    }
}

fn witness(instance_path: &Path, assignment: Option<&Path>, cover_out: &Path, cuts_out: &Path) -> Outcome {
    check_inputs(&[Some(instance_path), assignment])?;
    check_outputs(&[Some(cover_out), Some(cuts_out)])?;
    let instance = load_instance(instance_path)?;
    let preferred = match assignment {
        Some(path) => read_json::<Assignment>(path, "assignment")?,
        None => match sat_solve(&instance.formula) {
            Some(a) => a,
            None => {
                println!("UNSAT: no assignment, no witness");
                return Ok(REJECT);
            }
        },
    };
    let found = guillotine_witness(&instance, &preferred).map_err(|e| match e {
        WitnessError::AssignmentLength { .. }
        | WitnessError::UnsatisfiedAssignment { .. }
        | WitnessError::FalseLiteral { .. } => Failure::usage(anyhow!(e).context("assignment rejected")),
        other => Failure::inconsistent(anyhow!(other).context("satisfiable formula without a guillotine witness")),
    })?;
    let points = instance.coordinates();
    if let Verdict::Reject(v) = verify_segment_cover(&points, &found.cover, instance.budget) {
        return Err(Failure::inconsistent(anyhow!("constructed cover fails verification: {v}")));
    }
    if let Verdict::Reject(v) = verify_guillotine_sequence(&points, &found.cuts, instance.budget) {
        return Err(Failure::inconsistent(anyhow!("constructed cuts fail verification: {v}")));
    }
    write_text(cover_out, &json_text(&found.cover))?;
    write_text(cuts_out, &json_text(&found.cuts))?;
    let note = if found.assignment == preferred {
        String::new()
    } else {
        " (preferred assignment admits no cut order)".into()
    };
    println!(
        "{} segments, {} cuts, assignment {}{note}, {} rejected cover(s)",
        found.cover.segments.len(),
        found.cuts.cuts.len(),
        serde_json::to_string(&found.assignment).expect("serializable"),
        found.rejected
    );
    Ok(ACCEPT)
}

fn verify(source: &PointSource, target: &Target, limit: Option<usize>, out: Option<&Path>) -> Outcome {
    let target_path = match target {
        Target::Cover(p) | Target::Cuts(p) => p.as_path(),
    };
    check_inputs(&[Some(source.path()), Some(target_path)])?;
    check_outputs(&[out])?;
    let (points, k) = source.load()?;
    let budget = limit.or(k).ok_or_else(|| anyhow!("--limit is required with --points"))?;
    let verdict = match target {
        Target::Cover(p) => verify_segment_cover(&points, &read_json::<SegmentCover>(p, "cover")?, budget),
        Target::Cuts(p) => verify_guillotine_sequence(&points, &read_json::<CutSequence>(p, "cuts")?, budget),
    };
    let text = json_text(&verdict);
    match out {
        Some(path) => write_text(path, &text)?,
        None => print!("{text}"),
    }
    match verdict {
        Verdict::Accept => Ok(ACCEPT),
        Verdict::Reject(v) => {
            eprintln!("REJECT {}: {v}", v.code());
            Ok(REJECT)
        }
    }
}

fn oracle(source: &PointSource, mode: OracleMode, limit: usize, search: &SearchOptions, out: Option<&Path>) -> Outcome {
    check_inputs(&[Some(source.path())])?;
    check_outputs(&[out])?;
    let (points, _) = source.load()?;
    let (text, result) = match mode {
        OracleMode::Segments => {
            let outcome = min_segment_cover(&points, limit, search).context("search refused")?;
            (json_text(&outcome.report()), outcome.result)
        }
        OracleMode::Guillotine => {
            let outcome = bounded_guillotine_search(&points, limit).context("search refused")?;
            (json_text(&outcome.report()), outcome.result)
        }
    };
    emit(out, &text)?;
    if out.is_some() {
        println!("{}@{limit}", serde_json::to_value(result).expect("serializable").as_str().unwrap_or_default());
    }
    Ok(if result == SearchResult::Found { ACCEPT } else { REJECT })
}

fn certify(formula: &Path, retries: usize, search: &SearchOptions, out: Option<&Path>) -> Outcome {
    check_inputs(&[Some(formula)])?;
    check_outputs(&[out])?;
    let options = build_options(retries)?;
    let spec: FormulaSpec = read_json(formula, "formula")?;
    let instance = build_instance(&spec, &options).map_err(reduction_failure)?;
    let report = certify_instance(&instance, search).map_err(|e| match e {
        CertifyError::Oracle(_) => Failure::usage(anyhow!(e).context("search refused")),
        other => Failure::inconsistent(anyhow!(other)),
    })?;
    if let Some(path) = out {
        write_text(path, &json_text(&report))?;
    }
    println!("{report}");
    Ok(ACCEPT)
}

fn render_spec(scale: &str, layers: Option<Vec<String>>, label_cuts: bool) -> anyhow::Result<RenderSpec> {
    let scale = parse_rational(scale).ok_or_else(|| anyhow!("--scale {scale:?} is not a rational number"))?;
    let layers = match layers {
        Some(names) => {
            names.iter().map(|n| n.trim().parse::<Layer>().map_err(|e| anyhow!(e))).collect::<anyhow::Result<_>>()?
        }
        None => Layer::ALL.into_iter().collect(),
    };
    Ok(RenderSpec { scale, layers, label_cuts })
}

fn render_cmd(
    instance_path: &Path,
    cover: Option<&Path>,
    cuts: Option<&Path>,
    spec: &RenderSpec,
    out: Option<&Path>,
) -> Outcome {
    check_inputs(&[Some(instance_path), cover, cuts])?;
    check_outputs(&[out])?;
    let instance = load_instance(instance_path)?;
    let cover = cover.map(|p| read_json::<SegmentCover>(p, "cover")).transpose()?;
    let cuts = cuts.map(|p| read_json::<CutSequence>(p, "cuts")).transpose()?;
    let svg = render(&instance, cover.as_ref(), cuts.as_ref(), spec).map_err(|e: RenderError| anyhow!(e))?;
    emit(out, &svg)?;
    Ok(ACCEPT)
}
