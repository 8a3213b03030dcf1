//! Command line front end for the socially stable matching toolkit.
//!
//! Exit codes: 0 on success, 1 on environment problems (unreadable
//! files), 2 on parse or validation errors, 3 when a solver is run
//! outside its preconditions. Timing always goes to stderr so stdout is
//! byte-identical across runs with the same inputs and flags.

use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use socstable::error::{GenError, MatchingError, ParseError, SolverError};
use socstable::format::{
    parse_graph, parse_hrss, parse_matching, parse_smti, serialize_hrsn, serialize_hrss,
    serialize_matching,
};
use socstable::gen::parse_genspec;
use socstable::model::HrssInstance;
use socstable::oracle;
use socstable::reductions::{clone_to_unit_capacity, hrss_to_hrsn, indset_to_smiss, smti_to_smiss};
use socstable::report::{self, Algorithm, SolveOptions};
use socstable::verify;

const BRUTE_LIMIT_VAR: &str = "SOCSTABLE_BRUTE_LIMIT";

/// Writes to stdout, treating a closed pipe as a normal end of output
/// so `socstable ... | head` finishes quietly.
fn emit_str(s: &str) {
    let mut out = std::io::stdout().lock();
    if out.write_all(s.as_bytes()).is_err() {
        std::process::exit(0);
    }
}

macro_rules! out {
    ($($arg:tt)*) => { emit_str(&format!($($arg)*)) };
}

macro_rules! outln {
    ($($arg:tt)*) => { emit_str(&format!("{}\n", format_args!($($arg)*))) };
}

#[derive(Parser)]
#[command(name = "socstable", version, about = "Socially stable matching toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a solver on an instance file and print the matching.
    Solve {
        /// stable | approx | two-inf | fpt-u | fpt-a | brute
        #[arg(long)]
        algo: Algorithm,
        /// Stream proposal events to stdout (approx only).
        #[arg(long)]
        trace: bool,
        /// Search-space cap for brute, overriding SOCSTABLE_BRUTE_LIMIT.
        #[arg(long)]
        brute_limit: Option<u64>,
        /// Largest unacquainted-pair count fpt-u will accept.
        #[arg(long)]
        max_unacq: Option<usize>,
        /// Largest acquainted-pair count fpt-a will accept.
        #[arg(long)]
        max_acq: Option<usize>,
        file: PathBuf,
    },
    /// Report the blocking pairs of a matching file against an instance.
    Verify { file: PathBuf, matching: PathBuf },
    /// Translate an instance into a related formulation, with a mapping.
    Reduce {
        /// Target formulation for an instance file.
        #[arg(long, value_enum, conflicts_with = "from")]
        to: Option<TargetForm>,
        /// Source formulation to translate into an instance.
        #[arg(long, value_enum)]
        from: Option<SourceForm>,
        /// Tie-break seed used when reducing from marriage instances.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write <out>.<format> and <out>.map instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        file: PathBuf,
    },
    /// Generate instances from a genspec file.
    Gen {
        /// Directory for one .hrss file per instance; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        spec: PathBuf,
    },
    /// Run every applicable solver over a genspec corpus; CSV on stdout.
    Bench { spec: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum TargetForm {
    /// Stability under a resident-side social network, via dummies.
    Hrsn,
    /// One post per hospital by cloning capacities away.
    SmissClone,
}

#[derive(Clone, Copy, ValueEnum)]
enum SourceForm {
    /// Marriage instance whose men end their lists in one tie.
    Smti,
    /// Undirected graph, encoded so optima count independent sets.
    Indset,
}

enum Failure {
    Io(String),
    Input(String),
    Solver(SolverError),
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Io(_) => 1,
            Failure::Input(_) => 2,
            Failure::Solver(_) => 3,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Io(msg) | Failure::Input(msg) => f.write_str(msg),
            Failure::Solver(e) => e.fmt(f),
        }
    }
}

impl From<SolverError> for Failure {
    fn from(e: SolverError) -> Self {
        Failure::Solver(e)
    }
}

impl From<GenError> for Failure {
    fn from(e: GenError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<MatchingError> for Failure {
    fn from(e: MatchingError) -> Self {
        Failure::Input(e.to_string())
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn write(path: &Path, body: &str) -> Result<(), Failure> {
    fs::write(path, body).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn parse_failure(path: &Path, e: ParseError) -> Failure {
    Failure::Input(format!("{}: {e}", path.display()))
}

fn check_valid(path: &Path, inst: &HrssInstance) -> Result<(), Failure> {
    let violations = inst.validate();
    if violations.is_empty() {
        return Ok(());
    }
    let lines: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
    Err(Failure::Input(format!(
        "{}: {}",
        path.display(),
        lines.join("; ")
    )))
}

fn load_instance(path: &Path) -> Result<HrssInstance, Failure> {
    let inst = parse_hrss(&read(path)?).map_err(|e| parse_failure(path, e))?;
    check_valid(path, &inst)?;
    Ok(inst)
}

fn brute_limit_from_env() -> Result<Option<u64>, Failure> {
    match std::env::var(BRUTE_LIMIT_VAR) {
        Ok(value) => value.parse().map(Some).map_err(|_| {
            Failure::Input(format!("{BRUTE_LIMIT_VAR}={value} is not a number"))
        }),
        Err(_) => Ok(None),
    }
}

fn cmd_solve(
    algo: Algorithm,
    trace: bool,
    brute_limit: Option<u64>,
    max_unacq: Option<usize>,
    max_acq: Option<usize>,
    file: &Path,
) -> Result<(), Failure> {
    let inst = load_instance(file)?;
    let mut options = SolveOptions::default();
    if let Some(limit) = brute_limit.or(brute_limit_from_env()?) {
        options.brute_limit = limit;
    }
    if let Some(k) = max_unacq {
        options.fpt.max_unacquainted = k;
    }
    if let Some(k) = max_acq {
        options.fpt.max_acquainted = k;
    }
    let report = if trace {
        report::solve_traced(&inst, algo, &options, &mut |image, event| {
            outln!("trace {}", event.describe(image));
        })?
    } else {
        report::solve(&inst, algo, &options)?
    };
    outln!("algorithm: {algo}");
    out!("{}", serialize_matching(&inst, &report.matching));
    outln!("size: {}", report.matching.len());
    outln!("socially-stable: {}", report.socially_stable);
    if let Some(stats) = &report.stats {
        eprintln!(
            "proposals: {} deletions: {} promotions: {} removals: {} rounds: {}",
            stats.proposals, stats.deletions, stats.promotions, stats.removals, stats.rounds
        );
    }
    eprintln!("time-ms: {:.3}", report.elapsed.as_secs_f64() * 1e3);
    Ok(())
}

fn cmd_verify(file: &Path, matching: &Path) -> Result<(), Failure> {
    let inst = load_instance(file)?;
    let m = parse_matching(&read(matching)?, &inst).map_err(|e| parse_failure(matching, e))?;
    let report = verify::blocking_report(&inst, &m)?;
    for p in &report.pairs {
        outln!(
            "block {} {} {}",
            inst.resident_id(p.resident),
            inst.hospital_id(p.hospital),
            if p.social { "social" } else { "unacquainted" }
        );
    }
    outln!("classical-blocking: {}", report.n_classical());
    outln!("social-blocking: {}", report.n_social());
    outln!("classically-stable: {}", report.is_stable());
    outln!("socially-stable: {}", report.is_socially_stable());
    Ok(())
}

/// Emits a produced instance plus `# map` lines describing how its
/// agents relate to the source. On stdout the map lines trail the
/// instance as comments, so the stream still parses as the instance.
fn emit(out: Option<&Path>, ext: &str, body: &str, map_lines: &[String]) -> Result<(), Failure> {
    match out {
        None => {
            // The map rides along as comments so the stream still
            // parses as the instance alone.
            let map_text: String = map_lines.iter().map(|l| format!("# map {l}\n")).collect();
            out!("{body}{map_text}");
        }
        Some(base) => {
            let inst_path = base.with_extension(ext);
            let map_path = base.with_extension("map");
            let map_text: String = map_lines.iter().map(|l| format!("{l}\n")).collect();
            write(&inst_path, body)?;
            write(&map_path, &map_text)?;
            eprintln!("wrote {} and {}", inst_path.display(), map_path.display());
        }
    }
    Ok(())
}

fn cmd_reduce(
    to: Option<TargetForm>,
    from: Option<SourceForm>,
    seed: u64,
    out: Option<&Path>,
    file: &Path,
) -> Result<(), Failure> {
    match (to, from) {
        (Some(TargetForm::Hrsn), None) => {
            let inst = load_instance(file)?;
            let (hrsn, map) = hrss_to_hrsn(&inst);
            let lines: Vec<String> = inst
                .hospitals()
                .map(|h| {
                    format!(
                        "dummy {} {}",
                        inst.hospital_id(h),
                        hrsn.hr.resident_id(map.dummy_of(h))
                    )
                })
                .collect();
            emit(out, "hrsn", &serialize_hrsn(&hrsn), &lines)
        }
        (Some(TargetForm::SmissClone), None) => {
            let inst = load_instance(file)?;
            let (cloned, map) = clone_to_unit_capacity(&inst);
            let lines: Vec<String> = inst
                .hospitals()
                .map(|h| {
                    let clones: Vec<&str> = map
                        .clones_of(h)
                        .iter()
                        .map(|&c| cloned.hospital_id(c))
                        .collect();
                    format!("clone {} {}", inst.hospital_id(h), clones.join(" "))
                })
                .collect();
            emit(out, "hrss", &serialize_hrss(&cloned), &lines)
        }
        (None, Some(SourceForm::Smti)) => {
            let smti = parse_smti(&read(file)?).map_err(|e| parse_failure(file, e))?;
            let problems = smti.validate();
            if !problems.is_empty() {
                return Err(Failure::Input(format!(
                    "{}: {}",
                    file.display(),
                    problems.join("; ")
                )));
            }
            let image = smti_to_smiss(&smti, seed);
            let lines = vec![format!("tie-break-seed {seed}")];
            emit(out, "hrss", &serialize_hrss(&image), &lines)
        }
        (None, Some(SourceForm::Indset)) => {
            let g = parse_graph(&read(file)?).map_err(|e| parse_failure(file, e))?;
            let image = indset_to_smiss(&g);
            let lines: Vec<String> = (0..g.n_vertices())
                .map(|v| {
                    let id = g.vertex_id(v);
                    format!("vertex {id} {id}.m1 {id}.m2 {id}.w1 {id}.w2")
                })
                .collect();
            emit(out, "hrss", &serialize_hrss(&image), &lines)
        }
        _ => Err(Failure::Input(
            "reduce needs exactly one of --to or --from".into(),
        )),
    }
}

fn cmd_gen(out: Option<&Path>, spec_path: &Path) -> Result<(), Failure> {
    let spec = parse_genspec(&read(spec_path)?).map_err(|e| parse_failure(spec_path, e))?;
    spec.check()?;
    match out {
        None => {
            for (i, inst) in spec.instances().enumerate() {
                outln!("# instance {i}");
                out!("{}", serialize_hrss(&inst));
            }
        }
        Some(dir) => {
            fs::create_dir_all(dir).map_err(|e| Failure::Io(format!("{}: {e}", dir.display())))?;
            let stem = spec_path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| "instance".into());
            for (i, inst) in spec.instances().enumerate() {
                let path = dir.join(format!("{stem}-{i:04}.hrss"));
                write(&path, &serialize_hrss(&inst))?;
            }
            eprintln!("wrote {} instances to {}", spec.count, dir.display());
        }
    }
    Ok(())
}

/// Practical applicability bounds for the benchmark harness; anything
/// outside them is reported as a skipped row rather than an error.
fn bench_applicable(inst: &HrssInstance, algo: Algorithm) -> bool {
    match algo {
        Algorithm::Stable | Algorithm::Approx => true,
        Algorithm::TwoInf => {
            inst.is_unit_capacity() && inst.residents().all(|r| inst.resident_prefs(r).len() <= 2)
        }
        Algorithm::FptUnacquainted => inst.unacquainted_pairs().len() <= 12,
        Algorithm::FptAcquainted => inst.n_acquainted() <= 12,
        Algorithm::Brute => oracle::search_space(inst) <= u128::from(oracle::DEFAULT_LIMIT),
    }
}

fn cmd_bench(spec_path: &Path) -> Result<(), Failure> {
    let spec = parse_genspec(&read(spec_path)?).map_err(|e| parse_failure(spec_path, e))?;
    spec.check()?;
    outln!(
        "instance,algo,residents,hospitals,acceptable,acquainted,status,size,socially_stable,ratio,time_ms"
    );
    let options = SolveOptions::default();
    for (i, inst) in spec.instances().enumerate() {
        let mut rows = Vec::new();
        for algo in Algorithm::ALL {
            if !bench_applicable(&inst, algo) {
                rows.push((algo, None));
                continue;
            }
            match report::solve(&inst, algo, &options) {
                Ok(r) => rows.push((algo, Some(r))),
                Err(_) => rows.push((algo, None)),
            }
        }
        let best = rows
            .iter()
            .filter_map(|(_, r)| r.as_ref().map(|r| r.matching.len()))
            .max()
            .unwrap_or(0);
        for (algo, outcome) in rows {
            let params = format!(
                "{i},{algo},{},{},{},{}",
                inst.n_residents(),
                inst.n_hospitals(),
                inst.n_acceptable(),
                inst.n_acquainted()
            );
            match outcome {
                Some(r) => {
                    let size = r.matching.len();
                    let ratio = if best == 0 { 1.0 } else { size as f64 / best as f64 };
                    outln!(
                        "{params},ok,{size},{},{ratio:.4},{:.3}",
                        r.socially_stable,
                        r.elapsed.as_secs_f64() * 1e3
                    );
                }
                None => outln!("{params},skipped,,,,"),
            }
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Solve {
            algo,
            trace,
            brute_limit,
            max_unacq,
            max_acq,
            file,
        } => cmd_solve(algo, trace, brute_limit, max_unacq, max_acq, &file),
        Command::Verify { file, matching } => cmd_verify(&file, &matching),
        Command::Reduce {
            to,
            from,
            seed,
            out,
            file,
        } => cmd_reduce(to, from, seed, out.as_deref(), &file),
        Command::Gen { out, spec } => cmd_gen(out.as_deref(), &spec),
        Command::Bench { spec } => cmd_bench(&spec),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {failure}");
            ExitCode::from(failure.exit_code())
        }
    }
}
