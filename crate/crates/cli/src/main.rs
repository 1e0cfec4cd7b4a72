mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use spheract_core::character::{analyze_group, export_table, EmbeddingReport};
use spheract_core::group::{GroupOptions, GroupSpec};
use spheract_core::simplicial::{build_complex, homology, join, ComplexSpec, SimplicialComplex};
use spheract_core::verify::{
    emit_report, emit_suite, verify, ReportFormat, SuiteReport, VerificationCase, VerificationReport, VerifyOptions,
};

const EXIT_FAIL: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_INTERNAL: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "spheract", version, about = "Exact checks for finite group actions on spheres")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Output format.
    #[arg(long, global = true, value_name = "FORMAT", default_value = "json")]
    report: ReportFormat,
    /// Output file, or a format name (`json`, `markdown`) to print to stdout in that format.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<String>,
    /// Facet file of the homology 3-sphere used in joins (defaults to the bundled 16-vertex one).
    #[arg(long, global = true, value_name = "PATH")]
    m3: Option<PathBuf>,
    /// Worker threads for independent cases.
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,
    /// Accept Milnor parameters outside the standing hypotheses.
    #[arg(long, global = true)]
    allow_nonstandard: bool,
    /// Record per-stage wall-clock times (makes reports nondeterministic).
    #[arg(long, global = true)]
    timings: bool,
    /// Full kernel scans run up to this multiple of the enumeration bound.
    #[arg(long, global = true, value_name = "K", default_value_t = 1)]
    scan_factor: u64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a verification pipeline.
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Group-level computations.
    #[command(subcommand)]
    Group(GroupCommand),
    /// Simplicial complex computations.
    #[command(subcommand)]
    Complex(ComplexCommand),
}

#[derive(Args, Debug, Clone, Copy)]
struct Milnor {
    #[arg(long, default_value_t = 3)]
    a: u64,
    #[arg(long, default_value_t = 5)]
    b: u64,
    #[arg(long, default_value_t = 1)]
    c: u64,
}

#[derive(Subcommand, Debug)]
enum VerifyCommand {
    /// Milnor(a,b,c) x A_n on S^(n+2).
    Theorem {
        #[command(flatten)]
        q: Milnor,
        #[arg(long)]
        n: usize,
    },
    /// Milnor(a,b,c) x H on S^d with H = A5, S5, A6 for d = 6, 7, 8.
    Lowdim {
        #[arg(long)]
        d: u64,
        #[command(flatten)]
        q: Milnor,
    },
    /// Milnor(a,b,c) x Z_k on S^5.
    Family {
        #[command(flatten)]
        q: Milnor,
        #[arg(long)]
        k: u64,
    },
    /// Double-cone fixed set of a scaled-down joined action, and freeness checks.
    Fixedset {
        #[command(flatten)]
        q: Milnor,
    },
    /// Homology of a join against sphere arithmetic.
    Join {
        #[arg(long)]
        left: ComplexSpec,
        #[arg(long)]
        right: ComplexSpec,
    },
    /// The standard cases, run in parallel.
    All,
}

#[derive(Subcommand, Debug)]
enum GroupCommand {
    /// Character table with indicators and real units.
    Chartable { spec: GroupSpec },
    /// Minimal faithful real degree, optionally against a bound `m`.
    Mindegree {
        spec: GroupSpec,
        #[arg(long)]
        m: Option<u64>,
    },
}

#[derive(Subcommand, Debug)]
enum ComplexCommand {
    /// Integral homology of a facet file or a complex spec.
    Homology {
        #[arg(long, conflicts_with = "spec", required_unless_present = "spec")]
        file: Option<PathBuf>,
        #[arg(long)]
        spec: Option<ComplexSpec>,
    },
    /// Join of two complexes with its homology.
    Join {
        #[arg(long)]
        left: ComplexSpec,
        #[arg(long)]
        right: ComplexSpec,
    },
}

/// Where and how to write the result.
struct Sink {
    format: ReportFormat,
    path: Option<PathBuf>,
}

impl Sink {
    fn new(g: &Global) -> Self {
        match g.out.as_deref() {
            None => Sink { format: g.report, path: None },
            Some(s) => match s.parse::<ReportFormat>() {
                Ok(format) => Sink { format, path: None },
                Err(_) => Sink { format: g.report, path: Some(PathBuf::from(s)) },
            },
        }
    }

    fn write(&self, text: &str) -> Result<(), Failure> {
        match &self.path {
            None => {
                print!("{text}");
                Ok(())
            }
            Some(p) => std::fs::write(p, text)
                .map_err(|e| Failure::input(format!("cannot write {}: {e}", p.display()))),
        }
    }
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: String) -> Self {
        Failure { code: EXIT_INPUT, message }
    }
}

impl From<spheract_core::Error> for Failure {
    fn from(e: spheract_core::Error) -> Self {
        Failure {
            code: if e.is_internal() { EXIT_INTERNAL } else { EXIT_INPUT },
            message: e.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    let g = &cli.global;
    let sink = Sink::new(g);
    let group_opts = GroupOptions {
        allow_nonstandard: g.allow_nonstandard,
        ..GroupOptions::default()
    };
    match &cli.command {
        Command::Verify(cmd) => {
            let opts = VerifyOptions {
                group: group_opts,
                m3: g.m3.clone(),
                action_scan_factor: g.scan_factor,
                timings: g.timings,
            };
            run_verify(cmd, &opts, g.jobs, &sink)
        }
        Command::Group(cmd) => run_group(cmd, &group_opts, &sink),
        Command::Complex(cmd) => run_complex(cmd, g, &sink),
    }
}

fn case_of(cmd: &VerifyCommand) -> Option<VerificationCase> {
    Some(match cmd {
        VerifyCommand::Theorem { q, n } => VerificationCase::Theorem { a: q.a, b: q.b, c: q.c, n: *n },
        VerifyCommand::Lowdim { d, q } => VerificationCase::Lowdim { d: *d, a: q.a, b: q.b, c: q.c },
        VerifyCommand::Family { q, k } => VerificationCase::Family { a: q.a, b: q.b, c: q.c, k: *k },
        VerifyCommand::Fixedset { q } => VerificationCase::FixedSet { a: q.a, b: q.b, c: q.c },
        VerifyCommand::Join { left, right } => VerificationCase::JoinCheck {
            left: left.clone(),
            right: right.clone(),
        },
        VerifyCommand::All => return None,
    })
}

/// The cases behind `verify all`.
fn standard_cases() -> Vec<VerificationCase> {
    let mut cases = vec![VerificationCase::Theorem { a: 3, b: 5, c: 1, n: 7 }];
    for d in 6..=8 {
        cases.push(VerificationCase::Lowdim { d, a: 3, b: 5, c: 1 });
    }
    cases.push(VerificationCase::Family { a: 3, b: 5, c: 1, k: 5 });
    cases.push(VerificationCase::FixedSet { a: 3, b: 5, c: 1 });
    cases.push(VerificationCase::JoinCheck {
        left: ComplexSpec::M3,
        right: ComplexSpec::Polygon(3),
    });
    cases
}

fn exit_code(reports: &[VerificationReport]) -> u8 {
    if reports.iter().any(VerificationReport::has_internal_error) {
        EXIT_INTERNAL
    } else if reports.iter().any(|r| r.failed_stage.is_some()) {
        EXIT_INPUT
    } else if reports.iter().all(|r| r.overall) {
        0
    } else {
        EXIT_FAIL
    }
}

fn run_verify(cmd: &VerifyCommand, opts: &VerifyOptions, jobs: Option<usize>, sink: &Sink) -> Result<u8, Failure> {
    if let Some(case) = case_of(cmd) {
        case.validate(opts.group.allow_nonstandard)?;
        let report = verify(&case, opts)?;
        sink.write(&emit_report(&report, sink.format))?;
        if let Some(id) = &report.failed_stage {
            eprintln!("stage {id} did not complete");
        }
        return Ok(exit_code(std::slice::from_ref(&report)));
    }
    let cases = standard_cases();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()
        .map_err(|e| Failure::input(format!("cannot start {jobs:?} workers: {e}")))?;
    let reports: Vec<_> = pool.install(|| cases.par_iter().map(|c| verify(c, opts)).collect());
    let reports = reports.into_iter().collect::<spheract_core::Result<Vec<_>>>()?;
    let code = exit_code(&reports);
    sink.write(&emit_suite(&SuiteReport::new(reports), sink.format))?;
    Ok(code)
}

fn run_group(cmd: &GroupCommand, opts: &GroupOptions, sink: &Sink) -> Result<u8, Failure> {
    match cmd {
        GroupCommand::Chartable { spec } => {
            let a = analyze_group(spec, opts)?;
            let export = export_table(&a.table)?;
            let text = match sink.format {
                ReportFormat::Json => render::json(&export),
                ReportFormat::Markdown => render::table_markdown(&export),
            };
            sink.write(&text)?;
        }
        GroupCommand::Mindegree { spec, m } => {
            let a = analyze_group(spec, opts)?;
            let embedding = m.map(|m| EmbeddingReport::from_min_degree(a.min_degree.clone(), m));
            let out = render::MinDegreeOutput::new(&a, embedding.as_ref());
            let text = match sink.format {
                ReportFormat::Json => render::json(&out),
                ReportFormat::Markdown => out.markdown(),
            };
            sink.write(&text)?;
        }
    }
    Ok(0)
}

fn load(spec: &ComplexSpec, g: &Global) -> spheract_core::Result<SimplicialComplex> {
    match (spec, &g.m3) {
        (ComplexSpec::M3, Some(p)) => SimplicialComplex::from_file(p),
        _ => build_complex(spec),
    }
}

fn run_complex(cmd: &ComplexCommand, g: &Global, sink: &Sink) -> Result<u8, Failure> {
    let (name, k) = match cmd {
        ComplexCommand::Homology { file: Some(p), .. } => (p.display().to_string(), SimplicialComplex::from_file(p)?),
        ComplexCommand::Homology { spec: Some(s), .. } => (s.to_string(), load(s, g)?),
        ComplexCommand::Homology { .. } => return Err(Failure::input("give --file or --spec".into())),
        ComplexCommand::Join { left, right } => {
            let k = join(&load(left, g)?, &load(right, g)?);
            (format!("join({left},{right})"), k)
        }
    };
    let with_facets = matches!(cmd, ComplexCommand::Join { .. });
    let out = render::ComplexOutput::new(name, &k, homology(&k)?, with_facets);
    let text = match sink.format {
        ReportFormat::Json => render::json(&out),
        ReportFormat::Markdown => out.markdown(),
    };
    sink.write(&text)?;
    Ok(0)
}
