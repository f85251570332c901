use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use distlat::enumerate::{run_scan, ScanConfig, ScanError, DEFAULT_MAX_POSET_SIZE};
use distlat::hibi::{ideal_header, render_ideal, try_complete_intersection_verdict};
use distlat::invariants::{counters, try_bounds_report};
use distlat::lattice::{ideal_lattice_capped, DEFAULT_MAX_ELEMENTS};
use distlat::poset::RedundantCover;
use distlat::structure::{maximal_join_irreducibles, FactorClass};
use distlat::{
    birkhoff_poset, classify_ci_shape, decompose_thick, ideal_generators, prune,
    validate_distributive_lattice, DistLattice, LatticeError, TheoremViolation,
};
use thiserror::Error;

use crate::document::{parse_input, InputDocument, Kind, ParseError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_THEOREM: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "distlat",
    about = "Finite distributive lattice toolkit",
    version
)]
struct Cli {
    /// Largest lattice built from a poset file.
    #[arg(long, global = true, value_name = "N")]
    max_elements: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Validate a lattice or poset file.
    Check { file: PathBuf },
    /// Invariants, bounds, thickness and the complete-intersection verdict.
    Analyze {
        file: PathBuf,
        /// Counting route for n: pair-scan, identity or diamonds.
        #[arg(long)]
        counter: Option<String>,
    },
    /// Thick factors and their classes.
    Decompose { file: PathBuf },
    /// Remove everything above a maximal join irreducible.
    Prune {
        file: PathBuf,
        #[arg(long, value_name = "NAME")]
        at: Option<String>,
    },
    /// Binomial generators of the Hibi ideal.
    Ideal {
        file: PathBuf,
        #[arg(short = 'o', value_name = "OUT")]
        out: Option<PathBuf>,
    },
    /// Convert lattice -> poset of join irreducibles, or poset -> lattice of down-sets.
    Birkhoff { file: PathBuf },
    /// Run the theorem suite over every lattice from posets up to a size.
    Enumerate {
        #[arg(long)]
        max: usize,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, value_name = "OUT")]
        tsv: Option<PathBuf>,
        /// Comma-separated subset of theorem checks.
        #[arg(long, value_delimiter = ',')]
        checks: Option<Vec<String>>,
        /// Raise the largest allowed poset size.
        #[arg(long, default_value_t = DEFAULT_MAX_POSET_SIZE)]
        poset_cap: usize,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Theorem(#[from] TheoremViolation),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io { .. } => EXIT_USAGE,
            CliError::Parse(_) | CliError::Lattice(_) => EXIT_INVALID,
            CliError::Theorem(_) => EXIT_THEOREM,
        }
    }
}

/// Exit status plus the text destined for stdout and stderr.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// `key = value` lines with keys in sorted order.
#[derive(Debug, Default)]
struct Report(BTreeMap<String, String>);

impl Report {
    fn set(&mut self, key: impl Into<String>, value: impl ToString) -> &mut Self {
        self.0.insert(key.into(), value.to_string());
        self
    }

    fn render(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.0 {
            let _ = writeln!(out, "{k} = {v}");
        }
        out
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

struct Loaded {
    kind: Kind,
    lattice: DistLattice,
    redundant: Vec<RedundantCover>,
}

fn load(path: &Path, cap: usize) -> Result<Loaded, CliError> {
    let doc = parse_input(&read(path)?)?;
    let (poset, redundant) = doc.build_poset()?;
    let lattice = match doc.kind {
        Kind::Lattice => validate_distributive_lattice(&poset)?,
        Kind::Poset => ideal_lattice_capped(&poset, cap)?,
    };
    Ok(Loaded {
        kind: doc.kind,
        lattice,
        redundant,
    })
}

fn note_redundant(report: &mut Report, redundant: &[RedundantCover]) {
    if !redundant.is_empty() {
        let list: Vec<String> = redundant
            .iter()
            .map(|r| format!("{}>{}", r.upper, r.lower))
            .collect();
        report.set("warning.redundant_covers", list.join(" "));
    }
}

fn join_names<'a>(names: impl IntoIterator<Item = &'a str>) -> String {
    let v: Vec<&str> = names.into_iter().collect();
    if v.is_empty() {
        "(none)".to_string()
    } else {
        v.join(" ")
    }
}

fn cmd_check(path: &Path, cap: usize) -> Result<(i32, String), CliError> {
    let doc = parse_input(&read(path)?)?;
    let mut report = Report::default();
    report.set("kind", doc.kind.as_str());
    match check_document(&doc, cap, &mut report) {
        Ok(()) => {
            report.set("check", "ok");
            Ok((EXIT_OK, report.render()))
        }
        Err(e) => {
            report.set("check", "failed").set("error", &e);
            Ok((e.exit_code(), report.render()))
        }
    }
}

fn check_document(doc: &InputDocument, cap: usize, report: &mut Report) -> Result<(), CliError> {
    let (poset, redundant) = doc.build_poset()?;
    note_redundant(report, &redundant);
    report.set("size", poset.size());
    match doc.kind {
        Kind::Lattice => {
            let l = validate_distributive_lattice(&poset)?;
            report
                .set("j_size", l.j_size())
                .set("edges", l.edge_count());
        }
        Kind::Poset => {
            let l = ideal_lattice_capped(&poset, cap)?;
            report
                .set("covers", poset.covers().len())
                .set("lattice_size", l.size());
        }
    }
    Ok(())
}

fn cmd_analyze(path: &Path, cap: usize, counter: Option<&str>) -> Result<String, CliError> {
    let loaded = load(path, cap)?;
    let l = &loaded.lattice;
    let rec = try_bounds_report(l)?;
    let ci = try_complete_intersection_verdict(l)?;
    let mut report = Report::default();
    if let Some(name) = counter {
        let registry = counters();
        let c = registry
            .get(name)
            .map_err(|e| CliError::Usage(e.to_string()))?;
        let n = c.count(l);
        if n != rec.n {
            return Err(TheoremViolation::new(
                "count_agreement",
                format!("{name} gives {n}, pair scan gives {}", rec.n),
            )
            .into());
        }
        report.set("counter", name);
    }
    let f_vector: Vec<String> = l
        .elements()
        .zip(&rec.f_vector)
        .map(|(e, f)| format!("{}:{f}", l.name(e)))
        .collect();
    let conjecture = match rec.conjecture_holds() {
        Some(true) => "holds",
        Some(false) => "violated",
        None => "not-applicable",
    };
    note_redundant(&mut report, &loaded.redundant);
    report
        .set("kind", loaded.kind.as_str())
        .set("size", rec.size)
        .set("j_size", rec.j_size)
        .set("rank", rec.j_size - 1)
        .set("n", rec.n)
        .set("e", rec.e)
        .set("f_vector", f_vector.join(" "))
        .set("f_sum", rec.f_sum)
        .set("lower_rank", rec.lower_rank)
        .set("lower_edge", rec.lower_edge)
        .set("upper", rec.upper)
        .set("conjecture_rhs", rec.conjecture_rhs)
        .set("conjecture", conjecture)
        .set("thick", rec.thick)
        .set("ambient_dim", ci.ambient_dim)
        .set("variety_dim", ci.variety_dim)
        .set("codim", ci.codim)
        .set("generators", ci.generator_count)
        .set("complete_intersection", ci.is_complete_intersection);
    Ok(report.render())
}

fn cmd_decompose(path: &Path, cap: usize) -> Result<String, CliError> {
    let loaded = load(path, cap)?;
    let l = &loaded.lattice;
    let d = decompose_thick(l);
    let shape = classify_ci_shape(l);
    let mut report = Report::default();
    note_redundant(&mut report, &loaded.redundant);
    report
        .set("size", l.size())
        .set("factor_count", d.factors.len())
        .set(
            "cut_elements",
            join_names(d.cut_elements.iter().map(|&c| l.name(c))),
        )
        .set("equality_case", shape.is_equality_case);
    for (i, (f, class)) in d.factors.iter().zip(&shape.factor_classes).enumerate() {
        debug_assert_eq!(FactorClass::of(f), *class);
        report.set(
            format!("factor.{i:03}"),
            format!(
                "{class} [{}]",
                join_names(
                    f.order()
                        .linear_extension()
                        .into_iter()
                        .map(|i| f.name(i.into()))
                )
            ),
        );
    }
    Ok(report.render())
}

fn cmd_prune(path: &Path, cap: usize, at: Option<&str>) -> Result<String, CliError> {
    let loaded = load(path, cap)?;
    let l = &loaded.lattice;
    let alpha = match at {
        Some(name) => l.id_of(name)?,
        None => *maximal_join_irreducibles(l)
            .first()
            .ok_or_else(|| CliError::Usage("a one-element lattice has nothing to prune".into()))?,
    };
    let pruned = prune(l, alpha)?;
    Ok(InputDocument::from_lattice(&pruned).render())
}

fn cmd_ideal(path: &Path, cap: usize, out: Option<&Path>) -> Result<String, CliError> {
    let loaded = load(path, cap)?;
    let l = &loaded.lattice;
    let verdict = try_complete_intersection_verdict(l)?;
    let gens = ideal_generators(l);
    let text = format!(
        "{}{}",
        ideal_header(&verdict),
        render_ideal(&gens, l.names())
    );
    match out {
        Some(p) => {
            write(p, &text)?;
            let mut report = Report::default();
            report
                .set("generators", gens.len())
                .set("wrote", p.display());
            Ok(report.render())
        }
        None => Ok(text),
    }
}

fn cmd_birkhoff(path: &Path, cap: usize) -> Result<String, CliError> {
    let doc = parse_input(&read(path)?)?;
    let (poset, _) = doc.build_poset()?;
    Ok(match doc.kind {
        Kind::Lattice => {
            let l = validate_distributive_lattice(&poset)?;
            InputDocument::from_poset(Kind::Poset, &birkhoff_poset(&l)).render()
        }
        Kind::Poset => InputDocument::from_lattice(&ideal_lattice_capped(&poset, cap)?).render(),
    })
}

fn cmd_enumerate(
    max: usize,
    jobs: usize,
    tsv: Option<&Path>,
    checks: Option<Vec<String>>,
    poset_cap: usize,
) -> Result<(i32, String), CliError> {
    if jobs == 0 {
        return Err(CliError::Usage("--jobs must be at least 1".into()));
    }
    let cfg = ScanConfig {
        max_poset_size: max,
        workers: jobs,
        poset_cap,
        checks,
    };
    let report = run_scan(&cfg).map_err(|e| match e {
        ScanError::Lattice(LatticeError::SizeLimitExceeded { limit, what }) => CliError::Usage(
            format!("--max {max} exceeds the limit of {limit} {what}; raise it with --poset-cap"),
        ),
        ScanError::Lattice(e) => e.into(),
        other => CliError::Usage(other.to_string()),
    })?;
    if let Some(p) = tsv {
        write(p, &report.render_tsv())?;
    }
    let code = if report.failures.is_empty() {
        EXIT_OK
    } else {
        EXIT_THEOREM
    };
    Ok((code, report.render_text()))
}

fn dispatch(cli: Cli) -> Result<(i32, String), CliError> {
    let cap = cli.max_elements.unwrap_or(DEFAULT_MAX_ELEMENTS);
    let ok = |s: String| (EXIT_OK, s);
    match cli.command {
        Command::Check { file } => cmd_check(&file, cap),
        Command::Analyze { file, counter } => cmd_analyze(&file, cap, counter.as_deref()).map(ok),
        Command::Decompose { file } => cmd_decompose(&file, cap).map(ok),
        Command::Prune { file, at } => cmd_prune(&file, cap, at.as_deref()).map(ok),
        Command::Ideal { file, out } => cmd_ideal(&file, cap, out.as_deref()).map(ok),
        Command::Birkhoff { file } => cmd_birkhoff(&file, cap).map(ok),
        Command::Enumerate {
            max,
            jobs,
            tsv,
            checks,
            poset_cap,
        } => cmd_enumerate(max, jobs, tsv.as_deref(), checks, poset_cap),
    }
}

/// Parses `argv` (program name first) and runs the selected command.
pub fn run_command<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    match dispatch(cli) {
        Ok((code, stdout)) => Outcome {
            code,
            stdout,
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}
