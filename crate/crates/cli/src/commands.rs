//! Command-line surface.
//!
//! Exit codes: 0 completed, 1 parse or validation failure, 2 soundness alarm,
//! 64 usage error.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use leibniz_core::algebra::{AlgebraError, Element, LeibnizAlgebra};
use leibniz_core::analysis::{self, AbNilOutcome, SeriesResult};
use leibniz_core::constructions::{self, CatalogEntry, RANDOM_DIM_CAP};
use leibniz_core::recognizability::{
    self, check_frattini_lift, check_recognizability, default_sample_count, evaluate_property,
    format_coords, property_audit, witness_search, Consistency, EfSide, LiftStatus, Property,
    SampleStrategy, Witness, WitnessMode,
};

use crate::file::{parse_algebra_file, serialize_algebra};
use crate::report::{Format, ReportDocument};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_ALARM: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Parser, Debug)]
#[command(
    name = "leibniz",
    version,
    about = "Classify finite-dimensional Leibniz algebras and test recognizability"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct RunOpts {
    /// Number of sampled elements (default 2*dim + 8)
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "text")]
    format: Format,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the left Leibniz identity on every basis triple
    Validate {
        file: PathBuf,
        #[arg(long, default_value = "text")]
        format: Format,
    },
    /// Full structural report
    Analyze {
        file: PathBuf,
        #[command(flatten)]
        opts: RunOpts,
    },
    /// Decide a single property
    Check {
        prop: Property,
        file: PathBuf,
        #[command(flatten)]
        opts: RunOpts,
    },
    /// Compare a property on sampled n-generated subalgebras with the whole algebra
    Recog {
        #[arg(long, value_parser = clap::value_parser!(u8).range(2..=3))]
        n: u8,
        #[arg(long)]
        prop: Property,
        file: PathBuf,
        #[command(flatten)]
        opts: RunOpts,
    },
    /// Search sampled tuples for non-vanishing e/f or d sequences
    Witness {
        #[arg(long)]
        mode: WitnessMode,
        file: PathBuf,
        /// Maximum number of tuples visited
        #[arg(long)]
        budget: Option<usize>,
        #[command(flatten)]
        opts: RunOpts,
    },
    /// Write the catalog and seeded random algebras with their frozen flags
    Corpus {
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = RANDOM_DIM_CAP)]
        max_dim: usize,
        #[arg(long, default_value = "text")]
        format: Format,
    },
    /// Sampled structural checks and the Frattini lift check
    Audit {
        file: PathBuf,
        #[command(flatten)]
        opts: RunOpts,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommandOutput {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CommandOutput {
    fn report(status: i32, doc: &ReportDocument, format: Format) -> CommandOutput {
        CommandOutput {
            status,
            stdout: doc.emit(format),
            stderr: String::new(),
        }
    }

    fn error(status: i32, message: impl std::fmt::Display) -> CommandOutput {
        CommandOutput {
            status,
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
        }
    }
}

struct Failure(CommandOutput);

impl From<AlgebraError> for Failure {
    fn from(e: AlgebraError) -> Failure {
        Failure(CommandOutput::error(EXIT_INVALID, e))
    }
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run_command<I, T>(argv: I) -> CommandOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => CommandOutput {
                    status: EXIT_OK,
                    stdout: rendered,
                    stderr: String::new(),
                },
                _ => CommandOutput {
                    status: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: rendered,
                },
            };
        }
    };
    let result = match cli.command {
        Command::Validate { file, format } => validate(&file, format),
        Command::Analyze { file, opts } => analyze(&file, &opts),
        Command::Check { prop, file, opts } => check(prop, &file, &opts),
        Command::Recog {
            n,
            prop,
            file,
            opts,
        } => recog(n as usize, prop, &file, &opts),
        Command::Witness {
            mode,
            file,
            budget,
            opts,
        } => witness(mode, &file, budget, &opts),
        Command::Corpus {
            out,
            seed,
            max_dim,
            format,
        } => corpus(&out, seed, max_dim, format),
        Command::Audit { file, opts } => audit(&file, &opts),
    };
    result.unwrap_or_else(|Failure(out)| out)
}

fn load(path: &Path) -> Result<LeibnizAlgebra, Failure> {
    let text = fs::read_to_string(path).map_err(|e| {
        Failure(CommandOutput::error(
            EXIT_INVALID,
            format!("{}: {e}", path.display()),
        ))
    })?;
    parse_algebra_file(&text).map_err(|e| {
        Failure(CommandOutput::error(
            EXIT_INVALID,
            format!("{}: {e}", path.display()),
        ))
    })
}

fn violation_message(a: &LeibnizAlgebra, (i, j, k): (usize, usize, usize)) -> String {
    let l = a.labels();
    format!("({}, {}, {})", l[i], l[j], l[k])
}

fn load_valid(path: &Path) -> Result<LeibnizAlgebra, Failure> {
    let a = load(path)?;
    if a.is_validated() {
        return Ok(a);
    }
    let report = a.validate();
    let first = report.violations[0];
    Err(Failure(CommandOutput::error(
        EXIT_INVALID,
        format!(
            "{}: Leibniz identity fails on {} triple(s), first {}",
            path.display(),
            report.violations.len(),
            violation_message(&a, first)
        ),
    )))
}

fn describe_algebra(doc: &mut ReportDocument, a: &LeibnizAlgebra) {
    doc.set("algebra.field", a.field());
    doc.set("algebra.dim", a.dim());
    doc.set("algebra.basis", a.labels().join(" "));
}

fn samples_for(a: &LeibnizAlgebra, opts: &RunOpts, doc: &mut ReportDocument) -> Vec<Element> {
    let count = opts
        .samples
        .unwrap_or_else(|| default_sample_count(a.dim()));
    let samples = recognizability::sample_elements(a, count, opts.seed, SampleStrategy::Default);
    doc.set("run.seed", opts.seed);
    doc.set("run.samples", samples.len());
    samples
}

fn join<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items
        .into_iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn series_entries(doc: &mut ReportDocument, name: &str, s: &SeriesResult) {
    doc.set(format!("series.{name}.dims"), join(s.dims()));
    doc.set(format!("series.{name}.terminated"), s.terminated);
}

fn validate(path: &Path, format: Format) -> Result<CommandOutput, Failure> {
    let a = load(path)?;
    let mut doc = ReportDocument::new("validate");
    describe_algebra(&mut doc, &a);
    let report = a.validate();
    doc.set("validation.valid", report.is_valid());
    doc.set("validation.violations", report.violations.len());
    match report.violations.first() {
        Some(&first) => {
            doc.set("validation.witness", violation_message(&a, first));
            let mut out = CommandOutput::report(EXIT_INVALID, &doc, format);
            out.stderr = format!(
                "error: Leibniz identity fails on {} triple(s), first {}\n",
                report.violations.len(),
                violation_message(&a, first)
            );
            Ok(out)
        }
        None => Ok(CommandOutput::report(EXIT_OK, &doc, format)),
    }
}

fn analyze(path: &Path, opts: &RunOpts) -> Result<CommandOutput, Failure> {
    let a = load_valid(path)?;
    let mut doc = ReportDocument::new("analyze");
    describe_algebra(&mut doc, &a);
    doc.set("validation.valid", true);
    let samples = samples_for(&a, opts, &mut doc);

    let flags = analysis::classify(&a)?;
    let flag = analysis::is_supersolvable(&a)?;
    let abnil = if a.dim() == 0 {
        None
    } else {
        Some(analysis::is_abelian_by_nilpotent(&a, &samples)?)
    };
    let abnil_name = match abnil.as_ref().map_or(Some(true), |v| v.holds()) {
        Some(true) => "true",
        Some(false) => "false",
        None => "unknown",
    };
    doc.set("flags.abelian", flags.abelian);
    doc.set("flags.nilpotent", flags.nilpotent);
    doc.set("flags.solvable", flags.solvable);
    doc.set("flags.strongly_solvable", flags.strongly_solvable);
    doc.set("flags.supersolvable", flag.is_some());
    doc.set("flags.abelian_by_nilpotent", abnil_name);
    doc.set("flags.lie", flags.lie);
    doc.set(
        "flags.nilpotency_class",
        flags
            .nilpotency_class
            .map_or("none".into(), |c| c.to_string()),
    );
    doc.set(
        "flags.derived_length",
        flags
            .derived_length
            .map_or("none".into(), |c| c.to_string()),
    );

    series_entries(&mut doc, "derived", &analysis::derived_series(&a)?);
    series_entries(
        &mut doc,
        "lower_central",
        &analysis::lower_central_series(&a)?,
    );
    doc.set("structure.leib.dim", a.leib_ideal().dim());
    let full = a.full_space();
    doc.set(
        "structure.square.dim",
        a.subspace_product(&full, &full)?.dim(),
    );
    doc.set(
        "structure.one_dim_ideal",
        analysis::find_one_dim_ideal(&a)?.map_or("none".into(), |v| format_coords(&v)),
    );
    doc.set(
        "structure.flag.dims",
        flag.as_ref().map_or("none".into(), |f| join(f.dims())),
    );

    let mut alarm = false;
    if let Some(v) = &abnil {
        let split = analysis::primary_split(&a, &v.regular_element)?;
        doc.set("decomposition.element", format_coords(&v.regular_element));
        doc.set("decomposition.fitting_null.dim", v.fitting_null.dim());
        doc.set("decomposition.fitting_one.dim", v.fitting_one.dim());
        doc.set(
            "decomposition.minimal_polynomial",
            &split.minimal_polynomial,
        );
        doc.set(
            "decomposition.roots",
            if split.roots.is_empty() {
                "none".to_string()
            } else {
                join(split.roots.iter().map(|(c, m)| format!("{c}:{m}")))
            },
        );
        doc.set("decomposition.split_part.dim", split.split_part.dim());
        doc.set("decomposition.nonsplit_part.dim", split.nonsplit_part.dim());

        let crit = analysis::check_split_criterion(&a, &samples)?;
        let split_count = crit.samples_split.iter().filter(|&&b| b).count();
        doc.set("split_criterion.samples_split", split_count);
        doc.set("split_criterion.flag_exists", crit.flag_exists);
        doc.set("split_criterion.consistent", crit.consistent);
        alarm |= crit.flag_exists && !(crit.strongly_solvable && split_count == samples.len());

        match &v.outcome {
            AbNilOutcome::Yes { ideal } => {
                doc.set("abelian_by_nilpotent.ideal.dim", ideal.dim());
                doc.set("witness.found", false);
            }
            AbNilOutcome::No(w) => {
                doc.set("witness.found", true);
                doc.set("witness.mode", "d");
                d_witness_entries(&mut doc, &samples, w);
            }
            AbNilOutcome::Unknown => {
                doc.set("witness.found", false);
            }
        }
    }
    let status = if alarm { EXIT_ALARM } else { EXIT_OK };
    Ok(CommandOutput::report(status, &doc, opts.format))
}

fn d_witness_entries(doc: &mut ReportDocument, samples: &[Element], w: &analysis::DWitness) {
    doc.set("witness.x", format_coords(&samples[w.x]));
    doc.set("witness.y", format_coords(&samples[w.y]));
    doc.set("witness.z", format_coords(&samples[w.z]));
    doc.set("witness.sample_indices", join([w.x, w.y, w.z]));
    doc.set("witness.k", w.k);
    doc.set("witness.value", format_coords(&w.value));
}

fn check(prop: Property, path: &Path, opts: &RunOpts) -> Result<CommandOutput, Failure> {
    let a = load_valid(path)?;
    let mut doc = ReportDocument::new("check");
    describe_algebra(&mut doc, &a);
    doc.set("run.seed", opts.seed);
    let verdict = if prop == Property::AbelianByNilpotent && opts.samples.is_some() {
        let samples = samples_for(&a, opts, &mut doc);
        match analysis::is_abelian_by_nilpotent(&a, &samples)?.holds() {
            Some(true) => "true",
            Some(false) => "false",
            None => "unknown",
        }
    } else {
        evaluate_property(&a, prop, opts.seed)?.name()
    };
    doc.set(format!("flags.{prop}"), verdict);
    Ok(CommandOutput::report(EXIT_OK, &doc, opts.format))
}

fn recog(n: usize, prop: Property, path: &Path, opts: &RunOpts) -> Result<CommandOutput, Failure> {
    let a = load_valid(path)?;
    let mut doc = ReportDocument::new("recog");
    describe_algebra(&mut doc, &a);
    let samples = samples_for(&a, opts, &mut doc);
    let report = check_recognizability(&a, prop, n, &samples, opts.seed)
        .map_err(|e| Failure(CommandOutput::error(EXIT_USAGE, e)))?;
    doc.set("recog.property", prop);
    doc.set("recog.n", n);
    doc.set("recog.whole", report.whole.name());
    doc.set("recog.rows", report.rows.len());
    doc.set("recog.proper_rows", report.proper_rows().count());
    doc.set("recog.all_rows_hold", report.all_rows_hold());
    doc.set("recog.proper_rows_hold", report.proper_rows_hold());
    doc.set("recog.counterexample", report.proper_counterexample());
    doc.set("recog.consistency", report.consistency.name());
    for (i, s) in samples.iter().enumerate() {
        doc.set(format!("sample.{i:04}"), format_coords(s));
    }
    for (r, row) in report.rows.iter().enumerate() {
        let key = format!("row.{r:05}");
        doc.set(format!("{key}.samples"), join(&row.indices));
        doc.set(format!("{key}.dim"), row.dim);
        doc.set(format!("{key}.proper"), row.proper);
        doc.set(format!("{key}.verdict"), row.verdict.name());
    }
    let status = if report.consistency == Consistency::SoundnessFailure {
        EXIT_ALARM
    } else {
        EXIT_OK
    };
    Ok(CommandOutput::report(status, &doc, opts.format))
}

fn witness(
    mode: WitnessMode,
    path: &Path,
    budget: Option<usize>,
    opts: &RunOpts,
) -> Result<CommandOutput, Failure> {
    let a = load_valid(path)?;
    let mut doc = ReportDocument::new("witness");
    describe_algebra(&mut doc, &a);
    let samples = samples_for(&a, opts, &mut doc);
    doc.set(
        "run.budget",
        budget.map_or("none".into(), |b| b.to_string()),
    );
    doc.set(
        "witness.mode",
        match mode {
            WitnessMode::Ef => "ef",
            WitnessMode::D => "d",
        },
    );
    match witness_search(&a, mode, &samples, budget)? {
        None => doc.set("witness.found", false),
        Some(Witness::D(w)) => {
            doc.set("witness.found", true);
            d_witness_entries(&mut doc, &samples, &w);
        }
        Some(Witness::Ef {
            x,
            y,
            side,
            n,
            value,
        }) => {
            doc.set("witness.found", true);
            doc.set("witness.x", format_coords(&samples[x]));
            doc.set("witness.y", format_coords(&samples[y]));
            doc.set("witness.sample_indices", join([x, y]));
            doc.set(
                "witness.sequence",
                match side {
                    EfSide::E => "e",
                    EfSide::F => "f",
                },
            );
            doc.set("witness.n", n);
            doc.set("witness.value", format_coords(&value));
        }
    }
    Ok(CommandOutput::report(EXIT_OK, &doc, opts.format))
}

/// Frozen ground-truth flags for a corpus entry, as `dotted.key = value` lines.
pub fn flags_file(entry: &CatalogEntry) -> String {
    let mut doc = ReportDocument::default();
    doc.set("entry.name", &entry.name);
    doc.set("entry.params", join(&entry.params));
    doc.set("entry.provenance", &entry.provenance);
    doc.set("entry.dim", entry.algebra.dim());
    for (k, v) in entry.expected.entries() {
        doc.set(format!("flags.{k}"), v);
    }
    doc.emit(Format::Kv)
}

fn corpus(out: &Path, seed: u64, max_dim: usize, format: Format) -> Result<CommandOutput, Failure> {
    let entries = constructions::build_corpus(seed, max_dim)
        .map_err(|e| Failure(CommandOutput::error(EXIT_USAGE, e)))?;
    let io = |e: std::io::Error| Failure(CommandOutput::error(EXIT_INVALID, e));
    fs::create_dir_all(out).map_err(io)?;
    let mut doc = ReportDocument::new("corpus");
    doc.set("run.seed", seed);
    doc.set("corpus.max_dim", max_dim);
    doc.set("corpus.entries", entries.len());
    for (i, entry) in entries.iter().enumerate() {
        let slug = entry.slug();
        fs::write(
            out.join(format!("{slug}.alg")),
            serialize_algebra(&entry.algebra),
        )
        .map_err(io)?;
        fs::write(out.join(format!("{slug}.flags")), flags_file(entry)).map_err(io)?;
        doc.set(format!("corpus.entry.{i:03}"), slug);
    }
    Ok(CommandOutput::report(EXIT_OK, &doc, format))
}

fn audit(path: &Path, opts: &RunOpts) -> Result<CommandOutput, Failure> {
    let a = load_valid(path)?;
    let mut doc = ReportDocument::new("audit");
    describe_algebra(&mut doc, &a);
    let samples = samples_for(&a, opts, &mut doc);
    let report = property_audit(&a, &samples)?;
    let mut alarm = !report.passed();
    for (name, status) in report.entries() {
        doc.set(format!("audit.{name}.status"), status.label());
        doc.set(format!("audit.{name}.checked"), status.checked);
        doc.set(format!("audit.{name}.failures"), status.failures);
    }
    let crit = analysis::check_split_criterion(&a, &samples)?;
    let conditions = crit.strongly_solvable && crit.samples_split.iter().all(|&b| b);
    let crit_alarm = crit.flag_exists && !conditions;
    alarm |= crit_alarm;
    doc.set("audit.split_criterion.flag_exists", crit.flag_exists);
    doc.set("audit.split_criterion.conditions", conditions);
    doc.set(
        "audit.split_criterion.status",
        if crit_alarm {
            "fail"
        } else if crit.consistent {
            "pass"
        } else {
            "undetermined"
        },
    );
    if analysis::is_nilpotent(&a)? {
        let full = a.full_space();
        let square = a.subspace_product(&full, &full)?;
        let lift = check_frattini_lift(&a, &square, false)?;
        alarm |= lift.status == LiftStatus::Violated;
        doc.set("frattini.ideal.dim", square.dim());
        doc.set(
            "frattini.quotient_supersolvable",
            lift.quotient_supersolvable,
        );
        doc.set("frattini.algebra_supersolvable", lift.algebra_supersolvable);
        doc.set("frattini.status", lift.status.name());
    } else {
        doc.set("frattini.status", "skipped");
    }
    doc.set("audit.alarm", alarm);
    let status = if alarm { EXIT_ALARM } else { EXIT_OK };
    Ok(CommandOutput::report(status, &doc, opts.format))
}
