use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use conetensor::cone::{Cone, PolygonCone};
use conetensor::corpus::{
    obstruction_instances, partial_simplex_3, square_cone, standard_corpus, DEFAULT_SEED,
};
use conetensor::io::{read_cone, read_json, read_map, to_json, ConeFile, RetractionFile};
use conetensor::report::{verify_report, Report};
use conetensor::retract::{facet_retract, vertex_figure};
use conetensor::suites::{
    analyze_report, aubrun_report, duality_report, min_eq_max_report, push_retraction, scan_report,
    separable_report, tensor_report, thm_3x3_report, thm_min_equals_max_report, TensorKind,
};
use conetensor::Error;

#[derive(Parser)]
#[command(
    name = "conetensor",
    version,
    about = "Exact tensor products of polyhedral cones"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Where to write the report (stdout if absent).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum Product {
    Min,
    Max,
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckKind {
    MinEqMax,
    Duality,
    ThmMinEqualsMax,
    #[value(name = "thm-3x3")]
    Thm3x3,
    AubrunExample,
}

#[derive(Clone, Copy, ValueEnum)]
enum RetractKind {
    VertexFigure,
    Facet,
    Scan3,
}

#[derive(Subcommand)]
enum Command {
    /// Rays, facets, lineality and the basic predicates of a cone.
    Analyze {
        #[arg(long)]
        cone: PathBuf,
    },
    /// Projective (min) or injective (max) tensor product of two cones.
    Tensor {
        kind: Product,
        #[arg(long, required = true)]
        cone: Vec<PathBuf>,
        /// Write the product cone here.
        #[arg(long)]
        result: Option<PathBuf>,
    },
    /// Theorem and identity checks.
    Check {
        kind: CheckKind,
        #[arg(long)]
        cone: Vec<PathBuf>,
        /// Seed for the random polygons of thm-3x3 when no cones are given.
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Which random instance of thm-3x3 to run (0, 1 or 2).
        #[arg(long, default_value_t = 2)]
        index: usize,
    },
    /// Is the positive map `T: E -> F` separable?
    Separable {
        #[arg(long)]
        map: PathBuf,
        #[arg(long, required = true)]
        cone: Vec<PathBuf>,
    },
    /// Facet and vertex-figure retracts, and the 3-dimensional scan.
    Retract {
        kind: RetractKind,
        #[arg(long)]
        cone: PathBuf,
        /// 0-based facet or ray index, as listed by `analyze`.
        #[arg(long)]
        index: Option<usize>,
        /// Write the retraction here.
        #[arg(long)]
        result: Option<PathBuf>,
    },
    /// Re-check every certificate in a report file.
    Verify { report: PathBuf },
    /// Write the bundled instance corpus to a directory.
    Corpus {
        #[arg(long)]
        dir: PathBuf,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

fn two(cones: &[PathBuf]) -> Result<(Cone, Cone), Error> {
    match cones {
        [a, b] => Ok((read_cone(a)?, read_cone(b)?)),
        _ => Err(Error::PreconditionViolated(format!(
            "expected two --cone arguments, got {}",
            cones.len()
        ))),
    }
}

fn one(cones: &[PathBuf]) -> Result<Cone, Error> {
    match cones {
        [a] => read_cone(a),
        _ => Err(Error::PreconditionViolated(format!(
            "expected one --cone argument, got {}",
            cones.len()
        ))),
    }
}

fn name_of(p: &Path) -> String {
    p.display().to_string()
}

fn write_json<T: serde::Serialize>(path: &Path, value: &T) -> Result<(), Error> {
    fs::write(path, to_json(value)? + "\n")?;
    Ok(())
}

fn run(cli: &Cli) -> Result<Report, Error> {
    match &cli.command {
        Command::Analyze { cone } => Ok(analyze_report(&read_cone(cone)?, &name_of(cone))),
        Command::Tensor { kind, cone, result } => {
            let (e, f) = two(cone)?;
            let kind = match kind {
                Product::Min => TensorKind::Min,
                Product::Max => TensorKind::Max,
            };
            let (product, report) = tensor_report(kind, &e, &f);
            if let Some(path) = result {
                let file = match kind {
                    TensorKind::Min => ConeFile::generators_of(&product),
                    TensorKind::Max => ConeFile::inequalities_of(&product),
                };
                write_json(path, &file)?;
            }
            Ok(report)
        }
        Command::Check {
            kind,
            cone,
            seed,
            index,
        } => match kind {
            CheckKind::MinEqMax => {
                let (e, f) = two(cone)?;
                Ok(min_eq_max_report(&e, &f))
            }
            CheckKind::Duality => {
                let (e, f) = two(cone)?;
                Ok(duality_report(&e, &f))
            }
            CheckKind::ThmMinEqualsMax => {
                thm_min_equals_max_report(&one(cone)?, &name_of(&cone[0]))
            }
            CheckKind::Thm3x3 => {
                let (e, f) = if cone.is_empty() {
                    obstruction_instances(*seed).into_iter().nth(*index).ok_or(
                        Error::IndexOutOfRange {
                            index: *index,
                            len: 3,
                        },
                    )?
                } else {
                    let (e, f) = two(cone)?;
                    (PolygonCone::from_cone(&e)?, PolygonCone::from_cone(&f)?)
                };
                thm_3x3_report(&e, &f)
            }
            CheckKind::AubrunExample => {
                let (e, f) = if cone.is_empty() {
                    (square_cone().cone, partial_simplex_3())
                } else {
                    two(cone)?
                };
                aubrun_report(&e, &f)
            }
        },
        Command::Separable { map, cone } => {
            let (e, f) = two(cone)?;
            separable_report(&read_map(map)?, &e, &f)
        }
        Command::Retract {
            kind,
            cone,
            index,
            result,
        } => {
            let c = read_cone(cone)?;
            let (retraction, report) = match kind {
                RetractKind::Scan3 => scan_report(&c, &name_of(cone))?,
                RetractKind::VertexFigure | RetractKind::Facet => {
                    let i = index
                        .ok_or_else(|| Error::PreconditionViolated("--index is required".into()))?;
                    let (ret, label) = match kind {
                        RetractKind::Facet => (facet_retract(&c, i)?, "facet"),
                        _ => (vertex_figure(&c, i)?, "vertex-figure"),
                    };
                    let mut report = Report::new(format!("retract {label}"));
                    report.instance(format!("{}: dim {}, index {i}", name_of(cone), c.dim()));
                    push_retraction(&mut report, label, "the retraction is valid", &ret);
                    (Some(ret), report)
                }
            };
            if let (Some(path), Some(ret)) = (result, &retraction) {
                write_json(path, &RetractionFile::from(ret))?;
            }
            Ok(report)
        }
        Command::Verify { report } => {
            let r: Report = read_json(report)?;
            let outcome = verify_report(&r);
            let mut out = Report::new("verify");
            out.instance(name_of(report));
            out.instances.push(format!(
                "{} certified claims checked, {} skipped",
                outcome.checked, outcome.skipped
            ));
            for f in &outcome.failures {
                out.check("claim", f.clone(), false, None);
            }
            Ok(out)
        }
        Command::Corpus { dir, seed } => {
            fs::create_dir_all(dir)?;
            let mut out = Report::new("corpus");
            for entry in standard_corpus(*seed)? {
                let path = dir.join(format!("{}.json", entry.name));
                write_json(&path, &ConeFile::generators_of(&entry.cone))?;
                out.instance(name_of(&path));
            }
            for (k, (e, f)) in obstruction_instances(*seed).iter().enumerate() {
                for (side, p) in [("E", e), ("F", f)] {
                    let path = dir.join(format!("polygon-pair-{k}-{side}.json"));
                    write_json(&path, &ConeFile::generators_of(&p.cone))?;
                    out.instance(name_of(&path));
                }
            }
            Ok(out)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let text = match cli.format {
        Format::Json => match to_json(&report) {
            Ok(s) => s + "\n",
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
        },
        Format::Text => report.to_text(),
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = fs::write(path, &text) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::from(report.exit_code() as u8)
}
