use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use hopfoid::bialgebroid::{check_hopf_algebroid, HopfAlgebroid};
use hopfoid::bimodule::FiniteSpace;
use hopfoid::category::check_coupled_category;
use hopfoid::constructions::{
    from_hopf_algebra, from_weak_hopf, groupoid_algebra, library, matrix_hopf_algebroid, twisted_coupled, Character,
    GroupoidPresentation, HopfAlgebraData, WeakHopfData,
};
use hopfoid::correspondence::{
    algebroid_to_category, category_to_algebroid, central_case_report, fibered_structure, round_trip_check,
};
use hopfoid::error::{FileError, StructureError};
use hopfoid::galois::{check_comodule_algebra, galois_correspondence, galois_maps, ComoduleAlgebra};
use hopfoid::io::{parse_structure, to_string, Structure};
use hopfoid::linalg::{Scalar, Subspace};
use hopfoid::report::Report;

#[derive(Parser)]
#[command(name = "hopfoid", version, about = "Exact Hopf algebroids over finite sets and their coupled Hopf categories")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a structure file for one of the example families.
    Build {
        #[command(subcommand)]
        family: Family,
    },
    /// Check every axiom of a structure file ("-" reads stdin).
    Verify {
        file: String,
        /// Hopf algebroid for a comodule algebra, Hopf algebra for a character.
        #[arg(long)]
        over: Option<String>,
    },
    /// Fiber decomposition and the fiberwise propositions.
    Decompose { file: String },
    /// Algebroid → coupled Hopf category or back; round trip and central case.
    Correspond {
        file: String,
        /// Write the converted structure here.
        #[arg(long, short)]
        output: Option<PathBuf>,
        #[arg(long)]
        central: bool,
    },
    /// Coinvariants, Galois maps and the categorical comparison.
    Galois {
        #[arg(long)]
        algebroid: String,
        #[arg(long)]
        comodule: String,
        #[arg(long)]
        subalgebra: Option<String>,
        #[arg(long)]
        correspondence: bool,
    },
    /// Support diagram of the fiber decomposition.
    Diagram {
        file: String,
        #[arg(long = "emit-diagram", value_enum, default_value_t = DiagramFormat::Text)]
        format: DiagramFormat,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum Family {
    /// M_n(k) over k^n.
    Matrix {
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
    /// k[C_order] as a Hopf algebra.
    HopfAlgebra {
        #[arg(long, default_value_t = 2)]
        order: usize,
    },
    /// k[C_order] as a Hopf algebroid over a point.
    GroupAlgebra {
        #[arg(long, default_value_t = 2)]
        order: usize,
    },
    /// k[C_order] twisted by the character g ↦ sigma.
    Twisted {
        #[arg(long, default_value_t = 2)]
        order: usize,
        #[arg(long, allow_hyphen_values = true, default_value = "-1")]
        sigma: String,
    },
    /// Groupoid algebra of a pair groupoid, cyclic groups or their disjoint union.
    Groupoid {
        #[arg(long)]
        pair: Option<usize>,
        #[arg(long)]
        cyclic: Vec<usize>,
        /// Print the presentation rather than the algebroid.
        #[arg(long)]
        presentation: bool,
    },
    /// M_n(k) as a weak Hopf algebra and its algebroid.
    WeakMatrix {
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Print the weak Hopf data rather than the algebroid.
        #[arg(long)]
        data: bool,
    },
    /// A comodule algebra over an algebroid file.
    Comodule {
        #[arg(long)]
        algebroid: String,
        #[arg(long, value_enum, default_value_t = ComoduleKind::Regular)]
        kind: ComoduleKind,
    },
    /// A named entry of the example library.
    Example {
        /// Omit to list the names.
        name: Option<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ComoduleKind {
    Regular,
    Trivial,
    Doubled,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum DiagramFormat {
    Text,
    Dot,
}

/// Bad input: exit 2. Everything else reaching main is a failed check: exit 1.
#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{path}: {source}")]
    File { path: String, source: FileError },
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Structure(#[from] StructureError),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Structure(_) => 1,
            _ => 2,
        }
    }
}

fn read_source(path: &str) -> Result<Vec<u8>, CliError> {
    let io_err = |source| CliError::Io { path: path.to_string(), source };
    if path == "-" {
        let mut buf = Vec::new();
        io::stdin().read_to_end(&mut buf).map_err(io_err)?;
        Ok(buf)
    } else {
        fs::read(path).map_err(io_err)
    }
}

fn load(path: &str) -> Result<Structure, CliError> {
    let bytes = read_source(path)?;
    parse_structure(&bytes).map_err(|source| CliError::File { path: path.to_string(), source })
}

fn load_algebroid(path: &str) -> Result<HopfAlgebroid, CliError> {
    match load(path)? {
        Structure::HopfAlgebroid(h) => Ok(h),
        Structure::Groupoid(g) => Ok(groupoid_algebra(&g)?),
        Structure::HopfAlgebra(h) => Ok(from_hopf_algebra(&h)?),
        Structure::WeakHopf(w) => Ok(from_weak_hopf(&w)?.algebroid),
        other => Err(CliError::Usage(format!("{path}: expected a Hopf algebroid, found {}", other.kind()))),
    }
}

fn write_out(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn emit(json_mode: bool, value: Value, text: String) {
    let mut out = io::stdout().lock();
    if json_mode {
        let _ = writeln!(out, "{}", serde_json::to_string_pretty(&value).expect("values serialize"));
    } else {
        let _ = write!(out, "{text}");
        if !text.ends_with('\n') {
            let _ = writeln!(out);
        }
    }
}

fn emit_report(json_mode: bool, rep: &Report) -> bool {
    emit(json_mode, json!({ "passed": rep.passed(), "report": rep }), rep.to_string());
    rep.passed()
}

fn build(family: Family) -> Result<Structure, CliError> {
    Ok(match family {
        Family::Matrix { n } => Structure::HopfAlgebroid(matrix_hopf_algebroid(n)?),
        Family::HopfAlgebra { order } => Structure::HopfAlgebra(HopfAlgebraData::cyclic_group(order)),
        Family::GroupAlgebra { order } => Structure::HopfAlgebroid(from_hopf_algebra(&HopfAlgebraData::cyclic_group(order))?),
        Family::Twisted { order, sigma } => {
            let z: Scalar = sigma.parse().map_err(|e| CliError::Usage(format!("--sigma: {e}")))?;
            let mut values = vec![Scalar::one()];
            for _ in 1..order {
                let next = values.last().expect("nonempty") * &z;
                values.push(next);
            }
            let h = HopfAlgebraData::cyclic_group(order);
            Structure::HopfAlgebroid(twisted_coupled(&h, &Character { values })?.algebroid)
        }
        Family::Groupoid { pair, cyclic, presentation } => {
            let mut parts: Vec<GroupoidPresentation> = pair.into_iter().map(GroupoidPresentation::pair).collect();
            parts.extend(cyclic.into_iter().map(GroupoidPresentation::cyclic_group));
            let mut it = parts.into_iter();
            let first = it.next().ok_or_else(|| CliError::Usage("give --pair and/or --cyclic".into()))?;
            let g = it.fold(first, |acc, p| acc.disjoint_union(&p));
            if presentation {
                Structure::Groupoid(g)
            } else {
                Structure::HopfAlgebroid(groupoid_algebra(&g)?)
            }
        }
        Family::WeakMatrix { n, data } => {
            let w = WeakHopfData::matrix(n)?;
            if data {
                Structure::WeakHopf(w)
            } else {
                Structure::HopfAlgebroid(from_weak_hopf(&w)?.algebroid)
            }
        }
        Family::Comodule { algebroid, kind } => {
            let h = load_algebroid(&algebroid)?;
            Structure::ComoduleAlgebra(match kind {
                ComoduleKind::Regular => ComoduleAlgebra::regular(&h),
                ComoduleKind::Trivial => ComoduleAlgebra::trivial(&h),
                ComoduleKind::Doubled => ComoduleAlgebra::doubled_trivial(&h),
            })
        }
        Family::Example { name } => {
            let lib = library();
            let names: Vec<&str> = lib.iter().map(|(n, _)| n.as_str()).collect();
            let Some(name) = name else {
                return Err(CliError::Usage(format!("examples: {}", names.join(", "))));
            };
            let h = lib.iter().find(|(n, _)| *n == name).map(|(_, h)| h.clone());
            Structure::HopfAlgebroid(h.ok_or_else(|| CliError::Usage(format!("unknown example {name:?}; examples: {}", names.join(", "))))?)
        }
    })
}

fn verify(s: &Structure, over: Option<&str>) -> Result<Report, CliError> {
    Ok(match s {
        Structure::HopfAlgebra(h) => h.check(),
        Structure::HopfAlgebroid(h) => check_hopf_algebroid(h),
        Structure::WeakHopf(w) => match from_weak_hopf(w) {
            Ok(built) => built.report,
            Err(e) => failed_report("weak Hopf algebra", w.check(), e),
        },
        Structure::Groupoid(g) => {
            let mut rep = Report::new("groupoid");
            rep.pass("presentation", format!("{} objects, {} arrows", g.objects.len(), g.arrows.len()));
            match groupoid_algebra(g) {
                Ok(h) => rep.absorb("groupoid algebra", check_hopf_algebroid(&h)),
                Err(e) => rep.fail("groupoid algebra", hopfoid::report::Witness::note(e.to_string())),
            }
            rep
        }
        Structure::Category(c) => check_coupled_category(c),
        Structure::ComoduleAlgebra(m) => {
            let path = over.ok_or_else(|| CliError::Usage("a comodule algebra needs --over <algebroid>".into()))?;
            check_comodule_algebra(&load_algebroid(path)?, m)?
        }
        Structure::Character(c) => {
            let path = over.ok_or_else(|| CliError::Usage("a character needs --over <hopf algebra>".into()))?;
            match load(path)? {
                Structure::HopfAlgebra(h) => c.check(&h.algebra),
                other => return Err(CliError::Usage(format!("{path}: expected a Hopf algebra, found {}", other.kind()))),
            }
        }
        Structure::Subalgebra(sub) => {
            let mut rep = Report::new("subalgebra");
            rep.pass("basis", format!("dimension {} in {}", sub.dim(), sub.ambient_dim()));
            rep
        }
    })
}

fn failed_report(subject: &str, mut rep: Report, e: StructureError) -> Report {
    rep.subject = subject.into();
    rep.fail("construction", hopfoid::report::Witness::note(e.to_string()));
    rep
}

fn labelled_dims(space: &FiniteSpace, dims: impl Iterator<Item = ((usize, usize), usize)>) -> Vec<Value> {
    dims.map(|((x, y), d)| json!({ "x": space.label(x), "y": space.label(y), "dim": d })).collect()
}

fn run(cli: Cli) -> Result<bool, CliError> {
    let j = cli.json;
    match cli.command {
        Command::Build { family } => {
            let s = build(family)?;
            print!("{}", to_string(&s));
            Ok(true)
        }
        Command::Verify { file, over } => {
            let s = load(&file)?;
            let rep = verify(&s, over.as_deref())?;
            emit(j, json!({ "kind": s.kind(), "passed": rep.passed(), "report": rep }), rep.to_string());
            Ok(rep.passed())
        }
        Command::Decompose { file } => {
            let h = load_algebroid(&file)?;
            let f = fibered_structure(&h);
            let space = h.base().space();
            let support = f.decomposition.support();
            let dims = f.decomposition.fibers.iter().map(|(&p, fb)| (p, fb.dim()));
            let text = format!("{}\nsupport\n{}", f.report, support.grid(space));
            emit(j, json!({ "passed": f.report.passed(), "fibers": labelled_dims(space, dims), "support": support.labelled(space), "report": f.report }), text);
            Ok(f.report.passed())
        }
        Command::Correspond { file, output, central } => {
            let s = load(&file)?;
            let (converted, mut rep) = match s {
                Structure::Category(c) => {
                    let h = category_to_algebroid(&c)?;
                    let rep = round_trip_check(&h);
                    (Structure::HopfAlgebroid(h), rep)
                }
                other => {
                    let h = match other {
                        Structure::HopfAlgebroid(h) => h,
                        _ => load_algebroid(&file)?,
                    };
                    let assoc = algebroid_to_category(&h)?;
                    let mut rep = round_trip_check(&h);
                    if central {
                        rep.absorb("central case", central_case_report(&h).report);
                    }
                    (Structure::Category(assoc.category), rep)
                }
            };
            if let Some(path) = output {
                write_out(&path, &to_string(&converted))?;
                rep.info("written", path.display().to_string());
            }
            Ok(emit_report(j, &rep))
        }
        Command::Galois { algebroid, comodule, subalgebra, correspondence } => {
            let h = load_algebroid(&algebroid)?;
            let m = match load(&comodule)? {
                Structure::ComoduleAlgebra(m) => m,
                other => return Err(CliError::Usage(format!("{comodule}: expected a comodule algebra, found {}", other.kind()))),
            };
            let sub = match subalgebra {
                Some(p) => match load(&p)? {
                    Structure::Subalgebra(s) => s,
                    other => return Err(CliError::Usage(format!("{p}: expected a subalgebra, found {}", other.kind()))),
                },
                None => Subspace::image(&m.unit_map),
            };
            let comod = check_comodule_algebra(&h, &m)?;
            let g = galois_maps(&h, &m, &sub)?;
            let mut rep = Report::new("Galois");
            rep.absorb("comodule algebra", comod);
            rep.absorb("algebroid", g.report.clone());
            let mut value = json!({ "galois": g });
            if correspondence {
                let c = galois_correspondence(&h, &m)?;
                rep.absorb("correspondence", c.report.clone());
                value["correspondence"] = json!(c);
            }
            value["passed"] = json!(rep.passed());
            value["is_galois"] = json!(g.is_galois());
            let text = format!("{rep}\nGalois: {}\n", if g.is_galois() { "yes" } else { "no" });
            emit(j, value, text);
            Ok(rep.passed() && g.is_galois())
        }
        Command::Diagram { file, format, output } => {
            let h = load_algebroid(&file)?;
            let f = fibered_structure(&h);
            let space = h.base().space();
            let support = f.decomposition.support();
            let body = match format {
                DiagramFormat::Text => support.grid(space),
                DiagramFormat::Dot => support.dot(space),
            };
            match output {
                Some(path) => write_out(&path, &body)?,
                None => emit(j, json!({ "support": support.labelled(space), "diagram": body }), body.clone()),
            }
            Ok(support.contains_diagonal(space.len()))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("hopfoid: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use hopfoid::io::to_json;

    #[test]
    fn structure_errors_are_check_failures() {
        let e = CliError::Structure(StructureError::Invalid("x".into()));
        assert_eq!(e.exit_code(), 1);
        assert_eq!(CliError::Usage("x".into()).exit_code(), 2);
    }

    #[test]
    fn twisted_sigma_powers() {
        let s = build(Family::Twisted { order: 4, sigma: "i".into() }).unwrap();
        assert_eq!(s.kind(), "hopf-algebroid");
        assert!(build(Family::Twisted { order: 4, sigma: "2".into() }).is_err());
    }

    #[test]
    fn example_names_are_listed() {
        let err = build(Family::Example { name: None }).err().unwrap();
        assert!(err.to_string().contains("matrix-2"));
    }

    #[test]
    fn verify_dispatches_on_kind() {
        let h = matrix_hopf_algebroid(2).unwrap();
        assert!(verify(&Structure::HopfAlgebroid(h), None).unwrap().passed());
        let json_value = to_json(&Structure::HopfAlgebra(HopfAlgebraData::cyclic_group(2)));
        assert_eq!(json_value["kind"], "hopf-algebra");
    }
}
