//! Command-line surface. `run` is the whole dispatcher; the binary just
//! forwards `std::env::args` and exits with the returned code.
//!
//! Exit codes: 0 on success, 1 when `validate` finds an invalid system,
//! 2 on any input error (bad file, parse error, unknown flags).

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::document::{IdealDocument, SymbolSystemDocument};
use crate::error::Error;
use crate::groebner::{algebraic_relations, Ideal};
use crate::poly::MonomialOrder;
use crate::report::DecisionReport;
use crate::symbol::SymbolSystem;
use crate::variety::{
    build_generators, decide_ci_with, lines_through_general_point, sample_check, CIReason,
    DecideOptions,
};

#[derive(Parser)]
#[command(
    name = "eulersym",
    version,
    about = "Symbol systems, their varieties, and complete-intersection decisions",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the prolongation property and report the rank.
    Validate { file: PathBuf },
    /// Print the degree-2 generators of the model variety.
    Quadrics {
        file: PathBuf,
        /// Use the flat w0..wN coordinate names (rank <= 2 only).
        #[arg(long)]
        alias_rank2: bool,
    },
    /// Decide whether the model variety is a complete intersection.
    Decide {
        file: PathBuf,
        /// Attach an algebraic-dependence witness when one exists.
        #[arg(long)]
        witness: bool,
        /// Emit the machine-readable report.
        #[arg(long)]
        json: bool,
    },
    /// Base locus of one graded component.
    Baselocus {
        file: PathBuf,
        #[arg(long, default_value_t = 2)]
        level: u32,
    },
    /// Reduced Groebner basis of a raw ideal document.
    Gb {
        file: PathBuf,
        /// degrevlex or lex; overrides EULERSYM_ORDER.
        #[arg(long)]
        order: Option<String>,
    },
    /// Algebraic relations among one component's basis elements.
    Relations {
        file: PathBuf,
        #[arg(long, default_value_t = 2)]
        level: u32,
    },
    /// Evaluate the generators on random exact points of the variety.
    Sample {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: usize,
    },
    /// The variety of lines through a general point (rank 2).
    Lines { file: PathBuf },
}

/// Dispatch `argv` (including the program name) writing to the given
/// streams; returns the process exit code.
pub fn run<I, T, W, E>(args: I, out: &mut W, err: &mut E) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
    W: Write,
    E: Write,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // help and version go to stdout with success, usage errors to
            // stderr with the input-error code
            return if e.use_stderr() {
                let _ = write!(err, "{e}");
                2
            } else {
                let _ = write!(out, "{e}");
                0
            };
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn dispatch<W: Write>(command: Command, out: &mut W) -> crate::error::Result<i32> {
    match command {
        Command::Validate { file } => {
            let (_, sys) = load_system(&file)?;
            let report = sys.validate();
            let dims: Vec<String> = report
                .dims
                .iter()
                .map(|(k, d)| format!("dim F{k} = {d}"))
                .collect();
            match &report.failure {
                None => {
                    w(
                        out,
                        format!(
                            "valid symbol system of rank {} (n = {}{}{})",
                            report.rank,
                            report.n,
                            if dims.is_empty() { "" } else { "; " },
                            dims.join(", ")
                        ),
                    );
                    Ok(0)
                }
                Some(failure) => {
                    w(out, format!("INVALID symbol system: {failure}"));
                    Ok(1)
                }
            }
        }
        Command::Quadrics { file, alias_rank2 } => {
            let (_, sys) = load_system(&file)?;
            let model = build_generators(&sys)?;
            let gens = if alias_rank2 {
                model
                    .generators_rank2_alias()
                    .ok_or_else(|| Error::RankNotTwo(sys.rank()))?
            } else {
                model.generators().to_vec()
            };
            w(
                out,
                format!(
                    "ambient P^{} with coordinates [{}]; {} generator(s):",
                    model.ambient_dim(),
                    if alias_rank2 {
                        model.rank2_alias_ring().unwrap().vars().join(", ")
                    } else {
                        model.ambient().vars().join(", ")
                    },
                    gens.len()
                ),
            );
            for (i, g) in gens.iter().enumerate() {
                w(out, format!("f{} = {}", i + 1, g));
            }
            Ok(0)
        }
        Command::Decide {
            file,
            witness,
            json,
        } => {
            let (text, sys) = load_system(&file)?;
            let verdict = decide_ci_with(
                &sys,
                DecideOptions {
                    witness,
                    fast_path: true,
                },
            );
            if json {
                let report = DecisionReport::new(&text, verdict);
                let _ = write!(out, "{}", report.to_json());
                return Ok(0);
            }
            if !verdict.valid {
                w(
                    out,
                    "INVALID symbol system; run `validate` for details".to_string(),
                );
                return Ok(0);
            }
            let headline = if verdict.is_complete_intersection {
                "a COMPLETE INTERSECTION"
            } else {
                "NOT a complete intersection"
            };
            let why = match verdict.reason {
                Some(CIReason::RankGe3) => format!("rank {} >= 3", verdict.rank),
                Some(CIReason::CodimExceedsN) => format!(
                    "codimension {} exceeds the dimension {}",
                    verdict.codim, verdict.n
                ),
                Some(CIReason::RegularSequenceTrue) => {
                    "the quadrics form a regular sequence".to_string()
                }
                Some(CIReason::RegularSequenceFalse) => {
                    "the quadrics do not form a regular sequence".to_string()
                }
                Some(CIReason::RankOneTrivial) => {
                    "rank 1: the variety is the whole projective space".to_string()
                }
                None => String::new(),
            };
            w(out, format!("{headline} ({why})"));
            w(
                out,
                format!(
                    "rank = {}, n = {}, codim = {}",
                    verdict.rank, verdict.n, verdict.codim
                ),
            );
            if let Some(d) = &verdict.rank2 {
                w(
                    out,
                    format!(
                        "c = {}, b = {}, quadratic = {}, Y set-theoretic CI = {}",
                        d.c, d.b, d.quadratic, d.y_set_theoretic_ci
                    ),
                );
            }
            if let Some(witness) = &verdict.witness {
                w(out, format!("witness relation: {witness}"));
            }
            Ok(0)
        }
        Command::Baselocus { file, level } => {
            let (_, sys) = load_system(&file)?;
            let report = sys.base_locus(level)?;
            print_locus(out, &format!("base locus of F{level}"), &report);
            Ok(0)
        }
        Command::Gb { file, order } => {
            let text = read_file(&file)?;
            let doc = IdealDocument::parse(&text)?;
            let order = resolve_order(order.as_deref(), std::env::var("EULERSYM_ORDER").ok())?;
            let ideal = Ideal::new(doc.ring.clone(), doc.generators.clone())?;
            let gb = ideal.groebner(order.clone());
            w(
                out,
                format!(
                    "reduced Groebner basis ({} element(s), {} order):",
                    gb.elements().len(),
                    order
                ),
            );
            for g in gb.elements() {
                w(out, g.display_with(&order));
            }
            Ok(0)
        }
        Command::Relations { file, level } => {
            let (_, sys) = load_system(&file)?;
            let space = sys
                .component(level)
                .filter(|b| b.dim() > 0)
                .ok_or(Error::EmptyComponent(level))?;
            let relations = algebraic_relations(space.basis())?;
            if relations.generators().is_empty() {
                w(
                    out,
                    format!(
                        "the {} basis elements of F{level} are algebraically independent",
                        space.dim()
                    ),
                );
            } else {
                w(
                    out,
                    format!(
                        "relation ideal in [{}], {} generator(s):",
                        relations.ring().vars().join(", "),
                        relations.generators().len()
                    ),
                );
                for g in relations.generators() {
                    w(out, format!("{g}"));
                }
            }
            Ok(0)
        }
        Command::Sample { file, seed, count } => {
            let (_, sys) = load_system(&file)?;
            let model = build_generators(&sys)?;
            let report = sample_check(&model, seed, count);
            w(out, format!("{report}"));
            Ok(0)
        }
        Command::Lines { file } => {
            let (_, sys) = load_system(&file)?;
            let report = lines_through_general_point(&sys)?;
            print_locus(
                out,
                "variety of lines through a general point (= base locus)",
                &report,
            );
            Ok(0)
        }
    }
}

fn print_locus<W: Write>(out: &mut W, what: &str, report: &crate::symbol::BaseLocusReport) {
    w(
        out,
        format!(
            "{what}: projective dimension {}, codimension {}",
            report.projective_dimension, report.codim
        ),
    );
    for g in report.ideal.generators() {
        w(out, format!("{g}"));
    }
}

fn w<W: Write>(out: &mut W, line: String) {
    let _ = writeln!(out, "{line}");
}

fn read_file(path: &PathBuf) -> crate::error::Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse {
        line: 0,
        col: 0,
        message: format!("cannot read {}: {e}", path.display()),
    })
}

fn load_system(path: &PathBuf) -> crate::error::Result<(String, SymbolSystem)> {
    let text = read_file(path)?;
    let doc = SymbolSystemDocument::parse(&text)?;
    Ok((text, doc.to_system()?))
}

/// Flag wins over the environment; the default is degrevlex.
pub fn resolve_order(
    flag: Option<&str>,
    env_value: Option<String>,
) -> crate::error::Result<MonomialOrder> {
    let name = match (flag, env_value) {
        (Some(f), _) => f.to_string(),
        (None, Some(e)) => e,
        (None, None) => "degrevlex".to_string(),
    };
    MonomialOrder::from_name(&name).ok_or_else(|| Error::Parse {
        line: 0,
        col: 0,
        message: format!("unknown monomial order `{name}` (expected degrevlex or lex)"),
    })
}
