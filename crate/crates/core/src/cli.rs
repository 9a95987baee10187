//! Command-line front end.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::{ToPrimitive, Zero};
use serde_json::json;
use thiserror::Error;

use crate::ggmodel::{gg_frame_with, model_dimension, verify_free_nilpotent, SignConvention};
use crate::liealg::{
    cumulative_dimension, growth_vector_at_point, hall_basis, structure_constants_from_frame,
    verify_carnot_axioms, witt_dimension, CarnotAlgebra,
};
use crate::poly::Rational;
use crate::report::VerificationReport;
use crate::sym258::mutation::Mutation;
use crate::sym258::{
    base_model_235, base_symmetry_235, continue_symmetry_ansatz, extend_model_ansatz,
    is_infinitesimal_symmetry, symmetric_model, symmetry_field, SymmetricModel, SymmetryField, LAYERS,
};
use crate::vecfield::Frame;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Computation(String),
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
    Latex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelKind {
    /// Hall-tree polynomial model of the free nilpotent algebra
    Gg,
    /// Symmetric model of the (2, 3, 5, 8) algebra
    Sym,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Sign {
    Uniform,
    #[default]
    Alternating,
}

impl From<Sign> for SignConvention {
    fn from(s: Sign) -> Self {
        match s {
            Sign::Uniform => SignConvention::Uniform,
            Sign::Alternating => SignConvention::Alternating,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "carnot", version, about = "Exact vector-field models of free nilpotent and Carnot algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, clap::Args)]
pub struct StepArgs {
    /// Nilpotency step
    #[arg(short = 'r', long = "step", default_value_t = 4, value_parser = clap::value_parser!(u32).range(1..))]
    pub step: u32,
    /// Refuse models with more coordinates than this
    #[arg(long, default_value_t = 1000)]
    pub max_dim: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Dimensions l_d(i) of the graded pieces and their cumulative sums
    Dims {
        #[arg(short = 'd', long = "generators", default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..))]
        generators: u32,
        #[arg(short = 'r', long = "step", default_value_t = 10, value_parser = clap::value_parser!(u32).range(1..))]
        step: u32,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
    },
    /// Hall basis of the free nilpotent algebra
    Hall {
        #[arg(short = 'd', long = "generators", default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..))]
        generators: u32,
        #[arg(short = 'r', long = "step", default_value_t = 4, value_parser = clap::value_parser!(u32).range(1..))]
        step: u32,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
    },
    /// Print the frame H_1..H_N of the free nilpotent model
    GgModel {
        #[command(flatten)]
        step: StepArgs,
        #[arg(long, value_enum, default_value_t)]
        sign: Sign,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
    },
    /// Verify the free nilpotent model at a given step
    VerifyGg {
        #[command(flatten)]
        step: StepArgs,
        #[arg(long, value_enum, default_value_t)]
        sign: Sign,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
    },
    /// Print the symmetric model X_1..X_8
    SymModel {
        /// Re-derive the model from the step-3 model and compare
        #[arg(long)]
        derive: bool,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
    },
    /// Verify the symmetric model and its symmetry X_0
    VerifySym {
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
    },
    /// Check or re-derive the rotation symmetry X_0
    Symmetry {
        #[arg(long, conflicts_with = "derive")]
        check: bool,
        #[arg(long)]
        derive: bool,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
    },
    /// Structure constants of a model in its own frame
    StructureConstants {
        #[arg(long, value_enum, default_value_t = ModelKind::Sym)]
        model: ModelKind,
        #[command(flatten)]
        step: StepArgs,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
    },
    /// Growth vector of the generators at the origin
    GrowthVector {
        #[arg(long, value_enum, default_value_t = ModelKind::Sym)]
        model: ModelKind,
        #[command(flatten)]
        step: StepArgs,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
    },
    /// Run every verification; exit status 0 iff all pass
    VerifyAll {
        /// Only check the free nilpotent model at this step
        #[arg(short = 'r', long = "step", value_parser = clap::value_parser!(u32).range(1..))]
        step: Option<u32>,
        #[arg(long, default_value_t = 1000)]
        max_dim: usize,
        #[arg(long, hide = true)]
        mutate: Vec<String>,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
    },
    /// Write a model frame to a file or standard output
    Export {
        #[arg(long, value_enum)]
        model: ModelKind,
        #[command(flatten)]
        step: StepArgs,
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        format: OutputFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Runs a parsed command. Returns whether every verification performed passed.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<bool, CliError> {
    match &cli.command {
        Command::Dims { generators, step, format } => {
            out.write_all(render_dims(*generators, *step, *format).as_bytes())?;
            Ok(true)
        }
        Command::Hall { generators, step, format } => {
            out.write_all(render_hall(*generators as usize, *step as usize, *format).as_bytes())?;
            Ok(true)
        }
        Command::GgModel { step, sign, format } => {
            let frame = gg_checked(step, (*sign).into())?;
            out.write_all(render_frame(&frame, *format).as_bytes())?;
            Ok(true)
        }
        Command::VerifyGg { step, sign, format } => {
            let frame = gg_checked(step, (*sign).into())?;
            emit_report(out, &verify_free_nilpotent(&frame, step.step as usize), *format)
        }
        Command::SymModel { derive, format } => {
            if !derive {
                out.write_all(render_frame(symmetric_model().frame(), *format).as_bytes())?;
                return Ok(true);
            }
            let ext = extend_model_ansatz(&base_model_235()).map_err(|e| CliError::Computation(e.to_string()))?;
            let mut report = VerificationReport::new();
            let expected = symmetric_model();
            for i in 0..8 {
                let got = ext.model.x(i);
                let residual = got.try_sub(expected.x(i)).expect("fields on R^8");
                report.record(format!("derived X{} matches the model", i + 1), residual.is_zero(), || {
                    format!("difference {residual}")
                });
            }
            report.record("D = 1", ext.determinant == Rational::from_integer(1.into()), || {
                format!("D = {}", ext.determinant)
            });
            if *format == OutputFormat::Text {
                writeln!(out, "{} unknowns, {} equations", ext.num_unknowns, ext.num_equations)?;
                for ((i, j), a) in &ext.coefficients {
                    if *i <= 5 {
                        writeln!(out, "a_{i}^{j} = {a}")?;
                    }
                }
            }
            emit_report(out, &report, *format)
        }
        Command::VerifySym { format } => {
            let model = symmetric_model();
            let mut report = VerificationReport::new();
            report.extend("model: ", model.verify());
            report.extend("symmetry: ", symmetry_field().verify(&model));
            emit_report(out, &report, *format)
        }
        Command::Symmetry { check: _, derive, format } => {
            let model = symmetric_model();
            let x0 = symmetry_field();
            if *derive {
                let derived = continue_symmetry_ansatz(&base_symmetry_235(), &model)
                    .map_err(|e| CliError::Computation(e.to_string()))?;
                let mut report = VerificationReport::new();
                for (k, name) in [(5, "P"), (6, "Q"), (7, "R")] {
                    let got = derived.symmetry.field().component(k);
                    let want = x0.field().component(k);
                    report.record(format!("derived {name} = {want}"), got == want, || format!("derived {got}"));
                }
                report.record("derived X0 equals the printed field", derived.symmetry == x0, || {
                    "fields differ".into()
                });
                if *format == OutputFormat::Text {
                    writeln!(out, "{} unknowns", derived.num_unknowns)?;
                    for c in derived.constraints.iter().filter(|c| !c.target.is_zero()) {
                        writeln!(out, "{c}")?;
                    }
                }
                return emit_report(out, &report, *format);
            }
            let mut report = VerificationReport::new();
            let rotation = is_infinitesimal_symmetry(x0.field(), model.x(0), model.x(1));
            report.record("X0 rotates the orthonormal frame (X1, X2)", rotation.is_symmetry(), || {
                rotation.to_string()
            });
            if *format == OutputFormat::Text {
                writeln!(out, "{rotation}")?;
            }
            report.extend("", x0.verify(&model));
            emit_report(out, &report, *format)
        }
        Command::StructureConstants { model, step, format } => {
            let alg = structure_constants(*model, step)?;
            let text = match format {
                OutputFormat::Json => alg.to_json_pretty() + "\n",
                OutputFormat::Text => alg.to_string(),
                OutputFormat::Latex => algebra_latex(&alg),
            };
            out.write_all(text.as_bytes())?;
            Ok(true)
        }
        Command::GrowthVector { model, step, format } => {
            let frame = model_frame(*model, step)?;
            let origin = vec![Rational::zero(); frame.dim()];
            let g = growth_vector_at_point(&frame, &[0, 1], &origin)
                .map_err(|e| CliError::Computation(e.to_string()))?;
            match format {
                OutputFormat::Json => writeln!(out, "{}", json!({ "growth_vector": g.0 }))?,
                _ => writeln!(out, "{g}")?,
            }
            Ok(true)
        }
        Command::VerifyAll { step, max_dim, mutate, format } => {
            let mutations = mutate
                .iter()
                .map(|m| m.parse::<Mutation>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| CliError::Usage(e.to_string()))?;
            let report = verify_all(step.map(|s| s as usize), *max_dim, &mutations)?;
            emit_report(out, &report, *format)
        }
        Command::Export { model, step, format, out: path } => {
            let frame = model_frame(*model, step)?;
            let text = render_frame(&frame, *format);
            match path {
                Some(p) => std::fs::write(p, text)?,
                None => out.write_all(text.as_bytes())?,
            }
            Ok(true)
        }
    }
}

/// All checks of `verify-all`. With `step`, only the free nilpotent model at that step.
pub fn verify_all(step: Option<usize>, max_dim: usize, mutations: &[Mutation]) -> Result<VerificationReport, CliError> {
    let mut report = VerificationReport::new();
    let r = step.unwrap_or(4);
    guard_dim(r, max_dim)?;
    let gg = gg_frame_with(r, SignConvention::default());
    report.extend(&format!("gg r={r}: "), verify_free_nilpotent(&gg, r));
    if step.is_some() {
        return Ok(report);
    }
    let gg_layers = hall_basis(2, r).layers();
    match structure_constants_from_frame(&gg, &gg_layers) {
        Ok(alg) => report.extend("gg algebra: ", verify_carnot_axioms(&alg)),
        Err(e) => report.fail("gg algebra: structure constants", e.to_string()),
    }

    let (model, x0) = mutated(mutations);
    report.extend("sym model: ", model.verify());
    report.extend("sym symmetry: ", x0.verify(&model));
    match structure_constants_from_frame(model.frame(), &LAYERS) {
        Ok(alg) => report.extend("sym algebra: ", verify_carnot_axioms(&alg)),
        Err(e) => report.fail("sym algebra: structure constants", e.to_string()),
    }
    Ok(report)
}

fn guard_dim(r: usize, max_dim: usize) -> Result<(), CliError> {
    let n = model_dimension(r);
    if n.to_usize().is_none_or(|n| n > max_dim) {
        return Err(CliError::Usage(format!("step {r} needs {n} coordinates, above --max-dim {max_dim}")));
    }
    Ok(())
}

fn gg_checked(step: &StepArgs, sign: SignConvention) -> Result<Frame, CliError> {
    guard_dim(step.step as usize, step.max_dim)?;
    Ok(gg_frame_with(step.step as usize, sign))
}

fn model_frame(model: ModelKind, step: &StepArgs) -> Result<Frame, CliError> {
    match model {
        ModelKind::Gg => gg_checked(step, SignConvention::default()),
        ModelKind::Sym if step.step == 4 => Ok(symmetric_model().frame().clone()),
        ModelKind::Sym => Err(CliError::Usage(format!("the symmetric model exists only at step 4, not {}", step.step))),
    }
}

fn structure_constants(model: ModelKind, step: &StepArgs) -> Result<CarnotAlgebra, CliError> {
    let frame = model_frame(model, step)?;
    let layers = match model {
        ModelKind::Gg => hall_basis(2, step.step as usize).layers(),
        ModelKind::Sym => LAYERS.to_vec(),
    };
    structure_constants_from_frame(&frame, &layers).map_err(|e| CliError::Computation(e.to_string()))
}

fn emit_report(out: &mut dyn Write, report: &VerificationReport, format: OutputFormat) -> Result<bool, CliError> {
    match format {
        OutputFormat::Json => writeln!(out, "{}", report.to_json())?,
        _ => writeln!(out, "{report}")?,
    }
    Ok(report.overall())
}

pub fn render_dims(d: u32, max_step: u32, format: OutputFormat) -> String {
    let rows: Vec<(u32, String, String)> = (1..=max_step)
        .map(|i| (i, witt_dimension(d, i).to_string(), cumulative_dimension(d, i).to_string()))
        .collect();
    let mut s = String::new();
    match format {
        OutputFormat::Json => {
            let rows: Vec<_> = rows
                .iter()
                .map(|(i, l, c)| json!({ "i": i, "dim": l, "cumulative": c }))
                .collect();
            s = serde_json::to_string_pretty(&json!({ "d": d, "rows": rows })).expect("json") + "\n";
        }
        OutputFormat::Text => {
            let head = (format!("l_{d}(i)"), format!("l_{d}^(i)"));
            let w1 = rows.iter().map(|r| r.1.len()).max().unwrap_or(0).max(head.0.len());
            let w0 = rows.iter().map(|r| r.0.to_string().len()).max().unwrap_or(1).max(1);
            let _ = writeln!(s, "{:>w0$}  {:>w1$}  {}", "i", head.0, head.1);
            for (i, l, c) in &rows {
                let _ = writeln!(s, "{i:>w0$}  {l:>w1$}  {c:>width$}", width = head.1.len());
            }
        }
        OutputFormat::Latex => {
            let _ = writeln!(s, "\\begin{{tabular}}{{r|{}}}", "r".repeat(rows.len()));
            let cells = |f: &dyn Fn(&(u32, String, String)) -> String| {
                rows.iter().map(f).collect::<Vec<_>>().join(" & ")
            };
            let _ = writeln!(s, "$i$ & {} \\\\", cells(&|r| r.0.to_string()));
            let _ = writeln!(s, "\\hline");
            let _ = writeln!(s, "$\\ell_{d}(i)$ & {} \\\\", cells(&|r| r.1.clone()));
            let _ = writeln!(s, "$\\ell_{d}^{{(i)}}$ & {} \\\\", cells(&|r| r.2.clone()));
            let _ = writeln!(s, "\\end{{tabular}}");
        }
    }
    s
}

pub fn render_hall(d: usize, r: usize, format: OutputFormat) -> String {
    let basis = hall_basis(d, r);
    let mut s = String::new();
    match format {
        OutputFormat::Json => {
            let items: Vec<_> = (0..basis.len())
                .map(|k| {
                    let e = basis.get(k);
                    json!({
                        "index": k + 1,
                        "degree": e.degree,
                        "tree": basis.generator_notation(k),
                        "descent": basis.descent(k).map(|(i, j)| [i + 1, j + 1]),
                    })
                })
                .collect();
            s = serde_json::to_string_pretty(&json!({ "d": d, "r": r, "basis": items })).expect("json") + "\n";
        }
        OutputFormat::Text => {
            for k in 0..basis.len() {
                let _ = writeln!(s, "H{} = {}  (degree {})", k + 1, basis.generator_notation(k), basis.get(k).degree);
            }
        }
        OutputFormat::Latex => {
            let _ = writeln!(s, "\\begin{{align*}}");
            for k in 0..basis.len() {
                let tree = basis.generator_notation(k).replace('X', "X_");
                let tree = tree
                    .split("X_")
                    .enumerate()
                    .map(|(idx, part)| {
                        if idx == 0 {
                            return part.to_string();
                        }
                        let digits: String = part.chars().take_while(char::is_ascii_digit).collect();
                        format!("X_{{{digits}}}{}", &part[digits.len()..])
                    })
                    .collect::<String>();
                let _ = writeln!(s, "H_{{{}}} &= {} \\\\", k + 1, tree);
            }
            let _ = writeln!(s, "\\end{{align*}}");
        }
    }
    s
}

pub fn render_frame(frame: &Frame, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => frame.to_json() + "\n",
        OutputFormat::Text => {
            let mut s = String::new();
            for (name, f) in frame.names().iter().zip(frame.fields()) {
                let _ = writeln!(s, "{name} = {f}");
            }
            s
        }
        OutputFormat::Latex => {
            let mut s = String::from("\\begin{align*}\n");
            for (name, f) in frame.names().iter().zip(frame.fields()) {
                let (head, idx) = name.split_at(1);
                let _ = writeln!(s, "{head}_{{{idx}}} &= {} \\\\", f.to_latex());
            }
            s.push_str("\\end{align*}\n");
            s
        }
    }
}

fn algebra_latex(alg: &CarnotAlgebra) -> String {
    let mut s = String::from("\\begin{align*}\n");
    for (&(i, j), out) in alg.brackets() {
        let rhs = out
            .iter()
            .map(|(k, c)| {
                if *c == Rational::from_integer(1.into()) {
                    format!("e_{{{}}}", k + 1)
                } else {
                    format!("{c}\\, e_{{{}}}", k + 1)
                }
            })
            .collect::<Vec<_>>()
            .join(" + ");
        let _ = writeln!(s, "[e_{{{}}}, e_{{{}}}] &= {} \\\\", i + 1, j + 1, rhs.replace("+ -", "- "));
    }
    s.push_str("\\end{align*}\n");
    s
}

/// Symmetric model and `X0` after applying `mutations`, for callers outside the CLI.
pub fn mutated(mutations: &[Mutation]) -> (SymmetricModel, SymmetryField) {
    let (mut model, mut x0) = (symmetric_model(), symmetry_field());
    for m in mutations {
        (model, x0) = m.apply(&model, &x0);
    }
    (model, x0)
}
