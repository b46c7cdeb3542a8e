//! Command-line front end: classification, solving, form reduction,
//! degree-n analysis, quadratics, and SVG figure emission.
//!
//! Exit codes: 0 success; 2 argument/parse error; 3 numeric failure
//! (non-convergence); 4 regime refusal (e.g. the closed form requested on
//! a three-real-root input).

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::classify::{self, Classification};
use crate::closed_form;
use crate::error::Error;
use crate::forms::{
    normalize, reduce_general, reduced_to_tusi, AffineMap, GeneralCubic, GeneralizedTusiForm,
    NormalForm, QuadraticTusiForm, Sign, TusiForm,
};
use crate::geometry::{self, Window};
use crate::iterative::{
    solve_general, solve_generalized, solve_quadratic, solve_tusi, Method, RootFinding,
    RootReport, SolveOptions,
};

#[derive(Parser)]
#[command(name = "tusi", version, about = "Cubic (and degree-n) equation classifier and solver")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Count, locate, and bracket the real roots of a cubic
    Classify {
        /// a3,a2,a1,a0 (decimal or rational like 4/27)
        #[arg(long, value_delimiter = ',')]
        coeffs: Vec<String>,
        #[arg(long)]
        json: bool,
    },
    /// Solve a cubic for its real roots
    Solve {
        #[arg(long, value_delimiter = ',')]
        coeffs: Vec<String>,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        #[arg(long, default_value_t = 200)]
        max_iter: u32,
        #[arg(long)]
        json: bool,
    },
    /// Show the canonical-form reduction chain for a cubic
    Reduce {
        #[arg(long, value_delimiter = ',')]
        coeffs: Vec<String>,
        #[arg(long)]
        json: bool,
    },
    /// Classify (and optionally solve) the canonical form x^3 - x^2 + (4/27) delta
    Tusi {
        #[arg(long)]
        delta: String,
        #[arg(long)]
        solve: bool,
        #[arg(long)]
        json: bool,
    },
    /// Classify (and optionally solve) the degree-n family
    General {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        delta: String,
        #[arg(long)]
        solve: bool,
        #[arg(long)]
        json: bool,
    },
    /// Roots of x^2 - b x + c
    Quadratic {
        #[arg(long)]
        b: String,
        #[arg(long)]
        c: String,
        #[arg(long)]
        json: bool,
    },
    /// Emit an SVG figure
    Plot {
        #[arg(long, value_enum)]
        figure: Figure,
        /// Circle constant (x^3 + x + q), q < 0
        #[arg(long)]
        q: Option<String>,
        /// Hyperbola constant (x^3 - x + q'), q' > 0
        #[arg(long)]
        qprime: Option<String>,
        /// Largest degree for the phi-family figure
        #[arg(long, default_value_t = 5)]
        n_max: u32,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Auto,
    Cardano,
    Bisection,
    Newton,
    Chord,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Method {
        match m {
            MethodArg::Auto => Method::Auto,
            MethodArg::Cardano => Method::Cardano,
            MethodArg::Bisection => Method::Bisection,
            MethodArg::Newton => Method::Newton,
            MethodArg::Chord => Method::Chord,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Figure {
    TusiSplit,
    Circle,
    Hyperbola,
    PhiFamily,
}

/// Accepts a decimal literal or an exact rational "n/d".
fn parse_real(s: &str) -> Result<f64, Error> {
    let bad = |_| Error::InvalidInput(format!("not a number: {s:?}"));
    if let Some((num, den)) = s.split_once('/') {
        let n: f64 = num.trim().parse().map_err(bad)?;
        let d: f64 = den.trim().parse().map_err(bad)?;
        if d == 0.0 {
            return Err(Error::InvalidInput(format!("zero denominator in {s:?}")));
        }
        Ok(n / d)
    } else {
        s.trim().parse().map_err(bad)
    }
}

fn parse_cubic(coeffs: &[String]) -> Result<GeneralCubic, Error> {
    if coeffs.len() != 4 {
        return Err(Error::InvalidInput(format!(
            "--coeffs needs exactly 4 values a3,a2,a1,a0, got {}",
            coeffs.len()
        )));
    }
    let v: Vec<f64> = coeffs.iter().map(|s| parse_real(s)).collect::<Result<_, _>>()?;
    GeneralCubic::new(v[0], v[1], v[2], v[3])
}

/// One applied reduction in the pipeline trace.
#[derive(Serialize)]
struct PipelineStage {
    form: &'static str,
    params: serde_json::Value,
    /// Substitution x = scale*y + shift back to the previous stage's variable.
    map: AffineMap,
}

/// The JSON output shape shared by all subcommands.
#[derive(Serialize)]
struct Envelope {
    input: serde_json::Value,
    pipeline: Vec<PipelineStage>,
    classification: Option<Classification>,
    roots: Vec<RootFinding>,
    warnings: Vec<String>,
}

/// Builds the reduction chain for a general cubic: always the reduced
/// form, then the normal form (p != 0) and the Tusi form (p < 0).
fn build_pipeline(c: &GeneralCubic) -> Vec<PipelineStage> {
    let (r, shift_map) = reduce_general(c);
    let d = classify::discriminant(&r);
    let mut stages = vec![PipelineStage {
        form: "reduced",
        params: json!({ "p": r.p, "q": r.q, "discriminant": d.delta_cap }),
        map: shift_map,
    }];
    if let Ok((nf, m)) = normalize(&r) {
        stages.push(PipelineStage {
            form: "normal",
            params: json!({ "sign": nf.sign.value(), "q": nf.q }),
            map: m,
        });
    }
    if let Ok((t, m)) = reduced_to_tusi(&r) {
        stages.push(PipelineStage {
            form: "tusi",
            params: json!({ "delta": t.delta }),
            map: m,
        });
    }
    stages
}

fn fmt6(v: f64) -> String {
    format!("{v:.6}")
}

fn emit(
    out: &mut dyn Write,
    json_mode: bool,
    envelope: &Envelope,
) -> std::io::Result<()> {
    if json_mode {
        writeln!(out, "{}", serde_json::to_string_pretty(envelope).expect("serializable"))
    } else {
        for stage in &envelope.pipeline {
            writeln!(
                out,
                "{}: {} (map: x = {}*y + {})",
                stage.form,
                stage.params,
                fmt6(stage.map.scale),
                fmt6(stage.map.shift)
            )?;
        }
        if let Some(cls) = &envelope.classification {
            writeln!(out, "regime: {} ({} distinct real roots)", cls.regime, cls.count)?;
            for (iv, m) in cls.intervals.iter().zip(&cls.multiplicities) {
                writeln!(
                    out,
                    "  interval [{}, {}] ({:?}), multiplicity {m}",
                    fmt6(iv.lo),
                    fmt6(iv.hi),
                    iv.kind
                )?;
            }
        }
        for r in &envelope.roots {
            writeln!(
                out,
                "root {} (multiplicity {}, method {}, residual {:.2e}, {} iterations)",
                fmt6(r.value),
                r.multiplicity,
                r.method,
                r.residual,
                r.iterations
            )?;
        }
        for w in &envelope.warnings {
            writeln!(out, "warning: {w}")?;
        }
        Ok(())
    }
}

fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::InvalidInput(_) | Error::Precondition(_) => 2,
        Error::Convergence { .. } | Error::DerivativeVanished { .. } => 3,
        Error::Regime(_) => 4,
    }
}

/// Runs the CLI against explicit streams; returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            // clap help/version output is a success, not an error
            return if e.use_stderr() {
                let _ = write!(err, "{e}");
                2
            } else {
                let _ = write!(out, "{e}");
                0
            };
        }
    };
    match dispatch(cli.cmd, out) {
        Ok(()) => 0,
        Err(RunError::Domain(e)) => {
            let _ = writeln!(err, "error: {e}");
            exit_code_for(&e)
        }
        Err(RunError::Io(e)) => {
            let _ = writeln!(err, "i/o error: {e}");
            3
        }
    }
}

enum RunError {
    Domain(Error),
    Io(std::io::Error),
}

impl From<Error> for RunError {
    fn from(e: Error) -> Self {
        RunError::Domain(e)
    }
}

impl From<std::io::Error> for RunError {
    fn from(e: std::io::Error) -> Self {
        RunError::Io(e)
    }
}

fn report_error(report: &RootReport) -> Option<Error> {
    // a solve that produced no roots but recorded failures is a numeric
    // failure; partial results are reported as-is with warnings
    if report.roots.is_empty() && !report.errors.is_empty() {
        Some(Error::Convergence { lo: f64::NAN, hi: f64::NAN, iterations: 0 })
    } else {
        None
    }
}

fn dispatch(cmd: Cmd, out: &mut dyn Write) -> Result<(), RunError> {
    match cmd {
        Cmd::Classify { coeffs, json } => {
            let c = parse_cubic(&coeffs)?;
            let (r, map) = reduce_general(&c);
            let cls = classify::classify_reduced(&r).mapped(&map);
            let envelope = Envelope {
                input: json!({ "coeffs": [c.a3, c.a2, c.a1, c.a0] }),
                pipeline: build_pipeline(&c),
                classification: Some(cls),
                roots: vec![],
                warnings: vec![],
            };
            emit(out, json, &envelope)?;
            Ok(())
        }
        Cmd::Solve { coeffs, method, tol, max_iter, json } => {
            let c = parse_cubic(&coeffs)?;
            let opts = SolveOptions { tol, max_iter, method: method.into() }.validated()?;
            let report = solve_general(&c, &opts)?;
            if let Some(e) = report_error(&report) {
                return Err(e.into());
            }
            let (r, map) = reduce_general(&c);
            let cls = classify::classify_reduced(&r).mapped(&map);
            let mut warnings = report.warnings.clone();
            warnings.extend(report.errors.iter().map(|e| format!("partial failure: {e}")));
            let envelope = Envelope {
                input: json!({ "coeffs": [c.a3, c.a2, c.a1, c.a0], "method": format!("{:?}", opts.method).to_lowercase(), "tol": opts.tol }),
                pipeline: build_pipeline(&c),
                classification: Some(cls),
                roots: report.roots,
                warnings,
            };
            emit(out, json, &envelope)?;
            Ok(())
        }
        Cmd::Reduce { coeffs, json } => {
            let c = parse_cubic(&coeffs)?;
            let envelope = Envelope {
                input: json!({ "coeffs": [c.a3, c.a2, c.a1, c.a0] }),
                pipeline: build_pipeline(&c),
                classification: None,
                roots: vec![],
                warnings: vec![],
            };
            emit(out, json, &envelope)?;
            Ok(())
        }
        Cmd::Tusi { delta, solve, json } => {
            let t = TusiForm::new(parse_real(&delta)?)?;
            let cls = classify::classify_tusi(&t);
            let report = if solve {
                let r = solve_tusi(&t, &SolveOptions::default())?;
                if let Some(e) = report_error(&r) {
                    return Err(e.into());
                }
                r
            } else {
                RootReport::default()
            };
            let envelope = Envelope {
                input: json!({ "form": "tusi", "delta": t.delta }),
                pipeline: vec![],
                classification: Some(cls),
                roots: report.roots,
                warnings: report.warnings,
            };
            emit(out, json, &envelope)?;
            Ok(())
        }
        Cmd::General { n, delta, solve, json } => {
            let g = GeneralizedTusiForm::new(n, parse_real(&delta)?)?;
            let cls = classify::classify_generalized(&g)?;
            let (alpha_star, phi_star) = classify::maximizer(n);
            let report = if solve {
                let r = solve_generalized(&g, &SolveOptions::default())?;
                if let Some(e) = report_error(&r) {
                    return Err(e.into());
                }
                r
            } else {
                RootReport::default()
            };
            let envelope = Envelope {
                input: json!({ "form": "generalized", "n": n, "delta": g.delta, "alpha_star": alpha_star, "phi_star": phi_star }),
                pipeline: vec![],
                classification: Some(cls),
                roots: report.roots,
                warnings: report.warnings,
            };
            emit(out, json, &envelope)?;
            Ok(())
        }
        Cmd::Quadratic { b, c, json } => {
            let qt = QuadraticTusiForm::new(parse_real(&b)?, parse_real(&c)?)?;
            let cls = classify::classify_quadratic(&qt);
            let report = solve_quadratic(&qt);
            // consistency with the constructive formula
            debug_assert_eq!(closed_form::quadratic_roots(&qt).len(), report.roots.len());
            let envelope = Envelope {
                input: json!({ "form": "quadratic", "b": qt.b, "c": qt.c, "delta": qt.delta() }),
                pipeline: vec![],
                classification: Some(cls),
                roots: report.roots,
                warnings: report.warnings,
            };
            emit(out, json, &envelope)?;
            Ok(())
        }
        Cmd::Plot { figure, q, qprime, n_max, out: path } => {
            let svg = match figure {
                Figure::TusiSplit => {
                    geometry::emit_tusi_split_svg(Window::new(-0.6, 1.2, -0.5, 1.0)?)?
                }
                Figure::PhiFamily => {
                    geometry::emit_phi_family_svg(n_max, Window::new(-0.1, 1.05, -0.05, 0.3)?)?
                }
                Figure::Circle => {
                    let q = parse_real(&q.ok_or_else(|| {
                        Error::InvalidInput("--q is required for the circle figure".into())
                    })?)?;
                    let conic = geometry::build_conic(&NormalForm::new(Sign::Positive, q)?);
                    let half = (q.abs()).max(1.5);
                    geometry::emit_svg(&conic, Window::square(half)?)?
                }
                Figure::Hyperbola => {
                    let qp = parse_real(&qprime.ok_or_else(|| {
                        Error::InvalidInput("--qprime is required for the hyperbola figure".into())
                    })?)?;
                    let conic = geometry::build_conic(&NormalForm::new(Sign::Negative, qp)?);
                    let half = (2.0 * qp.abs()).max(2.0);
                    geometry::emit_svg(&conic, Window::square(half)?)?
                }
            };
            std::fs::write(&path, svg)?;
            writeln!(out, "wrote {}", path.display())?;
            Ok(())
        }
    }
}
