//! Command-line front end for `slrec-core`.
//!
//! [`run`] executes one parsed command and returns the exit status together
//! with the output document, so the binary is a thin wrapper and the
//! behavior is testable in-process. JSON is the stable output; `--format text`
//! prints windows as 0/1 grids with `m` indexing rows.

pub mod battery;
pub mod cmd;
pub mod config;
pub mod expr;
pub mod verify;

use std::fmt::Write as _;

use clap::Parser;
use serde_json::{json, Value};
use slrec_core::engines::{gallery, EngineResult};
use slrec_core::oracle::{
    affine_window, recurrence_window, torsion_window, PolyTriple, TorsionSpec,
};
use slrec_core::semilinear::{diagonal, slice_row, uniform_period_bound, NonSLCertificate};
use slrec_core::{Error, Window};

pub use cmd::{Cli, Command, EngineCmd, Family};
pub use config::{Format, RunConfig};
pub use expr::{parse_expr, parse_poly, ExprAST, ParseError};

#[derive(Debug)]
pub enum CliError {
    Parse(ParseError),
    Core(Error),
    Usage(String),
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Parse(e)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.is_budget() => 3,
            CliError::Core(Error::SynthesisFailed { .. }) => 1,
            _ => 2,
        }
    }

    /// Stable identifier for scripts.
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Parse(_) => "parse_error",
            CliError::Usage(_) => "usage",
            CliError::Core(e) => match e {
                Error::DegreeCapExceeded { .. } => "degree_cap_exceeded",
                Error::BudgetExhausted(_) => "budget_exhausted",
                Error::SaturationBound(_) => "saturation_bound",
                Error::SynthesisFailed { .. } => "synthesis_failed",
                Error::Precondition(_) => "precondition",
                Error::Unsupported(_) => "unsupported",
                Error::ValuationOfZero | Error::ZeroInput(_) | Error::DivisionByZero => {
                    "arithmetic"
                }
            },
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Parse(e) => e.to_string(),
            CliError::Core(e) => e.to_string(),
            CliError::Usage(s) => s.clone(),
        }
    }
}

/// Exit status and the text written to each stream.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    /// The stdout document as JSON.
    pub fn json(&self) -> serde_json::Result<Value> {
        serde_json::from_str(&self.stdout)
    }
}

/// Parses arguments (including the program name) and runs the command.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let text = e.render().to_string();
            let code = e.exit_code();
            if code == 0 {
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
            }
        }
    }
}

pub fn run(cli: &Cli) -> Outcome {
    match dispatch(&cli.command, &cli.config) {
        Ok((code, doc, text)) => Outcome {
            code,
            stdout: match cli.config.format {
                Format::Json => format!("{doc:#}\n"),
                Format::Text => text,
            },
            stderr: String::new(),
        },
        Err(e) => {
            let doc = json!({"error": {"code": e.code(), "message": e.message()}});
            Outcome {
                code: e.exit_code(),
                stdout: String::new(),
                stderr: match cli.config.format {
                    Format::Json => format!("{doc}\n"),
                    Format::Text => format!("error ({}): {}\n", e.code(), e.message()),
                },
            }
        }
    }
}

type Rendered = (i32, Value, String);

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

/// Exit 3 when the oracle left cells unevaluated.
fn window_doc(command: &str, w: &Window) -> Rendered {
    let code = if w.errors.is_empty() { 0 } else { 3 };
    let mut text = w.to_string();
    for e in &w.errors {
        let _ = writeln!(text, "cell ({}, {}) not evaluated: {}", e.m, e.n, e.message);
    }
    (
        code,
        json!({"command": command, "window": to_value(w)}),
        text,
    )
}

fn dispatch(command: &Command, cfg: &RunConfig) -> Result<Rendered, CliError> {
    match command {
        Command::Oracle(t) => {
            let (f, g, c) = (parse_poly(&t.f)?, parse_poly(&t.g)?, parse_poly(&t.c)?);
            let w = match (f.to_rational(), g.to_rational(), c.to_rational()) {
                (Some(f), Some(g), Some(c)) => {
                    let mut triple = PolyTriple::new(f, g, c);
                    triple.exclude_zero = cfg.exclude_zero;
                    recurrence_window(&triple, cfg.m, cfg.n, cfg.degree_cap)
                }
                _ => {
                    let mut triple = PolyTriple::new(f, g, c);
                    triple.exclude_zero = cfg.exclude_zero;
                    recurrence_window(&triple, cfg.m, cfg.n, cfg.degree_cap)
                }
            };
            Ok(window_doc("oracle", &w))
        }
        Command::AffineOracle(a) => {
            let [a1, b1, a2, b2, c, d] = cmd::affine_coeffs(a)?;
            let w = affine_window(&a1, &b1, &a2, &b2, &c, &d, cfg.m, cfg.n)?;
            Ok(window_doc("affine-oracle", &w))
        }
        Command::TorsionOracle(t) => {
            let spec = TorsionSpec::new(t.d1, t.d2, t.k, t.a, t.e)?.with_shifts(t.d3, t.d4);
            Ok(window_doc(
                "torsion-oracle",
                &torsion_window(&spec, cfg.m, cfg.n),
            ))
        }
        Command::Engine(e) => {
            let family = e.family(cfg)?;
            let result = family.run(cfg)?;
            Ok(engine_doc(&family, &result, cfg))
        }
        Command::Verify(e) => {
            let family = e.family(cfg)?;
            let result = family.run(cfg)?;
            let cmps = verify::verify(&family, &result, cfg.m, cfg.n, cfg.degree_cap, true)?;
            let agree = cmps.iter().all(|c| c.agree);
            let incomplete = cmps.iter().any(|c| !c.skipped.is_empty());
            let code = match (agree, incomplete) {
                (false, _) => 1,
                (true, true) => 3,
                (true, false) => 0,
            };
            let mut text = String::new();
            for c in &cmps {
                let _ = match c.first_difference {
                    None => writeln!(
                        text,
                        "{}: agrees with {} on {}x{}",
                        family.name(),
                        c.oracle,
                        c.m,
                        c.n
                    ),
                    Some((m, n)) => writeln!(
                        text,
                        "{}: differs from {} at ({m}, {n}): engine {}, oracle {}",
                        family.name(),
                        c.oracle,
                        c.engine_value.unwrap_or(false) as u8,
                        !c.engine_value.unwrap_or(false) as u8
                    ),
                };
                if !c.skipped.is_empty() {
                    let _ = writeln!(text, "  {} cells beyond the degree cap", c.skipped.len());
                }
            }
            let doc = json!({
                "command": "verify",
                "family": family.name(),
                "agree": agree,
                "comparisons": to_value(&cmps),
            });
            Ok((code, doc, text))
        }
        Command::Slice { row, engine } => {
            let (family, out) = semilinear_of(engine, cfg)?;
            let s = slice_row(&out.set, *row);
            let members = s.members_below(cfg.n);
            let text = format!(
                "row {row}: {s}\neventual period {}\nmembers below {}: {members:?}\n",
                s.eventual_period(),
                cfg.n
            );
            let doc = json!({
                "command": "slice",
                "family": family.name(),
                "m": row,
                "row": to_value(&s),
                "eventual_period": s.eventual_period(),
                "members_below_N": members,
            });
            Ok((0, doc, text))
        }
        Command::Period(engine) => {
            let family = engine.family(cfg)?;
            match family.run(cfg)? {
                EngineResult::SemiLinear(out) => {
                    let bound = uniform_period_bound(&out.set);
                    let mut text = format!("uniform period bound {bound}\n");
                    let rows: Vec<Value> = (0..cfg.m)
                        .map(|m| {
                            let s = slice_row(&out.set, m);
                            let _ = writeln!(text, "row {m}: ep {} ({s})", s.eventual_period());
                            json!({"m": m, "row": to_value(&s), "ep": s.eventual_period()})
                        })
                        .collect();
                    let doc = json!({
                        "command": "period",
                        "family": family.name(),
                        "uniform_bound": bound,
                        "rows": rows,
                    });
                    Ok((0, doc, text))
                }
                EngineResult::NonSemilinear { certificate, .. } => {
                    let text = certificate_text(&certificate);
                    let doc = json!({
                        "command": "period",
                        "family": family.name(),
                        "uniform_bound": null,
                        "certificate": to_value(&certificate),
                    });
                    Ok((0, doc, text))
                }
            }
        }
        Command::Diag(engine) => {
            let (family, out) = semilinear_of(engine, cfg)?;
            let d = diagonal(&out.set)?;
            let members = d.members_below(cfg.n);
            let text = format!("diagonal: {d}\nmembers below {}: {members:?}\n", cfg.n);
            let doc = json!({
                "command": "diag",
                "family": family.name(),
                "diagonal": to_value(&d),
                "progressions": d.to_progressions(),
                "members_below_N": members,
            });
            Ok((0, doc, text))
        }
        Command::Certify(c) => {
            let entry = c.entry();
            let result = gallery(&entry)?;
            let cert = result.certificate().expect("gallery entries are certified");
            let doc = json!({
                "command": "certify",
                "entry": to_value(&entry),
                "formula": entry.formula(),
                "certificate": to_value(cert),
            });
            Ok((0, doc, certificate_text(cert)))
        }
        Command::Battery => {
            let rep = battery::battery(cfg.seed, cfg.horizon, cfg.degree_cap);
            let mut text = String::new();
            for f in &rep.families {
                let _ = writeln!(
                    text,
                    "{}: {} specs, {} cells, {} failures",
                    f.family,
                    f.specs,
                    f.cells,
                    f.failures.len()
                );
                for msg in &f.failures {
                    let _ = writeln!(text, "  {msg}");
                }
            }
            let code = if rep.passed() { 0 } else { 1 };
            Ok((
                code,
                json!({"command": "battery", "report": to_value(&rep)}),
                text,
            ))
        }
    }
}

fn semilinear_of(
    engine: &EngineCmd,
    cfg: &RunConfig,
) -> Result<(Family, slrec_core::engines::EngineOutput), CliError> {
    let family = engine.family(cfg)?;
    match family.run(cfg)? {
        EngineResult::SemiLinear(out) => Ok((family, out)),
        EngineResult::NonSemilinear { .. } => Err(CliError::Core(Error::Unsupported(
            "the set is not semilinear; use `certify` or `period`".into(),
        ))),
    }
}

fn engine_doc(family: &Family, result: &EngineResult, cfg: &RunConfig) -> Rendered {
    match result {
        EngineResult::SemiLinear(out) => {
            let w = out.window(cfg.m, cfg.n);
            let mut text = format!("{}\nset: {}\n", out.formula, out.set);
            for n in &out.notes {
                let _ = writeln!(text, "note: {n}");
            }
            text.push_str(&w.to_string());
            let doc = json!({
                "command": "engine",
                "family": family.name(),
                "result": to_value(result),
                "window": to_value(&w),
            });
            (0, doc, text)
        }
        EngineResult::NonSemilinear {
            formula,
            certificate,
        } => {
            let text = format!(
                "{formula}\nnot semilinear\n{}",
                certificate_text(certificate)
            );
            let doc = json!({
                "command": "engine",
                "family": family.name(),
                "result": to_value(result),
            });
            (0, doc, text)
        }
    }
}

fn certificate_text(cert: &NonSLCertificate) -> String {
    let mut text = String::new();
    match cert {
        NonSLCertificate::RowPeriods { rows, mode } => {
            let _ = writeln!(
                text,
                "row periods ({})",
                to_value(mode).as_str().unwrap_or("?")
            );
            for r in rows {
                let _ = writeln!(text, "  m = {}: ep {} ({})", r.m, r.ep, r.row);
            }
        }
        NonSLCertificate::ProjectionGaps {
            coordinate,
            values,
            formula,
            mode,
        } => {
            let axis = if *coordinate == 0 { "m" } else { "n" };
            let _ = writeln!(
                text,
                "projection to {axis} has growing gaps ({}): {formula}\n  {values:?}",
                to_value(mode).as_str().unwrap_or("?")
            );
        }
    }
    text
}
