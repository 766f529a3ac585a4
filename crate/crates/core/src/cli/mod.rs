//! Command line front end: `arcmld <command> [flags] <input.json>`.
//!
//! Exit codes: 0 success, 1 a checked property failed, 2 input or
//! precondition error, 3 resource budget exceeded.

mod input;
mod parse;
mod render;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

pub use input::{HypersurfaceInput, InputDocument, LiftCase, ResolutionInput};
pub use parse::parse_polynomial;
pub use render::{render, Format};

use crate::error::{Error, Result};
use crate::extended::ExtendedRational;
use crate::jet::{
    classify_polynomial, count_jet_points, jet_equations, newton_lift, series_ord, Classification,
    ClassifyMethod, ClassifyOptions, ContactQuery, CountRecord, TruncatedArc,
};
use crate::monomial::{
    contact_codim_monomial_in, mld_monomial_generic, mld_monomial_in, nondegenerate_hypersurface_mld,
    CenterSpec, WeightResult,
};
use crate::rational::{parse_q, Q};
use crate::resolution::{
    contact_codim_exact, contact_codim_ge, mld_at_generic_point, mld_bound_check, mld_on_w, BoundCheck,
    MldResult, MldWitness,
};
use crate::theorem_lab::{
    check_inversion_of_adjunction, check_semicontinuity, semicontinuity_chains, AdjunctionReport,
    SemicontinuityReport,
};

fn parse_budget(s: &str) -> std::result::Result<u64, String> {
    if let Ok(v) = s.parse::<u64>() {
        return Ok(v);
    }
    let v: f64 = s.parse().map_err(|_| format!("'{s}' is not a count"))?;
    if v.is_finite() && v >= 0.0 && v.fract() == 0.0 && v <= u64::MAX as f64 {
        Ok(v as u64)
    } else {
        Err(format!("'{s}' is not a nonnegative integer"))
    }
}

fn parse_rational(s: &str) -> std::result::Result<Q, String> {
    parse_q(s).map_err(|e| e.to_string())
}

fn parse_center(s: &str) -> std::result::Result<CenterSpec, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Parser, Debug)]
#[command(name = "arcmld", version, about = "Contact-locus codimensions, minimal log discrepancies and jet counts")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    /// Evaluation budget for enumerations.
    #[arg(long, global = true, value_parser = parse_budget, default_value = "100000000")]
    budget: u64,
    /// Prime for counting; repeat for several.
    #[arg(long = "prime", global = true)]
    primes: Vec<u64>,
    #[arg(long, global = true, default_value_t = 3)]
    jet_bound: usize,
}

#[derive(Args, Debug)]
struct CenterArg {
    /// `origin`, `all` or `subspace:j1,j2,...`
    #[arg(long, value_parser = parse_center, default_value = "origin")]
    center: CenterSpec,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Codimension of a contact locus.
    ContactCodim {
        input: PathBuf,
        #[command(flatten)]
        center: CenterArg,
        /// Contact orders, one per ideal or subscheme.
        #[arg(long, value_delimiter = ',')]
        m: Vec<u64>,
        /// Order along the Jacobian-type subscheme (resolution data only).
        #[arg(long, default_value_t = 0)]
        e: u64,
        /// Exact orders instead of lower bounds (resolution data only).
        #[arg(long)]
        exact: bool,
    },
    /// Minimal log discrepancy.
    Mld {
        input: PathBuf,
        #[command(flatten)]
        center: CenterArg,
        /// At the generic point of the center.
        #[arg(long)]
        generic: bool,
        /// Coefficient of a hypersurface boundary.
        #[arg(long, value_parser = parse_rational, default_value = "1")]
        q: Q,
    },
    /// Decide `mld ≥ τ` through the contact-locus characterization.
    MldCheck {
        input: PathBuf,
        #[arg(long, value_parser = parse_rational)]
        tau: Q,
    },
    /// Terminal / canonical / log canonical classification.
    Classify {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "newton")]
        method: MethodArg,
    },
    /// Point counts of a jet scheme over prime fields.
    CountJets {
        input: PathBuf,
        /// Jet level.
        #[arg(long, default_value_t = 1)]
        m: usize,
        /// Restrict to jets over this base locus.
        #[arg(long, value_parser = parse_center)]
        center: Option<CenterSpec>,
    },
    /// Newton lift of a jet on a hypersurface.
    Lift {
        input: PathBuf,
        #[arg(long)]
        target: usize,
        /// Override the Jacobian order recorded in the case.
        #[arg(long)]
        e: Option<usize>,
    },
    /// Compare both sides of inversion of adjunction.
    CheckIoa {
        input: PathBuf,
        /// Only compare log canonicity of the two sides.
        #[arg(long)]
        lc: bool,
    },
    /// Check `mld(V) ≤ mld(W) + codim(V, W)` for one case or all chains.
    CheckSemicontinuity { input: PathBuf },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
enum MethodArg {
    Newton,
    Jets,
    Both,
}

/// Value with an optional witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ValueReport {
    pub value: ExtendedRational,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<MldWitness>,
}

impl From<WeightResult> for ValueReport {
    fn from(r: WeightResult) -> Self {
        ValueReport { value: r.value, witness: r.witness.map(MldWitness::Weights) }
    }
}

impl From<MldResult> for ValueReport {
    fn from(r: MldResult) -> Self {
        ValueReport { value: r.value, witness: r.witness }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MldCheckReport {
    pub tau: String,
    pub verdict: bool,
    pub mld_on_w: ExtendedRational,
    /// `verdict == (mld_on_w ≥ τ)`.
    pub consistent: bool,
    pub bound_check: BoundCheck,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LiftReport {
    pub e: usize,
    pub target: usize,
    pub arc: TruncatedArc,
    /// `f(arc)` vanishes modulo `t^{residual_order_at_least}`.
    pub residual_order_at_least: usize,
}

/// Outcome of a command: rendered report and whether checked properties held.
struct Outcome {
    text: String,
    holds: bool,
}

fn wrong_kind(command: &str, doc: &InputDocument) -> Error {
    Error::input(format!("{command} does not accept a {} document", doc.kind()))
}

fn primes_or_default(primes: &[u64]) -> Vec<u64> {
    if primes.is_empty() {
        vec![3]
    } else {
        primes.to_vec()
    }
}

fn execute(cli: &Cli) -> Result<Outcome> {
    let fmt = cli.format;
    let done = |text: String| Ok(Outcome { text, holds: true });
    match &cli.command {
        Command::ContactCodim { input, center, m, e, exact } => {
            let doc = InputDocument::read(input)?;
            let report: ValueReport = match &doc {
                InputDocument::MonomialPair(p) => {
                    if *exact || *e != 0 {
                        return Err(Error::input("--exact and --e apply to resolution data only"));
                    }
                    contact_codim_monomial_in(Some(p.d), &p.ideals, m, &center.center)?.into()
                }
                InputDocument::ResolutionData(r) => {
                    let value = if *exact {
                        contact_codim_exact(&r.data, m, *e, r.w_is_proper)?
                    } else {
                        contact_codim_ge(&r.data, m, *e, r.w_is_proper)?
                    };
                    ValueReport { value, witness: None }
                }
                other => return Err(wrong_kind("contact-codim", other)),
            };
            done(render(&report, fmt))
        }
        Command::Mld { input, center, generic, q } => {
            let doc = InputDocument::read(input)?;
            let report: ValueReport = match &doc {
                InputDocument::MonomialPair(p) if *generic => {
                    mld_monomial_generic(p.d, &p.ideals, &p.q, &center.center)?.into()
                }
                InputDocument::MonomialPair(p) => mld_monomial_in(Some(p.d), &p.ideals, &p.q, &center.center)?.into(),
                InputDocument::ResolutionData(r) if *generic => mld_at_generic_point(&r.data, &r.coefficients())?.into(),
                InputDocument::ResolutionData(r) => mld_on_w(&r.data, &r.coefficients())?.into(),
                InputDocument::Hypersurface(h) => {
                    if *generic || center.center != CenterSpec::Origin {
                        return Err(Error::input("hypersurface mlds are computed at the origin"));
                    }
                    nondegenerate_hypersurface_mld(&h.parse()?.1, q)?.into()
                }
                other => return Err(wrong_kind("mld", other)),
            };
            done(render(&report, fmt))
        }
        Command::MldCheck { input, tau } => {
            let doc = InputDocument::read(input)?;
            let InputDocument::ResolutionData(r) = &doc else {
                return Err(wrong_kind("mld-check", &doc));
            };
            let q = r.coefficients();
            let check = mld_bound_check(&r.data, &q, tau)?;
            let mld = mld_on_w(&r.data, &q)?.value;
            let consistent = check.verdict == mld.ge_q(tau);
            let report = MldCheckReport {
                tau: crate::rational::format_q(tau),
                verdict: check.verdict,
                mld_on_w: mld,
                consistent,
                bound_check: check,
            };
            Ok(Outcome { text: render(&report, fmt), holds: consistent })
        }
        Command::Classify { input, method } => {
            let doc = InputDocument::read(input)?;
            let InputDocument::Hypersurface(h) = &doc else {
                return Err(wrong_kind("classify", &doc));
            };
            let (f, newton) = h.parse()?;
            let opts = ClassifyOptions {
                method: match method {
                    MethodArg::Newton => ClassifyMethod::Newton,
                    MethodArg::Jets => ClassifyMethod::Jets,
                    MethodArg::Both => ClassifyMethod::Both,
                },
                jet_bound: cli.jet_bound,
                prime: primes_or_default(&cli.primes)[0],
                budget: cli.budget,
            };
            let report: Classification = classify_polynomial(&newton, &f, &opts)?;
            done(render(&report, fmt))
        }
        Command::CountJets { input, m, center } => {
            let doc = InputDocument::read(input)?;
            let InputDocument::Hypersurface(h) = &doc else {
                return Err(wrong_kind("count-jets", &doc));
            };
            let sys = jet_equations(&h.polynomial()?, *m)?;
            let query = match center {
                Some(c) => ContactQuery::at(c.clone()),
                None => ContactQuery::none(),
            };
            let mut records = Vec::new();
            for p in primes_or_default(&cli.primes) {
                let count = count_jet_points(&sys, p, &query, cli.budget)?;
                records.push(CountRecord { prime: p, level: *m, count });
            }
            done(render(&records, fmt))
        }
        Command::Lift { input, target, e } => {
            let doc = InputDocument::read(input)?;
            let InputDocument::LiftCase(case) = &doc else {
                return Err(wrong_kind("lift", &doc));
            };
            let f = parse_polynomial(&case.polynomial, &case.variables)?;
            let e = e.unwrap_or(case.e);
            let arc = newton_lift(&f, &case.arc, e, *target)?;
            let residual = arc.zero_extend(*target).apply(&f)?;
            let report = LiftReport {
                e,
                target: *target,
                residual_order_at_least: series_ord(&residual).unwrap_or(target + 1),
                arc,
            };
            done(render(&report, fmt))
        }
        Command::CheckIoa { input, lc } => {
            let doc = InputDocument::read(input)?;
            let InputDocument::AdjunctionCase(case) = &doc else {
                return Err(wrong_kind("check-ioa", &doc));
            };
            let report: AdjunctionReport = check_inversion_of_adjunction(case)?;
            let holds = if *lc { report.lc_agrees } else { report.equal };
            Ok(Outcome { text: render(&report, fmt), holds })
        }
        Command::CheckSemicontinuity { input } => {
            let doc = InputDocument::read(input)?;
            let reports: Vec<SemicontinuityReport> = match &doc {
                InputDocument::SemicontinuityCase(c) => vec![check_semicontinuity(c)?],
                InputDocument::MonomialPair(p) => semicontinuity_chains(p)?,
                other => return Err(wrong_kind("check-semicontinuity", other)),
            };
            let holds = reports.iter().all(|r| r.holds);
            let text = match (&doc, reports.as_slice()) {
                (InputDocument::SemicontinuityCase(_), [one]) => render(one, fmt),
                _ => render(&reports, fmt),
            };
            Ok(Outcome { text, holds })
        }
    }
}

/// Runs the command line on `args` (program name first) and returns the
/// exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match execute(&cli) {
        Ok(outcome) => {
            let _ = out.write_all(outcome.text.as_bytes());
            if outcome.holds {
                0
            } else {
                let _ = writeln!(err, "property check failed");
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
