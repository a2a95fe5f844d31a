use std::collections::HashSet;
use std::fs;
use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use clap::ValueEnum;
use thiserror::Error;

use qident_core::catalog::{builtin_catalog, lookup, parse_catalog, IdentityRecord};
use qident_core::kernel::{
    pi_q_est, poch_finite, poch_general_est, poch_infinite, q_factorial, q_gamma_est, q_int, sin_q_est,
};
use qident_core::numeric::parse_exact;
use qident_core::verify::{limit_study, render_limit_study, render_report, verify_grid, LimitSubject};
use qident_core::{BigReal, Estimate, PrecisionContext, QBase, QError, Status};

use crate::args::{CatalogArgs, EvalArgs, Function, LimitArgs, ListArgs, Output, Precision, VerifyArgs};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Domain(QError),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => 2,
            CliError::Domain(_) => 3,
        }
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Kernel failures abort with exit 3; bad parameters are usage errors.
fn kernel_error(e: QError) -> CliError {
    match e {
        QError::InvalidParams(_) | QError::Parse { .. } | QError::Context(_) => CliError::Usage(e.to_string()),
        other => CliError::Domain(other),
    }
}

type CliResult<T> = Result<T, CliError>;

fn context(p: &Precision) -> CliResult<PrecisionContext> {
    if p.precision < 64 {
        return Err(usage(format!("--precision must be at least 64, got {}", p.precision)));
    }
    let tol = p
        .tol
        .unwrap_or_else(|| 1e-30f64.max((12.0 - p.precision as f64).exp2()));
    PrecisionContext::new(p.precision, tol, p.max_terms, PrecisionContext::default().guard_bits())
        .map_err(|e| usage(e.to_string()))
}

fn number(name: &str, text: &str, ctx: &PrecisionContext) -> CliResult<BigReal> {
    let r = parse_exact(text).map_err(|e| usage(format!("--{name}: {e}")))?;
    Ok(BigReal::from_rational(&r, ctx.working_prec()))
}

fn q_value(text: &str, ctx: &PrecisionContext) -> CliResult<QBase> {
    let v = number("q", text, ctx)?;
    QBase::new(v).map_err(|_| usage(format!("q must lie in (0,1), got {text}")))
}

fn emit(text: &str, out: &Output) -> CliResult<()> {
    match &out.output {
        Some(path) => fs::write(path, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn digits(ctx: &PrecisionContext) -> usize {
    (ctx.precision_bits() as f64 * std::f64::consts::LOG10_2).floor() as usize
}

pub fn eval(a: &EvalArgs) -> CliResult<ExitCode> {
    let ctx = context(&a.precision)?;
    let q = q_value(&a.q, &ctx)?;
    let fname = a.function.to_possible_value().expect("no skipped variants");
    let fname = fname.get_name();
    let want = |name: &str, given: bool, needed: bool| -> CliResult<()> {
        match (given, needed) {
            (false, true) => Err(usage(format!("{fname} needs --{name}"))),
            (true, false) => Err(usage(format!("{fname} does not take --{name}"))),
            _ => Ok(()),
        }
    };
    use Function::*;
    let f = a.function;
    want("x", a.x.is_some(), matches!(f, QInt | QGamma | PochGeneral | SinQ))?;
    want("alpha", a.alpha.is_some(), f == PochGeneral)?;
    want("n", a.n.is_some(), matches!(f, QFactorial | PochFinite))?;
    want("z", a.z.is_some(), matches!(f, PochFinite | PochInfinite))?;
    let arg = |name: &str, v: &Option<String>| number(name, v.as_deref().unwrap_or_default(), &ctx);
    let est = match f {
        QInt => Estimate::exact(q_int(&arg("x", &a.x)?, &q)),
        QFactorial => Estimate::exact(q_factorial(a.n.unwrap_or_default(), &q)),
        PochFinite => Estimate::exact(poch_finite(&arg("z", &a.z)?, &q, a.n.unwrap_or_default())),
        PochInfinite => {
            let s = poch_infinite(&arg("z", &a.z)?, &q, &ctx).map_err(kernel_error)?;
            Estimate {
                rel_bound: s.relative_bound(),
                value: s.value,
            }
        }
        QGamma => q_gamma_est(&arg("x", &a.x)?, &q, &ctx).map_err(kernel_error)?,
        PochGeneral => poch_general_est(&arg("x", &a.x)?, &arg("alpha", &a.alpha)?, &q, &ctx).map_err(kernel_error)?,
        SinQ => sin_q_est(&arg("x", &a.x)?, &q, &ctx).map_err(kernel_error)?,
        PiQ => pi_q_est(&q, &ctx).map_err(kernel_error)?,
    };
    let d = digits(&ctx);
    println!("value\t{}", est.value.to_sci(d));
    println!("tail_bound\t{}", est.abs_bound().to_sci(6));
    Ok(ExitCode::SUCCESS)
}

/// Built-in records followed by the file's records.
fn load(c: &CatalogArgs) -> CliResult<(Vec<IdentityRecord>, Option<Vec<IdentityRecord>>)> {
    let mut all = builtin_catalog();
    let Some(path) = &c.catalog else { return Ok((all, None)) };
    let loaded = read_catalog(path)?;
    let mut seen: HashSet<String> = all.iter().map(|r| r.id.clone()).collect();
    for r in &loaded {
        if !seen.insert(r.id.clone()) {
            return Err(usage(format!(
                "{}: id {} is already in the built-in catalog",
                path.display(),
                r.id
            )));
        }
    }
    all.extend(loaded.iter().cloned());
    Ok((all, Some(loaded)))
}

fn read_catalog(path: &Path) -> CliResult<Vec<IdentityRecord>> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    parse_catalog(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

pub fn verify(a: &VerifyArgs) -> CliResult<ExitCode> {
    let ctx = context(&a.precision)?;
    let (all, loaded) = load(&a.catalog)?;
    let records: Vec<IdentityRecord> = if a.ids.is_empty() {
        loaded.unwrap_or(all)
    } else {
        a.ids
            .iter()
            .map(|id| {
                lookup(&all, id)
                    .cloned()
                    .ok_or_else(|| usage(format!("unknown id {id}")))
            })
            .collect::<CliResult<_>>()?
    };
    let grid = a
        .q_grid
        .iter()
        .map(|s| q_value(s, &ctx))
        .collect::<CliResult<Vec<_>>>()?;
    let outcomes = verify_grid(&records, &grid, &ctx);
    emit(&render_report(&outcomes, a.output.format.into()), &a.output)?;
    let count = |s: Status| outcomes.iter().filter(|o| o.status == s).count();
    eprintln!(
        "{} outcomes: {} PASS, {} FAIL, {} SKIPPED_POLE, {} NONCONVERGED",
        outcomes.len(),
        count(Status::Pass),
        count(Status::Fail),
        count(Status::SkippedPole),
        count(Status::NonConverged)
    );
    Ok(if count(Status::Fail) > 0 {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}

pub fn limit(a: &LimitArgs) -> CliResult<ExitCode> {
    let ctx = context(&a.precision)?;
    let (all, _) = load(&a.catalog)?;
    let subjects = a
        .ids
        .iter()
        .map(|id| {
            let s = LimitSubject::resolve(id, &all).ok_or_else(|| usage(format!("unknown id {id}")))?;
            s.target().map_err(kernel_error)?;
            Ok(s)
        })
        .collect::<CliResult<Vec<_>>>()?;
    let studies = subjects
        .iter()
        .map(|s| limit_study(s, a.k_range.clone(), &ctx).map_err(kernel_error))
        .collect::<CliResult<Vec<_>>>()?;
    emit(&render_limit_study(&studies, a.output.format.into()), &a.output)?;
    let failed: Vec<&str> = studies
        .iter()
        .filter(|s| !s.verdict())
        .map(|s| s.identity_id.as_str())
        .collect();
    if failed.is_empty() {
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!("limit verdict FAIL: {}", failed.join(", "));
        Ok(ExitCode::from(1))
    }
}

pub fn list(a: &ListArgs) -> CliResult<ExitCode> {
    let (all, _) = load(&a.catalog)?;
    let mut out = String::from("id\tform\tlimit\tdescription\n");
    for r in &all {
        let target = r
            .limit_target
            .as_ref()
            .map_or_else(|| "-".to_string(), |t| t.expression());
        let mut desc = r.description.replace(['\t', '\n'], " ");
        if r.exploratory {
            desc = format!("[exploratory] {desc}");
        }
        out.push_str(&format!("{}\t{}\t{}\t{}\n", r.id, r.form(), target, desc));
    }
    print!("{out}");
    Ok(ExitCode::SUCCESS)
}
