//! TSV and JSONL reports.
//!
//! Numbers are written in scientific notation with 20 significant digits, so
//! a report is a pure function of the outcomes and byte-stable across runs.
//! Missing values (a side that could not be evaluated) are `NA` in TSV and
//! `null` in JSONL.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{QError, Result};
use crate::outcome::{Status, VerificationOutcome};
use crate::verify::LimitStudy;

const DIGITS: usize = 20;
const TSV_HEADER: &str = "id\tq\tlhs\trhs\trel_err\tterms\tstatus";
const NA: &str = "NA";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Tsv,
    Jsonl,
}

impl FromStr for ReportFormat {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "tsv" => Ok(ReportFormat::Tsv),
            "jsonl" => Ok(ReportFormat::Jsonl),
            other => Err(format!("unknown report format '{other}' (tsv or jsonl)")),
        }
    }
}

impl fmt::Display for ReportFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReportFormat::Tsv => "tsv",
            ReportFormat::Jsonl => "jsonl",
        })
    }
}

/// One report line, numbers kept as their rendered text.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportRow {
    pub id: String,
    pub q: String,
    pub lhs: Option<String>,
    pub rhs: Option<String>,
    pub rel_err: Option<String>,
    pub terms: u64,
    pub status: String,
}

impl From<&VerificationOutcome> for ReportRow {
    fn from(o: &VerificationOutcome) -> Self {
        ReportRow {
            id: o.identity_id.clone(),
            q: o.q.to_sci(DIGITS),
            lhs: o.lhs.as_ref().map(|v| v.to_sci(DIGITS)),
            rhs: o.rhs.as_ref().map(|v| v.to_sci(DIGITS)),
            rel_err: o.rel_err.as_ref().map(|v| v.to_sci(DIGITS)),
            terms: o.terms_used,
            status: o.status.as_str().to_string(),
        }
    }
}

impl ReportRow {
    pub fn status(&self) -> Option<Status> {
        self.status.parse().ok()
    }
}

fn opt(v: &Option<String>) -> &str {
    v.as_deref().unwrap_or(NA)
}

/// Renders outcomes; TSV always starts with the header line.
pub fn render_report(outcomes: &[VerificationOutcome], format: ReportFormat) -> String {
    let mut out = String::new();
    if format == ReportFormat::Tsv {
        out.push_str(TSV_HEADER);
        out.push('\n');
    }
    for o in outcomes {
        let row = ReportRow::from(o);
        match format {
            ReportFormat::Tsv => {
                let fields = [
                    row.id.as_str(),
                    row.q.as_str(),
                    opt(&row.lhs),
                    opt(&row.rhs),
                    opt(&row.rel_err),
                    &row.terms.to_string(),
                    row.status.as_str(),
                ];
                out.push_str(&fields.join("\t"));
            }
            ReportFormat::Jsonl => {
                out.push_str(&serde_json::to_string(&row).expect("plain struct serializes"));
            }
        }
        out.push('\n');
    }
    out
}

fn parse_error(line: usize, message: impl Into<String>) -> QError {
    QError::Parse {
        line,
        message: message.into(),
    }
}

fn check_status(row: &ReportRow, line: usize) -> Result<()> {
    row.status
        .parse::<Status>()
        .map(|_| ())
        .map_err(|e| parse_error(line, e))
}

/// Reads a report produced by `render_report` back into rows.
pub fn parse_report(text: &str, format: ReportFormat) -> Result<Vec<ReportRow>> {
    let mut rows = Vec::new();
    match format {
        ReportFormat::Tsv => {
            let mut lines = text.lines().enumerate();
            match lines.next() {
                Some((_, h)) if h == TSV_HEADER => {}
                Some((_, h)) => return Err(parse_error(1, format!("bad header '{h}'"))),
                None => return Err(parse_error(1, "missing header")),
            }
            for (i, l) in lines {
                let line = i + 1;
                let f: Vec<&str> = l.split('\t').collect();
                let [id, q, lhs, rhs, rel_err, terms, status] = f[..] else {
                    return Err(parse_error(line, format!("expected 7 fields, found {}", f.len())));
                };
                let na = |s: &str| (s != NA).then(|| s.to_string());
                let row = ReportRow {
                    id: id.into(),
                    q: q.into(),
                    lhs: na(lhs),
                    rhs: na(rhs),
                    rel_err: na(rel_err),
                    terms: terms
                        .parse()
                        .map_err(|_| parse_error(line, format!("bad terms '{terms}'")))?,
                    status: status.into(),
                };
                check_status(&row, line)?;
                rows.push(row);
            }
        }
        ReportFormat::Jsonl => {
            for (i, l) in text.lines().enumerate() {
                if l.trim().is_empty() {
                    continue;
                }
                let row: ReportRow = serde_json::from_str(l).map_err(|e| parse_error(i + 1, e.to_string()))?;
                check_status(&row, i + 1)?;
                rows.push(row);
            }
        }
    }
    Ok(rows)
}

#[derive(Serialize)]
struct LimitRow<'a> {
    id: &'a str,
    k: u32,
    q: String,
    value: Option<String>,
    error: Option<String>,
    rel_err: Option<String>,
    note: Option<&'a str>,
}

#[derive(Serialize)]
struct LimitVerdict<'a> {
    id: &'a str,
    target: String,
    target_expression: &'a str,
    verdict: &'static str,
}

/// Renders (k, q_k, value, error) rows followed by one verdict line per
/// study.
pub fn render_limit_study(studies: &[LimitStudy], format: ReportFormat) -> String {
    let mut out = String::new();
    if format == ReportFormat::Tsv {
        out.push_str("id\tk\tq\tvalue\terror\trel_err\tnote\n");
    }
    for s in studies {
        let rel = s.relative_errors();
        for (p, r) in s.points.iter().zip(&rel) {
            let row = LimitRow {
                id: &s.identity_id,
                k: p.k,
                q: p.q.to_sci(DIGITS),
                value: p.value.as_ref().map(|v| v.to_sci(DIGITS)),
                error: p.error.as_ref().map(|v| v.to_sci(DIGITS)),
                rel_err: r.as_ref().map(|v| v.to_sci(DIGITS)),
                note: p.note.as_deref(),
            };
            match format {
                ReportFormat::Tsv => {
                    let fields = [
                        row.id.to_string(),
                        row.k.to_string(),
                        row.q,
                        opt(&row.value).to_string(),
                        opt(&row.error).to_string(),
                        opt(&row.rel_err).to_string(),
                        row.note.unwrap_or("").replace(['\t', '\n'], " "),
                    ];
                    out.push_str(&fields.join("\t"));
                }
                ReportFormat::Jsonl => out.push_str(&serde_json::to_string(&row).expect("serializes")),
            }
            out.push('\n');
        }
        let verdict = if s.verdict() { "PASS" } else { "FAIL" };
        match format {
            ReportFormat::Tsv => out.push_str(&format!(
                "# {} -> {} = {}: {}\n",
                s.identity_id,
                s.target_expression,
                s.target.to_sci(DIGITS),
                verdict
            )),
            ReportFormat::Jsonl => {
                let v = LimitVerdict {
                    id: &s.identity_id,
                    target: s.target.to_sci(DIGITS),
                    target_expression: &s.target_expression,
                    verdict,
                };
                out.push_str(&serde_json::to_string(&v).expect("serializes"));
                out.push('\n');
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{BigReal, PrecisionContext, SumResult};
    use crate::QError;

    fn pass_outcome() -> VerificationOutcome {
        let ctx = PrecisionContext::default();
        let q = ctx.parse("0.5").unwrap();
        let lhs = SumResult::exact(ctx.parse("1.25").unwrap());
        VerificationOutcome::judge("X", &q, &lhs, &ctx.parse("1.25").unwrap(), &ctx)
    }

    #[test]
    fn empty_reports() {
        assert_eq!(render_report(&[], ReportFormat::Tsv), format!("{TSV_HEADER}\n"));
        assert_eq!(render_report(&[], ReportFormat::Jsonl), "");
    }

    #[test]
    fn one_row_tsv_has_two_lines() {
        let text = render_report(&[pass_outcome()], ReportFormat::Tsv);
        assert_eq!(text.lines().count(), 2);
        let row = text.lines().nth(1).unwrap();
        assert_eq!(
            row,
            "X\t5.0000000000000000000e-1\t1.2500000000000000000e0\t1.2500000000000000000e0\t0.0000000000000000000e0\t0\tPASS"
        );
    }

    #[test]
    fn round_trip_both_formats() {
        let q = BigReal::from_f64(0.5, 64);
        let bad = VerificationOutcome::from_error("P", &q, &QError::Pole("Gamma(0)".into()));
        let outcomes = vec![pass_outcome(), bad];
        for fmt in [ReportFormat::Tsv, ReportFormat::Jsonl] {
            let text = render_report(&outcomes, fmt);
            let rows = parse_report(&text, fmt).unwrap();
            let want: Vec<ReportRow> = outcomes.iter().map(ReportRow::from).collect();
            assert_eq!(rows, want, "{fmt}");
            assert_eq!(rows[1].status(), Some(Status::SkippedPole));
            assert!(rows[1].lhs.is_none());
        }
    }

    #[test]
    fn malformed_reports() {
        assert!(parse_report("nope\n", ReportFormat::Tsv).is_err());
        let bad = format!("{TSV_HEADER}\nX\t1\t2\n");
        assert!(matches!(
            parse_report(&bad, ReportFormat::Tsv),
            Err(QError::Parse { line: 2, .. })
        ));
        assert!(parse_report("{\"id\":1}\n", ReportFormat::Jsonl).is_err());
    }

    #[test]
    fn jsonl_field_names_match_tsv_columns() {
        let text = render_report(&[pass_outcome()], ReportFormat::Jsonl);
        let v: serde_json::Value = serde_json::from_str(text.trim()).unwrap();
        let mut keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
        keys.sort_unstable();
        let mut cols: Vec<&str> = TSV_HEADER.split('\t').collect();
        cols.sort_unstable();
        assert_eq!(keys, cols);
    }
}
