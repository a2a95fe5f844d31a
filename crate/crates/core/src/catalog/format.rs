//! Line-oriented catalog files.
//!
//! ```text
//! # comment
//! id=MY_T1 form=T1 alpha=1/2 a=0 b=0 c=3 desc="free text" limit=4*pi^-1
//! id=MY_T2 form=T2 alpha=1/2 beta=1/2 gamma=1/3 delta=2/3 a=1 b=0 c=0 d=0
//! id=T41_SUN form=LITERAL key=T41_SUN
//! ```
//!
//! One record per line, whitespace-separated `name=value` fields. Values are
//! bare tokens or double-quoted strings with `\"`, `\\` and `\n` escapes.
//! `#` outside quotes starts a comment. Numbers are exact: integers,
//! decimals with optional exponent, or `p/q`.
//!
//! Fields: `id` and `form` (T1, T2, T2S, LITERAL) are required. Template
//! forms require every parameter (T1: alpha a b c; T2/T2S: alpha beta gamma
//! delta a b c d). LITERAL requires `key`, naming a built-in literal.
//! Optional: `desc`, `limit` (`r[*sqrt3][*pi^e]`), `source`, `exploratory`
//! (`true`/`false`).

use std::collections::{HashMap, HashSet};

use rug::Rational;

use crate::catalog::{Binding, ClassicalTarget, Form, IdentityRecord, LiteralKey, T1Exact, T2Exact};
use crate::error::{QError, Result};
use crate::numeric::{format_exact, parse_exact};

fn parse_error(line: usize, message: impl Into<String>) -> QError {
    QError::Parse {
        line,
        message: message.into(),
    }
}

/// Splits a line into (name, value) fields, dropping any trailing comment.
fn tokenize(text: &str, line: usize) -> Result<Vec<(String, String)>> {
    let mut fields = Vec::new();
    let mut chars = text.chars().peekable();
    loop {
        while chars.peek().is_some_and(|c| c.is_whitespace()) {
            chars.next();
        }
        match chars.peek() {
            None | Some('#') => break,
            _ => {}
        }
        let mut name = String::new();
        while let Some(&c) = chars.peek() {
            if c == '=' || c.is_whitespace() || c == '#' {
                break;
            }
            name.push(c);
            chars.next();
        }
        if chars.next() != Some('=') {
            return Err(parse_error(line, format!("expected name=value, found '{name}'")));
        }
        if name.is_empty() {
            return Err(parse_error(line, "empty field name"));
        }
        let mut value = String::new();
        if chars.peek() == Some(&'"') {
            chars.next();
            loop {
                match chars.next() {
                    None => return Err(parse_error(line, format!("unterminated string in '{name}'"))),
                    Some('"') => break,
                    Some('\\') => match chars.next() {
                        Some('"') => value.push('"'),
                        Some('\\') => value.push('\\'),
                        Some('n') => value.push('\n'),
                        other => return Err(parse_error(line, format!("bad escape '\\{}'", other.unwrap_or(' ')))),
                    },
                    Some(c) => value.push(c),
                }
            }
            if chars.peek().is_some_and(|c| !c.is_whitespace() && *c != '#') {
                return Err(parse_error(line, format!("junk after quoted value of '{name}'")));
            }
        } else {
            while let Some(&c) = chars.peek() {
                if c.is_whitespace() || c == '#' {
                    break;
                }
                value.push(c);
                chars.next();
            }
            if value.is_empty() {
                return Err(parse_error(line, format!("missing value for '{name}'")));
            }
        }
        fields.push((name, value));
    }
    Ok(fields)
}

fn take_params<const N: usize>(
    fields: &mut HashMap<String, String>,
    names: [&str; N],
    line: usize,
) -> Result<[Rational; N]> {
    let mut out = Vec::with_capacity(N);
    for n in names {
        let v = fields
            .remove(n)
            .ok_or_else(|| parse_error(line, format!("missing parameter '{n}'")))?;
        out.push(parse_exact(&v).map_err(|e| parse_error(line, format!("parameter '{n}': {e}")))?);
    }
    Ok(out.try_into().expect("length N"))
}

fn parse_record(text: &str, line: usize) -> Result<Option<IdentityRecord>> {
    let tokens = tokenize(text, line)?;
    if tokens.is_empty() {
        return Ok(None);
    }
    let mut fields = HashMap::new();
    for (name, value) in tokens {
        if fields.insert(name.clone(), value).is_some() {
            return Err(parse_error(line, format!("field '{name}' given twice")));
        }
    }
    let id = fields.remove("id").ok_or_else(|| parse_error(line, "missing 'id'"))?;
    if id.is_empty() || !id.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-') {
        return Err(parse_error(
            line,
            format!("id '{id}' must be letters, digits, '_' or '-'"),
        ));
    }
    let form: Form = fields
        .remove("form")
        .ok_or_else(|| parse_error(line, "missing 'form'"))?
        .parse()
        .map_err(|e: String| parse_error(line, e))?;
    let binding = match form {
        Form::TemplateT1 => {
            let [alpha, a, b, c] = take_params(&mut fields, T1Exact::NAMES, line)?;
            Binding::T1(T1Exact { alpha, a, b, c })
        }
        Form::TemplateT2 | Form::TemplateT2S => {
            let [al, be, ga, de, a, b, c, d] = take_params(&mut fields, T2Exact::NAMES, line)?;
            let p = T2Exact::new([al, be, ga, de], [a, b, c, d]);
            if form == Form::TemplateT2 {
                Binding::T2(p)
            } else {
                Binding::T2S(p)
            }
        }
        Form::Literal => {
            let key = fields
                .remove("key")
                .ok_or_else(|| parse_error(line, "LITERAL records need 'key'"))?;
            Binding::Literal(key.parse().map_err(|e: String| parse_error(line, e))?)
        }
    };
    binding.validate().map_err(|e| match e {
        QError::InvalidParams(m) => QError::InvalidParams(format!("line {line}: {m}")),
        other => other,
    })?;
    let description = fields.remove("desc").unwrap_or_default();
    let source = fields.remove("source");
    let limit_target = match fields.remove("limit") {
        Some(expr) => {
            let mut t = ClassicalTarget::parse_expression(&expr).map_err(|e| parse_error(line, e))?;
            t.source = source.unwrap_or_default();
            Some(t)
        }
        None if source.is_some() => return Err(parse_error(line, "'source' without 'limit'")),
        None => None,
    };
    let exploratory = match fields.remove("exploratory").as_deref() {
        None | Some("false") => false,
        Some("true") => true,
        Some(other) => {
            return Err(parse_error(
                line,
                format!("exploratory must be true or false, got '{other}'"),
            ))
        }
    };
    if let Some(name) = fields.keys().min() {
        return Err(parse_error(line, format!("unknown field '{name}'")));
    }
    Ok(Some(IdentityRecord {
        id,
        description,
        binding,
        limit_target,
        exploratory,
    }))
}

/// Parses a catalog file. Record ids must be unique.
pub fn parse_catalog(text: &str) -> Result<Vec<IdentityRecord>> {
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        if let Some(r) = parse_record(raw, line)? {
            if !seen.insert(r.id.clone()) {
                return Err(parse_error(line, format!("duplicate id '{}'", r.id)));
            }
            out.push(r);
        }
    }
    Ok(out)
}

fn quote(s: &str) -> String {
    let mut out = String::from("\"");
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

fn push_params(out: &mut String, names: &[&str], values: &[&Rational]) {
    for (n, v) in names.iter().zip(values) {
        out.push_str(&format!(" {n}={}", format_exact(v)));
    }
}

/// Writes records in the catalog file format; `parse_catalog` reads them
/// back unchanged.
pub fn serialize_catalog(records: &[IdentityRecord]) -> String {
    let mut out = String::new();
    for r in records {
        out.push_str(&format!("id={} form={}", r.id, r.form()));
        match &r.binding {
            Binding::T1(p) => push_params(&mut out, &T1Exact::NAMES, &p.values()),
            Binding::T2(p) | Binding::T2S(p) => push_params(&mut out, &T2Exact::NAMES, &p.values()),
            Binding::Literal(k) => out.push_str(&format!(" key={}", LiteralKey::as_str(*k))),
        }
        if r.exploratory {
            out.push_str(" exploratory=true");
        }
        if let Some(t) = &r.limit_target {
            out.push_str(&format!(" limit={}", t.expression()));
            if !t.source.is_empty() {
                out.push_str(&format!(" source={}", quote(&t.source)));
            }
        }
        if !r.description.is_empty() {
            out.push_str(&format!(" desc={}", quote(&r.description)));
        }
        out.push('\n');
    }
    out
}
