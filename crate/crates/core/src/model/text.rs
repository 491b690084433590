//! Line-oriented text encoding of a [`DecodingModel`].
//!
//! ```text
//! DECODING_MODEL v1
//! checks <R> faults <C> observables <K> groups <G>
//! group_size <R/G>
//! col <j> prior <p> checks <i1 i2 ...> obs <k1 k2 ...>
//! ```
//!
//! One `col` line per fault in ascending order. Lines starting with `#` and
//! blank lines are ignored. Priors print with the shortest representation
//! that parses back to the same `f64`, so writing is byte-stable.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use thiserror::Error;

use super::{DecodingModel, ModelError};
use crate::gf2::SparseBitMatrix;

pub const MAGIC: &str = "DECODING_MODEL v1";

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid model: {0}")]
    Invalid(#[from] ModelError),
}

fn parse_err(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Parse {
        line,
        message: message.into(),
    }
}

pub fn to_text(model: &DecodingModel) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{MAGIC}");
    let _ = writeln!(
        out,
        "checks {} faults {} observables {} groups {}",
        model.n_checks(),
        model.n_faults(),
        model.n_observables(),
        model.n_groups()
    );
    let _ = writeln!(out, "group_size {}", model.group_size());
    let obs = model.l().columns();
    for (j, rows) in model.h().columns().iter().enumerate() {
        let _ = write!(out, "col {j} prior {} checks", model.priors()[j]);
        for r in rows {
            let _ = write!(out, " {r}");
        }
        out.push_str(" obs");
        for k in &obs[j] {
            let _ = write!(out, " {k}");
        }
        out.push('\n');
    }
    out
}

fn parse_usize(tok: Option<&str>, line: usize, what: &str) -> Result<usize, FormatError> {
    let tok = tok.ok_or_else(|| parse_err(line, format!("missing {what}")))?;
    tok.parse()
        .map_err(|_| parse_err(line, format!("bad {what} `{tok}`")))
}

fn expect_kw<'a>(
    toks: &mut impl Iterator<Item = &'a str>,
    kw: &str,
    line: usize,
) -> Result<(), FormatError> {
    match toks.next() {
        Some(t) if t == kw => Ok(()),
        Some(t) => Err(parse_err(line, format!("expected `{kw}`, found `{t}`"))),
        None => Err(parse_err(line, format!("expected `{kw}`"))),
    }
}

pub fn parse_text(src: &str) -> Result<DecodingModel, FormatError> {
    let mut lines = src
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (ln, magic) = lines.next().ok_or_else(|| parse_err(1, "empty file"))?;
    if magic != MAGIC {
        return Err(parse_err(ln, format!("expected header `{MAGIC}`")));
    }

    let (ln, dims) = lines
        .next()
        .ok_or_else(|| parse_err(ln + 1, "missing dimension line"))?;
    let mut t = dims.split_whitespace();
    expect_kw(&mut t, "checks", ln)?;
    let n_checks = parse_usize(t.next(), ln, "check count")?;
    expect_kw(&mut t, "faults", ln)?;
    let n_faults = parse_usize(t.next(), ln, "fault count")?;
    expect_kw(&mut t, "observables", ln)?;
    let n_obs = parse_usize(t.next(), ln, "observable count")?;
    expect_kw(&mut t, "groups", ln)?;
    let n_groups = parse_usize(t.next(), ln, "group count")?;
    if let Some(extra) = t.next() {
        return Err(parse_err(ln, format!("unexpected token `{extra}`")));
    }

    let (ln, gs) = lines
        .next()
        .ok_or_else(|| parse_err(ln + 1, "missing group_size line"))?;
    let mut t = gs.split_whitespace();
    expect_kw(&mut t, "group_size", ln)?;
    let group_size = parse_usize(t.next(), ln, "group size")?;
    if n_groups == 0 || group_size * n_groups != n_checks {
        return Err(FormatError::Invalid(ModelError::GroupPartition {
            n_rows: n_checks,
            groups: n_groups,
        }));
    }

    let mut h_cols = Vec::with_capacity(n_faults);
    let mut l_cols = Vec::with_capacity(n_faults);
    let mut priors = Vec::with_capacity(n_faults);
    let mut last_line = ln;
    for (ln, line) in lines {
        last_line = ln;
        let mut t = line.split_whitespace();
        expect_kw(&mut t, "col", ln)?;
        let j = parse_usize(t.next(), ln, "column index")?;
        if j != h_cols.len() {
            return Err(parse_err(
                ln,
                format!("column {j} out of order, expected {}", h_cols.len()),
            ));
        }
        expect_kw(&mut t, "prior", ln)?;
        let ptok = t.next().ok_or_else(|| parse_err(ln, "missing prior"))?;
        let p: f64 = ptok
            .parse()
            .map_err(|_| parse_err(ln, format!("bad prior `{ptok}`")))?;
        expect_kw(&mut t, "checks", ln)?;
        let mut checks = Vec::new();
        let mut saw_obs = false;
        for tok in t.by_ref() {
            if tok == "obs" {
                saw_obs = true;
                break;
            }
            checks.push(parse_usize(Some(tok), ln, "check index")?);
        }
        if !saw_obs {
            return Err(parse_err(ln, "expected `obs`"));
        }
        let mut obs = Vec::new();
        for tok in t {
            obs.push(parse_usize(Some(tok), ln, "observable index")?);
        }
        for (list, bound, what) in [(&checks, n_checks, "check"), (&obs, n_obs, "observable")] {
            if list.windows(2).any(|w| w[0] >= w[1]) {
                return Err(parse_err(
                    ln,
                    format!("{what} indices not strictly increasing"),
                ));
            }
            if let Some(&x) = list.last() {
                if x >= bound {
                    return Err(parse_err(ln, format!("{what} index {x} out of range")));
                }
            }
        }
        h_cols.push(checks);
        l_cols.push(obs);
        priors.push(p);
    }
    if h_cols.len() != n_faults {
        return Err(parse_err(
            last_line,
            format!("expected {n_faults} columns, found {}", h_cols.len()),
        ));
    }

    let h = SparseBitMatrix::from_columns(n_checks, h_cols).map_err(ModelError::from)?;
    let l = SparseBitMatrix::from_columns(n_obs, l_cols).map_err(ModelError::from)?;
    Ok(DecodingModel::new(h, priors, l, n_groups)?)
}

impl core::str::FromStr for DecodingModel {
    type Err = FormatError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_text(s)
    }
}

impl core::fmt::Display for DecodingModel {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(&to_text(self))
    }
}
