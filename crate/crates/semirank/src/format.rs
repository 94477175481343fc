//! Plain-text matrix lists. A spread-set file has the header line `q n`
//! followed by one decimal matrix encoding per basis element; a
//! decomposition file has the header `q n R` followed by R encodings.

use std::fmt::Write as _;
use std::path::Path;

use semirank_core::{codec, Fq, Mat};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T, E = FormatError> = std::result::Result<T, E>;

/// A list of matrices over F_q of size n x n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixList {
    pub field: Fq,
    pub n: usize,
    pub mats: Vec<Mat>,
}

impl MatrixList {
    pub fn encodings(&self) -> Vec<u64> {
        codec::encode_all(&self.mats)
    }
}

fn parse_error(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Parse { line, message: message.into() }
}

fn parse_number<T: std::str::FromStr>(tok: &str, line: usize, what: &str) -> Result<T> {
    tok.parse().map_err(|_| parse_error(line, format!("expected {what}, found {tok:?}")))
}

/// Parses `text` whose header has `fields` entries (2 for spread sets, 3 for
/// decompositions); the third header entry, when present, is the count.
fn parse(text: &str, fields: usize, expected: impl Fn(usize) -> usize) -> Result<MatrixList> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
    let (_, header) = lines.next().ok_or_else(|| parse_error(1, "missing header"))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() != fields {
        let shape = if fields == 2 { "\"q n\"" } else { "\"q n R\"" };
        return Err(parse_error(1, format!("header must be {shape}")));
    }
    let q: u32 = parse_number(toks[0], 1, "field size")?;
    let n: usize = parse_number(toks[1], 1, "matrix size")?;
    let count = if fields == 3 { parse_number(toks[2], 1, "matrix count")? } else { expected(n) };
    let field = Fq::new(q).map_err(|e| parse_error(1, e.to_string()))?;
    codec::check_supported(field, n).map_err(|e| parse_error(1, e.to_string()))?;
    let mut mats = Vec::with_capacity(count);
    let mut last = 1;
    for (line, body) in lines {
        if body.is_empty() {
            continue;
        }
        if mats.len() == count {
            return Err(parse_error(line, format!("expected {count} encodings, found more")));
        }
        let value: u64 = parse_number(body, line, "a matrix encoding")?;
        mats.push(codec::decode(value, field, n).map_err(|e| parse_error(line, e.to_string()))?);
        last = line;
    }
    if mats.len() < count {
        return Err(parse_error(last + 1, format!("expected {count} encodings, found {}", mats.len())));
    }
    Ok(MatrixList { field, n, mats })
}

pub fn parse_spreadset(text: &str) -> Result<MatrixList> {
    parse(text, 2, |n| n)
}

pub fn parse_decomposition(text: &str) -> Result<MatrixList> {
    parse(text, 3, |_| 0)
}

pub fn format_spreadset(list: &MatrixList) -> String {
    let mut s = format!("{} {}\n", list.field.q(), list.n);
    for v in list.encodings() {
        let _ = writeln!(s, "{v}");
    }
    s
}

pub fn format_decomposition(list: &MatrixList) -> String {
    let mut s = format!("{} {} {}\n", list.field.q(), list.n, list.mats.len());
    for v in list.encodings() {
        let _ = writeln!(s, "{v}");
    }
    s
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| FormatError::Io { path: path.display().to_string(), source })
}

fn write(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|source| FormatError::Io { path: path.display().to_string(), source })
}

pub fn read_spreadset_file(path: &Path) -> Result<MatrixList> {
    parse_spreadset(&read(path)?)
}

pub fn write_spreadset_file(path: &Path, list: &MatrixList) -> Result<()> {
    write(path, &format_spreadset(list))
}

pub fn read_decomposition_file(path: &Path) -> Result<MatrixList> {
    parse_decomposition(&read(path)?)
}

pub fn write_decomposition_file(path: &Path, list: &MatrixList) -> Result<()> {
    write(path, &format_decomposition(list))
}
