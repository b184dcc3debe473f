//! The `.cay` Cayley-table file format.
//!
//! ```text
//! # optional comment (first line only)
//! 3
//! 0 1 2
//! 1 2 0
//! 2 0 1
//! ```
//!
//! Index 0 must already be the identity; the loader verifies it and never
//! relabels.

use std::fmt::Write as _;
use std::path::Path;

use thiserror::Error;

use super::{FiniteGroup, GroupError};

#[derive(Debug, Error)]
pub enum CayError {
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error(transparent)]
    Group(#[from] GroupError),
}

fn syntax(line: usize, message: impl Into<String>) -> CayError {
    CayError::Syntax { line, message: message.into() }
}

/// Parses `.cay` text. `default_name` is used when there is no comment line.
pub fn parse_cay(text: &str, default_name: &str) -> Result<FiniteGroup, CayError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l)).peekable();
    let mut name = default_name.to_string();
    if let Some((_, first)) = lines.peek() {
        if let Some(comment) = first.strip_prefix('#') {
            let comment = comment.trim();
            if !comment.is_empty() {
                name = comment.to_string();
            }
            lines.next();
        }
    }
    let (line_no, header) = lines.next().ok_or_else(|| syntax(1, "missing order line"))?;
    let n: usize = header
        .trim()
        .parse()
        .map_err(|_| syntax(line_no, format!("expected a decimal order, found {header:?}")))?;
    if n == 0 {
        return Err(syntax(line_no, "order must be positive"));
    }
    let mut rows = Vec::with_capacity(n);
    for _ in 0..n {
        let (line_no, line) =
            lines.next().ok_or_else(|| syntax(line_no + rows.len() + 1, "missing table row"))?;
        let row = line
            .split(' ')
            .map(|tok| {
                tok.parse::<usize>()
                    .map_err(|_| syntax(line_no, format!("expected an index, found {tok:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        if row.len() != n {
            return Err(syntax(line_no, format!("expected {n} entries, found {}", row.len())));
        }
        rows.push(row);
    }
    if let Some((line_no, extra)) = lines.find(|(_, l)| !l.is_empty()) {
        return Err(syntax(line_no, format!("unexpected trailing content {extra:?}")));
    }
    Ok(FiniteGroup::from_table(rows)?.with_name(name))
}

pub fn read_cay(path: &Path) -> Result<FiniteGroup, CayError> {
    let text = std::fs::read_to_string(path)?;
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("G");
    parse_cay(&text, stem)
}

/// Renders a group in `.cay` form, with a `# name` comment line when
/// `with_comment` is set.
pub fn write_cay(g: &FiniteGroup, with_comment: bool) -> String {
    let mut out = String::new();
    if with_comment {
        let _ = writeln!(out, "# {}", g.name());
    }
    let _ = writeln!(out, "{}", g.order());
    for i in g.elements() {
        let row: Vec<String> = g.row(i).iter().map(|x| x.to_string()).collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
    out
}
