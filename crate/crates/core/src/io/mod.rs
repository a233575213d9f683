//! Text formats: exact decimal intervals, cusp diagrams and triangulations.
//!
//! Every interval is written `mid±rad` (ASCII `mid+-rad` is also accepted;
//! a bare number is an exact value). Lines starting with `#` and blank lines
//! are ignored.

mod decimal;
mod diagram;
mod triangulation;

use thiserror::Error;

use crate::geometry::GeometryError;
use crate::rigor::RigorError;

pub use decimal::{Decimal, DecimalError, DecimalInterval};
pub use diagram::{parse_diagram, BallRecord, DiagramFile};
pub use triangulation::{parse_triangulation, Perm, TetRecord, TriangulationFile};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum IoError {
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("tetrahedron {tet}, face {face}: {message}")]
    Structural {
        tet: usize,
        face: usize,
        message: String,
    },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Rigor(#[from] RigorError),
}

/// Whitespace-separated tokens of a line with their 1-based columns.
pub(crate) fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (k, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s, &line[s..k]));
            }
        } else if start.is_none() {
            start = Some(k);
        }
    }
    if let Some(s) = start {
        out.push((s, &line[s..]));
    }
    out.into_iter()
        .map(|(byte, tok)| (line[..byte].chars().count() + 1, tok))
        .collect()
}

/// Iterator over `(line number, tokens)` of meaningful lines.
pub(crate) fn records(text: &str) -> impl Iterator<Item = (usize, Vec<(usize, &str)>)> {
    text.lines().enumerate().filter_map(|(k, raw)| {
        let content = raw.split('#').next().unwrap_or("");
        let toks = tokens(content);
        (!toks.is_empty()).then_some((k + 1, toks))
    })
}

pub(crate) struct Cursor<'a> {
    pub line: usize,
    toks: &'a [(usize, &'a str)],
    pos: usize,
    end_column: usize,
}

impl<'a> Cursor<'a> {
    pub fn new(line: usize, toks: &'a [(usize, &'a str)]) -> Self {
        let end_column = toks.last().map(|(c, t)| c + t.chars().count()).unwrap_or(1);
        Cursor {
            line,
            toks,
            pos: 0,
            end_column,
        }
    }

    pub fn error(&self, column: usize, message: impl Into<String>) -> IoError {
        IoError::Parse {
            line: self.line,
            column,
            message: message.into(),
        }
    }

    pub fn column(&self) -> usize {
        self.toks
            .get(self.pos)
            .map(|t| t.0)
            .unwrap_or(self.end_column)
    }

    pub fn next(&mut self, what: &str) -> Result<(usize, &'a str), IoError> {
        match self.toks.get(self.pos) {
            Some(&t) => {
                self.pos += 1;
                Ok(t)
            }
            None => Err(self.error(self.end_column, format!("expected {what}"))),
        }
    }

    pub fn optional(&mut self) -> Option<(usize, &'a str)> {
        let t = self.toks.get(self.pos).copied();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    pub fn interval(&mut self, what: &str) -> Result<DecimalInterval, IoError> {
        let (col, tok) = self.next(what)?;
        tok.parse()
            .map_err(|e: DecimalError| self.error(col, format!("{what}: {e}")))
    }

    pub fn integer<T: std::str::FromStr>(&mut self, what: &str) -> Result<T, IoError> {
        let (col, tok) = self.next(what)?;
        tok.parse()
            .map_err(|_| self.error(col, format!("{what}: expected an integer, found '{tok}'")))
    }

    pub fn finish(&self) -> Result<(), IoError> {
        match self.toks.get(self.pos) {
            Some((col, tok)) => Err(self.error(*col, format!("unexpected token '{tok}'"))),
            None => Ok(()),
        }
    }
}

/// Writes `contents` to a temporary file next to `path` and renames it into
/// place, so readers never observe a partial file.
pub fn write_atomic(path: &std::path::Path, contents: &[u8]) -> std::io::Result<()> {
    use std::io::Write;
    let dir = path
        .parent()
        .filter(|p| !p.as_os_str().is_empty())
        .unwrap_or(std::path::Path::new("."));
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}
