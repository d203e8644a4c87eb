//! The line-oriented `.mbs` surface format.
//!
//! ```text
//! # real projective plane
//! branch l
//! sector e genus 0
//! attach e l 2
//! ```
//!
//! Declarations precede use; one `attach` line per boundary circle, in
//! boundary order. `#` starts a comment.

use std::fmt::Write as _;

use mbs_core::{ModelError, MultibranchedSurface, SurfaceBuilder};

#[derive(Debug, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: {source}")]
    Model { line: usize, source: ModelError },
    #[error(transparent)]
    Surface(ModelError),
}

fn syntax(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        message: message.into(),
    }
}

pub fn parse(text: &str) -> Result<MultibranchedSurface, ParseError> {
    let mut b = SurfaceBuilder::default();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        let words: Vec<&str> = content.split_whitespace().collect();
        let model = |e| ParseError::Model { line, source: e };
        match words.as_slice() {
            [] => {}
            ["branch", id] => {
                b.branch(id).map_err(model)?;
            }
            ["sector", id, "genus", g] => {
                let genus: u32 = g
                    .parse()
                    .map_err(|_| syntax(line, format!("genus must be a nonnegative integer, got `{g}`")))?;
                b.sector(id, genus).map_err(model)?;
            }
            ["attach", s, l, d] => {
                let degree: i64 = d
                    .parse()
                    .map_err(|_| syntax(line, format!("degree must be an integer, got `{d}`")))?;
                b.attach(s, l, degree).map_err(model)?;
            }
            [kw, ..] if matches!(*kw, "branch" | "sector" | "attach") => {
                let usage = match *kw {
                    "branch" => "branch ID",
                    "sector" => "sector ID genus N",
                    _ => "attach SECTOR BRANCH DEGREE",
                };
                return Err(syntax(line, format!("expected `{usage}`")));
            }
            [kw, ..] => return Err(syntax(line, format!("unknown keyword `{kw}`"))),
        }
    }
    b.build().map_err(ParseError::Surface)
}

/// Inverse of [`parse`]: branches first, then each sector with its
/// attachments.
pub fn serialize(x: &MultibranchedSurface) -> String {
    let mut s = String::new();
    for l in x.branches() {
        let _ = writeln!(s, "branch {}", l.id);
    }
    for e in x.sectors() {
        let _ = writeln!(s, "sector {} genus {}", e.id, e.genus);
        for a in &e.boundary {
            let _ = writeln!(s, "attach {} {} {}", e.id, x.branches()[a.branch].id, a.degree);
        }
    }
    s
}
