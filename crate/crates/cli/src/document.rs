//! The line-oriented lattice/poset file format.
//!
//! ```text
//! # comment
//! type lattice          (or: type poset)
//! element NAME          (only needed for isolated elements)
//! cover UPPER LOWER     (UPPER covers LOWER)
//! ```

use std::fmt::Write as _;

use distlat::poset::RedundantCover;
use distlat::{DistLattice, Poset};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Lattice,
    Poset,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Lattice => "lattice",
            Kind::Poset => "poset",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputDocument {
    pub kind: Kind,
    /// Names from `element` lines, in file order.
    pub names: Vec<String>,
    /// `(upper, lower)` from `cover` lines, in file order.
    pub covers: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: unknown directive `{directive}`")]
    UnknownDirective { line: usize, directive: String },
}

fn syntax(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        message: message.into(),
    }
}

pub fn parse_input(text: &str) -> Result<InputDocument, ParseError> {
    let mut kind = None;
    let mut names = Vec::new();
    let mut covers = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = content.split_whitespace().collect();
        let Some(&directive) = tokens.first() else {
            continue;
        };
        if kind.is_none() {
            kind = Some(match tokens.as_slice() {
                ["type", "lattice"] => Kind::Lattice,
                ["type", "poset"] => Kind::Poset,
                ["type", ..] => {
                    return Err(syntax(line, "expected `type lattice` or `type poset`"))
                }
                _ => return Err(syntax(line, "first directive must be `type`")),
            });
            continue;
        }
        match directive {
            "type" => return Err(syntax(line, "`type` may appear only once")),
            "element" => match tokens.as_slice() {
                [_, name] => names.push(name.to_string()),
                _ => return Err(syntax(line, "expected `element NAME`")),
            },
            "cover" => match tokens.as_slice() {
                [_, upper, lower] if upper == lower => {
                    return Err(syntax(line, format!("`{upper}` cannot cover itself")))
                }
                [_, upper, lower] => covers.push((upper.to_string(), lower.to_string())),
                _ => return Err(syntax(line, "expected `cover UPPER LOWER`")),
            },
            other => {
                return Err(ParseError::UnknownDirective {
                    line,
                    directive: other.to_string(),
                })
            }
        }
    }
    let kind = kind.ok_or_else(|| syntax(text.lines().count().max(1), "missing `type` line"))?;
    Ok(InputDocument {
        kind,
        names,
        covers,
    })
}

impl InputDocument {
    /// Canonical text: the `type` line, then `element` lines, then `cover` lines.
    pub fn render(&self) -> String {
        let mut out = format!("type {}\n", self.kind.as_str());
        for n in &self.names {
            let _ = writeln!(out, "element {n}");
        }
        for (u, l) in &self.covers {
            let _ = writeln!(out, "cover {u} {l}");
        }
        out
    }

    pub fn build_poset(&self) -> distlat::error::Result<(Poset, Vec<RedundantCover>)> {
        distlat::poset::build_partial_order_with_report(&self.names, &self.covers)
    }

    /// Every element listed explicitly in index order, covers sorted by index.
    pub fn from_poset(kind: Kind, p: &Poset) -> Self {
        Self {
            kind,
            names: p.names().to_vec(),
            covers: p
                .covers()
                .iter()
                .map(|&(u, l)| (p.name(u).to_string(), p.name(l).to_string()))
                .collect(),
        }
    }

    pub fn from_lattice(l: &DistLattice) -> Self {
        Self::from_poset(Kind::Lattice, l.order())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diamond_document() {
        let doc = parse_input("type lattice\ncover top a\ncover top b\ncover a bot\ncover b bot")
            .unwrap();
        assert_eq!(doc.kind, Kind::Lattice);
        assert!(doc.names.is_empty());
        assert_eq!(doc.covers.len(), 4);
        let (p, red) = doc.build_poset().unwrap();
        assert_eq!(p.size(), 4);
        assert!(red.is_empty());
    }

    #[test]
    fn poset_document() {
        let doc = parse_input("type poset\nelement p\nelement q").unwrap();
        assert_eq!(doc.kind, Kind::Poset);
        assert_eq!(doc.names, ["p", "q"]);
        assert!(doc.covers.is_empty());
    }

    #[test]
    fn self_cover_rejected() {
        assert_eq!(
            parse_input("type lattice\ncover a a").unwrap_err(),
            ParseError::Syntax {
                line: 2,
                message: "`a` cannot cover itself".into()
            }
        );
    }

    #[test]
    fn comments_and_blank_lines() {
        let doc = parse_input("# hello\n\n  type poset # trailing\n\nelement x # x\n").unwrap();
        assert_eq!(doc.names, ["x"]);
    }

    #[test]
    fn unknown_directive() {
        assert_eq!(
            parse_input("type poset\nedge a b").unwrap_err(),
            ParseError::UnknownDirective {
                line: 2,
                directive: "edge".into()
            }
        );
    }

    #[test]
    fn grammar_errors() {
        assert!(parse_input("").is_err());
        assert!(parse_input("element a\ntype poset").is_err());
        assert!(parse_input("type graph").is_err());
        assert!(parse_input("type poset\ntype poset").is_err());
        assert!(parse_input("type poset\nelement").is_err());
        assert!(parse_input("type poset\ncover a").is_err());
        assert!(parse_input("type poset\ncover a b c").is_err());
    }

    #[test]
    fn render_is_stable() {
        let doc = parse_input("type lattice # x\ncover b a\n\nelement z\ncover c b\n").unwrap();
        let once = doc.render();
        assert_eq!(once, "type lattice\nelement z\ncover b a\ncover c b\n");
        assert_eq!(parse_input(&once).unwrap().render(), once);
    }
}
