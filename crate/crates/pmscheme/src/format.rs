//! Matching-set files: canonical JSON and a plain-text alternative.
//!
//! JSON: `{"n": 3, "matchings": [[[1,2],[3,4],[5,6]], ...]}`.
//! Text: one matching per line as `1-2 3-4 5-6`; blank lines and lines
//! starting with `#` are skipped.

use std::fmt::Write as _;
use std::path::Path;

use pmscheme_core::{Matching, MatchingSet};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}, column {column}: {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}, position {position}: {message}")]
    Text {
        line: usize,
        position: usize,
        message: String,
    },
    #[error("matching {index}: {source}")]
    Member { index: usize, source: pmscheme_core::Error },
    #[error("{0}")]
    Set(pmscheme_core::Error),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSet {
    n: usize,
    matchings: Vec<Vec<[usize; 2]>>,
}

/// JSON with one matching per line, pairs in canonical order.
pub fn to_json(n: usize, members: &[Matching]) -> String {
    let mut out = format!("{{\"n\": {n}, \"matchings\": [");
    for (i, m) in members.iter().enumerate() {
        out.push_str(if i == 0 { "\n  " } else { ",\n  " });
        let pairs: Vec<[usize; 2]> = m.pairs().into_iter().map(|(a, b)| [a, b]).collect();
        out.push_str(&serde_json::to_string(&pairs).expect("plain arrays serialise"));
    }
    if !members.is_empty() {
        out.push('\n');
    }
    out.push_str("]}\n");
    out
}

pub fn to_value(n: usize, members: &[Matching]) -> serde_json::Value {
    let raw = RawSet {
        n,
        matchings: members
            .iter()
            .map(|m| m.pairs().into_iter().map(|(a, b)| [a, b]).collect())
            .collect(),
    };
    serde_json::to_value(raw).expect("plain arrays serialise")
}

pub fn set_to_json(set: &MatchingSet) -> String {
    to_json(set.n(), set)
}

pub fn to_text(members: &[Matching]) -> String {
    let mut out = String::new();
    for m in members {
        writeln!(out, "{m}").expect("writing to a string");
    }
    out
}

/// Members in file order; repeats are kept.
pub fn parse_json_members(s: &str) -> Result<(usize, Vec<Matching>), FormatError> {
    let raw: RawSet = serde_json::from_str(s).map_err(|e| FormatError::Json {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let mut members = Vec::with_capacity(raw.matchings.len());
    for (index, pairs) in raw.matchings.iter().enumerate() {
        let pairs: Vec<(usize, usize)> = pairs.iter().map(|p| (p[0], p[1])).collect();
        let m = Matching::from_pairs(&pairs).map_err(|source| FormatError::Member { index, source })?;
        if m.n() != raw.n {
            return Err(FormatError::Member {
                index,
                source: pmscheme_core::Error::GroundSetMismatch {
                    expected: 2 * raw.n,
                    found: m.points(),
                },
            });
        }
        members.push(m);
    }
    Ok((raw.n, members))
}

pub fn parse_text_members(s: &str) -> Result<(usize, Vec<Matching>), FormatError> {
    let mut n = None;
    let mut members = Vec::new();
    for (i, line) in s.lines().enumerate() {
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let m: Matching = line.parse().map_err(|e| {
            let (position, message) = match e {
                pmscheme_core::Error::Parse(p) => (p.position + 1, p.message.to_string()),
                other => (1, other.to_string()),
            };
            FormatError::Text {
                line: i + 1,
                position,
                message,
            }
        })?;
        let want = *n.get_or_insert(m.n());
        if m.n() != want {
            return Err(FormatError::Text {
                line: i + 1,
                position: 1,
                message: format!("matching on {} points, earlier lines have {}", m.points(), 2 * want),
            });
        }
        members.push(m);
    }
    let n = n.ok_or(FormatError::Text {
        line: 1,
        position: 1,
        message: "no matchings".into(),
    })?;
    Ok((n, members))
}

/// JSON when the first non-blank character is `{`, text otherwise.
pub fn parse_members(s: &str) -> Result<(usize, Vec<Matching>), FormatError> {
    if s.trim_start().starts_with('{') {
        parse_json_members(s)
    } else {
        parse_text_members(s)
    }
}

/// Like [`parse_members`] but as a set: repeats and empty input are errors.
pub fn parse_set(s: &str) -> Result<MatchingSet, FormatError> {
    let (n, members) = parse_members(s)?;
    if members.is_empty() {
        return Err(FormatError::Set(pmscheme_core::Error::EmptySet));
    }
    MatchingSet::new(n, members).map_err(FormatError::Set)
}

pub fn read_set(path: &Path) -> Result<MatchingSet, FormatError> {
    parse_set(&read(path)?)
}

pub fn read_members(path: &Path) -> Result<(usize, Vec<Matching>), FormatError> {
    parse_members(&read(path)?)
}

fn read(path: &Path) -> Result<String, FormatError> {
    std::fs::read_to_string(path).map_err(|source| FormatError::Io {
        path: path.display().to_string(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use pmscheme_core::round_robin;

    #[test]
    fn json_round_trip() {
        let rr = round_robin(4).unwrap();
        let s = set_to_json(&rr);
        assert_eq!(parse_set(&s).unwrap(), rr);
        assert!(s.starts_with("{\"n\": 4, \"matchings\": [\n  [[1,"));
        let empty = to_json(3, &[]);
        assert_eq!(parse_members(&empty).unwrap(), (3, vec![]));
        assert!(parse_set(&empty).is_err());
    }

    #[test]
    fn text_round_trip() {
        let rr = round_robin(3).unwrap();
        let s = format!("# K6\n\n{}", to_text(&rr));
        assert_eq!(parse_set(&s).unwrap(), rr);
    }

    #[test]
    fn diagnostics_carry_positions() {
        match parse_members("1-2 3-4\n1-2 3-x\n") {
            Err(FormatError::Text {
                line: 2, position: 7, ..
            }) => {}
            other => panic!("{other:?}"),
        }
        match parse_members("1-2 3-4\n1-2 3-4 5-6\n") {
            Err(FormatError::Text { line: 2, .. }) => {}
            other => panic!("{other:?}"),
        }
        match parse_members("{\"n\": 2,\n \"matchings\": [[[1,2],[3,4]],]}") {
            Err(FormatError::Json { line: 2, .. }) => {}
            other => panic!("{other:?}"),
        }
        match parse_members("{\"n\": 2, \"matchings\": [[[1,2],[3,4]], [[1,2],[2,3]]]}") {
            Err(FormatError::Member { index: 1, .. }) => {}
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_set("1-2 3-4\n1-2 3-4\n"),
            Err(FormatError::Set(pmscheme_core::Error::DuplicateMatching))
        ));
    }
}
