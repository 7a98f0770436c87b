//! Poset file format: JSON text, one poset per file, either
//! {"facets": [[1,2],[1,3]]} for a pure simplicial complex or
//! {"elements": [...], "ranks": {...}, "covers": [[lower, upper], ...]}
//! for an explicit graded poset.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Deserialize;
use thiserror::Error;

use crate::poset::{face_poset, GradedPoset, PosetError};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("JSON parse error at line {line}, column {column}: {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{0}")]
    Semantic(String),
    #[error(transparent)]
    Poset(#[from] PosetError),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct PosetFile {
    facets: Option<Vec<Vec<u32>>>,
    elements: Option<Vec<String>>,
    ranks: Option<BTreeMap<String, u32>>,
    covers: Option<Vec<(String, String)>>,
}

pub fn parse_poset_json(text: &str) -> Result<GradedPoset, FormatError> {
    let raw: PosetFile = serde_json::from_str(text).map_err(|e| FormatError::Json {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    match (raw.facets, raw.elements) {
        (Some(_), Some(_)) => Err(FormatError::Semantic(
            "give either \"facets\" or \"elements\", not both".into(),
        )),
        (Some(facets), None) => Ok(face_poset(&facets)?),
        (None, Some(elements)) => {
            let covers = raw.covers.ok_or_else(|| {
                FormatError::Semantic("explicit form needs a \"covers\" list".into())
            })?;
            let ranks = raw.ranks.ok_or_else(|| {
                FormatError::Semantic("explicit form needs a \"ranks\" map".into())
            })?;
            Ok(GradedPoset::from_named(elements, &ranks, &covers)?)
        }
        (None, None) => Err(FormatError::Semantic(
            "poset file needs \"facets\" or \"elements\"".into(),
        )),
    }
}

pub fn read_poset_file(path: &Path) -> Result<GradedPoset, FormatError> {
    let text = std::fs::read_to_string(path).map_err(|source| FormatError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_poset_json(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_facet_form() {
        let p = parse_poset_json(r#"{"facets": [[1,2],[1,3],[1,4],[2,3],[2,4],[3,4]]}"#).unwrap();
        assert_eq!(p.f_vector().unwrap(), vec![1, 4, 6]);
    }

    #[test]
    fn parses_explicit_form() {
        let text = r#"{
            "elements": ["bot", "a", "b", "top"],
            "ranks": {"bot": 0, "a": 1, "b": 1, "top": 2},
            "covers": [["bot","a"], ["bot","b"], ["a","top"], ["b","top"]]
        }"#;
        let p = parse_poset_json(text).unwrap();
        assert!(p.validate().is_empty());
        assert_eq!(p.len(), 4);
        assert!(p.has_top());
    }

    #[test]
    fn reports_errors_with_location() {
        let err = parse_poset_json("{\n  \"facets\": [[1,2]").unwrap_err();
        match err {
            FormatError::Json { line, .. } => assert_eq!(line, 2),
            other => panic!("expected JSON error, got {other:?}"),
        }
        assert!(parse_poset_json(r#"{"elements": ["a"]}"#).is_err());
        assert!(parse_poset_json(r#"{"facets": []}"#).is_err());
        assert!(parse_poset_json(r#"{"unknown": 1}"#).is_err());
        let missing_rank = r#"{"elements": ["a"], "ranks": {}, "covers": []}"#;
        assert!(parse_poset_json(missing_rank).is_err());
    }
}
