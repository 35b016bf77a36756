//! File formats: matroid documents (flats / graph / builtin) and poset
//! documents (cover pairs). Field names are exact and unknown fields are
//! rejected.

use std::sync::Arc;

use serde_json::Value;
use thiserror::Error;

use crate::matroid::{MatroidError, MatroidLattice};
use crate::poset::{Poset, PosetError};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Schema(String),
    #[error(transparent)]
    Matroid(#[from] MatroidError),
    #[error(transparent)]
    Poset(#[from] PosetError),
}

fn schema(msg: impl Into<String>) -> IoError {
    IoError::Schema(msg.into())
}

fn check_fields(obj: &serde_json::Map<String, Value>, allowed: &[&str]) -> Result<(), IoError> {
    for key in obj.keys() {
        if !allowed.contains(&key.as_str()) {
            return Err(schema(format!("unknown field \"{key}\"")));
        }
    }
    for &key in allowed {
        if !obj.contains_key(key) {
            return Err(schema(format!("missing field \"{key}\"")));
        }
    }
    Ok(())
}

fn as_usize(v: &Value, what: &str) -> Result<usize, IoError> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| schema(format!("{what} must be a nonnegative integer")))
}

fn as_pair_list(v: &Value, what: &str) -> Result<Vec<(usize, usize)>, IoError> {
    let arr = v
        .as_array()
        .ok_or_else(|| schema(format!("{what} must be an array")))?;
    arr.iter()
        .map(|e| {
            let pair = e
                .as_array()
                .filter(|p| p.len() == 2)
                .ok_or_else(|| schema(format!("{what} entries must be two-element arrays")))?;
            Ok((as_usize(&pair[0], what)?, as_usize(&pair[1], what)?))
        })
        .collect()
}

/// Parses a matroid document:
/// `{"format":"flats","ground_set":n,"flats":[[...],...]}`,
/// `{"format":"graph","vertices":v,"edges":[[u,w],...]}`, or
/// `{"format":"builtin","name":"boolean"|"uniform","params":[...]}`.
pub fn matroid_from_json(src: &str) -> Result<Arc<MatroidLattice>, IoError> {
    let value: Value = serde_json::from_str(src)?;
    let obj = value
        .as_object()
        .ok_or_else(|| schema("document must be a JSON object"))?;
    let format = obj
        .get("format")
        .and_then(|f| f.as_str())
        .ok_or_else(|| schema("missing string field \"format\""))?;
    match format {
        "flats" => {
            check_fields(obj, &["format", "ground_set", "flats"])?;
            let n = as_usize(&obj["ground_set"], "ground_set")?;
            let arr = obj["flats"]
                .as_array()
                .ok_or_else(|| schema("flats must be an array of arrays"))?;
            let mut flats: Vec<Vec<u16>> = Vec::with_capacity(arr.len());
            for f in arr {
                let elems = f
                    .as_array()
                    .ok_or_else(|| schema("each flat must be an array"))?;
                let mut set: Vec<u16> = elems
                    .iter()
                    .map(|e| {
                        let x = as_usize(e, "flat element")?;
                        if x >= n {
                            return Err(schema(format!(
                                "flat element {x} exceeds ground set size {n}"
                            )));
                        }
                        Ok(x as u16)
                    })
                    .collect::<Result<_, IoError>>()?;
                set.sort_unstable();
                set.dedup();
                flats.push(set);
            }
            let full: Vec<u16> = (0..n as u16).collect();
            if !flats.iter().any(|f| f.is_empty()) || !flats.contains(&full) {
                return Err(schema("flats must contain [] and the full ground set"));
            }
            {
                let mut sorted = flats.clone();
                sorted.sort();
                sorted.dedup();
                if sorted.len() != flats.len() {
                    return Err(schema("duplicate flats"));
                }
            }
            let leq = |a: usize, b: usize| flats[a].iter().all(|e| flats[b].contains(e));
            // ranks inferred from longest chains below each flat
            let poset = Poset::from_closed_leq(flats.len(), leq)?;
            let heights = poset.heights();
            let rank: Vec<u32> = heights.iter().map(|&h| h as u32).collect();
            let m = MatroidLattice::validate(flats.len(), leq, rank, n, Some(flats.clone()))?;
            Ok(Arc::new(m))
        }
        "graph" => {
            check_fields(obj, &["format", "vertices", "edges"])?;
            let v = as_usize(&obj["vertices"], "vertices")?;
            let edges = as_pair_list(&obj["edges"], "edges")?;
            Ok(MatroidLattice::graphic(v, &edges)?)
        }
        "builtin" => {
            check_fields(obj, &["format", "name", "params"])?;
            let name = obj["name"]
                .as_str()
                .ok_or_else(|| schema("name must be a string"))?;
            let params: Vec<usize> = obj["params"]
                .as_array()
                .ok_or_else(|| schema("params must be an array"))?
                .iter()
                .map(|p| as_usize(p, "param"))
                .collect::<Result<_, IoError>>()?;
            match (name, params.as_slice()) {
                ("boolean", [n]) => Ok(MatroidLattice::boolean(*n)?),
                ("uniform", [r, n]) => Ok(MatroidLattice::uniform(*r, *n)?),
                ("boolean", _) => Err(schema("boolean takes params [n]")),
                ("uniform", _) => Err(schema("uniform takes params [r, n]")),
                _ => Err(schema(format!("unknown builtin \"{name}\""))),
            }
        }
        other => Err(schema(format!("unknown format \"{other}\""))),
    }
}

/// Parses a poset document `{"size":n,"covers":[[i,j],...]}` where the
/// pairs are covering relations `i < j`.
pub fn poset_from_json(src: &str) -> Result<Poset, IoError> {
    let value: Value = serde_json::from_str(src)?;
    let obj = value
        .as_object()
        .ok_or_else(|| schema("document must be a JSON object"))?;
    check_fields(obj, &["size", "covers"])?;
    let size = as_usize(&obj["size"], "size")?;
    let covers = as_pair_list(&obj["covers"], "covers")?;
    Ok(Poset::build(size, &covers)?)
}

/// Serializes a matroid to the flats document; inverse of the flats reader
/// for matroids carrying ground labels.
pub fn matroid_to_flats_json(m: &MatroidLattice) -> Option<String> {
    let flats: Vec<Vec<u16>> = m
        .flats()
        .map(|f| m.label(f).map(|l| l.to_vec()))
        .collect::<Option<_>>()?;
    let doc = serde_json::json!({
        "format": "flats",
        "ground_set": m.ground_size(),
        "flats": flats,
    });
    Some(doc.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_documents() {
        let m = matroid_from_json(r#"{"format":"builtin","name":"boolean","params":[3]}"#).unwrap();
        assert_eq!(m.size(), 8);
        let m =
            matroid_from_json(r#"{"format":"builtin","name":"uniform","params":[2,4]}"#).unwrap();
        assert_eq!(m.rank_top(), 2);
        assert!(matroid_from_json(r#"{"format":"builtin","name":"fano","params":[]}"#).is_err());
    }

    #[test]
    fn graph_document() {
        let m = matroid_from_json(r#"{"format":"graph","vertices":3,"edges":[[0,1],[1,2],[0,2]]}"#)
            .unwrap();
        assert_eq!(m.size(), 5);
    }

    #[test]
    fn flats_document_roundtrip() {
        let m = MatroidLattice::uniform(2, 3).unwrap();
        let doc = matroid_to_flats_json(&m).unwrap();
        let back = matroid_from_json(&doc).unwrap();
        assert_eq!(back.size(), m.size());
        for f in m.flats() {
            assert_eq!(back.rank(f), m.rank(f));
            assert_eq!(back.label(f), m.label(f));
        }
    }

    #[test]
    fn flats_document_requires_bounds() {
        // missing the empty set
        let err =
            matroid_from_json(r#"{"format":"flats","ground_set":1,"flats":[[0]]}"#).unwrap_err();
        assert!(matches!(err, IoError::Schema(_)));
        // unknown fields rejected
        let err =
            matroid_from_json(r#"{"format":"flats","ground_set":1,"flats":[[],[0]],"extra":1}"#)
                .unwrap_err();
        assert!(matches!(err, IoError::Schema(_)));
    }

    #[test]
    fn corrupted_flats_fail_validation() {
        // two disjoint 2-point lines on 4 points: not submodular
        let doc = r#"{"format":"flats","ground_set":4,
            "flats":[[],[0],[1],[2],[3],[0,1],[2,3],[0,1,2,3]]}"#;
        let err = matroid_from_json(doc).unwrap_err();
        assert!(matches!(
            err,
            IoError::Matroid(MatroidError::NotSubmodular { .. })
        ));
    }

    #[test]
    fn poset_document() {
        let p = poset_from_json(r#"{"size":3,"covers":[[0,1],[1,2]]}"#).unwrap();
        assert!(p.leq(0, 2));
        assert!(poset_from_json(r#"{"size":2,"covers":[[0,1],[1,0]]}"#).is_err());
        assert!(poset_from_json(r#"{"size":2,"covers":[],"x":0}"#).is_err());
    }
}
