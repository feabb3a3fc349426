//! JSON rotation-system files.
//!
//! ```json
//! { "format": "tessellab-rotation/1",
//!   "vertices": [ { "id": 0, "neighbors": [1, 2] }, ... ],
//!   "interior": [0, 4],
//!   "host": { "family": "gpq", "p": 6, "q": 6, "vertex_transitive": true } }
//! ```
//!
//! Neighbour order is counterclockwise and ids must be `0..n`. The center is
//! vertex 0. Without an `interior` list the file describes a finite map that
//! is its own host.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::host::{Family, HostDescriptor};
use crate::map::{PlanarMap, VertexId};
use crate::rational::FaceDegree;
use crate::truncation::Truncation;

pub const FORMAT_TAG: &str = "tessellab-rotation/1";

#[derive(Debug, Serialize, Deserialize)]
struct FileVertex {
    id: VertexId,
    neighbors: Vec<VertexId>,
}

#[derive(Debug, Serialize, Deserialize)]
struct FileHost {
    family: Family,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    p: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    q: Option<u32>,
    #[serde(default)]
    vertex_transitive: bool,
}

#[derive(Debug, Deserialize)]
struct TruncationFile {
    format: String,
    vertices: Vec<FileVertex>,
    #[serde(default)]
    interior: Option<Vec<VertexId>>,
    host: FileHost,
}

fn host_from_file(h: &FileHost) -> Result<HostDescriptor> {
    let check = |x: u32, what: &str| {
        if x < 3 {
            Err(Error::Parse(format!("{what} = {x} must be at least 3")))
        } else {
            Ok(x)
        }
    };
    let host = match h.family {
        Family::Gpq => {
            let p = h.p.ok_or_else(|| Error::Parse("gpq host needs p".into()))?;
            let q = h.q.ok_or_else(|| Error::Parse("gpq host needs q".into()))?;
            HostDescriptor::gpq(check(p, "p")?, check(q, "q")?)
        }
        Family::Tree => {
            let p =
                h.p.ok_or_else(|| Error::Parse("tree host needs p".into()))?;
            if h.q.is_some() {
                return Err(Error::Parse("tree host has no finite faces; omit q".into()));
            }
            HostDescriptor::tree(check(p, "p")?)
        }
        Family::Trihex => HostDescriptor::trihex(),
        Family::Custom => HostDescriptor::custom(h.p, h.q.map(FaceDegree::Finite)),
    };
    Ok(HostDescriptor {
        vertex_transitive: h.vertex_transitive,
        ..host
    })
}

fn host_to_file(h: &HostDescriptor) -> FileHost {
    FileHost {
        family: h.family,
        p: h.p,
        q: h.q.and_then(FaceDegree::finite),
        vertex_transitive: h.vertex_transitive,
    }
}

/// Parses and validates a truncation file.
pub fn parse_truncation(text: &str) -> Result<Truncation> {
    let file: TruncationFile = serde_json::from_str(text)?;
    if file.format != FORMAT_TAG {
        return Err(Error::Parse(format!(
            "unknown format {:?}, expected {FORMAT_TAG:?}",
            file.format
        )));
    }
    let n = file.vertices.len();
    let mut rotations: Vec<Option<Vec<VertexId>>> = vec![None; n];
    for v in file.vertices {
        let slot = rotations
            .get_mut(v.id as usize)
            .ok_or_else(|| Error::Parse(format!("vertex id {} out of range 0..{n}", v.id)))?;
        if slot.replace(v.neighbors).is_some() {
            return Err(Error::Parse(format!("vertex id {} listed twice", v.id)));
        }
    }
    let rotations: Vec<Vec<VertexId>> = rotations.into_iter().map(Option::unwrap).collect();
    let host = host_from_file(&file.host)?;
    match file.interior {
        None => {
            let map = PlanarMap::from_rotation_system(&rotations, true)?;
            Truncation::whole(map, host)
        }
        Some(ids) => {
            let map = PlanarMap::from_rotation_system(&rotations, false)?;
            let mut interior = vec![false; n];
            for v in ids {
                *interior
                    .get_mut(v as usize)
                    .ok_or_else(|| Error::Parse(format!("interior id {v} out of range")))? = true;
            }
            Truncation::new(map, 0, interior, host)
        }
    }
}

pub fn read_truncation(path: impl AsRef<Path>) -> Result<Truncation> {
    parse_truncation(&std::fs::read_to_string(path)?)
}

/// Serializes a truncation, one vertex per line.
pub fn to_json(trunc: &Truncation) -> String {
    let map = trunc.map();
    let mut out = String::new();
    out.push_str("{\n");
    let _ = writeln!(out, "  \"format\": {},", serde_json::json!(FORMAT_TAG));
    let host = serde_json::to_string(&host_to_file(trunc.host())).expect("host serializes");
    let _ = writeln!(out, "  \"host\": {host},");
    let interior: Vec<VertexId> = trunc.interior_vertices().collect();
    let all_interior = interior.len() == trunc.vertex_count();
    if !all_interior {
        let ids = serde_json::to_string(&interior).expect("ids serialize");
        let _ = writeln!(out, "  \"interior\": {ids},");
    }
    out.push_str("  \"vertices\": [\n");
    let n = map.vertex_count();
    for v in 0..n as VertexId {
        let line = serde_json::to_string(&FileVertex {
            id: v,
            neighbors: map.neighbors(v).to_vec(),
        })
        .expect("vertex serializes");
        let sep = if (v as usize) + 1 < n { "," } else { "" };
        let _ = writeln!(out, "    {line}{sep}");
    }
    out.push_str("  ]\n}\n");
    out
}

pub fn write_truncation(path: impl AsRef<Path>, trunc: &Truncation) -> Result<()> {
    std::fs::write(path, to_json(trunc))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    const TRIANGLE: &str = r#"{
        "format": "tessellab-rotation/1",
        "vertices": [
            {"id": 0, "neighbors": [1, 2]},
            {"id": 2, "neighbors": [0, 1]},
            {"id": 1, "neighbors": [2, 0]}
        ],
        "host": {"family": "custom", "vertex_transitive": false}
    }"#;

    #[test]
    fn parses_whole_map() {
        let t = parse_truncation(TRIANGLE).unwrap();
        assert_eq!(t.vertex_count(), 3);
        assert_eq!(t.interior_vertices().count(), 3);
    }

    #[test]
    fn round_trip() {
        let t = parse_truncation(TRIANGLE).unwrap();
        let text = to_json(&t);
        let again = parse_truncation(&text).unwrap();
        assert_eq!(to_json(&again), text);
    }

    #[test]
    fn inconsistent_rotation_is_input_error() {
        let bad = TRIANGLE.replace("[2, 0]", "[2]");
        let err = parse_truncation(&bad).unwrap_err();
        assert!(err.is_input_error(), "{err}");
    }

    #[test]
    fn wrong_tag_rejected() {
        let bad = TRIANGLE.replace("rotation/1", "rotation/9");
        assert!(matches!(parse_truncation(&bad), Err(Error::Parse(_))));
    }
}
