//! Corner, vertex and subset curvature, and the constants derived from them.

use crate::error::{Error, Result};
use crate::map::{FaceId, VertexId};
use crate::rational::{int, ratio, FaceDegree, Rational};
use crate::subset::SubsetStats;
use crate::truncation::Truncation;

/// `1/|v| + 1/|f| - 1/2`.
pub fn corner_curvature(v_degree: u32, f: FaceDegree) -> Rational {
    ratio(1, v_degree as i64) + f.reciprocal() - ratio(1, 2)
}

/// `1 - |v|/2 + sum of 1/|f|` over the faces at `v`.
pub fn vertex_curvature(trunc: &Truncation, v: VertexId) -> Result<Rational> {
    if !trunc.is_interior(v) {
        return Err(Error::BoundaryVertex(v));
    }
    let map = trunc.map();
    let d = map.degree(v) as i64;
    let faces: Rational = map
        .half_edges(v)
        .map(|h| {
            trunc
                .corner_face_degree(h)
                .expect("interior corners are host corners")
                .reciprocal()
        })
        .sum();
    Ok(int(1) - ratio(d, 2) + faces)
}

/// Vertex curvature in a host whose faces all have degree `q`.
pub fn face_regular_curvature(v_degree: u32, q: FaceDegree) -> Rational {
    match q {
        FaceDegree::Finite(q) => int(1) - ratio(v_degree as i64 * (q as i64 - 2), 2 * q as i64),
        FaceDegree::Infinite => int(1) - ratio(v_degree as i64, 2),
    }
}

#[derive(Clone, Debug)]
pub struct Corner {
    pub vertex: VertexId,
    pub face: FaceId,
    pub face_degree: FaceDegree,
    pub curvature: Rational,
}

#[derive(Clone, Debug)]
pub struct CurvatureProfile {
    /// `(v, kappa(v))` for every interior vertex.
    pub vertices: Vec<(VertexId, Rational)>,
    pub corners: Vec<Corner>,
    pub sup: Rational,
    pub inf: Rational,
    /// `-sup kappa`, present only when positive.
    pub a: Option<Rational>,
    /// `-inf kappa`.
    pub b: Rational,
    /// `-sup kappa(v)/|v|`, present only when positive.
    pub c: Option<Rational>,
    pub nonpositive_corner_curvature: bool,
    pub nonpositive_vertex_curvature: bool,
    /// Largest face degree seen at an interior vertex.
    pub max_face_degree: Option<FaceDegree>,
}

/// Curvature of every interior vertex and corner, and the bound constants.
pub fn curvature_constants(trunc: &Truncation) -> Result<CurvatureProfile> {
    let map = trunc.map();
    let mut vertices = Vec::new();
    let mut corners = Vec::new();
    let mut sup_scaled: Option<Rational> = None;
    for v in trunc.interior_vertices() {
        let d = map.degree(v) as u32;
        let kappa = vertex_curvature(trunc, v)?;
        for h in map.half_edges(v) {
            let f = map.face_of(h);
            let face_degree = trunc
                .face_degree(f)
                .expect("interior corners are host corners");
            corners.push(Corner {
                vertex: v,
                face: f,
                face_degree,
                curvature: corner_curvature(d, face_degree),
            });
        }
        let scaled = kappa / int(d as i64);
        sup_scaled = Some(sup_scaled.map_or(scaled, |s| s.max(scaled)));
        vertices.push((v, kappa));
    }
    if vertices.is_empty() {
        return Err(Error::NoInteriorVertices);
    }
    let sup = vertices.iter().map(|&(_, k)| k).max().unwrap();
    let inf = vertices.iter().map(|&(_, k)| k).min().unwrap();
    let zero = int(0);
    let positive = |x: Rational| (x > zero).then_some(x);
    let sup_scaled = sup_scaled.unwrap();
    Ok(CurvatureProfile {
        a: positive(-sup),
        b: -inf,
        c: positive(-sup_scaled),
        sup,
        inf,
        nonpositive_corner_curvature: corners.iter().all(|c| c.curvature <= zero),
        nonpositive_vertex_curvature: sup <= zero,
        max_face_degree: trunc.max_face_degree(),
        vertices,
        corners,
    })
}

/// `kappa(W) - [2 - C(W) - |dW|/2 + sum |f|_in/|f|]`; identically zero.
pub fn harm_identity_residual(stats: &SubsetStats) -> Rational {
    let faces: Rational = stats
        .boundary_faces
        .iter()
        .map(|f| f.degree.reciprocal() * int(f.inner_degree as i64))
        .sum();
    stats.curvature
        - (int(2) - int(stats.extra_faces as i64) - ratio(stats.edge_boundary as i64, 2) + faces)
}

/// `2q/(q-2) (2 - C(W) - kappa(W))`, a lower bound for `|dW|`.
pub fn boundary_lower_bound(stats: &SubsetStats, q: FaceDegree) -> Result<Rational> {
    if let Some(found) = stats.max_face_degree {
        if found > q {
            return Err(Error::QSmallerThanFaceDegree {
                q: q.to_string(),
                found: found.to_string(),
            });
        }
    }
    Ok(q.cheeger_factor() * (int(2) - int(stats.extra_faces as i64) - stats.curvature))
}
