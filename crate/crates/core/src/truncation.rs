//! Finite balls of a host graph, with the bookkeeping needed to tell which
//! local quantities are exact for the host.
//!
//! A vertex is *interior* when its whole neighbourhood and every incident
//! face are present, so its degree and curvature agree with the host. Traced
//! faces touching an interior vertex are host faces; all other traced faces
//! belong to the synthetic region outside the truncation and never count as
//! host faces.

use crate::error::{Error, Result};
use crate::host::{Family, HostDescriptor};
use crate::map::{bfs_distances, FaceId, HalfEdge, PlanarMap, VertexId, UNREACHABLE};
use crate::rational::FaceDegree;

/// Classification of a traced face.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FaceKind {
    Host(FaceDegree),
    Synthetic,
}

#[derive(Clone, Debug)]
pub struct Truncation {
    map: PlanarMap,
    center: VertexId,
    radius: u32,
    interior: Vec<bool>,
    host_degree: Vec<Option<u32>>,
    face_kind: Vec<FaceKind>,
    center_dist: Vec<u32>,
    host: HostDescriptor,
}

impl Truncation {
    /// Wraps a map with interior flags and validates it against the host.
    pub fn new(
        map: PlanarMap,
        center: VertexId,
        interior: Vec<bool>,
        host: HostDescriptor,
    ) -> Result<Self> {
        let n = map.vertex_count();
        if interior.len() != n {
            return Err(Error::Validation(format!(
                "{} interior flags for {n} vertices",
                interior.len()
            )));
        }
        if center as usize >= n {
            return Err(Error::Validation(format!("center {center} out of range")));
        }
        let center_dist = bfs_distances(&map, center);
        if let Some(w) = center_dist.iter().position(|&d| d == UNREACHABLE) {
            return Err(Error::DisconnectedGraph(w as VertexId));
        }
        let radius = center_dist.iter().copied().max().unwrap_or(0);

        let regular = host.regular_degree();
        let host_degree = (0..n as VertexId)
            .map(|v| {
                if interior[v as usize] {
                    Some(map.degree(v) as u32)
                } else {
                    regular
                }
            })
            .collect();

        let face_kind = classify_faces(&map, &interior, &host);
        let trunc = Truncation {
            map,
            center,
            radius,
            interior,
            host_degree,
            face_kind,
            center_dist,
            host,
        };
        trunc.validate()?;
        Ok(trunc)
    }

    /// Treats a finite map as its own host: every vertex is interior and every
    /// traced face, including the outer one, is a host face.
    pub fn whole(map: PlanarMap, host: HostDescriptor) -> Result<Self> {
        let n = map.vertex_count();
        Truncation::new(map, 0, vec![true; n], host)
    }

    fn validate(&self) -> Result<()> {
        let map = &self.map;
        if map.edge_count() > 0 {
            let chi = map.euler_characteristic();
            if chi != 2 {
                return Err(Error::NonPlanar(chi));
            }
        }
        let p = self.host.p;
        for v in self.interior_vertices() {
            let d = map.degree(v);
            if d < 2 {
                return Err(Error::TerminalVertex(v, d));
            }
            if let (Some(rd), Family::Gpq | Family::Tree | Family::Trihex) = (p, self.host.family) {
                if d as u32 != rd {
                    return Err(Error::Validation(format!(
                        "interior vertex {v} has degree {d}, host degree is {rd}"
                    )));
                }
            }
            if let (Some(bound), Family::Custom) = (p, self.host.family) {
                if d as u32 > bound {
                    return Err(Error::Validation(format!(
                        "interior vertex {v} has degree {d} above the stated bound {bound}"
                    )));
                }
            }
            let mut degrees = Vec::with_capacity(d);
            for h in map.half_edges(v) {
                let deg = match self.face_kind[map.face_of(h) as usize] {
                    FaceKind::Host(deg) => deg,
                    FaceKind::Synthetic => {
                        unreachable!("faces at interior vertices are host faces")
                    }
                };
                if self.host.faces_are_finite() && deg.is_infinite() {
                    return Err(Error::Validation(format!(
                        "interior vertex {v} lies on a face that is not a closed polygon"
                    )));
                }
                if let FaceDegree::Finite(k) = deg {
                    if k < 3 {
                        return Err(Error::Validation(format!(
                            "face of degree {k} at vertex {v}"
                        )));
                    }
                    if self.host.family == Family::Gpq && Some(deg) != self.host.q {
                        return Err(Error::Validation(format!(
                            "face of degree {k} at interior vertex {v}, host face degree is {}",
                            self.host.q.map(|q| q.to_string()).unwrap_or_default()
                        )));
                    }
                    if let Some(FaceDegree::Finite(bound)) = self.host.q {
                        if k > bound {
                            return Err(Error::Validation(format!(
                                "face of degree {k} at vertex {v} exceeds the bound {bound}"
                            )));
                        }
                    }
                }
                degrees.push(deg);
                let t = map.twin(h);
                if map.face_of(h) == map.face_of(t) && !deg.is_infinite() {
                    return Err(Error::EdgeOnOneFace(v, map.target(h)));
                }
            }
            if self.host.family == Family::Trihex {
                let alternating = degrees.len() == 4
                    && (0..4).all(|i| degrees[i] != degrees[(i + 1) % 4])
                    && degrees
                        .iter()
                        .all(|&k| k == FaceDegree::Finite(3) || k == FaceDegree::Finite(6));
                if !alternating {
                    return Err(Error::Validation(format!(
                        "interior vertex {v} does not see faces 3,6,3,6"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn map(&self) -> &PlanarMap {
        &self.map
    }

    pub fn host(&self) -> &HostDescriptor {
        &self.host
    }

    pub fn center(&self) -> VertexId {
        self.center
    }

    /// Largest distance from the center.
    pub fn radius(&self) -> u32 {
        self.radius
    }

    pub fn vertex_count(&self) -> usize {
        self.map.vertex_count()
    }

    pub fn is_interior(&self, v: VertexId) -> bool {
        self.interior[v as usize]
    }

    pub fn interior_flags(&self) -> &[bool] {
        &self.interior
    }

    pub fn interior_vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertex_count() as VertexId).filter(|&v| self.interior[v as usize])
    }

    /// Degree of `v` in the host, when known.
    pub fn host_degree(&self, v: VertexId) -> Option<u32> {
        self.host_degree[v as usize]
    }

    /// True if all host neighbours of `v` are present.
    pub fn is_closed(&self, v: VertexId) -> bool {
        self.host_degree[v as usize] == Some(self.map.degree(v) as u32)
    }

    pub fn face_kind(&self, f: FaceId) -> FaceKind {
        self.face_kind[f as usize]
    }

    /// Host degree of traced face `f`; `None` for synthetic faces.
    pub fn face_degree(&self, f: FaceId) -> Option<FaceDegree> {
        match self.face_kind[f as usize] {
            FaceKind::Host(d) => Some(d),
            FaceKind::Synthetic => None,
        }
    }

    /// Host face degree seen from the corner that starts with half-edge `h`.
    pub fn corner_face_degree(&self, h: HalfEdge) -> Option<FaceDegree> {
        self.face_degree(self.map.face_of(h))
    }

    /// Distance of `v` from the center.
    pub fn center_distance(&self, v: VertexId) -> u32 {
        self.center_dist[v as usize]
    }

    pub fn center_distances(&self) -> &[u32] {
        &self.center_dist
    }

    /// Largest face degree among host faces at interior vertices.
    pub fn max_face_degree(&self) -> Option<FaceDegree> {
        self.interior_vertices()
            .flat_map(|v| self.map.half_edges(v))
            .filter_map(|h| self.corner_face_degree(h))
            .max()
    }

    /// Vertex ids within distance `r` of the center, in id order.
    pub fn ball(&self, r: u32) -> Vec<VertexId> {
        (0..self.vertex_count() as VertexId)
            .filter(|&v| self.center_dist[v as usize] <= r)
            .collect()
    }

    /// Cut locus of `v` (vertices where the distance to `v` is locally maximal).
    ///
    /// Only vertices whose distance and neighbourhood are certainly the host's
    /// are decided; the rest are reported as undetermined.
    pub fn cut_locus(&self, v: VertexId) -> Result<CutLocus> {
        if !self.is_interior(v) {
            return Err(Error::CenterOnBoundary(v));
        }
        let dist = bfs_distances(&self.map, v);
        // Layers up to the first one holding a vertex with missing neighbours
        // are exact, and so is the layer after it.
        let horizon = (0..self.vertex_count() as VertexId)
            .filter(|&w| !self.is_closed(w))
            .map(|w| dist[w as usize])
            .min()
            .unwrap_or(u32::MAX);
        let mut locus = CutLocus::default();
        for w in 0..self.vertex_count() as VertexId {
            let dw = dist[w as usize];
            if !self.is_closed(w) || dw > horizon {
                locus.undetermined.push(w);
                continue;
            }
            if self
                .map
                .neighbors(w)
                .iter()
                .all(|&x| dist[x as usize] <= dw)
            {
                locus.members.push(w);
            }
        }
        Ok(locus)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CutLocus {
    pub members: Vec<VertexId>,
    pub undetermined: Vec<VertexId>,
}

fn classify_faces(map: &PlanarMap, interior: &[bool], host: &HostDescriptor) -> Vec<FaceKind> {
    (0..map.face_count() as FaceId)
        .map(|f| {
            if !map.face_vertices(f).any(|v| interior[v as usize]) {
                return FaceKind::Synthetic;
            }
            let len = map.face_len(f) as u32;
            let within_bound = match host.q {
                Some(FaceDegree::Finite(b)) => len <= b || host.faces_are_finite(),
                _ => true,
            };
            if host.family != Family::Tree && map.face_is_simple(f) && within_bound {
                FaceKind::Host(FaceDegree::Finite(len))
            } else {
                FaceKind::Host(FaceDegree::Infinite)
            }
        })
        .collect()
}
