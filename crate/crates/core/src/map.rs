//! Planar maps given by rotation systems.
//!
//! A map is stored as a compressed adjacency array in which the neighbours of
//! each vertex appear in counterclockwise order. Every slot of that array is a
//! half-edge `u -> v`. Faces are never stored in the input; they are traced:
//! the successor of `u -> v` along its face is `v -> w`, where `w` precedes `u`
//! in the rotation at `v`. With counterclockwise rotations this keeps each
//! face on the left of its walk.

use std::collections::VecDeque;

use crate::error::{Error, Result};

pub type VertexId = u32;
pub type HalfEdge = u32;
pub type FaceId = u32;

pub const UNREACHABLE: u32 = u32::MAX;

/// Immutable planar map with traced faces.
#[derive(Clone, Debug)]
pub struct PlanarMap {
    offsets: Vec<u32>,
    targets: Vec<VertexId>,
    sources: Vec<VertexId>,
    twins: Vec<HalfEdge>,
    face_of: Vec<FaceId>,
    face_offsets: Vec<u32>,
    face_edges: Vec<HalfEdge>,
}

impl PlanarMap {
    /// Builds a map from per-vertex counterclockwise neighbour lists.
    ///
    /// Adjacency must be symmetric and free of loops and repeated neighbours.
    /// In strict mode the map must also be a locally tessellating finite map:
    /// connected, planar, no vertex of degree below two, and every edge on two
    /// different faces.
    pub fn from_rotation_system(rotations: &[Vec<VertexId>], strict: bool) -> Result<Self> {
        let map = Self::build(rotations)?;
        if strict {
            map.check_strict()?;
        }
        Ok(map)
    }

    fn build(rotations: &[Vec<VertexId>]) -> Result<Self> {
        let n = rotations.len();
        if n == 0 {
            return Err(Error::EmptyMap);
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0u32);
        let mut targets = Vec::new();
        let mut sources = Vec::new();
        for (v, nbrs) in rotations.iter().enumerate() {
            for (i, &w) in nbrs.iter().enumerate() {
                if w as usize >= n {
                    return Err(Error::InconsistentAdjacency(format!(
                        "vertex {v} lists unknown neighbour {w}"
                    )));
                }
                if w as usize == v {
                    return Err(Error::InconsistentAdjacency(format!("loop at vertex {v}")));
                }
                if nbrs[..i].contains(&w) {
                    return Err(Error::InconsistentAdjacency(format!(
                        "vertex {v} lists neighbour {w} twice"
                    )));
                }
                targets.push(w);
                sources.push(v as VertexId);
            }
            offsets.push(targets.len() as u32);
        }

        let mut twins = vec![0u32; targets.len()];
        for h in 0..targets.len() {
            let (u, v) = (sources[h], targets[h]);
            let range = offsets[v as usize] as usize..offsets[v as usize + 1] as usize;
            match targets[range.clone()].iter().position(|&x| x == u) {
                Some(pos) => twins[h] = (range.start + pos) as u32,
                None => {
                    return Err(Error::InconsistentAdjacency(format!(
                        "vertex {u} lists {v} but {v} does not list {u}"
                    )))
                }
            }
        }

        let mut map = PlanarMap {
            offsets,
            targets,
            sources,
            twins,
            face_of: Vec::new(),
            face_offsets: vec![0],
            face_edges: Vec::new(),
        };
        map.trace_faces();
        Ok(map)
    }

    fn trace_faces(&mut self) {
        let m = self.targets.len();
        let mut face_of = vec![u32::MAX; m];
        let mut face_offsets = vec![0u32];
        let mut face_edges = Vec::with_capacity(m);
        for start in 0..m as u32 {
            if face_of[start as usize] != u32::MAX {
                continue;
            }
            let face = (face_offsets.len() - 1) as u32;
            let mut h = start;
            loop {
                face_of[h as usize] = face;
                face_edges.push(h);
                h = self.next(h);
                if h == start {
                    break;
                }
            }
            face_offsets.push(face_edges.len() as u32);
        }
        self.face_of = face_of;
        self.face_offsets = face_offsets;
        self.face_edges = face_edges;
    }

    fn check_strict(&self) -> Result<()> {
        for v in 0..self.vertex_count() as VertexId {
            let d = self.degree(v);
            if d < 2 {
                return Err(Error::TerminalVertex(v, d));
            }
        }
        for h in 0..self.half_edge_count() as HalfEdge {
            let t = self.twin(h);
            if h < t && self.face_of(h) == self.face_of(t) {
                return Err(Error::EdgeOnOneFace(self.source(h), self.target(h)));
            }
        }
        self.check_connected_planar()
    }

    /// Connectivity plus `V - E + F = 2`.
    pub fn check_connected_planar(&self) -> Result<()> {
        distance_map(self, 0)?;
        if self.edge_count() > 0 {
            let chi = self.euler_characteristic();
            if chi != 2 {
                return Err(Error::NonPlanar(chi));
            }
        }
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn half_edge_count(&self) -> usize {
        self.targets.len()
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len() / 2
    }

    pub fn face_count(&self) -> usize {
        self.face_offsets.len() - 1
    }

    /// `V - E + F` over traced faces.
    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count() as i64 - self.edge_count() as i64 + self.face_count() as i64
    }

    pub fn degree(&self, v: VertexId) -> usize {
        (self.offsets[v as usize + 1] - self.offsets[v as usize]) as usize
    }

    /// Neighbours of `v` in counterclockwise order.
    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.targets[self.offsets[v as usize] as usize..self.offsets[v as usize + 1] as usize]
    }

    /// Outgoing half-edges of `v`, in rotation order.
    pub fn half_edges(&self, v: VertexId) -> std::ops::Range<HalfEdge> {
        self.offsets[v as usize]..self.offsets[v as usize + 1]
    }

    pub fn source(&self, h: HalfEdge) -> VertexId {
        self.sources[h as usize]
    }

    pub fn target(&self, h: HalfEdge) -> VertexId {
        self.targets[h as usize]
    }

    pub fn twin(&self, h: HalfEdge) -> HalfEdge {
        self.twins[h as usize]
    }

    /// Successor of `h` along its face.
    pub fn next(&self, h: HalfEdge) -> HalfEdge {
        let t = self.twins[h as usize];
        let v = self.targets[h as usize] as usize;
        if t == self.offsets[v] {
            self.offsets[v + 1] - 1
        } else {
            t - 1
        }
    }

    pub fn face_of(&self, h: HalfEdge) -> FaceId {
        self.face_of[h as usize]
    }

    /// Half-edges of face `f` in walk order.
    pub fn face_half_edges(&self, f: FaceId) -> &[HalfEdge] {
        &self.face_edges
            [self.face_offsets[f as usize] as usize..self.face_offsets[f as usize + 1] as usize]
    }

    /// Length of the boundary walk of `f`.
    pub fn face_len(&self, f: FaceId) -> usize {
        (self.face_offsets[f as usize + 1] - self.face_offsets[f as usize]) as usize
    }

    /// Vertices along the boundary walk of `f` (with repetitions if the walk
    /// revisits a vertex).
    pub fn face_vertices(&self, f: FaceId) -> impl Iterator<Item = VertexId> + '_ {
        self.face_half_edges(f).iter().map(|&h| self.source(h))
    }

    /// True if the boundary walk of `f` visits no vertex twice.
    pub fn face_is_simple(&self, f: FaceId) -> bool {
        let mut seen: Vec<VertexId> = self.face_vertices(f).collect();
        let len = seen.len();
        seen.sort_unstable();
        seen.dedup();
        seen.len() == len
    }

    /// Half-edge `u -> v`, if the edge exists.
    pub fn find_half_edge(&self, u: VertexId, v: VertexId) -> Option<HalfEdge> {
        self.half_edges(u).find(|&h| self.target(h) == v)
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.neighbors(u).contains(&v)
    }

    /// The rotation system, as accepted by [`PlanarMap::from_rotation_system`].
    pub fn rotations(&self) -> Vec<Vec<VertexId>> {
        (0..self.vertex_count() as VertexId)
            .map(|v| self.neighbors(v).to_vec())
            .collect()
    }

    /// Map induced on `vertices`, keeping the inherited rotation order.
    ///
    /// Returns the new map together with the original id of each new vertex.
    pub fn induced(&self, vertices: &[VertexId]) -> Result<(PlanarMap, Vec<VertexId>)> {
        let mut index = vec![u32::MAX; self.vertex_count()];
        for (i, &v) in vertices.iter().enumerate() {
            index[v as usize] = i as u32;
        }
        let rotations: Vec<Vec<VertexId>> = vertices
            .iter()
            .map(|&v| {
                self.neighbors(v)
                    .iter()
                    .filter_map(|&w| {
                        let i = index[w as usize];
                        (i != u32::MAX).then_some(i)
                    })
                    .collect()
            })
            .collect();
        Ok((PlanarMap::build(&rotations)?, vertices.to_vec()))
    }
}

/// Breadth-first distances from `v`.
///
/// Fails with [`Error::DisconnectedGraph`] if some vertex is unreachable.
pub fn distance_map(map: &PlanarMap, v: VertexId) -> Result<Vec<u32>> {
    let dist = bfs_distances(map, v);
    match dist.iter().position(|&d| d == UNREACHABLE) {
        Some(w) => Err(Error::DisconnectedGraph(w as VertexId)),
        None => Ok(dist),
    }
}

/// Breadth-first distances from `v`; unreachable vertices get [`UNREACHABLE`].
pub fn bfs_distances(map: &PlanarMap, v: VertexId) -> Vec<u32> {
    let mut dist = vec![UNREACHABLE; map.vertex_count()];
    let mut queue = VecDeque::new();
    dist[v as usize] = 0;
    queue.push_back(v);
    while let Some(u) = queue.pop_front() {
        let du = dist[u as usize];
        for &w in map.neighbors(u) {
            if dist[w as usize] == UNREACHABLE {
                dist[w as usize] = du + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Vec<Vec<VertexId>> {
        vec![vec![1, 2], vec![2, 0], vec![0, 1]]
    }

    fn square_with_diagonal() -> Vec<Vec<VertexId>> {
        // 0=(0,0) 1=(1,0) 2=(1,1) 3=(0,1), diagonal 0-2
        vec![vec![1, 2, 3], vec![2, 0], vec![3, 0, 1], vec![0, 2]]
    }

    #[test]
    fn triangle_has_two_faces() {
        let map = PlanarMap::from_rotation_system(&triangle(), true).unwrap();
        assert_eq!(map.vertex_count(), 3);
        assert_eq!(map.edge_count(), 3);
        assert_eq!(map.face_count(), 2);
        assert_eq!(map.euler_characteristic(), 2);
        assert!((0..2).all(|f| map.face_len(f) == 3 && map.face_is_simple(f)));
    }

    #[test]
    fn single_edge_is_terminal() {
        let err = PlanarMap::from_rotation_system(&[vec![1], vec![0]], true).unwrap_err();
        assert!(matches!(err, Error::TerminalVertex(0, 1)));
        // non-strict construction accepts it
        let map = PlanarMap::from_rotation_system(&[vec![1], vec![0]], false).unwrap();
        assert_eq!(map.face_count(), 1);
    }

    #[test]
    fn asymmetric_adjacency_rejected() {
        let err =
            PlanarMap::from_rotation_system(&[vec![1, 2], vec![2], vec![0, 1]], true).unwrap_err();
        assert!(matches!(err, Error::InconsistentAdjacency(_)));
    }

    #[test]
    fn loops_and_duplicates_rejected() {
        assert!(PlanarMap::from_rotation_system(&[vec![0]], false).is_err());
        assert!(PlanarMap::from_rotation_system(&[vec![1, 1], vec![0]], false).is_err());
    }

    #[test]
    fn faces_partition_half_edges() {
        let map = PlanarMap::from_rotation_system(&square_with_diagonal(), true).unwrap();
        assert_eq!(map.face_count(), 3);
        let total: usize = (0..map.face_count() as u32).map(|f| map.face_len(f)).sum();
        assert_eq!(total, map.half_edge_count());
        let mut lens: Vec<_> = (0..3).map(|f| map.face_len(f)).collect();
        lens.sort();
        assert_eq!(lens, vec![3, 3, 4]);
    }

    #[test]
    fn reversed_rotation_is_not_planar() {
        // K4 drawn with the centre vertex 3 inside triangle 0,1,2.
        let good = vec![vec![1, 3, 2], vec![2, 3, 0], vec![0, 3, 1], vec![0, 1, 2]];
        assert!(PlanarMap::from_rotation_system(&good, true).is_ok());
        let mut bad = good.clone();
        bad[3] = vec![0, 2, 1];
        let err = PlanarMap::from_rotation_system(&bad, true).unwrap_err();
        assert!(matches!(
            err,
            Error::NonPlanar(_) | Error::EdgeOnOneFace(..)
        ));
    }

    #[test]
    fn distances_on_square() {
        let map = PlanarMap::from_rotation_system(&square_with_diagonal(), true).unwrap();
        assert_eq!(distance_map(&map, 1).unwrap(), vec![1, 0, 1, 2]);
        let split =
            PlanarMap::from_rotation_system(&[vec![1], vec![0], vec![3], vec![2]], false).unwrap();
        assert!(matches!(
            distance_map(&split, 0),
            Err(Error::DisconnectedGraph(2))
        ));
    }

    #[test]
    fn induced_keeps_rotation() {
        let map = PlanarMap::from_rotation_system(&square_with_diagonal(), true).unwrap();
        let (sub, ids) = map.induced(&[0, 1, 2]).unwrap();
        assert_eq!(ids, vec![0, 1, 2]);
        assert_eq!(sub.edge_count(), 3);
        assert_eq!(sub.face_count(), 2);
    }
}
