//! Finite vertex sets: boundary counts, induced faces, subset curvature, and
//! enumeration of connected interior subsets.

use std::sync::atomic::{AtomicU64, Ordering};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::curvature::vertex_curvature;
use crate::error::{Error, Result};
use crate::map::{bfs_distances, FaceId, VertexId, UNREACHABLE};
use crate::rational::{FaceDegree, Rational};
use crate::truncation::Truncation;

/// A host face meeting `W` that is not a face of the induced map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryFace {
    /// Traced face of the truncation.
    pub face: FaceId,
    pub degree: FaceDegree,
    /// Number of corners of the face at vertices of `W`.
    pub inner_degree: u32,
}

#[derive(Clone, Debug)]
pub struct SubsetStats {
    /// Sorted vertex set.
    pub vertices: Vec<VertexId>,
    pub volume: u64,
    pub inner_edges: u64,
    pub edge_boundary: u64,
    pub vertex_boundary: u64,
    /// Faces of the induced map, outer face included.
    pub induced_faces: u64,
    /// Faces of the induced map that are not host faces, `C(W)`.
    pub extra_faces: u64,
    pub boundary_faces: Vec<BoundaryFace>,
    pub max_face_degree: Option<FaceDegree>,
    /// Sum of vertex curvatures over `W`.
    pub curvature: Rational,
}

impl SubsetStats {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// `|W| - |E_W| + |F_W|`, which is 2 for a connected induced map.
    pub fn euler_characteristic(&self) -> i64 {
        self.len() as i64 - self.inner_edges as i64 + self.induced_faces as i64
    }

    /// `|dW| / |W|`.
    pub fn physical_quotient(&self) -> Rational {
        Rational::new(self.edge_boundary as i64, self.len() as i64)
    }

    /// `|dW| / vol W`.
    pub fn combinatorial_quotient(&self) -> Rational {
        Rational::new(self.edge_boundary as i64, self.volume as i64)
    }

    /// `|d_V W| / |W|`.
    pub fn vertex_quotient(&self) -> Rational {
        Rational::new(self.vertex_boundary as i64, self.len() as i64)
    }
}

/// Membership test for a sorted vertex list.
fn contains(sorted: &[VertexId], v: VertexId) -> bool {
    sorted.binary_search(&v).is_ok()
}

/// All counts for an interior vertex set whose induced graph is connected.
pub fn subset_stats(trunc: &Truncation, w: &[VertexId]) -> Result<SubsetStats> {
    if w.is_empty() {
        return Err(Error::EmptySubset);
    }
    let mut vertices = w.to_vec();
    vertices.sort_unstable();
    vertices.dedup();
    if let Some(&v) = vertices.iter().find(|&&v| !trunc.is_interior(v)) {
        return Err(Error::SubsetTouchesBoundary(v));
    }
    let map = trunc.map();

    let mut volume = 0u64;
    let mut inner_half_edges = 0u64;
    let mut edge_boundary = 0u64;
    let mut outside: Vec<VertexId> = Vec::new();
    let mut curvature = Rational::from_integer(0);
    let mut max_face_degree = None;
    // (face, corners at W) for every host face meeting W.
    let mut touched: Vec<(FaceId, u32)> = Vec::new();
    for &v in &vertices {
        volume += trunc.host_degree(v).expect("interior degree is known") as u64;
        curvature += vertex_curvature(trunc, v)?;
        for h in map.half_edges(v) {
            let u = map.target(h);
            if contains(&vertices, u) {
                inner_half_edges += 1;
            } else {
                edge_boundary += 1;
                outside.push(u);
            }
            touched.push((map.face_of(h), 1));
            let deg = trunc.corner_face_degree(h);
            if deg > max_face_degree {
                max_face_degree = deg;
            }
        }
    }
    outside.sort_unstable();
    outside.dedup();
    touched.sort_unstable();
    touched.dedup_by(|next, acc| {
        if next.0 == acc.0 {
            acc.1 += next.1;
            true
        } else {
            false
        }
    });

    let (induced, _) = map.induced(&vertices)?;
    if bfs_distances(&induced, 0).contains(&UNREACHABLE) {
        return Err(Error::SubsetDisconnected);
    }
    // A traced face of the induced map is a host face when its walk runs
    // along a single finite host face of the same length.
    let mut host_faces: Vec<FaceId> = Vec::new();
    for f in 0..induced.face_count() as FaceId {
        let walk = induced.face_half_edges(f);
        let mut common = None;
        let all_same = walk.iter().all(|&h| {
            let (s, t) = (
                vertices[induced.source(h) as usize],
                vertices[induced.target(h) as usize],
            );
            let orig = map
                .find_half_edge(s, t)
                .expect("induced edges exist in the host");
            let face = map.face_of(orig);
            *common.get_or_insert(face) == face
        });
        if let (true, Some(face)) = (all_same, common) {
            if trunc.face_degree(face) == Some(FaceDegree::Finite(walk.len() as u32)) {
                host_faces.push(face);
            }
        }
    }
    host_faces.sort_unstable();
    let boundary_faces = touched
        .into_iter()
        .filter(|(f, _)| host_faces.binary_search(f).is_err())
        .map(|(face, inner_degree)| BoundaryFace {
            face,
            degree: trunc
                .face_degree(face)
                .expect("faces at interior vertices are host faces"),
            inner_degree,
        })
        .collect();

    // A lone vertex traces no walk but still has the whole plane as a face.
    let induced_faces = (induced.face_count() as u64).max(1);
    let stats = SubsetStats {
        vertex_boundary: outside.len() as u64,
        inner_edges: inner_half_edges / 2,
        induced_faces,
        extra_faces: induced_faces - host_faces.len() as u64,
        vertices,
        volume,
        edge_boundary,
        boundary_faces,
        max_face_degree,
        curvature,
    };
    assert_eq!(
        stats.volume,
        2 * stats.inner_edges + stats.edge_boundary,
        "volume identity"
    );
    Ok(stats)
}

/// Canonical-root enumeration of connected interior vertex sets.
///
/// Each set is produced exactly once, from its smallest vertex, by extending
/// only with larger vertices from the exclusive neighbourhood of the newest
/// member.
pub struct SubsetEnumerator<'a> {
    trunc: &'a Truncation,
    cap: usize,
    budget: Option<u64>,
    produced: AtomicU64,
}

impl<'a> SubsetEnumerator<'a> {
    pub fn new(trunc: &'a Truncation, cap: usize) -> Self {
        SubsetEnumerator {
            trunc,
            cap,
            budget: None,
            produced: AtomicU64::new(0),
        }
    }

    /// Fails with [`Error::CapTooLargeForBudget`] once more than `budget`
    /// sets have been produced.
    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = Some(budget);
        self
    }

    pub fn roots(&self) -> Vec<VertexId> {
        self.trunc.interior_vertices().collect()
    }

    /// Number of sets produced so far.
    pub fn produced(&self) -> u64 {
        self.produced.load(Ordering::Relaxed)
    }

    /// Visits every set whose smallest vertex is `root`.
    pub fn for_each_rooted(
        &self,
        root: VertexId,
        visit: &mut dyn FnMut(&[VertexId]),
    ) -> Result<()> {
        if self.cap == 0 || !self.trunc.is_interior(root) {
            return Ok(());
        }
        let mut sub = vec![root];
        let mut marks = Marks::default();
        marks.mark_closed(self.trunc, root);
        let ext: Vec<VertexId> = self
            .trunc
            .map()
            .neighbors(root)
            .iter()
            .copied()
            .filter(|&u| u > root && self.trunc.is_interior(u))
            .collect();
        self.extend(&mut sub, ext, root, &mut marks, visit)
    }

    /// Visits every set, root by root.
    pub fn for_each(&self, visit: &mut dyn FnMut(&[VertexId])) -> Result<()> {
        for root in self.roots() {
            self.for_each_rooted(root, visit)?;
        }
        Ok(())
    }

    fn extend(
        &self,
        sub: &mut Vec<VertexId>,
        mut ext: Vec<VertexId>,
        root: VertexId,
        marks: &mut Marks,
        visit: &mut dyn FnMut(&[VertexId]),
    ) -> Result<()> {
        let count = self.produced.fetch_add(1, Ordering::Relaxed) + 1;
        if let Some(budget) = self.budget {
            if count > budget {
                return Err(Error::CapTooLargeForBudget(budget));
            }
        }
        visit(sub);
        if sub.len() == self.cap {
            return Ok(());
        }
        let map = self.trunc.map();
        while let Some(w) = ext.pop() {
            let mut next_ext = ext.clone();
            for &u in map.neighbors(w) {
                if u > root
                    && self.trunc.is_interior(u)
                    && !marks.contains(u)
                    && !next_ext.contains(&u)
                {
                    next_ext.push(u);
                }
            }
            let added = marks.mark_closed(self.trunc, w);
            sub.push(w);
            let res = self.extend(sub, next_ext, root, marks, visit);
            sub.pop();
            marks.unmark(added);
            res?;
        }
        Ok(())
    }
}

/// Closed neighbourhood of the current set, as a small sorted list with an
/// undo log.
#[derive(Default)]
struct Marks {
    set: Vec<VertexId>,
}

impl Marks {
    fn contains(&self, v: VertexId) -> bool {
        self.set.binary_search(&v).is_ok()
    }

    fn insert(&mut self, v: VertexId) -> bool {
        match self.set.binary_search(&v) {
            Ok(_) => false,
            Err(pos) => {
                self.set.insert(pos, v);
                true
            }
        }
    }

    fn mark_closed(&mut self, trunc: &Truncation, v: VertexId) -> Vec<VertexId> {
        let mut added = Vec::new();
        for &u in std::iter::once(&v).chain(trunc.map().neighbors(v)) {
            if self.insert(u) {
                added.push(u);
            }
        }
        added
    }

    fn unmark(&mut self, added: Vec<VertexId>) {
        for v in added {
            if let Ok(pos) = self.set.binary_search(&v) {
                self.set.remove(pos);
            }
        }
    }
}

/// Connected interior subset of exactly `size` vertices, grown from a random
/// interior vertex by repeatedly adding a random neighbour. Returns `None`
/// if the growth gets stuck.
pub fn sample_connected_subset(
    trunc: &Truncation,
    size: usize,
    rng: &mut impl Rng,
) -> Option<Vec<VertexId>> {
    let interior: Vec<VertexId> = trunc.interior_vertices().collect();
    let &start = interior.choose(rng)?;
    let mut set = vec![start];
    let mut frontier: Vec<VertexId> = Vec::new();
    let map = trunc.map();
    while set.len() < size {
        frontier.clear();
        for &v in &set {
            for &u in map.neighbors(v) {
                if trunc.is_interior(u) && !set.contains(&u) && !frontier.contains(&u) {
                    frontier.push(u);
                }
            }
        }
        let &u = frontier.choose(rng)?;
        set.push(u);
    }
    set.sort_unstable();
    Some(set)
}

/// `count` sampled subsets with sizes uniform in `1..=max_size`.
pub fn sample_subsets(
    trunc: &Truncation,
    count: usize,
    max_size: usize,
    seed: u64,
) -> Vec<Vec<VertexId>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    let mut attempts = 0;
    while out.len() < count && attempts < 20 * count.max(1) {
        attempts += 1;
        let size = rng.gen_range(1..=max_size.max(1));
        if let Some(w) = sample_connected_subset(trunc, size, &mut rng) {
            out.push(w);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{generate_gpq, generate_tree};
    use crate::rational::int;

    #[test]
    fn singleton_in_hexagonal_host() {
        let t = generate_gpq(6, 6, 6, 100_000).unwrap();
        let s = subset_stats(&t, &[0]).unwrap();
        assert_eq!(s.edge_boundary, 6);
        assert_eq!(s.extra_faces, 1);
        assert_eq!(s.curvature, int(-1));
        let sum: Rational = s
            .boundary_faces
            .iter()
            .map(|f| f.degree.reciprocal() * int(f.inner_degree as i64))
            .sum();
        assert_eq!(sum, int(1));
    }

    #[test]
    fn adjacent_pair_in_hexagonal_host() {
        let t = generate_gpq(6, 6, 6, 100_000).unwrap();
        let s = subset_stats(&t, &[0, 1]).unwrap();
        assert_eq!(s.edge_boundary, 10);
        assert_eq!(s.extra_faces, 1);
        assert_eq!(s.curvature, int(-2));
    }

    #[test]
    fn ring_in_square_lattice_encloses_a_vertex() {
        let t = generate_gpq(4, 4, 5, 100_000).unwrap();
        let ring: Vec<VertexId> = (0..t.vertex_count() as VertexId)
            .filter(|&v| {
                // the 8 vertices at Chebyshev distance 1 from the center
                let near = t
                    .map()
                    .neighbors(v)
                    .iter()
                    .filter(|&&u| t.center_distance(u) == 1)
                    .count();
                t.center_distance(v) == 1 || (t.center_distance(v) == 2 && near == 2)
            })
            .collect();
        assert_eq!(ring.len(), 8);
        let s = subset_stats(&t, &ring).unwrap();
        assert_eq!(s.extra_faces, 2);
        assert_eq!(s.euler_characteristic(), 2);
    }

    #[test]
    fn disconnected_rejected() {
        let t = generate_tree(3, 4, 1000).unwrap();
        let leaves_apart: Vec<VertexId> = vec![1, 2];
        assert!(matches!(
            subset_stats(&t, &leaves_apart),
            Err(Error::SubsetDisconnected)
        ));
    }

    fn naive_count(t: &Truncation, cap: usize) -> usize {
        let interior: Vec<VertexId> = t.interior_vertices().collect();
        let mut seen: std::collections::BTreeSet<Vec<VertexId>> =
            interior.iter().map(|&v| vec![v]).collect();
        let mut layer: Vec<Vec<VertexId>> = seen.iter().cloned().collect();
        for _ in 1..cap {
            let mut next = Vec::new();
            for w in &layer {
                for &v in w {
                    for &u in t.map().neighbors(v) {
                        if t.is_interior(u) && !w.contains(&u) {
                            let mut x = w.clone();
                            x.push(u);
                            x.sort_unstable();
                            if seen.insert(x.clone()) {
                                next.push(x);
                            }
                        }
                    }
                }
            }
            layer = next;
        }
        seen.len()
    }

    #[test]
    fn enumeration_matches_naive_growth() {
        for t in [
            generate_gpq(6, 6, 4, 100_000).unwrap(),
            generate_gpq(4, 4, 5, 100_000).unwrap(),
            generate_tree(3, 5, 1000).unwrap(),
        ] {
            for cap in 1..=4 {
                let mut count = 0;
                SubsetEnumerator::new(&t, cap)
                    .for_each(&mut |_| count += 1)
                    .unwrap();
                assert_eq!(count, naive_count(&t, cap), "cap {cap}");
            }
        }
    }

    #[test]
    fn small_caps() {
        let t = generate_gpq(4, 4, 5, 100_000).unwrap();
        let interior: Vec<VertexId> = t.interior_vertices().collect();
        let edges = interior
            .iter()
            .flat_map(|&v| t.map().neighbors(v).iter().map(move |&u| (v, u)))
            .filter(|&(v, u)| v < u && t.is_interior(u))
            .count();
        let mut sets = Vec::new();
        SubsetEnumerator::new(&t, 2)
            .for_each(&mut |w| sets.push(w.to_vec()))
            .unwrap();
        assert_eq!(sets.len(), interior.len() + edges);
    }

    #[test]
    fn budget_guard() {
        let t = generate_gpq(6, 6, 5, 100_000).unwrap();
        let res = SubsetEnumerator::new(&t, 6)
            .with_budget(50)
            .for_each(&mut |_| {});
        assert!(matches!(res, Err(Error::CapTooLargeForBudget(50))));
    }
}
