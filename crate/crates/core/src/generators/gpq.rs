//! Regular tessellations with vertex degree `p` and face degree `q`.
//!
//! The patch grows from a single `q`-gon by completing boundary vertices in
//! creation order. Completing a vertex fills the gap in its rotation with the
//! missing faces. A face starting at the vertex follows the boundary as long
//! as it passes saturated vertices (degree `p`, one corner left), and closes
//! onto an existing vertex once it has `q` vertices. The boundary stays a
//! simple cycle with the patch on its left, and every boundary rotation is
//! kept in the form `[next, interior.., prev]`.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::host::HostDescriptor;
use crate::map::{VertexId, UNREACHABLE};
use crate::truncation::Truncation;

use super::extract_ball;

/// Ball of `radius` about a vertex of the `{p,q}` tessellation.
pub fn generate_gpq(p: u32, q: u32, radius: u32, budget: usize) -> Result<Truncation> {
    if p < 3 || q < 3 {
        return Err(Error::InvalidParameters(format!(
            "p = {p} and q = {q} must both be at least 3"
        )));
    }
    if 2 * (p + q) > p * q {
        return Err(Error::SphericalParameters { p, q });
    }
    let mut patch = Patch::seed(p as usize, q as usize, budget)?;
    // Completing every vertex within distance `radius - 1` makes the ball
    // exact and puts the faces of its interior into the patch. Vertices are
    // completed level by level, in creation order within a level; completing
    // a vertex at level `d` never brings another vertex closer than `d`.
    for level in 0..radius {
        loop {
            let pending: Vec<usize> = (0..patch.len())
                .filter(|&v| !patch.complete[v] && patch.dist[v] == level)
                .collect();
            if pending.is_empty() {
                break;
            }
            for v in pending {
                if !patch.complete[v] && patch.dist[v] == level {
                    patch.complete_vertex(v as VertexId)?;
                }
            }
        }
    }
    extract_ball(
        &patch.rot,
        &patch.complete,
        radius,
        HostDescriptor::gpq(p, q),
    )
}

struct Patch {
    p: usize,
    q: usize,
    budget: usize,
    rot: Vec<Vec<VertexId>>,
    next: Vec<VertexId>,
    prev: Vec<VertexId>,
    complete: Vec<bool>,
    dist: Vec<u32>,
}

impl Patch {
    fn seed(p: usize, q: usize, budget: usize) -> Result<Self> {
        let mut patch = Patch {
            p,
            q,
            budget,
            rot: Vec::new(),
            next: Vec::new(),
            prev: Vec::new(),
            complete: Vec::new(),
            dist: Vec::new(),
        };
        for _ in 0..q {
            patch.push_vertex()?;
        }
        for i in 0..q {
            let (n, pr) = (((i + 1) % q) as VertexId, ((i + q - 1) % q) as VertexId);
            patch.rot[i] = vec![n, pr];
            patch.next[i] = n;
            patch.prev[i] = pr;
        }
        patch.dist[0] = 0;
        patch.relax(&[0]);
        Ok(patch)
    }

    fn len(&self) -> usize {
        self.rot.len()
    }

    fn push_vertex(&mut self) -> Result<VertexId> {
        if self.rot.len() >= self.budget {
            return Err(Error::BudgetExceeded {
                budget: self.budget,
                needed: self.rot.len() + 1,
            });
        }
        self.rot.push(Vec::with_capacity(self.p));
        self.next.push(UNREACHABLE);
        self.prev.push(UNREACHABLE);
        self.complete.push(false);
        self.dist.push(UNREACHABLE);
        Ok((self.rot.len() - 1) as VertexId)
    }

    fn degree(&self, v: VertexId) -> usize {
        self.rot[v as usize].len()
    }

    fn saturated(&self, v: VertexId) -> bool {
        self.degree(v) == self.p
    }

    /// Propagates distance decreases from `seeds` through the patch.
    fn relax(&mut self, seeds: &[VertexId]) {
        let mut queue: VecDeque<VertexId> = seeds.iter().copied().collect();
        while let Some(u) = queue.pop_front() {
            let du = self.dist[u as usize];
            if du == UNREACHABLE {
                continue;
            }
            for i in 0..self.rot[u as usize].len() {
                let w = self.rot[u as usize][i];
                if self.dist[w as usize] > du + 1 {
                    self.dist[w as usize] = du + 1;
                    queue.push_back(w);
                }
            }
        }
    }

    /// Boundary walk from `start` in direction `step`, continuing through
    /// saturated vertices. Returns the walk, ending at the first unsaturated
    /// vertex.
    fn walk(&self, start: VertexId, forward: bool) -> Result<Vec<VertexId>> {
        let mut walk = vec![start];
        let mut cur = start;
        while self.saturated(cur) {
            if walk.len() >= self.q {
                return Err(Error::Construction(format!(
                    "boundary walk from {start} passes {} saturated vertices",
                    walk.len()
                )));
            }
            cur = if forward {
                self.next[cur as usize]
            } else {
                self.prev[cur as usize]
            };
            walk.push(cur);
        }
        Ok(walk)
    }

    fn fresh(&mut self, chain: &mut Vec<VertexId>, count: usize) -> Result<()> {
        for _ in 0..count {
            let v = self.push_vertex()?;
            chain.push(v);
        }
        Ok(())
    }

    fn complete_vertex(&mut self, v: VertexId) -> Result<()> {
        let (p, q) = (self.p, self.q);
        let deg = self.degree(v);
        let faces = p - deg + 1;
        let right = self.walk(self.next[v as usize], true)?;
        let left = self.walk(self.prev[v as usize], false)?;
        let (k, j) = (right.len(), left.len());
        let (w_end, u_end) = (*right.last().unwrap(), *left.last().unwrap());
        let too_long = |side: usize| {
            Error::Construction(format!(
                "face at vertex {v} would need {} vertices, more than {q}",
                side + 1
            ))
        };

        // New boundary from `u_end` to `w_end`, and the new neighbours of `v`
        // (the spokes) in the order they appear along it.
        let mut chain = vec![u_end];
        let mut spokes = Vec::new();
        if faces == 1 {
            let count = q.checked_sub(1 + j + k).ok_or_else(|| too_long(j + k))?;
            self.fresh(&mut chain, count)?;
        } else {
            let close_left = j + 1 == q;
            let close_right = k + 1 == q;
            if j + 1 > q {
                return Err(too_long(j));
            }
            if k + 1 > q {
                return Err(too_long(k));
            }
            if faces == 2 && close_left && close_right {
                return Err(Error::Construction(format!(
                    "completing vertex {v} would close the boundary"
                )));
            }
            // Face between the left walk and the last spoke.
            if close_left {
                spokes.push(u_end);
            } else {
                self.fresh(&mut chain, q - j - 2)?;
                if faces == 2 && close_right {
                    spokes.push(w_end);
                } else {
                    self.fresh(&mut chain, 1)?;
                    spokes.push(*chain.last().unwrap());
                }
            }
            // Faces between consecutive spokes.
            for i in (2..faces).rev() {
                self.fresh(&mut chain, q - 3)?;
                if i - 1 == 1 && close_right {
                    spokes.push(w_end);
                } else {
                    self.fresh(&mut chain, 1)?;
                    spokes.push(*chain.last().unwrap());
                }
            }
            // Face between the first spoke and the right walk.
            if !close_right {
                self.fresh(&mut chain, q - k - 2)?;
            }
        }
        if *chain.last().unwrap() != w_end {
            chain.push(w_end);
        }
        if chain.len() < 2 {
            return Err(Error::Construction(format!(
                "completing vertex {v} leaves no boundary"
            )));
        }
        if chain.len() == 2 && self.rot[u_end as usize].contains(&w_end) {
            return Err(Error::Construction(format!(
                "completing vertex {v} would double the edge {u_end}-{w_end}"
            )));
        }

        let is_spoke = |x: VertexId| spokes.contains(&x);
        let last = chain.len() - 1;
        // Fresh vertices: [next, (v), prev].
        for t in 1..last {
            let x = chain[t];
            let mut r = vec![chain[t + 1]];
            if is_spoke(x) {
                r.push(v);
            }
            r.push(chain[t - 1]);
            self.rot[x as usize] = r;
        }
        // Anchors keep the `[next, interior.., prev]` form.
        let mut front = vec![chain[1]];
        if is_spoke(u_end) {
            front.push(v);
        }
        self.rot[u_end as usize].splice(0..0, front);
        if is_spoke(w_end) {
            self.rot[w_end as usize].push(v);
        }
        self.rot[w_end as usize].push(chain[last - 1]);
        self.rot[v as usize].extend(spokes.iter().copied());

        for (i, &x) in chain.iter().enumerate() {
            if self.degree(x) > p {
                return Err(Error::Construction(format!(
                    "vertex {x} exceeds degree {p}"
                )));
            }
            if i < last {
                self.next[x as usize] = chain[i + 1];
            }
            if i > 0 {
                self.prev[x as usize] = chain[i - 1];
            }
        }
        for &x in right[..k - 1].iter().chain(&left[..j - 1]).chain([&v]) {
            self.complete[x as usize] = true;
            self.next[x as usize] = UNREACHABLE;
            self.prev[x as usize] = UNREACHABLE;
        }
        if self.degree(v) != p {
            return Err(Error::Construction(format!(
                "vertex {v} completed with degree {}",
                self.degree(v)
            )));
        }
        chain.push(v);
        self.relax(&chain);
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::map::bfs_distances;
    use crate::rational::FaceDegree;
    use crate::truncation::FaceKind;

    fn spheres(t: &Truncation) -> Vec<usize> {
        let dist = bfs_distances(t.map(), 0);
        let mut s = vec![0; t.radius() as usize + 1];
        for d in dist {
            s[d as usize] += 1;
        }
        s
    }

    #[test]
    fn square_lattice_spheres() {
        let t = generate_gpq(4, 4, 6, 1_000_000).unwrap();
        assert_eq!(spheres(&t), vec![1, 4, 8, 12, 16, 20, 24]);
    }

    #[test]
    fn hexagonal_host_spheres() {
        let t = generate_gpq(6, 6, 4, 1_000_000).unwrap();
        assert_eq!(spheres(&t), vec![1, 6, 30, 144, 690]);
    }

    #[test]
    fn heptagonal_host_is_regular() {
        let t = generate_gpq(3, 7, 7, 1_000_000).unwrap();
        assert_eq!(spheres(&t)[..3], [1, 3, 6]);
        let map = t.map();
        assert!(t.interior_vertices().count() > 10);
        for v in t.interior_vertices() {
            assert_eq!(map.degree(v), 3);
            for h in map.half_edges(v) {
                assert_eq!(t.corner_face_degree(h), Some(FaceDegree::Finite(7)));
            }
        }
        for f in 0..map.face_count() as u32 {
            if let FaceKind::Host(d) = t.face_kind(f) {
                assert_eq!(d, FaceDegree::Finite(7));
            }
        }
    }

    #[test]
    fn spherical_rejected() {
        assert!(matches!(
            generate_gpq(3, 5, 2, 1000),
            Err(Error::SphericalParameters { p: 3, q: 5 })
        ));
    }

    #[test]
    fn budget_enforced() {
        assert!(matches!(
            generate_gpq(6, 6, 6, 100),
            Err(Error::BudgetExceeded { .. })
        ));
    }
}
