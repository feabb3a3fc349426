//! Cheeger constants: curvature lower bounds, the exact value for regular
//! tessellations, and brute-force upper estimates over finite subsets.

use std::collections::VecDeque;

use rayon::prelude::*;

use crate::curvature::CurvatureProfile;
use crate::error::{Error, Result};
use crate::map::VertexId;
use crate::rational::{ratio, FaceDegree, Rational};
use crate::subset::{subset_stats, SubsetEnumerator, SubsetStats};
use crate::truncation::Truncation;

/// Curvature lower bounds on the physical and combinatorial Cheeger constants.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CheegerBounds {
    pub physical: Option<Rational>,
    pub combinatorial: Option<Rational>,
}

/// `(2q/(q-2) a, 2q/(q-2) c)`, each absent when its constant is.
pub fn cheeger_bounds(profile: &CurvatureProfile, q: FaceDegree) -> Result<CheegerBounds> {
    if let Some(found) = profile.max_face_degree {
        if found > q {
            return Err(Error::QSmallerThanFaceDegree {
                q: q.to_string(),
                found: found.to_string(),
            });
        }
    }
    let factor = q.cheeger_factor();
    Ok(CheegerBounds {
        physical: profile.a.map(|a| factor * a),
        combinatorial: profile.c.map(|c| factor * c),
    })
}

/// Curvature bound on the combinatorial Cheeger constant of `G_{p,q}`:
/// `((p-2)(q-2) - 4) / (p(q-2))`.
pub fn gpq_combinatorial_bound(p: u32, q: u32) -> Rational {
    let (p, q) = (p as i64, q as i64);
    ratio((p - 2) * (q - 2) - 4, p * (q - 2))
}

/// Exact combinatorial Cheeger constant of the hyperbolic tessellation
/// `G_{p,q}`: `(p-2)/p * sqrt(1 - 4/((p-2)(q-2)))`.
pub fn hjl_exact(p: u32, q: u32) -> Result<f64> {
    if p < 3 || q < 3 || 2 * (p + q) >= p * q {
        return Err(Error::NotHyperbolic { p, q });
    }
    let (pf, qf) = (p as f64, q as f64);
    Ok((pf - 2.0) / pf * (1.0 - 4.0 / ((pf - 2.0) * (qf - 2.0))).sqrt())
}

/// Adds to `w` every vertex cut off from the truncation frontier by `w`.
///
/// The frontier is the set of vertices with missing host neighbours; without
/// one there is no outer region.
pub fn polygon_completion(trunc: &Truncation, w: &[VertexId]) -> Result<Vec<VertexId>> {
    CompletionIndex::new(trunc)?.complete(w)
}

/// Precomputed reachability used to complete many subsets of one truncation.
///
/// `level[v]` is the largest `m` such that `v` lies outside the ball `B_m`
/// and reaches the frontier without entering `B_m`. A set inside `B_m` can
/// never enclose such a vertex, so floods stop as soon as they meet one.
pub struct CompletionIndex<'a> {
    trunc: &'a Truncation,
    level: Vec<i64>,
}

impl<'a> CompletionIndex<'a> {
    pub fn new(trunc: &'a Truncation) -> Result<Self> {
        let n = trunc.vertex_count();
        let frontier: Vec<VertexId> = (0..n as VertexId)
            .filter(|&v| !trunc.is_closed(v))
            .collect();
        if frontier.is_empty() {
            return Err(Error::NoOuterRegion);
        }
        let map = trunc.map();
        let dist = trunc.center_distances();
        let mut level = vec![-1i64; n];
        let mut seen = vec![u32::MAX; n];
        for m in 0..=trunc.radius() {
            let mut queue: VecDeque<VertexId> = VecDeque::new();
            for &v in &frontier {
                if dist[v as usize] > m {
                    seen[v as usize] = m;
                    queue.push_back(v);
                }
            }
            if queue.is_empty() {
                break;
            }
            while let Some(u) = queue.pop_front() {
                level[u as usize] = m as i64;
                for &x in map.neighbors(u) {
                    if dist[x as usize] > m && seen[x as usize] != m {
                        seen[x as usize] = m;
                        queue.push_back(x);
                    }
                }
            }
        }
        Ok(CompletionIndex { trunc, level })
    }

    /// The completion `P_W`: `w` together with every enclosed vertex, sorted.
    pub fn complete(&self, w: &[VertexId]) -> Result<Vec<VertexId>> {
        let trunc = self.trunc;
        let map = trunc.map();
        let mut sorted = w.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let reach = sorted
            .iter()
            .map(|&v| trunc.center_distance(v) as i64)
            .max()
            .unwrap_or(0);
        let is_outer = |v: VertexId| self.level[v as usize] >= reach || !trunc.is_closed(v);
        // Vertices met so far; every component before the current one was
        // either explored completely (enclosed) or stopped early (outer), so
        // meeting an earlier vertex means the current component is outer.
        let mut visited: Vec<VertexId> = Vec::new();
        let mut enclosed: Vec<VertexId> = Vec::new();
        for &v in &sorted {
            for &start in map.neighbors(v) {
                if sorted.binary_search(&start).is_ok() || visited.contains(&start) {
                    continue;
                }
                let first = visited.len();
                visited.push(start);
                let mut outer = is_outer(start);
                let mut i = first;
                'flood: while !outer && i < visited.len() {
                    let u = visited[i];
                    i += 1;
                    for &x in map.neighbors(u) {
                        if sorted.binary_search(&x).is_ok() {
                            continue;
                        }
                        match visited.iter().position(|&y| y == x) {
                            Some(pos) if pos < first => {
                                outer = true;
                                break 'flood;
                            }
                            Some(_) => {}
                            None => {
                                visited.push(x);
                                if is_outer(x) {
                                    outer = true;
                                    break 'flood;
                                }
                            }
                        }
                    }
                }
                if !outer {
                    enclosed.extend_from_slice(&visited[first..]);
                }
            }
        }
        if let Some(&v) = enclosed.iter().find(|&&v| !trunc.is_interior(v)) {
            return Err(Error::CompletionLeavesInterior(v));
        }
        sorted.extend(enclosed);
        sorted.sort_unstable();
        Ok(sorted)
    }
}

/// Smallest quotient found, with the lexicographically first set attaining it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extremum {
    pub value: Rational,
    pub witness: Vec<VertexId>,
}

impl Extremum {
    fn offer(slot: &mut Option<Extremum>, value: Rational, witness: &[VertexId]) {
        let better = match slot {
            None => true,
            Some(cur) => {
                value < cur.value || (value == cur.value && witness < cur.witness.as_slice())
            }
        };
        if better {
            *slot = Some(Extremum {
                value,
                witness: witness.to_vec(),
            });
        }
    }

    fn merge(a: Option<Extremum>, b: Option<Extremum>) -> Option<Extremum> {
        match (a, b) {
            (None, x) | (x, None) => x,
            (Some(a), Some(b)) => {
                let mut slot = Some(a);
                Extremum::offer(&mut slot, b.value, &b.witness);
                slot
            }
        }
    }
}

/// Minima over polygons of one size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SizeMinimum {
    pub size: usize,
    pub physical: Rational,
    pub combinatorial: Rational,
}

#[derive(Clone, Debug)]
pub struct CheegerReport {
    pub cap: usize,
    /// Connected subsets enumerated.
    pub subsets: u64,
    /// Subsets whose completion reached the truncation frontier.
    pub skipped: u64,
    /// Only sets through the center were enumerated (vertex-transitive host).
    pub rooted_at_center: bool,
    /// Upper estimates: minima of `|dW|/|W|`, `|dW|/vol W`, `|d_V W|/|W|`.
    pub physical: Option<Extremum>,
    pub combinatorial: Option<Extremum>,
    pub vertex: Option<Extremum>,
    pub per_size: Vec<SizeMinimum>,
    /// Curvature lower bounds, when the constants exist.
    pub bounds: Option<CheegerBounds>,
    /// Polygons whose quotient fell below a curvature bound.
    pub bound_violations: u64,
}

#[derive(Default)]
struct Acc {
    subsets: u64,
    skipped: u64,
    physical: Option<Extremum>,
    combinatorial: Option<Extremum>,
    vertex: Option<Extremum>,
    per_size: Vec<Option<(Rational, Rational)>>,
    violations: u64,
}

impl Acc {
    fn merge(mut self, other: Acc) -> Acc {
        self.subsets += other.subsets;
        self.skipped += other.skipped;
        self.violations += other.violations;
        self.physical = Extremum::merge(self.physical, other.physical);
        self.combinatorial = Extremum::merge(self.combinatorial, other.combinatorial);
        self.vertex = Extremum::merge(self.vertex, other.vertex);
        if self.per_size.len() < other.per_size.len() {
            self.per_size.resize(other.per_size.len(), None);
        }
        for (i, x) in other.per_size.into_iter().enumerate() {
            if let Some((p, c)) = x {
                let slot = &mut self.per_size[i];
                *slot = Some(match *slot {
                    None => (p, c),
                    Some((p0, c0)) => (p0.min(p), c0.min(c)),
                });
            }
        }
        self
    }

    fn record(&mut self, stats: &SubsetStats, cap: usize, bounds: Option<&CheegerBounds>) {
        let (phys, comb) = (stats.physical_quotient(), stats.combinatorial_quotient());
        Extremum::offer(&mut self.physical, phys, &stats.vertices);
        Extremum::offer(&mut self.combinatorial, comb, &stats.vertices);
        Extremum::offer(&mut self.vertex, stats.vertex_quotient(), &stats.vertices);
        let k = stats.len();
        if k <= cap {
            if self.per_size.len() <= k {
                self.per_size.resize(k + 1, None);
            }
            let slot = &mut self.per_size[k];
            *slot = Some(match *slot {
                None => (phys, comb),
                Some((p0, c0)) => (p0.min(phys), c0.min(comb)),
            });
        }
        if let Some(b) = bounds {
            let below =
                b.physical.is_some_and(|x| phys < x) || b.combinatorial.is_some_and(|x| comb < x);
            if below {
                self.violations += 1;
            }
        }
    }
}

/// Brute-force Cheeger estimates over connected interior subsets of size at
/// most `cap`, each replaced by its polygon completion.
///
/// For vertex-transitive hosts only sets through the center are enumerated;
/// every shape has a translate of that kind, so the minima are unchanged as
/// long as those translates fit in the interior.
pub fn exact_cheeger_search(
    trunc: &Truncation,
    cap: usize,
    budget: Option<u64>,
    profile: Option<&CurvatureProfile>,
) -> Result<CheegerReport> {
    if trunc.interior_vertices().next().is_none() {
        return Err(Error::NoInteriorVertices);
    }
    let bounds = match (profile, trunc.host().q) {
        (Some(p), Some(q)) => Some(cheeger_bounds(p, q)?),
        _ => None,
    };
    let mut enumerator = SubsetEnumerator::new(trunc, cap);
    if let Some(b) = budget {
        enumerator = enumerator.with_budget(b);
    }
    let rooted_at_center = trunc.host().vertex_transitive && trunc.is_interior(trunc.center());
    let roots = if rooted_at_center {
        vec![trunc.center()]
    } else {
        enumerator.roots()
    };
    let completion = match CompletionIndex::new(trunc) {
        Ok(index) => Some(index),
        Err(Error::NoOuterRegion) => None,
        Err(e) => return Err(e),
    };

    let acc = roots
        .par_iter()
        .map(|&root| -> Result<Acc> {
            let mut acc = Acc::default();
            let mut failure = None;
            enumerator.for_each_rooted(root, &mut |w| {
                if failure.is_some() {
                    return;
                }
                acc.subsets += 1;
                let polygon = if let Some(index) = &completion {
                    match index.complete(w) {
                        Ok(p) => p,
                        Err(Error::CompletionLeavesInterior(_)) => {
                            acc.skipped += 1;
                            return;
                        }
                        Err(e) => {
                            failure = Some(e);
                            return;
                        }
                    }
                } else {
                    w.to_vec()
                };
                match subset_stats(trunc, &polygon) {
                    Ok(stats) => acc.record(&stats, cap, bounds.as_ref()),
                    Err(e) => failure = Some(e),
                }
            })?;
            match failure {
                Some(e) => Err(e),
                None => Ok(acc),
            }
        })
        .try_reduce(Acc::default, |a, b| Ok(a.merge(b)))?;

    let per_size = acc
        .per_size
        .iter()
        .enumerate()
        .filter_map(|(size, x)| {
            x.map(|(physical, combinatorial)| SizeMinimum {
                size,
                physical,
                combinatorial,
            })
        })
        .collect();
    Ok(CheegerReport {
        cap,
        subsets: acc.subsets,
        skipped: acc.skipped,
        rooted_at_center,
        physical: acc.physical,
        combinatorial: acc.combinatorial,
        vertex: acc.vertex,
        per_size,
        bounds,
        bound_violations: acc.violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvature::curvature_constants;
    use crate::generators::{generate_gpq, generate_tree};
    use crate::rational::int;

    #[test]
    fn hexagonal_bounds() {
        let t = generate_gpq(6, 6, 6, 100_000).unwrap();
        let profile = curvature_constants(&t).unwrap();
        let b = cheeger_bounds(&profile, FaceDegree::Finite(6)).unwrap();
        assert_eq!(b.physical, Some(int(3)));
        assert_eq!(b.combinatorial, Some(ratio(1, 2)));
        assert_eq!(gpq_combinatorial_bound(6, 6), ratio(1, 2));
        assert!((hjl_exact(6, 6).unwrap() - 1.0 / 3f64.sqrt()).abs() < 1e-12);
        assert!(matches!(
            cheeger_bounds(&profile, FaceDegree::Finite(5)),
            Err(Error::QSmallerThanFaceDegree { .. })
        ));
    }

    #[test]
    fn euclidean_is_not_hyperbolic() {
        assert!(matches!(hjl_exact(4, 4), Err(Error::NotHyperbolic { .. })));
    }

    #[test]
    fn completion_fills_ring() {
        let t = generate_gpq(4, 4, 5, 100_000).unwrap();
        let ring: Vec<VertexId> = (1..t.vertex_count() as VertexId)
            .filter(|&v| {
                let near = t
                    .map()
                    .neighbors(v)
                    .iter()
                    .filter(|&&u| t.center_distance(u) == 1)
                    .count();
                t.center_distance(v) == 1 || (t.center_distance(v) == 2 && near == 2)
            })
            .collect();
        let p = polygon_completion(&t, &ring).unwrap();
        assert_eq!(p.len(), 9);
        assert!(p.contains(&0));
        assert_eq!(subset_stats(&t, &p).unwrap().extra_faces, 1);
        assert_eq!(polygon_completion(&t, &p).unwrap(), p);
    }

    #[test]
    fn singleton_search_on_hexagonal_host() {
        let t = generate_gpq(6, 6, 6, 100_000).unwrap();
        let profile = curvature_constants(&t).unwrap();
        let r = exact_cheeger_search(&t, 1, None, Some(&profile)).unwrap();
        assert_eq!(r.physical.unwrap().value, int(6));
        assert_eq!(r.bound_violations, 0);
    }

    #[test]
    fn tree_subtrees() {
        let t = generate_tree(3, 5, 10_000).unwrap();
        let r = exact_cheeger_search(&t, 6, None, None).unwrap();
        for m in &r.per_size {
            let k = m.size as i64;
            assert_eq!(m.physical, ratio(k + 2, k));
        }
    }
}
