//! The trihexagonal tiling: every vertex meets two triangles and two hexagons.
//!
//! Vertices are the edge midpoints of the triangular lattice. In doubled axial
//! coordinates they are the points `(x, y)` that are not both even; each is
//! joined to the four lattice-direction neighbours that are again midpoints.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::host::HostDescriptor;
use crate::map::VertexId;
use crate::truncation::Truncation;

use super::extract_ball;

/// Counterclockwise unit steps of the triangular lattice in axial coordinates.
const DIRECTIONS: [(i64, i64); 6] = [(1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1)];

fn is_vertex((x, y): (i64, i64)) -> bool {
    x % 2 != 0 || y % 2 != 0
}

fn hex_norm((x, y): (i64, i64)) -> i64 {
    x.abs().max(y.abs()).max((x + y).abs())
}

/// Ball of `radius` about a vertex of the trihexagonal tiling.
pub fn generate_trihex(radius: u32, budget: usize) -> Result<Truncation> {
    let reach = 2 * radius as i64 + 8;
    let estimate = 3 * (reach as usize + 1) * (reach as usize + 1);
    if estimate > budget.saturating_mul(4) {
        return Err(Error::BudgetExceeded {
            budget,
            needed: estimate / 4,
        });
    }
    // Breadth-first over a region comfortably larger than the ball, so that
    // every face through the ball is present.
    let start = (1, 0);
    let mut ids: HashMap<(i64, i64), VertexId> = HashMap::from([(start, 0)]);
    let mut points = vec![start];
    let mut queue = VecDeque::from([start]);
    while let Some(pt) = queue.pop_front() {
        for (dx, dy) in DIRECTIONS {
            let nb = (pt.0 + dx, pt.1 + dy);
            if is_vertex(nb) && hex_norm(nb) <= reach && !ids.contains_key(&nb) {
                ids.insert(nb, points.len() as VertexId);
                points.push(nb);
                queue.push_back(nb);
            }
        }
    }
    if points.len() > budget {
        return Err(Error::BudgetExceeded {
            budget,
            needed: points.len(),
        });
    }
    let mut complete = Vec::with_capacity(points.len());
    let rot: Vec<Vec<VertexId>> = points
        .iter()
        .map(|&(x, y)| {
            let nbrs: Vec<VertexId> = DIRECTIONS
                .iter()
                .map(|&(dx, dy)| (x + dx, y + dy))
                .filter(|&nb| is_vertex(nb))
                .filter_map(|nb| ids.get(&nb).copied())
                .collect();
            complete.push(nbrs.len() == 4);
            nbrs
        })
        .collect();
    extract_ball(&rot, &complete, radius, HostDescriptor::trihex())
}
