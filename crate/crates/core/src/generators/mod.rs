//! Truncations of the standard host families.
//!
//! Every generator returns a combinatorial ball of the requested radius about
//! vertex 0, with vertex ids ordered by (distance, construction order). Balls
//! of smaller radius are therefore id-prefixes of larger ones.

mod gpq;
mod tree;
mod trihex;

pub use gpq::generate_gpq;
pub use tree::generate_tree;
pub use trihex::generate_trihex;

use crate::error::Result;
use crate::host::HostDescriptor;
use crate::map::{bfs_distances, PlanarMap, VertexId, UNREACHABLE};
use crate::truncation::Truncation;

pub const DEFAULT_BUDGET_VERTICES: usize = 2_000_000;

/// Cuts the ball of `radius` about vertex 0 out of a finite patch.
///
/// A vertex of the ball is interior when it is `complete` in the patch and
/// every face through it lies inside the ball.
fn extract_ball(
    patch: &[Vec<VertexId>],
    complete: &[bool],
    radius: u32,
    host: HostDescriptor,
) -> Result<Truncation> {
    let map = PlanarMap::from_rotation_system(patch, false)?;
    let dist = bfs_distances(&map, 0);
    let mut order: Vec<VertexId> = (0..map.vertex_count() as VertexId)
        .filter(|&v| dist[v as usize] != UNREACHABLE && dist[v as usize] <= radius)
        .collect();
    order.sort_by_key(|&v| (dist[v as usize], v));
    let mut new_id = vec![UNREACHABLE; map.vertex_count()];
    for (i, &v) in order.iter().enumerate() {
        new_id[v as usize] = i as VertexId;
    }
    let interior: Vec<bool> = order
        .iter()
        .map(|&v| {
            complete[v as usize]
                && map.half_edges(v).all(|h| {
                    map.face_vertices(map.face_of(h))
                        .all(|w| new_id[w as usize] != UNREACHABLE)
                })
        })
        .collect();
    let rotations = relabel(&map, &order, &new_id);
    let ball = PlanarMap::from_rotation_system(&rotations, false)?;
    Truncation::new(ball, 0, interior, host)
}

/// Rotation lists of `order` under `new_id`, dropping vertices outside the
/// ball and starting each cycle at its smallest id.
fn relabel(map: &PlanarMap, order: &[VertexId], new_id: &[VertexId]) -> Vec<Vec<VertexId>> {
    order
        .iter()
        .map(|&v| {
            let mut rot: Vec<VertexId> = map
                .neighbors(v)
                .iter()
                .map(|&w| new_id[w as usize])
                .filter(|&w| w != UNREACHABLE)
                .collect();
            if let Some(pos) = rot
                .iter()
                .enumerate()
                .min_by_key(|&(_, &w)| w)
                .map(|(i, _)| i)
            {
                rot.rotate_left(pos);
            }
            rot
        })
        .collect()
}
