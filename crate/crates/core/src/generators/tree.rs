//! Balls in the `p`-regular tree.

use crate::error::{Error, Result};
use crate::host::HostDescriptor;
use crate::map::{PlanarMap, VertexId};
use crate::truncation::Truncation;

/// Ball of `radius` about the root of `T_p`. Vertices below `radius` are
/// interior; the single traced face is the host's infinigon.
pub fn generate_tree(p: u32, radius: u32, budget: usize) -> Result<Truncation> {
    if p < 3 {
        return Err(Error::InvalidParameters(format!(
            "p = {p} must be at least 3"
        )));
    }
    let mut needed: u128 = 1;
    let mut layer: u128 = 1;
    for n in 1..=radius {
        layer *= if n == 1 { p as u128 } else { p as u128 - 1 };
        needed += layer;
        if needed > budget as u128 {
            return Err(Error::BudgetExceeded {
                budget,
                needed: needed.min(usize::MAX as u128) as usize,
            });
        }
    }
    let needed = needed as usize;
    let mut rot: Vec<Vec<VertexId>> = vec![Vec::new(); needed];
    let mut depth = vec![0u32; needed];
    let mut next_id = 1usize;
    for v in 0..needed {
        if depth[v] == radius {
            continue;
        }
        let children = if v == 0 { p } else { p - 1 };
        for _ in 0..children {
            let c = next_id;
            next_id += 1;
            depth[c] = depth[v] + 1;
            rot[v].push(c as VertexId);
            rot[c].push(v as VertexId);
        }
    }
    let map = PlanarMap::from_rotation_system(&rot, false)?;
    let interior = depth.iter().map(|&d| d < radius).collect();
    Truncation::new(map, 0, interior, HostDescriptor::tree(p))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        let t = generate_tree(3, 3, 1000).unwrap();
        assert_eq!(t.vertex_count(), 1 + 3 + 6 + 12);
        assert_eq!(t.interior_vertices().count(), 10);
        assert_eq!(t.map().face_count(), 1);
    }

    #[test]
    fn budget() {
        assert!(matches!(
            generate_tree(3, 30, 1000),
            Err(Error::BudgetExceeded { .. })
        ));
    }
}
