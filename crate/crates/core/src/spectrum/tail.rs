//! Vertex degrees away from the center, for comparing the physical and
//! combinatorial Laplacians.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::map::VertexId;
use crate::truncation::Truncation;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DegreeTail {
    /// `m_n`: smallest host degree outside `B_{n-1}`, for `n = 0..=radius`.
    pub min: Vec<u32>,
    /// `M_n`: largest host degree outside `B_{n-1}`.
    pub max: Vec<u32>,
    /// Estimates of `m_inf` and `M_inf`: the values at the largest radius.
    pub min_tail: u32,
    pub max_tail: u32,
}

impl DegreeTail {
    /// `[m_0 lo, M_0 hi]`: the physical bottom of the spectrum from an
    /// interval for the combinatorial one.
    pub fn physical_interval(&self, lo: f64, hi: f64) -> (f64, f64) {
        (self.min[0] as f64 * lo, self.max[0] as f64 * hi)
    }

    /// The same comparison for the essential spectra, with tail degrees.
    pub fn physical_essential_interval(&self, lo: f64, hi: f64) -> (f64, f64) {
        (self.min_tail as f64 * lo, self.max_tail as f64 * hi)
    }
}

/// Minimal and maximal host degrees outside growing balls, over the vertices
/// whose host degree is known.
pub fn degree_tail(trunc: &Truncation) -> Result<DegreeTail> {
    if !trunc.is_interior(trunc.center()) {
        return Err(Error::NoTrustedRadii);
    }
    let dist = trunc.center_distances();
    let radius = trunc.radius() as usize;
    let mut layer_min = vec![u32::MAX; radius + 1];
    let mut layer_max = vec![0u32; radius + 1];
    for v in 0..trunc.vertex_count() as VertexId {
        if let Some(k) = trunc.host_degree(v) {
            let d = dist[v as usize] as usize;
            layer_min[d] = layer_min[d].min(k);
            layer_max[d] = layer_max[d].max(k);
        }
    }
    // Suffix extrema: outside B_{n-1} means distance at least n.
    let mut min = layer_min.clone();
    let mut max = layer_max.clone();
    for n in (0..radius).rev() {
        min[n] = min[n].min(min[n + 1]);
        max[n] = max[n].max(max[n + 1]);
    }
    let known = min.iter().take_while(|&&m| m != u32::MAX).count();
    if known == 0 {
        return Err(Error::NoTrustedRadii);
    }
    min.truncate(known);
    max.truncate(known);
    Ok(DegreeTail {
        min_tail: *min.last().unwrap(),
        max_tail: *max.last().unwrap(),
        min,
        max,
    })
}
