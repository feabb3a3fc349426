//! Laplacians on truncations: Dirichlet bottom eigenvalues, closed-form
//! bounds on the bottom of the spectrum, and finitely supported
//! eigenfunctions.

pub mod bounds;
pub mod eigenfunctions;
pub mod exact;
pub mod lanczos;
pub mod operator;
pub mod tail;

pub use bounds::{closed_form_bounds, BoundInputs, NamedBound, SpectralBounds};
pub use eigenfunctions::{
    find_finitely_supported_eigenfunctions, verify_certificate, EigenfunctionCertificate,
    EigenfunctionSearch,
};
pub use lanczos::{smallest_eigenpair, Eigenpair, LanczosOptions};
pub use operator::{LaplacianKind, LaplacianOperator};
pub use tail::{degree_tail, DegreeTail};

use serde::Serialize;

use crate::curvature::CurvatureProfile;
use crate::error::{Error, Result};
use crate::growth::{mu_gpq, mu_tree};
use crate::host::Family;
use crate::isoperimetry::{cheeger_bounds, hjl_exact};
use crate::map::VertexId;
use crate::rational::{to_f64, FaceDegree};
use crate::truncation::Truncation;

/// Smallest eigenvalue of a Dirichlet Laplacian.
pub fn dirichlet_lambda0(op: &LaplacianOperator, opts: LanczosOptions) -> Result<Eigenpair> {
    if op.is_empty() {
        return Err(Error::MissingInput("empty index set".into()));
    }
    let start: Vec<f64> = (0..op.len()).map(|i| op.weight(i).sqrt()).collect();
    smallest_eigenpair(op.len(), |x, y| op.apply_symmetric(x, y), start, opts)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DirichletValue {
    pub radius: u32,
    pub size: usize,
    pub lambda0: f64,
    pub residual: f64,
    pub iterations: usize,
}

/// Largest `r` such that every vertex of `B_r` is interior.
pub fn interior_radius(trunc: &Truncation) -> Option<u32> {
    let dist = trunc.center_distances();
    let first_open = (0..trunc.vertex_count() as VertexId)
        .filter(|&v| !trunc.is_interior(v))
        .map(|v| dist[v as usize])
        .min()
        .unwrap_or(trunc.radius() + 1);
    first_open.checked_sub(1)
}

/// Dirichlet bottom eigenvalue on the balls `B_r`, `r` in `radii`.
pub fn dirichlet_series(
    trunc: &Truncation,
    kind: LaplacianKind,
    radii: impl IntoIterator<Item = u32>,
    opts: LanczosOptions,
) -> Result<Vec<DirichletValue>> {
    radii
        .into_iter()
        .map(|r| {
            let op = LaplacianOperator::assemble(trunc, kind, &trunc.ball(r))?;
            let pair = dirichlet_lambda0(&op, opts)?;
            Ok(DirichletValue {
                radius: r,
                size: op.len(),
                lambda0: pair.value,
                residual: pair.residual,
                iterations: pair.iterations,
            })
        })
        .collect()
}

/// Bound inputs from the host description and its curvature profile.
///
/// The combinatorial Cheeger input is the best of the curvature bound and the
/// exact value for regular hyperbolic tessellations. The growth input is set
/// only where the exponential growth is known exactly.
pub fn bound_inputs(trunc: &Truncation, profile: &CurvatureProfile) -> BoundInputs {
    let host = trunc.host();
    let max_degree = trunc
        .interior_vertices()
        .map(|v| trunc.map().degree(v) as u32)
        .max();
    let p = host.p.or(max_degree);
    let q = host.q.or(profile.max_face_degree);
    let cheeger = q.and_then(|q| cheeger_bounds(profile, q).ok());
    let regular = match (host.family, host.p, host.q) {
        (Family::Gpq, Some(p), Some(FaceDegree::Finite(q))) => Some((p, q)),
        _ => None,
    };
    let exact = regular.and_then(|(p, q)| hjl_exact(p, q).ok().map(|h| (p, h)));
    let best = |a: Option<f64>, b: Option<f64>| match (a, b) {
        (Some(a), Some(b)) => Some(a.max(b)),
        (a, b) => a.or(b),
    };
    let alpha_tilde = best(
        cheeger.and_then(|c| c.combinatorial).map(to_f64),
        exact.map(|(_, h)| h),
    );
    let alpha = best(
        cheeger.and_then(|c| c.physical).map(to_f64),
        exact.map(|(p, h)| p as f64 * h),
    );
    let mu = match host.family {
        Family::Tree => host.p.map(mu_tree),
        Family::Gpq => regular.and_then(|(p, q)| mu_gpq(p, q).ok()),
        Family::Trihex => Some(0.0),
        Family::Custom => None,
    };
    BoundInputs {
        alpha_tilde,
        mu,
        c: profile.c,
        b: Some(profile.b),
        q,
        p,
        alpha,
        without_cut_locus: profile.nonpositive_corner_curvature,
        face_regular: host.family == Family::Gpq,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectralReport {
    pub kind: LaplacianKind,
    pub dirichlet: Vec<DirichletValue>,
    /// Dirichlet values never increase with the radius.
    pub dirichlet_monotone: bool,
    pub bounds: SpectralBounds,
    /// Interval for the combinatorial bottom of the spectrum.
    pub interval: Option<(f64, f64)>,
    /// Interval for the physical bottom of the spectrum from the degree
    /// comparison.
    pub physical_interval: Option<(f64, f64)>,
    /// Best lower bound does not exceed best upper bound.
    pub consistent: bool,
    /// Every Dirichlet value lies above the best lower bound.
    pub dirichlet_above_lower: bool,
    /// The host is vertex-transitive, so the bottom of the spectrum equals the
    /// bottom of the essential spectrum.
    pub essential_equals_bottom: bool,
    pub degree_tail: DegreeTail,
}

/// Numerical slack for comparing eigensolver output with closed forms.
pub const SPECTRAL_SLACK: f64 = 1e-9;

pub fn spectral_report(
    trunc: &Truncation,
    profile: &CurvatureProfile,
    kind: LaplacianKind,
    radii: impl IntoIterator<Item = u32>,
    opts: LanczosOptions,
) -> Result<SpectralReport> {
    let bounds = closed_form_bounds(&bound_inputs(trunc, profile));
    let tail = degree_tail(trunc)?;
    let dirichlet = dirichlet_series(trunc, kind, radii, opts)?;
    let interval = bounds.interval();
    let physical_interval = interval.map(|(lo, hi)| tail.physical_interval(lo, hi));
    let floor = match kind {
        LaplacianKind::Combinatorial => bounds.best_lower(),
        LaplacianKind::Physical => {
            let compared = bounds.best_lower().map(|lo| tail.min[0] as f64 * lo);
            bounds
                .physical_lower
                .iter()
                .map(|b| b.value)
                .chain(compared)
                .reduce(f64::max)
        }
    };
    Ok(SpectralReport {
        kind,
        dirichlet_monotone: dirichlet
            .windows(2)
            .all(|w| w[1].lambda0 <= w[0].lambda0 + SPECTRAL_SLACK),
        dirichlet_above_lower: floor
            .is_none_or(|lo| dirichlet.iter().all(|d| d.lambda0 >= lo - SPECTRAL_SLACK)),
        consistent: bounds.is_consistent(SPECTRAL_SLACK),
        essential_equals_bottom: trunc.host().vertex_transitive,
        interval,
        physical_interval,
        bounds,
        dirichlet,
        degree_tail: tail,
    })
}
