//! Sphere sizes, exponential growth estimates, and closed forms for the
//! growth of regular tessellations.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::map::VertexId;
use crate::rational::{int, ratio, to_f64, FaceDegree, Rational};
use crate::truncation::Truncation;

#[derive(Clone, Debug, PartialEq)]
pub struct GrowthSeries {
    pub center: VertexId,
    /// `|S_n|` for every trusted radius `n`.
    pub spheres: Vec<u64>,
    /// `vol B_n` for the trusted radii where every host degree is known.
    pub volumes: Vec<Option<u64>>,
    /// `log(s_{n+1}/s_n)` for consecutive trusted radii.
    pub ratio_estimates: Vec<f64>,
    /// `log(vol B_n)/n` for `n >= 1`, where the volume is known.
    pub cumulative_estimates: Vec<Option<f64>>,
    /// True if the trusted sphere sizes never decrease.
    pub monotone: bool,
    /// Largest host degree over the trusted ball.
    pub max_degree: u32,
}

impl GrowthSeries {
    pub fn trusted_radius(&self) -> u32 {
        self.spheres.len() as u32 - 1
    }
}

/// Sphere sizes about the truncation center.
///
/// `|S_n|` is trusted when every vertex of `B_{n-1}` has all its host
/// neighbours present.
pub fn sphere_series(trunc: &Truncation) -> Result<GrowthSeries> {
    let center = trunc.center();
    let dist = trunc.center_distances();
    let radius = trunc.radius() as usize;
    let mut counts = vec![0u64; radius + 1];
    let mut open_at = usize::MAX;
    let mut degree_known = vec![true; radius + 1];
    let mut layer_degree = vec![0u64; radius + 1];
    let mut max_degree = 0;
    for v in 0..trunc.vertex_count() as VertexId {
        let d = dist[v as usize] as usize;
        counts[d] += 1;
        if !trunc.is_closed(v) {
            open_at = open_at.min(d);
        }
        match trunc.host_degree(v) {
            Some(k) => layer_degree[d] += k as u64,
            None => degree_known[d] = false,
        }
    }
    // S_n is exact while B_{n-1} has no open vertex.
    let trusted = radius.min(open_at);
    if trusted == 0 {
        return Err(Error::NoTrustedRadii);
    }
    let spheres = counts[..=trusted].to_vec();
    let mut volumes = Vec::with_capacity(trusted + 1);
    let mut acc = Some(0u64);
    for n in 0..=trusted {
        acc = match (acc, degree_known[n]) {
            (Some(a), true) => Some(a + layer_degree[n]),
            _ => None,
        };
        volumes.push(acc);
    }
    for v in 0..trunc.vertex_count() as VertexId {
        if (dist[v as usize] as usize) <= trusted {
            if let Some(k) = trunc.host_degree(v) {
                max_degree = max_degree.max(k);
            }
        }
    }
    let ratio_estimates = spheres
        .windows(2)
        .map(|w| (w[1] as f64 / w[0] as f64).ln())
        .collect();
    let cumulative_estimates = volumes
        .iter()
        .enumerate()
        .skip(1)
        .map(|(n, v)| v.map(|v| (v as f64).ln() / n as f64))
        .collect();
    Ok(GrowthSeries {
        center,
        monotone: spheres.windows(2).all(|w| w[0] <= w[1]),
        spheres,
        volumes,
        ratio_estimates,
        cumulative_estimates,
        max_degree,
    })
}

fn check_recursion_q(q: u32) -> Result<()> {
    if matches!(q, 3 | 4 | 6) {
        Ok(())
    } else {
        Err(Error::UnsupportedQ(q))
    }
}

/// `2 tau = p - 4/(q-2)`, an integer for `q` in {3, 4, 6}.
pub fn doubled_tau(p: u32, q: u32) -> Result<i64> {
    check_recursion_q(q)?;
    if 2 * (p + q) > p * q {
        return Err(Error::SphericalParameters { p, q });
    }
    Ok(p as i64 - 4 / (q as i64 - 2))
}

/// `tau = p/2 - 2/(q-2)`.
pub fn tau_gpq(p: u32, q: u32) -> Rational {
    ratio(p as i64, 2) - ratio(2, q as i64 - 2)
}

/// `tau = 1 + q/(q-2) b`.
pub fn tau_from_curvature(b: Rational, q: u32) -> Rational {
    int(1) + ratio(q as i64, q as i64 - 2) * b
}

/// `sigma_{n+2} = 2 tau sigma_{n+1} - sigma_n` with `sigma_0 = 1`,
/// `sigma_1 = p`, for `n = 0..=len-1`.
pub fn sigma_recursion(p: u32, q: u32, len: usize) -> Result<Vec<BigInt>> {
    let two_tau = doubled_tau(p, q)?;
    Ok(linear_recursion(
        BigInt::from(1),
        BigInt::from(p),
        two_tau,
        len,
    ))
}

/// Sequence with the given first two terms and `x_{n+2} = t x_{n+1} - x_n`.
pub fn linear_recursion(x0: BigInt, x1: BigInt, t: i64, len: usize) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(len);
    let (mut a, mut b) = (x0, x1);
    for _ in 0..len {
        out.push(a.clone());
        let c = &b * t - &a;
        a = std::mem::replace(&mut b, c);
    }
    out
}

/// `log(tau + sqrt(tau^2 - 1))`.
pub fn mu_from_tau(tau: Rational) -> Result<f64> {
    let t = to_f64(tau);
    if tau < int(1) {
        return Err(Error::InvalidTau(t));
    }
    Ok((t + (t * t - 1.0).sqrt()).ln())
}

/// `log(p - 1)`, the growth of the `p`-regular tree.
pub fn mu_tree(p: u32) -> f64 {
    ((p - 1) as f64).ln()
}

/// Growth of `G_{p,q}` for `q` in {3, 4, 6}.
pub fn mu_gpq(p: u32, q: u32) -> Result<f64> {
    check_recursion_q(q)?;
    mu_from_tau(tau_gpq(p, q))
}

/// Growth bound from the curvature constant `b`, for `q` in {3, 4, 6}.
pub fn mu_from_curvature(b: Rational, q: u32) -> Result<f64> {
    check_recursion_q(q)?;
    mu_from_tau(tau_from_curvature(b, q))
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct MuClosedForms {
    pub tree: Option<f64>,
    pub gpq: Option<f64>,
    pub tau_gpq: Option<Rational>,
    pub curvature: Option<f64>,
    pub tau_curvature: Option<Rational>,
}

/// Every closed form the inputs allow.
pub fn mu_closed_forms(
    p: Option<u32>,
    q: Option<FaceDegree>,
    b: Option<Rational>,
) -> Result<MuClosedForms> {
    let mut out = MuClosedForms {
        tree: p.map(mu_tree),
        ..Default::default()
    };
    let finite_q = q.and_then(FaceDegree::finite);
    if let Some(q) = finite_q {
        if p.is_some() || b.is_some() {
            check_recursion_q(q)?;
        }
        if let Some(p) = p {
            let tau = tau_gpq(p, q);
            out.gpq = Some(mu_from_tau(tau)?);
            out.tau_gpq = Some(tau);
        }
        if let Some(b) = b {
            let tau = tau_from_curvature(b, q);
            out.curvature = Some(mu_from_tau(tau)?);
            out.tau_curvature = Some(tau);
        }
    }
    if out.tree.is_none() && out.gpq.is_none() && out.curvature.is_none() {
        return Err(Error::MissingInput(
            "need p, or a face degree in {3, 4, 6} with p or b".into(),
        ));
    }
    Ok(out)
}

/// `log(1 + 2q/(q-1) a)`, a lower bound on the growth of hosts without cut
/// locus.
pub fn bp_lower_bound(a: Rational, q: FaceDegree) -> Result<f64> {
    if a <= Rational::zero() {
        return Err(Error::NonpositiveA(a.to_string()));
    }
    Ok((1.0 + to_f64(q.growth_factor() * a)).ln())
}

#[derive(Clone, Debug, PartialEq)]
pub enum BishopVerdict {
    Consistent,
    ViolatedAt(usize),
    Unavailable,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BishopProbe {
    pub comparison: Option<f64>,
    /// Ratio estimates examined, as `(n, log(s_{n+1}/s_n))`.
    pub examined: Vec<(usize, f64)>,
    pub tolerance: f64,
    pub verdict: BishopVerdict,
}

/// Compares the growth of a truncation with the regular tessellation whose
/// degrees bound it.
///
/// Ratio estimates `log(s_{n+1}/s_n)` for the upper half of the trusted radii
/// are compared with `mu(G_{p,q})` (or `log(p-1)` when `q` is infinite). Each
/// is allowed `tolerance` plus the slack `log((n+1)/n)` that polynomial growth
/// leaves at finite `n`. This is an empirical probe, not a proof.
pub fn bishop_probe(
    trunc: &Truncation,
    series: &GrowthSeries,
    p: u32,
    q: FaceDegree,
    tolerance: f64,
) -> Result<BishopProbe> {
    for v in trunc.interior_vertices() {
        let d = trunc.map().degree(v) as u32;
        if d > p {
            return Err(Error::DegreeBoundViolated(format!(
                "vertex {v} has degree {d} > {p}"
            )));
        }
        for h in trunc.map().half_edges(v) {
            if let Some(f) = trunc.corner_face_degree(h) {
                if f > q {
                    return Err(Error::DegreeBoundViolated(format!(
                        "vertex {v} lies on a face of degree {f} > {q}"
                    )));
                }
            }
        }
    }
    let comparison = match q {
        FaceDegree::Infinite => Some(mu_tree(p)),
        FaceDegree::Finite(k) if matches!(k, 3 | 4 | 6) => mu_gpq(p, k).ok(),
        FaceDegree::Finite(_) => None,
    };
    let n_max = series.ratio_estimates.len();
    let examined: Vec<(usize, f64)> = series
        .ratio_estimates
        .iter()
        .copied()
        .enumerate()
        .skip(n_max / 2)
        .filter(|&(n, _)| n >= 1)
        .collect();
    let verdict = match comparison {
        None => BishopVerdict::Unavailable,
        Some(_) if examined.is_empty() => BishopVerdict::Unavailable,
        Some(mu) => examined
            .iter()
            .find(|&&(n, r)| r > mu + tolerance + ((n + 1) as f64 / n as f64).ln())
            .map_or(BishopVerdict::Consistent, |&(n, _)| {
                BishopVerdict::ViolatedAt(n)
            }),
    };
    Ok(BishopProbe {
        comparison,
        examined,
        tolerance,
        verdict,
    })
}

/// Exact value of a big integer as `f64`.
pub fn big_to_f64(x: &BigInt) -> f64 {
    x.to_f64().unwrap_or(f64::INFINITY)
}
