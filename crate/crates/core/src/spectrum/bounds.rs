//! Closed-form bounds on the bottom of the spectrum.

use serde::Serialize;

use crate::growth::mu_from_tau;
use crate::growth::tau_from_curvature;
use crate::rational::{to_f64, FaceDegree, Rational};

/// `1 - sqrt(1 - h^2)`, a lower bound on the combinatorial bottom of the
/// spectrum from a lower bound `h` on the combinatorial Cheeger constant.
pub fn fujiwara_lower(cheeger: f64) -> f64 {
    1.0 - (1.0 - cheeger.min(1.0).powi(2)).sqrt()
}

/// `1 - 2 e^{mu/2} / (1 + e^mu)`, an upper bound on the combinatorial bottom
/// of the essential spectrum from an upper bound on the exponential growth.
pub fn fujiwara_upper(mu: f64) -> f64 {
    1.0 - 1.0 / (mu / 2.0).cosh()
}

/// Lower bound from `kappa(v)/|v| <= -c` and `|f| <= q`.
pub fn mckean_lower(c: Rational, q: FaceDegree) -> f64 {
    fujiwara_lower(to_f64(q.cheeger_factor() * c))
}

/// `1 - 2 sqrt(p-1)/p`: upper bound for hosts without cut locus and vertex
/// degrees at most `p`.
pub fn vertex_degree_upper(p: u32) -> f64 {
    1.0 - 2.0 * ((p - 1) as f64).sqrt() / p as f64
}

/// Upper bound for face-regular hosts without cut locus, `q` in {3, 4, 6},
/// and `kappa >= -b`.
pub fn curvature_upper(b: Rational, q: u32) -> Option<f64> {
    if !matches!(q, 3 | 4 | 6) {
        return None;
    }
    mu_from_tau(tau_from_curvature(b, q))
        .ok()
        .map(fujiwara_upper)
}

/// `alpha^2 / (2M)`, a lower bound on the physical bottom of the spectrum
/// from the physical Cheeger constant and the maximal degree.
pub fn dodziuk_lower(alpha: f64, max_degree: u32) -> f64 {
    alpha * alpha / (2.0 * max_degree as f64)
}

/// Inputs for the closed-form bounds; each bound needs only some of them.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct BoundInputs {
    /// Lower bound on the combinatorial Cheeger constant.
    pub alpha_tilde: Option<f64>,
    /// Upper bound on the exponential growth.
    pub mu: Option<f64>,
    pub c: Option<Rational>,
    pub b: Option<Rational>,
    /// Bound on face degrees.
    pub q: Option<FaceDegree>,
    /// Bound on vertex degrees.
    pub p: Option<u32>,
    /// Lower bound on the physical Cheeger constant.
    pub alpha: Option<f64>,
    /// True when the host is known to have no cut locus.
    pub without_cut_locus: bool,
    /// True when every face has degree exactly `q`.
    pub face_regular: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NamedBound {
    pub name: &'static str,
    pub value: f64,
    pub inputs: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Unavailable {
    pub name: &'static str,
    pub reason: String,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct SpectralBounds {
    /// Lower bounds on the combinatorial bottom of the spectrum.
    pub lower: Vec<NamedBound>,
    /// Upper bounds on the combinatorial bottom of the essential spectrum,
    /// hence also on the bottom of the spectrum.
    pub upper: Vec<NamedBound>,
    /// Lower bounds on the physical bottom of the spectrum.
    pub physical_lower: Vec<NamedBound>,
    pub unavailable: Vec<Unavailable>,
}

impl SpectralBounds {
    pub fn best_lower(&self) -> Option<f64> {
        self.lower.iter().map(|b| b.value).reduce(f64::max)
    }

    pub fn best_upper(&self) -> Option<f64> {
        self.upper.iter().map(|b| b.value).reduce(f64::min)
    }

    /// `[best lower, best upper]` when both sides are known.
    pub fn interval(&self) -> Option<(f64, f64)> {
        Some((self.best_lower()?, self.best_upper()?))
    }

    /// False if the best lower bound exceeds the best upper bound.
    pub fn is_consistent(&self, slack: f64) -> bool {
        self.interval().is_none_or(|(lo, hi)| lo <= hi + slack)
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        self.lower
            .iter()
            .chain(&self.upper)
            .chain(&self.physical_lower)
            .find(|b| b.name == name)
            .map(|b| b.value)
    }
}

pub const FUJIWARA_LOWER: &str = "fujiwara_lower";
pub const FUJIWARA_UPPER: &str = "fujiwara_upper";
pub const MCKEAN_LOWER: &str = "mckean_lower";
pub const VERTEX_DEGREE_UPPER: &str = "vertex_degree_upper";
pub const CURVATURE_UPPER: &str = "curvature_upper";
pub const DODZIUK_LOWER: &str = "dodziuk_lower";
pub const DODZIUK_ESSENTIAL: &str = "dodziuk_essential_lower";

/// Every bound whose inputs are present.
pub fn closed_form_bounds(inputs: &BoundInputs) -> SpectralBounds {
    let mut out = SpectralBounds::default();
    let mut unavailable = Vec::new();
    match inputs.alpha_tilde {
        Some(h) => out.lower.push(NamedBound {
            name: FUJIWARA_LOWER,
            value: fujiwara_lower(h),
            inputs: format!("alpha_tilde = {h}"),
        }),
        None => unavailable.push(unavailable_because(
            FUJIWARA_LOWER,
            "no combinatorial Cheeger bound",
        )),
    }
    match inputs.mu {
        Some(mu) => out.upper.push(NamedBound {
            name: FUJIWARA_UPPER,
            value: fujiwara_upper(mu),
            inputs: format!("mu = {mu}"),
        }),
        None => unavailable.push(unavailable_because(FUJIWARA_UPPER, "no growth bound")),
    }
    match (inputs.c, inputs.q) {
        (Some(c), Some(q)) => out.lower.push(NamedBound {
            name: MCKEAN_LOWER,
            value: mckean_lower(c, q),
            inputs: format!("c = {c}, q = {q}"),
        }),
        _ => unavailable.push(unavailable_because(
            MCKEAN_LOWER,
            "needs c > 0 and a face bound q",
        )),
    }
    match inputs.p {
        Some(p) if inputs.without_cut_locus => out.upper.push(NamedBound {
            name: VERTEX_DEGREE_UPPER,
            value: vertex_degree_upper(p),
            inputs: format!("p = {p}"),
        }),
        Some(_) => unavailable.push(unavailable_because(
            VERTEX_DEGREE_UPPER,
            "host not known to be without cut locus",
        )),
        None => unavailable.push(unavailable_because(
            VERTEX_DEGREE_UPPER,
            "no vertex degree bound",
        )),
    }
    let face_q = inputs
        .q
        .and_then(FaceDegree::finite)
        .filter(|q| matches!(q, 3 | 4 | 6));
    match (inputs.b, face_q) {
        (Some(b), Some(q))
            if inputs.without_cut_locus && inputs.face_regular && b > Rational::from_integer(0) =>
        {
            if let Some(value) = curvature_upper(b, q) {
                out.upper.push(NamedBound {
                    name: CURVATURE_UPPER,
                    value,
                    inputs: format!("b = {b}, q = {q}"),
                });
            }
        }
        _ => unavailable.push(unavailable_because(
            CURVATURE_UPPER,
            "needs b > 0, face-regular q in {3, 4, 6} and no cut locus",
        )),
    }
    match (inputs.alpha, inputs.p) {
        (Some(alpha), Some(m)) => out.physical_lower.push(NamedBound {
            name: DODZIUK_LOWER,
            value: dodziuk_lower(alpha, m),
            inputs: format!("alpha = {alpha}, M = {m}"),
        }),
        _ => unavailable.push(unavailable_because(
            DODZIUK_LOWER,
            "needs alpha and a maximal degree",
        )),
    }
    unavailable.push(unavailable_because(
        DODZIUK_ESSENTIAL,
        "Cheeger constant at infinity is not computed",
    ));
    out.unavailable = unavailable;
    out
}

fn unavailable_because(name: &'static str, reason: &str) -> Unavailable {
    Unavailable {
        name,
        reason: reason.to_string(),
    }
}
