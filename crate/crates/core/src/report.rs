//! Stable JSON reports.
//!
//! Object keys are sorted, rationals are `{"num": n, "den": d}` and floats
//! carry 12 significant digits, so repeated runs give identical bytes.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::curvature::CurvatureProfile;
use crate::growth::{BishopProbe, BishopVerdict, GrowthSeries, MuClosedForms};
use crate::isoperimetry::{CheegerReport, Extremum};
use crate::rational::{FaceDegree, Rational};
use crate::spectrum::{EigenfunctionSearch, SpectralReport};
use crate::truncation::Truncation;
use crate::verify::VerificationSuite;

pub const SCHEMA: &str = "tessellab-report/1";

/// Rounds to 12 significant digits; non-finite values become `null`.
pub fn float(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    let rounded: f64 = format!("{x:.11e}").parse().unwrap_or(x);
    json!(rounded)
}

pub fn rational(r: Rational) -> Value {
    json!({ "num": r.numer(), "den": r.denom() })
}

fn big_integer(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

pub fn big_rational(r: &BigRational) -> Value {
    json!({ "num": big_integer(r.numer()), "den": big_integer(r.denom()) })
}

pub fn face_degree(f: FaceDegree) -> Value {
    match f {
        FaceDegree::Finite(n) => json!(n),
        FaceDegree::Infinite => json!("inf"),
    }
}

fn opt<T>(x: Option<T>, f: impl FnOnce(T) -> Value) -> Value {
    x.map_or(Value::Null, f)
}

/// Serializes `value` and rounds every float in it.
pub fn to_rounded_value<T: Serialize>(value: &T) -> Value {
    round_floats(serde_json::to_value(value).expect("report types serialize"))
}

fn round_floats(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => float(n.as_f64().unwrap()),
        Value::Array(xs) => Value::Array(xs.into_iter().map(round_floats).collect()),
        Value::Object(m) => {
            Value::Object(m.into_iter().map(|(k, x)| (k, round_floats(x))).collect())
        }
        other => other,
    }
}

/// Wraps a result with the schema tag and the report kind.
pub fn document(kind: &str, result: Value) -> Value {
    let mut m = Map::new();
    m.insert("schema".into(), json!(SCHEMA));
    m.insert("kind".into(), json!(kind));
    m.insert("result".into(), result);
    Value::Object(m)
}

/// Pretty-printed document with a trailing newline.
pub fn render(doc: &Value) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("values serialize");
    s.push('\n');
    s
}

pub fn truncation_summary(trunc: &Truncation) -> Value {
    let host = trunc.host();
    let map = trunc.map();
    json!({
        "family": host.family.to_string(),
        "p": host.p,
        "q": opt(host.q, face_degree),
        "vertex_transitive": host.vertex_transitive,
        "vertices": map.vertex_count(),
        "edges": map.edge_count(),
        "faces": map.face_count(),
        "interior_vertices": trunc.interior_vertices().count(),
        "radius": trunc.radius(),
    })
}

pub fn curvature_json(profile: &CurvatureProfile) -> Value {
    let vertices: Vec<Value> = profile
        .vertices
        .iter()
        .map(|&(v, k)| json!({ "vertex": v, "curvature": rational(k) }))
        .collect();
    json!({
        "a": opt(profile.a, rational),
        "b": rational(profile.b),
        "c": opt(profile.c, rational),
        "sup": rational(profile.sup),
        "inf": rational(profile.inf),
        "corners": profile.corners.len(),
        "nonpositive_corner_curvature": profile.nonpositive_corner_curvature,
        "nonpositive_vertex_curvature": profile.nonpositive_vertex_curvature,
        "max_face_degree": opt(profile.max_face_degree, face_degree),
        "vertices": vertices,
    })
}

fn extremum(e: &Extremum) -> Value {
    json!({ "value": rational(e.value), "witness": e.witness })
}

pub fn cheeger_json(report: &CheegerReport, exact_combinatorial: Option<f64>) -> Value {
    let per_size: Vec<Value> = report
        .per_size
        .iter()
        .map(|s| {
            json!({
                "size": s.size,
                "physical": rational(s.physical),
                "combinatorial": rational(s.combinatorial),
            })
        })
        .collect();
    json!({
        "cap": report.cap,
        "subsets": report.subsets,
        "skipped": report.skipped,
        "rooted_at_center": report.rooted_at_center,
        "bound_physical": opt(report.bounds.and_then(|b| b.physical), rational),
        "bound_combinatorial": opt(report.bounds.and_then(|b| b.combinatorial), rational),
        "exact_combinatorial": opt(exact_combinatorial, float),
        "estimate_physical": opt(report.physical.as_ref(), extremum),
        "estimate_combinatorial": opt(report.combinatorial.as_ref(), extremum),
        "estimate_vertex": opt(report.vertex.as_ref(), extremum),
        "per_size": per_size,
        "bound_violations": report.bound_violations,
    })
}

pub fn growth_json(
    series: &GrowthSeries,
    forms: Option<&MuClosedForms>,
    bp: Option<f64>,
    probe: Option<&BishopProbe>,
) -> Value {
    let forms = forms.map(|f| {
        json!({
            "tree": opt(f.tree, float),
            "gpq": opt(f.gpq, float),
            "tau_gpq": opt(f.tau_gpq, rational),
            "curvature": opt(f.curvature, float),
            "tau_curvature": opt(f.tau_curvature, rational),
        })
    });
    let probe = probe.map(|p| {
        let verdict = match p.verdict {
            BishopVerdict::Consistent => json!("consistent"),
            BishopVerdict::ViolatedAt(n) => json!({ "violated_at": n }),
            BishopVerdict::Unavailable => json!("unavailable"),
        };
        json!({
            "comparison": opt(p.comparison, float),
            "tolerance": float(p.tolerance),
            "examined": p.examined.iter().map(|&(n, r)| json!([n, float(r)])).collect::<Vec<_>>(),
            "verdict": verdict,
        })
    });
    json!({
        "center": series.center,
        "trusted_radius": series.trusted_radius(),
        "spheres": series.spheres,
        "volumes": series.volumes,
        "ratio_estimates": series.ratio_estimates.iter().map(|&x| float(x)).collect::<Vec<_>>(),
        "cumulative_estimates": series
            .cumulative_estimates
            .iter()
            .map(|x| opt(*x, float))
            .collect::<Vec<_>>(),
        "monotone": series.monotone,
        "max_degree": series.max_degree,
        "closed_forms": forms,
        "bp_lower_bound": opt(bp, float),
        "bishop_probe": probe,
    })
}

pub fn spectral_json(report: &SpectralReport) -> Value {
    to_rounded_value(report)
}

pub fn eigenfunctions_json(search: &EigenfunctionSearch, verified: &[bool]) -> Value {
    let certificates: Vec<Value> = search
        .certificates
        .iter()
        .zip(verified)
        .map(|(c, &ok)| {
            json!({
                "eigenvalue": big_rational(&c.eigenvalue),
                "support": c.support,
                "values": c.values.iter().map(big_rational).collect::<Vec<_>>(),
                "verified": ok,
            })
        })
        .collect();
    json!({
        "region_size": search.region.len(),
        "invariant_dimension": search.invariant_dimension,
        "unresolved_dimension": search.unresolved_dimension,
        "certificates": certificates,
    })
}

pub fn suite_json(suite: &VerificationSuite) -> Value {
    to_rounded_value(suite)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn twelve_digits() {
        assert_eq!(float(1.0 / 3.0), json!(0.333333333333));
        assert_eq!(float(f64::NAN), Value::Null);
        assert_eq!(float(2.0), json!(2.0));
    }

    #[test]
    fn rationals() {
        assert_eq!(rational(ratio(-2, 4)), json!({"num": -1, "den": 2}));
        assert_eq!(rational(int(0)), json!({"num": 0, "den": 1}));
    }

    #[test]
    fn sorted_keys() {
        let doc = document("empty", json!({"checks": []}));
        assert_eq!(
            render(&doc),
            "{\n  \"kind\": \"empty\",\n  \"result\": {\n    \"checks\": []\n  },\n  \"schema\": \"tessellab-report/1\"\n}\n"
        );
    }
}
