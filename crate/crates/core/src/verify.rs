//! The verification suite: every identity, inequality and reference value
//! that applies to a truncation, checked and recorded.

use std::path::Path;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::curvature::{
    boundary_lower_bound, corner_curvature, curvature_constants, face_regular_curvature,
    harm_identity_residual, vertex_curvature, CurvatureProfile,
};
use crate::error::{Error, Result};
use crate::growth::{
    bishop_probe, bp_lower_bound, doubled_tau, mu_gpq, mu_tree, sphere_series, BishopVerdict,
    GrowthSeries,
};
use crate::host::Family;
use crate::isoperimetry::{exact_cheeger_search, gpq_combinatorial_bound, hjl_exact};
use crate::map::VertexId;
use crate::rational::{int, ratio, to_f64, FaceDegree, Rational};
use crate::spectrum::bounds::{
    CURVATURE_UPPER, DODZIUK_LOWER, FUJIWARA_LOWER, FUJIWARA_UPPER, MCKEAN_LOWER,
    VERTEX_DEGREE_UPPER,
};
use crate::spectrum::{
    bound_inputs, closed_form_bounds, dirichlet_series, find_finitely_supported_eigenfunctions,
    interior_radius, verify_certificate, LanczosOptions, LaplacianKind, LaplacianOperator,
    SpectralBounds,
};
use crate::subset::{sample_subsets, subset_stats, SubsetEnumerator, SubsetStats};
use crate::truncation::Truncation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Profile {
    Small,
    Full,
}

impl std::str::FromStr for Profile {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "small" => Ok(Profile::Small),
            "full" => Ok(Profile::Full),
            other => Err(format!("unknown profile {other:?}; expected small or full")),
        }
    }
}

impl Profile {
    /// Largest subset size enumerated.
    pub fn subset_cap(self) -> usize {
        match self {
            Profile::Small => 8,
            Profile::Full => 10,
        }
    }

    /// Largest radius used for growth and spectral checks.
    pub fn max_radius(self) -> u32 {
        match self {
            Profile::Small => 6,
            Profile::Full => 12,
        }
    }

    /// Upper limit on enumerated subsets per check.
    pub fn subset_budget(self) -> u64 {
        match self {
            Profile::Small => 300_000,
            Profile::Full => 5_000_000,
        }
    }

    pub fn samples(self) -> usize {
        match self {
            Profile::Small => 300,
            Profile::Full => 3000,
        }
    }
}

/// Every numerical tolerance used by the suite.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Agreement with reference values printed to four decimals.
    pub reference_decimal: f64,
    /// Algebraic identities evaluated in floating point.
    pub identity: f64,
    /// Eigensolver residual and comparisons of solver output.
    pub solver: f64,
    /// Slack for finite-radius growth estimates.
    pub growth: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            reference_decimal: 1e-3,
            identity: 1e-12,
            solver: 1e-9,
            growth: 1e-2,
        }
    }
}

impl Tolerances {
    pub fn strict() -> Self {
        Tolerances {
            reference_decimal: 1e-4,
            identity: 1e-13,
            solver: 1e-11,
            growth: 5e-3,
        }
    }

    pub fn loose() -> Self {
        Tolerances {
            reference_decimal: 1e-2,
            identity: 1e-9,
            solver: 1e-7,
            growth: 5e-2,
        }
    }

    /// A named profile (`default`, `strict`, `loose`) or a JSON file with
    /// all four fields.
    pub fn load(name: &str) -> Result<Self> {
        match name {
            "default" => Ok(Self::default()),
            "strict" => Ok(Self::strict()),
            "loose" => Ok(Self::loose()),
            path => {
                let text = std::fs::read_to_string(Path::new(path))?;
                Ok(serde_json::from_str(&text)?)
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Tolerance(f64),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    /// The result the check rests on.
    pub anchor: &'static str,
    pub status: Status,
    pub mode: Mode,
    pub expected: Option<String>,
    pub observed: Option<String>,
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationSuite {
    pub profile: Profile,
    pub tolerances: Tolerances,
    pub seed: u64,
    pub checks: Vec<Check>,
}

impl VerificationSuite {
    pub fn new(profile: Profile, tolerances: Tolerances, seed: u64) -> Self {
        VerificationSuite {
            profile,
            tolerances,
            seed,
            checks: Vec::new(),
        }
    }

    pub fn failed(&self) -> usize {
        self.count(Status::Fail)
    }

    pub fn count(&self, status: Status) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }

    /// No check failed; skipped checks are allowed.
    pub fn passed(&self) -> bool {
        self.failed() == 0
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    fn push(&mut self, name: &str, anchor: &'static str, status: Status, mode: Mode) -> &mut Check {
        self.checks.push(Check {
            name: name.to_string(),
            anchor,
            status,
            mode,
            expected: None,
            observed: None,
            detail: None,
        });
        self.checks.last_mut().unwrap()
    }

    fn exact(
        &mut self,
        name: &str,
        anchor: &'static str,
        ok: bool,
        expected: String,
        observed: String,
    ) {
        let check = self.push(name, anchor, status(ok), Mode::Exact);
        check.expected = Some(expected);
        check.observed = Some(observed);
    }

    fn holds(&mut self, name: &str, anchor: &'static str, mode: Mode, ok: bool, detail: String) {
        self.push(name, anchor, status(ok), mode).detail = Some(detail);
    }

    fn close(&mut self, name: &str, anchor: &'static str, tol: f64, expected: f64, observed: f64) {
        let ok = (expected - observed).abs() <= tol;
        let check = self.push(name, anchor, status(ok), Mode::Tolerance(tol));
        check.expected = Some(format!("{expected:.12}"));
        check.observed = Some(format!("{observed:.12}"));
    }

    fn skip(&mut self, name: &str, anchor: &'static str, reason: &str) {
        self.push(name, anchor, Status::Skipped, Mode::Exact).detail = Some(reason.to_string());
    }

    fn error(&mut self, name: &str, anchor: &'static str, err: &Error) {
        self.push(name, anchor, Status::Fail, Mode::Exact).detail = Some(err.to_string());
    }
}

fn show(x: Option<Rational>) -> String {
    x.map_or_else(|| "none".to_string(), |r| r.to_string())
}

fn status(ok: bool) -> Status {
    if ok {
        Status::Pass
    } else {
        Status::Fail
    }
}

const EULER: &str = "Euler formula for planar maps";
const CORNERS: &str = "vertex curvature as a sum of corner curvatures";
const FACE_REGULAR: &str = "vertex curvature of face-regular graphs";
const EDGE_COUNT: &str = "volume as twice the inner edges plus the edge boundary";
const SUBSET_CURVATURE: &str = "subset curvature in terms of boundary and faces";
const BOUNDARY_BOUND: &str = "edge boundary lower bound from subset curvature";
const CHEEGER_BOUND: &str = "Cheeger constants from curvature";
const CHEEGER_EXACT: &str = "exact Cheeger constant of regular hyperbolic tessellations";
const SPHERE_RECURSION: &str = "sphere sizes of face-regular graphs";
const GROWTH_BOUND: &str = "growth comparison with regular tessellations and trees";
const GROWTH_LOWER: &str = "growth lower bound from negative curvature";
const FUJIWARA: &str = "Fujiwara bounds on the bottom of the spectrum";
const MCKEAN: &str = "combinatorial McKean inequality";
const ESSENTIAL_UPPER: &str = "essential spectrum upper bounds without cut locus";
const DODZIUK: &str = "Dodziuk bound for the physical Laplacian";
const RAYLEIGH: &str = "Rayleigh quotient characterization";
const DEGREE_COMPARISON: &str = "physical versus combinatorial Laplacian";
const EIGENFUNCTIONS: &str = "finitely supported eigenfunctions";

/// Runs every check that applies to the truncation's host.
pub fn run_verify(
    trunc: &Truncation,
    profile: Profile,
    tol: Tolerances,
    seed: u64,
) -> VerificationSuite {
    let mut suite = VerificationSuite::new(profile, tol, seed);
    check_structure(trunc, &mut suite);
    let curvature = match curvature_constants(trunc) {
        Ok(p) => p,
        Err(e) => {
            suite.error("curvature.profile", CORNERS, &e);
            return suite;
        }
    };
    check_curvature(trunc, &curvature, &mut suite);
    check_subsets(trunc, profile, seed, &mut suite);
    check_cheeger(trunc, &curvature, profile, tol, &mut suite);
    check_growth(trunc, &curvature, profile, tol, &mut suite);
    check_spectrum(trunc, &curvature, profile, tol, &mut suite);
    check_eigenfunctions(trunc, &curvature, &mut suite);
    suite
}

fn check_structure(trunc: &Truncation, suite: &mut VerificationSuite) {
    let chi = trunc.map().euler_characteristic();
    suite.exact(
        "structure.euler",
        EULER,
        chi == 2,
        "2".into(),
        chi.to_string(),
    );
}

fn check_curvature(trunc: &Truncation, profile: &CurvatureProfile, suite: &mut VerificationSuite) {
    let map = trunc.map();
    let mut mismatched = Vec::new();
    for &(v, kappa) in &profile.vertices {
        let d = map.degree(v) as u32;
        let corners: Rational = map
            .half_edges(v)
            .filter_map(|h| trunc.corner_face_degree(h))
            .map(|f| corner_curvature(d, f))
            .sum();
        if corners != kappa {
            mismatched.push(v);
        }
    }
    suite.holds(
        "curvature.corner_sum",
        CORNERS,
        Mode::Exact,
        mismatched.is_empty(),
        format!(
            "{} interior vertices, mismatches at {:?}",
            profile.vertices.len(),
            mismatched
        ),
    );

    let host = trunc.host();
    match (host.family, host.p, host.q) {
        (Family::Gpq | Family::Tree, Some(p), Some(q)) => {
            let expected = face_regular_curvature(p, q);
            let ok = profile.vertices.iter().all(|&(_, k)| k == expected);
            suite.exact(
                "curvature.face_regular",
                FACE_REGULAR,
                ok,
                expected.to_string(),
                format!("[{}, {}]", profile.inf, profile.sup),
            );
        }
        (Family::Trihex, _, _) => {
            let ok = profile.sup == int(0) && profile.inf == int(0);
            suite.exact(
                "curvature.flat",
                FACE_REGULAR,
                ok,
                "0".into(),
                format!("[{}, {}]", profile.inf, profile.sup),
            );
        }
        _ => suite.skip(
            "curvature.face_regular",
            FACE_REGULAR,
            "host is not face-regular",
        ),
    }
}

/// Subsets for the identity checks: every connected interior set through the
/// center up to the largest size that fits the budget, plus random samples.
fn identity_subsets(
    trunc: &Truncation,
    profile: Profile,
    seed: u64,
) -> (usize, Vec<Vec<VertexId>>) {
    let mut sets = Vec::new();
    let mut cap = profile.subset_cap();
    while cap > 0 {
        let enumerator = SubsetEnumerator::new(trunc, cap).with_budget(profile.subset_budget());
        sets.clear();
        let result = enumerator.for_each_rooted(trunc.center(), &mut |w| sets.push(w.to_vec()));
        if result.is_ok() {
            break;
        }
        cap -= 1;
    }
    if trunc.center() != 0 {
        // Rooted enumeration yields sets whose smallest vertex is the root.
        sets.retain(|w| w[0] == trunc.center());
    }
    sets.extend(sample_subsets(
        trunc,
        profile.samples(),
        profile.subset_cap(),
        seed,
    ));
    (cap, sets)
}

fn check_subsets(trunc: &Truncation, profile: Profile, seed: u64, suite: &mut VerificationSuite) {
    let (cap, sets) = identity_subsets(trunc, profile, seed);
    let q = trunc.host().q.or(trunc.max_face_degree());
    let mut stats: Vec<SubsetStats> = Vec::with_capacity(sets.len());
    for w in &sets {
        match subset_stats(trunc, w) {
            Ok(s) => stats.push(s),
            Err(e) => {
                suite.error("subsets.stats", SUBSET_CURVATURE, &e);
                return;
            }
        }
    }
    let detail = |bad: usize| {
        format!(
            "{} subsets (all through the center up to size {cap}, plus samples), {bad} failures",
            stats.len()
        )
    };
    let bad = stats
        .iter()
        .filter(|s| s.volume != 2 * s.inner_edges + s.edge_boundary)
        .count();
    suite.holds(
        "subsets.edge_count",
        EDGE_COUNT,
        Mode::Exact,
        bad == 0,
        detail(bad),
    );
    let bad = stats
        .iter()
        .filter(|s| !harm_identity_residual(s).is_zero())
        .count();
    suite.holds(
        "subsets.curvature_identity",
        SUBSET_CURVATURE,
        Mode::Exact,
        bad == 0,
        detail(bad),
    );
    match q {
        Some(q) => {
            let mut bad = 0;
            for s in &stats {
                match boundary_lower_bound(s, q) {
                    Ok(bound) if int(s.edge_boundary as i64) >= bound => {}
                    Ok(_) => bad += 1,
                    Err(e) => {
                        suite.error("subsets.boundary_bound", BOUNDARY_BOUND, &e);
                        return;
                    }
                }
            }
            suite.holds(
                "subsets.boundary_bound",
                BOUNDARY_BOUND,
                Mode::Exact,
                bad == 0,
                detail(bad),
            );
        }
        None => suite.skip(
            "subsets.boundary_bound",
            BOUNDARY_BOUND,
            "no face degree bound",
        ),
    }
}

fn check_cheeger(
    trunc: &Truncation,
    profile: &CurvatureProfile,
    run: Profile,
    tol: Tolerances,
    suite: &mut VerificationSuite,
) {
    let host = trunc.host();
    let report = match exact_cheeger_search(
        trunc,
        run.subset_cap(),
        Some(run.subset_budget()),
        Some(profile),
    ) {
        Ok(r) => Some(r),
        Err(Error::CapTooLargeForBudget(_)) => exact_cheeger_search(
            trunc,
            run.subset_cap().min(6),
            Some(run.subset_budget()),
            Some(profile),
        )
        .ok(),
        Err(e) => {
            suite.error("cheeger.search", CHEEGER_BOUND, &e);
            return;
        }
    };
    let bounds = report.as_ref().and_then(|r| r.bounds);
    match (host.family, host.p, host.q) {
        (Family::Gpq, Some(p), Some(FaceDegree::Finite(q))) => {
            let expected = gpq_combinatorial_bound(p, q);
            let observed = bounds.and_then(|b| b.combinatorial);
            if expected > int(0) {
                suite.exact(
                    "cheeger.gpq_bound",
                    CHEEGER_BOUND,
                    observed == Some(expected),
                    expected.to_string(),
                    show(observed),
                );
            }
            match hjl_exact(p, q) {
                Ok(h) => {
                    let bound = observed.map_or(0.0, to_f64);
                    suite.holds(
                        "cheeger.bound_below_exact",
                        CHEEGER_EXACT,
                        Mode::Tolerance(tol.identity),
                        bound <= h + tol.identity,
                        format!("curvature bound {bound:.12} <= exact {h:.12}"),
                    );
                    if let Some(est) = report.as_ref().and_then(|r| r.combinatorial.as_ref()) {
                        let est = to_f64(est.value);
                        suite.holds(
                            "cheeger.estimate_above_exact",
                            CHEEGER_EXACT,
                            Mode::Tolerance(tol.identity),
                            est + tol.identity >= h,
                            format!("smallest quotient {est:.12} >= exact {h:.12}"),
                        );
                    }
                }
                Err(_) => suite.skip(
                    "cheeger.bound_below_exact",
                    CHEEGER_EXACT,
                    "host is not hyperbolic",
                ),
            }
            if (p, q) == (6, 6) {
                suite.exact(
                    "cheeger.hexagonal_reference",
                    CHEEGER_BOUND,
                    observed == Some(ratio(1, 2)),
                    "1/2".into(),
                    show(observed),
                );
                suite.close(
                    "cheeger.hexagonal_exact_reference",
                    CHEEGER_EXACT,
                    tol.identity,
                    1.0 / 3f64.sqrt(),
                    hjl_exact(6, 6).unwrap(),
                );
            }
        }
        (Family::Tree, Some(p), _) => {
            let expected = (int(p as i64 - 2), ratio(p as i64 - 2, p as i64));
            let observed = bounds.map_or((None, None), |b| (b.physical, b.combinatorial));
            suite.exact(
                "cheeger.tree_sharp",
                CHEEGER_BOUND,
                observed == (Some(expected.0), Some(expected.1)),
                format!("({}, {})", expected.0, expected.1),
                format!("({}, {})", show(observed.0), show(observed.1)),
            );
            if let Some(r) = &report {
                let p = p as i64;
                let bad: Vec<usize> = r
                    .per_size
                    .iter()
                    .filter(|s| s.physical != ratio((p - 2) * s.size as i64 + 2, s.size as i64))
                    .map(|s| s.size)
                    .collect();
                suite.holds(
                    "cheeger.tree_per_size",
                    CHEEGER_BOUND,
                    Mode::Exact,
                    bad.is_empty() && !r.per_size.is_empty(),
                    format!(
                        "minimum |dW|/|W| = ((p-2)k+2)/k for k = 1..{}; mismatches at {bad:?}",
                        r.per_size.len()
                    ),
                );
            }
        }
        _ => {}
    }
    match &report {
        Some(r) if r.bounds.is_some() => suite.holds(
            "cheeger.search_respects_bounds",
            CHEEGER_BOUND,
            Mode::Exact,
            r.bound_violations == 0,
            format!(
                "{} subsets up to size {}, {} below a curvature bound",
                r.subsets, r.cap, r.bound_violations
            ),
        ),
        Some(_) => suite.skip(
            "cheeger.search_respects_bounds",
            CHEEGER_BOUND,
            "no curvature bound",
        ),
        None => suite.skip(
            "cheeger.search_respects_bounds",
            CHEEGER_BOUND,
            "subset budget exceeded",
        ),
    }
}

fn check_growth(
    trunc: &Truncation,
    profile: &CurvatureProfile,
    run: Profile,
    tol: Tolerances,
    suite: &mut VerificationSuite,
) {
    let series = match sphere_series(trunc) {
        Ok(s) => s,
        Err(e) => {
            suite.error("growth.spheres", SPHERE_RECURSION, &e);
            return;
        }
    };
    let host = trunc.host();
    let s = &series.spheres[..series.spheres.len().min(run.max_radius() as usize + 1)];
    match (host.family, host.p, host.q) {
        (Family::Gpq, Some(p), Some(FaceDegree::Finite(q))) if matches!(q, 3 | 4 | 6) => {
            let t = doubled_tau(p, q).unwrap_or(0) as i128;
            let bad: Vec<usize> = (1..s.len().saturating_sub(2))
                .filter(|&n| s[n + 2] as i128 != t * s[n + 1] as i128 - s[n] as i128)
                .collect();
            suite.holds(
                "growth.sphere_recursion",
                SPHERE_RECURSION,
                Mode::Exact,
                bad.is_empty(),
                format!("s_(n+2) = 2 tau s_(n+1) - s_n for 1 <= n <= {}; spheres {s:?}; failures at {bad:?}", s.len().saturating_sub(3)),
            );
            check_second_difference(trunc, &series, q, suite);
        }
        (Family::Tree, Some(p), _) => {
            let expected: Vec<u64> = (0..s.len() as u32)
                .map(|n| {
                    if n == 0 {
                        1
                    } else {
                        p as u64 * (p as u64 - 1).pow(n - 1)
                    }
                })
                .collect();
            suite.exact(
                "growth.tree_spheres",
                SPHERE_RECURSION,
                expected == s,
                format!("{expected:?}"),
                format!("{s:?}"),
            );
        }
        _ => suite.skip(
            "growth.sphere_recursion",
            SPHERE_RECURSION,
            "host is not a regular tessellation with q in {3, 4, 6}",
        ),
    }

    let comparison = match (host.p, host.q) {
        (Some(p), Some(q)) => Some((p, q)),
        _ => None,
    };
    match comparison {
        Some((p, q)) => match bishop_probe(trunc, &series, p, q, tol.growth) {
            Ok(probe) => match probe.verdict {
                BishopVerdict::Unavailable => suite.skip(
                    "growth.comparison",
                    GROWTH_BOUND,
                    "no closed form for this face degree",
                ),
                verdict => suite.holds(
                    "growth.comparison",
                    GROWTH_BOUND,
                    Mode::Tolerance(tol.growth),
                    verdict == BishopVerdict::Consistent,
                    format!(
                        "ratio estimates {:?} against mu = {:.12}: {verdict:?}",
                        probe.examined,
                        probe.comparison.unwrap_or(f64::NAN)
                    ),
                ),
            },
            Err(e) => suite.error("growth.comparison", GROWTH_BOUND, &e),
        },
        None => suite.skip(
            "growth.comparison",
            GROWTH_BOUND,
            "host has no degree bounds",
        ),
    }

    // Lower bound on growth for hosts without cut locus.
    match (profile.a, host.q.or(profile.max_face_degree)) {
        (Some(a), Some(q)) if profile.nonpositive_corner_curvature => {
            let bp = bp_lower_bound(a, q).unwrap_or(f64::NAN);
            let exact = match (host.family, host.p, host.q) {
                (Family::Tree, Some(p), _) => Some(mu_tree(p)),
                (Family::Gpq, Some(p), Some(FaceDegree::Finite(q))) => mu_gpq(p, q).ok(),
                _ => None,
            };
            let (mu, what) = match exact {
                Some(mu) => (mu, "closed form"),
                None => (
                    series.ratio_estimates.last().copied().unwrap_or(f64::NAN),
                    "last ratio estimate",
                ),
            };
            suite.holds(
                "growth.lower_bound",
                GROWTH_LOWER,
                Mode::Tolerance(tol.identity),
                bp <= mu + tol.identity,
                format!("log(1 + 2q/(q-1) a) = {bp:.12} <= mu ({what}) = {mu:.12}"),
            );
        }
        _ => suite.skip(
            "growth.lower_bound",
            GROWTH_LOWER,
            "needs a > 0 and non-positive corner curvature",
        ),
    }
}

/// `s_{n+2} - 2 s_{n+1} + s_n = -2q/(q-2) kappa(S_{n+1})` for `n >= 1` while
/// `S_{n+1}` is interior.
fn check_second_difference(
    trunc: &Truncation,
    series: &GrowthSeries,
    q: u32,
    suite: &mut VerificationSuite,
) {
    let dist = trunc.center_distances();
    let s = &series.spheres;
    let factor = FaceDegree::Finite(q).cheeger_factor();
    let mut checked = Vec::new();
    let mut bad = Vec::new();
    for n in 1..s.len().saturating_sub(2) {
        let sphere: Vec<VertexId> = (0..trunc.vertex_count() as VertexId)
            .filter(|&v| dist[v as usize] as usize == n + 1)
            .collect();
        if sphere.iter().any(|&v| !trunc.is_interior(v)) {
            break;
        }
        let kappa: Rational = sphere
            .iter()
            .map(|&v| vertex_curvature(trunc, v).unwrap())
            .sum();
        let lhs = int(s[n + 2] as i64 - 2 * s[n + 1] as i64 + s[n] as i64);
        checked.push(n);
        if lhs != -factor * kappa {
            bad.push(n);
        }
    }
    if checked.is_empty() {
        suite.skip(
            "growth.second_difference",
            SPHERE_RECURSION,
            "no interior sphere beyond radius 1",
        );
    } else {
        suite.holds(
            "growth.second_difference",
            SPHERE_RECURSION,
            Mode::Exact,
            bad.is_empty(),
            format!("checked n = {checked:?}, failures at {bad:?}"),
        );
    }
}

fn check_spectrum(
    trunc: &Truncation,
    profile: &CurvatureProfile,
    run: Profile,
    tol: Tolerances,
    suite: &mut VerificationSuite,
) {
    let inputs = bound_inputs(trunc, profile);
    let bounds = closed_form_bounds(&inputs);
    check_reference_bounds(trunc, &bounds, tol, suite);
    suite.holds(
        "spectrum.interval_consistent",
        FUJIWARA,
        Mode::Tolerance(tol.solver),
        bounds.is_consistent(tol.solver),
        format!("interval {:?}", bounds.interval()),
    );
    let Some(max_r) = interior_radius(trunc) else {
        suite.skip("spectrum.dirichlet", RAYLEIGH, "center is not interior");
        return;
    };
    let radii: Vec<u32> = (1..=max_r.min(run.max_radius())).collect();
    if radii.is_empty() {
        suite.skip(
            "spectrum.dirichlet",
            RAYLEIGH,
            "no interior ball of positive radius",
        );
        return;
    }
    let opts = LanczosOptions {
        tol: tol.solver,
        ..LanczosOptions::default()
    };
    let comb = match dirichlet_series(trunc, LaplacianKind::Combinatorial, radii.clone(), opts) {
        Ok(v) => v,
        Err(e) => {
            suite.error("spectrum.dirichlet", RAYLEIGH, &e);
            return;
        }
    };
    let values: Vec<f64> = comb.iter().map(|d| d.lambda0).collect();
    suite.holds(
        "spectrum.dirichlet_monotone",
        RAYLEIGH,
        Mode::Tolerance(tol.solver),
        values.windows(2).all(|w| w[1] <= w[0] + tol.solver)
            && values.iter().all(|&x| x >= -tol.solver),
        format!("radii {radii:?}: {values:?}"),
    );
    if let Some(lo) = bounds.best_lower() {
        suite.holds(
            "spectrum.dirichlet_above_lower",
            FUJIWARA,
            Mode::Tolerance(tol.solver),
            values.iter().all(|&x| x >= lo - tol.solver),
            format!(
                "lower bound {lo:.12}, smallest Dirichlet value {:.12}",
                values.last().unwrap()
            ),
        );
    }

    let phys = match dirichlet_series(trunc, LaplacianKind::Physical, radii.clone(), opts) {
        Ok(v) => v,
        Err(e) => {
            suite.error("spectrum.physical", DEGREE_COMPARISON, &e);
            return;
        }
    };
    if let Some(lo) = bounds.get(DODZIUK_LOWER) {
        suite.holds(
            "spectrum.dodziuk",
            DODZIUK,
            Mode::Tolerance(tol.solver),
            phys.iter().all(|d| d.lambda0 >= lo - tol.solver),
            format!(
                "alpha^2/2M = {lo:.12}, smallest physical Dirichlet value {:.12}",
                phys.last().unwrap().lambda0
            ),
        );
    }
    let regular = trunc.host().regular_degree().filter(|&p| {
        trunc
            .interior_vertices()
            .all(|v| trunc.map().degree(v) as u32 == p)
    });
    match regular {
        Some(p) => {
            let r = *radii.last().unwrap();
            let ball = trunc.ball(r);
            let entries_ok = LaplacianOperator::assemble(trunc, LaplacianKind::Physical, &ball)
                .and_then(|ph| {
                    let co =
                        LaplacianOperator::assemble(trunc, LaplacianKind::Combinatorial, &ball)?;
                    Ok((ph, co))
                })
                .map(|(ph, co)| {
                    (0..ph.len()).all(|i| {
                        (0..ph.len()).all(|j| {
                            (ph.entry(i, j) - p as f64 * co.entry(i, j)).abs() <= tol.identity
                        })
                    })
                });
            suite.holds(
                "spectrum.physical_scaling_entries",
                DEGREE_COMPARISON,
                Mode::Tolerance(tol.identity),
                matches!(entries_ok, Ok(true)),
                format!("physical = {p} x combinatorial on B_{r}"),
            );
            let worst = comb
                .iter()
                .zip(&phys)
                .map(|(c, ph)| (ph.lambda0 - p as f64 * c.lambda0).abs())
                .fold(0.0, f64::max);
            suite.holds(
                "spectrum.physical_scaling_values",
                DEGREE_COMPARISON,
                Mode::Tolerance(tol.solver),
                worst <= tol.solver,
                format!("largest |lambda_phys - {p} lambda_comb| = {worst:e}"),
            );
        }
        None => {
            let tail = crate::spectrum::degree_tail(trunc);
            match tail {
                Ok(tail) => {
                    let ok = comb.iter().zip(&phys).all(|(c, ph)| {
                        ph.lambda0 + tol.solver >= tail.min[0] as f64 * c.lambda0
                            && ph.lambda0 <= tail.max[0] as f64 * c.lambda0 + tol.solver
                    });
                    suite.holds(
                        "spectrum.degree_comparison",
                        DEGREE_COMPARISON,
                        Mode::Tolerance(tol.solver),
                        ok,
                        format!("m_0 = {}, M_0 = {}", tail.min[0], tail.max[0]),
                    );
                }
                Err(e) => suite.error("spectrum.degree_comparison", DEGREE_COMPARISON, &e),
            }
        }
    }
}

fn check_reference_bounds(
    trunc: &Truncation,
    bounds: &SpectralBounds,
    tol: Tolerances,
    suite: &mut VerificationSuite,
) {
    let host = trunc.host();
    match (host.family, host.p, host.q) {
        (Family::Gpq, Some(6), Some(FaceDegree::Finite(6))) => {
            let value = |name| bounds.get(name).unwrap_or(f64::NAN);
            suite.close(
                "spectrum.hexagonal_lower",
                FUJIWARA,
                tol.reference_decimal,
                0.1835,
                value(FUJIWARA_LOWER),
            );
            suite.close(
                "spectrum.hexagonal_upper",
                ESSENTIAL_UPPER,
                tol.reference_decimal,
                0.2441,
                value(CURVATURE_UPPER),
            );
            suite.close(
                "spectrum.hexagonal_mckean",
                MCKEAN,
                tol.reference_decimal,
                0.1340,
                value(MCKEAN_LOWER),
            );
            let (lo, hi) = bounds.interval().unwrap_or((f64::NAN, f64::NAN));
            suite.holds(
                "spectrum.hexagonal_interval",
                FUJIWARA,
                Mode::Tolerance(tol.reference_decimal),
                (lo - 0.1835).abs() <= tol.reference_decimal
                    && (hi - 0.2441).abs() <= tol.reference_decimal,
                format!("[{lo:.12}, {hi:.12}] against [0.1835, 0.2441]"),
            );
        }
        (Family::Tree, Some(p), _) => {
            let sharp = 1.0 - 2.0 * ((p - 1) as f64).sqrt() / p as f64;
            for name in [
                FUJIWARA_LOWER,
                FUJIWARA_UPPER,
                MCKEAN_LOWER,
                VERTEX_DEGREE_UPPER,
            ] {
                suite.close(
                    &format!("spectrum.tree_sharp.{name}"),
                    FUJIWARA,
                    tol.identity,
                    sharp,
                    bounds.get(name).unwrap_or(f64::NAN),
                );
            }
        }
        _ => {}
    }
}

fn check_eigenfunctions(
    trunc: &Truncation,
    profile: &CurvatureProfile,
    suite: &mut VerificationSuite,
) {
    // Largest ball whose closed neighbourhood is interior.
    let Some(r) = interior_radius(trunc).and_then(|r| r.checked_sub(1)) else {
        suite.skip(
            "eigenfunctions.ball",
            EIGENFUNCTIONS,
            "no ball with interior neighbourhood",
        );
        return;
    };
    let region = trunc.ball(r.min(4));
    let search = match find_finitely_supported_eigenfunctions(trunc, &region) {
        Ok(s) => s,
        Err(e) => {
            suite.error("eigenfunctions.ball", EIGENFUNCTIONS, &e);
            return;
        }
    };
    let verified = search
        .certificates
        .iter()
        .all(|c| verify_certificate(trunc, c).unwrap_or(false));
    suite.holds(
        "eigenfunctions.certificates_verify",
        EIGENFUNCTIONS,
        Mode::Exact,
        verified,
        format!(
            "{} certificates on B_{} ({} vertices), invariant dimension {}, unresolved {}",
            search.certificates.len(),
            r.min(4),
            region.len(),
            search.invariant_dimension,
            search.unresolved_dimension
        ),
    );
    if profile.nonpositive_corner_curvature {
        suite.holds(
            "eigenfunctions.none_under_nonpositive_curvature",
            EIGENFUNCTIONS,
            Mode::Exact,
            search.invariant_dimension == 0,
            format!(
                "invariant dimension {} on B_{}",
                search.invariant_dimension,
                r.min(4)
            ),
        );
    }
    if trunc.host().family == Family::Trihex {
        check_hexagon_eigenfunction(trunc, suite);
    }
}

/// The alternating function on a hexagon of the trihexagonal tiling.
fn check_hexagon_eigenfunction(trunc: &Truncation, suite: &mut VerificationSuite) {
    let map = trunc.map();
    let hexagon = (0..map.face_count() as u32)
        .filter(|&f| trunc.face_degree(f) == Some(FaceDegree::Finite(6)))
        .map(|f| map.face_vertices(f).collect::<Vec<_>>())
        .filter(|vs| {
            vs.iter().all(|&v| {
                trunc.is_interior(v) && map.neighbors(v).iter().all(|&u| trunc.is_interior(u))
            })
        })
        .min_by_key(|vs| vs.iter().map(|&v| trunc.center_distance(v)).max());
    let Some(hexagon) = hexagon else {
        suite.skip(
            "eigenfunctions.hexagon",
            EIGENFUNCTIONS,
            "no hexagon with interior neighbourhood",
        );
        return;
    };
    match find_finitely_supported_eigenfunctions(trunc, &hexagon) {
        Ok(search) => {
            let three_halves = BigRational::new(3.into(), 2.into());
            let ok = search.certificates.len() == 1 && {
                let c = &search.certificates[0];
                let alternating = hexagon.windows(2).all(|w| {
                    let value = |v| {
                        c.support
                            .iter()
                            .position(|&x| x == v)
                            .map(|i| c.values[i].clone())
                    };
                    match (value(w[0]), value(w[1])) {
                        (Some(a), Some(b)) => {
                            a == -b.clone() && (a == BigRational::one() || b == BigRational::one())
                        }
                        _ => false,
                    }
                });
                c.eigenvalue == three_halves
                    && c.support.len() == 6
                    && alternating
                    && verify_certificate(trunc, c).unwrap_or(false)
            };
            let observed: Vec<String> = search
                .certificates
                .iter()
                .map(|c| format!("lambda = {} on {} vertices", c.eigenvalue, c.support.len()))
                .collect();
            suite.exact(
                "eigenfunctions.hexagon",
                EIGENFUNCTIONS,
                ok,
                "one certificate, lambda = 3/2, values +1/-1 alternating".into(),
                observed.join("; "),
            );
        }
        Err(e) => suite.error("eigenfunctions.hexagon", EIGENFUNCTIONS, &e),
    }
}
