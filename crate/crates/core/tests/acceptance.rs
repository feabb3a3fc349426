//! Acceptance suite: one line per criterion.
//!
//! Run with `cargo test --release --test acceptance`. Criteria listed in
//! `KNOWN_FAILURES` are computed faithfully and reported as FAIL; the run
//! only aborts when any other criterion fails.

use std::collections::VecDeque;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use nalgebra::{DMatrix, SymmetricEigen};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::Value;

use tessellab::curvature::{boundary_lower_bound, curvature_constants, harm_identity_residual};
use tessellab::format::{parse_truncation, read_truncation};
use tessellab::generators::{generate_gpq, generate_tree};
use tessellab::growth::{big_to_f64, mu_gpq, sigma_recursion, sphere_series};
use tessellab::isoperimetry::{
    cheeger_bounds, exact_cheeger_search, gpq_combinatorial_bound, hjl_exact,
};
use tessellab::map::VertexId;
use tessellab::rational::{int, ratio, to_f64, FaceDegree};
use tessellab::spectrum::bounds::{
    fujiwara_lower, fujiwara_upper, vertex_degree_upper, CURVATURE_UPPER, DODZIUK_LOWER,
    FUJIWARA_LOWER, FUJIWARA_UPPER, MCKEAN_LOWER, VERTEX_DEGREE_UPPER,
};
use tessellab::spectrum::{
    bound_inputs, closed_form_bounds, dirichlet_series, find_finitely_supported_eigenfunctions,
    spectral_report, verify_certificate, LanczosOptions, LaplacianKind, LaplacianOperator,
};
use tessellab::subset::{sample_subsets, subset_stats, SubsetEnumerator};
use tessellab::verify::{run_verify, Profile, Tolerances};
use tessellab::Truncation;

/// Agreement with values printed to four decimals.
const DECIMAL_TOL: f64 = 1e-3;
/// Closed forms evaluated in floating point.
const IDENTITY_TOL: f64 = 1e-12;
/// Closed-form growth constants.
const GROWTH_CONSTANT_TOL: f64 = 1e-6;
/// Finite-n growth ratio against its limit.
const GROWTH_RATIO_TOL: f64 = 0.01;
/// Eigensolver output against dense or frozen oracle values.
const SOLVER_TOL: f64 = 1e-10;
const BUDGET: usize = 5_000_000;

/// Criteria whose statement does not hold for the implemented objects. See
/// the detail line printed for each.
const KNOWN_FAILURES: &[u32] = &[2];

type Criterion = (u32, &'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

fn load(name: &str) -> Truncation {
    read_truncation(fixture(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

/// Sphere sizes by a plain breadth-first search over neighbour lists.
fn bfs_spheres(trunc: &Truncation, radius: usize) -> Vec<u64> {
    let map = trunc.map();
    let mut dist = vec![usize::MAX; map.vertex_count()];
    let mut queue = VecDeque::from([trunc.center()]);
    dist[trunc.center() as usize] = 0;
    let mut spheres = vec![0u64; radius + 1];
    while let Some(v) = queue.pop_front() {
        let d = dist[v as usize];
        spheres[d] += 1;
        if d == radius {
            continue;
        }
        for &u in map.neighbors(v) {
            if dist[u as usize] == usize::MAX {
                dist[u as usize] = d + 1;
                queue.push_back(u);
            }
        }
    }
    spheres
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut total = 0usize;
    let mut failures = Vec::new();
    let mut parts = Vec::new();
    for name in [
        "g66_r6.json",
        "g37_r9.json",
        "g44_r6.json",
        "trihex_r6.json",
        "t3_r8.json",
    ] {
        let trunc = load(name);
        let q = trunc.host().q.or(trunc.max_face_degree()).unwrap();
        // Every connected interior set through the center up to the largest
        // size within budget, plus seeded samples of size up to 9.
        let mut sets = Vec::new();
        let mut cap = 9;
        loop {
            sets.clear();
            let enumerator = SubsetEnumerator::new(&trunc, cap).with_budget(150_000);
            if enumerator
                .for_each_rooted(trunc.center(), &mut |w| sets.push(w.to_vec()))
                .is_ok()
            {
                break;
            }
            cap -= 1;
        }
        let enumerated = sets.len();
        sets.extend(sample_subsets(&trunc, 500, 9, 7));
        for w in &sets {
            assert!(w.len() <= 9);
            let s = subset_stats(&trunc, w).unwrap();
            let edge_count = s.volume == 2 * s.inner_edges + s.edge_boundary;
            let identity = harm_identity_residual(&s) == int(0);
            let bound = int(s.edge_boundary as i64) >= boundary_lower_bound(&s, q).unwrap();
            if !(edge_count && identity && bound) {
                failures.push((name, w.clone()));
            }
        }
        total += sets.len();
        parts.push(format!(
            "{name}: {enumerated} through center (size <= {cap}) + {} samples",
            sets.len() - enumerated
        ));
    }
    let elapsed = start.elapsed();
    outcome(
        failures.is_empty() && total >= 1000 && elapsed < Duration::from_secs(60),
        format!(
            "{total} subsets, {} failures, {:.1}s; {}",
            failures.len(),
            elapsed.as_secs_f64(),
            parts.join("; ")
        ),
    )
}

fn criterion_2() -> Outcome {
    let mut mismatches = Vec::new();
    let mut recursion_from_one = true;
    let mut bfs_ok = true;
    for (p, q) in [(6, 6), (5, 6), (4, 5), (4, 6), (6, 3), (4, 4), (3, 6)] {
        let trunc = generate_gpq(p, q, 8, BUDGET).unwrap();
        let series = sphere_series(&trunc).unwrap();
        assert!(series.trusted_radius() >= 8);
        let spheres = &series.spheres[..9];
        if bfs_spheres(&trunc, 8) != spheres {
            bfs_ok = false;
        }
        // q = 5 has no closed form; the BFS recount above is its oracle.
        if let Ok(sigma) = sigma_recursion(p, q, 9) {
            let t = tessellab::growth::doubled_tau(p, q).unwrap() as i128;
            recursion_from_one &= (1..7)
                .all(|n| spheres[n + 2] as i128 == t * spheres[n + 1] as i128 - spheres[n] as i128);
            let first = (0..9).find(|&n| BigInt::from(spheres[n]) != sigma[n]);
            if let Some(n) = first {
                mismatches.push(format!(
                    "({p},{q}) n={n}: sphere {} vs sigma {}",
                    spheres[n], sigma[n]
                ));
            }
        }
    }
    outcome(
        mismatches.is_empty() && bfs_ok,
        format!(
            "BFS recount agrees: {bfs_ok}; true spheres satisfy the recursion from n = 1: {recursion_from_one}; sigma mismatches: {}",
            if mismatches.is_empty() { "none".to_string() } else { mismatches.join(", ") }
        ),
    )
}

fn criterion_3() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut pairs = 0;
    for q in [3u32, 4, 6] {
        for p in 3u32..=10 {
            if (p - 2) * (q - 2) <= 4 {
                continue;
            }
            let sigma = sigma_recursion(p, q, 42).unwrap();
            let ratio = (big_to_f64(&sigma[41]) / big_to_f64(&sigma[40])).ln();
            worst = worst.max((ratio - mu_gpq(p, q).unwrap()).abs());
            pairs += 1;
        }
    }
    let mu56 = mu_gpq(5, 6).unwrap();
    let mu66 = mu_gpq(6, 6).unwrap();
    let e56 = (mu56 - (2.0 + 3f64.sqrt()).ln()).abs();
    let e66 = (mu66 - ((5.0 + 21f64.sqrt()) / 2.0).ln()).abs();
    let printed = (mu66 - 1.5668).abs();
    outcome(
        worst < GROWTH_RATIO_TOL && e56 < GROWTH_CONSTANT_TOL && e66 < GROWTH_CONSTANT_TOL && printed < DECIMAL_TOL,
        format!(
            "{pairs} hyperbolic pairs, worst |ratio_40 - mu| = {worst:.3e} (< {GROWTH_RATIO_TOL}); mu(5,6) err {e56:.1e}, mu(6,6) = {mu66:.10} err {e66:.1e}, vs 1.5668: {printed:.1e}"
        ),
    )
}

fn criterion_4() -> Outcome {
    let half = gpq_combinatorial_bound(6, 6) == ratio(1, 2);
    let hjl = (hjl_exact(6, 6).unwrap() - 1.0 / 3f64.sqrt()).abs();
    let mut grid_ok = true;
    let mut grid = 0;
    for p in 3u32..=12 {
        for q in 3u32..=12 {
            if (p - 2) * (q - 2) <= 4 {
                continue;
            }
            grid += 1;
            grid_ok &=
                to_f64(gpq_combinatorial_bound(p, q)) <= hjl_exact(p, q).unwrap() + IDENTITY_TOL;
        }
    }
    let mut trees_ok = true;
    for p in 3u32..=12 {
        let trunc = generate_tree(p, 3, BUDGET).unwrap();
        let profile = curvature_constants(&trunc).unwrap();
        let b = cheeger_bounds(&profile, FaceDegree::Infinite).unwrap();
        trees_ok &= b.physical == Some(int(p as i64 - 2))
            && b.combinatorial == Some(ratio(p as i64 - 2, p as i64));
    }
    outcome(
        half && hjl < IDENTITY_TOL && grid_ok && trees_ok,
        format!(
            "G66 bound = 1/2: {half}; |HJL(6,6) - 1/sqrt3| = {hjl:.1e}; bound <= HJL on {grid} pairs: {grid_ok}; tree bounds p-2, (p-2)/p for p = 3..12: {trees_ok}"
        ),
    )
}

fn criterion_5() -> Outcome {
    let trunc = load("t3_r8.json");
    let report = exact_cheeger_search(&trunc, 10, None, None).unwrap();
    let sizes: Vec<usize> = report.per_size.iter().map(|s| s.size).collect();
    let exact = report
        .per_size
        .iter()
        .all(|s| s.physical == ratio(s.size as i64 + 2, s.size as i64) && s.physical >= int(1));
    outcome(
        exact && sizes == (1..=10).collect::<Vec<_>>(),
        format!(
            "{} subsets; sizes {sizes:?}; min |dW|/|W| = (k+2)/k for each: {exact}",
            report.subsets
        ),
    )
}

fn criterion_6() -> Outcome {
    let trunc = load("g66_r6.json");
    let profile = curvature_constants(&trunc).unwrap();
    let report = spectral_report(
        &trunc,
        &profile,
        LaplacianKind::Combinatorial,
        1..=3,
        LanczosOptions::default(),
    )
    .unwrap();
    let lower = report.bounds.get(FUJIWARA_LOWER).unwrap_or(f64::NAN);
    let upper = report.bounds.get(CURVATURE_UPPER).unwrap_or(f64::NAN);
    let mckean = report.bounds.get(MCKEAN_LOWER).unwrap_or(f64::NAN);
    let (s3, s7, s21) = (3f64.sqrt(), 7f64.sqrt(), 21f64.sqrt());
    let want_lower = 1.0 - (2.0f64 / 3.0).sqrt();
    let want_upper = 1.0 - 2.0 * (s3 + s7) / (7.0 + s21);
    let want_mckean = 1.0 - s3 / 2.0;
    let interval = report.interval;
    let ok = (lower - want_lower).abs() < DECIMAL_TOL
        && (upper - want_upper).abs() < DECIMAL_TOL
        && (mckean - want_mckean).abs() < DECIMAL_TOL
        && interval == Some((lower, upper));
    outcome(
        ok,
        format!(
            "lower {lower:.6} (0.1835), upper {upper:.6} (0.2441), McKean {mckean:.6} (0.1340), interval {interval:?}"
        ),
    )
}

fn criterion_7() -> Outcome {
    let mut worst: f64 = 0.0;
    for p in 3u32..=10 {
        let sharp = 1.0 - 2.0 * ((p - 1) as f64).sqrt() / p as f64;
        let lower = fujiwara_lower((p - 2) as f64 / p as f64);
        let upper = fujiwara_upper(((p - 1) as f64).ln());
        // Through the module pipeline on a generated tree.
        let trunc = generate_tree(p, 2, BUDGET).unwrap();
        let profile = curvature_constants(&trunc).unwrap();
        let bounds = closed_form_bounds(&bound_inputs(&trunc, &profile));
        for x in [
            lower,
            upper,
            vertex_degree_upper(p),
            bounds.get(FUJIWARA_LOWER).unwrap_or(f64::NAN),
            bounds.get(FUJIWARA_UPPER).unwrap_or(f64::NAN),
            bounds.get(VERTEX_DEGREE_UPPER).unwrap_or(f64::NAN),
        ] {
            worst = worst.max((x - sharp).abs());
        }
    }
    outcome(
        worst < IDENTITY_TOL,
        format!("p = 3..10, largest deviation from 1 - 2 sqrt(p-1)/p: {worst:.1e}"),
    )
}

/// Dense combinatorial Dirichlet Laplacian on `B_r`, built from neighbour
/// lists, symmetrized as `D^{-1/2} (D - A) D^{-1/2}`.
fn dense_dirichlet(trunc: &Truncation, r: u32) -> DMatrix<f64> {
    let ball = trunc.ball(r);
    let pos = |v: VertexId| ball.iter().position(|&x| x == v);
    let n = ball.len();
    let map = trunc.map();
    let mut m = DMatrix::zeros(n, n);
    for (i, &v) in ball.iter().enumerate() {
        m[(i, i)] = 1.0;
        for &u in map.neighbors(v) {
            if let Some(j) = pos(u) {
                let dv = map.degree(v) as f64;
                let du = map.degree(u) as f64;
                m[(i, j)] = -1.0 / (dv * du).sqrt();
            }
        }
    }
    m
}

fn criterion_8() -> Outcome {
    let trunc = generate_tree(3, 13, BUDGET).unwrap();
    let values: Vec<f64> = dirichlet_series(
        &trunc,
        LaplacianKind::Combinatorial,
        1..=12,
        LanczosOptions::default(),
    )
    .unwrap()
    .iter()
    .map(|d| d.lambda0)
    .collect();
    let decreasing = values.windows(2).all(|w| w[1] < w[0]);
    let floor = 1.0 - 2.0 * 2f64.sqrt() / 3.0;
    let above = values.iter().all(|&x| x >= floor);
    let dense = SymmetricEigen::new(dense_dirichlet(&trunc, 1))
        .eigenvalues
        .min();
    let b1 = 1.0 - 1.0 / 3f64.sqrt();
    let frozen: Value = serde_json::from_str(
        &std::fs::read_to_string(fixture("oracles/t3_dirichlet.json")).unwrap(),
    )
    .unwrap();
    let frozen: Vec<f64> = frozen["values"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v["lambda0"].as_f64().unwrap())
        .collect();
    let frozen_err = values
        .iter()
        .zip(&frozen)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    outcome(
        decreasing
            && above
            && (values[0] - b1).abs() < SOLVER_TOL
            && (dense - b1).abs() < SOLVER_TOL
            && frozen.len() == 12
            && frozen_err < SOLVER_TOL,
        format!(
            "strictly decreasing: {decreasing}; all >= {floor:.6}: {above}; B_1 = {:.12} (dense {dense:.12}); n = 12: {:.12}; max deviation from frozen oracle {frozen_err:.1e}",
            values[0], values[11]
        ),
    )
}

fn criterion_9() -> Outcome {
    let start = Instant::now();
    let trihex = load("trihex_r6.json");
    let map = trihex.map();
    let hexagon: Vec<VertexId> = (0..map.face_count() as u32)
        .filter(|&f| trihex.face_degree(f) == Some(FaceDegree::Finite(6)))
        .map(|f| map.face_vertices(f).collect::<Vec<_>>())
        .find(|vs| {
            vs.iter().all(|&v| {
                trihex.is_interior(v) && map.neighbors(v).iter().all(|&u| trihex.is_interior(u))
            })
        })
        .expect("hexagon with interior neighbourhood");
    let search = find_finitely_supported_eigenfunctions(&trihex, &hexagon).unwrap();
    let one = BigRational::from_integer(1.into());
    let hex_ok = search.certificates.len() == 1 && {
        let c = &search.certificates[0];
        let value = |v: VertexId| &c.values[c.support.iter().position(|&x| x == v).unwrap()];
        c.eigenvalue == BigRational::new(3.into(), 2.into())
            && c.support.len() == 6
            && (0..6).all(|i| {
                let (a, b) = (value(hexagon[i]), value(hexagon[(i + 1) % 6]));
                *a == -b.clone() && (*a == one || *b == one)
            })
            && verify_certificate(&trihex, c).unwrap()
    };
    let g66 = generate_gpq(6, 6, 8, BUDGET).unwrap();
    let g66_search = find_finitely_supported_eigenfunctions(&g66, &g66.ball(4)).unwrap();
    let t3 = load("t3_r8.json");
    let t3_search = find_finitely_supported_eigenfunctions(&t3, &t3.ball(4)).unwrap();
    let elapsed = start.elapsed();
    outcome(
        hex_ok
            && g66_search.invariant_dimension == 0
            && t3_search.invariant_dimension == 0
            && elapsed < Duration::from_secs(300),
        format!(
            "hexagon: one certificate, lambda = 3/2, alternating, exact residual 0: {hex_ok}; G66 B_4 ({} vertices) dimension {}; T3 B_4 dimension {}; {:.1}s",
            g66_search.region.len(),
            g66_search.invariant_dimension,
            t3_search.invariant_dimension,
            elapsed.as_secs_f64()
        ),
    )
}

fn criterion_10() -> Outcome {
    let g66 = load("g66_r6.json");
    let ball = g66.ball(3);
    let phys = LaplacianOperator::assemble(&g66, LaplacianKind::Physical, &ball).unwrap();
    let comb = LaplacianOperator::assemble(&g66, LaplacianKind::Combinatorial, &ball).unwrap();
    let worst = (phys.to_dense() - comb.to_dense() * 6.0).abs().max();
    let t3 = load("t3_r8.json");
    let profile = curvature_constants(&t3).unwrap();
    let bounds = closed_form_bounds(&bound_inputs(&t3, &profile));
    let dodziuk = bounds.get(DODZIUK_LOWER).unwrap_or(f64::NAN);
    let bottom = 3.0 - 2.0 * 2f64.sqrt();
    outcome(
        worst < IDENTITY_TOL && (dodziuk - 1.0 / 6.0).abs() < IDENTITY_TOL && dodziuk <= bottom + IDENTITY_TOL,
        format!(
            "G66 B_3 ({} vertices) max |L_phys - 6 L_comb| = {worst:.1e}; T3 Dodziuk {dodziuk:.12} <= 3 - 2 sqrt2 = {bottom:.12}",
            ball.len()
        ),
    )
}

/// Rotation-file mutants: swapped adjacent rotation entries at interior
/// vertices, and single entries redirected to another vertex.
fn mutants(text: &str, per_kind: usize) -> Vec<(String, String)> {
    let doc: Value = serde_json::from_str(text).unwrap();
    let vertices = doc["vertices"].as_array().unwrap();
    let n = vertices.len();
    let tree = doc["host"]["family"] == "tree";
    let interior: Vec<u64> = match doc["interior"].as_array() {
        Some(ids) => ids.iter().map(|v| v.as_u64().unwrap()).collect(),
        None => (0..n as u64).collect(),
    };
    let mut out = Vec::new();
    // Swaps at a degree-2 vertex or anywhere in a tree give an isomorphic map.
    if !tree {
        for &v in interior
            .iter()
            .filter(|&&v| vertices[v as usize]["neighbors"].as_array().unwrap().len() >= 3)
            .take(per_kind)
        {
            let mut m = doc.clone();
            let rot = m["vertices"][v as usize]["neighbors"]
                .as_array_mut()
                .unwrap();
            rot.swap(0, 1);
            out.push((format!("swap at {v}"), serde_json::to_string(&m).unwrap()));
        }
    }
    for &v in interior.iter().take(per_kind) {
        let mut m = doc.clone();
        let rot = m["vertices"][v as usize]["neighbors"]
            .as_array_mut()
            .unwrap();
        let old = rot[0].as_u64().unwrap();
        let new = (old + 1 + (v % 5)) % n as u64;
        let new = if new == v { (new + 1) % n as u64 } else { new };
        rot[0] = new.into();
        out.push((
            format!("redirect {v}: {old} -> {new}"),
            serde_json::to_string(&m).unwrap(),
        ));
    }
    out
}

fn criterion_11() -> Outcome {
    let files = [
        "g66_r6.json",
        "g37_r9.json",
        "g44_r6.json",
        "g54_r5.json",
        "trihex_r6.json",
        "t3_r8.json",
        "cube.json",
        "trihex_missing_edge.json",
    ];
    let exe = env!("CARGO_BIN_EXE_tessellab");
    let mut clean = Vec::new();
    for name in files {
        let status = Command::new(exe)
            .arg("verify")
            .arg(fixture(name))
            .output()
            .unwrap()
            .status;
        if status.code() != Some(0) {
            clean.push(format!("{name} exited {:?}", status.code()));
        }
    }
    let mut total = 0;
    let mut survivors = Vec::new();
    let mut rejected_by_validation = 0;
    for name in files {
        let text = std::fs::read_to_string(fixture(name)).unwrap();
        let per_kind = if name == "g66_r6.json" { 2 } else { 3 };
        for (label, mutant) in mutants(&text, per_kind) {
            total += 1;
            match parse_truncation(&mutant) {
                Err(_) => rejected_by_validation += 1,
                Ok(trunc) => {
                    if run_verify(&trunc, Profile::Small, Tolerances::default(), 0).passed() {
                        survivors.push(format!("{name}: {label}"));
                    }
                }
            }
        }
    }
    outcome(
        clean.is_empty() && survivors.is_empty() && total >= 20,
        format!(
            "{} fixtures verify with exit 0{}; {total} mutants, {rejected_by_validation} rejected by validation, {} by verification, survivors {survivors:?}",
            files.len() - clean.len(),
            if clean.is_empty() { String::new() } else { format!(" (failures: {clean:?})") },
            total - rejected_by_validation - survivors.len()
        ),
    )
}

fn main() {
    // An optional numeric argument runs a single criterion.
    let filter: Option<u32> = std::env::args().skip(1).find_map(|a| a.parse().ok());
    let criteria: [Criterion; 11] = [
        (1, "exact identity suite", criterion_1),
        (2, "sphere counts against the sigma recursion", criterion_2),
        (3, "growth closed forms", criterion_3),
        (4, "Cheeger reproduction", criterion_4),
        (5, "brute-force Cheeger oracle on T3", criterion_5),
        (6, "spectral interval reproduction for G66", criterion_6),
        (7, "Fujiwara sharpness on trees", criterion_7),
        (8, "Dirichlet monotone convergence on T3", criterion_8),
        (9, "eigenfunction certificates", criterion_9),
        (10, "physical and combinatorial consistency", criterion_10),
        (11, "verify on fixtures and mutation test", criterion_11),
    ];
    let mut unexpected = Vec::new();
    for (id, title, run) in criteria {
        if filter.is_some_and(|f| f != id) {
            continue;
        }
        let start = Instant::now();
        let result = run();
        let known = KNOWN_FAILURES.contains(&id);
        let tag = match (result.pass, known) {
            (true, _) => "PASS",
            (false, true) => "FAIL (known)",
            (false, false) => "FAIL",
        };
        println!(
            "criterion {id:>2} {tag}: {title} [{:.1}s] {}",
            start.elapsed().as_secs_f64(),
            result.detail
        );
        if !result.pass && !known {
            unexpected.push(id);
        }
        if result.pass && known {
            println!("criterion {id:>2} now passes; remove it from KNOWN_FAILURES");
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
