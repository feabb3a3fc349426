use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use tessellab::curvature::curvature_constants;
use tessellab::format::{read_truncation, write_truncation};
use tessellab::generators::{
    generate_gpq, generate_tree, generate_trihex, DEFAULT_BUDGET_VERTICES,
};
use tessellab::growth::{bishop_probe, bp_lower_bound, mu_closed_forms, sphere_series};
use tessellab::isoperimetry::{exact_cheeger_search, hjl_exact};
use tessellab::report::{self, document, render};
use tessellab::spectrum::{
    find_finitely_supported_eigenfunctions, interior_radius, spectral_report, verify_certificate,
    LanczosOptions, LaplacianKind,
};
use tessellab::verify::{run_verify, Profile, Status, Tolerances};
use tessellab::{Error, FaceDegree, Family, Truncation};

/// Curvature, isoperimetry, growth and spectral estimates for locally
/// tessellating planar graphs.
#[derive(Parser)]
#[command(name = "tessellab", version)]
struct Cli {
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Vertex budget for generators.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET_VERTICES)]
    budget_vertices: usize,
    /// Tolerance profile: default, strict, loose, or a JSON file.
    #[arg(long, global = true, default_value = "default")]
    tol_profile: String,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenFamily {
    Gpq,
    Tree,
    Trihex,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Comb,
    Phys,
}

impl From<KindArg> for LaplacianKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Comb => LaplacianKind::Combinatorial,
            KindArg::Phys => LaplacianKind::Physical,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ProfileArg {
    Small,
    Full,
}

#[derive(Subcommand)]
enum Command {
    /// Write a truncation of a standard host to a rotation-system file.
    Generate {
        #[arg(long, value_enum)]
        family: GenFamily,
        /// Vertex degree (gpq, tree).
        #[arg(long)]
        p: Option<u32>,
        /// Face degree (gpq).
        #[arg(long)]
        q: Option<u32>,
        #[arg(long)]
        radius: u32,
        #[arg(long)]
        out: PathBuf,
    },
    /// Vertex and corner curvature, and the constants a, b, c.
    Curvature {
        file: PathBuf,
        /// List the curvature of every interior vertex.
        #[arg(long)]
        per_vertex: bool,
    },
    /// Cheeger bounds from curvature and brute-force estimates.
    Cheeger {
        file: PathBuf,
        /// Largest subset size enumerated.
        #[arg(long)]
        cap: usize,
    },
    /// Sphere sizes, growth estimates and closed forms.
    Growth {
        file: PathBuf,
        /// Compare against G_{p,q}, given as `p,q` (`q` may be `inf`).
        #[arg(long, value_parser = parse_compare)]
        compare: Option<(u32, FaceDegree)>,
    },
    /// Dirichlet bottom eigenvalues on balls and closed-form bounds.
    Spectrum {
        file: PathBuf,
        /// Ball radii `A:B` (inclusive); defaults to every interior ball.
        #[arg(long, value_parser = parse_radii)]
        radii: Option<(u32, u32)>,
        #[arg(long, value_enum, default_value = "comb")]
        kind: KindArg,
    },
    /// Exact search for finitely supported eigenfunctions in a ball.
    Eigenfunctions {
        file: PathBuf,
        #[arg(long)]
        region_radius: u32,
        /// Report only certificates with at most this many support vertices.
        #[arg(long)]
        max_support: Option<usize>,
    },
    /// Run every applicable check; exits 1 if any fails.
    Verify {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "small")]
        profile: ProfileArg,
    },
    /// Combined report of curvature, Cheeger, growth and spectral results.
    Report {
        file: PathBuf,
        /// Largest subset size for the Cheeger search.
        #[arg(long, default_value_t = 6)]
        cap: usize,
    },
}

fn parse_compare(s: &str) -> Result<(u32, FaceDegree), String> {
    let (p, q) = s.split_once(',').ok_or("expected p,q")?;
    let p: u32 = p.trim().parse().map_err(|e| format!("p: {e}"))?;
    let q = match q.trim() {
        "inf" | "infinity" => FaceDegree::Infinite,
        q => FaceDegree::Finite(q.parse().map_err(|e| format!("q: {e}"))?),
    };
    Ok((p, q))
}

fn parse_radii(s: &str) -> Result<(u32, u32), String> {
    let (a, b) = s.split_once(':').ok_or("expected A:B")?;
    let a: u32 = a.trim().parse().map_err(|e| format!("A: {e}"))?;
    let b: u32 = b.trim().parse().map_err(|e| format!("B: {e}"))?;
    if a > b {
        return Err(format!("empty range {a}:{b}"));
    }
    Ok((a, b))
}

/// Outcome of a command that ran to completion.
enum Outcome {
    Pass,
    Fail,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn emit(cli: &Cli, kind: &str, result: Value, text: impl FnOnce() -> String) {
    if cli.json {
        print!("{}", render(&document(kind, result)));
    } else {
        print!("{}", text());
    }
}

fn load(path: &Path) -> Result<Truncation, Error> {
    read_truncation(path)
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    let tol = Tolerances::load(&cli.tol_profile)?;
    match &cli.command {
        Command::Generate {
            family,
            p,
            q,
            radius,
            out,
        } => {
            let need = |x: Option<u32>, name: &str| {
                x.ok_or_else(|| Error::InvalidParameters(format!("--{name} is required")))
            };
            let trunc = match family {
                GenFamily::Gpq => {
                    generate_gpq(need(*p, "p")?, need(*q, "q")?, *radius, cli.budget_vertices)?
                }
                GenFamily::Tree => generate_tree(need(*p, "p")?, *radius, cli.budget_vertices)?,
                GenFamily::Trihex => generate_trihex(*radius, cli.budget_vertices)?,
            };
            write_truncation(out, &trunc)?;
            let summary = report::truncation_summary(&trunc);
            emit(cli, "generate", summary, || {
                format!(
                    "wrote {} ({} vertices, {} interior)\n",
                    out.display(),
                    trunc.vertex_count(),
                    trunc.interior_vertices().count()
                )
            });
            Ok(Outcome::Pass)
        }
        Command::Curvature { file, per_vertex } => {
            let trunc = load(file)?;
            let profile = curvature_constants(&trunc)?;
            let mut result = report::curvature_json(&profile);
            if !per_vertex {
                result.as_object_mut().unwrap().remove("vertices");
            }
            emit(cli, "curvature", result, || {
                let show = |x: Option<tessellab::Rational>| {
                    x.map_or("none".to_string(), |r| r.to_string())
                };
                let mut s = format!(
                    "interior vertices: {}\nsup kappa = {}\ninf kappa = {}\na = {}\nb = {}\nc = {}\nnonpositive corner curvature: {}\n",
                    profile.vertices.len(),
                    profile.sup,
                    profile.inf,
                    show(profile.a),
                    profile.b,
                    show(profile.c),
                    profile.nonpositive_corner_curvature
                );
                if *per_vertex {
                    for (v, k) in &profile.vertices {
                        s.push_str(&format!("{v}\t{k}\n"));
                    }
                }
                s
            });
            Ok(Outcome::Pass)
        }
        Command::Cheeger { file, cap } => {
            let trunc = load(file)?;
            let profile = curvature_constants(&trunc)?;
            let search = exact_cheeger_search(&trunc, *cap, None, Some(&profile))?;
            let exact = exact_combinatorial(&trunc);
            emit(cli, "cheeger", report::cheeger_json(&search, exact), || {
                let show = |x: Option<tessellab::Rational>| {
                    x.map_or("none".to_string(), |r| r.to_string())
                };
                let mut s = format!(
                    "subsets up to size {}: {} ({} skipped)\nbound |dW|/|W| >= {}\nbound |dW|/vol W >= {}\n",
                    search.cap,
                    search.subsets,
                    search.skipped,
                    show(search.bounds.and_then(|b| b.physical)),
                    show(search.bounds.and_then(|b| b.combinatorial)),
                );
                if let Some(e) = &search.physical {
                    s.push_str(&format!("smallest |dW|/|W| found: {}\n", e.value));
                }
                if let Some(e) = &search.combinatorial {
                    s.push_str(&format!("smallest |dW|/vol W found: {}\n", e.value));
                }
                if let Some(h) = exact {
                    s.push_str(&format!("exact combinatorial constant: {h:.12}\n"));
                }
                s.push_str(&format!("bound violations: {}\n", search.bound_violations));
                s
            });
            Ok(if search.bound_violations == 0 {
                Outcome::Pass
            } else {
                Outcome::Fail
            })
        }
        Command::Growth { file, compare } => {
            let trunc = load(file)?;
            let profile = curvature_constants(&trunc)?;
            let series = sphere_series(&trunc)?;
            let host = trunc.host();
            let forms = mu_closed_forms(host.p, host.q, Some(profile.b)).ok();
            let q = host.q.or(profile.max_face_degree);
            let bp = match (profile.a, q) {
                (Some(a), Some(q)) => bp_lower_bound(a, q).ok(),
                _ => None,
            };
            let target = compare.or_else(|| host.p.zip(host.q));
            let probe = match target {
                Some((p, q)) => Some(bishop_probe(&trunc, &series, p, q, tol.growth)?),
                None => None,
            };
            let consistent = probe.as_ref().is_none_or(|p| {
                !matches!(p.verdict, tessellab::growth::BishopVerdict::ViolatedAt(_))
            });
            emit(
                cli,
                "growth",
                report::growth_json(&series, forms.as_ref(), bp, probe.as_ref()),
                || {
                    let mut s = format!(
                        "trusted radius: {}\nspheres: {:?}\n",
                        series.trusted_radius(),
                        series.spheres
                    );
                    if let Some(r) = series.ratio_estimates.last() {
                        s.push_str(&format!("last ratio estimate: {r:.12}\n"));
                    }
                    if let Some(f) = &forms {
                        if let Some(mu) = f.gpq.or(f.tree) {
                            s.push_str(&format!("closed form mu: {mu:.12}\n"));
                        }
                    }
                    if let Some(bp) = bp {
                        s.push_str(&format!("growth lower bound: {bp:.12}\n"));
                    }
                    if let Some(p) = &probe {
                        s.push_str(&format!("comparison: {:?}\n", p.verdict));
                    }
                    s
                },
            );
            Ok(if consistent {
                Outcome::Pass
            } else {
                Outcome::Fail
            })
        }
        Command::Spectrum { file, radii, kind } => {
            let trunc = load(file)?;
            let profile = curvature_constants(&trunc)?;
            let radii: Vec<u32> = match radii {
                Some((a, b)) => (*a..=*b).collect(),
                None => (1..=interior_radius(&trunc).unwrap_or(0)).collect(),
            };
            let opts = LanczosOptions {
                tol: tol.solver,
                ..LanczosOptions::default()
            };
            let rep = spectral_report(&trunc, &profile, (*kind).into(), radii, opts)?;
            emit(cli, "spectrum", report::spectral_json(&rep), || {
                let mut s = String::new();
                for d in &rep.dirichlet {
                    s.push_str(&format!(
                        "B_{}\t{} vertices\tlambda0 = {:.12}\n",
                        d.radius, d.size, d.lambda0
                    ));
                }
                for b in rep.bounds.lower.iter().chain(&rep.bounds.physical_lower) {
                    s.push_str(&format!("lower {}: {:.12}\n", b.name, b.value));
                }
                for b in &rep.bounds.upper {
                    s.push_str(&format!("upper {}: {:.12}\n", b.name, b.value));
                }
                for u in &rep.bounds.unavailable {
                    s.push_str(&format!("unavailable {}: {}\n", u.name, u.reason));
                }
                if let Some((lo, hi)) = rep.interval {
                    s.push_str(&format!("interval: [{lo:.12}, {hi:.12}]\n"));
                }
                s
            });
            let ok = rep.consistent && rep.dirichlet_monotone && rep.dirichlet_above_lower;
            Ok(if ok { Outcome::Pass } else { Outcome::Fail })
        }
        Command::Eigenfunctions {
            file,
            region_radius,
            max_support,
        } => {
            let trunc = load(file)?;
            let region = trunc.ball(*region_radius);
            let mut search = find_finitely_supported_eigenfunctions(&trunc, &region)?;
            if let Some(m) = max_support {
                search.certificates.retain(|c| c.support.len() <= *m);
            }
            let verified = search
                .certificates
                .iter()
                .map(|c| verify_certificate(&trunc, c))
                .collect::<Result<Vec<bool>, Error>>()?;
            emit(
                cli,
                "eigenfunctions",
                report::eigenfunctions_json(&search, &verified),
                || {
                    let mut s = format!(
                    "region: B_{region_radius} ({} vertices)\ninvariant dimension: {}\nunresolved dimension: {}\n",
                    search.region.len(),
                    search.invariant_dimension,
                    search.unresolved_dimension
                );
                    for (c, ok) in search.certificates.iter().zip(&verified) {
                        s.push_str(&format!(
                            "lambda = {} on {} vertices: {}\n",
                            c.eigenvalue,
                            c.support.len(),
                            if *ok { "verified" } else { "NOT verified" }
                        ));
                    }
                    s
                },
            );
            Ok(if verified.iter().all(|&x| x) {
                Outcome::Pass
            } else {
                Outcome::Fail
            })
        }
        Command::Verify { file, profile } => {
            let trunc = load(file)?;
            let profile = match profile {
                ProfileArg::Small => Profile::Small,
                ProfileArg::Full => Profile::Full,
            };
            let suite = run_verify(&trunc, profile, tol, cli.seed);
            emit(cli, "verify", report::suite_json(&suite), || {
                let mut s = String::new();
                for c in &suite.checks {
                    let tag = match c.status {
                        Status::Pass => "pass",
                        Status::Fail => "FAIL",
                        Status::Skipped => "skip",
                    };
                    s.push_str(&format!("{tag}  {}", c.name));
                    if let (Some(e), Some(o)) = (&c.expected, &c.observed) {
                        s.push_str(&format!("  expected {e}, observed {o}"));
                    }
                    if let Some(d) = &c.detail {
                        s.push_str(&format!("  ({d})"));
                    }
                    s.push('\n');
                }
                s.push_str(&format!(
                    "{} passed, {} failed, {} skipped\n",
                    suite.count(Status::Pass),
                    suite.count(Status::Fail),
                    suite.count(Status::Skipped)
                ));
                s
            });
            Ok(if suite.passed() {
                Outcome::Pass
            } else {
                Outcome::Fail
            })
        }
        Command::Report { file, cap } => {
            let trunc = load(file)?;
            let profile = curvature_constants(&trunc)?;
            let cheeger = exact_cheeger_search(&trunc, *cap, None, Some(&profile))
                .map(|c| report::cheeger_json(&c, exact_combinatorial(&trunc)))
                .unwrap_or_else(|e| json!({ "error": e.to_string() }));
            let growth = sphere_series(&trunc)
                .map(|s| {
                    let host = trunc.host();
                    let forms = mu_closed_forms(host.p, host.q, Some(profile.b)).ok();
                    report::growth_json(&s, forms.as_ref(), None, None)
                })
                .unwrap_or_else(|e| json!({ "error": e.to_string() }));
            let radii = 1..=interior_radius(&trunc).unwrap_or(0);
            let opts = LanczosOptions {
                tol: tol.solver,
                ..LanczosOptions::default()
            };
            let spectrum =
                spectral_report(&trunc, &profile, LaplacianKind::Combinatorial, radii, opts)
                    .map(|r| report::spectral_json(&r))
                    .unwrap_or_else(|e| json!({ "error": e.to_string() }));
            let mut curvature = report::curvature_json(&profile);
            curvature.as_object_mut().unwrap().remove("vertices");
            let result = json!({
                "truncation": report::truncation_summary(&trunc),
                "curvature": curvature,
                "cheeger": cheeger,
                "growth": growth,
                "spectrum": spectrum,
            });
            // The combined report is JSON only.
            print!("{}", render(&document("report", result)));
            Ok(Outcome::Pass)
        }
    }
}

/// Exact combinatorial Cheeger constant of a hyperbolic `G_{p,q}` host.
fn exact_combinatorial(trunc: &Truncation) -> Option<f64> {
    let host = trunc.host();
    match (host.family, host.p, host.q) {
        (Family::Gpq, Some(p), Some(FaceDegree::Finite(q))) => hjl_exact(p, q).ok(),
        _ => None,
    }
}
