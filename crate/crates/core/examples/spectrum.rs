//! Dirichlet bottom eigenvalues on balls and the closed-form interval for the
//! bottom of the spectrum.

use tessellab::curvature::curvature_constants;
use tessellab::generators::{generate_gpq, generate_tree};
use tessellab::spectrum::{spectral_report, LanczosOptions, LaplacianKind};

fn main() -> tessellab::Result<()> {
    let g66 = generate_gpq(6, 6, 6, 1_000_000)?;
    let profile = curvature_constants(&g66)?;
    let report = spectral_report(
        &g66,
        &profile,
        LaplacianKind::Combinatorial,
        1..=3,
        LanczosOptions::default(),
    )?;
    println!("G(6,6) interval {:?}", report.interval);
    for d in &report.dirichlet {
        println!("  B_{}: {:.10}", d.radius, d.lambda0);
    }

    let t3 = generate_tree(3, 11, 1_000_000)?;
    let profile = curvature_constants(&t3)?;
    let report = spectral_report(
        &t3,
        &profile,
        LaplacianKind::Physical,
        1..=10,
        LanczosOptions::default(),
    )?;
    println!("T3 physical interval {:?}", report.physical_interval);
    for d in &report.dirichlet {
        println!("  B_{}: {:.10}", d.radius, d.lambda0);
    }
    Ok(())
}
