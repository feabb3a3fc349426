//! Curvature lower bounds on Cheeger constants against brute-force
//! estimates over small polygons.

use tessellab::curvature::curvature_constants;
use tessellab::generators::{generate_gpq, generate_tree};
use tessellab::isoperimetry::{exact_cheeger_search, hjl_exact};

fn main() -> tessellab::Result<()> {
    let g66 = generate_gpq(6, 6, 6, 1_000_000)?;
    let profile = curvature_constants(&g66)?;
    let report = exact_cheeger_search(&g66, 6, None, Some(&profile))?;
    let bounds = report.bounds.expect("G66 has curvature bounds");
    println!(
        "G(6,6): combinatorial bound {:?}",
        bounds.combinatorial.map(|r| r.to_string())
    );
    println!("G(6,6): exact constant {:.6}", hjl_exact(6, 6)?);
    if let Some(e) = &report.combinatorial {
        println!(
            "G(6,6): best polygon up to size 6: {} on {:?}",
            e.value, e.witness
        );
    }

    let t3 = generate_tree(3, 8, 1_000_000)?;
    let report = exact_cheeger_search(&t3, 8, None, None)?;
    for s in &report.per_size {
        println!("T3 size {}: min |dW|/|W| = {}", s.size, s.physical);
    }
    Ok(())
}
