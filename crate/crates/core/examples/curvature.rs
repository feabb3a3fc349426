//! Vertex curvature and the constants a, b, c for several hosts.

use tessellab::curvature::curvature_constants;
use tessellab::generators::{generate_gpq, generate_tree, generate_trihex};

fn main() -> tessellab::Result<()> {
    let budget = 1_000_000;
    for (name, trunc) in [
        ("G(6,6)", generate_gpq(6, 6, 4, budget)?),
        ("G(3,7)", generate_gpq(3, 7, 6, budget)?),
        ("T3", generate_tree(3, 4, budget)?),
        ("trihexagonal", generate_trihex(4, budget)?),
    ] {
        let p = curvature_constants(&trunc)?;
        let show = |x: Option<tessellab::Rational>| x.map_or("none".into(), |r| r.to_string());
        println!(
            "{name}: kappa in [{}, {}], a = {}, b = {}, c = {}",
            p.inf,
            p.sup,
            show(p.a),
            p.b,
            show(p.c)
        );
    }
    Ok(())
}
