//! Sphere sizes of generated tessellations and the closed-form growth rates.

use tessellab::generators::generate_gpq;
use tessellab::growth::{mu_gpq, sigma_recursion, sphere_series};

fn main() -> tessellab::Result<()> {
    for (p, q) in [(6, 6), (5, 6), (7, 3), (4, 5)] {
        let trunc = generate_gpq(p, q, 7, 2_000_000)?;
        let series = sphere_series(&trunc)?;
        println!("G({p},{q}) spheres {:?}", series.spheres);
        if let Some(r) = series.ratio_estimates.last() {
            println!("  log(s_(n+1)/s_n) at the last radius: {r:.6}");
        }
        if let Ok(mu) = mu_gpq(p, q) {
            let sigma = sigma_recursion(p, q, 8)?;
            println!(
                "  mu = {mu:.6}, sigma recursion {:?}",
                sigma.iter().map(|x| x.to_string()).collect::<Vec<_>>()
            );
        }
    }
    Ok(())
}
