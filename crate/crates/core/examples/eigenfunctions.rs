//! Exact finitely supported eigenfunctions: present on the trihexagonal
//! tiling, absent on G(6,6).

use tessellab::generators::{generate_gpq, generate_trihex};
use tessellab::spectrum::{find_finitely_supported_eigenfunctions, verify_certificate};

fn main() -> tessellab::Result<()> {
    let trihex = generate_trihex(6, 1_000_000)?;
    let search = find_finitely_supported_eigenfunctions(&trihex, &trihex.ball(3))?;
    println!(
        "trihexagonal B_3: dimension {}, unresolved {}",
        search.invariant_dimension, search.unresolved_dimension
    );
    for c in &search.certificates {
        let values: Vec<String> = c.values.iter().map(|x| x.to_string()).collect();
        println!(
            "  lambda = {} on {:?} with values {:?}: verified {}",
            c.eigenvalue,
            c.support,
            values,
            verify_certificate(&trihex, c)?
        );
    }

    let g66 = generate_gpq(6, 6, 6, 1_000_000)?;
    let search = find_finitely_supported_eigenfunctions(&g66, &g66.ball(2))?;
    println!("G(6,6) B_2: dimension {}", search.invariant_dimension);
    Ok(())
}
