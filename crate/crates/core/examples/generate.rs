//! Builds truncations of the standard hosts and round-trips one through the
//! rotation-system file format.

use tessellab::format::{parse_truncation, to_json};
use tessellab::generators::{generate_gpq, generate_tree, generate_trihex};

fn main() -> tessellab::Result<()> {
    let budget = 1_000_000;
    for trunc in [
        generate_gpq(7, 3, 8, budget)?,
        generate_gpq(6, 6, 4, budget)?,
        generate_tree(3, 6, budget)?,
        generate_trihex(5, budget)?,
    ] {
        let host = trunc.host();
        println!(
            "{} p={} q={}: {} vertices, {} interior, radius {}",
            host.family,
            host.p.map_or("-".to_string(), |p| p.to_string()),
            host.q.map_or("-".to_string(), |q| q.to_string()),
            trunc.vertex_count(),
            trunc.interior_vertices().count(),
            trunc.radius()
        );
    }
    let trunc = generate_gpq(4, 4, 3, budget)?;
    let text = to_json(&trunc);
    assert_eq!(to_json(&parse_truncation(&text)?), text);
    println!("G44 radius 3 file: {} bytes", text.len());
    Ok(())
}
