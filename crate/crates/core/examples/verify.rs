//! Runs the verification suite on a generated truncation and prints the
//! JSON report.

use tessellab::generators::generate_gpq;
use tessellab::report::{document, render, suite_json};
use tessellab::verify::{run_verify, Profile, Tolerances};

fn main() -> tessellab::Result<()> {
    let trunc = generate_gpq(4, 5, 6, 1_000_000)?;
    let suite = run_verify(&trunc, Profile::Small, Tolerances::default(), 0);
    print!("{}", render(&document("verify", suite_json(&suite))));
    eprintln!("{} checks, {} failed", suite.checks.len(), suite.failed());
    Ok(())
}
