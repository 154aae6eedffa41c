//! Enumerate the models of a system over small algebras and report the
//! shapes of their reducts.
//!
//! `cargo run --release --example classify -- BDNF-EQ 4`

use belnap::engine::classify_models;
use belnap::systems::system;

fn main() -> belnap::Result<()> {
    let mut args = std::env::args().skip(1);
    let name = args.next().unwrap_or_else(|| "BDNF".into());
    let size = args.next().and_then(|a| a.parse().ok()).unwrap_or(4);
    let report = classify_models(&system(&name)?, size)?;
    print!("{report}");
    Ok(())
}
