//! Count De Morgan and Kleene lattices by size.
//!
//! `cargo run --release --example census -- 7`

use belnap::algebra::enumerate_dm_lattices;

fn main() -> belnap::Result<()> {
    let max: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(6);
    println!("size  De Morgan  Kleene");
    for n in 1..=max {
        let all = enumerate_dm_lattices(n, false)?;
        let kleene = all.iter().filter(|a| a.is_kleene()).count();
        println!("{n:>4}  {:>9}  {kleene:>6}", all.len());
    }
    Ok(())
}
