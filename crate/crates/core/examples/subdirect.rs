//! Embed each De Morgan lattice of a given size into a power of DM4 using
//! prime filters.

use belnap::algebra::{enumerate_dm_lattices, subdirect_embedding};

fn main() -> belnap::Result<()> {
    let n: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(5);
    for (i, a) in enumerate_dm_lattices(n, false)?.iter().enumerate() {
        let e = subdirect_embedding(a)?;
        let types: Vec<&str> = e.coordinate_types().into_iter().map(|t| t.map_or("?", |b| b.name())).collect();
        println!("#{i}: {} coordinates [{}], injective: {}", e.coordinates.len(), types.join(" "), e.is_injective(n));
        for x in a.elems() {
            let image: Vec<&str> = e.apply(x).into_iter().zip(&e.coordinates).map(|(y, h)| h.target.label(y)).collect();
            println!("    {} -> ({})", a.label(x), image.join(", "));
        }
    }
    Ok(())
}
