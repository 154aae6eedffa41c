//! Leibniz congruences of every filter of DM4 and the reducts they give.

use belnap::algebra::{dm4_algebra, enumerate_filters};
use belnap::engine::describe;
use belnap::leibniz::{leibniz_unary, leibniz_unary_poly, reduct};
use belnap::structures::Structure;
use belnap::syntax::Pred;

fn main() -> belnap::Result<()> {
    let a = dm4_algebra();
    for f in enumerate_filters(&a, false) {
        let theta = leibniz_unary(&a, f.set)?;
        assert_eq!(theta, leibniz_unary_poly(&a, f.set)?);
        let s = Structure::with_unary(a.clone(), &[(Pred::T, f.set)], None)?;
        let (r, _) = reduct(&s)?;
        let classes: Vec<String> = theta
            .classes()
            .iter()
            .map(|c| c.iter().map(|&e| a.label(e)).collect::<Vec<_>>().join(""))
            .collect();
        println!("{:<28} classes {:<14} reduct {}", describe(&s), classes.join("|"), describe(&r));
    }
    Ok(())
}
