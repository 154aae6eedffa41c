//! Decide rules in a few defining structures and print counter-valuations.
//!
//! `cargo run --example decide`

use belnap::engine::decide;
use belnap::structures::preset_structure;
use belnap::syntax::{parse_rule, Constant, Pred, SigSpec};

fn main() -> belnap::Result<()> {
    let sig = SigSpec::new(Pred::ALL, Constant::ALL)?;
    let cases = [
        ("BD", "T(x), T(~x \\/ y) |- T(y)"),
        ("ETL", "E(x), E(~x \\/ y) |- E(y)"),
        ("K", "T(x), T(~x) |- T(y)"),
        ("LP", "|- T(x \\/ ~x)"),
        ("BDNF", "T(x), NF(~x \\/ y) |- NF(y)"),
        ("BD", "T(x \\/ y) |- T(x) | T(y)"),
        ("BD-EQ", "T(x), T(y) |- ~x \\/ y = y"),
    ];
    for (logic, text) in cases {
        let s = preset_structure(logic)?;
        let r = parse_rule(text, &sig)?;
        let v = decide(&s, &r)?;
        match v.counterexample {
            None => println!("{logic:<6} valid    {r}"),
            Some(c) => println!("{logic:<6} invalid  {r}   [{}]", c.describe(&s)),
        }
    }
    Ok(())
}
