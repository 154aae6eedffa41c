//! Find a derivation, check it, and show that a tampered copy is rejected.

use belnap::engine::{check_derivation, derive, DeriveOutcome};
use belnap::syntax::{parse_rule, Constant, Pred, SigSpec};
use belnap::systems::system;

fn main() -> belnap::Result<()> {
    let sig = SigSpec::new(Pred::ALL, Constant::ALL)?;
    let sys = system("BDE")?;
    let r = parse_rule("E(x /\\ (~x \\/ y)) |- E(y)", &sig)?;
    let DeriveOutcome::Found(d) = derive(&sys, &r, 8)? else {
        println!("no certificate within 8 rounds");
        return Ok(());
    };
    println!("{}", serde_json::to_string_pretty(&d).expect("serializable"));
    println!("checker accepts: {}", check_derivation(&sys, &d, &r));
    let mutants = d.edge_mutations();
    let accepted = mutants.iter().filter(|m| check_derivation(&sys, m, &r)).count();
    println!("{} single-edge mutations, {accepted} accepted", mutants.len());
    Ok(())
}
