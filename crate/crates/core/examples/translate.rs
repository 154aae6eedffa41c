//! Rewrite exact-truth atoms as equations with `#t` and compare verdicts.

use belnap::engine::{decide, translate_e_to_eq};
use belnap::structures::preset_structure;
use belnap::syntax::{parse_rule, Constant, Pred, SigSpec};

fn main() -> belnap::Result<()> {
    let sig = SigSpec::new(Pred::ALL, Constant::ALL)?;
    let source = preset_structure("BDE-EQ")?;
    let target = preset_structure("BD-EQ+#t")?;
    for text in [
        "E(x) |- T(x)",
        "E(x), T(~x \\/ y) |- T(y)",
        "T(x) |- E(x)",
        "E(x), x = y |- E(y)",
        "E(x \\/ y) |- E(x) | E(y) | E(~x \\/ ~y)",
    ] {
        let r = parse_rule(text, &sig)?;
        let t = translate_e_to_eq(&r, &target.signature())?;
        let (a, b) = (decide(&source, &r)?.valid, decide(&target, &t)?.valid);
        println!("{:<7} {r}\n{:<7} {t}\n", verdict(a), verdict(b));
        assert_eq!(a, b);
    }
    Ok(())
}

fn verdict(v: bool) -> &'static str {
    if v { "valid" } else { "invalid" }
}
