//! Canonical printing with minimal parentheses.

use super::{Formula, Pred, Rule, Term};
use std::fmt;

const JOIN: u8 = 1;
const MEET: u8 = 2;
const UNARY: u8 = 3;

fn write_term(t: &Term, ctx: u8, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match t {
        Term::Var(v) => f.write_str(v.name()),
        Term::Const(c) => f.write_str(c.symbol()),
        Term::Neg(a) => {
            f.write_str("~")?;
            write_term(a, UNARY, f)
        }
        Term::Meet(a, b) => {
            if ctx > MEET {
                f.write_str("(")?;
            }
            write_term(a, MEET, f)?;
            f.write_str(" /\\ ")?;
            write_term(b, UNARY, f)?;
            if ctx > MEET {
                f.write_str(")")?;
            }
            Ok(())
        }
        Term::Join(a, b) => {
            if ctx > JOIN {
                f.write_str("(")?;
            }
            write_term(a, JOIN, f)?;
            f.write_str(" \\/ ")?;
            write_term(b, MEET, f)?;
            if ctx > JOIN {
                f.write_str(")")?;
            }
            Ok(())
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_term(self, JOIN, f)
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.pred() {
            Pred::Eq => write!(f, "{} = {}", self.args()[0], self.args()[1]),
            p => write!(f, "{}({})", p.name(), self.args()[0]),
        }
    }
}

fn sorted(side: &std::collections::BTreeSet<Formula>) -> Vec<String> {
    let mut v: Vec<String> = side.iter().map(|f| f.to_string()).collect();
    v.sort();
    v
}

/// Premises and conclusions are each printed in lexicographic order of
/// their text, so equal rules always print identically.
impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prem = sorted(self.premises()).join(", ");
        let conc = sorted(self.conclusions()).join(" | ");
        match (prem.is_empty(), conc.is_empty()) {
            (true, true) => f.write_str("|-"),
            (true, false) => write!(f, "|- {conc}"),
            (false, true) => write!(f, "{prem} |-"),
            (false, false) => write!(f, "{prem} |- {conc}"),
        }
    }
}

/// Canonical text of a rule.
pub fn print_rule(r: &Rule) -> String {
    r.to_string()
}

#[cfg(test)]
mod tests {
    use super::super::{parse_rule, Constant, SigSpec};
    use super::*;

    fn full() -> SigSpec {
        SigSpec::new(Pred::ALL, Constant::ALL).unwrap()
    }

    #[test]
    fn golden_prints() {
        let sig = full();
        for (input, expected) in [
            ("E(x) |- T(x)", "E(x) |- T(x)"),
            ("|-", "|-"),
            ("T(~x \\/ y), E(x) |- T(y)", "E(x), T(~x \\/ y) |- T(y)"),
            ("T((x /\\ y)) |- T(x)", "T(x /\\ y) |- T(x)"),
            ("T(x /\\ (y /\\ z)) |-", "T(x /\\ (y /\\ z)) |-"),
            ("T((x \\/ y) /\\ z) |-", "T((x \\/ y) /\\ z) |-"),
            ("|- ~(x /\\ y) = ~x \\/ ~y", "|- ~(x /\\ y) = ~x \\/ ~y"),
            ("|- T(x) | NF(~x)", "|- NF(~x) | T(x)"),
            ("|- #f = #f", "|- ~#t = ~#t"),
            ("x <= y |-", "x \\/ y = y |-"),
            ("T(x \\/ (y \\/ z)) |-", "T(x \\/ (y \\/ z)) |-"),
        ] {
            let r = parse_rule(input, &sig).unwrap();
            assert_eq!(print_rule(&r), expected, "input {input}");
            // printing a parse of canonical text is a fixpoint
            let again = parse_rule(expected, &sig).unwrap();
            assert_eq!(print_rule(&again), expected);
            assert_eq!(again, r);
        }
    }
}
