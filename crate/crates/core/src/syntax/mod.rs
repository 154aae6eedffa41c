//! Terms, formulas and rules of the relational De Morgan signature.
//!
//! The algebraic signature is fixed: binary meet (`/\`), binary join (`\/`),
//! unary negation (`~`), plus an optional selection of the truth-value
//! constants `#t`, `#n`, `#b`. The relational signature is any non-empty
//! subset of the predicates `T`, `E`, `NF` (unary) and `=` (binary).
//!
//! Rules are multiple-conclusion in general: premises are read conjunctively
//! and conclusions disjunctively. A rule with exactly one conclusion is an
//! ordinary single-conclusion rule.

mod parse;
mod print;

pub use parse::{parse_formula, parse_rule, parse_term, ParseError, ParseErrorKind};
pub use print::print_rule;

use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

/// Truth-value constants that may be added to the algebraic signature.
///
/// `f` is never a primitive constant: `#f` is read as `~#t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Constant {
    #[serde(rename = "#t")]
    Top,
    #[serde(rename = "#n")]
    Neither,
    #[serde(rename = "#b")]
    Both,
}

impl Constant {
    pub const ALL: [Constant; 3] = [Constant::Top, Constant::Neither, Constant::Both];

    pub fn symbol(self) -> &'static str {
        match self {
            Constant::Top => "#t",
            Constant::Neither => "#n",
            Constant::Both => "#b",
        }
    }

    pub fn from_symbol(s: &str) -> Option<Constant> {
        match s {
            "#t" => Some(Constant::Top),
            "#n" => Some(Constant::Neither),
            "#b" => Some(Constant::Both),
            _ => None,
        }
    }
}

impl fmt::Display for Constant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// Relation symbols.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Pred {
    /// Truth: `{t, b}` in the four-element matrix.
    T,
    /// Exact truth: `{t}`.
    E,
    /// Non-falsity: `{t, n}`.
    NF,
    /// Material equivalence, written infix as `=`.
    #[serde(rename = "eq")]
    Eq,
}

impl Pred {
    pub const ALL: [Pred; 4] = [Pred::T, Pred::E, Pred::NF, Pred::Eq];

    pub fn arity(self) -> usize {
        match self {
            Pred::Eq => 2,
            _ => 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Pred::T => "T",
            Pred::E => "E",
            Pred::NF => "NF",
            Pred::Eq => "eq",
        }
    }

    pub fn from_name(s: &str) -> Option<Pred> {
        match s {
            "T" => Some(Pred::T),
            "E" => Some(Pred::E),
            "NF" => Some(Pred::NF),
            "eq" | "=" => Some(Pred::Eq),
            _ => None,
        }
    }
}

impl fmt::Display for Pred {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A signature: which constants and which relation symbols are available.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SigSpec {
    constants: BTreeSet<Constant>,
    preds: BTreeSet<Pred>,
}

impl SigSpec {
    /// Builds a signature; the relational part must be non-empty.
    pub fn new(
        preds: impl IntoIterator<Item = Pred>,
        constants: impl IntoIterator<Item = Constant>,
    ) -> crate::Result<SigSpec> {
        let preds: BTreeSet<Pred> = preds.into_iter().collect();
        if preds.is_empty() {
            return Err(crate::Error::EmptyRelationalSignature);
        }
        Ok(SigSpec {
            constants: constants.into_iter().collect(),
            preds,
        })
    }

    pub fn preds(&self) -> &BTreeSet<Pred> {
        &self.preds
    }

    pub fn constants(&self) -> &BTreeSet<Constant> {
        &self.constants
    }

    pub fn has_pred(&self, p: Pred) -> bool {
        self.preds.contains(&p)
    }

    pub fn has_constant(&self, c: Constant) -> bool {
        self.constants.contains(&c)
    }

    /// True when every symbol of `other` is available here.
    pub fn includes(&self, other: &SigSpec) -> bool {
        other.preds.is_subset(&self.preds) && other.constants.is_subset(&self.constants)
    }

    /// Checks that a rule only uses symbols of this signature.
    pub fn admits(&self, rule: &Rule) -> crate::Result<()> {
        for f in rule.formulas() {
            if !self.has_pred(f.pred()) {
                return Err(crate::Error::SignatureMismatch(format!(
                    "predicate {} is not in the signature",
                    f.pred()
                )));
            }
            for t in f.args() {
                for c in t.constants() {
                    if !self.has_constant(c) {
                        return Err(crate::Error::SignatureMismatch(format!(
                            "constant {c} is not in the signature"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for SigSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let preds: Vec<&str> = self.preds.iter().map(|p| p.name()).collect();
        write!(f, "{{{}}}", preds.join(", "))?;
        if !self.constants.is_empty() {
            let cs: Vec<&str> = self.constants.iter().map(|c| c.symbol()).collect();
            write!(f, " + {{{}}}", cs.join(", "))?;
        }
        Ok(())
    }
}

/// A variable name.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(Arc<str>);

impl Var {
    pub fn new(name: &str) -> Var {
        Var(Arc::from(name))
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A term of the absolutely free algebra over the variables.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Var(Var),
    Const(Constant),
    Neg(Box<Term>),
    Meet(Box<Term>, Box<Term>),
    Join(Box<Term>, Box<Term>),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(Var::new(name))
    }

    pub fn constant(c: Constant) -> Term {
        Term::Const(c)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(t: Term) -> Term {
        Term::Neg(Box::new(t))
    }

    pub fn meet(a: Term, b: Term) -> Term {
        Term::Meet(Box::new(a), Box::new(b))
    }

    pub fn join(a: Term, b: Term) -> Term {
        Term::Join(Box::new(a), Box::new(b))
    }

    /// Variables occurring in the term.
    pub fn vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    pub(crate) fn collect_vars(&self, out: &mut BTreeSet<Var>) {
        match self {
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::Const(_) => {}
            Term::Neg(a) => a.collect_vars(out),
            Term::Meet(a, b) | Term::Join(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    pub fn constants(&self) -> BTreeSet<Constant> {
        let mut out = BTreeSet::new();
        self.visit(&mut |t| {
            if let Term::Const(c) = t {
                out.insert(*c);
            }
        });
        out
    }

    /// Pre-order traversal.
    pub fn visit<'a>(&'a self, f: &mut impl FnMut(&'a Term)) {
        f(self);
        match self {
            Term::Var(_) | Term::Const(_) => {}
            Term::Neg(a) => a.visit(f),
            Term::Meet(a, b) | Term::Join(a, b) => {
                a.visit(f);
                b.visit(f);
            }
        }
    }

    /// All subterms, including the term itself.
    pub fn subterms(&self) -> BTreeSet<Term> {
        let mut out = BTreeSet::new();
        self.visit(&mut |t| {
            out.insert(t.clone());
        });
        out
    }

    /// Nesting depth; variables and constants have depth 0.
    pub fn depth(&self) -> usize {
        match self {
            Term::Var(_) | Term::Const(_) => 0,
            Term::Neg(a) => 1 + a.depth(),
            Term::Meet(a, b) | Term::Join(a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    pub fn substitute(&self, s: &Substitution) -> Term {
        match self {
            Term::Var(v) => s.get(v).cloned().unwrap_or_else(|| self.clone()),
            Term::Const(_) => self.clone(),
            Term::Neg(a) => Term::neg(a.substitute(s)),
            Term::Meet(a, b) => Term::meet(a.substitute(s), b.substitute(s)),
            Term::Join(a, b) => Term::join(a.substitute(s), b.substitute(s)),
        }
    }
}

/// An atomic formula `R(t1, ..., tn)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Formula {
    pred: Pred,
    args: Vec<Term>,
}

impl Formula {
    pub fn new(pred: Pred, args: Vec<Term>) -> crate::Result<Formula> {
        if args.len() != pred.arity() {
            return Err(crate::Error::Arity {
                pred,
                expected: pred.arity(),
                found: args.len(),
            });
        }
        Ok(Formula { pred, args })
    }

    /// A unary atom. Panics if `pred` is the binary equality symbol.
    pub fn unary(pred: Pred, t: Term) -> Formula {
        assert_eq!(pred.arity(), 1, "{pred} is not unary");
        Formula {
            pred,
            args: vec![t],
        }
    }

    pub fn eq(a: Term, b: Term) -> Formula {
        Formula {
            pred: Pred::Eq,
            args: vec![a, b],
        }
    }

    pub fn pred(&self) -> Pred {
        self.pred
    }

    pub fn args(&self) -> &[Term] {
        &self.args
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        for t in &self.args {
            t.collect_vars(&mut out);
        }
        out
    }

    pub fn substitute(&self, s: &Substitution) -> Formula {
        Formula {
            pred: self.pred,
            args: self.args.iter().map(|t| t.substitute(s)).collect(),
        }
    }

    /// Same arguments under a different predicate of equal arity.
    pub fn with_pred(&self, pred: Pred) -> Formula {
        assert_eq!(pred.arity(), self.pred.arity());
        Formula {
            pred,
            args: self.args.clone(),
        }
    }
}

/// A rule `premises |- conclusions`.
///
/// Both sides are finite sets. Single-conclusion rules are the special case
/// of one conclusion; an empty conclusion set asserts that the premises are
/// never jointly satisfied.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rule {
    premises: BTreeSet<Formula>,
    conclusions: BTreeSet<Formula>,
}

impl Rule {
    pub fn new(
        premises: impl IntoIterator<Item = Formula>,
        conclusions: impl IntoIterator<Item = Formula>,
    ) -> Rule {
        Rule {
            premises: premises.into_iter().collect(),
            conclusions: conclusions.into_iter().collect(),
        }
    }

    pub fn single(premises: impl IntoIterator<Item = Formula>, conclusion: Formula) -> Rule {
        Rule::new(premises, [conclusion])
    }

    pub fn premises(&self) -> &BTreeSet<Formula> {
        &self.premises
    }

    pub fn conclusions(&self) -> &BTreeSet<Formula> {
        &self.conclusions
    }

    pub fn is_single_conclusion(&self) -> bool {
        self.conclusions.len() == 1
    }

    /// The conclusion of a single-conclusion rule.
    pub fn conclusion(&self) -> Option<&Formula> {
        if self.is_single_conclusion() {
            self.conclusions.iter().next()
        } else {
            None
        }
    }

    pub fn formulas(&self) -> impl Iterator<Item = &Formula> {
        self.premises.iter().chain(self.conclusions.iter())
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        for f in self.formulas() {
            for t in f.args() {
                t.collect_vars(&mut out);
            }
        }
        out
    }

    pub fn preds(&self) -> BTreeSet<Pred> {
        self.formulas().map(|f| f.pred()).collect()
    }

    pub fn constants(&self) -> BTreeSet<Constant> {
        let mut out = BTreeSet::new();
        for f in self.formulas() {
            for t in f.args() {
                out.extend(t.constants());
            }
        }
        out
    }

    /// Simultaneous substitution in every formula; the sides are re-deduplicated.
    pub fn apply_subst(&self, s: &Substitution) -> Rule {
        Rule::new(
            self.premises.iter().map(|f| f.substitute(s)),
            self.conclusions.iter().map(|f| f.substitute(s)),
        )
    }

    /// Replaces every atom via `f`, keeping the premise/conclusion split.
    pub fn map_formulas(&self, mut f: impl FnMut(&Formula) -> Formula) -> Rule {
        let premises: Vec<Formula> = self.premises.iter().map(&mut f).collect();
        Rule::new(premises, self.conclusions.iter().map(f))
    }

    /// Renames every occurrence of predicate `from` to `to` (same arity).
    pub fn rename_pred(&self, from: Pred, to: Pred) -> Rule {
        self.map_formulas(|f| {
            if f.pred() == from {
                f.with_pred(to)
            } else {
                f.clone()
            }
        })
    }
}

/// A substitution of terms for variables; identity outside its support.
#[derive(Clone, Debug, PartialEq, Eq, Default, PartialOrd, Ord, Hash)]
pub struct Substitution {
    map: BTreeMap<Var, Term>,
}

impl Substitution {
    pub fn new() -> Substitution {
        Substitution::default()
    }

    pub fn identity() -> Substitution {
        Substitution::default()
    }

    pub fn insert(&mut self, v: Var, t: Term) -> Option<Term> {
        self.map.insert(v, t)
    }

    pub fn with(mut self, v: &str, t: Term) -> Substitution {
        self.map.insert(Var::new(v), t);
        self
    }

    pub fn get(&self, v: &Var) -> Option<&Term> {
        self.map.get(v)
    }

    /// The explicitly listed support.
    pub fn support(&self) -> impl Iterator<Item = (&Var, &Term)> {
        self.map.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    /// A pure renaming of variables.
    pub fn renaming<'a>(pairs: impl IntoIterator<Item = (&'a str, &'a str)>) -> Substitution {
        Substitution {
            map: pairs
                .into_iter()
                .map(|(a, b)| (Var::new(a), Term::var(b)))
                .collect(),
        }
    }
}

impl FromIterator<(Var, Term)> for Substitution {
    fn from_iter<I: IntoIterator<Item = (Var, Term)>>(iter: I) -> Self {
        Substitution {
            map: iter.into_iter().collect(),
        }
    }
}

/// `r` with `s` applied simultaneously to every variable occurrence.
pub fn apply_subst(r: &Rule, s: &Substitution) -> Rule {
    r.apply_subst(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig_te() -> SigSpec {
        SigSpec::new([Pred::T, Pred::E, Pred::Eq], [Constant::Top]).unwrap()
    }

    #[test]
    fn substitution_is_simultaneous() {
        let r = parse_rule("E(x) |- T(x)", &sig_te()).unwrap();
        let s = Substitution::new().with("x", Term::meet(Term::var("y"), Term::var("z")));
        let out = apply_subst(&r, &s);
        assert_eq!(out.to_string(), "E(y /\\ z) |- T(y /\\ z)");

        let swap = Substitution::renaming([("x", "y"), ("y", "x")]);
        let r = parse_rule("T(x) |- T(x \\/ y)", &sig_te()).unwrap();
        assert_eq!(r.apply_subst(&swap).to_string(), "T(y) |- T(y \\/ x)");
    }

    #[test]
    fn substitution_into_constants() {
        let r = parse_rule("|- x = x", &sig_te()).unwrap();
        let s = Substitution::new().with("x", Term::neg(Term::constant(Constant::Top)));
        assert_eq!(r.apply_subst(&s).to_string(), "|- ~#t = ~#t");
    }

    #[test]
    fn identity_substitution_fixes_rules() {
        let r = parse_rule("E(x), T(~x \\/ y) |- T(y)", &sig_te()).unwrap();
        assert_eq!(r.apply_subst(&Substitution::identity()), r);
    }

    #[test]
    fn substitution_dedups_premises() {
        let r = parse_rule("T(x), T(y) |- T(x /\\ y)", &sig_te()).unwrap();
        let s = Substitution::renaming([("y", "x")]);
        let out = r.apply_subst(&s);
        assert_eq!(out.premises().len(), 1);
        assert_eq!(out.to_string(), "T(x) |- T(x /\\ x)");
    }

    #[test]
    fn signature_requires_a_predicate() {
        assert!(SigSpec::new([], []).is_err());
    }

    #[test]
    fn formula_arity_is_checked() {
        assert!(Formula::new(Pred::Eq, vec![Term::var("x")]).is_err());
        assert!(Formula::new(Pred::T, vec![Term::var("x")]).is_ok());
    }
}
