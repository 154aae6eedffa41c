//! Sweeps over all small models of an axiom system, checking that every
//! Leibniz reduct has the expected shape.

use crate::algebra::{enumerate_dm_lattices, is_filter, is_prime_filter, Congruence, FiniteAlgebra, Subset};
use crate::leibniz::{reduct_in, CongruenceLattice};
use crate::structures::{find_embedding, isomorphic_structures, preset_structure, BinaryRelation, CompiledRule, HoldsOptions, Relation, Structure};
use crate::syntax::{Constant, Pred};
use crate::systems::AxiomSystem;
use crate::{Error, Result};
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::fmt;

/// Largest algebra size accepted by [`classify_models`].
pub const MAX_CLASSIFY_SIZE: usize = 5;

/// A property every reduced model of a system must have.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    Kleene,
    Filter(Pred),
    PrimeFilter(Pred),
    /// The relation is `{top}` or empty.
    TopOrEmpty(Pred),
    /// The intersection of the two relations is `{top}` or empty.
    MeetTopOrEmpty(Pred, Pred),
    /// The first relation is the intersection of the other two.
    Intersection(Pred, Pred, Pred),
    EqIsIdentity,
    /// Non-trivial reducts embed into the defining preset.
    EmbedsInPreset,
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Shape::Kleene => write!(f, "Kleene algebra"),
            Shape::Filter(p) => write!(f, "{p} is a lattice filter"),
            Shape::PrimeFilter(p) => write!(f, "{p} is a prime filter"),
            Shape::TopOrEmpty(p) => write!(f, "{p} is {{top}} or empty"),
            Shape::MeetTopOrEmpty(p, q) => write!(f, "{p} and {q} meet in {{top}} or nothing"),
            Shape::Intersection(p, q, r) => write!(f, "{p} is {q} intersected with {r}"),
            Shape::EqIsIdentity => write!(f, "= is the identity"),
            Shape::EmbedsInPreset => write!(f, "embeds into the defining structure"),
        }
    }
}

/// The shape predicates checked for a system, by base name.
pub fn shapes_for(sys: &AxiomSystem) -> Vec<Shape> {
    use Pred::{Eq as Q, E, NF, T};
    use Shape::*;
    let base = sys.name.split('+').next().unwrap_or(&sys.name);
    match base {
        "BD-base" | "K-base" | "LP-base" => vec![Filter(T)],
        "ETL-base" => vec![Filter(E)],
        "BDE" => vec![Filter(T), TopOrEmpty(E)],
        "BDNF" => vec![Filter(T), Filter(NF), MeetTopOrEmpty(T, NF)],
        "KE" => vec![Kleene, Filter(T), TopOrEmpty(E)],
        "TNE-bridge" => vec![Filter(T), Filter(NF), Intersection(E, T, NF)],
        "EQ-core" => vec![EqIsIdentity],
        "BD-EQ" => vec![EqIsIdentity, Filter(T)],
        "ETL-EQ" => vec![EqIsIdentity, TopOrEmpty(E)],
        "BDE-EQ" => vec![EqIsIdentity, Filter(T), TopOrEmpty(E)],
        "BDNF-EQ" => vec![EqIsIdentity, Filter(T), Filter(NF), MeetTopOrEmpty(T, NF)],
        "MC-BD" | "MC-bridges" => vec![PrimeFilter(T)],
        "MC-ETL" => vec![EmbedsInPreset],
        _ => Vec::new(),
    }
    .into_iter()
    .filter(|s| match s {
        EqIsIdentity => sys.signature.has_pred(Q),
        _ => true,
    })
    .collect()
}

#[derive(Clone, Debug)]
pub struct Violation {
    pub structure: String,
    pub reduct: String,
    pub shape: Shape,
}

#[derive(Clone, Debug)]
pub struct ClassificationReport {
    pub system: String,
    pub max_size: usize,
    pub shapes: Vec<Shape>,
    /// Algebras swept, counting each constant interpretation separately.
    pub algebras: usize,
    pub structures: usize,
    pub models: usize,
    /// Non-trivial reducts up to isomorphism.
    pub reduced: Vec<Structure>,
    pub violations: Vec<Violation>,
}

impl ClassificationReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ClassificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "system      {}", self.system)?;
        writeln!(f, "max size    {}", self.max_size)?;
        writeln!(f, "algebras    {}", self.algebras)?;
        writeln!(f, "structures  {}", self.structures)?;
        writeln!(f, "models      {}", self.models)?;
        writeln!(f, "reduced     {} (non-trivial, up to isomorphism)", self.reduced.len())?;
        for s in &self.shapes {
            writeln!(f, "  shape     {s}")?;
        }
        writeln!(f, "violations  {}", self.violations.len())?;
        for v in self.violations.iter().take(10) {
            writeln!(f, "  {}: {} (reduct {})", v.shape, v.structure, v.reduct)?;
        }
        Ok(())
    }
}

/// One-line description of a structure: relations by element label.
pub fn describe(s: &Structure) -> String {
    let a = s.algebra();
    let set = |x: Subset| x.iter().map(|e| a.label(e)).collect::<Vec<_>>().join(",");
    let mut parts = vec![format!("size {}", a.size())];
    for (c, e) in a.constants() {
        parts.push(format!("{c}={}", a.label(*e)));
    }
    for (p, r) in s.relations() {
        match r {
            Relation::Unary(x) => parts.push(format!("{p}={{{}}}", set(*x))),
            Relation::Binary(b) => {
                let classes = if b.is_identity() { "identity".to_string() } else { format!("{} pairs", b.pairs().count()) };
                parts.push(format!("{p}: {classes}"));
            }
        }
    }
    parts.join(" ")
}

fn check_shape(shape: Shape, r: &Structure, preset: &Structure) -> bool {
    let a = r.algebra();
    let top = Subset::singleton(a.top());
    let unary = |p: Pred| r.unary(p).unwrap_or(Subset::full(a.size()));
    match shape {
        Shape::Kleene => a.is_kleene(),
        Shape::Filter(p) => is_filter(a, unary(p)),
        Shape::PrimeFilter(p) => is_prime_filter(a, unary(p)),
        Shape::TopOrEmpty(p) => {
            let x = unary(p);
            x.is_empty() || x == top
        }
        Shape::MeetTopOrEmpty(p, q) => {
            let x = unary(p).intersection(unary(q));
            x.is_empty() || x == top
        }
        Shape::Intersection(p, q, s) => unary(p) == unary(q).intersection(unary(s)),
        Shape::EqIsIdentity => r.binary(Pred::Eq).is_none_or(|b| b.is_identity()),
        Shape::EmbedsInPreset => r.is_trivial() || find_embedding(r, preset).is_some(),
    }
}

/// Every assignment of `constants` to elements of `a`.
fn constant_interpretations(a: &FiniteAlgebra, constants: &[Constant]) -> Result<Vec<FiniteAlgebra>> {
    let n = a.size();
    (0..n.pow(constants.len() as u32))
        .map(|mut code| {
            let mut cs = BTreeMap::new();
            for &c in constants {
                cs.insert(c, code % n);
                code /= n;
            }
            a.with_constants(cs)
        })
        .collect()
}

/// Whether the system's equality axioms force `=` to be a congruence, so
/// that only congruences need to be tried for it.
fn eq_ranges_over_congruences(sys: &AxiomSystem) -> bool {
    ["eq-refl", "eq-sym", "eq-trans", "eq-cong-neg", "eq-cong-meet", "eq-cong-join"]
        .iter()
        .all(|n| sys.axiom(n).is_some())
}

/// Candidate interpretations of each predicate of the signature.
fn candidates(sys: &AxiomSystem, a: &FiniteAlgebra, con: &CongruenceLattice) -> Vec<(Pred, Vec<Relation>)> {
    let n = a.size();
    sys.signature
        .preds()
        .iter()
        .map(|&p| {
            let rels = if p.arity() == 1 {
                (0..1u64 << n).map(|x| Relation::Unary(Subset(x))).collect()
            } else if eq_ranges_over_congruences(sys) {
                con.congruences().iter().map(|c| Relation::Binary(BinaryRelation::from_kernel(c.reps()))).collect()
            } else {
                (0..1u64 << (n * n))
                    .map(|code| Relation::Binary(BinaryRelation::from_rows((0..n).map(|i| (code >> (i * n)) & ((1 << n) - 1)).collect())))
                    .collect()
            };
            (p, rels)
        })
        .collect()
}

struct Partial {
    structures: usize,
    models: usize,
    reduced: Vec<Structure>,
    violations: Vec<Violation>,
}

fn push_distinct(out: &mut Vec<Structure>, s: Structure) {
    if !out.iter().any(|t| isomorphic_structures(t, &s)) {
        out.push(s);
    }
}

fn sweep_algebra(sys: &AxiomSystem, rules: &[CompiledRule], shapes: &[Shape], preset: &Structure, a: &FiniteAlgebra) -> Result<Partial> {
    let con = CongruenceLattice::new(a, a.size())?;
    let cands = candidates(sys, a, &con);
    let total: usize = cands.iter().map(|(_, r)| r.len()).product();
    let opts = HoldsOptions::default();
    let mut part = Partial {
        structures: 0,
        models: 0,
        reduced: Vec::new(),
        violations: Vec::new(),
    };
    for mut code in 0..total {
        let mut rels = BTreeMap::new();
        for (p, rs) in &cands {
            rels.insert(*p, rs[code % rs.len()].clone());
            code /= rs.len();
        }
        let s = Structure::new(a.clone(), rels)?;
        part.structures += 1;
        let mut model = true;
        for r in rules {
            if !r.holds(&s, &opts)?.valid {
                model = false;
                break;
            }
        }
        if !model {
            continue;
        }
        part.models += 1;
        let (red, _) = reduct_in(&con, &s)?;
        for &shape in shapes {
            if !check_shape(shape, &red, preset) {
                part.violations.push(Violation {
                    structure: describe(&s),
                    reduct: describe(&red),
                    shape,
                });
            }
        }
        if !red.is_trivial() {
            push_distinct(&mut part.reduced, red);
        }
    }
    Ok(part)
}

/// Enumerates every model of `sys` over the De Morgan lattices of size at
/// most `max_size` (all constant interpretations, all relations) and checks
/// the shape predicates of [`shapes_for`] on each Leibniz reduct.
pub fn classify_models(sys: &AxiomSystem, max_size: usize) -> Result<ClassificationReport> {
    classify_models_with(sys, max_size, &shapes_for(sys))
}

pub fn classify_models_with(sys: &AxiomSystem, max_size: usize, shapes: &[Shape]) -> Result<ClassificationReport> {
    if max_size > MAX_CLASSIFY_SIZE {
        return Err(Error::BoundExceeded {
            what: "classification sweep",
            size: max_size,
            bound: MAX_CLASSIFY_SIZE,
        });
    }
    let constants: Vec<Constant> = sys.signature.constants().iter().copied().collect();
    let mut algebras = Vec::new();
    for n in 1..=max_size {
        for a in enumerate_dm_lattices(n, false)? {
            algebras.extend(constant_interpretations(&a, &constants)?);
        }
    }
    let preset = preset_structure(&sys.preset)?;
    let rules: Vec<CompiledRule> = sys.axioms.iter().map(|a| CompiledRule::new(&a.rule)).collect();
    let parts: Vec<Partial> = algebras
        .par_iter()
        .map(|a| sweep_algebra(sys, &rules, shapes, &preset, a))
        .collect::<Result<_>>()?;
    let mut report = ClassificationReport {
        system: sys.name.clone(),
        max_size,
        shapes: shapes.to_vec(),
        algebras: algebras.len(),
        structures: 0,
        models: 0,
        reduced: Vec::new(),
        violations: Vec::new(),
    };
    for p in parts {
        report.structures += p.structures;
        report.models += p.models;
        report.violations.extend(p.violations);
        for r in p.reduced {
            push_distinct(&mut report.reduced, r);
        }
    }
    Ok(report)
}

/// Whether a binary relation is a congruence of `a`.
pub fn is_congruence_relation(a: &FiniteAlgebra, r: &BinaryRelation) -> bool {
    let n = a.size();
    let equivalence = (0..n).all(|x| r.contains(x, x))
        && r.pairs().all(|(x, y)| r.contains(y, x) && (0..n).all(|z| !r.contains(y, z) || r.contains(x, z)));
    equivalence && {
        let reps: Vec<usize> = (0..n).map(|x| (0..n).find(|&y| r.contains(x, y)).unwrap_or(x)).collect();
        Congruence::from_reps(&reps).is_ok_and(|c| c.is_congruence_of(a))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{builtin, Builtin};
    use crate::structures::is_model;
    use crate::syntax::Pred;
    use crate::systems::system;

    #[test]
    fn equality_axioms_select_exactly_the_congruences() {
        let sys = system("EQ-core").unwrap();
        for a in [builtin(Builtin::B2, &[]).unwrap(), builtin(Builtin::K3, &[]).unwrap()] {
            let n = a.size();
            let con = CongruenceLattice::new(&a, 10).unwrap();
            let eq_rules: Vec<_> = ["eq-refl", "eq-sym", "eq-trans", "eq-cong-neg", "eq-cong-meet", "eq-cong-join"]
                .iter()
                .map(|x| sys.axiom(x).unwrap().rule.clone())
                .collect();
            let mut models = 0;
            for code in 0..1u64 << (n * n) {
                let r = BinaryRelation::from_rows((0..n).map(|i| (code >> (i * n)) & ((1 << n) - 1)).collect());
                let s = Structure::with_unary(a.clone(), &[], Some(r.clone())).unwrap();
                let m = crate::structures::is_model_of_rules(&s, &eq_rules).unwrap().is_model;
                assert_eq!(m, is_congruence_relation(&a, &r));
                models += m as usize;
            }
            assert_eq!(models, con.congruences().len());
        }
    }

    #[test]
    fn bde_reducts_have_the_expected_shape() {
        let sys = system("BDE").unwrap();
        let rep = classify_models(&sys, 3).unwrap();
        assert!(rep.is_clean(), "{rep}");
        assert!(rep.models > 0);
    }

    #[test]
    fn presets_are_models_and_reduced() {
        for name in ["BDE", "BDNF", "KE", "BD-EQ", "ETL-EQ", "BDNF-EQ", "MC-ETL"] {
            let sys = system(name).unwrap();
            let s = preset_structure(&sys.preset).unwrap();
            assert!(is_model(&s, &sys).unwrap().is_model, "{name}");
            for shape in shapes_for(&sys) {
                assert!(check_shape(shape, &s, &s), "{name}: {shape}");
            }
        }
    }

    #[test]
    fn wrong_shape_is_reported() {
        let sys = system("BD-base").unwrap();
        let rep = classify_models_with(&sys, 2, &[Shape::TopOrEmpty(Pred::T)]).unwrap();
        assert!(rep.is_clean());
        let rep = classify_models_with(&sys, 4, &[Shape::TopOrEmpty(Pred::T)]).unwrap();
        assert!(!rep.is_clean());
    }
}
