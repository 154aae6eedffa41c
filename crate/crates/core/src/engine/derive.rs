//! Bounded forward-chaining proof search with checkable certificates.

use crate::syntax::{Constant, Formula, Pred, Rule, Substitution, Term, Var};
use crate::systems::{AxiomSystem, SystemKind};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashMap};

pub const DEFAULT_FACT_BUDGET: usize = 200_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DeriveOptions {
    /// Number of forward-chaining rounds.
    pub depth: usize,
    /// Layers of `~a` and `a \/ b` terms added on top of the goal's subterms.
    pub extra_layers: usize,
    pub fact_budget: usize,
}

impl Default for DeriveOptions {
    fn default() -> Self {
        DeriveOptions {
            depth: 8,
            extra_layers: 1,
            fact_budget: DEFAULT_FACT_BUDGET,
        }
    }
}

impl DeriveOptions {
    pub fn with_depth(depth: usize) -> DeriveOptions {
        DeriveOptions { depth, ..Default::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "by", rename_all = "lowercase")]
pub enum Justification {
    Premise,
    Axiom {
        name: String,
        substitution: Vec<(String, String)>,
        parents: Vec<usize>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Node {
    pub formula: String,
    #[serde(flatten)]
    pub justification: Justification,
}

/// A derivation as a node list: parents precede children, the last node
/// is the conclusion. Formulas and terms are stored printed so the
/// certificate is self-contained.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Derivation {
    pub nodes: Vec<Node>,
}

impl Derivation {
    pub fn root(&self) -> Option<&Node> {
        self.nodes.last()
    }

    /// Number of axiom applications.
    pub fn steps(&self) -> usize {
        self.nodes.iter().filter(|n| matches!(n.justification, Justification::Axiom { .. })).count()
    }

    /// Length of the longest premise-to-root path.
    pub fn depth(&self) -> usize {
        let mut d = vec![0usize; self.nodes.len()];
        for (i, n) in self.nodes.iter().enumerate() {
            if let Justification::Axiom { parents, .. } = &n.justification {
                d[i] = 1 + parents.iter().map(|&p| d.get(p).copied().unwrap_or(0)).max().unwrap_or(0);
            }
        }
        d.last().copied().unwrap_or(0)
    }

    /// Applies a variable renaming to every formula and substitution.
    pub fn rename(&self, renaming: &Substitution) -> Result<Derivation> {
        let sig = full_sig();
        let re_term = |s: &str| -> Result<String> {
            let t = crate::syntax::parse_term(s, &sig)?;
            Ok(t.substitute(renaming).to_string())
        };
        let nodes = self
            .nodes
            .iter()
            .map(|n| {
                let f = crate::syntax::parse_formula(&n.formula, &sig)?;
                let justification = match &n.justification {
                    Justification::Premise => Justification::Premise,
                    Justification::Axiom { name, substitution, parents } => Justification::Axiom {
                        name: name.clone(),
                        substitution: substitution
                            .iter()
                            .map(|(v, t)| Ok((v.clone(), re_term(t)?)))
                            .collect::<Result<_>>()?,
                        parents: parents.clone(),
                    },
                };
                Ok(Node {
                    formula: f.substitute(renaming).to_string(),
                    justification,
                })
            })
            .collect::<Result<_>>()?;
        Ok(Derivation { nodes })
    }

    /// Every way of changing exactly one parent edge: dropping it, adding
    /// an extra one, or pointing it at another node that is not an earlier
    /// copy of the same formula.
    pub fn edge_mutations(&self) -> Vec<Derivation> {
        let mut out = Vec::new();
        let with_parents = |i: usize, f: &dyn Fn(&mut Vec<usize>)| {
            let mut d = self.clone();
            if let Justification::Axiom { parents, .. } = &mut d.nodes[i].justification {
                f(parents);
            }
            d
        };
        for (i, n) in self.nodes.iter().enumerate() {
            let Justification::Axiom { parents, .. } = &n.justification else { continue };
            for q in 0..i {
                out.push(with_parents(i, &|ps| ps.push(q)));
            }
            for (k, &p) in parents.iter().enumerate() {
                out.push(with_parents(i, &|ps| {
                    ps.remove(k);
                }));
                for q in 0..self.nodes.len() {
                    if q != p && (q >= i || self.nodes[q].formula != self.nodes[p].formula) {
                        out.push(with_parents(i, &|ps| ps[k] = q));
                    }
                }
            }
        }
        out
    }
}

fn full_sig() -> crate::syntax::SigSpec {
    crate::syntax::SigSpec::new(Pred::ALL, Constant::ALL).expect("nonempty")
}

/// Outcome of a bounded search. Exhaustion is not a proof of invalidity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DeriveOutcome {
    Found(Derivation),
    Exhausted { depth: usize, facts: usize },
}

impl DeriveOutcome {
    pub fn derivation(&self) -> Option<&Derivation> {
        match self {
            DeriveOutcome::Found(d) => Some(d),
            DeriveOutcome::Exhausted { .. } => None,
        }
    }
}

pub fn derive(sys: &AxiomSystem, r: &Rule, depth: usize) -> Result<DeriveOutcome> {
    derive_with(sys, r, &DeriveOptions::with_depth(depth))
}

pub fn derive_with(sys: &AxiomSystem, r: &Rule, opts: &DeriveOptions) -> Result<DeriveOutcome> {
    let goal = r
        .conclusion()
        .ok_or_else(|| Error::Precondition("derive needs a single-conclusion rule".into()))?;
    let mut sat = Saturation::new(sys, r.premises().iter(), r.formulas(), opts)?;
    if let Some(i) = sat.lookup(goal) {
        return Ok(DeriveOutcome::Found(sat.certificate(i)));
    }
    let target = sat.intern_formula(goal);
    for _ in 0..opts.depth {
        let before = sat.facts.len();
        let hit = sat.round(target)?;
        if let Some(i) = hit {
            return Ok(DeriveOutcome::Found(sat.certificate(i)));
        }
        if sat.facts.len() == before {
            break;
        }
    }
    Ok(DeriveOutcome::Exhausted {
        depth: sat.rounds,
        facts: sat.facts.len(),
    })
}

/// Everything derivable from `premises` within `opts.depth` rounds, over
/// the universe generated by the subterms of `universe_from`.
pub fn saturate<'a>(
    sys: &AxiomSystem,
    premises: impl IntoIterator<Item = &'a Formula>,
    universe_from: impl IntoIterator<Item = &'a Formula>,
    opts: &DeriveOptions,
) -> Result<Vec<(Formula, usize)>> {
    let mut sat = Saturation::new(sys, premises, universe_from, opts)?;
    for _ in 0..opts.depth {
        let before = sat.facts.len();
        sat.round(None)?;
        if sat.facts.len() == before {
            break;
        }
    }
    Ok((0..sat.facts.len()).map(|i| (sat.formula(i), sat.facts[i].depth)).collect())
}

type Tid = u32;

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum TNode {
    Var(u32),
    Const(Constant),
    Neg(Tid),
    Meet(Tid, Tid),
    Join(Tid, Tid),
}

#[derive(Clone, Debug)]
enum Pat {
    Slot(usize),
    Const(Constant),
    Neg(Box<Pat>),
    Meet(Box<Pat>, Box<Pat>),
    Join(Box<Pat>, Box<Pat>),
}

struct Scheme {
    name: String,
    vars: Vec<Var>,
    premises: Vec<(Pred, Vec<Pat>)>,
    conclusion: (Pred, Vec<Pat>),
}

impl Scheme {
    fn compile(name: &str, r: &Rule) -> Result<Scheme> {
        let conclusion = r
            .conclusion()
            .ok_or_else(|| Error::Precondition(format!("axiom {name} is not single-conclusion")))?;
        let vars: Vec<Var> = r.vars().into_iter().collect();
        let pat = |t: &Term| -> Pat {
            fn go(t: &Term, vars: &[Var]) -> Pat {
                match t {
                    Term::Var(v) => Pat::Slot(vars.binary_search(v).expect("rule variable")),
                    Term::Const(c) => Pat::Const(*c),
                    Term::Neg(a) => Pat::Neg(Box::new(go(a, vars))),
                    Term::Meet(a, b) => Pat::Meet(Box::new(go(a, vars)), Box::new(go(b, vars))),
                    Term::Join(a, b) => Pat::Join(Box::new(go(a, vars)), Box::new(go(b, vars))),
                }
            }
            go(t, &vars)
        };
        let atom = |f: &Formula| (f.pred(), f.args().iter().map(pat).collect::<Vec<_>>());
        Ok(Scheme {
            name: name.to_string(),
            premises: r.premises().iter().map(atom).collect(),
            conclusion: atom(conclusion),
            vars,
        })
    }
}

type Fact = (Pred, [Tid; 2]);

struct FactInfo {
    fact: Fact,
    depth: usize,
    /// Scheme index, slot bindings, parent facts.
    origin: Option<(usize, Vec<Tid>, Vec<usize>)>,
}

struct Saturation {
    nodes: Vec<TNode>,
    ids: HashMap<TNode, Tid>,
    var_names: Vec<Var>,
    universe: Vec<Tid>,
    schemes: Vec<Scheme>,
    facts: Vec<FactInfo>,
    index: HashMap<Fact, usize>,
    by_pred: HashMap<Pred, Vec<usize>>,
    by_first: HashMap<(Pred, Tid), Vec<usize>>,
    rounds: usize,
    budget: usize,
}

impl Saturation {
    fn new<'a>(
        sys: &AxiomSystem,
        premises: impl IntoIterator<Item = &'a Formula>,
        universe_from: impl IntoIterator<Item = &'a Formula>,
        opts: &DeriveOptions,
    ) -> Result<Saturation> {
        if sys.kind != SystemKind::SingleConclusion {
            return Err(Error::Precondition(format!("{} is not a single-conclusion system", sys.name)));
        }
        let schemes = sys.axioms.iter().map(|a| Scheme::compile(&a.name, &a.rule)).collect::<Result<_>>()?;
        let mut s = Saturation {
            nodes: Vec::new(),
            ids: HashMap::new(),
            var_names: Vec::new(),
            universe: Vec::new(),
            schemes,
            facts: Vec::new(),
            index: HashMap::new(),
            by_pred: HashMap::new(),
            by_first: HashMap::new(),
            rounds: 0,
            budget: opts.fact_budget,
        };
        for f in universe_from {
            for t in f.args() {
                s.intern(t);
            }
        }
        for &c in sys.signature.constants() {
            s.intern(&Term::Const(c));
        }
        for _ in 0..opts.extra_layers {
            let base: Vec<Tid> = (0..s.nodes.len() as Tid).collect();
            for &a in &base {
                s.intern_node(TNode::Neg(a));
            }
            for &a in &base {
                for &b in &base {
                    s.intern_node(TNode::Join(a, b));
                }
            }
        }
        s.universe = (0..s.nodes.len() as Tid).collect();
        for f in premises {
            let fact = s.intern_formula(f);
            s.add_fact(fact, 0, None)?;
        }
        Ok(s)
    }

    fn intern_node(&mut self, n: TNode) -> Tid {
        if let Some(&i) = self.ids.get(&n) {
            return i;
        }
        let i = self.nodes.len() as Tid;
        self.nodes.push(n);
        self.ids.insert(n, i);
        i
    }

    fn intern(&mut self, t: &Term) -> Tid {
        let n = match t {
            Term::Var(v) => {
                let k = match self.var_names.iter().position(|w| w == v) {
                    Some(k) => k,
                    None => {
                        self.var_names.push(v.clone());
                        self.var_names.len() - 1
                    }
                };
                TNode::Var(k as u32)
            }
            Term::Const(c) => TNode::Const(*c),
            Term::Neg(a) => TNode::Neg(self.intern(a)),
            Term::Meet(a, b) => TNode::Meet(self.intern(a), self.intern(b)),
            Term::Join(a, b) => TNode::Join(self.intern(a), self.intern(b)),
        };
        self.intern_node(n)
    }

    fn intern_formula(&mut self, f: &Formula) -> Fact {
        let a = self.intern(&f.args()[0]);
        let b = f.args().get(1).map_or(a, |t| self.intern(t));
        (f.pred(), [a, b])
    }

    fn lookup(&self, f: &Formula) -> Option<usize> {
        fn tid(s: &Saturation, t: &Term) -> Option<Tid> {
            let n = match t {
                Term::Var(v) => TNode::Var(s.var_names.iter().position(|w| w == v)? as u32),
                Term::Const(c) => TNode::Const(*c),
                Term::Neg(a) => TNode::Neg(tid(s, a)?),
                Term::Meet(a, b) => TNode::Meet(tid(s, a)?, tid(s, b)?),
                Term::Join(a, b) => TNode::Join(tid(s, a)?, tid(s, b)?),
            };
            s.ids.get(&n).copied()
        }
        let a = tid(self, &f.args()[0])?;
        let b = match f.args().get(1) {
            Some(t) => tid(self, t)?,
            None => a,
        };
        self.index.get(&(f.pred(), [a, b])).copied()
    }

    fn term(&self, i: Tid) -> Term {
        match self.nodes[i as usize] {
            TNode::Var(k) => Term::Var(self.var_names[k as usize].clone()),
            TNode::Const(c) => Term::Const(c),
            TNode::Neg(a) => Term::neg(self.term(a)),
            TNode::Meet(a, b) => Term::meet(self.term(a), self.term(b)),
            TNode::Join(a, b) => Term::join(self.term(a), self.term(b)),
        }
    }

    fn formula(&self, i: usize) -> Formula {
        let (p, [a, b]) = self.facts[i].fact;
        if p.arity() == 2 {
            Formula::eq(self.term(a), self.term(b))
        } else {
            Formula::unary(p, self.term(a))
        }
    }

    fn add_fact(&mut self, fact: Fact, depth: usize, origin: Option<(usize, Vec<Tid>, Vec<usize>)>) -> Result<Option<usize>> {
        if self.index.contains_key(&fact) {
            return Ok(None);
        }
        if self.facts.len() >= self.budget {
            return Err(Error::Budget(format!("more than {} facts", self.budget)));
        }
        let i = self.facts.len();
        self.facts.push(FactInfo { fact, depth, origin });
        self.index.insert(fact, i);
        self.by_pred.entry(fact.0).or_default().push(i);
        self.by_first.entry((fact.0, fact.1[0])).or_default().push(i);
        Ok(Some(i))
    }

    /// Matches a pattern against an interned term, extending `slots`.
    fn matches(&self, p: &Pat, t: Tid, slots: &mut [Option<Tid>], trail: &mut Vec<usize>) -> bool {
        match (p, self.nodes[t as usize]) {
            (Pat::Slot(k), _) => match slots[*k] {
                Some(u) => u == t,
                None => {
                    slots[*k] = Some(t);
                    trail.push(*k);
                    true
                }
            },
            (Pat::Const(c), TNode::Const(d)) => *c == d,
            (Pat::Neg(a), TNode::Neg(x)) => self.matches(a, x, slots, trail),
            (Pat::Meet(a, b), TNode::Meet(x, y)) | (Pat::Join(a, b), TNode::Join(x, y)) => {
                self.matches(a, x, slots, trail) && self.matches(b, y, slots, trail)
            }
            _ => false,
        }
    }

    /// The interned term a fully bound pattern denotes, if it is in the universe.
    fn build(&self, p: &Pat, slots: &[Option<Tid>]) -> Option<Tid> {
        let n = match p {
            Pat::Slot(k) => return slots[*k],
            Pat::Const(c) => TNode::Const(*c),
            Pat::Neg(a) => TNode::Neg(self.build(a, slots)?),
            Pat::Meet(a, b) => TNode::Meet(self.build(a, slots)?, self.build(b, slots)?),
            Pat::Join(a, b) => TNode::Join(self.build(a, slots)?, self.build(b, slots)?),
        };
        self.ids.get(&n).copied()
    }

    fn first_bound(&self, p: &Pat, slots: &[Option<Tid>]) -> Option<Tid> {
        self.build(p, slots)
    }

    /// One forward-chaining round. Returns the index of `target` if it
    /// was produced.
    fn round(&mut self, target: impl Into<Option<Fact>>) -> Result<Option<usize>> {
        let target = target.into();
        let prev = self.rounds;
        self.rounds += 1;
        let depth = self.rounds;
        let mut produced: Vec<(Fact, usize, Vec<Tid>, Vec<usize>)> = Vec::new();
        for si in 0..self.schemes.len() {
            let scheme = &self.schemes[si];
            let k = scheme.premises.len();
            if k == 0 {
                if prev == 0 {
                    let mut slots = vec![None; scheme.vars.len()];
                    self.conclude(si, &mut slots, Vec::new(), &mut produced);
                }
                continue;
            }
            // semi-naive: premise `pivot` uses a fact from the last round,
            // earlier premises use strictly older facts
            for pivot in 0..k {
                let mut slots = vec![None; scheme.vars.len()];
                let mut chosen = Vec::with_capacity(k);
                self.join(si, 0, pivot, prev, &mut slots, &mut chosen, &mut produced);
            }
        }
        let mut hit = None;
        for (fact, si, binding, parents) in produced {
            if let Some(i) = self.add_fact(fact, depth, Some((si, binding, parents)))? {
                if Some(fact) == target && hit.is_none() {
                    hit = Some(i);
                }
            }
        }
        Ok(hit)
    }

    #[allow(clippy::too_many_arguments)]
    fn join(
        &self,
        si: usize,
        j: usize,
        pivot: usize,
        prev: usize,
        slots: &mut Vec<Option<Tid>>,
        chosen: &mut Vec<usize>,
        out: &mut Vec<(Fact, usize, Vec<Tid>, Vec<usize>)>,
    ) {
        let scheme = &self.schemes[si];
        if j == scheme.premises.len() {
            self.conclude(si, slots, chosen.clone(), out);
            return;
        }
        let (pred, args) = &scheme.premises[j];
        let candidates: &[usize] = match self.first_bound(&args[0], slots) {
            Some(t) => self.by_first.get(&(*pred, t)).map_or(&[], |v| v.as_slice()),
            None => self.by_pred.get(pred).map_or(&[], |v| v.as_slice()),
        };
        for &fi in candidates {
            let info = &self.facts[fi];
            let ok_depth = match j.cmp(&pivot) {
                std::cmp::Ordering::Less => info.depth < prev,
                std::cmp::Ordering::Equal => info.depth == prev,
                std::cmp::Ordering::Greater => info.depth <= prev,
            };
            if !ok_depth {
                continue;
            }
            let mut trail = Vec::new();
            let ok = args
                .iter()
                .zip(info.fact.1.iter())
                .all(|(p, &t)| self.matches(p, t, slots, &mut trail));
            if ok {
                chosen.push(fi);
                self.join(si, j + 1, pivot, prev, slots, chosen, out);
                chosen.pop();
            }
            for k in trail {
                slots[k] = None;
            }
        }
    }

    /// Instantiates the conclusion, binding any remaining variables by
    /// matching against universe terms.
    fn conclude(&self, si: usize, slots: &mut [Option<Tid>], parents: Vec<usize>, out: &mut Vec<(Fact, usize, Vec<Tid>, Vec<usize>)>) {
        let (pred, args) = &self.schemes[si].conclusion;
        self.bind_args(args, 0, slots, &mut |s: &Saturation, slots: &[Option<Tid>]| {
            let a = s.build(&args[0], slots)?;
            let b = match args.get(1) {
                Some(p) => s.build(p, slots)?,
                None => a,
            };
            let fact = (*pred, [a, b]);
            if !s.index.contains_key(&fact) {
                let binding = slots.iter().map(|x| x.expect("bound")).collect();
                out.push((fact, si, binding, parents.clone()));
            }
            Some(())
        });
    }

    fn bind_args(
        &self,
        args: &[Pat],
        j: usize,
        slots: &mut [Option<Tid>],
        emit: &mut dyn FnMut(&Saturation, &[Option<Tid>]) -> Option<()>,
    ) {
        if j == args.len() {
            emit(self, slots);
            return;
        }
        if self.build(&args[j], slots).is_some() {
            return self.bind_args(args, j + 1, slots, emit);
        }
        for &u in &self.universe {
            let mut trail = Vec::new();
            if self.matches(&args[j], u, slots, &mut trail) {
                self.bind_args(args, j + 1, slots, emit);
            }
            for k in trail {
                slots[k] = None;
            }
        }
    }

    /// A minimal certificate for fact `i`: only the facts it depends on,
    /// in order of derivation.
    fn certificate(&self, i: usize) -> Derivation {
        let mut needed = BTreeSet::new();
        let mut stack = vec![i];
        while let Some(x) = stack.pop() {
            if needed.insert(x) {
                if let Some((_, _, parents)) = &self.facts[x].origin {
                    stack.extend(parents.iter().copied());
                }
            }
        }
        // fact indices already respect derivation order; keep the root last
        let mut order: Vec<usize> = needed.into_iter().filter(|&x| x != i).collect();
        order.push(i);
        let pos: HashMap<usize, usize> = order.iter().enumerate().map(|(k, &x)| (x, k)).collect();
        let nodes = order
            .iter()
            .map(|&x| {
                let info = &self.facts[x];
                let justification = match &info.origin {
                    None => Justification::Premise,
                    Some((si, binding, parents)) => {
                        let sch = &self.schemes[*si];
                        Justification::Axiom {
                            name: sch.name.clone(),
                            substitution: sch
                                .vars
                                .iter()
                                .zip(binding)
                                .map(|(v, &t)| (v.name().to_string(), self.term(t).to_string()))
                                .collect(),
                            parents: parents.iter().map(|p| pos[p]).collect(),
                        }
                    }
                };
                Node {
                    formula: self.formula(x).to_string(),
                    justification,
                }
            })
            .collect();
        Derivation { nodes }
    }
}

/// Why a certificate was rejected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckFailure {
    pub node: usize,
    pub reason: String,
}

/// Replays `d` against `sys` and `r`; reports the first bad node.
pub fn check_derivation_report(sys: &AxiomSystem, d: &Derivation, r: &Rule) -> std::result::Result<(), CheckFailure> {
    let sig = full_sig();
    let bad = |node: usize, reason: String| Err(CheckFailure { node, reason });
    let goal = match r.conclusion() {
        Some(g) => g,
        None => return bad(0, "rule is not single-conclusion".into()),
    };
    if d.nodes.is_empty() {
        return bad(0, "empty derivation".into());
    }
    let mut formulas: Vec<Formula> = Vec::with_capacity(d.nodes.len());
    for (i, n) in d.nodes.iter().enumerate() {
        let f = match crate::syntax::parse_formula(&n.formula, &sig) {
            Ok(f) => f,
            Err(e) => return bad(i, format!("unparsable formula: {e}")),
        };
        match &n.justification {
            Justification::Premise => {
                if !r.premises().contains(&f) {
                    return bad(i, format!("{f} is not a premise"));
                }
            }
            Justification::Axiom { name, substitution, parents } => {
                let Some(ax) = sys.axiom(name) else {
                    return bad(i, format!("no axiom named {name}"));
                };
                let mut s = Substitution::new();
                for (v, t) in substitution {
                    match crate::syntax::parse_term(t, &sig) {
                        Ok(t) => {
                            s.insert(Var::new(v), t);
                        }
                        Err(e) => return bad(i, format!("unparsable term {t}: {e}")),
                    }
                }
                let Some(concl) = ax.rule.conclusion() else {
                    return bad(i, format!("axiom {name} is not single-conclusion"));
                };
                if ax.rule.vars().iter().any(|v| s.get(v).is_none()) {
                    return bad(i, "substitution does not cover the axiom's variables".into());
                }
                if concl.substitute(&s) != f {
                    return bad(i, format!("{f} is not the instantiated conclusion of {name}"));
                }
                if parents.len() != ax.rule.premises().len() {
                    return bad(i, format!("{name} needs {} parents", ax.rule.premises().len()));
                }
                for (p, &pi) in ax.rule.premises().iter().zip(parents) {
                    if pi >= i {
                        return bad(i, format!("parent {pi} does not precede node {i}"));
                    }
                    if p.substitute(&s) != formulas[pi] {
                        return bad(i, format!("parent {pi} does not match premise {p}"));
                    }
                }
            }
        }
        formulas.push(f);
    }
    if formulas.last() != Some(goal) {
        return bad(d.nodes.len() - 1, format!("root is not {goal}"));
    }
    Ok(())
}

pub fn check_derivation(sys: &AxiomSystem, d: &Derivation, r: &Rule) -> bool {
    check_derivation_report(sys, d, r).is_ok()
}
