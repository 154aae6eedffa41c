//! Catalogue of axiom systems.
//!
//! Every system comes with the name of the preset structure it is meant to
//! axiomatize. Systems with constant rules are also registered once per
//! nonempty subset of their constants under `NAME+#t#n#b`-style names; a
//! constant rule is included exactly when all its constants are selected.

use crate::structures::{holds, preset_structure, Verdict};
use crate::syntax::{parse_rule, Constant, Pred, Rule, SigSpec};
use crate::{Error, Result};
use std::collections::BTreeSet;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SystemKind {
    SingleConclusion,
    MultipleConclusion,
}

/// What part of a presentation an axiom belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Role {
    /// Rules axiomatizing a single predicate.
    Base,
    /// Equivalence, compatibility and lattice equations for `=`.
    Core,
    /// Rules relating predicates, or the characteristic rules of a logic.
    Interaction,
    /// Rules governing the truth-value constants.
    Constant,
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Role::Base => "base",
            Role::Core => "core",
            Role::Interaction => "interaction",
            Role::Constant => "constant",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Axiom {
    pub name: String,
    pub role: Role,
    pub rule: Rule,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomSystem {
    pub name: String,
    pub signature: SigSpec,
    pub kind: SystemKind,
    /// Name of the defining preset structure.
    pub preset: String,
    pub summary: String,
    pub axioms: Vec<Axiom>,
}

impl AxiomSystem {
    pub fn rules(&self) -> Vec<Rule> {
        self.axioms.iter().map(|a| a.rule.clone()).collect()
    }

    pub fn axiom(&self, name: &str) -> Option<&Axiom> {
        self.axioms.iter().find(|a| a.name == name)
    }

    pub fn with_role(&self, role: Role) -> impl Iterator<Item = &Axiom> {
        self.axioms.iter().filter(move |a| a.role == role)
    }

    /// One rule per line in the textual grammar, preceded by a header comment.
    pub fn to_rule_file(&self) -> String {
        let mut out = format!("# {} ({})\n", self.name, self.summary);
        for a in &self.axioms {
            out.push_str(&format!("{}\n", a.rule));
        }
        out
    }
}

/// BD for a unary predicate `P`: lattice rules, distribution, and double
/// negation and De Morgan laws inside a disjunctive context.
const BD_BASE: &[(&str, &str)] = &[
    ("and-elim-l", "P(x /\\ y) |- P(x)"),
    ("and-elim-r", "P(x /\\ y) |- P(y)"),
    ("and-intro", "P(x), P(y) |- P(x /\\ y)"),
    ("or-intro", "P(x) |- P(x \\/ y)"),
    ("or-comm", "P(x \\/ y) |- P(y \\/ x)"),
    ("or-idem", "P(x \\/ x) |- P(x)"),
    ("or-assoc", "P(x \\/ (y \\/ z)) |- P(x \\/ y \\/ z)"),
    ("dist", "P(x \\/ y /\\ z) |- P((x \\/ y) /\\ (x \\/ z))"),
    ("dist-inv", "P((x \\/ y) /\\ (x \\/ z)) |- P(x \\/ y /\\ z)"),
    ("dneg-intro", "P(x \\/ z) |- P(~~x \\/ z)"),
    ("dneg-elim", "P(~~x \\/ z) |- P(x \\/ z)"),
    ("dm-or", "P(~(x \\/ y) \\/ z) |- P(~x /\\ ~y \\/ z)"),
    ("dm-or-inv", "P(~x /\\ ~y \\/ z) |- P(~(x \\/ y) \\/ z)"),
    ("dm-and", "P(~(x /\\ y) \\/ z) |- P(~x \\/ ~y \\/ z)"),
    ("dm-and-inv", "P(~x \\/ ~y \\/ z) |- P(~(x /\\ y) \\/ z)"),
];

fn full_sig() -> SigSpec {
    SigSpec::new(Pred::ALL, Constant::ALL).expect("nonempty")
}

fn rule(text: &str) -> Rule {
    parse_rule(text, &full_sig()).unwrap_or_else(|e| panic!("catalogue rule {text:?}: {e}"))
}

struct Builder {
    axioms: Vec<Axiom>,
}

impl Builder {
    fn new() -> Builder {
        Builder { axioms: Vec::new() }
    }

    fn add(mut self, name: impl Into<String>, role: Role, text: &str) -> Builder {
        let name = name.into();
        debug_assert!(self.axioms.iter().all(|a| a.name != name), "duplicate axiom {name}");
        self.axioms.push(Axiom {
            name,
            role,
            rule: rule(text),
        });
        self
    }

    fn many(self, role: Role, rules: &[(&str, &str)]) -> Builder {
        rules.iter().fold(self, |b, (n, t)| b.add(*n, role, t))
    }

    fn bd_base(self, p: Pred) -> Builder {
        BD_BASE.iter().fold(self, |b, (n, t)| {
            b.add(format!("{p}-{n}"), Role::Base, &t.replace("P(", &format!("{}(", p.name())))
        })
    }

    fn eq_core(self, unary: &[Pred]) -> Builder {
        let b = self.many(
            Role::Core,
            &[
                ("eq-refl", "|- x = x"),
                ("eq-sym", "x = y |- y = x"),
                ("eq-trans", "x = y, y = z |- x = z"),
                ("eq-cong-neg", "x = y |- ~x = ~y"),
                ("eq-cong-meet", "x = y, u = v |- x /\\ u = y /\\ v"),
                ("eq-cong-join", "x = y, u = v |- x \\/ u = y \\/ v"),
                ("meet-idem", "|- x /\\ x = x"),
                ("join-idem", "|- x \\/ x = x"),
                ("meet-comm", "|- x /\\ y = y /\\ x"),
                ("join-comm", "|- x \\/ y = y \\/ x"),
                ("meet-assoc", "|- x /\\ (y /\\ z) = x /\\ y /\\ z"),
                ("join-assoc", "|- x \\/ (y \\/ z) = x \\/ y \\/ z"),
                ("absorb-meet", "|- x /\\ (x \\/ y) = x"),
                ("absorb-join", "|- x \\/ x /\\ y = x"),
                ("distrib", "|- x /\\ (y \\/ z) = x /\\ y \\/ x /\\ z"),
                ("dneg", "|- ~~x = x"),
                ("de-morgan", "|- ~(x /\\ y) = ~x \\/ ~y"),
            ],
        );
        unary.iter().fold(b, |b, p| {
            let n = p.name();
            b.add(format!("eq-compat-{n}"), Role::Core, &format!("{n}(x), x = y |- {n}(y)"))
        })
    }

    fn build(self, name: &str, kind: SystemKind, preset: &str, summary: &str, consts: &[Constant]) -> AxiomSystem {
        let chosen: BTreeSet<Constant> = consts.iter().copied().collect();
        let axioms: Vec<Axiom> = self
            .axioms
            .into_iter()
            .filter(|a| a.rule.constants().is_subset(&chosen))
            .collect();
        let preds: BTreeSet<Pred> = axioms.iter().flat_map(|a| a.rule.preds()).collect();
        let suffix = crate::structures::presets_suffix(consts);
        AxiomSystem {
            name: format!("{name}{suffix}"),
            signature: SigSpec::new(preds, chosen).expect("systems mention predicates"),
            kind,
            preset: format!("{preset}{suffix}"),
            summary: summary.into(),
            axioms,
        }
    }
}

use Role::{Constant as C, Interaction as I};
use SystemKind::{MultipleConclusion as MC, SingleConclusion as SC};

struct Entry {
    name: &'static str,
    kind: SystemKind,
    preset: &'static str,
    summary: &'static str,
    build: fn() -> Builder,
}

fn bd_eq_rules() -> Builder {
    Builder::new()
        .eq_core(&[Pred::T])
        .bd_base(Pred::T)
        .many(
            I,
            &[
                ("T-meet", "T(x), T(y) |- T(x /\\ y)"),
                ("T-order", "T(x), T(y) |- ~x \\/ y = y"),
                ("T-separate", "T(z), x /\\ z = y /\\ z, ~y /\\ z = ~x /\\ z |- x = y"),
            ],
        )
}

fn bdnf_rules() -> Builder {
    Builder::new().bd_base(Pred::T).bd_base(Pred::NF).many(
        I,
        &[
            ("T-NF-mp", "T(x), NF(~x \\/ y) |- NF(y)"),
            ("NF-T-mp", "NF(x), T(~x \\/ y) |- T(y)"),
        ],
    )
}

const BDNF_CONSTANTS: &[(&str, &str)] = &[
    ("T-top", "|- T(#t)"),
    ("NF-top", "|- NF(#t)"),
    ("T-both", "|- T(#b)"),
    ("T-neg-both", "|- T(~#b)"),
    ("NF-neither", "|- NF(#n)"),
    ("NF-neg-neither", "|- NF(~#n)"),
];

fn mc_bd_rules() -> Builder {
    Builder::new()
        .bd_base(Pred::T)
        .add("T-prime", I, "T(x \\/ y) |- T(x) | T(y)")
}

const REGISTRY: &[Entry] = &[
    Entry {
        name: "BD-base",
        kind: SC,
        preset: "BD",
        summary: "truth in DM4",
        build: || Builder::new().bd_base(Pred::T),
    },
    Entry {
        name: "ETL-base",
        kind: SC,
        preset: "ETL",
        summary: "exact truth in DM4",
        build: || {
            Builder::new()
                .bd_base(Pred::E)
                .add("E-syllogism", I, "E(x /\\ (~x \\/ y)) |- E(y)")
        },
    },
    Entry {
        name: "K-base",
        kind: SC,
        preset: "K",
        summary: "strong Kleene logic",
        build: || {
            Builder::new()
                .bd_base(Pred::T)
                .add("T-explosion", I, "T(x /\\ ~x \\/ y) |- T(y)")
        },
    },
    Entry {
        name: "LP-base",
        kind: SC,
        preset: "LP",
        summary: "logic of paradox",
        build: || Builder::new().bd_base(Pred::T).add("T-excluded-middle", I, "|- T(x \\/ ~x)"),
    },
    Entry {
        name: "BDE",
        kind: SC,
        preset: "BDE",
        summary: "truth and exact truth",
        build: || {
            Builder::new()
                .bd_base(Pred::T)
                .bd_base(Pred::E)
                .many(
                    I,
                    &[
                        ("E-T", "E(x) |- T(x)"),
                        ("E-T-mp", "E(x), T(~x \\/ y) |- T(y)"),
                        ("T-E-mp", "T(x), T(y), E(~x \\/ y) |- E(y)"),
                    ],
                )
                .many(
                    C,
                    &[
                        ("E-top", "|- E(#t)"),
                        ("T-both-glut", "|- T(#b /\\ ~#b)"),
                        ("T-neither-drop", "T(#n \\/ x) |- T(x)"),
                        ("T-neg-neither-drop", "T(~#n \\/ x) |- T(x)"),
                        ("E-neither-lift", "T(x) |- E(#n \\/ x)"),
                        ("E-neg-neither-lift", "T(x) |- E(~#n \\/ x)"),
                    ],
                )
        },
    },
    Entry {
        name: "BDNF",
        kind: SC,
        preset: "BDNF",
        summary: "truth and non-falsity",
        build: || bdnf_rules().many(C, BDNF_CONSTANTS),
    },
    Entry {
        name: "KE",
        kind: SC,
        preset: "KE",
        summary: "truth and exact truth over K3",
        build: || {
            Builder::new()
                .bd_base(Pred::T)
                .bd_base(Pred::E)
                .many(
                    I,
                    &[
                        ("T-excluded-middle", "|- T(x \\/ ~x)"),
                        ("E-T-mp", "E(x), T(~x \\/ y) |- T(y)"),
                        ("E-T", "E(x) |- T(x)"),
                        ("T-E-mp", "T(x), E(~x \\/ y) |- E(y)"),
                    ],
                )
                .many(
                    C,
                    &[
                        ("E-top", "|- E(#t)"),
                        ("T-both", "|- T(#b)"),
                        ("T-neg-both", "|- T(~#b)"),
                    ],
                )
        },
    },
    Entry {
        name: "TNE-bridge",
        kind: SC,
        preset: "TNE",
        summary: "exact truth defined from truth and non-falsity",
        build: || {
            bdnf_rules()
                .many(
                    I,
                    &[
                        ("T-NF-E", "T(x), NF(x) |- E(x)"),
                        ("E-T", "E(x) |- T(x)"),
                        ("E-NF", "E(x) |- NF(x)"),
                    ],
                )
                .many(C, BDNF_CONSTANTS)
        },
    },
    Entry {
        name: "EQ-core",
        kind: SC,
        preset: "DM4-EQ",
        summary: "equality of De Morgan lattice terms",
        build: || {
            Builder::new().eq_core(&[]).many(
                C,
                &[
                    ("top-eq", "|- #t = x \\/ #t"),
                    ("neither-fixed", "|- #n = ~#n"),
                    ("both-fixed", "|- #b = ~#b"),
                    ("neither-both-top", "|- #n \\/ #b = x \\/ #n \\/ #b"),
                ],
            )
        },
    },
    Entry {
        name: "BD-EQ",
        kind: SC,
        preset: "BD-EQ",
        summary: "truth and equality",
        build: || {
            bd_eq_rules().many(
                C,
                &[
                    ("top-eq", "|- #t = #t \\/ x"),
                    ("T-top", "|- T(#t)"),
                    ("T-neg-top-explode", "T(~#t) |- x = y"),
                    ("neither-fixed", "|- #n = ~#n"),
                    ("T-neither-drop", "T(#n \\/ x) |- T(x)"),
                    ("neither-absorb", "T(x) |- #n \\/ x \\/ y = #n \\/ x"),
                    ("T-both", "|- T(#b)"),
                    ("T-neg-both", "|- T(~#b)"),
                    ("both-neither-top", "|- #b \\/ #n = #t"),
                ],
            )
        },
    },
    Entry {
        name: "ETL-EQ",
        kind: SC,
        preset: "ETL-EQ",
        summary: "exact truth and equality",
        build: || {
            Builder::new()
                .eq_core(&[Pred::E])
                .add("E-top-eq", I, "E(x) |- x \\/ y = x")
                .many(
                    C,
                    &[
                        ("E-top", "|- E(#t)"),
                        ("E-neither-both", "|- E(#n \\/ #b)"),
                        ("both-fixed", "|- #b = ~#b"),
                        ("neither-fixed", "|- #n = ~#n"),
                    ],
                )
        },
    },
    Entry {
        name: "BDE-EQ",
        kind: SC,
        preset: "BDE-EQ",
        summary: "truth, exact truth and equality",
        build: || {
            bd_eq_rules()
                .add("eq-compat-E", Role::Core, "E(x), x = y |- E(y)")
                .many(
                    I,
                    &[
                        ("E-top-eq", "E(x) |- x \\/ y = x"),
                        ("E-T", "E(x) |- T(x)"),
                    ],
                )
                .many(
                    C,
                    &[
                        ("E-top", "|- E(#t)"),
                        ("neither-fixed", "|- #n = ~#n"),
                        ("T-neither-drop", "T(#n \\/ x) |- T(x)"),
                        ("E-neither-both", "|- E(#n \\/ #b)"),
                        ("T-both-glut", "|- T(#b /\\ ~#b)"),
                        ("E-neither-lift", "T(x) |- E(#n \\/ x)"),
                    ],
                )
        },
    },
    Entry {
        name: "BDNF-EQ",
        kind: SC,
        preset: "BDNF-EQ",
        summary: "truth, non-falsity and equality",
        build: || {
            Builder::new()
                .bd_base(Pred::T)
                .bd_base(Pred::NF)
                .eq_core(&[Pred::T, Pred::NF])
                .many(
                    I,
                    &[
                        ("T-order", "T(x), T(y) |- ~x \\/ y = y"),
                        ("NF-T-mp", "NF(x), T(~x \\/ y) |- T(y)"),
                        ("T-NF-mp", "T(x), NF(~x \\/ y) |- NF(y)"),
                        ("T-NF-top", "NF(x), T(y), T(z), x /\\ y <= z |- y <= z"),
                        ("T-NF-separate", "T(x), NF(y), x /\\ u <= ~y \\/ v, x /\\ ~v <= ~y \\/ ~u |- u <= v"),
                    ],
                )
                .many(C, BDNF_CONSTANTS)
        },
    },
    Entry {
        name: "MC-BD",
        kind: MC,
        preset: "BD",
        summary: "multiple-conclusion truth",
        build: mc_bd_rules,
    },
    Entry {
        name: "MC-bridges",
        kind: MC,
        preset: "TNE",
        summary: "multiple-conclusion truth with E and NF defined from T",
        build: || {
            mc_bd_rules().many(
                I,
                &[
                    ("E-T", "E(x) |- T(x)"),
                    ("E-not-neg-T", "T(~x), E(x) |-"),
                    ("T-E-or-neg", "T(x) |- E(x) | T(~x)"),
                    ("T-or-NF-neg", "|- T(x) | NF(~x)"),
                    ("T-NF-neg-excl", "T(x), NF(~x) |-"),
                ],
            )
        },
    },
    Entry {
        name: "MC-ETL",
        kind: MC,
        preset: "ETL",
        summary: "multiple-conclusion exact truth",
        build: || {
            Builder::new()
                .bd_base(Pred::E)
                .add("E-syllogism", I, "E(x /\\ (~x \\/ y)) |- E(y)")
                .many(
                    I,
                    &[
                        ("E-split-neg", "E(x \\/ y) |- E(~x \\/ ~y) | E(x) | E(y)"),
                        ("E-split-mixed", "E(x \\/ y) |- E(~x \\/ y) | E(x) | E(y)"),
                        (
                            "E-leibniz",
                            "E(u /\\ ~u \\/ x), E(u /\\ ~u \\/ y), E(v \\/ x) |- E(v \\/ y) | E(x) | E(y)",
                        ),
                        (
                            "E-leibniz-neg",
                            "E(u /\\ ~u \\/ x), E(u /\\ ~u \\/ y), E(v \\/ ~x) |- E(v \\/ ~y) | E(x) | E(y)",
                        ),
                    ],
                )
                .many(
                    C,
                    &[
                        ("E-top", "|- E(#t)"),
                        ("E-neither-out", "E(#n) |-"),
                        ("E-neg-neither-out", "E(~#n) |-"),
                        ("E-both-out", "E(#b) |-"),
                        ("E-neg-both-out", "E(~#b) |-"),
                        ("E-neither-both", "|- E(#n \\/ #b)"),
                    ],
                )
        },
    },
];

fn entry(base: &str) -> Option<&'static Entry> {
    REGISTRY.iter().find(|e| e.name.eq_ignore_ascii_case(base))
}

/// Constants mentioned by some rule of the entry.
fn entry_constants(e: &Entry) -> Vec<Constant> {
    let all: BTreeSet<Constant> = (e.build)().axioms.iter().flat_map(|a| a.rule.constants()).collect();
    all.into_iter().collect()
}

/// Looks up a system by name, with an optional constant suffix.
pub fn system(name: &str) -> Result<AxiomSystem> {
    let (base, consts) = crate::structures::split_preset_name(name).map_err(|_| Error::UnknownSystem(name.into()))?;
    let e = entry(base).ok_or_else(|| Error::UnknownSystem(name.into()))?;
    let allowed = entry_constants(e);
    if consts.iter().any(|c| !allowed.contains(c)) {
        return Err(Error::UnknownSystem(name.into()));
    }
    Ok((e.build)().build(e.name, e.kind, e.preset, e.summary, &consts))
}

/// Every registered system name, constant variants included.
pub fn system_names() -> Vec<String> {
    REGISTRY
        .iter()
        .flat_map(|e| {
            let subsets = crate::structures::constant_subsets_of(&entry_constants(e));
            std::iter::once(e.name.to_string())
                .chain(subsets.into_iter().map(move |cs| format!("{}{}", e.name, crate::structures::presets_suffix(&cs))))
        })
        .collect()
}

/// Names of the systems without constants.
pub fn base_system_names() -> Vec<&'static str> {
    REGISTRY.iter().map(|e| e.name).collect()
}

pub fn all_systems() -> Vec<AxiomSystem> {
    system_names().iter().map(|n| system(n).expect("registered")).collect()
}

/// Per-axiom validity in the defining structure.
#[derive(Clone, Debug)]
pub struct SoundnessReport {
    pub system: String,
    pub preset: String,
    pub verdicts: Vec<(String, Verdict)>,
}

impl SoundnessReport {
    pub fn is_sound(&self) -> bool {
        self.verdicts.iter().all(|(_, v)| v.valid)
    }

    pub fn failures(&self) -> impl Iterator<Item = &(String, Verdict)> {
        self.verdicts.iter().filter(|(_, v)| !v.valid)
    }
}

/// Checks every axiom of `sys` against its defining preset.
pub fn soundness_check(sys: &AxiomSystem) -> Result<SoundnessReport> {
    let s = preset_structure(&sys.preset)?;
    let verdicts = sys
        .axioms
        .iter()
        .map(|a| Ok((a.name.clone(), holds(&s, &a.rule)?)))
        .collect::<Result<_>>()?;
    Ok(SoundnessReport {
        system: sys.name.clone(),
        preset: sys.preset.clone(),
        verdicts,
    })
}
