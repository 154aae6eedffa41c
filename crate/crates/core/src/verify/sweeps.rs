//! Suites over the axiom catalogue and the proof engine.

use super::{ledger_entries, timed, Check, VerifyConfig};
use crate::engine::{
    check_derivation, classify_models, derive, derive_with, saturate, translate_e_to_eq, DeriveOptions, DeriveOutcome, RuleSpace, RuleSpaceBounds,
    DEFAULT_FACT_BUDGET,
};
use crate::structures::{holds, preset_structure};
use crate::syntax::{parse_rule, print_rule, Constant, Formula, Pred, Rule, SigSpec, Term};
use crate::systems::{all_systems, base_system_names, soundness_check, system, system_names, SystemKind};
use crate::{Error, Result};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

const DEFAULT_CLASSIFY_SIZE: usize = 4;
const DEFAULT_DERIVE_DEPTH: usize = 8;
const ENGINE_SOUNDNESS_DEPTH: usize = 4;
const MUTATIONS: usize = 100;
/// Term layers tried in turn when looking for a certificate of a valid rule.
const COMPLETENESS_LAYERS: usize = 2;

const CLASSIFIED: &[&str] = &[
    "BDE", "BDE+#t", "BDNF", "BDNF+#t", "KE", "KE+#t", "BD-EQ", "BD-EQ+#t", "ETL-EQ", "ETL-EQ+#t", "BDNF-EQ", "BDNF-EQ+#t", "MC-ETL",
    "MC-ETL+#t",
];
const MC_CLASSIFIED: &[&str] = &["MC-BD", "MC-bridges", "MC-ETL", "MC-ETL+#t#n#b"];

fn full_sig() -> SigSpec {
    SigSpec::new(Pred::ALL, Constant::ALL).expect("nonempty")
}

pub(super) fn soundness(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let names = if cfg.systems.is_empty() { system_names() } else { cfg.systems.clone() };
    names
        .iter()
        .map(|n| {
            let sys = system(n)?;
            Ok(timed(format!("{n} in {}", sys.preset), || {
                let rep = soundness_check(&sys)?;
                let bad: Vec<&str> = rep.failures().map(|(a, _)| a.as_str()).collect();
                Ok((bad.is_empty(), format!("{} axioms, failing: [{}]", rep.verdicts.len(), bad.join(", "))))
            }))
        })
        .collect()
}

pub(super) fn classification(cfg: &VerifyConfig, mc: bool) -> Result<Vec<Check>> {
    let size = cfg.max_size.unwrap_or(DEFAULT_CLASSIFY_SIZE);
    let names: Vec<String> = if !cfg.systems.is_empty() {
        cfg.systems.clone()
    } else {
        (if mc { MC_CLASSIFIED } else { CLASSIFIED }).iter().map(|s| s.to_string()).collect()
    };
    names
        .iter()
        .map(|n| {
            let sys = system(n)?;
            Ok(timed(format!("{n} up to size {size}"), || {
                let rep = classify_models(&sys, size)?;
                let first = rep.violations.first().map(|v| format!(", first: {} reduces to {} against {}", v.structure, v.reduct, v.shape));
                Ok((
                    rep.is_clean(),
                    format!(
                        "{} algebras, {} models, {} reduced up to isomorphism, {} violations{}",
                        rep.algebras,
                        rep.models,
                        rep.reduced.len(),
                        rep.violations.len(),
                        first.unwrap_or_default()
                    ),
                ))
            }))
        })
        .collect()
}

/// Goals whose certificates are required, with their systems.
pub const DERIVABILITY_GOALS: &[(&str, &str)] = &[
    ("BDE", "E(x /\\ (~x \\/ y)) |- E(y)"),
    ("BDE", "E(x) |- E(x)"),
    ("BDE", "E(x /\\ y) |- T(y \\/ x)"),
    ("BDE", "E(x), E(~x \\/ y) |- T(y)"),
    ("BDE", "E(x), T(~x \\/ y) |- T(y \\/ z)"),
    ("TNE-bridge", "T(x), NF(x) |- E(x)"),
    ("TNE-bridge", "E(x) |- T(x)"),
    ("TNE-bridge", "E(x) |- NF(x)"),
];

pub(super) fn derivability(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let depth = cfg.depth.unwrap_or(DEFAULT_DERIVE_DEPTH);
    let mut certificates = Vec::new();
    let mut checks = Vec::new();
    for &(name, goal) in DERIVABILITY_GOALS {
        let sys = system(name)?;
        let r = parse_rule(goal, &sys.signature)?;
        let mut found = None;
        checks.push(timed(format!("{name}: {goal}"), || match derive(&sys, &r, depth)? {
            DeriveOutcome::Found(d) => {
                let ok = check_derivation(&sys, &d, &r);
                let detail = format!("{} steps, depth {}, certificate {}", d.steps(), d.depth(), if ok { "accepted" } else { "rejected" });
                found = Some(d);
                Ok((ok, detail))
            }
            DeriveOutcome::Exhausted { depth, facts } => Ok((false, format!("no certificate after {depth} rounds, {facts} facts"))),
        }));
        if let Some(d) = found {
            certificates.push((sys, r, d));
        }
    }
    checks.push(timed("single-edge mutations are rejected", || {
        let mut pool: Vec<(usize, crate::engine::Derivation)> =
            certificates.iter().enumerate().flat_map(|(i, (_, _, d))| d.edge_mutations().into_iter().map(move |m| (i, m))).collect();
        let available = pool.len();
        pool.shuffle(&mut ChaCha8Rng::seed_from_u64(cfg.seed));
        pool.truncate(MUTATIONS);
        let accepted = pool.iter().filter(|(i, m)| check_derivation(&certificates[*i].0, m, &certificates[*i].1)).count();
        let enough = pool.len() == MUTATIONS;
        Ok((
            enough && accepted == 0,
            format!("{} of {available} mutations sampled, {accepted} accepted", pool.len()),
        ))
    }));
    Ok(checks)
}

fn translation_space() -> Result<RuleSpace> {
    RuleSpace::new(&RuleSpaceBounds::single(2, 1, 2, &[Pred::T, Pred::E, Pred::Eq]))
}

pub(super) fn translation(_cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let source = preset_structure("BDE-EQ")?;
    let target = preset_structure("BD-EQ+#t")?;
    let sig = target.signature();
    Ok(vec![timed("exact truth as equality with top", || {
        let space = translation_space()?;
        let per_set: Vec<(usize, usize, Option<String>)> = space
            .premise_sets()
            .par_iter()
            .map(|ps| {
                let mut count = 0;
                let mut bad = 0;
                let mut first = None;
                for r in space.rules_with_premises(ps) {
                    count += 1;
                    let t = translate_e_to_eq(&r, &sig)?;
                    if holds(&source, &r)?.valid != holds(&target, &t)?.valid {
                        bad += 1;
                        first.get_or_insert_with(|| print_rule(&r));
                    }
                }
                Ok((count, bad, first))
            })
            .collect::<Result<_>>()?;
        let rules: usize = per_set.iter().map(|p| p.0).sum();
        let bad: usize = per_set.iter().map(|p| p.1).sum();
        let first = per_set.iter().find_map(|p| p.2.clone()).map(|r| format!(", first: {r}")).unwrap_or_default();
        Ok((bad == 0, format!("{rules} rules, {bad} mismatches{first}")))
    })])
}

/// Every fact reachable within the depth from each premise set of the
/// space, over the fixed universe of the space's terms, yields a valid rule.
fn engine_soundness_for(name: &str, depth: usize) -> Result<(bool, String)> {
    let sys = system(name)?;
    let preds: Vec<Pred> = [Pred::T, Pred::E, Pred::Eq].into_iter().filter(|p| sys.signature.has_pred(*p)).collect();
    let preset = preset_structure(&sys.preset)?;
    let space = RuleSpace::new(&RuleSpaceBounds::single(2, 1, 2, &preds))?;
    let opts = DeriveOptions {
        depth,
        extra_layers: 0,
        fact_budget: DEFAULT_FACT_BUDGET,
    };
    let atoms = space.atoms();
    let per_set: Vec<(usize, Option<String>)> = space
        .premise_sets()
        .par_iter()
        .map(|ps| {
            let premises: Vec<Formula> = ps.iter().map(|&i| atoms[i].clone()).collect();
            let facts = saturate(&sys, &premises, atoms, &opts)?;
            let mut derived = 0;
            for (f, d) in facts {
                if d == 0 {
                    continue;
                }
                derived += 1;
                let r = Rule::single(premises.iter().cloned(), f);
                if !holds(&preset, &r)?.valid {
                    return Ok((derived, Some(print_rule(&r))));
                }
            }
            Ok((derived, None))
        })
        .collect::<Result<_>>()?;
    let derived: usize = per_set.iter().map(|p| p.0).sum();
    let unsound: Vec<&String> = per_set.iter().filter_map(|p| p.1.as_ref()).collect();
    let first = unsound.first().map(|r| format!(", first: {r}")).unwrap_or_default();
    Ok((
        unsound.is_empty(),
        format!("{} premise sets, {derived} derived facts, {} unsound{first}", per_set.len(), unsound.len()),
    ))
}

pub(super) fn engine_soundness(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let depth = cfg.depth.unwrap_or(ENGINE_SOUNDNESS_DEPTH);
    let names: Vec<String> = if cfg.systems.is_empty() {
        base_system_names()
            .into_iter()
            .filter(|n| system(n).is_ok_and(|s| s.kind == SystemKind::SingleConclusion))
            .map(String::from)
            .collect()
    } else {
        cfg.systems.clone()
    };
    Ok(names.iter().map(|n| timed(format!("{n} at depth {depth}"), || engine_soundness_for(n, depth))).collect())
}

/// Valid rules of the small BDE space that the search does not reach.
pub fn completeness_gaps(depth: usize) -> Result<(usize, Vec<Rule>)> {
    let sys = system("BDE")?;
    let preset = preset_structure(&sys.preset)?;
    let space = RuleSpace::new(&RuleSpaceBounds::single(2, 1, 2, &[Pred::T, Pred::E]))?;
    let rules: Vec<Rule> = space.iter().collect();
    let outcome: Vec<Option<(bool, Rule)>> = rules
        .par_iter()
        .map(|r| {
            if !holds(&preset, r)?.valid {
                return Ok(None);
            }
            let mut found = false;
            for extra_layers in 1..=COMPLETENESS_LAYERS {
                let opts = DeriveOptions { depth, extra_layers, fact_budget: DEFAULT_FACT_BUDGET };
                match derive_with(&sys, r, &opts) {
                    Ok(DeriveOutcome::Found(_)) => {
                        found = true;
                        break;
                    }
                    Ok(DeriveOutcome::Exhausted { .. }) | Err(Error::Budget(_)) => {}
                    Err(e) => return Err(e),
                }
            }
            Ok(Some((found, r.clone())))
        })
        .collect::<Result<_>>()?;
    let valid = outcome.iter().flatten().count();
    Ok((valid, outcome.into_iter().flatten().filter(|(f, _)| !f).map(|(_, r)| r).collect()))
}

pub(super) fn completeness(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let depth = cfg.depth.unwrap_or(DEFAULT_DERIVE_DEPTH);
    Ok(vec![timed(format!("BDE, two variables, term depth 1, two premises, search depth {depth}, up to {COMPLETENESS_LAYERS} term layers"), || {
        let (valid, gaps) = completeness_gaps(depth)?;
        let listed: Vec<String> = gaps.iter().map(print_rule).collect();
        Ok((true, format!("{valid} valid rules, {} without certificate: [{}]", gaps.len(), listed.join("; "))))
    })])
}

const POOL: [&str; 6] = ["x", "y", "z", "u", "v", "w"];

fn random_term(rng: &mut ChaCha8Rng, depth: usize) -> Term {
    let leaf = depth == 0 || rng.gen_bool(0.3);
    if leaf {
        return if rng.gen_bool(0.8) {
            Term::var(POOL[rng.gen_range(0..POOL.len())])
        } else {
            Term::constant(Constant::ALL[rng.gen_range(0..Constant::ALL.len())])
        };
    }
    match rng.gen_range(0..3) {
        0 => Term::neg(random_term(rng, depth - 1)),
        1 => Term::meet(random_term(rng, depth - 1), random_term(rng, depth - 1)),
        _ => Term::join(random_term(rng, depth - 1), random_term(rng, depth - 1)),
    }
}

fn random_formula(rng: &mut ChaCha8Rng) -> Formula {
    let p = Pred::ALL[rng.gen_range(0..Pred::ALL.len())];
    if p.arity() == 2 {
        Formula::eq(random_term(rng, 4), random_term(rng, 4))
    } else {
        Formula::unary(p, random_term(rng, 4))
    }
}

/// A pseudo-random rule with up to three premises and conclusions.
pub fn random_rule(rng: &mut ChaCha8Rng) -> Rule {
    let np = rng.gen_range(0..=3);
    let nc = rng.gen_range(0..=3);
    let premises: Vec<Formula> = (0..np).map(|_| random_formula(rng)).collect();
    let conclusions: Vec<Formula> = (0..nc).map(|_| random_formula(rng)).collect();
    Rule::new(premises, conclusions)
}

/// Rule texts whose printing must be stable: the ledger, every catalogue
/// axiom, and inputs using the `<=` and `#f` abbreviations.
pub fn golden_corpus() -> Vec<String> {
    let mut out: Vec<String> = ledger_entries().iter().map(|e| e.rule.to_string()).collect();
    for sys in all_systems() {
        out.extend(sys.axioms.iter().map(|a| print_rule(&a.rule)));
    }
    out.extend(
        [
            "x <= y |- T(x) | T(y)",
            "T(#f) |-",
            "|- #f <= x",
            "T((x))  ,E( ~ ~y)|-NF(x/\\y\\/z)",
            "T(x /\\ (y /\\ z)), T((x \\/ y) \\/ z) |- T(~(x /\\ y))",
        ]
        .map(String::from),
    );
    out.sort();
    out.dedup();
    out
}

fn roundtrip_generated(samples: usize, seed: u64) -> Result<(bool, String)> {
    let sig = full_sig();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bad = Vec::new();
    for _ in 0..samples {
        let r = random_rule(&mut rng);
        let text = print_rule(&r);
        match parse_rule(&text, &sig) {
            Ok(back) if back == r => {}
            _ => bad.push(text),
        }
    }
    let first = bad.first().map(|t| format!(", first: {t}")).unwrap_or_default();
    Ok((bad.is_empty(), format!("{samples} rules, seed {seed}, {} failures{first}", bad.len())))
}

fn roundtrip_golden() -> Result<(bool, String)> {
    let sig = full_sig();
    let corpus = golden_corpus();
    let mut bad = Vec::new();
    for text in &corpus {
        let once = print_rule(&parse_rule(text, &sig)?);
        let twice = print_rule(&parse_rule(&once, &sig).map_err(Error::from)?);
        if once != twice {
            bad.push(text.clone());
        }
    }
    Ok((bad.is_empty(), format!("{} rules, {} unstable", corpus.len(), bad.len())))
}

pub(super) fn roundtrip(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    Ok(vec![
        timed("parse of print is the identity on generated rules", || roundtrip_generated(cfg.samples, cfg.seed)),
        timed("print of parse is idempotent on the golden corpus", roundtrip_golden),
    ])
}
