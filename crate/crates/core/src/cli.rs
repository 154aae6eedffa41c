//! Command-line front end. The `belnap` binary forwards to [`run`].
//!
//! Exit codes: `decide` 0 valid, 1 invalid, 2 usage; `derive` 0 found,
//! 1 refuted, 3 inconclusive, 2 usage; `verify` 0 pass, 1 fail, 2 usage.
//! Every JSON report has `"schema": 1` and records the effective
//! configuration, so equal configurations give byte-identical output.

use crate::algebra::{builtin, check_demorgan, check_kleene, enumerate_dm_lattices_with, Builtin, CensusOptions, OPT_IN_CENSUS_BOUND};
use crate::engine::{
    classify_models, decide_with, derive_with, enumerate_rules, DeriveOptions, DeriveOutcome, RuleSpaceBounds, DEFAULT_FACT_BUDGET,
};
use crate::json::{algebra_from_json, algebra_to_json, structure_from_json, AlgebraJson, CongruenceJson, StructureJson, SCHEMA};
use crate::leibniz::{leibniz_with, quotient_structure, LeibnizMethod};
use crate::structures::{preset_structure, HoldsOptions, Structure, DEFAULT_VAR_CEILING};
use crate::syntax::{parse_rule, print_rule, Constant, Pred, Rule, SigSpec};
use crate::systems::{system, system_names};
use crate::verify::{run_suite, Suite, VerifyConfig};
use crate::{Error, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Parser, Debug)]
#[command(name = "belnap", version, about = "Decide, derive and verify rules of four-valued relational logics")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Default)]
pub struct GlobalArgs {
    /// TOML file with defaults for the options below.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Seed for randomized sweeps.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Include wall-clock timings in reports.
    #[arg(long, global = true)]
    pub timings: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide a rule in a preset structure.
    Decide {
        #[arg(long, alias = "preset")]
        logic: String,
        rule: Option<String>,
        /// Rule file: one rule per line, `#` starts a comment.
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long)]
        max_vars: Option<usize>,
    },
    /// Search for a derivation certificate.
    Derive {
        #[arg(long)]
        system: String,
        rule: String,
        #[arg(long)]
        depth: Option<usize>,
        /// Layers of `~a` and `a \/ b` terms added to the search universe.
        #[arg(long)]
        layers: Option<usize>,
    },
    /// Run a named check suite.
    Verify {
        suite: String,
        /// Run over every registered system (the default when no system is named).
        #[arg(long)]
        all: bool,
        #[arg(long = "system")]
        systems: Vec<String>,
        #[arg(long, alias = "max-size")]
        size: Option<usize>,
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Enumerate and classify the models of a system.
    Classify {
        #[arg(long)]
        system: String,
        #[arg(long)]
        size: Option<usize>,
    },
    /// List the canonical rules within bounds.
    Enumerate {
        #[arg(long, default_value_t = 1)]
        vars: usize,
        #[arg(long, default_value_t = 1)]
        depth: usize,
        #[arg(long, default_value_t = 1)]
        premises: usize,
        #[arg(long, default_value_t = 1)]
        conclusions: usize,
        /// Relation symbols, e.g. `T,E,eq`.
        #[arg(long, value_delimiter = ',', default_value = "T")]
        preds: Vec<String>,
    },
    #[command(subcommand)]
    Systems(SystemsCmd),
    #[command(subcommand)]
    Algebra(AlgebraCmd),
    /// Leibniz congruence and reduct of a structure.
    Leibniz {
        #[arg(long, conflicts_with = "structure")]
        preset: Option<String>,
        /// Structure JSON file.
        #[arg(long)]
        structure: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = MethodArg::Search)]
        method: MethodArg,
    },
}

#[derive(Subcommand, Debug)]
pub enum SystemsCmd {
    List,
    Show {
        name: String,
        /// Print as a rule file.
        #[arg(long)]
        rules: bool,
    },
}

#[derive(Subcommand, Debug)]
pub enum AlgebraCmd {
    /// Print a builtin algebra or the algebra of a preset as JSON.
    Dump {
        name: String,
        /// Constants to interpret, e.g. `#t,#b`.
        #[arg(long, value_delimiter = ',')]
        constants: Vec<String>,
    },
    /// De Morgan lattices of a given size up to isomorphism.
    Census {
        #[arg(long)]
        size: usize,
        #[arg(long)]
        kleene: bool,
        /// Allow sizes above the default bound.
        #[arg(long)]
        large: bool,
    },
    /// Check the De Morgan and Kleene laws of an algebra JSON file.
    Check { file: PathBuf },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Search,
    Poly,
}

/// Defaults read from `--config`; explicit flags take precedence.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub format: Option<Format>,
    pub seed: Option<u64>,
    pub jobs: Option<usize>,
    pub timings: Option<bool>,
    pub depth: Option<usize>,
    pub size: Option<usize>,
    pub samples: Option<usize>,
    pub max_vars: Option<usize>,
    pub layers: Option<usize>,
}

/// The configuration a command actually ran with.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Effective {
    pub format: Format,
    pub seed: u64,
    #[serde(skip)]
    pub jobs: Option<usize>,
    #[serde(skip)]
    pub timings: bool,
    #[serde(skip)]
    pub file: FileConfig,
}

impl Effective {
    fn resolve(g: &GlobalArgs) -> Result<Effective> {
        let file: FileConfig = match &g.config {
            Some(p) => {
                let text = std::fs::read_to_string(p).map_err(|e| Error::Precondition(format!("{}: {e}", p.display())))?;
                toml::from_str(&text).map_err(|e| Error::Precondition(format!("{}: {e}", p.display())))?
            }
            None => FileConfig::default(),
        };
        Ok(Effective {
            format: g.format.or(file.format).unwrap_or_default(),
            seed: g.seed.or(file.seed).unwrap_or(0),
            jobs: g.jobs.or(file.jobs),
            timings: g.timings || file.timings.unwrap_or(false),
            file,
        })
    }
}

fn full_sig() -> SigSpec {
    SigSpec::new(Pred::ALL, Constant::ALL).expect("nonempty")
}

/// Rules of a rule file: one per line, `#` comments and blank lines skipped.
pub fn parse_rule_file(text: &str, sig: &SigSpec) -> Result<Vec<Rule>> {
    text.lines()
        .map(|l| strip_comment(l).trim())
        .filter(|l| !l.is_empty())
        .map(|l| Ok(parse_rule(l, sig)?))
        .collect()
}

/// Strips a trailing comment while keeping `#t`, `#n`, `#b` and the `#f` abbreviation.
fn strip_comment(line: &str) -> &str {
    let bytes = line.as_bytes();
    for (i, &c) in bytes.iter().enumerate() {
        if c == b'#' && !matches!(bytes.get(i + 1), Some(b't' | b'n' | b'b' | b'f')) {
            return &line[..i];
        }
    }
    line
}

fn read_rules(rule: &Option<String>, file: &Option<PathBuf>) -> Result<Vec<Rule>> {
    let sig = full_sig();
    match (rule, file) {
        (Some(r), None) => Ok(vec![parse_rule(r, &sig)?]),
        (None, Some(p)) => parse_rule_file(&std::fs::read_to_string(p).map_err(|e| Error::Precondition(format!("{}: {e}", p.display())))?, &sig),
        _ => Err(Error::Precondition("give exactly one of a rule or --file".into())),
    }
}

/// A preset by name, or the defining structure of a named system.
pub fn logic_structure(name: &str) -> Result<Structure> {
    match preset_structure(name) {
        Err(Error::UnknownPreset(_)) => match system(name) {
            Ok(sys) => preset_structure(&sys.preset),
            Err(_) => preset_structure(name),
        },
        other => other,
    }
}

struct Out<'a> {
    w: &'a mut dyn Write,
}

impl Out<'_> {
    fn line(&mut self, s: impl AsRef<str>) {
        let _ = writeln!(self.w, "{}", s.as_ref());
    }

    fn json(&mut self, v: &Value) {
        let _ = writeln!(self.w, "{}", serde_json::to_string_pretty(v).expect("serializable"));
    }
}

fn envelope(command: &str, eff: &Effective, extra: Value) -> Value {
    let mut v = json!({ "schema": SCHEMA, "command": command, "config": eff });
    if let (Value::Object(m), Value::Object(e)) = (&mut v, extra) {
        m.extend(e);
    }
    v
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code. Reports go to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return EXIT_USAGE;
            }
            let _ = write!(out, "{e}");
            return EXIT_OK;
        }
    };
    let eff = match Effective::resolve(&cli.global) {
        Ok(e) => e,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let body = || {
        let mut buf: Vec<u8> = Vec::new();
        let r = dispatch(&cli.command, &eff, &mut Out { w: &mut buf });
        (r, buf)
    };
    let result = match eff.jobs {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(body),
            Err(e) => (Err(Error::Precondition(format!("thread pool: {e}"))), Vec::new()),
        },
        None => body(),
    };
    let (result, buf) = result;
    let _ = out.write_all(&buf);
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn dispatch(cmd: &Command, eff: &Effective, out: &mut Out) -> Result<i32> {
    match cmd {
        Command::Decide { logic, rule, file, max_vars } => cmd_decide(eff, out, logic, rule, file, *max_vars),
        Command::Derive { system, rule, depth, layers } => cmd_derive(eff, out, system, rule, *depth, *layers),
        Command::Verify {
            suite,
            all,
            systems,
            size,
            depth,
            samples,
        } => cmd_verify(eff, out, suite, *all, systems, *size, *depth, *samples),
        Command::Classify { system, size } => cmd_classify(eff, out, system, *size),
        Command::Enumerate {
            vars,
            depth,
            premises,
            conclusions,
            preds,
        } => cmd_enumerate(eff, out, *vars, *depth, *premises, *conclusions, preds),
        Command::Systems(c) => cmd_systems(eff, out, c),
        Command::Algebra(c) => cmd_algebra(eff, out, c),
        Command::Leibniz { preset, structure, method } => cmd_leibniz(eff, out, preset, structure, *method),
    }
}

fn cmd_decide(eff: &Effective, out: &mut Out, logic: &str, rule: &Option<String>, file: &Option<PathBuf>, max_vars: Option<usize>) -> Result<i32> {
    let s = logic_structure(logic)?;
    let rules = read_rules(rule, file)?;
    let opts = HoldsOptions {
        max_vars: max_vars.or(eff.file.max_vars).unwrap_or(DEFAULT_VAR_CEILING),
    };
    let mut results = Vec::new();
    for r in &rules {
        let v = decide_with(&s, r, &opts)?;
        results.push((r, v));
    }
    let all_valid = results.iter().all(|(_, v)| v.valid);
    match eff.format {
        Format::Text => {
            for (r, v) in &results {
                match &v.counterexample {
                    None => out.line(format!("valid    {r}")),
                    Some(c) => out.line(format!("invalid  {r}    counter-valuation: {}", c.describe(&s))),
                }
            }
        }
        Format::Json => {
            let items: Vec<Value> = results
                .iter()
                .map(|(r, v)| {
                    let cx = v.counterexample.as_ref().map(|c| {
                        c.valuation.iter().map(|(x, &e)| (x.name().to_string(), Value::from(s.algebra().label(e)))).collect::<serde_json::Map<_, _>>()
                    });
                    json!({ "rule": print_rule(r), "valid": v.valid, "counter_valuation": cx })
                })
                .collect();
            out.json(&envelope("decide", eff, json!({ "logic": logic, "results": items })));
        }
    }
    Ok(if all_valid { EXIT_OK } else { EXIT_NO })
}

fn cmd_derive(eff: &Effective, out: &mut Out, name: &str, text: &str, depth: Option<usize>, layers: Option<usize>) -> Result<i32> {
    let sys = system(name)?;
    let r = parse_rule(text, &full_sig())?;
    sys.signature.admits(&r)?;
    let preset = preset_structure(&sys.preset)?;
    let verdict = decide_with(&preset, &r, &HoldsOptions::default())?;
    let opts = DeriveOptions {
        depth: depth.or(eff.file.depth).unwrap_or(DeriveOptions::default().depth),
        extra_layers: layers.or(eff.file.layers).unwrap_or(DeriveOptions::default().extra_layers),
        fact_budget: DEFAULT_FACT_BUDGET,
    };
    let params = json!({ "system": name, "rule": print_rule(&r), "depth": opts.depth, "layers": opts.extra_layers });
    if let Some(c) = verdict.counterexample {
        let cx = c.describe(&preset);
        match eff.format {
            Format::Text => out.line(format!("invalid in {}: counter-valuation {cx}", sys.preset)),
            Format::Json => out.json(&envelope("derive", eff, json!({ "params": params, "status": "invalid", "counter_valuation": cx }))),
        }
        return Ok(EXIT_NO);
    }
    let outcome = derive_with(&sys, &r, &opts)?;
    match (&outcome, eff.format) {
        (DeriveOutcome::Found(d), Format::Text) => {
            for (i, n) in d.nodes.iter().enumerate() {
                let why = match &n.justification {
                    crate::engine::Justification::Premise => "premise".to_string(),
                    crate::engine::Justification::Axiom { name, parents, .. } => {
                        let ps: Vec<String> = parents.iter().map(|p| p.to_string()).collect();
                        format!("{name} [{}]", ps.join(", "))
                    }
                };
                out.line(format!("{i:>3}  {:<40} {why}", n.formula));
            }
            out.line(format!("derived in {} steps", d.steps()));
        }
        (DeriveOutcome::Found(d), Format::Json) => {
            out.json(&envelope("derive", eff, json!({ "params": params, "status": "found", "certificate": d })));
        }
        (DeriveOutcome::Exhausted { depth, facts }, Format::Text) => {
            out.line(format!("inconclusive: no certificate within {depth} rounds ({facts} facts)"));
        }
        (DeriveOutcome::Exhausted { depth, facts }, Format::Json) => {
            out.json(&envelope("derive", eff, json!({ "params": params, "status": "inconclusive", "rounds": depth, "facts": facts })));
        }
    }
    Ok(match outcome {
        DeriveOutcome::Found(_) => EXIT_OK,
        DeriveOutcome::Exhausted { .. } => EXIT_INCONCLUSIVE,
    })
}

#[allow(clippy::too_many_arguments)]
fn cmd_verify(
    eff: &Effective,
    out: &mut Out,
    suite: &str,
    all: bool,
    systems: &[String],
    size: Option<usize>,
    depth: Option<usize>,
    samples: Option<usize>,
) -> Result<i32> {
    let suite = Suite::from_name(suite).ok_or_else(|| {
        let names: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
        Error::Precondition(format!("unknown suite {suite:?}; expected one of {}", names.join(", ")))
    })?;
    if all && !systems.is_empty() {
        return Err(Error::Precondition("--all and --system are exclusive".into()));
    }
    let cfg = VerifyConfig {
        max_size: size.or(eff.file.size),
        systems: systems.to_vec(),
        depth: depth.or(eff.file.depth),
        samples: samples.or(eff.file.samples).unwrap_or(VerifyConfig::default().samples),
        seed: eff.seed,
    };
    let mut report = run_suite(suite, &cfg)?;
    if !eff.timings {
        report = report.without_timings();
    }
    match eff.format {
        Format::Text => out.line(report.to_string()),
        Format::Json => out.json(&envelope(
            "verify",
            eff,
            json!({ "suite": suite, "bounds": cfg, "passed": report.passed(), "checks": report.checks }),
        )),
    }
    Ok(if report.passed() { EXIT_OK } else { EXIT_NO })
}

fn cmd_classify(eff: &Effective, out: &mut Out, name: &str, size: Option<usize>) -> Result<i32> {
    let sys = system(name)?;
    let size = size.or(eff.file.size).unwrap_or(4);
    let rep = classify_models(&sys, size)?;
    match eff.format {
        Format::Text => out.line(rep.to_string().trim_end()),
        Format::Json => {
            let reduced: Vec<StructureJson> = rep.reduced.iter().map(StructureJson::from).collect();
            let violations: Vec<Value> = rep
                .violations
                .iter()
                .map(|v| json!({ "structure": v.structure, "reduct": v.reduct, "shape": v.shape.to_string() }))
                .collect();
            let shapes: Vec<String> = rep.shapes.iter().map(|s| s.to_string()).collect();
            out.json(&envelope(
                "classify",
                eff,
                json!({
                    "system": rep.system, "max_size": rep.max_size, "shapes": shapes, "algebras": rep.algebras,
                    "structures": rep.structures, "models": rep.models, "reduced": reduced, "violations": violations,
                }),
            ));
        }
    }
    Ok(if rep.is_clean() { EXIT_OK } else { EXIT_NO })
}

fn cmd_enumerate(eff: &Effective, out: &mut Out, vars: usize, depth: usize, premises: usize, conclusions: usize, preds: &[String]) -> Result<i32> {
    let preds = preds
        .iter()
        .map(|p| Pred::from_name(p.trim()).ok_or_else(|| Error::Precondition(format!("unknown relation symbol {p:?}"))))
        .collect::<Result<Vec<_>>>()?;
    let bounds = RuleSpaceBounds {
        max_vars: vars,
        max_depth: depth,
        max_premises: premises,
        min_conclusions: conclusions.min(1),
        max_conclusions: conclusions,
        preds,
        constants: Vec::new(),
    };
    let rules = enumerate_rules(&bounds)?;
    match eff.format {
        Format::Text => rules.iter().for_each(|r| out.line(print_rule(r))),
        Format::Json => {
            let texts: Vec<String> = rules.iter().map(print_rule).collect();
            out.json(&envelope("enumerate", eff, json!({ "count": texts.len(), "rules": texts })));
        }
    }
    Ok(EXIT_OK)
}

fn cmd_systems(eff: &Effective, out: &mut Out, c: &SystemsCmd) -> Result<i32> {
    match c {
        SystemsCmd::List => {
            let names = system_names();
            match eff.format {
                Format::Text => {
                    for n in &names {
                        let s = system(n)?;
                        out.line(format!("{:<18} {:>3} axioms  {:<16} {}", n, s.axioms.len(), s.preset, s.summary));
                    }
                }
                Format::Json => {
                    let items: Vec<Value> = names
                        .iter()
                        .map(|n| {
                            let s = system(n).expect("registered");
                            json!({ "name": n, "preset": s.preset, "axioms": s.axioms.len(), "summary": s.summary })
                        })
                        .collect();
                    out.json(&envelope("systems list", eff, json!({ "systems": items })));
                }
            }
        }
        SystemsCmd::Show { name, rules } => {
            let s = system(name)?;
            if *rules {
                out.line(s.to_rule_file().trim_end());
                return Ok(EXIT_OK);
            }
            match eff.format {
                Format::Text => {
                    out.line(format!("{}: {}", s.name, s.summary));
                    out.line(format!("signature {}, defining structure {}", s.signature, s.preset));
                    for a in &s.axioms {
                        out.line(format!("  {:<12} {:<22} {}", a.role.to_string(), a.name, a.rule));
                    }
                }
                Format::Json => {
                    let axioms: Vec<Value> = s
                        .axioms
                        .iter()
                        .map(|a| json!({ "name": a.name, "role": a.role.to_string(), "rule": print_rule(&a.rule) }))
                        .collect();
                    out.json(&envelope(
                        "systems show",
                        eff,
                        json!({ "name": s.name, "preset": s.preset, "summary": s.summary, "signature": s.signature.to_string(), "axioms": axioms }),
                    ));
                }
            }
        }
    }
    Ok(EXIT_OK)
}

fn cmd_algebra(eff: &Effective, out: &mut Out, c: &AlgebraCmd) -> Result<i32> {
    match c {
        AlgebraCmd::Dump { name, constants } => {
            let a = match Builtin::from_name(name) {
                Some(b) => {
                    let cs = constants
                        .iter()
                        .map(|c| Constant::from_symbol(c.trim()).ok_or_else(|| Error::Precondition(format!("unknown constant {c:?}"))))
                        .collect::<Result<Vec<_>>>()?;
                    builtin(b, &cs)?
                }
                None => preset_structure(name)?.algebra().clone(),
            };
            out.line(algebra_to_json(&a));
            Ok(EXIT_OK)
        }
        AlgebraCmd::Census { size, kleene, large } => {
            let opts = CensusOptions {
                bound: if *large { OPT_IN_CENSUS_BOUND } else { CensusOptions::default().bound },
                allow_large: *large,
            };
            let algs = enumerate_dm_lattices_with(*size, *kleene, &opts)?;
            match eff.format {
                Format::Text => {
                    out.line(format!("{} {} lattices of size {size}", algs.len(), if *kleene { "Kleene" } else { "De Morgan" }));
                    for (i, a) in algs.iter().enumerate() {
                        let neg: Vec<String> = a.elems().map(|x| format!("{}->{}", a.label(x), a.label(a.neg(x)))).collect();
                        out.line(format!("  #{i}  kleene={}  neg: {}", a.is_kleene(), neg.join(" ")));
                    }
                }
                Format::Json => {
                    let items: Vec<AlgebraJson> = algs.iter().map(AlgebraJson::from).collect();
                    out.json(&envelope("algebra census", eff, json!({ "size": size, "kleene_only": kleene, "algebras": items })));
                }
            }
            Ok(EXIT_OK)
        }
        AlgebraCmd::Check { file } => {
            let text = std::fs::read_to_string(file).map_err(|e| Error::Precondition(format!("{}: {e}", file.display())))?;
            let a = algebra_from_json(&text)?;
            let (dm, dm_v) = check_demorgan(&a);
            let (kl, kl_v) = check_kleene(&a);
            match eff.format {
                Format::Text => {
                    out.line(format!("De Morgan: {}", dm_v.as_ref().map_or("yes".to_string(), |v| format!("no ({v})"))));
                    out.line(format!("Kleene:    {}", kl_v.as_ref().map_or("yes".to_string(), |v| format!("no ({v})"))));
                }
                Format::Json => out.json(&envelope(
                    "algebra check",
                    eff,
                    json!({
                        "demorgan": dm, "demorgan_violation": dm_v.map(|v| v.to_string()),
                        "kleene": kl, "kleene_violation": kl_v.map(|v| v.to_string()),
                    }),
                )),
            }
            Ok(if dm { EXIT_OK } else { EXIT_NO })
        }
    }
}

fn cmd_leibniz(eff: &Effective, out: &mut Out, preset: &Option<String>, file: &Option<PathBuf>, method: MethodArg) -> Result<i32> {
    let s: Structure = match (preset, file) {
        (Some(p), None) => preset_structure(p)?,
        (None, Some(f)) => structure_from_json(&std::fs::read_to_string(f).map_err(|e| Error::Precondition(format!("{}: {e}", f.display())))?)?,
        _ => return Err(Error::Precondition("give exactly one of --preset or --structure".into())),
    };
    let method = match method {
        MethodArg::Search => LeibnizMethod::CongruenceSearch,
        MethodArg::Poly => LeibnizMethod::Polynomials,
    };
    let mut theta = crate::algebra::Congruence::total(s.size());
    for r in s.relations().values() {
        theta = theta.meet(&leibniz_with(s.algebra(), r, method)?.congruence);
    }
    let (reduct, _) = quotient_structure(&s, &theta)?;
    match eff.format {
        Format::Text => {
            let classes: Vec<String> = theta
                .classes()
                .iter()
                .map(|c| format!("{{{}}}", c.iter().map(|&e| s.algebra().label(e)).collect::<Vec<_>>().join(",")))
                .collect();
            out.line(format!("classes  {}", classes.join(" ")));
            out.line(format!("reduced  {}", theta.is_identity()));
            out.line(format!("reduct   {}", crate::engine::describe(&reduct)));
        }
        Format::Json => {
            let doc = CongruenceJson::new(&s, &theta);
            out.json(&envelope(
                "leibniz",
                eff,
                json!({ "input": doc, "reduced": theta.is_identity(), "reduct": StructureJson::from(&reduct) }),
            ));
        }
    }
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("belnap").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn decide_exit_codes() {
        assert_eq!(call(&["decide", "--logic", "BDNF", "T(x), NF(~x \\/ y) |- NF(y)"]).0, 0);
        let (code, out, _) = call(&["decide", "--logic", "BD", "T(x /\\ (~x \\/ y)) |- T(y)"]);
        assert_eq!(code, 1);
        assert!(out.contains("x -> b, y -> f"));
        assert_eq!(call(&["decide", "--logic", "BD", "T(x), T(y) |- x = y"]).0, 2);
        assert_eq!(call(&["decide", "--logic", "BD", "T(x"]).0, 2);
        assert_eq!(call(&["decide", "--logic", "MC-ETL", "E(x \\/ y) |- E(~x \\/ ~y) | E(x) | E(y)"]).0, 0);
        assert_eq!(call(&["decide", "--logic", "no-such-logic", "T(x) |- T(x)"]).0, 2);
        assert_eq!(call(&["decide", "--logic", "ETL", "E(x \\/ y) |- E(~x \\/ ~y) | E(x) | E(y)"]).0, 0);
    }

    #[test]
    fn derive_exit_codes() {
        assert_eq!(call(&["derive", "--system", "BDE", "--depth", "6", "E(x /\\ (~x \\/ y)) |- E(y)"]).0, 0);
        let (code, out, _) = call(&["derive", "--system", "BDE", "E(x) |- E(x)"]);
        assert_eq!(code, 0);
        assert!(out.contains("derived in 0 steps"));
        assert_eq!(call(&["derive", "--system", "BD-base", "T(x) |- T(~x)"]).0, 1);
        assert_eq!(call(&["derive", "--system", "BD-base", "--depth", "0", "T(x) |- T(x \\/ y)"]).0, 3);
        assert_eq!(call(&["derive", "--system", "nope", "T(x) |- T(x)"]).0, 2);
        assert_eq!(call(&["derive", "--system", "BDE"]).0, 2);
    }

    #[test]
    fn verify_exit_codes_and_determinism() {
        assert_eq!(call(&["verify", "unknown-suite"]).0, 2);
        let a = call(&["--format", "json", "verify", "subdirect", "--max-size", "4"]);
        let b = call(&["--format", "json", "verify", "subdirect", "--max-size", "4"]);
        assert_eq!(a.0, 0);
        assert_eq!(a.1, b.1);
        assert!(!a.1.contains("millis"));
        let v: Value = serde_json::from_str(&a.1).unwrap();
        assert_eq!(v["schema"], 1);
        assert_eq!(v["config"]["seed"], 0);
        assert!(call(&["--timings", "verify", "subdirect", "--max-size", "3"]).1.contains(" ms)"));
    }

    #[test]
    fn config_file_is_merged_under_flags() {
        let dir = std::env::temp_dir().join(format!("belnap-cli-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let cfg = dir.join("run.toml");
        std::fs::write(&cfg, "format = \"json\"\nseed = 7\n").unwrap();
        let c = cfg.to_str().unwrap();
        let (_, out, _) = call(&["--config", c, "systems", "list"]);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["config"]["seed"], 7);
        let (_, out, _) = call(&["--config", c, "--seed", "9", "--format", "text", "systems", "list"]);
        assert!(out.starts_with("BD-base"));
        std::fs::write(&cfg, "colour = 1\n").unwrap();
        assert_eq!(call(&["--config", c, "systems", "list"]).0, 2);
        std::fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn rule_files_keep_constants() {
        assert_eq!(strip_comment("|- T(#t) # top is true"), "|- T(#t) ");
        assert_eq!(strip_comment("# whole line"), "");
        let rules = parse_rule_file("T(x) |- T(x)\n\n# c\n", &full_sig()).unwrap();
        assert_eq!(rules.len(), 1);
    }

    #[test]
    fn algebra_and_leibniz_commands() {
        let (code, out, _) = call(&["algebra", "dump", "DM4", "--constants", "#t"]);
        assert_eq!(code, 0);
        assert_eq!(algebra_from_json(&out).unwrap(), builtin(Builtin::DM4, &[Constant::Top]).unwrap());
        let (code, out, _) = call(&["algebra", "census", "--size", "4"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("3 De Morgan lattices of size 4"));
        let (code, out, _) = call(&["leibniz", "--preset", "BD"]);
        assert_eq!(code, 0);
        assert!(out.contains("reduced  true"));
        let dir = std::env::temp_dir().join(format!("belnap-leibniz-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let file = dir.join("s.json");
        let s = Structure::with_unary(builtin(Builtin::DM4, &[]).unwrap(), &[(Pred::T, crate::algebra::Subset(0))], None).unwrap();
        std::fs::write(&file, crate::json::structure_to_json(&s)).unwrap();
        let (code, out, _) = call(&["leibniz", "--structure", file.to_str().unwrap(), "--method", "poly"]);
        assert_eq!(code, 0);
        assert!(out.contains("classes  {f,b,n,t}") && out.contains("reduced  false"), "{out}");
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
