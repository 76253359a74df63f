//! Command-line front end. `run` is the whole program minus process exit, so
//! tests can drive it directly.

use std::fmt::Write as _;
use std::path::Path;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::axioms::{
    derived_fact_sweep_with, goodness_coherence_counterexample, goodness_sweep, soundness_sweep_with, AxiomError,
    AxiomSchema, SoundnessReport, SweepLimits,
};
use crate::fixtures;
use crate::formula::{metrics, tau, FormulaError};
use crate::model::{validate, AnyModel, ModelKind, ValidationReport};
use crate::par::Exec;
use crate::search::{
    check_pair_equivalence, find_model, find_separating_pair, Mode, Outcome, SearchBounds, SearchError,
    SearchReport,
};
use crate::semantics::{self, EvalError, TraceEntry, Verdict};
use crate::syntax::{load_model, parse_formula, FormulaSyntaxError, LoadError, ModelDocument};
use crate::{Formula, Fragment, Name};

/// Environment variable that replaces the default cap when `--cap` is absent.
pub const CAP_ENV: &str = "EMOLOGIC_CAP";

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "emologic", version, about = "Check formulas of an epistemic logic of happiness and sadness")]
pub struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    pub json: bool,
    /// Print the evaluation trace (check only).
    #[arg(long, global = true)]
    pub trace: bool,
    /// Cap on enumerated instances or candidate models.
    #[arg(long, global = true, value_name = "N")]
    pub cap: Option<usize>,
    /// List the built-in fixtures and exit.
    #[arg(long)]
    pub list_fixtures: bool,
    /// Evaluate sequentially.
    #[arg(long, global = true)]
    pub sequential: bool,
    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SemanticsArg {
    Pref,
    Util,
    Good,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a formula at a world.
    Check {
        model: String,
        world: String,
        formula: String,
        #[arg(long, value_enum)]
        semantics: Option<SemanticsArg>,
    },
    /// Worlds where a formula holds, in declared order.
    Extension {
        model: String,
        formula: String,
        #[arg(long, value_enum)]
        semantics: Option<SemanticsArg>,
    },
    /// Validate a model file or fixture.
    Validate { model: String },
    /// Sweep axiom instances over a model.
    Axioms {
        #[arg(required_unless_present = "model_flag", conflicts_with = "model_flag")]
        model: Option<String>,
        #[arg(long = "model", value_name = "MODEL")]
        model_flag: Option<String>,
        #[arg(long, default_value_t = 1)]
        depth: usize,
        /// Check the derived theorems instead of the schemas.
        #[arg(long)]
        derived: bool,
        /// Only schemas whose name starts with this (case-insensitive).
        #[arg(long)]
        schema: Option<String>,
    },
    /// Translate a formula or take the converse of a model.
    Dual {
        #[arg(long, conflicts_with = "model", required_unless_present = "model")]
        formula: Option<String>,
        #[arg(long)]
        model: Option<String>,
    },
    /// Bounded model search.
    #[command(subcommand)]
    Search(SearchCommand),
    /// List the built-in fixtures.
    Fixtures,
}

#[derive(Debug, clap::Args)]
pub struct SignatureArgs {
    /// Agents of the enumerated models (default: those in the formula).
    #[arg(long, value_delimiter = ',')]
    pub agents: Vec<String>,
    /// Variables of the enumerated models (default: those in the formula).
    #[arg(long, value_delimiter = ',')]
    pub vars: Vec<String>,
    #[arg(long, default_value_t = 3)]
    pub max_worlds: usize,
}

#[derive(Debug, Subcommand)]
pub enum SearchCommand {
    /// First small model where a formula holds (or fails).
    Find {
        formula: String,
        #[arg(long, value_enum, default_value = "satisfy")]
        mode: Mode,
        #[command(flatten)]
        sig: SignatureArgs,
    },
    /// Two models that agree on a fragment but not on a target formula.
    Separate {
        #[arg(long, value_enum)]
        fragment: Fragment,
        #[arg(long)]
        target: String,
        #[arg(long, default_value_t = 3)]
        depth: usize,
        #[command(flatten)]
        sig: SignatureArgs,
    },
    /// Compare two models on every fragment formula up to a depth.
    Equiv {
        left: String,
        right: String,
        #[arg(long, value_enum, default_value = "full")]
        fragment: Fragment,
        #[arg(long, default_value_t = 3)]
        depth: usize,
    },
}

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionOutput {
    pub formula: Formula,
    pub worlds: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DualOutput {
    Formula(Formula),
    Model(ModelDocument),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub instance: Formula,
    pub world: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomsOutput {
    pub report: SoundnessReport,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixtureEntry {
    pub name: String,
    pub kind: ModelKind,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorOutput {
    pub error: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub line: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub column: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub validation: Option<ValidationReport>,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("cannot read `{path}`: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("`{0}` is neither a fixture nor a readable file")]
    UnknownModel(String),
    #[error("{0}")]
    Load(#[from] LoadError),
    #[error("{0}")]
    Syntax(#[from] FormulaSyntaxError),
    #[error("{0}")]
    Formula(#[from] FormulaError),
    #[error("{0}")]
    Eval(#[from] EvalError),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Axiom(AxiomError),
    #[error("{0}")]
    Search(SearchError),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Axiom(AxiomError::CapExceeded { .. }) | CliError::Search(SearchError::CapExceeded { .. }) => {
                EXIT_CAP
            }
            _ => EXIT_INPUT,
        }
    }

    fn to_output(&self) -> ErrorOutput {
        let (line, column) = match self {
            CliError::Syntax(FormulaSyntaxError::Parse(p)) | CliError::Load(LoadError::Parse(p)) => {
                (Some(p.line), Some(p.column))
            }
            CliError::Syntax(FormulaSyntaxError::NegativeDegree { line, column, .. }) => (Some(*line), Some(*column)),
            _ => (None, None),
        };
        ErrorOutput {
            error: self.to_string(),
            line,
            column,
            validation: match self {
                CliError::Load(e) => e.report().cloned(),
                _ => None,
            },
        }
    }
}

impl From<AxiomError> for CliError {
    fn from(e: AxiomError) -> Self {
        match e {
            AxiomError::Eval(e) => CliError::Eval(e),
            e => CliError::Axiom(e),
        }
    }
}

impl From<SearchError> for CliError {
    fn from(e: SearchError) -> Self {
        match e {
            SearchError::Eval(e) => CliError::Eval(e),
            e => CliError::Search(e),
        }
    }
}

struct Ctx {
    json: bool,
    trace: bool,
    cap: Option<usize>,
    exec: Exec,
}

/// Rendered output and exit code of a successful command.
struct Done {
    code: i32,
    text: String,
    json: String,
}

impl Done {
    fn new<T: Serialize>(code: i32, text: String, value: &T) -> Self {
        Done {
            code,
            text,
            json: serde_json::to_string_pretty(value).expect("outputs serialize"),
        }
    }
}

pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Output { code, stdout: text, stderr: String::new() }
            } else {
                Output { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let env_cap = std::env::var(CAP_ENV).ok().and_then(|v| v.trim().parse().ok());
    let ctx = Ctx {
        json: cli.json,
        trace: cli.trace,
        cap: cli.cap.or(env_cap),
        exec: if cli.sequential { Exec::Sequential } else { Exec::Parallel },
    };
    let result = match (&cli.command, cli.list_fixtures) {
        (_, true) | (Some(Command::Fixtures), _) => Ok(list_fixtures()),
        (Some(cmd), false) => dispatch(cmd, &ctx),
        (None, false) => Err(CliError::Usage("no command given; see --help".into())),
    };
    match result {
        Ok(done) => {
            let mut stdout = if ctx.json { done.json } else { done.text };
            if !stdout.ends_with('\n') {
                stdout.push('\n');
            }
            Output { code: done.code, stdout, stderr: String::new() }
        }
        Err(e) => {
            let stderr = if ctx.json {
                serde_json::to_string_pretty(&e.to_output()).expect("serializes") + "\n"
            } else {
                format!("error: {e}\n")
            };
            Output { code: e.code(), stdout: String::new(), stderr }
        }
    }
}

fn dispatch(cmd: &Command, ctx: &Ctx) -> Result<Done, CliError> {
    match cmd {
        Command::Check { model, world, formula, semantics } => check(ctx, model, world, formula, *semantics),
        Command::Extension { model, formula, semantics } => extension(model, formula, *semantics),
        Command::Validate { model } => validate_cmd(model),
        Command::Axioms { model, model_flag, depth, derived, schema } => {
            let name = model.as_ref().or(model_flag.as_ref()).expect("clap requires one");
            axioms(ctx, name, *depth, *derived, schema.as_deref())
        }
        Command::Dual { formula, model } => dual(formula.as_deref(), model.as_deref()),
        Command::Search(s) => search(ctx, s),
        Command::Fixtures => Ok(list_fixtures()),
    }
}

/// Fixture names win over paths.
fn resolve(reference: &str) -> Result<AnyModel, CliError> {
    if let Some(fx) = fixtures::FIXTURES.iter().find(|f| f.name == reference) {
        return Ok(load_model(fx.text)?);
    }
    let path = Path::new(reference);
    if !path.exists() {
        return Err(CliError::UnknownModel(reference.into()));
    }
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: reference.into(), source })?;
    Ok(load_model(&text)?)
}

fn with_semantics(model: AnyModel, sem: Option<SemanticsArg>) -> Result<AnyModel, CliError> {
    match (sem, model) {
        (None, m) => Ok(m),
        (Some(SemanticsArg::Pref), AnyModel::Utility(u)) => Ok(AnyModel::Preference(u.preferences_from_utilities())),
        (Some(SemanticsArg::Pref), m @ AnyModel::Preference(_))
        | (Some(SemanticsArg::Util), m @ AnyModel::Utility(_))
        | (Some(SemanticsArg::Good), m @ AnyModel::Goodness(_)) => Ok(m),
        (Some(s), m) => Err(CliError::Usage(format!(
            "{} semantics needs a matching model, got a {} model",
            match s {
                SemanticsArg::Pref => "preference",
                SemanticsArg::Util => "utility",
                SemanticsArg::Good => "goodness",
            },
            m.kind().as_str()
        ))),
    }
}

fn trace_line(out: &mut String, e: &TraceEntry) {
    let cond = serde_json::to_value(e.condition).expect("serializes");
    let _ = writeln!(
        out,
        "  {} @ {} [{}] {}",
        e.subformula,
        e.world,
        cond.as_str().unwrap_or_default(),
        if e.outcome { "true" } else { "false" }
    );
}

fn check(ctx: &Ctx, model: &str, world: &str, text: &str, sem: Option<SemanticsArg>) -> Result<Done, CliError> {
    let m = with_semantics(resolve(model)?, sem)?;
    let f = parse_formula(text)?;
    let v: Verdict = semantics::eval_any(&m, world, &f, ctx.trace)?;
    let mut out = String::from(if v.holds { "holds" } else { "fails" });
    out.push('\n');
    for e in v.trace.iter().flatten() {
        trace_line(&mut out, e);
    }
    Ok(Done::new(if v.holds { EXIT_OK } else { EXIT_FAIL }, out, &v))
}

fn extension(model: &str, text: &str, sem: Option<SemanticsArg>) -> Result<Done, CliError> {
    let m = with_semantics(resolve(model)?, sem)?;
    let f = parse_formula(text)?;
    let ext = semantics::extension(&m, &f)?;
    let worlds = m.signature().world_names(&ext);
    let text = if worlds.is_empty() { "(empty)".to_string() } else { worlds.join(" ") };
    Ok(Done::new(EXIT_OK, text, &ExtensionOutput { formula: f, worlds }))
}

fn validate_cmd(model: &str) -> Result<Done, CliError> {
    let report = match resolve(model) {
        Ok(m) => validate(&m),
        Err(CliError::Load(LoadError::Validation(r))) => r,
        Err(e) => return Err(e),
    };
    let text = if report.ok { "ok".to_string() } else { report.to_string() };
    Ok(Done::new(if report.ok { EXIT_OK } else { EXIT_FAIL }, text, &report))
}

fn schemas_matching(filter: Option<&str>) -> Result<Vec<AxiomSchema>, CliError> {
    let all = AxiomSchema::all();
    let Some(filter) = filter else { return Ok(all) };
    let needle = filter.to_ascii_lowercase();
    let picked: Vec<_> = all
        .into_iter()
        .filter(|s| {
            s.to_string().to_ascii_lowercase().starts_with(&needle)
                || s.family.name().to_ascii_lowercase().starts_with(&needle)
        })
        .collect();
    if picked.is_empty() {
        return Err(CliError::Usage(format!("no axiom schema matches `{filter}`")));
    }
    Ok(picked)
}

/// Failures listed in text mode.
const SHOWN_FAILURES: usize = 10;

fn render_report(r: &SoundnessReport) -> String {
    let mut out = format!(
        "{}: {} schema(s), depth {}, {} instance(s), {} failure(s)\n",
        r.model,
        r.schemas.len(),
        r.max_depth,
        r.instance_count,
        r.failures.len()
    );
    for t in &r.truncated {
        let agent = t.agent.as_ref().map(|a| format!(" for {a}")).unwrap_or_default();
        let _ = writeln!(out, "truncated {}{agent}: checked {} of {}", t.schema, t.checked, t.available);
    }
    for f in r.failures.iter().take(SHOWN_FAILURES) {
        let _ = writeln!(out, "FAIL {}: {} fails at {}", f.schema, f.instance, f.world);
    }
    if r.failures.len() > SHOWN_FAILURES {
        let _ = writeln!(out, "... {} more (use --json for all)", r.failures.len() - SHOWN_FAILURES);
    }
    out
}

fn axioms(ctx: &Ctx, name: &str, depth: usize, derived: bool, filter: Option<&str>) -> Result<Done, CliError> {
    let model = resolve(name)?;
    let mut limits = SweepLimits::default();
    if let Some(cap) = ctx.cap {
        limits.total = cap;
    }
    let schemas = schemas_matching(filter)?;
    let (report, counterexample) = match (&model, derived) {
        (AnyModel::Preference(m), true) => (derived_fact_sweep_with(m, name, depth, limits, ctx.exec)?, None),
        (AnyModel::Preference(m), false) => (soundness_sweep_with(m, name, &schemas, depth, limits, ctx.exec)?, None),
        (AnyModel::Goodness(g), false) => {
            let report = goodness_sweep(g, name, &schemas, depth, limits, ctx.exec)?;
            let (known, instance, world) = goodness_coherence_counterexample();
            let cx = (known == *g && schemas.iter().any(|s| instance_family_selected(s)))
                .then_some(Counterexample { instance, world });
            (report, cx)
        }
        (m, _) => {
            return Err(CliError::Usage(format!(
                "{} sweeps are not available for {} models",
                if derived { "derived-fact" } else { "axiom" },
                m.kind().as_str()
            )))
        }
    };
    let mut text = render_report(&report);
    if let Some(c) = &counterexample {
        let _ = writeln!(text, "counterexample: {} fails at {}", c.instance, c.world);
    }
    let code = if report.ok() { EXIT_OK } else { EXIT_FAIL };
    Ok(Done::new(code, text, &AxiomsOutput { report, counterexample }))
}

fn instance_family_selected(s: &AxiomSchema) -> bool {
    s.family == crate::axioms::Family::CoherenceSame && s.emotion == Some(crate::formula::Emotion::H)
}

fn dual(formula: Option<&str>, model: Option<&str>) -> Result<Done, CliError> {
    match (formula, model) {
        (Some(text), _) => {
            let t = tau(&parse_formula(text)?)?;
            Ok(Done::new(EXIT_OK, t.to_string(), &DualOutput::Formula(t)))
        }
        (None, Some(name)) => match resolve(name)? {
            AnyModel::Preference(m) => {
                let doc = ModelDocument::from_model(&AnyModel::Preference(m.converse()));
                Ok(Done::new(EXIT_OK, doc.to_json(), &DualOutput::Model(doc)))
            }
            other => Err(CliError::Usage(format!(
                "the converse is defined for preference models, got a {} model",
                other.kind().as_str()
            ))),
        },
        (None, None) => Err(CliError::Usage("give --formula or --model".into())),
    }
}

fn bounds_for(ctx: &Ctx, f: &Formula, sig: &SignatureArgs, depth: Option<usize>) -> SearchBounds {
    let m = metrics(f);
    let names = |given: &[String], used: &std::collections::BTreeSet<Name>, fallback: &str| -> Vec<Name> {
        if !given.is_empty() {
            given.iter().map(|s| Name::from(s.as_str())).collect()
        } else if !used.is_empty() {
            used.iter().cloned().collect()
        } else {
            vec![Name::new(fallback)]
        }
    };
    let mut b = SearchBounds {
        max_worlds: sig.max_worlds,
        agents: names(&sig.agents, &m.agents_used, "a"),
        vars: names(&sig.vars, &m.vars_used, "p"),
        ..SearchBounds::default()
    };
    if let Some(d) = depth {
        b.max_formula_depth = d;
    }
    if let Some(cap) = ctx.cap {
        b.cap = cap;
    }
    b
}

fn render_search(r: &SearchReport) -> String {
    let bounds = {
        let mut parts = Vec::new();
        if let Some(n) = r.max_worlds {
            parts.push(format!("up to {n} worlds"));
        }
        if let Some(frag) = r.fragment {
            parts.push(format!("fragment {frag}"));
        }
        if let Some(d) = r.max_formula_depth {
            parts.push(format!("formula depth {d}"));
        }
        parts.join(", ")
    };
    match &r.outcome {
        Outcome::WitnessFound { model, world, models_examined } => format!(
            "witness found at {world} (model {models_examined} examined; {bounds})\n{}",
            model.to_json()
        ),
        Outcome::Exhausted { models_examined } => {
            format!("exhausted: no witness among {models_examined} models ({bounds})")
        }
        Outcome::Distinguished { formula, world, left_holds, formulas_checked } => format!(
            "distinguished by {formula} at {world}: {} in left, {} in right ({formulas_checked} formulas; {bounds})",
            if *left_holds { "holds" } else { "fails" },
            if *left_holds { "fails" } else { "holds" },
        ),
        Outcome::Equivalent { formulas_checked } => {
            format!("equivalent on all {formulas_checked} formulas ({bounds})")
        }
        Outcome::SeparatingPair { left, right, target, world, left_holds, formulas_checked } => format!(
            "separating pair: {target} {} at {world} in left, {} in right; \
             the models agree on all {formulas_checked} fragment formulas ({bounds})\nleft:\n{}\nright:\n{}",
            if *left_holds { "holds" } else { "fails" },
            if *left_holds { "fails" } else { "holds" },
            left.to_json(),
            right.to_json()
        ),
    }
}

fn search(ctx: &Ctx, cmd: &SearchCommand) -> Result<Done, CliError> {
    let report = match cmd {
        SearchCommand::Find { formula, mode, sig } => {
            let f = parse_formula(formula)?;
            if f.has_degree() {
                return Err(CliError::Usage("search works on degree-free formulas".into()));
            }
            find_model(&f, *mode, &bounds_for(ctx, &f, sig, None), ctx.exec)?
        }
        SearchCommand::Separate { fragment, target, depth, sig } => {
            let f = parse_formula(target)?;
            find_separating_pair(*fragment, &f, &bounds_for(ctx, &f, sig, Some(*depth)), ctx.exec)?
        }
        SearchCommand::Equiv { left, right, fragment, depth } => {
            let load = |r: &str| match resolve(r)? {
                AnyModel::Preference(m) => Ok(m),
                other => Err(CliError::Usage(format!(
                    "`{r}` is a {} model; equivalence checks need preference models",
                    other.kind().as_str()
                ))),
            };
            check_pair_equivalence(&load(left)?, &load(right)?, *fragment, *depth, ctx.exec)?
        }
    };
    let code = match report.outcome {
        Outcome::WitnessFound { .. } | Outcome::Equivalent { .. } | Outcome::SeparatingPair { .. } => EXIT_OK,
        Outcome::Exhausted { .. } | Outcome::Distinguished { .. } => EXIT_FAIL,
    };
    Ok(Done::new(code, render_search(&report), &report))
}

fn list_fixtures() -> Done {
    let entries: Vec<FixtureEntry> = fixtures::FIXTURES
        .iter()
        .map(|f| FixtureEntry {
            name: f.name.into(),
            kind: load_model(f.text).expect("fixtures load").kind(),
            note: f.note.into(),
        })
        .collect();
    let width = entries.iter().map(|e| e.name.len()).max().unwrap_or(0);
    let mut text = String::new();
    for e in &entries {
        let _ = writeln!(text, "{:width$}  {:10}  {}", e.name, e.kind.as_str(), e.note);
    }
    Done::new(EXIT_OK, text, &entries)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cli(args: &[&str]) -> Output {
        run(std::iter::once("emologic").chain(args.iter().copied()))
    }

    #[test]
    fn check_exit_codes() {
        assert_eq!(cli(&["check", "gift", "u", "H[p] gift"]).code, 0);
        assert_eq!(cli(&["check", "gift", "t", "H[p] gift"]).code, 1);
        let bad = cli(&["check", "gift", "t", "H[p] (gift"]);
        assert_eq!(bad.code, 2);
        assert!(bad.stderr.contains("1:11"), "{}", bad.stderr);
    }

    #[test]
    fn extension_text() {
        assert_eq!(cli(&["extension", "gift", "S[p] !gift"]).stdout, "v t\n");
        assert_eq!(cli(&["extension", "gift", "gift & !gift"]).stdout, "(empty)\n");
    }

    #[test]
    fn semantics_flag_must_match() {
        assert_eq!(cli(&["check", "gift", "u", "H[p] gift", "--semantics", "util"]).code, 2);
        assert_eq!(cli(&["check", "battle-util", "(R,R)", "H[s] rus", "--semantics", "pref"]).code, 0);
    }

    #[test]
    fn usage_errors_are_code_two() {
        assert_eq!(cli(&["frobnicate"]).code, 2);
        assert_eq!(cli(&[]).code, 2);
        assert_eq!(cli(&["--help"]).code, 0);
        assert_eq!(cli(&["check", "nowhere.json", "w", "p"]).code, 2);
    }
}
