//! Axiom schemas of the logic, instantiated and checked on concrete models.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fixtures;
use crate::formula::{enumerate, Emotion, Formula, Fragment};
use crate::model::{EpistemicModel, GoodnessModel};
use crate::par::{map_chunks, Exec};
use crate::semantics::{EvalError, Evaluator, ModelRef};
use crate::Name;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    #[serde(rename = "Truth-N")]
    TruthN,
    #[serde(rename = "Truth-K")]
    TruthK,
    #[serde(rename = "Truth-E")]
    TruthE,
    #[serde(rename = "Distributivity-N")]
    DistributivityN,
    #[serde(rename = "Distributivity-K")]
    DistributivityK,
    #[serde(rename = "NegIntro-N")]
    NegIntroN,
    #[serde(rename = "NegIntro-K")]
    NegIntroK,
    KnowledgeOfNecessity,
    EmotionalIntrospection,
    EmotionalConsistency,
    CoherenceSame,
    CoherenceOpposite,
    Counterfactual,
    PredictabilityH,
    PredictabilityS,
    Substitution,
}

impl Family {
    pub const ALL: [Family; 16] = [
        Family::TruthN,
        Family::TruthK,
        Family::TruthE,
        Family::DistributivityN,
        Family::DistributivityK,
        Family::NegIntroN,
        Family::NegIntroK,
        Family::KnowledgeOfNecessity,
        Family::EmotionalIntrospection,
        Family::EmotionalConsistency,
        Family::CoherenceSame,
        Family::CoherenceOpposite,
        Family::Counterfactual,
        Family::PredictabilityH,
        Family::PredictabilityS,
        Family::Substitution,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::TruthN => "Truth-N",
            Family::TruthK => "Truth-K",
            Family::TruthE => "Truth-E",
            Family::DistributivityN => "Distributivity-N",
            Family::DistributivityK => "Distributivity-K",
            Family::NegIntroN => "NegIntro-N",
            Family::NegIntroK => "NegIntro-K",
            Family::KnowledgeOfNecessity => "KnowledgeOfNecessity",
            Family::EmotionalIntrospection => "EmotionalIntrospection",
            Family::EmotionalConsistency => "EmotionalConsistency",
            Family::CoherenceSame => "CoherenceSame",
            Family::CoherenceOpposite => "CoherenceOpposite",
            Family::Counterfactual => "Counterfactual",
            Family::PredictabilityH => "PredictabilityH",
            Family::PredictabilityS => "PredictabilityS",
            Family::Substitution => "Substitution",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            Family::DistributivityN
            | Family::DistributivityK
            | Family::CoherenceSame
            | Family::CoherenceOpposite
            | Family::Substitution => 2,
            _ => 1,
        }
    }

    /// Families stated for an emotion variable ranging over H and S.
    pub fn has_emotion_slot(self) -> bool {
        matches!(
            self,
            Family::TruthE
                | Family::EmotionalIntrospection
                | Family::CoherenceSame
                | Family::Counterfactual
                | Family::Substitution
        )
    }

    /// Families that mention no agent.
    pub fn agent_free(self) -> bool {
        matches!(self, Family::TruthN | Family::DistributivityN | Family::NegIntroN)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AxiomSchema {
    pub family: Family,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub emotion: Option<Emotion>,
}

impl fmt::Display for AxiomSchema {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.emotion {
            Some(e) => write!(f, "{}[{e}]", self.family.name()),
            None => f.write_str(self.family.name()),
        }
    }
}

impl AxiomSchema {
    pub fn new(family: Family, emotion: Option<Emotion>) -> Self {
        AxiomSchema { family, emotion }
    }

    /// Every concrete schema, with both emotions for the emotion families.
    pub fn all() -> Vec<AxiomSchema> {
        let mut out = Vec::new();
        for fam in Family::ALL {
            if fam.has_emotion_slot() {
                out.push(AxiomSchema::new(fam, Some(Emotion::H)));
                out.push(AxiomSchema::new(fam, Some(Emotion::S)));
            } else {
                out.push(AxiomSchema::new(fam, None));
            }
        }
        out
    }

    pub fn arity(&self) -> usize {
        self.family.arity()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AxiomError {
    #[error("schema {schema} takes {expected} formula(s), got {given}")]
    ArityMismatch {
        schema: String,
        expected: usize,
        given: usize,
    },
    #[error("schema {0} needs an emotion (H or S)")]
    MissingEmotion(String),
    #[error("{count} instances exceed the cap of {cap}")]
    CapExceeded { count: usize, cap: usize },
    #[error(transparent)]
    Eval(#[from] EvalError),
}

/// Fills the slots of `schema`. `psi` must be given exactly for two-slot
/// schemas.
pub fn instantiate(
    schema: AxiomSchema,
    agent: &Name,
    phi: &Formula,
    psi: Option<&Formula>,
) -> Result<Formula, AxiomError> {
    use Formula as F;
    let given = 1 + psi.is_some() as usize;
    if given != schema.arity() {
        return Err(AxiomError::ArityMismatch {
            schema: schema.to_string(),
            expected: schema.arity(),
            given,
        });
    }
    let e = match (schema.family.has_emotion_slot(), schema.emotion) {
        (true, None) => return Err(AxiomError::MissingEmotion(schema.to_string())),
        (_, e) => e.unwrap_or(Emotion::H),
    };
    let a = || agent.clone();
    let p = || phi.clone();
    let q = || psi.cloned().expect("arity checked");
    let emo = |g: Formula| F::emotion(e, a(), g);
    Ok(match schema.family {
        Family::TruthN => F::implies(F::nec(p()), p()),
        Family::TruthK => F::implies(F::knows(a(), p()), p()),
        Family::TruthE => F::implies(emo(p()), p()),
        Family::DistributivityN => F::implies(
            F::nec(F::implies(p(), q())),
            F::implies(F::nec(p()), F::nec(q())),
        ),
        Family::DistributivityK => F::implies(
            F::knows(a(), F::implies(p(), q())),
            F::implies(F::knows(a(), p()), F::knows(a(), q())),
        ),
        Family::NegIntroN => F::implies(F::not(F::nec(p())), F::nec(F::not(F::nec(p())))),
        Family::NegIntroK => F::implies(
            F::not(F::knows(a(), p())),
            F::knows(a(), F::not(F::knows(a(), p()))),
        ),
        Family::KnowledgeOfNecessity => F::implies(F::nec(p()), F::knows(a(), p())),
        Family::EmotionalIntrospection => F::implies(emo(p()), F::knows(a(), emo(p()))),
        Family::EmotionalConsistency => {
            F::implies(F::happy(a(), p()), F::not(F::sad(a(), p())))
        }
        Family::CoherenceSame => F::implies(
            F::and(F::nbar(emo(p())), F::nbar(emo(q()))),
            F::or(F::nec(F::implies(p(), q())), F::nec(F::implies(q(), p()))),
        ),
        Family::CoherenceOpposite => F::implies(
            F::and(F::nbar(F::happy(a(), p())), F::nbar(F::sad(a(), q()))),
            F::or(
                F::nec(F::implies(p(), F::not(q()))),
                F::nec(F::implies(F::not(q()), p())),
            ),
        ),
        Family::Counterfactual => F::implies(emo(p()), F::not(F::nec(p()))),
        Family::PredictabilityH => F::implies(
            F::or(F::nbar(F::happy(a(), p())), F::nbar(F::sad(a(), F::not(p())))),
            F::implies(F::knows(a(), p()), F::happy(a(), p())),
        ),
        Family::PredictabilityS => F::implies(
            F::or(F::nbar(F::happy(a(), F::not(p()))), F::nbar(F::sad(a(), p()))),
            F::implies(F::knows(a(), p()), F::sad(a(), p())),
        ),
        Family::Substitution => {
            F::implies(F::nec(F::iff(p(), q())), F::implies(emo(p()), emo(q())))
        }
    })
}

/// A derived theorem checked by [`derived_fact_sweep`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DerivedFact {
    /// `E[a] phi -> K[a] phi`
    EmotionImpliesKnowledge(Emotion),
    /// `N phi -> N N phi`
    PositiveIntrospectionN,
    /// `K[a] phi -> K[a] K[a] phi`
    PositiveIntrospectionK,
}

impl DerivedFact {
    pub const ALL: [DerivedFact; 4] = [
        DerivedFact::EmotionImpliesKnowledge(Emotion::H),
        DerivedFact::EmotionImpliesKnowledge(Emotion::S),
        DerivedFact::PositiveIntrospectionN,
        DerivedFact::PositiveIntrospectionK,
    ];

    pub fn instantiate(self, agent: &Name, phi: &Formula) -> Formula {
        use Formula as F;
        let p = || phi.clone();
        match self {
            DerivedFact::EmotionImpliesKnowledge(e) => {
                F::implies(F::emotion(e, agent.clone(), p()), F::knows(agent.clone(), p()))
            }
            DerivedFact::PositiveIntrospectionN => F::implies(F::nec(p()), F::nec(F::nec(p()))),
            DerivedFact::PositiveIntrospectionK => F::implies(
                F::knows(agent.clone(), p()),
                F::knows(agent.clone(), F::knows(agent.clone(), p())),
            ),
        }
    }

    fn agent_free(self) -> bool {
        self == DerivedFact::PositiveIntrospectionN
    }
}

impl fmt::Display for DerivedFact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DerivedFact::EmotionImpliesKnowledge(e) => write!(f, "{e}-implies-K"),
            DerivedFact::PositiveIntrospectionN => f.write_str("PosIntro-N"),
            DerivedFact::PositiveIntrospectionK => f.write_str("PosIntro-K"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub schema: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub agent: Option<Name>,
    pub phi: Formula,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub psi: Option<Formula>,
    pub instance: Formula,
    /// First world, in declared order, where the instance is false.
    pub world: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Truncation {
    pub schema: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub agent: Option<Name>,
    pub available: usize,
    pub checked: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SoundnessReport {
    pub model: String,
    pub max_depth: usize,
    pub schemas: Vec<String>,
    pub instance_count: usize,
    pub truncated: Vec<Truncation>,
    pub failures: Vec<Failure>,
}

impl SoundnessReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepLimits {
    /// Instances per (schema, agent); later pairs are skipped, in order.
    pub per_schema: usize,
    /// Refuse outright when more instances than this would be checked.
    pub total: usize,
}

pub const DEFAULT_PER_SCHEMA_CAP: usize = 20_000;
pub const DEFAULT_TOTAL_CAP: usize = 1_000_000;

impl Default for SweepLimits {
    fn default() -> Self {
        SweepLimits {
            per_schema: DEFAULT_PER_SCHEMA_CAP,
            total: DEFAULT_TOTAL_CAP,
        }
    }
}

/// One named instance builder, run over one agent.
struct Job {
    label: String,
    agent: Option<Name>,
    arity: usize,
    build: Box<dyn Fn(&Name, &Formula, Option<&Formula>) -> Formula + Sync + Send>,
    count: usize,
}

fn run_jobs<'m>(
    model: ModelRef<'m>,
    name: &str,
    max_depth: usize,
    labels: Vec<String>,
    jobs: Vec<(String, usize, Box<dyn Fn(&Name, &Formula, Option<&Formula>) -> Formula + Sync + Send>, bool)>,
    limits: SweepLimits,
    exec: Exec,
) -> Result<SoundnessReport, AxiomError> {
    let sig = model.frame().signature();
    let vars: Vec<Name> = sig.vars().iter().cloned().collect();
    let agents: Vec<Name> = sig.agents().iter().cloned().collect();
    let formulas = enumerate(&vars, &agents, max_depth, Fragment::Full);
    let pool: Vec<Formula> = formulas.iter().collect();
    let k = pool.len();

    let mut expanded = Vec::new();
    let mut truncated = Vec::new();
    for (label, arity, build, agent_free) in jobs {
        let build: std::sync::Arc<dyn Fn(&Name, &Formula, Option<&Formula>) -> Formula + Sync + Send> =
            build.into();
        let who: Vec<Option<Name>> = if agent_free {
            vec![None]
        } else {
            agents.iter().cloned().map(Some).collect()
        };
        for agent in who {
            let available = if arity == 2 { k * k } else { k };
            let count = available.min(limits.per_schema);
            if count < available {
                truncated.push(Truncation {
                    schema: label.clone(),
                    agent: agent.clone(),
                    available,
                    checked: count,
                });
            }
            let b = build.clone();
            expanded.push(Job {
                label: label.clone(),
                agent,
                arity,
                build: Box::new(move |a, p, q| b(a, p, q)),
                count,
            });
        }
    }
    let total: usize = expanded.iter().map(|j| j.count).sum();
    if total > limits.total {
        return Err(AxiomError::CapExceeded {
            count: total,
            cap: limits.total,
        });
    }

    // Flatten (job, index) into one global instance range.
    let mut offsets = Vec::with_capacity(expanded.len());
    let mut acc = 0;
    for j in &expanded {
        offsets.push(acc);
        acc += j.count;
    }
    let placeholder = agents.first().cloned().unwrap_or_else(|| Name::new("_"));
    let parts = map_chunks(total, exec, |range| -> Result<Vec<Failure>, EvalError> {
        let mut ev = Evaluator::new(model);
        let mut out = Vec::new();
        for g in range {
            let ji = offsets.partition_point(|&o| o <= g) - 1;
            let job = &expanded[ji];
            let i = g - offsets[ji];
            let (phi, psi) = if job.arity == 2 {
                (&pool[i / k], Some(&pool[i % k]))
            } else {
                (&pool[i], None)
            };
            let agent = job.agent.as_ref().unwrap_or(&placeholder);
            let inst = (job.build)(agent, phi, psi);
            let ext = ev.extension(&inst)?;
            if let Some(w) = ext.complement().first() {
                out.push(Failure {
                    schema: job.label.clone(),
                    agent: job.agent.clone(),
                    phi: phi.clone(),
                    psi: psi.cloned(),
                    instance: inst,
                    world: sig.world(w).to_string(),
                });
            }
        }
        Ok(out)
    });
    let mut failures = Vec::new();
    for p in parts {
        failures.extend(p?);
    }
    Ok(SoundnessReport {
        model: name.to_string(),
        max_depth,
        schemas: labels,
        instance_count: total,
        truncated,
        failures,
    })
}

/// Checks every instance of `schemas` over formulas up to `max_depth` for
/// validity in `model`.
pub fn soundness_sweep_with(
    model: &EpistemicModel,
    name: &str,
    schemas: &[AxiomSchema],
    max_depth: usize,
    limits: SweepLimits,
    exec: Exec,
) -> Result<SoundnessReport, AxiomError> {
    schema_sweep(model.into(), name, schemas, max_depth, limits, exec)
}

pub(crate) fn schema_sweep(
    model: ModelRef<'_>,
    name: &str,
    schemas: &[AxiomSchema],
    max_depth: usize,
    limits: SweepLimits,
    exec: Exec,
) -> Result<SoundnessReport, AxiomError> {
    let mut jobs = Vec::new();
    for &s in schemas {
        // Validates the emotion slot once, up front.
        let probe = Formula::var("p");
        instantiate(s, &Name::new("a"), &probe, (s.arity() == 2).then_some(&probe))?;
        jobs.push((
            s.to_string(),
            s.arity(),
            Box::new(move |a: &Name, p: &Formula, q: Option<&Formula>| {
                instantiate(s, a, p, q).expect("arity checked")
            }) as Box<dyn Fn(&Name, &Formula, Option<&Formula>) -> Formula + Sync + Send>,
            s.family.agent_free(),
        ));
    }
    let labels = schemas.iter().map(|s| s.to_string()).collect();
    run_jobs(model, name, max_depth, labels, jobs, limits, exec)
}

/// Every schema with default limits.
pub fn soundness_sweep(model: &EpistemicModel, name: &str, max_depth: usize) -> Result<SoundnessReport, AxiomError> {
    soundness_sweep_with(model, name, &AxiomSchema::all(), max_depth, SweepLimits::default(), Exec::default())
}

/// Same mechanics for the derived theorems.
pub fn derived_fact_sweep_with(
    model: &EpistemicModel,
    name: &str,
    max_depth: usize,
    limits: SweepLimits,
    exec: Exec,
) -> Result<SoundnessReport, AxiomError> {
    let jobs = DerivedFact::ALL
        .iter()
        .map(|&d| {
            (
                d.to_string(),
                1,
                Box::new(move |a: &Name, p: &Formula, _: Option<&Formula>| d.instantiate(a, p))
                    as Box<dyn Fn(&Name, &Formula, Option<&Formula>) -> Formula + Sync + Send>,
                d.agent_free(),
            )
        })
        .collect();
    let labels = DerivedFact::ALL.iter().map(|d| d.to_string()).collect();
    run_jobs(model.into(), name, max_depth, labels, jobs, limits, exec)
}

pub fn derived_fact_sweep(model: &EpistemicModel, name: &str, max_depth: usize) -> Result<SoundnessReport, AxiomError> {
    derived_fact_sweep_with(model, name, max_depth, SweepLimits::default(), Exec::default())
}

/// An instance of same-emotion coherence that fails under the goodness
/// semantics, with a world refuting it.
///
/// In the strict goodness model agent `s` is potentially happy both about being
/// in the Russian restaurant and about the two of them dining together, yet
/// neither statement implies the other everywhere.
pub fn goodness_coherence_counterexample() -> (GoodnessModel, Formula, String) {
    let model = fixtures::goodness("battle-good-strict").expect("built-in fixture");
    let schema = AxiomSchema::new(Family::CoherenceSame, Some(Emotion::H));
    let inst = instantiate(
        schema,
        &Name::new("s"),
        &Formula::var("rus_s"),
        Some(&Formula::var("same")),
    )
    .expect("two-slot schema");
    let mut ev = Evaluator::new(&model);
    let refuted = ev.extension(&inst).expect("fixture symbols").complement();
    // The instance only talks about the whole model, so it fails everywhere;
    // report a world where both emotions are actually felt.
    let mut felt = refuted.clone();
    for v in ["rus_s", "same"] {
        felt = felt.intersection(&ev.extension(&Formula::happy("s", Formula::var(v))).expect("fixture symbols"));
    }
    let w = refuted
        .intersection(&felt)
        .first()
        .or(refuted.first())
        .expect("coherence fails in the strict model");
    let world = model.signature().world(w).to_string();
    (model, inst, world)
}

/// Sweep over a goodness model, used to expose the failing schemas.
pub fn goodness_sweep(
    model: &GoodnessModel,
    name: &str,
    schemas: &[AxiomSchema],
    max_depth: usize,
    limits: SweepLimits,
    exec: Exec,
) -> Result<SoundnessReport, AxiomError> {
    schema_sweep(model.into(), name, schemas, max_depth, limits, exec)
}
