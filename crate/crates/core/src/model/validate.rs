use std::fmt;

use serde::{Deserialize, Serialize};

use super::{EpistemicModel, Frame, GoodnessModel, UtilityModel};

/// Invariants a model (or model document) can violate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Rule {
    #[serde(rename = "nonempty agents")]
    EmptyAgents,
    #[serde(rename = "nonempty vars")]
    EmptyVars,
    #[serde(rename = "nonempty worlds")]
    EmptyWorlds,
    #[serde(rename = "duplicate identifier")]
    DuplicateIdentifier,
    #[serde(rename = "partition per agent")]
    MissingPartition,
    #[serde(rename = "nonempty block")]
    EmptyBlock,
    #[serde(rename = "disjoint blocks")]
    OverlappingBlocks,
    #[serde(rename = "partition cover")]
    UncoveredWorld,
    #[serde(rename = "irreflexivity")]
    Irreflexivity,
    #[serde(rename = "transitivity")]
    Transitivity,
    #[serde(rename = "unknown world")]
    UnknownWorld,
    #[serde(rename = "unknown agent")]
    UnknownAgent,
    #[serde(rename = "unknown variable")]
    UnknownVariable,
    #[serde(rename = "total utility")]
    TotalUtility,
    #[serde(rename = "utility value")]
    UtilityValue,
    #[serde(rename = "nonempty good set")]
    NonemptyGood,
    #[serde(rename = "kind payload")]
    KindPayload,
}

impl Rule {
    pub fn id(self) -> &'static str {
        match self {
            Rule::EmptyAgents => "nonempty agents",
            Rule::EmptyVars => "nonempty vars",
            Rule::EmptyWorlds => "nonempty worlds",
            Rule::DuplicateIdentifier => "duplicate identifier",
            Rule::MissingPartition => "partition per agent",
            Rule::EmptyBlock => "nonempty block",
            Rule::OverlappingBlocks => "disjoint blocks",
            Rule::UncoveredWorld => "partition cover",
            Rule::Irreflexivity => "irreflexivity",
            Rule::Transitivity => "transitivity",
            Rule::UnknownWorld => "unknown world",
            Rule::UnknownAgent => "unknown agent",
            Rule::UnknownVariable => "unknown variable",
            Rule::TotalUtility => "total utility",
            Rule::UtilityValue => "utility value",
            Rule::NonemptyGood => "nonempty good set",
            Rule::KindPayload => "kind payload",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub rule: Rule,
    pub message: String,
    pub elements: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ValidationReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn new() -> Self {
        ValidationReport {
            ok: true,
            violations: Vec::new(),
        }
    }

    pub fn push(&mut self, rule: Rule, message: impl Into<String>, elements: Vec<String>) {
        self.violations.push(Violation {
            rule,
            message: message.into(),
            elements,
        });
        self.ok = false;
    }

    pub fn merge(&mut self, other: ValidationReport) {
        for v in other.violations {
            self.push(v.rule, v.message, v.elements);
        }
    }

    pub fn has(&self, rule: Rule) -> bool {
        self.violations.iter().any(|v| v.rule == rule)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok {
            return writeln!(f, "ok");
        }
        for v in &self.violations {
            write!(f, "violation [{}]: {}", v.rule, v.message)?;
            if !v.elements.is_empty() {
                write!(f, " ({})", v.elements.join(", "))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

pub trait Validate {
    fn validate(&self) -> ValidationReport;
}

/// Checks every invariant of `model`; violations are reported, never raised.
pub fn validate<M: Validate + ?Sized>(model: &M) -> ValidationReport {
    model.validate()
}

impl Frame {
    pub(crate) fn validate_frame(&self) -> ValidationReport {
        let mut report = ValidationReport::new();
        let sig = &self.sig;
        if sig.agents.is_empty() {
            report.push(Rule::EmptyAgents, "model declares no agents", vec![]);
        }
        if sig.vars.is_empty() {
            report.push(Rule::EmptyVars, "model declares no variables", vec![]);
        }
        if sig.worlds.is_empty() {
            report.push(Rule::EmptyWorlds, "model declares no worlds", vec![]);
        }
        let n = sig.worlds.len();
        for (a, agent) in sig.agents.iter().enumerate() {
            let Some(partition) = self.indist.get(a) else {
                report.push(
                    Rule::MissingPartition,
                    format!("agent `{agent}` has no indistinguishability partition"),
                    vec![agent.to_string()],
                );
                continue;
            };
            let mut seen = super::WorldSet::empty(n);
            for block in partition.blocks() {
                if block.is_empty() {
                    report.push(
                        Rule::EmptyBlock,
                        format!("partition of agent `{agent}` contains an empty block"),
                        vec![agent.to_string()],
                    );
                }
                let overlap = seen.intersection(block);
                if !overlap.is_empty() {
                    report.push(
                        Rule::OverlappingBlocks,
                        format!("partition blocks of agent `{agent}` overlap"),
                        sig.world_names(&overlap),
                    );
                }
                seen.union_with(block);
            }
            let missing = seen.complement();
            if !missing.is_empty() {
                report.push(
                    Rule::UncoveredWorld,
                    format!("partition of agent `{agent}` does not cover every world"),
                    sig.world_names(&missing),
                );
            }
        }
        report
    }
}

impl Validate for EpistemicModel {
    fn validate(&self) -> ValidationReport {
        let mut report = self.frame.validate_frame();
        let sig = &self.frame.sig;
        for (a, agent) in sig.agents.iter().enumerate() {
            let Some(rel) = self.pref.get(a) else {
                continue;
            };
            for w in rel.reflexive_worlds() {
                report.push(
                    Rule::Irreflexivity,
                    format!("agent `{agent}` prefers world `{}` to itself", sig.world(w)),
                    vec![agent.to_string(), sig.world(w).to_string()],
                );
            }
            let closed = rel.transitive_closure();
            let missing: Vec<_> = closed.pairs().filter(|&(u, v)| !rel.contains(u, v)).collect();
            if let Some(&(u, v)) = missing.first() {
                report.push(
                    Rule::Transitivity,
                    format!(
                        "preference of agent `{agent}` is not transitively closed ({} missing pairs)",
                        missing.len()
                    ),
                    vec![
                        agent.to_string(),
                        sig.world(u).to_string(),
                        sig.world(v).to_string(),
                    ],
                );
            }
        }
        report
    }
}

impl Validate for UtilityModel {
    fn validate(&self) -> ValidationReport {
        let mut report = self.frame.validate_frame();
        let sig = &self.frame.sig;
        for (a, agent) in sig.agents.iter().enumerate() {
            match self.utility.get(a) {
                Some(row) if row.len() == sig.worlds.len() => {}
                _ => report.push(
                    Rule::TotalUtility,
                    format!("utility of agent `{agent}` is not defined on every world"),
                    vec![agent.to_string()],
                ),
            }
        }
        report
    }
}

impl Validate for GoodnessModel {
    fn validate(&self) -> ValidationReport {
        let mut report = self.frame.validate_frame();
        for (a, agent) in self.frame.sig.agents.iter().enumerate() {
            if self.good.get(a).is_none_or(|g| g.is_empty()) {
                report.push(
                    Rule::NonemptyGood,
                    format!("agent `{agent}` has an empty set of good worlds"),
                    vec![agent.to_string()],
                );
            }
        }
        report
    }
}

impl Validate for super::AnyModel {
    fn validate(&self) -> ValidationReport {
        match self {
            super::AnyModel::Preference(m) => m.validate(),
            super::AnyModel::Utility(m) => m.validate(),
            super::AnyModel::Goodness(m) => m.validate(),
        }
    }
}
