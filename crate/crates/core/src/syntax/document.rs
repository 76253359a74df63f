//! The JSON model file format.

use std::str::FromStr;

use indexmap::{IndexMap, IndexSet};
use rust_decimal::Decimal;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::ParseError;
use crate::model::{
    AnyModel, CycleError, EpistemicModel, Frame, GoodnessModel, ModelKind, Partition, Relation, Rule,
    Signature, UtilityModel, Validate, ValidationReport, WorldSet,
};
use crate::Name;

/// A model file, as written. Nothing is checked beyond JSON shape.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelDocument {
    pub kind: ModelKind,
    pub agents: Vec<String>,
    pub vars: Vec<String>,
    pub worlds: Vec<String>,
    pub indist: IndexMap<String, Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pref: Option<IndexMap<String, Vec<(String, String)>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub utility: Option<IndexMap<String, IndexMap<String, serde_json::Number>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub good: Option<IndexMap<String, Vec<String>>>,
    pub valuation: IndexMap<String, Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LoadError {
    #[error("malformed model file: {0}")]
    Parse(ParseError),
    #[error(transparent)]
    Cycle(#[from] CycleError),
    #[error("invalid model:\n{0}")]
    Validation(ValidationReport),
}

impl LoadError {
    pub fn report(&self) -> Option<&ValidationReport> {
        match self {
            LoadError::Validation(r) => Some(r),
            _ => None,
        }
    }
}

fn json_error(e: &serde_json::Error) -> ParseError {
    let msg = e.to_string();
    // serde_json appends " at line L column C"; keep just the reason.
    let reason = msg.split(" at line ").next().unwrap_or(&msg).to_string();
    ParseError {
        line: e.line().max(1),
        column: e.column().max(1),
        expected: vec!["a model document".into()],
        found: reason,
    }
}

/// Resolves names in declared order, reporting the ones that are unknown.
struct Resolver<'a> {
    worlds: &'a IndexSet<Name>,
    report: &'a mut ValidationReport,
}

impl Resolver<'_> {
    fn world(&mut self, w: &str, context: &str) -> Option<usize> {
        let idx = self.worlds.get_index_of(w);
        if idx.is_none() {
            self.report.push(
                Rule::UnknownWorld,
                format!("{context} names undeclared world `{w}`"),
                vec![w.to_string()],
            );
        }
        idx
    }

    fn set(&mut self, ws: &[String], context: &str) -> WorldSet {
        let mut set = WorldSet::empty(self.worlds.len());
        for w in ws {
            if let Some(i) = self.world(w, context) {
                set.insert(i);
            }
        }
        set
    }
}

fn declared(list: &[String], what: &str, report: &mut ValidationReport) -> IndexSet<Name> {
    let mut set = IndexSet::new();
    for x in list {
        if !set.insert(Name::new(x)) {
            report.push(
                Rule::DuplicateIdentifier,
                format!("{what} `{x}` is declared twice"),
                vec![x.clone()],
            );
        }
    }
    set
}

fn check_keys<V>(
    map: &IndexMap<String, V>,
    known: &IndexSet<Name>,
    rule: Rule,
    context: &str,
    report: &mut ValidationReport,
) {
    for k in map.keys() {
        if !known.contains(k.as_str()) {
            report.push(rule, format!("{context} mentions undeclared `{k}`"), vec![k.clone()]);
        }
    }
}

fn parse_number(n: &serde_json::Number) -> Option<Decimal> {
    let s = n.to_string();
    Decimal::from_str(&s).or_else(|_| Decimal::from_scientific(&s)).ok()
}

impl ModelDocument {
    pub fn from_json(text: &str) -> Result<ModelDocument, ParseError> {
        serde_json::from_str(text).map_err(|e| json_error(&e))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("model documents always serialize")
    }

    /// Checks names and payload, closes preferences, then validates the
    /// resulting model.
    pub fn into_model(&self) -> Result<AnyModel, LoadError> {
        let mut report = ValidationReport::new();
        let agents = declared(&self.agents, "agent", &mut report);
        let vars = declared(&self.vars, "variable", &mut report);
        let worlds = declared(&self.worlds, "world", &mut report);
        let n = worlds.len();

        let payloads = [
            (ModelKind::Preference, self.pref.is_some(), "pref"),
            (ModelKind::Utility, self.utility.is_some(), "utility"),
            (ModelKind::Goodness, self.good.is_some(), "good"),
        ];
        for (kind, present, key) in payloads {
            if present != (kind == self.kind) {
                let msg = if present {
                    format!("a {} model must not have `{key}`", self.kind.as_str())
                } else {
                    format!("a {} model needs `{key}`", self.kind.as_str())
                };
                report.push(Rule::KindPayload, msg, vec![key.to_string()]);
            }
        }

        check_keys(&self.indist, &agents, Rule::UnknownAgent, "indist", &mut report);
        check_keys(&self.valuation, &vars, Rule::UnknownVariable, "valuation", &mut report);

        let mut res = Resolver {
            worlds: &worlds,
            report: &mut report,
        };
        let mut indist = Vec::new();
        for a in &agents {
            match self.indist.get(a.as_str()) {
                Some(blocks) => indist.push(Partition::new(
                    blocks
                        .iter()
                        .map(|b| res.set(b, &format!("partition of `{a}`")))
                        .collect(),
                )),
                None => {
                    res.report.push(
                        Rule::MissingPartition,
                        format!("agent `{a}` has no indistinguishability partition"),
                        vec![a.to_string()],
                    );
                    indist.push(Partition::new(vec![WorldSet::full(n)]));
                }
            }
        }
        let valuation: Vec<WorldSet> = vars
            .iter()
            .map(|v| match self.valuation.get(v.as_str()) {
                Some(ws) => res.set(ws, &format!("valuation of `{v}`")),
                None => WorldSet::empty(n),
            })
            .collect();

        let mut edges = Vec::new();
        let mut utility = Vec::new();
        let mut good = Vec::new();
        if let Some(pref) = &self.pref {
            check_keys(pref, &agents, Rule::UnknownAgent, "pref", res.report);
            for a in &agents {
                let mut rel = Relation::empty(n);
                for (u, v) in pref.get(a.as_str()).into_iter().flatten() {
                    let ctx = format!("preference of `{a}`");
                    if let (Some(u), Some(v)) = (res.world(u, &ctx), res.world(v, &ctx)) {
                        rel.insert(u, v);
                    }
                }
                edges.push(rel);
            }
        }
        if let Some(util) = &self.utility {
            check_keys(util, &agents, Rule::UnknownAgent, "utility", res.report);
            for a in &agents {
                let row = util.get(a.as_str());
                if let Some(row) = row {
                    for w in row.keys() {
                        res.world(w, &format!("utility of `{a}`"));
                    }
                }
                let mut values = Vec::with_capacity(n);
                let mut missing = Vec::new();
                for w in &worlds {
                    match row.and_then(|r| r.get(w.as_str())) {
                        Some(num) => match parse_number(num) {
                            Some(d) => values.push(d),
                            None => {
                                res.report.push(
                                    Rule::UtilityValue,
                                    format!("utility {num} of `{a}` at `{w}` is not a finite decimal"),
                                    vec![a.to_string(), w.to_string()],
                                );
                                values.push(Decimal::ZERO);
                            }
                        },
                        None => missing.push(w.to_string()),
                    }
                }
                if !missing.is_empty() {
                    res.report.push(
                        Rule::TotalUtility,
                        format!("utility of agent `{a}` is missing on some worlds"),
                        missing,
                    );
                }
                utility.push(values);
            }
        }
        if let Some(g) = &self.good {
            check_keys(g, &agents, Rule::UnknownAgent, "good", res.report);
            for a in &agents {
                let ws = g.get(a.as_str()).map(Vec::as_slice).unwrap_or(&[]);
                good.push(res.set(ws, &format!("good worlds of `{a}`")));
            }
        }
        if !report.ok {
            return Err(LoadError::Validation(report));
        }

        let sig = Signature::new(agents.iter().cloned(), vars, worlds.iter().cloned());
        let frame = Frame::new(sig, indist, valuation);
        let model = match self.kind {
            ModelKind::Preference => {
                let mut pref = Vec::new();
                for (a, rel) in agents.iter().zip(&edges) {
                    pref.push(rel.close_strict().map_err(|w| CycleError {
                        agent: a.clone(),
                        world: worlds[w].clone(),
                    })?);
                }
                AnyModel::Preference(EpistemicModel::from_parts(frame, pref))
            }
            ModelKind::Utility => AnyModel::Utility(UtilityModel::from_parts(frame, utility)),
            ModelKind::Goodness => AnyModel::Goodness(GoodnessModel::from_parts(frame, good)),
        };
        let report = model.validate();
        if !report.ok {
            return Err(LoadError::Validation(report));
        }
        Ok(model)
    }

    pub fn from_model(model: &AnyModel) -> ModelDocument {
        let frame = model.frame();
        let sig = frame.signature();
        let names = |s: &WorldSet| sig.world_names(s);
        let strings = |xs: &IndexSet<Name>| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>();
        let per_agent = |f: &dyn Fn(usize) -> _| -> IndexMap<String, _> {
            sig.agents()
                .iter()
                .enumerate()
                .map(|(a, name)| (name.to_string(), f(a)))
                .collect()
        };
        let mut doc = ModelDocument {
            kind: model.kind(),
            agents: strings(sig.agents()),
            vars: strings(sig.vars()),
            worlds: strings(sig.worlds()),
            indist: per_agent(&|a| frame.partition(a).blocks().iter().map(names).collect()),
            pref: None,
            utility: None,
            good: None,
            valuation: sig
                .vars()
                .iter()
                .zip(frame.valuations())
                .map(|(v, s)| (v.to_string(), names(s)))
                .collect(),
        };
        match model {
            AnyModel::Preference(m) => {
                doc.pref = Some(
                    sig.agents()
                        .iter()
                        .zip(m.prefs())
                        .map(|(a, r)| {
                            let pairs = r
                                .generating_pairs()
                                .into_iter()
                                .map(|(u, v)| (sig.world(u).to_string(), sig.world(v).to_string()))
                                .collect();
                            (a.to_string(), pairs)
                        })
                        .collect(),
                )
            }
            AnyModel::Utility(m) => {
                doc.utility = Some(
                    sig.agents()
                        .iter()
                        .zip(m.utilities())
                        .map(|(a, row)| {
                            let row = sig
                                .worlds()
                                .iter()
                                .zip(row)
                                .map(|(w, d)| {
                                    let num = serde_json::Number::from_str(&d.normalize().to_string())
                                        .expect("decimals render as JSON numbers");
                                    (w.to_string(), num)
                                })
                                .collect();
                            (a.to_string(), row)
                        })
                        .collect(),
                )
            }
            AnyModel::Goodness(m) => {
                doc.good = Some(
                    sig.agents()
                        .iter()
                        .zip(m.goods())
                        .map(|(a, g)| (a.to_string(), names(g)))
                        .collect(),
                )
            }
        }
        doc
    }
}

/// Parses, closes and validates a model file.
pub fn load_model(text: &str) -> Result<AnyModel, LoadError> {
    ModelDocument::from_json(text)
        .map_err(LoadError::Parse)?
        .into_model()
}

/// Renders a model in the file format, with preferences as covering edges.
pub fn serialize_model(model: &AnyModel) -> String {
    ModelDocument::from_model(model).to_json()
}

#[cfg(test)]
mod tests {
    use super::*;

    const SMALL: &str = r#"{
        "kind": "preference",
        "agents": ["a"],
        "vars": ["p"],
        "worlds": ["x", "y", "z"],
        "indist": {"a": [["x"], ["y", "z"]]},
        "pref": {"a": [["x", "y"], ["y", "z"]]},
        "valuation": {"p": ["x"]}
    }"#;

    #[test]
    fn closes_preferences_on_load() {
        let m = load_model(SMALL).unwrap();
        let pm = m.as_preference().unwrap();
        assert!(pm.pref(0).contains(0, 2));
        assert_eq!(load_model(&serialize_model(&m)).unwrap(), m);
    }

    #[test]
    fn unknown_world_in_edge() {
        let text = SMALL.replace(r#"["y", "z"]]}"#, r#"["y", "q"]]}"#);
        let err = load_model(&text).unwrap_err();
        assert!(err.report().unwrap().has(Rule::UnknownWorld));
    }

    #[test]
    fn missing_utility_value() {
        let text = r#"{
            "kind": "utility", "agents": ["a"], "vars": ["p"], "worlds": ["x", "y"],
            "indist": {"a": [["x", "y"]]},
            "utility": {"a": {"x": 1.5}},
            "valuation": {}
        }"#;
        let err = load_model(text).unwrap_err();
        let report = err.report().unwrap();
        assert!(report.has(Rule::TotalUtility));
        assert_eq!(report.violations[0].elements, vec!["y".to_string()]);
    }

    #[test]
    fn cycle_is_reported() {
        let text = SMALL.replace(r#"["y", "z"]]}"#, r#"["y", "x"]]}"#);
        assert!(matches!(load_model(&text), Err(LoadError::Cycle(_))));
    }

    #[test]
    fn unknown_key_is_a_parse_error() {
        let text = SMALL.replace("\"kind\"", "\"colour\": 1, \"kind\"");
        let Err(LoadError::Parse(e)) = load_model(&text) else { panic!() };
        assert_eq!(e.line, 2);
    }

    #[test]
    fn payload_must_match_kind() {
        let text = SMALL.replace("\"preference\"", "\"goodness\"");
        let err = load_model(&text).unwrap_err();
        assert!(err.report().unwrap().has(Rule::KindPayload));
    }

    #[test]
    fn exact_utilities_round_trip() {
        let text = r#"{
            "kind": "utility", "agents": ["a"], "vars": ["p"], "worlds": ["x", "y"],
            "indist": {"a": [["x"], ["y"]]},
            "utility": {"a": {"x": 0.1, "y": 0.30000000000000001}},
            "valuation": {"p": ["y"]}
        }"#;
        let m = load_model(text).unwrap();
        let um = m.as_utility().unwrap();
        assert_eq!(um.utility(0, 1).to_string(), "0.30000000000000001");
        assert_eq!(load_model(&serialize_model(&m)).unwrap(), m);
    }
}
