//! Finite epistemic models in three flavours.
//!
//! All three share a [`Frame`]: worlds, one indistinguishability partition
//! per agent, and a valuation. They differ in what ranks the worlds for an
//! agent:
//!
//! * [`EpistemicModel`]: a strict partial order `≺_a` per agent,
//! * [`UtilityModel`]: a real-valued utility `u_a` per agent,
//! * [`GoodnessModel`]: a nonempty set `G_a` of good worlds per agent.
//!
//! Models are immutable once built. Constructors from indexed parts do not
//! validate; run [`validate`] (or go through the document loader, which
//! refuses invalid input) before trusting one.

mod relation;
mod validate;
mod worldset;

use indexmap::IndexSet;
use rust_decimal::Decimal;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::Name;
pub use relation::{close_preferences, CycleError, Relation};
pub use validate::{validate, Rule, Validate, ValidationReport, Violation};
pub use worldset::WorldSet;

/// Exact decimal utility value.
pub type Utility = Decimal;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LookupError {
    #[error("unknown world `{0}`")]
    UnknownWorld(String),
    #[error("unknown agent `{0}`")]
    UnknownAgent(String),
    #[error("unknown variable `{0}`")]
    UnknownVar(String),
}

/// The ordered identifier sets of a model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Signature {
    agents: IndexSet<Name>,
    vars: IndexSet<Name>,
    worlds: IndexSet<Name>,
}

impl Signature {
    pub fn new<A, V, W>(agents: A, vars: V, worlds: W) -> Self
    where
        A: IntoIterator<Item = Name>,
        V: IntoIterator<Item = Name>,
        W: IntoIterator<Item = Name>,
    {
        Signature {
            agents: agents.into_iter().collect(),
            vars: vars.into_iter().collect(),
            worlds: worlds.into_iter().collect(),
        }
    }

    pub fn agents(&self) -> &IndexSet<Name> {
        &self.agents
    }

    pub fn vars(&self) -> &IndexSet<Name> {
        &self.vars
    }

    pub fn worlds(&self) -> &IndexSet<Name> {
        &self.worlds
    }

    pub fn world_count(&self) -> usize {
        self.worlds.len()
    }

    pub fn world(&self, w: usize) -> &Name {
        &self.worlds[w]
    }

    pub fn world_index(&self, name: &str) -> Result<usize, LookupError> {
        self.worlds
            .get_index_of(name)
            .ok_or_else(|| LookupError::UnknownWorld(name.to_string()))
    }

    pub fn agent_index(&self, name: &Name) -> Result<usize, LookupError> {
        if let Some(i) = self.agents.iter().position(|a| a.ptr_eq(name)) {
            return Ok(i);
        }
        self.agents
            .get_index_of(name.as_str())
            .ok_or_else(|| LookupError::UnknownAgent(name.to_string()))
    }

    pub fn var_index(&self, name: &Name) -> Result<usize, LookupError> {
        if let Some(i) = self.vars.iter().position(|v| v.ptr_eq(name)) {
            return Ok(i);
        }
        self.vars
            .get_index_of(name.as_str())
            .ok_or_else(|| LookupError::UnknownVar(name.to_string()))
    }

    pub fn world_set(&self, names: &[&str]) -> Result<WorldSet, LookupError> {
        let mut set = WorldSet::empty(self.world_count());
        for n in names {
            set.insert(self.world_index(n)?);
        }
        Ok(set)
    }

    /// World names of `set` in declared order.
    pub fn world_names(&self, set: &WorldSet) -> Vec<String> {
        set.iter().map(|w| self.worlds[w].to_string()).collect()
    }
}

/// Blocks of mutually indistinguishable worlds for one agent.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    blocks: Vec<WorldSet>,
}

impl Partition {
    pub fn new(blocks: Vec<WorldSet>) -> Self {
        Partition { blocks }
    }

    pub fn discrete(n: usize) -> Self {
        Partition::new((0..n).map(|w| WorldSet::singleton(n, w)).collect())
    }

    pub fn blocks(&self) -> &[WorldSet] {
        &self.blocks
    }

    /// Union of all blocks containing `w` (exactly its block when valid).
    fn cell(&self, n: usize, w: usize) -> WorldSet {
        let mut cell = WorldSet::empty(n);
        for b in self.blocks.iter().filter(|b| b.contains(w)) {
            cell.union_with(b);
        }
        cell
    }
}

/// What every model kind shares: signature, partitions, valuation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frame {
    sig: Signature,
    indist: Vec<Partition>,
    valuation: Vec<WorldSet>,
    /// `cells[a][w]` = worlds agent `a` cannot tell apart from `w`.
    cells: Vec<Vec<WorldSet>>,
}

impl Frame {
    /// `indist` and `valuation` are indexed like the signature's agents and
    /// variables.
    pub fn new(sig: Signature, indist: Vec<Partition>, valuation: Vec<WorldSet>) -> Self {
        let n = sig.world_count();
        let cells = indist
            .iter()
            .map(|p| (0..n).map(|w| p.cell(n, w)).collect())
            .collect();
        Frame {
            sig,
            indist,
            valuation,
            cells,
        }
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub fn world_count(&self) -> usize {
        self.sig.world_count()
    }

    pub fn partition(&self, agent: usize) -> &Partition {
        &self.indist[agent]
    }

    pub fn partitions(&self) -> &[Partition] {
        &self.indist
    }

    pub fn valuation(&self, var: usize) -> &WorldSet {
        &self.valuation[var]
    }

    pub fn valuations(&self) -> &[WorldSet] {
        &self.valuation
    }

    pub fn cell(&self, agent: usize, world: usize) -> &WorldSet {
        &self.cells[agent][world]
    }

    /// Worlds where agent `a` knows a proposition with extension `ext`.
    pub fn knows(&self, agent: usize, ext: &WorldSet) -> WorldSet {
        let n = self.world_count();
        let mut out = WorldSet::empty(n);
        for (w, cell) in self.cells[agent].iter().enumerate() {
            if cell.is_subset(ext) {
                out.insert(w);
            }
        }
        out
    }

    pub(crate) fn permuted(&self, perm: &[usize]) -> Frame {
        let n = self.world_count();
        let map = |s: &WorldSet| WorldSet::from_indices(n, s.iter().map(|w| perm[w]));
        let worlds: Vec<Name> = {
            let mut v = vec![None; n];
            for (w, name) in self.sig.worlds.iter().enumerate() {
                v[perm[w]] = Some(name.clone());
            }
            v.into_iter().map(Option::unwrap).collect()
        };
        Frame::new(
            Signature::new(
                self.sig.agents.iter().cloned(),
                self.sig.vars.iter().cloned(),
                worlds,
            ),
            self.indist
                .iter()
                .map(|p| Partition::new(p.blocks.iter().map(map).collect()))
                .collect(),
            self.valuation.iter().map(map).collect(),
        )
    }
}

/// Epistemic model with a strict partial order preference per agent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EpistemicModel {
    frame: Frame,
    pref: Vec<Relation>,
}

impl EpistemicModel {
    /// Builds a model from indexed parts without validating it. `pref` must
    /// already be transitively closed for the model to be valid.
    pub fn from_parts(frame: Frame, pref: Vec<Relation>) -> Self {
        EpistemicModel { frame, pref }
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn signature(&self) -> &Signature {
        &self.frame.sig
    }

    pub fn pref(&self, agent: usize) -> &Relation {
        &self.pref[agent]
    }

    pub fn prefs(&self) -> &[Relation] {
        &self.pref
    }

    /// The converse model: every preference pair reversed.
    pub fn converse(&self) -> EpistemicModel {
        EpistemicModel {
            frame: self.frame.clone(),
            pref: self.pref.iter().map(Relation::converse).collect(),
        }
    }

    /// `U ≺_a V`: every world of `U` is below every world of `V`.
    pub fn set_prec(&self, agent: &str, lower: &[&str], upper: &[&str]) -> Result<bool, LookupError> {
        let sig = self.signature();
        let a = sig.agent_index(&Name::new(agent))?;
        let lower = sig.world_set(lower)?;
        let upper = sig.world_set(upper)?;
        Ok(self.prec_sets(a, &lower, &upper))
    }

    pub fn prec_sets(&self, agent: usize, lower: &WorldSet, upper: &WorldSet) -> bool {
        lower.iter().all(|u| upper.is_subset(self.pref[agent].above(u)))
    }

    pub(crate) fn permuted(&self, perm: &[usize]) -> EpistemicModel {
        EpistemicModel {
            frame: self.frame.permuted(perm),
            pref: self.pref.iter().map(|r| r.permuted(perm)).collect(),
        }
    }
}

/// The converse model of `model`.
pub fn converse(model: &EpistemicModel) -> EpistemicModel {
    model.converse()
}

/// Epistemic model with a utility function per agent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UtilityModel {
    frame: Frame,
    utility: Vec<Vec<Utility>>,
}

impl UtilityModel {
    /// `utility[a][w]`, indexed like the signature.
    pub fn from_parts(frame: Frame, utility: Vec<Vec<Utility>>) -> Self {
        UtilityModel { frame, utility }
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn signature(&self) -> &Signature {
        &self.frame.sig
    }

    pub fn utility(&self, agent: usize, world: usize) -> Utility {
        self.utility[agent][world]
    }

    pub fn utilities(&self) -> &[Vec<Utility>] {
        &self.utility
    }

    /// Preference model with `u ≺_a v` iff `u_a(u) < u_a(v)`.
    pub fn preferences_from_utilities(&self) -> EpistemicModel {
        let n = self.frame.world_count();
        let pref = self
            .utility
            .iter()
            .map(|row| {
                Relation::from_pairs(
                    n,
                    (0..n).flat_map(|u| (0..n).filter(move |&v| row[u] < row[v]).map(move |v| (u, v))),
                )
            })
            .collect();
        EpistemicModel {
            frame: self.frame.clone(),
            pref,
        }
    }
}

pub fn preferences_from_utilities(model: &UtilityModel) -> EpistemicModel {
    model.preferences_from_utilities()
}

/// Epistemic model with a set of good worlds per agent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoodnessModel {
    frame: Frame,
    good: Vec<WorldSet>,
}

impl GoodnessModel {
    pub fn from_parts(frame: Frame, good: Vec<WorldSet>) -> Self {
        GoodnessModel { frame, good }
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn signature(&self) -> &Signature {
        &self.frame.sig
    }

    pub fn good(&self, agent: usize) -> &WorldSet {
        &self.good[agent]
    }

    pub fn goods(&self) -> &[WorldSet] {
        &self.good
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    Preference,
    Utility,
    Goodness,
}

impl ModelKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ModelKind::Preference => "preference",
            ModelKind::Utility => "utility",
            ModelKind::Goodness => "goodness",
        }
    }
}

/// A model of any of the three kinds, as produced by the loader.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyModel {
    Preference(EpistemicModel),
    Utility(UtilityModel),
    Goodness(GoodnessModel),
}

impl AnyModel {
    pub fn kind(&self) -> ModelKind {
        match self {
            AnyModel::Preference(_) => ModelKind::Preference,
            AnyModel::Utility(_) => ModelKind::Utility,
            AnyModel::Goodness(_) => ModelKind::Goodness,
        }
    }

    pub fn frame(&self) -> &Frame {
        match self {
            AnyModel::Preference(m) => m.frame(),
            AnyModel::Utility(m) => m.frame(),
            AnyModel::Goodness(m) => m.frame(),
        }
    }

    pub fn signature(&self) -> &Signature {
        self.frame().signature()
    }

    pub fn as_preference(&self) -> Option<&EpistemicModel> {
        match self {
            AnyModel::Preference(m) => Some(m),
            _ => None,
        }
    }

    pub fn as_utility(&self) -> Option<&UtilityModel> {
        match self {
            AnyModel::Utility(m) => Some(m),
            _ => None,
        }
    }

    pub fn as_goodness(&self) -> Option<&GoodnessModel> {
        match self {
            AnyModel::Goodness(m) => Some(m),
            _ => None,
        }
    }
}

impl From<EpistemicModel> for AnyModel {
    fn from(m: EpistemicModel) -> Self {
        AnyModel::Preference(m)
    }
}

impl From<UtilityModel> for AnyModel {
    fn from(m: UtilityModel) -> Self {
        AnyModel::Utility(m)
    }
}

impl From<GoodnessModel> for AnyModel {
    fn from(m: GoodnessModel) -> Self {
        AnyModel::Goodness(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(xs: &[&str]) -> Vec<Name> {
        xs.iter().map(|x| Name::new(x)).collect()
    }

    fn one_agent_model(n: usize, pref: Relation) -> EpistemicModel {
        let worlds: Vec<String> = (0..n).map(|i| format!("w{i}")).collect();
        let sig = Signature::new(
            names(&["a"]),
            names(&["p"]),
            worlds.iter().map(|w| Name::new(w)),
        );
        let frame = Frame::new(sig, vec![Partition::discrete(n)], vec![WorldSet::empty(n)]);
        EpistemicModel::from_parts(frame, vec![pref])
    }

    #[test]
    fn reflexive_pair_is_reported() {
        let m = one_agent_model(2, Relation::from_pairs(2, [(0, 0)]));
        let report = validate(&m);
        assert!(!report.ok);
        assert!(report.has(Rule::Irreflexivity));
    }

    #[test]
    fn non_transitive_pref_is_reported() {
        let m = one_agent_model(3, Relation::from_pairs(3, [(0, 1), (1, 2)]));
        assert!(validate(&m).has(Rule::Transitivity));
    }

    #[test]
    fn overlapping_and_missing_blocks_are_reported() {
        let n = 3;
        let sig = Signature::new(names(&["a"]), names(&["p"]), names(&["x", "y", "z"]));
        let blocks = vec![
            WorldSet::from_indices(n, [0, 1]),
            WorldSet::from_indices(n, [1]),
            WorldSet::empty(n),
        ];
        let frame = Frame::new(sig, vec![Partition::new(blocks)], vec![WorldSet::empty(n)]);
        let m = EpistemicModel::from_parts(frame, vec![Relation::empty(n)]);
        let report = validate(&m);
        assert!(report.has(Rule::OverlappingBlocks));
        assert!(report.has(Rule::UncoveredWorld));
        assert!(report.has(Rule::EmptyBlock));
        let cover = report
            .violations
            .iter()
            .find(|v| v.rule == Rule::UncoveredWorld)
            .unwrap();
        assert_eq!(cover.elements, vec!["z".to_string()]);
    }

    #[test]
    fn converse_of_empty_is_unchanged_and_involutive() {
        let m = one_agent_model(2, Relation::empty(2));
        assert_eq!(m.converse(), m);
        let m = one_agent_model(3, Relation::from_pairs(3, [(0, 1), (1, 2), (0, 2)]));
        assert!(m.converse().pref(0).contains(2, 0));
        assert_eq!(m.converse().converse(), m);
        assert!(validate(&m.converse()).ok);
    }

    #[test]
    fn empty_sets_are_vacuously_ordered() {
        let m = one_agent_model(2, Relation::empty(2));
        assert!(m.set_prec("a", &[], &["w0"]).unwrap());
        assert!(m.set_prec("a", &["w1"], &[]).unwrap());
        assert!(!m.set_prec("a", &["w1"], &["w0"]).unwrap());
        assert_eq!(
            m.set_prec("a", &["nope"], &[]),
            Err(LookupError::UnknownWorld("nope".into()))
        );
    }

    #[test]
    fn constant_utility_gives_empty_preference() {
        let n = 3;
        let sig = Signature::new(names(&["a"]), names(&["p"]), names(&["x", "y", "z"]));
        let frame = Frame::new(sig, vec![Partition::discrete(n)], vec![WorldSet::empty(n)]);
        let um = UtilityModel::from_parts(frame, vec![vec![Decimal::ONE; n]]);
        let pm = um.preferences_from_utilities();
        assert!(pm.pref(0).is_empty());
        assert!(validate(&pm).ok);
    }

    #[test]
    fn empty_good_set_is_reported() {
        let n = 2;
        let sig = Signature::new(names(&["s"]), names(&["p"]), names(&["x", "y"]));
        let frame = Frame::new(sig, vec![Partition::discrete(n)], vec![WorldSet::empty(n)]);
        let gm = GoodnessModel::from_parts(frame, vec![WorldSet::empty(n)]);
        assert!(validate(&gm).has(Rule::NonemptyGood));
    }
}
