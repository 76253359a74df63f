//! Formula syntax trees.
//!
//! Nodes are reference counted, so subformulas can be shared between many
//! parents. This matters for enumeration, where millions of formulas are
//! built on top of the same few thousand children.

mod enumerate;

use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use rust_decimal::Decimal;
use rustc_hash::FxHashMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::Name;
pub use enumerate::{enumerate, Enumeration};

/// Nonnegative exact degree of a utilitarian emotion.
pub type Degree = Decimal;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FormulaKind {
    Var(Name),
    Not(Formula),
    Implies(Formula, Formula),
    Nec(Formula),
    Knows(Name, Formula),
    Happy(Name, Formula),
    Sad(Name, Formula),
    HappyDeg(Name, Degree, Formula),
    SadDeg(Name, Degree, Formula),
}

#[derive(Clone)]
pub struct Formula(Arc<FormulaKind>);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("negative degree {0}")]
    NegativeDegree(Degree),
    #[error("the duality translation is undefined on degree-indexed emotions")]
    DegreeUnsupported,
}

/// Happiness or sadness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Emotion {
    H,
    S,
}

impl Emotion {
    pub fn dual(self) -> Emotion {
        match self {
            Emotion::H => Emotion::S,
            Emotion::S => Emotion::H,
        }
    }
}

impl fmt::Display for Emotion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Emotion::H => "H",
            Emotion::S => "S",
        })
    }
}

impl Formula {
    fn mk(kind: FormulaKind) -> Formula {
        Formula(Arc::new(kind))
    }

    pub fn var(name: impl Into<Name>) -> Formula {
        Formula::mk(FormulaKind::Var(name.into()))
    }

    pub fn not(f: Formula) -> Formula {
        Formula::mk(FormulaKind::Not(f))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::mk(FormulaKind::Implies(a, b))
    }

    pub fn nec(f: Formula) -> Formula {
        Formula::mk(FormulaKind::Nec(f))
    }

    pub fn knows(agent: impl Into<Name>, f: Formula) -> Formula {
        Formula::mk(FormulaKind::Knows(agent.into(), f))
    }

    pub fn happy(agent: impl Into<Name>, f: Formula) -> Formula {
        Formula::mk(FormulaKind::Happy(agent.into(), f))
    }

    pub fn sad(agent: impl Into<Name>, f: Formula) -> Formula {
        Formula::mk(FormulaKind::Sad(agent.into(), f))
    }

    pub fn emotion(e: Emotion, agent: impl Into<Name>, f: Formula) -> Formula {
        match e {
            Emotion::H => Formula::happy(agent, f),
            Emotion::S => Formula::sad(agent, f),
        }
    }

    pub fn happy_deg(agent: impl Into<Name>, d: Degree, f: Formula) -> Result<Formula, FormulaError> {
        Formula::emotion_deg(Emotion::H, agent, d, f)
    }

    pub fn sad_deg(agent: impl Into<Name>, d: Degree, f: Formula) -> Result<Formula, FormulaError> {
        Formula::emotion_deg(Emotion::S, agent, d, f)
    }

    pub fn emotion_deg(
        e: Emotion,
        agent: impl Into<Name>,
        d: Degree,
        f: Formula,
    ) -> Result<Formula, FormulaError> {
        if d.is_sign_negative() && !d.is_zero() {
            return Err(FormulaError::NegativeDegree(d));
        }
        let agent = agent.into();
        Ok(Formula::mk(match e {
            Emotion::H => FormulaKind::HappyDeg(agent, d, f),
            Emotion::S => FormulaKind::SadDeg(agent, d, f),
        }))
    }

    // Sugar. Expanded immediately; none of these survive in the tree.

    /// `a & b` as `!(a -> !b)`.
    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::not(Formula::implies(a, Formula::not(b)))
    }

    /// `a | b` as `!a -> b`.
    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::implies(Formula::not(a), b)
    }

    /// `a <-> b` as `(a -> b) & (b -> a)`.
    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::and(Formula::implies(a.clone(), b.clone()), Formula::implies(b, a))
    }

    /// `Nbar f` as `!N !f`.
    pub fn nbar(f: Formula) -> Formula {
        Formula::not(Formula::nec(Formula::not(f)))
    }

    pub fn kind(&self) -> &FormulaKind {
        &self.0
    }

    pub fn ptr_eq(&self, other: &Formula) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    /// Address of the shared node, stable while any clone is alive.
    pub(crate) fn key(&self) -> usize {
        Arc::as_ptr(&self.0) as usize
    }

    pub fn children(&self) -> smallvec::SmallVec<[&Formula; 2]> {
        use FormulaKind::*;
        match self.kind() {
            Var(_) => smallvec::smallvec![],
            Implies(a, b) => smallvec::smallvec![a, b],
            Not(f) | Nec(f) | Knows(_, f) | Happy(_, f) | Sad(_, f) | HappyDeg(_, _, f)
            | SadDeg(_, _, f) => smallvec::smallvec![f],
        }
    }

    pub fn depth(&self) -> usize {
        self.children().iter().map(|c| c.depth() + 1).max().unwrap_or(0)
    }

    pub fn node_count(&self) -> usize {
        1 + self.children().iter().map(|c| c.node_count()).sum::<usize>()
    }

    pub fn has_degree(&self) -> bool {
        match self.kind() {
            FormulaKind::HappyDeg(..) | FormulaKind::SadDeg(..) => true,
            _ => self.children().iter().any(|c| c.has_degree()),
        }
    }

    pub fn in_fragment(&self, frag: Fragment) -> bool {
        in_fragment(self, frag)
    }

    pub fn metrics(&self) -> Metrics {
        metrics(self)
    }
}

impl PartialEq for Formula {
    fn eq(&self, other: &Formula) -> bool {
        self.ptr_eq(other) || *self.0 == *other.0
    }
}

impl Eq for Formula {}

impl Hash for Formula {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.hash(state)
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Formula({self})")
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        crate::syntax::write_formula(f, self)
    }
}

impl std::str::FromStr for Formula {
    type Err = crate::syntax::FormulaSyntaxError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        crate::syntax::parse_formula(s)
    }
}

impl Serialize for Formula {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Formula {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// Sublanguages obtained by dropping emotion modalities.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize, clap::ValueEnum,
)]
#[serde(rename_all = "kebab-case")]
pub enum Fragment {
    #[default]
    Full,
    NoSad,
    NoHappy,
    NoEmotion,
}

impl Fragment {
    pub fn allows(self, e: Emotion) -> bool {
        matches!(
            (self, e),
            (Fragment::Full, _) | (Fragment::NoSad, Emotion::H) | (Fragment::NoHappy, Emotion::S)
        )
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Fragment::Full => "full",
            Fragment::NoSad => "no-sad",
            Fragment::NoHappy => "no-happy",
            Fragment::NoEmotion => "no-emotion",
        }
    }

    /// The fragment whose excluded modality is the other one.
    pub fn dual(self) -> Fragment {
        match self {
            Fragment::NoSad => Fragment::NoHappy,
            Fragment::NoHappy => Fragment::NoSad,
            f => f,
        }
    }
}

impl fmt::Display for Fragment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

pub fn in_fragment(f: &Formula, frag: Fragment) -> bool {
    let ok = match f.kind() {
        FormulaKind::Happy(..) | FormulaKind::HappyDeg(..) => frag.allows(Emotion::H),
        FormulaKind::Sad(..) | FormulaKind::SadDeg(..) => frag.allows(Emotion::S),
        _ => true,
    };
    ok && f.children().iter().all(|c| in_fragment(c, frag))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Metrics {
    pub depth: usize,
    pub node_count: usize,
    pub agents_used: BTreeSet<Name>,
    pub vars_used: BTreeSet<Name>,
}

pub fn metrics(f: &Formula) -> Metrics {
    fn walk(f: &Formula, m: &mut Metrics) {
        use FormulaKind::*;
        match f.kind() {
            Var(v) => {
                m.vars_used.insert(v.clone());
            }
            Knows(a, _) | Happy(a, _) | Sad(a, _) | HappyDeg(a, _, _) | SadDeg(a, _, _) => {
                m.agents_used.insert(a.clone());
            }
            _ => {}
        }
        for c in f.children() {
            walk(c, m);
        }
    }
    let mut m = Metrics {
        depth: f.depth(),
        node_count: f.node_count(),
        agents_used: BTreeSet::new(),
        vars_used: BTreeSet::new(),
    };
    walk(f, &mut m);
    m
}

/// The duality translation: swaps happiness and sadness, fixes the rest.
pub fn tau(f: &Formula) -> Result<Formula, FormulaError> {
    Tau::new().apply(f)
}

/// Batch form of [`tau`] that remembers the translation of every proper
/// subformula it has seen, keyed by node identity.
///
/// Translating many formulas that share children then costs one new node
/// per formula. Roots passed to [`Tau::apply`] are not remembered, so memory
/// stays bounded by the number of distinct children.
#[derive(Default)]
pub struct Tau {
    memo: FxHashMap<usize, (Formula, Formula)>,
    shared: Arc<FxHashMap<usize, (Formula, Formula)>>,
}

impl Tau {
    pub fn new() -> Self {
        Tau::default()
    }

    /// Starts from the translations frozen by [`Tau::share`].
    pub fn with_shared(shared: Arc<FxHashMap<usize, (Formula, Formula)>>) -> Self {
        Tau {
            memo: FxHashMap::default(),
            shared,
        }
    }

    pub fn share(self) -> Arc<FxHashMap<usize, (Formula, Formula)>> {
        let mut memo = self.memo;
        for (k, v) in self.shared.iter() {
            memo.entry(*k).or_insert_with(|| v.clone());
        }
        Arc::new(memo)
    }

    pub fn apply(&mut self, f: &Formula) -> Result<Formula, FormulaError> {
        use FormulaKind::*;
        Ok(match f.kind() {
            Var(_) => f.clone(),
            Not(g) => Formula::not(self.remember(g)?),
            Implies(a, b) => Formula::implies(self.remember(a)?, self.remember(b)?),
            Nec(g) => Formula::nec(self.remember(g)?),
            Knows(a, g) => Formula::knows(a.clone(), self.remember(g)?),
            Happy(a, g) => Formula::sad(a.clone(), self.remember(g)?),
            Sad(a, g) => Formula::happy(a.clone(), self.remember(g)?),
            HappyDeg(..) | SadDeg(..) => return Err(FormulaError::DegreeUnsupported),
        })
    }

    /// Like [`Tau::apply`], but also remembers the translation of `f`.
    pub fn remember(&mut self, f: &Formula) -> Result<Formula, FormulaError> {
        if let FormulaKind::Var(_) = f.kind() {
            return Ok(f.clone());
        }
        let k = f.key();
        if let Some((_, t)) = self.memo.get(&k).or_else(|| self.shared.get(&k)) {
            return Ok(t.clone());
        }
        let t = self.apply(f)?;
        self.memo.insert(k, (f.clone(), t.clone()));
        Ok(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> Formula {
        Formula::var("p")
    }

    #[test]
    fn tau_swaps_emotions_under_knowledge() {
        let f = Formula::knows("a", Formula::sad("a", Formula::not(p())));
        let want = Formula::knows("a", Formula::happy("a", Formula::not(p())));
        assert_eq!(tau(&f).unwrap(), want);
        assert_eq!(tau(&p()).unwrap(), p());
        assert_eq!(tau(&Formula::happy("a", p())).unwrap(), Formula::sad("a", p()));
    }

    #[test]
    fn tau_rejects_degrees() {
        let f = Formula::happy_deg("a", Decimal::ONE, p()).unwrap();
        assert_eq!(tau(&Formula::not(f)), Err(FormulaError::DegreeUnsupported));
    }

    #[test]
    fn negative_degree_is_rejected() {
        assert!(Formula::sad_deg("a", Decimal::NEGATIVE_ONE, p()).is_err());
        assert!(Formula::sad_deg("a", Decimal::ZERO, p()).is_ok());
    }

    #[test]
    fn fragments() {
        assert!(!Formula::sad("a", p()).in_fragment(Fragment::NoSad));
        assert!(Formula::happy("a", p()).in_fragment(Fragment::NoSad));
        let f = Formula::nec(Formula::implies(p(), Formula::knows("a", p())));
        assert!(f.in_fragment(Fragment::NoEmotion));
    }

    #[test]
    fn metrics_of_small_formulas() {
        let m = metrics(&p());
        assert_eq!((m.depth, m.node_count), (0, 1));
        assert!(m.agents_used.is_empty());
        let m = metrics(&Formula::happy("a", p()));
        assert_eq!((m.depth, m.node_count), (1, 2));
        assert_eq!(m.agents_used.into_iter().collect::<Vec<_>>(), vec![Name::new("a")]);
        let m = metrics(&Formula::nec(Formula::implies(p(), p())));
        assert_eq!((m.depth, m.node_count), (2, 4));
        assert_eq!(m.vars_used.len(), 1);
    }

    #[test]
    fn sugar_expands_to_primitives() {
        let q = Formula::var("q");
        let and = Formula::and(p(), q.clone());
        assert_eq!(
            and,
            Formula::not(Formula::implies(p(), Formula::not(q.clone())))
        );
        assert_eq!(Formula::or(p(), q.clone()), Formula::implies(Formula::not(p()), q));
        assert_eq!(
            Formula::nbar(p()),
            Formula::not(Formula::nec(Formula::not(p())))
        );
    }
}
