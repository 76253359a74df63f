//! Satisfaction under the preference, utility and goodness semantics.
//!
//! Evaluation is bottom-up over extensions: each subformula's set of
//! satisfying worlds is computed once and the modal clauses are decided on
//! whole sets. Emotions share the knowledge condition (a) and the
//! non-triviality condition (c); the semantics differ only in (b).

mod duality;

use std::sync::Arc;

use rust_decimal::Decimal;
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::formula::{Degree, Emotion, Formula, FormulaKind};
use crate::model::{
    AnyModel, EpistemicModel, Frame, GoodnessModel, LookupError, ModelKind, UtilityModel, WorldSet,
};
pub use duality::{duality_sweep, DualityReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("unknown world `{0}`")]
    UnknownWorld(String),
    #[error("unknown agent `{0}`")]
    UnknownAgent(String),
    #[error("unknown variable `{0}`")]
    UnknownVar(String),
    #[error("degree-indexed emotion `{0}` has no meaning in the preference semantics")]
    DegreeInPreferenceSemantics(String),
    #[error("emotion `{0}` needs a degree in the utility semantics")]
    MissingDegree(String),
    #[error("degree-indexed emotion `{0}` has no meaning in the goodness semantics")]
    DegreeInGoodnessSemantics(String),
}

impl From<LookupError> for EvalError {
    fn from(e: LookupError) -> Self {
        match e {
            LookupError::UnknownWorld(w) => EvalError::UnknownWorld(w),
            LookupError::UnknownAgent(a) => EvalError::UnknownAgent(a),
            LookupError::UnknownVar(v) => EvalError::UnknownVar(v),
        }
    }
}

/// A model of any kind, borrowed.
#[derive(Debug, Clone, Copy)]
pub enum ModelRef<'m> {
    Preference(&'m EpistemicModel),
    Utility(&'m UtilityModel),
    Goodness(&'m GoodnessModel),
}

impl<'m> ModelRef<'m> {
    pub fn frame(self) -> &'m Frame {
        match self {
            ModelRef::Preference(m) => m.frame(),
            ModelRef::Utility(m) => m.frame(),
            ModelRef::Goodness(m) => m.frame(),
        }
    }

    pub fn kind(self) -> ModelKind {
        match self {
            ModelRef::Preference(_) => ModelKind::Preference,
            ModelRef::Utility(_) => ModelKind::Utility,
            ModelRef::Goodness(_) => ModelKind::Goodness,
        }
    }
}

impl<'m> From<&'m EpistemicModel> for ModelRef<'m> {
    fn from(m: &'m EpistemicModel) -> Self {
        ModelRef::Preference(m)
    }
}

impl<'m> From<&'m UtilityModel> for ModelRef<'m> {
    fn from(m: &'m UtilityModel) -> Self {
        ModelRef::Utility(m)
    }
}

impl<'m> From<&'m GoodnessModel> for ModelRef<'m> {
    fn from(m: &'m GoodnessModel) -> Self {
        ModelRef::Goodness(m)
    }
}

impl<'m> From<&'m AnyModel> for ModelRef<'m> {
    fn from(m: &'m AnyModel) -> Self {
        match m {
            AnyModel::Preference(m) => ModelRef::Preference(m),
            AnyModel::Utility(m) => ModelRef::Utility(m),
            AnyModel::Goodness(m) => ModelRef::Goodness(m),
        }
    }
}

/// Which clause of the satisfaction relation a trace entry reports on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Condition {
    A,
    B,
    C,
    Boolean,
    Knowledge,
    Necessity,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceEntry {
    pub subformula: Formula,
    pub world: String,
    pub condition: Condition,
    pub outcome: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub holds: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trace: Option<Vec<TraceEntry>>,
}

type Memo = FxHashMap<usize, (Formula, WorldSet)>;

/// Extensions already computed by another evaluator, readable from many.
#[derive(Clone, Default)]
pub struct SharedMemo(Arc<Memo>);

/// An evaluation session over one model.
///
/// Extensions of proper subformulas are remembered by node identity, so
/// evaluating many formulas that share children is cheap. The formula
/// passed to [`Evaluator::extension`] itself is not remembered.
pub struct Evaluator<'m> {
    model: ModelRef<'m>,
    memo: Memo,
    shared: SharedMemo,
}

impl<'m> Evaluator<'m> {
    pub fn new(model: impl Into<ModelRef<'m>>) -> Self {
        Evaluator {
            model: model.into(),
            memo: Memo::default(),
            shared: SharedMemo::default(),
        }
    }

    /// A session that starts from extensions in `shared`. The caller must
    /// have built `shared` over the same model.
    pub fn with_shared(model: impl Into<ModelRef<'m>>, shared: SharedMemo) -> Self {
        Evaluator {
            shared,
            ..Evaluator::new(model)
        }
    }

    pub fn model(&self) -> ModelRef<'m> {
        self.model
    }

    /// Remembers the extensions of `fs` themselves, not just their children.
    pub fn prime<'a>(&mut self, fs: impl IntoIterator<Item = &'a Formula>) -> Result<(), EvalError> {
        for f in fs {
            self.ext(f, true)?;
        }
        Ok(())
    }

    /// Freezes everything remembered so far for use by other sessions.
    pub fn share(self) -> SharedMemo {
        let mut memo = self.memo;
        for (k, v) in self.shared.0.iter() {
            memo.entry(*k).or_insert_with(|| v.clone());
        }
        SharedMemo(Arc::new(memo))
    }

    pub fn extension(&mut self, f: &Formula) -> Result<WorldSet, EvalError> {
        self.ext(f, false)
    }

    fn lookup(&self, f: &Formula) -> Option<WorldSet> {
        let k = f.key();
        self.memo
            .get(&k)
            .or_else(|| self.shared.0.get(&k))
            .map(|(_, s)| s.clone())
    }

    fn ext(&mut self, f: &Formula, remember: bool) -> Result<WorldSet, EvalError> {
        if let Some(s) = self.lookup(f) {
            return Ok(s);
        }
        use FormulaKind::*;
        let frame = self.model.frame();
        let sig = frame.signature();
        let n = frame.world_count();
        let s = match f.kind() {
            Var(v) => frame.valuation(sig.var_index(v)?).clone(),
            Not(g) => self.ext(g, true)?.complement(),
            Implies(a, b) => {
                let a = self.ext(a, true)?;
                a.implies(&self.ext(b, true)?)
            }
            Nec(g) => {
                if self.ext(g, true)?.is_full() {
                    WorldSet::full(n)
                } else {
                    WorldSet::empty(n)
                }
            }
            Knows(a, g) => {
                let a = sig.agent_index(a)?;
                frame.knows(a, &self.ext(g, true)?)
            }
            Happy(a, g) | Sad(a, g) | HappyDeg(a, _, g) | SadDeg(a, _, g) => {
                let (e, d) = emotion_of(f);
                self.check_degree(f, d)?;
                let a = sig.agent_index(a)?;
                let inner = self.ext(g, true)?;
                self.emotion(e, a, d, &inner)
            }
        };
        if remember {
            self.memo.insert(f.key(), (f.clone(), s.clone()));
        }
        Ok(s)
    }

    fn check_degree(&self, f: &Formula, d: Option<&Degree>) -> Result<(), EvalError> {
        match (self.model, d) {
            (ModelRef::Preference(_), Some(_)) => {
                Err(EvalError::DegreeInPreferenceSemantics(f.to_string()))
            }
            (ModelRef::Goodness(_), Some(_)) => Err(EvalError::DegreeInGoodnessSemantics(f.to_string())),
            (ModelRef::Utility(_), None) => Err(EvalError::MissingDegree(f.to_string())),
            _ => Ok(()),
        }
    }

    /// Worlds where agent `a` has emotion `e` about a proposition with
    /// extension `inner`.
    fn emotion(&self, e: Emotion, a: usize, d: Option<&Degree>, inner: &WorldSet) -> WorldSet {
        let frame = self.model.frame();
        if inner.is_full() || !self.ordered(e, a, d, inner) {
            return WorldSet::empty(frame.world_count());
        }
        frame.knows(a, inner)
    }

    /// Condition (b). Always quantifies over all worlds of the model.
    fn ordered(&self, e: Emotion, a: usize, d: Option<&Degree>, inner: &WorldSet) -> bool {
        let outer = inner.complement();
        // H: refuting worlds below satisfying ones. S: the other way round.
        let (lower, upper) = match e {
            Emotion::H => (&outer, inner),
            Emotion::S => (inner, &outer),
        };
        match self.model {
            ModelRef::Preference(m) => m.prec_sets(a, lower, upper),
            ModelRef::Utility(m) => {
                let d = d.copied().unwrap_or(Decimal::ZERO);
                let max_low = lower.iter().map(|w| m.utility(a, w)).max();
                let min_up = upper.iter().map(|w| m.utility(a, w)).min();
                match (max_low, min_up) {
                    (Some(lo), Some(hi)) => lo + d <= hi,
                    _ => true,
                }
            }
            ModelRef::Goodness(m) => match e {
                Emotion::H => m.good(a).is_subset(inner),
                Emotion::S => m.good(a).is_disjoint(inner),
            },
        }
    }

    /// Decides `f` at `w`, appending an explanation in pre-order.
    fn trace(&mut self, f: &Formula, w: usize, out: &mut Vec<TraceEntry>) -> Result<bool, EvalError> {
        use FormulaKind::*;
        let frame = self.model.frame();
        let sig = frame.signature();
        let holds = self.ext(f, true)?.contains(w);
        let entry = |cond: Condition, out: &mut Vec<TraceEntry>| {
            out.push(TraceEntry {
                subformula: f.clone(),
                world: sig.world(w).to_string(),
                condition: cond,
                outcome: holds,
            })
        };
        match f.kind() {
            Var(_) => entry(Condition::Boolean, out),
            Not(g) => {
                entry(Condition::Boolean, out);
                self.trace(g, w, out)?;
            }
            Implies(a, b) => {
                entry(Condition::Boolean, out);
                self.trace(a, w, out)?;
                self.trace(b, w, out)?;
            }
            Nec(g) => {
                entry(Condition::Necessity, out);
                let inner = self.ext(g, true)?;
                let at = inner.complement().first().unwrap_or(w);
                self.trace(g, at, out)?;
            }
            Knows(a, g) => {
                entry(Condition::Knowledge, out);
                let a = sig.agent_index(a)?;
                let inner = self.ext(g, true)?;
                let miss = frame.cell(a, w).iter().find(|v| !inner.contains(*v));
                self.trace(g, miss.unwrap_or(w), out)?;
            }
            Happy(a, g) | Sad(a, g) | HappyDeg(a, _, g) | SadDeg(a, _, g) => {
                let (e, d) = emotion_of(f);
                let a = sig.agent_index(a)?;
                let inner = self.ext(g, true)?;
                let miss_a = frame.cell(a, w).iter().find(|v| !inner.contains(*v));
                if let Some(v) = miss_a {
                    entry(Condition::A, out);
                    self.trace(g, v, out)?;
                } else if !self.ordered(e, a, d, &inner) {
                    entry(Condition::B, out);
                    for v in self.b_witness(e, a, d, &inner) {
                        self.trace(g, v, out)?;
                    }
                } else {
                    entry(Condition::C, out);
                    if let Some(v) = inner.complement().first() {
                        self.trace(g, v, out)?;
                    }
                }
            }
        }
        Ok(holds)
    }

    /// Worlds that break condition (b): the first bad pair in world order,
    /// or the first misplaced good world.
    fn b_witness(&self, e: Emotion, a: usize, d: Option<&Degree>, inner: &WorldSet) -> Vec<usize> {
        let outer = inner.complement();
        let (lower, upper) = match e {
            Emotion::H => (&outer, inner),
            Emotion::S => (inner, &outer),
        };
        let below = |lo: usize, hi: usize| match self.model {
            ModelRef::Preference(m) => m.pref(a).contains(lo, hi),
            ModelRef::Utility(m) => m.utility(a, lo) + d.copied().unwrap_or_default() <= m.utility(a, hi),
            ModelRef::Goodness(_) => true,
        };
        if let ModelRef::Goodness(m) = self.model {
            let bad = match e {
                Emotion::H => m.good(a).iter().find(|g| !inner.contains(*g)),
                Emotion::S => m.good(a).iter().find(|g| inner.contains(*g)),
            };
            return bad.into_iter().collect();
        }
        let bad = lower
            .iter()
            .flat_map(|lo| upper.iter().map(move |hi| (lo, hi)))
            .find(|&(lo, hi)| !below(lo, hi));
        bad.map(|(lo, hi)| vec![lo, hi]).unwrap_or_default()
    }
}

fn emotion_of(f: &Formula) -> (Emotion, Option<&Degree>) {
    match f.kind() {
        FormulaKind::Happy(..) => (Emotion::H, None),
        FormulaKind::Sad(..) => (Emotion::S, None),
        FormulaKind::HappyDeg(_, d, _) => (Emotion::H, Some(d)),
        FormulaKind::SadDeg(_, d, _) => (Emotion::S, Some(d)),
        _ => unreachable!("not an emotion"),
    }
}

fn evaluate(model: ModelRef<'_>, world: &str, f: &Formula, traced: bool) -> Result<Verdict, EvalError> {
    let w = model.frame().signature().world_index(world)?;
    let mut ev = Evaluator::new(model);
    if traced {
        let mut out = Vec::new();
        let holds = ev.trace(f, w, &mut out)?;
        Ok(Verdict {
            holds,
            trace: Some(out),
        })
    } else {
        Ok(Verdict {
            holds: ev.extension(f)?.contains(w),
            trace: None,
        })
    }
}

/// Preference semantics.
pub fn eval(model: &EpistemicModel, world: &str, f: &Formula) -> Result<Verdict, EvalError> {
    evaluate(model.into(), world, f, false)
}

pub fn eval_traced(model: &EpistemicModel, world: &str, f: &Formula) -> Result<Verdict, EvalError> {
    evaluate(model.into(), world, f, true)
}

/// Utility semantics; every emotion needs a degree.
pub fn eval_utility(model: &UtilityModel, world: &str, f: &Formula) -> Result<Verdict, EvalError> {
    evaluate(model.into(), world, f, false)
}

pub fn eval_utility_traced(model: &UtilityModel, world: &str, f: &Formula) -> Result<Verdict, EvalError> {
    evaluate(model.into(), world, f, true)
}

/// Goodness semantics.
pub fn eval_goodness(model: &GoodnessModel, world: &str, f: &Formula) -> Result<Verdict, EvalError> {
    evaluate(model.into(), world, f, false)
}

pub fn eval_goodness_traced(model: &GoodnessModel, world: &str, f: &Formula) -> Result<Verdict, EvalError> {
    evaluate(model.into(), world, f, true)
}

/// Dispatches on the model kind.
pub fn eval_any<'m>(model: impl Into<ModelRef<'m>>, world: &str, f: &Formula, traced: bool) -> Result<Verdict, EvalError> {
    evaluate(model.into(), world, f, traced)
}

/// Worlds where `f` holds.
pub fn extension<'m>(model: impl Into<ModelRef<'m>>, f: &Formula) -> Result<WorldSet, EvalError> {
    Evaluator::new(model).extension(f)
}

/// True iff `f` holds at every world.
pub fn valid_in_model<'m>(model: impl Into<ModelRef<'m>>, f: &Formula) -> Result<bool, EvalError> {
    Ok(extension(model, f)?.is_full())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::syntax::parse_formula;

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    fn ext_names<'m>(m: impl Into<ModelRef<'m>>, s: &str) -> Vec<String> {
        let m = m.into();
        let e = extension(m, &f(s)).unwrap();
        m.frame().signature().world_names(&e)
    }

    #[test]
    fn gift_examples() {
        let g = fixtures::preference("gift").unwrap();
        assert!(eval(&g, "u", &f("H[p] gift")).unwrap().holds);
        assert!(!eval(&g, "u", &f("H[s] gift")).unwrap().holds);
        assert!(eval(&g, "t", &f("S[s] !gift")).unwrap().holds);
        assert!(!eval(&g, "w", &f("H[p] S[s] !gift")).unwrap().holds);
        assert!(!eval(&g, "w", &f("H[s] (gift | !gift)")).unwrap().holds);
        assert_eq!(ext_names(&g, "H[p] gift"), ["w", "u"]);
        assert!(ext_names(&g, "gift & !gift").is_empty());
        assert!(valid_in_model(&g, &f("gift -> gift")).unwrap());
        assert!(valid_in_model(&g, &f("K[p] gift -> gift")).unwrap());
        assert!(!valid_in_model(&g, &f("gift")).unwrap());
    }

    #[test]
    fn battle_and_lottery_examples() {
        let b = fixtures::preference("battle").unwrap();
        assert_eq!(ext_names(&b, "S[s] diff"), ["(I,R)", "(R,I)"]);
        let l = fixtures::preference("lottery").unwrap();
        assert!(eval(&l, "u", &f("S[p] lost_p")).unwrap().holds);
    }

    #[test]
    fn utility_examples() {
        let m = fixtures::utility("battle-util").unwrap();
        assert!(eval_utility(&m, "(I,I)", &f("H[s;1] same")).unwrap().holds);
        assert!(eval_utility(&m, "(R,R)", &f("H[s;2] rus")).unwrap().holds);
        assert!(!eval_utility(&m, "(R,R)", &f("H[s;3] rus")).unwrap().holds);
        for w in ["(I,I)", "(I,R)", "(R,I)", "(R,R)"] {
            assert!(!eval_utility(&m, w, &f("H[s;0] (same & !same)")).unwrap().holds);
        }
        assert!(matches!(
            eval_utility(&m, "(I,I)", &f("H[s] same")),
            Err(EvalError::MissingDegree(_))
        ));
    }

    #[test]
    fn goodness_examples() {
        let broad = fixtures::goodness("battle-good-broad").unwrap();
        let strict = fixtures::goodness("battle-good-strict").unwrap();
        assert!(eval_goodness(&broad, "(R,R)", &f("H[s] same")).unwrap().holds);
        assert!(!eval_goodness(&broad, "(R,R)", &f("H[s] rus_s")).unwrap().holds);
        assert!(eval_goodness(&strict, "(R,R)", &f("H[s] rus_s")).unwrap().holds);
        assert!(matches!(
            eval_goodness(&strict, "(R,R)", &f("H[s;1] rus_s")),
            Err(EvalError::DegreeInGoodnessSemantics(_))
        ));
    }

    #[test]
    fn errors() {
        let g = fixtures::preference("gift").unwrap();
        assert_eq!(
            eval(&g, "nowhere", &f("gift")),
            Err(EvalError::UnknownWorld("nowhere".into()))
        );
        assert_eq!(eval(&g, "w", &f("K[z] gift")), Err(EvalError::UnknownAgent("z".into())));
        assert_eq!(eval(&g, "w", &f("q")), Err(EvalError::UnknownVar("q".into())));
        assert!(matches!(
            eval(&g, "w", &f("H[s;1] gift")),
            Err(EvalError::DegreeInPreferenceSemantics(_))
        ));
    }

    #[test]
    fn trace_root_matches_verdict() {
        let g = fixtures::preference("gift").unwrap();
        for (w, s, cond) in [
            ("t", "H[p] gift", Condition::A),
            ("w", "H[p] gift", Condition::C),
            ("u", "H[s] gift", Condition::A),
            ("w", "K[p] H[s] gift", Condition::Knowledge),
        ] {
            let v = eval_traced(&g, w, &f(s)).unwrap();
            let trace = v.trace.unwrap();
            assert_eq!(trace[0].outcome, v.holds);
            assert_eq!(trace[0].condition, cond, "{s} at {w}");
            assert_eq!(trace[0].world, w);
        }
        let l = fixtures::preference("lottery").unwrap();
        let v = eval_traced(&l, "u", &f("H[s] lost_p")).unwrap();
        assert!(!v.holds);
        assert_eq!(v.trace.unwrap()[0].condition, Condition::B);
    }

    #[test]
    fn shared_memo_gives_same_answers() {
        let g = fixtures::preference("gift").unwrap();
        let fs: Vec<Formula> = ["gift", "!gift", "K[p] gift"].iter().map(|s| f(s)).collect();
        let mut ev = Evaluator::new(&g);
        ev.prime(&fs).unwrap();
        let shared = ev.share();
        let mut ev = Evaluator::with_shared(&g, shared);
        let h = Formula::happy("s", fs[2].clone());
        assert_eq!(ev.extension(&h).unwrap(), extension(&g, &h).unwrap());
    }
}
