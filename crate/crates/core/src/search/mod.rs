//! Bounded search over small preference models and formulas.
//!
//! Everything here is exhaustive up to explicit bounds (number of worlds,
//! formula depth). Results are therefore evidence at that scale, and every
//! report carries the bounds it was produced under.

mod space;

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::formula::{enumerate, tau, Formula, FormulaError, Fragment};
use crate::model::{AnyModel, EpistemicModel, WorldSet};
use crate::par::{find_first, map_chunks, Exec};
use crate::semantics::{EvalError, Evaluator};
use crate::syntax::ModelDocument;
use crate::Name;
pub use space::{partitions, permutations, strict_orders, Labelled, Space};

pub const DEFAULT_CAP: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBounds {
    pub max_worlds: usize,
    pub agents: Vec<Name>,
    pub vars: Vec<Name>,
    pub max_formula_depth: usize,
    /// Upper bound on labelled candidate models examined.
    pub cap: usize,
}

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds {
            max_worlds: 3,
            agents: vec![Name::new("a")],
            vars: vec![Name::new("p")],
            max_formula_depth: 3,
            cap: DEFAULT_CAP,
        }
    }
}

impl SearchBounds {
    pub fn worlds(max_worlds: usize) -> Self {
        SearchBounds {
            max_worlds,
            ..SearchBounds::default()
        }
    }

    fn check(&self) -> Result<(), SearchError> {
        if self.max_worlds == 0 || self.agents.is_empty() || self.vars.is_empty() || self.cap == 0 {
            return Err(SearchError::InvalidBounds(
                "max_worlds, agents, vars and cap must all be positive".into(),
            ));
        }
        if self.max_worlds > 6 {
            return Err(SearchError::InvalidBounds(format!(
                "max_worlds {} is beyond what exhaustive enumeration can handle (at most 6)",
                self.max_worlds
            )));
        }
        Ok(())
    }

    /// Labelled candidates with 1 up to `max_worlds` worlds, saturating.
    pub fn candidate_count(&self) -> usize {
        (1..=self.max_worlds)
            .map(|n| Space::new(n, &self.agents, &self.vars).len())
            .fold(0usize, |a, b| a.saturating_add(b))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Satisfy,
    Refute,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
// Externally tagged: internally tagged enums buffer their content, which
// loses arbitrary-precision numbers on the way back in.
pub enum Outcome {
    WitnessFound {
        model: ModelDocument,
        world: String,
        models_examined: usize,
    },
    Exhausted {
        models_examined: usize,
    },
    Distinguished {
        formula: Formula,
        world: String,
        left_holds: bool,
        formulas_checked: usize,
    },
    Equivalent {
        formulas_checked: usize,
    },
    /// Two models that agree on the fragment up to the depth bound while
    /// disagreeing on the target at `world`.
    SeparatingPair {
        left: ModelDocument,
        right: ModelDocument,
        target: Formula,
        world: String,
        left_holds: bool,
        formulas_checked: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub outcome: Outcome,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_worlds: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_formula_depth: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fragment: Option<Fragment>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("{count} candidate models exceed the cap of {cap}")]
    CapExceeded { count: usize, cap: usize },
    #[error("invalid bounds: {0}")]
    InvalidBounds(String),
    #[error("models must share worlds, agents and variables")]
    SignatureMismatch,
    #[error("target `{target}` belongs to the {fragment} fragment, so it cannot separate models that agree on it")]
    TargetNotExcluded { target: String, fragment: Fragment },
    #[error("{0}")]
    Formula(#[from] FormulaError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("search result failed to re-verify: {0}")]
    Verification(String),
}

fn document(m: &EpistemicModel) -> ModelDocument {
    ModelDocument::from_model(&AnyModel::Preference(m.clone()))
}

/// Reloads a model embedded in a report.
pub fn embedded_model(doc: &ModelDocument) -> Option<EpistemicModel> {
    match doc.into_model().ok()? {
        AnyModel::Preference(m) => Some(m),
        _ => None,
    }
}

fn check_cap(bounds: &SearchBounds) -> Result<(), SearchError> {
    bounds.check()?;
    let count = bounds.candidate_count();
    if count > bounds.cap {
        return Err(SearchError::CapExceeded {
            count,
            cap: bounds.cap,
        });
    }
    Ok(())
}

/// Every model with worlds `w1..wn`, `n <= max_worlds`, one per isomorphism
/// class (the least labelling is kept).
pub fn enumerate_models(bounds: &SearchBounds, exec: Exec) -> Result<Vec<EpistemicModel>, SearchError> {
    check_cap(bounds)?;
    let mut out = Vec::new();
    for n in 1..=bounds.max_worlds {
        let space = Space::new(n, &bounds.agents, &bounds.vars);
        let parts = map_chunks(space.len(), exec, |r| {
            r.map(|i| space.decode(i))
                .filter(|l| space.is_canonical(l))
                .map(|l| space.build(&l))
                .collect::<Vec<_>>()
        });
        out.extend(parts.into_iter().flatten());
    }
    Ok(out)
}

/// The same space without symmetry reduction.
pub fn enumerate_labelled_models(bounds: &SearchBounds, exec: Exec) -> Result<Vec<EpistemicModel>, SearchError> {
    check_cap(bounds)?;
    let mut out = Vec::new();
    for n in 1..=bounds.max_worlds {
        let space = Space::new(n, &bounds.agents, &bounds.vars);
        let parts = map_chunks(space.len(), exec, |r| {
            r.map(|i| space.build(&space.decode(i))).collect::<Vec<_>>()
        });
        out.extend(parts.into_iter().flatten());
    }
    Ok(out)
}

/// Isomorphism-invariant key of a model produced by the enumerators.
pub fn canonical_key(m: &EpistemicModel) -> Option<Vec<u8>> {
    let sig = m.signature();
    let agents: Vec<Name> = sig.agents().iter().cloned().collect();
    let vars: Vec<Name> = sig.vars().iter().cloned().collect();
    let space = Space::new(sig.world_count(), &agents, &vars);
    let l = space.labelled_of(m)?;
    let mut key = space.canonical_key(&l);
    key.insert(0, sig.world_count() as u8);
    Some(key)
}

/// Isomorphism by brute force over all world relabelings; world names are
/// ignored.
pub fn isomorphic(a: &EpistemicModel, b: &EpistemicModel) -> bool {
    let (sa, sb) = (a.signature(), b.signature());
    if sa.agents() != sb.agents() || sa.vars() != sb.vars() || sa.world_count() != sb.world_count() {
        return false;
    }
    let n = sa.world_count();
    permutations(n).iter().any(|perm| {
        let p = a.permuted(perm);
        let (fp, fb) = (p.frame(), b.frame());
        fp.valuations() == fb.valuations()
            && p.prefs() == b.prefs()
            && (0..sa.agents().len()).all(|ag| (0..n).all(|w| fp.cell(ag, w) == fb.cell(ag, w)))
    })
}

/// First enumerated (model, world) where `f` holds (`Satisfy`) or fails
/// (`Refute`).
pub fn find_model(f: &Formula, mode: Mode, bounds: &SearchBounds, exec: Exec) -> Result<SearchReport, SearchError> {
    let models = enumerate_models(bounds, exec)?;
    let hit = find_first(models.len(), exec, 256, |r| {
        r.into_iter().find_map(|i| {
            let m = &models[i];
            let ext = match Evaluator::new(m).extension(f) {
                Ok(e) => e,
                Err(e) => return Some(Err(e)),
            };
            let target = match mode {
                Mode::Satisfy => ext,
                Mode::Refute => ext.complement(),
            };
            target.first().map(|w| Ok((i, w)))
        })
    });
    let outcome = match hit {
        None => Outcome::Exhausted {
            models_examined: models.len(),
        },
        Some(Err(e)) => return Err(e.into()),
        Some(Ok((i, w))) => {
            let m = &models[i];
            let world = m.signature().world(w).to_string();
            // Self-check through the public evaluator.
            let holds = crate::semantics::eval(m, &world, f)?.holds;
            if holds != (mode == Mode::Satisfy) {
                return Err(SearchError::Verification(format!("witness for `{f}` does not re-check")));
            }
            Outcome::WitnessFound {
                model: document(m),
                world,
                models_examined: i + 1,
            }
        }
    };
    Ok(SearchReport {
        outcome,
        max_worlds: Some(bounds.max_worlds),
        max_formula_depth: None,
        fragment: None,
    })
}

fn same_signature(a: &EpistemicModel, b: &EpistemicModel) -> bool {
    let (x, y) = (a.signature(), b.signature());
    x.agents() == y.agents() && x.vars() == y.vars() && x.worlds() == y.worlds()
}

/// Compares the two models on every fragment formula up to `max_depth` at
/// every world.
pub fn check_pair_equivalence(
    m1: &EpistemicModel,
    m2: &EpistemicModel,
    frag: Fragment,
    max_depth: usize,
    exec: Exec,
) -> Result<SearchReport, SearchError> {
    if !same_signature(m1, m2) {
        return Err(SearchError::SignatureMismatch);
    }
    let sig = m1.signature();
    let vars: Vec<Name> = sig.vars().iter().cloned().collect();
    let agents: Vec<Name> = sig.agents().iter().cloned().collect();
    let formulas = enumerate(&vars, &agents, max_depth, frag);

    let lower = formulas.materialized();
    let mut e1 = Evaluator::new(m1);
    let mut e2 = Evaluator::new(m2);
    e1.prime(lower)?;
    e2.prime(lower)?;
    let (s1, s2) = (e1.share(), e2.share());

    let hit = find_first(formulas.len(), exec, 4096, |r| {
        let mut e1 = Evaluator::with_shared(m1, s1.clone());
        let mut e2 = Evaluator::with_shared(m2, s2.clone());
        r.into_iter().find_map(|i| {
            let f = formulas.get(i);
            let res = (|| -> Result<Option<(WorldSet, WorldSet)>, EvalError> {
                let (a, b) = (e1.extension(&f)?, e2.extension(&f)?);
                Ok((a != b).then_some((a, b)))
            })();
            match res {
                Ok(None) => None,
                Ok(Some((a, b))) => Some(Ok((f, a, b))),
                Err(e) => Some(Err(e)),
            }
        })
    });
    let outcome = match hit {
        None => Outcome::Equivalent {
            formulas_checked: formulas.len(),
        },
        Some(Err(e)) => return Err(e.into()),
        Some(Ok((f, a, b))) => {
            let w = a
                .iter()
                .chain(b.iter())
                .filter(|&w| a.contains(w) != b.contains(w))
                .min()
                .expect("extensions differ");
            let world = sig.world(w).to_string();
            let l = crate::semantics::eval(m1, &world, &f)?.holds;
            let r = crate::semantics::eval(m2, &world, &f)?.holds;
            if l == r {
                return Err(SearchError::Verification(format!("`{f}` does not separate at {world}")));
            }
            Outcome::Distinguished {
                formula: f,
                world,
                left_holds: l,
                formulas_checked: formulas.len(),
            }
        }
    };
    Ok(SearchReport {
        outcome,
        max_worlds: None,
        max_formula_depth: Some(max_depth),
        fragment: Some(frag),
    })
}

/// Looks for two models over the same worlds that agree on every `frag`
/// formula up to the depth bound but disagree on `target`.
pub fn find_separating_pair(
    frag: Fragment,
    target: &Formula,
    bounds: &SearchBounds,
    exec: Exec,
) -> Result<SearchReport, SearchError> {
    if target.in_fragment(frag) {
        return Err(SearchError::TargetNotExcluded {
            target: target.to_string(),
            fragment: frag,
        });
    }
    let models = enumerate_labelled_models(bounds, exec)?;
    let formulas = enumerate(&bounds.vars, &bounds.agents, bounds.max_formula_depth, frag);
    let fs: Vec<Formula> = formulas.iter().collect();

    type Profile = (usize, Vec<WorldSet>);
    let profiles: Vec<Result<(Profile, WorldSet), EvalError>> = map_chunks(models.len(), exec, |r| {
        r.map(|i| {
            let m = &models[i];
            let mut ev = Evaluator::new(m);
            ev.prime(&fs)?;
            let exts = fs.iter().map(|f| ev.extension(f)).collect::<Result<Vec<_>, _>>()?;
            Ok(((m.signature().world_count(), exts), ev.extension(target)?))
        })
        .collect::<Vec<_>>()
    })
    .into_iter()
    .flatten()
    .collect();

    let mut groups: HashMap<&Profile, Vec<usize>> = HashMap::new();
    let mut found = None;
    'outer: for (j, p) in profiles.iter().enumerate() {
        let (key, tj) = p.as_ref().map_err(|e| SearchError::Eval(e.clone()))?;
        let earlier = groups.entry(key).or_default();
        for &i in earlier.iter() {
            let ti = &profiles[i].as_ref().expect("checked").1;
            if ti != tj {
                found = Some((i, j));
                break 'outer;
            }
        }
        earlier.push(j);
    }
    let report = |outcome| SearchReport {
        outcome,
        max_worlds: Some(bounds.max_worlds),
        max_formula_depth: Some(bounds.max_formula_depth),
        fragment: Some(frag),
    };
    let Some((i, j)) = found else {
        return Ok(report(Outcome::Exhausted {
            models_examined: models.len(),
        }));
    };
    let outcome = verify_pair(&models[i], &models[j], frag, target, bounds.max_formula_depth, exec)?;
    Ok(report(outcome))
}

/// Re-checks a candidate pair from scratch and packages it.
fn verify_pair(
    left: &EpistemicModel,
    right: &EpistemicModel,
    frag: Fragment,
    target: &Formula,
    depth: usize,
    exec: Exec,
) -> Result<Outcome, SearchError> {
    let eq = check_pair_equivalence(left, right, frag, depth, exec)?;
    let Outcome::Equivalent { formulas_checked } = eq.outcome else {
        return Err(SearchError::Verification(format!("pair is distinguished: {:?}", eq.outcome)));
    };
    let a = Evaluator::new(left).extension(target)?;
    let b = Evaluator::new(right).extension(target)?;
    let w = (0..left.signature().world_count())
        .find(|&w| a.contains(w) != b.contains(w))
        .ok_or_else(|| SearchError::Verification(format!("pair agrees on `{target}`")))?;
    Ok(Outcome::SeparatingPair {
        left: document(left),
        right: document(right),
        target: target.clone(),
        world: left.signature().world(w).to_string(),
        left_holds: a.contains(w),
        formulas_checked,
    })
}

/// Maps a separating pair to the dual one: both models replaced by their
/// converses, the target translated, and the fragment swapped. The result is
/// re-verified from scratch.
pub fn dual_separating_pair(report: &SearchReport, exec: Exec) -> Result<SearchReport, SearchError> {
    let (Outcome::SeparatingPair { left, right, target, .. }, Some(frag), Some(depth)) =
        (&report.outcome, report.fragment, report.max_formula_depth)
    else {
        return Err(SearchError::Verification("not a separating pair report".into()));
    };
    let load = |d: &ModelDocument| {
        embedded_model(d).ok_or_else(|| SearchError::Verification("embedded model does not load".into()))
    };
    let (l, r) = (load(left)?.converse(), load(right)?.converse());
    let outcome = verify_pair(&l, &r, frag.dual(), &tau(target)?, depth, exec)?;
    Ok(SearchReport {
        outcome,
        fragment: Some(frag.dual()),
        ..report.clone()
    })
}
