//! Shared test helpers: a direct, world-at-a-time reading of the
//! satisfaction relations, and proptest generators.
#![allow(dead_code)]

use emologic::formula::{Emotion, FormulaKind};
use emologic::model::{Frame, WorldSet};
use emologic::search::Space;
use emologic::{EpistemicModel, Formula, GoodnessModel, Name, UtilityModel};
use proptest::prelude::*;
use rust_decimal::Decimal;

pub enum Naive<'a> {
    Pref(&'a EpistemicModel),
    Util(&'a UtilityModel),
    Good(&'a GoodnessModel),
}

impl Naive<'_> {
    fn frame(&self) -> &Frame {
        match self {
            Naive::Pref(m) => m.frame(),
            Naive::Util(m) => m.frame(),
            Naive::Good(m) => m.frame(),
        }
    }
}

fn agent(frame: &Frame, a: &Name) -> usize {
    frame.signature().agents().get_index_of(a).expect("known agent")
}

/// `None` when the formula is not interpretable in this kind of model.
pub fn holds(m: &Naive<'_>, w: usize, f: &Formula) -> Option<bool> {
    let frame = m.frame();
    let n = frame.world_count();
    let all = |g: &dyn Fn(usize) -> Option<bool>| -> Option<bool> {
        let mut ok = true;
        for u in 0..n {
            ok &= g(u)?;
        }
        Some(ok)
    };
    let same_block = |a: usize, u: usize| {
        frame
            .partition(a)
            .blocks()
            .iter()
            .any(|b| b.contains(w) && b.contains(u))
    };
    let emotion = |e: Emotion, a: &Name, d: Option<Decimal>, phi: &Formula| -> Option<bool> {
        let ai = agent(frame, a);
        let truth: Vec<bool> = (0..n).map(|u| holds(m, u, phi)).collect::<Option<_>>()?;
        let known = (0..n).filter(|&u| same_block(ai, u)).all(|u| truth[u]);
        let nontrivial = truth.iter().any(|t| !t);
        let below = |u: usize, v: usize| -> Option<bool> {
            match (m, d) {
                (Naive::Pref(p), None) => Some(p.pref(ai).contains(u, v)),
                (Naive::Util(um), Some(d)) => Some(um.utility(ai, u) + d <= um.utility(ai, v)),
                _ => None,
            }
        };
        let ordered = if let Naive::Good(g) = m {
            if d.is_some() {
                return None;
            }
            let good = g.good(ai);
            good.iter().all(|u| truth[u] == (e == Emotion::H))
        } else {
            let mut ok = true;
            for u in 0..n {
                for v in 0..n {
                    let pair = match e {
                        Emotion::H => !truth[u] && truth[v],
                        Emotion::S => truth[u] && !truth[v],
                    };
                    let b = below(u, v)?;
                    if pair {
                        ok &= b;
                    }
                }
            }
            ok
        };
        Some(known && ordered && nontrivial)
    };
    use FormulaKind::*;
    match f.kind() {
        Var(v) => {
            let i = frame.signature().vars().get_index_of(v).expect("known var");
            Some(frame.valuation(i).contains(w))
        }
        Not(a) => holds(m, w, a).map(|b| !b),
        Implies(a, b) => Some(!holds(m, w, a)? | holds(m, w, b)?),
        Nec(a) => all(&|u| holds(m, u, a)),
        Knows(ag, a) => {
            let ai = agent(frame, ag);
            all(&|u| if same_block(ai, u) { holds(m, u, a) } else { Some(true) })
        }
        Happy(ag, a) => emotion(Emotion::H, ag, None, a),
        Sad(ag, a) => emotion(Emotion::S, ag, None, a),
        HappyDeg(ag, d, a) => emotion(Emotion::H, ag, Some(*d), a),
        SadDeg(ag, d, a) => emotion(Emotion::S, ag, Some(*d), a),
    }
}

pub fn naive_extension(m: &Naive<'_>, f: &Formula) -> Option<WorldSet> {
    let n = m.frame().world_count();
    let mut out = WorldSet::empty(n);
    for w in 0..n {
        if holds(m, w, f)? {
            out.insert(w);
        }
    }
    Some(out)
}

pub fn names(xs: &[&str]) -> Vec<Name> {
    xs.iter().map(|s| Name::new(s)).collect()
}

pub fn degree_free(vars: Vec<Name>, agents: Vec<Name>, depth: u32) -> BoxedStrategy<Formula> {
    formulas(vars, agents, depth, false)
}

pub fn formulas(vars: Vec<Name>, agents: Vec<Name>, depth: u32, degrees: bool) -> BoxedStrategy<Formula> {
    let leaf = prop::sample::select(vars).prop_map(Formula::var);
    leaf.prop_recursive(depth, 24, 2, move |inner| {
        let ag = prop::sample::select(agents.clone());
        let deg = prop::sample::select(vec![Decimal::ZERO, Decimal::new(5, 1), Decimal::ONE, Decimal::TWO]);
        let mut options = vec![
            inner.clone().prop_map(Formula::not).boxed(),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::implies(a, b)).boxed(),
            inner.clone().prop_map(Formula::nec).boxed(),
            (ag.clone(), inner.clone()).prop_map(|(a, f)| Formula::knows(a, f)).boxed(),
        ];
        if degrees {
            options.push(
                (ag.clone(), deg.clone(), inner.clone())
                    .prop_map(|(a, d, f)| Formula::happy_deg(a, d, f).unwrap())
                    .boxed(),
            );
            options.push(
                (ag, deg, inner).prop_map(|(a, d, f)| Formula::sad_deg(a, d, f).unwrap()).boxed(),
            );
        } else {
            options.push((ag.clone(), inner.clone()).prop_map(|(a, f)| Formula::happy(a, f)).boxed());
            options.push((ag, inner).prop_map(|(a, f)| Formula::sad(a, f)).boxed());
        }
        prop::strategy::Union::new(options)
    })
    .boxed()
}

/// Any preference model with 1 to `max_worlds` worlds over the signature.
pub fn pref_models(max_worlds: usize, agents: Vec<Name>, vars: Vec<Name>) -> BoxedStrategy<EpistemicModel> {
    (1..=max_worlds)
        .prop_flat_map(move |n| {
            let space = std::sync::Arc::new(Space::new(n, &agents, &vars));
            (0..space.len()).prop_map(move |i| space.build(&space.decode(i)))
        })
        .boxed()
}

/// Utility model on the frame of a random preference model; utilities are
/// multiples of 1/2 in [0, 3].
pub fn util_models(max_worlds: usize, agents: Vec<Name>, vars: Vec<Name>) -> BoxedStrategy<UtilityModel> {
    let k = agents.len();
    pref_models(max_worlds, agents, vars)
        .prop_flat_map(move |m| {
            let n = m.signature().world_count();
            prop::collection::vec(prop::collection::vec(0i64..=6, n), k).prop_map(move |u| {
                let utility = u
                    .into_iter()
                    .map(|row| row.into_iter().map(|x| Decimal::new(x * 5, 1)).collect())
                    .collect();
                UtilityModel::from_parts(m.frame().clone(), utility)
            })
        })
        .boxed()
}

pub fn good_models(max_worlds: usize, agents: Vec<Name>, vars: Vec<Name>) -> BoxedStrategy<GoodnessModel> {
    let k = agents.len();
    pref_models(max_worlds, agents, vars)
        .prop_flat_map(move |m| {
            let n = m.signature().world_count();
            prop::collection::vec(1u64..(1u64 << n), k).prop_map(move |masks| {
                let good = masks
                    .into_iter()
                    .map(|mask| WorldSet::from_indices(n, (0..n).filter(|&w| mask >> w & 1 == 1)))
                    .collect();
                GoodnessModel::from_parts(m.frame().clone(), good)
            })
        })
        .boxed()
}
