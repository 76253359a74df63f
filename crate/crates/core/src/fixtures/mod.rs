//! Built-in example models.

use crate::model::{AnyModel, EpistemicModel, GoodnessModel, UtilityModel};
use crate::syntax::load_model;

pub struct Fixture {
    pub name: &'static str,
    pub note: &'static str,
    pub text: &'static str,
}

pub const FIXTURES: &[Fixture] = &[
    Fixture {
        name: "gift",
        note: "s may send p a gift, which may get lost; p received it at w and u",
        text: include_str!("gift.json"),
    },
    Fixture {
        name: "battle",
        note: "Battle of cuisines as a preference model: Iranian or Russian restaurant, \
               world (x,y) is s at x and p at y; preferences induced by the utilities",
        text: include_str!("battle.json"),
    },
    Fixture {
        name: "battle-util",
        note: "Battle of cuisines with the payoff table as utilities: 3 for dining together at one's \
               favourite restaurant, 1 at the other, 0 apart",
        text: include_str!("battle-util.json"),
    },
    Fixture {
        name: "battle-good-broad",
        note: "Battle of cuisines, goodness semantics: both agents find every shared dinner good",
        text: include_str!("battle-good-broad.json"),
    },
    Fixture {
        name: "battle-good-strict",
        note: "Battle of cuisines, goodness semantics: only each agent's favourite shared dinner is good",
        text: include_str!("battle-good-strict.json"),
    },
    Fixture {
        name: "lottery",
        note: "Three-agent lottery: u (s wins), v (o wins), w (p wins); \
               each agent only learns whether they won",
        text: include_str!("lottery.json"),
    },
    Fixture {
        name: "undef-left",
        note: "Three-world model where S[a] p holds at w1; agrees with undef-right on every \
               formula without S",
        text: include_str!("undef-left.json"),
    },
    Fixture {
        name: "undef-right",
        note: "undef-left with the preference removed; S[a] p fails at w1",
        text: include_str!("undef-right.json"),
    },
    Fixture {
        name: "gift-good",
        note: "Gift scenario under goodness semantics, only w is good for both agents",
        text: include_str!("gift-good.json"),
    },
];

/// Names of the preference-kind fixtures.
pub const PREFERENCE_FIXTURES: &[&str] = &["gift", "battle", "lottery", "undef-left", "undef-right"];

pub fn names() -> impl Iterator<Item = &'static str> {
    FIXTURES.iter().map(|f| f.name)
}

pub fn fixture(name: &str) -> Option<AnyModel> {
    let f = FIXTURES.iter().find(|f| f.name == name)?;
    Some(load_model(f.text).unwrap_or_else(|e| panic!("built-in fixture `{name}` is broken: {e}")))
}

pub fn preference(name: &str) -> Option<EpistemicModel> {
    match fixture(name)? {
        AnyModel::Preference(m) => Some(m),
        _ => None,
    }
}

pub fn utility(name: &str) -> Option<UtilityModel> {
    match fixture(name)? {
        AnyModel::Utility(m) => Some(m),
        _ => None,
    }
}

pub fn goodness(name: &str) -> Option<GoodnessModel> {
    match fixture(name)? {
        AnyModel::Goodness(m) => Some(m),
        _ => None,
    }
}
