use indexmap::IndexMap;
use thiserror::Error;

use super::WorldSet;
use crate::Name;

/// A binary relation on `0..n`, stored as successor sets.
///
/// For a preference relation, `v ∈ above(u)` means `u ≺ v`: world `v` is
/// strictly preferred to world `u`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Relation {
    above: Vec<WorldSet>,
}

/// The transitive closure of the supplied edges relates some world to itself.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("preference of agent `{agent}` is cyclic: world `{world}` ends up below itself")]
pub struct CycleError {
    pub agent: Name,
    pub world: Name,
}

impl Relation {
    pub fn empty(n: usize) -> Self {
        Relation {
            above: vec![WorldSet::empty(n); n],
        }
    }

    pub fn from_pairs<I: IntoIterator<Item = (usize, usize)>>(n: usize, pairs: I) -> Self {
        let mut r = Self::empty(n);
        for (u, v) in pairs {
            r.insert(u, v);
        }
        r
    }

    pub fn universe(&self) -> usize {
        self.above.len()
    }

    pub fn insert(&mut self, u: usize, v: usize) {
        self.above[u].insert(v);
    }

    pub fn contains(&self, u: usize, v: usize) -> bool {
        self.above.get(u).is_some_and(|s| s.contains(v))
    }

    /// Worlds strictly above `u`.
    pub fn above(&self, u: usize) -> &WorldSet {
        &self.above[u]
    }

    pub fn is_empty(&self) -> bool {
        self.above.iter().all(WorldSet::is_empty)
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.above
            .iter()
            .enumerate()
            .flat_map(|(u, vs)| vs.iter().map(move |v| (u, v)))
    }

    pub fn pair_count(&self) -> usize {
        self.above.iter().map(WorldSet::count).sum()
    }

    pub fn converse(&self) -> Relation {
        let n = self.universe();
        Relation::from_pairs(n, self.pairs().map(|(u, v)| (v, u)))
    }

    /// Least transitive superset (Warshall's algorithm over bit rows).
    pub fn transitive_closure(&self) -> Relation {
        let mut rows = self.above.clone();
        let n = rows.len();
        for k in 0..n {
            let via = rows[k].clone();
            for row in rows.iter_mut() {
                if row.contains(k) {
                    row.union_with(&via);
                }
            }
        }
        Relation { above: rows }
    }

    pub fn is_transitive(&self) -> bool {
        *self == self.transitive_closure()
    }

    pub fn reflexive_worlds(&self) -> Vec<usize> {
        (0..self.universe()).filter(|&w| self.contains(w, w)).collect()
    }

    /// Closes the relation, rejecting it when the closure is not irreflexive.
    ///
    /// On failure returns the first world (by index) that ends up below itself.
    pub fn close_strict(&self) -> Result<Relation, usize> {
        let closed = self.transitive_closure();
        match closed.reflexive_worlds().first() {
            Some(&w) => Err(w),
            None => Ok(closed),
        }
    }

    /// Covering pairs of a strict partial order (its Hasse diagram).
    ///
    /// Only meaningful for transitive, irreflexive relations; for anything
    /// else the full pair list is returned so that no information is lost.
    pub fn generating_pairs(&self) -> Vec<(usize, usize)> {
        if !self.reflexive_worlds().is_empty() || !self.is_transitive() {
            return self.pairs().collect();
        }
        self.pairs()
            .filter(|&(u, v)| {
                !self.above[u]
                    .iter()
                    .any(|m| m != v && self.contains(m, v))
            })
            .collect()
    }

    pub(crate) fn permuted(&self, perm: &[usize]) -> Relation {
        let n = self.universe();
        Relation::from_pairs(n, self.pairs().map(|(u, v)| (perm[u], perm[v])))
    }
}

/// Completes per-agent generating edges to transitively closed preference
/// relations, working on world names.
///
/// Every world named in `edges` must appear in `worlds`; unknown names are a
/// caller bug and panic.
pub fn close_preferences(
    worlds: &[Name],
    edges: &IndexMap<Name, Vec<(Name, Name)>>,
) -> Result<IndexMap<Name, Vec<(Name, Name)>>, CycleError> {
    let index = |w: &Name| {
        worlds
            .iter()
            .position(|x| x == w)
            .unwrap_or_else(|| panic!("unknown world `{w}` in preference edges"))
    };
    let mut out = IndexMap::new();
    for (agent, pairs) in edges {
        let rel = Relation::from_pairs(worlds.len(), pairs.iter().map(|(u, v)| (index(u), index(v))));
        let closed = rel.close_strict().map_err(|w| CycleError {
            agent: agent.clone(),
            world: worlds[w].clone(),
        })?;
        out.insert(
            agent.clone(),
            closed
                .pairs()
                .map(|(u, v)| (worlds[u].clone(), worlds[v].clone()))
                .collect(),
        );
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(ws: &[&str]) -> Vec<Name> {
        ws.iter().map(|w| Name::new(w)).collect()
    }

    fn edges(agent: &str, es: &[(&str, &str)]) -> IndexMap<Name, Vec<(Name, Name)>> {
        let mut m = IndexMap::new();
        m.insert(
            Name::new(agent),
            es.iter().map(|(u, v)| (Name::new(u), Name::new(v))).collect(),
        );
        m
    }

    fn pair_set(m: &IndexMap<Name, Vec<(Name, Name)>>, agent: &str) -> Vec<(String, String)> {
        let mut v: Vec<_> = m[agent]
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect();
        v.sort();
        v
    }

    #[test]
    fn closure_adds_transitive_pair() {
        let ws = names(&["v", "t", "w"]);
        let closed = close_preferences(&ws, &edges("s", &[("v", "t"), ("t", "w")])).unwrap();
        assert_eq!(
            pair_set(&closed, "s"),
            vec![
                ("t".into(), "w".into()),
                ("v".into(), "t".into()),
                ("v".into(), "w".into())
            ]
        );
    }

    #[test]
    fn empty_relation_closes_to_itself() {
        let ws = names(&["a", "b"]);
        let closed = close_preferences(&ws, &edges("s", &[])).unwrap();
        assert!(closed["s"].is_empty());
    }

    #[test]
    fn two_cycle_is_rejected() {
        let ws = names(&["a", "b"]);
        let err = close_preferences(&ws, &edges("s", &[("a", "b"), ("b", "a")])).unwrap_err();
        assert_eq!(err.world.as_str(), "a");
        assert_eq!(err.agent.as_str(), "s");
    }

    #[test]
    fn hasse_pairs_drop_implied_edges() {
        let r = Relation::from_pairs(3, [(0, 1), (1, 2)]).transitive_closure();
        assert_eq!(r.pair_count(), 3);
        assert_eq!(r.generating_pairs(), vec![(0, 1), (1, 2)]);
        let cyclic = Relation::from_pairs(2, [(0, 1), (1, 0)]);
        assert_eq!(cyclic.generating_pairs().len(), 2);
    }
}
