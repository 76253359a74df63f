use std::ops::Range;

use super::{Emotion, Formula, Fragment};
use crate::Name;

/// Unary constructors, in enumeration order.
#[derive(Debug, Clone)]
enum Unary {
    Nec,
    Knows(Name),
    Emotion(Emotion, Name),
}

impl Unary {
    fn apply(&self, f: Formula) -> Formula {
        match self {
            Unary::Nec => Formula::nec(f),
            Unary::Knows(a) => Formula::knows(a.clone(), f),
            Unary::Emotion(e, a) => Formula::emotion(*e, a.clone(), f),
        }
    }
}

/// Every degree-free formula of a fragment up to a depth, each exactly once.
///
/// Order: variables, then by depth; within a depth by constructor
/// (`!`, `->`, `N`, `K`, `H`, `S`, agents in declared order) and then by the
/// indices of the children. Implications at depth `d` are all pairs `(i, j)`
/// in lexicographic order with at least one child of depth exactly `d - 1`.
///
/// Everything below the top depth is kept in memory. The top layer, which
/// dominates the count, is built on demand by [`Enumeration::get`].
#[derive(Debug, Clone)]
pub struct Enumeration {
    lower: Vec<Formula>,
    /// Start of the formulas of depth exactly `max_depth - 1` in `lower`.
    q: usize,
    unary_after: Vec<Unary>,
    top_len: usize,
    max_depth: usize,
}

fn unary_after(agents: &[Name], frag: Fragment) -> Vec<Unary> {
    let mut out = vec![Unary::Nec];
    out.extend(agents.iter().cloned().map(Unary::Knows));
    for e in [Emotion::H, Emotion::S] {
        if frag.allows(e) {
            out.extend(agents.iter().cloned().map(|a| Unary::Emotion(e, a)));
        }
    }
    out
}

/// Size of the layer built from `p` formulas of which `p - q` are new.
fn layer_len(p: usize, q: usize, unary: usize) -> usize {
    let m = p - q;
    m * (unary + 1) + m * (q + p)
}

fn layer_get(lower: &[Formula], q: usize, after: &[Unary], mut r: usize) -> Formula {
    let p = lower.len();
    let m = p - q;
    if r < m {
        return Formula::not(lower[q + r].clone());
    }
    r -= m;
    if r < q * m {
        return Formula::implies(lower[r / m].clone(), lower[q + r % m].clone());
    }
    r -= q * m;
    if r < m * p {
        return Formula::implies(lower[q + r / p].clone(), lower[r % p].clone());
    }
    r -= m * p;
    after[r / m].apply(lower[q + r % m].clone())
}

impl Enumeration {
    pub fn new(vars: &[Name], agents: &[Name], max_depth: usize, frag: Fragment) -> Enumeration {
        let after = unary_after(agents, frag);
        let mut lower: Vec<Formula> = vars.iter().cloned().map(Formula::var).collect();
        if max_depth == 0 {
            return Enumeration {
                q: 0,
                top_len: 0,
                unary_after: after,
                lower,
                max_depth,
            };
        }
        let mut q = 0;
        for _ in 1..max_depth {
            let p = lower.len();
            let len = layer_len(p, q, after.len());
            let layer: Vec<Formula> = (0..len).map(|r| layer_get(&lower, q, &after, r)).collect();
            lower.extend(layer);
            q = p;
        }
        Enumeration {
            top_len: layer_len(lower.len(), q, after.len()),
            q,
            unary_after: after,
            lower,
            max_depth,
        }
    }

    pub fn len(&self) -> usize {
        self.lower.len() + self.top_len
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn max_depth(&self) -> usize {
        self.max_depth
    }

    /// Formulas of depth below the maximum (all of them when the maximum is 0).
    pub fn materialized(&self) -> &[Formula] {
        &self.lower
    }

    pub fn get(&self, idx: usize) -> Formula {
        if idx < self.lower.len() {
            return self.lower[idx].clone();
        }
        let r = idx - self.lower.len();
        assert!(r < self.top_len, "formula index {idx} out of range {}", self.len());
        layer_get(&self.lower, self.q, &self.unary_after, r)
    }

    pub fn iter(&self) -> impl Iterator<Item = Formula> + '_ {
        self.range(0..self.len())
    }

    pub fn range(&self, r: Range<usize>) -> impl Iterator<Item = Formula> + '_ {
        r.map(move |i| self.get(i))
    }
}

/// All formulas of `frag` over the signature with depth at most `max_depth`.
pub fn enumerate(vars: &[Name], agents: &[Name], max_depth: usize, frag: Fragment) -> Enumeration {
    Enumeration::new(vars, agents, max_depth, frag)
}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;

    use super::*;

    fn sig(vars: &[&str], agents: &[&str]) -> (Vec<Name>, Vec<Name>) {
        (
            vars.iter().map(|v| Name::new(v)).collect(),
            agents.iter().map(|a| Name::new(a)).collect(),
        )
    }

    #[test]
    fn depth_zero_is_the_variables() {
        let (v, a) = sig(&["p"], &["a"]);
        let e = enumerate(&v, &a, 0, Fragment::Full);
        assert_eq!(e.iter().collect::<Vec<_>>(), vec![Formula::var("p")]);
    }

    #[test]
    fn depth_one_full_lists_every_production() {
        let (v, a) = sig(&["p"], &["a"]);
        let got: Vec<String> = enumerate(&v, &a, 1, Fragment::Full)
            .iter()
            .map(|f| f.to_string())
            .collect();
        assert_eq!(
            got,
            ["p", "!p", "p -> p", "N p", "K[a] p", "H[a] p", "S[a] p"]
        );
        assert_eq!(enumerate(&v, &a, 1, Fragment::NoSad).len(), 6);
    }

    /// Brute force: close the previous level under every constructor and
    /// keep what has the right depth.
    fn brute(vars: &[Name], agents: &[Name], depth: usize, frag: Fragment) -> HashSet<Formula> {
        let mut all: HashSet<Formula> = vars.iter().cloned().map(Formula::var).collect();
        for _ in 0..depth {
            let prev: Vec<Formula> = all.iter().cloned().collect();
            for f in &prev {
                all.insert(Formula::not(f.clone()));
                all.insert(Formula::nec(f.clone()));
                for a in agents {
                    all.insert(Formula::knows(a.clone(), f.clone()));
                    for e in [Emotion::H, Emotion::S] {
                        if frag.allows(e) {
                            all.insert(Formula::emotion(e, a.clone(), f.clone()));
                        }
                    }
                }
                for g in &prev {
                    all.insert(Formula::implies(f.clone(), g.clone()));
                }
            }
        }
        all
    }

    #[test]
    fn matches_brute_force_closure() {
        let (v, a) = sig(&["p", "q"], &["a", "b"]);
        for frag in [Fragment::Full, Fragment::NoSad, Fragment::NoEmotion] {
            for depth in 0..=2 {
                let e = enumerate(&v, &a, depth, frag);
                let got: Vec<Formula> = e.iter().collect();
                let set: HashSet<Formula> = got.iter().cloned().collect();
                assert_eq!(set.len(), got.len(), "duplicates at depth {depth}");
                assert_eq!(set, brute(&v, &a, depth, frag));
                assert!(got.iter().all(|f| f.in_fragment(frag) && f.depth() <= depth));
            }
        }
    }

    #[test]
    fn depth_is_nondecreasing() {
        let (v, a) = sig(&["p"], &["a"]);
        let e = enumerate(&v, &a, 3, Fragment::Full);
        let depths: Vec<usize> = e.iter().map(|f| f.depth()).collect();
        assert!(depths.windows(2).all(|w| w[0] <= w[1]));
        assert_eq!(e.len(), 7651);
    }
}
