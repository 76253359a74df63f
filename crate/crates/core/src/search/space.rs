//! The space of small labelled preference models and its symmetry reduction.

use crate::model::{EpistemicModel, Frame, Partition, Relation, Signature, WorldSet};
use crate::Name;

/// Set partitions of `0..n` as restricted growth strings, in lexicographic
/// order.
pub fn partitions(n: usize) -> Vec<Vec<u8>> {
    fn go(n: usize, cur: &mut Vec<u8>, max: u8, out: &mut Vec<Vec<u8>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        let top = if cur.is_empty() { 0 } else { max + 1 };
        for b in 0..=top {
            cur.push(b);
            go(n, cur, max.max(b), out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        return vec![vec![]];
    }
    go(n, &mut Vec::with_capacity(n), 0, &mut out);
    out
}

/// Every strict partial order on `0..n`: subsets of the off-diagonal pairs
/// that are already transitively closed.
pub fn strict_orders(n: usize) -> Vec<Relation> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v)))
        .collect();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << pairs.len()) {
        let rel = Relation::from_pairs(
            n,
            pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &p)| p),
        );
        // A closed, loop-free relation is exactly a strict order; cyclic ones
        // close to something with a loop and therefore differ from their
        // closure.
        if rel.is_transitive() && rel.reflexive_worlds().is_empty() {
            out.push(rel);
        }
    }
    out
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(rest: &mut Vec<usize>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest.is_empty() {
            out.push(cur.clone());
            return;
        }
        for i in 0..rest.len() {
            let x = rest.remove(i);
            cur.push(x);
            go(rest, cur, out);
            cur.pop();
            rest.insert(i, x);
        }
    }
    let mut out = Vec::new();
    go(&mut (0..n).collect(), &mut Vec::new(), &mut out);
    out
}

/// A labelled model over worlds `0..n`, by component indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Labelled {
    pub partitions: Vec<usize>,
    pub orders: Vec<usize>,
    pub valuations: Vec<u64>,
}

/// All labelled models with `n` worlds over a fixed signature.
pub struct Space {
    pub n: usize,
    agents: Vec<Name>,
    vars: Vec<Name>,
    parts: Vec<Vec<u8>>,
    orders: Vec<Relation>,
    perms: Vec<Vec<usize>>,
}

impl Space {
    pub fn new(n: usize, agents: &[Name], vars: &[Name]) -> Space {
        Space {
            n,
            agents: agents.to_vec(),
            vars: vars.to_vec(),
            parts: partitions(n),
            orders: strict_orders(n),
            perms: permutations(n),
        }
    }

    /// Number of labelled models, saturating.
    pub fn len(&self) -> usize {
        let k = self.agents.len() as u32;
        let m = self.vars.len() as u32;
        let vals = 1usize.checked_shl(self.n as u32).unwrap_or(usize::MAX);
        self.parts
            .len()
            .checked_pow(k)
            .and_then(|x| x.checked_mul(self.orders.len().checked_pow(k)?))
            .and_then(|x| x.checked_mul(vals.checked_pow(m)?))
            .unwrap_or(usize::MAX)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Mixed-radix decoding; the last variable's valuation varies fastest.
    pub fn decode(&self, mut idx: usize) -> Labelled {
        let vals = 1usize << self.n;
        let mut valuations = vec![0; self.vars.len()];
        for v in valuations.iter_mut().rev() {
            *v = (idx % vals) as u64;
            idx /= vals;
        }
        let mut orders = vec![0; self.agents.len()];
        for o in orders.iter_mut().rev() {
            *o = idx % self.orders.len();
            idx /= self.orders.len();
        }
        let mut partitions = vec![0; self.agents.len()];
        for p in partitions.iter_mut().rev() {
            *p = idx % self.parts.len();
            idx /= self.parts.len();
        }
        Labelled {
            partitions,
            orders,
            valuations,
        }
    }

    /// Encoding of `l` after moving world `w` to `perm[w]`.
    fn encode(&self, l: &Labelled, perm: &[usize], out: &mut Vec<u8>) {
        let n = self.n;
        out.clear();
        let mut inv = vec![0; n];
        for (w, &p) in perm.iter().enumerate() {
            inv[p] = w;
        }
        for &pi in &l.partitions {
            let rgs = &self.parts[pi];
            let mut relabel = [u8::MAX; 64];
            let mut next = 0;
            for &w in &inv {
                let b = rgs[w] as usize;
                if relabel[b] == u8::MAX {
                    relabel[b] = next;
                    next += 1;
                }
                out.push(relabel[b]);
            }
        }
        for &oi in &l.orders {
            let rel = &self.orders[oi];
            for &u in &inv {
                for &v in &inv {
                    out.push(rel.contains(u, v) as u8);
                }
            }
        }
        for &val in &l.valuations {
            for &w in &inv {
                out.push((val >> w & 1) as u8);
            }
        }
    }

    /// Whether `l` is the least member of its isomorphism class.
    pub fn is_canonical(&self, l: &Labelled) -> bool {
        let mut own = Vec::new();
        let mut other = Vec::new();
        self.encode(l, &self.perms[0], &mut own);
        self.perms[1..].iter().all(|p| {
            self.encode(l, p, &mut other);
            own <= other
        })
    }

    /// The least encoding over all relabelings: equal iff isomorphic.
    pub fn canonical_key(&self, l: &Labelled) -> Vec<u8> {
        let mut best: Option<Vec<u8>> = None;
        let mut buf = Vec::new();
        for p in &self.perms {
            self.encode(l, p, &mut buf);
            if best.as_ref().is_none_or(|b| buf < *b) {
                best = Some(buf.clone());
            }
        }
        best.unwrap_or_default()
    }

    pub fn build(&self, l: &Labelled) -> EpistemicModel {
        let n = self.n;
        let worlds = (1..=n).map(|i| Name::from(format!("w{i}")));
        let sig = Signature::new(self.agents.iter().cloned(), self.vars.iter().cloned(), worlds);
        let indist = l
            .partitions
            .iter()
            .map(|&pi| {
                let rgs = &self.parts[pi];
                let blocks = rgs.iter().max().map_or(0, |&m| m as usize + 1);
                Partition::new(
                    (0..blocks)
                        .map(|b| WorldSet::from_indices(n, (0..n).filter(|&w| rgs[w] as usize == b)))
                        .collect(),
                )
            })
            .collect();
        let valuation = l
            .valuations
            .iter()
            .map(|&v| WorldSet::from_indices(n, (0..n).filter(|&w| v >> w & 1 == 1)))
            .collect();
        let pref = l.orders.iter().map(|&oi| self.orders[oi].clone()).collect();
        EpistemicModel::from_parts(Frame::new(sig, indist, valuation), pref)
    }

    /// Reads a model over this space's signature back into component form.
    pub fn labelled_of(&self, m: &EpistemicModel) -> Option<Labelled> {
        let n = self.n;
        let frame = m.frame();
        if frame.world_count() != n {
            return None;
        }
        let mut partitions = Vec::new();
        for a in 0..self.agents.len() {
            let mut rgs = vec![0u8; n];
            let mut next = 0u8;
            let mut seen = vec![None; n];
            for w in 0..n {
                let cell = frame.cell(a, w);
                let rep = cell.first()?;
                let label = *seen[rep].get_or_insert_with(|| {
                    next += 1;
                    next - 1
                });
                rgs[w] = label;
            }
            partitions.push(self.parts.iter().position(|p| *p == rgs)?);
        }
        let orders = m
            .prefs()
            .iter()
            .map(|r| self.orders.iter().position(|o| o == r))
            .collect::<Option<Vec<_>>>()?;
        let valuations = frame
            .valuations()
            .iter()
            .map(|s| s.iter().map(|w| 1u64 << w).sum())
            .collect();
        Some(Labelled {
            partitions,
            orders,
            valuations,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(partitions(4).len(), 15);
        assert_eq!(partitions(1), vec![vec![0]]);
        assert_eq!(strict_orders(2).len(), 3);
        assert_eq!(strict_orders(3).len(), 19);
        assert_eq!(strict_orders(4).len(), 219);
        assert_eq!(permutations(3).len(), 6);
    }

    #[test]
    fn decode_round_trips_through_models() {
        let space = Space::new(3, &[Name::new("a")], &[Name::new("p")]);
        assert_eq!(space.len(), 5 * 19 * 8);
        for idx in [0, 1, 57, space.len() - 1] {
            let l = space.decode(idx);
            assert_eq!(space.labelled_of(&space.build(&l)), Some(l));
        }
    }
}
