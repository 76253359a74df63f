use serde::{Deserialize, Serialize};

use super::{EvalError, Evaluator};
use crate::formula::{enumerate, Formula, Fragment, Tau};
use crate::model::EpistemicModel;
use crate::par::{map_chunks, Exec};

/// Outcome of checking `f` at `w` against `tau(f)` at `w` in the converse.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualityReport {
    pub max_depth: usize,
    pub formulas_checked: usize,
    pub worlds: usize,
    /// Formulas whose extension differs from that of their translation in
    /// the converse model.
    pub violations: Vec<Formula>,
    /// Formulas with `tau(tau(f)) != f`.
    pub involution_failures: Vec<Formula>,
}

impl DualityReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty() && self.involution_failures.is_empty()
    }
}

#[derive(Default)]
struct Partial {
    violations: Vec<Formula>,
    involution: Vec<Formula>,
}

/// Checks the duality between `m` and its converse on every formula over
/// the model's signature up to `max_depth`.
pub fn duality_sweep(m: &EpistemicModel, max_depth: usize, exec: Exec) -> Result<DualityReport, EvalError> {
    let sig = m.signature();
    let vars: Vec<_> = sig.vars().iter().cloned().collect();
    let agents: Vec<_> = sig.agents().iter().cloned().collect();
    let formulas = enumerate(&vars, &agents, max_depth, Fragment::Full);
    let conv = m.converse();

    // Everything below the top layer is translated and evaluated once, then
    // shared read-only by the chunk workers.
    let mut tau = Tau::new();
    let mut ev = Evaluator::new(m);
    let mut evc = Evaluator::new(&conv);
    let mut lower_tau = Vec::with_capacity(formulas.materialized().len());
    for f in formulas.materialized() {
        let t = tau.remember(f).expect("enumerated formulas are degree-free");
        tau.remember(&t).expect("degree-free");
        lower_tau.push(t);
    }
    ev.prime(formulas.materialized())?;
    evc.prime(&lower_tau)?;
    let (shared, shared_c) = (ev.share(), evc.share());
    let tau = tau.share();

    let parts = map_chunks(formulas.len(), exec, |range| -> Result<Partial, EvalError> {
        let mut ev = Evaluator::with_shared(m, shared.clone());
        let mut evc = Evaluator::with_shared(&conv, shared_c.clone());
        let mut tau = Tau::with_shared(tau.clone());
        let mut part = Partial::default();
        for i in range {
            let f = formulas.get(i);
            let t = tau.apply(&f).expect("degree-free");
            if tau.apply(&t).expect("degree-free") != f {
                part.involution.push(f.clone());
            }
            if ev.extension(&f)? != evc.extension(&t)? {
                part.violations.push(f);
            }
        }
        Ok(part)
    });
    let mut report = DualityReport {
        max_depth,
        formulas_checked: formulas.len(),
        worlds: sig.world_count(),
        violations: Vec::new(),
        involution_failures: Vec::new(),
    };
    for p in parts {
        let p = p?;
        report.violations.extend(p.violations);
        report.involution_failures.extend(p.involution);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn gift_depth_two_has_no_violations() {
        let m = fixtures::preference("gift").unwrap();
        for exec in [Exec::Sequential, Exec::Parallel] {
            let r = duality_sweep(&m, 2, exec).unwrap();
            assert_eq!(r.formulas_checked, 181);
            assert!(r.ok(), "{r:?}");
        }
    }
}
