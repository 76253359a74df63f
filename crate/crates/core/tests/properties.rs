mod common;

use common::*;
use emologic::axioms::{instantiate, AxiomSchema};
use emologic::formula::{tau, FormulaKind};
use emologic::model::validate;
use emologic::par::Exec;
use emologic::semantics::{duality_sweep, extension, valid_in_model};
use emologic::syntax::{load_model, parse_formula, print_formula, serialize_model};
use emologic::{AnyModel, Formula, Fragment};
use proptest::prelude::*;
use rust_decimal::Decimal;

fn sig() -> (Vec<emologic::Name>, Vec<emologic::Name>) {
    (names(&["p", "q"]), names(&["a", "b"]))
}

fn small() -> (Vec<emologic::Name>, Vec<emologic::Name>) {
    (names(&["p"]), names(&["a"]))
}

/// Replaces every bare emotion by the degree-`d` one.
fn with_degree(f: &Formula, d: Decimal) -> Formula {
    use FormulaKind::*;
    match f.kind() {
        Var(_) => f.clone(),
        Not(a) => Formula::not(with_degree(a, d)),
        Implies(a, b) => Formula::implies(with_degree(a, d), with_degree(b, d)),
        Nec(a) => Formula::nec(with_degree(a, d)),
        Knows(ag, a) => Formula::knows(ag.clone(), with_degree(a, d)),
        Happy(ag, a) | HappyDeg(ag, _, a) => Formula::happy_deg(ag.clone(), d, with_degree(a, d)).unwrap(),
        Sad(ag, a) | SadDeg(ag, _, a) => Formula::sad_deg(ag.clone(), d, with_degree(a, d)).unwrap(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn print_then_parse_is_identity(f in formulas(sig().0, sig().1, 5, true)) {
        let text = print_formula(&f);
        prop_assert_eq!(parse_formula(&text).unwrap(), f.clone());
        let json = serde_json::to_string(&f).unwrap();
        prop_assert_eq!(serde_json::from_str::<Formula>(&json).unwrap(), f);
    }

    #[test]
    fn tau_is_an_involution(f in degree_free(sig().0, sig().1, 5)) {
        let t = tau(&f).unwrap();
        prop_assert_eq!(t.depth(), f.depth());
        prop_assert_eq!(tau(&t).unwrap(), f.clone());
        prop_assert_eq!(t.in_fragment(Fragment::NoSad), f.in_fragment(Fragment::NoHappy));
    }

    #[test]
    fn evaluator_matches_definition_on_preferences(
        m in pref_models(3, sig().1, sig().0),
        f in degree_free(sig().0, sig().1, 4),
    ) {
        prop_assert!(validate(&m).ok);
        let naive = naive_extension(&Naive::Pref(&m), &f).unwrap();
        prop_assert_eq!(extension(&m, &f).unwrap(), naive);
    }

    #[test]
    fn evaluator_matches_definition_on_utilities(
        m in util_models(3, small().1, small().0),
        f in formulas(small().0, small().1, 4, true),
    ) {
        let naive = naive_extension(&Naive::Util(&m), &f).unwrap();
        prop_assert_eq!(extension(&m, &f).unwrap(), naive);
    }

    #[test]
    fn evaluator_matches_definition_on_goodness(
        m in good_models(3, sig().1, sig().0),
        f in degree_free(sig().0, sig().1, 4),
    ) {
        prop_assert!(validate(&m).ok);
        let naive = naive_extension(&Naive::Good(&m), &f).unwrap();
        prop_assert_eq!(extension(&m, &f).unwrap(), naive);
    }

    #[test]
    fn converse_and_tau_preserve_truth(
        m in pref_models(3, sig().1, sig().0),
        f in degree_free(sig().0, sig().1, 5),
    ) {
        let c = m.converse();
        prop_assert_eq!(extension(&m, &f).unwrap(), extension(&c, &tau(&f).unwrap()).unwrap());
        prop_assert_eq!(c.converse(), m);
    }

    #[test]
    fn equivalent_formulas_are_interchangeable(
        m in pref_models(3, small().1, small().0),
        phi in degree_free(small().0, small().1, 3),
    ) {
        // Same extension, different syntax.
        let psi = Formula::not(Formula::not(phi.clone()));
        let emotions: [fn(Formula) -> Formula; 2] = [|f| Formula::happy("a", f), |f| Formula::sad("a", f)];
        for e in emotions {
            prop_assert_eq!(extension(&m, &e(phi.clone())).unwrap(), extension(&m, &e(psi.clone())).unwrap());
        }
    }

    #[test]
    fn higher_degrees_are_harder(
        m in util_models(3, small().1, small().0),
        phi in formulas(small().0, small().1, 2, true),
    ) {
        let ds = [0i64, 5, 10, 20, 30].map(|x| Decimal::new(x, 1));
        let emotions: [fn(Decimal, Formula) -> Formula; 2] = [
            |d, f| Formula::happy_deg("a", d, f).unwrap(),
            |d, f| Formula::sad_deg("a", d, f).unwrap(),
        ];
        for mk in emotions {
            let exts: Vec<_> = ds
                .iter()
                .map(|&d| extension(&m, &mk(d, phi.clone())).unwrap())
                .collect();
            for w in exts.windows(2) {
                prop_assert!(w[1].is_subset(&w[0]));
            }
        }
    }

    #[test]
    fn induced_preferences_agree_with_half_unit_gaps(
        m in util_models(3, small().1, small().0),
        f in degree_free(small().0, small().1, 3),
    ) {
        // Utilities are multiples of 1/2, so a strict gap is a gap of 1/2.
        let p = m.preferences_from_utilities();
        prop_assert_eq!(
            extension(&p, &f).unwrap(),
            extension(&m, &with_degree(&f, Decimal::new(5, 1))).unwrap()
        );
    }

    #[test]
    fn axiom_instances_and_their_necessitations_are_valid(
        m in pref_models(3, sig().1, sig().0),
        schema in prop::sample::select(AxiomSchema::all()),
        phi in degree_free(sig().0, sig().1, 2),
        psi in degree_free(sig().0, sig().1, 2),
        agent in prop::sample::select(sig().1),
    ) {
        let inst = instantiate(schema, &agent, &phi, (schema.arity() == 2).then_some(&psi)).unwrap();
        prop_assert!(valid_in_model(&m, &inst).unwrap(), "{} refuted", inst);
        prop_assert!(valid_in_model(&m, &Formula::nec(inst.clone())).unwrap());
        prop_assert!(valid_in_model(&m, &Formula::knows(agent, inst)).unwrap());
    }

    #[test]
    fn models_survive_serialization(
        p in pref_models(3, sig().1, sig().0),
        u in util_models(3, small().1, small().0),
        g in good_models(3, sig().1, sig().0),
    ) {
        for m in [AnyModel::Preference(p), AnyModel::Utility(u), AnyModel::Goodness(g)] {
            let text = serialize_model(&m);
            prop_assert_eq!(load_model(&text).unwrap(), m);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn sequential_and_parallel_sweeps_agree(m in pref_models(3, small().1, small().0)) {
        let a = duality_sweep(&m, 2, Exec::Sequential).unwrap();
        let b = duality_sweep(&m, 2, Exec::Parallel).unwrap();
        prop_assert!(a.ok());
        prop_assert_eq!(a, b);
    }
}
