//! Hand-checkable instances I1 and I2 plus the additive uniform-string
//! instance. Expected values come from direct set-union arithmetic in this
//! file, not from the library's coverage implementation.

use std::collections::BTreeSet;
use std::path::PathBuf;

use greedy_cert::bounds::{compute_alphas, compute_b, compute_b_from_betas, compute_r, compute_s, TopGainPolicy};
use greedy_cert::instances::{load_instance, Instance};
use greedy_cert::oracle::DEFAULT_CAP;
use greedy_cert::{bound_report, brute_force_opt, run_greedy, verify_instance, ActionSeq};

const A1: usize = 0;
const A2: usize = 1;
const A3: usize = 2;

fn fixture(name: &str) -> Instance {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name);
    load_instance(&path).unwrap()
}

/// Union weight of the chosen sets, computed independently.
fn union_weight(weights: &[f64], sets: &[&[usize]], chosen: &[usize]) -> f64 {
    let covered: BTreeSet<usize> = chosen.iter().flat_map(|&i| sets[i].iter().copied()).collect();
    covered.iter().map(|&u| weights[u]).sum()
}

const I1_WEIGHTS: [f64; 4] = [1.0, 1.0, 1.0, 1.0];
const I1_SETS: [&[usize]; 3] = [&[0, 1], &[1, 2], &[3]];
const I2_WEIGHTS: [f64; 3] = [4.0, 3.0, 1.0];
const I2_SETS: [&[usize]; 3] = [&[0], &[0, 1], &[2]];

#[test]
fn fixture_values_match_direct_union() {
    let i1 = fixture("i1.json");
    let i2 = fixture("i2.json");
    for chosen in [vec![], vec![A1], vec![A2], vec![A3], vec![A1, A2], vec![A1, A3], vec![A2, A3]] {
        let s = ActionSeq::new(chosen.clone());
        assert_eq!(i1.valuation.evaluate(&s), union_weight(&I1_WEIGHTS, &I1_SETS, &chosen));
        assert_eq!(i2.valuation.evaluate(&s), union_weight(&I2_WEIGHTS, &I2_SETS, &chosen));
    }
}

#[test]
fn i1_core_model() {
    let i1 = fixture("i1.json");
    assert_eq!(i1.matroid.feasible_actions(&[A1].into()).unwrap(), vec![A2, A3]);
    assert_eq!(i1.valuation.rho(&i1.matroid, &[A1].into(), A2).unwrap(), 1.0);
    assert_eq!(i1.valuation.evaluate(&[A1, A2].into()), 3.0);
    assert_eq!(i1.valuation.evaluate(&[A2, A1].into()), 3.0);
    assert_eq!(i1.valuation.evaluate(&ActionSeq::empty()), 0.0);
}

#[test]
fn i2_core_model() {
    let i2 = fixture("i2.json");
    assert_eq!(i2.valuation.rho(&i2.matroid, &[A2].into(), A1).unwrap(), 0.0);
    assert_eq!(i2.valuation.rho(&i2.matroid, &ActionSeq::empty(), A2).unwrap(), 7.0);
}

#[test]
fn i1_greedy_and_bounds() {
    let i1 = fixture("i1.json");
    let trace = run_greedy(&i1.valuation, &i1.matroid, 2).unwrap();
    // Step 1: A1 and A2 tie at 2. Step 2: A2 and A3 tie at 1.
    assert_eq!(trace.chosen, ActionSeq::from([A1, A2]));
    assert_eq!(trace.increments, vec![2.0, 1.0]);
    assert_eq!(trace.value(), 3.0);

    let alphas = compute_alphas(&trace);
    assert_eq!(alphas.alphas, vec![1.0, 0.5]);
    let s = compute_s(&trace, &alphas);
    assert_eq!(s, 4.0);
    let top = compute_r(&trace, TopGainPolicy::Distinct).unwrap();
    assert_eq!(top.r, 4.0);
    assert_eq!(top.actions, vec![A1, A2]);
    assert_eq!(compute_b(s, top.r).unwrap(), 4.0);
    assert_eq!(compute_b_from_betas(&trace, &alphas, s, &top), Some(4.0));

    let report = bound_report(&trace, &i1.matroid).unwrap();
    assert_eq!(report.b, 4.0);
    assert!((report.bound_new - 0.75).abs() < 1e-12);
    assert!((report.bound_cc - 0.75).abs() < 1e-12);
}

#[test]
fn i2_greedy_and_bounds() {
    let i2 = fixture("i2.json");
    let trace = run_greedy(&i2.valuation, &i2.matroid, 2).unwrap();
    assert_eq!(trace.chosen, ActionSeq::from([A2, A3]));
    assert_eq!(trace.increments, vec![7.0, 1.0]);

    let alphas = compute_alphas(&trace);
    assert_eq!(alphas.alphas, vec![1.0, 0.0]);
    let s = compute_s(&trace, &alphas);
    assert_eq!(s, f64::INFINITY);
    let top = compute_r(&trace, TopGainPolicy::Distinct).unwrap();
    assert_eq!(top.r, 11.0);
    assert_eq!(top.actions, vec![A2, A1]);
    assert_eq!(compute_b(s, top.r).unwrap(), 11.0);
    // R < S: β_i = ρ_{g_i}(G_{i-1}) / f(r_i) = 7/7, 1/4.
    assert_eq!(compute_b_from_betas(&trace, &alphas, s, &top), Some(11.0));

    let report = bound_report(&trace, &i2.matroid).unwrap();
    assert!((report.bound_new - 8.0 / 11.0).abs() < 1e-12);
    assert!((report.bound_cc - 0.5).abs() < 1e-12);
}

#[test]
fn oracle_optima() {
    let i1 = fixture("i1.json");
    let opt = brute_force_opt(&i1.valuation, &i1.matroid, 2, DEFAULT_CAP).unwrap();
    assert_eq!(opt.best_value, 3.0);
    assert_eq!(
        opt.best_strings,
        vec![ActionSeq::from([A1, A2]), ActionSeq::from([A1, A3]), ActionSeq::from([A2, A3])]
    );

    let i2 = fixture("i2.json");
    let opt = brute_force_opt(&i2.valuation, &i2.matroid, 2, DEFAULT_CAP).unwrap();
    assert_eq!(opt.best_value, 8.0);
    assert_eq!(opt.best_strings, vec![ActionSeq::from([A2, A3])]);

    // Independent enumeration over pairs.
    let pairs = [(A1, A2), (A1, A3), (A2, A3)];
    let best = pairs.iter().map(|&(a, b)| union_weight(&I2_WEIGHTS, &I2_SETS, &[a, b])).fold(0.0, f64::max);
    assert_eq!(best, 8.0);
    let scores: Vec<f64> = pairs.iter().map(|&(a, b)| union_weight(&I2_WEIGHTS, &I2_SETS, &[a, b])).collect();
    assert_eq!(scores, vec![7.0, 5.0, 8.0]);
}

#[test]
fn verify_chain_on_fixtures() {
    let i1 = fixture("i1.json");
    let v = verify_instance(&i1.valuation, &i1.matroid, 2, DEFAULT_CAP).unwrap();
    assert!(v.passed(), "{v}");
    assert_eq!(v.ratio, 1.0);

    let i2 = fixture("i2.json");
    let v = verify_instance(&i2.valuation, &i2.matroid, 2, DEFAULT_CAP).unwrap();
    assert!(v.passed(), "{v}");
    assert_eq!(v.ratio, 1.0);
    assert!(v.report.bound_new > v.report.bound_cc);
}

#[test]
fn additive_uniform_string() {
    let inst = fixture("additive.json");
    let trace = run_greedy(&inst.valuation, &inst.matroid, 3).unwrap();
    assert_eq!(trace.chosen, ActionSeq::from([0, 0, 0]));
    assert_eq!(trace.value(), 15.0);
    let alphas = compute_alphas(&trace);
    assert_eq!(alphas.alphas, vec![1.0; 3]);
    assert_eq!(compute_s(&trace, &alphas), 15.0);

    let report = bound_report(&trace, &inst.matroid).unwrap();
    assert_eq!(report.b, 15.0);
    assert_eq!(report.bound_new, 1.0);
    let v = verify_instance(&inst.valuation, &inst.matroid, 3, DEFAULT_CAP).unwrap();
    assert!(v.passed(), "{v}");
}

#[test]
fn explicit_table_instance_is_certified() {
    let inst = fixture("explicit_table.json");
    let v = verify_instance(&inst.valuation, &inst.matroid, 2, DEFAULT_CAP).unwrap();
    assert!(v.passed(), "{v}");
    // Greedy takes 3 (gain 6) then 0 (gain 3) for 9, which is optimal.
    assert_eq!(v.trace.chosen, ActionSeq::from([3, 0]));
    assert_eq!(v.oracle.best_value, 9.0);
    assert_eq!(v.report.bound_classical, 0.5);
}
