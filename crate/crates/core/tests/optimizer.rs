use frl_core::eigenfunction::{root_certificate, EigenPlusFunction, DEFAULT_GRID_STEP};
use frl_core::optimizer::{greedy_search, objective, write_log, Objective, SearchConfig, PROVEN_LOWER_BOUND};

fn quick() -> SearchConfig {
    SearchConfig { min_step: 1e-5, ..SearchConfig::default() }
}

#[test]
fn search_improves_monotonically() {
    let start = EigenPlusFunction::reference_candidate();
    let out = greedy_search(&start, &quick()).unwrap();
    assert!(out.objective <= out.start_objective);
    assert!(out.log.windows(2).all(|w| w[1].objective < w[0].objective));
    assert!(out.function.is_normalized());
    assert!(out.function.eval(0.0).abs() < 1e-9);
    let cert = root_certificate(&out.function, DEFAULT_GRID_STEP, 1e-12).unwrap();
    assert!((cert.largest_root - out.objective).abs() < 1e-10);
    assert!(out.gap_to_lower_bound > 0.0);
    assert!((out.gap_to_lower_bound - (out.objective - PROVEN_LOWER_BOUND)).abs() < 1e-15);
}

#[test]
fn fixed_seed_is_reproducible() {
    let start = EigenPlusFunction::reference_candidate();
    let cfg = SearchConfig { seed: 7, max_index: 4, ..quick() };
    let a = greedy_search(&start, &cfg).unwrap();
    let b = greedy_search(&start, &cfg).unwrap();
    assert_eq!(a.log, b.log);
    assert_eq!(a.function.coeffs(), b.function.coeffs());
    let (mut la, mut lb) = (Vec::new(), Vec::new());
    write_log(&a.log, &mut la).unwrap();
    write_log(&b.log, &mut lb).unwrap();
    assert_eq!(la, lb);
    let first: serde_json::Value = serde_json::from_slice(la.split(|&c| c == b'\n').next().unwrap()).unwrap();
    for key in ["pass", "coordinate", "step", "objective"] {
        assert!(first.get(key).is_some(), "{key}");
    }
}

#[test]
fn objective_feasibility() {
    let two_term = EigenPlusFunction::normalized(vec![-12.0, 1.0]).unwrap();
    assert!(matches!(objective(&two_term).unwrap(), Objective::Feasible(v) if (v - 0.6910).abs() < 1e-3));
    let flipped = EigenPlusFunction::normalized(vec![12.0, -1.0]).unwrap();
    assert!(matches!(objective(&flipped).unwrap(), Objective::Infeasible(_)));
    let positive = EigenPlusFunction::new(vec![1.0]).unwrap();
    assert!(matches!(objective(&positive).unwrap(), Objective::Infeasible(_)));
}

#[test]
fn invalid_schedules_rejected() {
    let start = EigenPlusFunction::reference_candidate();
    for cfg in [
        SearchConfig { min_step: 0.0, ..SearchConfig::default() },
        SearchConfig { initial_step: 1e-8, ..SearchConfig::default() },
        SearchConfig { shrink: 1.0, ..SearchConfig::default() },
        SearchConfig { max_index: 0, ..SearchConfig::default() },
    ] {
        assert!(greedy_search(&start, &cfg).is_err(), "{cfg:?}");
    }
    let infeasible = EigenPlusFunction::new(vec![1.0]).unwrap();
    assert!(greedy_search(&infeasible, &SearchConfig::default()).is_err());
}
