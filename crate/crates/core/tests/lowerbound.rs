use frl_core::lowerbound::{
    optimal_sublevel, optimal_superlevel, tau_ub, upsilon, verify, IntervalSet, LowerBoundConfig, LowerBoundMachine,
    Region, TAU_STAR,
};
use frl_core::quadrature::{integrate, Integrand};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A random union of `k` disjoint intervals of total measure `m` inside `[lo, hi]`.
fn random_union(rng: &mut ChaCha8Rng, lo: f64, hi: f64, m: f64, k: usize) -> Vec<(f64, f64)> {
    let lengths: Vec<f64> = (0..k).map(|_| rng.gen_range(0.05..1.0)).collect();
    let gaps: Vec<f64> = (0..=k).map(|_| rng.gen_range(0.05..1.0)).collect();
    let (ls, gs) = (lengths.iter().sum::<f64>(), gaps.iter().sum::<f64>());
    let free = hi - lo - m;
    let mut x = lo;
    let mut out = Vec::new();
    for i in 0..k {
        x += gaps[i] / gs * free;
        let len = lengths[i] / ls * m;
        out.push((x, x + len));
        x += len;
    }
    out
}

fn kernel_integral(a: f64, set: &[(f64, f64)]) -> f64 {
    IntervalSet::new(set.to_vec()).unwrap().integrate(|x| upsilon(a, x), 1e-12).unwrap()
}

#[test]
fn inner_sublevel_beats_random_unions() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let a = 0.45;
    for trial in 0..100 {
        let m = rng.gen_range(0.02..0.85);
        let (opt, c) = optimal_sublevel(a, Region::Inner, m).unwrap();
        assert!((opt.total_measure() - m).abs() < 1e-9);
        let best = kernel_integral(a, opt.intervals());
        let k = rng.gen_range(1..6);
        let other = random_union(&mut rng, -a, a, m, k);
        let v = kernel_integral(a, &other);
        assert!(best <= v + 1e-9, "trial {trial}: m={m} c={c}: {best} > {v}");
    }
}

#[test]
fn outer_sublevel_beats_random_unions() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let a = 0.4;
    for trial in 0..30 {
        let m = rng.gen_range(0.1..0.5);
        let (opt, c) = optimal_sublevel(a, Region::Outer, m).unwrap();
        assert!(c < 0.0);
        assert!(opt.intervals().iter().all(|&(l, r)| l.abs() >= a - 1e-12 && r.abs() >= a - 1e-12));
        let best = kernel_integral(a, opt.intervals());
        // symmetric random set inside a ≤ |x| ≤ 6
        let k = rng.gen_range(1..5);
        let half = random_union(&mut rng, a, 6.0, m / 2.0, k);
        let other = IntervalSet::new(half).unwrap().mirror();
        let v = kernel_integral(a, other.intervals());
        assert!(best <= v + 1e-9, "trial {trial}: {best} > {v}");
    }
}

#[test]
fn superlevel_beats_random_unions() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let a = 0.3;
    for _ in 0..30 {
        let m = rng.gen_range(0.05..0.55);
        let (opt, _) = optimal_superlevel(a, m).unwrap();
        let best = kernel_integral(a, opt.intervals());
        let k = rng.gen_range(1..5);
        let other = random_union(&mut rng, -a, a, m, k);
        assert!(best >= kernel_integral(a, &other) - 1e-9);
    }
}

/// `0 ≤ f ≤ 1` with `∫f = m` and `g` increasing: `∫_lo^{lo+m} g ≤ ∫fg ≤ ∫_{hi−m}^{hi} g`.
#[test]
fn bathtub_bounds() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let (lo, hi) = (-1.0, 2.0);
    let cells = 60;
    let width = (hi - lo) / cells as f64;
    for trial in 0..50 {
        let k = rng.gen_range(0.2..3.0);
        let shift = rng.gen_range(0.0..1.0);
        let g = move |x: f64| (k * x).exp() + shift * x.powi(3).max(0.0);
        let f: Vec<f64> = (0..cells).map(|_| rng.gen_range(-0.5f64..1.5).clamp(0.0, 1.0)).collect();
        let m: f64 = f.iter().sum::<f64>() * width;
        let ig = |a: f64, b: f64| integrate(&Integrand::compact(g), a, b, 1e-11).unwrap();
        let fg: f64 = f
            .iter()
            .enumerate()
            .map(|(i, &v)| v * ig(lo + i as f64 * width, lo + (i + 1) as f64 * width))
            .sum();
        let (low, high) = (ig(lo, lo + m), ig(hi - m, hi));
        assert!(low <= fg + 1e-9 && fg <= high + 1e-9, "trial {trial}: {low} {fg} {high}");
    }
}

#[test]
fn h_terms_nondecreasing_in_tau() {
    for &a in &[0.3, 0.4, 0.449] {
        let m = LowerBoundMachine::new(a).unwrap();
        let (mut p1, mut p2) = (f64::NEG_INFINITY, f64::NEG_INFINITY);
        for i in 0..=20 {
            let tau = 0.0125 * i as f64;
            let (h1, h2) = (m.h1(tau).unwrap(), m.h2(tau).unwrap());
            assert!(h1 >= p1 - 1e-12 && h2 >= p2 - 1e-12, "A={a} tau={tau}");
            p1 = h1;
            p2 = h2;
        }
    }
}

#[test]
fn exact_derivatives_match_levels() {
    let m = LowerBoundMachine::new(0.4).unwrap();
    for &tau in &[0.005, 0.02, 0.04] {
        let d = m.derivatives(tau).unwrap();
        assert!((d.dh1 - 2.0 * m.c1(tau).unwrap()).abs() < 1e-4);
        assert!((d.dh2 + 2.0 * m.h2_with_level(tau).unwrap().1).abs() < 1e-4);
    }
}

#[test]
fn pipeline_rules_out_every_a_below_045() {
    let report = verify(&LowerBoundConfig::default()).unwrap();
    assert!(report.tau_ub_below_tau_star);
    assert!(report.fails_everywhere);
    assert!(report.max_adjacent_margin_jump < 0.05, "{}", report.max_adjacent_margin_jump);
    assert!(report.lipschitz_estimate < 0.96);
    assert!(report.max_dh1 <= 0.781);
    assert!(report.kernel_bounds.iter().all(|k| k.holds));
    assert!(tau_ub(0.45).unwrap() < TAU_STAR);
}

#[test]
fn machine_rejects_bad_parameters() {
    assert!(LowerBoundMachine::new(0.25).is_err());
    assert!(LowerBoundMachine::new(0.6).is_err());
    assert!(LowerBoundMachine::new(0.4).unwrap().h1(-0.1).is_err());
    assert!(optimal_sublevel(0.4, Region::Inner, -1.0).is_err());
    assert!(IntervalSet::new(vec![(0.0, 1.0), (0.5, 2.0)]).is_err());
    assert!(IntervalSet::new(vec![(1.0, 1.0)]).is_err());
}

fn disjoint_intervals() -> impl Strategy<Value = Vec<(f64, f64)>> {
    prop::collection::vec((0.01f64..1.0, 0.01f64..1.0), 1..8).prop_map(|pairs| {
        let mut x = 0.0;
        pairs
            .into_iter()
            .map(|(gap, len)| {
                x += gap;
                let iv = (x, x + len);
                x += len;
                iv
            })
            .collect()
    })
}

proptest! {
    #[test]
    fn interval_set_measure(ivs in disjoint_intervals()) {
        let set = IntervalSet::new(ivs.clone()).unwrap();
        let sum: f64 = ivs.iter().map(|(l, r)| r - l).sum();
        prop_assert!((set.total_measure() - sum).abs() < 1e-12);
        let mirrored = set.mirror();
        prop_assert!((mirrored.total_measure() - 2.0 * sum).abs() < 1e-12);
        prop_assert!(mirrored.intervals().windows(2).all(|w| w[0].1 < w[1].0));
        for &(l, r) in &ivs {
            prop_assert!(set.contains(0.5 * (l + r)) && mirrored.contains(-0.5 * (l + r)));
        }
        prop_assert!((set.integrate(|_| 1.0, 1e-12).unwrap() - sum).abs() < 1e-11);
    }

    #[test]
    fn kernel_is_even(a in 0.01f64..0.5, x in -50.0f64..50.0) {
        prop_assert_eq!(upsilon(a, x), upsilon(a, -x));
    }

    #[test]
    fn sublevel_measure_hits_target(a in 0.26f64..0.5, frac in 0.01f64..0.99) {
        let m = frac * 2.0 * a;
        let (set, c) = optimal_sublevel(a, Region::Inner, m).unwrap();
        prop_assert!((set.total_measure() - m).abs() < 1e-9);
        for &(l, r) in set.intervals() {
            let mid = 0.5 * (l + r);
            prop_assert!(upsilon(a, mid) <= c + 1e-9);
        }
    }
}
