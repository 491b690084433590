use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::decoder::relay_decode;
use crate::model::{generate_random_model, RandomModelSpec};

fn model() -> DecodingModel {
    let spec = RandomModelSpec {
        n_observables: 2,
        prior: 0.01,
        ..RandomModelSpec::new(30, 60, 3, 8, 11)
    };
    generate_random_model(&spec).unwrap()
}

fn combos(m: &DecodingModel, count: usize, weight: usize, seed: u64) -> Vec<ErrorCombo> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let ids = rand::seq::index::sample(&mut rng, m.n_faults(), weight).into_vec();
            ErrorCombo::from_faults(m.h(), ids).unwrap()
        })
        .collect()
}

fn record(iterations: usize, converged: bool) -> TrialRecord {
    TrialRecord {
        combo_id: 0,
        trial: 0,
        trial_seed: 0,
        iterations,
        converged,
        logical_error: false,
        decoder: DecoderKind::Relay,
    }
}

fn small_cfg() -> RelayConfig {
    RelayConfig {
        max_legs: 8,
        iters_per_leg: 20,
        warmup_iters: 20,
        global_iteration_cap: 160,
        ..RelayConfig::default()
    }
}

#[test]
fn zero_trials_gives_no_records() {
    let m = model();
    let c = combos(&m, 3, 2, 0);
    assert!(run_trials(&m, &c, &small_cfg(), 0, 1, DecoderKind::Relay)
        .unwrap()
        .is_empty());
}

#[test]
fn trials_are_deterministic_and_seeded_per_trial() {
    let m = model();
    let c = combos(&m, 5, 3, 1);
    let a = run_trials(&m, &c, &small_cfg(), 4, 99, DecoderKind::Relay).unwrap();
    let b = run_trials(&m, &c, &small_cfg(), 4, 99, DecoderKind::Relay).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.len(), 20);
    for r in &a {
        assert_eq!(
            r.trial_seed,
            crate::seed::trial_seed(99, r.combo_id as u64, r.trial as u64)
        );
        assert!(r.iterations <= 160);
        // each record is reproducible from its own seed
        let s = &c[r.combo_id].syndrome;
        let single = relay_decode(&m, s, &small_cfg().with_seed(r.trial_seed)).unwrap();
        assert_eq!(single.iterations, r.iterations);
        assert_eq!(single.converged, r.converged);
        if !r.converged {
            assert!(r.logical_error);
        }
    }
}

#[test]
fn bp_osd_arm_always_reproduces_the_syndrome() {
    let m = model();
    let c = combos(&m, 20, 4, 2);
    let recs = run_trials(&m, &c, &RelayConfig::plain_bp(30), 1, 0, DecoderKind::BpOsd).unwrap();
    for (r, combo) in recs.iter().zip(&c) {
        assert_eq!(r.decoder, DecoderKind::BpOsd);
        let zeros = vec![0.0; m.n_faults()];
        let (bp, soft) =
            crate::decoder::bp_min_sum(&m, &combo.syndrome, 30, &zeros, None, 0.9).unwrap();
        assert_eq!(bp.iterations, r.iterations);
        let est = if bp.converged {
            bp.estimate
        } else {
            crate::decoder::osd0(&m, &combo.syndrome, &soft)
                .unwrap()
                .estimate
        };
        let flip = logical_flip(&m, &combo.indicator(m.n_faults()), &est).unwrap();
        assert_eq!(r.logical_error, !flip.is_zero());
    }
}

#[test]
fn single_record_histogram() {
    let h = iteration_histogram(&[record(7, true)], 5).unwrap();
    assert_eq!(h.counts, vec![0, 1]);
    assert_eq!(h.bin_range(1), (5, 10));
    assert!(iteration_histogram(&[], 0).is_err());
}

#[test]
fn histogram_conserves_records_and_density_integrates() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let recs: Vec<TrialRecord> = (0..500)
        .map(|_| record(rng.gen_range(0..300), true))
        .collect();
    let h = iteration_histogram(&recs, 25).unwrap();
    assert_eq!(h.total(), 500);
    let area: f64 = h.density().iter().map(|d| d * 25.0).sum();
    assert!((area - 1.0).abs() < 1e-12);
    let strat = stratified_histograms(&recs, 25, |r| r.iterations % 3).unwrap();
    assert_eq!(strat.values().map(Histogram::total).sum::<usize>(), 500);
}

#[test]
fn survival_of_constant_records_steps_once() {
    let recs = vec![record(12, true); 5];
    let s = survival_curve(&recs).unwrap();
    assert_eq!(s.points, vec![(0, 1.0), (12, 0.0)]);
    assert_eq!(s.log_points().count(), 1);
    assert!(survival_curve(&[]).is_err());
}

#[test]
fn survival_is_non_increasing_and_matches_direct_count() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..20 {
        let recs: Vec<TrialRecord> = (0..rng.gen_range(1..200))
            .map(|_| record(rng.gen_range(0..50), true))
            .collect();
        let s = survival_curve(&recs).unwrap();
        assert!(s
            .points
            .windows(2)
            .all(|w| w[0].1 >= w[1].1 && w[0].0 < w[1].0));
        for &(n, v) in &s.points {
            let direct =
                recs.iter().filter(|r| r.iterations > n).count() as f64 / recs.len() as f64;
            assert_eq!(v, direct);
        }
        let b = survival_curve_binned(&recs, 10).unwrap();
        let first = b.points[0];
        let direct =
            recs.iter().filter(|r| r.iterations >= first.0).count() as f64 / recs.len() as f64;
        assert_eq!(first.1, direct);
    }
}

fn exponential(rng: &mut ChaCha8Rng, rate: f64) -> f64 {
    let u: f64 = rng.gen();
    -libm::log(1.0 - u) / rate
}

#[test]
fn survival_stays_within_dkw_band() {
    // N = floor(T) for T ~ Exp(r): P(N > n) = exp(-r (n + 1))
    let rate = 0.02;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let n = 10_000;
    let recs: Vec<TrialRecord> = (0..n)
        .map(|_| record(exponential(&mut rng, rate) as usize, true))
        .collect();
    let eps = libm::sqrt(libm::log(2.0 / 1e-6) / (2.0 * n as f64));
    for (k, v) in survival_curve(&recs).unwrap().points {
        let truth = libm::exp(-rate * (k as f64 + 1.0));
        assert!(
            (v - truth).abs() <= eps,
            "n={k} empirical {v} truth {truth}"
        );
    }
}

#[test]
fn uncensored_fit_is_closed_form() {
    let f = fit_exponential_samples(&[1.0, 2.0, 3.0, 4.0], &[false; 4]).unwrap();
    assert!((f.rate - 0.4).abs() < 1e-15);
    assert!((f.stderr - 0.2).abs() < 1e-15);
    let eq = fit_exponential_samples(&[5.0; 3], &[false; 3]).unwrap();
    assert!((eq.rate - 0.2).abs() < 1e-15);
}

#[test]
fn censored_fit_recovers_rate() {
    let rate = 0.003;
    // 30% survive past the cap
    let cap = -libm::log(0.3) / rate;
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let (mut times, mut cens) = (Vec::new(), Vec::new());
    for _ in 0..10_000 {
        let t = exponential(&mut rng, rate);
        times.push(t.min(cap));
        cens.push(t > cap);
    }
    let f = fit_exponential_samples(&times, &cens).unwrap();
    assert!((f.rate / rate - 1.0).abs() < 0.05);
    assert!((2500..3500).contains(&f.censored));
}

#[test]
fn record_fit_censors_only_capped_failures() {
    let recs = vec![
        record(10, true),
        record(30, true),
        record(100, false),
        record(40, false),
    ];
    let f = fit_exponential_rate(&recs, 100).unwrap();
    assert_eq!(f.censored, 1);
    assert_eq!(f.events, 3);
    assert!((f.rate - 3.0 / 180.0).abs() < 1e-15);
    let all = vec![record(100, false); 4];
    assert_eq!(fit_exponential_rate(&all, 100), Err(DynError::AllCensored));
}

#[test]
fn trace_export_orders_by_brightness() {
    let m = model();
    let c = combos(&m, 10, 5, 7);
    let cfg = RelayConfig {
        record_trace: true,
        ..small_cfg()
    };
    for combo in &c {
        let r = relay_decode(&m, &combo.syndrome, &cfg).unwrap();
        let t = export_trace(&r, 15).unwrap();
        assert!(t.fault_ids.len() <= 15);
        assert_eq!(t.n_iterations, r.iterations);
        for w in t
            .fault_ids
            .iter()
            .zip(&t.brightness)
            .collect::<Vec<_>>()
            .windows(2)
        {
            let ((a, ba), (b, bb)) = (w[0], w[1]);
            assert!(ba > bb || (ba == bb && a < b));
        }
        for (row, &b) in t.rows.iter().zip(&t.brightness) {
            assert_eq!(row.weight(), b);
            assert!(b > 0);
        }
    }
    let zero = relay_decode(&m, &BitVec::zeros(m.n_checks()), &cfg).unwrap();
    assert!(export_trace(&zero, 10).unwrap().is_empty());
    let untraced = relay_decode(&m, &c[0].syndrome, &small_cfg()).unwrap();
    assert_eq!(export_trace(&untraced, 10), Err(DynError::NoTrace));
}

#[test]
fn weight5_spread_matches_raw_records() {
    let m = model();
    let c = &combos(&m, 1, 4, 8)[0];
    let cfg = small_cfg();
    assert!(weight5_spread(&m, c, &cfg, 3, 5, 0)
        .unwrap()
        .extensions
        .is_empty());
    let spread = weight5_spread(&m, c, &cfg, 3, 5, 6).unwrap();
    let ext = extend_weight5(&m, c, 6).unwrap();
    assert_eq!(spread.extensions.len(), ext.len());
    let mut runner = TrialRunner::new(&m, &cfg, DecoderKind::Relay, 5).unwrap();
    let base: Vec<TrialRecord> = (0..3)
        .map(|t| runner.run(0, &c.fault_ids, t).unwrap())
        .collect();
    assert_eq!(spread.base_mean, mean_iterations(&base));
    for (k, e) in ext.iter().enumerate() {
        let recs: Vec<TrialRecord> = (0..3)
            .map(|t| runner.run(k + 1, &e.fault_ids, t).unwrap())
            .collect();
        assert_eq!(spread.extensions[k].1, mean_iterations(&recs));
        assert!(e.fault_ids.contains(&spread.extensions[k].0));
    }
    let bins = spread.binned(50.0, 4);
    assert_eq!(bins.iter().sum::<usize>(), ext.len());
}
