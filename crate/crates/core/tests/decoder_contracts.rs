use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use syndromelab_core::decoder::{
    bp_min_sum, bp_osd_decode, logical_flip, osd0, relay_decode, RelayDecoder,
};
use syndromelab_core::model::{generate_random_model, RandomModelSpec};
use syndromelab_core::{BitVec, DecodingModel, RelayConfig, SparseBitMatrix};

fn small_relay() -> RelayConfig {
    RelayConfig {
        max_legs: 12,
        iters_per_leg: 20,
        warmup_iters: 20,
        global_iteration_cap: 240,
        ..RelayConfig::default()
    }
}

fn random_model(seed: u64) -> DecodingModel {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let checks = rng.gen_range(4..30);
    let faults = rng.gen_range(checks..3 * checks);
    let spec = RandomModelSpec {
        n_observables: rng.gen_range(0..3),
        prior: rng.gen_range(0.001..0.2),
        ..RandomModelSpec::new(checks, faults, 4, 12, seed)
    };
    generate_random_model(&spec).unwrap()
}

fn random_error(model: &DecodingModel, weight: usize, rng: &mut ChaCha8Rng) -> BitVec {
    let mut e = BitVec::zeros(model.n_faults());
    for _ in 0..weight {
        e.set(rng.gen_range(0..model.n_faults()), true);
    }
    e
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn converged_estimates_reproduce_the_syndrome(seed in any::<u64>(), weight in 1usize..5) {
        let m = random_model(seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xabc);
        let e = random_error(&m, weight, &mut rng);
        let s = m.h().mat_vec_mod2(&e).unwrap();
        let r = relay_decode(&m, &s, &small_relay().with_seed(seed)).unwrap();
        if r.converged {
            prop_assert_eq!(m.h().mat_vec_mod2(&r.estimate).unwrap(), s.clone());
        }
        prop_assert!(r.iterations <= 240);
        prop_assert_eq!(&r.observables, &m.observables_of(&r.estimate).unwrap());

        // OSD always lands in the syndrome's coset
        let b = bp_osd_decode(&m, &s, 30, 0.9).unwrap();
        prop_assert_eq!(m.h().mat_vec_mod2(&b.estimate).unwrap(), s);
    }

    #[test]
    fn zero_syndrome_takes_no_iterations(seed in any::<u64>()) {
        let m = random_model(seed);
        let s = BitVec::zeros(m.n_checks());
        let r = relay_decode(&m, &s, &small_relay()).unwrap();
        prop_assert!(r.converged);
        prop_assert_eq!(r.iterations, 0);
        prop_assert!(r.estimate.is_zero());
        let b = bp_osd_decode(&m, &s, 30, 0.9).unwrap();
        prop_assert_eq!(b.iterations, 0);
    }

    #[test]
    fn same_seed_same_result(seed in any::<u64>()) {
        let m = random_model(seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = m.h().mat_vec_mod2(&random_error(&m, 4, &mut rng)).unwrap();
        let cfg = RelayConfig { record_trace: true, ..small_relay().with_seed(seed) };
        let first = relay_decode(&m, &s, &cfg).unwrap();
        let mut dec = RelayDecoder::new(&m, cfg.clone()).unwrap();
        for _ in 0..2 {
            prop_assert_eq!(&relay_decode(&m, &s, &cfg).unwrap(), &first);
            prop_assert_eq!(&dec.decode(&s).unwrap(), &first);
        }
    }

    #[test]
    fn one_zero_memory_leg_is_plain_bp(seed in any::<u64>(), iters in 1usize..60) {
        let m = random_model(seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = m.h().mat_vec_mod2(&random_error(&m, 3, &mut rng)).unwrap();
        let zeros = vec![0.0; m.n_faults()];
        let (bp, _) = bp_min_sum(&m, &s, iters, &zeros, None, 0.9).unwrap();
        let r = relay_decode(&m, &s, &RelayConfig::plain_bp(iters).with_seed(seed)).unwrap();
        prop_assert_eq!(r.estimate, bp.estimate);
        prop_assert_eq!(r.converged, bp.converged);
        prop_assert_eq!(r.iterations, bp.iterations);
    }
}

// weight of the lightest solution by exhaustive search over all subsets
fn min_weight_solution(cols: &[u32], target: u32) -> Option<u32> {
    let n = cols.len();
    let mut best: Option<(u32, u32)> = None;
    for mask in 0u32..(1 << n) {
        let mut s = 0;
        for (j, c) in cols.iter().enumerate() {
            if mask >> j & 1 == 1 {
                s ^= c;
            }
        }
        if s == target {
            let w = mask.count_ones();
            if best.is_none_or(|(bw, _)| w < bw) {
                best = Some((w, mask));
            }
        }
    }
    best.map(|(_, m)| m)
}

#[test]
fn osd0_finds_minimum_weight_with_perfect_soft_input() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..20 {
        let (rows, n) = (6, 12);
        let cols: Vec<u32> = (0..n).map(|_| rng.gen_range(1..1u32 << rows)).collect();
        let target = rng.gen_range(0..1u32 << rows);
        let Some(mask) = min_weight_solution(&cols, target) else {
            continue;
        };
        let h = SparseBitMatrix::from_columns(
            rows,
            cols.iter()
                .map(|c| (0..rows).filter(|i| c >> i & 1 == 1).collect())
                .collect(),
        )
        .unwrap();
        let m = DecodingModel::from_checks(h, 0.01).unwrap();
        let s = BitVec::from_bools(&(0..rows).map(|i| target >> i & 1 == 1).collect::<Vec<_>>());
        let soft: Vec<f64> = (0..n)
            .map(|j| if mask >> j & 1 == 1 { -1.0 } else { 1.0 })
            .collect();
        let r = osd0(&m, &s, &soft).unwrap();
        assert_eq!(m.h().mat_vec_mod2(&r.estimate).unwrap(), s);
        assert_eq!(r.estimate.weight(), mask.count_ones() as usize);
    }
}

#[test]
fn inconsistent_syndrome_is_an_error() {
    let h = SparseBitMatrix::from_columns(2, vec![vec![0]]).unwrap();
    let m = DecodingModel::from_checks(h, 0.01).unwrap();
    let s = BitVec::from_ones(2, &[1]).unwrap();
    assert!(osd0(&m, &s, &[0.0]).is_err());
    assert!(relay_decode(&m, &BitVec::zeros(3), &small_relay()).is_err());
}

#[test]
fn logical_flip_of_exact_correction_is_zero() {
    let m = random_model(3);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let e = random_error(&m, 3, &mut rng);
    assert!(logical_flip(&m, &e, &e).unwrap().is_zero());
}
