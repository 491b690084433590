use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use syndromelab_core::decoder::{logical_flip, relay_decode};
use syndromelab_core::model::{bb_css_pair, generate_bb_code_capacity, BbCheckSide, Monomial};
use syndromelab_core::{BitVec, RelayConfig, SparseBitMatrix};

const GROSS_A: [Monomial; 3] = [
    Monomial::new(3, 0),
    Monomial::new(0, 1),
    Monomial::new(0, 2),
];
const GROSS_B: [Monomial; 3] = [
    Monomial::new(0, 3),
    Monomial::new(1, 0),
    Monomial::new(2, 0),
];

// every row of `a` has even overlap with every row of `b`
fn orthogonal(a: &SparseBitMatrix, b: &SparseBitMatrix) -> bool {
    let rb = b.row_lists();
    a.row_lists().iter().all(|ra| {
        rb.iter()
            .all(|r| ra.iter().filter(|c| r.binary_search(c).is_ok()).count() % 2 == 0)
    })
}

fn random_terms(rng: &mut ChaCha8Rng, l: u32, m: u32) -> Vec<Monomial> {
    let mut all: Vec<Monomial> = (0..l)
        .flat_map(|x| (0..m).map(move |y| Monomial::new(x, y)))
        .collect();
    all.shuffle(rng);
    all.truncate(3);
    all
}

#[test]
fn random_bb_codes_are_css() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..50 {
        let (l, m) = (rng.gen_range(2..=12), rng.gen_range(2..=12));
        let (a, b) = (random_terms(&mut rng, l, m), random_terms(&mut rng, l, m));
        let (hx, hz) = bb_css_pair(l, m, &a, &b).unwrap();
        assert_eq!(hx.n_cols(), (2 * l * m) as usize);
        assert!(orthogonal(&hx, &hz));
    }
}

#[test]
fn gross_code_shape() {
    for side in [BbCheckSide::XChecks, BbCheckSide::ZChecks] {
        let model = generate_bb_code_capacity(12, 6, &GROSS_A, &GROSS_B, side).unwrap();
        assert_eq!(model.n_checks(), 72);
        assert_eq!(model.n_faults(), 144);
        assert_eq!(model.n_observables(), 12);
        assert!(model.h().columns().iter().all(|c| c.len() == 3));
        assert!(model.h().row_lists().iter().all(|r| r.len() == 6));
        // stabilizers of the other type are undetected and flip no observable
        let (hx, hz) = bb_css_pair(12, 6, &GROSS_A, &GROSS_B).unwrap();
        let other = match side {
            BbCheckSide::XChecks => hz,
            BbCheckSide::ZChecks => hx,
        };
        for row in other.row_lists() {
            let e = BitVec::from_ones(144, &row).unwrap();
            assert!(model.h().mat_vec_mod2(&e).unwrap().is_zero());
            assert!(model.observables_of(&e).unwrap().is_zero());
        }
    }
}

#[test]
fn gross_code_corrects_every_single_fault() {
    for side in [BbCheckSide::XChecks, BbCheckSide::ZChecks] {
        let model = generate_bb_code_capacity(12, 6, &GROSS_A, &GROSS_B, side).unwrap();
        for j in 0..model.n_faults() {
            let e = BitVec::from_ones(model.n_faults(), &[j]).unwrap();
            let s = model.h().mat_vec_mod2(&e).unwrap();
            let r = relay_decode(&model, &s, &RelayConfig::default().with_seed(j as u64)).unwrap();
            assert!(r.converged, "fault {j}");
            assert!(
                logical_flip(&model, &e, &r.estimate).unwrap().is_zero(),
                "fault {j}"
            );
        }
    }
}

#[test]
fn invalid_bb_parameters_are_rejected() {
    assert!(bb_css_pair(0, 6, &GROSS_A, &GROSS_B).is_err());
    assert!(bb_css_pair(12, 2, &GROSS_A, &GROSS_B).is_err());
    let doubled = [Monomial::new(1, 1), Monomial::new(1, 1)];
    assert!(bb_css_pair(4, 4, &doubled, &GROSS_B[..1]).is_err());
}
