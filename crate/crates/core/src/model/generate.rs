use alloc::vec;
use alloc::vec::Vec;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{DecodingModel, ModelError, DEFAULT_PRIOR};
use crate::decoder::gauss::{dense_rows, kernel_basis, XorBasis};
use crate::gf2::SparseBitMatrix;

/// Parameters of a seeded random sparse model.
#[derive(Debug, Clone, PartialEq)]
pub struct RandomModelSpec {
    pub n_checks: usize,
    pub n_faults: usize,
    pub max_col_wt: usize,
    pub max_row_wt: usize,
    /// Observable rows; each fault flips each observable with probability 1/2.
    pub n_observables: usize,
    pub prior: f64,
    pub seed: u64,
}

impl RandomModelSpec {
    pub fn new(
        n_checks: usize,
        n_faults: usize,
        max_col_wt: usize,
        max_row_wt: usize,
        seed: u64,
    ) -> Self {
        Self {
            n_checks,
            n_faults,
            max_col_wt,
            max_row_wt,
            n_observables: 0,
            prior: DEFAULT_PRIOR,
            seed,
        }
    }
}

/// Random column-sparse model with every column weight in
/// `1..=max_col_wt` and every row weight at most `max_row_wt`.
pub fn generate_random_model(spec: &RandomModelSpec) -> Result<DecodingModel, ModelError> {
    let RandomModelSpec {
        n_checks,
        n_faults,
        max_col_wt,
        max_row_wt,
        ..
    } = *spec;
    if max_col_wt > n_checks {
        return Err(ModelError::Infeasible(
            "max column weight exceeds check count",
        ));
    }
    if n_faults > 0 && (max_col_wt == 0 || max_row_wt == 0) {
        return Err(ModelError::Infeasible(
            "zero degree bound with nonzero fault count",
        ));
    }
    if n_faults > n_checks.saturating_mul(max_row_wt) {
        return Err(ModelError::Infeasible(
            "row weight bound too small for fault count",
        ));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut row_deg = vec![0usize; n_checks];
    let mut capacity = n_checks * max_row_wt;
    let mut columns = Vec::with_capacity(n_faults);
    for j in 0..n_faults {
        let open: Vec<usize> = (0..n_checks).filter(|&i| row_deg[i] < max_row_wt).collect();
        let remaining_after = n_faults - j - 1;
        // leave at least one slot for every later column
        let cap = max_col_wt.min(open.len()).min(capacity - remaining_after);
        let w = rng.gen_range(1..=cap);
        let mut rows: Vec<usize> = sample(&mut rng, open.len(), w)
            .into_iter()
            .map(|k| open[k])
            .collect();
        rows.sort_unstable();
        for &i in &rows {
            row_deg[i] += 1;
        }
        capacity -= w;
        columns.push(rows);
    }
    let obs_cols: Vec<Vec<usize>> = (0..n_faults)
        .map(|_| {
            (0..spec.n_observables)
                .filter(|_| rng.gen::<bool>())
                .collect()
        })
        .collect();

    let h = SparseBitMatrix::from_columns(n_checks, columns)?;
    let l = SparseBitMatrix::from_columns(spec.n_observables, obs_cols)?;
    DecodingModel::new(h, vec![spec.prior; n_faults], l, 1)
}

/// Monomial `x^x y^y` in the group algebra of `Z_l x Z_m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Monomial {
    pub x: u32,
    pub y: u32,
}

impl Monomial {
    pub const fn new(x: u32, y: u32) -> Self {
        Self { x, y }
    }
}

/// Which stabilizer type a bivariate-bicycle check matrix holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BbCheckSide {
    /// `[A | B]`, detects Z-type errors.
    XChecks,
    /// `[B^T | A^T]`, detects X-type errors.
    ZChecks,
}

fn circulant_sum(l: u32, m: u32, terms: &[Monomial]) -> Result<Vec<Vec<usize>>, ModelError> {
    if terms.is_empty() {
        return Err(ModelError::Infeasible("empty monomial list"));
    }
    let mut sorted = terms.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(ModelError::Infeasible("repeated monomial cancels mod 2"));
    }
    for t in terms {
        if t.x >= l {
            return Err(ModelError::Exponent {
                exponent: t.x,
                dim: l,
            });
        }
        if t.y >= m {
            return Err(ModelError::Exponent {
                exponent: t.y,
                dim: m,
            });
        }
    }
    let (l, m) = (l as usize, m as usize);
    // rows[(a, b)] = {((a + x) mod l, (b + y) mod m)}
    let rows = (0..l * m)
        .map(|r| {
            let (a, b) = (r / m, r % m);
            let mut cols: Vec<usize> = terms
                .iter()
                .map(|t| ((a + t.x as usize) % l) * m + (b + t.y as usize) % m)
                .collect();
            cols.sort_unstable();
            cols
        })
        .collect();
    Ok(rows)
}

/// Both CSS check matrices `H_X = [A | B]` and `H_Z = [B^T | A^T]` over
/// `2lm` qubits, one row per check.
pub fn bb_css_pair(
    l: u32,
    m: u32,
    a_terms: &[Monomial],
    b_terms: &[Monomial],
) -> Result<(SparseBitMatrix, SparseBitMatrix), ModelError> {
    if l == 0 || m == 0 {
        return Err(ModelError::Infeasible("cyclic dimensions must be positive"));
    }
    let a = circulant_sum(l, m, a_terms)?;
    let b = circulant_sum(l, m, b_terms)?;
    let n = (l * m) as usize;
    let transpose = |rows: &[Vec<usize>]| {
        let mut t = vec![Vec::new(); n];
        for (r, cols) in rows.iter().enumerate() {
            for &c in cols {
                t[c].push(r);
            }
        }
        t
    };
    let a_t = transpose(&a);
    let b_t = transpose(&b);
    let join = |left: &[Vec<usize>], right: &[Vec<usize>]| -> Vec<Vec<usize>> {
        left.iter()
            .zip(right)
            .map(|(lr, rr)| lr.iter().copied().chain(rr.iter().map(|c| c + n)).collect())
            .collect()
    };
    let hx_rows = join(&a, &b);
    let hz_rows = join(&b_t, &a_t);
    // stored as row lists; transpose into column-sparse form
    let to_cols =
        |rows: Vec<Vec<usize>>| SparseBitMatrix::from_columns(2 * n, rows).map(|m| m.transpose());
    Ok((to_cols(hx_rows)?, to_cols(hz_rows)?))
}

/// Parameters of a model with planted check pairs: pair `i` is checks
/// `2i, 2i + 1`, which share `shared` columns, and each of those columns also
/// hits `extra` distinct checks drawn from a pool of `pool` further checks.
/// `filler` additional columns touch 1 to 3 pool checks each.
#[derive(Debug, Clone, PartialEq)]
pub struct PlantedPairSpec {
    pub n_pairs: usize,
    pub shared: usize,
    pub pool: usize,
    pub extra: usize,
    pub filler: usize,
    pub prior: f64,
    pub seed: u64,
}

impl PlantedPairSpec {
    pub fn new(n_pairs: usize, pool: usize, extra: usize, seed: u64) -> Self {
        Self {
            n_pairs,
            shared: 8,
            pool,
            extra,
            filler: 0,
            prior: DEFAULT_PRIOR,
            seed,
        }
    }
}

pub fn generate_planted_pairs(spec: &PlantedPairSpec) -> Result<DecodingModel, ModelError> {
    if spec.extra > spec.pool {
        return Err(ModelError::Infeasible("extra checks exceed pool size"));
    }
    if spec.filler > 0 && spec.pool == 0 {
        return Err(ModelError::Infeasible(
            "filler columns need a nonempty pool",
        ));
    }
    let base = 2 * spec.n_pairs;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut cols = Vec::with_capacity(spec.n_pairs * spec.shared + spec.filler);
    for i in 0..spec.n_pairs {
        for _ in 0..spec.shared {
            let mut c = vec![2 * i, 2 * i + 1];
            c.extend(
                sample(&mut rng, spec.pool, spec.extra)
                    .into_iter()
                    .map(|r| base + r),
            );
            c.sort_unstable();
            cols.push(c);
        }
    }
    for _ in 0..spec.filler {
        let w = rng.gen_range(1..=spec.pool.min(3));
        let mut c: Vec<usize> = sample(&mut rng, spec.pool, w)
            .into_iter()
            .map(|r| base + r)
            .collect();
        c.sort_unstable();
        cols.push(c);
    }
    let h = SparseBitMatrix::from_columns(base + spec.pool, cols)?;
    DecodingModel::from_checks(h, spec.prior)
}

/// Code-capacity decoding model of a bivariate-bicycle code for one check
/// side, with uniform priors and a full set of logical observables of the
/// opposite type.
pub fn generate_bb_code_capacity(
    l: u32,
    m: u32,
    a_terms: &[Monomial],
    b_terms: &[Monomial],
    side: BbCheckSide,
) -> Result<DecodingModel, ModelError> {
    let (hx, hz) = bb_css_pair(l, m, a_terms, b_terms)?;
    let (h, other) = match side {
        BbCheckSide::XChecks => (hx, hz),
        BbCheckSide::ZChecks => (hz, hx),
    };
    // observables: kernel of the other side modulo the row space of `h`
    let mut span = XorBasis::new();
    for row in dense_rows(&h) {
        span.insert(&row);
    }
    let mut logical_rows = Vec::new();
    for v in kernel_basis(&other) {
        if span.insert(&v) {
            logical_rows.push(v.ones().collect::<Vec<_>>());
        }
    }
    let n_faults = h.n_cols();
    let l_mat = SparseBitMatrix::from_columns(n_faults, logical_rows)?.transpose();
    DecodingModel::new(h, vec![DEFAULT_PRIOR; n_faults], l_mat, 1)
}
