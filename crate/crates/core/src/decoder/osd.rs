use alloc::vec::Vec;

use super::gauss::{solve_in_order, OrderedSolve};
use super::{bp_min_sum, check_syndrome, DecodeError, DecodeResult};
use crate::gf2::BitVec;
use crate::model::DecodingModel;

/// Order-0 ordered statistics decoding.
///
/// Columns are ranked by soft output, lowest LLR (most likely flipped)
/// first, ties by index. The first linearly independent columns along that
/// ranking form the information set and the estimate is the unique solution
/// supported on it.
pub fn osd0(
    model: &DecodingModel,
    syndrome: &BitVec,
    soft_outputs: &[f64],
) -> Result<DecodeResult, DecodeError> {
    check_syndrome(model, syndrome)?;
    let n = model.n_faults();
    if soft_outputs.len() != n {
        return Err(DecodeError::Dimension {
            what: "soft outputs",
            expected: n,
            actual: soft_outputs.len(),
        });
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| soft_outputs[a].total_cmp(&soft_outputs[b]));
    match solve_in_order(model.h(), syndrome, &order) {
        OrderedSolve::Solved(estimate) => {
            let observables = model.observables_of(&estimate)?;
            Ok(DecodeResult {
                estimate,
                converged: true,
                iterations: 0,
                legs: 0,
                observables,
                trace: None,
            })
        }
        OrderedSolve::Inconsistent => Err(DecodeError::Inconsistent),
    }
}

/// Plain min-sum BP with `max_iters` sweeps, falling back to [`osd0`] on
/// the final posteriors when BP does not converge. `iterations` reports the
/// BP sweeps; `converged` reports whether BP itself converged.
pub fn bp_osd_decode(
    model: &DecodingModel,
    syndrome: &BitVec,
    max_iters: usize,
    scale: f64,
) -> Result<DecodeResult, DecodeError> {
    let zeros = alloc::vec![0.0; model.n_faults()];
    let (bp, soft) = bp_min_sum(model, syndrome, max_iters, &zeros, None, scale)?;
    if bp.converged {
        return Ok(bp);
    }
    let post = osd0(model, syndrome, &soft)?;
    Ok(DecodeResult {
        converged: false,
        iterations: bp.iterations,
        legs: bp.legs,
        ..post
    })
}
