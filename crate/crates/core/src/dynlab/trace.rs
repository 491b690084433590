use alloc::vec::Vec;

use super::DynError;
use crate::decoder::DecodeResult;
use crate::gf2::BitVec;

/// Hard-decision history of the brightest faults, one row per fault and one
/// column per iteration.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TraceMatrix {
    pub fault_ids: Vec<usize>,
    /// Iterations at which each row's fault was set.
    pub brightness: Vec<usize>,
    pub rows: Vec<BitVec>,
    pub n_iterations: usize,
    pub leg_starts: Vec<usize>,
}

impl TraceMatrix {
    pub fn is_empty(&self) -> bool {
        self.fault_ids.is_empty()
    }
}

/// Rows ordered by descending brightness, ties by fault index, faults never
/// set omitted, at most `top_k` rows.
pub fn export_trace(result: &DecodeResult, top_k: usize) -> Result<TraceMatrix, DynError> {
    let trace = result.trace.as_ref().ok_or(DynError::NoTrace)?;
    let n_iter = trace.n_iterations();
    let n = result.estimate.len();
    let mut brightness = alloc::vec![0usize; n];
    for it in &trace.iterations {
        for j in it.ones() {
            brightness[j] += 1;
        }
    }
    let mut order: Vec<usize> = (0..n).filter(|&j| brightness[j] > 0).collect();
    order.sort_by(|&a, &b| brightness[b].cmp(&brightness[a]).then(a.cmp(&b)));
    order.truncate(top_k);
    let rows = order
        .iter()
        .map(|&j| {
            let mut row = BitVec::zeros(n_iter);
            for (t, it) in trace.iterations.iter().enumerate() {
                if it.get(j) {
                    row.set(t, true);
                }
            }
            row
        })
        .collect();
    Ok(TraceMatrix {
        brightness: order.iter().map(|&j| brightness[j]).collect(),
        fault_ids: order,
        rows,
        n_iterations: n_iter,
        leg_starts: trace.leg_starts.clone(),
    })
}
