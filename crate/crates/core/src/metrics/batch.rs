use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::foa::{estimate_doa, FoaSignal};

use super::angles::AngleErrors;

#[derive(Debug, Clone, PartialEq)]
pub struct DoaBatchReport {
    pub mean: AngleErrors,
    pub evaluated: usize,
    /// Pairs where either signal had no measurable intensity.
    pub excluded: usize,
}

/// Mean direction errors over `(ground truth, estimate)` pairs.
///
/// Per-pair work runs on the current rayon pool; the reduction is a fixed
/// pairwise sum over pair order, so the result does not depend on thread count.
pub fn eval_doa_batch(pairs: &[(FoaSignal, FoaSignal)]) -> Result<DoaBatchReport> {
    if pairs.is_empty() {
        return Err(Error::EmptyBatch);
    }
    let per_pair: Vec<Option<AngleErrors>> = pairs
        .par_iter()
        .map(|(gt, est)| match (estimate_doa(gt), estimate_doa(est)) {
            (Ok(g), Ok(e)) => Ok(Some(AngleErrors::between(g, e))),
            (Err(Error::ZeroEnergy(_)), _) | (_, Err(Error::ZeroEnergy(_))) => Ok(None),
            (Err(err), _) | (_, Err(err)) => Err(err),
        })
        .collect::<Result<_>>()?;

    let valid: Vec<AngleErrors> = per_pair.iter().flatten().copied().collect();
    if valid.is_empty() {
        return Err(Error::EmptyBatch);
    }
    let n = valid.len() as f64;
    let column =
        |f: fn(&AngleErrors) -> f64| pairwise_sum(&valid.iter().map(f).collect::<Vec<_>>()) / n;
    Ok(DoaBatchReport {
        mean: AngleErrors {
            d_theta: column(|e| e.d_theta),
            d_phi: column(|e| e.d_phi),
            d_angular: column(|e| e.d_angular),
        },
        evaluated: valid.len(),
        excluded: pairs.len() - valid.len(),
    })
}

pub(crate) fn pairwise_sum(values: &[f64]) -> f64 {
    const LEAF: usize = 16;
    if values.len() <= LEAF {
        return values.iter().sum();
    }
    let (lo, hi) = values.split_at(values.len() / 2);
    pairwise_sum(lo) + pairwise_sum(hi)
}
