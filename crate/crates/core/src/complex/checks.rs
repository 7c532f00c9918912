use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};

use super::LineComplex;
use crate::arith::Field;
use crate::verdict::Verdict;

/// Every consecutive pair of differentials composes to the zero map, computed
/// by polynomial arithmetic.
pub fn check_composition_zero<F: Field>(c: &LineComplex<F>) -> Verdict {
    let mut bad = Vec::new();
    for (k, pair) in c.diffs().windows(2).enumerate() {
        let ok = pair[1]
            .compose(&pair[0])
            .map(|m| m.is_zero())
            .unwrap_or(false);
        if !ok {
            bad.push(c.start() + k as i64 + 1);
        }
    }
    Verdict::compare(
        "consecutive differentials compose to zero",
        &bad,
        Vec::<i64>::new(),
    )
    .with("failing_positions_meaning", "position of the middle term")
}

/// Degrees `[-max twist, -min twist + n + 1 + slack]`: below the lower end every
/// graded piece vanishes; the upper end covers the syzygy degrees of a pure
/// complex with room to spare.
pub fn default_exactness_window<F: Field>(c: &LineComplex<F>, slack: i64) -> RangeInclusive<i64> {
    let lo = -c.max_twist().unwrap_or(0);
    let hi = -c.min_twist().unwrap_or(0) + c.n() as i64 + 1 + slack;
    lo..=hi
}

/// Estimated elimination cost above which a degree is not checked.
pub const EXACTNESS_COST_BUDGET: f64 = 2.5e10;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PositionFailure {
    pub position: i64,
    pub degree: i64,
    pub rank_in: usize,
    pub rank_out: usize,
    pub dim: usize,
}

/// Outcome of the graded exactness check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactnessReport {
    pub requested: (i64, i64),
    /// Degrees actually checked. The upper end is lowered when the graded
    /// pieces outgrow [`EXACTNESS_COST_BUDGET`].
    pub checked: (i64, i64),
    pub positions: Vec<i64>,
    pub failures: Vec<PositionFailure>,
}

impl ExactnessReport {
    pub fn is_exact(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn verdict(&self) -> Verdict {
        Verdict::compare(
            "graded exactness at internal positions",
            &self.failures,
            Vec::<PositionFailure>::new(),
        )
        .with("requested_window", self.requested)
        .with("checked_window", self.checked)
        .with("positions", &self.positions)
    }
}

fn cost(rows: usize, cols: usize) -> f64 {
    rows as f64 * cols as f64 * rows.min(cols) as f64
}

/// For each position except the last and each degree `t` in `window`,
/// check `rank(d_in) + rank(d_out) = dim C^p_t` on graded pieces.
pub fn check_exactness_graded<F: Field>(
    c: &LineComplex<F>,
    window: RangeInclusive<i64>,
) -> ExactnessReport {
    check_exactness_graded_with_budget(c, window, EXACTNESS_COST_BUDGET)
}

pub fn check_exactness_graded_with_budget<F: Field>(
    c: &LineComplex<F>,
    window: RangeInclusive<i64>,
    budget: f64,
) -> ExactnessReport {
    let n = c.n();
    let positions: Vec<i64> = (c.start()..c.end()).collect();
    let mut failures = Vec::new();
    let (lo, hi) = (*window.start(), *window.end());
    let mut checked_hi = lo - 1;
    for t in lo..=hi {
        let dims: Vec<usize> = c.terms().iter().map(|term| term.h0(n, t)).collect();
        let too_big = (0..c.diffs().len()).any(|k| cost(dims[k + 1], dims[k]) > budget);
        if too_big {
            break;
        }
        let ranks: Vec<usize> = c
            .diffs()
            .iter()
            .enumerate()
            .map(|(k, d)| {
                if dims[k] == 0 || dims[k + 1] == 0 {
                    0
                } else {
                    d.section_matrix(t).rank()
                }
            })
            .collect();
        for &p in &positions {
            let k = (p - c.start()) as usize;
            let rank_in = if k == 0 { 0 } else { ranks[k - 1] };
            let rank_out = ranks[k];
            if rank_in + rank_out != dims[k] {
                failures.push(PositionFailure {
                    position: p,
                    degree: t,
                    rank_in,
                    rank_out,
                    dim: dims[k],
                });
            }
        }
        checked_hi = t;
    }
    ExactnessReport {
        requested: (lo, hi),
        checked: (lo, checked_hi),
        positions,
        failures,
    }
}
