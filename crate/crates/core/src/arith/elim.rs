//! Gaussian elimination kernels.
//!
//! `echelon_generic` is the textbook algorithm over any [`Field`].
//! `echelon_prime` computes the same result over F_p with delayed updates:
//! pivots are found in panels, multipliers are recorded per row, and the
//! trailing update is applied once per panel in column chunks with lazy
//! reduction in `u64` accumulators.

use super::{Field, Matrix};

/// Textbook Gauss(-Jordan) elimination with first-nonzero pivoting.
pub(crate) fn echelon_generic<F: Field>(m: &mut Matrix<F>, reduced: bool) -> Vec<usize> {
    let f = m.field().clone();
    let (rows, cols) = (m.rows(), m.cols());
    let data = m.data_mut();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !f.is_zero(&data[i * cols + c])) else {
            continue;
        };
        if pr != r {
            for j in 0..cols {
                data.swap(pr * cols + j, r * cols + j);
            }
        }
        let inv = f.inv(&data[r * cols + c]).expect("pivot is nonzero");
        for j in c..cols {
            data[r * cols + j] = f.mul(&data[r * cols + j], &inv);
        }
        let pivot_row: Vec<F::Elem> = data[r * cols..(r + 1) * cols].to_vec();
        let targets: Box<dyn Iterator<Item = usize>> = if reduced {
            Box::new((0..rows).filter(|&i| i != r))
        } else {
            Box::new(r + 1..rows)
        };
        for i in targets {
            let factor = data[i * cols + c].clone();
            if f.is_zero(&factor) {
                continue;
            }
            for j in c..cols {
                let pv = &pivot_row[j];
                if !f.is_zero(pv) {
                    let cur = &data[i * cols + j];
                    data[i * cols + j] = f.sub(cur, &f.mul(&factor, pv));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Barrett reduction of `u64` values modulo a prime below 2^31.
#[derive(Clone, Copy)]
struct Modulus {
    p: u64,
    m: u128,
}

impl Modulus {
    fn new(p: u32) -> Self {
        Self {
            p: p as u64,
            m: u128::from(u64::MAX) / p as u128,
        }
    }

    #[inline(always)]
    fn reduce(&self, x: u64) -> u64 {
        let q = ((x as u128 * self.m) >> 64) as u64;
        let mut r = x - q * self.p;
        while r >= self.p {
            r -= self.p;
        }
        r
    }

    fn inv(&self, a: u64) -> u64 {
        let (mut base, mut exp, mut acc) = (a % self.p, self.p - 2, 1u64);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        acc
    }
}

const PANEL: usize = 64;
const CHUNK: usize = 1024;

#[inline(always)]
fn axpy(dst: &mut [u64], factor: u64, src: &[u32]) {
    for (d, &s) in dst.iter_mut().zip(src) {
        *d += factor * s as u64;
    }
}

/// Same output contract as [`echelon_generic`] for the prime field F_p.
pub(crate) fn echelon_prime(
    p: u32,
    rows: usize,
    cols: usize,
    data: &mut [u32],
    reduced: bool,
) -> Vec<usize> {
    if rows == 0 || cols == 0 {
        return Vec::new();
    }
    let md = Modulus::new(p);
    let sq = (p as u64 - 1) * (p as u64 - 1);
    // Largest number of products that fit on top of a reduced entry.
    let budget_terms = ((u64::MAX - p as u64) / sq.max(1)) as usize;
    let panel = PANEL.min(budget_terms).max(1);

    let mut a: Vec<u64> = data.iter().map(|&x| x as u64).collect();
    // Upper bound on any stored entry.
    let mut bound: u64 = p as u64 - 1;
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0usize;
    let mut c = 0usize;

    // Snapshot of each in-panel pivot row at the moment it was chosen.
    let mut snaps: Vec<u32> = Vec::with_capacity(panel * cols);
    let mut snap_cols: Vec<usize> = Vec::with_capacity(panel);
    // Multipliers for the current panel, row-major rows x panel.
    let mut mult: Vec<u32> = vec![0; rows * panel];
    let mut has_mult: Vec<bool> = vec![false; rows];
    let mut col_snap: Vec<u64> = vec![0; panel];

    while c < cols && r < rows {
        if bound > u64::MAX - (panel as u64) * sq {
            for x in a.iter_mut() {
                *x = md.reduce(*x);
            }
            bound = p as u64 - 1;
        }
        snaps.clear();
        snap_cols.clear();
        let panel_start_col = c;

        while c < cols && r < rows && snap_cols.len() < panel {
            let k = snap_cols.len();
            for (slot, s) in col_snap.iter_mut().zip(0..k) {
                *slot = snaps[s * cols + c] as u64;
            }
            let current = |i: usize, a: &[u64], mult: &[u32]| -> u64 {
                let mut v = a[i * cols + c];
                if k > 0 {
                    let mrow = &mult[i * panel..i * panel + k];
                    for (&mm, &sv) in mrow.iter().zip(&col_snap[..k]) {
                        v += mm as u64 * sv;
                    }
                }
                md.reduce(v)
            };
            let Some(pr) = (r..rows).find(|&i| current(i, &a, &mult) != 0) else {
                c += 1;
                continue;
            };
            if pr != r {
                swap_rows(&mut a, cols, pr, r);
                for j in 0..panel {
                    mult.swap(pr * panel + j, r * panel + j);
                }
                has_mult.swap(pr, r);
            }
            // Bring the pivot row up to date and normalize it.
            let row = &mut a[r * cols..(r + 1) * cols];
            if has_mult[r] {
                for s in 0..k {
                    let mm = mult[r * panel + s];
                    if mm != 0 {
                        axpy(row, mm as u64, &snaps[s * cols..(s + 1) * cols]);
                    }
                    mult[r * panel + s] = 0;
                }
                has_mult[r] = false;
            }
            let pv = md.reduce(row[c]);
            let inv = md.inv(pv);
            for x in row.iter_mut() {
                let v = md.reduce(*x);
                *x = if v == 0 { 0 } else { md.reduce(v * inv) };
            }
            snaps.extend(row.iter().map(|&x| x as u32));
            snap_cols.push(c);

            // Record multipliers for every other affected row.
            let lo = if reduced { 0 } else { r + 1 };
            for i in lo..rows {
                if i == r {
                    continue;
                }
                let v = current(i, &a, &mult);
                if v != 0 {
                    mult[i * panel + k] = (p as u64 - v) as u32;
                    has_mult[i] = true;
                }
            }
            pivots.push(c);
            r += 1;
            c += 1;
        }

        // Trailing update for the panel.
        let k = snap_cols.len();
        if k > 0 {
            let mut start = panel_start_col;
            while start < cols {
                let end = (start + CHUNK).min(cols);
                for i in 0..rows {
                    if !has_mult[i] {
                        continue;
                    }
                    let dst = &mut a[i * cols + start..i * cols + end];
                    for s in 0..k {
                        let mm = mult[i * panel + s];
                        if mm != 0 {
                            axpy(dst, mm as u64, &snaps[s * cols + start..s * cols + end]);
                        }
                    }
                }
                start = end;
            }
            for i in 0..rows {
                if has_mult[i] {
                    mult[i * panel..(i + 1) * panel].fill(0);
                    has_mult[i] = false;
                }
            }
            bound += k as u64 * sq;
        }
    }

    let rank = pivots.len();
    for i in 0..rows {
        let dst = &mut data[i * cols..(i + 1) * cols];
        if i < rank {
            let src = &a[i * cols..(i + 1) * cols];
            for (d, &s) in dst.iter_mut().zip(src) {
                *d = md.reduce(s) as u32;
            }
        } else {
            dst.fill(0);
        }
    }
    if !reduced {
        // Columns left of each pivot are zero by construction but may hold
        // unreduced multiples of p; clear them so the output is canonical.
        for (i, &pc) in pivots.iter().enumerate() {
            data[i * cols..i * cols + pc].fill(0);
        }
    }
    pivots
}

fn swap_rows(a: &mut [u64], cols: usize, i: usize, j: usize) {
    let (lo, hi) = if i < j { (i, j) } else { (j, i) };
    let (head, tail) = a.split_at_mut(hi * cols);
    head[lo * cols..(lo + 1) * cols].swap_with_slice(&mut tail[..cols]);
}
