//! Sheaf cohomology of complexes of line bundles on projective space.
//!
//! The hypercohomology spectral sequence of a complex `C` of sums of line
//! bundles has `E_1^{p,q} = H^q(C^p)`, which vanishes unless `q = 0` or
//! `q = n`. So `E_2` is the homology of two rows of matrices (section maps
//! and their Serre duals) and the only further differential is
//! `d_{n+1}: E^{p,n} -> E^{p+n+1,0}`. Its rank is not computed; entries it
//! can touch are reported with bounds unless the other side is zero.

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::ops::RangeInclusive;

use serde::{Serialize, Serializer};

use crate::arith::Field;
use crate::complex::{
    check_exactness_graded, default_exactness_window, sign, ExactnessReport, LineComplex,
    Presentation,
};
use crate::error::{Error, Result};
use crate::ring::dim_forms;

/// `dim H^q(P^n, O(d))`.
pub fn bott_line(n: usize, q: usize, d: i64) -> usize {
    if q == 0 {
        dim_forms(n, d)
    } else if q == n {
        dim_forms(n, -d - n as i64 - 1)
    } else {
        0
    }
}

/// A dimension, or bounds when an undetermined differential may act on it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CohomologyDim {
    Exact(usize),
    Indeterminate { lo: usize, hi: usize },
}

impl CohomologyDim {
    pub fn exact(self) -> Option<usize> {
        match self {
            CohomologyDim::Exact(v) => Some(v),
            CohomologyDim::Indeterminate { .. } => None,
        }
    }

    pub fn is_zero(self) -> bool {
        self == CohomologyDim::Exact(0)
    }

    /// Known to be nonzero, whether or not the exact value is.
    pub fn is_nonzero(self) -> bool {
        match self {
            CohomologyDim::Exact(v) => v > 0,
            CohomologyDim::Indeterminate { lo, .. } => lo > 0,
        }
    }

    pub fn bounds(self) -> (usize, usize) {
        match self {
            CohomologyDim::Exact(v) => (v, v),
            CohomologyDim::Indeterminate { lo, hi } => (lo, hi),
        }
    }
}

impl fmt::Display for CohomologyDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CohomologyDim::Exact(v) => write!(f, "{v}"),
            CohomologyDim::Indeterminate { lo, hi } => write!(f, "{lo}..{hi}"),
        }
    }
}

impl Serialize for CohomologyDim {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            CohomologyDim::Exact(v) => s.serialize_u64(*v as u64),
            CohomologyDim::Indeterminate { .. } => s.serialize_str(&self.to_string()),
        }
    }
}

/// Evidence that a complex is exact as a complex of sheaves: its graded
/// pieces are exact at every position but the last on the checked window,
/// and the last cokernel vanishes in a degree at or above all generator
/// degrees, hence has finite length.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AcyclicityCertificate {
    pub exactness: ExactnessReport,
    pub cokernel_vanishes_from: i64,
}

/// Try to certify that `c` is exact as a complex of sheaves.
pub fn certify_acyclic<F: Field>(c: &LineComplex<F>, slack: i64) -> Option<AcyclicityCertificate> {
    let last = c.diffs().last()?;
    let window = default_exactness_window(c, slack);
    let exactness = check_exactness_graded(c, window.clone());
    if !exactness.is_exact() {
        return None;
    }
    let n = c.n();
    let top = c.terms().last()?;
    let from = -top.min_twist()?;
    (from..=(*window.end()).max(from))
        .find(|&u| {
            let dim = top.h0(n, u);
            dim == 0 || last.section_matrix(u).rank() == dim
        })
        .map(|u| AcyclicityCertificate {
            exactness,
            cokernel_vanishes_from: u,
        })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Row {
    Sections,
    Top,
}

/// Hypercohomology dimensions of a complex and all its twists, with the
/// ranks of both rows memoized.
pub struct Hypercohomology<'a, F: Field> {
    complex: &'a LineComplex<F>,
    ranks: RefCell<HashMap<(Row, i64, i64), usize>>,
    certificate: Option<AcyclicityCertificate>,
}

impl<'a, F: Field> Hypercohomology<'a, F> {
    pub fn new(complex: &'a LineComplex<F>) -> Self {
        Self {
            complex,
            ranks: RefCell::new(HashMap::new()),
            certificate: None,
        }
    }

    /// Use an acyclicity certificate to settle entries touched by the
    /// corner differential: a certified exact complex has no hypercohomology.
    pub fn with_certificate(mut self, cert: AcyclicityCertificate) -> Self {
        self.certificate = Some(cert);
        self
    }

    pub fn certificate(&self) -> Option<&AcyclicityCertificate> {
        self.certificate.as_ref()
    }

    pub fn complex(&self) -> &LineComplex<F> {
        self.complex
    }

    fn n(&self) -> usize {
        self.complex.n()
    }

    fn term_dim(&self, row: Row, p: i64, u: i64) -> usize {
        let n = self.n();
        match self.complex.term_at(p) {
            None => 0,
            Some(t) => match row {
                Row::Sections => t.h0(n, u),
                Row::Top => t.hn(n, u),
            },
        }
    }

    /// Rank of the row map leaving position `p`, twisted by `u`.
    fn rank(&self, row: Row, p: i64, u: i64) -> usize {
        let Some(d) = self.complex.diff_from(p) else {
            return 0;
        };
        if self.term_dim(row, p, u) == 0 || self.term_dim(row, p + 1, u) == 0 {
            return 0;
        }
        if let Some(&r) = self.ranks.borrow().get(&(row, p, u)) {
            return r;
        }
        let r = match row {
            Row::Sections => d.section_matrix(u).rank(),
            Row::Top => d.top_matrix(u).rank(),
        };
        self.ranks.borrow_mut().insert((row, p, u), r);
        r
    }

    fn e2(&self, row: Row, p: i64, u: i64) -> usize {
        let dim = self.term_dim(row, p, u);
        if dim == 0 {
            return 0;
        }
        dim - self.rank(row, p, u) - self.rank(row, p - 1, u)
    }

    /// `E_2^{p,0}` of the twist by `u`.
    pub fn e2_sections(&self, p: i64, u: i64) -> usize {
        self.e2(Row::Sections, p, u)
    }

    /// `E_2^{p,n}` of the twist by `u`.
    pub fn e2_top(&self, p: i64, u: i64) -> usize {
        self.e2(Row::Top, p, u)
    }

    /// Dimension of `ℍ^m` of the twist by `u`, ignoring any certificate.
    pub fn raw_dim(&self, m: i64, u: i64) -> CohomologyDim {
        let n = self.n() as i64;
        let a = self.e2(Row::Sections, m, u);
        let b = self.e2(Row::Top, m - n, u);
        let (start, end) = (self.complex.start(), self.complex.end());
        // d_{n+1} out of E^{m-n,n} lands in E^{m+1,0}.
        let out_tgt = if b > 0 && m < end && m - n >= start {
            self.e2(Row::Sections, m + 1, u)
        } else {
            0
        };
        // d_{n+1} into E^{m,0} starts at E^{m-n-1,n}.
        let in_src = if a > 0 && m - n > start && m <= end {
            self.e2(Row::Top, m - n - 1, u)
        } else {
            0
        };
        let hi = a + b;
        let lo = hi - in_src.min(a) - b.min(out_tgt);
        if lo == hi {
            CohomologyDim::Exact(hi)
        } else {
            CohomologyDim::Indeterminate { lo, hi }
        }
    }

    /// Dimension of `ℍ^m` of the twist by `u`.
    pub fn dim(&self, m: i64, u: i64) -> CohomologyDim {
        let raw = self.raw_dim(m, u);
        match (raw, &self.certificate) {
            (CohomologyDim::Indeterminate { lo: 0, .. }, Some(_)) => CohomologyDim::Exact(0),
            _ => raw,
        }
    }

    /// `ℍ^m` for every `m` that can be nonzero, starting at `start()`.
    pub fn all(&self, u: i64) -> Vec<CohomologyDim> {
        self.degrees().map(|m| self.dim(m, u)).collect()
    }

    /// Total degrees that can carry hypercohomology.
    pub fn degrees(&self) -> RangeInclusive<i64> {
        self.complex.start()..=self.complex.end() + self.n() as i64
    }

    /// Whether the alternating sum of `E_2` entries equals the Euler
    /// characteristic from Bott's formula on the terms.
    pub fn euler_consistent(&self, u: i64) -> bool {
        let n = self.n() as i64;
        let total: i64 = self
            .complex
            .positions()
            .map(|p| {
                sign(p) * self.e2(Row::Sections, p, u) as i64
                    + sign(p + n) * self.e2(Row::Top, p, u) as i64
            })
            .sum();
        total == self.complex.euler_characteristic(u)
    }
}

/// `ℍ^m` of `c`, for `m` in `c.start() ..= c.end() + n`.
pub fn hypercohomology<F: Field>(c: &LineComplex<F>) -> Vec<CohomologyDim> {
    Hypercohomology::new(c).all(0)
}

/// Dimensions `h^q(E(t))` on a window of twists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyTable {
    pub label: String,
    pub n: usize,
    pub t_min: i64,
    pub t_max: i64,
    /// `rows[q][t - t_min]`.
    pub rows: Vec<Vec<CohomologyDim>>,
}

impl CohomologyTable {
    pub fn get(&self, q: usize, t: i64) -> Option<CohomologyDim> {
        if t < self.t_min || t > self.t_max {
            return None;
        }
        self.rows.get(q).map(|r| r[(t - self.t_min) as usize])
    }

    pub fn twists(&self) -> RangeInclusive<i64> {
        self.t_min..=self.t_max
    }

    pub fn has_indeterminate(&self) -> bool {
        self.rows
            .iter()
            .flatten()
            .any(|d| matches!(d, CohomologyDim::Indeterminate { .. }))
    }

    /// Rows `q`, columns `t`, tab separated.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("q/t");
        for t in self.twists() {
            out.push_str(&format!("\t{t}"));
        }
        out.push('\n');
        for (q, row) in self.rows.iter().enumerate() {
            out.push_str(&q.to_string());
            for d in row {
                out.push_str(&format!("\t{d}"));
            }
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for CohomologyTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|d| d.to_string()).collect())
            .collect();
        let width = self
            .twists()
            .map(|t| t.to_string().len())
            .chain(cells.iter().flatten().map(String::len))
            .max()
            .unwrap_or(1);
        write!(f, "{:>4} |", "t")?;
        for t in self.twists() {
            write!(f, " {t:>width$}")?;
        }
        writeln!(f)?;
        for (q, row) in cells.iter().enumerate().rev() {
            write!(f, "{:>4} |", format!("h^{q}"))?;
            for c in row {
                write!(f, " {c:>width$}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Twists `[-max_twist - n - 1 - slack, -min_twist + slack]`.
pub fn default_twist_window<F: Field>(c: &LineComplex<F>, slack: i64) -> RangeInclusive<i64> {
    let n = c.n() as i64;
    let lo = -c.max_twist().unwrap_or(0) - n - 1 - slack;
    let hi = -c.min_twist().unwrap_or(0) + slack;
    lo..=hi
}

/// `h^q(E(t))` for the bundle presented by `p`, `0 ≤ q ≤ n`, `t` in `window`.
pub fn cohomology_table<F: Field>(
    p: &Presentation<F>,
    window: RangeInclusive<i64>,
) -> CohomologyTable {
    let h = Hypercohomology::new(p.complex());
    let n = p.n();
    let rows = (0..=n)
        .map(|q| window.clone().map(|t| h.dim(q as i64, t)).collect())
        .collect();
    CohomologyTable {
        label: p.label().to_string(),
        n,
        t_min: *window.start(),
        t_max: *window.end(),
        rows,
    }
}

/// Homological dimension with the cohomology entry proving the lower bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HdReport {
    pub hd: usize,
    /// `(q, t, h^q(E(t)))` with `n - q = hd`; absent when `hd = 0`.
    pub witness: Option<(usize, i64, usize)>,
    pub window: (i64, i64),
}

/// Homological dimension of the bundle presented by `p`: `n - q` for the
/// least `1 ≤ q ≤ n-1` with `H^q_*(E) ≠ 0`, and 0 when there is none.
///
/// A presentation of length `L` forces `H^q_*(E) = 0` for `q < n - L`, so
/// the search starts at `n - L` and the upper bound `hd ≤ L` is never
/// tested. Twists are scanned downward from the last one where the relevant
/// term still has top cohomology.
pub fn homological_dimension<F: Field>(
    p: &Presentation<F>,
    window: RangeInclusive<i64>,
) -> Result<HdReport> {
    let n = p.n();
    let len = p.length();
    let h = Hypercohomology::new(p.complex());
    let first_q = 1.max(n.saturating_sub(len));
    for q in first_q..n {
        let pos = q as i64 - n as i64;
        let top = p
            .term_at(pos)
            .and_then(|t| t.min_twist())
            .map_or(i64::MIN, |s| -s - n as i64 - 1);
        let hi = (*window.end()).min(top);
        for t in (*window.start()..=hi).rev() {
            match h.dim(q as i64, t) {
                CohomologyDim::Exact(0) => {}
                CohomologyDim::Exact(v) => {
                    return Ok(HdReport {
                        hd: n - q,
                        witness: Some((q, t, v)),
                        window: (*window.start(), *window.end()),
                    })
                }
                CohomologyDim::Indeterminate { .. } => {
                    return Err(Error::IndeterminateEntry { q, t })
                }
            }
        }
    }
    Ok(HdReport {
        hd: 0,
        witness: None,
        window: (*window.start(), *window.end()),
    })
}

/// Castelnuovo-Mumford regularity of the sheaf quasi-isomorphic to `c`:
/// the least `m` with `h^q(m - q) = 0` for all `q ≥ 1`.
///
/// Regularity is inherited upward, so the scan finds some regular `m`
/// and then walks down to the first value that is not.
pub fn cm_regularity<F: Field>(c: &LineComplex<F>) -> Result<i64> {
    const MAX_STEPS: i64 = 200;
    let n = c.n();
    let h = Hypercohomology::new(c);
    let regular = |m: i64| -> Result<bool> {
        for q in 1..=n {
            let t = m - q as i64;
            match h.dim(q as i64, t) {
                CohomologyDim::Exact(0) => {}
                CohomologyDim::Exact(_) => return Ok(false),
                CohomologyDim::Indeterminate { .. } => {
                    return Err(Error::IndeterminateEntry { q, t })
                }
            }
        }
        Ok(true)
    };
    let start = -c.min_twist().unwrap_or(0);
    let mut m = start;
    while !regular(m)? {
        m += 1;
        if m > start + MAX_STEPS {
            return Err(Error::PreconditionViolated(
                "no regular twist found; the complex may not resolve a sheaf".into(),
            ));
        }
    }
    let floor = m - MAX_STEPS;
    while regular(m - 1)? {
        m -= 1;
        if m < floor {
            return Err(Error::PreconditionViolated(
                "regularity unbounded below; the sheaf looks zero-dimensional or zero".into(),
            ));
        }
    }
    Ok(m)
}
