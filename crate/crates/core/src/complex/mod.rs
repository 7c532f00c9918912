//! Bounded complexes of sums of line bundles on projective space.
//!
//! A map `O(s) -> O(t)` is a form of degree `t - s`; a [`FormMatrix`] is a
//! grid of such forms, row-major with rows indexed by the target.

mod checks;
mod maps;
mod serial;

pub use checks::{
    check_composition_zero, check_exactness_graded, default_exactness_window, ExactnessReport,
    PositionFailure,
};
pub(crate) use maps::point_to_i64;
pub use maps::{
    fiber_injective_at, hom_lift_kernel, hom_lift_space, lift_from_kernel, random_lift,
    splice_cokernel, DEFAULT_SAMPLE_POINTS,
};
pub use serial::{rational_to_json, PresentationJson, TermJson};

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Deref, RangeInclusive};

use serde::{Deserialize, Serialize};

use crate::arith::{Field, Matrix};
use crate::error::{Error, Result};
use crate::ring::{dim_forms, Form, PolyRing};

/// The sum of line bundles `⊕_k O(t_k)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LineTerm {
    pub twists: Vec<i64>,
}

impl LineTerm {
    pub fn new(twists: Vec<i64>) -> Self {
        Self { twists }
    }

    pub fn uniform(twist: i64, count: usize) -> Self {
        Self {
            twists: vec![twist; count],
        }
    }

    pub fn rank(&self) -> usize {
        self.twists.len()
    }

    pub fn is_empty(&self) -> bool {
        self.twists.is_empty()
    }

    pub fn twisted(&self, m: i64) -> Self {
        Self {
            twists: self.twists.iter().map(|t| t + m).collect(),
        }
    }

    pub fn dual(&self) -> Self {
        Self {
            twists: self.twists.iter().map(|t| -t).collect(),
        }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut twists = self.twists.clone();
        twists.extend_from_slice(&other.twists);
        Self { twists }
    }

    pub fn min_twist(&self) -> Option<i64> {
        self.twists.iter().copied().min()
    }

    pub fn max_twist(&self) -> Option<i64> {
        self.twists.iter().copied().max()
    }

    /// `h^0` of the term twisted by `u`.
    pub fn h0(&self, n: usize, u: i64) -> usize {
        self.twists.iter().map(|s| dim_forms(n, s + u)).sum()
    }

    /// `h^n` of the term twisted by `u`, by Serre duality.
    pub fn hn(&self, n: usize, u: i64) -> usize {
        self.twists
            .iter()
            .map(|s| dim_forms(n, -s - u - n as i64 - 1))
            .sum()
    }

    /// Block offsets of the degree-`u` sections, one per summand plus the total.
    pub fn h0_offsets(&self, n: usize, u: i64) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.rank() + 1);
        let mut acc = 0;
        out.push(0);
        for s in &self.twists {
            acc += dim_forms(n, s + u);
            out.push(acc);
        }
        out
    }

    /// Multiplicities of each twist, ascending.
    pub fn multiplicities(&self) -> Vec<(i64, usize)> {
        let mut m: BTreeMap<i64, usize> = BTreeMap::new();
        for &t in &self.twists {
            *m.entry(t).or_default() += 1;
        }
        m.into_iter().collect()
    }
}

impl fmt::Display for LineTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .multiplicities()
            .into_iter()
            .rev()
            .map(|(t, k)| {
                if k == 1 {
                    format!("O({t})")
                } else {
                    format!("O({t})^{k}")
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// A map between sums of line bundles given by a grid of forms.
#[derive(Clone, Debug, PartialEq)]
pub struct FormMatrix<F: Field> {
    ring: PolyRing<F>,
    source: LineTerm,
    target: LineTerm,
    entries: Vec<Form<F>>,
}

impl<F: Field> FormMatrix<F> {
    pub fn zero(ring: &PolyRing<F>, source: LineTerm, target: LineTerm) -> Self {
        let mut entries = Vec::with_capacity(source.rank() * target.rank());
        for t in &target.twists {
            for s in &source.twists {
                entries.push(Form::zero(ring, t - s));
            }
        }
        Self {
            ring: ring.clone(),
            source,
            target,
            entries,
        }
    }

    /// Build from a row-major grid, checking every degree.
    pub fn from_entries(
        ring: &PolyRing<F>,
        source: LineTerm,
        target: LineTerm,
        entries: Vec<Form<F>>,
    ) -> Result<Self> {
        if entries.len() != source.rank() * target.rank() {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {}x{} form matrix",
                entries.len(),
                target.rank(),
                source.rank()
            )));
        }
        let mut m = Self::zero(ring, source, target);
        for (k, e) in entries.into_iter().enumerate() {
            let (i, j) = (k / m.source.rank(), k % m.source.rank());
            m.set(i, j, e)?;
        }
        Ok(m)
    }

    pub fn ring(&self) -> &PolyRing<F> {
        &self.ring
    }
    pub fn source(&self) -> &LineTerm {
        &self.source
    }
    pub fn target(&self) -> &LineTerm {
        &self.target
    }
    pub fn entries(&self) -> &[Form<F>] {
        &self.entries
    }

    pub fn expected_degree(&self, i: usize, j: usize) -> i64 {
        self.target.twists[i] - self.source.twists[j]
    }

    pub fn get(&self, i: usize, j: usize) -> &Form<F> {
        &self.entries[i * self.source.rank() + j]
    }

    pub fn set(&mut self, i: usize, j: usize, form: Form<F>) -> Result<()> {
        let want = self.expected_degree(i, j);
        if form.n() != self.ring.n() {
            return Err(Error::DimensionMismatch(format!(
                "entry ({i},{j}) lives in a ring with {} variables",
                form.n() + 1
            )));
        }
        let form = if form.degree() == want {
            form
        } else if form.is_zero() {
            Form::zero(&self.ring, want)
        } else {
            return Err(Error::DimensionMismatch(format!(
                "entry ({i},{j}) has degree {}, a map O({}) -> O({}) needs degree {want}",
                form.degree(),
                self.source.twists[j],
                self.target.twists[i]
            )));
        };
        let cols = self.source.rank();
        self.entries[i * cols + j] = form;
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Form::is_zero)
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if inner.target != self.source {
            return Err(Error::DimensionMismatch(format!(
                "cannot compose {} -> {} after {} -> {}",
                self.source, self.target, inner.source, inner.target
            )));
        }
        let mut out = Self::zero(&self.ring, inner.source.clone(), self.target.clone());
        for i in 0..self.target.rank() {
            for j in 0..inner.source.rank() {
                let mut acc = Form::zero(&self.ring, out.expected_degree(i, j));
                for k in 0..self.source.rank() {
                    let (a, b) = (self.get(i, k), inner.get(k, j));
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    acc = acc.add(&a.mul(b));
                }
                out.set(i, j, acc)?;
            }
        }
        Ok(out)
    }

    /// The dual map `target^* -> source^*`: same forms, transposed grid.
    pub fn dual(&self) -> Self {
        let (r, c) = (self.target.rank(), self.source.rank());
        let mut entries = Vec::with_capacity(r * c);
        for j in 0..c {
            for i in 0..r {
                entries.push(self.get(i, j).clone());
            }
        }
        Self {
            ring: self.ring.clone(),
            source: self.target.dual(),
            target: self.source.dual(),
            entries,
        }
    }

    pub fn twisted(&self, m: i64) -> Self {
        Self {
            ring: self.ring.clone(),
            source: self.source.twisted(m),
            target: self.target.twisted(m),
            entries: self.entries.clone(),
        }
    }

    pub fn scaled(&self, c: &F::Elem) -> Self {
        Self {
            entries: self.entries.iter().map(|e| e.scale(c)).collect(),
            ..self.clone()
        }
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let source = self.source.direct_sum(&other.source);
        let target = self.target.direct_sum(&other.target);
        let mut out = Self::zero(&self.ring, source, target);
        let (r1, c1) = (self.target.rank(), self.source.rank());
        for i in 0..r1 {
            for j in 0..c1 {
                out.entries[i * out.source.rank() + j] = self.get(i, j).clone();
            }
        }
        for i in 0..other.target.rank() {
            for j in 0..other.source.rank() {
                out.entries[(r1 + i) * out.source.rank() + c1 + j] = other.get(i, j).clone();
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::DimensionMismatch(
                "adding maps with different shapes".into(),
            ));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.add(b))
            .collect();
        Ok(Self {
            entries,
            ..self.clone()
        })
    }

    /// Fiber of the map at a point: the field matrix of entry values.
    pub fn eval(&self, point: &[F::Elem]) -> Matrix<F> {
        let data = self.entries.iter().map(|e| e.eval(point)).collect();
        Matrix::new(
            self.ring.field().clone(),
            self.target.rank(),
            self.source.rank(),
            data,
        )
        .expect("entry count matches shape")
    }

    /// The induced map on global sections of the twist by `u`:
    /// `⊕_j R_{s_j+u} -> ⊕_i R_{t_i+u}`.
    pub fn section_matrix(&self, u: i64) -> Matrix<F> {
        let n = self.ring.n();
        let ro = self.target.h0_offsets(n, u);
        let co = self.source.h0_offsets(n, u);
        let mut m = Matrix::zeros(
            self.ring.field().clone(),
            *ro.last().unwrap(),
            *co.last().unwrap(),
        );
        for i in 0..self.target.rank() {
            if ro[i + 1] == ro[i] {
                continue;
            }
            for j in 0..self.source.rank() {
                if co[j + 1] == co[j] {
                    continue;
                }
                self.get(i, j).write_mult_block(
                    self.source.twists[j] + u,
                    &mut m,
                    ro[i],
                    co[j],
                    false,
                    false,
                );
            }
        }
        m
    }

    /// A matrix whose rank is that of the induced map on `H^n` of the twist
    /// by `u`: by Serre duality it is the section map of the dual at
    /// `-u-n-1`.
    pub fn top_matrix(&self, u: i64) -> Matrix<F> {
        self.dual().section_matrix(-u - self.ring.n() as i64 - 1)
    }
}

/// A bounded complex `C^start -> ... -> C^end` of sums of line bundles.
#[derive(Clone, Debug, PartialEq)]
pub struct LineComplex<F: Field> {
    ring: PolyRing<F>,
    start: i64,
    terms: Vec<LineTerm>,
    diffs: Vec<FormMatrix<F>>,
}

impl<F: Field> LineComplex<F> {
    /// `terms[k]` sits at position `start + k`; `diffs[k]: terms[k] -> terms[k+1]`.
    pub fn new(
        ring: &PolyRing<F>,
        start: i64,
        terms: Vec<LineTerm>,
        diffs: Vec<FormMatrix<F>>,
    ) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::InvalidArgument(
                "a complex needs at least one term".into(),
            ));
        }
        if diffs.len() + 1 != terms.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} terms need {} differentials, got {}",
                terms.len(),
                terms.len() - 1,
                diffs.len()
            )));
        }
        for (k, d) in diffs.iter().enumerate() {
            if d.source != terms[k] || d.target != terms[k + 1] {
                return Err(Error::DimensionMismatch(format!(
                    "differential {k} maps {} -> {}, terms are {} and {}",
                    d.source,
                    d.target,
                    terms[k],
                    terms[k + 1]
                )));
            }
            if d.ring.n() != ring.n() {
                return Err(Error::DimensionMismatch(format!(
                    "differential {k} uses another ring"
                )));
            }
        }
        Ok(Self {
            ring: ring.clone(),
            start,
            terms,
            diffs,
        })
    }

    pub fn ring(&self) -> &PolyRing<F> {
        &self.ring
    }
    pub fn n(&self) -> usize {
        self.ring.n()
    }
    pub fn start(&self) -> i64 {
        self.start
    }
    pub fn end(&self) -> i64 {
        self.start + self.terms.len() as i64 - 1
    }
    pub fn positions(&self) -> RangeInclusive<i64> {
        self.start..=self.end()
    }
    pub fn terms(&self) -> &[LineTerm] {
        &self.terms
    }
    pub fn diffs(&self) -> &[FormMatrix<F>] {
        &self.diffs
    }

    pub fn term_at(&self, pos: i64) -> Option<&LineTerm> {
        if pos < self.start || pos > self.end() {
            None
        } else {
            Some(&self.terms[(pos - self.start) as usize])
        }
    }

    /// Differential leaving position `pos`.
    pub fn diff_from(&self, pos: i64) -> Option<&FormMatrix<F>> {
        if pos < self.start || pos >= self.end() {
            None
        } else {
            Some(&self.diffs[(pos - self.start) as usize])
        }
    }

    pub fn min_twist(&self) -> Option<i64> {
        self.terms.iter().filter_map(LineTerm::min_twist).min()
    }

    pub fn max_twist(&self) -> Option<i64> {
        self.terms.iter().filter_map(LineTerm::max_twist).max()
    }

    pub fn twisted(&self, m: i64) -> Self {
        Self {
            ring: self.ring.clone(),
            start: self.start,
            terms: self.terms.iter().map(|t| t.twisted(m)).collect(),
            diffs: self.diffs.iter().map(|d| d.twisted(m)).collect(),
        }
    }

    /// Shift positions by `k` (the complex `C[−k]` in cohomological indexing).
    pub fn shifted(&self, k: i64) -> Self {
        Self {
            start: self.start + k,
            ..self.clone()
        }
    }

    /// The dual complex: the term at position `p` moves to `-p` with twists
    /// negated, and differentials are transposed.
    pub fn dual(&self) -> Self {
        let terms = self.terms.iter().rev().map(LineTerm::dual).collect();
        let diffs = self.diffs.iter().rev().map(FormMatrix::dual).collect();
        Self {
            ring: self.ring.clone(),
            start: -self.end(),
            terms,
            diffs,
        }
    }

    /// Termwise direct sum; positions must agree.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.positions() != other.positions() {
            return Err(Error::DimensionMismatch(
                "direct sum of complexes over different positions".into(),
            ));
        }
        let terms = self
            .terms
            .iter()
            .zip(&other.terms)
            .map(|(a, b)| a.direct_sum(b))
            .collect();
        let diffs = self
            .diffs
            .iter()
            .zip(&other.diffs)
            .map(|(a, b)| a.direct_sum(b))
            .collect();
        Self::new(&self.ring, self.start, terms, diffs)
    }

    /// Alternating sum of ranks, `Σ_p (-1)^p rank C^p`.
    pub fn euler_rank(&self) -> i64 {
        self.positions()
            .map(|p| sign(p) * self.term_at(p).unwrap().rank() as i64)
            .sum()
    }

    /// Euler characteristic of the twist by `u` from Bott's formula on each
    /// term: `Σ_p (-1)^p Σ_s χ(O(s+u))`.
    pub fn euler_characteristic(&self, u: i64) -> i64 {
        let n = self.n();
        self.positions()
            .map(|p| {
                let t = self.term_at(p).unwrap();
                let chi: i64 = t
                    .twists
                    .iter()
                    .map(|s| {
                        let k = s + u;
                        dim_forms(n, k) as i64
                            + sign(n as i64) * dim_forms(n, -k - n as i64 - 1) as i64
                    })
                    .sum();
                sign(p) * chi
            })
            .sum()
    }

    /// Twist multiplicities per position, left to right.
    pub fn betti(&self) -> BettiTable {
        BettiTable {
            start: self.start,
            columns: self.terms.iter().map(LineTerm::multiplicities).collect(),
        }
    }
}

pub(crate) fn sign(p: i64) -> i64 {
    if p.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Twists and multiplicities of each term of a complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiTable {
    pub start: i64,
    pub columns: Vec<Vec<(i64, usize)>>,
}

impl BettiTable {
    pub fn ranks(&self) -> Vec<usize> {
        self.columns
            .iter()
            .map(|c| c.iter().map(|(_, k)| k).sum())
            .collect()
    }

    /// Whether dualizing and twisting by `-shift` gives back the same table
    /// (up to the shift of positions).
    pub fn is_self_dual(&self, shift: i64) -> bool {
        let flipped: Vec<Vec<(i64, usize)>> = self
            .columns
            .iter()
            .rev()
            .map(|c| {
                let mut v: Vec<(i64, usize)> = c.iter().map(|&(t, k)| (-t - shift, k)).collect();
                v.sort();
                v
            })
            .collect();
        flipped == self.columns
    }
}

impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, col) in self.columns.iter().enumerate() {
            let term = LineTerm::new(
                col.iter()
                    .flat_map(|&(t, m)| std::iter::repeat_n(t, m))
                    .collect(),
            );
            writeln!(f, "{:>4}: {}", self.start + k as i64, term)?;
        }
        Ok(())
    }
}

/// A complex `C^{-L} -> ... -> C^0` presenting `E = coker(C^{-1} -> C^0)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Presentation<F: Field> {
    complex: LineComplex<F>,
    label: String,
}

impl<F: Field> Deref for Presentation<F> {
    type Target = LineComplex<F>;
    fn deref(&self) -> &LineComplex<F> {
        &self.complex
    }
}

impl<F: Field> Presentation<F> {
    /// `terms` run from `C^{-L}` to `C^0`.
    pub fn new(
        ring: &PolyRing<F>,
        terms: Vec<LineTerm>,
        diffs: Vec<FormMatrix<F>>,
        label: impl Into<String>,
    ) -> Result<Self> {
        let start = -(terms.len() as i64) + 1;
        Ok(Self {
            complex: LineComplex::new(ring, start, terms, diffs)?,
            label: label.into(),
        })
    }

    pub fn from_complex(complex: LineComplex<F>, label: impl Into<String>) -> Result<Self> {
        if complex.end() != 0 {
            return Err(Error::InvalidArgument(format!(
                "a presentation ends at position 0, this complex ends at {}",
                complex.end()
            )));
        }
        Ok(Self {
            complex,
            label: label.into(),
        })
    }

    /// The split bundle `⊕ O(t)` with no differentials.
    pub fn split(ring: &PolyRing<F>, twists: Vec<i64>) -> Self {
        let term = LineTerm::new(twists);
        let label = term.to_string();
        Self::new(ring, vec![term], Vec::new(), label).expect("single term is well formed")
    }

    pub fn line_bundle(ring: &PolyRing<F>, a: i64) -> Self {
        Self::split(ring, vec![a])
    }

    pub fn complex(&self) -> &LineComplex<F> {
        &self.complex
    }

    pub fn into_complex(self) -> LineComplex<F> {
        self.complex
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// Length `L` of the presentation.
    pub fn length(&self) -> usize {
        self.complex.terms.len() - 1
    }

    /// `C^0`.
    pub fn top(&self) -> &LineTerm {
        self.complex.terms.last().unwrap()
    }

    /// `d^{-1}: C^{-1} -> C^0`, absent for split bundles.
    pub fn last_diff(&self) -> Option<&FormMatrix<F>> {
        self.complex.diffs.last()
    }

    /// Rank of the presented sheaf.
    pub fn rank(&self) -> i64 {
        self.complex.euler_rank()
    }

    pub fn twisted(&self, m: i64) -> Self {
        Self {
            complex: self.complex.twisted(m),
            label: if m == 0 {
                self.label.clone()
            } else {
                format!("({})({m})", self.label)
            },
        }
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        // Pad the shorter presentation with empty terms on the left.
        let len = self.length().max(other.length());
        let a = self.padded(len);
        let b = other.padded(len);
        Ok(Self {
            complex: a.direct_sum(&b)?,
            label: format!("{} + {}", self.label, other.label),
        })
    }

    fn padded(&self, len: usize) -> LineComplex<F> {
        let extra = len - self.length();
        let mut terms = vec![LineTerm::default(); extra];
        terms.extend(self.complex.terms.iter().cloned());
        let mut diffs = Vec::new();
        for k in 0..extra {
            diffs.push(FormMatrix::zero(
                &self.complex.ring,
                LineTerm::default(),
                terms[k + 1].clone(),
            ));
        }
        diffs.extend(self.complex.diffs.iter().cloned());
        LineComplex::new(&self.complex.ring, -(len as i64), terms, diffs)
            .expect("padding keeps shapes consistent")
    }

    /// Drop empty terms on the left.
    pub fn trimmed(&self) -> Self {
        let skip = self
            .complex
            .terms
            .iter()
            .take(self.complex.terms.len() - 1)
            .take_while(|t| t.is_empty())
            .count();
        if skip == 0 {
            return self.clone();
        }
        let terms = self.complex.terms[skip..].to_vec();
        let diffs = self.complex.diffs[skip..].to_vec();
        Self::new(&self.complex.ring, terms, diffs, self.label.clone())
            .expect("trimming keeps shapes consistent")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::PrimeField;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn ring(n: usize) -> PolyRing<PrimeField> {
        PolyRing::new(n, PrimeField::default_prime()).unwrap()
    }

    fn euler_presentation(n: usize) -> Presentation<PrimeField> {
        let r = ring(n);
        let vars: Vec<Form<PrimeField>> = (0..=n).map(|i| Form::var(&r, i)).collect();
        let d = FormMatrix::from_entries(
            &r,
            LineTerm::uniform(-1, 1),
            LineTerm::uniform(0, n + 1),
            vars,
        )
        .unwrap();
        Presentation::new(
            &r,
            vec![LineTerm::uniform(-1, 1), LineTerm::uniform(0, n + 1)],
            vec![d],
            "euler",
        )
        .unwrap()
    }

    #[test]
    fn wrong_degree_entry_rejected() {
        let r = ring(2);
        let mut m = FormMatrix::zero(&r, LineTerm::uniform(-1, 1), LineTerm::uniform(0, 1));
        assert!(m.set(0, 0, Form::one(&r)).is_err());
        assert!(m.set(0, 0, Form::var(&r, 1)).is_ok());
    }

    #[test]
    fn dual_is_an_involution() {
        let p = euler_presentation(2);
        assert_eq!(p.complex().dual().dual(), *p.complex());
        let single = Presentation::line_bundle(&ring(2), 3);
        assert_eq!(single.complex().dual().terms()[0], LineTerm::new(vec![-3]));
    }

    #[test]
    fn twist_round_trip() {
        let p = euler_presentation(3);
        assert_eq!(p.twisted(0), p);
        assert_eq!(p.complex().twisted(4).twisted(-4), *p.complex());
    }

    #[test]
    fn euler_characteristic_of_line_bundle_is_riemann_roch() {
        let r = ring(3);
        let p = Presentation::line_bundle(&r, 2);
        for m in -10..6 {
            // χ(O(k)) on P^3 is the polynomial (k+1)(k+2)(k+3)/6.
            let k = 2 + m;
            let rr = (k + 1) * (k + 2) * (k + 3) / 6;
            assert_eq!(p.euler_characteristic(m), rr);
        }
    }

    #[test]
    fn rank_is_alternating_sum() {
        assert_eq!(euler_presentation(2).rank(), 2);
        assert_eq!(euler_presentation(4).rank(), 4);
    }

    #[test]
    fn section_matrix_of_euler_map() {
        let p = euler_presentation(2);
        let m = p.last_diff().unwrap().section_matrix(1);
        // R_0 -> R_1^3, the column (x0, x1, x2).
        assert_eq!((m.rows(), m.cols()), (9, 1));
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn compose_and_direct_sum() {
        let r = ring(2);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let a = FormMatrix::from_entries(
            &r,
            LineTerm::new(vec![-2]),
            LineTerm::new(vec![-1, 0]),
            vec![r.random_form(1, &mut rng), r.random_form(2, &mut rng)],
        )
        .unwrap();
        let b = FormMatrix::from_entries(
            &r,
            LineTerm::new(vec![-1, 0]),
            LineTerm::new(vec![1]),
            vec![r.random_form(2, &mut rng), r.random_form(1, &mut rng)],
        )
        .unwrap();
        let ba = b.compose(&a).unwrap();
        assert_eq!(ba.get(0, 0).degree(), 3);
        assert!(a.compose(&b).is_err());
        let s = a.direct_sum(&b);
        assert_eq!(s.source().rank(), 3);
        assert_eq!(s.target().rank(), 3);
    }

    #[test]
    fn betti_self_duality() {
        let p = euler_presentation(2);
        assert!(!p.betti().is_self_dual(1));
        let b = BettiTable {
            start: -2,
            columns: vec![vec![(-3, 1)], vec![(-2, 3)], vec![(-1, 3)], vec![(0, 1)]],
        };
        assert!(b.is_self_dual(3));
    }

    #[test]
    fn direct_sum_pads_shorter_presentation() {
        let r = ring(2);
        let p = euler_presentation(2);
        let q = Presentation::line_bundle(&r, 0);
        let s = p.direct_sum(&q).unwrap();
        assert_eq!(s.length(), 1);
        assert_eq!(s.rank(), 3);
        assert_eq!(s.top().rank(), 4);
    }
}
