use rand::Rng;

use super::left_truncations;
use crate::arith::Field;
use crate::complex::{FormMatrix, LineComplex, LineTerm, Presentation};
use crate::error::{Error, Result};
use crate::ring::{Form, PolyRing};

/// `n+1` forms of degree `d` forming a regular sequence.
#[derive(Clone, Debug)]
pub struct KoszulSpec<F: Field> {
    ring: PolyRing<F>,
    d: u32,
    forms: Vec<Form<F>>,
}

impl<F: Field> KoszulSpec<F> {
    pub fn new(ring: &PolyRing<F>, d: u32, forms: Vec<Form<F>>) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidArgument(
                "Koszul forms need positive degree".into(),
            ));
        }
        if forms.len() != ring.vars() {
            return Err(Error::InvalidArgument(format!(
                "need {} forms, got {}",
                ring.vars(),
                forms.len()
            )));
        }
        if let Some(f) = forms.iter().find(|f| f.degree() != d as i64) {
            return Err(Error::InvalidArgument(format!(
                "form of degree {} in a degree {d} sequence",
                f.degree()
            )));
        }
        if !ring.is_regular_sequence(&forms, d) {
            return Err(Error::PreconditionViolated(
                "forms are not a regular sequence".into(),
            ));
        }
        Ok(Self {
            ring: ring.clone(),
            d,
            forms,
        })
    }

    pub fn random<R: Rng + ?Sized>(ring: &PolyRing<F>, d: u32, rng: &mut R) -> Result<Self> {
        let forms = ring.random_regular_sequence(d, ring.vars(), rng)?;
        Ok(Self {
            ring: ring.clone(),
            d,
            forms,
        })
    }

    pub fn ring(&self) -> &PolyRing<F> {
        &self.ring
    }
    pub fn degree(&self) -> u32 {
        self.d
    }
    pub fn forms(&self) -> &[Form<F>] {
        &self.forms
    }
}

/// `k`-subsets of `0..m` in lexicographic order.
fn subsets(m: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            if m - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, m, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, m, k, &mut Vec::with_capacity(k), &mut out);
    out
}

/// The Koszul complex `0 -> O(-(n+1)d) -> ... -> O(-d)^{n+1} -> O -> 0`
/// at positions `-(n+1)..=0`.
///
/// The term at position `-k` has one summand per `k`-subset `S` of the
/// forms (lex order), and `e_S ↦ Σ_j (-1)^{index of j in S} f_j e_{S∖j}`.
pub fn koszul_complex<F: Field>(spec: &KoszulSpec<F>) -> LineComplex<F> {
    let ring = &spec.ring;
    let m = ring.vars();
    let d = spec.d as i64;
    let field = ring.field();
    let by_size: Vec<Vec<Vec<usize>>> = (0..=m).map(|k| subsets(m, k)).collect();
    let terms: Vec<LineTerm> = (0..=m)
        .rev()
        .map(|k| LineTerm::uniform(-(k as i64) * d, by_size[k].len()))
        .collect();
    let mut diffs = Vec::with_capacity(m);
    for k in (1..=m).rev() {
        let (src, tgt) = (&by_size[k], &by_size[k - 1]);
        let mut mat = FormMatrix::zero(
            ring,
            LineTerm::uniform(-(k as i64) * d, src.len()),
            LineTerm::uniform(-(k as i64 - 1) * d, tgt.len()),
        );
        for (col, s) in src.iter().enumerate() {
            for (idx, &j) in s.iter().enumerate() {
                let rest: Vec<usize> = s.iter().copied().filter(|&x| x != j).collect();
                let row = tgt.binary_search(&rest).expect("lex order");
                let f = &spec.forms[j];
                let entry = if idx % 2 == 0 {
                    f.clone()
                } else {
                    f.scale(&field.from_i64(-1))
                };
                mat.set(row, col, entry)
                    .expect("Koszul entries have degree d");
            }
        }
        diffs.push(mat);
    }
    LineComplex::new(ring, -(m as i64), terms, diffs).expect("Koszul shapes are consistent")
}

/// The Koszul complex and its syzygy bundles `F_1, …, F_{n-1}`.
#[derive(Clone, Debug)]
pub struct KoszulResolution<F: Field> {
    pub complex: LineComplex<F>,
    pub syzygies: Vec<Presentation<F>>,
}

pub fn koszul_presentation<F: Field>(spec: &KoszulSpec<F>) -> Result<KoszulResolution<F>> {
    let complex = koszul_complex(spec);
    let n = spec.ring.n();
    let syzygies = left_truncations(&complex, n - 1, "F")?;
    Ok(KoszulResolution { complex, syzygies })
}
