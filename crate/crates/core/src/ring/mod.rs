//! The graded polynomial ring k[x_0, ..., x_n].
//!
//! Graded pieces are indexed by grevlex monomial bases. Forms are stored
//! densely against those bases.

mod form;

pub use form::Form;

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::arith::{Field, FieldDesc, Matrix};
use crate::error::{Error, Result};

/// Exponent vector of a monomial, one entry per variable.
pub type Exponent = Vec<u32>;

/// Descriptor of the ring: projective dimension `n` (so `n + 1` variables)
/// and base field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RingDesc {
    pub n: usize,
    pub field: FieldDesc,
}

pub fn binomial(n: i64, k: i64) -> u64 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k) as u64;
    let n = n as u64;
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Dimension of the degree-`d` piece of a polynomial ring in `n + 1` variables.
pub fn dim_forms(n: usize, d: i64) -> usize {
    if d < 0 {
        0
    } else {
        binomial(n as i64 + d, n as i64) as usize
    }
}

/// Position of `exp` in [`monomial_basis`] of its degree.
pub fn monomial_index(exp: &[u32]) -> usize {
    let mut idx = 0usize;
    let mut deg: i64 = exp.iter().map(|&e| e as i64).sum();
    for v in (1..exp.len()).rev() {
        let e = exp[v] as i64;
        // Monomials with a smaller power of x_v come first.
        for j in 0..e {
            idx += dim_forms(v - 1, deg - j);
        }
        deg -= e;
    }
    idx
}

type BasisCache = RwLock<HashMap<(usize, u32), Arc<Vec<Exponent>>>>;

fn basis_cache() -> &'static BasisCache {
    static CACHE: OnceLock<BasisCache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Degree-`d` monomials in `n + 1` variables in grevlex order, first `x_0^d`.
pub fn monomial_basis(n: usize, d: u32) -> Arc<Vec<Exponent>> {
    if let Some(b) = basis_cache().read().expect("basis cache").get(&(n, d)) {
        return Arc::clone(b);
    }
    let mut out = Vec::with_capacity(dim_forms(n, d as i64));
    enumerate(n, d, &mut vec![0; n + 1], &mut out);
    let out = Arc::new(out);
    basis_cache()
        .write()
        .expect("basis cache")
        .insert((n, d), Arc::clone(&out));
    out
}

fn enumerate(v: usize, d: u32, cur: &mut Exponent, out: &mut Vec<Exponent>) {
    if v == 0 {
        cur[0] = d;
        out.push(cur.clone());
        cur[0] = 0;
        return;
    }
    for e in 0..=d {
        cur[v] = e;
        enumerate(v - 1, d - e, cur, out);
    }
    cur[v] = 0;
}

/// Coefficient of `z^k` in `(1 - z^d)^count / (1 - z)^(n+1)`: the Hilbert
/// function of a complete intersection of `count` forms of degree `d`.
pub fn complete_intersection_hilbert(n: usize, d: u32, count: usize, k: i64) -> i64 {
    (0..=count as i64)
        .map(|j| {
            let sign = if j % 2 == 0 { 1 } else { -1 };
            sign * binomial(count as i64, j) as i64 * dim_forms(n, k - j * d as i64) as i64
        })
        .sum()
}

/// The polynomial ring over a concrete field.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyRing<F: Field> {
    n: usize,
    field: F,
}

impl<F: Field> PolyRing<F> {
    pub fn new(n: usize, field: F) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidArgument(
                "projective dimension must be at least 1".into(),
            ));
        }
        Ok(Self { n, field })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vars(&self) -> usize {
        self.n + 1
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn desc(&self) -> RingDesc {
        RingDesc {
            n: self.n,
            field: self.field.desc(),
        }
    }

    pub fn dim(&self, d: i64) -> usize {
        dim_forms(self.n, d)
    }

    pub fn basis(&self, d: u32) -> Arc<Vec<Exponent>> {
        monomial_basis(self.n, d)
    }

    pub fn random_form<R: Rng + ?Sized>(&self, d: i64, rng: &mut R) -> Form<F> {
        let coeffs = (0..self.dim(d)).map(|_| self.field.random(rng)).collect();
        Form::from_dense(self, d, coeffs).expect("coefficient count matches")
    }

    /// Multiplication by `forms` (all of degree `d`) from `R_{k-d}^count` to `R_k`.
    fn ideal_piece(&self, forms: &[Form<F>], d: u32, k: i64) -> Matrix<F> {
        let src = self.dim(k - d as i64);
        let mut m = Matrix::zeros(self.field.clone(), self.dim(k), src * forms.len());
        for (j, f) in forms.iter().enumerate() {
            f.write_mult_block(k - d as i64, &mut m, 0, j * src, false, false);
        }
        m
    }

    /// Whether `forms` (all of degree `d`) have the Hilbert function of a
    /// complete intersection in every degree up to `count * d`.
    pub fn is_regular_sequence(&self, forms: &[Form<F>], d: u32) -> bool {
        let count = forms.len();
        (0..=(count as i64 * d as i64)).all(|k| {
            let quotient = self.dim(k) as i64 - self.ideal_piece(forms, d, k).rank() as i64;
            quotient == complete_intersection_hilbert(self.n, d, count, k)
        })
    }

    /// `count` random forms of degree `d`, certified regular by comparing
    /// Hilbert functions. Resamples up to [`Self::REGULAR_RETRIES`] times.
    pub fn random_regular_sequence<R: Rng + ?Sized>(
        &self,
        d: u32,
        count: usize,
        rng: &mut R,
    ) -> Result<Vec<Form<F>>> {
        if count > self.n + 1 {
            return Err(Error::InvalidArgument(format!(
                "a regular sequence in {} variables has at most {} elements, asked for {count}",
                self.vars(),
                self.vars()
            )));
        }
        if d == 0 {
            return Err(Error::InvalidArgument(
                "regular sequences need positive degree".into(),
            ));
        }
        for _ in 0..Self::REGULAR_RETRIES {
            let forms: Vec<Form<F>> = (0..count)
                .map(|_| self.random_form(d as i64, rng))
                .collect();
            if self.is_regular_sequence(&forms, d) {
                return Ok(forms);
            }
        }
        Err(Error::RetriesExhausted {
            attempts: Self::REGULAR_RETRIES,
        })
    }

    pub const REGULAR_RETRIES: usize = 5;

    /// A uniformly random point of affine (n+1)-space, used as a sample of
    /// projective space; the zero vector is resampled.
    pub fn random_point<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<F::Elem> {
        loop {
            let p: Vec<F::Elem> = (0..self.vars()).map(|_| self.field.random(rng)).collect();
            if p.iter().any(|x| !self.field.is_zero(x)) {
                return p;
            }
        }
    }
}
