use super::{monomial_basis, monomial_index, Exponent, PolyRing};
use crate::arith::{Field, Matrix};
use crate::error::{Error, Result};

/// A homogeneous polynomial, stored densely against the grevlex basis of its
/// degree. Forms of negative degree exist only as zero and carry no
/// coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct Form<F: Field> {
    n: usize,
    field: F,
    degree: i64,
    coeffs: Vec<F::Elem>,
}

impl<F: Field> Form<F> {
    pub fn zero(ring: &PolyRing<F>, degree: i64) -> Self {
        Self {
            n: ring.n(),
            field: ring.field().clone(),
            degree,
            coeffs: vec![ring.field().zero(); ring.dim(degree)],
        }
    }

    pub fn one(ring: &PolyRing<F>) -> Self {
        Self::constant(ring, ring.field().one())
    }

    pub fn constant(ring: &PolyRing<F>, c: F::Elem) -> Self {
        Self {
            n: ring.n(),
            field: ring.field().clone(),
            degree: 0,
            coeffs: vec![c],
        }
    }

    pub fn from_dense(ring: &PolyRing<F>, degree: i64, coeffs: Vec<F::Elem>) -> Result<Self> {
        if coeffs.len() != ring.dim(degree) {
            return Err(Error::DimensionMismatch(format!(
                "{} coefficients for a degree {degree} form in {} variables",
                coeffs.len(),
                ring.vars()
            )));
        }
        Ok(Self {
            n: ring.n(),
            field: ring.field().clone(),
            degree,
            coeffs,
        })
    }

    /// Sum of `c * x^exp` terms; every exponent must have total degree `degree`.
    pub fn from_terms(
        ring: &PolyRing<F>,
        degree: i64,
        terms: impl IntoIterator<Item = (Exponent, F::Elem)>,
    ) -> Result<Self> {
        let mut out = Self::zero(ring, degree);
        let f = ring.field();
        for (exp, c) in terms {
            if exp.len() != ring.vars() {
                return Err(Error::DimensionMismatch(format!(
                    "exponent {exp:?} for {} variables",
                    ring.vars()
                )));
            }
            let d: i64 = exp.iter().map(|&e| e as i64).sum();
            if d != degree {
                return Err(Error::DimensionMismatch(format!(
                    "monomial {exp:?} has degree {d}, expected {degree}"
                )));
            }
            let i = monomial_index(&exp);
            out.coeffs[i] = f.add(&out.coeffs[i], &c);
        }
        Ok(out)
    }

    pub fn monomial(ring: &PolyRing<F>, exp: Exponent, c: F::Elem) -> Self {
        let degree = exp.iter().map(|&e| e as i64).sum();
        Self::from_terms(ring, degree, [(exp, c)]).expect("exponent fits the ring")
    }

    /// The variable `x_i`.
    pub fn var(ring: &PolyRing<F>, i: usize) -> Self {
        let mut exp = vec![0; ring.vars()];
        exp[i] = 1;
        Self::monomial(ring, exp, ring.field().one())
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| self.field.is_zero(c))
    }

    /// Nonzero terms in basis order.
    pub fn terms(&self) -> Vec<(Exponent, F::Elem)> {
        if self.degree < 0 {
            return Vec::new();
        }
        let basis = monomial_basis(self.n, self.degree as u32);
        basis
            .iter()
            .zip(&self.coeffs)
            .filter(|(_, c)| !self.field.is_zero(c))
            .map(|(e, c)| (e.clone(), c.clone()))
            .collect()
    }

    fn check_compatible(&self, other: &Self) {
        assert_eq!(self.n, other.n, "forms live in different rings");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_compatible(other);
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        assert_eq!(
            self.degree, other.degree,
            "adding forms of different degrees"
        );
        let f = &self.field;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| f.add(a, b))
            .collect();
        Self {
            coeffs,
            ..self.clone()
        }
    }

    pub fn neg(&self) -> Self {
        let f = &self.field;
        Self {
            coeffs: self.coeffs.iter().map(|a| f.neg(a)).collect(),
            ..self.clone()
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let f = &self.field;
        Self {
            coeffs: self.coeffs.iter().map(|a| f.mul(a, c)).collect(),
            ..self.clone()
        }
    }

    /// Product of forms. The result of a product involving a negative-degree
    /// (hence zero) form is the zero form of the summed degree.
    pub fn mul(&self, other: &Self) -> Self {
        self.check_compatible(other);
        let degree = self.degree + other.degree;
        let f = &self.field;
        let dim = super::dim_forms(self.n, degree);
        let mut coeffs = vec![f.zero(); dim];
        if self.degree >= 0 && other.degree >= 0 {
            let ta = self.terms();
            let tb = other.terms();
            let mut exp = vec![0u32; self.n + 1];
            for (ea, ca) in &ta {
                for (eb, cb) in &tb {
                    for v in 0..exp.len() {
                        exp[v] = ea[v] + eb[v];
                    }
                    let i = monomial_index(&exp);
                    coeffs[i] = f.add(&coeffs[i], &f.mul(ca, cb));
                }
            }
        }
        Self {
            n: self.n,
            field: f.clone(),
            degree,
            coeffs,
        }
    }

    /// Value at an affine representative of a point.
    pub fn eval(&self, point: &[F::Elem]) -> F::Elem {
        let f = &self.field;
        let mut acc = f.zero();
        if self.degree < 0 {
            return acc;
        }
        // Powers of each coordinate up to the degree.
        let mut powers: Vec<Vec<F::Elem>> = Vec::with_capacity(point.len());
        for x in point {
            let mut p = Vec::with_capacity(self.degree as usize + 1);
            p.push(f.one());
            for k in 0..self.degree as usize {
                p.push(f.mul(&p[k], x));
            }
            powers.push(p);
        }
        for (exp, c) in self.terms() {
            let mut term = c;
            for (v, &e) in exp.iter().enumerate() {
                term = f.mul(&term, &powers[v][e as usize]);
            }
            acc = f.add(&acc, &term);
        }
        acc
    }

    /// Matrix of `g -> self * g` from `R_d` to `R_{d+deg}`.
    pub fn mult_matrix(&self, d: i64) -> Matrix<F> {
        let rows = super::dim_forms(self.n, d + self.degree);
        let cols = super::dim_forms(self.n, d);
        let mut m = Matrix::zeros(self.field.clone(), rows, cols);
        self.write_mult_block(d, &mut m, 0, 0, false, false);
        m
    }

    /// Write the multiplication matrix from degree `d` into `m` at `(r0, c0)`,
    /// optionally transposed and negated.
    pub fn write_mult_block(
        &self,
        d: i64,
        m: &mut Matrix<F>,
        r0: usize,
        c0: usize,
        transpose: bool,
        negate: bool,
    ) {
        if d < 0 || self.degree < 0 || d + self.degree < 0 {
            return;
        }
        let f = &self.field;
        let terms: Vec<(Exponent, F::Elem)> = self
            .terms()
            .into_iter()
            .map(|(e, c)| (e, if negate { f.neg(&c) } else { c }))
            .collect();
        if terms.is_empty() {
            return;
        }
        let src = monomial_basis(self.n, d as u32);
        let mut exp = vec![0u32; self.n + 1];
        for (j, g) in src.iter().enumerate() {
            for (e, c) in &terms {
                for v in 0..exp.len() {
                    exp[v] = g[v] + e[v];
                }
                let i = monomial_index(&exp);
                let (r, col) = if transpose { (j, i) } else { (i, j) };
                m.set(r0 + r, c0 + col, c.clone());
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::PrimeField;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn ring(n: usize) -> PolyRing<PrimeField> {
        PolyRing::new(n, PrimeField::default_prime()).unwrap()
    }

    #[test]
    fn multiplying_by_one_is_identity() {
        let r = ring(2);
        let m = Form::one(&r).mult_matrix(3);
        assert_eq!(m, Matrix::identity(*r.field(), r.dim(3)));
    }

    #[test]
    fn multiplying_by_x0_on_the_line() {
        let r = ring(1);
        let m = Form::var(&r, 0).mult_matrix(1);
        // Basis of R_1: x0, x1; of R_2: x0^2, x0x1, x1^2.
        let expected =
            Matrix::from_i64_rows(*r.field(), &[vec![1, 0], vec![0, 1], vec![0, 0]]).unwrap();
        assert_eq!(m, expected);
    }

    #[test]
    fn zero_form_gives_zero_matrix() {
        let r = ring(3);
        assert!(Form::zero(&r, 2).mult_matrix(2).is_zero());
    }

    #[test]
    fn seeded_forms_are_reproducible() {
        let r = ring(3);
        let a = r.random_form(4, &mut ChaCha8Rng::seed_from_u64(9));
        let b = r.random_form(4, &mut ChaCha8Rng::seed_from_u64(9));
        let c = r.random_form(4, &mut ChaCha8Rng::seed_from_u64(10));
        assert_eq!(a, b);
        assert_eq!(a.degree(), 4);
        assert_ne!(a, c);
    }

    #[test]
    fn evaluation_respects_products() {
        let r = ring(2);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let f = r.random_form(2, &mut rng);
        let g = r.random_form(3, &mut rng);
        let pt = r.random_point(&mut rng);
        let fld = r.field();
        assert_eq!(f.mul(&g).eval(&pt), fld.mul(&f.eval(&pt), &g.eval(&pt)));
    }

    #[test]
    fn negative_degree_forms_are_zero() {
        let r = ring(2);
        let z = Form::zero(&r, -2);
        assert!(z.is_zero());
        assert!(z.coeffs().is_empty());
        assert_eq!(z.mul(&Form::var(&r, 0)).degree(), -1);
    }

    #[test]
    fn wrong_degree_terms_rejected() {
        let r = ring(1);
        assert!(Form::from_terms(&r, 2, [(vec![1, 0], 1u32)]).is_err());
    }

    proptest! {
        #[test]
        fn multiplication_matrices_compose(seed: u64, n in 1usize..4, df in 0i64..3, dg in 0i64..3, d in 0i64..3) {
            let r = ring(n);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let f = r.random_form(df, &mut rng);
            let g = r.random_form(dg, &mut rng);
            let lhs = f.mul(&g).mult_matrix(d);
            let rhs = f.mult_matrix(d + dg).product(&g.mult_matrix(d)).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn nonzero_forms_multiply_injectively(seed: u64, n in 1usize..4, e in 0i64..3, d in 0i64..4) {
            let r = ring(n);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let f = r.random_form(e, &mut rng);
            prop_assume!(!f.is_zero());
            prop_assert_eq!(f.mult_matrix(d).rank(), r.dim(d));
        }
    }
}
