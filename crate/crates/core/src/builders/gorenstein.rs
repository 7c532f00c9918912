use rand::Rng;

use super::syzygy_map;
use crate::arith::{Field, Matrix};
use crate::complex::{FormMatrix, LineComplex, LineTerm, Presentation};
use crate::error::{Error, Result};
use crate::ring::{binomial, dim_forms, monomial_index, Form, PolyRing};

/// Number of summands `α_i` in the `i`-th term of the resolution of a
/// compressed Gorenstein algebra with socle degree `2t`, `1 ≤ i ≤ n`.
pub fn betti_alpha(n: usize, t: usize, i: usize) -> usize {
    assert!(
        (1..=n).contains(&i),
        "betti_alpha index {i} outside 1..={n}"
    );
    let (n, t, i) = (n as i64, t as i64, i as i64);
    let b = |a: i64, k: i64| binomial(a, k) as i128;
    let v =
        b(t + i - 1, i - 1) * b(t + n + 1, n + 1 - i) - b(t + n - i, n + 1 - i) * b(t + n, i - 1);
    v as usize
}

/// Generators of degree `t+1` of an ideal whose quotient is a compressed
/// Gorenstein algebra of socle degree `2t`.
#[derive(Clone, Debug)]
pub struct GorensteinSpec<F: Field> {
    ring: PolyRing<F>,
    t: usize,
    generators: Vec<Form<F>>,
}

impl<F: Field> GorensteinSpec<F> {
    pub const RETRIES: usize = 5;

    pub fn new(ring: &PolyRing<F>, t: usize, generators: Vec<Form<F>>) -> Result<Self> {
        if t == 0 {
            return Err(Error::InvalidArgument(
                "socle degree 2t needs t >= 1".into(),
            ));
        }
        let expected = betti_alpha(ring.n(), t, 1);
        if generators.len() != expected {
            return Err(Error::InvalidArgument(format!(
                "need {expected} generators, got {}",
                generators.len()
            )));
        }
        if let Some(g) = generators.iter().find(|g| g.degree() != t as i64 + 1) {
            return Err(Error::InvalidArgument(format!(
                "generator of degree {}, expected {}",
                g.degree(),
                t + 1
            )));
        }
        let spec = Self {
            ring: ring.clone(),
            t,
            generators,
        };
        if spec.hilbert_function() != compressed_hilbert(ring.n(), t) {
            return Err(Error::PreconditionViolated(
                "quotient does not have the compressed Hilbert function".into(),
            ));
        }
        Ok(spec)
    }

    /// The degree `t+1` part of the annihilator of a random form of degree
    /// `2t` under contraction.
    pub fn random<R: Rng + ?Sized>(ring: &PolyRing<F>, t: usize, rng: &mut R) -> Result<Self> {
        if t == 0 {
            return Err(Error::InvalidArgument(
                "socle degree 2t needs t >= 1".into(),
            ));
        }
        let f = ring.field();
        let (top, hi, lo) = (2 * t as u32, t as u32 + 1, t as u32 - 1);
        for _ in 0..Self::RETRIES {
            let dual: Vec<F::Elem> = (0..ring.dim(top as i64)).map(|_| f.random(rng)).collect();
            let cols = ring.basis(hi);
            let rows = ring.basis(lo);
            let mut cat = Matrix::zeros(f.clone(), rows.len(), cols.len());
            for (r, e) in rows.iter().enumerate() {
                for (c, a) in cols.iter().enumerate() {
                    let sum: Vec<u32> = a.iter().zip(e).map(|(x, y)| x + y).collect();
                    cat.set(r, c, dual[monomial_index(&sum)].clone());
                }
            }
            let kernel = cat.kernel_basis();
            let generators: Vec<Form<F>> = (0..kernel.cols())
                .map(|c| Form::from_dense(ring, hi as i64, kernel.column(c)))
                .collect::<Result<_>>()?;
            if let Ok(spec) = Self::new(ring, t, generators) {
                return Ok(spec);
            }
        }
        Err(Error::RetriesExhausted {
            attempts: Self::RETRIES,
        })
    }

    pub fn ring(&self) -> &PolyRing<F> {
        &self.ring
    }
    pub fn t(&self) -> usize {
        self.t
    }
    pub fn generators(&self) -> &[Form<F>] {
        &self.generators
    }

    fn generator_map(&self) -> FormMatrix<F> {
        FormMatrix::from_entries(
            &self.ring,
            LineTerm::uniform(-(self.t as i64) - 1, self.generators.len()),
            LineTerm::uniform(0, 1),
            self.generators.clone(),
        )
        .expect("generators have degree t+1")
    }

    /// `dim A_k` for `0 ≤ k ≤ 2t+1`.
    pub fn hilbert_function(&self) -> Vec<usize> {
        let g = self.generator_map();
        (0..=2 * self.t as i64 + 1)
            .map(|k| self.ring.dim(k) - g.section_matrix(k).rank())
            .collect()
    }
}

/// `min(dim R_k, dim R_{2t-k})` for `0 ≤ k ≤ 2t`, then 0.
pub fn compressed_hilbert(n: usize, t: usize) -> Vec<usize> {
    let s = 2 * t as i64;
    (0..=s + 1)
        .map(|k| dim_forms(n, k).min(dim_forms(n, s - k)))
        .collect()
}

/// The minimal pure resolution
/// `0 -> O(-2t-n-1) -> O(-t-n)^{α_n} -> ... -> O(-t-1)^{α_1} -> O -> 0`
/// at positions `-(n+1)..=0`.
///
/// Each differential is read off the kernel of the previous one in the single
/// degree purity allows. The degrees just below (down to the previous
/// generator degree) must carry no kernel, and the degree just above must
/// carry no new generators.
pub fn gorenstein_presentation<F: Field>(spec: &GorensteinSpec<F>) -> Result<Presentation<F>> {
    let ring = spec.ring();
    let (n, t) = (ring.n(), spec.t as i64);
    let mut current = spec.generator_map();
    let mut diffs = vec![current.clone()];
    for i in 1..=n {
        let step = i + 1;
        let prev_degree = t + i as i64;
        let (degree, expected) = if i < n {
            (t + i as i64 + 1, betti_alpha(n, spec.t, i + 1))
        } else {
            (2 * t + n as i64 + 1, 1)
        };
        for u in prev_degree..degree {
            if current.section_matrix(u).nullity() > 0 {
                return Err(Error::PurityViolation { step, degree: u });
            }
        }
        let kernel = current.section_matrix(degree).kernel_basis();
        if kernel.cols() != expected {
            return Err(Error::BettiMismatch {
                step,
                expected,
                found: kernel.cols(),
            });
        }
        let next = syzygy_map(&current, degree, &kernel)?;
        let above = current.section_matrix(degree + 1).nullity();
        if above != next.section_matrix(degree + 1).rank() {
            return Err(Error::PurityViolation {
                step,
                degree: degree + 1,
            });
        }
        diffs.push(next.clone());
        current = next;
    }
    diffs.reverse();
    let mut terms: Vec<LineTerm> = diffs.iter().map(|d| d.source().clone()).collect();
    terms.push(LineTerm::uniform(0, 1));
    let complex = LineComplex::new(ring, -(n as i64) - 1, terms, diffs)?;
    Presentation::from_complex(complex, format!("gorenstein(n={n}, t={t})"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::PrimeField;
    use crate::complex::{
        check_composition_zero, check_exactness_graded, default_exactness_window,
    };
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn alpha_values() {
        assert_eq!(betti_alpha(3, 1, 1), 9);
        assert_eq!(betti_alpha(3, 1, 2), 16);
        assert_eq!(betti_alpha(3, 1, 3), 9);
        // α_1 = dim R_{t+1} - dim R_{t-1}.
        for (n, t) in [(3, 2), (4, 1), (4, 2), (2, 3)] {
            assert_eq!(
                betti_alpha(n, t, 1),
                dim_forms(n, t as i64 + 1) - dim_forms(n, t as i64 - 1)
            );
        }
    }

    #[test]
    fn alternating_sum_vanishes() {
        for (n, t) in [(2, 1), (3, 1), (3, 2), (4, 1), (4, 3), (5, 2)] {
            let mut s: i64 = 1 + if n % 2 == 0 { -1 } else { 1 };
            for i in 1..=n {
                let sign = if i % 2 == 0 { 1 } else { -1 };
                s += sign * betti_alpha(n, t, i) as i64;
            }
            assert_eq!(s, 0, "n={n} t={t}");
        }
    }

    #[test]
    fn resolution_for_three_space() {
        let ring = PolyRing::new(3, PrimeField::default_prime()).unwrap();
        let spec = GorensteinSpec::random(&ring, 1, &mut ChaCha8Rng::seed_from_u64(3)).unwrap();
        assert_eq!(spec.hilbert_function(), vec![1, 4, 1, 0]);
        let p = gorenstein_presentation(&spec).unwrap();
        let shape: Vec<(i64, usize)> = p.terms().iter().map(|t| (t.twists[0], t.rank())).collect();
        assert_eq!(shape, vec![(-6, 1), (-4, 9), (-3, 16), (-2, 9), (0, 1)]);
        assert!(p.betti().is_self_dual(6));
        assert!(check_composition_zero(&p).passed());
        assert!(check_exactness_graded(&p, default_exactness_window(&p, 0)).is_exact());
    }

    #[test]
    fn generators_in_wrong_degree_rejected() {
        let ring = PolyRing::new(2, PrimeField::default_prime()).unwrap();
        let gens = vec![Form::var(&ring, 0); betti_alpha(2, 1, 1)];
        assert!(GorensteinSpec::new(&ring, 1, gens).is_err());
    }
}
