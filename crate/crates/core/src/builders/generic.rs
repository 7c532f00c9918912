use rand::Rng;

use super::syzygy_map;
use crate::arith::Field;
use crate::complex::{FormMatrix, LineComplex, LineTerm, Presentation};
use crate::error::{Error, Result};
use crate::ring::PolyRing;

/// Largest socle degree searched before declaring the quotient not Artinian.
const MAX_SOCLE: i64 = 64;

/// The minimal resolution of `R/I` for `I` generated by `count` random forms
/// of degree `degree`, positions `-(n+1)..=0` ending in `O`.
///
/// The quotient must be Artinian, which for generic forms means
/// `count ≥ n + 1`. Its socle degree `s` bounds generator degrees of the
/// `i`-th syzygy module by `s + i`, so each step is exhausted in finitely
/// many degrees.
pub fn resolve_generic_forms<F: Field, R: Rng + ?Sized>(
    ring: &PolyRing<F>,
    degree: u32,
    count: usize,
    rng: &mut R,
) -> Result<Presentation<F>> {
    let n = ring.n();
    if degree == 0 || count <= n {
        return Err(Error::InvalidArgument(format!(
            "need degree >= 1 and at least n + 1 = {} forms, got degree {degree} and {count} forms",
            n + 1
        )));
    }
    let forms = (0..count)
        .map(|_| ring.random_form(degree as i64, rng))
        .collect();
    let first = FormMatrix::from_entries(
        ring,
        LineTerm::uniform(-(degree as i64), count),
        LineTerm::uniform(0, 1),
        forms,
    )?;
    let socle = socle_degree(&first)?;
    let mut current = first;
    let mut diffs = vec![current.clone()];
    for i in 1..=n {
        let lo = -current.source().max_twist().expect("nonempty") + 1;
        let next = minimal_syzygies(&current, lo, socle + i as i64 + 1)?;
        if next.source().is_empty() {
            return Err(Error::PreconditionViolated(format!(
                "resolution stopped early at step {}",
                i + 1
            )));
        }
        diffs.push(next.clone());
        current = next;
    }
    let lo = -current.source().max_twist().expect("nonempty") + 1;
    let hi = -current.source().min_twist().expect("nonempty") + n as i64 + 1;
    if let Some(u) = (lo..=hi).find(|&u| current.section_matrix(u).nullity() > 0) {
        return Err(Error::PreconditionViolated(format!(
            "last map has a kernel in degree {u}"
        )));
    }
    diffs.reverse();
    let mut terms: Vec<LineTerm> = diffs.iter().map(|d| d.source().clone()).collect();
    terms.push(LineTerm::uniform(0, 1));
    let complex = LineComplex::new(ring, -(n as i64) - 1, terms, diffs)?;
    Presentation::from_complex(
        complex,
        format!("generic(n={n}, degree={degree}, count={count})"),
    )
}

/// First degree where the quotient by the image of `first` vanishes, minus one.
fn socle_degree<F: Field>(first: &FormMatrix<F>) -> Result<i64> {
    let ring = first.ring();
    (0..=MAX_SOCLE)
        .find(|&k| ring.dim(k) == first.section_matrix(k).rank())
        .map(|k| k - 1)
        .ok_or_else(|| Error::PreconditionViolated("quotient is not Artinian".into()))
}

/// Minimal generators of the kernel of `d` in degrees `lo..=hi`, as a map
/// into the source of `d`.
fn minimal_syzygies<F: Field>(d: &FormMatrix<F>, lo: i64, hi: i64) -> Result<FormMatrix<F>> {
    let ring = d.ring();
    let mut gens = FormMatrix::zero(ring, LineTerm::new(vec![]), d.source().clone());
    for u in lo..=hi {
        let kernel = d.section_matrix(u).kernel_basis();
        if kernel.cols() == 0 {
            continue;
        }
        let image = gens.section_matrix(u);
        let known = image.cols();
        let stacked = image.transpose().vstack(&kernel.transpose())?.transpose();
        let (_, pivots) = stacked.row_echelon(false);
        let fresh: Vec<usize> = pivots
            .into_iter()
            .filter(|&c| c >= known)
            .map(|c| c - known)
            .collect();
        if fresh.is_empty() {
            continue;
        }
        let new = syzygy_map(d, u, &kernel.select_columns(&fresh))?;
        gens = concat_sources(&gens, &new)?;
    }
    Ok(gens)
}

/// `[a | b]` for maps with a common target.
fn concat_sources<F: Field>(a: &FormMatrix<F>, b: &FormMatrix<F>) -> Result<FormMatrix<F>> {
    let source = a.source().direct_sum(b.source());
    let (ra, rb) = (a.source().rank(), b.source().rank());
    let mut entries = Vec::with_capacity(a.target().rank() * (ra + rb));
    for i in 0..a.target().rank() {
        entries.extend((0..ra).map(|j| a.get(i, j).clone()));
        entries.extend((0..rb).map(|j| b.get(i, j).clone()));
    }
    FormMatrix::from_entries(a.ring(), source, a.target().clone(), entries)
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

    fn ring(n: usize) -> PolyRing<PrimeField> {
        PolyRing::new(n, PrimeField::default_prime()).unwrap()
    }

    #[test]
    fn regular_sequence_gives_koszul_shape() {
        let p = resolve_generic_forms(&ring(2), 2, 3, &mut ChaCha8Rng::seed_from_u64(1)).unwrap();
        let shape: Vec<String> = p.terms().iter().map(|t| t.to_string()).collect();
        assert_eq!(shape, ["O(-6)", "O(-4)^3", "O(-2)^3", "O(0)"]);
    }

    #[test]
    fn four_quadrics_in_three_variables() {
        // R/I has Hilbert function 1, 3, 2, so the socle degree is 2. The
        // Hilbert series numerator 1 - 4t^2 + 2t^3 + 3t^4 - 2t^5 forces
        // O(-5)^2 -> O(-3)^2 + O(-4)^3 -> O(-2)^4 -> O, which is not pure.
        let p = resolve_generic_forms(&ring(2), 2, 4, &mut ChaCha8Rng::seed_from_u64(2)).unwrap();
        let betti: Vec<Vec<(i64, usize)>> = p.terms().iter().map(|t| t.multiplicities()).collect();
        assert_eq!(
            betti,
            vec![
                vec![(-5, 2)],
                vec![(-4, 3), (-3, 2)],
                vec![(-2, 4)],
                vec![(0, 1)]
            ]
        );
        assert!(check_composition_zero(&p).passed());
        assert!(check_exactness_graded(&p, default_exactness_window(&p, 1)).is_exact());
    }

    #[test]
    fn too_few_forms_rejected() {
        assert!(resolve_generic_forms(&ring(2), 1, 2, &mut ChaCha8Rng::seed_from_u64(3)).is_err());
    }
}
