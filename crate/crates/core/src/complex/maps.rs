use rand::Rng;

use super::{FormMatrix, LineTerm, Presentation};
use crate::arith::{Field, Matrix};
use crate::error::{Error, Result};
use crate::ring::Form;

/// Default number of random points for fiberwise checks.
pub const DEFAULT_SAMPLE_POINTS: usize = 50;

/// Lifts `C^0 -> O(g)` of maps `E -> O(g)`: the kernel of precomposition
/// with `d^{-1}`. Columns are coefficient vectors in `⊕_j R_{g - c_j}`.
pub fn hom_lift_kernel<F: Field>(p: &Presentation<F>, g: i64) -> Matrix<F> {
    let n = p.n();
    match p.last_diff() {
        Some(d) => d.dual().section_matrix(g).kernel_basis(),
        None => {
            let dim = p.top().dual().h0(n, g);
            Matrix::identity(p.ring().field().clone(), dim)
        }
    }
}

/// Turn one row of coefficient vectors into the forms `O(c_j) -> O(g)`.
fn row_forms<F: Field>(p: &Presentation<F>, g: i64, v: &[F::Elem]) -> Vec<Form<F>> {
    let ring = p.ring();
    let top = p.top();
    let offsets = top.dual().h0_offsets(ring.n(), g);
    top.twists
        .iter()
        .enumerate()
        .map(|(j, c)| {
            Form::from_dense(ring, g - c, v[offsets[j]..offsets[j + 1]].to_vec())
                .expect("offsets match graded dimensions")
        })
        .collect()
}

/// Assemble a map `C^0 -> G` whose row `i` is the kernel combination
/// `coeffs[i]`, one coefficient per column of the kernel for that row's
/// twist. `kernels` pairs each twist of `G` with its [`hom_lift_kernel`].
pub fn lift_from_kernel<F: Field>(
    p: &Presentation<F>,
    g: &LineTerm,
    kernels: &[(i64, Matrix<F>)],
    coeffs: &[Vec<F::Elem>],
) -> Result<FormMatrix<F>> {
    let f = p.ring().field();
    let mut out = FormMatrix::zero(p.ring(), p.top().clone(), g.clone());
    for (i, &gt) in g.twists.iter().enumerate() {
        let k = &kernels
            .iter()
            .find(|(t, _)| *t == gt)
            .ok_or_else(|| Error::InvalidArgument(format!("no kernel for twist {gt}")))?
            .1;
        if coeffs[i].len() != k.cols() {
            return Err(Error::DimensionMismatch(format!(
                "row {i} has {} coefficients for {} kernel vectors",
                coeffs[i].len(),
                k.cols()
            )));
        }
        let mut v = vec![f.zero(); k.rows()];
        for (col, c) in coeffs[i].iter().enumerate() {
            if f.is_zero(c) {
                continue;
            }
            for (r, slot) in v.iter_mut().enumerate() {
                let x = k.get(r, col);
                if !f.is_zero(x) {
                    *slot = f.add(slot, &f.mul(c, x));
                }
            }
        }
        for (j, form) in row_forms(p, gt, &v).into_iter().enumerate() {
            out.set(i, j, form)?;
        }
    }
    Ok(out)
}

/// Basis of `{ φ: C^0 -> G | φ ∘ d^{-1} = 0 }`.
///
/// Rows of `G` are independent, so the basis is the kernel for each row's
/// twist placed in that row, ordered by row and then by kernel column.
pub fn hom_lift_space<F: Field>(p: &Presentation<F>, g: &LineTerm) -> Vec<FormMatrix<F>> {
    let mut cache: Vec<(i64, Matrix<F>)> = Vec::new();
    let mut out = Vec::new();
    for (i, &gt) in g.twists.iter().enumerate() {
        if !cache.iter().any(|(t, _)| *t == gt) {
            cache.push((gt, hom_lift_kernel(p, gt)));
        }
        let k = &cache.iter().find(|(t, _)| *t == gt).unwrap().1;
        for col in 0..k.cols() {
            let v = k.column(col);
            let mut m = FormMatrix::zero(p.ring(), p.top().clone(), g.clone());
            for (j, form) in row_forms(p, gt, &v).into_iter().enumerate() {
                m.set(i, j, form)
                    .expect("kernel forms have the right degree");
            }
            out.push(m);
        }
    }
    out
}

/// A generic lift `C^0 -> G`: each row a random combination of the kernel.
pub fn random_lift<F: Field, R: Rng + ?Sized>(
    p: &Presentation<F>,
    g: &LineTerm,
    rng: &mut R,
) -> FormMatrix<F> {
    let f = p.ring().field();
    let mut cache: Vec<(i64, Matrix<F>)> = Vec::new();
    for &gt in &g.twists {
        if !cache.iter().any(|(t, _)| *t == gt) {
            cache.push((gt, hom_lift_kernel(p, gt)));
        }
    }
    let coeffs: Vec<Vec<F::Elem>> = g
        .twists
        .iter()
        .map(|&gt| {
            let k = &cache.iter().find(|(s, _)| *s == gt).unwrap().1;
            (0..k.cols()).map(|_| f.random(rng)).collect()
        })
        .collect();
    lift_from_kernel(p, g, &cache, &coeffs).expect("coefficient counts match kernels")
}

/// Whether the map `E -> G` induced by `lift` is injective on the fiber at
/// `point`, with `E` of the expected rank there.
pub fn fiber_injective_at<F: Field>(
    p: &Presentation<F>,
    lift: &FormMatrix<F>,
    point: &[F::Elem],
) -> bool {
    let c0 = p.top().rank() as i64;
    let rank_d = p.last_diff().map_or(0, |d| d.eval(point).rank()) as i64;
    let rank_l = lift.eval(point).rank() as i64;
    let fiber = c0 - rank_d;
    fiber == p.rank() && rank_l == fiber
}

pub(crate) fn point_to_i64<F: Field>(f: &F, point: &[F::Elem]) -> Vec<i64> {
    point
        .iter()
        .map(|x| f.to_i64(x).unwrap_or(i64::MIN))
        .collect()
}

/// Presentation of `coker(E -> G)` for the map induced by `lift: C^0 -> G`.
///
/// Injectivity on fibers is sampled at `points` random points; a failure
/// means the sampled map meets its degeneracy locus and should be resampled.
pub fn splice_cokernel<F: Field, R: Rng + ?Sized>(
    p: &Presentation<F>,
    lift: &FormMatrix<F>,
    points: usize,
    rng: &mut R,
    label: impl Into<String>,
) -> Result<Presentation<F>> {
    if lift.source() != p.top() {
        return Err(Error::DimensionMismatch(format!(
            "lift starts at {}, the presentation ends at {}",
            lift.source(),
            p.top()
        )));
    }
    if let Some(d) = p.last_diff() {
        if !lift.compose(d)?.is_zero() {
            return Err(Error::InvalidArgument(
                "lift does not vanish on the image of the last differential".into(),
            ));
        }
    }
    for _ in 0..points {
        let pt = p.ring().random_point(rng);
        if !fiber_injective_at(p, lift, &pt) {
            return Err(Error::FiberInjectivityFailed {
                point: point_to_i64(p.ring().field(), &pt),
            });
        }
    }
    let mut terms = p.terms().to_vec();
    terms.push(lift.target().clone());
    let mut diffs = p.diffs().to_vec();
    diffs.push(lift.clone());
    Presentation::new(p.ring(), terms, diffs, label)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::PrimeField;
    use crate::ring::{dim_forms, PolyRing};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn ring(n: usize) -> PolyRing<PrimeField> {
        PolyRing::new(n, PrimeField::default_prime()).unwrap()
    }

    /// `O(-3) -> O(-2)^3` by the variables: the cotangent bundle of the plane.
    fn cotangent_plane() -> Presentation<PrimeField> {
        let r = ring(2);
        let d = FormMatrix::from_entries(
            &r,
            LineTerm::uniform(-3, 1),
            LineTerm::uniform(-2, 3),
            (0..3).map(|i| Form::var(&r, i)).collect(),
        )
        .unwrap();
        Presentation::new(
            &r,
            vec![LineTerm::uniform(-3, 1), LineTerm::uniform(-2, 3)],
            vec![d],
            "omega",
        )
        .unwrap()
    }

    #[test]
    fn maps_between_line_bundles_are_forms() {
        let r = ring(3);
        let p = Presentation::line_bundle(&r, -1);
        for b in -3..4 {
            let basis = hom_lift_space(&p, &LineTerm::uniform(b, 1));
            assert_eq!(basis.len(), dim_forms(3, b + 1));
        }
    }

    #[test]
    fn maps_from_cotangent_to_structure_sheaf() {
        // Hom(Ω, O) = H^0(T) has dimension 8 on the plane (Euler sequence:
        // 3 h^0(O(1)) - h^0(O) = 9 - 1).
        let p = cotangent_plane();
        let basis = hom_lift_space(&p, &LineTerm::uniform(0, 1));
        assert_eq!(basis.len(), 8);
        for phi in &basis {
            assert!(phi.compose(p.last_diff().unwrap()).unwrap().is_zero());
        }
    }

    #[test]
    fn no_maps_to_lower_twists() {
        let p = cotangent_plane();
        assert!(hom_lift_space(&p, &LineTerm::new(vec![-3, -4])).is_empty());
    }

    #[test]
    fn splicing_generic_forms_gives_rank_n_bundle() {
        let r = ring(2);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let p = Presentation::line_bundle(&r, -1);
        let lift = random_lift(&p, &LineTerm::uniform(0, 3), &mut rng);
        let e = splice_cokernel(&p, &lift, 20, &mut rng, "E1").unwrap();
        assert_eq!(e.rank(), 2);
        let rep = crate::complex::check_exactness_graded(
            &e,
            crate::complex::default_exactness_window(&e, 1),
        );
        assert!(rep.is_exact());
    }

    #[test]
    fn degenerate_lift_fails_on_fibers() {
        // Two linear forms cannot define an injective map O(-1) -> O^2 on the
        // plane: they share a zero.
        let r = ring(2);
        let p = Presentation::line_bundle(&r, -1);
        let lift = FormMatrix::from_entries(
            &r,
            LineTerm::uniform(-1, 1),
            LineTerm::uniform(0, 2),
            vec![Form::var(&r, 0), Form::var(&r, 1)],
        )
        .unwrap();
        // Force the common zero (0:0:1) to be sampled.
        let f = PrimeField::default_prime();
        assert!(!fiber_injective_at(&p, &lift, &[0, 0, f.one()]));
        assert!(fiber_injective_at(&p, &lift, &[1, 0, 0]));
    }
}
