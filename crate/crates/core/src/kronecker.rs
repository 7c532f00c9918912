//! Representations of the Kronecker quiver with `w` arrows and their
//! realization as cokernel bundles.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::arith::{Field, Matrix};
use crate::complex::{
    hom_lift_space, point_to_i64, splice_cokernel, FormMatrix, LineTerm, Presentation,
};
use crate::error::{Error, Result};
use crate::ring::Form;
use crate::verdict::Verdict;

/// `a² + b² - w·a·b`.
pub fn tits_form(w: i64, a: i64, b: i64) -> i64 {
    a * a + b * b - w * a * b
}

fn require_wide(w: i64) -> Result<()> {
    if w < 3 {
        return Err(Error::PreconditionViolated(format!(
            "Schur root test is only defined here for w >= 3, got w = {w}"
        )));
    }
    Ok(())
}

/// Dimension vectors with `q(a, b) ≤ 1` are Schur roots.
pub fn is_schur_root(w: i64, a: i64, b: i64) -> Result<bool> {
    require_wide(w)?;
    Ok(tits_form(w, a, b) <= 1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SimplicityClass {
    /// A general representation (and cokernel bundle) is simple.
    GenericSimple,
    /// Every representation of this dimension vector decomposes.
    AlwaysDecomposable,
}

pub fn simplicity_verdict(w: i64, a: i64, b: i64) -> Result<SimplicityClass> {
    Ok(if is_schur_root(w, a, b)? {
        SimplicityClass::GenericSimple
    } else {
        SimplicityClass::AlwaysDecomposable
    })
}

/// `w` linear maps `k^a -> k^b`.
#[derive(Clone, Debug, PartialEq)]
pub struct KroneckerRep<F: Field> {
    w: usize,
    a: usize,
    b: usize,
    mats: Vec<Matrix<F>>,
}

impl<F: Field> KroneckerRep<F> {
    pub fn new(w: usize, a: usize, b: usize, mats: Vec<Matrix<F>>) -> Result<Self> {
        if mats.len() != w {
            return Err(Error::DimensionMismatch(format!(
                "{w} arrows, {} matrices",
                mats.len()
            )));
        }
        if let Some((i, m)) = mats
            .iter()
            .enumerate()
            .find(|(_, m)| m.rows() != b || m.cols() != a)
        {
            return Err(Error::DimensionMismatch(format!(
                "matrix {i} is {}x{}, expected {b}x{a}",
                m.rows(),
                m.cols()
            )));
        }
        Ok(Self { w, a, b, mats })
    }

    pub fn zero(field: &F, w: usize, a: usize, b: usize) -> Self {
        Self {
            w,
            a,
            b,
            mats: vec![Matrix::zeros(field.clone(), b, a); w],
        }
    }

    pub fn random<R: Rng + ?Sized>(field: &F, w: usize, a: usize, b: usize, rng: &mut R) -> Self {
        let mats = (0..w)
            .map(|_| {
                let data = (0..a * b).map(|_| field.random(rng)).collect();
                Matrix::new(field.clone(), b, a, data).expect("shape")
            })
            .collect();
        Self { w, a, b, mats }
    }

    pub fn w(&self) -> usize {
        self.w
    }
    pub fn a(&self) -> usize {
        self.a
    }
    pub fn b(&self) -> usize {
        self.b
    }
    pub fn mats(&self) -> &[Matrix<F>] {
        &self.mats
    }

    /// Block diagonal sum.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.w != other.w {
            return Err(Error::DimensionMismatch(
                "direct sum of reps with different w".into(),
            ));
        }
        let (a, b) = (self.a + other.a, self.b + other.b);
        let mats = self
            .mats
            .iter()
            .zip(&other.mats)
            .map(|(x, y)| {
                let mut m = Matrix::zeros(x.field().clone(), b, a);
                m.write_block(0, 0, x);
                m.write_block(self.b, self.a, y);
                m
            })
            .collect();
        Ok(Self {
            w: self.w,
            a,
            b,
            mats,
        })
    }

    pub fn to_json(&self) -> RepJson {
        let f = self.mats.first().map(|m| m.field().clone());
        let mats = self
            .mats
            .iter()
            .map(|m| {
                (0..m.rows())
                    .map(|r| {
                        m.row(r)
                            .iter()
                            .map(|x| f.as_ref().and_then(|f| f.to_i64(x)).unwrap_or(0))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        RepJson {
            w: self.w,
            a: self.a,
            b: self.b,
            mats,
        }
    }
}

/// `{"w": .., "a": .., "b": .., "mats": [[[..], ..], ..]}`; each matrix is
/// `b` rows of `a` integers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepJson {
    pub w: usize,
    pub a: usize,
    pub b: usize,
    pub mats: Vec<Vec<Vec<i64>>>,
}

impl RepJson {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| {
            Error::schema(
                format!("line {} column {}", e.line(), e.column()),
                e.to_string(),
            )
        })
    }

    pub fn to_rep<F: Field>(&self, field: &F) -> Result<KroneckerRep<F>> {
        if self.mats.len() != self.w {
            return Err(Error::schema(
                "mats",
                format!("expected {} matrices, found {}", self.w, self.mats.len()),
            ));
        }
        let mut mats = Vec::with_capacity(self.w);
        for (i, m) in self.mats.iter().enumerate() {
            if m.len() != self.b {
                return Err(Error::schema(
                    format!("mats[{i}]"),
                    format!("expected {} rows", self.b),
                ));
            }
            let mut data = Vec::with_capacity(self.a * self.b);
            for (r, row) in m.iter().enumerate() {
                if row.len() != self.a {
                    return Err(Error::schema(
                        format!("mats[{i}][{r}]"),
                        format!("expected {} entries", self.a),
                    ));
                }
                data.extend(row.iter().map(|&x| field.from_i64(x)));
            }
            mats.push(Matrix::new(field.clone(), self.b, self.a, data)?);
        }
        KroneckerRep::new(self.w, self.a, self.b, mats)
    }
}

/// The map `(f_1, f_2) ↦ (f_2 A_i - B_i f_1)_i` whose kernel is
/// `Hom(r1, r2)` and whose cokernel is `Ext^1(r1, r2)`.
fn morphism_matrix<F: Field>(r1: &KroneckerRep<F>, r2: &KroneckerRep<F>, field: &F) -> Matrix<F> {
    let (a1, b1, a2, b2) = (r1.a, r1.b, r2.a, r2.b);
    let cols = a2 * a1 + b2 * b1;
    let rows = r1.w * b2 * a1;
    let mut m = Matrix::zeros(field.clone(), rows, cols);
    let f1 = |r: usize, c: usize| r * a1 + c;
    let f2 = |r: usize, c: usize| a2 * a1 + r * b1 + c;
    for i in 0..r1.w {
        let (ai, bi) = (&r1.mats[i], &r2.mats[i]);
        for r in 0..b2 {
            for c in 0..a1 {
                let row = (i * b2 + r) * a1 + c;
                for k in 0..b1 {
                    let v = ai.get(k, c);
                    if !field.is_zero(v) {
                        let cur = m.get(row, f2(r, k)).clone();
                        m.set(row, f2(r, k), field.add(&cur, v));
                    }
                }
                for k in 0..a2 {
                    let v = bi.get(r, k);
                    if !field.is_zero(v) {
                        let cur = m.get(row, f1(k, c)).clone();
                        m.set(row, f1(k, c), field.sub(&cur, v));
                    }
                }
            }
        }
    }
    m
}

/// `(dim Hom(r1, r2), dim Ext^1(r1, r2))`.
pub fn rep_hom_ext<F: Field>(
    r1: &KroneckerRep<F>,
    r2: &KroneckerRep<F>,
    field: &F,
) -> Result<(usize, usize)> {
    if r1.w != r2.w {
        return Err(Error::DimensionMismatch(format!(
            "w = {} and w = {}",
            r1.w, r2.w
        )));
    }
    let m = morphism_matrix(r1, r2, field);
    let rank = m.rank();
    Ok((m.cols() - rank, m.rows() - rank))
}

/// A basis `σ_1, …, σ_w` of `Hom(E, F)` for split `F`, each map given on
/// `C^0` of the presentation of `E`.
#[derive(Clone, Debug)]
pub struct SigmaBasis<F: Field> {
    e: Presentation<F>,
    f: Presentation<F>,
    basis: Vec<FormMatrix<F>>,
}

impl<F: Field> SigmaBasis<F> {
    /// For line bundles this is the monomial basis of the degree
    /// difference in grevlex order.
    pub fn new(e: &Presentation<F>, f: &Presentation<F>) -> Result<Self> {
        if f.length() != 0 {
            return Err(Error::InvalidArgument(
                "σ bases are only built for split targets".into(),
            ));
        }
        Ok(Self {
            e: e.clone(),
            f: f.clone(),
            basis: hom_lift_space(e, f.top()),
        })
    }

    pub fn w(&self) -> usize {
        self.basis.len()
    }
    pub fn source(&self) -> &Presentation<F> {
        &self.e
    }
    pub fn target(&self) -> &Presentation<F> {
        &self.f
    }
    pub fn maps(&self) -> &[FormMatrix<F>] {
        &self.basis
    }

    /// `Σ A_i ⊗ σ_i` on `(C^0)^a -> G^b`, blocks ordered copy-major.
    pub fn combine(&self, r: &KroneckerRep<F>) -> Result<FormMatrix<F>> {
        if r.w != self.w() {
            return Err(Error::DimensionMismatch(format!(
                "rep has {} arrows, the σ basis has {} maps",
                r.w,
                self.w()
            )));
        }
        let ring = self.e.ring();
        let field = ring.field();
        let c0 = self.e.top();
        let g = self.f.top();
        let source = LineTerm::new(c0.twists.repeat(r.a));
        let target = LineTerm::new(g.twists.repeat(r.b));
        let mut out = FormMatrix::zero(ring, source, target);
        for row in 0..r.b {
            for col in 0..r.a {
                for gi in 0..g.rank() {
                    for cj in 0..c0.rank() {
                        let deg = g.twists[gi] - c0.twists[cj];
                        let mut acc = Form::zero(ring, deg);
                        for (ai, sigma) in r.mats.iter().zip(&self.basis) {
                            let c = ai.get(row, col);
                            let s = sigma.get(gi, cj);
                            if !field.is_zero(c) && !s.is_zero() {
                                acc = acc.add(&s.scale(c));
                            }
                        }
                        if !acc.is_zero() {
                            out.set(row * g.rank() + gi, col * c0.rank() + cj, acc)?;
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    fn power(&self, a: usize) -> Result<Presentation<F>> {
        let mut p = self.e.clone();
        for _ in 1..a {
            p = p.direct_sum(&self.e)?;
        }
        Ok(p.with_label(format!("({})^{a}", self.e.label())))
    }
}

/// Whether `E` has the expected rank at `pt`, and the rank of `α(pt)`.
fn rank_at<F: Field>(
    sigma: &SigmaBasis<F>,
    alpha: &FormMatrix<F>,
    pt: &[F::Elem],
) -> (bool, usize) {
    let e = sigma.source();
    let c0 = e.top().rank() as i64;
    let rank_d = e.last_diff().map_or(0, |d| d.eval(pt).rank()) as i64;
    (c0 - rank_d == e.rank(), alpha.eval(pt).rank())
}

/// Sample `points` random points and check that `α(P): E(P)^a -> F(P)^b`
/// has full column rank `a · rk E` at each.
pub fn global_injectivity<F: Field, R: Rng + ?Sized>(
    r: &KroneckerRep<F>,
    sigma: &SigmaBasis<F>,
    points: usize,
    rng: &mut R,
) -> Result<Verdict> {
    let claim = "α(P) = Σ A_i ⊗ σ_i(P) injective at sampled points";
    let expected = r.a as i64 * sigma.source().rank();
    if r.a == 0 {
        return Ok(Verdict::holds(claim, true, "a = 0").with("points", Vec::<Vec<i64>>::new()));
    }
    let alpha = sigma.combine(r)?;
    let ring = sigma.source().ring();
    let mut sampled = Vec::with_capacity(points);
    for _ in 0..points {
        let pt = ring.random_point(rng);
        let as_int = point_to_i64(ring.field(), &pt);
        sampled.push(as_int.clone());
        let (fiber_ok, rank) = rank_at(sigma, &alpha, &pt);
        if !fiber_ok || rank as i64 != expected {
            return Ok(Verdict::holds(
                claim,
                false,
                serde_json::json!({"point": as_int, "rank": rank}),
            )
            .with("expected_rank", expected)
            .with("points", sampled));
        }
    }
    Ok(Verdict::holds(claim, true, expected)
        .with("expected_rank", expected)
        .with("points", sampled))
}

/// Presentation of `coker(E^a -> F^b)` for the map `Σ A_i ⊗ σ_i`,
/// spliced onto the presentation of `E^a`.
pub fn realize<F: Field, R: Rng + ?Sized>(
    r: &KroneckerRep<F>,
    sigma: &SigmaBasis<F>,
    points: usize,
    rng: &mut R,
) -> Result<Presentation<F>> {
    let n = sigma.source().n() as i64;
    let rank = r.b as i64 * sigma.target().rank() - r.a as i64 * sigma.source().rank();
    if rank < n {
        return Err(Error::RankTooSmall { rank, required: n });
    }
    let label = format!(
        "C({}, {}; w={}, a={}, b={})",
        sigma.source().label(),
        sigma.target().label(),
        r.w,
        r.a,
        r.b
    );
    let ring = sigma.source().ring();
    if r.a == 0 {
        let twists = sigma.target().top().twists.repeat(r.b);
        return Ok(Presentation::split(ring, twists).with_label(label));
    }
    let ea = sigma.power(r.a)?;
    let alpha = sigma.combine(r)?;
    splice_cokernel(&ea, &alpha, points, rng, label).map_err(|e| match e {
        Error::FiberInjectivityFailed { point } => Error::NotInjective { point },
        other => other,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::PrimeField;
    use crate::homext::hom_dim;
    use crate::ring::PolyRing;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn field() -> PrimeField {
        PrimeField::default_prime()
    }

    #[test]
    fn tits_examples() {
        assert_eq!(tits_form(35, 1, 35), 1);
        assert_eq!(tits_form(7, 1, 0), 1);
        assert_eq!(tits_form(3, 1, 5), 11);
        assert!(is_schur_root(35, 1, 35).unwrap());
        assert!(!is_schur_root(3, 1, 5).unwrap());
        assert!(is_schur_root(3, 2, 2).unwrap());
        assert!(is_schur_root(2, 1, 1).is_err());
        assert_eq!(
            simplicity_verdict(5, 1, 5).unwrap(),
            SimplicityClass::GenericSimple
        );
        assert_eq!(
            simplicity_verdict(3, 1, 5).unwrap(),
            SimplicityClass::AlwaysDecomposable
        );
    }

    #[test]
    fn zero_rep_has_no_morphisms() {
        let z = KroneckerRep::zero(&field(), 3, 0, 0);
        assert_eq!(rep_hom_ext(&z, &z, &field()).unwrap(), (0, 0));
    }

    #[test]
    fn euler_form_identity_on_random_reps() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..20 {
            let w = rng.gen_range(3..=5);
            let (a, b) = (rng.gen_range(0..=4), rng.gen_range(0..=4));
            let r = KroneckerRep::random(&field(), w, a, b, &mut rng);
            let (h, e) = rep_hom_ext(&r, &r, &field()).unwrap();
            assert_eq!(h as i64 - e as i64, tits_form(w as i64, a as i64, b as i64));
        }
    }

    #[test]
    fn json_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let r = KroneckerRep::random(&field(), 3, 2, 3, &mut rng);
        let text = serde_json::to_string(&r.to_json()).unwrap();
        let back = RepJson::parse(&text).unwrap().to_rep(&field()).unwrap();
        assert_eq!(r, back);
        assert!(RepJson::parse(r#"{"w":2,"a":1,"b":1,"mats":[[[1]]]}"#)
            .unwrap()
            .to_rep(&field())
            .is_err());
    }

    #[test]
    fn realized_bundle_matches_rep_endomorphisms() {
        let ring = PolyRing::new(2, field()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let e = Presentation::line_bundle(&ring, -1);
        let f = Presentation::line_bundle(&ring, 0);
        let sigma = SigmaBasis::new(&e, &f).unwrap();
        assert_eq!(sigma.w(), 3);
        let r = KroneckerRep::random(&field(), 3, 1, 3, &mut rng);
        assert!(global_injectivity(&r, &sigma, 10, &mut rng)
            .unwrap()
            .passed());
        let c = realize(&r, &sigma, 10, &mut rng).unwrap();
        assert_eq!(c.rank(), 2);
        let (h, _) = rep_hom_ext(&r, &r, &field()).unwrap();
        assert_eq!(hom_dim(&c, &c).unwrap().exact(), Some(h));
    }

    #[test]
    fn repeated_columns_are_not_injective() {
        let ring = PolyRing::new(2, field()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let e = Presentation::line_bundle(&ring, -1);
        let f = Presentation::line_bundle(&ring, 0);
        let sigma = SigmaBasis::new(&e, &f).unwrap();
        let base = KroneckerRep::random(&field(), 3, 1, 6, &mut rng);
        let mats = base
            .mats()
            .iter()
            .map(|m| {
                let col = m.column(0);
                let data = col.iter().flat_map(|x| [*x, *x]).collect();
                Matrix::new(field(), 6, 2, data).unwrap()
            })
            .collect();
        let bad = KroneckerRep::new(3, 2, 6, mats).unwrap();
        assert!(!global_injectivity(&bad, &sigma, 5, &mut rng)
            .unwrap()
            .passed());
        assert!(matches!(
            realize(&bad, &sigma, 5, &mut rng),
            Err(Error::NotInjective { .. })
        ));
        let empty = KroneckerRep::zero(&field(), 3, 0, 2);
        assert!(global_injectivity(&empty, &sigma, 5, &mut rng)
            .unwrap()
            .passed());
        let small = KroneckerRep::random(&field(), 3, 1, 2, &mut rng);
        assert!(matches!(
            realize(&small, &sigma, 5, &mut rng),
            Err(Error::RankTooSmall { .. })
        ));
    }
}
