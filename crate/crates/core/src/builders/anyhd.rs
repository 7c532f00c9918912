use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::arith::Field;
use crate::cohomology::cm_regularity;
use crate::complex::{
    hom_lift_kernel, random_lift, splice_cokernel, LineTerm, Presentation, DEFAULT_SAMPLE_POINTS,
};
use crate::error::{Error, Result};
use crate::ring::PolyRing;

/// Degrees for the inductive construction: `E_1 = coker(O(-d_0) -> O^{n+1})`
/// and `E_t = coker(E_{t-1} -> O(d_t)^{2n})` for `2 ≤ t ≤ l`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HdSchedule {
    pub n: usize,
    pub l: usize,
    pub d0: i64,
    /// `d_2, …, d_l`.
    pub degrees: Vec<i64>,
}

impl HdSchedule {
    pub fn new(n: usize, l: usize, d0: i64, degrees: Vec<i64>) -> Result<Self> {
        let s = Self { n, l, d0, degrees };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        check_shape(self.n, self.l, self.d0)?;
        if self.degrees.len() + 1 != self.l {
            return Err(Error::InvalidArgument(format!(
                "l = {} needs {} degrees d_2..d_l, got {}",
                self.l,
                self.l - 1,
                self.degrees.len()
            )));
        }
        let mut prev = 0;
        for (k, &d) in self.degrees.iter().enumerate() {
            if d <= prev {
                return Err(Error::InvalidArgument(format!(
                    "d_{} = {d} must exceed {prev}",
                    k + 2
                )));
            }
            prev = d;
        }
        Ok(())
    }
}

fn check_shape(n: usize, l: usize, d0: i64) -> Result<()> {
    if n < 4 {
        return Err(Error::InvalidArgument(format!("need n >= 4, got {n}")));
    }
    if l < 1 || l > n - 1 {
        return Err(Error::InvalidArgument(format!(
            "need 1 <= l <= {}, got {l}",
            n - 1
        )));
    }
    if d0 <= 0 {
        return Err(Error::InvalidArgument(format!("need d_0 > 0, got {d0}")));
    }
    Ok(())
}

/// What was checked when choosing `d_t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HdStep {
    pub step: usize,
    pub degree: i64,
    /// Regularity of `E_{t-1}^*`.
    pub regularity: i64,
    /// `h^0(E_{t-1}^*(d_t))`.
    pub sections: usize,
    /// Least admissible `d_t`.
    pub minimal: i64,
}

#[derive(Clone, Debug)]
pub struct AnyHdBuild<F: Field> {
    /// `E_1, …, E_l`.
    pub bundles: Vec<Presentation<F>>,
    pub steps: Vec<HdStep>,
    pub schedule: HdSchedule,
}

impl<F: Field> AnyHdBuild<F> {
    pub fn last(&self) -> &Presentation<F> {
        self.bundles.last().expect("at least E_1")
    }
}

const SPLICE_RETRIES: usize = 3;

fn splice_generic<F: Field, R: Rng + ?Sized>(
    p: &Presentation<F>,
    target: &LineTerm,
    rng: &mut R,
    label: String,
) -> Result<Presentation<F>> {
    let mut last = None;
    for _ in 0..SPLICE_RETRIES {
        let lift = random_lift(p, target, rng);
        match splice_cokernel(p, &lift, DEFAULT_SAMPLE_POINTS, rng, label.clone()) {
            Err(e @ Error::FiberInjectivityFailed { .. }) => last = Some(e),
            other => return other,
        }
    }
    Err(last.expect("at least one attempt"))
}

/// Build with a fixed schedule; fails with `ScheduleTooTight` if some `d_t`
/// is not above both `d_{t-1}` and the regularity of `E_{t-1}^*`, or leaves
/// fewer than `2n` maps `E_{t-1} -> O(d_t)`.
pub fn build_anyhd<F: Field, R: Rng + ?Sized>(
    ring: &PolyRing<F>,
    schedule: &HdSchedule,
    rng: &mut R,
) -> Result<AnyHdBuild<F>> {
    schedule.validate()?;
    build(
        ring,
        schedule.n,
        schedule.l,
        schedule.d0,
        Some(&schedule.degrees),
        rng,
    )
}

/// Build with each `d_t` the least admissible degree.
pub fn build_anyhd_minimal<F: Field, R: Rng + ?Sized>(
    ring: &PolyRing<F>,
    l: usize,
    d0: i64,
    rng: &mut R,
) -> Result<AnyHdBuild<F>> {
    check_shape(ring.n(), l, d0)?;
    build(ring, ring.n(), l, d0, None, rng)
}

fn build<F: Field, R: Rng + ?Sized>(
    ring: &PolyRing<F>,
    n: usize,
    l: usize,
    d0: i64,
    fixed: Option<&[i64]>,
    rng: &mut R,
) -> Result<AnyHdBuild<F>> {
    if ring.n() != n {
        return Err(Error::DimensionMismatch(format!(
            "schedule is for n = {n}, ring has n = {}",
            ring.n()
        )));
    }
    let start = Presentation::line_bundle(ring, -d0);
    let e1 = splice_generic(&start, &LineTerm::uniform(0, n + 1), rng, "E_1".into())?;
    let mut bundles = vec![e1];
    let mut steps = Vec::new();
    let mut degrees = Vec::new();
    let mut prev_degree = 0;
    for t in 2..=l {
        let e = bundles.last().unwrap();
        let regularity = cm_regularity(&e.dual())?;
        let lower = prev_degree.max(regularity) + 1;
        let mut seen = std::collections::HashMap::new();
        let mut sections = |d: i64| {
            *seen
                .entry(d)
                .or_insert_with(|| hom_lift_kernel(e, d).cols())
        };
        let mut minimal = lower;
        while sections(minimal) < 2 * n {
            minimal += 1;
        }
        let degree = match fixed {
            Some(ds) => {
                let d = ds[t - 2];
                if d < minimal {
                    return Err(Error::ScheduleTooTight { step: t, minimal });
                }
                d
            }
            None => minimal,
        };
        let h0 = sections(degree);
        let next = splice_generic(e, &LineTerm::uniform(degree, 2 * n), rng, format!("E_{t}"))?;
        steps.push(HdStep {
            step: t,
            degree,
            regularity,
            sections: h0,
            minimal,
        });
        degrees.push(degree);
        prev_degree = degree;
        bundles.push(next);
    }
    Ok(AnyHdBuild {
        bundles,
        steps,
        schedule: HdSchedule { n, l, d0, degrees },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::PrimeField;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn ring() -> PolyRing<PrimeField> {
        PolyRing::new(4, PrimeField::default_prime()).unwrap()
    }

    #[test]
    fn schedule_validation() {
        assert!(HdSchedule::new(4, 2, 1, vec![3]).is_ok());
        assert!(HdSchedule::new(3, 2, 1, vec![3]).is_err());
        assert!(HdSchedule::new(4, 4, 1, vec![1, 2, 3]).is_err());
        assert!(HdSchedule::new(4, 3, 1, vec![3, 3]).is_err());
        assert!(HdSchedule::new(4, 2, 0, vec![3]).is_err());
        assert!(HdSchedule::new(4, 2, 1, vec![]).is_err());
    }

    #[test]
    fn first_step_is_rank_n() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let b = build_anyhd_minimal(&ring(), 1, 1, &mut rng).unwrap();
        assert_eq!(b.last().rank(), 4);
        assert!(b.steps.is_empty());
    }

    #[test]
    fn second_step_shape_and_tight_schedule() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let b = build_anyhd_minimal(&ring(), 2, 1, &mut rng).unwrap();
        let e = b.last();
        assert_eq!(e.rank(), 4);
        let shape: Vec<String> = e.terms().iter().map(|t| t.to_string()).collect();
        let d2 = b.schedule.degrees[0];
        assert_eq!(
            shape,
            vec!["O(-1)".to_string(), "O(0)^5".into(), format!("O({d2})^8")]
        );
        // E_1 is the twisted tangent bundle, whose dual Ω(1) is 1-regular.
        assert_eq!(b.steps[0].regularity, 1);
        assert_eq!(d2, 2);
        let tight = HdSchedule::new(4, 2, 1, vec![1]).unwrap();
        match build_anyhd(&ring(), &tight, &mut rng) {
            Err(Error::ScheduleTooTight { step, minimal }) => assert_eq!((step, minimal), (2, 2)),
            other => panic!("expected ScheduleTooTight, got {other:?}"),
        }
    }
}
