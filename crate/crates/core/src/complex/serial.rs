//! JSON form of presentations.
//!
//! ```json
//! {"ring": {"n": 2, "char": 32003},
//!  "terms": [[-1], [0, 0, 0]],
//!  "diffs": [[[{"exp": [1,0,0], "c": 1}], [{"exp": [0,1,0], "c": 1}], [{"exp": [0,0,1], "c": 1}]]],
//!  "label": "euler"}
//! ```
//!
//! Each differential is its entry grid flattened row-major (target rows,
//! source columns); each entry is a list of terms. Coefficients are integers
//! (reduced into the field), or `"a/b"` strings over the rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{FormMatrix, LineTerm, Presentation};
use crate::arith::{Field, FieldDesc};
use crate::error::{Error, Result};
use crate::ring::{Form, PolyRing, RingDesc};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RingJson {
    pub n: usize,
    #[serde(rename = "char")]
    pub characteristic: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermJson {
    pub exp: Vec<i64>,
    pub c: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PresentationJson {
    pub ring: RingJson,
    pub terms: Vec<Vec<i64>>,
    pub diffs: Vec<Vec<Vec<TermJson>>>,
    #[serde(default)]
    pub label: String,
}

fn coeff_to_json<F: Field>(f: &F, c: &F::Elem) -> Value {
    match f.to_i64(c) {
        Some(v) => Value::from(v),
        None => Value::from(c.to_string()),
    }
}

/// Parse an integer coefficient, or a rational `"a/b"` string.
fn coeff_from_json<F: Field>(f: &F, v: &Value, loc: &str) -> Result<F::Elem> {
    if let Some(i) = v.as_i64() {
        return Ok(f.from_i64(i));
    }
    if let Some(s) = v.as_str() {
        let (num, den) = match s.split_once('/') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (s.trim(), "1"),
        };
        let parse = |t: &str| {
            t.parse::<i64>().map_err(|_| {
                Error::schema(loc, format!("coefficient {s:?} is not a rational number"))
            })
        };
        let (a, b) = (parse(num)?, parse(den)?);
        if b == 0 {
            return Err(Error::schema(loc, "zero denominator"));
        }
        let inv = f
            .inv(&f.from_i64(b))
            .ok_or_else(|| Error::schema(loc, "denominator vanishes in the field"))?;
        return Ok(f.mul(&f.from_i64(a), &inv));
    }
    Err(Error::schema(loc, "coefficient must be an integer"))
}

impl PresentationJson {
    pub fn from_presentation<F: Field>(p: &Presentation<F>) -> Self {
        let f = p.ring().field();
        let desc = p.ring().desc();
        let diffs = p
            .diffs()
            .iter()
            .map(|d| {
                d.entries()
                    .iter()
                    .map(|e| {
                        e.terms()
                            .into_iter()
                            .map(|(exp, c)| TermJson {
                                exp: exp.into_iter().map(i64::from).collect(),
                                c: coeff_to_json(f, &c),
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Self {
            ring: RingJson {
                n: desc.n,
                characteristic: desc.field.characteristic,
            },
            terms: p.terms().iter().map(|t| t.twists.clone()).collect(),
            diffs,
            label: p.label().to_string(),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| {
            Error::schema(
                format!("line {} column {}", e.line(), e.column()),
                e.to_string(),
            )
        })
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(self).expect("presentation JSON serializes")
    }

    pub fn ring_desc(&self) -> Result<RingDesc> {
        if self.ring.n < 1 {
            return Err(Error::schema(
                "ring.n",
                "projective dimension must be at least 1",
            ));
        }
        let field = FieldDesc::new(self.ring.characteristic)
            .map_err(|e| Error::schema("ring.char", e.to_string()))?;
        Ok(RingDesc {
            n: self.ring.n,
            field,
        })
    }

    /// Validate against `ring` and build the presentation.
    pub fn to_presentation<F: Field>(&self, ring: &PolyRing<F>) -> Result<Presentation<F>> {
        let desc = self.ring_desc()?;
        if desc != ring.desc() {
            return Err(Error::schema(
                "ring",
                format!(
                    "file declares n={} over {}, expected n={} over {}",
                    desc.n,
                    desc.field,
                    ring.n(),
                    ring.field().desc()
                ),
            ));
        }
        if self.terms.is_empty() {
            return Err(Error::schema("terms", "at least one term is required"));
        }
        if self.diffs.len() + 1 != self.terms.len() {
            return Err(Error::schema(
                "diffs",
                format!(
                    "{} terms need {} differentials, found {}",
                    self.terms.len(),
                    self.terms.len() - 1,
                    self.diffs.len()
                ),
            ));
        }
        let terms: Vec<LineTerm> = self
            .terms
            .iter()
            .map(|t| LineTerm::new(t.clone()))
            .collect();
        let f = ring.field();
        let vars = ring.vars();
        let mut diffs = Vec::with_capacity(self.diffs.len());
        for (k, grid) in self.diffs.iter().enumerate() {
            let (source, target) = (&terms[k], &terms[k + 1]);
            if grid.len() != source.rank() * target.rank() {
                return Err(Error::schema(
                    format!("diffs[{k}]"),
                    format!(
                        "expected {}x{} = {} entries, found {}",
                        target.rank(),
                        source.rank(),
                        source.rank() * target.rank(),
                        grid.len()
                    ),
                ));
            }
            let mut m = FormMatrix::zero(ring, source.clone(), target.clone());
            for (e, entry) in grid.iter().enumerate() {
                let (i, j) = (e / source.rank(), e % source.rank());
                let degree = target.twists[i] - source.twists[j];
                let mut parsed = Vec::with_capacity(entry.len());
                for (t, term) in entry.iter().enumerate() {
                    let loc = format!("diffs[{k}][{e}][{t}]");
                    if term.exp.len() != vars {
                        return Err(Error::schema(
                            format!("{loc}.exp"),
                            format!(
                                "exponent has {} entries, the ring has {vars} variables",
                                term.exp.len()
                            ),
                        ));
                    }
                    if let Some(v) = term.exp.iter().position(|&x| x < 0) {
                        return Err(Error::schema(
                            format!("{loc}.exp[{v}]"),
                            "negative multiplicity",
                        ));
                    }
                    let total: i64 = term.exp.iter().sum();
                    if total != degree {
                        return Err(Error::schema(
                            format!("{loc}.exp"),
                            format!(
                                "monomial of degree {total} in entry ({i},{j}); a map O({}) -> O({}) needs degree {degree}",
                                source.twists[j], target.twists[i]
                            ),
                        ));
                    }
                    let c = coeff_from_json(f, &term.c, &format!("{loc}.c"))?;
                    parsed.push((term.exp.iter().map(|&x| x as u32).collect(), c));
                }
                let form = if parsed.is_empty() {
                    Form::zero(ring, degree)
                } else {
                    Form::from_terms(ring, degree, parsed)?
                };
                m.set(i, j, form)?;
            }
            diffs.push(m);
        }
        Presentation::new(ring, terms, diffs, self.label.clone())
    }
}

impl<F: Field> Presentation<F> {
    pub fn to_json(&self) -> PresentationJson {
        PresentationJson::from_presentation(self)
    }

    pub fn from_json_str(ring: &PolyRing<F>, text: &str) -> Result<Self> {
        PresentationJson::parse(text)?.to_presentation(ring)
    }
}

/// Render a big rational as JSON: an integer when integral, else `"a/b"`.
pub fn rational_to_json(q: &BigRational) -> Value {
    if q.is_integer() {
        let i: &BigInt = q.numer();
        match i64::try_from(i.clone()) {
            Ok(v) => Value::from(v),
            Err(_) => Value::from(i.to_string()),
        }
    } else {
        Value::from(format!("{}/{}", q.numer(), q.denom()))
    }
}
