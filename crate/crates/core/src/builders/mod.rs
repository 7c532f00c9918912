//! Constructors for the pure resolutions studied here: Koszul complexes,
//! resolutions of compressed Gorenstein algebras, and the inductive bundles
//! of prescribed homological dimension.

mod anyhd;
mod generic;
mod gorenstein;
mod koszul;

pub use anyhd::{build_anyhd, build_anyhd_minimal, AnyHdBuild, HdSchedule, HdStep};
pub use generic::resolve_generic_forms;
pub use gorenstein::{betti_alpha, gorenstein_presentation, GorensteinSpec};
pub use koszul::{koszul_complex, koszul_presentation, KoszulResolution, KoszulSpec};

use crate::arith::{Field, Matrix};
use crate::complex::{FormMatrix, LineComplex, LineTerm, Presentation};
use crate::error::Result;
use crate::ring::Form;

/// Syzygies of a resolution read from the left: `F_i` is the cokernel of
/// the map into the `(i+1)`-th term, presented by the first `i+1` terms.
pub fn left_truncations<F: Field>(
    c: &LineComplex<F>,
    count: usize,
    prefix: &str,
) -> Result<Vec<Presentation<F>>> {
    (1..=count)
        .map(|i| {
            Presentation::new(
                c.ring(),
                c.terms()[..=i].to_vec(),
                c.diffs()[..i].to_vec(),
                format!("{prefix}_{i}"),
            )
        })
        .collect()
}

/// The map `O(-u)^k -> source(d)` whose columns are the kernel vectors
/// `kernel` of `d` on sections of the twist by `u`.
pub(crate) fn syzygy_map<F: Field>(
    d: &FormMatrix<F>,
    u: i64,
    kernel: &Matrix<F>,
) -> Result<FormMatrix<F>> {
    let ring = d.ring();
    let target = d.source().clone();
    let offsets = target.h0_offsets(ring.n(), u);
    let source = LineTerm::uniform(-u, kernel.cols());
    let mut out = FormMatrix::zero(ring, source, target.clone());
    for c in 0..kernel.cols() {
        let v = kernel.column(c);
        for (j, &s) in target.twists.iter().enumerate() {
            let form = Form::from_dense(ring, s + u, v[offsets[j]..offsets[j + 1]].to_vec())?;
            if !form.is_zero() {
                out.set(j, c, form)?;
            }
        }
    }
    Ok(out)
}
