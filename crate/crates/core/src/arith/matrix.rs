use std::fmt;

use super::Field;
use crate::error::{Error, Result};

/// Dense row-major matrix over a field.
#[derive(Clone, PartialEq)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "Matrix {}x{} over {}",
            self.rows,
            self.cols,
            self.field.desc()
        )?;
        for r in 0..self.rows.min(12) {
            writeln!(f, "  {:?}", &self.row(r)[..self.cols.min(12)])?;
        }
        Ok(())
    }
}

impl<F: Field> Matrix<F> {
    pub fn new(field: F, rows: usize, cols: usize, data: Vec<F::Elem>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Self {
            field,
            rows,
            cols,
            data,
        })
    }

    pub fn zeros(field: F, rows: usize, cols: usize) -> Self {
        let data = vec![field.zero(); rows * cols];
        Self {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn identity(field: F, size: usize) -> Self {
        let mut m = Self::zeros(field, size, size);
        for i in 0..size {
            m.data[i * size + i] = m.field.one();
        }
        m
    }

    pub fn from_i64_rows(field: F, rows: &[Vec<i64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != c {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} has {} entries, expected {c}",
                    row.len()
                )));
            }
            data.extend(row.iter().map(|&v| field.from_i64(v)));
        }
        Self::new(field, r, c, data)
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn data(&self) -> &[F::Elem] {
        &self.data
    }
    pub fn data_mut(&mut self) -> &mut [F::Elem] {
        &mut self.data
    }
    pub fn into_data(self) -> Vec<F::Elem> {
        self.data
    }

    pub fn get(&self, r: usize, c: usize) -> &F::Elem {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F::Elem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[F::Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.get(r, c).clone());
            }
        }
        Self {
            field: self.field.clone(),
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn product(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Self::zeros(f.clone(), self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                let brow = other.row(k);
                let orow = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (o, b) in orow.iter_mut().zip(brow) {
                    if !f.is_zero(b) {
                        *o = f.add(o, &f.mul(a, b));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[F::Elem]) -> Result<Vec<F::Elem>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} for {} columns",
                v.len(),
                self.cols
            )));
        }
        let f = &self.field;
        Ok((0..self.rows)
            .map(|r| {
                self.row(r).iter().zip(v).fold(f.zero(), |acc, (a, b)| {
                    if f.is_zero(a) || f.is_zero(b) {
                        acc
                    } else {
                        f.add(&acc, &f.mul(a, b))
                    }
                })
            })
            .collect())
    }

    /// Rank via row echelon form. Wide matrices are transposed first so the
    /// elimination runs over the shorter dimension.
    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        let mut work = if self.rows > self.cols {
            self.transpose()
        } else {
            self.clone()
        };
        let field = self.field.clone();
        field.echelonize(&mut work, false).len()
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn row_echelon(&self, reduced: bool) -> (Self, Vec<usize>) {
        let mut work = self.clone();
        let field = self.field.clone();
        let pivots = field.echelonize(&mut work, reduced);
        (work, pivots)
    }

    /// Basis of the right kernel as the columns of a `cols x nullity` matrix.
    ///
    /// One basis vector per free column, in increasing column order, with a 1
    /// in its own free coordinate.
    pub fn kernel_basis(&self) -> Self {
        let f = self.field.clone();
        let (rref, pivots) = self.row_echelon(true);
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut out = Self::zeros(f.clone(), self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            out.set(fc, k, f.one());
            for (i, &pc) in pivots.iter().enumerate() {
                let v = rref.get(i, fc);
                if !f.is_zero(v) {
                    out.set(pc, k, f.neg(v));
                }
            }
        }
        out
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    /// Columns `range` as a new matrix.
    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut data = Vec::with_capacity(self.rows * cols.len());
        for r in 0..self.rows {
            for &c in cols {
                data.push(self.get(r, c).clone());
            }
        }
        Self {
            field: self.field.clone(),
            rows: self.rows,
            cols: cols.len(),
            data,
        }
    }

    /// Stack `other` below `self`.
    pub fn vstack(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "vstack of {} and {} columns",
                self.cols, other.cols
            )));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Self {
            field: self.field.clone(),
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    /// Copy `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn write_block(&mut self, r0: usize, c0: usize, block: &Self) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols);
        for r in 0..block.rows {
            let dst = (r0 + r) * self.cols + c0;
            self.data[dst..dst + block.cols].clone_from_slice(block.row(r));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{PrimeField, Rationals};
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn f5() -> PrimeField {
        PrimeField::new(5).unwrap()
    }

    fn random_matrix(f: PrimeField, rows: usize, cols: usize, seed: u64) -> Matrix<PrimeField> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let data = (0..rows * cols).map(|_| f.random(&mut rng)).collect();
        Matrix::new(f, rows, cols, data).unwrap()
    }

    #[test]
    fn identity_has_full_rank() {
        let m = Matrix::identity(PrimeField::default_prime(), 3);
        assert_eq!(m.rank(), 3);
        assert_eq!(Matrix::identity(Rationals, 3).rank(), 3);
    }

    #[test]
    fn zero_matrix_has_rank_zero() {
        assert_eq!(Matrix::zeros(PrimeField::default_prime(), 4, 7).rank(), 0);
    }

    #[test]
    fn dependent_rows_over_f5() {
        let m = Matrix::from_i64_rows(f5(), &[vec![1, 2], vec![2, 4]]).unwrap();
        assert_eq!(m.rank(), 1);
        let k = m.kernel_basis();
        assert_eq!(k.cols(), 1);
        assert!(m.product(&k).unwrap().is_zero());
    }

    #[test]
    fn kernel_of_identity_is_empty() {
        let k = Matrix::identity(f5(), 2).kernel_basis();
        assert_eq!((k.rows(), k.cols()), (2, 0));
    }

    #[test]
    fn kernel_of_all_ones_row() {
        let f = PrimeField::default_prime();
        let m = Matrix::from_i64_rows(f, &[vec![1, 1]]).unwrap();
        let k = m.kernel_basis();
        assert_eq!(k.column(0), vec![f.from_i64(-1), 1]);
    }

    #[test]
    fn product_rejects_bad_shapes() {
        let a = Matrix::zeros(f5(), 2, 3);
        assert!(matches!(a.product(&a), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn product_with_identity() {
        let a = random_matrix(PrimeField::default_prime(), 3, 4, 1);
        let i = Matrix::identity(*a.field(), 4);
        assert_eq!(a.product(&i).unwrap(), a);
    }

    #[test]
    fn transpose_reverses_products() {
        let f = PrimeField::default_prime();
        let a = random_matrix(f, 3, 4, 2);
        let b = random_matrix(f, 4, 2, 3);
        let lhs = a.product(&b).unwrap().transpose();
        let rhs = b.transpose().product(&a.transpose()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn rationals_agree_with_two_primes_on_integer_matrix() {
        let rows = vec![
            vec![1, 2, 3, 4],
            vec![2, 4, 6, 8],
            vec![0, 1, -1, 5],
            vec![1, 3, 2, 9],
        ];
        let q = Matrix::from_i64_rows(Rationals, &rows).unwrap().rank();
        let p1 = Matrix::from_i64_rows(PrimeField::new(32003).unwrap(), &rows)
            .unwrap()
            .rank();
        let p2 = Matrix::from_i64_rows(PrimeField::new(65521).unwrap(), &rows)
            .unwrap()
            .rank();
        assert_eq!((q, p1, p2), (2, 2, 2));
    }

    proptest! {
        #[test]
        fn rank_nullity_and_annihilation(rows in 0usize..40, cols in 0usize..40, seed: u64, sparse in 0u32..3) {
            let f = PrimeField::new(7).unwrap();
            let mut m = random_matrix(f, rows, cols, seed);
            // Zero out a fraction of entries so small primes produce rank deficiency.
            if sparse > 0 {
                for (i, x) in m.data_mut().iter_mut().enumerate() {
                    if !(i as u32).is_multiple_of(sparse + 1) { *x = 0; }
                }
            }
            let k = m.kernel_basis();
            prop_assert_eq!(m.rank() + k.cols(), cols);
            prop_assert!(m.product(&k).unwrap().is_zero());
            prop_assert_eq!(k.rank(), k.cols());
        }

        #[test]
        fn rank_of_product_is_bounded(seed: u64, r in 1usize..12, m in 1usize..12, c in 1usize..12) {
            let f = PrimeField::new(3).unwrap();
            let a = random_matrix(f, r, m, seed);
            let b = random_matrix(f, m, c, seed.wrapping_add(1));
            let ab = a.product(&b).unwrap();
            prop_assert!(ab.rank() <= a.rank().min(b.rank()));
        }

        #[test]
        fn fast_and_generic_elimination_agree(rows in 1usize..300, cols in 1usize..300, seed: u64, low_rank in 0usize..6) {
            let f = PrimeField::default_prime();
            // Product of thin factors gives controlled rank deficiency.
            let m = if low_rank > 0 {
                let a = random_matrix(f, rows, low_rank * 7, seed);
                let b = random_matrix(f, low_rank * 7, cols, seed ^ 0x55);
                a.product(&b).unwrap()
            } else {
                random_matrix(f, rows, cols, seed)
            };
            for reduced in [false, true] {
                let mut fast = m.clone();
                let pf = f.echelonize(&mut fast, reduced);
                let mut slow = m.clone();
                let ps = crate::arith::elim::echelon_generic(&mut slow, reduced);
                prop_assert_eq!(&pf, &ps);
                if reduced {
                    prop_assert_eq!(&fast, &slow);
                }
            }
        }
    }
}
