use std::fmt;
use std::ops::{Index, IndexMut};

use super::{LinalgError, Rational};

/// Dense row-major matrix over the rationals.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, data: vec![Rational::ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::ONE;
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Rational>) -> Result<Self, LinalgError> {
        if data.len() != rows * cols {
            return Err(LinalgError::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(RatMatrix { rows, cols, data })
    }

    /// Builds a matrix from integer rows; all rows must have equal length.
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged integer matrix");
            data.extend(row.iter().map(|&x| Rational::from_int(x)));
        }
        RatMatrix { rows: r, cols: c, data }
    }

    pub fn from_rows(cols: usize, rows: &[Vec<Rational>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            assert_eq!(row.len(), cols);
            data.extend(row.iter().cloned());
        }
        RatMatrix { rows: rows.len(), cols, data }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, cols: &[Vec<Rational>]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, x) in c.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn data(&self) -> &[Rational] {
        &self.data
    }

    pub fn into_data(self) -> Vec<Rational> {
        self.data
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rational::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn scale(&self, s: &Rational) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    pub fn try_add(&self, other: &RatMatrix) -> Result<RatMatrix, LinalgError> {
        if self.shape() != other.shape() {
            return Err(LinalgError::Shape(format!(
                "add {:?} + {:?}",
                self.shape(),
                other.shape()
            )));
        }
        Ok(RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn try_sub(&self, other: &RatMatrix) -> Result<RatMatrix, LinalgError> {
        self.try_add(&other.scale(&Rational::from_int(-1)))
    }

    pub fn try_mul(&self, other: &RatMatrix) -> Result<RatMatrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::Shape(format!(
                "mul {:?} * {:?}",
                self.shape(),
                other.shape()
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                let brow = &other.data[k * other.cols..(k + 1) * other.cols];
                let orow = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (o, b) in orow.iter_mut().zip(brow) {
                    if !b.is_zero() {
                        *o += &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Product; panics on a shape mismatch (internal callers only).
    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        self.try_mul(other).expect("matrix shape mismatch")
    }

    pub fn add(&self, other: &RatMatrix) -> RatMatrix {
        self.try_add(other).expect("matrix shape mismatch")
    }

    pub fn sub(&self, other: &RatMatrix) -> RatMatrix {
        self.try_sub(other).expect("matrix shape mismatch")
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = Rational::ZERO;
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn hstack(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.rows, other.rows);
        let mut out = Self::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..other.cols {
                out[(i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        out
    }

    pub fn vstack(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        RatMatrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// Block-diagonal matrix with the given blocks.
    pub fn block_diag(blocks: &[RatMatrix]) -> RatMatrix {
        let r: usize = blocks.iter().map(|b| b.rows).sum();
        let c: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(r, c);
        let (mut ro, mut co) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out[(ro + i, co + j)] = b[(i, j)].clone();
                }
            }
            ro += b.rows;
            co += b.cols;
        }
        out
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..self.cols {
                    self.data.swap(p * self.cols + j, r * self.cols + j);
                }
            }
            let inv = self[(r, c)].recip();
            if !inv.is_one() {
                for j in c..self.cols {
                    let v = &self[(r, j)] * &inv;
                    self[(r, j)] = v;
                }
            }
            let pivot_row: Vec<Rational> = self.row(r).to_vec();
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self[(i, c)].clone();
                if f.is_zero() {
                    continue;
                }
                let row = &mut self.data[i * self.cols..(i + 1) * self.cols];
                for j in c..self.cols {
                    if !pivot_row[j].is_zero() {
                        row[j] -= &(&f * &pivot_row[j]);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rref(&self) -> (RatMatrix, Vec<usize>) {
        let mut m = self.clone();
        let p = m.rref_in_place();
        (m, p)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space `{x : A x = 0}`, one vector per free column.
    pub fn kernel_vectors(&self) -> Vec<Vec<Rational>> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![None; self.cols];
        for (row, &c) in pivots.iter().enumerate() {
            is_pivot[c] = Some(row);
        }
        let mut out = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free].is_some() {
                continue;
            }
            let mut v = vec![Rational::ZERO; self.cols];
            v[free] = Rational::ONE;
            for (row, &c) in pivots.iter().enumerate() {
                let x = &r[(row, free)];
                if !x.is_zero() {
                    v[c] = -x;
                }
            }
            out.push(v);
        }
        out
    }

    pub fn kernel(&self) -> super::Subspace {
        super::Subspace::from_vectors(self.cols, self.kernel_vectors())
    }

    /// Column space.
    pub fn image(&self) -> super::Subspace {
        super::Subspace::from_vectors(self.rows, (0..self.cols).map(|j| self.column(j)))
    }

    /// Solves `A x = b`, returning one solution if the system is consistent.
    pub fn solve(&self, b: &[Rational]) -> Result<Option<Vec<Rational>>, LinalgError> {
        if b.len() != self.rows {
            return Err(LinalgError::Shape(format!(
                "rhs of length {} for {} rows",
                b.len(),
                self.rows
            )));
        }
        let rhs = RatMatrix::from_columns(self.rows, &[b.to_vec()]);
        let (r, pivots) = self.hstack(&rhs).rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![Rational::ZERO; self.cols];
        for (row, &c) in pivots.iter().enumerate() {
            x[c] = r[(row, self.cols)].clone();
        }
        Ok(Some(x))
    }

    /// Solves `A X = B` column by column; `None` if some column is inconsistent.
    pub fn solve_matrix(&self, b: &RatMatrix) -> Result<Option<RatMatrix>, LinalgError> {
        if b.rows != self.rows {
            return Err(LinalgError::Shape(format!(
                "rhs with {} rows for {} rows",
                b.rows, self.rows
            )));
        }
        let (r, pivots) = self.hstack(b).rref();
        if pivots.iter().any(|&c| c >= self.cols) {
            return Ok(None);
        }
        let mut x = RatMatrix::zeros(self.cols, b.cols);
        for (row, &c) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x[(c, j)] = r[(row, self.cols + j)].clone();
            }
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Option<RatMatrix> {
        if !self.is_square() {
            return None;
        }
        let x = self.solve_matrix(&RatMatrix::identity(self.rows)).ok()??;
        Some(x)
    }

    pub fn determinant(&self) -> Rational {
        assert!(self.is_square());
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Rational::ONE;
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return Rational::ZERO;
            };
            if p != c {
                for j in 0..n {
                    m.data.swap(p * n + j, c * n + j);
                }
                det = -det;
            }
            let piv = m[(c, c)].clone();
            det = &det * &piv;
            let inv = piv.recip();
            for i in c + 1..n {
                let f = &m[(i, c)] * &inv;
                if f.is_zero() {
                    continue;
                }
                for j in c..n {
                    let v = &m[(i, j)] - &(&f * &m[(c, j)]);
                    m[(i, j)] = v;
                }
            }
        }
        det
    }

    pub fn pow(&self, k: u32) -> RatMatrix {
        let mut out = RatMatrix::identity(self.rows);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].clone()).sum()
    }
}

impl Index<(usize, usize)> for RatMatrix {
    type Output = Rational;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RatMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn kernel_of_identity_is_zero() {
        for n in 0..5 {
            assert_eq!(RatMatrix::identity(n).kernel().dim(), 0);
        }
    }

    #[test]
    fn rank_of_row_block() {
        let m = RatMatrix::from_ints(&[&[1, 0]]);
        assert_eq!(m.rank(), 1);
        assert_eq!(m.kernel().dim(), 1);
        assert_eq!(RatMatrix::from_ints(&[&[0], &[1]]).rank(), 1);
    }

    #[test]
    fn shape_errors() {
        let a = RatMatrix::zeros(2, 3);
        assert!(a.try_mul(&a).is_err());
        assert!(a.solve(&[Rational::ONE]).is_err());
        assert!(RatMatrix::from_vec(2, 2, vec![Rational::ONE]).is_err());
    }

    #[test]
    fn inconsistent_system() {
        let a = RatMatrix::from_ints(&[&[1, 1], &[2, 2]]);
        let b = vec![Rational::ONE, Rational::ONE];
        assert_eq!(a.solve(&b).unwrap(), None);
    }

    /// Fraction-free (Bareiss) elimination over big integers followed by
    /// back substitution; shares no code with `RatMatrix::solve`.
    fn bareiss_solve(a: &[Vec<i64>], b: &[i64]) -> Vec<BigRational> {
        let n = a.len();
        let mut m: Vec<Vec<BigInt>> = a
            .iter()
            .zip(b)
            .map(|(row, &bi)| {
                let mut r: Vec<BigInt> = row.iter().map(|&x| BigInt::from(x)).collect();
                r.push(BigInt::from(bi));
                r
            })
            .collect();
        let mut prev = BigInt::from(1);
        for k in 0..n {
            let p = (k..n).find(|&i| m[i][k] != BigInt::from(0)).expect("singular");
            m.swap(k, p);
            for i in k + 1..n {
                for j in k + 1..=n {
                    let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                    m[i][j] = v;
                }
                m[i][k] = BigInt::from(0);
            }
            prev = m[k][k].clone();
        }
        let mut x = vec![BigRational::from_integer(BigInt::from(0)); n];
        for i in (0..n).rev() {
            let mut s = BigRational::from_integer(m[i][n].clone());
            for j in i + 1..n {
                s -= BigRational::from_integer(m[i][j].clone()) * &x[j];
            }
            x[i] = s / BigRational::from_integer(m[i][i].clone());
        }
        x
    }

    #[test]
    fn solve_matches_fraction_free_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut checked = 0;
        while checked < 25 {
            let a: Vec<Vec<i64>> =
                (0..5).map(|_| (0..5).map(|_| rng.gen_range(-9..=9)).collect()).collect();
            let b: Vec<i64> = (0..5).map(|_| rng.gen_range(-9..=9)).collect();
            let rows: Vec<&[i64]> = a.iter().map(|r| r.as_slice()).collect();
            let m = RatMatrix::from_ints(&rows);
            if m.determinant().is_zero() {
                continue;
            }
            let rhs: Vec<Rational> = b.iter().map(|&x| Rational::from_int(x)).collect();
            let x = m.solve(&rhs).unwrap().unwrap();
            let oracle = bareiss_solve(&a, &b);
            let got: Vec<BigRational> = x.iter().map(BigRational::from).collect();
            assert_eq!(got, oracle);
            checked += 1;
        }
    }

    #[test]
    fn inverse_and_determinant() {
        let m = RatMatrix::from_ints(&[&[2, 1], &[1, 1]]);
        assert_eq!(m.determinant(), Rational::ONE);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), RatMatrix::identity(2));
        assert!(RatMatrix::from_ints(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }
}
