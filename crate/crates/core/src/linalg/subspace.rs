use super::{LinalgError, RatMatrix, Rational};

/// A linear subspace of `Q^n`, stored as the rows of its reduced row echelon
/// basis. Two subspaces are equal exactly when their stored forms are equal.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace {
    ambient: usize,
    rows: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        let rows = (0..ambient)
            .map(|i| {
                let mut v = vec![Rational::ZERO; ambient];
                v[i] = Rational::ONE;
                v
            })
            .collect();
        Subspace { ambient, rows, pivots: (0..ambient).collect() }
    }

    pub fn from_vectors<I>(ambient: usize, vectors: I) -> Self
    where
        I: IntoIterator<Item = Vec<Rational>>,
    {
        let mut b = SpanBuilder::new(ambient);
        for v in vectors {
            b.insert(v);
        }
        b.finish()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_matrix(&self) -> RatMatrix {
        RatMatrix::from_rows(self.ambient, &self.rows)
    }

    fn check(&self, other: &Subspace) -> Result<(), LinalgError> {
        if self.ambient != other.ambient {
            return Err(LinalgError::Ambient(self.ambient, other.ambient));
        }
        Ok(())
    }

    /// `v` minus its projection along the stored basis (zero iff `v` lies in the space).
    pub fn residual(&self, v: &[Rational]) -> Vec<Rational> {
        let mut w = v.to_vec();
        reduce_against(&self.rows, &self.pivots, &mut w);
        w
    }

    pub fn contains_vector(&self, v: &[Rational]) -> bool {
        assert_eq!(v.len(), self.ambient, "vector length does not match ambient dimension");
        let mut w = v.to_vec();
        reduce_against(&self.rows, &self.pivots, &mut w);
        w.iter().all(Rational::is_zero)
    }

    /// Coordinates of `v` in the stored basis, if `v` lies in the space.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        if !self.contains_vector(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check(other)?;
        let mut b = SpanBuilder::from_subspace(self.clone());
        for r in &other.rows {
            b.insert(r.clone());
        }
        Ok(b.finish())
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(self.ambient));
        }
        // x = sum a_i A_i = sum b_j B_j  <=>  [A^T | -B^T] (a, b) = 0
        let a = self.dim();
        let mut cols: Vec<Vec<Rational>> = self.rows.clone();
        cols.extend(other.rows.iter().map(|r| r.iter().map(|x| -x).collect()));
        let m = RatMatrix::from_columns(self.ambient, &cols);
        let vecs = m.kernel_vectors().into_iter().map(|k| {
            let mut x = vec![Rational::ZERO; self.ambient];
            for (i, coeff) in k[..a].iter().enumerate() {
                if coeff.is_zero() {
                    continue;
                }
                for (xj, aj) in x.iter_mut().zip(&self.rows[i]) {
                    if !aj.is_zero() {
                        *xj += &(coeff * aj);
                    }
                }
            }
            x
        });
        Ok(Subspace::from_vectors(self.ambient, vecs))
    }

    pub fn contains(&self, other: &Subspace) -> Result<bool, LinalgError> {
        self.check(other)?;
        Ok(other.rows.iter().all(|r| self.contains_vector(r)))
    }

    /// Basis vectors of a complement of `self` inside `outer`, chosen from
    /// `outer`'s stored basis.
    pub fn complement_in(&self, outer: &Subspace) -> Result<Vec<Vec<Rational>>, LinalgError> {
        self.check(outer)?;
        let mut b = SpanBuilder::from_subspace(self.clone());
        let mut out = Vec::new();
        for r in &outer.rows {
            if b.insert(r.clone()) {
                out.push(r.clone());
            }
        }
        Ok(out)
    }
}

fn reduce_against(rows: &[Vec<Rational>], pivots: &[usize], w: &mut [Rational]) {
    for (row, &p) in rows.iter().zip(pivots) {
        if w[p].is_zero() {
            continue;
        }
        let f = w[p].clone();
        for (x, r) in w.iter_mut().zip(row) {
            if !r.is_zero() {
                *x -= &(&f * r);
            }
        }
    }
}

/// Incrementally maintained reduced row echelon basis.
#[derive(Clone, Debug)]
pub struct SpanBuilder {
    ambient: usize,
    rows: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl SpanBuilder {
    pub fn new(ambient: usize) -> Self {
        SpanBuilder { ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn from_subspace(s: Subspace) -> Self {
        SpanBuilder { ambient: s.ambient, rows: s.rows, pivots: s.pivots }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, mut v: Vec<Rational>) -> bool {
        assert_eq!(v.len(), self.ambient, "vector length does not match ambient dimension");
        reduce_against(&self.rows, &self.pivots, &mut v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].recip();
        if !inv.is_one() {
            for x in v.iter_mut().skip(p) {
                if !x.is_zero() {
                    *x = &*x * &inv;
                }
            }
        }
        for row in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (x, y) in row.iter_mut().zip(&v) {
                if !y.is_zero() {
                    *x -= &(&f * y);
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, v);
        true
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        let mut w = v.to_vec();
        reduce_against(&self.rows, &self.pivots, &mut w);
        w.iter().all(Rational::is_zero)
    }

    pub fn finish(self) -> Subspace {
        Subspace { ambient: self.ambient, rows: self.rows, pivots: self.pivots }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| Rational::from_int(x)).collect()
    }

    #[test]
    fn sum_with_zero_and_self_intersection() {
        let s = Subspace::from_vectors(3, vec![v(&[1, 2, 3]), v(&[0, 1, 1])]);
        assert_eq!(s.sum(&Subspace::zero(3)).unwrap(), s);
        assert_eq!(s.intersect(&s).unwrap(), s);
    }

    #[test]
    fn ambient_mismatch_is_an_error() {
        let a = Subspace::zero(2);
        let b = Subspace::zero(3);
        assert!(matches!(a.sum(&b), Err(LinalgError::Ambient(2, 3))));
        assert!(a.intersect(&b).is_err());
        assert!(a.contains(&b).is_err());
    }

    #[test]
    fn canonical_form_is_independent_of_spanning_set() {
        let a = Subspace::from_vectors(3, vec![v(&[1, 1, 0]), v(&[0, 1, 1])]);
        let b = Subspace::from_vectors(3, vec![v(&[1, 2, 1]), v(&[2, 1, -1]), v(&[1, 0, -1])]);
        assert_eq!(a, b);
        assert_eq!(a.coordinates(&v(&[1, 2, 1])).unwrap().len(), 2);
        assert!(a.coordinates(&v(&[1, 0, 0])).is_none());
    }

    fn small_vec() -> impl Strategy<Value = Vec<i64>> {
        proptest::collection::vec(-3i64..=3, 6)
    }

    proptest! {
        #[test]
        fn dimension_formula(a in proptest::collection::vec(small_vec(), 0..5),
                             b in proptest::collection::vec(small_vec(), 0..5)) {
            let sa = Subspace::from_vectors(6, a.iter().map(|x| v(x)));
            let sb = Subspace::from_vectors(6, b.iter().map(|x| v(x)));
            let s = sa.sum(&sb).unwrap();
            let i = sa.intersect(&sb).unwrap();
            prop_assert_eq!(sa.dim() + sb.dim(), s.dim() + i.dim());
            prop_assert!(s.contains(&sa).unwrap() && s.contains(&sb).unwrap());
            prop_assert!(sa.contains(&i).unwrap() && sb.contains(&i).unwrap());
        }
    }
}
