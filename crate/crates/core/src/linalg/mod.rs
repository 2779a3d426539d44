//! Exact dense linear algebra over the rationals.

mod matrix;
mod rational;
mod subspace;

pub use matrix::RatMatrix;
pub use rational::{ParseRationalError, Rational};
pub use subspace::{SpanBuilder, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("ambient dimension mismatch: {0} vs {1}")]
    Ambient(usize, usize),
    #[error("structure constants are not associative at basis triple ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
}

/// Structure constants of a finite-dimensional algebra: `b_i b_j = sum_k c[i][j][k] b_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureConstants {
    dim: usize,
    table: Vec<Rational>,
}

impl StructureConstants {
    pub fn new(dim: usize, table: Vec<Rational>) -> Result<Self, LinalgError> {
        if table.len() != dim * dim * dim {
            return Err(LinalgError::Shape(format!(
                "{} structure constants for dimension {dim}",
                table.len()
            )));
        }
        Ok(StructureConstants { dim, table })
    }

    /// Builds the table from a product oracle returning coordinates of `b_i b_j`.
    pub fn from_fn<F>(dim: usize, mut product: F) -> Result<Self, LinalgError>
    where
        F: FnMut(usize, usize) -> Vec<Rational>,
    {
        let mut table = Vec::with_capacity(dim * dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                let p = product(i, j);
                if p.len() != dim {
                    return Err(LinalgError::Shape(format!("product of length {}", p.len())));
                }
                table.extend(p);
            }
        }
        Ok(StructureConstants { dim, table })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn coeff(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.table[(i * self.dim + j) * self.dim + k]
    }

    /// Product of two elements given in coordinates.
    pub fn multiply(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let n = self.dim;
        let mut out = vec![Rational::ZERO; n];
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if y[j].is_zero() {
                    continue;
                }
                let s = &x[i] * &y[j];
                for (k, o) in out.iter_mut().enumerate() {
                    let c = self.coeff(i, j, k);
                    if !c.is_zero() {
                        *o += &(&s * c);
                    }
                }
            }
        }
        out
    }

    pub fn check_associative(&self) -> Result<(), LinalgError> {
        let n = self.dim;
        let e = |i: usize| {
            let mut v = vec![Rational::ZERO; n];
            v[i] = Rational::ONE;
            v
        };
        for i in 0..n {
            for j in 0..n {
                let ij = self.multiply(&e(i), &e(j));
                for l in 0..n {
                    let left = self.multiply(&ij, &e(l));
                    let right = self.multiply(&e(i), &self.multiply(&e(j), &e(l)));
                    if left != right {
                        return Err(LinalgError::NotAssociative(i, j, l));
                    }
                }
            }
        }
        Ok(())
    }

    /// Matrix of left multiplication by `b_i` (columns indexed by `j`).
    pub fn left_mult(&self, i: usize) -> RatMatrix {
        let n = self.dim;
        let mut m = RatMatrix::zeros(n, n);
        for j in 0..n {
            for k in 0..n {
                m[(k, j)] = self.coeff(i, j, k).clone();
            }
        }
        m
    }
}

/// Jacobson radical of a finite-dimensional associative algebra over a field of
/// characteristic zero: the kernel of the trace form `(x, y) -> tr(L_{xy})`.
pub fn algebra_radical(sc: &StructureConstants) -> Result<Subspace, LinalgError> {
    sc.check_associative()?;
    let n = sc.dim;
    let traces: Vec<Rational> = (0..n).map(|k| sc.left_mult(k).trace()).collect();
    let mut form = RatMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let mut t = Rational::ZERO;
            for (k, tr) in traces.iter().enumerate() {
                let c = sc.coeff(i, j, k);
                if !c.is_zero() && !tr.is_zero() {
                    t += &(c * tr);
                }
            }
            form[(i, j)] = t;
        }
    }
    Ok(form.kernel())
}

/// Span of all products `x y` with `x` in `a` and `y` in `b`.
pub fn product_span(sc: &StructureConstants, a: &Subspace, b: &Subspace) -> Subspace {
    let mut span = SpanBuilder::new(sc.dim);
    for x in a.basis() {
        for y in b.basis() {
            span.insert(sc.multiply(x, y));
        }
    }
    span.finish()
}
