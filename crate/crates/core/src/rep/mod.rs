//! Finite-dimensional modules as quiver representations.
//!
//! A representation assigns `Q^{d(v)}` to each vertex and to each arrow
//! `a: s -> t` a `d(t) x d(s)` matrix, so the composed path `a_m ... a_1` acts
//! as the matrix product `M_{a_m} ... M_{a_1}` (traversal `a_1*...*a_m`).
//! Modules are right modules: `P_a` has the paths starting at `a` as basis and
//! arrows act by extending paths at their end.

mod decompose;
mod morphism;
mod structure;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{RatMatrix, Rational};
use crate::quiver::{BoundAlgebra, Path, Quiver, VertexId};

pub use decompose::{
    are_isomorphic, decompose, decompose_with, endomorphism_radical, find_isomorphism,
    is_indecomposable, is_isomorphic_indecomposable, split_off, EndomorphismRing, Summand,
};
pub use morphism::{compose, hom_space, HomLayout, HomSpace, ModuleMorphism};
pub use structure::{
    cokernel, image, kernel, minimal_presentation, projective_cover, quotient, radical_submodule,
    socle, submodule, top, from_projective_sum, projective_sum, projective_sum_map, MinimalPresentation, ProjectiveCover, Subrepresentation,
};

struct Data {
    alg: BoundAlgebra,
    dims: Vec<usize>,
    maps: Vec<RatMatrix>,
}

/// A representation of a bound quiver. Cheap to clone.
#[derive(Clone)]
pub struct Representation(Arc<Data>);

impl PartialEq for Representation {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.dims == other.0.dims && self.0.maps == other.0.maps && self.0.alg == other.0.alg)
    }
}

impl Eq for Representation {}

impl fmt::Debug for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Representation{:?}", self.0.dims)
    }
}

impl Representation {
    /// Checks matrix shapes and that every relation acts as zero.
    pub fn new(alg: &BoundAlgebra, dims: Vec<usize>, maps: Vec<RatMatrix>) -> Result<Self> {
        let rep = Self::new_unchecked(alg, dims, maps);
        rep.validate()?;
        Ok(rep)
    }

    pub(crate) fn new_unchecked(alg: &BoundAlgebra, dims: Vec<usize>, maps: Vec<RatMatrix>) -> Self {
        Representation(Arc::new(Data { alg: alg.clone(), dims, maps }))
    }

    fn validate(&self) -> Result<()> {
        let q = self.quiver();
        if self.0.dims.len() != q.num_vertices() || self.0.maps.len() != q.num_arrows() {
            return Err(Error::InvalidRepresentation(format!(
                "expected {} dimensions and {} matrices",
                q.num_vertices(),
                q.num_arrows()
            )));
        }
        for (a, arrow) in q.arrows().iter().enumerate() {
            let m = &self.0.maps[a];
            if m.shape() != (self.0.dims[arrow.target], self.0.dims[arrow.source]) {
                return Err(Error::InvalidRepresentation(format!(
                    "matrix of `{}` has shape {:?}, expected {:?}",
                    arrow.name,
                    m.shape(),
                    (self.0.dims[arrow.target], self.0.dims[arrow.source])
                )));
            }
        }
        for r in self.algebra().presentation().relations() {
            let mut sum = RatMatrix::zeros(self.0.dims[r.end()], self.0.dims[r.start()]);
            for (c, p) in r.terms() {
                sum = sum.add(&self.path_matrix(p).scale(c));
            }
            if !sum.is_zero() {
                return Err(Error::InvalidRepresentation(format!(
                    "relation `{}` does not vanish",
                    r.display(q)
                )));
            }
        }
        Ok(())
    }

    pub fn zero(alg: &BoundAlgebra) -> Self {
        let q = alg.quiver();
        let maps = q.arrows().iter().map(|_| RatMatrix::zeros(0, 0)).collect();
        Self::new_unchecked(alg, vec![0; q.num_vertices()], maps)
    }

    pub fn algebra(&self) -> &BoundAlgebra {
        &self.0.alg
    }

    pub fn quiver(&self) -> &Quiver {
        self.0.alg.quiver()
    }

    pub fn dim_vector(&self) -> &[usize] {
        &self.0.dims
    }

    pub fn dim_at(&self, v: VertexId) -> usize {
        self.0.dims[v]
    }

    pub fn dim(&self) -> usize {
        self.0.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn map(&self, arrow: usize) -> &RatMatrix {
        &self.0.maps[arrow]
    }

    pub fn maps(&self) -> &[RatMatrix] {
        &self.0.maps
    }

    /// Matrix by which a path acts, from the start vertex space to the end vertex space.
    pub fn path_matrix(&self, p: &Path) -> RatMatrix {
        let mut m = RatMatrix::identity(self.0.dims[p.start()]);
        for &a in p.arrows() {
            m = self.0.maps[a].mul(&m);
        }
        m
    }

    /// Action of an algebra element (sparse basis combination, all paths from `from`).
    pub fn element_matrix(&self, from: VertexId, to: VertexId, elem: &[(usize, Rational)]) -> RatMatrix {
        let mut m = RatMatrix::zeros(self.0.dims[to], self.0.dims[from]);
        for (k, c) in elem {
            let p = self.0.alg.basis_element(*k);
            debug_assert_eq!((p.start(), p.end()), (from, to));
            m = m.add(&self.path_matrix(p).scale(c));
        }
        m
    }

    /// `[M : S_a]`, which is the dimension at `a`.
    pub fn composition_multiplicity(&self, a: VertexId) -> usize {
        self.0.dims[a]
    }

    /// Offsets of the vertex spaces inside the total space.
    pub fn offsets(&self) -> Vec<usize> {
        let mut off = Vec::with_capacity(self.0.dims.len() + 1);
        let mut acc = 0;
        off.push(0);
        for d in &self.0.dims {
            acc += d;
            off.push(acc);
        }
        off
    }

    pub fn to_json(&self) -> RepresentationJson {
        let q = self.quiver();
        RepresentationJson {
            vertices: q.vertex_names().to_vec(),
            dimension_vector: self.0.dims.clone(),
            arrows: q
                .arrows()
                .iter()
                .zip(&self.0.maps)
                .map(|(a, m)| ArrowMatrixJson {
                    name: a.name.clone(),
                    source: q.vertex_name(a.source).to_string(),
                    target: q.vertex_name(a.target).to_string(),
                    rows: m.rows(),
                    cols: m.cols(),
                    entries: m.data().to_vec(),
                })
                .collect(),
        }
    }

    pub fn from_json(alg: &BoundAlgebra, json: &RepresentationJson) -> Result<Self> {
        let q = alg.quiver();
        if json.vertices != q.vertex_names() {
            return Err(Error::InvalidRepresentation("vertex list does not match the quiver".into()));
        }
        let mut maps = Vec::with_capacity(q.num_arrows());
        for a in q.arrows() {
            let m = json
                .arrows
                .iter()
                .find(|m| m.name == a.name)
                .ok_or_else(|| Error::InvalidRepresentation(format!("missing matrix for `{}`", a.name)))?;
            maps.push(RatMatrix::from_vec(m.rows, m.cols, m.entries.clone())?);
        }
        Representation::new(alg, json.dimension_vector.clone(), maps)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowMatrixJson {
    pub name: String,
    pub source: String,
    pub target: String,
    pub rows: usize,
    pub cols: usize,
    /// Row-major entries as `"p/q"` strings.
    pub entries: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepresentationJson {
    pub vertices: Vec<String>,
    pub dimension_vector: Vec<usize>,
    pub arrows: Vec<ArrowMatrixJson>,
}

/// Column of `reduce(path)` restricted to one block, as a dense vector.
fn block_coords(alg: &BoundAlgebra, elem: &[(usize, Rational)], len: usize) -> Vec<Rational> {
    let mut v = vec![Rational::ZERO; len];
    for (k, c) in elem {
        v[alg.local_index(*k)] += c;
    }
    v
}

/// The indecomposable projective `P_a = e_a A`.
pub fn projective(alg: &BoundAlgebra, a: VertexId) -> Representation {
    let q = alg.quiver();
    let dims: Vec<usize> = (0..q.num_vertices()).map(|v| alg.block(a, v).len()).collect();
    let maps = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(ai, arrow)| {
            let (s, t) = (arrow.source, arrow.target);
            let cols: Vec<Vec<Rational>> = alg
                .block(a, s)
                .iter()
                .map(|&k| {
                    let p = alg.basis_element(k).then(&Path::arrow(q, ai)).expect("composable");
                    block_coords(alg, &alg.reduce_path(&p), dims[t])
                })
                .collect();
            RatMatrix::from_columns(dims[t], &cols)
        })
        .collect();
    Representation::new_unchecked(alg, dims, maps)
}

/// The indecomposable injective `I_a = D(A e_a)`, on the dual bases of the paths ending at `a`.
pub fn injective(alg: &BoundAlgebra, a: VertexId) -> Representation {
    let q = alg.quiver();
    let dims: Vec<usize> = (0..q.num_vertices()).map(|v| alg.block(v, a).len()).collect();
    let maps = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(ai, arrow)| {
            let (s, t) = (arrow.source, arrow.target);
            // row q (path t -> a), column p (path s -> a): coefficient of p in arrow * q
            let rows: Vec<Vec<Rational>> = alg
                .block(t, a)
                .iter()
                .map(|&k| {
                    let p = Path::arrow(q, ai).then(alg.basis_element(k)).expect("composable");
                    block_coords(alg, &alg.reduce_path(&p), dims[s])
                })
                .collect();
            RatMatrix::from_rows(dims[s], &rows)
        })
        .collect();
    Representation::new_unchecked(alg, dims, maps)
}

pub fn simple(alg: &BoundAlgebra, a: VertexId) -> Representation {
    let q = alg.quiver();
    let dims: Vec<usize> = (0..q.num_vertices()).map(|v| usize::from(v == a)).collect();
    let maps = q
        .arrows()
        .iter()
        .map(|arrow| RatMatrix::zeros(dims[arrow.target], dims[arrow.source]))
        .collect();
    Representation::new_unchecked(alg, dims, maps)
}

pub fn direct_sum(parts: &[Representation]) -> Result<Representation> {
    let first = parts.first().ok_or(Error::ZeroModule)?;
    let alg = first.algebra();
    if parts.iter().any(|p| p.algebra() != alg) {
        return Err(Error::AlgebraMismatch);
    }
    let q = alg.quiver();
    let dims = (0..q.num_vertices()).map(|v| parts.iter().map(|p| p.dim_at(v)).sum()).collect();
    let maps = (0..q.num_arrows())
        .map(|a| RatMatrix::block_diag(&parts.iter().map(|p| p.map(a).clone()).collect::<Vec<_>>()))
        .collect();
    Ok(Representation::new_unchecked(alg, dims, maps))
}

/// The duality `D = Hom(-, k)` into modules over `target`, which must be the opposite algebra.
pub fn dual_over(m: &Representation, target: &BoundAlgebra) -> Result<Representation> {
    let q = m.quiver();
    let tq = target.quiver();
    let matches = tq.num_vertices() == q.num_vertices()
        && tq.num_arrows() == q.num_arrows()
        && q.arrows().iter().zip(tq.arrows()).all(|(a, b)| a.source == b.target && a.target == b.source);
    if !matches {
        return Err(Error::AlgebraMismatch);
    }
    let maps = m.maps().iter().map(RatMatrix::transpose).collect();
    Ok(Representation::new_unchecked(target, m.dim_vector().to_vec(), maps))
}

/// `D M` over the opposite algebra.
pub fn dual(m: &Representation) -> Result<Representation> {
    dual_over(m, &m.algebra().opposite()?)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::quiver::parse_presentation;

    pub(crate) fn cyclic() -> BoundAlgebra {
        let src = "vertex 1 2 3\narrow alpha 1 2\narrow beta 2 1\narrow gamma 2 3\nrelation alpha*beta*alpha\n";
        BoundAlgebra::new(parse_presentation(src).unwrap()).unwrap()
    }

    #[test]
    fn indecomposable_projectives_and_injectives() {
        let a = cyclic();
        assert_eq!(projective(&a, 0).dim_vector(), &[2, 1, 1]);
        assert_eq!(projective(&a, 1).dim_vector(), &[2, 2, 2]);
        assert_eq!(projective(&a, 2).dim_vector(), &[0, 0, 1]);
        assert_eq!(injective(&a, 1).dim_vector(), &[1, 2, 0]);
        for v in 0..3 {
            projective(&a, v).validate().unwrap();
            injective(&a, v).validate().unwrap();
            simple(&a, v).validate().unwrap();
        }
    }

    #[test]
    fn relation_violation_is_rejected() {
        let a = cyclic();
        let one = RatMatrix::identity(1);
        let err = Representation::new(&a, vec![1, 1, 0], vec![one.clone(), one, RatMatrix::zeros(0, 1)]);
        assert!(matches!(err, Err(Error::InvalidRepresentation(_))));
    }

    #[test]
    fn json_round_trip() {
        let a = cyclic();
        let p = projective(&a, 1);
        let text = serde_json::to_string(&p.to_json()).unwrap();
        let back: RepresentationJson = serde_json::from_str(&text).unwrap();
        assert_eq!(Representation::from_json(&a, &back).unwrap(), p);
    }

    #[test]
    fn duality_swaps_projectives_and_injectives() {
        let a = cyclic();
        let op = a.opposite().unwrap();
        for v in 0..3 {
            let d = dual_over(&injective(&a, v), &op).unwrap();
            d.validate().unwrap();
            assert_eq!(d.dim_vector(), projective(&op, v).dim_vector());
        }
    }
}
