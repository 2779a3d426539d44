//! Powers of the radical of the module category, restricted to indecomposables.
//!
//! `R^1(X, Y)` is `Hom(X, Y)` for non-isomorphic nodes and `rad End(X)` on the diagonal.
//! Higher powers are spanned by composites `R^n(Z, Y) o R^1(X, Z)`. Since every radical map
//! out of `X` factors through a left almost split map `(f_i): X -> (+) Z_i`, the default
//! strategy only composes with the components `f_i`.

mod methods;

use std::sync::Arc;

use rayon::prelude::*;

use crate::artrans::ARQuiver;
use crate::error::{Error, Result};
use crate::linalg::{Rational, SpanBuilder, Subspace};
use crate::quiver::VertexId;
use crate::rep::{compose, decompose_with, hom_space, HomSpace, ModuleMorphism, Representation};

pub use methods::{involvement_counts, method_vertex_set, nilpotency_index, Method, NilpotencyReport, VertexValues};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Strategy {
    /// `R^{n+1}(X, Y) = sum_i R^n(Z_i, Y) f_i` over the left almost split components.
    #[default]
    AlmostSplit,
    /// `R^{n+1}(X, Y) = sum_Z R^n(Z, Y) R^1(X, Z)` over all nodes.
    Definitional,
}

#[derive(Clone, Debug)]
pub struct RadicalFiltration {
    ar: Arc<ARQuiver>,
    homs: Vec<HomSpace>,
    /// `layers[k][x * n + y]` is `R^{k+1}(X, Y)`; only nonzero layers are kept.
    layers: Vec<Vec<Subspace>>,
}

impl RadicalFiltration {
    pub fn new(ar: Arc<ARQuiver>) -> Result<Self> {
        Self::with_strategy(ar, Strategy::AlmostSplit)
    }

    pub fn with_strategy(ar: Arc<ARQuiver>, strategy: Strategy) -> Result<Self> {
        let n = ar.len();
        let homs: Vec<HomSpace> = (0..n * n)
            .into_par_iter()
            .map(|k| hom_space(&ar.node(k / n).module, &ar.node(k % n).module))
            .collect::<Result<_>>()?;
        let first: Vec<Subspace> = (0..n * n)
            .map(|k| {
                let (x, y) = (k / n, k % n);
                if x == y {
                    Subspace::from_vectors(homs[k].ambient(), ar.node(x).end.radical_basis())
                } else {
                    homs[k].space().clone()
                }
            })
            .collect();
        let mut filt = RadicalFiltration { ar, homs, layers: Vec::new() };
        let mut cur = first;
        while cur.iter().any(|s| !s.is_zero()) {
            let next = match strategy {
                Strategy::AlmostSplit => filt.next_almost_split(&cur),
                Strategy::Definitional => filt.next_definitional(&cur),
            };
            if next.iter().zip(&cur).all(|(a, b)| a.dim() == b.dim()) {
                return Err(Error::Inconsistency(
                    "radical powers stabilise at a nonzero ideal; the algebra is not representation-finite".into(),
                ));
            }
            filt.layers.push(std::mem::replace(&mut cur, next));
        }
        Ok(filt)
    }

    fn compose_into(&self, span: &mut SpanBuilder, x: usize, z: usize, y: usize, g: &[Rational], f: &[Rational]) {
        let n = self.ar.len();
        let inner = self.homs[x * n + z].layout();
        let outer = self.homs[z * n + y].layout();
        let h = inner.compose_flat(outer, g, f);
        if h.iter().any(|c| !c.is_zero()) {
            span.insert(h);
        }
    }

    fn next_almost_split(&self, cur: &[Subspace]) -> Vec<Subspace> {
        let n = self.ar.len();
        let left: Vec<Vec<(usize, Vec<Rational>)>> = (0..n)
            .map(|x| self.ar.left_almost_split(x).iter().map(|(z, f)| (*z, f.to_flat())).collect())
            .collect();
        (0..n * n)
            .into_par_iter()
            .map(|k| {
                let (x, y) = (k / n, k % n);
                let mut span = SpanBuilder::new(self.homs[k].ambient());
                for (z, f) in &left[x] {
                    for g in cur[z * n + y].basis() {
                        self.compose_into(&mut span, x, *z, y, g, f);
                    }
                }
                span.finish()
            })
            .collect()
    }

    fn next_definitional(&self, cur: &[Subspace]) -> Vec<Subspace> {
        let n = self.ar.len();
        let first = self.layers.first().map(Vec::as_slice).unwrap_or(cur);
        (0..n * n)
            .into_par_iter()
            .map(|k| {
                let (x, y) = (k / n, k % n);
                let mut span = SpanBuilder::new(self.homs[k].ambient());
                for z in 0..n {
                    for f in first[x * n + z].basis() {
                        for g in cur[z * n + y].basis() {
                            self.compose_into(&mut span, x, z, y, g, f);
                        }
                    }
                }
                span.finish()
            })
            .collect()
    }

    pub fn ar(&self) -> &ARQuiver {
        &self.ar
    }

    pub fn ar_arc(&self) -> Arc<ARQuiver> {
        self.ar.clone()
    }

    pub fn len(&self) -> usize {
        self.ar.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ar.is_empty()
    }

    pub fn hom(&self, x: usize, y: usize) -> &HomSpace {
        &self.homs[x * self.ar.len() + y]
    }

    /// `R^n(X, Y)`; `R^0` is the whole Hom space.
    pub fn layer(&self, n: usize, x: usize, y: usize) -> Subspace {
        let k = x * self.ar.len() + y;
        match n {
            0 => self.homs[k].space().clone(),
            n if n <= self.layers.len() => self.layers[n - 1][k].clone(),
            _ => Subspace::zero(self.homs[k].ambient()),
        }
    }

    pub fn layer_dim(&self, n: usize, x: usize, y: usize) -> usize {
        let k = x * self.ar.len() + y;
        match n {
            0 => self.homs[k].dim(),
            n if n <= self.layers.len() => self.layers[n - 1][k].dim(),
            _ => 0,
        }
    }

    /// Number of nonzero powers `R^1, ..., R^L`.
    pub fn nonzero_layers(&self) -> usize {
        self.layers.len()
    }

    /// Layers computed, counting the final zero layer.
    pub fn layers_computed(&self) -> usize {
        self.layers.len() + 1
    }

    /// The least `m` with `R^m = 0`.
    pub fn nilpotency_index(&self) -> usize {
        self.layers.len() + 1
    }

    /// `dim R^1(X, Y) / R^2(X, Y)`.
    pub fn irreducible_dim(&self, x: usize, y: usize) -> usize {
        self.layer_dim(1, x, y) - self.layer_dim(2, x, y)
    }

    /// Largest `n` with `f in R^n(X, Y)` for a flat morphism between nodes.
    pub fn length_between(&self, x: usize, y: usize, flat: &[Rational]) -> Result<usize> {
        if flat.iter().all(Rational::is_zero) {
            return Err(Error::ZeroMorphism);
        }
        if !self.hom(x, y).space().contains_vector(flat) {
            return Err(Error::InvalidRepresentation("not a module morphism".into()));
        }
        let k = x * self.ar.len() + y;
        Ok(self.layers.iter().take_while(|l| l[k].contains_vector(flat)).count())
    }

    /// Indecomposable summands of `m` as nodes, with split inclusions `node -> m`
    /// and projections `m -> node`.
    fn components(&self, m: &Representation) -> Result<Vec<(usize, ModuleMorphism, ModuleMorphism)>> {
        if let Some((k, iso)) = self.ar.locate(m)? {
            let inv = iso.inverse().ok_or_else(|| Error::Inconsistency("isomorphism is not invertible".into()))?;
            return Ok(vec![(k, inv, iso)]);
        }
        let known = self.ar.nodes().iter().map(|n| (&n.module, &n.end));
        let mut out = Vec::new();
        for s in decompose_with(m, known)? {
            let (k, iso) = self.ar.locate(&s.module)?.ok_or_else(|| {
                Error::UnknownModule(format!("summand with dimension vector {:?}", s.module.dim_vector()))
            })?;
            let inv = iso.inverse().ok_or_else(|| Error::Inconsistency("isomorphism is not invertible".into()))?;
            out.push((k, compose(&s.inclusion, &inv)?, compose(&iso, &s.projection)?));
        }
        Ok(out)
    }

    /// Largest `n` with `f in R^n(M, N)`; `0` when `f` is not in the radical.
    pub fn morphism_length(&self, f: &ModuleMorphism) -> Result<usize> {
        if f.is_zero() {
            return Err(Error::ZeroMorphism);
        }
        let src = self.components(f.source())?;
        let tgt = self.components(f.target())?;
        let mut best: Option<usize> = None;
        for (x, incl, _) in &src {
            for (y, _, proj) in &tgt {
                let c = compose(proj, &compose(f, incl)?)?;
                if c.is_zero() {
                    continue;
                }
                let l = self.length_between(*x, *y, &c.to_flat())?;
                best = Some(best.map_or(l, |b| b.min(l)));
            }
        }
        best.ok_or(Error::ZeroMorphism)
    }

    /// The composite `P_a -> S_a -> I_a` on the node modules.
    pub fn canonical_composite(&self, a: VertexId) -> Result<(ModuleMorphism, ModuleMorphism, ModuleMorphism)> {
        let missing = |what: &str| Error::UnknownModule(format!("{what} for vertex {a} is not a node"));
        let p = self.ar.projective_node(a).ok_or_else(|| missing("projective"))?;
        let s = self.ar.simple_node(a).ok_or_else(|| missing("simple"))?;
        let i = self.ar.injective_node(a).ok_or_else(|| missing("injective"))?;
        let (hp, hq) = (self.hom(p, s), self.hom(s, i));
        if hp.dim() != 1 || hq.dim() != 1 {
            return Err(Error::Inconsistency(format!("Hom(P_a, S_a) or Hom(S_a, I_a) is not one-dimensional at vertex {a}")));
        }
        let pm = hp.morphism(&hp.space().basis()[0]);
        let qm = hq.morphism(&hq.space().basis()[0]);
        let qp = compose(&qm, &pm)?;
        if qp.is_zero() {
            return Err(Error::Inconsistency(format!("P_a -> S_a -> I_a vanishes at vertex {a}")));
        }
        Ok((pm, qm, qp))
    }

    /// `r_a`: the radical length of the composite `P_a -> S_a -> I_a`.
    pub fn canonical_r(&self, a: VertexId) -> Result<usize> {
        let (_, _, qp) = self.canonical_composite(a)?;
        let p = self.ar.projective_node(a).expect("checked");
        let i = self.ar.injective_node(a).expect("checked");
        self.length_between(p, i, &qp.to_flat())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::artrans::{ar_quiver, EnumerationLimits};
    use crate::quiver::{parse_presentation, BoundAlgebra};
    use crate::rep::tests::cyclic;

    fn filtration(a: &BoundAlgebra, strategy: Strategy) -> RadicalFiltration {
        let ar = Arc::new(ar_quiver(a, EnumerationLimits::default()).unwrap());
        RadicalFiltration::with_strategy(ar, strategy).unwrap()
    }

    #[test]
    fn a2_radical_square_is_zero() {
        let a = BoundAlgebra::new(parse_presentation("vertex 1 2\narrow a 1 2\n").unwrap()).unwrap();
        let f = filtration(&a, Strategy::AlmostSplit);
        assert_eq!(f.nilpotency_index(), 2);
        assert_eq!(f.canonical_r(0).unwrap(), 1);
    }

    #[test]
    fn semisimple_has_index_one() {
        let a = BoundAlgebra::new(parse_presentation("vertex 1 2\n").unwrap()).unwrap();
        let f = filtration(&a, Strategy::AlmostSplit);
        assert_eq!(f.nilpotency_index(), 1);
        assert_eq!(f.canonical_r(1).unwrap(), 0);
    }

    #[test]
    fn cyclic_example_values() {
        let f = filtration(&cyclic(), Strategy::AlmostSplit);
        assert_eq!(f.nilpotency_index(), 15);
        assert_eq!(f.canonical_r(0).unwrap(), 14);
        assert_eq!(f.canonical_r(1).unwrap(), 14);
        let n = f.len();
        for x in 0..n {
            for y in 0..n {
                assert_eq!(f.irreducible_dim(x, y), f.ar().irreducible_dim(x, y));
                assert_eq!(f.morphism_length(&ModuleMorphism::identity(&f.ar().node(x).module)).unwrap(), 0);
            }
        }
    }

    #[test]
    fn strategies_agree() {
        let a = cyclic();
        let s = filtration(&a, Strategy::AlmostSplit);
        let d = filtration(&a, Strategy::Definitional);
        assert_eq!(s.nonzero_layers(), d.nonzero_layers());
        let n = s.len();
        for l in 1..=s.nonzero_layers() {
            for x in 0..n {
                for y in 0..n {
                    assert_eq!(s.layer(l, x, y), d.layer(l, x, y));
                }
            }
        }
    }

    #[test]
    fn decomposable_endpoints() {
        let a = cyclic();
        let f = filtration(&a, Strategy::AlmostSplit);
        let (p, _, qp) = f.canonical_composite(0).unwrap();
        let m = crate::rep::direct_sum(&[p.source().clone(), crate::rep::simple(&a, 2)]).unwrap();
        // P_1 (+) S_3 -> I_1 restricting to qp on the first summand
        let blocks = (0..3)
            .map(|v| qp.block(v).hstack(&crate::linalg::RatMatrix::zeros(qp.target().dim_at(v), usize::from(v == 2))))
            .collect();
        let g = ModuleMorphism::new(&m, qp.target(), blocks).unwrap();
        assert_eq!(f.morphism_length(&g).unwrap(), 14);
        assert!(f.morphism_length(&ModuleMorphism::zero(&m, &m)).is_err());
        drop(p);
    }
}
