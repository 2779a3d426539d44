//! Auslander-Reiten translates, almost split sequences and the AR quiver.
//!
//! Duality `D` transposes every arrow matrix and reinterprets the result over the
//! opposite algebra (same vertex and arrow indices, arrows reversed). The transpose
//! `Tr` is computed from a minimal presentation `P1 -> P0 -> M`: applying `Hom(-, A)`
//! turns the element matrix of `P1 -> P0` into a map between projectives of the
//! opposite algebra whose entries are the reversed paths.

mod ar;

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::{RatMatrix, Rational, Subspace};
use crate::quiver::BoundAlgebra;
use crate::rep::{
    cokernel, compose, dual_over, hom_space, is_indecomposable, kernel, minimal_presentation,
    projective_cover, projective_sum, projective_sum_map, socle, top, from_projective_sum,
    direct_sum, EndomorphismRing, ModuleMorphism, Representation,
};
use crate::quiver::VertexId;

pub use ar::{ar_quiver, enumerate_indecomposables, ARNode, ARQuiver, EnumerationLimits};

fn is_opposite(a: &BoundAlgebra, b: &BoundAlgebra) -> bool {
    let (qa, qb) = (a.quiver(), b.quiver());
    qa.num_vertices() == qb.num_vertices()
        && qa.num_arrows() == qb.num_arrows()
        && qa.arrows().iter().zip(qb.arrows()).all(|(x, y)| x.source == y.target && x.target == y.source)
}

/// Reverses an element of `alg` into the path basis of its opposite `target`.
fn reverse_element(alg: &BoundAlgebra, target: &BoundAlgebra, elem: &[(usize, Rational)]) -> Vec<(usize, Rational)> {
    let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
    for (k, c) in elem {
        let rev = alg.basis_element(*k).reversed();
        for (k2, c2) in target.reduce_path(&rev) {
            *acc.entry(k2).or_insert(Rational::ZERO) += &(c * &c2);
        }
    }
    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

/// `Tr M` as a module over `target`, which must be the opposite of `M`'s algebra.
pub fn transpose_over(m: &Representation, target: &BoundAlgebra) -> Result<Representation> {
    if m.is_zero() {
        return Err(Error::ZeroModule);
    }
    let alg = m.algebra();
    if !is_opposite(alg, target) {
        return Err(Error::AlgebraMismatch);
    }
    let pres = minimal_presentation(m)?;
    let v0 = &pres.cover.summands;
    let w1 = &pres.p1_summands;
    if w1.is_empty() {
        return Ok(Representation::zero(target));
    }
    let elems: Vec<Vec<Vec<(usize, Rational)>>> = (0..v0.len())
        .map(|j| (0..w1.len()).map(|i| reverse_element(alg, target, &pres.elements[i][j])).collect())
        .collect();
    let src = projective_sum(target, v0);
    let tgt = projective_sum(target, w1);
    let map = projective_sum_map(target, &src, v0, &tgt, w1, &elems);
    Ok(cokernel(&map).0)
}

/// `Tr M` over the opposite algebra.
pub fn transpose(m: &Representation) -> Result<Representation> {
    transpose_over(m, &m.algebra().opposite()?)
}

/// `D Tr M`, without checking indecomposability.
pub(crate) fn tau(m: &Representation) -> Result<Option<Representation>> {
    let alg = m.algebra();
    let tr = transpose_over(m, &alg.opposite()?)?;
    if tr.is_zero() {
        return Ok(None);
    }
    dual_over(&tr, alg).map(Some)
}

/// `Tr D M`, without checking indecomposability.
pub(crate) fn tau_inverse(m: &Representation) -> Result<Option<Representation>> {
    let alg = m.algebra();
    let op = alg.opposite()?;
    let dm = dual_over(m, &op)?;
    let tr = transpose_over(&dm, alg)?;
    Ok((!tr.is_zero()).then_some(tr))
}

fn require_indecomposable(m: &Representation) -> Result<()> {
    if !is_indecomposable(m)? {
        return Err(Error::Decomposable);
    }
    Ok(())
}

/// `tau M = D Tr M`; `None` iff `M` is projective.
pub fn ar_translate(m: &Representation) -> Result<Option<Representation>> {
    require_indecomposable(m)?;
    tau(m)
}

/// `tau^-1 M = Tr D M`; `None` iff `M` is injective.
pub fn ar_translate_inverse(m: &Representation) -> Result<Option<Representation>> {
    require_indecomposable(m)?;
    tau_inverse(m)
}

/// The vertex `a` with `M = P_a`, for indecomposable `M`.
pub fn projective_vertex(m: &Representation) -> Option<VertexId> {
    let (t, _) = top(m);
    if t.dim() != 1 {
        return None;
    }
    let a = (0..t.dim_vector().len()).find(|&v| t.dim_at(v) == 1)?;
    let alg = m.algebra();
    let dim_p: usize = (0..alg.num_vertices()).map(|v| alg.block(a, v).len()).sum();
    (m.dim() == dim_p).then_some(a)
}

/// The vertex `a` with `M = I_a`, for indecomposable `M`.
pub fn injective_vertex(m: &Representation) -> Option<VertexId> {
    let s = socle(m).module;
    if s.dim() != 1 {
        return None;
    }
    let a = (0..s.dim_vector().len()).find(|&v| s.dim_at(v) == 1)?;
    let alg = m.algebra();
    let dim_i: usize = (0..alg.num_vertices()).map(|v| alg.block(v, a).len()).sum();
    (m.dim() == dim_i).then_some(a)
}

/// A short exact sequence `0 -> X -> E -> C -> 0` with `X -> E` left almost split.
/// For injective `X` only the left almost split map `X -> X / soc X` exists.
#[derive(Clone, Debug)]
pub struct AlmostSplitSequence {
    pub start: Representation,
    pub middle: Representation,
    pub end: Option<Representation>,
    pub f: ModuleMorphism,
    pub g: Option<ModuleMorphism>,
}

/// Left almost split map starting at the indecomposable `X`.
pub fn almost_split_sequence(x: &Representation) -> Result<AlmostSplitSequence> {
    require_indecomposable(x)?;
    match tau_inverse(x)? {
        Some(c) => almost_split_ending(x, &c),
        None => Ok(injective_left_map(x)),
    }
}

pub(crate) fn injective_left_map(x: &Representation) -> AlmostSplitSequence {
    let soc = socle(x);
    let (mid, q) = cokernel(&soc.inclusion);
    AlmostSplitSequence { start: x.clone(), middle: mid, end: None, f: q, g: None }
}

/// The lift `P -> P` of an endomorphism of `C` along the projective cover.
fn lift_endomorphism(
    p: &Representation,
    summands: &[VertexId],
    generators: &[Vec<Rational>],
    pi: &ModuleMorphism,
    phi: &ModuleMorphism,
) -> Result<ModuleMorphism> {
    let mut images = Vec::with_capacity(summands.len());
    for (&v, g) in summands.iter().zip(generators) {
        let y = phi.block(v).mul_vec(g);
        let z = pi.block(v).solve(&y)?.ok_or_else(|| Error::Inconsistency("projective cover is not onto".into()))?;
        images.push(z);
    }
    Ok(from_projective_sum(p, summands, p, &images))
}

/// Restricts `h: P -> P` to the submodule with inclusion `iota` (assumed `h`-stable).
fn restrict(h: &ModuleMorphism, iota: &ModuleMorphism) -> Result<ModuleMorphism> {
    let om = iota.source();
    let mut blocks = Vec::with_capacity(iota.blocks().len());
    for (v, i) in iota.blocks().iter().enumerate() {
        let d = om.dim_at(v);
        if d == 0 {
            blocks.push(RatMatrix::zeros(0, 0));
            continue;
        }
        let rhs = h.block(v).mul(i);
        let x = i
            .solve_matrix(&rhs)?
            .ok_or_else(|| Error::Inconsistency("lift does not preserve the syzygy".into()))?;
        blocks.push(x);
    }
    Ok(ModuleMorphism::new_unchecked(om, om, blocks))
}

/// Solves `g q = h` for `g` with `q` surjective, blockwise.
fn factor_through_epi(q: &ModuleMorphism, h: &ModuleMorphism) -> Result<ModuleMorphism> {
    let mut blocks = Vec::new();
    for v in 0..q.blocks().len() {
        let (qb, hb) = (q.block(v), h.block(v));
        let rows = hb.rows();
        if qb.rows() == 0 {
            blocks.push(RatMatrix::zeros(rows, 0));
            continue;
        }
        if rows == 0 {
            blocks.push(RatMatrix::zeros(0, qb.rows()));
            continue;
        }
        let gt = qb
            .transpose()
            .solve_matrix(&hb.transpose())?
            .ok_or_else(|| Error::Inconsistency("map does not factor through the cokernel".into()))?;
        blocks.push(gt.transpose());
    }
    Ok(ModuleMorphism::new_unchecked(q.target(), h.target(), blocks))
}

/// The almost split sequence `0 -> X -> E -> C -> 0` for `C = tau^-1 X`.
///
/// Ext^1(C, X) is `Hom(Omega C, X)` modulo maps extending to the projective cover; the
/// sequence is the pushout along any class in the End(C)-socle.
pub(crate) fn almost_split_ending(x: &Representation, c: &Representation) -> Result<AlmostSplitSequence> {
    let cover = projective_cover(c)?;
    let (p, pi) = (&cover.module, &cover.epi);
    let omega = kernel(pi);
    let (om, iota) = (&omega.module, &omega.inclusion);
    let hox = hom_space(om, x)?;
    let hpx = hom_space(p, x)?;
    let il = iota.layout();
    let iflat = iota.to_flat();
    let b = Subspace::from_vectors(
        hox.ambient(),
        hpx.space().basis().iter().map(|h| il.compose_flat(hpx.layout(), h, &iflat)),
    );
    if b.dim() == hox.dim() {
        return Err(Error::Inconsistency("Ext^1(tau^-1 X, X) vanishes".into()));
    }
    // syzygies of the radical of End(C)
    let ring = EndomorphismRing::new(c)?;
    let mut omegas = Vec::new();
    for flat in ring.radical_basis() {
        let phi = ring.hom().morphism(&flat);
        let lift = lift_endomorphism(p, &cover.summands, &cover.generators, pi, &phi)?;
        omegas.push(restrict(&lift, iota)?.to_flat());
    }
    let hl = hox.layout();
    let ol = crate::rep::HomLayout::between(om, om);
    let basis = hox.space().basis();
    let xi_flat = if omegas.is_empty() {
        basis.iter().find(|h| !b.contains_vector(h)).cloned()
    } else {
        // columns: residuals of h_i o Omega(phi_k) modulo B, stacked over k
        let cols: Vec<Vec<Rational>> = basis
            .iter()
            .map(|h| omegas.iter().flat_map(|o| b.residual(&ol.compose_flat(hl, h, o))).collect())
            .collect();
        let rows = cols.first().map_or(0, Vec::len);
        let soc = RatMatrix::from_columns(rows, &cols).kernel_vectors();
        soc.iter().map(|c| hox.combination(c)).find(|xi| !b.contains_vector(xi))
    };
    let xi = xi_flat.ok_or_else(|| Error::Inconsistency("Ext^1 socle lies in the trivial classes".into()))?;
    let xi = hox.morphism(&xi);
    // E = coker((xi, -iota): Omega -> X (+) P)
    let y = direct_sum(&[x.clone(), p.clone()])?;
    let n = x.quiver().num_vertices();
    let blocks: Vec<RatMatrix> =
        (0..n).map(|v| xi.block(v).vstack(&iota.block(v).scale(&Rational::from_int(-1)))).collect();
    let push = ModuleMorphism::new_unchecked(om, &y, blocks);
    let (e, q) = cokernel(&push);
    let incl_x: Vec<RatMatrix> = (0..n)
        .map(|v| RatMatrix::identity(x.dim_at(v)).vstack(&RatMatrix::zeros(p.dim_at(v), x.dim_at(v))))
        .collect();
    let incl_x = ModuleMorphism::new_unchecked(x, &y, incl_x);
    let f = compose(&q, &incl_x)?;
    let to_c: Vec<RatMatrix> =
        (0..n).map(|v| RatMatrix::zeros(c.dim_at(v), x.dim_at(v)).hstack(pi.block(v))).collect();
    let to_c = ModuleMorphism::new_unchecked(&y, c, to_c);
    let g = factor_through_epi(&q, &to_c)?;
    Ok(AlmostSplitSequence { start: x.clone(), middle: e, end: Some(c.clone()), f, g: Some(g) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::tests::cyclic;
    use crate::rep::{are_isomorphic, injective, projective, simple};

    #[test]
    fn projectives_and_injectives_have_no_translate() {
        let a = cyclic();
        for v in 0..3 {
            assert!(ar_translate(&projective(&a, v)).unwrap().is_none());
            assert!(ar_translate_inverse(&injective(&a, v)).unwrap().is_none());
            assert_eq!(projective_vertex(&projective(&a, v)), Some(v));
            assert_eq!(injective_vertex(&injective(&a, v)), Some(v));
        }
    }

    #[test]
    fn translates_are_mutually_inverse() {
        let a = cyclic();
        let s1 = simple(&a, 0);
        let t = ar_translate(&s1).unwrap().unwrap();
        let back = ar_translate_inverse(&t).unwrap().unwrap();
        assert!(are_isomorphic(&back, &s1).unwrap());
    }

    #[test]
    fn almost_split_sequences_are_exact() {
        let a = cyclic();
        let x = projective(&a, 2);
        let seq = almost_split_sequence(&x).unwrap();
        let (c, g) = (seq.end.unwrap(), seq.g.unwrap());
        assert_eq!(seq.middle.dim(), x.dim() + c.dim());
        assert!(seq.f.is_mono());
        assert!(g.is_epi());
        assert!(compose(&g, &seq.f).unwrap().is_zero());
    }
}
