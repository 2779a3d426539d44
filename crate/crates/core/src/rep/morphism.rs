use crate::error::{Error, Result};
use crate::linalg::{RatMatrix, Rational, Subspace};

use super::Representation;

/// Coordinates for `Hom_k`-blocks: vertex `v` owns a row-major `d_N(v) x d_M(v)` block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomLayout {
    src: Vec<usize>,
    tgt: Vec<usize>,
    offsets: Vec<usize>,
}

impl HomLayout {
    pub fn new(src: &[usize], tgt: &[usize]) -> Self {
        let mut offsets = Vec::with_capacity(src.len() + 1);
        let mut acc = 0;
        offsets.push(0);
        for (s, t) in src.iter().zip(tgt) {
            acc += s * t;
            offsets.push(acc);
        }
        HomLayout { src: src.to_vec(), tgt: tgt.to_vec(), offsets }
    }

    pub fn between(m: &Representation, n: &Representation) -> Self {
        Self::new(m.dim_vector(), n.dim_vector())
    }

    pub fn len(&self) -> usize {
        *self.offsets.last().unwrap_or(&0)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    #[inline]
    pub fn index(&self, v: usize, i: usize, j: usize) -> usize {
        self.offsets[v] + i * self.src[v] + j
    }

    pub fn block(&self, flat: &[Rational], v: usize) -> RatMatrix {
        let data = flat[self.offsets[v]..self.offsets[v + 1]].to_vec();
        RatMatrix::from_vec(self.tgt[v], self.src[v], data).expect("block shape")
    }

    pub fn blocks(&self, flat: &[Rational]) -> Vec<RatMatrix> {
        (0..self.src.len()).map(|v| self.block(flat, v)).collect()
    }

    pub fn flatten(&self, blocks: &[RatMatrix]) -> Vec<Rational> {
        let mut out = Vec::with_capacity(self.len());
        for b in blocks {
            out.extend_from_slice(b.data());
        }
        out
    }

    /// Flat coordinates of `g o f` where `self` lays out `f: X -> Y` and `outer` lays out `g: Y -> Z`.
    pub fn compose_flat(&self, outer: &HomLayout, g: &[Rational], f: &[Rational]) -> Vec<Rational> {
        let result = HomLayout::new(&self.src, &outer.tgt);
        let mut out = vec![Rational::ZERO; result.len()];
        for v in 0..self.src.len() {
            let (dx, dy, dz) = (self.src[v], self.tgt[v], outer.tgt[v]);
            if dx == 0 || dz == 0 || dy == 0 {
                continue;
            }
            let (fo, go, ro) = (self.offsets[v], outer.offsets[v], result.offsets[v]);
            for i in 0..dz {
                for k in 0..dy {
                    let gik = &g[go + i * dy + k];
                    if gik.is_zero() {
                        continue;
                    }
                    for j in 0..dx {
                        let fkj = &f[fo + k * dx + j];
                        if !fkj.is_zero() {
                            out[ro + i * dx + j] += &(gik * fkj);
                        }
                    }
                }
            }
        }
        out
    }
}

/// A module homomorphism, one matrix per vertex.
#[derive(Clone, PartialEq, Eq)]
pub struct ModuleMorphism {
    source: Representation,
    target: Representation,
    blocks: Vec<RatMatrix>,
}

impl std::fmt::Debug for ModuleMorphism {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ModuleMorphism")
            .field("source", &self.source.dim_vector())
            .field("target", &self.target.dim_vector())
            .field("blocks", &self.blocks)
            .finish()
    }
}

impl ModuleMorphism {
    /// Checks shapes and the intertwining identity `f_t M_a = N_a f_s` exactly.
    pub fn new(source: &Representation, target: &Representation, blocks: Vec<RatMatrix>) -> Result<Self> {
        if source.algebra() != target.algebra() {
            return Err(Error::AlgebraMismatch);
        }
        let f = Self::new_unchecked(source, target, blocks);
        let n = source.quiver().num_vertices();
        if f.blocks.len() != n
            || (0..n).any(|v| f.blocks[v].shape() != (target.dim_at(v), source.dim_at(v)))
        {
            return Err(Error::InvalidRepresentation("morphism blocks have the wrong shape".into()));
        }
        for (a, arrow) in source.quiver().arrows().iter().enumerate() {
            let lhs = f.blocks[arrow.target].mul(source.map(a));
            let rhs = target.map(a).mul(&f.blocks[arrow.source]);
            if lhs != rhs {
                return Err(Error::InvalidRepresentation(format!(
                    "blocks do not commute with arrow `{}`",
                    arrow.name
                )));
            }
        }
        Ok(f)
    }

    pub(crate) fn new_unchecked(source: &Representation, target: &Representation, blocks: Vec<RatMatrix>) -> Self {
        ModuleMorphism { source: source.clone(), target: target.clone(), blocks }
    }

    pub fn from_flat(source: &Representation, target: &Representation, flat: &[Rational]) -> Self {
        let layout = HomLayout::between(source, target);
        Self::new_unchecked(source, target, layout.blocks(flat))
    }

    pub fn zero(source: &Representation, target: &Representation) -> Self {
        let blocks = (0..source.quiver().num_vertices())
            .map(|v| RatMatrix::zeros(target.dim_at(v), source.dim_at(v)))
            .collect();
        Self::new_unchecked(source, target, blocks)
    }

    pub fn identity(m: &Representation) -> Self {
        let blocks = m.dim_vector().iter().map(|&d| RatMatrix::identity(d)).collect();
        Self::new_unchecked(m, m, blocks)
    }

    pub fn source(&self) -> &Representation {
        &self.source
    }

    pub fn target(&self) -> &Representation {
        &self.target
    }

    pub fn blocks(&self) -> &[RatMatrix] {
        &self.blocks
    }

    pub fn block(&self, v: usize) -> &RatMatrix {
        &self.blocks[v]
    }

    pub fn layout(&self) -> HomLayout {
        HomLayout::between(&self.source, &self.target)
    }

    pub fn to_flat(&self) -> Vec<Rational> {
        self.layout().flatten(&self.blocks)
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(RatMatrix::is_zero)
    }

    pub fn rank(&self) -> usize {
        self.blocks.iter().map(RatMatrix::rank).sum()
    }

    pub fn is_mono(&self) -> bool {
        self.rank() == self.source.dim()
    }

    pub fn is_epi(&self) -> bool {
        self.rank() == self.target.dim()
    }

    pub fn is_iso(&self) -> bool {
        self.source.dim() == self.target.dim() && self.is_mono()
    }

    pub fn inverse(&self) -> Option<ModuleMorphism> {
        let blocks: Option<Vec<RatMatrix>> = self
            .blocks
            .iter()
            .map(|b| if b.rows() == 0 && b.cols() == 0 { Some(b.clone()) } else { b.inverse() })
            .collect();
        Some(Self::new_unchecked(&self.target, &self.source, blocks?))
    }

    pub fn add(&self, other: &ModuleMorphism) -> Result<ModuleMorphism> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::AlgebraMismatch);
        }
        let blocks = self.blocks.iter().zip(&other.blocks).map(|(a, b)| a.add(b)).collect();
        Ok(Self::new_unchecked(&self.source, &self.target, blocks))
    }

    pub fn scale(&self, c: &Rational) -> ModuleMorphism {
        let blocks = self.blocks.iter().map(|b| b.scale(c)).collect();
        Self::new_unchecked(&self.source, &self.target, blocks)
    }

    /// `self o inner`.
    pub fn after(&self, inner: &ModuleMorphism) -> Result<ModuleMorphism> {
        compose(self, inner)
    }
}

/// `g o f`; the target of `f` must be the source of `g`.
pub fn compose(g: &ModuleMorphism, f: &ModuleMorphism) -> Result<ModuleMorphism> {
    if f.target.dim_vector() != g.source.dim_vector() || f.target.algebra() != g.source.algebra() {
        return Err(Error::InvalidRepresentation("morphisms are not composable".into()));
    }
    let blocks = g.blocks.iter().zip(&f.blocks).map(|(b, a)| b.mul(a)).collect();
    Ok(ModuleMorphism::new_unchecked(&f.source, &g.target, blocks))
}

/// All morphisms `M -> N`, as a canonical subspace of the flattened block space.
#[derive(Clone, Debug)]
pub struct HomSpace {
    source: Representation,
    target: Representation,
    layout: HomLayout,
    space: Subspace,
}

impl HomSpace {
    pub fn source(&self) -> &Representation {
        &self.source
    }

    pub fn target(&self) -> &Representation {
        &self.target
    }

    pub fn layout(&self) -> &HomLayout {
        &self.layout
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// Dimension of the ambient block space.
    pub fn ambient(&self) -> usize {
        self.layout.len()
    }

    pub fn basis(&self) -> Vec<ModuleMorphism> {
        self.space.basis().iter().map(|v| self.morphism(v)).collect()
    }

    pub fn morphism(&self, flat: &[Rational]) -> ModuleMorphism {
        ModuleMorphism::from_flat(&self.source, &self.target, flat)
    }

    /// Linear combination of the basis.
    pub fn combination(&self, coeffs: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::ZERO; self.layout.len()];
        for (c, b) in coeffs.iter().zip(self.space.basis()) {
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(b) {
                if !x.is_zero() {
                    *o += &(c * x);
                }
            }
        }
        out
    }

    pub fn contains(&self, f: &ModuleMorphism) -> bool {
        self.space.contains_vector(&f.to_flat())
    }
}

/// Solves `f_t M_a - N_a f_s = 0` for all arrows.
pub fn hom_space(m: &Representation, n: &Representation) -> Result<HomSpace> {
    if m.algebra() != n.algebra() {
        return Err(Error::AlgebraMismatch);
    }
    let layout = HomLayout::between(m, n);
    let q = m.quiver();
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for (a, arrow) in q.arrows().iter().enumerate() {
        let (s, t) = (arrow.source, arrow.target);
        let (ma, na) = (m.map(a), n.map(a));
        for i in 0..n.dim_at(t) {
            for j in 0..m.dim_at(s) {
                let mut row = vec![Rational::ZERO; layout.len()];
                for k in 0..m.dim_at(t) {
                    let c = &ma[(k, j)];
                    if !c.is_zero() {
                        row[layout.index(t, i, k)] += c;
                    }
                }
                for l in 0..n.dim_at(s) {
                    let c = &na[(i, l)];
                    if !c.is_zero() {
                        row[layout.index(s, l, j)] -= c;
                    }
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let space = if rows.is_empty() {
        Subspace::full(layout.len())
    } else {
        RatMatrix::from_rows(layout.len(), &rows).kernel()
    };
    Ok(HomSpace { source: m.clone(), target: n.clone(), layout, space })
}
