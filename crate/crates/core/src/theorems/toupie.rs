//! The modules `M_{z_i}` on the zero-relation branch of a three-branch toupie algebra
//! and their cycles through the simple `S_{z_i}`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{RatMatrix, Rational, Subspace};
use crate::quiver::{GrafoPattern, ToupieShape, VertexId};
use crate::radical::RadicalFiltration;
use crate::rep::{
    compose, hom_space, injective, is_indecomposable, projective, quotient, submodule, EndomorphismRing,
    ModuleMorphism, Representation,
};

#[derive(Clone, Debug)]
pub struct ToupieWitness {
    /// Position `i` of `z_i` on the zero-relation branch (1-based).
    pub index: usize,
    pub vertex: VertexId,
    pub module: Representation,
    /// The non-isomorphisms `M -> ... -> S_{z_i} -> ... -> M` in order of application.
    pub chain: Vec<ModuleMorphism>,
    pub rho: ModuleMorphism,
    pub phi: ModuleMorphism,
    pub psi: ModuleMorphism,
    /// `2 (n_3 + 1)`.
    pub steps: usize,
    pub end_dim: usize,
    pub length: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessSummary {
    pub vertex: String,
    pub index: usize,
    pub dim_vector: Vec<usize>,
    pub end_dim: usize,
    pub steps: usize,
    pub length: Option<usize>,
    pub rho_phi_nonzero: bool,
    pub psi_rho_nonzero: bool,
}

impl ToupieWitness {
    pub fn summary(&self) -> WitnessSummary {
        WitnessSummary {
            vertex: self.module.quiver().vertex_name(self.vertex).to_string(),
            index: self.index,
            dim_vector: self.module.dim_vector().to_vec(),
            end_dim: self.end_dim,
            steps: self.steps,
            length: self.length,
            rho_phi_nonzero: !compose(&self.rho, &self.phi).map(|m| m.is_zero()).unwrap_or(true),
            psi_rho_nonzero: !compose(&self.psi, &self.rho).map(|m| m.is_zero()).unwrap_or(true),
        }
    }
}

fn full(d: usize) -> Subspace {
    Subspace::full(d)
}

/// `M_{z_i}`: `k^2` at `z_i`, `k` elsewhere; `gamma_i` embeds as `(0 1)^T`,
/// `gamma_{i+1}` projects by `(1 0)`, and every other arrow is the identity.
pub fn toupie_module(
    alg: &crate::quiver::BoundAlgebra,
    shape: &ToupieShape,
    pattern: &GrafoPattern,
    i: usize,
) -> Result<Representation> {
    if i < pattern.j || i >= pattern.j + pattern.t {
        return Err(Error::InvalidRepresentation(format!(
            "index {i} is outside the zero-relation vertices {}..={}",
            pattern.j,
            pattern.j + pattern.t - 1
        )));
    }
    let q = alg.quiver();
    let branch = &shape.branches[pattern.zero_branch];
    let z = branch.vertices[i - 1];
    let (g_in, g_out) = (branch.arrows[i - 1], branch.arrows[i]);
    let mut dims = vec![1; q.num_vertices()];
    dims[z] = 2;
    let maps = (0..q.num_arrows())
        .map(|a| {
            if a == g_in {
                RatMatrix::from_ints(&[&[0], &[1]])
            } else if a == g_out {
                RatMatrix::from_ints(&[&[1, 0]])
            } else {
                RatMatrix::identity(1)
            }
        })
        .collect();
    Representation::new(alg, dims, maps)
}

/// The nested submodules `K_1 ⊂ ... ⊂ K_{n_3+1}` of `M_{z_i}`. The epimorphisms of the
/// cycle are `M/K_s -> M/K_{s+1}` and the monomorphisms are the inclusions `K_s ⊂ K_{s+1} ⊂ M`.
fn nested_kernels(m: &Representation, shape: &ToupieShape, pattern: &GrafoPattern, i: usize) -> Vec<Vec<Subspace>> {
    let n = m.quiver().num_vertices();
    let zs = &shape.branches[pattern.zero_branch].vertices;
    let z = zs[i - 1];
    let mut cur: Vec<Subspace> = (0..n).map(|v| Subspace::zero(m.dim_at(v))).collect();
    cur[z] = Subspace::from_vectors(2, [vec![Rational::ZERO, Rational::ONE]]);
    let mut out = vec![cur.clone()];
    for s in (1..i).rev() {
        cur[zs[s - 1]] = full(1);
        out.push(cur.clone());
    }
    for v in 0..n {
        if shape.branch_of(v).is_none_or(|(b, _)| b != pattern.zero_branch) {
            cur[v] = full(1);
        }
    }
    out.push(cur.clone());
    for s in (i + 1..=zs.len()).rev() {
        cur[zs[s - 1]] = full(1);
        out.push(cur.clone());
    }
    out
}

fn image_spaces(f: &ModuleMorphism, spaces: &[Subspace]) -> Vec<Subspace> {
    spaces
        .iter()
        .enumerate()
        .map(|(v, s)| Subspace::from_vectors(f.target().dim_at(v), s.basis().iter().map(|b| f.block(v).mul_vec(b))))
        .collect()
}

fn coordinate_map(from: &Representation, to: &Representation, inner: &[Subspace], outer: &[Subspace]) -> Result<ModuleMorphism> {
    let blocks = inner
        .iter()
        .zip(outer)
        .zip(to.dim_vector())
        .map(|((s, t), &d)| {
            let cols: Vec<Vec<Rational>> = s.basis().iter().map(|b| t.coordinates(b).expect("nested subspaces")).collect();
            RatMatrix::from_columns(d, &cols)
        })
        .collect();
    ModuleMorphism::new(from, to, blocks)
}

fn first_basis_map(
    m: &Representation,
    n: &Representation,
    accept: impl Fn(&ModuleMorphism) -> Result<bool>,
) -> Result<Option<ModuleMorphism>> {
    let h = hom_space(m, n)?;
    let basis = h.basis();
    let mut candidates = basis.clone();
    for (k, f) in basis.iter().enumerate() {
        for g in &basis[k + 1..] {
            candidates.push(f.add(g)?);
        }
    }
    for f in candidates {
        if accept(&f)? {
            return Ok(Some(f));
        }
    }
    Ok(None)
}

/// Builds `M_{z_i}`, its cycle `rho`, the monomorphism `phi: P_{z_i} -> M` and the
/// epimorphism `psi: M -> I_{z_i}`, checking every witness invariant exactly.
/// With a filtration the radical length of `rho` is recorded and must be at least `2 (n_3 + 1)`.
pub fn build_toupie_witness(
    alg: &crate::quiver::BoundAlgebra,
    shape: &ToupieShape,
    pattern: &GrafoPattern,
    i: usize,
    filt: Option<&RadicalFiltration>,
) -> Result<ToupieWitness> {
    let m = toupie_module(alg, shape, pattern, i)?;
    let z = shape.branches[pattern.zero_branch].vertices[i - 1];
    let fail = |what: &str| Error::Inconsistency(format!("toupie witness at index {i}: {what}"));
    let kernels = nested_kernels(&m, shape, pattern, i);
    let steps = 2 * kernels.len();

    let mut chain = Vec::with_capacity(steps);
    let (mut cur, mut to_cur) = (m.clone(), ModuleMorphism::identity(&m));
    for k in &kernels {
        let (next, p) = quotient(&cur, &image_spaces(&to_cur, k))?;
        to_cur = compose(&p, &to_cur)?;
        chain.push(p);
        cur = next;
    }
    let top = cur;
    let subs = kernels.iter().map(|k| submodule(&m, k)).collect::<Result<Vec<_>>>()?;
    let bottom = &subs[0].module;
    if top.dim() != 1 || top.dim_at(z) != 1 || bottom.dim() != 1 || bottom.dim_at(z) != 1 {
        return Err(fail("the chain does not pass through the simple module"));
    }
    let blocks = (0..m.quiver().num_vertices())
        .map(|v| if v == z { RatMatrix::identity(1) } else { RatMatrix::zeros(0, 0) })
        .collect();
    let through_simple = ModuleMorphism::new(&top, bottom, blocks)?;
    let mut monos = Vec::with_capacity(subs.len());
    for w in 0..subs.len() {
        let f = if w + 1 < subs.len() {
            coordinate_map(&subs[w].module, &subs[w + 1].module, &kernels[w], &kernels[w + 1])?
        } else {
            subs[w].inclusion.clone()
        };
        monos.push(f);
    }
    let mut rho = compose(&through_simple, &to_cur)?;
    for f in &monos {
        rho = compose(f, &rho)?;
    }
    chain.extend(monos);

    for f in &chain {
        if f.is_iso() {
            return Err(fail("a step of the cycle is an isomorphism"));
        }
        if !is_indecomposable(f.source())? {
            return Err(fail("an intermediate module is decomposable"));
        }
    }
    if rho.is_zero() {
        return Err(fail("the cycle is zero"));
    }
    let end = EndomorphismRing::new(&m)?;
    if !end.is_local() {
        return Err(fail("M is decomposable"));
    }

    let p = projective(alg, z);
    let phi = first_basis_map(&p, &m, |f| Ok(f.is_mono() && !compose(&rho, f)?.is_zero()))?
        .ok_or_else(|| fail("no monomorphism P -> M survives the cycle"))?;
    let inj = injective(alg, z);
    let psi = first_basis_map(&m, &inj, |f| Ok(f.is_epi() && !compose(f, &rho)?.is_zero()))?
        .ok_or_else(|| fail("no epimorphism M -> I survives the cycle"))?;

    let length = match filt {
        Some(filt) => {
            let l = filt.morphism_length(&rho)?;
            if l < steps {
                return Err(fail(&format!("the cycle has radical length {l} < {steps}")));
            }
            Some(l)
        }
        None => None,
    };
    Ok(ToupieWitness { index: i, vertex: z, module: m, chain, rho, phi, psi, steps, end_dim: end.dim(), length })
}
