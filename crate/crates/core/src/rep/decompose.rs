//! Endomorphism rings, Krull-Schmidt decomposition and isomorphism tests.
//!
//! Splittings come from two sources: a known indecomposable `X` is a summand of
//! `M` exactly when some composite `X -> M -> X` of Hom-basis elements lies
//! outside `rad End(X)`; unknown summands are found by Fitting decompositions
//! `ker (phi - c)^N (+) im (phi - c)^N` for rational eigenvalues `c`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::linalg::{algebra_radical, RatMatrix, Rational, StructureConstants, Subspace};

use super::morphism::{hom_space, HomSpace, ModuleMorphism};
use super::structure::{submodule, Subrepresentation};
use super::Representation;

/// `End(M)` with its Jacobson radical, in Hom-basis coordinates.
#[derive(Clone, Debug)]
pub struct EndomorphismRing {
    hom: HomSpace,
    constants: StructureConstants,
    radical: Subspace,
}

impl EndomorphismRing {
    pub fn new(m: &Representation) -> Result<Self> {
        let hom = hom_space(m, m)?;
        let basis = hom.space().basis();
        let layout = hom.layout();
        let constants = StructureConstants::from_fn(basis.len(), |i, j| {
            let prod = layout.compose_flat(layout, &basis[i], &basis[j]);
            hom.space().coordinates(&prod).expect("End(M) is closed under composition")
        })?;
        let radical = algebra_radical(&constants)?;
        Ok(EndomorphismRing { hom, constants, radical })
    }

    pub fn hom(&self) -> &HomSpace {
        &self.hom
    }

    pub fn dim(&self) -> usize {
        self.hom.dim()
    }

    pub fn radical(&self) -> &Subspace {
        &self.radical
    }

    /// Dimension of `End(M) / rad End(M)`.
    pub fn top_dim(&self) -> usize {
        self.dim() - self.radical.dim()
    }

    pub fn is_local(&self) -> bool {
        self.top_dim() == 1
    }

    pub fn constants(&self) -> &StructureConstants {
        &self.constants
    }

    pub fn coordinates(&self, flat: &[Rational]) -> Option<Vec<Rational>> {
        self.hom.space().coordinates(flat)
    }

    /// Whether an endomorphism (flat coordinates) lies in `rad End(M)`.
    pub fn in_radical(&self, flat: &[Rational]) -> bool {
        let c = self.coordinates(flat).expect("not an endomorphism");
        self.radical.contains_vector(&c)
    }

    /// Flat radical basis.
    pub fn radical_basis(&self) -> Vec<Vec<Rational>> {
        self.radical.basis().iter().map(|c| self.hom.combination(c)).collect()
    }

    /// Flat endomorphisms spanning a complement of the radical.
    pub fn top_basis(&self) -> Vec<Vec<Rational>> {
        let full = Subspace::full(self.dim());
        self.radical
            .complement_in(&full)
            .expect("same ambient")
            .iter()
            .map(|c| self.hom.combination(c))
            .collect()
    }
}

pub fn endomorphism_radical(m: &Representation) -> Result<EndomorphismRing> {
    EndomorphismRing::new(m)
}

/// A direct summand with its split inclusion and projection.
#[derive(Clone, Debug)]
pub struct Summand {
    pub module: Representation,
    pub inclusion: ModuleMorphism,
    pub projection: ModuleMorphism,
}

impl Summand {
    fn whole(m: &Representation) -> Self {
        Summand {
            module: m.clone(),
            inclusion: ModuleMorphism::identity(m),
            projection: ModuleMorphism::identity(m),
        }
    }
}

/// Splits `M = U (+) W` given complementary arrow-stable vertex subspaces.
fn split_pair(m: &Representation, u: &[Subspace], w: &[Subspace]) -> Result<(Summand, Summand)> {
    let su = submodule(m, u)?;
    let sw = submodule(m, w)?;
    let n = m.quiver().num_vertices();
    let mut pu = Vec::with_capacity(n);
    let mut pw = Vec::with_capacity(n);
    for v in 0..n {
        let d = m.dim_at(v);
        let mut cols: Vec<Vec<Rational>> = u[v].basis().to_vec();
        cols.extend(w[v].basis().iter().cloned());
        let basis = RatMatrix::from_columns(d, &cols);
        let inv = if d == 0 {
            basis.clone()
        } else {
            basis.inverse().ok_or_else(|| Error::Inconsistency("summands are not complementary".into()))?
        };
        let du = u[v].dim();
        let rows_u: Vec<Vec<Rational>> = (0..du).map(|r| inv.row(r).to_vec()).collect();
        let rows_w: Vec<Vec<Rational>> = (du..d).map(|r| inv.row(r).to_vec()).collect();
        pu.push(RatMatrix::from_rows(d, &rows_u));
        pw.push(RatMatrix::from_rows(d, &rows_w));
    }
    let Subrepresentation { module: mu, inclusion: iu } = su;
    let Subrepresentation { module: mw, inclusion: iw } = sw;
    let proj_u = ModuleMorphism::new_unchecked(m, &mu, pu);
    let proj_w = ModuleMorphism::new_unchecked(m, &mw, pw);
    Ok((
        Summand { module: mu, inclusion: iu, projection: proj_u },
        Summand { module: mw, inclusion: iw, projection: proj_w },
    ))
}

/// Searches `Hom(X, M) x Hom(M, X)` for a pair whose composite is an automorphism of
/// the indecomposable `X`. Returns `(f, g)` with `g o f` invertible.
fn retraction_pair(
    x: &Representation,
    x_end: &EndomorphismRing,
    m: &Representation,
) -> Result<Option<(ModuleMorphism, ModuleMorphism)>> {
    if x.dim_vector().iter().zip(m.dim_vector()).any(|(a, b)| a > b) {
        return Ok(None);
    }
    let to = hom_space(x, m)?;
    if to.dim() == 0 {
        return Ok(None);
    }
    let back = hom_space(m, x)?;
    let (lf, lg) = (to.layout(), back.layout());
    for f in to.space().basis() {
        for g in back.space().basis() {
            let gf = lf.compose_flat(lg, g, f);
            if !x_end.in_radical(&gf) {
                return Ok(Some((to.morphism(f), back.morphism(g))));
            }
        }
    }
    Ok(None)
}

/// Splits off a copy of the indecomposable `X` from `M`, if `X` is a summand.
pub fn split_off(
    x: &Representation,
    x_end: &EndomorphismRing,
    m: &Representation,
) -> Result<Option<(Summand, Summand)>> {
    let Some((f, g)) = retraction_pair(x, x_end, m)? else {
        return Ok(None);
    };
    let u: Vec<Subspace> = f.blocks().iter().map(RatMatrix::image).collect();
    let w: Vec<Subspace> = g.blocks().iter().map(RatMatrix::kernel).collect();
    split_pair(m, &u, &w).map(Some)
}

/// Whether the indecomposable `X` is isomorphic to `Y`; returns an isomorphism `X -> Y`.
pub fn is_isomorphic_indecomposable(
    x: &Representation,
    x_end: &EndomorphismRing,
    y: &Representation,
) -> Result<Option<ModuleMorphism>> {
    if x.dim_vector() != y.dim_vector() {
        return Ok(None);
    }
    Ok(retraction_pair(x, x_end, y)?.map(|(f, _)| f))
}

// ---- Fitting decompositions ----

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64()?;
    if n > 1_000_000_000_000 {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(BigInt::from(d));
            if d * d != n {
                out.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    Some(out)
}

/// Rational roots of a polynomial with coefficients `c[0] + c[1] x + ...`.
fn rational_roots(coeffs: &[Rational]) -> Vec<Rational> {
    let mut c: Vec<Rational> = coeffs.to_vec();
    while c.last().is_some_and(Rational::is_zero) {
        c.pop();
    }
    let mut roots = Vec::new();
    if c.len() <= 1 {
        return roots;
    }
    if c[0].is_zero() {
        roots.push(Rational::ZERO);
        while c.first().is_some_and(Rational::is_zero) {
            c.remove(0);
        }
        if c.len() <= 1 {
            return roots;
        }
    }
    // clear denominators
    let lcm = c.iter().fold(BigInt::one(), |acc, x| acc.lcm(&x.denom()));
    let ints: Vec<BigInt> = c.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let (Some(ps), Some(qs)) = (divisors(&ints[0]), divisors(ints.last().unwrap())) else {
        return roots;
    };
    let eval = |x: &Rational| -> bool {
        let mut acc = Rational::ZERO;
        for k in c.iter().rev() {
            acc = &(&acc * x) + k;
        }
        acc.is_zero()
    };
    let mut cands: Vec<Rational> = Vec::new();
    for p in &ps {
        for q in &qs {
            let p64 = p.to_i64();
            let q64 = q.to_i64();
            if let (Some(p), Some(q)) = (p64, q64) {
                cands.push(Rational::new(p, q));
                cands.push(Rational::new(-p, q));
            }
        }
    }
    cands.sort();
    cands.dedup();
    for x in cands {
        if !x.is_zero() && eval(&x) {
            roots.push(x);
        }
    }
    roots
}

/// Minimal polynomial of `phi` modulo `rad End(M)`, lowest coefficient first.
fn minimal_polynomial_mod_radical(ring: &EndomorphismRing, phi: &[Rational]) -> Vec<Rational> {
    let n = ring.dim();
    let hom = ring.hom();
    let layout = hom.layout();
    let id = ModuleMorphism::identity(hom.source()).to_flat();
    let mut powers: Vec<Vec<Rational>> = Vec::new();
    let mut reduced: Vec<Vec<Rational>> = Vec::new();
    let mut cur = id;
    for _ in 0..=n {
        let coords = ring.coordinates(&cur).expect("endomorphism");
        reduced.push(ring.radical().residual(&coords));
        // look for a dependency among the reduced powers
        let m = RatMatrix::from_columns(n, &reduced);
        let ker = m.kernel_vectors();
        if let Some(k) = ker.into_iter().find(|k| !k.last().unwrap().is_zero()) {
            let lead = k.last().unwrap().clone();
            return k.iter().map(|x| x / &lead).collect();
        }
        powers.push(cur.clone());
        cur = layout.compose_flat(layout, phi, &cur);
    }
    Vec::new()
}

/// Tries to split `M` with a Fitting decomposition of `phi - c`.
fn fitting_split(m: &Representation, ring: &EndomorphismRing, phi: &[Rational]) -> Result<Option<(Summand, Summand)>> {
    let poly = minimal_polynomial_mod_radical(ring, phi);
    if poly.len() <= 2 {
        // scalar modulo the radical
        return Ok(None);
    }
    let layout = ring.hom().layout().clone();
    for c in rational_roots(&poly) {
        let blocks = layout.blocks(phi);
        let mut u = Vec::new();
        let mut w = Vec::new();
        for (v, b) in blocks.iter().enumerate() {
            let d = m.dim_at(v);
            let shifted = b.sub(&RatMatrix::identity(d).scale(&c));
            let p = shifted.pow(d.max(1) as u32);
            u.push(p.kernel());
            w.push(p.image());
        }
        let du: usize = u.iter().map(Subspace::dim).sum();
        if du > 0 && du < m.dim() {
            return split_pair(m, &u, &w).map(Some);
        }
    }
    Ok(None)
}

/// Deterministic candidate endomorphisms for Fitting splits.
fn candidates(ring: &EndomorphismRing) -> Vec<Vec<Rational>> {
    let top = ring.top_basis();
    let layout = ring.hom().layout();
    let mut out = top.clone();
    let add = |a: &[Rational], b: &[Rational], s: i64| -> Vec<Rational> {
        let s = Rational::from_int(s);
        a.iter().zip(b).map(|(x, y)| x + &(&s * y)).collect()
    };
    for i in 0..top.len() {
        for j in 0..top.len() {
            if i < j {
                out.push(add(&top[i], &top[j], 1));
                out.push(add(&top[i], &top[j], -1));
                out.push(add(&top[i], &top[j], 2));
            }
            out.push(layout.compose_flat(layout, &top[i], &top[j]));
        }
    }
    // a few fixed small combinations of the whole basis
    let basis = ring.hom().space().basis();
    for seed in 1..=6i64 {
        let coeffs: Vec<Rational> =
            (0..basis.len() as i64).map(|k| Rational::from_int((k * 7 + seed * 3) % 5 - 2)).collect();
        out.push(ring.hom().combination(&coeffs));
    }
    out
}

fn fitting_search(m: &Representation, ring: &EndomorphismRing) -> Result<Option<(Summand, Summand)>> {
    for phi in candidates(ring) {
        if let Some(split) = fitting_split(m, ring, &phi)? {
            return Ok(Some(split));
        }
    }
    Ok(None)
}

pub fn is_indecomposable(m: &Representation) -> Result<bool> {
    if m.is_zero() {
        return Err(Error::ZeroModule);
    }
    let ring = EndomorphismRing::new(m)?;
    if ring.is_local() {
        return Ok(true);
    }
    match fitting_search(m, &ring)? {
        Some(_) => Ok(false),
        None => Err(Error::SplitFieldNeeded(format!(
            "End/rad has dimension {} but no rational idempotent was found",
            ring.top_dim()
        ))),
    }
}

fn compose_summand(outer: &Summand, inner: Summand) -> Summand {
    Summand {
        module: inner.module,
        inclusion: super::compose(&outer.inclusion, &inner.inclusion).expect("composable"),
        projection: super::compose(&inner.projection, &outer.projection).expect("composable"),
    }
}

/// Decomposes `M` into indecomposable summands, trying the `known`
/// indecomposables (with their endomorphism rings) before Fitting splits.
pub fn decompose_with<'a, I>(m: &Representation, known: I) -> Result<Vec<Summand>>
where
    I: IntoIterator<Item = (&'a Representation, &'a EndomorphismRing)> + Clone,
{
    let mut done = Vec::new();
    let mut stack = vec![Summand::whole(m)];
    while let Some(s) = stack.pop() {
        if s.module.is_zero() {
            continue;
        }
        let ring = EndomorphismRing::new(&s.module)?;
        if ring.is_local() {
            done.push(s);
            continue;
        }
        let mut split = None;
        for (x, x_end) in known.clone() {
            if let Some(pair) = split_off(x, x_end, &s.module)? {
                split = Some(pair);
                break;
            }
        }
        if split.is_none() {
            split = fitting_search(&s.module, &ring)?;
        }
        let Some((a, b)) = split else {
            return Err(Error::SplitFieldNeeded(format!(
                "summand with dimension vector {:?} has End/rad of dimension {}",
                s.module.dim_vector(),
                ring.top_dim()
            )));
        };
        stack.push(compose_summand(&s, b));
        stack.push(compose_summand(&s, a));
    }
    // deterministic order: by dimension vector
    done.sort_by(|a, b| a.module.dim_vector().cmp(b.module.dim_vector()));
    Ok(done)
}

fn no_known<'a>() -> std::iter::Empty<(&'a Representation, &'a EndomorphismRing)> {
    std::iter::empty()
}

pub fn decompose(m: &Representation) -> Result<Vec<Representation>> {
    Ok(decompose_with(m, no_known())?.into_iter().map(|s| s.module).collect())
}

/// Tries a handful of small integer combinations of a Hom basis for an isomorphism.
fn quick_isomorphism(hom: &HomSpace) -> Option<ModuleMorphism> {
    let basis = hom.space().basis();
    let n = basis.len();
    let mut trials: Vec<Vec<Rational>> = (0..n)
        .map(|i| (0..n).map(|k| if k == i { Rational::ONE } else { Rational::ZERO }).collect())
        .collect();
    for seed in 0..4i64 {
        trials.push((0..n as i64).map(|k| Rational::from_int((k * 3 + seed) % 4 + 1)).collect());
    }
    trials.into_iter().map(|c| hom.morphism(&hom.combination(&c))).find(ModuleMorphism::is_iso)
}

/// An isomorphism `M -> N`, if one exists.
pub fn find_isomorphism(m: &Representation, n: &Representation) -> Result<Option<ModuleMorphism>> {
    if m.algebra() != n.algebra() {
        return Err(Error::AlgebraMismatch);
    }
    if m.dim_vector() != n.dim_vector() {
        return Ok(None);
    }
    if m.is_zero() {
        return Ok(Some(ModuleMorphism::zero(m, n)));
    }
    let hom = hom_space(m, n)?;
    if hom.dim() == 0 {
        return Ok(None);
    }
    if let Some(f) = quick_isomorphism(&hom) {
        return Ok(Some(f));
    }
    let ring = EndomorphismRing::new(m)?;
    if ring.is_local() {
        return is_isomorphic_indecomposable(m, &ring, n);
    }
    // match summands one by one
    let sm = decompose_with(m, no_known())?;
    let mut rest = vec![Summand::whole(n)];
    let mut total: Option<ModuleMorphism> = None;
    for s in &sm {
        let s_end = EndomorphismRing::new(&s.module)?;
        let mut matched = None;
        for (idx, r) in rest.iter().enumerate() {
            if let Some((a, b)) = split_off(&s.module, &s_end, &r.module)? {
                if let Some(iso) = is_isomorphic_indecomposable(&s.module, &s_end, &a.module)? {
                    matched = Some((idx, iso, a, b));
                    break;
                }
            }
        }
        let Some((idx, iso, a, b)) = matched else {
            return Ok(None);
        };
        let r = rest.remove(idx);
        let a = compose_summand(&r, a);
        let b = compose_summand(&r, b);
        // M -> s -> a -> N
        let piece = super::compose(&a.inclusion, &super::compose(&iso, &s.projection)?)?;
        total = Some(match total {
            None => piece,
            Some(t) => t.add(&piece)?,
        });
        rest.push(b);
    }
    Ok(total.filter(ModuleMorphism::is_iso))
}

pub fn are_isomorphic(m: &Representation, n: &Representation) -> Result<bool> {
    Ok(find_isomorphism(m, n)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::tests::cyclic;
    use crate::rep::{direct_sum, injective, projective, simple};

    #[test]
    fn rational_root_finder() {
        // (x - 1)(x + 2)(2x - 3) = 2x^3 - x^2 - 7x + 6
        let c: Vec<Rational> = [6, -7, -1, 2].iter().map(|&x| Rational::from_int(x)).collect();
        let mut r = rational_roots(&c);
        r.sort();
        assert_eq!(r, vec![Rational::from_int(-2), Rational::ONE, Rational::new(3, 2)]);
        // x^2 + 1 has none
        assert!(rational_roots(&[Rational::ONE, Rational::ZERO, Rational::ONE]).is_empty());
    }

    #[test]
    fn simples_are_indecomposable_and_sums_are_not() {
        let a = cyclic();
        for v in 0..3 {
            assert!(is_indecomposable(&simple(&a, v)).unwrap());
        }
        let s = simple(&a, 0);
        assert!(!is_indecomposable(&direct_sum(&[s.clone(), s]).unwrap()).unwrap());
    }

    #[test]
    fn local_endomorphism_rings() {
        let a = cyclic();
        let ring = EndomorphismRing::new(&projective(&a, 0)).unwrap();
        assert_eq!(ring.dim(), 2);
        assert_eq!(ring.radical().dim(), 1);
        assert!(ring.is_local());
    }

    #[test]
    fn decomposition_recovers_summands() {
        let a = cyclic();
        let parts = [projective(&a, 1), simple(&a, 0), injective(&a, 1)];
        let m = direct_sum(&parts).unwrap();
        let got = decompose_with(&m, no_known()).unwrap();
        assert_eq!(got.len(), 3);
        let mut used = [false; 3];
        for s in &got {
            let i = (0..3).find(|&i| !used[i] && are_isomorphic(&s.module, &parts[i]).unwrap()).unwrap();
            used[i] = true;
            // inclusion and projection split each other
            let e = crate::rep::compose(&s.projection, &s.inclusion).unwrap();
            assert_eq!(e, ModuleMorphism::identity(&s.module));
        }
        let sp = direct_sum(&[simple(&a, 2), projective(&a, 2)]).unwrap();
        assert_eq!(decompose(&sp).unwrap().len(), 2);
    }

    #[test]
    fn isomorphism_checks() {
        let a = cyclic();
        let p = projective(&a, 1);
        assert!(are_isomorphic(&p, &p).unwrap());
        assert!(!are_isomorphic(&simple(&a, 0), &simple(&a, 1)).unwrap());
        // P_3 is the simple at the sink
        assert!(are_isomorphic(&projective(&a, 2), &simple(&a, 2)).unwrap());
        let x = direct_sum(&[simple(&a, 0), p.clone()]).unwrap();
        let y = direct_sum(&[p, simple(&a, 0)]).unwrap();
        let iso = find_isomorphism(&x, &y).unwrap().unwrap();
        ModuleMorphism::new(&x, &y, iso.blocks().to_vec()).unwrap();
    }
}
