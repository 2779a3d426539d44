#![allow(dead_code)]

use std::collections::HashSet;
use std::path::PathBuf;
use std::sync::Arc;

use nilindex_core::artrans::{ar_quiver, EnumerationLimits};
use nilindex_core::linalg::{Rational, Subspace};
use nilindex_core::quiver::{parse_presentation, BoundAlgebra};
use nilindex_core::radical::{nilpotency_index, Method, RadicalFiltration, Strategy};
use nilindex_core::Error;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const FIXTURES: [&str; 12] = [
    "a2",
    "a3",
    "a3_zero",
    "d4",
    "loop",
    "single_vertex",
    "commutative_square",
    "cyclic",
    "four_cycle",
    "toupie_one_zero",
    "toupie_two_zero",
    "ten_vertex",
];

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(format!("{name}.quiver"))
}

pub fn algebra_from(text: &str) -> nilindex_core::Result<BoundAlgebra> {
    BoundAlgebra::new(parse_presentation(text)?)
}

pub fn algebra(name: &str) -> BoundAlgebra {
    let text = std::fs::read_to_string(fixture_path(name)).expect("fixture exists");
    algebra_from(&text).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn filtration_of(alg: &BoundAlgebra) -> nilindex_core::Result<RadicalFiltration> {
    RadicalFiltration::new(Arc::new(ar_quiver(alg, EnumerationLimits::default())?))
}

pub fn filtration(name: &str) -> RadicalFiltration {
    filtration_of(&algebra(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn vertex(filt: &RadicalFiltration, name: &str) -> usize {
    filt.ar().algebra().quiver().vertex(name).unwrap_or_else(|| panic!("no vertex {name}"))
}

pub fn r(filt: &RadicalFiltration, name: &str) -> usize {
    filt.canonical_r(vertex(filt, name)).unwrap()
}

/// A random monomial presentation on at most `max_vertices` vertices: a random tree,
/// possibly one extra arrow, and random zero-relations of length 2 and 3.
pub fn random_monomial_text(rng: &mut ChaCha8Rng, max_vertices: usize) -> String {
    let n = rng.gen_range(3..=max_vertices.max(3));
    let mut arrows: Vec<(usize, usize)> = Vec::new();
    for k in 1..n {
        let p = rng.gen_range(0..k);
        arrows.push(if rng.gen_bool(0.5) { (p, k) } else { (k, p) });
    }
    if rng.gen_bool(0.6) {
        let s = rng.gen_range(0..n);
        let t = rng.gen_range(0..n);
        if s != t {
            arrows.push((s, t));
        }
    }
    let mut paths2 = Vec::new();
    for (i, &(_, t)) in arrows.iter().enumerate() {
        for (j, &(s2, _)) in arrows.iter().enumerate() {
            if t == s2 {
                paths2.push(vec![i, j]);
            }
        }
    }
    let mut rels: Vec<Vec<usize>> = paths2.iter().filter(|_| rng.gen_bool(0.45)).cloned().collect();
    let mut paths3 = Vec::new();
    for p in &paths2 {
        for (k, &(s3, _)) in arrows.iter().enumerate() {
            if arrows[p[1]].1 == s3 {
                paths3.push(vec![p[0], p[1], k]);
            }
        }
    }
    paths3.shuffle(rng);
    for p in paths3.into_iter().take(2) {
        let contains = |r: &Vec<usize>| p.windows(r.len()).any(|w| w == r.as_slice());
        if rng.gen_bool(0.5) && !rels.iter().any(contains) {
            rels.push(p);
        }
    }
    let mut text = String::new();
    for v in 1..=n {
        text.push_str(&format!("vertex {v}\n"));
    }
    for (i, (s, t)) in arrows.iter().enumerate() {
        text.push_str(&format!("arrow x{i} {} {}\n", s + 1, t + 1));
    }
    for r in rels {
        let names: Vec<String> = r.iter().map(|a| format!("x{a}")).collect();
        text.push_str(&format!("relation {}\n", names.join("*")));
    }
    text
}

/// Draws until `count` representation-finite presentations have been accepted.
/// Draws that are not admissible or exceed the enumeration limits are skipped.
pub fn random_rep_finite(seed: u64, count: usize, max_vertices: usize) -> (Vec<(String, RadicalFiltration)>, usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let limits = EnumerationLimits::new(80, 400).unwrap();
    let mut out = Vec::new();
    let mut skipped = 0;
    while out.len() < count {
        assert!(skipped < 5000, "too many rejected draws");
        let text = random_monomial_text(&mut rng, max_vertices);
        let alg = match algebra_from(&text) {
            Ok(a) => a,
            Err(Error::NotAdmissible(_) | Error::CapExceeded { .. }) => {
                skipped += 1;
                continue;
            }
            Err(e) => panic!("draw failed to parse: {e}\n{text}"),
        };
        match ar_quiver(&alg, limits) {
            Ok(ar) => out.push((text, RadicalFiltration::new(Arc::new(ar)).unwrap())),
            Err(Error::LimitsExceeded(_) | Error::SplitFieldNeeded(_)) => skipped += 1,
            Err(e) => panic!("draw failed: {e}\n{text}"),
        }
    }
    (out, skipped)
}

/// `dim Hom(M, I_a) = d_M(a) = dim Hom(P_a, M)` for every node and vertex.
pub fn multiplicity_law(filt: &RadicalFiltration) -> Result<(), String> {
    let ar = filt.ar();
    for a in 0..ar.algebra().num_vertices() {
        let p = ar.projective_node(a).ok_or("missing projective")?;
        let i = ar.injective_node(a).ok_or("missing injective")?;
        for (x, node) in ar.nodes().iter().enumerate() {
            let d = node.module.dim_at(a);
            let (hi, hp) = (filt.hom(x, i).dim(), filt.hom(p, x).dim());
            if hi != d || hp != d {
                return Err(format!("node {}: d(a={a}) = {d}, Hom(M, I) = {hi}, Hom(P, M) = {hp}", node.label));
            }
        }
    }
    Ok(())
}

/// `dim tau X + dim X = sum of middle terms` at every non-projective node, read
/// off the arrows into `X` and out of `tau X`.
pub fn mesh_identity(filt: &RadicalFiltration) -> Result<(), String> {
    let ar = filt.ar();
    let dim = |k: usize| ar.node(k).module.dim();
    for x in 0..ar.len() {
        let Some(t) = ar.tau(x) else { continue };
        let into: usize = (0..ar.len()).map(|y| ar.irreducible_dim(y, x) * dim(y)).sum();
        let out: usize = (0..ar.len()).map(|y| ar.irreducible_dim(t, y) * dim(y)).sum();
        if into != dim(x) + dim(t) || out != into {
            return Err(format!("mesh at {}: {} + {} vs {into} / {out}", ar.node(x).label, dim(t), dim(x)));
        }
    }
    if !ar.mesh_defects().is_empty() {
        return Err(format!("mesh defects at {:?}", ar.mesh_defects()));
    }
    Ok(())
}

/// `dim R/R^2 in {0, 1}` and it agrees with the arrows of the AR quiver.
pub fn trivial_valuation(filt: &RadicalFiltration) -> Result<(), String> {
    let ar = filt.ar();
    for x in 0..ar.len() {
        for y in 0..ar.len() {
            let d = filt.irreducible_dim(x, y);
            if d > 1 || d != ar.irreducible_dim(x, y) {
                return Err(format!("dim Irr({}, {}) = {d}, AR quiver says {}", ar.node(x).label, ar.node(y).label, ar.irreducible_dim(x, y)));
            }
        }
    }
    Ok(())
}

/// Every applicable reduction gives the direct value; inapplicable ones refuse.
pub fn cross_method(filt: &RadicalFiltration) -> Result<(), String> {
    let direct = filt.nilpotency_index();
    for m in Method::ALL {
        match nilpotency_index(filt, m, false) {
            Ok(rep) if rep.r_a == direct => {}
            Ok(rep) => return Err(format!("{m} gives {} but direct gives {direct}", rep.r_a)),
            Err(Error::MethodInapplicable(_)) => {}
            Err(e) => return Err(format!("{m}: {e}")),
        }
    }
    Ok(())
}

/// `l(qp) = l(p) + l(q)` for `P_a -> S_a -> I_a`.
pub fn length_additivity(filt: &RadicalFiltration) -> Result<(), String> {
    for a in 0..filt.ar().algebra().num_vertices() {
        let (p, q, qp) = filt.canonical_composite(a).map_err(|e| e.to_string())?;
        let l = |f| filt.morphism_length(f).map_err(|e| e.to_string());
        let (lp, lq, lqp) = (l(&p)?, l(&q)?, l(&qp)?);
        if lqp != lp + lq {
            return Err(format!("vertex {a}: l(qp) = {lqp}, l(p) = {lp}, l(q) = {lq}"));
        }
    }
    Ok(())
}

fn radical_one(filt: &RadicalFiltration, x: usize, y: usize) -> Vec<Vec<Rational>> {
    if x == y {
        filt.layer(1, x, y).basis().to_vec()
    } else {
        filt.hom(x, y).space().basis().to_vec()
    }
}

/// `R^n(X, Y)` as the span of every nonzero composite of `n` radical basis maps,
/// compared with the filtration for `n = 1..=r_A`.
pub fn brute_force_oracle(filt: &RadicalFiltration) -> Result<(), String> {
    let n_nodes = filt.len();
    let r_a = filt.nilpotency_index();
    let rad1: Vec<Vec<Vec<Vec<Rational>>>> =
        (0..n_nodes).map(|x| (0..n_nodes).map(|y| radical_one(filt, x, y)).collect()).collect();
    for x in 0..n_nodes {
        let mut prods: Vec<Vec<Vec<Rational>>> = rad1[x].clone();
        for n in 1..=r_a {
            for y in 0..n_nodes {
                let span = Subspace::from_vectors(filt.hom(x, y).ambient(), prods[y].iter().cloned());
                if span != filt.layer(n, x, y) {
                    return Err(format!(
                        "R^{n}({}, {}): products span {} but the filtration has {}",
                        filt.ar().node(x).label,
                        filt.ar().node(y).label,
                        span.dim(),
                        filt.layer_dim(n, x, y)
                    ));
                }
            }
            let mut next: Vec<Vec<Vec<Rational>>> = vec![Vec::new(); n_nodes];
            for z in 0..n_nodes {
                for f in &prods[z] {
                    for y in 0..n_nodes {
                        let mut seen = HashSet::new();
                        for g in &rad1[z][y] {
                            let h = filt.hom(x, z).layout().compose_flat(filt.hom(z, y).layout(), g, f);
                            if !h.iter().all(Rational::is_zero) && seen.insert(h.clone()) {
                                next[y].push(h);
                            }
                        }
                    }
                }
            }
            for v in &mut next {
                let mut seen = HashSet::new();
                v.retain(|h| seen.insert(h.clone()));
            }
            prods = next;
        }
        if prods.iter().any(|p| !p.is_empty()) {
            return Err(format!("a composite of {} radical maps out of {} is nonzero", r_a + 1, filt.ar().node(x).label));
        }
    }
    Ok(())
}

/// The filtration built from almost split maps equals the one built from all radical maps.
pub fn strategies_agree(filt: &RadicalFiltration) -> Result<(), String> {
    let other = RadicalFiltration::with_strategy(filt.ar_arc(), Strategy::Definitional).map_err(|e| e.to_string())?;
    let n = filt.len();
    for k in 0..=filt.nilpotency_index() {
        for x in 0..n {
            for y in 0..n {
                if filt.layer(k, x, y) != other.layer(k, x, y) {
                    return Err(format!("layer {k} differs at ({x}, {y})"));
                }
            }
        }
    }
    Ok(())
}

pub type Property = (&'static str, fn(&RadicalFiltration) -> Result<(), String>);

pub const PROPERTIES: [Property; 5] = [
    ("multiplicity law", multiplicity_law),
    ("mesh identity", mesh_identity),
    ("trivial valuation", trivial_valuation),
    ("cross-method agreement", cross_method),
    ("length additivity", length_additivity),
];

/// Runs every property; the composition oracle only when there are at most 12 indecomposables.
pub fn property_suite(filt: &RadicalFiltration) -> Result<bool, String> {
    for (name, p) in PROPERTIES {
        p(filt).map_err(|e| format!("{name}: {e}"))?;
    }
    if filt.len() <= 12 {
        brute_force_oracle(filt).map_err(|e| format!("composition oracle: {e}"))?;
        return Ok(true);
    }
    Ok(false)
}
