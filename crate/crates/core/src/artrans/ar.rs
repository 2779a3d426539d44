use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::quiver::{BoundAlgebra, VertexId};
use crate::rep::{
    compose, decompose_with, is_isomorphic_indecomposable, projective, radical_submodule,
    EndomorphismRing, ModuleMorphism, Representation,
};

use super::{almost_split_ending, injective_left_map, injective_vertex, projective_vertex, tau, tau_inverse};

/// Termination guard for enumeration: number of indecomposables and the sum of their dimensions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EnumerationLimits {
    pub max_modules: usize,
    pub max_total_dimension: usize,
}

impl Default for EnumerationLimits {
    fn default() -> Self {
        EnumerationLimits { max_modules: 10_000, max_total_dimension: 10_000 }
    }
}

impl EnumerationLimits {
    pub fn new(max_modules: usize, max_total_dimension: usize) -> Option<Self> {
        (max_modules > 0 && max_total_dimension > 0).then_some(EnumerationLimits { max_modules, max_total_dimension })
    }
}

#[derive(Clone, Debug)]
pub struct ARNode {
    pub module: Representation,
    pub label: String,
    pub end: EndomorphismRing,
    pub projective: Option<VertexId>,
    pub injective: Option<VertexId>,
    pub simple: Option<VertexId>,
}

/// The Auslander-Reiten quiver of a representation-finite algebra.
///
/// `left[x]` lists the components `X -> Z` of a left almost split map out of node `x`,
/// one entry per indecomposable summand of its target.
#[derive(Clone, Debug)]
pub struct ARQuiver {
    algebra: BoundAlgebra,
    nodes: Vec<ARNode>,
    tau: Vec<Option<usize>>,
    tau_inverse: Vec<Option<usize>>,
    left: Vec<Vec<(usize, ModuleMorphism)>>,
    arrows: Vec<(usize, usize, usize)>,
    buckets: HashMap<Vec<usize>, Vec<usize>>,
}

struct Builder<'a> {
    alg: &'a BoundAlgebra,
    limits: EnumerationLimits,
    known: Vec<(Representation, EndomorphismRing)>,
    buckets: HashMap<Vec<usize>, Vec<usize>>,
    total: usize,
    queue: VecDeque<usize>,
}

impl Builder<'_> {
    /// Node index of `m` plus an isomorphism `node -> m`.
    fn find(&self, m: &Representation) -> Result<Option<(usize, ModuleMorphism)>> {
        let Some(cands) = self.buckets.get(m.dim_vector()) else {
            return Ok(None);
        };
        for &k in cands {
            let (x, end) = &self.known[k];
            if let Some(iso) = is_isomorphic_indecomposable(x, end, m)? {
                return Ok(Some((k, iso)));
            }
        }
        Ok(None)
    }

    fn insert(&mut self, m: Representation) -> Result<usize> {
        if self.known.len() >= self.limits.max_modules {
            return Err(Error::LimitsExceeded(format!(
                "more than {} indecomposables; the algebra is presumably representation-infinite",
                self.limits.max_modules
            )));
        }
        self.total += m.dim();
        if self.total > self.limits.max_total_dimension {
            return Err(Error::LimitsExceeded(format!(
                "indecomposables found so far exceed total dimension {}; the algebra is presumably representation-infinite",
                self.limits.max_total_dimension
            )));
        }
        let end = EndomorphismRing::new(&m)?;
        if !end.is_local() {
            return Err(Error::SplitFieldNeeded(format!(
                "module with dimension vector {:?} has non-local endomorphism ring",
                m.dim_vector()
            )));
        }
        let k = self.known.len();
        self.buckets.entry(m.dim_vector().to_vec()).or_default().push(k);
        self.known.push((m, end));
        self.queue.push_back(k);
        Ok(k)
    }

    /// Node index of `m`, inserting it if new, with an isomorphism `node -> m`.
    fn intern(&mut self, m: Representation) -> Result<(usize, ModuleMorphism)> {
        if let Some(found) = self.find(&m)? {
            return Ok(found);
        }
        let id = ModuleMorphism::identity(&m);
        Ok((self.insert(m)?, id))
    }
}

/// All indecomposables up to isomorphism.
pub fn enumerate_indecomposables(alg: &BoundAlgebra, limits: EnumerationLimits) -> Result<Vec<Representation>> {
    Ok(ar_quiver(alg, limits)?.nodes.into_iter().map(|n| n.module).collect())
}

/// Builds the AR quiver by closing the indecomposable projectives under `tau`, `tau^-1`,
/// summands of left almost split maps, and summands of radicals of projectives.
pub fn ar_quiver(alg: &BoundAlgebra, limits: EnumerationLimits) -> Result<ARQuiver> {
    let n = alg.num_vertices();
    let mut b = Builder { alg, limits, known: Vec::new(), buckets: HashMap::new(), total: 0, queue: VecDeque::new() };
    for a in 0..n {
        b.insert(projective(b.alg, a))?;
    }
    let mut tau_of: BTreeMap<usize, usize> = BTreeMap::new();
    let mut left: BTreeMap<usize, Vec<(usize, ModuleMorphism)>> = BTreeMap::new();
    while let Some(x) = b.queue.pop_front() {
        let xm = b.known[x].0.clone();
        let seq = match tau_inverse(&xm)? {
            Some(c) => {
                let (ci, iso) = b.intern(c)?;
                tau_of.insert(ci, x);
                // build the sequence ending at the node module itself
                let c = iso.source().clone();
                almost_split_ending(&xm, &c)?
            }
            None => injective_left_map(&xm),
        };
        let mut comps = Vec::new();
        if !seq.middle.is_zero() {
            for s in decompose_with(&seq.middle, b.known.iter().map(|(m, e)| (m, e)))? {
                let (k, iso) = b.intern(s.module.clone())?;
                let back = iso.inverse().ok_or_else(|| Error::Inconsistency("isomorphism is not invertible".into()))?;
                let comp = compose(&back, &compose(&s.projection, &seq.f)?)?;
                comps.push((k, comp));
            }
        }
        let mut mult: BTreeMap<usize, usize> = BTreeMap::new();
        for (k, _) in &comps {
            *mult.entry(*k).or_default() += 1;
        }
        if let Some((k, m)) = mult.iter().find(|(_, &m)| m > 1) {
            return Err(Error::LimitsExceeded(format!(
                "dim Irr between modules of dimension vectors {:?} and {:?} is {}; \
                 the algebra is representation-infinite",
                xm.dim_vector(),
                b.known[*k].0.dim_vector(),
                m
            )));
        }
        left.insert(x, comps);
        match tau(&xm)? {
            Some(t) => {
                let (ti, _) = b.intern(t)?;
                tau_of.insert(x, ti);
            }
            None => {
                let rad = radical_submodule(&xm).module;
                if !rad.is_zero() {
                    for s in decompose_with(&rad, b.known.iter().map(|(m, e)| (m, e)))? {
                        b.intern(s.module)?;
                    }
                }
            }
        }
    }
    let count = b.known.len();
    let mut tau = vec![None; count];
    let mut tau_inverse = vec![None; count];
    for (&y, &x) in &tau_of {
        tau[y] = Some(x);
        tau_inverse[x] = Some(y);
    }
    let left: Vec<Vec<(usize, ModuleMorphism)>> = (0..count).map(|k| left.remove(&k).unwrap_or_default()).collect();
    let nodes: Vec<ARNode> = b
        .known
        .into_iter()
        .map(|(module, end)| {
            let simple = (module.dim() == 1).then(|| module.dim_vector().iter().position(|&d| d == 1)).flatten();
            ARNode {
                projective: projective_vertex(&module),
                injective: injective_vertex(&module),
                simple,
                label: String::new(),
                module,
                end,
            }
        })
        .collect();
    let mut q = ARQuiver {
        algebra: alg.clone(),
        nodes,
        tau,
        tau_inverse,
        left,
        arrows: Vec::new(),
        buckets: HashMap::new(),
    };
    q.assign_labels();
    q.sort_nodes();
    Ok(q)
}

impl ARQuiver {
    fn assign_labels(&mut self) {
        let quiver = self.algebra.quiver().clone();
        let name = |v: VertexId| quiver.vertex_name(v).to_string();
        let mut orbit: Vec<Option<String>> = vec![None; self.nodes.len()];
        for (i, node) in self.nodes.iter().enumerate() {
            if let Some(a) = node.projective {
                let (mut cur, mut k) = (self.tau_inverse[i], 1);
                while let Some(c) = cur {
                    orbit[c].get_or_insert_with(|| format!("τ^{{-{k}}}P_{}", name(a)));
                    cur = self.tau_inverse[c];
                    k += 1;
                }
            }
            if let Some(a) = node.injective {
                let (mut cur, mut k) = (self.tau[i], 1);
                while let Some(c) = cur {
                    orbit[c].get_or_insert_with(|| format!("τ^{{{k}}}I_{}", name(a)));
                    cur = self.tau[c];
                    k += 1;
                }
            }
        }
        for (i, node) in self.nodes.iter_mut().enumerate() {
            node.label = if let Some(a) = node.projective {
                format!("P_{}", name(a))
            } else if let Some(a) = node.injective {
                format!("I_{}", name(a))
            } else if let Some(a) = node.simple {
                format!("S_{}", name(a))
            } else if let Some(l) = orbit[i].take() {
                l
            } else {
                format!("M_{i}")
            };
        }
    }

    /// Reorders nodes by dimension vector, then label, and rebuilds the derived tables.
    fn sort_nodes(&mut self) {
        let n = self.nodes.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| {
            let (x, y) = (&self.nodes[a], &self.nodes[b]);
            x.module.dim_vector().cmp(y.module.dim_vector()).then_with(|| x.label.cmp(&y.label))
        });
        let mut new_of = vec![0; n];
        for (new, &old) in order.iter().enumerate() {
            new_of[old] = new;
        }
        let mut nodes: Vec<Option<ARNode>> = std::mem::take(&mut self.nodes).into_iter().map(Some).collect();
        let mut left: Vec<Option<Vec<(usize, ModuleMorphism)>>> =
            std::mem::take(&mut self.left).into_iter().map(Some).collect();
        self.nodes = order.iter().map(|&o| nodes[o].take().unwrap()).collect();
        self.left = order
            .iter()
            .map(|&o| {
                let mut l: Vec<(usize, ModuleMorphism)> =
                    left[o].take().unwrap().into_iter().map(|(k, f)| (new_of[k], f)).collect();
                l.sort_by_key(|(k, _)| *k);
                l
            })
            .collect();
        self.tau = order.iter().map(|&o| self.tau[o].map(|t| new_of[t])).collect();
        self.tau_inverse = order.iter().map(|&o| self.tau_inverse[o].map(|t| new_of[t])).collect();
        self.arrows.clear();
        for (x, comps) in self.left.iter().enumerate() {
            let mut mult: BTreeMap<usize, usize> = BTreeMap::new();
            for (k, _) in comps {
                *mult.entry(*k).or_default() += 1;
            }
            self.arrows.extend(mult.into_iter().map(|(k, m)| (x, k, m)));
        }
        self.buckets.clear();
        for (i, node) in self.nodes.iter().enumerate() {
            self.buckets.entry(node.module.dim_vector().to_vec()).or_default().push(i);
        }
    }

    pub fn algebra(&self) -> &BoundAlgebra {
        &self.algebra
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[ARNode] {
        &self.nodes
    }

    pub fn node(&self, i: usize) -> &ARNode {
        &self.nodes[i]
    }

    pub fn modules(&self) -> Vec<Representation> {
        self.nodes.iter().map(|n| n.module.clone()).collect()
    }

    /// `(X, Y, dim Irr(X, Y))` for every pair with a nonzero irreducible map.
    pub fn arrows(&self) -> &[(usize, usize, usize)] {
        &self.arrows
    }

    pub fn irreducible_dim(&self, x: usize, y: usize) -> usize {
        self.arrows.iter().find(|&&(a, b, _)| a == x && b == y).map_or(0, |a| a.2)
    }

    pub fn tau(&self, i: usize) -> Option<usize> {
        self.tau[i]
    }

    pub fn tau_inverse(&self, i: usize) -> Option<usize> {
        self.tau_inverse[i]
    }

    /// Components of a left almost split map out of node `x`.
    pub fn left_almost_split(&self, x: usize) -> &[(usize, ModuleMorphism)] {
        &self.left[x]
    }

    pub fn successors(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        self.arrows.iter().filter(move |a| a.0 == x).map(|a| a.1)
    }

    pub fn predecessors(&self, y: usize) -> impl Iterator<Item = usize> + '_ {
        self.arrows.iter().filter(move |a| a.1 == y).map(|a| a.0)
    }

    pub fn projective_node(&self, a: VertexId) -> Option<usize> {
        self.nodes.iter().position(|n| n.projective == Some(a))
    }

    pub fn injective_node(&self, a: VertexId) -> Option<usize> {
        self.nodes.iter().position(|n| n.injective == Some(a))
    }

    pub fn simple_node(&self, a: VertexId) -> Option<usize> {
        self.nodes.iter().position(|n| n.simple == Some(a))
    }

    pub fn find_label(&self, label: &str) -> Option<usize> {
        self.nodes.iter().position(|n| n.label == label)
    }

    /// Node isomorphic to the indecomposable `m`, with an isomorphism `m -> node`.
    pub fn locate(&self, m: &Representation) -> Result<Option<(usize, ModuleMorphism)>> {
        if m.algebra() != &self.algebra {
            return Err(Error::AlgebraMismatch);
        }
        let Some(cands) = self.buckets.get(m.dim_vector()) else {
            return Ok(None);
        };
        for &k in cands {
            let node = &self.nodes[k];
            if let Some(iso) = is_isomorphic_indecomposable(&node.module, &node.end, m)? {
                let inv = iso.inverse().ok_or_else(|| Error::Inconsistency("isomorphism is not invertible".into()))?;
                return Ok(Some((k, inv)));
            }
        }
        Ok(None)
    }

    /// Nodes where `d(tau Y) + d(Y) = sum_Z dim Irr(Z, Y) d(Z)` fails.
    pub fn mesh_defects(&self) -> Vec<usize> {
        let n = self.algebra.num_vertices();
        let mut bad = Vec::new();
        for (y, node) in self.nodes.iter().enumerate() {
            let Some(t) = self.tau[y] else { continue };
            let mut lhs: Vec<usize> = node.module.dim_vector().to_vec();
            for (l, d) in lhs.iter_mut().zip(self.nodes[t].module.dim_vector()) {
                *l += d;
            }
            let mut rhs = vec![0; n];
            for &(z, yy, m) in &self.arrows {
                if yy == y {
                    for (r, d) in rhs.iter_mut().zip(self.nodes[z].module.dim_vector()) {
                        *r += m * d;
                    }
                }
            }
            if lhs != rhs {
                bad.push(y);
            }
        }
        bad
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph AR {\n  rankdir=LR;\n  node [shape=plaintext];\n");
        for (i, node) in self.nodes.iter().enumerate() {
            let dims: Vec<String> = node.module.dim_vector().iter().map(usize::to_string).collect();
            let _ = writeln!(s, "  n{i} [label=\"{} [{}]\"];", node.label, dims.join(","));
        }
        for &(x, y, m) in &self.arrows {
            if m == 1 {
                let _ = writeln!(s, "  n{x} -> n{y};");
            } else {
                let _ = writeln!(s, "  n{x} -> n{y} [label=\"{m}\"];");
            }
        }
        for (y, t) in self.tau.iter().enumerate() {
            if let Some(t) = t {
                let _ = writeln!(s, "  n{y} -> n{t} [style=dashed, constraint=false];");
            }
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json(&self) -> ARQuiverJson {
        let q = self.algebra.quiver();
        let name = |v: Option<VertexId>| v.map(|v| q.vertex_name(v).to_string());
        ARQuiverJson {
            vertices: q.vertex_names().to_vec(),
            nodes: self
                .nodes
                .iter()
                .enumerate()
                .map(|(i, n)| NodeJson {
                    index: i,
                    label: n.label.clone(),
                    dimension_vector: n.module.dim_vector().to_vec(),
                    projective: name(n.projective),
                    injective: name(n.injective),
                    tau: self.tau[i],
                    tau_inverse: self.tau_inverse[i],
                })
                .collect(),
            arrows: self
                .arrows
                .iter()
                .map(|&(source, target, multiplicity)| ArrowJson { source, target, multiplicity })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct NodeJson {
    pub index: usize,
    pub label: String,
    pub dimension_vector: Vec<usize>,
    pub projective: Option<String>,
    pub injective: Option<String>,
    pub tau: Option<usize>,
    pub tau_inverse: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ArrowJson {
    pub source: usize,
    pub target: usize,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ARQuiverJson {
    pub vertices: Vec<String>,
    pub nodes: Vec<NodeJson>,
    pub arrows: Vec<ArrowJson>,
}
