use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use super::RadicalFiltration;
use crate::error::{Error, Result};
use crate::quiver::{classify, sinks_and_sources, zero_relation_vertices, AlgebraPresentation, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    /// Least `m` with `R^m = 0` over every pair of indecomposables.
    Direct,
    /// `max r_a + 1` over vertices that are neither sinks nor sources.
    VSet,
    /// Monomial algebras: `max r_u + 1` over vertices involved in zero-relations.
    ZeroRelations,
    /// Monomial algebras where each involved vertex occurs once in one relation:
    /// one representative per zero-relation.
    OnePerRelation,
    /// Three-branch toupie algebras with one zero-relation: one vertex of that relation.
    Toupie,
    /// The most specific applicable method.
    Auto,
}

impl Method {
    pub const ALL: [Method; 6] =
        [Method::Direct, Method::VSet, Method::ZeroRelations, Method::OnePerRelation, Method::Toupie, Method::Auto];

    pub fn name(self) -> &'static str {
        match self {
            Method::Direct => "direct",
            Method::VSet => "v-set",
            Method::ZeroRelations => "zero-relations",
            Method::OnePerRelation => "one-per-relation",
            Method::Toupie => "toupie",
            Method::Auto => "auto",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| format!("unknown method `{s}`; expected one of direct, v-set, zero-relations, one-per-relation, toupie, auto"))
    }
}

/// Vertex-indexed values that serialize as a JSON object in vertex order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VertexValues(pub Vec<(String, usize)>);

impl VertexValues {
    pub fn get(&self, name: &str) -> Option<usize> {
        self.0.iter().find(|(n, _)| n == name).map(|(_, r)| *r)
    }
}

impl Serialize for VertexValues {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NilpotencyReport {
    pub method: String,
    #[serde(rename = "r_A")]
    pub r_a: usize,
    pub per_vertex: VertexValues,
    pub vertex_set: Vec<String>,
    pub layers_computed: usize,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl NilpotencyReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("method: {}\nr_A: {}\nlayers computed: {}\n", self.method, self.r_a, self.layers_computed);
        out.push_str(&format!("vertex set: {{{}}}\n", self.vertex_set.join(", ")));
        for (v, r) in &self.per_vertex.0 {
            out.push_str(&format!("  r_{v} = {r}\n"));
        }
        for n in &self.notes {
            out.push_str(&format!("note: {n}\n"));
        }
        out
    }
}

/// For each vertex, the number of times it occurs as an involved vertex of a zero-relation.
pub fn involvement_counts(pres: &AlgebraPresentation) -> Vec<usize> {
    let q = pres.quiver();
    let mut counts = vec![0; q.num_vertices()];
    for r in pres.relations().iter().filter(|r| r.is_zero_relation()) {
        for &a in &r.terms()[0].1.arrows()[1..] {
            counts[q.arrow(a).source] += 1;
        }
    }
    counts
}

fn inapplicable(method: Method, why: impl fmt::Display) -> Error {
    Error::MethodInapplicable(format!("{method}: {why}"))
}

/// Checks the hypotheses of `method` and returns the resolved method, the vertices it
/// inspects and any notes. `Auto` resolves to the first applicable specific method.
pub fn method_vertex_set(pres: &AlgebraPresentation, method: Method) -> Result<(Method, Vec<VertexId>, Vec<String>)> {
    let q = pres.quiver();
    match method {
        Method::Direct => Ok((method, (0..q.num_vertices()).collect(), Vec::new())),
        Method::VSet => {
            let v = sinks_and_sources(q).interior;
            if v.is_empty() {
                return Err(inapplicable(method, "every vertex is a sink or a source"));
            }
            Ok((method, v.into_iter().collect(), Vec::new()))
        }
        Method::ZeroRelations => {
            if !pres.is_monomial() {
                return Err(inapplicable(method, "the algebra is not monomial"));
            }
            let r0 = zero_relation_vertices(pres);
            if r0.is_empty() {
                let note = "no vertex is involved in a zero-relation; falling back to the sink/source reduction".to_string();
                return match method_vertex_set(pres, Method::VSet) {
                    Ok((_, v, _)) => Ok((Method::VSet, v, vec![note])),
                    Err(_) => Ok((Method::Direct, (0..q.num_vertices()).collect(), vec![note, "no interior vertex; computed directly".into()])),
                };
            }
            Ok((method, r0.into_iter().collect(), Vec::new()))
        }
        Method::OnePerRelation => {
            if !pres.is_monomial() {
                return Err(inapplicable(method, "the algebra is not monomial"));
            }
            let counts = involvement_counts(pres);
            if let Some(v) = counts.iter().position(|&c| c > 1) {
                return Err(inapplicable(
                    method,
                    format!("vertex {} is involved {} times in zero-relations", q.vertex_name(v), counts[v]),
                ));
            }
            if pres.relations().is_empty() {
                return Err(inapplicable(method, "there are no zero-relations"));
            }
            let reps: BTreeSet<VertexId> = pres
                .relations()
                .iter()
                .map(|r| q.arrow(r.terms()[0].1.arrows()[1]).source)
                .collect();
            Ok((method, reps.into_iter().collect(), Vec::new()))
        }
        Method::Toupie => {
            let c = classify(pres);
            let shape = c.toupie.ok_or_else(|| inapplicable(method, "the quiver is not a toupie quiver"))?;
            let g = shape.match_grafo(pres).map_err(|why| inapplicable(method, why))?;
            Ok((method, vec![g.relation_vertices(&shape)[0]], Vec::new()))
        }
        Method::Auto => [Method::Toupie, Method::OnePerRelation, Method::ZeroRelations, Method::VSet]
            .into_iter()
            .find_map(|m| method_vertex_set(pres, m).ok())
            .map_or_else(|| method_vertex_set(pres, Method::Direct), Ok),
    }
}

/// Computes `r_A` by `method`. With `verify`, reductions are checked against the direct value.
pub fn nilpotency_index(filt: &RadicalFiltration, method: Method, verify: bool) -> Result<NilpotencyReport> {
    let alg = filt.ar().algebra();
    let pres = alg.presentation();
    let q = pres.quiver();
    let (resolved, vertices, notes) = method_vertex_set(pres, method)?;
    let direct = filt.nilpotency_index();
    let mut per_vertex = Vec::with_capacity(vertices.len());
    for &v in &vertices {
        per_vertex.push((q.vertex_name(v).to_string(), filt.canonical_r(v)?));
    }
    let r_a = if resolved == Method::Direct {
        direct
    } else {
        per_vertex.iter().map(|(_, r)| r + 1).max().unwrap_or(1)
    };
    if let Some((v, r)) = per_vertex.iter().find(|(_, r)| *r + 1 > direct) {
        return Err(Error::Inconsistency(format!("r_{v} = {r} but the radical vanishes in degree {direct}")));
    }
    if verify && r_a != direct {
        return Err(Error::Inconsistency(format!("{resolved} gives r_A = {r_a} but the direct computation gives {direct}")));
    }
    let method_tag = if method == Method::Auto { format!("auto:{resolved}") } else { resolved.to_string() };
    Ok(NilpotencyReport {
        method: method_tag,
        r_a,
        vertex_set: vertices.iter().map(|&v| q.vertex_name(v).to_string()).collect(),
        per_vertex: VertexValues(per_vertex),
        layers_computed: filt.layers_computed(),
        notes,
    })
}
