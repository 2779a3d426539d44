//! Quivers, paths, relations and bound quiver presentations.
//!
//! Paths are stored in traversal order: the first arrow walked is the first
//! element. The right-to-left notation `a_m ... a_1` (where `a_1` is walked
//! first) is available through [`Path::display_composition`].
//!
//! | traversal (DSL)     | composition notation |
//! |---------------------|----------------------|
//! | `a1*a2*a3`          | `a3 a2 a1`           |
//! | `b1*b2 - g1*g2`     | `b2 b1 - g2 g1`      |

mod basis;
mod classify;
mod parse;

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::Rational;

pub use basis::{validate_admissible, AdmissibilityReport, BoundAlgebra, DEFAULT_PATH_CAP};
pub use classify::{
    classify, sinks_and_sources, zero_relation_vertices, Branch, Classification, GrafoPattern,
    ToupieShape, VertexPartition,
};
pub use parse::parse_presentation;

pub type VertexId = usize;
pub type ArrowId = usize;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Arrow {
    pub name: String,
    pub source: VertexId,
    pub target: VertexId,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    /// Arrows are `(name, source name, target name)`.
    pub fn new<S: AsRef<str>>(vertices: &[S], arrows: &[(S, S, S)]) -> Result<Self> {
        let vertices: Vec<String> = vertices.iter().map(|v| v.as_ref().to_string()).collect();
        let mut seen = BTreeSet::new();
        for v in &vertices {
            if !seen.insert(v.as_str()) {
                return Err(Error::InvalidQuiver(format!("duplicate vertex `{v}`")));
            }
        }
        let lookup = |name: &str| {
            vertices
                .iter()
                .position(|v| v == name)
                .ok_or_else(|| Error::InvalidQuiver(format!("unknown vertex `{name}`")))
        };
        let mut names = BTreeSet::new();
        let mut out = Vec::with_capacity(arrows.len());
        for (name, s, t) in arrows {
            let name = name.as_ref();
            if !names.insert(name.to_string()) {
                return Err(Error::InvalidQuiver(format!("duplicate arrow `{name}`")));
            }
            out.push(Arrow {
                name: name.to_string(),
                source: lookup(s.as_ref())?,
                target: lookup(t.as_ref())?,
            });
        }
        Ok(Quiver { vertices, arrows: out })
    }

    pub(crate) fn from_parts(vertices: Vec<String>, arrows: Vec<Arrow>) -> Self {
        Quiver { vertices, arrows }
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v]
    }

    pub fn vertex(&self, name: &str) -> Option<VertexId> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, a: ArrowId) -> &Arrow {
        &self.arrows[a]
    }

    pub fn arrow_by_name(&self, name: &str) -> Option<ArrowId> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn out_arrows(&self, v: VertexId) -> impl Iterator<Item = ArrowId> + '_ {
        (0..self.arrows.len()).filter(move |&a| self.arrows[a].source == v)
    }

    pub fn in_arrows(&self, v: VertexId) -> impl Iterator<Item = ArrowId> + '_ {
        (0..self.arrows.len()).filter(move |&a| self.arrows[a].target == v)
    }

    pub fn has_arrow(&self, from: VertexId, to: VertexId) -> bool {
        self.arrows.iter().any(|a| a.source == from && a.target == to)
    }

    /// Same vertices, every arrow reversed (names kept).
    pub fn opposite(&self) -> Quiver {
        Quiver {
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| Arrow { name: a.name.clone(), source: a.target, target: a.source })
                .collect(),
        }
    }

    pub fn is_acyclic(&self) -> bool {
        // Kahn's algorithm
        let n = self.num_vertices();
        let mut indeg = vec![0usize; n];
        for a in &self.arrows {
            indeg[a.target] += 1;
        }
        let mut stack: Vec<VertexId> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = stack.pop() {
            seen += 1;
            for a in self.out_arrows(v) {
                let t = self.arrows[a].target;
                indeg[t] -= 1;
                if indeg[t] == 0 {
                    stack.push(t);
                }
            }
        }
        seen == n
    }
}

/// A path in a quiver, arrows in traversal order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    start: VertexId,
    end: VertexId,
    arrows: Vec<ArrowId>,
}

impl Path {
    pub fn trivial(v: VertexId) -> Path {
        Path { start: v, end: v, arrows: Vec::new() }
    }

    pub fn arrow(q: &Quiver, a: ArrowId) -> Path {
        let ar = q.arrow(a);
        Path { start: ar.source, end: ar.target, arrows: vec![a] }
    }

    pub fn new(q: &Quiver, start: VertexId, arrows: Vec<ArrowId>) -> Result<Path> {
        if start >= q.num_vertices() {
            return Err(Error::InvalidPath(format!("vertex index {start} out of range")));
        }
        let mut at = start;
        for &a in &arrows {
            if a >= q.num_arrows() {
                return Err(Error::InvalidPath(format!("arrow index {a} out of range")));
            }
            let ar = q.arrow(a);
            if ar.source != at {
                return Err(Error::InvalidPath(format!(
                    "arrow `{}` starts at `{}`, not at `{}`",
                    ar.name,
                    q.vertex_name(ar.source),
                    q.vertex_name(at)
                )));
            }
            at = ar.target;
        }
        Ok(Path { start, end: at, arrows })
    }

    /// Path from a non-empty arrow sequence.
    pub fn from_arrows(q: &Quiver, arrows: Vec<ArrowId>) -> Result<Path> {
        let first = *arrows.first().ok_or_else(|| Error::InvalidPath("empty arrow list".into()))?;
        if first >= q.num_arrows() {
            return Err(Error::InvalidPath(format!("arrow index {first} out of range")));
        }
        Path::new(q, q.arrow(first).source, arrows)
    }

    pub fn start(&self) -> VertexId {
        self.start
    }

    pub fn end(&self) -> VertexId {
        self.end
    }

    pub fn arrows(&self) -> &[ArrowId] {
        &self.arrows
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    /// `self` followed by `next`; `None` when the endpoints do not match.
    pub fn then(&self, next: &Path) -> Option<Path> {
        if self.end != next.start {
            return None;
        }
        let mut arrows = Vec::with_capacity(self.len() + next.len());
        arrows.extend_from_slice(&self.arrows);
        arrows.extend_from_slice(&next.arrows);
        Some(Path { start: self.start, end: next.end, arrows })
    }

    /// The same arrows walked backwards, as a path of the opposite quiver.
    pub fn reversed(&self) -> Path {
        let mut arrows = self.arrows.clone();
        arrows.reverse();
        Path { start: self.end, end: self.start, arrows }
    }

    /// Traversal order, `a*b*c`; trivial paths print as `e_<vertex>`.
    pub fn display(&self, q: &Quiver) -> String {
        if self.is_trivial() {
            return format!("e_{}", q.vertex_name(self.start));
        }
        let names: Vec<&str> = self.arrows.iter().map(|&a| q.arrow(a).name.as_str()).collect();
        names.join("*")
    }

    /// Composition order, last arrow first: `c b a`.
    pub fn display_composition(&self, q: &Quiver) -> String {
        if self.is_trivial() {
            return format!("e_{}", q.vertex_name(self.start));
        }
        let names: Vec<&str> =
            self.arrows.iter().rev().map(|&a| q.arrow(a).name.as_str()).collect();
        names.join(" ")
    }
}

/// A linear combination of parallel paths, read as a generator of the ideal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Relation {
    terms: Vec<(Rational, Path)>,
}

impl Relation {
    /// Combines repeated paths and drops cancelled terms.
    pub fn new(terms: Vec<(Rational, Path)>) -> Result<Relation> {
        let mut combined: Vec<(Rational, Path)> = Vec::new();
        for (c, p) in terms {
            if let Some(slot) = combined.iter_mut().find(|(_, q)| *q == p) {
                slot.0 = &slot.0 + &c;
            } else {
                combined.push((c, p));
            }
        }
        combined.retain(|(c, _)| !c.is_zero());
        let Some((_, first)) = combined.first() else {
            return Err(Error::InvalidRelation("relation has no nonzero term".into()));
        };
        let (s, e) = (first.start(), first.end());
        if combined.iter().any(|(_, p)| p.start() != s || p.end() != e) {
            return Err(Error::NonParallel(format!("{} terms", combined.len())));
        }
        Ok(Relation { terms: combined })
    }

    pub fn zero_relation(path: Path) -> Relation {
        Relation { terms: vec![(Rational::ONE, path)] }
    }

    pub fn terms(&self) -> &[(Rational, Path)] {
        &self.terms
    }

    pub fn is_zero_relation(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn start(&self) -> VertexId {
        self.terms[0].1.start()
    }

    pub fn end(&self) -> VertexId {
        self.terms[0].1.end()
    }

    pub fn min_len(&self) -> usize {
        self.terms.iter().map(|(_, p)| p.len()).min().unwrap_or(0)
    }

    pub fn max_len(&self) -> usize {
        self.terms.iter().map(|(_, p)| p.len()).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.min_len() == self.max_len()
    }

    pub fn reversed(&self) -> Relation {
        Relation { terms: self.terms.iter().map(|(c, p)| (c.clone(), p.reversed())).collect() }
    }

    pub fn display(&self, q: &Quiver) -> String {
        fmt_terms(&self.terms, |p| p.display(q))
    }

    pub fn display_composition(&self, q: &Quiver) -> String {
        fmt_terms(&self.terms, |p| p.display_composition(q))
    }
}

fn fmt_terms(terms: &[(Rational, Path)], show: impl Fn(&Path) -> String) -> String {
    let mut s = String::new();
    for (i, (c, p)) in terms.iter().enumerate() {
        let neg = c.signum() < 0;
        let abs = if neg { -c } else { c.clone() };
        if i == 0 {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        if !abs.is_one() {
            let _ = write!(s, "{abs}*");
        }
        s.push_str(&show(p));
    }
    s
}

/// Quiver together with generators of the ideal; the algebra is `kQ/I` over the rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraPresentation {
    quiver: Quiver,
    relations: Vec<Relation>,
}

impl AlgebraPresentation {
    pub fn new(quiver: Quiver, relations: Vec<Relation>) -> Result<Self> {
        for r in &relations {
            for (_, p) in r.terms() {
                if p.start() >= quiver.num_vertices()
                    || p.arrows().iter().any(|&a| a >= quiver.num_arrows())
                {
                    return Err(Error::InvalidRelation("relation refers outside the quiver".into()));
                }
            }
        }
        Ok(AlgebraPresentation { quiver, relations })
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn is_monomial(&self) -> bool {
        self.relations.iter().all(Relation::is_zero_relation)
    }

    pub fn opposite(&self) -> AlgebraPresentation {
        AlgebraPresentation {
            quiver: self.quiver.opposite(),
            relations: self.relations.iter().map(Relation::reversed).collect(),
        }
    }

    /// Canonical DSL text for this presentation.
    pub fn to_dsl(&self) -> String {
        let q = &self.quiver;
        let mut s = String::new();
        let _ = writeln!(s, "vertex {}", q.vertex_names().join(" "));
        for a in q.arrows() {
            let _ = writeln!(
                s,
                "arrow {} {} {}",
                a.name,
                q.vertex_name(a.source),
                q.vertex_name(a.target)
            );
        }
        for r in &self.relations {
            let _ = writeln!(s, "relation {}", r.display(q));
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cyclic() -> Quiver {
        Quiver::new(
            &["1", "2", "3"],
            &[("alpha", "1", "2"), ("beta", "2", "1"), ("gamma", "2", "3")],
        )
        .unwrap()
    }

    #[test]
    fn rejects_bad_quivers() {
        assert!(Quiver::new(&["1", "1"], &[]).is_err());
        assert!(Quiver::new(&["1"], &[("a", "1", "2")]).is_err());
        assert!(Quiver::new(&["1", "2"], &[("a", "1", "2"), ("a", "2", "1")]).is_err());
        // loops and multiple arrows are fine at this level
        assert!(Quiver::new(&["1", "2"], &[("a", "1", "1"), ("b", "1", "2"), ("c", "1", "2")]).is_ok());
    }

    #[test]
    fn path_composition_checks_endpoints() {
        let q = cyclic();
        let ab = Path::from_arrows(&q, vec![0, 1]).unwrap();
        assert_eq!((ab.start(), ab.end()), (0, 0));
        assert!(Path::from_arrows(&q, vec![0, 2, 1]).is_err());
        assert_eq!(ab.display(&q), "alpha*beta");
        assert_eq!(ab.display_composition(&q), "beta alpha");
        let g = Path::arrow(&q, 2);
        assert!(ab.then(&g).is_none());
        assert_eq!(Path::arrow(&q, 0).then(&g).unwrap().display(&q), "alpha*gamma");
    }

    #[test]
    fn relation_invariants() {
        let q = cyclic();
        let ab = Path::from_arrows(&q, vec![0, 1]).unwrap();
        let g = Path::from_arrows(&q, vec![0, 2]).unwrap();
        assert!(matches!(
            Relation::new(vec![(Rational::ONE, ab.clone()), (Rational::ONE, g)]),
            Err(Error::NonParallel(_))
        ));
        assert!(Relation::new(vec![(Rational::ONE, ab.clone()), (-Rational::ONE, ab.clone())]).is_err());
        let r = Relation::new(vec![(Rational::new(3, 2), ab.clone())]).unwrap();
        assert!(r.is_zero_relation());
        assert_eq!(r.display(&q), "3/2*alpha*beta");
    }

    fn arb_walk() -> impl Strategy<Value = (usize, Vec<usize>)> {
        // walks in the cyclic quiver: alternate alpha/beta, optionally end with gamma
        (0usize..6, any::<bool>()).prop_map(|(n, g)| {
            let mut arrows: Vec<usize> = (0..n).map(|i| i % 2).collect();
            if g && n % 2 == 1 {
                arrows.push(2);
            }
            (0, arrows)
        })
    }

    proptest! {
        #[test]
        fn composition_is_associative_with_identities((s, w) in arb_walk(), cut1 in 0usize..8, cut2 in 0usize..8) {
            let q = cyclic();
            let p = Path::new(&q, s, w.clone()).unwrap();
            let n = p.len();
            let (i, j) = (cut1.min(n), cut2.min(n));
            let (i, j) = (i.min(j), i.max(j));
            let mk = |a: usize, b: usize| {
                let start = if a == 0 { s } else { q.arrow(w[a - 1]).target };
                Path::new(&q, start, w[a..b].to_vec()).unwrap()
            };
            let (x, y, z) = (mk(0, i), mk(i, j), mk(j, n));
            let left = x.then(&y).unwrap().then(&z).unwrap();
            let right = x.then(&y.then(&z).unwrap()).unwrap();
            prop_assert_eq!(&left, &right);
            prop_assert_eq!(&left, &p);
            prop_assert_eq!(Path::trivial(p.start()).then(&p).unwrap(), p.clone());
            prop_assert_eq!(p.then(&Path::trivial(p.end())).unwrap(), p);
        }
    }
}
