use std::collections::BTreeSet;

use serde::Serialize;

use super::{AlgebraPresentation, ArrowId, Quiver, VertexId};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexPartition {
    pub sinks: BTreeSet<VertexId>,
    pub sources: BTreeSet<VertexId>,
    /// Vertices that are neither sinks nor sources.
    pub interior: BTreeSet<VertexId>,
}

pub fn sinks_and_sources(q: &Quiver) -> VertexPartition {
    let mut out = VertexPartition {
        sinks: BTreeSet::new(),
        sources: BTreeSet::new(),
        interior: BTreeSet::new(),
    };
    for v in 0..q.num_vertices() {
        let sink = q.out_arrows(v).next().is_none();
        let source = q.in_arrows(v).next().is_none();
        if sink {
            out.sinks.insert(v);
        }
        if source {
            out.sources.insert(v);
        }
        if !sink && !source {
            out.interior.insert(v);
        }
    }
    out
}

/// Vertices through which some zero-relation passes: `s(a_i)` for `i >= 2`.
pub fn zero_relation_vertices(pres: &AlgebraPresentation) -> BTreeSet<VertexId> {
    let q = pres.quiver();
    pres.relations()
        .iter()
        .filter(|r| r.is_zero_relation())
        .flat_map(|r| r.terms()[0].1.arrows()[1..].iter().map(|&a| q.arrow(a).source))
        .collect()
}

/// One branch of a toupie quiver, from the source to the sink.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Branch {
    pub arrows: Vec<ArrowId>,
    /// Interior vertices in order; `arrows.len() == vertices.len() + 1`.
    pub vertices: Vec<VertexId>,
}

/// The three-branch pattern with one zero-relation `g_{t+j} ... g_j` on one
/// branch and a commutativity relation between the other two.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GrafoPattern {
    pub zero_branch: usize,
    pub commuting_branches: [usize; 2],
    /// Interior lengths of the commuting branches and of the zero branch.
    pub n_1: usize,
    pub n_2: usize,
    pub n_3: usize,
    /// The zero-relation consists of arrows `j ..= j + t` (1-based) of the zero branch.
    pub j: usize,
    pub t: usize,
}

impl GrafoPattern {
    /// The vertices `z_j, ..., z_{j+t-1}` lying inside the zero-relation.
    pub fn relation_vertices(&self, shape: &ToupieShape) -> Vec<VertexId> {
        let z = &shape.branches[self.zero_branch].vertices;
        (self.j..self.j + self.t).map(|i| z[i - 1]).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ToupieShape {
    pub source: VertexId,
    pub sink: VertexId,
    pub branches: Vec<Branch>,
    pub grafo: Option<GrafoPattern>,
}

impl ToupieShape {
    pub fn branch_of(&self, v: VertexId) -> Option<(usize, usize)> {
        self.branches
            .iter()
            .enumerate()
            .find_map(|(b, br)| br.vertices.iter().position(|&x| x == v).map(|i| (b, i + 1)))
    }

    /// Checks the grafo pattern, explaining the first mismatch.
    pub fn match_grafo(&self, pres: &AlgebraPresentation) -> Result<GrafoPattern, String> {
        if self.branches.len() != 3 {
            return Err(format!("the quiver has {} branches, not three", self.branches.len()));
        }
        let zero: Vec<_> = pres.relations().iter().filter(|r| r.is_zero_relation()).collect();
        let comm: Vec<_> = pres.relations().iter().filter(|r| !r.is_zero_relation()).collect();
        if zero.len() != 1 {
            return Err(format!("expected exactly one zero-relation, found {}", zero.len()));
        }
        if comm.len() != 1 || comm[0].terms().len() != 2 {
            return Err("expected exactly one two-term commutativity relation".into());
        }
        let full_branch = |arrows: &[ArrowId]| self.branches.iter().position(|b| b.arrows == arrows);
        let b1 = full_branch(comm[0].terms()[0].1.arrows());
        let b2 = full_branch(comm[0].terms()[1].1.arrows());
        let (Some(b1), Some(b2)) = (b1, b2) else {
            return Err("the commutativity relation does not identify two whole branches".into());
        };
        let zb = 3 - b1 - b2;
        let path = zero[0].terms()[0].1.arrows();
        let branch = &self.branches[zb].arrows;
        let Some(start) = branch.windows(path.len()).position(|w| w == path) else {
            return Err("the zero-relation does not lie on the remaining branch".into());
        };
        let (mut n_1, mut n_2) = (self.branches[b1].vertices.len(), self.branches[b2].vertices.len());
        let (mut c1, mut c2) = (b1, b2);
        if c1 > c2 {
            std::mem::swap(&mut c1, &mut c2);
            std::mem::swap(&mut n_1, &mut n_2);
        }
        Ok(GrafoPattern {
            zero_branch: zb,
            commuting_branches: [c1, c2],
            n_1,
            n_2,
            n_3: self.branches[zb].vertices.len(),
            j: start + 1,
            t: path.len() - 1,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub is_monomial: bool,
    pub toupie: Option<ToupieShape>,
}

fn toupie_shape(q: &Quiver) -> Option<ToupieShape> {
    let n = q.num_vertices();
    if q.num_arrows() == 0 {
        return None;
    }
    let indeg = |v| q.in_arrows(v).count();
    let outdeg = |v| q.out_arrows(v).count();
    let sources: Vec<_> = (0..n).filter(|&v| indeg(v) == 0).collect();
    let sinks: Vec<_> = (0..n).filter(|&v| outdeg(v) == 0).collect();
    let (&[a], &[b]) = (sources.as_slice(), sinks.as_slice()) else {
        return None;
    };
    if (0..n).any(|v| v != a && v != b && (indeg(v) != 1 || outdeg(v) != 1)) {
        return None;
    }
    let mut branches = Vec::new();
    let mut covered = 2;
    for first in q.out_arrows(a) {
        let mut arrows = vec![first];
        let mut vertices = Vec::new();
        let mut at = q.arrow(first).target;
        while at != b {
            if at == a || vertices.contains(&at) || vertices.len() > n {
                return None;
            }
            vertices.push(at);
            let next = q.out_arrows(at).next()?;
            arrows.push(next);
            at = q.arrow(next).target;
        }
        covered += vertices.len();
        branches.push(Branch { arrows, vertices });
    }
    // an interior cycle disjoint from the branches would not be covered
    (covered == n).then_some(ToupieShape { source: a, sink: b, branches, grafo: None })
}

pub fn classify(pres: &AlgebraPresentation) -> Classification {
    let toupie = toupie_shape(pres.quiver()).map(|mut s| {
        s.grafo = s.match_grafo(pres).ok();
        s
    });
    Classification { is_monomial: pres.is_monomial(), toupie }
}
