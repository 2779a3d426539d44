//! Executable hypothesis checks for the comparison and reduction results on `r_a`.
//!
//! Every checker verifies its hypotheses on the computed data before asserting a
//! conclusion, and then verifies the conclusion against the computed `r` values.
//! A violated conclusion is reported as [`Error::Inconsistency`].

mod toupie;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{Rational, SpanBuilder, Subspace};
use crate::quiver::{classify, zero_relation_vertices, VertexId};
use crate::radical::{involvement_counts, nilpotency_index, Method, NilpotencyReport, RadicalFiltration};

pub use toupie::{build_toupie_witness, toupie_module, ToupieWitness, WitnessSummary};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Conclusion {
    /// `r_b <= r_a`
    #[serde(rename = "r_b <= r_a")]
    BLeA,
    /// `r_a <= r_b`
    #[serde(rename = "r_a <= r_b")]
    ALeB,
    #[serde(rename = "r_a = r_b")]
    Equal,
    #[serde(rename = "none")]
    None,
}

impl Conclusion {
    fn join(self, other: Conclusion) -> Conclusion {
        use Conclusion::*;
        match (self, other) {
            (None, c) | (c, None) => c,
            (a, b) if a == b => a,
            _ => Equal,
        }
    }
}

/// Which side of the pair a hypothesis concerns.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Projective,
    Injective,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HypothesisProfile {
    pub arrow: bool,
    /// `dim Irr(P_b, P_a)`
    pub irr_projective: usize,
    /// `dim Irr(I_b, I_a)`
    pub irr_injective: usize,
    pub end_pb: usize,
    pub end_ia: usize,
    /// `Hom(P_b, P_a) = End(P_a) f_1`, when an irreducible `f_1` exists.
    pub factor_projective: Option<bool>,
    /// `Hom(I_b, I_a) = g_1 End(I_b)`, when an irreducible `g_1` exists.
    pub factor_injective: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComparisonFinding {
    pub check: String,
    pub a: String,
    pub b: String,
    pub profile: HypothesisProfile,
    pub conclusion: Conclusion,
    pub r_a: usize,
    pub r_b: usize,
}

impl ComparisonFinding {
    /// Whether the finding asserts `r_x <= r_y` for the named vertices.
    pub fn asserts_le(&self, x: &str, y: &str) -> bool {
        match self.conclusion {
            Conclusion::BLeA => self.b == x && self.a == y,
            Conclusion::ALeB => self.a == x && self.b == y,
            Conclusion::Equal => (self.a == x && self.b == y) || (self.b == x && self.a == y),
            Conclusion::None => false,
        }
    }

    pub fn asserts_eq(&self, x: &str, y: &str) -> bool {
        self.conclusion == Conclusion::Equal && self.asserts_le(x, y)
    }

    pub fn statement(&self) -> String {
        match self.conclusion {
            Conclusion::BLeA => format!("r_{} <= r_{}", self.b, self.a),
            Conclusion::ALeB => format!("r_{} <= r_{}", self.a, self.b),
            Conclusion::Equal => format!("r_{} = r_{}", self.a, self.b),
            Conclusion::None => "none".into(),
        }
    }

    fn verify(self) -> Result<Self> {
        let ok = match self.conclusion {
            Conclusion::BLeA => self.r_b <= self.r_a,
            Conclusion::ALeB => self.r_a <= self.r_b,
            Conclusion::Equal => self.r_a == self.r_b,
            Conclusion::None => true,
        };
        if ok {
            Ok(self)
        } else {
            Err(Error::Inconsistency(format!(
                "{} concludes {} at ({}, {}) but r_{} = {} and r_{} = {}",
                self.check,
                self.statement(),
                self.a,
                self.b,
                self.a,
                self.r_a,
                self.b,
                self.r_b
            )))
        }
    }
}

struct Nodes {
    pa: usize,
    pb: usize,
    ia: usize,
    ib: usize,
}

fn nodes(filt: &RadicalFiltration, a: VertexId, b: VertexId) -> Result<Nodes> {
    let ar = filt.ar();
    let missing = |v: VertexId| Error::UnknownModule(format!("indecomposable projective or injective at vertex {v}"));
    Ok(Nodes {
        pa: ar.projective_node(a).ok_or_else(|| missing(a))?,
        pb: ar.projective_node(b).ok_or_else(|| missing(b))?,
        ia: ar.injective_node(a).ok_or_else(|| missing(a))?,
        ib: ar.injective_node(b).ok_or_else(|| missing(b))?,
    })
}

fn require_arrow(filt: &RadicalFiltration, a: VertexId, b: VertexId) -> Result<()> {
    let q = filt.ar().algebra().quiver();
    if q.has_arrow(a, b) {
        Ok(())
    } else {
        Err(Error::InvalidPath(format!("no arrow from {} to {}", q.vertex_name(a), q.vertex_name(b))))
    }
}

/// Representatives of a basis of `Irr(X, Y) = R^1 / R^2` in flat coordinates.
pub fn irreducible_representatives(filt: &RadicalFiltration, x: usize, y: usize) -> Vec<Vec<Rational>> {
    filt.layer(2, x, y).complement_in(&filt.layer(1, x, y)).expect("layers share the ambient space")
}

/// Whether `Hom(P_b, P_a) = End(P_a) f_1` (projective side) or
/// `Hom(I_b, I_a) = g_1 End(I_b)` (injective side) for the given representative.
pub fn factorization_holds(filt: &RadicalFiltration, a: VertexId, b: VertexId, side: Side, rep: &[Rational]) -> Result<bool> {
    let n = nodes(filt, a, b)?;
    let mut span;
    let target;
    match side {
        Side::Projective => {
            let (h, e) = (filt.hom(n.pb, n.pa), filt.hom(n.pa, n.pa));
            span = SpanBuilder::new(h.ambient());
            for mu in e.space().basis() {
                span.insert(h.layout().compose_flat(e.layout(), mu, rep));
            }
            target = h.dim();
        }
        Side::Injective => {
            let (h, e) = (filt.hom(n.ib, n.ia), filt.hom(n.ib, n.ib));
            span = SpanBuilder::new(h.ambient());
            for mu in e.space().basis() {
                span.insert(e.layout().compose_flat(h.layout(), rep, mu));
            }
            target = h.dim();
        }
    }
    Ok(span.dim() == target)
}

fn profile(filt: &RadicalFiltration, a: VertexId, b: VertexId) -> Result<HypothesisProfile> {
    let n = nodes(filt, a, b)?;
    let irr_p = irreducible_representatives(filt, n.pb, n.pa);
    let irr_i = irreducible_representatives(filt, n.ib, n.ia);
    let factor_projective = match irr_p.first() {
        Some(f) => Some(factorization_holds(filt, a, b, Side::Projective, f)?),
        None => None,
    };
    let factor_injective = match irr_i.first() {
        Some(g) => Some(factorization_holds(filt, a, b, Side::Injective, g)?),
        None => None,
    };
    Ok(HypothesisProfile {
        arrow: filt.ar().algebra().quiver().has_arrow(a, b),
        irr_projective: irr_p.len(),
        irr_injective: irr_i.len(),
        end_pb: filt.hom(n.pb, n.pb).dim(),
        end_ia: filt.hom(n.ia, n.ia).dim(),
        factor_projective,
        factor_injective,
    })
}

fn finding(filt: &RadicalFiltration, check: &str, a: VertexId, b: VertexId, profile: HypothesisProfile, conclusion: Conclusion) -> Result<ComparisonFinding> {
    let q = filt.ar().algebra().quiver();
    ComparisonFinding {
        check: check.into(),
        a: q.vertex_name(a).into(),
        b: q.vertex_name(b).into(),
        profile,
        conclusion,
        r_a: filt.canonical_r(a)?,
        r_b: filt.canonical_r(b)?,
    }
    .verify()
}

/// For an arrow `a -> b`: an irreducible `P_b -> P_a` with `End(P_b) = k` gives `r_b <= r_a`;
/// an irreducible `I_b -> I_a` with `End(I_a) = k` gives `r_a <= r_b`.
pub fn check_corollary_irred(filt: &RadicalFiltration, a: VertexId, b: VertexId) -> Result<ComparisonFinding> {
    require_arrow(filt, a, b)?;
    let p = profile(filt, a, b)?;
    let mut c = Conclusion::None;
    if p.irr_projective >= 1 && p.end_pb == 1 {
        c = c.join(Conclusion::BLeA);
    }
    if p.irr_injective >= 1 && p.end_ia == 1 {
        c = c.join(Conclusion::ALeB);
    }
    finding(filt, "corollary", a, b, p, c)
}

/// The factorization criterion: if every map `P_b -> P_a` is `mu f_1` for an irreducible
/// `f_1`, then `r_b <= r_a`; dually on injectives `r_a <= r_b`.
pub fn check_theorem_a(filt: &RadicalFiltration, a: VertexId, b: VertexId) -> Result<ComparisonFinding> {
    require_arrow(filt, a, b)?;
    let p = profile(filt, a, b)?;
    let mut c = Conclusion::None;
    if p.factor_projective == Some(true) {
        c = c.join(Conclusion::BLeA);
    }
    if p.factor_injective == Some(true) {
        c = c.join(Conclusion::ALeB);
    }
    finding(filt, "factorization", a, b, p, c)
}

fn arrows(filt: &RadicalFiltration) -> Vec<(VertexId, VertexId)> {
    let q = filt.ar().algebra().quiver();
    let mut out: Vec<_> = q.arrows().iter().map(|x| (x.source, x.target)).collect();
    out.sort_unstable();
    out.dedup();
    out
}

pub fn check_corollary_all(filt: &RadicalFiltration) -> Result<Vec<ComparisonFinding>> {
    arrows(filt).into_iter().filter(|(a, b)| a != b).map(|(a, b)| check_corollary_irred(filt, a, b)).collect()
}

pub fn check_theorem_a_all(filt: &RadicalFiltration) -> Result<Vec<ComparisonFinding>> {
    arrows(filt).into_iter().filter(|(a, b)| a != b).map(|(a, b)| check_theorem_a(filt, a, b)).collect()
}

fn require_monomial(filt: &RadicalFiltration, what: &str) -> Result<()> {
    if filt.ar().algebra().presentation().is_monomial() {
        Ok(())
    } else {
        Err(Error::MethodInapplicable(format!("{what}: the algebra is not monomial")))
    }
}

/// Monomial algebras, arrow `a -> b`: membership of `a`, `b` in the involved vertices
/// decides `r_b <= r_a`, `r_a <= r_b`, `r_a = r_b`, or nothing when both are involved.
pub fn check_prop_33(filt: &RadicalFiltration) -> Result<Vec<ComparisonFinding>> {
    require_monomial(filt, "involved-vertex comparison")?;
    let r0 = zero_relation_vertices(filt.ar().algebra().presentation());
    let mut out = Vec::new();
    for (a, b) in arrows(filt) {
        if a == b {
            continue;
        }
        let c = match (r0.contains(&a), r0.contains(&b)) {
            (true, false) => Conclusion::BLeA,
            (false, true) => Conclusion::ALeB,
            (false, false) => Conclusion::Equal,
            (true, true) => Conclusion::None,
        };
        out.push(finding(filt, "involved-vertices", a, b, profile(filt, a, b)?, c)?);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EndomorphismCheck {
    pub vertex: String,
    pub involved: bool,
    pub end_p: usize,
    pub end_i: usize,
}

/// Monomial algebras: `End(P_b) = End(I_b) = k` for every vertex not involved in a zero-relation.
pub fn check_lemma_32(filt: &RadicalFiltration) -> Result<Vec<EndomorphismCheck>> {
    require_monomial(filt, "endomorphism check")?;
    let alg = filt.ar().algebra();
    let r0 = zero_relation_vertices(alg.presentation());
    let mut out = Vec::new();
    for v in 0..alg.num_vertices() {
        let n = nodes(filt, v, v)?;
        let row = EndomorphismCheck {
            vertex: alg.quiver().vertex_name(v).into(),
            involved: r0.contains(&v),
            end_p: filt.hom(n.pa, n.pa).dim(),
            end_i: filt.hom(n.ia, n.ia).dim(),
        };
        if !row.involved && (row.end_p != 1 || row.end_i != 1) {
            return Err(Error::Inconsistency(format!(
                "vertex {} is not involved in a zero-relation but dim End(P) = {}, dim End(I) = {}",
                row.vertex, row.end_p, row.end_i
            )));
        }
        out.push(row);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorizationCheck {
    pub a: String,
    pub b: String,
    /// `P_a -> I_b` basis maps not factoring through `S_a` (resp. `S_b`) that were checked.
    pub through_a: usize,
    pub through_b: usize,
}

/// The line in `Hom(P_v, I_v)` of maps factoring through `S_v`.
fn simple_line(filt: &RadicalFiltration, v: VertexId) -> Result<Subspace> {
    let (_, _, qp) = filt.canonical_composite(v)?;
    Ok(Subspace::from_vectors(qp.layout().len(), [qp.to_flat()]))
}

fn radical_part(filt: &RadicalFiltration, x: usize, y: usize) -> Subspace {
    if x == y {
        filt.layer(1, x, y)
    } else {
        filt.hom(x, y).space().clone()
    }
}

/// A nonzero `f: P_a -> I_b` not factoring through `S_a` has a non-isomorphism
/// `phi: I_b -> I_a` with `phi f` nonzero through `S_a`; dually a non-isomorphism
/// `phi: P_b -> P_a` with `f phi` nonzero through `S_b`. Checked on a basis of each Hom space.
pub fn check_lemma_refe(filt: &RadicalFiltration) -> Result<Vec<FactorizationCheck>> {
    let alg = filt.ar().algebra();
    let q = alg.quiver();
    let nv = alg.num_vertices();
    let lines = (0..nv).map(|v| simple_line(filt, v)).collect::<Result<Vec<_>>>()?;
    let mut out = Vec::new();
    for a in 0..nv {
        for b in 0..nv {
            let n = nodes(filt, a, b)?;
            let h = filt.hom(n.pa, n.ib);
            let mut row = FactorizationCheck { a: q.vertex_name(a).into(), b: q.vertex_name(b).into(), through_a: 0, through_b: 0 };
            for f in h.space().basis() {
                let through = |line: &Subspace, v: VertexId| a == b && v == a && line.contains_vector(f);
                if !through(&lines[a], a) {
                    // phi in rad(I_b, I_a), phi f in the S_a line of Hom(P_a, I_a)
                    let phis = radical_part(filt, n.ib, n.ia);
                    let outer = filt.hom(n.ib, n.ia);
                    let target = filt.hom(n.pa, n.ia);
                    let imgs = phis.basis().iter().map(|phi| h.layout().compose_flat(outer.layout(), phi, f));
                    let span = Subspace::from_vectors(target.ambient(), imgs);
                    if !span.contains_vector(&lines[a].basis()[0]) {
                        return Err(Error::Inconsistency(format!(
                            "a map P_{} -> I_{} avoiding S_{} admits no non-isomorphism I_{} -> I_{} reaching S_{}",
                            row.a, row.b, row.a, row.b, row.a, row.a
                        )));
                    }
                    row.through_a += 1;
                }
                if !through(&lines[b], b) {
                    let phis = radical_part(filt, n.pb, n.pa);
                    let inner = filt.hom(n.pb, n.pa);
                    let target = filt.hom(n.pb, n.ib);
                    let imgs = phis.basis().iter().map(|phi| inner.layout().compose_flat(h.layout(), f, phi));
                    let span = Subspace::from_vectors(target.ambient(), imgs);
                    if !span.contains_vector(&lines[b].basis()[0]) {
                        return Err(Error::Inconsistency(format!(
                            "a map P_{} -> I_{} avoiding S_{} admits no non-isomorphism P_{} -> P_{} reaching S_{}",
                            row.a, row.b, row.b, row.b, row.a, row.b
                        )));
                    }
                    row.through_b += 1;
                }
            }
            out.push(row);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProjInjCheck {
    pub vertex: String,
    pub r: usize,
    /// Radical lengths of basis maps `P_a -> I_a` outside the `S_a` line.
    pub other_lengths: Vec<usize>,
}

/// Maps `P_a -> I_a` through `S_a` have length exactly `r_a`; basis maps outside that
/// line are strictly shorter.
pub fn check_proj_inj(filt: &RadicalFiltration) -> Result<Vec<ProjInjCheck>> {
    let alg = filt.ar().algebra();
    let mut out = Vec::new();
    for a in 0..alg.num_vertices() {
        let n = nodes(filt, a, a)?;
        let r = filt.canonical_r(a)?;
        let line = simple_line(filt, a)?;
        let mut other_lengths = Vec::new();
        for f in line.complement_in(filt.hom(n.pa, n.ia).space())? {
            let l = filt.length_between(n.pa, n.ia, &f)?;
            if l >= r {
                return Err(Error::Inconsistency(format!(
                    "a map P_{0} -> I_{0} avoiding S_{0} has length {l} >= r = {r}",
                    alg.quiver().vertex_name(a)
                )));
            }
            other_lengths.push(l);
        }
        out.push(ProjInjCheck { vertex: alg.quiver().vertex_name(a).into(), r, other_lengths });
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationCertificate {
    /// The zero-relation in traversal order.
    pub relation: String,
    pub vertices: Vec<String>,
    pub values: Vec<usize>,
}

fn direct_agrees(filt: &RadicalFiltration, report: &NilpotencyReport) -> Result<()> {
    let direct = filt.nilpotency_index();
    if report.r_a != direct {
        return Err(Error::Inconsistency(format!(
            "{} gives r_A = {} but the radical vanishes first in degree {direct}",
            report.method, report.r_a
        )));
    }
    Ok(())
}

/// `r_A = max r_u + 1` over the vertices involved in zero-relations of a monomial algebra.
pub fn check_theorem_b(filt: &RadicalFiltration) -> Result<NilpotencyReport> {
    require_monomial(filt, Method::ZeroRelations.name())?;
    let report = nilpotency_index(filt, Method::ZeroRelations, false)?;
    direct_agrees(filt, &report)?;
    Ok(report)
}

/// When each involved vertex occurs once in one zero-relation, `r` is constant along each
/// zero-relation and one representative per relation gives `r_A`.
pub fn check_theorem_c(filt: &RadicalFiltration) -> Result<(NilpotencyReport, Vec<RelationCertificate>)> {
    let report = nilpotency_index(filt, Method::OnePerRelation, false)?;
    direct_agrees(filt, &report)?;
    let pres = filt.ar().algebra().presentation();
    let q = pres.quiver();
    debug_assert!(involvement_counts(pres).iter().all(|&c| c <= 1));
    let mut certs = Vec::new();
    for rel in pres.relations() {
        let path = &rel.terms()[0].1;
        let vs: Vec<VertexId> = path.arrows()[1..].iter().map(|&x| q.arrow(x).source).collect();
        let values = vs.iter().map(|&v| filt.canonical_r(v)).collect::<Result<Vec<_>>>()?;
        let cert = RelationCertificate {
            relation: path.display(q),
            vertices: vs.iter().map(|&v| q.vertex_name(v).to_string()).collect(),
            values,
        };
        if cert.values.windows(2).any(|w| w[0] != w[1]) {
            return Err(Error::Inconsistency(format!("r is not constant along {}: {:?}", cert.relation, cert.values)));
        }
        certs.push(cert);
    }
    Ok((report, certs))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BranchCertificate {
    pub statement: String,
    pub vertices: Vec<String>,
    pub values: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct ToupieCheck {
    pub report: NilpotencyReport,
    pub relation: RelationCertificate,
    pub branches: Vec<BranchCertificate>,
    pub witnesses: Vec<ToupieWitness>,
}

/// Three-branch toupie algebras with one zero-relation: `r` is constant on the
/// zero-relation, one of its vertices gives `r_A`, and the branch comparisons hold.
pub fn check_theorem_d(filt: &RadicalFiltration) -> Result<ToupieCheck> {
    let report = nilpotency_index(filt, Method::Toupie, false)?;
    direct_agrees(filt, &report)?;
    let alg = filt.ar().algebra();
    let pres = alg.presentation();
    let q = pres.quiver();
    let shape = classify(pres).toupie.expect("gate passed");
    let pattern = shape.match_grafo(pres).expect("gate passed");
    let r = |v: VertexId| filt.canonical_r(v);
    let names = |vs: &[VertexId]| vs.iter().map(|&v| q.vertex_name(v).to_string()).collect::<Vec<_>>();

    let rv = pattern.relation_vertices(&shape);
    let values = rv.iter().map(|&v| r(v)).collect::<Result<Vec<_>>>()?;
    if values.windows(2).any(|w| w[0] != w[1]) {
        return Err(Error::Inconsistency(format!("r is not constant on the zero-relation: {values:?}")));
    }
    let zero_rel = pres.relations().iter().find(|x| x.is_zero_relation()).expect("gate passed");
    let relation = RelationCertificate { relation: zero_rel.terms()[0].1.display(q), vertices: names(&rv), values };

    let mut branches = Vec::new();
    let mut constant = |statement: String, vs: Vec<VertexId>| -> Result<()> {
        if vs.is_empty() {
            return Ok(());
        }
        let values = vs.iter().map(|&v| r(v)).collect::<Result<Vec<_>>>()?;
        if values.windows(2).any(|w| w[0] != w[1]) {
            return Err(Error::Inconsistency(format!("{statement} fails: {values:?}")));
        }
        branches.push(BranchCertificate { statement, vertices: names(&vs), values });
        Ok(())
    };
    for &c in &pattern.commuting_branches {
        constant(format!("r constant on commuting branch {}", c + 1), shape.branches[c].vertices.clone())?;
    }
    let zb = &shape.branches[pattern.zero_branch].vertices;
    let (inside, outside): (Vec<VertexId>, Vec<VertexId>) = zb.iter().partition(|v| rv.contains(v));
    constant("r constant on involved vertices of the zero branch".into(), inside.clone())?;
    constant("r constant on the other vertices of the zero branch".into(), outside.clone())?;
    if let (Some(&o), Some(&i)) = (outside.first(), inside.first()) {
        let (ro, ri) = (r(o)?, r(i)?);
        if ro > ri {
            return Err(Error::Inconsistency(format!("r_{} = {ro} exceeds r_{} = {ri}", q.vertex_name(o), q.vertex_name(i))));
        }
        branches.push(BranchCertificate {
            statement: "r on uninvolved zero-branch vertices <= r on involved ones".into(),
            vertices: names(&[o, i]),
            values: vec![ro, ri],
        });
    }

    let witnesses = (pattern.j..pattern.j + pattern.t)
        .map(|i| build_toupie_witness(alg, &shape, &pattern, i, Some(filt)))
        .collect::<Result<Vec<_>>>()?;
    Ok(ToupieCheck { report, relation, branches, witnesses })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Check {
    TheoremA,
    Corollary,
    Prop33,
    B,
    C,
    D,
    Lemmas,
    All,
}

impl Check {
    pub const ALL: [Check; 8] = [Check::TheoremA, Check::Corollary, Check::Prop33, Check::B, Check::C, Check::D, Check::Lemmas, Check::All];

    pub fn name(self) -> &'static str {
        match self {
            Check::TheoremA => "A",
            Check::Corollary => "corollary",
            Check::Prop33 => "prop33",
            Check::B => "B",
            Check::C => "C",
            Check::D => "D",
            Check::Lemmas => "lemmas",
            Check::All => "all",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown check `{s}`; expected one of A, corollary, prop33, B, C, D, lemmas, all"))
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Section {
    pub check: String,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub findings: Vec<ComparisonFinding>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<NilpotencyReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub relations: Vec<RelationCertificate>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub branches: Vec<BranchCertificate>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<WitnessSummary>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub endomorphisms: Vec<EndomorphismCheck>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub factorizations: Vec<FactorizationCheck>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub proj_inj: Vec<ProjInjCheck>,
}

impl Section {
    fn ok(check: Check) -> Self {
        Section { check: check.name().into(), status: "ok".into(), ..Default::default() }
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct CheckReport {
    pub sections: Vec<Section>,
}

fn run_one(filt: &RadicalFiltration, check: Check) -> Result<Section> {
    let mut s = Section::ok(check);
    match check {
        Check::TheoremA => s.findings = check_theorem_a_all(filt)?,
        Check::Corollary => s.findings = check_corollary_all(filt)?,
        Check::Prop33 => s.findings = check_prop_33(filt)?,
        Check::B => s.report = Some(check_theorem_b(filt)?),
        Check::C => {
            let (r, c) = check_theorem_c(filt)?;
            s.report = Some(r);
            s.relations = c;
        }
        Check::D => {
            let d = check_theorem_d(filt)?;
            s.report = Some(d.report);
            s.relations = vec![d.relation];
            s.branches = d.branches;
            s.witnesses = d.witnesses.iter().map(ToupieWitness::summary).collect();
        }
        Check::Lemmas => {
            if filt.ar().algebra().presentation().is_monomial() {
                s.endomorphisms = check_lemma_32(filt)?;
            }
            s.factorizations = check_lemma_refe(filt)?;
            s.proj_inj = check_proj_inj(filt)?;
        }
        Check::All => unreachable!(),
    }
    Ok(s)
}

/// Runs one check, or all of them. A refused gate is an error for a single check and
/// an `inapplicable` section under `All`.
pub fn run_checks(filt: &RadicalFiltration, check: Check) -> Result<CheckReport> {
    if check != Check::All {
        return Ok(CheckReport { sections: vec![run_one(filt, check)?] });
    }
    let mut sections = Vec::new();
    for c in &Check::ALL[..7] {
        match run_one(filt, *c) {
            Ok(s) => sections.push(s),
            Err(Error::MethodInapplicable(why)) => sections.push(Section {
                check: c.name().into(),
                status: "inapplicable".into(),
                reason: Some(why),
                ..Default::default()
            }),
            Err(e) => return Err(e),
        }
    }
    Ok(CheckReport { sections })
}

impl CheckReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// A plain-text summary table.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for s in &self.sections {
            out.push_str(&format!("[{}] {}", s.check, s.status));
            if let Some(r) = &s.reason {
                out.push_str(&format!(": {r}"));
            }
            out.push('\n');
            if !s.findings.is_empty() {
                out.push_str(&format!("  {:<6} {:<6} {:>5} {:>5} {:>5} {:>5} {:>6} {:>6}  {}\n", "a", "b", "IrrP", "IrrI", "EndP", "EndI", "r_a", "r_b", "conclusion"));
                for f in &s.findings {
                    out.push_str(&format!(
                        "  {:<6} {:<6} {:>5} {:>5} {:>5} {:>5} {:>6} {:>6}  {}\n",
                        f.a,
                        f.b,
                        f.profile.irr_projective,
                        f.profile.irr_injective,
                        f.profile.end_pb,
                        f.profile.end_ia,
                        f.r_a,
                        f.r_b,
                        f.statement()
                    ));
                }
            }
            if let Some(r) = &s.report {
                out.push_str(&format!("  r_A = {} via {} over {{{}}}\n", r.r_a, r.method, r.vertex_set.join(", ")));
                for n in &r.notes {
                    out.push_str(&format!("  note: {n}\n"));
                }
            }
            for c in &s.relations {
                out.push_str(&format!("  relation {}: r = {:?} at {:?}\n", c.relation, c.values, c.vertices));
            }
            for b in &s.branches {
                out.push_str(&format!("  {}: {:?} at {:?}\n", b.statement, b.values, b.vertices));
            }
            for w in &s.witnesses {
                out.push_str(&format!(
                    "  witness at {} (i = {}): dim {:?}, dim End = {}, {} steps, length {}\n",
                    w.vertex,
                    w.index,
                    w.dim_vector,
                    w.end_dim,
                    w.steps,
                    w.length.map_or("-".into(), |l| l.to_string())
                ));
            }
            for e in &s.endomorphisms {
                out.push_str(&format!(
                    "  vertex {}: involved {}, dim End P = {}, dim End I = {}\n",
                    e.vertex, e.involved, e.end_p, e.end_i
                ));
            }
            if !s.factorizations.is_empty() {
                let n: usize = s.factorizations.iter().map(|f| f.through_a + f.through_b).sum();
                out.push_str(&format!("  {n} maps P_a -> I_b avoiding a simple have the required factorization\n"));
            }
            for p in &s.proj_inj {
                out.push_str(&format!("  r_{} = {}, other basis lengths {:?}\n", p.vertex, p.r, p.other_lengths));
            }
        }
        out
    }
}
