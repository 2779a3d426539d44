//! Path bases of bound quiver algebras.
//!
//! Admissibility is certified exactly: for increasing length bounds `L` the
//! span of the untruncated multiples `p r q` (every term of length `<= L`) is
//! a subspace of the ideal. Once every path of some length `N` lies in it,
//! `R^N` is inside the ideal and the algebra is `kQ_{<N}` modulo the truncated
//! multiples. Truncation alone would accept ideals such as `(x^2 - x^3)`.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::linalg::{Rational, SpanBuilder};

use super::{AlgebraPresentation, Path, Quiver, VertexId};

/// Default bound on path lengths tried while certifying admissibility.
pub const DEFAULT_PATH_CAP: usize = 64;

/// Upper bound on the number of paths enumerated during certification.
const PATH_BUDGET: usize = 200_000;

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct AdmissibilityReport {
    /// Least `N` with every path of length `N` in the ideal.
    pub nilpotency_degree: usize,
    /// Length of the longest path that survives modulo the ideal.
    pub longest_surviving_path: usize,
    pub dimension: usize,
}

/// All paths of length `<= max_len`, grouped by start vertex, shortest first.
fn paths_up_to(q: &Quiver, max_len: usize, budget: usize) -> Result<Vec<Vec<Path>>> {
    let mut by_start = Vec::with_capacity(q.num_vertices());
    let mut total = 0usize;
    for v in 0..q.num_vertices() {
        let mut all = vec![Path::trivial(v)];
        let mut frontier = 0;
        for _ in 0..max_len {
            let end = all.len();
            for i in frontier..end {
                for a in q.out_arrows(all[i].end()) {
                    let p = all[i].then(&Path::arrow(q, a)).expect("composable");
                    all.push(p);
                }
            }
            frontier = end;
            if all.len() + total > budget {
                return Err(Error::CapExceeded {
                    cap: budget,
                    detail: format!("more than {budget} paths of length at most {max_len}"),
                });
            }
            if frontier == all.len() {
                break;
            }
        }
        total += all.len();
        by_start.push(all);
    }
    Ok(by_start)
}

/// Column order within one `e_j A e_i` block: longest first, then lexicographic.
/// Pivots therefore land on long paths and the surviving basis is as short as possible.
fn column_order(a: &Path, b: &Path) -> std::cmp::Ordering {
    b.len().cmp(&a.len()).then_with(|| a.arrows().cmp(b.arrows()))
}

struct Block {
    /// Columns of this block, in `column_order`.
    paths: Vec<Path>,
    index: HashMap<Path, usize>,
}

impl Block {
    fn new(mut paths: Vec<Path>) -> Self {
        paths.sort_by(column_order);
        let index = paths.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        Block { paths, index }
    }
}

/// Ideal multiples `p r q` landing in the block from `i` to `j`, as column vectors.
/// With `truncate = Some(n)` terms of length `>= n` are dropped; otherwise a
/// multiple is only produced when all its terms are columns of the block.
fn ideal_span(
    pres: &AlgebraPresentation,
    by_start: &[Vec<Path>],
    block: &Block,
    i: VertexId,
    j: VertexId,
    max_len: usize,
    truncate: Option<usize>,
) -> SpanBuilder {
    let mut span = SpanBuilder::new(block.paths.len());
    for r in pres.relations() {
        let budget = max_len.saturating_sub(r.min_len());
        if r.min_len() > max_len {
            continue;
        }
        for p in by_start[i].iter().filter(|p| p.end() == r.start() && p.len() <= budget) {
            for q in by_start[r.end()].iter().filter(|q| q.end() == j && p.len() + q.len() <= budget) {
                let mut v = vec![Rational::ZERO; block.paths.len()];
                let mut complete = true;
                for (c, t) in r.terms() {
                    let full = p.then(t).and_then(|x| x.then(q)).expect("parallel");
                    if truncate.is_some_and(|n| full.len() >= n) {
                        continue;
                    }
                    match block.index.get(&full) {
                        Some(&k) => v[k] += c,
                        None => {
                            complete = false;
                            break;
                        }
                    }
                }
                if complete {
                    span.insert(v);
                }
            }
        }
    }
    span
}

/// Finds the least `N <= cap` with every path of length `N` in the ideal.
fn certify(pres: &AlgebraPresentation, cap: usize) -> Result<usize> {
    let q = pres.quiver();
    for r in pres.relations() {
        if r.min_len() < 2 {
            return Err(Error::NotAdmissible(format!(
                "relation `{}` has a term of length {}",
                r.display(q),
                r.min_len()
            )));
        }
    }
    if q.is_acyclic() {
        // every multiple has bounded length, so a single exact pass suffices
        let by_start = paths_up_to(q, q.num_vertices(), PATH_BUDGET)?;
        let longest = by_start.iter().flatten().map(Path::len).max().unwrap_or(0);
        return Ok(least_vanishing_length(pres, &by_start, longest).unwrap_or(longest + 1));
    }
    for max_len in 2.min(cap)..=cap {
        let by_start = paths_up_to(q, max_len, PATH_BUDGET)?;
        if let Some(n) = least_vanishing_length(pres, &by_start, max_len) {
            return Ok(n);
        }
    }
    Err(Error::NotAdmissible(format!(
        "paths of length up to {cap} survive modulo the relations"
    )))
}

/// Least `len <= max_len` such that every path of length `len` lies in the exact
/// span of multiples whose terms all have length `<= max_len`. Any longer path
/// is a multiple of such a path, so the answer is the nilpotency degree.
fn least_vanishing_length(pres: &AlgebraPresentation, by_start: &[Vec<Path>], max_len: usize) -> Option<usize> {
    let n = pres.quiver().num_vertices();
    let mut vanish = vec![true; max_len + 1];
    vanish[0] = n == 0;
    for i in 0..n {
        for j in 0..n {
            let block = Block::new(by_start[i].iter().filter(|p| p.end() == j).cloned().collect());
            if block.paths.is_empty() {
                continue;
            }
            let span = ideal_span(pres, by_start, &block, i, j, max_len, None);
            for (k, p) in block.paths.iter().enumerate() {
                if p.len() == 0 || !vanish[p.len()] {
                    continue;
                }
                let mut v = vec![Rational::ZERO; block.paths.len()];
                v[k] = Rational::ONE;
                if !span.contains(&v) {
                    vanish[p.len()] = false;
                }
            }
        }
    }
    (1..=max_len).find(|&l| vanish[l])
}

struct Inner {
    pres: AlgebraPresentation,
    nilpotency_degree: usize,
    basis: Vec<Path>,
    /// Basis indices of `e_j A e_i`, indexed `[i][j]`.
    blocks: Vec<Vec<Vec<usize>>>,
    /// Position of each basis element inside its block.
    local: Vec<usize>,
    /// Normal forms of every path of length below the nilpotency degree.
    normal: HashMap<Path, Vec<(usize, Rational)>>,
    opposite: OnceLock<Result<BoundAlgebra>>,
}

/// A bound quiver algebra `kQ/I` with a fixed path basis. Cheap to clone.
#[derive(Clone)]
pub struct BoundAlgebra(Arc<Inner>);

impl std::fmt::Debug for BoundAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("BoundAlgebra")
            .field("vertices", &self.0.pres.quiver().num_vertices())
            .field("dim", &self.0.basis.len())
            .finish()
    }
}

impl PartialEq for BoundAlgebra {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.pres == other.0.pres
    }
}

impl Eq for BoundAlgebra {}

/// Certifies admissibility and reports the nilpotency degree of the arrow ideal.
pub fn validate_admissible(pres: &AlgebraPresentation, max_len: usize) -> Result<AdmissibilityReport> {
    let alg = BoundAlgebra::with_cap(pres.clone(), max_len)?;
    Ok(alg.admissibility())
}

impl BoundAlgebra {
    pub fn new(pres: AlgebraPresentation) -> Result<Self> {
        Self::with_cap(pres, DEFAULT_PATH_CAP)
    }

    pub fn with_cap(pres: AlgebraPresentation, cap: usize) -> Result<Self> {
        if cap == 0 {
            return Err(Error::InvalidPath("path cap must be positive".into()));
        }
        let n_deg = certify(&pres, cap)?;
        let q = pres.quiver();
        let n = q.num_vertices();
        let by_start = paths_up_to(q, n_deg.saturating_sub(1), PATH_BUDGET)?;

        let mut basis = Vec::new();
        let mut blocks = vec![vec![Vec::new(); n]; n];
        let mut normal: HashMap<Path, Vec<(usize, Rational)>> = HashMap::new();
        for i in 0..n {
            for j in 0..n {
                let block = Block::new(by_start[i].iter().filter(|p| p.end() == j).cloned().collect());
                if block.paths.is_empty() {
                    continue;
                }
                let span = ideal_span(&pres, &by_start, &block, i, j, n_deg - 1, Some(n_deg)).finish();
                let pivots = span.pivots();
                let mut col_to_basis = HashMap::new();
                for (k, p) in block.paths.iter().enumerate().rev() {
                    if pivots.binary_search(&k).is_err() {
                        col_to_basis.insert(k, basis.len());
                        blocks[i][j].push(basis.len());
                        basis.push(p.clone());
                    }
                }
                for (k, p) in block.paths.iter().enumerate() {
                    let nf = match col_to_basis.get(&k) {
                        Some(&b) => vec![(b, Rational::ONE)],
                        None => {
                            let row = &span.basis()[pivots.binary_search(&k).unwrap()];
                            let mut nf: Vec<(usize, Rational)> = row
                                .iter()
                                .enumerate()
                                .filter(|(c, x)| *c != k && !x.is_zero())
                                .map(|(c, x)| (col_to_basis[&c], -x))
                                .collect();
                            nf.sort_by_key(|(b, _)| *b);
                            nf
                        }
                    };
                    normal.insert(p.clone(), nf);
                }
            }
        }
        let mut local = vec![0; basis.len()];
        for row in &blocks {
            for block in row {
                for (pos, &k) in block.iter().enumerate() {
                    local[k] = pos;
                }
            }
        }
        Ok(BoundAlgebra(Arc::new(Inner {
            pres,
            nilpotency_degree: n_deg,
            basis,
            blocks,
            local,
            normal,
            opposite: OnceLock::new(),
        })))
    }

    pub fn presentation(&self) -> &AlgebraPresentation {
        &self.0.pres
    }

    pub fn quiver(&self) -> &Quiver {
        self.0.pres.quiver()
    }

    pub fn num_vertices(&self) -> usize {
        self.quiver().num_vertices()
    }

    pub fn dim(&self) -> usize {
        self.0.basis.len()
    }

    pub fn nilpotency_degree(&self) -> usize {
        self.0.nilpotency_degree
    }

    pub fn admissibility(&self) -> AdmissibilityReport {
        AdmissibilityReport {
            nilpotency_degree: self.0.nilpotency_degree,
            longest_surviving_path: self.0.basis.iter().map(Path::len).max().unwrap_or(0),
            dimension: self.dim(),
        }
    }

    pub fn basis(&self) -> &[Path] {
        &self.0.basis
    }

    pub fn basis_element(&self, k: usize) -> &Path {
        &self.0.basis[k]
    }

    /// Basis indices of the paths from `i` to `j` (shortest first).
    pub fn block(&self, i: VertexId, j: VertexId) -> &[usize] {
        &self.0.blocks[i][j]
    }

    /// Position of basis element `k` within its block.
    pub fn local_index(&self, k: usize) -> usize {
        self.0.local[k]
    }

    /// Basis of `e_j A e_i`: classes of paths from `i` to `j`.
    pub fn path_basis(&self, i: VertexId, j: VertexId) -> Vec<Path> {
        self.block(i, j).iter().map(|&k| self.0.basis[k].clone()).collect()
    }

    /// Sparse normal form of a path, in basis coordinates.
    pub fn reduce_path(&self, p: &Path) -> Vec<(usize, Rational)> {
        if p.len() >= self.0.nilpotency_degree {
            return Vec::new();
        }
        self.0.normal.get(p).cloned().unwrap_or_default()
    }

    /// Normal form of `u v` (walk `u`, then `v`) for basis indices `u`, `v`.
    pub fn multiply_basis(&self, u: usize, v: usize) -> Vec<(usize, Rational)> {
        match self.0.basis[u].then(&self.0.basis[v]) {
            Some(p) => self.reduce_path(&p),
            None => Vec::new(),
        }
    }

    /// Product of two elements given as sparse basis combinations.
    pub fn multiply(&self, x: &[(usize, Rational)], y: &[(usize, Rational)]) -> Vec<(usize, Rational)> {
        let mut acc: HashMap<usize, Rational> = HashMap::new();
        for (u, cu) in x {
            for (v, cv) in y {
                let s = cu * cv;
                for (w, cw) in self.multiply_basis(*u, *v) {
                    *acc.entry(w).or_insert(Rational::ZERO) += &(&s * &cw);
                }
            }
        }
        let mut out: Vec<(usize, Rational)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        out.sort_by_key(|(k, _)| *k);
        out
    }

    pub fn index_of(&self, p: &Path) -> Option<usize> {
        match self.reduce_path(p).as_slice() {
            [(k, c)] if c.is_one() && self.0.basis[*k] == *p => Some(*k),
            _ => None,
        }
    }

    /// The opposite algebra, with its own path basis.
    pub fn opposite(&self) -> Result<BoundAlgebra> {
        self.0
            .opposite
            .get_or_init(|| {
                // the opposite ideal is admissible with the same degree
                BoundAlgebra::with_cap(self.0.pres.opposite(), DEFAULT_PATH_CAP.max(self.0.nilpotency_degree))
            })
            .clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::parse_presentation;

    fn alg(src: &str) -> BoundAlgebra {
        BoundAlgebra::new(parse_presentation(src).unwrap()).unwrap()
    }

    const CYCLIC: &str = "vertex 1 2 3\narrow alpha 1 2\narrow beta 2 1\narrow gamma 2 3\nrelation alpha*beta*alpha\n";

    /// Brute-force oracle: dimension of the quotient of the span of all paths of
    /// length < bound by the span of truncated multiples, computed with a dense
    /// matrix over all pairs at once.
    fn brute_dim(pres: &AlgebraPresentation, bound: usize) -> usize {
        let q = pres.quiver();
        let by_start = paths_up_to(q, bound - 1, 1_000_000).unwrap();
        let all: Vec<Path> = by_start.into_iter().flatten().collect();
        let idx: HashMap<&Path, usize> = all.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let mut rows = Vec::new();
        for r in pres.relations() {
            for p in &all {
                for s in &all {
                    let mut v = vec![Rational::ZERO; all.len()];
                    let mut hit = false;
                    for (c, t) in r.terms() {
                        if let Some(x) = p.then(t).and_then(|x| x.then(s)) {
                            if let Some(&k) = idx.get(&x) {
                                v[k] += c;
                                hit = true;
                            }
                        }
                    }
                    if hit {
                        rows.push(v);
                    }
                }
            }
        }
        let m = crate::linalg::RatMatrix::from_rows(all.len(), &rows);
        all.len() - m.rank()
    }

    #[test]
    fn cyclic_example_basis() {
        let a = alg(CYCLIC);
        assert_eq!(a.path_basis(0, 0).len(), 2);
        assert_eq!(a.path_basis(0, 0)[1].display(a.quiver()), "alpha*beta");
        let dims: Vec<usize> = (0..3).map(|j| a.path_basis(0, j).len()).collect();
        assert_eq!(dims, vec![2, 1, 1]);
        assert_eq!(a.dim(), 11);
        assert_eq!(a.dim(), brute_dim(a.presentation(), 8));
        let rep = a.admissibility();
        assert_eq!(rep.longest_surviving_path, 3);
        assert_eq!(rep.nilpotency_degree, 4);
        assert!(a.path_basis(2, 0).is_empty());
    }

    #[test]
    fn commutativity_identifies_parallel_paths() {
        let src = "vertex 1 2 3 4\narrow a 1 2\narrow b 2 4\narrow c 1 3\narrow d 3 4\nrelation a*b - c*d\n";
        let a = alg(src);
        assert_eq!(a.path_basis(0, 3).len(), 1);
        let ab = Path::from_arrows(a.quiver(), vec![0, 1]).unwrap();
        let cd = Path::from_arrows(a.quiver(), vec![2, 3]).unwrap();
        assert_eq!(a.reduce_path(&ab), a.reduce_path(&cd));
        assert_eq!(a.dim(), brute_dim(a.presentation(), 4));
    }

    #[test]
    fn inadmissible_inputs() {
        let p = parse_presentation("vertex 1 2\narrow a 1 2\nrelation a\n").unwrap();
        assert!(matches!(validate_admissible(&p, 64), Err(Error::NotAdmissible(_))));
        let p = parse_presentation("vertex 1\narrow x 1 1\n").unwrap();
        assert!(matches!(validate_admissible(&p, 16), Err(Error::NotAdmissible(_))));
        // x^2 - x^3 is not admissible although x^2 vanishes modulo length 3
        let p = parse_presentation("vertex 1\narrow x 1 1\nrelation x*x - x*x*x\n").unwrap();
        assert!(matches!(validate_admissible(&p, 12), Err(Error::NotAdmissible(_))));
        // adding x^3 makes it admissible
        let p = parse_presentation("vertex 1\narrow x 1 1\nrelation x*x - x*x*x\nrelation x*x*x\n").unwrap();
        assert_eq!(validate_admissible(&p, 12).unwrap().nilpotency_degree, 2);
    }

    #[test]
    fn semisimple_and_acyclic() {
        let a = alg("vertex 1 2\n");
        assert_eq!(a.dim(), 2);
        assert_eq!(a.nilpotency_degree(), 1);
        let a = alg("vertex 1 2 3\narrow a 1 2\narrow b 2 3\n");
        assert_eq!(a.dim(), 6);
        assert_eq!(a.nilpotency_degree(), 3);
        let a = alg("vertex 1 2 3\narrow a 1 2\narrow b 2 3\nrelation a*b\n");
        assert_eq!(a.dim(), 5);
        assert_eq!(a.nilpotency_degree(), 2);
    }

    #[test]
    fn multiplication_is_associative() {
        let a = alg(CYCLIC);
        let n = a.dim();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let l = a.multiply(&a.multiply(&[(x, Rational::ONE)], &[(y, Rational::ONE)]), &[(z, Rational::ONE)]);
                    let r = a.multiply(&[(x, Rational::ONE)], &a.multiply(&[(y, Rational::ONE)], &[(z, Rational::ONE)]));
                    assert_eq!(l, r);
                }
            }
        }
    }

    #[test]
    fn opposite_has_same_dimension() {
        let a = alg(CYCLIC);
        let op = a.opposite().unwrap();
        assert_eq!(op.dim(), a.dim());
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(op.block(j, i).len(), a.block(i, j).len());
            }
        }
    }
}
