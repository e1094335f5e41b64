//! Finite-dimensional structure: for a finite acyclic graph with the default
//! CK2 set, the algebra is a direct sum of matrix algebras, one block per
//! sink, of size the number of paths into that sink. This module computes
//! the classification and realizes the isomorphism explicitly by CK2-
//! expanding monomials until their ranges are sinks and mapping them to
//! matrix units indexed by paths.

use crate::error::Error;
use crate::graph::{Graph, Path, VertexId};
use crate::leavitt::{AlgebraTarget, ElementDegree, LeavittElement};
use crate::scalars::{Ring, Scalar};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub sinks: Vec<VertexId>,
    pub counts: Vec<usize>,
    pub dimension: usize,
}

/// Sinks in vertex order with their path counts; defined exactly for
/// acyclic graphs with the default CK2 set.
pub fn classify(g: &Graph) -> Result<Classification, Error> {
    if let Some(c) = g.shortest_cycle() {
        return Err(Error::NotAcyclic { witness: c.render(g) });
    }
    if !g.has_default_ck2() {
        return Err(Error::NonDefaultCk2);
    }
    let sinks = g.sinks();
    let mut counts = Vec::new();
    for v in &sinks {
        counts.push(g.paths_into(*v, None)?.len());
    }
    let dimension = counts.iter().map(|n| n * n).sum();
    Ok(Classification { sinks, counts, dimension })
}

impl Classification {
    /// Render as `M_3(Q) (+) M_2(Q), dim 13`.
    pub fn render(&self, ring: Ring) -> String {
        let blocks: Vec<String> =
            self.counts.iter().map(|n| format!("M_{n}({})", ring.code())).collect();
        format!("{}, dim {}", blocks.join(" (+) "), self.dimension)
    }
}

/// A direct sum of full matrix algebras over the scalar ring, graded by a
/// stored length vector per block: the matrix unit E_{ij} of block b has
/// degree lengths[b][i] - lengths[b][j].
#[derive(Debug, Clone)]
pub struct MatrixAlgebra {
    ring: Ring,
    lengths: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixAlgebraElement {
    ring: Ring,
    blocks: Vec<Vec<Vec<Scalar>>>,
}

impl MatrixAlgebra {
    pub fn new(ring: Ring, lengths: Vec<Vec<i64>>) -> MatrixAlgebra {
        MatrixAlgebra { ring, lengths }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn block_dims(&self) -> Vec<usize> {
        self.lengths.iter().map(|l| l.len()).collect()
    }

    pub fn zero_element(&self) -> MatrixAlgebraElement {
        let blocks = self
            .lengths
            .iter()
            .map(|l| vec![vec![self.ring.zero(); l.len()]; l.len()])
            .collect();
        MatrixAlgebraElement { ring: self.ring, blocks }
    }

    pub fn identity(&self) -> MatrixAlgebraElement {
        let mut m = self.zero_element();
        for (b, l) in self.lengths.iter().enumerate() {
            for i in 0..l.len() {
                m.blocks[b][i][i] = self.ring.one();
            }
        }
        m
    }

    pub fn unit(&self, block: usize, i: usize, j: usize) -> MatrixAlgebraElement {
        let mut m = self.zero_element();
        m.blocks[block][i][j] = self.ring.one();
        m
    }
}

impl MatrixAlgebraElement {
    pub fn blocks(&self) -> &[Vec<Vec<Scalar>>] {
        &self.blocks
    }

    pub fn entry(&self, block: usize, i: usize, j: usize) -> &Scalar {
        &self.blocks[block][i][j]
    }

    pub fn add_at(&mut self, block: usize, i: usize, j: usize, c: &Scalar) {
        self.blocks[block][i][j] = self.blocks[block][i][j].add(c);
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().flatten().flatten().all(|c| c.is_zero())
    }
}

impl AlgebraTarget for MatrixAlgebra {
    type Elem = MatrixAlgebraElement;

    fn zero(&self) -> MatrixAlgebraElement {
        self.zero_element()
    }

    fn add(&self, a: &MatrixAlgebraElement, b: &MatrixAlgebraElement) -> MatrixAlgebraElement {
        let mut out = a.clone();
        for (ob, bb) in out.blocks.iter_mut().zip(&b.blocks) {
            for (orow, brow) in ob.iter_mut().zip(bb) {
                for (oc, bc) in orow.iter_mut().zip(brow) {
                    *oc = oc.add(bc);
                }
            }
        }
        out
    }

    fn mul(&self, a: &MatrixAlgebraElement, b: &MatrixAlgebraElement) -> MatrixAlgebraElement {
        let mut out = self.zero_element();
        for (bi, l) in self.lengths.iter().enumerate() {
            let n = l.len();
            for i in 0..n {
                for k in 0..n {
                    if a.blocks[bi][i][k].is_zero() {
                        continue;
                    }
                    for j in 0..n {
                        let prod = a.blocks[bi][i][k].mul(&b.blocks[bi][k][j]);
                        out.blocks[bi][i][j] = out.blocks[bi][i][j].add(&prod);
                    }
                }
            }
        }
        out
    }

    fn scale(&self, r: &Scalar, a: &MatrixAlgebraElement) -> MatrixAlgebraElement {
        let mut out = a.clone();
        for block in &mut out.blocks {
            for row in block {
                for c in row {
                    *c = r.mul(c);
                }
            }
        }
        out
    }

    fn is_equal(&self, a: &MatrixAlgebraElement, b: &MatrixAlgebraElement) -> bool {
        a == b
    }

    fn degree(&self, a: &MatrixAlgebraElement) -> Option<ElementDegree> {
        let mut seen: Option<i64> = None;
        for (bi, l) in self.lengths.iter().enumerate() {
            for i in 0..l.len() {
                for j in 0..l.len() {
                    if a.blocks[bi][i][j].is_zero() {
                        continue;
                    }
                    let d = l[i] - l[j];
                    match seen {
                        None => seen = Some(d),
                        Some(s) if s == d => {}
                        Some(_) => return Some(ElementDegree::Mixed),
                    }
                }
            }
        }
        Some(match seen {
            None => ElementDegree::Zero,
            Some(d) => ElementDegree::Homogeneous(d),
        })
    }
}

/// The path-indexed matrix model of an acyclic graph's algebra: block b is
/// indexed by the paths into sink b, sorted by (length, edge sequence), and
/// the grading length vector records each path's length.
pub struct SinkBasis {
    pub algebra: MatrixAlgebra,
    pub classification: Classification,
    paths: Vec<Vec<Path>>,
}

impl SinkBasis {
    pub fn new(g: &Graph, ring: Ring) -> Result<SinkBasis, Error> {
        let classification = classify(g)?;
        let mut paths = Vec::new();
        let mut lengths = Vec::new();
        for v in &classification.sinks {
            let into = g.paths_into(*v, None)?;
            lengths.push(into.iter().map(|p| p.len() as i64).collect());
            paths.push(into);
        }
        Ok(SinkBasis { algebra: MatrixAlgebra::new(ring, lengths), classification, paths })
    }

    pub fn block_paths(&self, block: usize) -> &[Path] {
        &self.paths[block]
    }

    fn locate(&self, g: &Graph, p: &Path) -> (usize, usize) {
        let sink = p.range();
        let block = self
            .classification
            .sinks
            .iter()
            .position(|v| *v == sink)
            .expect("path ends at a sink");
        let idx = self.paths[block]
            .binary_search(p)
            .unwrap_or_else(|_| panic!("path into a sink is indexed: {}", p.render(g)));
        (block, idx)
    }

    /// The explicit isomorphism: CK2-expand every monomial until its legs
    /// end at a sink, then map μν* to the matrix unit E_{idx(μ),idx(ν)} in
    /// the block of the common range.
    pub fn apply(&self, g: &Graph, x: &LeavittElement) -> MatrixAlgebraElement {
        assert_eq!(x.ring(), self.algebra.ring(), "ring mismatch");
        let mut out = self.algebra.zero_element();
        for (c, m) in x.terms() {
            self.emit(g, c, m.mu(), m.nu(), &mut out);
        }
        out
    }

    fn emit(&self, g: &Graph, c: &Scalar, mu: &Path, nu: &Path, out: &mut MatrixAlgebraElement) {
        let r = mu.range();
        if g.is_sink(r) {
            let (block, i) = self.locate(g, mu);
            let (_, j) = self.locate(g, nu);
            out.add_at(block, i, j, c);
            return;
        }
        for e in g.out_edges(r) {
            self.emit(g, c, &mu.extended(g, *e), &nu.extended(g, *e), out);
        }
    }
}

/// One-shot form of the isomorphism for a single element.
pub fn explicit_iso(
    g: &Graph,
    ring: Ring,
    x: &LeavittElement,
) -> Result<MatrixAlgebraElement, Error> {
    Ok(SinkBasis::new(g, ring)?.apply(g, x))
}
