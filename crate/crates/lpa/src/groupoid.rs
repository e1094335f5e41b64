//! The boundary path groupoid of a graph: tail equivalence, isotropy, and
//! the inverse semigroup of compact open bisection atoms Z(alpha, beta, F).
//!
//! An element (x, k, y) consists of two boundary paths that agree after
//! finitely many shifts, with lag k. The atoms Z(alpha, beta, F) are the
//! basic compact open bisections; they are closed under product, inverse,
//! and intersection, and differences decompose into finitely many disjoint
//! atoms, so every set computation stays inside this finite vocabulary.

use std::collections::BTreeSet;

use crate::graph::{EdgeId, Graph, Path};
use crate::pathspace::{sample_boundary_paths, BoundaryPath, CylinderAtom};

/// The set of lags realizing a tail equivalence: `base + m * period` over
/// all integers m, with period 0 denoting a unique lag.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LagSet {
    pub base: i64,
    pub period: u64,
}

impl LagSet {
    pub fn contains(&self, k: i64) -> bool {
        if self.period == 0 {
            k == self.base
        } else {
            (k - self.base).rem_euclid(self.period as i64) == 0
        }
    }

    /// A deterministic spread of members around the base, for sampling.
    pub fn members(&self, spread: i64) -> Vec<i64> {
        if self.period == 0 {
            vec![self.base]
        } else {
            (-spread..=spread).map(|m| self.base + m * self.period as i64).collect()
        }
    }
}

/// Decide tail equivalence and compute all lags.
///
/// Two finite paths are tail equivalent exactly when they end at the same
/// vertex, with the unique lag |x| - |y|. Two lassos are tail equivalent
/// exactly when their primitive cycles are rotations of one another, and then
/// the lags form a coset of the subgroup generated by the cycle length. A
/// finite path is never tail equivalent to a lasso.
pub fn tail_equivalent(x: &BoundaryPath, y: &BoundaryPath) -> Option<LagSet> {
    match (x, y) {
        (BoundaryPath::Finite(p), BoundaryPath::Finite(q)) => {
            if p.range() == q.range() {
                Some(LagSet { base: p.len() as i64 - q.len() as i64, period: 0 })
            } else {
                None
            }
        }
        (
            BoundaryPath::Lasso { prefix: px, cycle: cx },
            BoundaryPath::Lasso { prefix: py, cycle: cy },
        ) => {
            if cx.len() != cy.len() {
                return None;
            }
            let l = cx.len();
            let rot = (0..l).find(|j| {
                (0..l).all(|i| cy.edges()[(i + j) % l] == cx.edges()[i])
            })?;
            // shifting x by |px| and y by |py| + rot exposes the same cycle
            let base = px.len() as i64 - py.len() as i64 - rot as i64;
            Some(LagSet { base, period: l as u64 })
        }
        _ => None,
    }
}

/// A groupoid element: boundary paths x and y, tail equivalent with lag k.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupoidElement {
    x: BoundaryPath,
    k: i64,
    y: BoundaryPath,
}

impl GroupoidElement {
    pub fn try_new(x: BoundaryPath, k: i64, y: BoundaryPath) -> Option<GroupoidElement> {
        if tail_equivalent(&x, &y)?.contains(k) {
            Some(GroupoidElement { x, k, y })
        } else {
            None
        }
    }

    pub fn new(x: BoundaryPath, k: i64, y: BoundaryPath) -> GroupoidElement {
        GroupoidElement::try_new(x, k, y).expect("paths are not tail equivalent with this lag")
    }

    pub fn x(&self) -> &BoundaryPath {
        &self.x
    }

    pub fn lag(&self) -> i64 {
        self.k
    }

    pub fn y(&self) -> &BoundaryPath {
        &self.y
    }

    pub fn inverse(&self) -> GroupoidElement {
        GroupoidElement { x: self.y.clone(), k: -self.k, y: self.x.clone() }
    }

    /// Composition (x, k, y)(y, l, z) = (x, k + l, z); panics when the inner
    /// paths disagree.
    pub fn compose(&self, other: &GroupoidElement) -> GroupoidElement {
        assert_eq!(self.y, other.x, "elements are not composable");
        GroupoidElement { x: self.x.clone(), k: self.k + other.k, y: other.y.clone() }
    }

    pub fn is_unit(&self) -> bool {
        self.k == 0 && self.x == self.y
    }

    /// In the isotropy subgroupoid but not a unit: x = y with nonzero lag.
    pub fn is_nonunit_isotropy(&self) -> bool {
        self.k != 0 && self.x == self.y
    }
}

/// Generator of the isotropy group at p: (p, c, p) with c the primitive
/// cycle length when p is eventually periodic, and nothing (the trivial
/// group) when p is a finite path.
pub fn isotropy_generator(p: &BoundaryPath) -> Option<GroupoidElement> {
    match p {
        BoundaryPath::Finite(_) => None,
        BoundaryPath::Lasso { cycle, .. } => Some(GroupoidElement {
            x: p.clone(),
            k: cycle.len() as i64,
            y: p.clone(),
        }),
    }
}

/// The compact open bisection Z(alpha, beta, F): all (alpha z, k, beta z)
/// with k = |alpha| - |beta| and z a boundary path from r(alpha) whose first
/// edge avoids F. Constructors return None for the empty set, so a value of
/// this type is always a nonempty bisection.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BisectionAtom {
    alpha: Path,
    beta: Path,
    avoid: BTreeSet<EdgeId>,
}

impl BisectionAtom {
    pub fn new(
        g: &Graph,
        alpha: Path,
        beta: Path,
        avoid: BTreeSet<EdgeId>,
    ) -> Option<BisectionAtom> {
        assert_eq!(alpha.range(), beta.range(), "legs must share their range");
        for e in &avoid {
            assert_eq!(g.source(*e), alpha.range(), "avoided edge must leave the range");
        }
        let atom = BisectionAtom { alpha, beta, avoid };
        if atom.domain(g).is_empty(g) {
            None
        } else {
            Some(atom)
        }
    }

    /// The unit atom Z(v, v, {}) over a vertex; always nonempty.
    pub fn vertex(g: &Graph, v: crate::graph::VertexId) -> BisectionAtom {
        BisectionAtom::new(g, Path::vertex(v), Path::vertex(v), BTreeSet::new())
            .expect("vertex atom is never empty")
    }

    pub fn alpha(&self) -> &Path {
        &self.alpha
    }

    pub fn beta(&self) -> &Path {
        &self.beta
    }

    pub fn avoid(&self) -> &BTreeSet<EdgeId> {
        &self.avoid
    }

    pub fn degree(&self) -> i64 {
        self.alpha.len() as i64 - self.beta.len() as i64
    }

    /// Subset of the unit space: both legs equal (lag zero, x = y).
    pub fn is_unit_atom(&self) -> bool {
        self.alpha == self.beta
    }

    /// Image of the domain map: the cylinder Z(beta, F).
    pub fn domain(&self, g: &Graph) -> CylinderAtom {
        CylinderAtom::new(g, self.beta.clone(), self.avoid.clone())
    }

    /// Image of the codomain map: the cylinder Z(alpha, F).
    pub fn codomain(&self, g: &Graph) -> CylinderAtom {
        CylinderAtom::new(g, self.alpha.clone(), self.avoid.clone())
    }

    pub fn contains(&self, g: &Graph, elem: &GroupoidElement) -> bool {
        if elem.k != self.degree() {
            return false;
        }
        let tx = match elem.x.strip_prefix(g, &self.alpha) {
            Some(t) => t,
            None => return false,
        };
        let ty = match elem.y.strip_prefix(g, &self.beta) {
            Some(t) => t,
            None => return false,
        };
        if tx != ty {
            return false;
        }
        match tx.edge_at(0) {
            None => true,
            Some(e) => !self.avoid.contains(&e),
        }
    }

    /// The unique element with the given codomain point, if any: for
    /// x = alpha z in the codomain cylinder, the element (x, k, beta z).
    pub fn element_with_codomain(&self, g: &Graph, x: &BoundaryPath) -> Option<GroupoidElement> {
        if !self.codomain(g).contains(x) {
            return None;
        }
        let tail = self.strip(g, x, &self.alpha);
        let y = tail.prepend(g, &self.beta);
        Some(GroupoidElement::new(x.clone(), self.degree(), y))
    }

    /// The unique element with the given domain point, if any.
    pub fn element_with_domain(&self, g: &Graph, y: &BoundaryPath) -> Option<GroupoidElement> {
        if !self.domain(g).contains(y) {
            return None;
        }
        let tail = self.strip(g, y, &self.beta);
        let x = tail.prepend(g, &self.alpha);
        Some(GroupoidElement::new(x, self.degree(), y.clone()))
    }

    fn strip(&self, g: &Graph, x: &BoundaryPath, leg: &Path) -> BoundaryPath {
        x.strip_prefix(g, leg).expect("cylinder membership implies the prefix")
    }

    /// Pointwise set product. The result is another atom or empty:
    /// composability forces one middle leg to extend the other, and the
    /// extension must dodge the shorter side's avoided set.
    pub fn mul(&self, g: &Graph, other: &BisectionAtom) -> Option<BisectionAtom> {
        if let Some(kappa) = self.beta.suffix_after(g, &other.alpha) {
            if kappa.is_vertex() {
                // beta = gamma: union the avoided sets at the common range
                let mut avoid = self.avoid.clone();
                avoid.extend(other.avoid.iter().copied());
                return BisectionAtom::new(g, self.alpha.clone(), other.beta.clone(), avoid);
            }
            // beta = gamma kappa: descend the right factor along kappa
            let first = kappa.first_edge().expect("nonempty suffix");
            if other.avoid.contains(&first) {
                return None;
            }
            return BisectionAtom::new(
                g,
                self.alpha.clone(),
                other.beta.concat(&kappa),
                self.avoid.clone(),
            );
        }
        if let Some(kappa) = other.alpha.suffix_after(g, &self.beta) {
            // gamma = beta kappa: descend the left factor along kappa
            let first = kappa.first_edge().expect("nonempty suffix");
            if self.avoid.contains(&first) {
                return None;
            }
            return BisectionAtom::new(
                g,
                self.alpha.concat(&kappa),
                other.beta.clone(),
                other.avoid.clone(),
            );
        }
        None
    }

    pub fn inverse(&self) -> BisectionAtom {
        BisectionAtom {
            alpha: self.beta.clone(),
            beta: self.alpha.clone(),
            avoid: self.avoid.clone(),
        }
    }

    /// Set intersection: nonempty only when one atom refines the other along
    /// a common extension of both legs.
    pub fn intersect(&self, g: &Graph, other: &BisectionAtom) -> Option<BisectionAtom> {
        if let (Some(ka), Some(kb)) = (
            other.alpha.suffix_after(g, &self.alpha),
            other.beta.suffix_after(g, &self.beta),
        ) {
            if ka == kb {
                if ka.is_vertex() {
                    let mut avoid = self.avoid.clone();
                    avoid.extend(other.avoid.iter().copied());
                    return BisectionAtom::new(g, self.alpha.clone(), self.beta.clone(), avoid);
                }
                let first = ka.first_edge().expect("nonempty suffix");
                if !self.avoid.contains(&first) {
                    return Some(other.clone());
                }
                return None;
            }
        }
        if let (Some(ka), Some(kb)) = (
            self.alpha.suffix_after(g, &other.alpha),
            self.beta.suffix_after(g, &other.beta),
        ) {
            if ka == kb && !ka.is_vertex() {
                let first = ka.first_edge().expect("nonempty suffix");
                if !other.avoid.contains(&first) {
                    return Some(self.clone());
                }
            }
        }
        None
    }

    /// Decompose the set difference self \ other into pairwise disjoint
    /// nonempty atoms, telescoping along the refining extension. Output is
    /// sorted by (|alpha|, alpha, beta, F).
    pub fn difference(&self, g: &Graph, other: &BisectionAtom) -> Vec<BisectionAtom> {
        let cap = match self.intersect(g, other) {
            None => return vec![self.clone()],
            Some(c) => c,
        };
        let mut out = Vec::new();
        if cap.alpha == self.alpha {
            // cap = Z(alpha, beta, G) with G containing F: what is removed is
            // exactly the continuations through G \ F.
            for e in cap.avoid.difference(&self.avoid) {
                out.extend(BisectionAtom::new(
                    g,
                    self.alpha.extended(g, *e),
                    self.beta.extended(g, *e),
                    BTreeSet::new(),
                ));
            }
        } else {
            // cap = Z(alpha kappa, beta kappa, H): peel off the complement
            // one kappa-edge at a time, then the H continuations at the end.
            let kappa = cap.alpha.suffix_after(g, &self.alpha).expect("cap refines self");
            let first = kappa.first_edge().expect("strict refinement");
            let mut avoid = self.avoid.clone();
            avoid.insert(first);
            out.extend(BisectionAtom::new(g, self.alpha.clone(), self.beta.clone(), avoid));
            for j in 1..kappa.len() {
                let stem = kappa.truncated(g, j);
                let next = kappa.edges()[j];
                out.extend(BisectionAtom::new(
                    g,
                    self.alpha.concat(&stem),
                    self.beta.concat(&stem),
                    BTreeSet::from([next]),
                ));
            }
            for e in &cap.avoid {
                out.extend(BisectionAtom::new(
                    g,
                    cap.alpha.extended(g, *e),
                    cap.beta.extended(g, *e),
                    BTreeSet::new(),
                ));
            }
        }
        out.sort();
        out
    }

    pub fn render(&self, g: &Graph) -> String {
        let base = format!("Z({}|{}", self.alpha.render(g), self.beta.render(g));
        if self.avoid.is_empty() {
            format!("{base})")
        } else {
            let fs: Vec<&str> = self.avoid.iter().map(|e| g.edge_name(*e)).collect();
            format!("{base}\\{{{}}})", fs.join(","))
        }
    }
}

/// None when the groupoid is effective (every cycle has an exit); otherwise
/// the witness atom Z(cc, c, {}) over an exitless cycle c, a nonempty open
/// subset of the isotropy away from the unit space.
pub fn effectiveness_witness(g: &Graph) -> Option<BisectionAtom> {
    let c = g.exitless_cycle()?;
    Some(
        BisectionAtom::new(g, c.concat(&c), c, BTreeSet::new())
            .expect("witness over a cycle is nonempty"),
    )
}

/// Deterministic list of groupoid elements: all tail-equivalent pairs of
/// sampled boundary paths, each with a spread of lags around the base lag.
pub fn sample_groupoid_elements(g: &Graph, depth: usize, spread: i64) -> Vec<GroupoidElement> {
    let xs = sample_boundary_paths(g, depth);
    let mut out = Vec::new();
    for x in &xs {
        for y in &xs {
            if let Some(lags) = tail_equivalent(x, y) {
                for k in lags.members(spread) {
                    out.push(GroupoidElement::new(x.clone(), k, y.clone()));
                }
            }
        }
    }
    out
}
