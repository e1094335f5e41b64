//! The Steinberg algebra of the boundary path groupoid: R-linear
//! combinations of indicator functions of bisection atoms, with pointwise
//! module structure, convolution, involution, the lag grading, local units,
//! and the homogeneous reduction used by the graded uniqueness argument.
//!
//! Elements are kept normalized: atoms pairwise disjoint, nonempty, with
//! nonzero coefficients, sorted by (degree, |alpha|, alpha, beta, F). A
//! normalized element is zero exactly when its term list is empty; that is
//! the complete zero test. Normalized representations of the same function
//! are not unique (1_{Z(v|v)} versus 1_{Z(e|e)} + 1_{Z(f|f)}), so semantic
//! equality is decided by subtracting and testing zero.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use crate::error::Error;
use crate::graph::{Graph, VertexId};
use crate::groupoid::{BisectionAtom, GroupoidElement};
use crate::scalars::{Ring, Scalar};

#[derive(Debug, Clone)]
pub struct SteinbergElement {
    ring: Ring,
    terms: Vec<(Scalar, BisectionAtom)>,
}

fn term_cmp(a: &(Scalar, BisectionAtom), b: &(Scalar, BisectionAtom)) -> Ordering {
    (a.1.degree(), &a.1).cmp(&(b.1.degree(), &b.1))
}

/// Insert a coefficient-atom pair into a pairwise-disjoint accumulator,
/// refining overlaps. Each recursive insertion intersects strictly fewer
/// accumulator members (the pieces of `atom` outside the first overlap are
/// disjoint from everything newly added), so this terminates.
fn insert_term(
    g: &Graph,
    acc: &mut Vec<(Scalar, BisectionAtom)>,
    coeff: Scalar,
    atom: BisectionAtom,
) {
    if coeff.is_zero() {
        return;
    }
    let hit = acc.iter().position(|(_, b)| b.intersect(g, &atom).is_some());
    let (bcoeff, b) = match hit {
        None => {
            acc.push((coeff, atom));
            return;
        }
        Some(i) => acc.remove(i),
    };
    let cap = b.intersect(g, &atom).expect("position() found an overlap");
    for piece in b.difference(g, &atom) {
        acc.push((bcoeff.clone(), piece));
    }
    let merged = bcoeff.add(&coeff);
    if !merged.is_zero() {
        acc.push((merged, cap.clone()));
    }
    for piece in atom.difference(g, &b) {
        insert_term(g, acc, coeff.clone(), piece);
    }
}

impl SteinbergElement {
    pub fn zero(ring: Ring) -> SteinbergElement {
        SteinbergElement { ring, terms: Vec::new() }
    }

    pub fn indicator(ring: Ring, atom: BisectionAtom) -> SteinbergElement {
        SteinbergElement { ring, terms: vec![(ring.one(), atom)] }
    }

    pub fn from_terms(
        g: &Graph,
        ring: Ring,
        terms: Vec<(Scalar, BisectionAtom)>,
    ) -> SteinbergElement {
        let mut acc = Vec::new();
        for (c, a) in terms {
            assert_eq!(c.ring(), ring, "ring mismatch");
            insert_term(g, &mut acc, c, a);
        }
        acc.sort_by(term_cmp);
        SteinbergElement { ring, terms: acc }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn terms(&self) -> &[(Scalar, BisectionAtom)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The longest leg appearing in any term; 0 for the zero element.
    pub fn max_atom_length(&self) -> usize {
        self.terms
            .iter()
            .map(|(_, a)| a.alpha().len().max(a.beta().len()))
            .max()
            .unwrap_or(0)
    }

    pub fn evaluate(&self, g: &Graph, elem: &GroupoidElement) -> Scalar {
        for (c, a) in &self.terms {
            if a.contains(g, elem) {
                return c.clone();
            }
        }
        self.ring.zero()
    }

    fn check_ring(&self, other: &SteinbergElement) {
        assert_eq!(self.ring, other.ring, "ring mismatch");
    }

    pub fn add(&self, g: &Graph, other: &SteinbergElement) -> SteinbergElement {
        self.check_ring(other);
        let mut acc = self.terms.clone();
        for (c, a) in &other.terms {
            insert_term(g, &mut acc, c.clone(), a.clone());
        }
        acc.sort_by(term_cmp);
        SteinbergElement { ring: self.ring, terms: acc }
    }

    pub fn scale(&self, r: &Scalar) -> SteinbergElement {
        assert_eq!(r.ring(), self.ring, "ring mismatch");
        let terms = self
            .terms
            .iter()
            .map(|(c, a)| (r.mul(c), a.clone()))
            .filter(|(c, _)| !c.is_zero())
            .collect();
        SteinbergElement { ring: self.ring, terms }
    }

    pub fn neg(&self) -> SteinbergElement {
        let terms = self.terms.iter().map(|(c, a)| (c.neg(), a.clone())).collect();
        SteinbergElement { ring: self.ring, terms }
    }

    pub fn sub(&self, g: &Graph, other: &SteinbergElement) -> SteinbergElement {
        self.add(g, &other.neg())
    }

    /// Equality as functions on the groupoid: the difference normalizes to
    /// the empty term list.
    pub fn eq_element(&self, g: &Graph, other: &SteinbergElement) -> bool {
        self.sub(g, other).is_zero()
    }

    /// Convolution: the bilinear extension of the pointwise set product of
    /// bisections, 1_A * 1_B = 1_{AB}.
    pub fn convolve(&self, g: &Graph, other: &SteinbergElement) -> SteinbergElement {
        self.check_ring(other);
        let mut acc = Vec::new();
        for (c, a) in &self.terms {
            for (d, b) in &other.terms {
                if let Some(p) = a.mul(g, b) {
                    insert_term(g, &mut acc, c.mul(d), p);
                }
            }
        }
        acc.sort_by(term_cmp);
        SteinbergElement { ring: self.ring, terms: acc }
    }

    /// The involution f ↦ conj(f ∘ inverse); with the identity involution on
    /// the coefficient ring this swaps each atom's legs.
    pub fn involution(&self) -> SteinbergElement {
        let mut terms: Vec<(Scalar, BisectionAtom)> = self
            .terms
            .iter()
            .map(|(c, a)| (c.conjugate(), a.inverse()))
            .collect();
        terms.sort_by(term_cmp);
        SteinbergElement { ring: self.ring, terms }
    }

    /// Restriction to the terms of lag degree n; normalization is preserved
    /// because a subset of pairwise-disjoint terms is pairwise disjoint.
    pub fn degree_component(&self, n: i64) -> SteinbergElement {
        let terms = self
            .terms
            .iter()
            .filter(|(_, a)| a.degree() == n)
            .cloned()
            .collect();
        SteinbergElement { ring: self.ring, terms }
    }

    /// The sorted set of degrees carrying support; empty for zero.
    pub fn degrees(&self) -> Vec<i64> {
        let set: BTreeSet<i64> = self.terms.iter().map(|(_, a)| a.degree()).collect();
        set.into_iter().collect()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.degrees().len() <= 1
    }

    /// Σ_{v ∈ V} 1_{Z(v|v)}: an idempotent acting as the identity on every
    /// element supported over the chosen vertices.
    pub fn local_unit(g: &Graph, ring: Ring, vs: &[VertexId]) -> Result<SteinbergElement, Error> {
        if vs.is_empty() {
            return Err(Error::EmptyVertexSet);
        }
        let set: BTreeSet<VertexId> = vs.iter().copied().collect();
        let mut terms: Vec<(Scalar, BisectionAtom)> =
            set.into_iter().map(|v| (ring.one(), BisectionAtom::vertex(g, v))).collect();
        terms.sort_by(term_cmp);
        Ok(SteinbergElement { ring, terms })
    }

    /// Reduce a nonzero homogeneous h of degree n to a scalar: returns
    /// (C, V, r) with C of degree -n, V a unit-space atom, r nonzero, and
    /// 1_C * h * 1_V = r·1_V exactly.
    ///
    /// Take the first term (r₁, Z(α₁,β₁,F₁)), set B = Z(β₁,α₁,F₁), and pass
    /// to f = 1_B * h, homogeneous of degree 0. The products B·Dᵢ of B with
    /// the disjoint terms of h stay disjoint, so f keeps the unit-space term
    /// (r₁, Z(β₁,β₁,F₁)) intact, and no other term of f lies in the unit
    /// space. Starting from V = Z(β₁,β₁,F₁), shrink V until it misses one
    /// leg cylinder of every other term (legs of a degree-0 non-unit term
    /// have equal length, so their cylinders are disjoint and V can never
    /// contain both); then 1_V * f * 1_V = r₁·1_V, and C = V·B.
    pub fn reduce_homogeneous(
        &self,
        g: &Graph,
    ) -> Result<(BisectionAtom, BisectionAtom, Scalar), Error> {
        if self.is_zero() {
            return Err(Error::ZeroElement);
        }
        if self.degrees().len() != 1 {
            return Err(Error::NotHomogeneous);
        }
        let (r1, d1) = &self.terms[0];
        let b = d1.inverse();
        let f = SteinbergElement::indicator(self.ring, b.clone()).convolve(g, self);
        let unit_atom = b
            .mul(g, d1)
            .expect("B·D₁ = Z(beta1, beta1, F1) is nonempty");
        let mut v = unit_atom.clone();
        for (_, t) in &f.terms {
            if *t == unit_atom {
                continue;
            }
            assert!(
                t.alpha() != t.beta(),
                "no other term of 1_B*h meets the unit space"
            );
            let zd = BisectionAtom::new(g, t.beta().clone(), t.beta().clone(), BTreeSet::new())
                .expect("cylinder over a path is nonempty");
            if v.intersect(g, &zd).is_none() {
                continue;
            }
            match v.difference(g, &zd).into_iter().next() {
                Some(piece) => v = piece,
                // V lies inside Z(beta-leg); the alpha-leg cylinder is then
                // automatically disjoint from V, so the term still dies.
                None => {}
            }
        }
        let c = v.mul(g, &b).expect("V ⊆ codomain of B, so V·B is nonempty");
        Ok((c, v, r1.clone()))
    }

    /// Render as `r*Z(alpha|beta\{F})` terms joined by ` + `, or `0`.
    pub fn render(&self, g: &Graph) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(c, a)| format!("{}*{}", c, a.render(g)))
            .collect();
        parts.join(" + ")
    }
}

/// The defining convolution formula, computed by brute force: the sum of
/// f(ζ)·h(η) over all decompositions elem = ζ·η with η in the support of h.
/// Each support atom of h contributes at most one η (the element with the
/// same domain as elem), because atoms are bisections.
pub fn convolution_sum_at(
    g: &Graph,
    f: &SteinbergElement,
    h: &SteinbergElement,
    elem: &GroupoidElement,
) -> Scalar {
    let mut total = f.ring().zero();
    for (hc, b) in h.terms() {
        if let Some(eta) = b.element_with_domain(g, elem.y()) {
            let zeta = GroupoidElement::new(
                elem.x().clone(),
                elem.lag() - eta.lag(),
                eta.x().clone(),
            );
            total = total.add(&f.evaluate(g, &zeta).mul(hc));
        }
    }
    total
}
