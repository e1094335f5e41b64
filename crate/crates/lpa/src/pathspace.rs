//! Boundary paths and the Boolean set algebra of generalized cylinder sets.
//!
//! A boundary path is a finite path ending at a singular vertex or an
//! infinite path. Only eventually periodic infinite paths (lassos) admit a
//! finite description; they are a separating family for every membership
//! question asked here, so infinite paths are represented exclusively as
//! lassos in a canonical form that makes equality syntactic.

use std::collections::BTreeSet;

use crate::error::Error;
use crate::graph::{EdgeId, Graph, Path, VertexId};

/// An element of the boundary path space.
///
/// Canonical form of a lasso: the cycle is primitive (not a proper power),
/// and the prefix is minimal — whenever the prefix's last edge equals the
/// cycle's last edge, that edge is rolled into the cycle by rotating the
/// cycle right and shortening the prefix. With both invariants, two values
/// denote the same infinite path exactly when they are componentwise equal.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BoundaryPath {
    Finite(Path),
    Lasso { prefix: Path, cycle: Path },
}

impl BoundaryPath {
    /// A finite boundary path; its range must be a singular vertex.
    pub fn finite(g: &Graph, path: Path) -> BoundaryPath {
        assert!(
            !g.imposes_ck2(path.range()),
            "finite boundary path must end at a singular vertex"
        );
        BoundaryPath::Finite(path)
    }

    /// The infinite path prefix(cycle)^infinity, canonicalized.
    pub fn lasso(g: &Graph, prefix: Path, cycle: Path) -> BoundaryPath {
        assert!(cycle.len() >= 1, "lasso cycle must be nonempty");
        assert_eq!(cycle.source(), cycle.range(), "lasso cycle must be closed");
        assert_eq!(prefix.range(), cycle.source(), "prefix must reach the cycle");
        let mut pe: Vec<EdgeId> = prefix.edges().to_vec();
        let mut ce: Vec<EdgeId> = cycle.edges().to_vec();
        // Primitive root: the shortest repeating block.
        for d in 1..=ce.len() {
            if ce.len() % d == 0 && ce.iter().enumerate().all(|(i, e)| *e == ce[i % d]) {
                ce.truncate(d);
                break;
            }
        }
        // Roll the prefix tail into the cycle while the last edges agree.
        while pe.last() == ce.last() && !pe.is_empty() {
            let e = ce.pop().expect("nonempty cycle");
            ce.insert(0, e);
            pe.pop();
        }
        let prefix = if pe.is_empty() {
            Path::vertex(prefix.source())
        } else {
            Path::from_edges(g, &pe)
        };
        let cycle = Path::from_edges(g, &ce);
        BoundaryPath::Lasso { prefix, cycle }
    }

    pub fn source(&self) -> VertexId {
        match self {
            BoundaryPath::Finite(p) => p.source(),
            BoundaryPath::Lasso { prefix, .. } => prefix.source(),
        }
    }

    /// Length for finite paths, None for lassos.
    pub fn finite_len(&self) -> Option<usize> {
        match self {
            BoundaryPath::Finite(p) => Some(p.len()),
            BoundaryPath::Lasso { .. } => None,
        }
    }

    /// The i-th edge (0-based), unfolding the cycle as needed.
    pub fn edge_at(&self, i: usize) -> Option<EdgeId> {
        match self {
            BoundaryPath::Finite(p) => p.edges().get(i).copied(),
            BoundaryPath::Lasso { prefix, cycle } => {
                if i < prefix.len() {
                    Some(prefix.edges()[i])
                } else {
                    Some(cycle.edges()[(i - prefix.len()) % cycle.len()])
                }
            }
        }
    }

    /// Drop the first edge. Undefined on a length-zero path.
    pub fn shift(&self, g: &Graph) -> Result<BoundaryPath, Error> {
        match self {
            BoundaryPath::Finite(p) => {
                if p.is_vertex() {
                    Err(Error::ShiftOfVertex)
                } else if p.len() == 1 {
                    Ok(BoundaryPath::Finite(Path::vertex(p.range())))
                } else {
                    Ok(BoundaryPath::Finite(Path::from_edges(g, &p.edges()[1..])))
                }
            }
            BoundaryPath::Lasso { prefix, cycle } => {
                if prefix.is_vertex() {
                    let mut ce = cycle.edges().to_vec();
                    let e = ce.remove(0);
                    ce.push(e);
                    let rotated = Path::from_edges(g, &ce);
                    Ok(BoundaryPath::lasso(g, Path::vertex(rotated.source()), rotated))
                } else {
                    let shorter = if prefix.len() == 1 {
                        Path::vertex(prefix.range())
                    } else {
                        Path::from_edges(g, &prefix.edges()[1..])
                    };
                    Ok(BoundaryPath::lasso(g, shorter, cycle.clone()))
                }
            }
        }
    }

    pub fn shift_n(&self, g: &Graph, n: usize) -> Result<BoundaryPath, Error> {
        let mut cur = self.clone();
        for _ in 0..n {
            cur = cur.shift(g)?;
        }
        Ok(cur)
    }

    /// Whether the finite path p is an initial subpath of this one.
    pub fn has_prefix(&self, p: &Path) -> bool {
        if p.source() != self.source() {
            return false;
        }
        p.edges()
            .iter()
            .enumerate()
            .all(|(i, e)| self.edge_at(i) == Some(*e))
    }

    /// The tail after removing the initial subpath p, or None.
    pub fn strip_prefix(&self, g: &Graph, p: &Path) -> Option<BoundaryPath> {
        if !self.has_prefix(p) {
            return None;
        }
        Some(self.shift_n(g, p.len()).expect("prefix fits"))
    }

    /// The boundary path p followed by this one.
    pub fn prepend(&self, g: &Graph, p: &Path) -> BoundaryPath {
        assert_eq!(p.range(), self.source(), "path does not reach this one");
        match self {
            BoundaryPath::Finite(q) => BoundaryPath::Finite(p.concat(q)),
            BoundaryPath::Lasso { prefix, cycle } => {
                BoundaryPath::lasso(g, p.concat(prefix), cycle.clone())
            }
        }
    }

    /// Finite paths render like paths; lassos as `prefix;(cycle)` with an
    /// empty prefix simply omitted before the semicolon.
    pub fn render(&self, g: &Graph) -> String {
        match self {
            BoundaryPath::Finite(p) => p.render(g),
            BoundaryPath::Lasso { prefix, cycle } => {
                let pre = if prefix.is_vertex() { String::new() } else { prefix.render(g) };
                format!("{pre};({})", cycle.render(g))
            }
        }
    }
}

/// The trace on the boundary path space of a generalized cylinder:
/// boundary paths extending alpha whose next edge avoids the finite set F.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CylinderAtom {
    alpha: Path,
    avoid: BTreeSet<EdgeId>,
}

impl CylinderAtom {
    pub fn new(g: &Graph, alpha: Path, avoid: BTreeSet<EdgeId>) -> CylinderAtom {
        for e in &avoid {
            assert_eq!(g.source(*e), alpha.range(), "avoided edge must leave r(alpha)");
        }
        CylinderAtom { alpha, avoid }
    }

    pub fn alpha(&self) -> &Path {
        &self.alpha
    }

    pub fn avoid(&self) -> &BTreeSet<EdgeId> {
        &self.avoid
    }

    /// The set is empty exactly when r(alpha) imposes (CK2) and every edge
    /// out of it is avoided: any continuation is forbidden, and alpha itself
    /// is not a boundary path.
    pub fn is_empty(&self, g: &Graph) -> bool {
        let v = self.alpha.range();
        g.imposes_ck2(v) && self.avoid.len() == g.out_edges(v).len()
    }

    pub fn contains(&self, x: &BoundaryPath) -> bool {
        if !x.has_prefix(&self.alpha) {
            return false;
        }
        match x.edge_at(self.alpha.len()) {
            None => true,
            Some(e) => !self.avoid.contains(&e),
        }
    }

    /// Intersection of two cylinder atoms: another atom or the empty set.
    /// Either the paths agree (union the avoided sets), or one strictly
    /// extends the other and must dodge the shorter one's avoided set.
    pub fn intersect(&self, g: &Graph, other: &CylinderAtom) -> Option<CylinderAtom> {
        let result = if self.alpha == other.alpha {
            let mut avoid = self.avoid.clone();
            avoid.extend(other.avoid.iter().copied());
            CylinderAtom::new(g, self.alpha.clone(), avoid)
        } else if let Some(delta) = other.alpha.suffix_after(g, &self.alpha) {
            let first = delta.first_edge().expect("strict extension");
            if self.avoid.contains(&first) {
                return None;
            }
            other.clone()
        } else if let Some(delta) = self.alpha.suffix_after(g, &other.alpha) {
            let first = delta.first_edge().expect("strict extension");
            if other.avoid.contains(&first) {
                return None;
            }
            self.clone()
        } else {
            return None;
        };
        if result.is_empty(g) {
            None
        } else {
            Some(result)
        }
    }

    pub fn render(&self, g: &Graph) -> String {
        if self.avoid.is_empty() {
            format!("Z({})", self.alpha.render(g))
        } else {
            let fs: Vec<&str> = self.avoid.iter().map(|e| g.edge_name(*e)).collect();
            format!("Z({}\\{{{}}})", self.alpha.render(g), fs.join(","))
        }
    }
}

/// Every finite boundary path of length <= depth together with every
/// canonical lasso of total description length <= depth, deterministically
/// ordered. This is the separating sample used by the membership oracles.
pub fn sample_boundary_paths(g: &Graph, depth: usize) -> Vec<BoundaryPath> {
    assert!(depth >= 1);
    let mut out: BTreeSet<BoundaryPath> = BTreeSet::new();
    for v in g.vertices() {
        for p in g.paths_from(v, depth) {
            if !g.imposes_ck2(p.range()) {
                out.insert(BoundaryPath::finite(g, p));
            }
        }
        for prefix in g.paths_from(v, depth - 1) {
            for cycle in g.cycles_at(prefix.range(), depth - prefix.len()) {
                out.insert(BoundaryPath::lasso(g, prefix.clone(), cycle));
            }
        }
    }
    out.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(g: &Graph, names: &[&str]) -> Path {
        if names.len() == 1 {
            if let Some(v) = g.vertex_by_name(names[0]) {
                return Path::vertex(v);
            }
        }
        let edges: Vec<EdgeId> =
            names.iter().map(|n| g.edge_by_name(n).expect("edge name")).collect();
        Path::from_edges(g, &edges)
    }

    fn lasso(g: &Graph, prefix: &[&str], cycle: &[&str]) -> BoundaryPath {
        let c = path(g, cycle);
        let p = if prefix.is_empty() { Path::vertex(c.source()) } else { path(g, prefix) };
        BoundaryPath::lasso(g, p, c)
    }

    #[test]
    fn shift_examples() {
        let t = Graph::toeplitz();
        let f = BoundaryPath::finite(&t, path(&t, &["f"]));
        assert_eq!(f.shift(&t).unwrap(), BoundaryPath::finite(&t, path(&t, &["v"])));
        assert_eq!(
            BoundaryPath::finite(&t, path(&t, &["v"])).shift(&t),
            Err(Error::ShiftOfVertex)
        );

        let r2 = Graph::rose(2);
        assert_eq!(lasso(&r2, &[], &["e", "f"]).shift(&r2).unwrap(), lasso(&r2, &[], &["f", "e"]));
        assert_eq!(lasso(&r2, &["f"], &["e"]).shift(&r2).unwrap(), lasso(&r2, &[], &["e"]));
    }

    #[test]
    fn canonical_form_examples() {
        let r2 = Graph::rose(2);
        // Power collapses to the primitive root.
        assert_eq!(lasso(&r2, &[], &["e", "e"]), lasso(&r2, &[], &["e"]));
        // Prefix e with cycle fe rolls into an empty prefix with cycle ef.
        assert_eq!(lasso(&r2, &["e"], &["f", "e"]), lasso(&r2, &[], &["e", "f"]));
        // Expansion check: both spell e f e f e f ...
        let rolled = lasso(&r2, &["e"], &["f", "e"]);
        let e = r2.edge_by_name("e").unwrap();
        let f = r2.edge_by_name("f").unwrap();
        let expect = [e, f, e, f, e, f];
        for (i, ee) in expect.iter().enumerate() {
            assert_eq!(rolled.edge_at(i), Some(*ee));
        }

        let a3 = Graph::line(3);
        assert_ne!(
            BoundaryPath::finite(&a3, path(&a3, &["e1", "e2"])),
            BoundaryPath::finite(&a3, path(&a3, &["e2"]))
        );
    }

    #[test]
    fn shift_of_canonical_is_canonical() {
        let r2 = Graph::rose(2);
        let mut x = lasso(&r2, &["e", "e", "f"], &["e", "f", "f"]);
        for _ in 0..12 {
            x = x.shift(&r2).unwrap();
            if let BoundaryPath::Lasso { prefix, cycle } = &x {
                let again = BoundaryPath::lasso(&r2, prefix.clone(), cycle.clone());
                assert_eq!(again, x);
            }
        }
    }

    #[test]
    fn cylinder_membership() {
        let r2 = Graph::rose(2);
        let e = r2.edge_by_name("e").unwrap();
        let f = r2.edge_by_name("f").unwrap();
        let z_e_f = CylinderAtom::new(&r2, path(&r2, &["e"]), BTreeSet::from([f]));
        let z_e_e = CylinderAtom::new(&r2, path(&r2, &["e"]), BTreeSet::from([e]));
        let e_inf = lasso(&r2, &[], &["e"]);
        assert!(z_e_f.contains(&e_inf));
        assert!(!z_e_e.contains(&e_inf));

        let t = Graph::toeplitz();
        let zv = CylinderAtom::new(&t, path(&t, &["v"]), BTreeSet::new());
        assert!(zv.contains(&BoundaryPath::finite(&t, path(&t, &["v"]))));
    }

    #[test]
    fn cylinder_emptiness() {
        let r2 = Graph::rose(2);
        let e = r2.edge_by_name("e").unwrap();
        let f = r2.edge_by_name("f").unwrap();
        assert!(CylinderAtom::new(&r2, path(&r2, &["v"]), BTreeSet::from([e, f])).is_empty(&r2));
        let t = Graph::toeplitz();
        let te = t.edge_by_name("e").unwrap();
        assert!(!CylinderAtom::new(&t, path(&t, &["v"]), BTreeSet::new()).is_empty(&t));
        assert!(!CylinderAtom::new(&t, path(&t, &["u"]), BTreeSet::from([te])).is_empty(&t));
    }

    #[test]
    fn cylinder_intersection_cases() {
        let r2 = Graph::rose(2);
        let e = r2.edge_by_name("e").unwrap();
        let f = r2.edge_by_name("f").unwrap();
        let z_e = CylinderAtom::new(&r2, path(&r2, &["e"]), BTreeSet::new());
        let z_ef = CylinderAtom::new(&r2, path(&r2, &["e", "f"]), BTreeSet::new());
        assert_eq!(z_e.intersect(&r2, &z_ef), Some(z_ef.clone()));

        let z_e_avoid_f = CylinderAtom::new(&r2, path(&r2, &["e"]), BTreeSet::from([f]));
        assert_eq!(z_e_avoid_f.intersect(&r2, &z_ef), None);

        let z_e_avoid_e = CylinderAtom::new(&r2, path(&r2, &["e"]), BTreeSet::from([e]));
        let both = z_e_avoid_f.intersect(&r2, &z_e_avoid_e);
        // Same base path: avoided sets union, which here empties the set.
        assert_eq!(both, None);

        let z_v_e = CylinderAtom::new(&r2, path(&r2, &["v"]), BTreeSet::from([e]));
        let z_v_f = CylinderAtom::new(&r2, path(&r2, &["v"]), BTreeSet::from([f]));
        assert_eq!(z_v_e.intersect(&r2, &z_v_e), Some(z_v_e.clone()));
        assert_eq!(z_v_e.intersect(&r2, &z_v_f), None);
    }

    #[test]
    fn samples_match_enumeration() {
        let r1 = Graph::rose(1);
        assert_eq!(sample_boundary_paths(&r1, 2), vec![lasso(&r1, &[], &["e"])]);

        let t = Graph::toeplitz();
        assert_eq!(
            sample_boundary_paths(&t, 1),
            vec![
                BoundaryPath::finite(&t, path(&t, &["v"])),
                BoundaryPath::finite(&t, path(&t, &["f"])),
                lasso(&t, &[], &["e"]),
            ]
        );

        let a3 = Graph::line(3);
        let got = sample_boundary_paths(&a3, 3);
        assert_eq!(
            got,
            vec![
                BoundaryPath::finite(&a3, path(&a3, &["v3"])),
                BoundaryPath::finite(&a3, path(&a3, &["e2"])),
                BoundaryPath::finite(&a3, path(&a3, &["e1", "e2"])),
            ]
        );
    }

    #[test]
    fn intersection_agrees_with_membership_on_samples() {
        for g in [Graph::rose(2), Graph::toeplitz()] {
            let xs = sample_boundary_paths(&g, 4);
            let mut atoms = Vec::new();
            for v in g.vertices() {
                for alpha in g.paths_from(v, 2) {
                    let candidates = g.out_edges(alpha.range()).to_vec();
                    let mut subsets = vec![BTreeSet::new()];
                    for e in candidates {
                        let with_e: Vec<BTreeSet<EdgeId>> = subsets
                            .iter()
                            .map(|s| {
                                let mut t = s.clone();
                                t.insert(e);
                                t
                            })
                            .collect();
                        subsets.extend(with_e);
                    }
                    for avoid in subsets {
                        atoms.push(CylinderAtom::new(&g, alpha.clone(), avoid));
                    }
                }
            }
            for a in &atoms {
                for b in &atoms {
                    let cap = a.intersect(&g, b);
                    for x in &xs {
                        let lhs = cap.as_ref().map_or(false, |c| c.contains(x));
                        assert_eq!(lhs, a.contains(x) && b.contains(x));
                    }
                }
            }
        }
    }

    #[test]
    fn emptiness_agrees_with_sampling() {
        let cohn = Graph::build(&["v"], &[("e", "v", "v"), ("f", "v", "v")], &["v"]).unwrap();
        for g in [Graph::rose(2), Graph::toeplitz(), Graph::line(3), cohn] {
            for v in g.vertices() {
                for alpha in g.paths_from(v, 2) {
                    let full: BTreeSet<EdgeId> =
                        g.out_edges(alpha.range()).iter().copied().collect();
                    for avoid in [BTreeSet::new(), full] {
                        let z = CylinderAtom::new(&g, alpha.clone(), avoid);
                        let depth = alpha.len() + g.vertex_count() + 1;
                        let witness =
                            sample_boundary_paths(&g, depth).iter().any(|x| z.contains(x));
                        assert_eq!(z.is_empty(&g), !witness, "{}", z.render(&g));
                    }
                }
            }
        }
    }
}
