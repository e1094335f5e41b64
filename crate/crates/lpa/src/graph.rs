//! Finite directed graphs E = (E0, E1, r, s) with a designated CK2 vertex
//! set, finite paths, and the graph predicates the structure theorems key on.
//!
//! The CK2 set is the set of vertices at which the relation v = sum ee* is
//! imposed. By default it is every emitting vertex; removing an emitting
//! vertex from it (`singular` directive) models a singular vertex whose edge
//! set is only partially materialized, which yields the relative Cohn model.
//! Sinks are never in the CK2 set.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use crate::error::Error;

/// Index of a vertex in its graph's declared vertex order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub usize);

/// Index of an edge in its graph's declared edge order. That order is also
/// the total order used everywhere output must be deterministic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub usize);

#[derive(Debug, Clone)]
pub struct Graph {
    vertex_names: Vec<String>,
    edge_names: Vec<String>,
    sources: Vec<VertexId>,
    ranges: Vec<VertexId>,
    ck2: BTreeSet<VertexId>,
    out: Vec<Vec<EdgeId>>,
    inc: Vec<Vec<EdgeId>>,
}

impl Graph {
    /// Build a graph from vertex names, `(edge, source, range)` triples, and
    /// the list of vertices declared singular (excluded from the CK2 set).
    pub fn build(
        vertices: &[&str],
        edges: &[(&str, &str, &str)],
        singular: &[&str],
    ) -> Result<Graph, Error> {
        let mut g = Graph {
            vertex_names: Vec::new(),
            edge_names: Vec::new(),
            sources: Vec::new(),
            ranges: Vec::new(),
            ck2: BTreeSet::new(),
            out: Vec::new(),
            inc: Vec::new(),
        };
        for name in vertices {
            g.add_vertex(name)?;
        }
        for (name, src, rng) in edges {
            g.add_edge(name, src, rng)?;
        }
        let mut declared = BTreeSet::new();
        for name in singular {
            let v = g
                .vertex_by_name(name)
                .ok_or_else(|| Error::parse(format!("unknown vertex '{name}'")))?;
            declared.insert(v);
        }
        g.ck2 = g
            .vertices()
            .filter(|v| !g.out[v.0].is_empty() && !declared.contains(v))
            .collect();
        Ok(g)
    }

    fn check_fresh_name(&self, name: &str) -> Result<(), Error> {
        if name.is_empty() {
            return Err(Error::parse("empty name"));
        }
        if self.vertex_names.iter().any(|n| n == name) || self.edge_names.iter().any(|n| n == name)
        {
            return Err(Error::parse(format!("duplicate name '{name}'")));
        }
        Ok(())
    }

    fn add_vertex(&mut self, name: &str) -> Result<VertexId, Error> {
        self.check_fresh_name(name)?;
        self.vertex_names.push(name.to_string());
        self.out.push(Vec::new());
        self.inc.push(Vec::new());
        Ok(VertexId(self.vertex_names.len() - 1))
    }

    fn add_edge(&mut self, name: &str, src: &str, rng: &str) -> Result<EdgeId, Error> {
        self.check_fresh_name(name)?;
        let s = self
            .vertex_by_name(src)
            .ok_or_else(|| Error::parse(format!("unknown vertex '{src}'")))?;
        let r = self
            .vertex_by_name(rng)
            .ok_or_else(|| Error::parse(format!("unknown vertex '{rng}'")))?;
        let e = EdgeId(self.edge_names.len());
        self.edge_names.push(name.to_string());
        self.sources.push(s);
        self.ranges.push(r);
        self.out[s.0].push(e);
        self.inc[r.0].push(e);
        Ok(e)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_names.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertex_names.len()).map(VertexId)
    }

    pub fn edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.edge_names.len()).map(EdgeId)
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertex_names[v.0]
    }

    pub fn edge_name(&self, e: EdgeId) -> &str {
        &self.edge_names[e.0]
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<VertexId> {
        self.vertex_names.iter().position(|n| n == name).map(VertexId)
    }

    pub fn edge_by_name(&self, name: &str) -> Option<EdgeId> {
        self.edge_names.iter().position(|n| n == name).map(EdgeId)
    }

    pub fn source(&self, e: EdgeId) -> VertexId {
        self.sources[e.0]
    }

    pub fn range(&self, e: EdgeId) -> VertexId {
        self.ranges[e.0]
    }

    pub fn out_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.out[v.0]
    }

    pub fn in_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.inc[v.0]
    }

    pub fn is_sink(&self, v: VertexId) -> bool {
        self.out[v.0].is_empty()
    }

    pub fn sinks(&self) -> Vec<VertexId> {
        self.vertices().filter(|v| self.is_sink(*v)).collect()
    }

    /// Whether relation (CK2) is imposed at v.
    pub fn imposes_ck2(&self, v: VertexId) -> bool {
        self.ck2.contains(&v)
    }

    pub fn ck2_vertices(&self) -> &BTreeSet<VertexId> {
        &self.ck2
    }

    /// Vertices at which (CK2) is not imposed: sinks plus declared ones.
    pub fn singular_vertices(&self) -> Vec<VertexId> {
        self.vertices().filter(|v| !self.ck2.contains(v)).collect()
    }

    /// True when the CK2 set is exactly the emitting vertices (no `singular`
    /// declarations survive).
    pub fn has_default_ck2(&self) -> bool {
        self.vertices().all(|v| self.imposes_ck2(v) != self.is_sink(v))
    }

    /// A shortest cycle, or None when the graph is acyclic. Ties are broken
    /// by base-vertex order, so the witness is deterministic.
    pub fn shortest_cycle(&self) -> Option<Path> {
        let mut best: Option<Path> = None;
        for v in self.vertices() {
            if let Some(c) = self.shortest_cycle_through(v) {
                if best.as_ref().map_or(true, |b| c.len() < b.len()) {
                    best = Some(c);
                }
            }
        }
        best
    }

    fn shortest_cycle_through(&self, v: VertexId) -> Option<Path> {
        // BFS from v; the first edge found closing back to v ends a shortest
        // cycle through v because its source was discovered at minimal depth.
        let mut parent: Vec<Option<EdgeId>> = vec![None; self.vertex_count()];
        let mut seen = vec![false; self.vertex_count()];
        seen[v.0] = true;
        let mut queue = std::collections::VecDeque::from([v]);
        while let Some(u) = queue.pop_front() {
            for &e in self.out_edges(u) {
                let w = self.range(e);
                if w == v {
                    let mut rev = vec![e];
                    let mut cur = u;
                    while cur != v {
                        let pe = parent[cur.0].expect("BFS parent chain");
                        rev.push(pe);
                        cur = self.source(pe);
                    }
                    rev.reverse();
                    return Some(Path::from_edges(self, &rev));
                }
                if !seen[w.0] {
                    seen[w.0] = true;
                    parent[w.0] = Some(e);
                    queue.push_back(w);
                }
            }
        }
        None
    }

    pub fn is_acyclic(&self) -> bool {
        self.shortest_cycle().is_none()
    }

    /// A cycle without an exit, or None when every cycle has one (Condition
    /// (L)). An exitless cycle visits only vertices of out-degree one, so it
    /// is found by walking the unique-successor map.
    pub fn exitless_cycle(&self) -> Option<Path> {
        for v in self.vertices() {
            if self.out_edges(v).len() != 1 {
                continue;
            }
            let mut edges = Vec::new();
            let mut cur = v;
            for _ in 0..=self.vertex_count() {
                if self.out_edges(cur).len() != 1 {
                    break;
                }
                let e = self.out_edges(cur)[0];
                edges.push(e);
                cur = self.range(e);
                if cur == v {
                    return Some(Path::from_edges(self, &edges));
                }
            }
        }
        None
    }

    pub fn condition_l(&self) -> bool {
        self.exitless_cycle().is_none()
    }

    /// All paths ending at v (including v itself) of length at most max_len;
    /// unbounded enumeration requires an acyclic graph. Sorted by (length,
    /// edge sequence in graph edge order).
    pub fn paths_into(&self, v: VertexId, max_len: Option<usize>) -> Result<Vec<Path>, Error> {
        let bound = match max_len {
            Some(b) => b,
            None => {
                if !self.is_acyclic() {
                    return Err(Error::UnboundedEnumeration);
                }
                // In an acyclic graph no path repeats a vertex.
                self.vertex_count().saturating_sub(1)
            }
        };
        let mut all = vec![Path::vertex(v)];
        let mut frontier = vec![Path::vertex(v)];
        for _ in 0..bound {
            let mut next = Vec::new();
            for p in &frontier {
                for &e in self.in_edges(p.source()) {
                    let mut edges = vec![e];
                    edges.extend_from_slice(p.edges());
                    next.push(Path::from_edges(self, &edges));
                }
            }
            if next.is_empty() {
                break;
            }
            all.extend(next.iter().cloned());
            frontier = next;
        }
        all.sort();
        Ok(all)
    }

    /// All paths starting at v (including v itself) of length at most
    /// max_len, sorted like `paths_into`.
    pub fn paths_from(&self, v: VertexId, max_len: usize) -> Vec<Path> {
        let mut all = vec![Path::vertex(v)];
        let mut frontier = vec![Path::vertex(v)];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for p in &frontier {
                for &e in self.out_edges(p.range()) {
                    next.push(p.extended(self, e));
                }
            }
            if next.is_empty() {
                break;
            }
            all.extend(next.iter().cloned());
            frontier = next;
        }
        all.sort();
        all
    }

    /// Closed paths of length in 1..=max_len based at v.
    pub fn cycles_at(&self, v: VertexId, max_len: usize) -> Vec<Path> {
        self.paths_from(v, max_len)
            .into_iter()
            .filter(|p| p.len() >= 1 && p.range() == v)
            .collect()
    }

    /// Disjoint union; names are prefixed `a_` / `b_` to keep them distinct,
    /// and the CK2 set is the union of the two CK2 sets.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let pref = |p: &str, names: &[String]| -> Vec<String> {
            names.iter().map(|n| format!("{p}{n}")).collect()
        };
        let mut vertex_names = pref("a_", &self.vertex_names);
        vertex_names.extend(pref("b_", &other.vertex_names));
        let mut edge_names = pref("a_", &self.edge_names);
        edge_names.extend(pref("b_", &other.edge_names));
        let shift_v = self.vertex_count();
        let shift_e = self.edge_count();
        let mut sources = self.sources.clone();
        sources.extend(other.sources.iter().map(|v| VertexId(v.0 + shift_v)));
        let mut ranges = self.ranges.clone();
        ranges.extend(other.ranges.iter().map(|v| VertexId(v.0 + shift_v)));
        let mut ck2 = self.ck2.clone();
        ck2.extend(other.ck2.iter().map(|v| VertexId(v.0 + shift_v)));
        let mut out = self.out.clone();
        out.extend(
            other
                .out
                .iter()
                .map(|es| es.iter().map(|e| EdgeId(e.0 + shift_e)).collect::<Vec<_>>()),
        );
        let mut inc = self.inc.clone();
        inc.extend(
            other
                .inc
                .iter()
                .map(|es| es.iter().map(|e| EdgeId(e.0 + shift_e)).collect::<Vec<_>>()),
        );
        Graph { vertex_names, edge_names, sources, ranges, ck2, out, inc }
    }

    /// The line graph with n vertices v1..vn and edges ei: vi -> vi+1. Its
    /// Leavitt path algebra is the full n-by-n matrix algebra.
    pub fn line(n: usize) -> Graph {
        assert!(n >= 1);
        let vnames: Vec<String> = (1..=n).map(|i| format!("v{i}")).collect();
        let enames: Vec<String> = (1..n).map(|i| format!("e{i}")).collect();
        let vrefs: Vec<&str> = vnames.iter().map(|s| s.as_str()).collect();
        let erefs: Vec<(&str, &str, &str)> = (0..n - 1)
            .map(|i| (enames[i].as_str(), vrefs[i], vrefs[i + 1]))
            .collect();
        Graph::build(&vrefs, &erefs, &[]).expect("line graph")
    }

    /// The rose with n loops at a single vertex v, edges named e, f, g, ...
    /// One loop gives the Laurent polynomial algebra, n >= 2 the Leavitt
    /// algebra of type (1, n).
    pub fn rose(n: usize) -> Graph {
        assert!((1..=22).contains(&n), "rose size out of supported range");
        let names: Vec<String> =
            (0..n).map(|i| ((b'e' + i as u8) as char).to_string()).collect();
        let erefs: Vec<(&str, &str, &str)> =
            names.iter().map(|e| (e.as_str(), "v", "v")).collect();
        Graph::build(&["v"], &erefs, &[]).expect("rose graph")
    }

    /// The Toeplitz graph: a loop e at u and an edge f: u -> v.
    pub fn toeplitz() -> Graph {
        Graph::build(&["u", "v"], &[("e", "u", "u"), ("f", "u", "v")], &[]).expect("toeplitz graph")
    }
}

/// A finite path: a base vertex (length 0) or a composable edge sequence.
/// Source and range are stored so most queries need no graph access.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Path {
    source: VertexId,
    range: VertexId,
    edges: Vec<EdgeId>,
}

impl Path {
    pub fn vertex(v: VertexId) -> Path {
        Path { source: v, range: v, edges: Vec::new() }
    }

    pub fn edge(g: &Graph, e: EdgeId) -> Path {
        Path { source: g.source(e), range: g.range(e), edges: vec![e] }
    }

    /// Panics if the sequence does not compose; parsers validate separately.
    pub fn from_edges(g: &Graph, edges: &[EdgeId]) -> Path {
        assert!(!edges.is_empty(), "use Path::vertex for length zero");
        for w in edges.windows(2) {
            assert_eq!(g.range(w[0]), g.source(w[1]), "edges do not compose");
        }
        Path {
            source: g.source(edges[0]),
            range: g.range(edges[edges.len() - 1]),
            edges: edges.to_vec(),
        }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_vertex(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn source(&self) -> VertexId {
        self.source
    }

    pub fn range(&self) -> VertexId {
        self.range
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn first_edge(&self) -> Option<EdgeId> {
        self.edges.first().copied()
    }

    pub fn last_edge(&self) -> Option<EdgeId> {
        self.edges.last().copied()
    }

    pub fn extended(&self, g: &Graph, e: EdgeId) -> Path {
        assert_eq!(self.range, g.source(e), "edge does not extend path");
        let mut edges = self.edges.clone();
        edges.push(e);
        Path { source: self.source, range: g.range(e), edges }
    }

    pub fn concat(&self, other: &Path) -> Path {
        assert_eq!(self.range, other.source, "paths do not compose");
        let mut edges = self.edges.clone();
        edges.extend_from_slice(&other.edges);
        Path { source: self.source, range: other.range, edges }
    }

    /// The initial subpath of the given length.
    pub fn truncated(&self, g: &Graph, len: usize) -> Path {
        assert!(len <= self.len());
        if len == 0 {
            Path::vertex(self.source)
        } else {
            Path::from_edges(g, &self.edges[..len])
        }
    }

    pub fn is_prefix_of(&self, other: &Path) -> bool {
        self.source == other.source
            && self.len() <= other.len()
            && self.edges == other.edges[..self.len()]
    }

    /// The remainder after removing the given prefix, or None.
    pub fn suffix_after(&self, g: &Graph, prefix: &Path) -> Option<Path> {
        if !prefix.is_prefix_of(self) {
            return None;
        }
        if prefix.len() == self.len() {
            Some(Path::vertex(self.range))
        } else if prefix.len() == 0 {
            Some(self.clone())
        } else {
            Some(Path::from_edges(g, &self.edges[prefix.len()..]))
        }
    }

    /// Vertex name for length zero, otherwise edge names joined by commas.
    pub fn render(&self, g: &Graph) -> String {
        if self.is_vertex() {
            g.vertex_name(self.source).to_string()
        } else {
            self.edges
                .iter()
                .map(|e| g.edge_name(*e))
                .collect::<Vec<_>>()
                .join(",")
        }
    }
}

impl Ord for Path {
    // Length first, then the edge sequence in graph edge order; the source
    // vertex only separates distinct length-zero paths.
    fn cmp(&self, other: &Self) -> Ordering {
        (self.edges.len(), &self.edges, self.source).cmp(&(
            other.edges.len(),
            &other.edges,
            other.source,
        ))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
