//! Deterministic random generators for property tests: seeded ChaCha8
//! streams over paths, monomials, algebra elements, bisection atoms, and
//! small acyclic graphs. Every generator is a pure function of its seed, so
//! failures reproduce exactly.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::graph::{Graph, Path, VertexId};
use crate::groupoid::BisectionAtom;
use crate::leavitt::{LeavittElement, Monomial};
use crate::scalars::{Ring, Scalar};
use crate::steinberg::SteinbergElement;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_scalar(ring: Ring, rng: &mut ChaCha8Rng) -> Scalar {
    match ring {
        Ring::Integers => Scalar::from_i64(ring, rng.gen_range(-5..=5)),
        Ring::Rationals => Scalar::rational(rng.gen_range(-5..=5), rng.gen_range(1..=4)),
        Ring::IntegersMod(n) => Scalar::from_i64(ring, rng.gen_range(0..n as i64)),
    }
}

pub fn random_nonzero_scalar(ring: Ring, rng: &mut ChaCha8Rng) -> Scalar {
    loop {
        let s = random_scalar(ring, rng);
        if !s.is_zero() {
            return s;
        }
    }
}

/// A forward random walk from v, stopping early at sinks.
pub fn random_path_from(
    g: &Graph,
    rng: &mut ChaCha8Rng,
    v: VertexId,
    max_len: usize,
) -> Path {
    let mut p = Path::vertex(v);
    for _ in 0..rng.gen_range(0..=max_len) {
        let out = g.out_edges(p.range());
        if out.is_empty() {
            break;
        }
        p = p.extended(g, out[rng.gen_range(0..out.len())]);
    }
    p
}

pub fn random_path(g: &Graph, rng: &mut ChaCha8Rng, max_len: usize) -> Path {
    let vs: Vec<VertexId> = g.vertices().collect();
    let v = vs[rng.gen_range(0..vs.len())];
    random_path_from(g, rng, v, max_len)
}

/// A backward random walk into v, stopping early at sources.
pub fn random_path_into(
    g: &Graph,
    rng: &mut ChaCha8Rng,
    v: VertexId,
    max_len: usize,
) -> Path {
    let mut p = Path::vertex(v);
    for _ in 0..rng.gen_range(0..=max_len) {
        let inc = g.in_edges(p.source());
        if inc.is_empty() {
            break;
        }
        let e = inc[rng.gen_range(0..inc.len())];
        p = Path::from_edges(g, &[e]).concat(&p);
    }
    p
}

/// A monomial μν*: forward walk for μ, backward walk from r(μ) for ν.
pub fn random_monomial(g: &Graph, rng: &mut ChaCha8Rng, max_len: usize) -> Monomial {
    let mu = random_path(g, rng, max_len);
    let nu = random_path_into(g, rng, mu.range(), max_len);
    Monomial::new(g, mu, nu)
}

pub fn random_leavitt_element(
    g: &Graph,
    ring: Ring,
    rng: &mut ChaCha8Rng,
    terms: usize,
    max_len: usize,
) -> LeavittElement {
    let list = (0..terms)
        .map(|_| (random_nonzero_scalar(ring, rng), random_monomial(g, rng, max_len)))
        .collect();
    LeavittElement::from_terms(ring, list)
}

/// A nonzero element all of whose monomials have degree zero.
pub fn random_nonzero_degree_zero(
    g: &Graph,
    ring: Ring,
    rng: &mut ChaCha8Rng,
    terms: usize,
    max_len: usize,
) -> LeavittElement {
    loop {
        let mut list = Vec::new();
        let mut attempts = 0;
        while list.len() < terms && attempts < 500 {
            attempts += 1;
            let m = random_monomial(g, rng, max_len);
            if m.degree() == 0 {
                list.push((random_nonzero_scalar(ring, rng), m));
            }
        }
        let x = LeavittElement::from_terms(ring, list);
        if !x.is_zero(g) {
            return x;
        }
    }
}

/// A nonempty bisection atom with legs of bounded length.
pub fn random_atom(g: &Graph, rng: &mut ChaCha8Rng, max_leg: usize) -> BisectionAtom {
    loop {
        let alpha = random_path(g, rng, max_leg);
        let beta = random_path_into(g, rng, alpha.range(), max_leg);
        let avoid = g
            .out_edges(alpha.range())
            .iter()
            .filter(|_| rng.gen_range(0..3) == 0)
            .copied()
            .collect();
        if let Some(atom) = BisectionAtom::new(g, alpha, beta, avoid) {
            return atom;
        }
    }
}

pub fn random_steinberg_element(
    g: &Graph,
    ring: Ring,
    rng: &mut ChaCha8Rng,
    terms: usize,
    max_leg: usize,
) -> SteinbergElement {
    let list = (0..terms)
        .map(|_| (random_nonzero_scalar(ring, rng), random_atom(g, rng, max_leg)))
        .collect();
    SteinbergElement::from_terms(g, ring, list)
}

/// A nonzero element supported in a single lag degree.
pub fn random_homogeneous_nonzero(
    g: &Graph,
    ring: Ring,
    rng: &mut ChaCha8Rng,
    terms: usize,
    max_leg: usize,
) -> SteinbergElement {
    loop {
        let first = random_atom(g, rng, max_leg);
        let degree = first.degree();
        let mut list = vec![(random_nonzero_scalar(ring, rng), first)];
        let mut attempts = 0;
        while list.len() < terms && attempts < 500 {
            attempts += 1;
            let a = random_atom(g, rng, max_leg);
            if a.degree() == degree {
                list.push((random_nonzero_scalar(ring, rng), a));
            }
        }
        let f = SteinbergElement::from_terms(g, ring, list);
        if !f.is_zero() {
            return f;
        }
    }
}

/// A random acyclic graph: edges only run from lower to higher vertex index.
pub fn random_acyclic_graph(
    rng: &mut ChaCha8Rng,
    max_vertices: usize,
    max_edges: usize,
) -> Graph {
    let nv = rng.gen_range(1..=max_vertices);
    let names: Vec<String> = (1..=nv).map(|i| format!("v{i}")).collect();
    let ne = if nv < 2 { 0 } else { rng.gen_range(0..=max_edges) };
    let mut edges = Vec::new();
    for k in 1..=ne {
        let i = rng.gen_range(0..nv - 1);
        let j = rng.gen_range(i + 1..nv);
        edges.push((format!("e{k}"), names[i].clone(), names[j].clone()));
    }
    let vrefs: Vec<&str> = names.iter().map(String::as_str).collect();
    let erefs: Vec<(&str, &str, &str)> =
        edges.iter().map(|(n, s, r)| (n.as_str(), s.as_str(), r.as_str())).collect();
    Graph::build(&vrefs, &erefs, &[]).expect("construction is valid")
}

/// A nonempty random subset of the vertex set.
pub fn random_vertex_subset(g: &Graph, rng: &mut ChaCha8Rng) -> Vec<VertexId> {
    let mut out: Vec<VertexId> =
        g.vertices().filter(|_| rng.gen_range(0..2) == 0).collect();
    if out.is_empty() {
        let vs: Vec<VertexId> = g.vertices().collect();
        out.push(vs[rng.gen_range(0..vs.len())]);
    }
    out
}
