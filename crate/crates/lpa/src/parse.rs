//! Text input: graph files, paths, boundary paths, algebra expressions, and
//! rendered Steinberg elements. Parsers return `Error::Parse` (exit code 2)
//! with a line number where one is meaningful.

use std::collections::BTreeSet;

use crate::error::Error;
use crate::graph::{Graph, Path};
use crate::groupoid::BisectionAtom;
use crate::leavitt::{LeavittElement, Monomial};
use crate::pathspace::BoundaryPath;
use crate::scalars::{Ring, Scalar};
use crate::steinberg::SteinbergElement;

/// Line-oriented graph files: `#` comments, `vertex <name>`,
/// `edge <name> <source> <range>`, `singular <vertex>`.
pub fn parse_graph(text: &str) -> Result<Graph, Error> {
    let mut vertices: Vec<(usize, String)> = Vec::new();
    let mut edges: Vec<(usize, String, String, String)> = Vec::new();
    let mut singular: Vec<(usize, String)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace();
        let directive = parts.next().expect("nonempty line");
        let args: Vec<&str> = parts.collect();
        match directive {
            "vertex" => {
                if args.len() != 1 {
                    return Err(Error::parse_at(lineno, "expected 1 argument"));
                }
                vertices.push((lineno, args[0].to_string()));
            }
            "edge" => {
                if args.len() != 3 {
                    return Err(Error::parse_at(lineno, "expected 3 arguments"));
                }
                edges.push((lineno, args[0].to_string(), args[1].to_string(), args[2].to_string()));
            }
            "singular" => {
                if args.len() != 1 {
                    return Err(Error::parse_at(lineno, "expected 1 argument"));
                }
                singular.push((lineno, args[0].to_string()));
            }
            other => {
                return Err(Error::parse_at(lineno, format!("unknown directive '{other}'")));
            }
        }
    }
    let mut names: BTreeSet<&str> = BTreeSet::new();
    let vertex_names: BTreeSet<&str> = vertices.iter().map(|(_, n)| n.as_str()).collect();
    for (line, name) in &vertices {
        if !names.insert(name) {
            return Err(Error::parse_at(*line, format!("duplicate name '{name}'")));
        }
    }
    for (line, name, src, rng) in &edges {
        if !names.insert(name) {
            return Err(Error::parse_at(*line, format!("duplicate name '{name}'")));
        }
        for v in [src, rng] {
            if !vertex_names.contains(v.as_str()) {
                return Err(Error::parse_at(*line, format!("unknown vertex '{v}'")));
            }
        }
    }
    for (line, name) in &singular {
        if !vertex_names.contains(name.as_str()) {
            return Err(Error::parse_at(*line, format!("unknown vertex '{name}'")));
        }
    }
    let vrefs: Vec<&str> = vertices.iter().map(|(_, n)| n.as_str()).collect();
    let erefs: Vec<(&str, &str, &str)> =
        edges.iter().map(|(_, n, s, r)| (n.as_str(), s.as_str(), r.as_str())).collect();
    let srefs: Vec<&str> = singular.iter().map(|(_, n)| n.as_str()).collect();
    Graph::build(&vrefs, &erefs, &srefs)
}

/// A single vertex name, a single edge name, or a comma-separated list of
/// composable edge names.
pub fn parse_path(g: &Graph, text: &str) -> Result<Path, Error> {
    let t = text.trim();
    if t.is_empty() {
        return Err(Error::parse("empty path"));
    }
    if !t.contains(',') {
        if let Some(v) = g.vertex_by_name(t) {
            return Ok(Path::vertex(v));
        }
        if let Some(e) = g.edge_by_name(t) {
            return Ok(Path::edge(g, e));
        }
        return Err(Error::UnknownIdentifier { name: t.to_string() });
    }
    let mut edges = Vec::new();
    for part in t.split(',') {
        let name = part.trim();
        let e = g
            .edge_by_name(name)
            .ok_or_else(|| Error::UnknownIdentifier { name: name.to_string() })?;
        if let Some(prev) = edges.last() {
            if g.range(*prev) != g.source(e) {
                return Err(Error::parse(format!(
                    "edges '{}' and '{name}' do not compose",
                    g.edge_name(*prev)
                )));
            }
        }
        edges.push(e);
    }
    Ok(Path::from_edges(g, &edges))
}

/// Either a finite path ending at a singular vertex, or `prefix;(cycle)`
/// with an optional prefix before the semicolon.
pub fn parse_boundary_path(g: &Graph, text: &str) -> Result<BoundaryPath, Error> {
    let t = text.trim();
    if let Some((pre, rest)) = t.split_once(';') {
        let inner = rest
            .trim()
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| Error::parse("expected (cycle) after ';'"))?;
        let cycle = parse_path(g, inner)?;
        if cycle.is_vertex() {
            return Err(Error::parse("empty cycle"));
        }
        if cycle.source() != cycle.range() {
            return Err(Error::parse("cycle is not closed"));
        }
        let prefix = if pre.trim().is_empty() {
            Path::vertex(cycle.source())
        } else {
            parse_path(g, pre)?
        };
        if prefix.range() != cycle.source() {
            return Err(Error::parse("prefix does not reach the cycle"));
        }
        Ok(BoundaryPath::lasso(g, prefix, cycle))
    } else {
        let p = parse_path(g, t)?;
        if g.imposes_ck2(p.range()) {
            return Err(Error::parse(format!(
                "finite boundary path must end at a singular vertex, not '{}'",
                g.vertex_name(p.range())
            )));
        }
        Ok(BoundaryPath::finite(g, p))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Num(String),
    Plus,
    Minus,
    Star,
    Slash,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("'{s}'"),
            Tok::Num(s) => format!("'{s}'"),
            Tok::Plus => "'+'".to_string(),
            Tok::Minus => "'-'".to_string(),
            Tok::Star => "'*'".to_string(),
            Tok::Slash => "'/'".to_string(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<Tok>, Error> {
    let mut toks = Vec::new();
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
        } else if c.is_alphanumeric() || c == '_' {
            let mut word = String::new();
            while let Some(&d) = chars.peek() {
                if d.is_alphanumeric() || d == '_' {
                    word.push(d);
                    chars.next();
                } else {
                    break;
                }
            }
            if word.chars().all(|d| d.is_ascii_digit()) {
                toks.push(Tok::Num(word));
            } else {
                toks.push(Tok::Ident(word));
            }
        } else {
            chars.next();
            toks.push(match c {
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '/' => Tok::Slash,
                other => return Err(Error::parse(format!("unexpected character '{other}'"))),
            });
        }
    }
    Ok(toks)
}

/// Sums of terms; a term is an optional coefficient followed by vertex and
/// edge factors, `*` marking a ghost edge. Example: `2 e f* - v`.
pub fn parse_expression(g: &Graph, ring: Ring, text: &str) -> Result<LeavittElement, Error> {
    let t = text.trim();
    if t == "0" {
        return Ok(LeavittElement::zero(ring));
    }
    let toks = lex(t)?;
    if toks.is_empty() {
        return Err(Error::parse("empty expression"));
    }
    let mut terms: Vec<(Scalar, Monomial)> = Vec::new();
    let mut i = 0;
    let mut first = true;
    loop {
        let mut neg = false;
        match toks.get(i) {
            Some(Tok::Plus) if first => i += 1,
            Some(Tok::Minus) => {
                neg = true;
                i += 1;
            }
            Some(Tok::Plus) => i += 1,
            None if first => unreachable!("empty token list handled above"),
            None => break,
            Some(_) if first => {}
            Some(tok) => {
                return Err(Error::parse(format!("unexpected token {}", tok.describe())));
            }
        }
        first = false;
        let mut coeff = ring.one();
        if let Some(Tok::Num(n)) = toks.get(i) {
            let mut ctext = n.clone();
            i += 1;
            if matches!(toks.get(i), Some(Tok::Slash)) {
                i += 1;
                match toks.get(i) {
                    Some(Tok::Num(d)) => {
                        ctext.push('/');
                        ctext.push_str(d);
                        i += 1;
                    }
                    _ => return Err(Error::parse("expected denominator after '/'")),
                }
            }
            coeff = Scalar::parse(ring, &ctext).map_err(Error::parse)?;
        }
        if neg {
            coeff = coeff.neg();
        }
        let mut factors: Vec<Monomial> = Vec::new();
        while let Some(Tok::Ident(name)) = toks.get(i) {
            i += 1;
            let ghost = matches!(toks.get(i), Some(Tok::Star));
            if ghost {
                i += 1;
            }
            let m = if let Some(v) = g.vertex_by_name(name) {
                Monomial::vertex(v)
            } else if let Some(e) = g.edge_by_name(name) {
                if ghost {
                    Monomial::ghost(Path::edge(g, e))
                } else {
                    Monomial::real(Path::edge(g, e))
                }
            } else {
                return Err(Error::UnknownIdentifier { name: name.clone() });
            };
            factors.push(m);
        }
        if factors.is_empty() {
            return Err(Error::parse("a term needs at least one vertex or edge factor"));
        }
        let mut prod = Some(factors[0].clone());
        for f in &factors[1..] {
            prod = prod.and_then(|p| p.mul(g, f));
        }
        if let Some(m) = prod {
            terms.push((coeff, m));
        }
    }
    Ok(LeavittElement::from_terms(ring, terms))
}

fn parse_atom(g: &Graph, text: &str) -> Result<Option<BisectionAtom>, Error> {
    let inner = text
        .trim()
        .strip_prefix("Z(")
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| Error::parse(format!("expected Z(alpha|beta), got '{text}'")))?;
    let (alpha_text, rest) = inner
        .split_once('|')
        .ok_or_else(|| Error::parse("expected '|' between atom legs"))?;
    let (beta_text, avoid_text) = match rest.split_once('\\') {
        Some((b, f)) => {
            let inside = f
                .trim()
                .strip_prefix('{')
                .and_then(|s| s.strip_suffix('}'))
                .ok_or_else(|| Error::parse("expected {edges} after '\\'"))?;
            (b, Some(inside.to_string()))
        }
        None => (rest, None),
    };
    let alpha = parse_path(g, alpha_text)?;
    let beta = parse_path(g, beta_text)?;
    if alpha.range() != beta.range() {
        return Err(Error::parse("atom legs do not share a range"));
    }
    let mut avoid = BTreeSet::new();
    if let Some(list) = avoid_text {
        for part in list.split(',') {
            let name = part.trim();
            let e = g
                .edge_by_name(name)
                .ok_or_else(|| Error::UnknownIdentifier { name: name.to_string() })?;
            if g.source(e) != alpha.range() {
                return Err(Error::parse(format!(
                    "avoided edge '{name}' does not leave the range"
                )));
            }
            avoid.insert(e);
        }
    }
    Ok(BisectionAtom::new(g, alpha, beta, avoid))
}

/// The renderer's own format: `0`, or `coeff*Z(alpha|beta\{edges})` terms
/// joined by ` + `. An atom whose domain is empty contributes nothing.
pub fn parse_steinberg_element(
    g: &Graph,
    ring: Ring,
    text: &str,
) -> Result<SteinbergElement, Error> {
    let t = text.trim();
    if t == "0" {
        return Ok(SteinbergElement::zero(ring));
    }
    let mut terms = Vec::new();
    for piece in t.split(" + ") {
        let (coeff_text, atom_text) = piece
            .split_once('*')
            .ok_or_else(|| Error::parse(format!("expected coeff*Z(...), got '{piece}'")))?;
        let coeff = Scalar::parse(ring, coeff_text.trim()).map_err(Error::parse)?;
        if let Some(atom) = parse_atom(g, atom_text)? {
            terms.push((coeff, atom));
        }
    }
    Ok(SteinbergElement::from_terms(g, ring, terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling;

    fn rose2_text() -> &'static str {
        "# two loops on one vertex\nvertex v\nedge e v v\nedge f v v\n"
    }

    #[test]
    fn graph_files_parse() {
        let g = parse_graph(rose2_text()).unwrap();
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.edge_count(), 2);
        assert!(g.has_default_ck2());
        // u is singular by declaration, v by being a sink.
        let h = parse_graph("vertex u\nvertex v\nedge e u v\nsingular u\n").unwrap();
        assert_eq!(h.singular_vertices().len(), 2);
    }

    #[test]
    fn graph_file_errors_carry_line_numbers() {
        let e = parse_graph("vertex v\nedge e u\n").unwrap_err();
        assert_eq!(e, Error::parse_at(2, "expected 3 arguments"));
        let e = parse_graph("vertex v\nvertex v\n").unwrap_err();
        assert_eq!(e, Error::parse_at(2, "duplicate name 'v'"));
        let e = parse_graph("loop v\n").unwrap_err();
        assert_eq!(e, Error::parse_at(1, "unknown directive 'loop'"));
        let e = parse_graph("vertex v\nedge e v w\n").unwrap_err();
        assert_eq!(e, Error::parse_at(2, "unknown vertex 'w'"));
        let e = parse_graph("singular w\n").unwrap_err();
        assert_eq!(e, Error::parse_at(1, "unknown vertex 'w'"));
    }

    #[test]
    fn paths_parse() {
        let g = Graph::toeplitz();
        let v = parse_path(&g, "v").unwrap();
        assert!(v.is_vertex());
        let p = parse_path(&g, "e,e,f").unwrap();
        assert_eq!(p.len(), 3);
        assert!(matches!(parse_path(&g, "q"), Err(Error::UnknownIdentifier { .. })));
        assert!(parse_path(&g, "f,e").is_err());
    }

    #[test]
    fn boundary_paths_parse() {
        let g = Graph::toeplitz();
        let finite = parse_boundary_path(&g, "f").unwrap();
        assert_eq!(finite.render(&g), "f");
        let lasso = parse_boundary_path(&g, ";(e)").unwrap();
        assert_eq!(lasso.render(&g), ";(e)");
        assert!(parse_boundary_path(&g, "e").is_err());
        let r2 = parse_graph(rose2_text()).unwrap();
        let x = parse_boundary_path(&r2, "e;(e,f)").unwrap();
        assert_eq!(x.render(&r2), "e;(e,f)");
        assert!(parse_boundary_path(&r2, "f;(e").is_err());
        assert!(parse_boundary_path(&r2, ";(v)").is_err());
    }

    #[test]
    fn expressions_parse() {
        let g = parse_graph(rose2_text()).unwrap();
        let q = Ring::Rationals;
        let x = parse_expression(&g, q, "2 e f* - v").unwrap();
        assert_eq!(x.render(&g), "-v + 2 e f*");
        let y = parse_expression(&g, q, "e e* + f f*").unwrap();
        assert!(y.eq_element(&g, &parse_expression(&g, q, "v").unwrap()));
        let zero = parse_expression(&g, q, "0").unwrap();
        assert!(zero.is_zero(&g));
        let half = parse_expression(&g, q, "1/2 v").unwrap();
        assert_eq!(half.render(&g), "1/2 v");
        let dropped = parse_expression(&g, q, "e* f").unwrap();
        assert!(dropped.is_zero(&g));
    }

    #[test]
    fn expression_errors() {
        let g = parse_graph(rose2_text()).unwrap();
        let q = Ring::Rationals;
        assert!(matches!(
            parse_expression(&g, q, "e + q"),
            Err(Error::UnknownIdentifier { .. })
        ));
        assert!(parse_expression(&g, q, "2 +").is_err());
        assert!(parse_expression(&g, q, "3").is_err());
        assert!(parse_expression(&g, Ring::Integers, "1/2 v").is_err());
        assert!(parse_expression(&g, q, "e ^ f").is_err());
    }

    #[test]
    fn expressions_round_trip() {
        let g = parse_graph(rose2_text()).unwrap();
        let t = Graph::toeplitz();
        let mut r = sampling::rng(21);
        for ring in [Ring::Rationals, Ring::Integers, Ring::integers_mod(4)] {
            for graph in [&g, &t] {
                for _ in 0..10 {
                    let x = sampling::random_leavitt_element(graph, ring, &mut r, 3, 2);
                    let back = parse_expression(graph, ring, &x.render(graph)).unwrap();
                    assert!(back.eq_element(graph, &x), "{}", x.render(graph));
                }
            }
        }
    }

    #[test]
    fn steinberg_elements_round_trip() {
        let g = parse_graph(rose2_text()).unwrap();
        let t = Graph::toeplitz();
        let mut r = sampling::rng(22);
        for ring in [Ring::Rationals, Ring::integers_mod(5)] {
            for graph in [&g, &t] {
                for _ in 0..10 {
                    let f = sampling::random_steinberg_element(graph, ring, &mut r, 3, 2);
                    let back = parse_steinberg_element(graph, ring, &f.render(graph)).unwrap();
                    assert!(back.eq_element(graph, &f), "{}", f.render(graph));
                }
            }
        }
        let zero = parse_steinberg_element(&g, Ring::Rationals, "0").unwrap();
        assert!(zero.is_zero());
    }

    #[test]
    fn steinberg_parse_accepts_rendered_forms() {
        let g = parse_graph(rose2_text()).unwrap();
        let q = Ring::Rationals;
        let f = parse_steinberg_element(&g, q, "1*Z(v|v\\{e}) + 2*Z(e|e)").unwrap();
        assert_eq!(f.render(&g), "1*Z(v|v\\{e}) + 2*Z(e|e)");
        let neg = parse_steinberg_element(&g, q, "-1/2*Z(e,f|f)").unwrap();
        assert_eq!(neg.render(&g), "-1/2*Z(e,f|f)");
        assert!(parse_steinberg_element(&g, q, "Z(e|e)").is_err());
        let t = Graph::toeplitz();
        assert!(parse_steinberg_element(&t, q, "1*Z(e|f)").is_err());
    }
}
