//! Command-line front end. `run` returns the full stdout text so it can be
//! exercised directly in tests; `main` handles printing and exit codes.

use std::fs;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::classify::classify;
use crate::error::Error;
use crate::graph::{Graph, VertexId};
use crate::groupoid::{effectiveness_witness, isotropy_generator};
use crate::leavitt::{LeavittElement, Monomial};
use crate::parse::{parse_boundary_path, parse_expression, parse_graph, parse_steinberg_element};
use crate::scalars::Ring;
use crate::steinberg::SteinbergElement;

/// Exact computation in Leavitt path algebras and Steinberg algebras of
/// boundary path groupoids.
#[derive(Parser)]
#[command(name = "lpa", version)]
pub struct Cli {
    /// Coefficient ring: int, rat, or mod:<n>.
    #[arg(long, global = true, default_value = "rat")]
    ring: String,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report graph structure and groupoid properties.
    Info { graph: PathBuf },
    /// Decide equality of two path-algebra expressions.
    Eq { graph: PathBuf, expr1: String, expr2: String },
    /// Print the special-edge normal form of an expression.
    Normalform { graph: PathBuf, expr: String },
    /// Multiply two expressions without Cuntz-Krieger rewriting.
    Mul { graph: PathBuf, expr1: String, expr2: String },
    /// Map an expression to its Steinberg-algebra image.
    Pi { graph: PathBuf, expr: String },
    /// Map a Steinberg element back to the path algebra.
    PiInv { graph: PathBuf, element: String },
    /// Classify the algebra of a finite acyclic graph.
    Classify { graph: PathBuf },
    /// Reduce a nonzero degree-zero element to a scaled vertex.
    Reduce { graph: PathBuf, expr: String },
    /// Isotropy group of a boundary path.
    Isotropy { graph: PathBuf, path: String },
    /// Convolve two Steinberg elements.
    Convolve { graph: PathBuf, elt1: String, elt2: String },
    /// Reduce a nonzero homogeneous Steinberg element to a scaled corner.
    StReduce { graph: PathBuf, element: String },
}

fn parse_ring(text: &str) -> Result<Ring, Error> {
    match text {
        "int" => Ok(Ring::Integers),
        "rat" => Ok(Ring::Rationals),
        other => match other.strip_prefix("mod:") {
            Some(n) => {
                let n: u64 = n
                    .parse()
                    .map_err(|_| Error::parse(format!("bad modulus '{n}'")))?;
                if n < 2 {
                    return Err(Error::parse("modulus must be at least 2"));
                }
                Ok(Ring::IntegersMod(n))
            }
            None => Err(Error::parse(format!(
                "unknown ring '{other}'; expected int, rat, or mod:<n>"
            ))),
        },
    }
}

fn load_graph(path: &PathBuf) -> Result<Graph, Error> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::parse(format!("cannot read {}: {e}", path.display())))?;
    parse_graph(&text)
}

fn name_list(g: &Graph, vs: &[VertexId]) -> String {
    if vs.is_empty() {
        "(none)".to_string()
    } else {
        vs.iter().map(|v| g.vertex_name(*v)).collect::<Vec<_>>().join(" ")
    }
}

fn cmd_info(g: &Graph) -> String {
    let mut lines = vec![
        format!("vertices: {}", g.vertex_count()),
        format!("edges: {}", g.edge_count()),
        format!("sinks: {}", name_list(g, &g.sinks())),
        format!("singular: {}", name_list(g, &g.singular_vertices())),
        format!("acyclic: {}", g.is_acyclic()),
    ];
    match g.exitless_cycle() {
        None => lines.push("condition_L: true".to_string()),
        Some(c) => {
            lines.push(format!("condition_L: false (witness cycle: {})", c.render(g)));
        }
    }
    match effectiveness_witness(g) {
        None => lines.push("effective: true".to_string()),
        Some(a) => lines.push(format!("effective: false (witness {})", a.render(g))),
    }
    lines.join("\n")
}

fn cmd_reduce(g: &Graph, ring: Ring, expr: &str) -> Result<String, Error> {
    let x = parse_expression(g, ring, expr)?;
    let (alpha, beta, s) = x.reduce_degree_zero(g)?;
    let alpha_star = LeavittElement::monomial(ring, Monomial::ghost(alpha.clone()));
    let beta_elem = LeavittElement::monomial(ring, Monomial::real(beta.clone()));
    let lhs = alpha_star.mul(g, &x).mul(g, &beta_elem);
    let rhs = LeavittElement::vertex_element(ring, alpha.range()).scale(&s);
    assert!(lhs.eq_element(g, &rhs), "reduction identity failed");
    Ok(format!(
        "alpha={} beta={} s={}\nverified: alpha* x beta = {} {}",
        alpha.render(g),
        beta.render(g),
        s,
        s,
        g.vertex_name(alpha.range())
    ))
}

fn cmd_st_reduce(g: &Graph, ring: Ring, element: &str) -> Result<String, Error> {
    let h = parse_steinberg_element(g, ring, element)?;
    let (c_atom, v_atom, r) = h.reduce_homogeneous(g)?;
    let one_c = SteinbergElement::indicator(ring, c_atom.clone());
    let one_v = SteinbergElement::indicator(ring, v_atom.clone());
    let lhs = one_c.convolve(g, &h).convolve(g, &one_v);
    let rhs = one_v.scale(&r);
    assert!(lhs.eq_element(g, &rhs), "corner identity failed");
    Ok(format!(
        "C={} V={} r={}\nverified: 1_C * h * 1_V = {} * 1_V",
        c_atom.render(g),
        v_atom.render(g),
        r,
        r
    ))
}

pub fn run(cli: Cli) -> Result<String, Error> {
    let ring = parse_ring(&cli.ring)?;
    match &cli.command {
        Command::Info { graph } => Ok(cmd_info(&load_graph(graph)?)),
        Command::Eq { graph, expr1, expr2 } => {
            let g = load_graph(graph)?;
            let x = parse_expression(&g, ring, expr1)?;
            let y = parse_expression(&g, ring, expr2)?;
            Ok(if x.eq_element(&g, &y) { "equal" } else { "not equal" }.to_string())
        }
        Command::Normalform { graph, expr } => {
            let g = load_graph(graph)?;
            let x = parse_expression(&g, ring, expr)?;
            Ok(x.normal_form(&g).render(&g))
        }
        Command::Mul { graph, expr1, expr2 } => {
            let g = load_graph(graph)?;
            let x = parse_expression(&g, ring, expr1)?;
            let y = parse_expression(&g, ring, expr2)?;
            Ok(x.mul(&g, &y).render(&g))
        }
        Command::Pi { graph, expr } => {
            let g = load_graph(graph)?;
            let x = parse_expression(&g, ring, expr)?;
            Ok(x.steinberg_image(&g).render(&g))
        }
        Command::PiInv { graph, element } => {
            let g = load_graph(graph)?;
            let f = parse_steinberg_element(&g, ring, element)?;
            Ok(LeavittElement::from_steinberg_image(&g, &f).render(&g))
        }
        Command::Classify { graph } => {
            let g = load_graph(graph)?;
            Ok(classify(&g)?.render(ring))
        }
        Command::Reduce { graph, expr } => {
            let g = load_graph(graph)?;
            cmd_reduce(&g, ring, expr)
        }
        Command::Isotropy { graph, path } => {
            let g = load_graph(graph)?;
            let p = parse_boundary_path(&g, path)?;
            Ok(match isotropy_generator(&p) {
                Some(el) => format!("infinite cyclic, period {}", el.lag()),
                None => "trivial".to_string(),
            })
        }
        Command::Convolve { graph, elt1, elt2 } => {
            let g = load_graph(graph)?;
            let f = parse_steinberg_element(&g, ring, elt1)?;
            let h = parse_steinberg_element(&g, ring, elt2)?;
            Ok(f.convolve(&g, &h).render(&g))
        }
        Command::StReduce { graph, element } => {
            let g = load_graph(graph)?;
            cmd_st_reduce(&g, ring, element)
        }
    }
}
