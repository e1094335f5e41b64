//! Error type shared by the whole crate.

use thiserror::Error;

/// Errors produced by fallible operations.
///
/// The split matters to the CLI: `Parse` errors exit with code 2, everything
/// else (domain errors) with code 1.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A text input (graph file, path, expression) failed to parse.
    #[error("parse error{}: {msg}", match line { Some(n) => format!(" at line {n}"), None => String::new() })]
    Parse { msg: String, line: Option<usize> },

    /// The shift map is undefined on a path of length zero.
    #[error("shift of a vertex")]
    ShiftOfVertex,

    /// Unbounded path enumeration was requested on a graph with a cycle.
    #[error("unbounded enumeration on cyclic graph")]
    UnboundedEnumeration,

    /// The graph has a cycle, so it has no finite-dimensional classification.
    #[error("not acyclic (witness cycle {witness})")]
    NotAcyclic { witness: String },

    /// Classification is only defined when (CK2) is imposed at every
    /// emitting vertex.
    #[error("non-default ck2 set")]
    NonDefaultCk2,

    /// The input element was zero where a nonzero one is required.
    #[error("zero element")]
    ZeroElement,

    /// The degree-zero reduction was handed the zero element.
    #[error("zero input")]
    ZeroInput,

    /// A homogeneous element was required.
    #[error("not homogeneous")]
    NotHomogeneous,

    /// An element of pure degree zero was required.
    #[error("degree nonzero")]
    DegreeNonzero,

    /// A declared-singular vertex emits edges, but every materialized edge is
    /// already in use, so the reduction cannot pick a spare one. This can only
    /// happen with a non-default ck2 set.
    #[error("insufficient truncation at singular vertex {vertex}")]
    InsufficientTruncation { vertex: String },

    /// A local unit over an empty vertex set does not exist.
    #[error("empty vertex set")]
    EmptyVertexSet,

    /// A name in an expression or path does not exist in the graph.
    #[error("unknown identifier '{name}'")]
    UnknownIdentifier { name: String },
}

impl Error {
    pub fn parse(msg: impl Into<String>) -> Self {
        Error::Parse { msg: msg.into(), line: None }
    }

    pub fn parse_at(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { msg: msg.into(), line: Some(line) }
    }

    /// Process exit code the CLI maps this error to.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } | Error::UnknownIdentifier { .. } => 2,
            _ => 1,
        }
    }
}
