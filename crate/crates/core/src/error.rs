use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Clone, Debug, PartialEq, Eq)]
#[non_exhaustive]
pub enum Error {
    /// An edge endpoint is not a vertex of the graph.
    VertexOutOfRange { vertex: u32, vertex_count: usize },
    SelfLoop { vertex: u32 },
    DuplicateEdge { u: u32, v: u32 },
    /// The input graph was required to be a tree.
    NotATree,
    /// An intermediate iterated line graph outgrew the configured ceiling.
    ResourceLimit {
        level: usize,
        vertices: u64,
        edges: u64,
    },
    /// A size parameter is above the supported ceiling.
    Ceiling {
        what: &'static str,
        value: u64,
        max: u64,
    },
    /// A parameter violates the operation's preconditions.
    Constraint(String),
    /// A weight table does not contain a required entry.
    MissingWeight { code: Vec<u8>, level: u32 },
    /// Interpolation nodes must be pairwise distinct.
    DuplicateAbscissa,
    /// A mathematical identity that must hold did not.
    Verification(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::VertexOutOfRange {
                vertex,
                vertex_count,
            } => write!(f, "vertex {vertex} out of range for {vertex_count} vertices"),
            Error::SelfLoop { vertex } => write!(f, "self-loop at vertex {vertex}"),
            Error::DuplicateEdge { u, v } => write!(f, "duplicate edge {u}-{v}"),
            Error::NotATree => f.write_str("graph is not a tree"),
            Error::ResourceLimit {
                level,
                vertices,
                edges,
            } => write!(
                f,
                "resource ceiling exceeded at line-graph level {level} ({vertices} vertices, {edges} edges)"
            ),
            Error::Ceiling { what, value, max } => {
                write!(f, "{what} = {value} exceeds the ceiling {max}")
            }
            Error::Constraint(msg) => write!(f, "constraint violated: {msg}"),
            Error::MissingWeight { code, level } => {
                f.write_str("weight table has no entry for tree code ")?;
                for b in code {
                    write!(f, "{b:02x}")?;
                }
                write!(f, " at level {level}")
            }
            Error::DuplicateAbscissa => f.write_str("duplicate interpolation abscissa"),
            Error::Verification(msg) => write!(f, "verification failed: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
