use thiserror::Error;

use crate::complex::{Simplex, Vertex};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("not a face: {0}")]
    NotAFace(Simplex),
    #[error("not a facet: {0}")]
    NotAFacet(Simplex),
    #[error("not pure")]
    NotPure,
    #[error("empty complex")]
    EmptyComplex,
    #[error("empty vertex set")]
    EmptyVertexSet,
    #[error("empty complement")]
    EmptyComplement,
    #[error("vertex {0} not in complex")]
    UnknownVertex(Vertex),
    #[error("vertex {0} already present")]
    VertexPresent(Vertex),
    #[error("vertex {0} not collapsible")]
    NotCollapsible(Vertex),
    #[error("already minimal")]
    AlreadyMinimal,
    #[error("not admissible: distance between {x} and {y} is {distance}")]
    NotAdmissible { x: Vertex, y: Vertex, distance: usize },
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("hypothesis of the one-end-graph lemma violated: {0}")]
    OneEndHypothesis(String),
    #[error("induced subcomplex is not a standard sphere")]
    NotStandardSphere,
    #[error("not two-sided (combinatorially): crossing-edge graph is connected")]
    NotTwoSided,
    #[error("trace step {0} is not replayable: {1}")]
    BadTraceStep(usize, String),
    #[error("not a stacked-sphere edge graph")]
    NotStackedGraph,
    #[error("no admissible bijection exists for m <= 2d+2")]
    NoAdmissibleBijection,
    #[error("not a subcomplex")]
    NotSubcomplex,
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
