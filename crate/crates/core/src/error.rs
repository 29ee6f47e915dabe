use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {msg}")]
    PdSyntax { line: usize, msg: String },

    #[error("line {line}: crossing has {found} labels, expected 4")]
    PdArity { line: usize, found: usize },

    #[error("edge label {label} appears {count} times, expected exactly 2")]
    PdLabelCount { label: u32, count: usize },

    #[error("{crossings} crossings need {expected} distinct edge labels, found {found}")]
    PdLabelTotal { crossings: usize, expected: usize, found: usize },

    #[error("diagram has no crossings")]
    EmptyDiagram,

    #[error("face tracing found {faces} faces where {expected} are required; the code is not a planar diagram")]
    NonPlanar { faces: usize, expected: usize },

    #[error("cannot orient link component through edge {label}: {msg}")]
    Orientation { label: u32, msg: String },

    #[error("bad polynomial: {0}")]
    PolynomialSyntax(String),

    #[error("degree of the zero polynomial is undefined")]
    UndefinedDegree,

    #[error("brute-force state sum over {crossings} crossings exceeds the cap of {cap}; raise the cap to at least {crossings}")]
    CapExceeded { crossings: usize, cap: usize },

    #[error("graph has {vertices} vertices, above the limit of {cap}")]
    WidthCap { vertices: usize, cap: usize },

    #[error("chord {0} is not on this circle")]
    ChordNotOnCircle(usize),

    #[error("bad chord word: {0}")]
    ChordWord(String),

    #[error("chords {0} and {1} are on the same side of the circle and interleave")]
    NonPlanarChordFamily(usize, usize),

    #[error("diagram violates a skeleton precondition: {0}")]
    Hypothesis(String),

    #[error("internal inconsistency: {0}")]
    Internal(String),

    #[error("graph input: {0}")]
    GraphSyntax(String),
}
