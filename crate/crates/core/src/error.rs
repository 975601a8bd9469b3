use thiserror::Error;

/// Errors raised by the structural builders, the evaluators and the parsers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GreeneError {
    #[error("element {0} is outside 1..={1}")]
    OutOfRange(usize, usize),
    #[error("NotNaturallyLabeled: cover ({0},{1}) does not satisfy {0} < {1}")]
    NotNaturallyLabeled(usize, usize),
    #[error("RedundantCover: ({0},{1}) is implied by other covers")]
    RedundantCover(usize, usize),
    #[error("CycleDetected: cover relation contains a cycle")]
    CycleDetected,
    #[error("NotAForest: graph contains a cycle")]
    NotAForest,
    #[error("PoleCreated: substitution collapses the factor (x{0} - x{1})")]
    PoleCreated(usize, usize),
    #[error("pole at evaluation point: a denominator factor vanishes")]
    EvaluationPole,
    #[error("PivotAbsent: edges ({0},{1}) and ({1},{2}) are not both present")]
    PivotAbsent(usize, usize, usize),
    #[error("StrategyDiverged: reduction exceeded {0} steps")]
    StrategyDiverged(usize),
    #[error("NonForestTerm: a term of the formal sum contains a cycle")]
    NonForestTerm,
    #[error("NotAlternating: graph has edges (i,j),(j,k) with i<j<k")]
    NotAlternating,
    #[error("NotSpanningTree: tree is not a spanning tree of the graph")]
    NotSpanningTree,
    #[error("Disconnected: graph is not connected")]
    Disconnected,
    #[error("NotInImage: cell set is not a lattice path of the diagram")]
    NotInImage,
    #[error("EmptyDiagram: skew diagram has no rows or columns")]
    EmptyDiagram,
    #[error("invalid skew diagram: {0}")]
    InvalidSkew(String),
    #[error("EdgesCross: segments ({0},{1}) and ({2},{3}) intersect")]
    EdgesCross(usize, usize, usize, usize),
    #[error("NotUpward: cover ({0},{1}) is not drawn upward")]
    NotUpward(usize, usize),
    #[error("embedding is missing coordinates for element {0}")]
    MissingCoordinate(usize),
    #[error("RegionNotTwoChains: region has minima {0:?} and maxima {1:?}")]
    RegionNotTwoChains(Vec<usize>, Vec<usize>),
    #[error("face tracing failed the Euler check on a component")]
    EulerMismatch,
    #[error("NotANotch: ({0},{1},{2}) is not a notch")]
    NotANotch(usize, usize, usize),
    #[error("NotAdmissible: {0}")]
    NotAdmissible(String),
    #[error("no regions: supply an embedding or a regions section")]
    MissingRegions,
    #[error("variable universes differ")]
    UniverseMismatch,
    #[error("ParseError at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, GreeneError>;

impl GreeneError {
    pub fn parse(line: usize, msg: impl Into<String>) -> Self {
        GreeneError::Parse {
            line,
            msg: msg.into(),
        }
    }
}
