use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("generator index must be nonzero")]
    ZeroGenerator,
    #[error("generator m{gen} out of range for {n} components")]
    GeneratorOutOfRange { gen: u32, n: usize },
    #[error("reduced Magnus algebra supports at most {max} generators, got {n}")]
    TooManyGenerators { n: usize, max: usize },
    #[error("index sequence {0:?} repeats an index")]
    RepeatedIndex(Vec<u32>),
    #[error("index sequence needs at least two indices, got {0}")]
    IndexSequenceTooShort(usize),
    #[error("presentation declares {declared} components but has {found} longitudes")]
    LongitudeCount { declared: usize, found: usize },
    #[error("presentation has {labels} labels for {n} components")]
    LabelCount { labels: usize, n: usize },
    #[error("unknown link {0:?}")]
    UnknownLink(String),
    #[error("malformed doubling schedule: {0}")]
    MalformedSchedule(String),
    #[error("unknown fixture {0:?}")]
    UnknownFixture(String),
    #[error("invalid decomposition tree: {0}")]
    InvalidDecomposition(String),
    #[error("invalid cell counts: {0}")]
    InvalidCellCounts(String),
    #[error("malformed Bing cell tree: {0}")]
    MalformedCellTree(String),
    #[error("unknown vertex id {0}")]
    UnknownVertex(usize),
    #[error("vertex {0} is not a body or handle vertex")]
    NotASurface(usize),
    #[error("invalid grope: {0}")]
    InvalidGrope(String),
    #[error("link has {components} components but {decompositions} decompositions were given")]
    DecompositionCount {
        components: usize,
        decompositions: usize,
    },
}
