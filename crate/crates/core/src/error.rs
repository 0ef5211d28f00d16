use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DeltaError {
    #[error("monotone map must have a nonempty source")]
    EmptySource,
    #[error("values {0:?} are not weakly increasing")]
    NotMonotone(Vec<usize>),
    #[error("value {value} exceeds target rank {target_rank}")]
    ValueOutOfRange { value: usize, target_rank: usize },
    #[error("rank mismatch: expected [{expected}], found [{found}]")]
    RankMismatch { expected: usize, found: usize },
    #[error("operator index {index} invalid at rank {rank}")]
    BadOperatorIndex { rank: usize, index: usize },
    #[error("degeneracy word {0:?} is not strictly decreasing")]
    WordNotDecreasing(Vec<usize>),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BuildError {
    #[error("duplicate generator name `{0}`")]
    DuplicateName(String),
    #[error("generator `{generator}` has {found} faces, expected {expected}")]
    FaceCount {
        generator: String,
        expected: usize,
        found: usize,
    },
    #[error("face {index} of `{generator}` refers to missing generator `{target}`")]
    MissingFaceTarget {
        generator: String,
        index: usize,
        target: String,
    },
    #[error("face {index} of `{generator}` has dimension {found}, expected {expected}")]
    FaceDimension {
        generator: String,
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("face {index} of `{generator}` has an invalid degeneracy word: {reason}")]
    BadWord {
        generator: String,
        index: usize,
        reason: DeltaError,
    },
    #[error("simplicial identity d_{i} d_{j} = d_{jm1} d_{i} fails on `{generator}`", jm1 = .j - 1)]
    SimplicialIdentity { generator: String, i: usize, j: usize },
    #[error("dimension {0} exceeds the supported maximum")]
    DimensionTooLarge(usize),
    #[error("generator `{0}` listed out of canonical order")]
    NotCanonical(String),
    #[error("subcomplex is not closed under faces at `{0}`")]
    NotClosed(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MapError {
    #[error("no image given for generator `{0}`")]
    MissingImage(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("image of `{generator}` has dimension {found}, expected {expected}")]
    DimensionMismatch {
        generator: String,
        expected: usize,
        found: usize,
    },
    #[error("face {index} of `{generator}` is not preserved")]
    FaceIncompatible { generator: String, index: usize },
    #[error("maps are not composable")]
    NotComposable,
    #[error("maps do not share a {0}")]
    Mismatch(&'static str),
    #[error("invalid degeneracy word for `{generator}`: {reason}")]
    BadWord { generator: String, reason: DeltaError },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CategoryError {
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("unknown morphism `{0}`")]
    UnknownMorphism(String),
    #[error("duplicate name `{0}`")]
    Duplicate(String),
    #[error("missing identity for `{0}`")]
    MissingIdentity(String),
    #[error("composite of `{g}` after `{f}` is undefined")]
    MissingComposite { f: String, g: String },
    #[error("composite of `{g}` after `{f}` has the wrong endpoints")]
    BadComposite { f: String, g: String },
    #[error("identity law fails at `{0}`")]
    IdentityLaw(String),
    #[error("associativity fails at ({f}, {g}, {h})")]
    Associativity { f: String, g: String, h: String },
    #[error("nerve of a category with a nontrivial cycle is infinite; give a truncation")]
    InfiniteNerve,
    #[error("functor is not well defined: {0}")]
    BadFunctor(String),
    #[error("profunctor action is not well defined: {0}")]
    BadProfunctor(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    Delta(#[from] DeltaError),
    #[error(transparent)]
    Build(#[from] BuildError),
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Category(#[from] CategoryError),
    #[error("invalid horn Λ^{k}[{n}]")]
    InvalidHorn { n: usize, k: usize },
    #[error("map is not a monomorphism")]
    NotMono,
    #[error("lifting square does not commute at `{0}`")]
    NonCommutingSquare(String),
    #[error("budget must be positive: {0}")]
    BadBudget(&'static str),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("size limit exceeded: {0}")]
    SizeLimit(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
