use thiserror::Error;

use crate::perm::{Permutation, MAX_N};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("size {0} is outside the supported range 1..={MAX_N}")]
    SizeOutOfRange(usize),

    #[error("generator tau_{k} is not defined for n = {n} (need 2 <= k <= n)")]
    GeneratorOutOfRange { k: usize, n: usize },

    #[error("generator tau_{0} is even and leaves the alternating group")]
    EvenGenerator(usize),

    #[error("generators must be distinct, got tau_{0} twice")]
    EqualGenerators(usize),

    #[error("entries {0:?} are not a permutation of 1..=n")]
    NotAPermutation(Vec<u8>),

    #[error("size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),

    #[error("permutation [{0}] is odd")]
    OddPermutation(Permutation),

    #[error("rank {rank} is out of range for n = {n}")]
    RankOutOfRange { rank: u64, n: usize },

    #[error(
        "linkage precondition fails at [{vertex}]: expected tau_{expected}, found tau_{found}"
    )]
    LinkPrecondition {
        vertex: Permutation,
        expected: u8,
        found: u8,
    },

    #[error("invalid cover: {0}")]
    InvalidCover(String),

    #[error("invalid hypergraph: {0}")]
    InvalidHypergraph(String),

    #[error("generator tau_{0} does not occur in the sequence")]
    GeneratorAbsent(usize),

    #[error("sequence is not a Hamiltonian cycle: {0}")]
    NotHamiltonian(String),

    #[error("construction failed: {0}")]
    Construction(String),

    #[error("unsupported size n = {n}: {reason}")]
    Unsupported { n: usize, reason: String },

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
