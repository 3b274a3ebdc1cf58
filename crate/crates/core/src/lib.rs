//! Directed Hamiltonian cycles in the Cayley graph of the alternating group
//! generated by the jump-to-front permutations `tau_3, tau_5, ..., tau_n`,
//! together with the tools to check them as rank-modulation snake codes.

pub mod analysis;
pub mod cover;
pub mod error;
pub mod hamgen;
pub mod hypergraph;
pub mod perm;
pub mod sequence;

pub use cover::{AlternatingSite, SuccessorCover};
pub use error::{Error, Result};
pub use perm::{kendall_distance, EvenRank, Generator, Parity, Permutation, MAX_N};
pub use sequence::GenSequence;
