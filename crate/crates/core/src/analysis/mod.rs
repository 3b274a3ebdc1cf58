//! Verification, oracles and the small exact results.

pub mod rankin;
pub mod search;
pub mod verify;

pub use rankin::{rankin_excludes, RankinInstance};
pub use search::{
    longest_snake_search, longest_snake_search_with, SearchBudget, SearchOptions, SearchResult,
};
pub use verify::{verify_snake, verify_snake_in, SnakeReport, VerifyMode, Violation};

use crate::error::{Error, Result};
use crate::perm::{factorial, Permutation};
use crate::sequence::GenSequence;

/// One third of the 315-vertex snake in `S_6`; the full cycle repeats it
/// three times.
pub const M6_BLOCK: &str = "645535335555355535553355553555535553555533555355553364555335355335533535553555535553555335555355535555335";

pub const M6_LENGTH: usize = 315;

/// The 315-vertex snake in `S_6`, started at the identity.
pub fn m6_cycle() -> Result<GenSequence> {
    let block: Vec<u8> = M6_BLOCK.bytes().map(|b| b - b'0').collect();
    let gens = block.repeat(3);
    let c = GenSequence::new(Permutation::identity(6), gens)?;
    if c.len() != M6_LENGTH || !c.is_closed() {
        return Err(Error::Construction(
            "stored M6 sequence does not close".into(),
        ));
    }
    Ok(c)
}

/// `n!/2`, the size of the largest possible snake in `S_n`.
pub fn upper_bound(n: usize) -> Result<u64> {
    if !(2..=20).contains(&n) {
        return Err(Error::Unsupported {
            n,
            reason: "the bound is computed for 2 <= n <= 20".into(),
        });
    }
    Ok(factorial(n) / 2)
}
