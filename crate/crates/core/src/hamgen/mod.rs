//! Construction of Hamiltonian cycles of `A_n` for odd `n >= 7`.

pub mod induction;
pub mod rules;

pub use induction::{
    inductive_step, penultimate_table, rotate_cut, InductiveBuilder, PenultimateTable,
};
pub use rules::{base_case_a7, RuleTable};

use crate::error::{Error, Result};
use crate::sequence::GenSequence;

/// Largest `n` that [`generate`] accepts without an explicit ceiling.
pub const DEFAULT_CEILING: usize = 11;

/// A Hamiltonian cycle of `A_n` starting at the identity.
pub fn generate(n: usize) -> Result<GenSequence> {
    generate_with_ceiling(n, DEFAULT_CEILING)
}

pub fn generate_with_ceiling(n: usize, ceiling: usize) -> Result<GenSequence> {
    if n % 2 == 0 {
        return Err(Error::Unsupported {
            n,
            reason: "only odd n is supported".into(),
        });
    }
    if n < 7 {
        let reason = if n == 5 {
            "A_5 has no such Hamiltonian cycle".to_string()
        } else {
            "n must be at least 7".to_string()
        };
        return Err(Error::Unsupported { n, reason });
    }
    let ceiling = ceiling.min(crate::perm::MAX_N);
    if n > ceiling {
        return Err(Error::Unsupported {
            n,
            reason: format!("n is above the ceiling {ceiling}"),
        });
    }
    let mut cycle = base_case_a7()?;
    while cycle.n() < n {
        cycle = inductive_step(&cycle)?;
    }
    Ok(cycle)
}
