//! Rankin's criterion for the absence of a directed Hamiltonian cycle in a
//! Cayley digraph on two generators.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::perm::{Generator, Permutation};

/// Largest `n` for which [`RankinInstance::for_generators`] enumerates the
/// generated group.
pub const RANKIN_MAX_N: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RankinInstance {
    pub group_size: u64,
    pub order_a: u64,
    pub order_ab_inv: u64,
}

impl RankinInstance {
    pub fn new(group_size: u64, order_a: u64, order_ab_inv: u64) -> Result<RankinInstance> {
        if group_size == 0 || order_a == 0 || order_ab_inv == 0 {
            return Err(Error::InvalidArgument(
                "group size and orders must be positive".into(),
            ));
        }
        Ok(RankinInstance {
            group_size,
            order_a,
            order_ab_inv,
        })
    }

    /// The instance for `a = tau_a`, `b = tau_b` acting on `[n]`, with the
    /// group generated by the two found by closure.
    pub fn for_generators(n: usize, a: usize, b: usize) -> Result<RankinInstance> {
        if n > RANKIN_MAX_N {
            return Err(Error::Unsupported {
                n,
                reason: format!("group closure is limited to n <= {RANKIN_MAX_N}"),
            });
        }
        Generator::new(a, n)?;
        Generator::new(b, n)?;
        if a == b {
            return Err(Error::EqualGenerators(a));
        }
        let ta = Permutation::tau(a, n)?;
        let tb = Permutation::tau(b, n)?;
        RankinInstance::new(
            generated_group_size(n, &[a, b]),
            ta.order(),
            ta.compose_unchecked(&tb.inverse()).order(),
        )
    }
}

fn generated_group_size(n: usize, gens: &[usize]) -> u64 {
    let id = Permutation::identity(n);
    let mut seen = HashSet::from([id]);
    let mut queue = vec![id];
    while let Some(v) = queue.pop() {
        for &k in gens {
            let w = v.then_generator(k);
            if seen.insert(w) {
                queue.push(w);
            }
        }
    }
    seen.len() as u64
}

/// True when the criterion proves that no directed Hamiltonian cycle exists:
/// `order(ab^-1)` is odd and `|G| / order(a)` is even.
pub fn rankin_excludes(inst: &RankinInstance) -> Result<bool> {
    if inst.group_size % inst.order_a != 0 {
        return Err(Error::InvalidArgument(format!(
            "group size {} is not divisible by order {}",
            inst.group_size, inst.order_a
        )));
    }
    Ok(inst.order_ab_inv % 2 == 1 && (inst.group_size / inst.order_a) % 2 == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn criterion_examples() {
        assert!(rankin_excludes(&RankinInstance::new(60, 3, 3).unwrap()).unwrap());
        assert!(rankin_excludes(&RankinInstance::new(2520, 7, 3).unwrap()).unwrap());
        assert!(!rankin_excludes(&RankinInstance::new(60, 3, 4).unwrap()).unwrap());
        assert!(rankin_excludes(&RankinInstance::new(60, 7, 3).unwrap()).is_err());
        assert!(RankinInstance::new(0, 1, 1).is_err());
    }

    #[test]
    fn instances_from_generators() {
        assert_eq!(
            RankinInstance::for_generators(5, 3, 5).unwrap(),
            RankinInstance::new(60, 3, 3).unwrap()
        );
        assert_eq!(
            RankinInstance::for_generators(7, 7, 5).unwrap(),
            RankinInstance::new(2520, 7, 3).unwrap()
        );
        // tau_2 and tau_3 generate S_3; tau_3 has order 3, 6/3 = 2 is even,
        // but tau_3 tau_2^-1 is a transposition.
        let s3 = RankinInstance::for_generators(3, 3, 2).unwrap();
        assert_eq!(s3, RankinInstance::new(6, 3, 2).unwrap());
        assert!(!rankin_excludes(&s3).unwrap());
        assert!(RankinInstance::for_generators(11, 3, 5).is_err());
    }
}
