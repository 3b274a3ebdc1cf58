//! Checking a walk as a snake: self-avoidance, the one-transposition distance
//! constraint, and Hamiltonicity in `A_n`.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::{alternating_order, factorial, Permutation};
use crate::sequence::GenSequence;

/// Largest `n` the verifier accepts; the visited set holds one bit per
/// element of `S_n`.
pub const VERIFY_MAX_N: usize = 12;

/// Violations kept in a report; counting continues past the cap.
pub const MAX_REPORTED_VIOLATIONS: usize = 1000;

const SEGMENT: usize = 1 << 15;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum VerifyMode {
    /// The walk must stay in `A_n`: even start, odd generators.
    #[default]
    Alternating,
    /// Any walk in `S_n`.
    Symmetric,
}

/// Two walk positions and what is wrong with them.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Violation(pub u64, pub u64, pub String);

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SnakeReport {
    pub length: u64,
    pub is_cycle: bool,
    #[serde(rename = "is_hamiltonian_in_An")]
    pub is_hamiltonian_in_an: bool,
    pub min_pairwise_kendall_ok: bool,
    pub generator_histogram: BTreeMap<u8, u64>,
    pub violations: Vec<Violation>,
    #[serde(skip)]
    pub self_avoiding: bool,
    #[serde(skip)]
    pub generators_ok: bool,
    #[serde(skip)]
    pub violation_count: u64,
}

impl SnakeReport {
    /// Distinct vertices, no two at Kendall distance one, and (in `A_n` mode)
    /// no step leaving `A_n`.
    pub fn is_valid(&self) -> bool {
        self.self_avoiding && self.min_pairwise_kendall_ok && self.generators_ok
    }
}

impl fmt::Display for SnakeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "length: {}", self.length)?;
        writeln!(f, "is_cycle: {}", self.is_cycle)?;
        writeln!(f, "is_hamiltonian_in_An: {}", self.is_hamiltonian_in_an)?;
        writeln!(
            f,
            "min_pairwise_kendall_ok: {}",
            self.min_pairwise_kendall_ok
        )?;
        let hist: Vec<String> = self
            .generator_histogram
            .iter()
            .map(|(k, c)| format!("{k}:{c}"))
            .collect();
        writeln!(f, "generator_histogram: {}", hist.join(" "))?;
        writeln!(f, "violations: {}", self.violation_count)?;
        for Violation(i, j, reason) in &self.violations {
            writeln!(f, "violation: {i} {j} {reason}")?;
        }
        Ok(())
    }
}

#[derive(Default)]
struct Collected {
    kept: Vec<Violation>,
    total: u64,
}

impl Collected {
    fn push(&mut self, v: Violation) {
        self.total += 1;
        if self.kept.len() < MAX_REPORTED_VIOLATIONS {
            self.kept.push(v);
        }
    }
}

/// Lexicographic rank together with the Lehmer digits it is built from.
#[inline]
fn rank_with_digits(p: &[u8], digits: &mut [u8]) -> u64 {
    let n = p.len();
    let mut remaining: u32 = ((1u32 << (n + 1)) - 1) & !1;
    let mut rank = 0u64;
    for (i, &v) in p.iter().enumerate() {
        let d = (remaining & ((1u32 << v) - 1)).count_ones();
        remaining &= !(1 << v);
        digits[i] = d as u8;
        rank += d as u64 * factorial(n - 1 - i);
    }
    rank
}

/// Rank of `p` with the 0-based positions `i`, `i + 1` exchanged, from the
/// rank and digits of `p`.
#[inline]
pub(crate) fn swapped_rank(p: &[u8], digits: &[u8], rank: u64, i: usize) -> u64 {
    let n = p.len();
    let (a, b) = (p[i], p[i + 1]);
    let li = digits[i + 1] as i64 + (a < b) as i64;
    let lj = digits[i] as i64 - (b < a) as i64;
    let wi = factorial(n - 1 - i) as i64;
    let wj = factorial(n - 2 - i) as i64;
    (rank as i64 + (li - digits[i] as i64) * wi + (lj - digits[i + 1] as i64) * wj) as u64
}

struct Bits(Vec<AtomicU64>);

impl Bits {
    fn new(len: u64) -> Bits {
        Bits((0..len.div_ceil(64)).map(|_| AtomicU64::new(0)).collect())
    }

    /// Sets the bit and reports whether it was already set.
    fn set(&self, i: u64) -> bool {
        let mask = 1u64 << (i % 64);
        self.0[(i / 64) as usize].fetch_or(mask, Ordering::Relaxed) & mask != 0
    }

    fn get(&self, i: u64) -> bool {
        self.0[(i / 64) as usize].load(Ordering::Relaxed) & (1u64 << (i % 64)) != 0
    }
}

/// Verifies in `A_n` mode when the walk starts at an even permutation and
/// uses only odd generators, in `S_n` mode otherwise.
pub fn verify_snake(c: &GenSequence) -> Result<SnakeReport> {
    let alt = c.start().is_even() && c.gens().iter().all(|&k| k % 2 == 1);
    verify_snake_in(
        c,
        if alt {
            VerifyMode::Alternating
        } else {
            VerifyMode::Symmetric
        },
    )
}

pub fn verify_snake_in(c: &GenSequence, mode: VerifyMode) -> Result<SnakeReport> {
    let n = c.n();
    if n > VERIFY_MAX_N {
        return Err(Error::Unsupported {
            n,
            reason: format!("verification is limited to n <= {VERIFY_MAX_N}"),
        });
    }
    let closed = c.is_closed();
    let count = if closed { c.len() } else { c.len() + 1 };

    let mut histogram = BTreeMap::new();
    for &k in c.gens() {
        *histogram.entry(k).or_insert(0u64) += 1;
    }

    let mut out = Collected::default();

    let mut generators_ok = true;
    if mode == VerifyMode::Alternating {
        if !c.start().is_even() {
            generators_ok = false;
            out.push(Violation(0, 0, "odd start vertex".into()));
        }
        for (i, &k) in c.gens().iter().enumerate() {
            if k % 2 == 0 {
                generators_ok = false;
                out.push(Violation(
                    i as u64,
                    i as u64 + 1,
                    format!("even generator tau_{k}"),
                ));
            }
        }
    }

    let generator_violations = out.total;

    // Segment starts, one every SEGMENT vertices.
    let mut starts = Vec::with_capacity(count / SEGMENT + 1);
    let mut p = c.start();
    for (i, &k) in c.gens().iter().enumerate() {
        if i % SEGMENT == 0 {
            starts.push(p);
        }
        p.apply_generator(k as usize);
    }
    if count > c.len() && c.len() % SEGMENT == 0 {
        starts.push(p);
    }

    let segment = |s: usize| -> (Permutation, std::ops::Range<usize>) {
        let lo = s * SEGMENT;
        (starts[s], lo..count.min(lo + SEGMENT))
    };

    // Phase A: mark every vertex, remembering ranks seen twice.
    let seen = Bits::new(factorial(n));
    let repeats: Mutex<HashSet<u64>> = Mutex::new(HashSet::new());
    let repeat_total = AtomicU64::new(0);
    (0..starts.len()).into_par_iter().for_each(|s| {
        let (mut p, range) = segment(s);
        let mut digits = [0u8; 16];
        let mut local = Vec::new();
        for i in range {
            let r = rank_with_digits(p.as_slice(), &mut digits);
            if seen.set(r) {
                local.push(r);
            }
            if let Some(&k) = c.gens().get(i) {
                p.apply_generator(k as usize);
            }
        }
        if !local.is_empty() {
            repeat_total.fetch_add(local.len() as u64, Ordering::Relaxed);
            let mut all = repeats.lock().expect("no panics while locked");
            for r in local {
                if all.len() >= MAX_REPORTED_VIOLATIONS {
                    break;
                }
                all.insert(r);
            }
        }
    });
    let repeats = repeats.into_inner().expect("no panics while locked");
    let repeat_total = repeat_total.into_inner();

    // Phase B: probe the Kendall neighbours of every vertex.
    let kendall: Mutex<Vec<(u64, u64)>> = Mutex::new(Vec::new());
    let kendall_total = AtomicU64::new(0);
    (0..starts.len()).into_par_iter().for_each(|s| {
        let (mut p, range) = segment(s);
        let mut digits = [0u8; 16];
        let mut local = Vec::new();
        for i in range {
            let slice = p.as_slice();
            let r = rank_with_digits(slice, &mut digits);
            for j in 0..n.saturating_sub(1) {
                let nb = swapped_rank(slice, &digits, r, j);
                if r < nb && seen.get(nb) {
                    local.push((r, nb));
                }
            }
            if let Some(&k) = c.gens().get(i) {
                p.apply_generator(k as usize);
            }
        }
        if !local.is_empty() {
            kendall_total.fetch_add(local.len() as u64, Ordering::Relaxed);
            let mut all = kendall.lock().expect("no panics while locked");
            let room = MAX_REPORTED_VIOLATIONS.saturating_sub(all.len());
            all.extend(local.into_iter().take(room));
        }
    });
    let kendall = kendall.into_inner().expect("no panics while locked");
    let kendall_total = kendall_total.into_inner();

    // Resolve ranks to walk positions only when something is wrong.
    if !repeats.is_empty() || !kendall.is_empty() {
        let mut wanted: HashSet<u64> = repeats.clone();
        for &(a, b) in &kendall {
            wanted.insert(a);
            wanted.insert(b);
        }
        let mut positions: HashMap<u64, Vec<u64>> = HashMap::new();
        let mut digits = [0u8; 16];
        for (i, v) in c.walk().take(count).enumerate() {
            let r = rank_with_digits(v.as_slice(), &mut digits);
            if wanted.contains(&r) {
                let list = positions.entry(r).or_default();
                if list.len() <= MAX_REPORTED_VIOLATIONS {
                    list.push(i as u64);
                }
            }
        }
        let mut found = Vec::new();
        for r in &repeats {
            let pos = &positions[r];
            for w in pos.windows(2) {
                found.push(Violation(w[0], w[1], "repeated vertex".into()));
            }
        }
        found.sort();
        let mut kfound: Vec<Violation> = kendall
            .iter()
            .map(|(a, b)| {
                let (i, j) = (positions[a][0], positions[b][0]);
                Violation(i.min(j), i.max(j), "kendall distance 1".into())
            })
            .collect();
        kfound.sort();
        for v in found.into_iter().chain(kfound) {
            out.push(v);
        }
    }
    // Violations past the caps are counted but not listed.
    out.total = generator_violations + repeat_total + kendall_total;

    let self_avoiding = repeat_total == 0;
    let kendall_ok = kendall_total == 0;
    let all_even = c.start().is_even() && c.gens().iter().all(|&k| k % 2 == 1);
    let is_hamiltonian =
        closed && self_avoiding && all_even && count as u64 == alternating_order(n);

    Ok(SnakeReport {
        length: count as u64,
        is_cycle: closed,
        is_hamiltonian_in_an: is_hamiltonian,
        min_pairwise_kendall_ok: kendall_ok,
        generator_histogram: histogram,
        violations: out.kept,
        self_avoiding,
        generators_ok,
        violation_count: out.total,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn seq(start: &str, gens: &[u8]) -> GenSequence {
        GenSequence::new(start.parse().unwrap(), gens.to_vec()).unwrap()
    }

    #[test]
    fn empty_sequence_is_a_single_vertex() {
        let r = verify_snake(&seq("1 2 3 4", &[])).unwrap();
        assert_eq!(r.length, 1);
        assert!(!r.is_cycle);
        assert!(r.min_pairwise_kendall_ok);
        assert!(r.is_valid());
    }

    #[test]
    fn tau2_pair_is_a_kendall_violation() {
        let r = verify_snake_in(&seq("1 2 3", &[2, 2]), VerifyMode::Symmetric).unwrap();
        assert_eq!(r.length, 2);
        assert!(r.is_cycle);
        assert!(!r.min_pairwise_kendall_ok);
        assert_eq!(
            r.violations,
            vec![Violation(0, 1, "kendall distance 1".into())]
        );

        let r = verify_snake_in(&seq("1 2 3", &[2, 2]), VerifyMode::Alternating).unwrap();
        assert!(!r.generators_ok);
        assert!(!r.is_valid());
    }

    #[test]
    fn repeats_are_reported_with_positions() {
        // tau_3 three times returns to the start; once more repeats vertex 1.
        let r = verify_snake(&seq("1 2 3 4", &[3, 3, 3, 3])).unwrap();
        assert!(!r.is_cycle);
        assert!(!r.self_avoiding);
        assert_eq!(r.length, 5);
        assert!(r
            .violations
            .contains(&Violation(0, 3, "repeated vertex".into())));
        assert!(r
            .violations
            .contains(&Violation(1, 4, "repeated vertex".into())));
        assert_eq!(r.violation_count, 2);
    }

    #[test]
    fn a3_triangle_is_hamiltonian() {
        let r = verify_snake(&seq("1 2 3", &[3, 3, 3])).unwrap();
        assert!(r.is_hamiltonian_in_an && r.is_valid());
        assert_eq!(r.generator_histogram, BTreeMap::from([(3, 3)]));
    }

    #[test]
    fn odd_start_in_alternating_mode() {
        let r = verify_snake_in(&seq("2 1 3", &[3, 3, 3]), VerifyMode::Alternating).unwrap();
        assert!(!r.generators_ok);
        assert!(!r.is_hamiltonian_in_an);
        assert_eq!(r.violations[0], Violation(0, 0, "odd start vertex".into()));
    }

    #[test]
    fn violation_list_is_capped() {
        // Alternating tau_2 / tau_3 steps in S_6 produce many Kendall pairs.
        let gens: Vec<u8> = (0..5000).map(|i| if i % 2 == 0 { 2 } else { 3 }).collect();
        let r = verify_snake_in(&seq("1 2 3 4 5 6", &gens), VerifyMode::Symmetric).unwrap();
        assert!(r.violation_count as usize > MAX_REPORTED_VIOLATIONS);
        assert_eq!(r.violations.len(), MAX_REPORTED_VIOLATIONS);
    }

    #[test]
    fn long_walk_crosses_segments() {
        // 20 000 tau_5 steps in S_7 cycle with period 5.
        let gens = vec![5u8; 3 * SEGMENT + 7];
        let r = verify_snake(&seq("1 2 3 4 5 6 7", &gens)).unwrap();
        assert!(!r.self_avoiding);
        assert_eq!(r.violation_count, (3 * SEGMENT + 7 + 1 - 5) as u64);
    }

    proptest! {
        #[test]
        fn incremental_neighbour_rank(
            v in Just((1u8..=9).collect::<Vec<u8>>()).prop_shuffle(),
            i in 0usize..8,
        ) {
            let p = Permutation::from_slice(&v).unwrap();
            let mut digits = [0u8; 16];
            let r = rank_with_digits(p.as_slice(), &mut digits);
            prop_assert_eq!(r, p.lex_rank());
            let q = p.swap_adjacent(i + 1);
            prop_assert_eq!(swapped_rank(p.as_slice(), &digits, r, i), q.lex_rank());
        }
    }
}
