//! Lifting a Hamiltonian cycle of `A_{n-2}` to one of `A_n`.
//!
//! The permutations of `A_n` split into the classes `A_n(a,b)` of those ending
//! in `a, b`. Replaying the smaller cycle from any vertex of a class stays in
//! that class, so each class can host a relabelled copy of the smaller cycle.
//! The copies are linked one hyperedge at a time: a six-fold linkage for the
//! first hyperedge, then a three-fold linkage (two new classes) per triangle.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::hypergraph::{Hyperedge, Hypergraph, OrderedHyperedge, Pair};
use crate::perm::{alternating_order, Permutation};
use crate::sequence::GenSequence;

/// For each element `i` of `[m]`, the first position `p` of a Hamiltonian
/// cycle of `A_m` whose permutation ends in `i` and is followed by `tau_m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PenultimateTable {
    positions: Vec<usize>,
}

impl PenultimateTable {
    pub fn new(cycle: &GenSequence) -> Result<PenultimateTable> {
        let m = cycle.n();
        if !cycle.is_closed() {
            return Err(Error::NotHamiltonian("sequence is not closed".into()));
        }
        let mut positions = vec![usize::MAX; m];
        for (p, (perm, &k)) in cycle.walk().zip(cycle.gens()).enumerate() {
            let slot = &mut positions[perm.last() as usize - 1];
            if k as usize == m && *slot == usize::MAX {
                *slot = p;
            }
        }
        if let Some(i) = positions.iter().position(|&p| p == usize::MAX) {
            return Err(Error::NotHamiltonian(format!(
                "no vertex ending in {} is followed by tau_{m}",
                i + 1
            )));
        }
        Ok(PenultimateTable { positions })
    }

    /// Position for element `i` (1-based).
    pub fn position(&self, i: u8) -> usize {
        self.positions[i as usize - 1]
    }

    pub fn positions(&self) -> &[usize] {
        &self.positions
    }
}

pub fn penultimate_table(cycle: &GenSequence) -> Result<PenultimateTable> {
    PenultimateTable::new(cycle)
}

fn first_occurrence(cycle: &GenSequence, k: usize) -> Result<usize> {
    cycle
        .gens()
        .iter()
        .position(|&g| g as usize == k)
        .ok_or(Error::GeneratorAbsent(k))
}

/// The cycle's generators read from just after the first `tau_k`, with that
/// `tau_k` left out. They compose to `tau_k^{-1}`.
pub fn rotate_cut(cycle: &GenSequence, k: usize) -> Result<Vec<u8>> {
    let p = first_occurrence(cycle, k)?;
    let gens = cycle.gens();
    Ok(gens[p + 1..].iter().chain(&gens[..p]).copied().collect())
}

const UNASSIGNED: u8 = 0;

/// A path segment `L[tau_k]`: its generators plus the prefix index of the
/// smaller cycle at which the segment starts.
struct Segment {
    gens: Vec<u8>,
    start: usize,
}

/// Step-by-step construction of a Hamiltonian cycle of `A_n` from one of
/// `A_{n-2}`; exposes the partial cover between steps.
pub struct InductiveBuilder {
    n: usize,
    /// `prefixes[t]` is the product of the first `t` generators of the smaller
    /// cycle, embedded in `S_n`.
    prefixes: Vec<Permutation>,
    penultimate: PenultimateTable,
    hi: Segment,
    lo: Segment,
    succ: Vec<u8>,
    /// For every linked class, the vertex `pi_0` such that the class is visited
    /// as `pi_0 * prefixes[t]`.
    bases: HashMap<Pair, Permutation>,
    order: Vec<OrderedHyperedge>,
    next_step: usize,
    assigned: usize,
}

impl InductiveBuilder {
    pub fn new(lower: &GenSequence) -> Result<InductiveBuilder> {
        let m = lower.n();
        let n = m + 2;
        if n < 9 || n % 2 == 0 {
            return Err(Error::Unsupported {
                n,
                reason: "the inductive step needs odd n >= 9".into(),
            });
        }
        if !lower.start().is_identity() {
            return Err(Error::InvalidArgument(
                "the smaller cycle must start at the identity".into(),
            ));
        }
        if lower.len() as u64 != alternating_order(m) || !lower.is_closed() {
            return Err(Error::NotHamiltonian(format!(
                "expected a closed walk of length {}",
                alternating_order(m)
            )));
        }
        if lower.gens().iter().any(|&k| k % 2 == 0) {
            return Err(Error::NotHamiltonian("uses an even generator".into()));
        }

        let mut prefixes = Vec::with_capacity(lower.len() + 1);
        let mut p = Permutation::identity(n);
        prefixes.push(p);
        for &k in lower.gens() {
            p.apply_generator(k as usize);
            prefixes.push(p);
        }

        let segment = |k: usize| -> Result<Segment> {
            Ok(Segment {
                gens: rotate_cut(lower, k)?,
                start: first_occurrence(lower, k)? + 1,
            })
        };
        let hi = segment(n - 2)?;
        let lo = segment(n - 4)?;

        let nn = n as u8;
        let tuple = [nn - 4, nn - 3, nn - 2, nn - 1, nn];
        let order = Hypergraph::build_connected(n, tuple)?.order_hyperedges()?;

        Ok(InductiveBuilder {
            n,
            prefixes,
            penultimate: PenultimateTable::new(lower)?,
            hi,
            lo,
            succ: vec![UNASSIGNED; alternating_order(n) as usize],
            bases: HashMap::new(),
            order,
            next_step: 0,
            assigned: 0,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Hyperedges in the order they are linked.
    pub fn schedule(&self) -> &[OrderedHyperedge] {
        &self.order
    }

    /// Number of steps performed so far.
    pub fn steps_done(&self) -> usize {
        self.next_step
    }

    pub fn is_finished(&self) -> bool {
        self.next_step == self.order.len()
    }

    /// Number of vertices on the current cycle.
    pub fn vertex_count(&self) -> usize {
        self.assigned
    }

    /// Current labels by even rank; `0` marks vertices not yet on the cycle.
    pub fn labels(&self) -> &[u8] {
        &self.succ
    }

    /// Suffix classes merged so far.
    pub fn linked_classes(&self) -> Vec<Pair> {
        let mut classes: Vec<Pair> = self.bases.keys().copied().collect();
        classes.sort_unstable();
        classes
    }

    /// Performs the next step: the six-fold start, or one triangle splice.
    pub fn step(&mut self) -> Result<()> {
        if self.is_finished() {
            return Err(Error::Construction(
                "all hyperedges are already linked".into(),
            ));
        }
        let item = self.order[self.next_step];
        match (self.next_step, item.edge, item.shared) {
            (0, Hyperedge::Hexad(..), None) => self.step_zero(&item.edge)?,
            (_, Hyperedge::Triangle(t), Some(shared)) => {
                let [a, b, c] = t.rotated_to_tail(shared).ok_or_else(|| {
                    Error::Construction(format!("shared pair {shared} not in triangle"))
                })?;
                self.splice(a, b, c)?;
            }
            _ => {
                return Err(Error::Construction(format!(
                    "unexpected hyperedge at step {}",
                    self.next_step
                )))
            }
        }
        self.next_step += 1;
        Ok(())
    }

    /// Writes `gens` along the walk from `from`, recording the base of every
    /// class entered right after a `tau_n`. Returns the vertex reached.
    fn write_block(&mut self, from: Permutation, blocks: &[(bool, bool)]) -> Result<Permutation> {
        // Each block is a tau_n edge followed, unless it is the closing edge,
        // by a hi (`true`) or lo (`false`) segment.
        let n = self.n;
        let mut p = from;
        for &(has_segment, use_hi) in blocks {
            self.assign(&p, n as u8)?;
            p.apply_generator(n);
            if !has_segment {
                continue;
            }
            let seg = if use_hi { &self.hi } else { &self.lo };
            let base = p.compose_unchecked(&self.prefixes[seg.start].inverse());
            let class = Pair(p.suffix_pair().0, p.suffix_pair().1);
            if self.bases.insert(class, base).is_some() {
                return Err(Error::Construction(format!("class {class} linked twice")));
            }
            let gens = if use_hi {
                std::mem::take(&mut self.hi.gens)
            } else {
                std::mem::take(&mut self.lo.gens)
            };
            let res = gens.iter().try_for_each(|&k| {
                self.assign(&p, k)?;
                p.apply_generator(k as usize);
                Ok(())
            });
            if use_hi {
                self.hi.gens = gens;
            } else {
                self.lo.gens = gens;
            }
            res?;
        }
        Ok(p)
    }

    fn assign(&mut self, p: &Permutation, k: u8) -> Result<()> {
        let slot = &mut self.succ[p.rank_even_unchecked()];
        if *slot != UNASSIGNED {
            return Err(Error::Construction(format!("vertex [{p}] reached twice")));
        }
        *slot = k;
        self.assigned += 1;
        Ok(())
    }

    fn step_zero(&mut self, hexad: &Hyperedge) -> Result<()> {
        let id = Permutation::identity(self.n);
        let half = [(true, true), (true, false), (true, false)];
        let blocks: Vec<(bool, bool)> = half.iter().chain(&half).copied().collect();
        let end = self.write_block(id, &blocks)?;
        if end != id {
            return Err(Error::Construction(format!(
                "first cycle ends at [{end}] instead of the identity"
            )));
        }
        let mut expected = hexad.vertices();
        expected.sort_unstable();
        if self.linked_classes() != expected {
            return Err(Error::Construction(
                "first cycle does not cover the classes of the 6-hyperedge".into(),
            ));
        }
        Ok(())
    }

    /// The vertex `[.., a, b, c]` of class `(b, c)` that is followed by
    /// `tau_{n-2}` on the relabelled copy of the smaller cycle.
    pub fn splice_target(&self, a: u8, b: u8, c: u8) -> Result<Permutation> {
        let base = self
            .bases
            .get(&Pair(b, c))
            .ok_or_else(|| Error::Construction(format!("class ({b},{c}) not linked yet")))?;
        let element = base.position_of(a);
        if element > self.n - 2 {
            return Err(Error::Construction(format!(
                "({a},{b},{c}) is not a triple"
            )));
        }
        let t = self.penultimate.position(element as u8);
        Ok(base.compose_unchecked(&self.prefixes[t]))
    }

    fn splice(&mut self, a: u8, b: u8, c: u8) -> Result<()> {
        let n = self.n;
        let v = self.splice_target(a, b, c)?;
        let s = v.as_slice();
        if s[n - 3..] != [a, b, c] {
            return Err(Error::Construction(format!(
                "splice target [{v}] does not end in {a},{b},{c}"
            )));
        }
        let r = v.rank_even_unchecked();
        if self.succ[r] != (n - 2) as u8 {
            return Err(Error::Construction(format!(
                "splice target [{v}] is followed by tau_{}, not tau_{}",
                self.succ[r],
                n - 2
            )));
        }
        self.succ[r] = UNASSIGNED;
        self.assigned -= 1;
        let end = self.write_block(v, &[(true, true), (true, true), (false, true)])?;
        if end != v.then_generator(n - 2) {
            return Err(Error::Construction(format!(
                "splice at [{v}] closes at [{end}] instead of its old successor"
            )));
        }
        Ok(())
    }

    /// Runs all remaining steps and reads off the cycle from the identity.
    pub fn finish(mut self) -> Result<GenSequence> {
        while !self.is_finished() {
            self.step()?;
        }
        let total = self.succ.len();
        if self.assigned != total {
            return Err(Error::Construction(format!(
                "{} of {total} vertices covered",
                self.assigned
            )));
        }
        let start = Permutation::identity(self.n);
        let mut gens = Vec::with_capacity(total);
        let mut p = start;
        loop {
            let k = self.succ[p.rank_even_unchecked()];
            gens.push(k);
            p.apply_generator(k as usize);
            if p == start || gens.len() > total {
                break;
            }
        }
        if gens.len() != total {
            return Err(Error::Construction(format!(
                "result closes after {} of {total} vertices",
                gens.len()
            )));
        }
        Ok(GenSequence::new_unchecked(start, gens))
    }
}

/// A Hamiltonian cycle of `A_n` (from the identity, containing `tau_{n-2}`)
/// built from a Hamiltonian cycle of `A_{n-2}` that contains `tau_{n-4}`.
pub fn inductive_step(lower: &GenSequence) -> Result<GenSequence> {
    let built = InductiveBuilder::new(lower)?.finish()?;
    if !built.gens().contains(&((built.n() - 2) as u8)) {
        return Err(Error::Construction(format!(
            "result has no tau_{} edge",
            built.n() - 2
        )));
    }
    Ok(built)
}
