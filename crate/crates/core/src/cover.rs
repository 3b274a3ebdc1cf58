//! Cycle covers of the Cayley graph of `A_n`, stored as the generator that
//! follows each vertex, and the linkage surgeries that merge their cycles.

use std::io::{self, BufRead, Write};

use crate::error::{Error, Result};
use crate::perm::{alternating_order, check_size, EvenRank, Permutation};
use crate::sequence::{parse_header, GenSequence};

/// One generator label per even permutation, indexed by [`EvenRank`].
#[derive(Clone, PartialEq, Eq)]
pub struct SuccessorCover {
    n: usize,
    succ: Vec<u8>,
}

impl std::fmt::Debug for SuccessorCover {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SuccessorCover")
            .field("n", &self.n)
            .field("vertices", &self.succ.len())
            .finish()
    }
}

impl SuccessorCover {
    /// The cover that follows `tau_k` from every vertex.
    pub fn single_generator(n: usize, k: usize) -> Result<SuccessorCover> {
        check_size(n)?;
        if !(3..=n).contains(&k) {
            return Err(Error::GeneratorOutOfRange { k, n });
        }
        if k % 2 == 0 {
            return Err(Error::EvenGenerator(k));
        }
        Ok(SuccessorCover {
            n,
            succ: vec![k as u8; alternating_order(n) as usize],
        })
    }

    /// Builds a cover from explicit labels, checking that every label is an odd
    /// generator and that every vertex receives exactly one incoming edge.
    pub fn from_labels(n: usize, succ: Vec<u8>) -> Result<SuccessorCover> {
        check_size(n)?;
        if succ.len() as u64 != alternating_order(n) {
            return Err(Error::InvalidCover(format!(
                "expected {} labels, found {}",
                alternating_order(n),
                succ.len()
            )));
        }
        let cover = SuccessorCover { n, succ };
        cover.validate()?;
        Ok(cover)
    }

    /// Builds the cover formed by a set of vertex-disjoint closed sequences
    /// that together visit all of `A_n`.
    pub fn from_sequences(n: usize, cycles: &[GenSequence]) -> Result<SuccessorCover> {
        check_size(n)?;
        let mut succ = vec![0u8; alternating_order(n) as usize];
        for seq in cycles {
            if seq.n() != n {
                return Err(Error::SizeMismatch(seq.n(), n));
            }
            if !seq.is_closed() {
                return Err(Error::InvalidCover("sequence is not closed".into()));
            }
            let mut p = seq.start();
            for &k in seq.gens() {
                let r = p.rank_even()?.0 as usize;
                if succ[r] != 0 {
                    return Err(Error::InvalidCover(format!("vertex [{p}] visited twice")));
                }
                succ[r] = k;
                p.apply_generator(k as usize);
            }
        }
        if let Some(r) = succ.iter().position(|&k| k == 0) {
            let p = Permutation::unrank_even(EvenRank(r as u64), n)?;
            return Err(Error::InvalidCover(format!("vertex [{p}] not covered")));
        }
        SuccessorCover::from_labels(n, succ)
    }

    pub fn validate(&self) -> Result<()> {
        let mut hit = vec![false; self.succ.len()];
        for (r, &k) in self.succ.iter().enumerate() {
            if k < 3 || k as usize > self.n || k % 2 == 0 {
                return Err(Error::InvalidCover(format!(
                    "rank {r} carries label {k}, not an odd generator of A_{}",
                    self.n
                )));
            }
            let p = Permutation::unrank_even(EvenRank(r as u64), self.n)?;
            let t = p.then_generator(k as usize).rank_even_unchecked();
            if std::mem::replace(&mut hit[t], true) {
                let target = p.then_generator(k as usize);
                return Err(Error::InvalidCover(format!(
                    "vertex [{target}] has two incoming edges"
                )));
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn labels(&self) -> &[u8] {
        &self.succ
    }

    pub fn label(&self, p: &Permutation) -> u8 {
        self.succ[p.rank_even_unchecked()]
    }

    pub fn successor(&self, p: &Permutation) -> Permutation {
        p.then_generator(self.label(p) as usize)
    }

    /// Cycle lengths, one per cycle, in order of each cycle's smallest rank.
    pub fn count_cycles(&self) -> Vec<usize> {
        self.cycle_ids().1
    }

    pub fn cycle_count(&self) -> usize {
        self.count_cycles().len()
    }

    /// The cycle index of every vertex, plus each cycle's length.
    pub fn cycle_ids(&self) -> (Vec<u32>, Vec<usize>) {
        let mut id = vec![u32::MAX; self.succ.len()];
        let mut lengths = Vec::new();
        for r in 0..self.succ.len() {
            if id[r] != u32::MAX {
                continue;
            }
            let c = lengths.len() as u32;
            let mut p =
                Permutation::unrank_even(EvenRank(r as u64), self.n).expect("rank within range");
            let mut idx = r;
            let mut len = 0;
            while id[idx] == u32::MAX {
                id[idx] = c;
                len += 1;
                p.apply_generator(self.succ[idx] as usize);
                idx = p.rank_even_unchecked();
            }
            lengths.push(len);
        }
        (id, lengths)
    }

    /// One closed sequence per cycle, each starting at its smallest-rank vertex.
    pub fn to_sequences(&self) -> Vec<GenSequence> {
        let mut seen = vec![false; self.succ.len()];
        let mut out = Vec::new();
        for r in 0..self.succ.len() {
            if seen[r] {
                continue;
            }
            let start =
                Permutation::unrank_even(EvenRank(r as u64), self.n).expect("rank within range");
            out.push(self.cycle_from(start, &mut seen));
        }
        out
    }

    /// The cycle through `start`, as a sequence beginning there.
    pub fn cycle_through(&self, start: &Permutation) -> GenSequence {
        let mut seen = vec![false; self.succ.len()];
        self.cycle_from(*start, &mut seen)
    }

    fn cycle_from(&self, start: Permutation, seen: &mut [bool]) -> GenSequence {
        let mut gens = Vec::new();
        let mut p = start;
        let mut idx = p.rank_even_unchecked();
        while !seen[idx] {
            seen[idx] = true;
            let k = self.succ[idx];
            gens.push(k);
            p.apply_generator(k as usize);
            idx = p.rank_even_unchecked();
        }
        GenSequence::new_unchecked(start, gens)
    }

    /// Replaces the `q` tau_k-edges of the alternating cycle at `site` with its
    /// tau_l-edges. Fails without modifying anything if some vertex of the site
    /// is not currently followed by tau_k.
    pub fn three_fold_link(&self, site: &AlternatingSite) -> Result<SuccessorCover> {
        self.check_site_size(&site.anchor)?;
        let targets: Vec<usize> = site
            .out_vertices()
            .iter()
            .map(|u| self.expect_label(u, site.k as u8))
            .collect::<Result<_>>()?;
        let mut next = self.clone();
        for r in targets {
            next.succ[r] = site.l as u8;
        }
        Ok(next)
    }

    /// Replaces the two tau_{n-2}- and four tau_{n-4}-edges of the length-12
    /// alternating cycle through `anchor` with its six tau_n-edges.
    pub fn six_fold_link(&self, anchor: &Permutation) -> Result<SuccessorCover> {
        self.check_site_size(anchor)?;
        let n = self.n;
        let labels = six_fold_labels(n)?;
        let out = six_fold_out_vertices(anchor, n);
        let targets: Vec<usize> = (0..6)
            .map(|i| self.expect_label(&out[i + 1], labels[i]))
            .collect::<Result<_>>()?;
        let mut next = self.clone();
        for r in targets {
            next.succ[r] = n as u8;
        }
        Ok(next)
    }

    /// The inverse surgery of [`six_fold_link`](Self::six_fold_link): six
    /// tau_n-edges are replaced by the tau_{n-2}/tau_{n-4} pattern.
    pub fn six_fold_unlink(&self, anchor: &Permutation) -> Result<SuccessorCover> {
        self.check_site_size(anchor)?;
        let n = self.n;
        let labels = six_fold_labels(n)?;
        let out = six_fold_out_vertices(anchor, n);
        let sources: Vec<usize> = (0..6)
            .map(|i| self.expect_label(&out[i], n as u8))
            .collect::<Result<_>>()?;
        let mut next = self.clone();
        for (i, _) in sources.iter().enumerate() {
            next.succ[out[i + 1].rank_even_unchecked()] = labels[i];
        }
        Ok(next)
    }

    fn check_site_size(&self, anchor: &Permutation) -> Result<()> {
        if anchor.n() != self.n {
            return Err(Error::SizeMismatch(anchor.n(), self.n));
        }
        if !anchor.is_even() {
            return Err(Error::OddPermutation(*anchor));
        }
        Ok(())
    }

    fn expect_label(&self, vertex: &Permutation, expected: u8) -> Result<usize> {
        let r = vertex.rank_even_unchecked();
        let found = self.succ[r];
        if found != expected {
            return Err(Error::LinkPrecondition {
                vertex: *vertex,
                expected,
                found,
            });
        }
        Ok(r)
    }

    /// Cover file format: `n=<n>` followed by one generator index per rank.
    pub fn write_text<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "n={}", self.n)?;
        let mut buf = Vec::with_capacity(self.succ.len() * 3);
        for &k in &self.succ {
            if k >= 10 {
                buf.push(b'0' + k / 10);
            }
            buf.push(b'0' + k % 10);
            buf.push(b'\n');
        }
        out.write_all(&buf)
    }

    pub fn read_text<R: BufRead>(input: R) -> Result<SuccessorCover> {
        let mut lines = input.lines();
        let mut next_line = |no: usize| -> Result<Option<String>> {
            lines.next().transpose().map_err(|e| Error::Parse {
                line: no,
                message: e.to_string(),
            })
        };
        let header = next_line(1)?;
        let n = parse_header(header.as_deref(), 1)?;
        let total = alternating_order(n) as usize;
        let mut succ = Vec::with_capacity(total);
        let mut line_no = 2;
        while let Some(line) = next_line(line_no)? {
            let t = line.trim();
            if t.is_empty() {
                line_no += 1;
                continue;
            }
            let k: u8 = t.parse().map_err(|_| Error::Parse {
                line: line_no,
                message: format!("bad generator index {t:?}"),
            })?;
            succ.push(k);
            line_no += 1;
        }
        SuccessorCover::from_labels(n, succ)
    }
}

/// An alternating cycle of length `2q` through `anchor`, with out-edges
/// labelled tau_k and tau_l where `q = |k - l| + 1`.
///
/// The anchor is the vertex whose out-edge along the cycle is the first
/// tau_l-edge; the `q` out-vertices are `anchor * (tau_l tau_k^{-1})^i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AlternatingSite {
    anchor: Permutation,
    k: usize,
    l: usize,
}

impl AlternatingSite {
    pub fn new(anchor: Permutation, k: usize, l: usize) -> Result<AlternatingSite> {
        let n = anchor.n();
        for g in [k, l] {
            if !(3..=n).contains(&g) {
                return Err(Error::GeneratorOutOfRange { k: g, n });
            }
            if g % 2 == 0 {
                return Err(Error::EvenGenerator(g));
            }
        }
        if k == l {
            return Err(Error::EqualGenerators(k));
        }
        if !anchor.is_even() {
            return Err(Error::OddPermutation(anchor));
        }
        Ok(AlternatingSite { anchor, k, l })
    }

    pub fn anchor(&self) -> Permutation {
        self.anchor
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn q(&self) -> usize {
        self.k.abs_diff(self.l) + 1
    }

    /// The `q` vertices with both a tau_k and a tau_l out-edge on the cycle.
    pub fn out_vertices(&self) -> Vec<Permutation> {
        let mut u = self.anchor;
        (0..self.q())
            .map(|_| {
                let here = u;
                u.apply_generator(self.l);
                u.apply_generator_inverse(self.k);
                here
            })
            .collect()
    }

    /// The `2q + 1` permutations met going around the cycle from the anchor
    /// back to itself: out-vertex, tau_l-successor, next out-vertex, ...
    pub fn vertices(&self) -> Vec<Permutation> {
        let mut rows = vec![self.anchor];
        let mut u = self.anchor;
        for _ in 0..self.q() {
            u.apply_generator(self.l);
            rows.push(u);
            u.apply_generator_inverse(self.k);
            rows.push(u);
        }
        rows
    }
}

/// The tau_{n-2}/tau_{n-4} labels met around the length-12 alternating cycle
/// whose ratios compose to the order-2 element
/// `tau_n tau_{n-2}^{-1} tau_n tau_{n-4}^{-1} tau_n tau_{n-4}^{-1}`.
fn six_fold_labels(n: usize) -> Result<[u8; 6]> {
    if n < 7 || n % 2 == 0 {
        return Err(Error::Unsupported {
            n,
            reason: "the six-fold linkage needs odd n >= 7".into(),
        });
    }
    let (a, b) = ((n - 2) as u8, (n - 4) as u8);
    Ok([a, b, b, a, b, b])
}

/// Out-vertices `u_0 = anchor, ..., u_6 = anchor`, with `u_{i+1} * tau_{k_i} = u_i * tau_n`.
fn six_fold_out_vertices(anchor: &Permutation, n: usize) -> [Permutation; 7] {
    let labels = six_fold_labels(n).expect("checked by caller");
    let mut out = [*anchor; 7];
    for i in 0..6 {
        out[i + 1] = out[i]
            .then_generator(n)
            .then_generator_inverse(labels[i] as usize);
    }
    out
}

/// The 13 permutations met going around the length-12 alternating cycle of
/// the six-fold linkage, from `anchor` back to itself.
pub fn six_fold_vertices(anchor: &Permutation) -> Result<Vec<Permutation>> {
    let n = anchor.n();
    let labels = six_fold_labels(n)?;
    let mut rows = vec![*anchor];
    let mut u = *anchor;
    for &k in &labels {
        u.apply_generator(n);
        rows.push(u);
        u.apply_generator_inverse(k as usize);
        rows.push(u);
    }
    Ok(rows)
}
