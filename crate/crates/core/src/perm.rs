//! Permutation arithmetic over `[n] = {1, ..., n}` in one-line notation.
//!
//! Composition follows `(a * b)(i) = a(b(i))`, so right-multiplying by the
//! jump-to-front generator `tau_k` moves the entry in position `k` to the
//! front and shifts positions `1..k` one place to the right.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest supported permutation size. `15!` still fits comfortably in a `u64`.
pub const MAX_N: usize = 15;

const FACTORIALS: [u64; 21] = {
    let mut table = [1u64; 21];
    let mut i = 1;
    while i < 21 {
        table[i] = table[i - 1] * i as u64;
        i += 1;
    }
    table
};

pub fn factorial(n: usize) -> u64 {
    FACTORIALS[n]
}

/// Number of even permutations of `[n]`.
pub fn alternating_order(n: usize) -> u64 {
    if n < 2 {
        1
    } else {
        factorial(n) / 2
    }
}

pub(crate) fn check_size(n: usize) -> Result<()> {
    if (1..=MAX_N).contains(&n) {
        Ok(())
    } else {
        Err(Error::SizeOutOfRange(n))
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn is_even(self) -> bool {
        self == Parity::Even
    }
}

impl std::ops::BitXor for Parity {
    type Output = Parity;

    fn bitxor(self, rhs: Parity) -> Parity {
        if self == rhs {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// A jump-to-front generator `tau_k = [k, 1, 2, ..., k-1, k+1, ..., n]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator(u8);

impl Generator {
    pub fn new(k: usize, n: usize) -> Result<Generator> {
        check_size(n)?;
        if !(2..=n).contains(&k) {
            return Err(Error::GeneratorOutOfRange { k, n });
        }
        Ok(Generator(k as u8))
    }

    /// A generator that stays inside the alternating group (odd `k >= 3`).
    pub fn new_alternating(k: usize, n: usize) -> Result<Generator> {
        let g = Generator::new(k, n)?;
        if k % 2 == 0 {
            return Err(Error::EvenGenerator(k));
        }
        Ok(g)
    }

    pub fn k(self) -> usize {
        self.0 as usize
    }
}

/// Index of an even permutation among all even permutations of `[n]` in
/// lexicographic order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EvenRank(pub u64);

/// A permutation of `[n]` in one-line form, stored inline so that walks over
/// millions of vertices never allocate.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    n: u8,
    entries: [u8; MAX_N],
}

impl Permutation {
    pub fn identity(n: usize) -> Permutation {
        assert!((1..=MAX_N).contains(&n), "size {n} out of range");
        let mut entries = [0u8; MAX_N];
        for (i, e) in entries.iter_mut().take(n).enumerate() {
            *e = i as u8 + 1;
        }
        Permutation {
            n: n as u8,
            entries,
        }
    }

    pub fn from_slice(values: &[u8]) -> Result<Permutation> {
        let n = values.len();
        check_size(n)?;
        let mut seen = 0u32;
        for &v in values {
            if v == 0 || v as usize > n || seen & (1 << v) != 0 {
                return Err(Error::NotAPermutation(values.to_vec()));
            }
            seen |= 1 << v;
        }
        let mut entries = [0u8; MAX_N];
        entries[..n].copy_from_slice(values);
        Ok(Permutation {
            n: n as u8,
            entries,
        })
    }

    /// `tau_k` in `S_n`.
    pub fn tau(k: usize, n: usize) -> Result<Permutation> {
        Generator::new(k, n)?;
        let mut p = Permutation::identity(n);
        p.apply_generator(k);
        Ok(p)
    }

    /// The ratio `tau_l * tau_k^{-1}`: jumps element `l` to position `k`.
    pub fn ratio(l: usize, k: usize, n: usize) -> Result<Permutation> {
        Generator::new(l, n)?;
        Generator::new(k, n)?;
        if l == k {
            return Err(Error::EqualGenerators(k));
        }
        let mut p = Permutation::identity(n);
        p.apply_generator(l);
        p.apply_generator_inverse(k);
        Ok(p)
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.entries[..self.n as usize]
    }

    /// Entry at 1-based position `pos`.
    pub fn at(&self, pos: usize) -> u8 {
        self.entries[pos - 1]
    }

    pub fn last(&self) -> u8 {
        self.entries[self.n as usize - 1]
    }

    /// Last two entries `(pi(n-1), pi(n))`.
    pub fn suffix_pair(&self) -> (u8, u8) {
        let n = self.n as usize;
        (self.entries[n - 2], self.entries[n - 1])
    }

    pub fn is_identity(&self) -> bool {
        self.as_slice()
            .iter()
            .enumerate()
            .all(|(i, &v)| v as usize == i + 1)
    }

    /// In place `self = self * tau_k`.
    #[inline]
    pub fn apply_generator(&mut self, k: usize) {
        self.entries[..k].rotate_right(1);
    }

    /// In place `self = self * tau_k^{-1}`.
    #[inline]
    pub fn apply_generator_inverse(&mut self, k: usize) {
        self.entries[..k].rotate_left(1);
    }

    pub fn then_generator(mut self, k: usize) -> Permutation {
        self.apply_generator(k);
        self
    }

    pub fn then_generator_inverse(mut self, k: usize) -> Permutation {
        self.apply_generator_inverse(k);
        self
    }

    /// `self * rhs`, i.e. `i -> self(rhs(i))`.
    pub fn compose(&self, rhs: &Permutation) -> Result<Permutation> {
        if self.n != rhs.n {
            return Err(Error::SizeMismatch(self.n(), rhs.n()));
        }
        Ok(self.compose_unchecked(rhs))
    }

    pub(crate) fn compose_unchecked(&self, rhs: &Permutation) -> Permutation {
        debug_assert_eq!(self.n, rhs.n);
        let mut out = *self;
        for i in 0..self.n() {
            out.entries[i] = self.entries[rhs.entries[i] as usize - 1];
        }
        out
    }

    pub fn inverse(&self) -> Permutation {
        let mut out = *self;
        for (i, &v) in self.as_slice().iter().enumerate() {
            out.entries[v as usize - 1] = i as u8 + 1;
        }
        out
    }

    pub fn pow(&self, mut e: u64) -> Permutation {
        let mut base = *self;
        let mut acc = Permutation::identity(self.n());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose_unchecked(&base);
            }
            base = base.compose_unchecked(&base);
            e >>= 1;
        }
        acc
    }

    /// 1-based position of value `v`.
    pub fn position_of(&self, v: u8) -> usize {
        self.as_slice()
            .iter()
            .position(|&x| x == v)
            .expect("value not in permutation")
            + 1
    }

    /// Lengths of the disjoint cycles, fixed points included.
    pub fn cycle_type(&self) -> Vec<usize> {
        let n = self.n();
        let mut seen = [false; MAX_N];
        let mut lengths = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.entries[i] as usize - 1;
                len += 1;
            }
            lengths.push(len);
        }
        lengths
    }

    /// Smallest `t >= 1` with `self^t = id`, computed as the lcm of cycle lengths.
    pub fn order(&self) -> u64 {
        self.cycle_type().into_iter().fold(1u64, |acc, len| {
            let len = len as u64;
            acc / gcd(acc, len) * len
        })
    }

    pub fn parity(&self) -> Parity {
        let cycles = self.cycle_type().len();
        if (self.n() - cycles) % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn is_even(&self) -> bool {
        self.parity().is_even()
    }

    pub fn inversions(&self) -> u64 {
        let s = self.as_slice();
        let mut count = 0;
        for i in 0..s.len() {
            for j in i + 1..s.len() {
                if s[i] > s[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// Lehmer code: digit `i` counts later entries smaller than entry `i`.
    pub fn lehmer_code(&self) -> [u8; MAX_N] {
        let mut digits = [0u8; MAX_N];
        let mut remaining: u32 = 0;
        for v in 1..=self.n {
            remaining |= 1 << v;
        }
        for (i, &v) in self.as_slice().iter().enumerate() {
            digits[i] = (remaining & ((1u32 << v) - 1)).count_ones() as u8;
            remaining &= !(1 << v);
        }
        digits
    }

    /// Rank among all of `S_n` in lexicographic order.
    pub fn lex_rank(&self) -> u64 {
        let n = self.n();
        let digits = self.lehmer_code();
        (0..n).fold(0u64, |acc, i| {
            acc + digits[i] as u64 * FACTORIALS[n - 1 - i]
        })
    }

    pub fn lex_unrank(rank: u64, n: usize) -> Result<Permutation> {
        check_size(n)?;
        if rank >= factorial(n) {
            return Err(Error::RankOutOfRange { rank, n });
        }
        let mut rest = rank;
        let mut remaining: u32 = 0;
        for v in 1..=n {
            remaining |= 1 << v;
        }
        let mut entries = [0u8; MAX_N];
        for (i, slot) in entries.iter_mut().take(n).enumerate() {
            let weight = FACTORIALS[n - 1 - i];
            let mut d = rest / weight;
            rest %= weight;
            let mut bits = remaining;
            loop {
                let v = bits.trailing_zeros();
                if d == 0 {
                    *slot = v as u8;
                    remaining &= !(1 << v);
                    break;
                }
                bits &= bits - 1;
                d -= 1;
            }
        }
        Ok(Permutation {
            n: n as u8,
            entries,
        })
    }

    /// Rank among the even permutations in lexicographic order.
    ///
    /// Lexicographic neighbours `2r` and `2r + 1` differ by swapping the last
    /// two entries, so exactly one of each pair is even and the even rank is
    /// the lexicographic rank halved.
    pub fn rank_even(&self) -> Result<EvenRank> {
        if !self.is_even() {
            return Err(Error::OddPermutation(*self));
        }
        Ok(EvenRank(self.lex_rank() / 2))
    }

    #[inline]
    pub(crate) fn rank_even_unchecked(&self) -> usize {
        (self.lex_rank() / 2) as usize
    }

    pub fn unrank_even(rank: EvenRank, n: usize) -> Result<Permutation> {
        check_size(n)?;
        if rank.0 >= alternating_order(n) {
            return Err(Error::RankOutOfRange { rank: rank.0, n });
        }
        if n == 1 {
            return Ok(Permutation::identity(1));
        }
        let mut p = Permutation::lex_unrank(rank.0 * 2, n)?;
        if !p.is_even() {
            p.entries.swap(n - 2, n - 1);
        }
        Ok(p)
    }

    /// `self` with the entries at 1-based positions `i` and `i + 1` exchanged,
    /// i.e. `self` times the `i`-th elementary transposition.
    pub fn swap_adjacent(mut self, i: usize) -> Permutation {
        self.entries.swap(i - 1, i);
        self
    }
}

/// Kendall tau distance: the inversion number of `a^{-1} b`.
pub fn kendall_distance(a: &Permutation, b: &Permutation) -> Result<u64> {
    Ok(a.inverse().compose(b)?.inversions())
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.as_slice().iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.as_slice())
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Permutation> {
        let values = s
            .split_whitespace()
            .map(|t| {
                t.parse::<u8>().map_err(|e| Error::Parse {
                    line: 0,
                    message: format!("bad entry {t:?}: {e}"),
                })
            })
            .collect::<Result<Vec<u8>>>()?;
        Permutation::from_slice(&values)
    }
}
