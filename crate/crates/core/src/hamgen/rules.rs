//! The rule table that produces a Hamiltonian cycle of the `A_7` graph.
//!
//! Each row lists one-line patterns and the generator that follows any
//! permutation matching one of them. Rows are tried in order and the first
//! match wins; the last row is the catch-all `tau_7`.

use std::fmt;

use crate::cover::SuccessorCover;
use crate::error::{Error, Result};
use crate::perm::{alternating_order, EvenRank, Permutation};
use crate::sequence::GenSequence;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cell {
    Exact(u8),
    Any,
    Not(u8),
}

impl Cell {
    fn matches(self, v: u8) -> bool {
        match self {
            Cell::Exact(x) => v == x,
            Cell::Any => true,
            Cell::Not(x) => v != x,
        }
    }
}

/// A positional pattern over seven cells.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pattern(Vec<Cell>);

impl Pattern {
    /// Parses a pattern such as `"6!7!7!7***"`: a digit is an exact value,
    /// `*` matches anything and `!d` matches anything but `d`.
    pub fn parse(text: &str) -> Result<Pattern> {
        let mut cells = Vec::new();
        let mut chars = text.chars();
        while let Some(c) = chars.next() {
            let cell = match c {
                '*' => Cell::Any,
                '!' => match chars.next().and_then(|d| d.to_digit(10)) {
                    Some(d) => Cell::Not(d as u8),
                    None => {
                        return Err(Error::InvalidArgument(format!("dangling `!` in {text:?}")))
                    }
                },
                d => match d.to_digit(10) {
                    Some(d) => Cell::Exact(d as u8),
                    None => {
                        return Err(Error::InvalidArgument(format!(
                            "bad pattern character {d:?} in {text:?}"
                        )))
                    }
                },
            };
            cells.push(cell);
        }
        Ok(Pattern(cells))
    }

    pub fn matches(&self, p: &Permutation) -> bool {
        self.0.len() == p.n()
            && self
                .0
                .iter()
                .zip(p.as_slice())
                .all(|(cell, &v)| cell.matches(v))
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for cell in &self.0 {
            match cell {
                Cell::Exact(v) => write!(f, "{v}")?,
                Cell::Any => f.write_str("*")?,
                Cell::Not(v) => write!(f, "!{v}")?,
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule {
    pub patterns: Vec<Pattern>,
    pub generator: u8,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleTable {
    rules: Vec<Rule>,
    fallback: u8,
}

const A7_ROWS: [(&[&str], u8); 6] = [
    (&["6!7!7!7***", "!7!7!76***"], 5),
    (&["67*****", "76*****"], 3),
    (&["567!1***", "576****"], 5),
    (&["2567***", "4576***"], 5),
    (&["5671234", "5612347", "5623714", "5637142"], 3),
    (&["5623471", "5671423"], 5),
];

impl RuleTable {
    pub fn a7() -> RuleTable {
        let rules = A7_ROWS
            .iter()
            .map(|(patterns, generator)| Rule {
                patterns: patterns
                    .iter()
                    .map(|p| Pattern::parse(p).expect("built-in pattern"))
                    .collect(),
                generator: *generator,
            })
            .collect();
        RuleTable { rules, fallback: 7 }
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn fallback(&self) -> u8 {
        self.fallback
    }

    /// 1-based index of the first matching row; the catch-all row is
    /// `rules().len() + 1`.
    pub fn matching_row(&self, p: &Permutation) -> usize {
        self.rules
            .iter()
            .position(|r| r.patterns.iter().any(|pat| pat.matches(p)))
            .map_or(self.rules.len() + 1, |i| i + 1)
    }

    pub fn successor(&self, p: &Permutation) -> u8 {
        let row = self.matching_row(p);
        self.rules
            .get(row - 1)
            .map_or(self.fallback, |r| r.generator)
    }

    /// The cover that follows the table's choice at every vertex of `A_7`.
    pub fn cover(&self) -> Result<SuccessorCover> {
        let labels = (0..alternating_order(7))
            .map(|r| Permutation::unrank_even(EvenRank(r), 7).map(|p| self.successor(&p)))
            .collect::<Result<Vec<u8>>>()?;
        SuccessorCover::from_labels(7, labels)
    }
}

/// Walks the rule table from the identity of `A_7` until it returns, and
/// checks that every even permutation was visited exactly once.
pub fn base_case_a7() -> Result<GenSequence> {
    let table = RuleTable::a7();
    let total = alternating_order(7) as usize;
    let mut seen = vec![false; total];
    let mut gens = Vec::with_capacity(total);
    let start = Permutation::identity(7);
    let mut p = start;
    loop {
        let r = p.rank_even_unchecked();
        if std::mem::replace(&mut seen[r], true) {
            break;
        }
        let k = table.successor(&p);
        gens.push(k);
        p.apply_generator(k as usize);
    }
    if p != start || gens.len() != total {
        return Err(Error::Construction(format!(
            "rule table closes after {} steps at [{p}], expected {total} steps back to the identity",
            gens.len()
        )));
    }
    if !gens.contains(&5) {
        return Err(Error::Construction("base cycle never uses tau_5".into()));
    }
    GenSequence::new(start, gens)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(s: &str) -> Permutation {
        Permutation::from_slice(&s.bytes().map(|b| b - b'0').collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn pattern_semantics() {
        let pat = Pattern::parse("6!7!7!7***").unwrap();
        assert!(pat.matches(&perm("6123457")));
        assert!(!pat.matches(&perm("6712345")));
        assert!(!pat.matches(&perm("612345")));
        assert_eq!(pat.to_string(), "6!7!7!7***");
        assert!(Pattern::parse("12!").is_err());
        assert!(Pattern::parse("1x3").is_err());
    }

    #[test]
    fn table_rows_on_named_permutations() {
        let t = RuleTable::a7();
        assert_eq!(t.successor(&perm("6712345")), 3);
        assert_eq!(t.matching_row(&perm("6712345")), 2);
        assert_eq!(t.successor(&perm("1234567")), 7);
        assert_eq!(t.matching_row(&perm("1234567")), 7);
        assert_eq!(t.successor(&perm("5671234")), 3);
        assert_eq!(t.matching_row(&perm("5671234")), 5);
        assert_eq!(t.successor(&perm("5623471")), 5);
    }

    #[test]
    fn overlapping_rows_never_disagree() {
        let t = RuleTable::a7();
        for r in 0..alternating_order(7) {
            let p = Permutation::unrank_even(EvenRank(r), 7).unwrap();
            let labels: Vec<u8> = t
                .rules()
                .iter()
                .filter(|rule| rule.patterns.iter().any(|pat| pat.matches(&p)))
                .map(|rule| rule.generator)
                .collect();
            assert!(labels.windows(2).all(|w| w[0] == w[1]), "{p}: {labels:?}");
        }
    }

    #[test]
    fn table_cover_is_a_single_cycle() {
        let cover = RuleTable::a7().cover().unwrap();
        assert_eq!(cover.count_cycles(), vec![2520]);
    }

    #[test]
    fn base_case_is_hamiltonian() {
        let l = base_case_a7().unwrap();
        assert_eq!(l.len(), 2520);
        assert!(l.is_closed());
        assert!(l.start().is_identity());
        assert!(l.gens().contains(&5));
        let mut ranks: Vec<u64> = l
            .walk()
            .take(2520)
            .map(|p| p.rank_even().unwrap().0)
            .collect();
        ranks.sort_unstable();
        assert_eq!(ranks, (0..2520).collect::<Vec<_>>());
    }
}
