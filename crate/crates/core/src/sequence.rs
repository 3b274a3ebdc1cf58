//! Cycles and paths written as a start vertex plus the generators they use.

use std::io::{self, BufRead, Write};

use crate::error::{Error, Result};
use crate::perm::{check_size, Generator, Permutation};

/// A walk in the Cayley graph: `start`, then `start * tau_{gens[0]}`, and so on.
///
/// When the walk returns to `start` after the last generator it describes a
/// cycle of `gens.len()` vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenSequence {
    start: Permutation,
    gens: Vec<u8>,
}

impl GenSequence {
    pub fn new(start: Permutation, gens: Vec<u8>) -> Result<GenSequence> {
        let n = start.n();
        for &k in &gens {
            Generator::new(k as usize, n)?;
        }
        Ok(GenSequence { start, gens })
    }

    pub(crate) fn new_unchecked(start: Permutation, gens: Vec<u8>) -> GenSequence {
        GenSequence { start, gens }
    }

    pub fn n(&self) -> usize {
        self.start.n()
    }

    pub fn start(&self) -> Permutation {
        self.start
    }

    pub fn gens(&self) -> &[u8] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    /// All `len() + 1` vertices of the walk, starting and ending points included.
    pub fn walk(&self) -> Walk<'_> {
        Walk {
            current: self.start,
            gens: self.gens.iter(),
            done: false,
        }
    }

    pub fn end(&self) -> Permutation {
        self.gens
            .iter()
            .fold(self.start, |p, &k| p.then_generator(k as usize))
    }

    /// Composition of the generators in order.
    pub fn product(&self) -> Permutation {
        self.gens
            .iter()
            .fold(Permutation::identity(self.n()), |p, &k| {
                p.then_generator(k as usize)
            })
    }

    /// Whether the walk is non-empty and ends where it started.
    pub fn is_closed(&self) -> bool {
        !self.gens.is_empty() && self.end() == self.start
    }

    /// Same generators, started from `start * offset` instead of `start`.
    pub fn translated(&self, offset: &Permutation) -> Result<GenSequence> {
        Ok(GenSequence {
            start: self.start.compose(offset)?,
            gens: self.gens.clone(),
        })
    }

    /// Writes the sequence file format: `n=<n>`, the start permutation, then
    /// the generator indices on one line.
    pub fn write_text<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "n={}", self.n())?;
        writeln!(out, "{}", self.start)?;
        let mut line = Vec::with_capacity(self.gens.len() * 3 + 1);
        for (i, &k) in self.gens.iter().enumerate() {
            if i > 0 {
                line.push(b' ');
            }
            if k >= 10 {
                line.push(b'0' + k / 10);
            }
            line.push(b'0' + k % 10);
        }
        line.push(b'\n');
        out.write_all(&line)
    }

    pub fn to_text(&self) -> String {
        let mut buf = Vec::new();
        self.write_text(&mut buf)
            .expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("ascii output")
    }

    pub fn read_text<R: BufRead>(mut input: R) -> Result<GenSequence> {
        let mut text = String::new();
        input.read_to_string(&mut text).map_err(|e| Error::Parse {
            line: 0,
            message: e.to_string(),
        })?;
        GenSequence::parse(&text)
    }

    pub fn parse(text: &str) -> Result<GenSequence> {
        let mut lines = text.lines();
        let n = parse_header(lines.next(), 1)?;
        let start_line = lines.next().ok_or_else(|| Error::Parse {
            line: 2,
            message: "missing start permutation".into(),
        })?;
        let start = start_line
            .parse::<Permutation>()
            .map_err(|e| Error::Parse {
                line: 2,
                message: e.to_string(),
            })?;
        if start.n() != n {
            return Err(Error::Parse {
                line: 2,
                message: format!("start has {} entries, header says n={n}", start.n()),
            });
        }
        let mut gens = Vec::new();
        for tok in lines.next().unwrap_or("").split_whitespace() {
            let k: usize = tok.parse().map_err(|_| Error::Parse {
                line: 3,
                message: format!("bad generator index {tok:?}"),
            })?;
            Generator::new(k, n).map_err(|e| Error::Parse {
                line: 3,
                message: e.to_string(),
            })?;
            gens.push(k as u8);
        }
        if let Some((i, extra)) = lines.enumerate().find(|(_, l)| !l.trim().is_empty()) {
            return Err(Error::Parse {
                line: 4 + i,
                message: format!("unexpected trailing content {extra:?}"),
            });
        }
        Ok(GenSequence { start, gens })
    }
}

pub(crate) fn parse_header(line: Option<&str>, line_no: usize) -> Result<usize> {
    let line = line.ok_or_else(|| Error::Parse {
        line: line_no,
        message: "missing `n=<n>` header".into(),
    })?;
    let n = line
        .trim()
        .strip_prefix("n=")
        .and_then(|v| v.parse::<usize>().ok())
        .ok_or_else(|| Error::Parse {
            line: line_no,
            message: format!("expected `n=<n>`, found {line:?}"),
        })?;
    check_size(n).map_err(|e| Error::Parse {
        line: line_no,
        message: e.to_string(),
    })?;
    Ok(n)
}

pub struct Walk<'a> {
    current: Permutation,
    gens: std::slice::Iter<'a, u8>,
    done: bool,
}

impl Iterator for Walk<'_> {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.done {
            return None;
        }
        let out = self.current;
        match self.gens.next() {
            Some(&k) => self.current.apply_generator(k as usize),
            None => self.done = true,
        }
        Some(out)
    }
}
