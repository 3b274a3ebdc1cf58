//! Exhaustive branch-and-bound search for the longest snake through the
//! identity of the Cayley graph generated by a set of jump-to-front moves.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::perm::{Generator, Permutation};
use crate::sequence::GenSequence;

/// Largest `n` the search accepts.
pub const SEARCH_MAX_N: usize = 7;

const CLOCK_INTERVAL: u64 = 4096;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchBudget {
    pub time: Option<Duration>,
    pub nodes: Option<u64>,
}

impl SearchBudget {
    pub fn unlimited() -> SearchBudget {
        SearchBudget::default()
    }

    pub fn seconds(s: f64) -> SearchBudget {
        SearchBudget {
            time: Some(Duration::from_secs_f64(s)),
            nodes: None,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SearchOptions {
    pub budget: SearchBudget,
    /// Only cycles of at least this many vertices are of interest; branches
    /// that cannot reach it are cut.
    pub min_length: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    /// Vertices on the best cycle found; 0 when none was found.
    pub length: usize,
    pub witness: Option<GenSequence>,
    /// The search ran to completion, so `length` is the maximum (among
    /// lengths of at least `min_length`, when one is given).
    pub exact: bool,
    pub nodes: u64,
}

/// The Cayley graph restricted to the subgroup generated by `gens`, with
/// vertex 0 the identity.
struct Graph {
    gens: Vec<u8>,
    vertices: Vec<Permutation>,
    next: Vec<Vec<u32>>,
    prev: Vec<Vec<u32>>,
    /// Kendall neighbours that lie in the subgroup.
    near: Vec<Vec<u32>>,
}

impl Graph {
    fn build(n: usize, gens: &[u8]) -> Graph {
        let id = Permutation::identity(n);
        let mut index: HashMap<Permutation, u32> = HashMap::from([(id, 0)]);
        let mut vertices = vec![id];
        let mut next: Vec<Vec<u32>> = Vec::new();
        let mut head = 0;
        while head < vertices.len() {
            let v = vertices[head];
            let mut out = Vec::with_capacity(gens.len());
            for &k in gens {
                let w = v.then_generator(k as usize);
                let id = *index.entry(w).or_insert_with(|| {
                    vertices.push(w);
                    (vertices.len() - 1) as u32
                });
                out.push(id);
            }
            next.push(out);
            head += 1;
        }
        let mut prev = vec![Vec::new(); vertices.len()];
        for (v, out) in next.iter().enumerate() {
            for &w in out {
                prev[w as usize].push(v as u32);
            }
        }
        let near = vertices
            .iter()
            .map(|v| {
                (1..n)
                    .filter_map(|i| index.get(&v.swap_adjacent(i)).copied())
                    .collect()
            })
            .collect();
        Graph {
            gens: gens.to_vec(),
            vertices,
            next,
            prev,
            near,
        }
    }
}

struct Search<'a> {
    g: &'a Graph,
    visited: Vec<bool>,
    forbidden: Vec<u32>,
    path: Vec<u8>,
    best: Vec<u8>,
    target: usize,
    nodes: u64,
    started: Instant,
    budget: SearchBudget,
    out_of_budget: bool,
    // scratch for the bound
    alive: Vec<bool>,
    stack: Vec<u32>,
}

impl Search<'_> {
    fn occupy(&mut self, v: usize, delta: i32) {
        self.visited[v] = delta > 0;
        for &w in &self.g.near[v] {
            let f = &mut self.forbidden[w as usize];
            *f = (*f as i32 + delta) as u32;
        }
    }

    fn free(&self, v: usize) -> bool {
        !self.visited[v] && self.forbidden[v] == 0
    }

    /// Path length plus the number of free vertices that can still lie on a
    /// cycle closing through `cur`.
    fn bound(&mut self, cur: usize) -> usize {
        let n = self.g.vertices.len();
        let mut count = 0;
        for v in 0..n {
            let a = self.free(v);
            self.alive[v] = a;
            count += a as usize;
        }
        self.stack.clear();
        self.stack
            .extend((0..n as u32).filter(|&v| self.alive[v as usize]));
        while let Some(v) = self.stack.pop() {
            let v = v as usize;
            if !self.alive[v] {
                continue;
            }
            let has_in = self.g.prev[v]
                .iter()
                .any(|&u| self.alive[u as usize] || u as usize == cur);
            let has_out = self.g.next[v]
                .iter()
                .any(|&w| self.alive[w as usize] || w == 0);
            if !(has_in && has_out) {
                self.alive[v] = false;
                count -= 1;
                for &w in self.g.next[v].iter().chain(&self.g.prev[v]) {
                    if self.alive[w as usize] {
                        self.stack.push(w);
                    }
                }
            }
        }
        self.path.len() + 1 + count
    }

    fn tick(&mut self) -> bool {
        self.nodes += 1;
        if let Some(limit) = self.budget.nodes {
            if self.nodes > limit {
                self.out_of_budget = true;
            }
        }
        if let Some(limit) = self.budget.time {
            if self.nodes % CLOCK_INTERVAL == 0 && self.started.elapsed() > limit {
                self.out_of_budget = true;
            }
        }
        !self.out_of_budget
    }

    fn dfs(&mut self, cur: usize) {
        if !self.tick() {
            return;
        }
        let len = self.path.len() + 1;
        for (j, &w) in self.g.next[cur].iter().enumerate() {
            if w == 0 && len > self.best.len() && len >= self.target {
                self.best.clone_from(&self.path);
                self.best.push(self.g.gens[j]);
            }
        }
        let floor = self.best.len().max(self.target.saturating_sub(1));
        if self.bound(cur) <= floor {
            return;
        }
        for j in 0..self.g.gens.len() {
            let w = self.g.next[cur][j] as usize;
            if !self.free(w) {
                continue;
            }
            self.occupy(w, 1);
            self.path.push(self.g.gens[j]);
            self.dfs(w);
            self.path.pop();
            self.occupy(w, -1);
            if self.out_of_budget || self.best.len() == self.g.vertices.len() {
                return;
            }
        }
    }
}

/// Longest cycle through the identity whose vertices are pairwise distinct
/// and pairwise at Kendall distance other than one. By vertex-transitivity
/// this is the longest such cycle anywhere in the graph.
pub fn longest_snake_search(
    n: usize,
    gens: &[usize],
    budget: SearchBudget,
) -> Result<SearchResult> {
    longest_snake_search_with(
        n,
        gens,
        &SearchOptions {
            budget,
            min_length: None,
        },
    )
}

pub fn longest_snake_search_with(
    n: usize,
    gens: &[usize],
    options: &SearchOptions,
) -> Result<SearchResult> {
    if n > SEARCH_MAX_N {
        return Err(Error::Unsupported {
            n,
            reason: format!("exhaustive search is limited to n <= {SEARCH_MAX_N}"),
        });
    }
    if gens.is_empty() {
        return Err(Error::InvalidArgument("no generators given".into()));
    }
    let mut ks: Vec<u8> = Vec::with_capacity(gens.len());
    for &k in gens {
        Generator::new(k, n)?;
        if ks.contains(&(k as u8)) {
            return Err(Error::EqualGenerators(k));
        }
        ks.push(k as u8);
    }

    let g = Graph::build(n, &ks);
    let size = g.vertices.len();
    let mut s = Search {
        g: &g,
        visited: vec![false; size],
        forbidden: vec![0; size],
        path: Vec::new(),
        best: Vec::new(),
        target: options.min_length.unwrap_or(0),
        nodes: 0,
        started: Instant::now(),
        budget: options.budget,
        out_of_budget: false,
        alive: vec![false; size],
        stack: Vec::new(),
    };
    s.occupy(0, 1);
    s.dfs(0);

    let witness = (!s.best.is_empty())
        .then(|| GenSequence::new(Permutation::identity(n), s.best.clone()))
        .transpose()?;
    Ok(SearchResult {
        length: s.best.len(),
        witness,
        exact: !s.out_of_budget,
        nodes: s.nodes,
    })
}
