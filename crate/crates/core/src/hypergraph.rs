//! Triangle hypergraphs on the ordered pairs `[n]^(2)`.
//!
//! A vertex `(a, b)` stands for the class of permutations ending in `a, b`, and
//! the triangle `{(a,b), (b,c), (c,a)}` for one three-fold linkage between
//! three such classes. Acyclicity is Berge-acyclicity: the bipartite incidence
//! graph between pairs and hyperedges is a forest.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pair(pub u8, pub u8);

impl fmt::Display for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.0, self.1)
    }
}

/// `{(a,b), (b,c), (c,a)}`, stored rotated so that the smallest element is first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triangle([u8; 3]);

impl Triangle {
    pub fn new(a: u8, b: u8, c: u8) -> Triangle {
        assert!(
            a != b && b != c && a != c,
            "triangle needs distinct elements"
        );
        let t = [a, b, c];
        let i = (0..3).min_by_key(|&i| t[i]).expect("three elements");
        Triangle([t[i], t[(i + 1) % 3], t[(i + 2) % 3]])
    }

    pub fn triple(&self) -> [u8; 3] {
        self.0
    }

    pub fn pairs(&self) -> [Pair; 3] {
        let [a, b, c] = self.0;
        [Pair(a, b), Pair(b, c), Pair(c, a)]
    }

    pub fn contains(&self, p: Pair) -> bool {
        self.pairs().contains(&p)
    }

    /// The rotation `(a, b, c)` whose last two elements form `tail`.
    pub fn rotated_to_tail(&self, tail: Pair) -> Option<[u8; 3]> {
        let [a, b, c] = self.0;
        [[a, b, c], [c, a, b], [b, c, a]]
            .into_iter()
            .find(|t| Pair(t[1], t[2]) == tail)
    }

    fn relabel(&self, map: &[u8]) -> Triangle {
        let [a, b, c] = self.0;
        Triangle::new(map[a as usize], map[b as usize], map[c as usize])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Hyperedge {
    Triangle(Triangle),
    /// The union of two vertex-disjoint triangles.
    Hexad(Triangle, Triangle),
}

impl Hyperedge {
    pub fn vertices(&self) -> Vec<Pair> {
        match self {
            Hyperedge::Triangle(t) => t.pairs().to_vec(),
            Hyperedge::Hexad(s, t) => s.pairs().into_iter().chain(t.pairs()).collect(),
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Hyperedge::Triangle(_) => 3,
            Hyperedge::Hexad(..) => 6,
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn as_triangle(&self) -> Option<Triangle> {
        match self {
            Hyperedge::Triangle(t) => Some(*t),
            Hyperedge::Hexad(..) => None,
        }
    }

    fn sort_key(&self) -> (u8, Vec<[u8; 3]>) {
        match self {
            Hyperedge::Triangle(t) => (1, vec![t.triple()]),
            Hyperedge::Hexad(s, t) => (0, vec![s.triple(), t.triple()]),
        }
    }

    fn relabel(&self, map: &[u8]) -> Hyperedge {
        match self {
            Hyperedge::Triangle(t) => Hyperedge::Triangle(t.relabel(map)),
            Hyperedge::Hexad(s, t) => Hyperedge::Hexad(s.relabel(map), t.relabel(map)),
        }
    }
}

impl fmt::Display for Hyperedge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut vs = self.vertices();
        vs.sort_unstable();
        for (i, v) in vs.iter().enumerate() {
            if i > 0 {
                f.write_str(" ; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// A hypergraph whose vertex set is all of `[n]^(2)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    n: usize,
    edges: Vec<Hyperedge>,
}

/// A hyperedge in linkage order, with the one vertex it shares with the
/// union of the hyperedges before it (`None` for the first).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrderedHyperedge {
    pub edge: Hyperedge,
    pub shared: Option<Pair>,
}

struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    fn new(size: usize) -> Self {
        DisjointSets {
            parent: (0..size).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false if `a` and `b` were already joined.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

impl Hypergraph {
    pub fn new(n: usize, edges: Vec<Hyperedge>) -> Result<Hypergraph> {
        for e in &edges {
            for Pair(a, b) in e.vertices() {
                if a == 0 || b == 0 || a as usize > n || b as usize > n {
                    return Err(Error::InvalidHypergraph(format!(
                        "vertex ({a},{b}) is outside [{n}]^(2)"
                    )));
                }
            }
        }
        let mut g = Hypergraph { n, edges };
        g.edges.sort_by_key(|e| e.sort_key());
        g.edges.dedup();
        Ok(g)
    }

    /// Acyclic hypergraph of triangles with two components, one of them the
    /// three vertices of `Δ(3,2,1)`. Built by adding `Δ(i, i+1, m)` (indices
    /// mod `m - 1`) for each `m = 4..=n`.
    pub fn build_acyclic(n: usize) -> Result<Hypergraph> {
        if n < 3 {
            return Err(Error::InvalidArgument(format!("need n >= 3, got {n}")));
        }
        let mut edges = vec![
            Hyperedge::Triangle(Triangle::new(3, 2, 1)),
            Hyperedge::Triangle(Triangle::new(1, 2, 3)),
        ];
        for m in 4..=n as u8 {
            for i in 1..m {
                let next = if i == m - 1 { 1 } else { i + 1 };
                edges.push(Hyperedge::Triangle(Triangle::new(i, next, m)));
            }
        }
        Hypergraph::new(n, edges)
    }

    /// The same hypergraph described directly: all `Δ(a,b,c)` with
    /// `max(a,b) < c` and `b ≡ a + 1 (mod c - 1)`.
    pub fn closed_form(n: usize) -> Result<Hypergraph> {
        if n < 3 {
            return Err(Error::InvalidArgument(format!("need n >= 3, got {n}")));
        }
        let mut edges = Vec::new();
        for c in 3..=n as u8 {
            for a in 1..c {
                for b in 1..c {
                    if a != b && b % (c - 1) == (a + 1) % (c - 1) {
                        edges.push(Hyperedge::Triangle(Triangle::new(a, b, c)));
                    }
                }
            }
        }
        Hypergraph::new(n, edges)
    }

    /// Connected acyclic hypergraph whose single 6-hyperedge is
    /// `Δ(a,b,e) ∪ Δ(c,d,e)` for `tuple = (a,b,c,d,e)`.
    ///
    /// Built for `(2,1,4,5,3)` by merging `Δ(2,1,3)` with `Δ(4,5,3)` in
    /// [`build_acyclic`](Self::build_acyclic), then relabelled by the ground
    /// permutation sending `2,1,4,5,3` to `a,b,c,d,e` and the remaining
    /// elements, in increasing order, to the remaining targets in increasing order.
    pub fn build_connected(n: usize, tuple: [u8; 5]) -> Result<Hypergraph> {
        if n < 5 {
            return Err(Error::InvalidArgument(format!("need n >= 5, got {n}")));
        }
        let distinct: BTreeSet<u8> = tuple.iter().copied().collect();
        if distinct.len() != 5 || tuple.iter().any(|&x| x == 0 || x as usize > n) {
            return Err(Error::InvalidArgument(format!(
                "need five distinct elements of [{n}], got {tuple:?}"
            )));
        }
        let base = Hypergraph::build_acyclic(n)?;
        let left = Triangle::new(2, 1, 3);
        let right = Triangle::new(4, 5, 3);
        let mut edges: Vec<Hyperedge> = base
            .edges
            .into_iter()
            .filter(|e| e.as_triangle() != Some(left) && e.as_triangle() != Some(right))
            .collect();
        edges.push(Hyperedge::Hexad(left, right));

        let mut map = vec![0u8; n + 1];
        for (src, dst) in [2u8, 1, 4, 5, 3].into_iter().zip(tuple) {
            map[src as usize] = dst;
        }
        let free_targets = (1..=n as u8).filter(|x| !tuple.contains(x));
        for (src, dst) in (6..=n).zip(free_targets) {
            map[src] = dst;
        }
        Hypergraph::new(n, edges.iter().map(|e| e.relabel(&map)).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Hyperedges, any 6-hyperedge first, then triangles in lexicographic order.
    pub fn edges(&self) -> &[Hyperedge] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.n * (self.n - 1)
    }

    pub fn vertices(&self) -> impl Iterator<Item = Pair> + '_ {
        let n = self.n as u8;
        (1..=n).flat_map(move |a| (1..=n).filter(move |&b| b != a).map(move |b| Pair(a, b)))
    }

    fn index(&self, p: Pair) -> usize {
        (p.0 as usize - 1) * self.n + (p.1 as usize - 1)
    }

    fn incidence_sets(&self) -> (DisjointSets, bool) {
        let base = self.n * self.n;
        let mut sets = DisjointSets::new(base + self.edges.len());
        let mut acyclic = true;
        for (e, edge) in self.edges.iter().enumerate() {
            for v in edge.vertices() {
                if !sets.union(self.index(v), base + e) {
                    acyclic = false;
                }
            }
        }
        (sets, acyclic)
    }

    pub fn is_acyclic(&self) -> bool {
        self.incidence_sets().1
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// Components as sorted vertex lists, ordered by their smallest vertex.
    pub fn components(&self) -> Vec<Vec<Pair>> {
        let (mut sets, _) = self.incidence_sets();
        let mut groups: Vec<(usize, Vec<Pair>)> = Vec::new();
        for v in self.vertices() {
            let root = sets.find(self.index(v));
            match groups.iter_mut().find(|(r, _)| *r == root) {
                Some((_, members)) => members.push(v),
                None => groups.push((root, vec![v])),
            }
        }
        groups.into_iter().map(|(_, members)| members).collect()
    }

    /// Breadth-first order from the 6-hyperedge in which every hyperedge
    /// shares exactly one vertex with the union of its predecessors.
    /// Neighbours discovered from the same hyperedge are queued in
    /// lexicographic order of their triples.
    pub fn order_hyperedges(&self) -> Result<Vec<OrderedHyperedge>> {
        let hexads: Vec<usize> = (0..self.edges.len())
            .filter(|&i| matches!(self.edges[i], Hyperedge::Hexad(..)))
            .collect();
        if hexads.len() != 1 {
            return Err(Error::InvalidHypergraph(format!(
                "expected exactly one 6-hyperedge, found {}",
                hexads.len()
            )));
        }
        if !self.is_acyclic() {
            return Err(Error::InvalidHypergraph(
                "incidence graph has a cycle".into(),
            ));
        }
        if !self.is_connected() {
            return Err(Error::InvalidHypergraph(
                "hypergraph is disconnected".into(),
            ));
        }

        let mut incident: Vec<Vec<usize>> = vec![Vec::new(); self.n * self.n];
        for (e, edge) in self.edges.iter().enumerate() {
            for v in edge.vertices() {
                incident[self.index(v)].push(e);
            }
        }
        let mut covered = vec![false; self.n * self.n];
        let mut queued = vec![false; self.edges.len()];
        let mut queue = VecDeque::from([hexads[0]]);
        queued[hexads[0]] = true;
        let mut order = Vec::with_capacity(self.edges.len());

        let emit = |e: usize, covered: &mut Vec<bool>| -> Result<OrderedHyperedge> {
            let edge = self.edges[e];
            let shared: Vec<Pair> = edge
                .vertices()
                .into_iter()
                .filter(|&v| covered[self.index(v)])
                .collect();
            for v in edge.vertices() {
                covered[self.index(v)] = true;
            }
            match (e == hexads[0], shared.as_slice()) {
                (true, []) => Ok(OrderedHyperedge { edge, shared: None }),
                (false, [v]) => Ok(OrderedHyperedge {
                    edge,
                    shared: Some(*v),
                }),
                _ => Err(Error::InvalidHypergraph(format!(
                    "hyperedge {edge} shares {} vertices with its predecessors",
                    shared.len()
                ))),
            }
        };

        order.push(emit(hexads[0], &mut covered)?);
        while let Some(e) = queue.pop_front() {
            let mut found: Vec<usize> = Vec::new();
            for v in self.edges[e].vertices() {
                for &f in &incident[self.index(v)] {
                    if !queued[f] {
                        queued[f] = true;
                        found.push(f);
                    }
                }
            }
            found.sort_by_key(|&f| self.edges[f].sort_key());
            for f in found {
                order.push(emit(f, &mut covered)?);
                queue.push_back(f);
            }
        }
        Ok(order)
    }

    /// One hyperedge per line as its sorted pairs, 6-hyperedge first.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for e in &self.edges {
            out.push_str(&e.to_string());
            out.push('\n');
        }
        out
    }
}
