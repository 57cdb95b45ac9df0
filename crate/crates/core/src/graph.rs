//! Simple undirected graphs and degree sequences.
//!
//! Graphs are immutable after construction: every mutation primitive
//! returns a new value, so instances can be shared freely across threads.

use std::collections::VecDeque;

use crate::error::{Error, Result};

/// A simple undirected graph on vertices `0..n`.
///
/// Neighbor lists are kept sorted; no self-loops, no parallel edges.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    m: usize,
}

impl Graph {
    /// Builds a graph from an explicit edge list.
    ///
    /// Every pair must satisfy `u != v`, `u, v < n`, and appear at most
    /// once (in either orientation); violations are errors, not silently
    /// deduplicated.
    pub fn from_edge_list(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::TooSmall { n: 0, min: 1 });
        }
        let mut adj = vec![Vec::new(); n];
        let mut m = 0;
        for &(u, v) in edges {
            insert_edge(&mut adj, u, v)?;
            m += 1;
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph { adj, m })
    }

    /// Vertex count.
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    /// Edge count.
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Neighbors of `v`, sorted ascending.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && v < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// All edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m);
        for (u, nbrs) in self.adj.iter().enumerate() {
            for &v in nbrs {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// True iff a traversal from vertex 0 reaches all `n` vertices.
    /// A single vertex counts as connected.
    pub fn is_connected(&self) -> bool {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut queue = VecDeque::new();
        seen[0] = true;
        queue.push_back(0);
        let mut count = 1;
        while let Some(u) = queue.pop_front() {
            for &v in &self.adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    queue.push_back(v);
                }
            }
        }
        count == n
    }

    /// True iff the graph is connected with exactly `n - 1` edges.
    pub fn is_tree(&self) -> bool {
        self.m == self.n() - 1 && self.is_connected()
    }

    /// The degree multiset, sorted non-increasing.
    pub fn degree_sequence(&self) -> DegreeSequence {
        let mut degrees: Vec<usize> = self.adj.iter().map(Vec::len).collect();
        degrees.sort_unstable_by(|a, b| b.cmp(a));
        DegreeSequence { degrees }
    }

    /// Returns a new graph with `remove`d edges taken out and `add`ed
    /// edges put in; the original is unmodified.
    ///
    /// Removals are applied first. Every removed edge must exist and
    /// every added edge must be absent (and simple) after the removals.
    pub fn rewire(&self, remove: &[(usize, usize)], add: &[(usize, usize)]) -> Result<Graph> {
        let mut adj = self.adj.clone();
        for &(u, v) in remove {
            if u >= self.n() || v >= self.n() || !remove_edge(&mut adj, u, v) {
                return Err(Error::MissingEdge(u, v));
            }
        }
        for &(u, v) in add {
            insert_edge(&mut adj, u, v)?;
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        let m = self.m - remove.len() + add.len();
        Ok(Graph { adj, m })
    }

    /// Relabels vertices: vertex `v` of `self` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n());
        let edges: Vec<(usize, usize)> = self
            .edges()
            .into_iter()
            .map(|(u, v)| (perm[u], perm[v]))
            .collect();
        Graph::from_edge_list(self.n(), &edges).expect("relabeling preserves simplicity")
    }
}

fn insert_edge(adj: &mut [Vec<usize>], u: usize, v: usize) -> Result<()> {
    let n = adj.len();
    if u >= n {
        return Err(Error::IndexOutOfRange { index: u, n });
    }
    if v >= n {
        return Err(Error::IndexOutOfRange { index: v, n });
    }
    if u == v {
        return Err(Error::SelfLoop(u));
    }
    if adj[u].contains(&v) {
        return Err(Error::DuplicateEdge(u, v));
    }
    adj[u].push(v);
    adj[v].push(u);
    Ok(())
}

fn remove_edge(adj: &mut [Vec<usize>], u: usize, v: usize) -> bool {
    let Some(i) = adj[u].iter().position(|&x| x == v) else {
        return false;
    };
    adj[u].swap_remove(i);
    let j = adj[v].iter().position(|&x| x == u).expect("adjacency symmetric");
    adj[v].swap_remove(j);
    true
}

/// A multiset of vertex degrees, sorted non-increasing.
///
/// This is a sufficient statistic for the global mean first return time.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DegreeSequence {
    degrees: Vec<usize>,
}

impl DegreeSequence {
    /// Validates and sorts a degree multiset: all entries must be
    /// positive and the sum even.
    pub fn new(mut degrees: Vec<usize>) -> Result<Self> {
        if degrees.is_empty() {
            return Err(Error::TooSmall { n: 0, min: 1 });
        }
        if degrees.iter().any(|&d| d == 0) {
            return Err(Error::ZeroDegree);
        }
        if degrees.iter().sum::<usize>() % 2 != 0 {
            return Err(Error::NotGraphical);
        }
        degrees.sort_unstable_by(|a, b| b.cmp(a));
        Ok(DegreeSequence { degrees })
    }

    pub fn n(&self) -> usize {
        self.degrees.len()
    }

    /// Half the degree sum.
    pub fn m(&self) -> usize {
        self.degrees.iter().sum::<usize>() / 2
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    /// Erdős–Gallai test: is the sequence realizable by a simple graph?
    pub fn is_graphical(&self) -> bool {
        let d = &self.degrees;
        let n = d.len();
        if d.iter().any(|&x| x >= n) {
            return false;
        }
        let mut prefix = 0usize;
        for k in 1..=n {
            prefix += d[k - 1];
            let mut rhs = k * (k - 1);
            for &di in &d[k..] {
                rhs += di.min(k);
            }
            if prefix > rhs {
                return false;
            }
        }
        true
    }

    /// Graphical with enough total degree for a connected realization
    /// (all entries positive, `m >= n - 1`).
    pub fn is_connected_realizable(&self) -> bool {
        self.is_graphical() && self.m() + 1 >= self.n()
    }
}
