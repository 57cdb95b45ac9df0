//! Deterministic realization of graphical degree sequences.
//!
//! Havel–Hakimi realization, then edge swaps that merge components
//! without changing any degree. A graphical sequence with all degrees
//! positive and `m >= n - 1` always admits a connected realization, and
//! the repair loop reaches one: as long as the graph is disconnected,
//! some component carries a cycle (it has at least as many edges as
//! vertices), and swapping a cycle edge against an edge of another
//! component merges the two.

use crate::error::{Error, Result};
use crate::graph::{DegreeSequence, Graph};

/// Builds some simple graph realizing the sequence (Havel–Hakimi).
///
/// Vertex `i` of the result receives the `i`-th degree of the sorted
/// sequence. Fails with `NotGraphical` if the sequence is not graphical.
pub fn realize_graphical(ds: &DegreeSequence) -> Result<Graph> {
    let n = ds.n();
    let mut residual: Vec<(usize, usize)> = ds.degrees().iter().copied().zip(0..n).collect();
    let mut edges = Vec::with_capacity(ds.m());
    loop {
        residual.sort_unstable_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        let (d, v) = residual[0];
        if d == 0 {
            break;
        }
        if d >= residual.len() {
            return Err(Error::NotGraphical);
        }
        for entry in residual.iter_mut().take(d + 1).skip(1) {
            if entry.0 == 0 {
                return Err(Error::NotGraphical);
            }
            entry.0 -= 1;
            let u = entry.1;
            edges.push((v.min(u), v.max(u)));
        }
        residual[0].0 = 0;
    }
    Graph::from_edge_list(n, &edges)
}

/// Realizes a connected graph with the given degree sequence.
pub fn realize_connected(ds: &DegreeSequence) -> Result<Graph> {
    let n = ds.n();
    if ds.m() + 1 < n {
        return Err(Error::EdgeCountOutOfRange {
            n,
            m: ds.m(),
            lo: n - 1,
            hi: n * (n - 1) / 2,
        });
    }
    Ok(connect_components(realize_graphical(ds)?))
}

/// Merges components by degree-preserving edge swaps until connected.
pub fn connect_components(mut g: Graph) -> Graph {
    loop {
        let comp = components(&g);
        if comp.count == 1 {
            return g;
        }
        let (u, v) = cycle_edge(&g).expect("a disconnected graph with m >= n-1 has a cycle");
        // Any edge in a different component from (u, v) works; take the
        // lexicographically first one.
        let (x, y) = g
            .edges()
            .into_iter()
            .find(|&(x, _)| comp.id[x] != comp.id[u])
            .expect("disconnected graph with positive degrees has another component edge");
        g = g
            .rewire(&[(u, v), (x, y)], &[(u, x), (v, y)])
            .expect("cross-component swap keeps the graph simple");
    }
}

struct Components {
    id: Vec<usize>,
    count: usize,
}

fn components(g: &Graph) -> Components {
    let n = g.n();
    let mut id = vec![usize::MAX; n];
    let mut count = 0;
    for start in 0..n {
        if id[start] != usize::MAX {
            continue;
        }
        let mut stack = vec![start];
        id[start] = count;
        while let Some(u) = stack.pop() {
            for &w in g.neighbors(u) {
                if id[w] == usize::MAX {
                    id[w] = count;
                    stack.push(w);
                }
            }
        }
        count += 1;
    }
    Components { id, count }
}

// Finds an edge lying on a cycle: the first back edge of a DFS forest.
fn cycle_edge(g: &Graph) -> Option<(usize, usize)> {
    let n = g.n();
    let mut seen = vec![false; n];
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut stack = vec![(start, usize::MAX)];
        while let Some((u, from)) = stack.pop() {
            if seen[u] {
                continue;
            }
            seen[u] = true;
            for &w in g.neighbors(u) {
                if !seen[w] {
                    stack.push((w, u));
                } else if w != from {
                    return Some((u.min(w), u.max(w)));
                }
            }
        }
    }
    None
}
