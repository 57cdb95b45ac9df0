//! Extremal trees and the two GMFRT-monotone tree transforms.
//!
//! Among all trees on `n` vertices the path minimizes the GMFRT at
//! `n + (n-2)/n` and the star maximizes it at `2n - 4 + 4/n`. The two
//! transforms move any tree strictly toward one of those extremes, with
//! a closed-form change in GMFRT that depends only on the pivot degrees:
//!
//! * flattening a vertex of degree `d0 >= 3` down to degree 2 lowers the
//!   GMFRT by `(1/n) * (2(n-1)/d0 + (n-1)(d0-3))`;
//! * folding a degree-`d2` vertex into a degree-`d1` vertex (both >= 2)
//!   raises it by `(2(n-1)/n) * (d1+d2)(d2-1)(d1-1) / (d1 d2 (d1+d2-1))`.

use num_bigint::BigInt;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::metrics::gmfrt;
use crate::rational::{int, Rational};

/// Path graph `0 - 1 - ... - n-1`: the unique minimal-GMFRT tree shape.
pub fn build_path(n: usize) -> Result<Graph> {
    if n < 2 {
        return Err(Error::TooSmall { n, min: 2 });
    }
    let edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
    Graph::from_edge_list(n, &edges)
}

/// Star with center 0: the maximal-GMFRT tree shape.
pub fn build_star(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::TooSmall { n, min: 3 });
    }
    let edges: Vec<_> = (1..n).map(|v| (0, v)).collect();
    Graph::from_edge_list(n, &edges)
}

/// Closed form `n + (n-2)/n` for the minimal GMFRT over trees on `n` vertices.
pub fn min_tree_gmfrt(n: usize) -> Result<Rational> {
    if n < 2 {
        return Err(Error::TooSmall { n, min: 2 });
    }
    let n = n as i64;
    Ok(int(n) + Rational::new(BigInt::from(n - 2), BigInt::from(n)))
}

/// Closed form `2n - 4 + 4/n` for the maximal GMFRT over trees on `n` vertices.
pub fn max_tree_gmfrt(n: usize) -> Result<Rational> {
    if n < 3 {
        return Err(Error::TooSmall { n, min: 3 });
    }
    let n = n as i64;
    Ok(int(2 * n - 4) + Rational::new(BigInt::from(4), BigInt::from(n)))
}

/// One tree transform: the input, the result, the pivot vertex, and the
/// exact predicted change `gmfrt(before) - gmfrt(after)`.
#[derive(Clone, Debug)]
pub struct TreeTransformOutcome {
    pub before: Graph,
    pub after: Graph,
    pub pivot: usize,
    pub predicted_delta: Rational,
}

fn check_tree(t: &Graph) -> Result<()> {
    if !t.is_tree() {
        return Err(Error::NotATree { n: t.n(), m: t.m() });
    }
    Ok(())
}

/// Flattens a vertex of degree `d0 >= 3` down to degree 2, reattaching
/// the `d0 - 2` detached neighbors (with their subtrees) to distinct
/// leaves. The GMFRT strictly decreases; iterating yields a path.
///
/// Detaches the neighbors with the smallest subtrees (ties by index)
/// and reattaches each to the lowest-indexed unused leaf already in the
/// pivot's component, which keeps the result connected.
pub fn flatten_step(t: &Graph, v0: usize) -> Result<TreeTransformOutcome> {
    check_tree(t)?;
    let n = t.n();
    if v0 >= n {
        return Err(Error::IndexOutOfRange { index: v0, n });
    }
    let d0 = t.degree(v0);
    if d0 < 3 {
        return Err(Error::DegreeTooLow {
            vertex: v0,
            degree: d0,
            min: 3,
        });
    }

    // Subtree membership away from v0, per neighbor.
    let subtrees: Vec<Vec<usize>> = t
        .neighbors(v0)
        .iter()
        .map(|&u| subtree_vertices(t, v0, u))
        .collect();
    let mut order: Vec<usize> = (0..d0).collect();
    order.sort_by_key(|&i| (subtrees[i].len(), t.neighbors(v0)[i]));
    let detached: Vec<usize> = order[..d0 - 2].to_vec();

    // Leaves of the original tree currently in v0's component; detached
    // subtrees rejoin the pool as they are reattached.
    let mut in_main = vec![true; n];
    for &i in &detached {
        for &w in &subtrees[i] {
            in_main[w] = false;
        }
    }
    let mut used = vec![false; n];
    let mut remove = Vec::with_capacity(d0 - 2);
    let mut add = Vec::with_capacity(d0 - 2);
    for &i in &detached {
        let u = t.neighbors(v0)[i];
        let leaf = (0..n)
            .find(|&w| in_main[w] && !used[w] && t.degree(w) == 1)
            .ok_or(Error::NoEligibleLeaves)?;
        used[leaf] = true;
        remove.push((v0, u));
        add.push((u, leaf));
        for &w in &subtrees[i] {
            in_main[w] = true;
        }
    }
    let after = t.rewire(&remove, &add)?;

    let delta = flatten_delta(n, d0);
    finish(t, after, v0, delta, true)
}

/// Exact GMFRT decrease of [`flatten_step`] at pivot degree `d0`:
/// `(1/n) * (2(n-1)/d0 + (n-1)(d0-3))`.
pub fn flatten_delta(n: usize, d0: usize) -> Rational {
    let (n, d0) = (n as i64, d0 as i64);
    (Rational::new(BigInt::from(2 * (n - 1)), BigInt::from(d0)) + int((n - 1) * (d0 - 3)))
        / int(n)
}

/// Moves all but one of `v2`'s edges onto `v1`, leaving `v2` a leaf.
/// Both pivots must have degree >= 2. The GMFRT strictly increases;
/// iterating yields a star.
///
/// If `v1` and `v2` are adjacent that edge is kept; otherwise `v2`
/// keeps its edge toward `v1`, so the result stays connected.
pub fn starify_step(t: &Graph, v1: usize, v2: usize) -> Result<TreeTransformOutcome> {
    check_tree(t)?;
    let n = t.n();
    for v in [v1, v2] {
        if v >= n {
            return Err(Error::IndexOutOfRange { index: v, n });
        }
    }
    if v1 == v2 {
        return Err(Error::SameVertex);
    }
    let (d1, d2) = (t.degree(v1), t.degree(v2));
    for (v, d) in [(v1, d1), (v2, d2)] {
        if d < 2 {
            return Err(Error::DegreeTooLow {
                vertex: v,
                degree: d,
                min: 2,
            });
        }
    }

    let toward_v1 = first_hop(t, v2, v1);
    let moved: Vec<usize> = t
        .neighbors(v2)
        .iter()
        .copied()
        .filter(|&w| w != toward_v1)
        .collect();
    let remove: Vec<_> = moved.iter().map(|&w| (v2, w)).collect();
    let add: Vec<_> = moved.iter().map(|&w| (v1, w)).collect();
    let after = t.rewire(&remove, &add)?;

    let delta = starify_delta(n, d1, d2);
    finish(t, after, v2, delta, false)
}

/// Exact GMFRT change of [`starify_step`] for pivot degrees `d1`, `d2`
/// (negative: the GMFRT grows):
/// `(2(n-1)/n) * (d1+d2)(1-d2)(d1-1) / (d1 d2 (d1+d2-1))`.
pub fn starify_delta(n: usize, d1: usize, d2: usize) -> Rational {
    let (n, d1, d2) = (n as i64, d1 as i64, d2 as i64);
    Rational::new(BigInt::from(2 * (n - 1)), BigInt::from(n))
        * Rational::new(
            BigInt::from((d1 + d2) * (1 - d2) * (d1 - 1)),
            BigInt::from(d1 * d2 * (d1 + d2 - 1)),
        )
}

fn finish(
    before: &Graph,
    after: Graph,
    pivot: usize,
    predicted_delta: Rational,
    decreasing: bool,
) -> Result<TreeTransformOutcome> {
    // Self-check: the closed-form delta must match the recomputed GMFRT
    // difference exactly, and the transform must keep the graph a tree.
    assert!(after.is_tree(), "transform broke the tree invariant");
    let actual = gmfrt(before)? - gmfrt(&after)?;
    assert_eq!(
        actual, predicted_delta,
        "transform delta mismatch at pivot {pivot}: predicted {predicted_delta}, got {actual}"
    );
    if decreasing {
        assert!(predicted_delta.is_positive());
    } else {
        assert!(predicted_delta.is_negative());
    }
    Ok(TreeTransformOutcome {
        before: before.clone(),
        after,
        pivot,
        predicted_delta,
    })
}

// Vertices of the subtree hanging off `child` when the edge (root, child)
// is cut.
fn subtree_vertices(t: &Graph, root: usize, child: usize) -> Vec<usize> {
    let mut out = vec![child];
    let mut seen = vec![false; t.n()];
    seen[root] = true;
    seen[child] = true;
    let mut idx = 0;
    while idx < out.len() {
        let u = out[idx];
        idx += 1;
        for &w in t.neighbors(u) {
            if !seen[w] {
                seen[w] = true;
                out.push(w);
            }
        }
    }
    out
}

// First vertex on the tree path from `src` toward `dst`.
fn first_hop(t: &Graph, src: usize, dst: usize) -> usize {
    for &u in t.neighbors(src) {
        if u == dst || subtree_vertices(t, src, u).contains(&dst) {
            return u;
        }
    }
    unreachable!("trees are connected");
}

/// Applies [`flatten_step`] at the lowest-index vertex of degree >= 3
/// until none remains, returning the step trace. Ends at a path.
pub fn flatten_to_path(t: &Graph) -> Result<Vec<TreeTransformOutcome>> {
    check_tree(t)?;
    let mut current = t.clone();
    let mut steps = Vec::new();
    while let Some(v0) = (0..current.n()).find(|&v| current.degree(v) >= 3) {
        let step = flatten_step(&current, v0)?;
        current = step.after.clone();
        steps.push(step);
    }
    debug_assert!(current.degree_sequence().degrees().iter().all(|&d| d <= 2));
    Ok(steps)
}

/// Applies [`starify_step`] at the two highest-degree vertices until at
/// most one vertex of degree >= 2 remains, returning the step trace.
/// Ends at a star.
pub fn starify_to_star(t: &Graph) -> Result<Vec<TreeTransformOutcome>> {
    check_tree(t)?;
    let mut current = t.clone();
    let mut steps = Vec::new();
    loop {
        let mut order: Vec<usize> = (0..current.n()).collect();
        order.sort_by_key(|&v| (std::cmp::Reverse(current.degree(v)), v));
        let (v1, v2) = (order[0], order[1]);
        if current.degree(v2) < 2 {
            return Ok(steps);
        }
        let step = starify_step(&current, v1, v2)?;
        current = step.after.clone();
        steps.push(step);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn path_and_closed_form_agree() {
        assert_eq!(gmfrt(&build_path(2).unwrap()).unwrap(), int(2));
        assert_eq!(min_tree_gmfrt(2).unwrap(), int(2));
        assert_eq!(gmfrt(&build_path(3).unwrap()).unwrap(), ratio(10, 3));
        assert_eq!(gmfrt(&build_path(4).unwrap()).unwrap(), ratio(9, 2));
        assert_eq!(min_tree_gmfrt(10).unwrap(), ratio(54, 5));
        for n in 2..=20 {
            assert_eq!(
                gmfrt(&build_path(n).unwrap()).unwrap(),
                min_tree_gmfrt(n).unwrap()
            );
        }
        assert_eq!(build_path(1).unwrap_err(), Error::TooSmall { n: 1, min: 2 });
    }

    #[test]
    fn star_and_closed_form_agree() {
        assert_eq!(max_tree_gmfrt(3).unwrap(), ratio(10, 3));
        assert_eq!(max_tree_gmfrt(3).unwrap(), min_tree_gmfrt(3).unwrap());
        assert_eq!(gmfrt(&build_star(4).unwrap()).unwrap(), int(5));
        assert_eq!(gmfrt(&build_star(5).unwrap()).unwrap(), ratio(34, 5));
        for n in 3..=20 {
            assert_eq!(
                gmfrt(&build_star(n).unwrap()).unwrap(),
                max_tree_gmfrt(n).unwrap()
            );
        }
        assert_eq!(build_star(2).unwrap_err(), Error::TooSmall { n: 2, min: 3 });
    }

    #[test]
    fn flatten_star5_reaches_path_profile() {
        let star = build_star(5).unwrap();
        let out = flatten_step(&star, 0).unwrap();
        assert_eq!(out.predicted_delta, ratio(6, 5));
        assert_eq!(out.after.degree_sequence().degrees(), &[2, 2, 2, 1, 1]);
        assert_eq!(gmfrt(&out.after).unwrap(), ratio(28, 5));
    }

    #[test]
    fn flatten_degree_bookkeeping() {
        // Double star: centers 0 and 1 with three leaves each.
        let t = Graph::from_edge_list(
            8,
            &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 5), (1, 6), (1, 7)],
        )
        .unwrap();
        let leaves_before = |g: &Graph| (0..g.n()).filter(|&v| g.degree(v) == 1).count();
        let d0 = t.degree(0);
        let out = flatten_step(&t, 0).unwrap();
        assert_eq!(out.after.degree(0), 2);
        // Leaf count drops by d0 - 2; degree-2 count rises by d0 - 1.
        assert_eq!(leaves_before(&out.after), leaves_before(&t) - (d0 - 2));
        let deg2 = |g: &Graph| (0..g.n()).filter(|&v| g.degree(v) == 2).count();
        assert_eq!(deg2(&out.after), deg2(&t) + (d0 - 1));
    }

    #[test]
    fn flatten_rejects_low_degree() {
        let p4 = build_path(4).unwrap();
        for v in 0..4 {
            assert!(matches!(
                flatten_step(&p4, v),
                Err(Error::DegreeTooLow { min: 3, .. })
            ));
        }
        let not_tree = Graph::from_edge_list(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(
            flatten_step(&not_tree, 0),
            Err(Error::NotATree { n: 3, m: 3 })
        );
    }

    #[test]
    fn starify_p4_to_star() {
        let p4 = build_path(4).unwrap();
        let out = starify_step(&p4, 1, 2).unwrap();
        assert_eq!(out.predicted_delta, ratio(-1, 2));
        assert_eq!(out.after.degree_sequence().degrees(), &[3, 1, 1, 1]);
        assert_eq!(gmfrt(&out.after).unwrap(), int(5));
        assert_eq!(out.pivot, 2);
    }

    #[test]
    fn starify_p5_interior() {
        let p5 = build_path(5).unwrap();
        let out = starify_step(&p5, 1, 3).unwrap();
        assert_eq!(out.predicted_delta, ratio(-8, 15));
        assert_eq!(gmfrt(&out.after).unwrap(), ratio(28, 5) + ratio(8, 15));
    }

    #[test]
    fn starify_rejects_bad_pivots() {
        let p4 = build_path(4).unwrap();
        assert!(matches!(
            starify_step(&p4, 1, 0),
            Err(Error::DegreeTooLow { min: 2, .. })
        ));
        assert_eq!(starify_step(&p4, 1, 1), Err(Error::SameVertex));
    }

    #[test]
    fn flatten_converges_to_path() {
        // Spider with three legs of length 2.
        let t = Graph::from_edge_list(
            7,
            &[(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)],
        )
        .unwrap();
        let steps = flatten_to_path(&t).unwrap();
        assert!(!steps.is_empty());
        let last = &steps.last().unwrap().after;
        assert_eq!(gmfrt(last).unwrap(), min_tree_gmfrt(7).unwrap());
    }

    #[test]
    fn starify_converges_to_star() {
        let p6 = build_path(6).unwrap();
        let steps = starify_to_star(&p6).unwrap();
        let last = &steps.last().unwrap().after;
        assert_eq!(gmfrt(last).unwrap(), max_tree_gmfrt(6).unwrap());
        // The trace's deltas telescope to the total change.
        let total: Rational = steps.iter().map(|s| s.predicted_delta.clone()).sum();
        assert_eq!(
            total,
            min_tree_gmfrt(6).unwrap() - max_tree_gmfrt(6).unwrap()
        );
    }

    #[test]
    fn flatten_star6_needs_chained_reattachment() {
        // Star with 5 leaves: only 2 leaves remain attached to the
        // center, so a detached leaf must receive another one.
        let star = build_star(6).unwrap();
        let out = flatten_step(&star, 0).unwrap();
        assert_eq!(out.after.degree_sequence().degrees(), &[2, 2, 2, 2, 1, 1]);
        assert_eq!(gmfrt(&out.after).unwrap(), min_tree_gmfrt(6).unwrap());
    }
}
