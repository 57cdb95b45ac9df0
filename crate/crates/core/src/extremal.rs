//! Construction of minimal- and maximal-GMFRT connected graphs for a
//! given vertex and edge count.
//!
//! The minimum is attained by near-regular graphs: every degree is
//! `floor(2m/n)` or `ceil(2m/n)`, with `2m - floor(2m/n)*n` vertices on
//! the ceiling. The maximum is attained by concentrating degree into as
//! few vertices as possible; the exact shape splits into four edge-count
//! regimes (complete graph, near-complete, clique plus pendants, star).

use std::cmp::Reverse;
use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::graph::{DegreeSequence, Graph};
use crate::metrics::{gmfrt, gmfrt_of_degrees};
use crate::rational::{decimal_string, fraction_pair, fraction_string, Rational, REPORT_SIG_DIGITS};
use crate::realize::realize_connected;

/// Which extremum a constructed graph realizes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Objective {
    Min,
    Max,
}

impl fmt::Display for Objective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Objective::Min => "min",
            Objective::Max => "max",
        })
    }
}

/// Construction regime of an extremal graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CaseId {
    /// `m = n(n-1)/2`: the complete graph (max side).
    I,
    /// `m > (n-1)(n-2)/2 + 1`: clique on `n-1` vertices plus one vertex
    /// of degree `k` (max side).
    II,
    /// `n-1 < m <= (n-1)(n-2)/2 + 1`: clique on `n-k-1` vertices, one
    /// vertex of degree `l`, `k` pendant leaves on the hub (max side).
    III,
    /// `m = n-1`: the star (max side).
    IV,
    /// All degrees equal (min side).
    Regular,
    /// Degrees split between `floor(2m/n)` and `ceil(2m/n)` (min side).
    NearRegular,
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CaseId::I => "I",
            CaseId::II => "II",
            CaseId::III => "III",
            CaseId::IV => "IV",
            CaseId::Regular => "regular",
            CaseId::NearRegular => "near_regular",
        })
    }
}

/// A constructed extremal graph with its case metadata and the exact
/// GMFRT predicted by the published degree profile.
#[derive(Clone, Debug)]
pub struct ExtremalResult {
    pub graph: Graph,
    pub objective: Objective,
    pub case_id: CaseId,
    /// Integer parameter of cases II and III.
    pub k: Option<usize>,
    /// Integer parameter of case III.
    pub l: Option<usize>,
    /// Average degree `2m/n` (the minimization target is built from its
    /// floor and ceiling).
    pub avg_degree: Rational,
    pub predicted_gmfrt: Rational,
}

impl ExtremalResult {
    /// JSON sidecar: case metadata, degree multiset, exact and decimal GMFRT.
    pub fn to_json(&self) -> serde_json::Value {
        let (num, den) = fraction_pair(&self.predicted_gmfrt).expect("gmfrt fits in i64");
        serde_json::json!({
            "n": self.graph.n(),
            "m": self.graph.m(),
            "objective": self.objective.to_string(),
            "case_id": self.case_id.to_string(),
            "k": self.k,
            "l": self.l,
            "avg_degree": fraction_string(&self.avg_degree),
            "degrees": self.graph.degree_sequence().degrees(),
            "gmfrt": [num, den],
            "gmfrt_decimal": decimal_string(&self.predicted_gmfrt, REPORT_SIG_DIGITS),
        })
    }
}

fn check_range(n: usize, m: usize, min_n: usize) -> Result<()> {
    if n < min_n {
        return Err(Error::TooSmall { n, min: min_n });
    }
    let hi = n * (n - 1) / 2;
    if m + 1 < n || m > hi {
        return Err(Error::EdgeCountOutOfRange {
            n,
            m,
            lo: n - 1,
            hi,
        });
    }
    Ok(())
}

/// Number of vertices with degree `ceil(2m/n)` and `floor(2m/n)` in the
/// minimal-GMFRT profile: `(2m - floor(2m/n) * n, n - that)`.
pub fn min_degree_counts(n: usize, m: usize) -> Result<(usize, usize)> {
    check_range(n, m, 2)?;
    let count_ceil = 2 * m - (2 * m / n) * n;
    Ok((count_ceil, n - count_ceil))
}

/// The minimal-GMFRT degree multiset for `(n, m)`.
pub fn min_degree_profile(n: usize, m: usize) -> Result<DegreeSequence> {
    let (count_ceil, count_floor) = min_degree_counts(n, m)?;
    let floor_deg = 2 * m / n;
    let mut degrees = vec![floor_deg + 1; count_ceil];
    degrees.extend(std::iter::repeat_n(floor_deg, count_floor));
    DegreeSequence::new(degrees)
}

/// Builds a connected graph attaining the minimal GMFRT for `(n, m)`.
///
/// Tries a circulant first (ring plus maximally spread long chords);
/// falls back to Havel–Hakimi realization with connectivity repair when
/// the circulant cannot hit the exact degree counts.
pub fn build_min_gmfrt_graph(n: usize, m: usize) -> Result<ExtremalResult> {
    let target = min_degree_profile(n, m)?;
    let graph = match try_circulant(n, m, &target) {
        Some(g) => g,
        None => realize_connected(&target)?,
    };
    assert_eq!(graph.degree_sequence(), target, "min builder missed the profile");
    assert!(graph.is_connected());
    let (count_ceil, _) = min_degree_counts(n, m)?;
    let predicted = gmfrt_of_degrees(&target)?;
    assert_eq!(predicted, gmfrt(&graph)?);
    Ok(ExtremalResult {
        graph,
        objective: Objective::Min,
        case_id: if count_ceil == 0 {
            CaseId::Regular
        } else {
            CaseId::NearRegular
        },
        k: None,
        l: None,
        avg_degree: Rational::new(BigInt::from(2 * m), BigInt::from(n)),
        predicted_gmfrt: predicted,
    })
}

// Ring-based near-regular construction. Returns None when the exact
// degree counts or connectivity cannot be reached this way (odd-degree
// parity corners); the caller then realizes the profile directly.
fn try_circulant(n: usize, m: usize, target: &DegreeSequence) -> Option<Graph> {
    let floor_deg = 2 * m / n;
    let count_ceil = 2 * m - floor_deg * n;
    let mut edges: Vec<(usize, usize)> = Vec::with_capacity(m);
    let half = if floor_deg % 2 == 0 {
        floor_deg / 2
    } else {
        (floor_deg - 1) / 2
    };
    for off in 1..=half {
        for i in 0..n {
            let j = (i + off) % n;
            edges.push((i.min(j), i.max(j)));
        }
    }
    if floor_deg % 2 == 1 {
        if n % 2 == 1 {
            return None;
        }
        // Diameter matching lifts everyone from floor_deg - 1 to floor_deg.
        for i in 0..n / 2 {
            edges.push((i, i + n / 2));
        }
    }
    // Long chords lift count_ceil/2 disjoint pairs to the ceiling.
    if count_ceil > 0 {
        if count_ceil % 2 == 1 {
            return None;
        }
        let chord = if floor_deg % 2 == 0 { n / 2 } else { n / 2 - 1 };
        if chord <= half || (floor_deg % 2 == 1 && chord == n / 2) {
            return None;
        }
        for j in 0..count_ceil / 2 {
            edges.push((j, j + chord));
        }
    }
    let g = Graph::from_edge_list(n, &edges).ok()?;
    (g.m() == m && g.degree_sequence() == *target && g.is_connected()).then_some(g)
}

/// Dispatches `(n, m)` to its maximal-GMFRT construction case and the
/// parameters `k` (cases II, III) and `l` (case III).
pub fn max_case(n: usize, m: usize) -> Result<(CaseId, Option<usize>, Option<usize>)> {
    check_range(n, m, 3)?;
    if m == n * (n - 1) / 2 {
        return Ok((CaseId::I, None, None));
    }
    if m == n - 1 {
        return Ok((CaseId::IV, None, None));
    }
    if m > (n - 1) * (n - 2) / 2 + 1 {
        let k = m - (n - 1) * (n - 2) / 2;
        debug_assert!((2..=n - 2).contains(&k));
        return Ok((CaseId::II, Some(k), None));
    }
    // Case III: the unique k with
    // (n-k-1)(n-k-2)/2 + k + 1 < m <= (n-k)(n-k-1)/2 + k.
    for k in 1..=n - 3 {
        let lo = (n - k - 1) * (n - k - 2) / 2 + k + 1;
        let hi = (n - k) * (n - k - 1) / 2 + k;
        if lo < m && m <= hi {
            let l = m - (n - k - 1) * (n - k - 2) / 2 - k;
            assert!(l >= 2, "case III parameter l = {l} violates l >= 2 for n = {n}, m = {m}");
            return Ok((CaseId::III, Some(k), Some(l)));
        }
    }
    unreachable!("case III windows partition (n-1, (n-1)(n-2)/2 + 1]")
}

/// The published maximal-GMFRT degree multiset for `(n, m)`.
pub fn max_degree_profile(n: usize, m: usize) -> Result<DegreeSequence> {
    let (case, k, l) = max_case(n, m)?;
    let degrees = match case {
        CaseId::I => vec![n - 1; n],
        CaseId::II => {
            let k = k.unwrap();
            let mut d = vec![n - 1; k];
            d.extend(std::iter::repeat_n(n - 2, n - 1 - k));
            d.push(k);
            d
        }
        CaseId::III => {
            let (k, l) = (k.unwrap(), l.unwrap());
            let mut d = vec![n - 1];
            d.extend(std::iter::repeat_n(n - k - 1, l - 1));
            d.extend(std::iter::repeat_n(n - k - 2, n - k - 1 - l));
            d.push(l);
            d.extend(std::iter::repeat_n(1, k));
            d
        }
        CaseId::IV => {
            let mut d = vec![n - 1];
            d.extend(std::iter::repeat_n(1, n - 1));
            d
        }
        _ => unreachable!(),
    };
    assert_eq!(
        degrees.iter().sum::<usize>(),
        2 * m,
        "published profile must sum to 2m"
    );
    DegreeSequence::new(degrees)
}

/// Builds a connected graph attaining the maximal GMFRT for `(n, m)`.
pub fn build_max_gmfrt_graph(n: usize, m: usize) -> Result<ExtremalResult> {
    let (case, k, l) = max_case(n, m)?;
    let mut edges = Vec::with_capacity(m);
    match case {
        CaseId::I => {
            for u in 0..n {
                for v in u + 1..n {
                    edges.push((u, v));
                }
            }
        }
        CaseId::II => {
            // Clique on 0..n-2, then vertex n-1 joined to the first k.
            for u in 0..n - 1 {
                for v in u + 1..n - 1 {
                    edges.push((u, v));
                }
            }
            for v in 0..k.unwrap() {
                edges.push((v, n - 1));
            }
        }
        CaseId::III => {
            // Clique on 0..n-k-2, vertex n-k-1 joined to the first l,
            // and k leaves hanging off vertex 0.
            let (k, l) = (k.unwrap(), l.unwrap());
            let clique = n - k - 1;
            for u in 0..clique {
                for v in u + 1..clique {
                    edges.push((u, v));
                }
            }
            for v in 0..l {
                edges.push((v, clique));
            }
            for leaf in n - k..n {
                edges.push((0, leaf));
            }
        }
        CaseId::IV => {
            for v in 1..n {
                edges.push((0, v));
            }
        }
        _ => unreachable!(),
    }
    let graph = Graph::from_edge_list(n, &edges)?;
    let profile = max_degree_profile(n, m)?;
    assert_eq!(
        graph.degree_sequence(),
        profile,
        "max builder missed the published profile"
    );
    assert!(graph.is_connected());
    let predicted = gmfrt_of_degrees(&profile)?;
    assert_eq!(predicted, gmfrt(&graph)?);
    Ok(ExtremalResult {
        graph,
        objective: Objective::Max,
        case_id: case,
        k,
        l,
        avg_degree: Rational::new(BigInt::from(2 * m), BigInt::from(n)),
        predicted_gmfrt: predicted,
    })
}

/// One degree-concentration rewiring: strips edges off a low-degree
/// vertex whose sorted degree exceeds the maximal profile and re-points
/// them at the highest-degree vertices below the `n - 1` cap. The GMFRT
/// strictly increases and `n`, `m`, connectivity are preserved.
///
/// Fails with `AlreadyExtremal` when the degree multiset already equals
/// the maximal profile, and `NoValidMove` when no improving connected
/// move of this family exists (reported, never guessed around).
pub fn concentrate_step(g: &Graph) -> Result<Graph> {
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    let (n, m) = (g.n(), g.m());
    if n < 3 {
        return Err(Error::AlreadyExtremal);
    }
    let target = max_degree_profile(n, m)?;
    if g.degree_sequence() == target {
        return Err(Error::AlreadyExtremal);
    }
    let t = target.degrees();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (Reverse(g.degree(v)), v));

    // Smallest-degree mismatches first; among a tied degree class, try
    // donors in ascending vertex order.
    let mut tried = vec![false; n];
    for i in (0..n).rev() {
        let class_degree = g.degree(order[i]);
        if class_degree <= t[i] {
            continue;
        }
        let mut donors: Vec<usize> = (0..n).filter(|&v| g.degree(v) == class_degree).collect();
        donors.retain(|&v| !tried[v]);
        for donor in donors {
            tried[donor] = true;
            if let Some(out) = try_full_strip(g, donor, t[i]) {
                return Ok(out);
            }
        }
    }
    if let Some(out) = best_single_repoint(g) {
        return Ok(out);
    }
    Err(Error::NoValidMove)
}

// Strips `donor` down to `target_deg`, re-pointing each removed edge
// (donor, w) to (w, receiver) with the receiver chosen highest-degree
// first under the n-1 cap. Every re-point requires receiver degree >=
// donor degree, which makes the whole step strictly GMFRT-increasing.
fn try_full_strip(g: &Graph, donor: usize, target_deg: usize) -> Option<Graph> {
    let n = g.n();
    let mut work = g.clone();
    for _ in 0..g.degree(donor).saturating_sub(target_deg) {
        let mut receivers: Vec<usize> = (0..n)
            .filter(|&r| r != donor && work.degree(r) < n - 1 && work.degree(r) >= work.degree(donor))
            .collect();
        receivers.sort_by_key(|&r| (Reverse(work.degree(r)), r));
        let mut neighbors: Vec<usize> = work.neighbors(donor).to_vec();
        neighbors.sort_by_key(|&w| (work.degree(w), w));
        let mut applied = false;
        'search: for &r in &receivers {
            for &w in &neighbors {
                if w != r && !work.has_edge(w, r) {
                    work = work
                        .rewire(&[(donor, w)], &[(w, r)])
                        .expect("re-point keeps the graph simple");
                    applied = true;
                    break 'search;
                }
            }
        }
        if !applied {
            return None;
        }
    }
    if !work.is_connected() {
        return None;
    }
    debug_assert!(gmfrt(&work).unwrap() > gmfrt(g).unwrap());
    Some(work)
}

// Exhaustive fallback over single-edge re-points; returns the connected
// move with the largest exact GMFRT gain (first in (u, w, r) order on
// ties), if any improving move exists.
fn best_single_repoint(g: &Graph) -> Option<Graph> {
    let n = g.n();
    let mut best: Option<(Rational, Graph)> = None;
    for u in 0..n {
        for &w in g.neighbors(u) {
            for r in 0..n {
                if r == u || r == w || g.has_edge(w, r) || g.degree(r) >= n - 1 {
                    continue;
                }
                if g.degree(r) < g.degree(u) {
                    continue;
                }
                let candidate = g
                    .rewire(&[(u, w)], &[(w, r)])
                    .expect("re-point keeps the graph simple");
                if !candidate.is_connected() {
                    continue;
                }
                let gain = gmfrt(&candidate).unwrap() - gmfrt(g).unwrap();
                if gain <= Rational::from_integer(BigInt::from(0)) {
                    continue;
                }
                if best.as_ref().is_none_or(|(b, _)| gain > *b) {
                    best = Some((gain, candidate));
                }
            }
        }
    }
    best.map(|(_, g)| g)
}

/// Iterates [`concentrate_step`] until the maximal profile is reached.
/// Returns the intermediate graphs (excluding the input); a trailing
/// `NoValidMove` is surfaced as the error.
pub fn concentrate_to_max(g: &Graph) -> Result<Vec<Graph>> {
    let mut current = g.clone();
    let mut steps = Vec::new();
    loop {
        match concentrate_step(&current) {
            Ok(next) => {
                current = next.clone();
                steps.push(next);
            }
            Err(Error::AlreadyExtremal) => return Ok(steps),
            Err(e) => return Err(e),
        }
    }
}
