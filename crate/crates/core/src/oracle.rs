//! Independent brute-force ground truth for the extremal constructions.
//!
//! Two enumeration routes: every connected labeled graph (tiny `n`,
//! bitmask subsets of the edge universe) and every connected-realizable
//! degree sequence (moderate `n`, restricted partitions filtered by
//! Erdős–Gallai). The GMFRT depends only on the degree multiset, so both
//! routes must agree wherever they overlap; `certify_constructions`
//! compares the constructive builders against these extrema.
//!
//! Extrema are compared through the exact scaled integer
//! `H = sum_i lcm(1..n-1)/d_i`, which fits comfortably in `u64` for the
//! enumeration caps; rationals are materialized only for the winners and
//! re-checked through the metrics route.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use num_bigint::BigInt;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::error::{Error, Result};
use crate::extremal::{build_max_gmfrt_graph, build_min_gmfrt_graph, ExtremalResult};
use crate::graph::{DegreeSequence, Graph};
use crate::metrics::{gmfrt, gmfrt_of_degrees};
use crate::rational::{fraction_string, Rational};
use crate::realize::realize_connected;

/// Hard cap for labeled-graph enumeration (edge universe fits in 21 bits).
pub const LABELED_CAP: usize = 7;
/// Hard cap for degree-sequence enumeration.
pub const SEQUENCE_CAP: usize = 14;

/// Which enumeration produced a certificate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    LabeledGraphs,
    DegreeSequences,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Method::LabeledGraphs => "labeled_graphs",
            Method::DegreeSequences => "degree_sequences",
        })
    }
}

/// Yields every connected labeled simple graph on `n` vertices with `m`
/// edges, exactly once, in increasing edge-mask order.
pub fn enumerate_connected_labeled(n: usize, m: usize) -> Result<LabeledGraphIter> {
    if n > LABELED_CAP {
        return Err(Error::TooLarge { n, cap: LABELED_CAP });
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let e = pairs.len();
    let exhausted = m > e || (n == 0);
    Ok(LabeledGraphIter {
        n,
        pairs,
        mask: if m == 0 { 0 } else { (1u32 << m) - 1 },
        limit: 1u32 << e,
        m,
        exhausted,
        yielded_empty: false,
    })
}

pub struct LabeledGraphIter {
    n: usize,
    pairs: Vec<(usize, usize)>,
    mask: u32,
    limit: u32,
    m: usize,
    exhausted: bool,
    yielded_empty: bool,
}

impl LabeledGraphIter {
    fn connected(&self, mask: u32) -> bool {
        let mut adj = [0u8; LABELED_CAP];
        for (bit, &(u, v)) in self.pairs.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                adj[u] |= 1 << v;
                adj[v] |= 1 << u;
            }
        }
        let mut seen: u8 = 1;
        loop {
            let mut next = seen;
            for v in 0..self.n {
                if seen >> v & 1 == 1 {
                    next |= adj[v];
                }
            }
            if next == seen {
                break;
            }
            seen = next;
        }
        seen == (1u8 << self.n) - 1
    }

    fn to_graph(&self, mask: u32) -> Graph {
        let edges: Vec<(usize, usize)> = self
            .pairs
            .iter()
            .enumerate()
            .filter(|(bit, _)| mask >> bit & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        Graph::from_edge_list(self.n, &edges).expect("subset of the edge universe is simple")
    }
}

impl Iterator for LabeledGraphIter {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        if self.m == 0 {
            // Only the single-vertex empty graph is connected.
            if self.n == 1 && !self.yielded_empty {
                self.yielded_empty = true;
                return Some(self.to_graph(0));
            }
            return None;
        }
        while !self.exhausted && self.mask < self.limit {
            let mask = self.mask;
            // Gosper's hack: next mask with the same popcount.
            let c = mask & mask.wrapping_neg();
            let r = mask.wrapping_add(c);
            self.mask = r | (((mask ^ r) >> 2) / c);
            if self.mask >= self.limit {
                self.exhausted = true;
            }
            if self.connected(mask) {
                return Some(self.to_graph(mask));
            }
        }
        None
    }
}

/// Yields every non-increasing sequence of `n` degrees in `[1, n-1]`
/// summing to `2m` that passes Erdős–Gallai, in descending lexicographic
/// order. With `m >= n-1` and positive entries every such sequence has a
/// connected realization.
pub fn enumerate_connected_degree_sequences(
    n: usize,
    m: usize,
) -> Result<std::vec::IntoIter<DegreeSequence>> {
    if n > SEQUENCE_CAP {
        return Err(Error::TooLarge { n, cap: SEQUENCE_CAP });
    }
    let hi = n * (n - 1) / 2;
    if n < 2 || m + 1 < n || m > hi {
        return Err(Error::EdgeCountOutOfRange {
            n,
            m,
            lo: n.saturating_sub(1),
            hi,
        });
    }
    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(n);
    gen_partitions(n, 2 * m, n - 1, &mut prefix, &mut out);
    Ok(out.into_iter())
}

fn gen_partitions(
    n: usize,
    remaining: usize,
    max_allowed: usize,
    prefix: &mut Vec<usize>,
    out: &mut Vec<DegreeSequence>,
) {
    let slots = n - prefix.len();
    if slots == 1 {
        if remaining >= 1 && remaining <= max_allowed {
            prefix.push(remaining);
            let ds = DegreeSequence::new(prefix.clone()).expect("positive entries, even sum");
            if ds.is_graphical() {
                out.push(ds);
            }
            prefix.pop();
        }
        return;
    }
    // d must leave at least 1 per remaining slot and cover the average.
    let ub = max_allowed.min(remaining - (slots - 1));
    let lb = remaining.div_ceil(slots);
    let mut d = ub;
    while d >= lb {
        prefix.push(d);
        gen_partitions(n, remaining - d, d, prefix, out);
        prefix.pop();
        d -= 1;
    }
}

/// Exact GMFRT extrema over all connected graphs with `n` vertices and
/// `m` edges, with every attaining degree profile listed.
#[derive(Clone, Debug)]
pub struct ExtremaCertificate {
    pub n: usize,
    pub m: usize,
    pub min_gmfrt: Rational,
    pub max_gmfrt: Rational,
    pub min_profiles: Vec<DegreeSequence>,
    pub max_profiles: Vec<DegreeSequence>,
    /// Number of distinct degree sequences (or labeled graphs) examined.
    pub sequence_count: u64,
    pub method: Method,
}

// Scaled reciprocal sum: H = sum_i L/d_i with L = lcm(1..=n-1).
fn reciprocal_lcm(n: usize) -> u64 {
    (1..n as u64).fold(1, num_integer::lcm)
}

fn scaled_h(degrees: &[usize], l: u64) -> u64 {
    degrees.iter().map(|&d| l / d as u64).sum()
}

fn h_to_gmfrt(h: u64, l: u64, n: usize, m: usize) -> Rational {
    Rational::new(BigInt::from(2 * m as u64 * h), BigInt::from(n as u64 * l))
}

struct ExtremaScan {
    l: u64,
    min_h: u64,
    max_h: u64,
    min_profiles: BTreeSet<Vec<usize>>,
    max_profiles: BTreeSet<Vec<usize>>,
    count: u64,
}

impl ExtremaScan {
    fn new(n: usize) -> Self {
        ExtremaScan {
            l: reciprocal_lcm(n),
            min_h: u64::MAX,
            max_h: 0,
            min_profiles: BTreeSet::new(),
            max_profiles: BTreeSet::new(),
            count: 0,
        }
    }

    fn feed(&mut self, degrees: &[usize]) {
        self.count += 1;
        let h = scaled_h(degrees, self.l);
        if h < self.min_h {
            self.min_h = h;
            self.min_profiles.clear();
        }
        if h == self.min_h {
            self.min_profiles.insert(degrees.to_vec());
        }
        if h > self.max_h {
            self.max_h = h;
            self.max_profiles.clear();
        }
        if h == self.max_h {
            self.max_profiles.insert(degrees.to_vec());
        }
    }

    fn certificate(self, n: usize, m: usize, method: Method) -> ExtremaCertificate {
        assert!(self.count > 0, "no connected graph exists for ({n}, {m})");
        let to_seqs = |set: BTreeSet<Vec<usize>>| {
            set.into_iter()
                .map(|v| DegreeSequence::new(v).expect("profiles are valid"))
                .collect::<Vec<_>>()
        };
        let cert = ExtremaCertificate {
            n,
            m,
            min_gmfrt: h_to_gmfrt(self.min_h, self.l, n, m),
            max_gmfrt: h_to_gmfrt(self.max_h, self.l, n, m),
            min_profiles: to_seqs(self.min_profiles),
            max_profiles: to_seqs(self.max_profiles),
            sequence_count: self.count,
            method,
        };
        // Re-derive the winners through the metrics route.
        for p in &cert.min_profiles {
            assert_eq!(gmfrt_of_degrees(p).unwrap(), cert.min_gmfrt);
        }
        for p in &cert.max_profiles {
            assert_eq!(gmfrt_of_degrees(p).unwrap(), cert.max_gmfrt);
        }
        assert!(cert.min_gmfrt <= cert.max_gmfrt);
        assert!(cert.min_gmfrt >= Rational::from_integer(BigInt::from(n as u64)));
        cert
    }
}

/// Brute-force extrema via the chosen enumeration route.
pub fn brute_force_extrema_with(n: usize, m: usize, method: Method) -> Result<ExtremaCertificate> {
    let mut scan = ExtremaScan::new(n);
    match method {
        Method::LabeledGraphs => {
            for g in enumerate_connected_labeled(n, m)? {
                scan.feed(g.degree_sequence().degrees());
            }
        }
        Method::DegreeSequences => {
            for ds in enumerate_connected_degree_sequences(n, m)? {
                scan.feed(ds.degrees());
            }
        }
    }
    Ok(scan.certificate(n, m, method))
}

/// Brute-force extrema over degree sequences, cross-checked against the
/// labeled-graph route whenever `n` is within the labeled cap.
pub fn brute_force_extrema(n: usize, m: usize) -> Result<ExtremaCertificate> {
    let cert = brute_force_extrema_with(n, m, Method::DegreeSequences)?;
    if n <= LABELED_CAP {
        let labeled = brute_force_extrema_with(n, m, Method::LabeledGraphs)?;
        assert_eq!(labeled.min_gmfrt, cert.min_gmfrt, "route disagreement at ({n},{m})");
        assert_eq!(labeled.max_gmfrt, cert.max_gmfrt, "route disagreement at ({n},{m})");
        assert_eq!(labeled.min_profiles, cert.min_profiles);
        assert_eq!(labeled.max_profiles, cert.max_profiles);
    }
    Ok(cert)
}

/// One `(n, m)` line of a certification run.
#[derive(Clone, Debug)]
pub struct CertifyRow {
    pub certificate: ExtremaCertificate,
    pub constructed_min: Rational,
    pub constructed_max: Rational,
    pub construction_match: bool,
}

/// Full certification sweep: builders versus brute force for every legal
/// `(n, m)` with `3 <= n <= n_max`.
#[derive(Clone, Debug)]
pub struct CertifyReport {
    pub rows: Vec<CertifyRow>,
    pub method: Method,
    /// Sequences realized end-to-end as connected graphs (spot check of
    /// the connected-realizability theorem).
    pub spot_realizations: usize,
}

impl CertifyReport {
    pub fn violations(&self) -> usize {
        self.rows.iter().filter(|r| !r.construction_match).count()
    }

    /// Stable CSV: `n,m,min_gmfrt,max_gmfrt,min_profile,max_profile,construction_match`.
    /// Profiles are space-separated degrees; ties are semicolon-joined.
    pub fn to_csv(&self) -> String {
        let mut out =
            String::from("n,m,min_gmfrt,max_gmfrt,min_profile,max_profile,construction_match\n");
        for row in &self.rows {
            let cert = &row.certificate;
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{}",
                cert.n,
                cert.m,
                fraction_string(&cert.min_gmfrt),
                fraction_string(&cert.max_gmfrt),
                profiles_field(&cert.min_profiles),
                profiles_field(&cert.max_profiles),
                row.construction_match
            );
        }
        out
    }
}

fn profiles_field(profiles: &[DegreeSequence]) -> String {
    profiles
        .iter()
        .map(|p| {
            p.degrees()
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect::<Vec<_>>()
        .join(";")
}

/// Certifies the real builders against brute force.
pub fn certify_constructions(n_max: usize, method: Method) -> Result<CertifyReport> {
    certify_with_builders(n_max, method, build_min_gmfrt_graph, build_max_gmfrt_graph)
}

/// Certification with injectable builders (the negative-control mutation
/// harness corrupts one and expects violations).
pub fn certify_with_builders(
    n_max: usize,
    method: Method,
    min_builder: impl Fn(usize, usize) -> Result<ExtremalResult>,
    max_builder: impl Fn(usize, usize) -> Result<ExtremalResult>,
) -> Result<CertifyReport> {
    let cap = match method {
        Method::LabeledGraphs => LABELED_CAP,
        Method::DegreeSequences => SEQUENCE_CAP,
    };
    if n_max > cap {
        return Err(Error::TooLarge { n: n_max, cap });
    }
    let mut rows = Vec::new();
    for n in 3..=n_max {
        for m in n - 1..=n * (n - 1) / 2 {
            let certificate = brute_force_extrema_with(n, m, method)?;
            let constructed_min = gmfrt(&min_builder(n, m)?.graph)?;
            let constructed_max = gmfrt(&max_builder(n, m)?.graph)?;
            let construction_match =
                constructed_min == certificate.min_gmfrt && constructed_max == certificate.max_gmfrt;
            rows.push(CertifyRow {
                certificate,
                constructed_min,
                constructed_max,
                construction_match,
            });
        }
    }
    let spot_realizations = if method == Method::DegreeSequences {
        spot_realize(n_max, 100)
    } else {
        0
    };
    Ok(CertifyReport {
        rows,
        method,
        spot_realizations,
    })
}

// Realizes `count` pseudo-randomly chosen enumerated sequences as
// connected graphs and checks degrees and connectivity.
fn spot_realize(n_max: usize, count: usize) -> usize {
    if n_max < 3 {
        return 0;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0xC0FF_EE5E_ED01);
    let mut done = 0;
    while done < count {
        let n = 3 + (rng.next_u64() as usize) % (n_max - 2);
        let lo = n - 1;
        let hi = n * (n - 1) / 2;
        let m = lo + (rng.next_u64() as usize) % (hi - lo + 1);
        let seqs: Vec<_> = enumerate_connected_degree_sequences(n, m)
            .expect("in range")
            .collect();
        let ds = &seqs[(rng.next_u64() as usize) % seqs.len()];
        let g = realize_connected(ds).expect("connected-realizable by the standard theorem");
        assert!(g.is_connected());
        assert_eq!(&g.degree_sequence(), ds);
        done += 1;
    }
    done
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};
    use crate::trees::{max_tree_gmfrt, min_tree_gmfrt};

    #[test]
    fn labeled_enumeration_counts() {
        // (3,3): just the triangle.
        assert_eq!(enumerate_connected_labeled(3, 3).unwrap().count(), 1);
        // (3,2): one path per choice of center.
        assert_eq!(enumerate_connected_labeled(3, 2).unwrap().count(), 3);
        // (4,3): Cayley's formula, 4^2 labeled trees.
        assert_eq!(enumerate_connected_labeled(4, 3).unwrap().count(), 16);
        // n = 1, m = 0: the lone vertex.
        assert_eq!(enumerate_connected_labeled(1, 0).unwrap().count(), 1);
        // Disconnected-only configurations yield nothing.
        assert_eq!(enumerate_connected_labeled(2, 0).unwrap().count(), 0);
        assert!(matches!(
            enumerate_connected_labeled(8, 7),
            Err(Error::TooLarge { cap: 7, .. })
        ));
    }

    #[test]
    fn labeled_enumeration_yields_each_once() {
        let all: Vec<Graph> = enumerate_connected_labeled(4, 4).unwrap().collect();
        let distinct: BTreeSet<Vec<(usize, usize)>> =
            all.iter().map(|g| g.edges()).collect();
        assert_eq!(all.len(), distinct.len());
        assert!(all.iter().all(|g| g.is_connected() && g.m() == 4));
    }

    #[test]
    fn sequence_enumeration_examples() {
        let seqs: Vec<_> = enumerate_connected_degree_sequences(4, 3)
            .unwrap()
            .map(|d| d.degrees().to_vec())
            .collect();
        assert_eq!(seqs, vec![vec![3, 1, 1, 1], vec![2, 2, 1, 1]]);
        assert_eq!(enumerate_connected_degree_sequences(3, 3).unwrap().count(), 1);
        let k4: Vec<_> = enumerate_connected_degree_sequences(4, 6).unwrap().collect();
        assert_eq!(k4.len(), 1);
        assert_eq!(k4[0].degrees(), &[3, 3, 3, 3]);
        assert!(matches!(
            enumerate_connected_degree_sequences(15, 20),
            Err(Error::TooLarge { cap: 14, .. })
        ));
        assert!(matches!(
            enumerate_connected_degree_sequences(4, 2),
            Err(Error::EdgeCountOutOfRange { .. })
        ));
    }

    #[test]
    fn sequences_filtered_by_erdos_gallai() {
        // (4,4): [3,3,1,1] sums to 8 but is not graphical and must be absent.
        let seqs: Vec<_> = enumerate_connected_degree_sequences(4, 4)
            .unwrap()
            .map(|d| d.degrees().to_vec())
            .collect();
        assert_eq!(seqs, vec![vec![3, 2, 2, 1], vec![2, 2, 2, 2]]);
    }

    #[test]
    fn extrema_small_cases() {
        let cert = brute_force_extrema(4, 3).unwrap();
        assert_eq!(cert.min_gmfrt, ratio(9, 2));
        assert_eq!(cert.max_gmfrt, int(5));
        assert_eq!(cert.min_profiles[0].degrees(), &[2, 2, 1, 1]);
        assert_eq!(cert.max_profiles[0].degrees(), &[3, 1, 1, 1]);
        assert_eq!(cert.sequence_count, 2);

        // Only the complete graph exists at the top edge count.
        let cert = brute_force_extrema(5, 10).unwrap();
        assert_eq!(cert.min_gmfrt, int(5));
        assert_eq!(cert.max_gmfrt, int(5));

        let cert = brute_force_extrema(5, 8).unwrap();
        assert_eq!(cert.max_gmfrt, ratio(16, 3));
        assert_eq!(cert.max_profiles.len(), 1);
        assert_eq!(cert.max_profiles[0].degrees(), &[4, 4, 3, 3, 2]);
    }

    #[test]
    fn tree_extrema_match_closed_forms() {
        for n in 3..=10 {
            let cert = brute_force_extrema_with(n, n - 1, Method::DegreeSequences).unwrap();
            assert_eq!(cert.min_gmfrt, min_tree_gmfrt(n).unwrap());
            assert_eq!(cert.max_gmfrt, max_tree_gmfrt(n).unwrap());
        }
    }

    #[test]
    fn certify_small_run_is_clean() {
        let report = certify_constructions(6, Method::DegreeSequences).unwrap();
        assert_eq!(report.violations(), 0);
        assert!(report.rows.iter().all(|r| r.construction_match));
        assert_eq!(report.spot_realizations, 100);
        let csv = report.to_csv();
        assert!(csv.starts_with(
            "n,m,min_gmfrt,max_gmfrt,min_profile,max_profile,construction_match\n"
        ));
        assert!(csv.contains("4,3,9/2,5/1,2 2 1 1,3 1 1 1,true"));
    }

    #[test]
    fn certify_labeled_mode() {
        let report = certify_constructions(5, Method::LabeledGraphs).unwrap();
        assert_eq!(report.violations(), 0);
        assert_eq!(report.method, Method::LabeledGraphs);
    }

    #[test]
    fn mutation_harness_trips_certification() {
        // Perturb one degree of the max builder's output; the oracle must
        // flag mismatches (the negative control for criterion coverage).
        let corrupted = |n: usize, m: usize| {
            let mut r = build_max_gmfrt_graph(n, m)?;
            if let Some(g) = perturb_one_degree(&r.graph) {
                r.graph = g;
            }
            Ok(r)
        };
        let report =
            certify_with_builders(5, Method::DegreeSequences, build_min_gmfrt_graph, corrupted)
                .unwrap();
        assert!(report.violations() > 0);
    }

    // Moves one edge endpoint so that exactly two vertex degrees change.
    pub(crate) fn perturb_one_degree(g: &Graph) -> Option<Graph> {
        let n = g.n();
        for u in 0..n {
            for &w in g.neighbors(u) {
                for r in 0..n {
                    if r == u || r == w || g.has_edge(w, r) {
                        continue;
                    }
                    let Ok(cand) = g.rewire(&[(u, w)], &[(w, r)]) else {
                        continue;
                    };
                    if cand.is_connected()
                        && gmfrt(&cand).unwrap() != gmfrt(g).unwrap()
                    {
                        return Some(cand);
                    }
                }
            }
        }
        None
    }
}
