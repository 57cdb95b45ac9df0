//! Exact return-time metrics for random walks on connected graphs.
//!
//! For a simple random walk the stationary distribution is
//! `pi_i = d_i / 2m`, the mean first return time of vertex `i` is its
//! reciprocal `mu_i = 2m / d_i`, and the global mean first return time
//! (GMFRT) averages `mu_i` over all vertices. The GMFRT therefore
//! depends on the degree multiset alone.

use num_bigint::BigInt;
use num_traits::One;
use serde_json::json;

use crate::error::{Error, Result};
use crate::graph::{DegreeSequence, Graph};
use crate::rational::{decimal_string, fraction_pair, Rational, REPORT_SIG_DIGITS};

fn check_walkable(g: &Graph) -> Result<()> {
    if g.n() < 2 {
        return Err(Error::TooSmall { n: g.n(), min: 2 });
    }
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    Ok(())
}

/// Stationary distribution `pi_i = d_i / 2m`, as exact rationals summing to 1.
pub fn stationary(g: &Graph) -> Result<Vec<Rational>> {
    check_walkable(g)?;
    let two_m = BigInt::from(2 * g.m());
    Ok((0..g.n())
        .map(|v| Rational::new(BigInt::from(g.degree(v)), two_m.clone()))
        .collect())
}

/// Per-vertex mean first return times `mu_i = 2m / d_i`.
pub fn mfrt(g: &Graph) -> Result<Vec<Rational>> {
    check_walkable(g)?;
    let two_m = BigInt::from(2 * g.m());
    Ok((0..g.n())
        .map(|v| Rational::new(two_m.clone(), BigInt::from(g.degree(v))))
        .collect())
}

/// Global mean first return time `(1/n) * sum_i mu_i`.
pub fn gmfrt(g: &Graph) -> Result<Rational> {
    check_walkable(g)?;
    gmfrt_of_degrees(&g.degree_sequence())
}

/// GMFRT computed from a degree multiset alone: `(2m/n) * sum_i 1/d_i`.
pub fn gmfrt_of_degrees(ds: &DegreeSequence) -> Result<Rational> {
    if ds.degrees().iter().any(|&d| d == 0) {
        return Err(Error::ZeroDegree);
    }
    let mut reciprocal_sum = Rational::from_integer(BigInt::from(0));
    for &d in ds.degrees() {
        reciprocal_sum += Rational::new(BigInt::one(), BigInt::from(d));
    }
    let scale = Rational::new(BigInt::from(2 * ds.m()), BigInt::from(ds.n()));
    Ok(scale * reciprocal_sum)
}

/// Exact per-vertex and global return-time metrics for one graph.
#[derive(Clone, Debug, PartialEq)]
pub struct GmfrtReport {
    pub n: usize,
    pub m: usize,
    pub mfrt: Vec<Rational>,
    pub stationary: Vec<Rational>,
    pub gmfrt: Rational,
}

impl GmfrtReport {
    pub fn compute(g: &Graph) -> Result<Self> {
        let mfrt = mfrt(g)?;
        let stationary = stationary(g)?;
        let gmfrt = gmfrt(g)?;
        debug_assert!(stationary.iter().sum::<Rational>().is_one());
        debug_assert!(mfrt
            .iter()
            .zip(&stationary)
            .all(|(mu, pi)| (mu * pi).is_one()));
        Ok(GmfrtReport {
            n: g.n(),
            m: g.m(),
            mfrt,
            stationary,
            gmfrt,
        })
    }

    /// JSON report: `{ "n", "m", "mfrt": [[num,den],...], "gmfrt": [num,den],
    /// "gmfrt_decimal": string }`.
    pub fn to_json(&self) -> serde_json::Value {
        let pair = |r: &Rational| {
            let (num, den) = fraction_pair(r).expect("report values fit in i64");
            json!([num, den])
        };
        json!({
            "n": self.n,
            "m": self.m,
            "mfrt": self.mfrt.iter().map(pair).collect::<Vec<_>>(),
            "gmfrt": pair(&self.gmfrt),
            "gmfrt_decimal": decimal_string(&self.gmfrt, REPORT_SIG_DIGITS),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn graph(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::from_edge_list(n, edges).unwrap()
    }

    fn triangle() -> Graph {
        graph(3, &[(0, 1), (1, 2), (0, 2)])
    }

    fn star5() -> Graph {
        graph(5, &[(0, 1), (0, 2), (0, 3), (0, 4)])
    }

    fn p4() -> Graph {
        graph(4, &[(0, 1), (1, 2), (2, 3)])
    }

    #[test]
    fn stationary_examples() {
        assert_eq!(
            stationary(&triangle()).unwrap(),
            vec![ratio(1, 3), ratio(1, 3), ratio(1, 3)]
        );
        assert_eq!(
            stationary(&star5()).unwrap(),
            vec![ratio(4, 8), ratio(1, 8), ratio(1, 8), ratio(1, 8), ratio(1, 8)]
        );
        let p3 = graph(3, &[(0, 1), (1, 2)]);
        assert_eq!(
            stationary(&p3).unwrap(),
            vec![ratio(1, 4), ratio(2, 4), ratio(1, 4)]
        );
    }

    #[test]
    fn mfrt_examples() {
        assert_eq!(mfrt(&triangle()).unwrap(), vec![int(3), int(3), int(3)]);
        assert_eq!(
            mfrt(&star5()).unwrap(),
            vec![int(2), int(8), int(8), int(8), int(8)]
        );
        assert_eq!(
            mfrt(&p4()).unwrap(),
            vec![int(6), int(3), int(3), int(6)]
        );
    }

    #[test]
    fn gmfrt_examples() {
        // Complete graphs are regular, so the GMFRT equals n.
        for n in 2..=6 {
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    edges.push((u, v));
                }
            }
            assert_eq!(gmfrt(&graph(n, &edges)).unwrap(), int(n as i64));
        }
        assert_eq!(gmfrt(&p4()).unwrap(), ratio(9, 2));
        assert_eq!(gmfrt(&star5()).unwrap(), ratio(34, 5));
    }

    #[test]
    fn gmfrt_of_degrees_examples() {
        let ds = |v: Vec<usize>| DegreeSequence::new(v).unwrap();
        assert_eq!(gmfrt_of_degrees(&ds(vec![2, 2, 2])).unwrap(), int(3));
        assert_eq!(
            gmfrt_of_degrees(&ds(vec![4, 1, 1, 1, 1])).unwrap(),
            ratio(34, 5)
        );
        // Degree profile of the worked (n=12, m=19) maximal graph; value
        // confirmed by independent brute-force rational summation.
        let fig = ds(vec![11, 5, 5, 4, 4, 3, 1, 1, 1, 1, 1, 1]);
        assert_eq!(fig.m(), 19);
        assert_eq!(gmfrt_of_degrees(&fig).unwrap(), ratio(45923, 1980));
        assert_eq!(
            decimal_string(&gmfrt_of_degrees(&fig).unwrap(), 12),
            "23.1934343434"
        );
    }

    #[test]
    fn degree_multiset_sufficiency() {
        let g = graph(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2), (1, 3)]);
        assert_eq!(
            gmfrt(&g).unwrap(),
            gmfrt_of_degrees(&g.degree_sequence()).unwrap()
        );
    }

    #[test]
    fn rejects_unwalkable_graphs() {
        let single = graph(1, &[]);
        assert_eq!(gmfrt(&single), Err(Error::TooSmall { n: 1, min: 2 }));
        let split = graph(4, &[(0, 1), (2, 3)]);
        assert_eq!(gmfrt(&split), Err(Error::NotConnected));
    }

    #[test]
    fn report_json_schema() {
        let report = GmfrtReport::compute(&p4()).unwrap();
        let v = report.to_json();
        assert_eq!(v["n"], 4);
        assert_eq!(v["m"], 3);
        assert_eq!(v["gmfrt"], serde_json::json!([9, 2]));
        assert_eq!(v["gmfrt_decimal"], "4.50000000000");
        assert_eq!(v["mfrt"][0], serde_json::json!([6, 1]));
        assert_eq!(v["mfrt"].as_array().unwrap().len(), 4);
    }
}
