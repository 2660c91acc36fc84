use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use super::{binomial, central_binomials, rng_from_seed, sample_vertex_addition_with, DegreeDistribution};
use crate::error::{Error, Result};
use crate::graph::{automorphism_count, canonical_form, is_isomorphic, isomorphism_classes, Graph};

/// Largest graph handled by [`likelihood_exact`].
pub const MAX_EXACT_VERTICES: usize = 10;

/// An exact probability, printed as `p/q`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Likelihood(pub BigRational);

impl Likelihood {
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }
}

impl fmt::Display for Likelihood {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl Serialize for Likelihood {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> BigRational {
    BigRational::new(num.into(), den.into())
}

fn small_binomial(n: usize, k: usize) -> u128 {
    binomial(n, k).to_u128().expect("small binomial")
}

/// `Pr[G_n = H]` for the labelled graph `H` under the vertex addition
/// process with degree distribution `dist`.
pub fn labeled_probability(h: &Graph, dist: &DegreeDistribution) -> BigRational {
    let mut p = BigRational::one();
    for t in 2..=h.n() {
        let d = h.down_degree(t);
        p *= dist.probability(t, d) / BigRational::from_integer(binomial(t - 1, d));
    }
    p
}

/// `Pr[G_n ≅ G]` under the uniform-degree process, exactly.
///
/// Sums the arrival-order weight `∏ 1/C(t-1, d⁻(t))` over all `n!` orders
/// with a subset recursion, then divides by `n!·|Aut(G)|` since each
/// labelled copy arises from `|Aut(G)|` orders.
pub fn likelihood_exact(g: &Graph) -> Result<Likelihood> {
    let n = g.n();
    if n > MAX_EXACT_VERTICES {
        return Err(Error::TooManyVertices { op: "likelihood_exact", n, max: MAX_EXACT_VERTICES });
    }
    if n <= 1 {
        return Ok(Likelihood(BigRational::one()));
    }
    // scale[t] = lcm_k C(t-1, k) keeps every partial sum an integer
    let scale: Vec<u128> = (0..=n)
        .map(|t| (0..t.max(1)).fold(1u128, |l, k| l.lcm(&small_binomial(t.saturating_sub(1), k))))
        .collect();
    let rows: Vec<u64> = (0..n).map(|v| g.row_mask(v)).collect();
    let full = (1usize << n) - 1;
    let mut weight = vec![0u128; 1 << n];
    weight[0] = 1;
    for set in 0..full {
        let w = weight[set];
        if w == 0 {
            continue;
        }
        let size = set.count_ones() as usize;
        let step = scale[size + 1];
        for v in 0..n {
            if set >> v & 1 == 0 {
                let d = (rows[v] & set as u64).count_ones() as usize;
                weight[set | 1 << v] += w * (step / small_binomial(size, d));
            }
        }
    }
    let orders: u128 = (1..=n as u128).product();
    let denom = scale[1..].iter().product::<u128>() * orders * u128::from(automorphism_count(g)?);
    Ok(Likelihood(ratio(weight[full], denom)))
}

/// `(1 / (|Aut| · ∏ C_max(i)), 1 / |Aut|)`.
pub fn likelihood_bounds(g: &Graph) -> Result<(BigRational, BigRational)> {
    let aut = BigInt::from(automorphism_count(g)?);
    let spread: BigInt = central_binomials(g.n()).into_iter().map(BigInt::from).product();
    Ok((ratio(1, &aut * spread), ratio(1, aut)))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct McEstimate {
    pub samples: u64,
    pub hits: u64,
    pub seed: u64,
    pub estimate: f64,
    pub stderr: f64,
}

/// Fraction of uniform-degree samples isomorphic to `g`.
pub fn likelihood_mc(g: &Graph, samples: u64, seed: u64) -> Result<McEstimate> {
    assert!(samples >= 1, "need at least one sample");
    let mut rng = rng_from_seed(seed);
    let mut hits = 0u64;
    for _ in 0..samples {
        let s = sample_vertex_addition_with(g.n(), &DegreeDistribution::Uniform, &mut rng);
        if is_isomorphic(&s, g)? {
            hits += 1;
        }
    }
    let estimate = hits as f64 / samples as f64;
    let stderr = (estimate * (1.0 - estimate) / samples as f64).sqrt();
    Ok(McEstimate { samples, hits, seed, estimate, stderr })
}

/// One line of a likelihood table.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LikelihoodRow {
    pub certificate: String,
    pub n: usize,
    pub edges: usize,
    pub automorphisms: u64,
    pub likelihood: Likelihood,
    pub approx: f64,
    pub lower: String,
    pub upper: String,
}

fn ratio_string(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn likelihood_row(g: &Graph) -> Result<LikelihoodRow> {
    let lik = likelihood_exact(g)?;
    let (lower, upper) = likelihood_bounds(g)?;
    Ok(LikelihoodRow {
        certificate: canonical_form(g)?.to_string(),
        n: g.n(),
        edges: g.edge_count(),
        automorphisms: automorphism_count(g)?,
        approx: lik.to_f64(),
        likelihood: lik,
        lower: ratio_string(&lower),
        upper: ratio_string(&upper),
    })
}

impl LikelihoodRow {
    pub fn to_csv(rows: &[LikelihoodRow]) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        for r in rows {
            w.serialize(r).expect("csv row");
        }
        String::from_utf8(w.into_inner().expect("csv flush")).expect("utf8")
    }
}

/// Every isomorphism class on `n` vertices with its likelihood, ascending.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExtremesReport {
    pub n: usize,
    pub rows: Vec<LikelihoodRow>,
    pub total: Likelihood,
    /// Certificates of the classes attaining the minimum.
    pub argmin: Vec<String>,
    pub argmax: Vec<String>,
    /// Some `K_{l, n-l}` attains the minimum.
    pub argmin_has_complete_bipartite: bool,
    /// `K_{ceil(n/2), floor(n/2)}` attains the minimum.
    pub argmin_has_balanced_bipartite: bool,
}

impl ExtremesReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report json")
    }

    pub fn to_csv(&self) -> String {
        LikelihoodRow::to_csv(&self.rows)
    }
}

fn complete_bipartite(l: usize, m: usize) -> Graph {
    Graph::empty(l).join(&Graph::empty(m))
}

pub fn likelihood_extremes(n: usize) -> Result<ExtremesReport> {
    if n == 0 || n > crate::graph::MAX_CLASS_VERTICES.min(MAX_EXACT_VERTICES) {
        return Err(Error::TooManyVertices { op: "likelihood_extremes", n, max: crate::graph::MAX_CLASS_VERTICES });
    }
    let classes = isomorphism_classes(n)?;
    let mut rows: Vec<(Graph, LikelihoodRow)> = classes
        .into_par_iter()
        .map(|g| likelihood_row(&g).map(|r| (g, r)))
        .collect::<Result<_>>()?;
    rows.sort_by(|a, b| {
        a.1.likelihood
            .cmp(&b.1.likelihood)
            .then_with(|| a.1.certificate.cmp(&b.1.certificate))
    });
    let min = rows[0].1.likelihood.clone();
    let max = rows[rows.len() - 1].1.likelihood.clone();
    let minimal: Vec<&Graph> = rows.iter().filter(|r| r.1.likelihood == min).map(|r| &r.0).collect();
    let is_bipartite_min = |l: usize| -> Result<bool> {
        let k = complete_bipartite(l, n - l);
        for g in &minimal {
            if is_isomorphic(g, &k)? {
                return Ok(true);
            }
        }
        Ok(false)
    };
    let mut has_bipartite = false;
    for l in 1..=n / 2 {
        has_bipartite |= is_bipartite_min(l)?;
    }
    let balanced = n >= 2 && is_bipartite_min(n / 2)?;
    let total = Likelihood(rows.iter().map(|r| r.1.likelihood.0.clone()).sum());
    let pick = |v: &Likelihood| -> Vec<String> {
        rows.iter().filter(|r| &r.1.likelihood == v).map(|r| r.1.certificate.clone()).collect()
    };
    Ok(ExtremesReport {
        n,
        argmin: pick(&min),
        argmax: pick(&max),
        total,
        argmin_has_complete_bipartite: has_bipartite,
        argmin_has_balanced_bipartite: balanced,
        rows: rows.into_iter().map(|r| r.1).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{parse_graph_expr, Family};
    use std::collections::HashSet;

    fn r(p: i64, q: i64) -> BigRational {
        ratio(p, q)
    }

    fn factorial(n: i64) -> i64 {
        (1..=n).product()
    }

    fn next_permutation(p: &mut [usize]) -> bool {
        let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
            return false;
        };
        let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
        true
    }

    /// Sum over the distinct labelled copies, found by relabelling.
    fn brute_likelihood(g: &Graph) -> BigRational {
        let mut perm: Vec<usize> = (1..=g.n()).collect();
        let mut copies = HashSet::new();
        loop {
            copies.insert(g.relabeled(&perm));
            if !next_permutation(&mut perm) {
                break;
            }
        }
        copies.iter().map(|h| labeled_probability(h, &DegreeDistribution::Uniform)).sum()
    }

    #[test]
    fn complete_graphs() {
        for t in 2..=6 {
            let k = parse_graph_expr(&format!("K{t}")).unwrap();
            assert_eq!(likelihood_exact(&k).unwrap().0, r(1, factorial(t)));
            let e = Graph::empty(t as usize);
            assert_eq!(likelihood_exact(&e).unwrap().0, r(1, factorial(t)));
        }
    }

    #[test]
    fn stars() {
        for t in 3..=6i64 {
            let star = crate::graph::standard_family(&Family::Star(t as usize)).unwrap();
            let sum: i64 = (0..t).map(factorial).sum();
            let want = r(t * sum, factorial(t) * factorial(t));
            assert_eq!(likelihood_exact(&star).unwrap().0, want, "t = {t}");
        }
        let p3 = parse_graph_expr("P3").unwrap();
        assert_eq!(likelihood_exact(&p3).unwrap().0, r(1, 3));
    }

    #[test]
    fn trivial_graphs() {
        assert_eq!(likelihood_exact(&Graph::empty(0)).unwrap().0, r(1, 1));
        assert_eq!(likelihood_exact(&Graph::empty(1)).unwrap().0, r(1, 1));
        assert_eq!(likelihood_bounds(&Graph::empty(1)).unwrap(), (r(1, 1), r(1, 1)));
        let k3 = parse_graph_expr("K3").unwrap();
        assert_eq!(likelihood_bounds(&k3).unwrap().1, r(1, 6));
    }

    #[test]
    fn subset_recursion_matches_copy_enumeration() {
        for n in 1..=5 {
            for g in isomorphism_classes(n).unwrap() {
                assert_eq!(likelihood_exact(&g).unwrap().0, brute_likelihood(&g), "{g:?}");
            }
        }
    }

    #[test]
    fn class_likelihoods_sum_to_one() {
        for n in 1..=6 {
            let total: BigRational = isomorphism_classes(n)
                .unwrap()
                .iter()
                .map(|g| likelihood_exact(g).unwrap().0)
                .sum();
            assert_eq!(total, BigRational::one(), "n = {n}");
        }
    }

    #[test]
    fn complement_symmetry() {
        for g in isomorphism_classes(5).unwrap() {
            assert_eq!(likelihood_exact(&g).unwrap(), likelihood_exact(&g.complement()).unwrap());
        }
    }

    #[test]
    fn bounds_hold() {
        for n in 1..=6 {
            for g in isomorphism_classes(n).unwrap() {
                let l = likelihood_exact(&g).unwrap().0;
                let (lo, hi) = likelihood_bounds(&g).unwrap();
                assert!(lo <= l && l <= hi, "{g:?}");
            }
        }
    }

    #[test]
    fn extremes_small() {
        let rep = likelihood_extremes(2).unwrap();
        assert_eq!(rep.rows.len(), 2);
        assert!(rep.rows.iter().all(|row| row.likelihood.0 == r(1, 2)));
        let rep = likelihood_extremes(3).unwrap();
        assert_eq!(rep.rows.len(), 4);
        assert_eq!(rep.total.0, BigRational::one());
        let rep = likelihood_extremes(4).unwrap();
        assert_eq!(rep.rows.len(), 11);
        assert_eq!(rep.rows[0].likelihood.0, r(1, 36));
        assert!(rep.argmin_has_balanced_bipartite);
        assert_eq!(rep.rows[10].likelihood.0, r(13, 72));
    }

    #[test]
    fn mc_estimates() {
        for (expr, exact) in [("K3", r(1, 6)), ("E4", r(1, 24)), ("P3", r(1, 3))] {
            let g = parse_graph_expr(expr).unwrap();
            let est = likelihood_mc(&g, 100_000, 17).unwrap();
            let p = exact.to_f64().unwrap();
            assert!((est.estimate - p).abs() <= 3.0 * est.stderr, "{expr}: {est:?}");
        }
    }

    #[test]
    fn binomial_process_is_gnp() {
        for p in ["1/2", "1/3", "0.7"] {
            let prob: super::super::Probability = p.parse().unwrap();
            let dist = DegreeDistribution::Binomial(prob.clone());
            let q = BigRational::one() - prob.value();
            for n in 1..=4usize {
                let pairs = n * (n - 1) / 2;
                for code in 0..1u32 << pairs {
                    let mut h = Graph::empty(n);
                    let mut bit = 0;
                    for j in 1..n {
                        for i in 0..j {
                            if code >> bit & 1 == 1 {
                                h.set0(i, j);
                            }
                            bit += 1;
                        }
                    }
                    let m = h.edge_count();
                    let want = num_traits::pow(prob.value().clone(), m) * num_traits::pow(q.clone(), pairs - m);
                    assert_eq!(labeled_probability(&h, &dist), want);
                }
            }
        }
    }
}
