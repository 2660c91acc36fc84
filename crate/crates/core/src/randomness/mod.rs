//! The randomness-only construction process: samplers, exact and Monte-Carlo
//! likelihood, and the random-bit cost of the vertex addition process.

mod bits;
mod likelihood;

pub use bits::{central_binomials, dyad_bits, randomness_cost_a, randomness_cost_a_closed, vertex_addition_cost};
pub use likelihood::{
    labeled_probability, likelihood_bounds, likelihood_exact, likelihood_extremes, likelihood_mc,
    likelihood_row, ExtremesReport, Likelihood, LikelihoodRow, McEstimate, MAX_EXACT_VERTICES,
};

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// The generator behind every sampler.
pub type SeededRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// An exact probability in `[0, 1]`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Probability(BigRational);

impl Probability {
    pub fn new(value: BigRational) -> Result<Self> {
        if value < BigRational::zero() || value > BigRational::one() {
            return Err(Error::InvalidProbability(value.to_string()));
        }
        Ok(Probability(value))
    }

    pub fn from_ratio(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::InvalidProbability(format!("{num}/0")));
        }
        Probability::new(BigRational::new(num.into(), den.into()))
    }

    pub fn half() -> Self {
        Probability(BigRational::new(1.into(), 2.into()))
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl fmt::Display for Probability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Serialize for Probability {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Accepts `p/q`, a decimal such as `0.25`, or an integer.
impl FromStr for Probability {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidProbability(s.to_string());
        let value = if let Some((p, q)) = s.split_once('/') {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            BigRational::new(p, q)
        } else if let Some((int, frac)) = s.split_once('.') {
            if !frac.chars().all(|c| c.is_ascii_digit()) || int.starts_with('-') {
                return Err(bad());
            }
            let digits: BigInt = format!("{}{frac}", if int.is_empty() { "0" } else { int })
                .parse()
                .map_err(|_| bad())?;
            BigRational::new(digits, num_traits::pow(BigInt::from(10), frac.len()))
        } else {
            BigRational::from_integer(s.parse::<BigInt>().map_err(|_| bad())?)
        };
        Probability::new(value)
    }
}

/// How many earlier vertices the new vertex `t` joins.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum DegreeDistribution {
    /// Uniform on `0..=t-1`.
    Uniform,
    /// `Bi(t - 1, p)`.
    Binomial(Probability),
}

impl DegreeDistribution {
    pub fn sample<R: Rng>(&self, t: usize, rng: &mut R) -> usize {
        match self {
            DegreeDistribution::Uniform => rng.gen_range(0..t),
            DegreeDistribution::Binomial(p) => {
                let p = p.to_f64();
                (1..t).filter(|_| rng.gen_bool(p)).count()
            }
        }
    }

    /// `Pr[D_t = k]`.
    pub fn probability(&self, t: usize, k: usize) -> BigRational {
        if k >= t {
            return BigRational::zero();
        }
        match self {
            DegreeDistribution::Uniform => BigRational::new(1.into(), BigInt::from(t)),
            DegreeDistribution::Binomial(p) => {
                let p = p.value();
                let q = BigRational::one() - p;
                BigRational::from_integer(binomial(t - 1, k))
                    * num_traits::pow(p.clone(), k)
                    * num_traits::pow(q, t - 1 - k)
            }
        }
    }
}

impl fmt::Display for DegreeDistribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DegreeDistribution::Uniform => write!(f, "uniform"),
            DegreeDistribution::Binomial(p) => write!(f, "binomial:{p}"),
        }
    }
}

/// `uniform` or `binomial:<p>`.
impl FromStr for DegreeDistribution {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "uniform" => Ok(DegreeDistribution::Uniform),
            other => match other.strip_prefix("binomial:") {
                Some(p) => Ok(DegreeDistribution::Binomial(p.parse()?)),
                None => Err(Error::Parse(format!("unknown degree distribution {other:?}"))),
            },
        }
    }
}

pub(crate) fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut c = BigInt::one();
    for i in 0..k {
        c = c * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    c
}

/// `G(n, p)`: every dyad independently with probability `p`.
pub fn sample_gnp(n: usize, p: &Probability, seed: u64) -> Graph {
    let mut rng = rng_from_seed(seed);
    let p = p.to_f64();
    let mut g = Graph::empty(n);
    for j in 1..n {
        for i in 0..j {
            if rng.gen_bool(p) {
                g.set0(i, j);
            }
        }
    }
    g
}

/// Grows `G_1 = K_1` to `G_n`, vertex `t` joining a uniform `D_t`-subset of
/// the earlier vertices.
pub fn sample_vertex_addition(n: usize, dist: &DegreeDistribution, seed: u64) -> Graph {
    sample_vertex_addition_with(n, dist, &mut rng_from_seed(seed))
}

pub fn sample_vertex_addition_with<R: Rng>(n: usize, dist: &DegreeDistribution, rng: &mut R) -> Graph {
    let mut g = Graph::empty(n);
    for t in 2..=n {
        let k = dist.sample(t, rng);
        for i in index::sample(rng, t - 1, k) {
            g.set0(t - 1, i);
        }
    }
    g
}
