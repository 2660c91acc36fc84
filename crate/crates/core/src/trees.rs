//! Tree growth: uniform attachment, recursive trees, Prüfer coding and the
//! bit cost of building a tree from parent indices.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::cost::{bit_length, ResourceCost};
use crate::error::{Error, Result};
use crate::graph::{canonical_form, Graph};
use crate::instructions::InstructionString;
use crate::randomness::{rng_from_seed, Likelihood};

/// A tree on `1..=n` rooted at vertex 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootedTree {
    graph: Graph,
    parents: Vec<usize>,
}

impl RootedTree {
    pub fn new(graph: Graph) -> Result<Self> {
        if !graph.is_tree() {
            return Err(Error::NotATree(format!(
                "{} vertices, {} edges, connected: {}",
                graph.n(),
                graph.edge_count(),
                graph.is_connected()
            )));
        }
        let n = graph.n();
        let mut parents = vec![0; n + 1];
        let mut seen = vec![false; n + 1];
        let mut stack = vec![1];
        seen[1] = true;
        while let Some(u) = stack.pop() {
            for v in graph.neighbors(u) {
                if !seen[v] {
                    seen[v] = true;
                    parents[v] = u;
                    stack.push(v);
                }
            }
        }
        Ok(RootedTree { graph, parents })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    /// Parent of `v` towards the root; 0 for the root itself.
    pub fn parent(&self, v: usize) -> usize {
        self.parents[v]
    }

    /// Non-root vertices of degree 1.
    pub fn leaves(&self) -> Vec<usize> {
        (2..=self.n()).filter(|&v| self.graph.degree(v) == 1).collect()
    }

    /// Vertices on the path from the root to `v`.
    pub fn root_path(&self, v: usize) -> Vec<usize> {
        let mut path = vec![v];
        let mut u = v;
        while self.parents[u] != 0 {
            u = self.parents[u];
            path.push(u);
        }
        path.reverse();
        path
    }

    /// The parent vector, defined when every parent is smaller than its child.
    pub fn parent_vector(&self) -> Option<ParentVector> {
        is_recursive_tree(self).then(|| ParentVector(self.parents.clone()))
    }
}

/// `parent[t]` for `t = 2..=n`, each smaller than `t`. Index 0 is unused
/// and the root's entry is 0, so the JSON array has length `n + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct ParentVector(Vec<usize>);

impl ParentVector {
    /// `parents[i]` is the parent of vertex `i + 2`.
    pub fn new(parents: &[usize]) -> Result<Self> {
        let mut v = vec![0, 0];
        v.extend_from_slice(parents);
        ParentVector::try_from(v)
    }

    pub fn n(&self) -> usize {
        self.0.len() - 1
    }

    pub fn parent(&self, t: usize) -> usize {
        self.0[t]
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("parent vector json")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl TryFrom<Vec<usize>> for ParentVector {
    type Error = Error;

    fn try_from(v: Vec<usize>) -> Result<Self> {
        if v.len() < 2 || v[0] != 0 || v[1] != 0 {
            return Err(Error::Parse("parent vector must start with [0, 0, ...]".into()));
        }
        for (t, &p) in v.iter().enumerate().skip(2) {
            if p == 0 || p >= t {
                return Err(Error::InvalidParent { t, parent: p });
            }
        }
        Ok(ParentVector(v))
    }
}

impl From<ParentVector> for Vec<usize> {
    fn from(p: ParentVector) -> Vec<usize> {
        p.0
    }
}

impl std::fmt::Display for ParentVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.to_json())
    }
}

/// Vertex `t` attaches to a uniform vertex of `1..t`.
pub fn sample_ua(n: usize, seed: u64) -> RootedTree {
    assert!(n >= 1, "a tree needs a vertex");
    let mut rng = rng_from_seed(seed);
    sample_ua_with(n, &mut rng)
}

fn sample_ua_with<R: Rng>(n: usize, rng: &mut R) -> RootedTree {
    let mut parents = vec![0, 0];
    for t in 2..=n {
        parents.push(rng.gen_range(1..t));
    }
    build_tree_from_instructions(&ParentVector(parents))
}

/// Labels increase along every path away from vertex 1.
pub fn is_recursive_tree(t: &RootedTree) -> bool {
    (2..=t.n()).all(|v| t.parent(v) < v)
}

pub fn build_tree_from_instructions(pv: &ParentVector) -> RootedTree {
    let n = pv.n();
    let mut g = Graph::empty(n);
    for t in 2..=n {
        g.set0(t - 1, pv.parent(t) - 1);
    }
    RootedTree::new(g).expect("a parent vector describes a tree")
}

/// Vertex `t`'s parent as `b(t - 1)` big-endian bits, for `t = 2..=n`.
pub fn encode_parent_bits(pv: &ParentVector) -> InstructionString {
    let mut bits = Vec::new();
    for t in 2..=pv.n() {
        let width = bit_length((t - 1) as u64);
        let p = pv.parent(t) as u64;
        bits.extend((0..width).rev().map(|b| p >> b & 1 == 1));
    }
    InstructionString::new(bits)
}

pub fn decode_parent_bits(n: usize, x: &InstructionString) -> Result<ParentVector> {
    let mut parents = vec![0, 0];
    let mut pos = 0;
    for t in 2..=n {
        let width = bit_length((t - 1) as u64) as usize;
        if pos + width > x.len() {
            return Err(Error::Parse(format!("instruction string too short for {n} vertices")));
        }
        let p = x.bits()[pos..pos + width].iter().fold(0usize, |acc, &b| acc << 1 | usize::from(b));
        pos += width;
        parents.push(p);
    }
    if pos != x.len() {
        return Err(Error::Parse(format!("{} trailing bits", x.len() - pos)));
    }
    ParentVector::try_from(parents)
}

/// Instruction and memory bits `Σ_{t=1}^{n-1} b(t)`.
pub fn tree_cost(n: usize) -> ResourceCost {
    assert!(n >= 1, "a tree needs a vertex");
    let bits: u64 = (1..n as u64).map(bit_length).sum();
    ResourceCost { instruction_bits: bits, memory_bits: bits, random_bits: 0 }
}

/// Prüfer sequence, removing the smallest leaf each round.
pub fn prufer_encode(t: &Graph) -> Result<Vec<usize>> {
    if !t.is_tree() || t.n() < 2 {
        return Err(Error::NotATree(format!("{t:?}")));
    }
    let n = t.n();
    let mut degree: Vec<usize> = (0..=n).map(|v| if v == 0 { 0 } else { t.degree(v) }).collect();
    let mut removed = vec![false; n + 1];
    let mut leaves: BTreeSet<usize> = (1..=n).filter(|&v| degree[v] == 1).collect();
    let mut seq = Vec::with_capacity(n - 2);
    for _ in 0..n - 2 {
        let leaf = leaves.pop_first().expect("a tree has a leaf");
        removed[leaf] = true;
        let nb = t.neighbors(leaf).find(|&u| !removed[u]).expect("leaf has a neighbour");
        seq.push(nb);
        degree[nb] -= 1;
        if degree[nb] == 1 {
            leaves.insert(nb);
        }
    }
    Ok(seq)
}

pub fn prufer_decode(seq: &[usize]) -> Result<Graph> {
    let n = seq.len() + 2;
    if let Some(&entry) = seq.iter().find(|&&e| e == 0 || e > n) {
        return Err(Error::PrueferEntryOutOfRange { entry, n });
    }
    let mut degree = vec![1usize; n + 1];
    for &e in seq {
        degree[e] += 1;
    }
    let mut leaves: BTreeSet<usize> = (1..=n).filter(|&v| degree[v] == 1).collect();
    let mut g = Graph::empty(n);
    for &e in seq {
        let leaf = leaves.pop_first().expect("a leaf remains");
        g.set0(leaf - 1, e - 1);
        degree[e] -= 1;
        if degree[e] == 1 {
            leaves.insert(e);
        }
    }
    let rest: Vec<usize> = leaves.into_iter().collect();
    g.set0(rest[0] - 1, rest[1] - 1);
    Ok(g)
}

/// UA samples isomorphic to `t`: `(hits, hits / samples)`.
pub fn tree_positivity_check(t: &Graph, samples: u64, seed: u64) -> Result<(u64, f64)> {
    let target = canonical_form(t)?;
    let mut rng = rng_from_seed(seed);
    let mut hits = 0;
    for _ in 0..samples {
        if canonical_form(sample_ua_with(t.n(), &mut rng).graph())? == target {
            hits += 1;
        }
    }
    Ok((hits, hits as f64 / samples as f64))
}

/// Largest tree handled by [`ua_likelihood_exact`].
pub const MAX_UA_EXACT_VERTICES: usize = 9;

fn all_parent_vectors(n: usize) -> impl Iterator<Item = ParentVector> {
    let total: usize = (1..n.max(1)).product();
    (0..total).map(move |mut idx| {
        let mut parents = vec![0, 0];
        for t in 2..=n {
            parents.push(idx % (t - 1) + 1);
            idx /= t - 1;
        }
        ParentVector(parents)
    })
}

/// Exact UA probability of every tree class on `n` vertices, keyed by
/// canonical form.
pub fn ua_class_distribution(n: usize) -> Result<BTreeMap<crate::graph::CanonicalForm, Likelihood>> {
    if n == 0 || n > MAX_UA_EXACT_VERTICES {
        return Err(Error::TooManyVertices { op: "ua_class_distribution", n, max: MAX_UA_EXACT_VERTICES });
    }
    let mut counts: BTreeMap<_, u64> = BTreeMap::new();
    let mut total = 0u64;
    for pv in all_parent_vectors(n) {
        *counts.entry(canonical_form(build_tree_from_instructions(&pv).graph())?).or_default() += 1;
        total += 1;
    }
    Ok(counts
        .into_iter()
        .map(|(k, c)| (k, Likelihood(BigRational::new(BigInt::from(c), BigInt::from(total)))))
        .collect())
}

/// `Pr[T_n ≅ T]` under uniform attachment: the recursive labellings of
/// `T`, each drawn with probability `1/(n-1)!`.
pub fn ua_likelihood_exact(t: &Graph) -> Result<Likelihood> {
    if !t.is_tree() {
        return Err(Error::NotATree(format!("{t:?}")));
    }
    let n = t.n();
    let target = canonical_form(t)?;
    Ok(ua_class_distribution(n)?
        .remove(&target)
        .unwrap_or_else(|| Likelihood(BigRational::from_integer(0.into()))))
}
