//! Simple undirected graphs with vertices numbered `1..=n` in arrival order.
//!
//! Vertex `t` is the vertex added at time `t`. Adjacency is a symmetric bit
//! matrix; all public indices are 1-based.

mod families;
mod io;
mod iso;
mod threshold;

pub use families::{parse_graph_expr, standard_family, Family};
pub use io::GraphJson;
pub use iso::{
    automorphism_count, canonical_form, contains_induced, is_isomorphic, isomorphism_classes,
    CanonicalForm, MAX_AUTOMORPHISM_VERTICES, MAX_CANONICAL_VERTICES, MAX_CLASS_VERTICES, MAX_ISOMORPHISM_VERTICES,
};
pub use threshold::{creation_sequence, is_threshold, is_threshold_forbidden};

use crate::error::{Error, Result};

const WORD: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    stride: usize,
    bits: Vec<u64>,
}

impl Graph {
    /// The edgeless graph `E_n`.
    pub fn empty(n: usize) -> Self {
        let stride = n.div_ceil(WORD);
        Graph { n, stride, bits: vec![0; n * stride] }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(i, j) in edges {
            g.check_vertex(i)?;
            g.check_vertex(j)?;
            if i == j {
                return Err(Error::SelfLoop(i));
            }
            g.set0(i - 1, j - 1);
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        let total: u32 = self.bits.iter().map(|w| w.count_ones()).sum();
        total as usize / 2
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        i >= 1 && j >= 1 && i <= self.n && j <= self.n && self.adj0(i - 1, j - 1)
    }

    /// Edges as `(i, j)` pairs with `i < j`, sorted lexicographically.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                if self.adj0(i, j) {
                    out.push((i + 1, j + 1));
                }
            }
        }
        out
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        let v0 = v - 1;
        (0..self.n).filter(move |&u| self.adj0(v0, u)).map(|u| u + 1)
    }

    pub fn degree(&self, v: usize) -> usize {
        let row = &self.bits[(v - 1) * self.stride..v * self.stride];
        row.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (1..=self.n).map(|v| self.degree(v)).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    /// Number of neighbors of `t` with a smaller index.
    pub fn down_degree(&self, t: usize) -> usize {
        (0..t - 1).filter(|&u| self.adj0(t - 1, u)).count()
    }

    /// Adds vertex `n + 1` adjacent exactly to `neighbors`.
    pub fn add_vertex_with_neighbors(&self, neighbors: &[usize]) -> Result<Graph> {
        for &v in neighbors {
            self.check_vertex(v)?;
        }
        let mut g = self.grown(self.n + 1);
        for &v in neighbors {
            g.set0(self.n, v - 1);
        }
        Ok(g)
    }

    /// Induced subgraph on `1..=k`.
    pub fn prefix(&self, k: usize) -> Graph {
        assert!(k <= self.n, "prefix {k} longer than graph on {} vertices", self.n);
        let order: Vec<usize> = (1..=k).collect();
        self.induced(&order)
    }

    /// Induced subgraph on `vertices`, relabelled `1..` in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut g = Graph::empty(vertices.len());
        for (a, &u) in vertices.iter().enumerate() {
            for (b, &v) in vertices.iter().enumerate().skip(a + 1) {
                if self.adj0(u - 1, v - 1) {
                    g.set0(a, b);
                }
            }
        }
        g
    }

    /// Relabels vertex `v` as `perm[v - 1]` (a permutation of `1..=n`).
    pub fn relabeled(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut g = Graph::empty(self.n);
        for (i, j) in self.edges() {
            g.set0(perm[i - 1] - 1, perm[j - 1] - 1);
        }
        g
    }

    /// `G ⊎ H`: the vertices of `other` become `n_G + 1 ..= n_G + n_H`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let mut g = self.grown(self.n + other.n);
        for (i, j) in other.edges() {
            g.set0(self.n + i - 1, self.n + j - 1);
        }
        g
    }

    /// `G + H`: disjoint union plus every edge between the two parts.
    pub fn join(&self, other: &Graph) -> Graph {
        let mut g = self.disjoint_union(other);
        for i in 0..self.n {
            for j in 0..other.n {
                g.set0(i, self.n + j);
            }
        }
        g
    }

    pub fn complement(&self) -> Graph {
        let mut g = Graph::empty(self.n);
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                if !self.adj0(i, j) {
                    g.set0(i, j);
                }
            }
        }
        g
    }

    /// Connected components as sorted vertex lists, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start + 1];
            let mut stack = vec![start];
            while let Some(u) = stack.pop() {
                for (v, s) in seen.iter_mut().enumerate() {
                    if !*s && self.adj0(u, v) {
                        *s = true;
                        comp.push(v + 1);
                        stack.push(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    pub fn is_tree(&self) -> bool {
        self.n >= 1 && self.edge_count() == self.n - 1 && self.is_connected()
    }

    /// Disjoint union of paths (isolated vertices count as `P_1`).
    pub fn is_linear_forest(&self) -> bool {
        self.max_degree() <= 2
            && self.components().iter().all(|c| {
                let sub = self.induced(c);
                sub.edge_count() + 1 == c.len()
            })
    }

    /// Sizes of the components, in component order.
    pub fn component_sizes(&self) -> Vec<usize> {
        self.components().iter().map(Vec::len).collect()
    }

    pub(crate) fn adj0(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.stride + j / WORD] >> (j % WORD) & 1 == 1
    }

    pub(crate) fn set0(&mut self, i: usize, j: usize) {
        debug_assert_ne!(i, j);
        self.bits[i * self.stride + j / WORD] |= 1 << (j % WORD);
        self.bits[j * self.stride + i / WORD] |= 1 << (i % WORD);
    }

    /// Row of `i` as a mask; only meaningful for `n <= 64`.
    pub(crate) fn row_mask(&self, i: usize) -> u64 {
        debug_assert!(self.n <= WORD);
        if self.stride == 0 {
            0
        } else {
            self.bits[i * self.stride]
        }
    }

    fn grown(&self, n: usize) -> Graph {
        let mut g = Graph::empty(n);
        for (i, j) in self.edges() {
            g.set0(i - 1, j - 1);
        }
        g
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v == 0 || v > self.n {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        } else {
            Ok(())
        }
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

/// A graph together with one label bit per vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LabeledGraph {
    pub graph: Graph,
    pub labels: Vec<bool>,
}

impl LabeledGraph {
    pub fn new(graph: Graph, labels: Vec<bool>) -> Self {
        assert_eq!(graph.n(), labels.len(), "one label per vertex");
        LabeledGraph { graph, labels }
    }

    pub fn label(&self, v: usize) -> bool {
        self.labels[v - 1]
    }

    /// Number of vertices labelled 0.
    pub fn zeros(&self) -> usize {
        self.labels.iter().filter(|&&b| !b).count()
    }

    /// Number of vertices labelled 1.
    pub fn ones(&self) -> usize {
        self.labels.iter().filter(|&&b| b).count()
    }
}
