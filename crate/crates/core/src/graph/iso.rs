//! Small-graph isomorphism by permutation search.
//!
//! Everything here is exact and exponential in the worst case; the vertex
//! bounds keep it at desk scale.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Serialize, Serializer};

use super::Graph;
use crate::error::{Error, Result};

pub const MAX_CANONICAL_VERTICES: usize = 12;
pub const MAX_AUTOMORPHISM_VERTICES: usize = 10;
pub const MAX_ISOMORPHISM_VERTICES: usize = 12;
pub const MAX_CLASS_VERTICES: usize = 8;

/// Relabeling-invariant certificate: the vertex count followed by the
/// lexicographically smallest upper-triangle bit string over all vertex
/// orders. The triangle is read column by column, `(1,2), (1,3), (2,3),
/// (1,4), ...`, so every prefix is fixed once its leading vertices are.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm(Vec<u8>);

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0[0] as usize
    }

    fn bit_string(&self) -> String {
        self.0[1..].iter().map(|&b| if b == 1 { '1' } else { '0' }).collect()
    }

    /// The canonically labeled representative of the class.
    pub fn to_graph(&self) -> Graph {
        let n = self.n();
        let mut g = Graph::empty(n);
        let mut k = 1;
        for j in 1..n {
            for i in 0..j {
                if self.0[k] == 1 {
                    g.set0(i, j);
                }
                k += 1;
            }
        }
        g
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.n(), self.bit_string())
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm({self})")
    }
}

impl Serialize for CanonicalForm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn bound(op: &'static str, n: usize, max: usize) -> Result<()> {
    if n > max {
        Err(Error::TooManyVertices { op, n, max })
    } else {
        Ok(())
    }
}

pub fn canonical_form(g: &Graph) -> Result<CanonicalForm> {
    let n = g.n();
    bound("canonical_form", n, MAX_CANONICAL_VERTICES)?;
    let rows: Vec<u64> = (0..n).map(|i| g.row_mask(i)).collect();
    let mut search = CanonSearch { rows: &rows, n, perm: Vec::with_capacity(n), best: None, updates: 0 };
    search.descend(0, 0, true);
    let cols = search.best.unwrap_or_default();
    let mut bytes = Vec::with_capacity(1 + n * n.saturating_sub(1) / 2);
    bytes.push(n as u8);
    for (j, &col) in cols.iter().enumerate() {
        for i in 0..j {
            bytes.push((col >> (j - 1 - i) & 1) as u8);
        }
    }
    Ok(CanonicalForm(bytes))
}

struct CanonSearch<'a> {
    rows: &'a [u64],
    n: usize,
    perm: Vec<usize>,
    best: Option<Vec<u64>>,
    updates: u64,
}

impl CanonSearch<'_> {
    /// Column `j` for candidate `v`, with position 0 as the most significant bit.
    fn column(&self, v: usize) -> u64 {
        let j = self.perm.len();
        let mut col = 0;
        for (i, &u) in self.perm.iter().enumerate() {
            col |= (self.rows[v] >> u & 1) << (j - 1 - i);
        }
        col
    }

    fn twins(&self, u: usize, v: usize) -> bool {
        (self.rows[u] & !(1 << v)) == (self.rows[v] & !(1 << u))
    }

    // `less`: the current prefix is strictly below the best prefix, or there
    // is no best yet.
    fn descend(&mut self, used: u64, depth: usize, mut less: bool) {
        if depth == self.n {
            if less {
                self.best = Some(self.current_columns());
                self.updates += 1;
            }
            return;
        }
        let free: Vec<usize> = (0..self.n).filter(|&v| used >> v & 1 == 0).collect();
        let min_col = free.iter().map(|&v| self.column(v)).min().expect("free vertex");
        let mut tried: Vec<usize> = Vec::new();
        for &v in &free {
            if self.column(v) != min_col || tried.iter().any(|&u| self.twins(u, v)) {
                continue;
            }
            tried.push(v);
            let child_less = if less {
                true
            } else {
                let best = self.best.as_ref().expect("best exists when not less");
                match min_col.cmp(&best[depth]) {
                    std::cmp::Ordering::Greater => return,
                    std::cmp::Ordering::Less => true,
                    std::cmp::Ordering::Equal => false,
                }
            };
            let before = self.updates;
            self.perm.push(v);
            self.descend(used | 1 << v, depth + 1, child_less);
            self.perm.pop();
            if self.updates != before {
                // the new best runs through this node
                less = false;
            }
        }
    }

    fn current_columns(&self) -> Vec<u64> {
        let mut cols = Vec::with_capacity(self.perm.len());
        for j in 0..self.perm.len() {
            let v = self.perm[j];
            let mut col = 0;
            for i in 0..j {
                col |= (self.rows[v] >> self.perm[i] & 1) << (j - 1 - i);
            }
            cols.push(col);
        }
        cols
    }
}

/// Size of the automorphism group, by backtracking over vertex images.
pub fn automorphism_count(g: &Graph) -> Result<u64> {
    bound("automorphism_count", g.n(), MAX_AUTOMORPHISM_VERTICES)?;
    Ok(count_isomorphisms(g, g, false))
}

pub fn is_isomorphic(g: &Graph, h: &Graph) -> Result<bool> {
    bound("is_isomorphic", g.n().max(h.n()), MAX_ISOMORPHISM_VERTICES)?;
    if g.n() != h.n() || g.edge_count() != h.edge_count() {
        return Ok(false);
    }
    let (mut dg, mut dh) = (g.degrees(), h.degrees());
    dg.sort_unstable();
    dh.sort_unstable();
    if dg != dh {
        return Ok(false);
    }
    Ok(count_isomorphisms(g, h, true) > 0)
}

fn count_isomorphisms(g: &Graph, h: &Graph, stop_at_first: bool) -> u64 {
    let n = g.n();
    let gr: Vec<u64> = (0..n).map(|i| g.row_mask(i)).collect();
    let hr: Vec<u64> = (0..n).map(|i| h.row_mask(i)).collect();
    // Map high-degree vertices first; they constrain the most.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(gr[v].count_ones()));
    let mut image = vec![usize::MAX; n];
    let mut count = 0;
    #[allow(clippy::too_many_arguments)]
    fn go(
        k: usize,
        order: &[usize],
        gr: &[u64],
        hr: &[u64],
        image: &mut [usize],
        used: u64,
        count: &mut u64,
        stop: bool,
    ) {
        if k == order.len() {
            *count += 1;
            return;
        }
        let v = order[k];
        for w in 0..gr.len() {
            if used >> w & 1 == 1 || gr[v].count_ones() != hr[w].count_ones() {
                continue;
            }
            let ok = order[..k]
                .iter()
                .all(|&u| (gr[v] >> u & 1) == (hr[w] >> image[u] & 1));
            if ok {
                image[v] = w;
                go(k + 1, order, gr, hr, image, used | 1 << w, count, stop);
                if stop && *count > 0 {
                    return;
                }
            }
        }
    }
    go(0, &order, &gr, &hr, &mut image, 0, &mut count, stop_at_first);
    count
}

/// Whether some vertex subset of `g` induces a copy of `h`.
pub fn contains_induced(g: &Graph, h: &Graph) -> bool {
    let k = h.n();
    if k > g.n() {
        return false;
    }
    // BFS-ish order on h so each new vertex touches already-mapped ones.
    let mut order = Vec::with_capacity(k);
    let mut placed = vec![false; k];
    while order.len() < k {
        let next = (0..k)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| {
                let back = order.iter().filter(|&&u| h.adj0(u, v)).count();
                (back, h.degree(v + 1))
            })
            .expect("unplaced vertex");
        placed[next] = true;
        order.push(next);
    }
    let mut image = vec![usize::MAX; k];
    let mut used = vec![false; g.n()];
    fn go(
        idx: usize,
        order: &[usize],
        g: &Graph,
        h: &Graph,
        image: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        if idx == order.len() {
            return true;
        }
        let v = order[idx];
        for w in 0..g.n() {
            if used[w] {
                continue;
            }
            let ok = order[..idx].iter().all(|&u| h.adj0(u, v) == g.adj0(image[u], w));
            if ok {
                image[v] = w;
                used[w] = true;
                if go(idx + 1, order, g, h, image, used) {
                    return true;
                }
                used[w] = false;
            }
        }
        false
    }
    go(0, &order, g, h, &mut image, &mut used)
}

/// One canonically labeled representative per isomorphism class on `n`
/// vertices, sorted by certificate. Built by one-vertex extension of the
/// classes on `n - 1` vertices.
pub fn isomorphism_classes(n: usize) -> Result<Vec<Graph>> {
    bound("isomorphism_classes", n, MAX_CLASS_VERTICES)?;
    let mut classes: Vec<Graph> = vec![Graph::empty(0)];
    for k in 0..n {
        let mut next = BTreeSet::new();
        for g in &classes {
            for mask in 0u32..(1 << k) {
                let nbrs: Vec<usize> = (0..k).filter(|&i| mask >> i & 1 == 1).map(|i| i + 1).collect();
                let h = g.add_vertex_with_neighbors(&nbrs)?;
                next.insert(canonical_form(&h)?);
            }
        }
        classes = next.iter().map(CanonicalForm::to_graph).collect();
    }
    Ok(classes)
}
