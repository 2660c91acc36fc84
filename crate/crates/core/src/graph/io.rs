use std::fmt::Write as _;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Graph, LabeledGraph};
use crate::error::{Error, Result};

/// JSON shape of a graph: 1-based edges with `i < j`, sorted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl From<&Graph> for GraphJson {
    fn from(g: &Graph) -> Self {
        GraphJson { n: g.n(), edges: g.edges().into_iter().map(|(i, j)| [i, j]).collect() }
    }
}

impl TryFrom<GraphJson> for Graph {
    type Error = Error;

    fn try_from(j: GraphJson) -> Result<Graph> {
        let pairs: Vec<(usize, usize)> = j.edges.iter().map(|e| (e[0], e[1])).collect();
        Graph::from_edges(j.n, &pairs)
    }
}

impl Serialize for Graph {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GraphJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = GraphJson::deserialize(d)?;
        Graph::try_from(j).map_err(serde::de::Error::custom)
    }
}

impl Graph {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&GraphJson::from(self)).expect("graph json")
    }

    pub fn from_json(s: &str) -> Result<Graph> {
        let j: GraphJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Graph::try_from(j)
    }

    pub fn to_dot(&self) -> String {
        self.dot_with(|_| None)
    }

    /// Upper triangle of the adjacency matrix, row-major, as `0`/`1` characters.
    pub fn to_matrix_string(&self) -> String {
        let mut s = String::with_capacity(self.n() * self.n().saturating_sub(1) / 2);
        for i in 0..self.n() {
            for j in (i + 1)..self.n() {
                s.push(if self.adj0(i, j) { '1' } else { '0' });
            }
        }
        s
    }

    pub fn from_matrix_string(n: usize, s: &str) -> Result<Graph> {
        let expected = n * n.saturating_sub(1) / 2;
        if s.len() != expected {
            return Err(Error::Parse(format!(
                "matrix string has {} bits, expected {expected} for n = {n}",
                s.len()
            )));
        }
        let mut g = Graph::empty(n);
        let mut chars = s.chars();
        for i in 0..n {
            for j in (i + 1)..n {
                match chars.next() {
                    Some('1') => g.set0(i, j),
                    Some('0') => {}
                    other => return Err(Error::Parse(format!("bad matrix bit {other:?}"))),
                }
            }
        }
        Ok(g)
    }

    /// Edge list CSV with a `u,v` header.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("u,v\n");
        for (i, j) in self.edges() {
            let _ = writeln!(s, "{i},{j}");
        }
        s
    }

    fn dot_with(&self, label: impl Fn(usize) -> Option<bool>) -> String {
        let mut s = String::from("graph G {\n");
        for v in 1..=self.n() {
            match label(v) {
                Some(b) => {
                    let _ = writeln!(s, "  {v} [label=\"{}_{v}\"];", u8::from(b));
                }
                None => {
                    let _ = writeln!(s, "  {v};");
                }
            }
        }
        for (i, j) in self.edges() {
            let _ = writeln!(s, "  {i} -- {j};");
        }
        s.push_str("}\n");
        s
    }
}

impl LabeledGraph {
    pub fn to_dot(&self) -> String {
        self.graph.dot_with(|v| Some(self.label(v)))
    }
}
