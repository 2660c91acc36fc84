use super::Graph;
use crate::error::{Error, Result};

/// Named graph families, numbered in construction order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    Complete(usize),
    Empty(usize),
    Path(usize),
    Cycle(usize),
    CompleteBipartite(usize, usize),
    /// `K_l + E_m`: clique on `1..=l` joined to an independent set.
    CompleteSplit(usize, usize),
    /// Disjoint union of paths with the given vertex counts.
    LinearForest(Vec<usize>),
    /// `K_{1,n-1}` with centre 1.
    Star(usize),
}

pub fn standard_family(family: &Family) -> Result<Graph> {
    Ok(match *family {
        Family::Complete(n) => Graph::empty(0).join_n(n),
        Family::Empty(n) => Graph::empty(n),
        Family::Path(n) => path(n),
        Family::Cycle(n) => {
            if n < 3 {
                return Err(Error::CycleTooShort(n));
            }
            let mut g = path(n);
            g.set0(0, n - 1);
            g
        }
        Family::CompleteBipartite(l, m) => Graph::empty(l).join(&Graph::empty(m)),
        Family::CompleteSplit(l, m) => Graph::empty(0).join_n(l).join(&Graph::empty(m)),
        Family::LinearForest(ref parts) => parts
            .iter()
            .fold(Graph::empty(0), |acc, &r| acc.disjoint_union(&path(r))),
        Family::Star(n) => {
            if n == 0 {
                Graph::empty(0)
            } else {
                Graph::empty(1).join(&Graph::empty(n - 1))
            }
        }
    })
}

fn path(n: usize) -> Graph {
    let mut g = Graph::empty(n);
    for i in 1..n {
        g.set0(i - 1, i);
    }
    g
}

impl Graph {
    fn join_n(&self, k: usize) -> Graph {
        (0..k).fold(self.clone(), |acc, _| acc.join(&Graph::empty(1)))
    }
}

/// Parses a graph given either as the JSON object `{"n": .., "edges": [..]}`
/// or as a family expression:
///
/// | expression    | graph                         |
/// |---------------|-------------------------------|
/// | `K4`          | complete graph                |
/// | `E4`          | empty graph                   |
/// | `P5`          | path                          |
/// | `C6`          | cycle                         |
/// | `K2,3`        | complete bipartite            |
/// | `S2,3`        | complete split `K_2 + E_3`    |
/// | `F2,1,3`      | linear forest `P2 ⊎ P1 ⊎ P3`  |
/// | `T5`          | star on 5 vertices            |
pub fn parse_graph_expr(input: &str) -> Result<Graph> {
    let s = input.trim();
    if s.starts_with('{') {
        return Graph::from_json(s);
    }
    let mut chars = s.chars();
    let head = chars
        .next()
        .ok_or_else(|| Error::Parse("empty graph expression".into()))?;
    let nums: Vec<usize> = chars
        .as_str()
        .split(',')
        .map(|p| p.trim().parse::<usize>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::Parse(format!("bad graph expression {s:?}")))?;
    let family = match (head.to_ascii_uppercase(), nums.as_slice()) {
        ('K', [n]) => Family::Complete(*n),
        ('K', [l, m]) => Family::CompleteBipartite(*l, *m),
        ('E', [n]) => Family::Empty(*n),
        ('P', [n]) => Family::Path(*n),
        ('C', [n]) => Family::Cycle(*n),
        ('S', [l, m]) => Family::CompleteSplit(*l, *m),
        ('T', [n]) => Family::Star(*n),
        ('F', parts) => Family::LinearForest(parts.to_vec()),
        _ => return Err(Error::Parse(format!("unknown graph expression {s:?}"))),
    };
    standard_family(&family)
}
