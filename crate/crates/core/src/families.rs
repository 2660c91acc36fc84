//! Closed-form constructors for the graphs the machines produce, and the
//! run statistics of instruction strings.
//!
//! Each constructor builds its graph from the label classes and index
//! conditions directly, without running a machine, so the two can be checked
//! against each other. Where a textbook index convention and the construction
//! rule disagree, the constructor follows the construction rule:
//!
//! * `K̃(x)`: the cross edges are the pairs whose 0-labelled vertex arrives
//!   *after* the 1-labelled one.
//! * `K'(x)`: the clique is on the 0-labelled vertices (`l` zeros), the
//!   independent set on the 1-labelled vertices.

pub use crate::instructions::InstructionString;

use serde::Serialize;

use crate::graph::{Graph, LabeledGraph};
use crate::machines::{Action, MemoryModel, RuleSet};

/// A sequence of positive lengths.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RunStatistics(pub Vec<usize>);

impl RunStatistics {
    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }
}

impl From<Vec<usize>> for RunStatistics {
    fn from(v: Vec<usize>) -> Self {
        RunStatistics(v)
    }
}

/// A maximal segment of positions `start..start + len` (1-based start).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Span {
    start: usize,
    len: usize,
}

fn lengths(spans: &[Span]) -> RunStatistics {
    RunStatistics(spans.iter().map(|s| s.len).collect())
}

/// Maximal runs of `bit`.
fn runs_of(x: &InstructionString, bit: bool) -> Vec<Span> {
    let mut out = Vec::new();
    let mut t = 1;
    while t <= x.len() {
        if x.bit(t) == bit {
            let start = t;
            while t <= x.len() && x.bit(t) == bit {
                t += 1;
            }
            out.push(Span { start, len: t - start });
        } else {
            t += 1;
        }
    }
    out
}

/// Maximal alternating segments of length at least 2.
fn alternating_spans(x: &InstructionString) -> Vec<Span> {
    let mut out = Vec::new();
    let mut start = 1;
    for t in 2..=x.len() + 1 {
        if t > x.len() || x.bit(t) == x.bit(t - 1) {
            if t - start >= 2 {
                out.push(Span { start, len: t - start });
            }
            start = t;
        }
    }
    out
}

/// Segments `0…01`, or a trailing `0…0`, with at least one zero and length
/// at least 2: position `t` continues the segment iff `x_{t-1} = 0`.
fn zero_block_spans(x: &InstructionString) -> Vec<Span> {
    let mut out = Vec::new();
    let mut t = 1;
    while t <= x.len() {
        if x.bit(t) {
            t += 1;
            continue;
        }
        let start = t;
        while t <= x.len() && !x.bit(t) {
            t += 1;
        }
        // the 1 closing the zero run belongs to the segment
        let end = if t <= x.len() { t } else { t - 1 };
        if end > start {
            out.push(Span { start, len: end - start + 1 });
        }
        t = end + 1;
    }
    out
}

/// `R(x)`: lengths of the maximal runs of zeros.
pub fn runs_r(x: &InstructionString) -> RunStatistics {
    lengths(&runs_of(x, false))
}

/// `S(x)`: lengths of the maximal runs of ones.
pub fn runs_s(x: &InstructionString) -> RunStatistics {
    lengths(&runs_of(x, true))
}

/// `Q(x)`: lengths (at least 2) of the maximal alternating substrings.
pub fn alternating_q(x: &InstructionString) -> RunStatistics {
    lengths(&alternating_spans(x))
}

/// `A(x)`: lengths of the blocks `0⋯01`, plus a trailing block of zeros.
pub fn blocks_a(x: &InstructionString) -> RunStatistics {
    lengths(&zero_block_spans(x))
}

fn labeled(x: &InstructionString, g: Graph) -> LabeledGraph {
    LabeledGraph::new(g, x.bits().to_vec())
}

/// Graph on `|x|` vertices with `{i, j}` (for `i < j`) present iff `keep`.
fn from_condition(x: &InstructionString, keep: impl Fn(usize, usize) -> bool) -> LabeledGraph {
    let n = x.len();
    let mut g = Graph::empty(n);
    for i in 1..=n {
        for j in (i + 1)..=n {
            if keep(i, j) {
                g.set0(i - 1, j - 1);
            }
        }
    }
    labeled(x, g)
}

/// Paths laid over the given spans; every other vertex stays isolated.
fn paths_on(x: &InstructionString, spans: &[Span]) -> LabeledGraph {
    let mut g = Graph::empty(x.len());
    for s in spans {
        for t in s.start..s.start + s.len - 1 {
            g.set0(t - 1, t);
        }
    }
    labeled(x, g)
}

/// `E(x)`: `K_{l,m}` between the label classes minus the pairs whose
/// 0-labelled vertex comes first.
pub fn family_e(x: &InstructionString) -> LabeledGraph {
    from_condition(x, |i, j| x.bit(i) && !x.bit(j))
}

/// `K(x)`: `K_l + E_m` minus the pairs whose 0-labelled vertex comes last.
pub fn family_k(x: &InstructionString) -> LabeledGraph {
    from_condition(x, |i, j| match (x.bit(i), x.bit(j)) {
        (false, false) => true,
        (false, true) => true,
        (true, false) => false,
        (true, true) => false,
    })
}

/// `K̃(x)`: `K_l ⊎ K_m` plus the pairs whose 0-labelled vertex comes last.
pub fn family_ktilde(x: &InstructionString) -> LabeledGraph {
    from_condition(x, |i, j| x.bit(i) == x.bit(j) || (x.bit(i) && !x.bit(j)))
}

/// `K'(x)`: `K_l + E_m` (clique on the zeros) minus `{t, t'}` with
/// `x_t = 1`, `x_{t'} = 0` and `t' < t - 1`.
pub fn family_kprime(x: &InstructionString) -> LabeledGraph {
    from_condition(x, |i, j| match (x.bit(i), x.bit(j)) {
        (false, false) => true,
        (true, false) => true,
        (false, true) => i + 1 == j,
        (true, true) => false,
    })
}

/// `E'(x)`: `K̃(x)` minus `{t, t'}` with `x_t = x_{t'} = 1` and `t' < t - 1`.
pub fn family_eprime(x: &InstructionString) -> LabeledGraph {
    let kt = family_ktilde(x);
    from_condition(x, |i, j| kt.graph.has_edge(i, j) && !(x.bit(i) && x.bit(j) && i + 1 < j))
}

/// `E_l ⊎ E_m`.
pub fn family_empty(x: &InstructionString) -> LabeledGraph {
    labeled(x, Graph::empty(x.len()))
}

/// `K_{l+m}`.
pub fn family_complete(x: &InstructionString) -> LabeledGraph {
    from_condition(x, |_, _| true)
}

/// `K_l ⊎ E_m`: clique on the zeros, ones isolated.
pub fn family_clique_zeros(x: &InstructionString) -> LabeledGraph {
    from_condition(x, |i, j| !x.bit(i) && !x.bit(j))
}

/// `K_{l,m}` between the label classes.
pub fn family_bipartite(x: &InstructionString) -> LabeledGraph {
    from_condition(x, |i, j| x.bit(i) != x.bit(j))
}

/// `K_l + E_m`: clique on the zeros, joined to the independent ones.
pub fn family_split(x: &InstructionString) -> LabeledGraph {
    from_condition(x, |i, j| !(x.bit(i) && x.bit(j)))
}

/// `K_l ⊎ K_m`.
pub fn family_two_cliques(x: &InstructionString) -> LabeledGraph {
    from_condition(x, |i, j| x.bit(i) == x.bit(j))
}

/// The threshold graph with creation sequence `x`: a 0 adds a dominating
/// vertex, a 1 an isolated one.
pub fn family_threshold(x: &InstructionString) -> LabeledGraph {
    let mut g = Graph::empty(0);
    for t in 1..=x.len() {
        let nbrs: Vec<usize> = if x.bit(t) { vec![] } else { (1..t).collect() };
        g = g.add_vertex_with_neighbors(&nbrs).expect("earlier vertices");
    }
    labeled(x, g)
}

/// `P_2` on every `10` substring, the rest isolated.
pub fn family_pairs_10(x: &InstructionString) -> LabeledGraph {
    let spans: Vec<Span> = (2..=x.len())
        .filter(|&t| x.bit(t - 1) && !x.bit(t))
        .map(|t| Span { start: t - 1, len: 2 })
        .collect();
    paths_on(x, &spans)
}

/// `⊎_{r ∈ R(x)} P_r` with the ones isolated.
pub fn family_zero_runs(x: &InstructionString) -> LabeledGraph {
    paths_on(x, &runs_of(x, false))
}

/// `⊎_{r ∈ R(x)} P_r ⊎ ⊎_{s ∈ S(x)} P_s`.
pub fn family_all_runs(x: &InstructionString) -> LabeledGraph {
    let mut spans = runs_of(x, false);
    spans.extend(runs_of(x, true));
    paths_on(x, &spans)
}

/// `⊎_{q ∈ Q(x)} P_q ⊎ E_{t - ΣQ}`.
pub fn family_alternating(x: &InstructionString) -> LabeledGraph {
    paths_on(x, &alternating_spans(x))
}

/// `⊎_{a ∈ A(x)} P_a ⊎ E_{t - ΣA}`.
pub fn family_zero_blocks(x: &InstructionString) -> LabeledGraph {
    paths_on(x, &zero_block_spans(x))
}

/// Which closed form a rule produces under a memory model.
pub fn expected_family(rule: RuleSet, model: MemoryModel, x: &InstructionString) -> Option<LabeledGraph> {
    let canonical = RuleSet::table(MemoryModel::FullMemory);
    if !canonical.contains(&rule) {
        // exchange the bits: same graph, flipped labels
        let swapped = rule.swapped();
        let mut g = expected_family(swapped, model, &x.flipped())?;
        g.labels = x.bits().to_vec();
        return Some(g);
    }
    use Action::*;
    let r = (rule.on_zero, rule.on_one);
    Some(match model {
        MemoryModel::NoMemory | MemoryModel::FullMemory => match r {
            (NoEdge, NoEdge) => family_empty(x),
            (JoinLabel1, NoEdge) => family_e(x),
            (JoinLabel0, NoEdge) => family_clique_zeros(x),
            (DominateAll, NoEdge) => family_threshold(x),
            (JoinLabel1, JoinLabel0) => family_bipartite(x),
            (JoinLabel0, JoinLabel0) => family_k(x),
            (DominateAll, JoinLabel0) => family_split(x),
            (JoinLabel0, JoinLabel1) => family_two_cliques(x),
            (DominateAll, JoinLabel1) => family_ktilde(x),
            (DominateAll, DominateAll) => family_complete(x),
            _ => unreachable!("rule {rule} is in the table"),
        },
        MemoryModel::FadingMemory(2) => match r {
            (NoEdge, NoEdge) => family_empty(x),
            (DominateAll, DominateAll) => family_complete(x),
            (DominateAll, NoEdge) => family_threshold(x),
            (JoinLabel0, NoEdge) => family_zero_runs(x),
            (JoinLabel0, JoinLabel1) => family_all_runs(x),
            (JoinLabel1, NoEdge) => family_pairs_10(x),
            (JoinLabel1, JoinLabel0) => family_alternating(x),
            (JoinLabel0, JoinLabel0) => family_zero_blocks(x),
            (DominateAll, JoinLabel0) => family_kprime(x),
            (DominateAll, JoinLabel1) => family_eprime(x),
            _ => unreachable!("rule {rule} is in the table"),
        },
        _ => return None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::machines::interpret;

    fn x(s: &str) -> InstructionString {
        s.parse().unwrap()
    }

    fn rs(v: &[usize]) -> RunStatistics {
        RunStatistics(v.to_vec())
    }

    #[test]
    fn run_statistics_examples() {
        let w = x("00110100010");
        assert_eq!(runs_r(&w), rs(&[2, 1, 3, 1]));
        assert_eq!(runs_s(&w), rs(&[2, 1, 1]));
        assert_eq!(alternating_q(&w), rs(&[2, 4, 3]));
        assert_eq!(blocks_a(&w), rs(&[3, 2, 4]));
        assert_eq!(runs_r(&x("")), rs(&[]));
        assert_eq!(alternating_q(&x("0000")), rs(&[]));
        assert_eq!(alternating_q(&x("0101")), rs(&[4]));
        assert_eq!(blocks_a(&x("1111")), rs(&[]));
        assert_eq!(blocks_a(&x("000")), rs(&[3]));
        assert_eq!(blocks_a(&x("0")), rs(&[]));
        assert_eq!(blocks_a(&x("01")), rs(&[2]));
    }

    #[test]
    fn run_sums() {
        for len in 0..=12 {
            for w in InstructionString::all(len) {
                assert_eq!(runs_r(&w).total() + runs_s(&w).total(), len);
                assert!(alternating_q(&w).total() <= len);
                assert!(blocks_a(&w).total() <= len);
            }
        }
    }

    #[test]
    fn q_matches_fading_alternating_components() {
        let rule: RuleSet = "0>1,1>0".parse().unwrap();
        for len in 0..=12 {
            for w in InstructionString::all(len) {
                let g = interpret(rule, MemoryModel::FADING2, &w).unwrap().graph.graph;
                let mut comps: Vec<usize> = g.component_sizes().into_iter().filter(|&s| s >= 2).collect();
                let mut q = alternating_q(&w).0;
                comps.sort_unstable();
                q.sort_unstable();
                assert_eq!(comps, q, "{w}");
            }
        }
    }

    #[test]
    fn family_e_worked_example() {
        // the 1 at position 4 sees only the later 0 at position 5
        let e = family_e(&x("00010"));
        assert_eq!(e.graph.edges(), vec![(4, 5)]);
        assert_eq!(family_e(&x("0000")).graph.edge_count(), 0);
    }

    #[test]
    fn ktilde_follows_the_machine() {
        let g = family_ktilde(&x("0011"));
        assert_eq!(g.graph.edges(), vec![(1, 2), (3, 4)]);
        let g = family_ktilde(&x("1100"));
        assert_eq!(g.graph.edge_count(), 6);
    }

    #[test]
    fn fading_prime_examples() {
        assert_eq!(family_kprime(&x("01")).graph.edges(), vec![(1, 2)]);
        assert_eq!(family_kprime(&x("011")).graph.edges(), vec![(1, 2)]);
        assert_eq!(family_eprime(&x("11")).graph.edges(), vec![(1, 2)]);
        assert_eq!(family_eprime(&x("111")).graph.edges(), vec![(1, 2), (2, 3)]);
    }

    #[test]
    fn machines_match_closed_forms() {
        for model in [MemoryModel::FullMemory, MemoryModel::FADING2] {
            for rule in RuleSet::all() {
                for len in 0..=8 {
                    for w in InstructionString::all(len) {
                        let got = interpret(rule, model, &w).unwrap().graph;
                        let want = expected_family(rule, model, &w).unwrap();
                        assert_eq!(got, want, "{rule} {model} {w}");
                    }
                }
            }
        }
    }

    #[test]
    fn labels_follow_the_string() {
        let w = x("0110");
        for rule in RuleSet::all() {
            for model in [MemoryModel::FullMemory, MemoryModel::FADING2] {
                let g = expected_family(rule, model, &w).unwrap();
                assert_eq!(g.labels, w.bits());
            }
        }
        assert!(expected_family(RuleSet::all()[0], MemoryModel::ModifiableMemory, &w).is_none());
    }
}
