//! The construction machines: one instruction bit per time step, turned into
//! a new vertex and its edges according to a rule set and a memory model.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::cost::ResourceCost;
use crate::error::{Error, Result};
use crate::graph::{is_isomorphic, Graph, LabeledGraph};
use crate::instructions::InstructionString;

/// What the builder does with the new vertex `t` on one instruction bit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Action {
    /// `∅`: `t` stays isolated.
    NoEdge,
    /// `E`: `t` is joined to every earlier vertex.
    DominateAll,
    /// `0`: `t` is joined to the earlier vertices labelled 0.
    JoinLabel0,
    /// `1`: `t` is joined to the earlier vertices labelled 1.
    JoinLabel1,
}

impl Action {
    pub const ALL: [Action; 4] =
        [Action::NoEdge, Action::DominateAll, Action::JoinLabel0, Action::JoinLabel1];

    pub fn symbol(self) -> char {
        match self {
            Action::NoEdge => '-',
            Action::DominateAll => 'E',
            Action::JoinLabel0 => '0',
            Action::JoinLabel1 => '1',
        }
    }

    pub fn from_symbol(c: char) -> Option<Action> {
        match c {
            '-' | '∅' => Some(Action::NoEdge),
            'E' | 'e' => Some(Action::DominateAll),
            '0' => Some(Action::JoinLabel0),
            '1' => Some(Action::JoinLabel1),
            _ => None,
        }
    }

    /// The label targeted by a join action.
    pub fn join_label(self) -> Option<bool> {
        match self {
            Action::JoinLabel0 => Some(false),
            Action::JoinLabel1 => Some(true),
            _ => None,
        }
    }

    pub fn needs_memory(self) -> bool {
        self.join_label().is_some()
    }

    /// The same action after exchanging the roles of 0 and 1.
    pub fn swapped(self) -> Action {
        match self {
            Action::JoinLabel0 => Action::JoinLabel1,
            Action::JoinLabel1 => Action::JoinLabel0,
            other => other,
        }
    }
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

impl Serialize for Action {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// One action per instruction bit, written `0>a,1>b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RuleSet {
    pub on_zero: Action,
    pub on_one: Action,
}

impl RuleSet {
    pub const fn new(on_zero: Action, on_one: Action) -> Self {
        RuleSet { on_zero, on_one }
    }

    pub fn action(&self, bit: bool) -> Action {
        if bit {
            self.on_one
        } else {
            self.on_zero
        }
    }

    /// All 16 action pairs.
    pub fn all() -> Vec<RuleSet> {
        Action::ALL
            .iter()
            .flat_map(|&a| Action::ALL.iter().map(move |&b| RuleSet::new(a, b)))
            .collect()
    }

    /// Every rule set the model can execute.
    pub fn valid_for(model: MemoryModel) -> Vec<RuleSet> {
        RuleSet::all().into_iter().filter(|r| r.check(model).is_ok()).collect()
    }

    /// The distinct interpretations up to exchanging 0 and 1, in the order
    /// of the summary tables: 3 without memory, 10 with label memory.
    pub fn table(model: MemoryModel) -> Vec<RuleSet> {
        use Action::*;
        match model {
            MemoryModel::NoMemory => vec![
                RuleSet::new(NoEdge, NoEdge),
                RuleSet::new(DominateAll, NoEdge),
                RuleSet::new(DominateAll, DominateAll),
            ],
            _ => vec![
                RuleSet::new(NoEdge, NoEdge),
                RuleSet::new(JoinLabel1, NoEdge),
                RuleSet::new(JoinLabel0, NoEdge),
                RuleSet::new(DominateAll, NoEdge),
                RuleSet::new(JoinLabel1, JoinLabel0),
                RuleSet::new(JoinLabel0, JoinLabel0),
                RuleSet::new(DominateAll, JoinLabel0),
                RuleSet::new(JoinLabel0, JoinLabel1),
                RuleSet::new(DominateAll, JoinLabel1),
                RuleSet::new(DominateAll, DominateAll),
            ],
        }
    }

    /// The rule obtained by exchanging the meaning of the two bits. Running it
    /// on the flipped string gives the same graph with flipped labels.
    pub fn swapped(&self) -> RuleSet {
        RuleSet::new(self.on_one.swapped(), self.on_zero.swapped())
    }

    fn check(&self, model: MemoryModel) -> Result<()> {
        if model == MemoryModel::NoMemory {
            for a in [self.on_zero, self.on_one] {
                if a.needs_memory() {
                    return Err(Error::InvalidActionForModel {
                        action: a.to_string(),
                        model: model.to_string(),
                    });
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for RuleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "0>{},1>{}", self.on_zero, self.on_one)
    }
}

impl FromStr for RuleSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("rule must look like \"0>1,1>-\", got {s:?}"));
        let mut on_zero = None;
        let mut on_one = None;
        for part in s.split(',') {
            let (lhs, rhs) = part.trim().split_once('>').ok_or_else(bad)?;
            let mut rc = rhs.trim().chars();
            let action = rc.next().and_then(Action::from_symbol).ok_or_else(bad)?;
            if rc.next().is_some() {
                return Err(bad());
            }
            let slot = match lhs.trim() {
                "0" => &mut on_zero,
                "1" => &mut on_one,
                _ => return Err(bad()),
            };
            if slot.replace(action).is_some() {
                return Err(bad());
            }
        }
        match (on_zero, on_one) {
            (Some(a), Some(b)) => Ok(RuleSet::new(a, b)),
            _ => Err(bad()),
        }
    }
}

impl Serialize for RuleSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// How much of the label history the builder can read.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MemoryModel {
    NoMemory,
    FullMemory,
    /// Labels stay readable for `L` steps; only `L = 2` is supported.
    FadingMemory(usize),
    /// Full memory, and label joins may also rewire earlier vertices.
    ModifiableMemory,
}

impl MemoryModel {
    pub fn fading(length: usize) -> Result<MemoryModel> {
        if length == 2 {
            Ok(MemoryModel::FadingMemory(2))
        } else {
            Err(Error::UnsupportedFadingLength(length))
        }
    }

    pub const FADING2: MemoryModel = MemoryModel::FadingMemory(2);
}

impl fmt::Display for MemoryModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MemoryModel::NoMemory => f.write_str("none"),
            MemoryModel::FullMemory => f.write_str("full"),
            MemoryModel::FadingMemory(l) => write!(f, "fading{l}"),
            MemoryModel::ModifiableMemory => f.write_str("modifiable"),
        }
    }
}

impl FromStr for MemoryModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "none" | "no" | "nomemory" => Ok(MemoryModel::NoMemory),
            "full" | "fullmemory" => Ok(MemoryModel::FullMemory),
            "modifiable" | "modify" => Ok(MemoryModel::ModifiableMemory),
            "fading" => MemoryModel::fading(2),
            other => match other.strip_prefix("fading").map(|l| l.trim_start_matches([':', '='])) {
                Some(l) => {
                    let l = l.parse().map_err(|_| Error::Parse(format!("bad fading length in {s:?}")))?;
                    MemoryModel::fading(l)
                }
                None => Err(Error::Parse(format!(
                    "memory model must be none, full, fading2 or modifiable, got {s:?}"
                ))),
            },
        }
    }
}

impl Serialize for MemoryModel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// The builder's per-step choice under modifiable memory.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Choice {
    Standard,
    /// Saturate every pair between the instruction's label and the join target.
    Modify,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Step {
    pub t: usize,
    pub bit: u8,
    pub action: Action,
    pub choice: Choice,
    pub edges_added: Vec<(usize, usize)>,
}

/// Per-step record of one run of a machine.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConstructionTrace {
    pub rule: RuleSet,
    pub model: MemoryModel,
    pub x: InstructionString,
    pub steps: Vec<Step>,
    #[serde(serialize_with = "ser_labeled")]
    pub graph: LabeledGraph,
    pub cost: ResourceCost,
}

fn ser_labeled<S: Serializer>(g: &LabeledGraph, s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeStruct;
    let mut st = s.serialize_struct("LabeledGraph", 3)?;
    st.serialize_field("n", &g.graph.n())?;
    st.serialize_field("edges", &g.graph.edges())?;
    st.serialize_field("labels", &InstructionString::new(g.labels.clone()))?;
    st.end()
}

impl ConstructionTrace {
    /// `G_t`: the graph after replaying steps `1..=t`.
    pub fn graph_at(&self, t: usize) -> Graph {
        let mut g = Graph::empty(t);
        for step in &self.steps[..t] {
            for &(i, j) in &step.edges_added {
                g.set0(i - 1, j - 1);
            }
        }
        g
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("trace json")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("trace json")
    }
}

/// Runs `rule` under `model` on `x`.
///
/// Under [`MemoryModel::ModifiableMemory`] this is the all-standard run; use
/// [`interpret_modifiable`] to exercise the modify move.
pub fn interpret(rule: RuleSet, model: MemoryModel, x: &InstructionString) -> Result<ConstructionTrace> {
    match model {
        MemoryModel::FadingMemory(l) if l != 2 => return Err(Error::UnsupportedFadingLength(l)),
        MemoryModel::ModifiableMemory => {
            return interpret_modifiable(rule, x, &vec![Choice::Standard; x.len()]);
        }
        _ => {}
    }
    rule.check(model)?;
    let n = x.len();
    let mut g = Graph::empty(n);
    let mut steps = Vec::with_capacity(n);
    for t in 1..=n {
        let bit = x.bit(t);
        let action = rule.action(bit);
        let earlier: Vec<usize> = match (action, model) {
            (Action::NoEdge, _) => vec![],
            (Action::DominateAll, _) => (1..t).collect(),
            (join, MemoryModel::FadingMemory(_)) => {
                let c = join.join_label().expect("join action");
                if t >= 2 && x.bit(t - 1) == c {
                    vec![t - 1]
                } else {
                    vec![]
                }
            }
            (join, _) => {
                let c = join.join_label().expect("join action");
                (1..t).filter(|&i| x.bit(i) == c).collect()
            }
        };
        let edges_added: Vec<(usize, usize)> = earlier.iter().map(|&i| (i, t)).collect();
        for &i in &earlier {
            g.set0(i - 1, t - 1);
        }
        steps.push(Step { t, bit: u8::from(bit), action, choice: Choice::Standard, edges_added });
    }
    let memory_bits = if model == MemoryModel::NoMemory { 0 } else { n as u64 };
    Ok(ConstructionTrace {
        rule,
        model,
        x: x.clone(),
        steps,
        graph: LabeledGraph::new(g, x.bits().to_vec()),
        cost: ResourceCost { instruction_bits: n as u64, memory_bits, random_bits: 0 },
    })
}

/// Runs `rule` with full label memory where, at each step marked
/// [`Choice::Modify`], the label join with target `c` on bit `b` instead adds
/// every edge between a `b`-labelled and a `c`-labelled vertex among `1..=t`.
pub fn interpret_modifiable(
    rule: RuleSet,
    x: &InstructionString,
    choices: &[Choice],
) -> Result<ConstructionTrace> {
    if choices.len() != x.len() {
        return Err(Error::ChoiceLengthMismatch { expected: x.len(), got: choices.len() });
    }
    let n = x.len();
    let mut g = Graph::empty(n);
    let mut steps = Vec::with_capacity(n);
    for t in 1..=n {
        let bit = x.bit(t);
        let action = rule.action(bit);
        let choice = choices[t - 1];
        let mut edges_added = Vec::new();
        match (choice, action) {
            (Choice::Modify, Action::NoEdge | Action::DominateAll) => {
                return Err(Error::ModifyUnsupported { t, action: action.to_string() });
            }
            (Choice::Modify, join) => {
                let c = join.join_label().expect("join action");
                for i in 1..=t {
                    for j in 1..=t {
                        if i != j && x.bit(i) == bit && x.bit(j) == c && !g.adj0(i - 1, j - 1) {
                            g.set0(i - 1, j - 1);
                            edges_added.push((i.min(j), i.max(j)));
                        }
                    }
                }
            }
            (Choice::Standard, Action::NoEdge) => {}
            (Choice::Standard, Action::DominateAll) => edges_added.extend((1..t).map(|i| (i, t))),
            (Choice::Standard, join) => {
                let c = join.join_label().expect("join action");
                edges_added.extend((1..t).filter(|&i| x.bit(i) == c).map(|i| (i, t)));
            }
        }
        if choice == Choice::Standard {
            for &(i, j) in &edges_added {
                g.set0(i - 1, j - 1);
            }
        }
        edges_added.sort_unstable();
        steps.push(Step { t, bit: u8::from(bit), action, choice, edges_added });
    }
    Ok(ConstructionTrace {
        rule,
        model: MemoryModel::ModifiableMemory,
        x: x.clone(),
        steps,
        graph: LabeledGraph::new(g, x.bits().to_vec()),
        cost: ResourceCost { instruction_bits: n as u64, memory_bits: n as u64, random_bits: 0 },
    })
}

/// Whether the trace ends in a memory-modifiable graph `M_t`: deleting the
/// last vertex `t` leaves a graph not isomorphic to `M_{t-1}`.
pub fn is_memory_modifiable_output(trace: &ConstructionTrace) -> Result<bool> {
    let n = trace.x.len();
    if n == 0 {
        return Ok(false);
    }
    let before = trace.graph_at(n - 1);
    let after = trace.graph.graph.prefix(n - 1);
    if before == after {
        return Ok(false);
    }
    Ok(!is_isomorphic(&before, &after)?)
}

/// Every step `t` at which earlier edges were rewired, i.e. the induced
/// subgraph of `G_t` on `1..t` differs from `G_{t-1}`.
pub fn modified_steps(trace: &ConstructionTrace) -> Vec<usize> {
    trace
        .steps
        .iter()
        .filter(|s| s.edges_added.iter().any(|&(_, j)| j < s.t))
        .map(|s| s.t)
        .collect()
}

/// All choice sequences the builder can make on `x`: `Modify` is only
/// available where the fired action is a label join.
pub fn choice_sequences(rule: RuleSet, x: &InstructionString) -> Vec<Vec<Choice>> {
    let open: Vec<usize> =
        (0..x.len()).filter(|&i| rule.action(x.bits()[i]).needs_memory()).collect();
    (0..1u64 << open.len())
        .map(|mask| {
            let mut seq = vec![Choice::Standard; x.len()];
            for (k, &i) in open.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    seq[i] = Choice::Modify;
                }
            }
            seq
        })
        .collect()
}
