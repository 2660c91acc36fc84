//! Exhaustive checks of the construction claims over all rules, strings and
//! builder choices up to a length bound, plus the inverse search from a
//! graph to the constructions that produce it.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::families::expected_family;
use crate::graph::{
    canonical_form, contains_induced, is_isomorphic, is_threshold, is_threshold_forbidden, standard_family,
    CanonicalForm, Family, Graph, LabeledGraph, MAX_CANONICAL_VERTICES, MAX_ISOMORPHISM_VERTICES,
};
use crate::instructions::InstructionString;
use crate::machines::{
    choice_sequences, interpret, interpret_modifiable, is_memory_modifiable_output, Choice, ConstructionTrace,
    MemoryModel, RuleSet,
};

/// Longest strings for the proposition checks.
pub const MAX_VERIFY_LENGTH: usize = 12;
/// Longest strings when every builder choice sequence is enumerated too.
pub const MAX_CHOICE_LENGTH: usize = 7;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Proposition {
    /// NoMemory outputs are empty, complete, or threshold graphs.
    P2,
    /// FullMemory outputs match the closed-form families.
    P3,
    /// Fading memory outputs match the linear-forest and threshold forms.
    P5,
    /// Modifiable outputs are complete split, complete bipartite or complete.
    CModifiable,
    /// FullMemory outputs have no induced long paths or cycles.
    CPnFree,
}

impl Proposition {
    pub const ALL: [Proposition; 5] =
        [Proposition::P2, Proposition::P3, Proposition::P5, Proposition::CModifiable, Proposition::CPnFree];

    fn max_len(self) -> usize {
        match self {
            Proposition::CModifiable => MAX_CHOICE_LENGTH,
            _ => MAX_VERIFY_LENGTH,
        }
    }
}

impl fmt::Display for Proposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Proposition::P2 => "P2",
            Proposition::P3 => "P3",
            Proposition::P5 => "P5",
            Proposition::CModifiable => "C_modifiable",
            Proposition::CPnFree => "C_pnfree",
        })
    }
}

impl FromStr for Proposition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Proposition::ALL
            .into_iter()
            .find(|p| p.to_string().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::Parse(format!("unknown proposition {s:?} (P2, P3, P5, C_modifiable, C_pnfree)")))
    }
}

impl Serialize for Proposition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A labelled graph as `{"n", "edges", "labels"}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LabeledGraphJson {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    pub labels: String,
}

impl From<&LabeledGraph> for LabeledGraphJson {
    fn from(g: &LabeledGraph) -> Self {
        LabeledGraphJson {
            n: g.graph.n(),
            edges: g.graph.edges(),
            labels: InstructionString::new(g.labels.clone()).to_string(),
        }
    }
}

/// One failing case, with everything needed to rerun it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub rule: RuleSet,
    pub model: MemoryModel,
    pub x: InstructionString,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub choices: Option<Vec<Choice>>,
    pub expected: String,
    pub got: LabeledGraphJson,
}

impl Counterexample {
    fn new(trace: &ConstructionTrace, choices: Option<&[Choice]>, expected: String) -> Self {
        Counterexample {
            rule: trace.rule,
            model: trace.model,
            x: trace.x.clone(),
            choices: choices.map(<[Choice]>::to_vec),
            expected,
            got: (&trace.graph).into(),
        }
    }

    /// Reruns the recorded construction.
    pub fn replay(&self) -> Result<ConstructionTrace> {
        match &self.choices {
            Some(c) => interpret_modifiable(self.rule, &self.x, c),
            None => interpret(self.rule, self.model, &self.x),
        }
    }

    pub fn replays(&self) -> Result<bool> {
        Ok(LabeledGraphJson::from(&self.replay()?.graph) == self.got)
    }
}

/// A construction that exhibits a required pattern.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub pattern: String,
    pub rule: RuleSet,
    pub x: InstructionString,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub proposition: Proposition,
    pub max_n: usize,
    pub models: Vec<MemoryModel>,
    pub rules: Vec<RuleSet>,
    pub cases: u64,
    pub counterexamples: Vec<Counterexample>,
    pub witnesses: Vec<Witness>,
    /// Patterns that had to occur but never did.
    pub missing_witnesses: Vec<String>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u128>,
}

impl VerificationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report json")
    }

    pub fn summary(&self) -> String {
        format!(
            "{} max_n={} rules={} cases={} counterexamples={} {}",
            self.proposition,
            self.max_n,
            self.rules.len(),
            self.cases,
            self.counterexamples.len(),
            if self.pass { "PASS" } else { "FAIL" }
        )
    }
}

fn strings_up_to(max_n: usize) -> Vec<InstructionString> {
    (0..=max_n).flat_map(InstructionString::all).collect()
}

/// Runs `check` on every `(rule, x)` with `|x| <= max_n`, in parallel, and
/// gathers the failures in enumeration order.
fn sweep<F>(rules: &[RuleSet], model: MemoryModel, max_n: usize, check: F) -> Result<(u64, Vec<Counterexample>)>
where
    F: Fn(&ConstructionTrace) -> Result<Option<String>> + Sync,
{
    let strings = strings_up_to(max_n);
    let cases: Vec<(RuleSet, &InstructionString)> =
        rules.iter().flat_map(|&r| strings.iter().map(move |x| (r, x))).collect();
    let found: Vec<Option<Counterexample>> = cases
        .par_iter()
        .map(|&(rule, x)| {
            let trace = interpret(rule, model, x)?;
            Ok(check(&trace)?.map(|expected| Counterexample::new(&trace, None, expected)))
        })
        .collect::<Result<_>>()?;
    Ok((cases.len() as u64, found.into_iter().flatten().collect()))
}

fn family_check(model: MemoryModel) -> impl Fn(&ConstructionTrace) -> Result<Option<String>> + Sync {
    move |trace| {
        let want = expected_family(trace.rule, model, &trace.x).ok_or_else(|| Error::WrongModel(model.to_string()))?;
        Ok((want != trace.graph).then(|| serde_json::to_string(&LabeledGraphJson::from(&want)).expect("json")))
    }
}

fn check_len(prop: Proposition, max_n: usize) -> Result<()> {
    if max_n > prop.max_len() {
        return Err(Error::TooManyVertices { op: "verify_proposition", n: max_n, max: prop.max_len() });
    }
    Ok(())
}

/// The forbidden patterns of the long-path corollary.
fn long_paths_and_cycles() -> Vec<(String, Graph)> {
    let mut out = Vec::new();
    for k in [5, 6] {
        out.push((format!("P{k}"), standard_family(&Family::Path(k)).expect("path")));
        out.push((format!("C{k}"), standard_family(&Family::Cycle(k)).expect("cycle")));
    }
    out
}

/// The graphs a modified construction is allowed to end in.
fn modifiable_targets(n: usize) -> Result<BTreeSet<CanonicalForm>> {
    let mut out = BTreeSet::new();
    for l in 0..=n {
        for f in [Family::CompleteSplit(l, n - l), Family::CompleteBipartite(l, n - l)] {
            out.insert(canonical_form(&standard_family(&f)?)?);
        }
    }
    out.insert(canonical_form(&standard_family(&Family::Complete(n))?)?);
    Ok(out)
}

pub fn verify_proposition(prop: Proposition, max_n: usize) -> Result<VerificationReport> {
    check_len(prop, max_n)?;
    let start = Instant::now();
    let mut witnesses = Vec::new();
    let mut missing = Vec::new();
    let (models, rules, cases, counterexamples) = match prop {
        Proposition::P2 => {
            let model = MemoryModel::NoMemory;
            let rules = RuleSet::valid_for(model);
            let family = family_check(model);
            let (cases, cx) = sweep(&rules, model, max_n, |trace| {
                if let Some(e) = family(trace)? {
                    return Ok(Some(e));
                }
                let g = &trace.graph.graph;
                Ok((!is_threshold(g) || !is_threshold_forbidden(g)).then(|| "a threshold graph".to_string()))
            })?;
            (vec![model], rules, cases, cx)
        }
        Proposition::P3 | Proposition::P5 => {
            let model = if prop == Proposition::P3 { MemoryModel::FullMemory } else { MemoryModel::FADING2 };
            let rules = RuleSet::valid_for(model);
            let (cases, cx) = sweep(&rules, model, max_n, family_check(model))?;
            (vec![model], rules, cases, cx)
        }
        Proposition::CPnFree => {
            let model = MemoryModel::FullMemory;
            let rules = RuleSet::valid_for(model);
            let forbidden = long_paths_and_cycles();
            let (cases, cx) = sweep(&rules, model, max_n, |trace| {
                let hit: Vec<&str> = forbidden
                    .iter()
                    .filter(|(_, h)| contains_induced(&trace.graph.graph, h))
                    .map(|(name, _)| name.as_str())
                    .collect();
                Ok((!hit.is_empty()).then(|| format!("no induced {}", hit.join(", "))))
            })?;
            for (name, pattern) in [
                ("P4", standard_family(&Family::Path(4))?),
                ("C4", standard_family(&Family::Cycle(4))?),
            ] {
                match first_containing(&rules, model, max_n, &pattern)? {
                    Some((rule, x)) => witnesses.push(Witness { pattern: name.to_string(), rule, x }),
                    None => missing.push(name.to_string()),
                }
            }
            (vec![model], rules, cases, cx)
        }
        Proposition::CModifiable => {
            let rules = RuleSet::valid_for(MemoryModel::ModifiableMemory);
            let targets: Vec<BTreeSet<CanonicalForm>> = (0..=max_n).map(modifiable_targets).collect::<Result<_>>()?;
            let strings = strings_up_to(max_n);
            let cases: Vec<(RuleSet, &InstructionString)> =
                rules.iter().flat_map(|&r| strings.iter().map(move |x| (r, x))).collect();
            let per_case: Vec<(u64, Vec<Counterexample>)> = cases
                .par_iter()
                .map(|&(rule, x)| {
                    let mut n_cases = 0;
                    let mut cx = Vec::new();
                    for choices in choice_sequences(rule, x) {
                        n_cases += 1;
                        let trace = interpret_modifiable(rule, x, &choices)?;
                        if is_memory_modifiable_output(&trace)?
                            && !targets[x.len()].contains(&canonical_form(&trace.graph.graph)?)
                        {
                            let expected = "K_l + E_m, K_{l,m} or K_{l+m}".to_string();
                            cx.push(Counterexample::new(&trace, Some(&choices), expected));
                        }
                    }
                    Ok((n_cases, cx))
                })
                .collect::<Result<_>>()?;
            let cases = per_case.iter().map(|c| c.0).sum();
            let cx = per_case.into_iter().flat_map(|c| c.1).collect();
            (vec![MemoryModel::ModifiableMemory], rules, cases, cx)
        }
    };
    let pass = counterexamples.is_empty() && missing.is_empty();
    Ok(VerificationReport {
        proposition: prop,
        max_n,
        models,
        rules,
        cases,
        counterexamples,
        witnesses,
        missing_witnesses: missing,
        pass,
        wall_time_ms: Some(start.elapsed().as_millis()),
    })
}

/// First `(rule, x)` in enumeration order whose output contains `pattern`
/// as an induced subgraph.
fn first_containing(
    rules: &[RuleSet],
    model: MemoryModel,
    max_n: usize,
    pattern: &Graph,
) -> Result<Option<(RuleSet, InstructionString)>> {
    for x in strings_up_to(max_n) {
        for &rule in rules {
            if contains_induced(&interpret(rule, model, &x)?.graph.graph, pattern) {
                return Ok(Some((rule, x)));
            }
        }
    }
    Ok(None)
}

fn canonical_bound(n: usize) -> Result<()> {
    if n > MAX_CANONICAL_VERTICES {
        return Err(Error::TooManyVertices { op: "enumerate_outputs", n, max: MAX_CANONICAL_VERTICES });
    }
    Ok(())
}

/// Classes produced by `rule` under `model` over all strings of length `n`,
/// and over every choice sequence for modifiable memory.
pub fn enumerate_outputs(rule: RuleSet, model: MemoryModel, n: usize) -> Result<BTreeSet<CanonicalForm>> {
    canonical_bound(n)?;
    if model == MemoryModel::ModifiableMemory && n > MAX_CHOICE_LENGTH {
        return Err(Error::TooManyVertices { op: "enumerate_outputs", n, max: MAX_CHOICE_LENGTH });
    }
    let forms: Vec<Vec<CanonicalForm>> = InstructionString::all(n)
        .collect::<Vec<_>>()
        .par_iter()
        .map(|x| {
            let graphs: Vec<Graph> = if model == MemoryModel::ModifiableMemory {
                choice_sequences(rule, x)
                    .iter()
                    .map(|c| interpret_modifiable(rule, x, c).map(|t| t.graph.graph))
                    .collect::<Result<_>>()?
            } else {
                vec![interpret(rule, model, x)?.graph.graph]
            };
            graphs.iter().map(canonical_form).collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    Ok(forms.into_iter().flatten().collect())
}

/// Classes reachable under `model` across all valid rules at length `n`.
pub fn reachable_classes(model: MemoryModel, n: usize) -> Result<BTreeSet<CanonicalForm>> {
    let mut out = BTreeSet::new();
    for rule in RuleSet::valid_for(model) {
        out.extend(enumerate_outputs(rule, model, n)?);
    }
    Ok(out)
}

pub fn expressiveness_count(model: MemoryModel, n: usize) -> Result<usize> {
    Ok(reachable_classes(model, n)?.len())
}

/// A way to build a given graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Construction {
    pub rule: RuleSet,
    pub model: MemoryModel,
    pub x: InstructionString,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub choices: Option<Vec<Choice>>,
}

/// Every construction under `model` whose output is isomorphic to `g`.
pub fn find_constructions(g: &Graph, model: MemoryModel) -> Result<Vec<Construction>> {
    let n = g.n();
    let max = if model == MemoryModel::ModifiableMemory { MAX_CHOICE_LENGTH } else { MAX_ISOMORPHISM_VERTICES };
    if n > max {
        return Err(Error::TooManyVertices { op: "find_constructions", n, max });
    }
    let strings: Vec<InstructionString> = InstructionString::all(n).collect();
    let mut out = Vec::new();
    for rule in RuleSet::valid_for(model) {
        let found: Vec<Vec<Construction>> = strings
            .par_iter()
            .map(|x| {
                let mut hits = Vec::new();
                if model == MemoryModel::ModifiableMemory {
                    for c in choice_sequences(rule, x) {
                        if is_isomorphic(&interpret_modifiable(rule, x, &c)?.graph.graph, g)? {
                            hits.push(Construction { rule, model, x: x.clone(), choices: Some(c) });
                        }
                    }
                } else if is_isomorphic(&interpret(rule, model, x)?.graph.graph, g)? {
                    hits.push(Construction { rule, model, x: x.clone(), choices: None });
                }
                Ok(hits)
            })
            .collect::<Result<_>>()?;
        out.extend(found.into_iter().flatten());
    }
    Ok(out)
}
