//! One line per acceptance criterion. Runs without the libtest harness so
//! every line is printed; exits non-zero if any criterion fails.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use num_rational::BigRational;
use num_traits::One;

use resgraph::cost::bit_length;
use resgraph::families::{alternating_q, blocks_a, runs_r, runs_s, RunStatistics};
use resgraph::graph::{
    canonical_form, contains_induced, is_isomorphic, is_threshold, is_threshold_forbidden, isomorphism_classes,
    parse_graph_expr, standard_family, Family, Graph,
};
use resgraph::machines::{interpret, interpret_modifiable, is_memory_modifiable_output, Choice};
use resgraph::randomness::{
    likelihood_bounds, likelihood_exact, likelihood_extremes, likelihood_mc, randomness_cost_a,
    randomness_cost_a_closed, dyad_bits,
};
use resgraph::trees::{is_recursive_tree, prufer_decode, prufer_encode, sample_ua, tree_cost, ua_likelihood_exact};
use resgraph::verify::{enumerate_outputs, reachable_classes, verify_proposition, Proposition};
use resgraph::{InstructionString, MemoryModel, RuleSet};

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ratio(p: i64, q: i64) -> BigRational {
    BigRational::new(p.into(), q.into())
}

fn factorial(n: i64) -> i64 {
    (1..=n).product()
}

fn rule(s: &str) -> RuleSet {
    s.parse().unwrap()
}

fn x(s: &str) -> InstructionString {
    s.parse().unwrap()
}

fn e(err: impl std::fmt::Display) -> String {
    err.to_string()
}

fn report_check(prop: Proposition, max_n: usize) -> Result<u64, String> {
    let rep = verify_proposition(prop, max_n).map_err(e)?;
    if !rep.pass {
        let first = rep.counterexamples.first().map(|c| serde_json::to_string(c).unwrap());
        return Err(format!("{}; first counterexample {first:?}", rep.summary()));
    }
    for c in &rep.counterexamples {
        ensure(c.replays().map_err(e)?, || "counterexample does not replay".into())?;
    }
    Ok(rep.cases)
}

fn no_memory_table() -> Check {
    let cases = report_check(Proposition::P2, 10)?;
    for len in 0..=10 {
        for w in InstructionString::all(len) {
            let k = interpret(rule("0>E,1>E"), MemoryModel::NoMemory, &w).map_err(e)?.graph.graph;
            ensure(k == standard_family(&Family::Complete(len)).unwrap(), || format!("EE on {w}"))?;
            let empty = interpret(rule("0>-,1>-"), MemoryModel::NoMemory, &w).map_err(e)?.graph.graph;
            ensure(empty == Graph::empty(len), || format!("-- on {w}"))?;
            let t = interpret(rule("0>E,1>-"), MemoryModel::NoMemory, &w).map_err(e)?.graph.graph;
            ensure(is_threshold(&t) && is_threshold_forbidden(&t), || format!("E- on {w} not threshold"))?;
        }
    }
    Ok(format!("{cases} runs, |x| <= 10"))
}

fn full_memory_table() -> Check {
    let cases = report_check(Proposition::P3, 8)?;
    Ok(format!("{cases} runs over 16 rules, |x| <= 8"))
}

fn pn_free() -> Check {
    let cases = report_check(Proposition::CPnFree, 8)?;
    let p4 = standard_family(&Family::Path(4)).unwrap();
    let c4 = standard_family(&Family::Cycle(4)).unwrap();
    let g = interpret(rule("0>1,1>-"), MemoryModel::FullMemory, &x("10010")).map_err(e)?.graph.graph;
    ensure(contains_induced(&g, &p4), || "10010 under 0>1,1>- has no induced P4".into())?;
    let mut c4_seen = false;
    'outer: for r in RuleSet::valid_for(MemoryModel::FullMemory) {
        for len in 0..=8 {
            for w in InstructionString::all(len) {
                if contains_induced(&interpret(r, MemoryModel::FullMemory, &w).map_err(e)?.graph.graph, &c4) {
                    c4_seen = true;
                    break 'outer;
                }
            }
        }
    }
    ensure(c4_seen, || "no output contains C4".into())?;
    Ok(format!("{cases} runs, P4 witness 10010, C4 found"))
}

fn modifiable() -> Check {
    let cases = report_check(Proposition::CModifiable, 6)?;
    let w = x("00010");
    let choices = [Choice::Standard, Choice::Standard, Choice::Standard, Choice::Standard, Choice::Modify];
    let trace = interpret_modifiable(rule("0>1,1>-"), &w, &choices).map_err(e)?;
    ensure(is_memory_modifiable_output(&trace).map_err(e)?, || "worked example not flagged".into())?;
    let star = standard_family(&Family::CompleteBipartite(1, 4)).unwrap();
    ensure(is_isomorphic(&trace.graph.graph, &star).map_err(e)?, || "worked example is not K_{1,4}".into())?;
    Ok(format!("{cases} runs including every choice sequence, |x| <= 6"))
}

fn fading_table() -> Check {
    let cases = report_check(Proposition::P5, 8)?;
    let w = x("00110100010");
    let want = [
        ("R", runs_r(&w), vec![2, 1, 3, 1]),
        ("S", runs_s(&w), vec![2, 1, 1]),
        ("Q", alternating_q(&w), vec![2, 4, 3]),
        ("A", blocks_a(&w), vec![3, 2, 4]),
    ];
    for (name, got, want) in want {
        ensure(got == RunStatistics(want.clone()), || format!("{name} = {got:?}, want {want:?}"))?;
    }
    Ok(format!("{cases} runs, run statistics match"))
}

fn randomness_cost() -> Check {
    for (n, want) in [(3, 4), (4, 8), (5, 14)] {
        ensure(randomness_cost_a(n) == want, || format!("a({n}) = {}", randomness_cost_a(n)))?;
    }
    for n in 1..=64 {
        ensure(randomness_cost_a(n) == randomness_cost_a_closed(n), || format!("n = {n}"))?;
    }
    let mut ratios = Vec::new();
    for n in [16u64, 64, 256, 1024] {
        let r = randomness_cost_a(n as usize) as f64 / dyad_bits(n) as f64;
        ensure((0.5..=4.0).contains(&r), || format!("a({n})/C({n},2) = {r}"))?;
        ratios.push(format!("{r:.3}"));
    }
    Ok(format!("a(n)/C(n,2) = {}", ratios.join(", ")))
}

fn likelihood() -> Check {
    for t in 2..=6 {
        let k = standard_family(&Family::Complete(t as usize)).unwrap();
        let l = likelihood_exact(&k).map_err(e)?.0;
        ensure(l == ratio(1, factorial(t)), || format!("L(K{t}) = {l}"))?;
    }
    for t in 3..=6i64 {
        let star = standard_family(&Family::Star(t as usize)).unwrap();
        let want = ratio(t * (0..t).map(factorial).sum::<i64>(), factorial(t) * factorial(t));
        let l = likelihood_exact(&star).map_err(e)?.0;
        ensure(l == want, || format!("L(K1,{}) = {l}, want {want}", t - 1))?;
    }
    for n in 1..=5 {
        let total: BigRational =
            isomorphism_classes(n).unwrap().iter().map(|g| likelihood_exact(g).unwrap().0).sum();
        ensure(total == BigRational::one(), || format!("sum at n = {n} is {total}"))?;
    }
    for n in 1..=6 {
        for g in isomorphism_classes(n).unwrap() {
            let l = likelihood_exact(&g).map_err(e)?.0;
            let (lo, hi) = likelihood_bounds(&g).map_err(e)?;
            ensure(lo <= l && l <= hi, || format!("bounds fail for {g:?}"))?;
        }
    }
    let k3 = parse_graph_expr("K3").unwrap();
    let p = 1.0 / 6.0;
    let mut passed = 0;
    for seed in 0..100 {
        let est = likelihood_mc(&k3, 100_000, seed).map_err(e)?;
        if (est.estimate - p).abs() <= 3.0 * est.stderr {
            passed += 1;
        }
    }
    ensure(passed >= 99, || format!("MC seed sweep {passed}/100"))?;
    Ok(format!("exact values match, MC sweep {passed}/100"))
}

fn extremes() -> Check {
    let mut notes = Vec::new();
    let mut failures = Vec::new();
    for n in 4..=6 {
        let rep = likelihood_extremes(n).map_err(e)?;
        let min = &rep.rows[0].likelihood;
        let argmin: Vec<String> = rep.rows.iter().filter(|r| &r.likelihood == min).map(|r| r.certificate.clone()).collect();
        notes.push(format!("n={n} min {min} at {}", argmin.join("|")));
        let ok = if n == 4 {
            let k22 = canonical_form(&standard_family(&Family::CompleteBipartite(2, 2)).unwrap()).unwrap();
            argmin.contains(&k22.to_string())
        } else {
            rep.argmin_has_complete_bipartite
        };
        if !ok {
            failures.push(format!("n={n}: no complete bipartite graph attains the minimum"));
        }
    }
    if failures.is_empty() {
        Ok(notes.join("; "))
    } else {
        Err(format!("{} ({})", failures.join("; "), notes.join("; ")))
    }
}

fn trees() -> Check {
    for n in 1..=7 {
        for t in isomorphism_classes(n).unwrap().into_iter().filter(Graph::is_tree) {
            let l = ua_likelihood_exact(&t).map_err(e)?.0;
            ensure(l > ratio(0, 1), || format!("L_UA({t:?}) = 0"))?;
        }
    }
    for n in 1..=6 {
        let total: BigRational = isomorphism_classes(n)
            .unwrap()
            .into_iter()
            .filter(Graph::is_tree)
            .map(|t| ua_likelihood_exact(&t).unwrap().0)
            .sum();
        ensure(total == BigRational::one(), || format!("UA sum at n = {n} is {total}"))?;
    }
    for seed in 0..100_000 {
        ensure(is_recursive_tree(&sample_ua(20, seed)), || format!("seed {seed} not recursive"))?;
    }
    for n in 2..=6usize {
        let total = n.pow(n as u32 - 2);
        let mut trees = BTreeSet::new();
        for idx in 0..total {
            let mut i = idx;
            let seq: Vec<usize> = (0..n - 2)
                .map(|_| {
                    let v = i % n + 1;
                    i /= n;
                    v
                })
                .collect();
            let t = prufer_decode(&seq).map_err(e)?;
            ensure(prufer_encode(&t).map_err(e)? == seq, || format!("round trip {seq:?}"))?;
            trees.insert(t.edges());
        }
        ensure(trees.len() == total, || format!("{} distinct trees at n = {n}", trees.len()))?;
    }
    ensure(tree_cost(5).instruction_bits == 8, || "tree_cost(5) != 8".into())?;
    let mut running = 0u64;
    for n in 1..=1u64 << 16 {
        if n >= 2 {
            running += bit_length(n - 1);
            ensure(running <= (n - 1) * bit_length(n - 1), || format!("bound fails at {n}"))?;
        }
        if n.is_power_of_two() || n % 997 == 0 {
            ensure(tree_cost(n as usize).instruction_bits == running, || format!("tree_cost({n})"))?;
        }
    }
    Ok("positivity n<=7, sums n<=6, 10^5 UA samples, Cayley round trips, cost bound to 2^16".into())
}

fn hierarchy() -> Check {
    let mut violations = Vec::new();
    let mut sizes = Vec::new();
    for n in 1..=8 {
        let none = reachable_classes(MemoryModel::NoMemory, n).map_err(e)?;
        let fading = reachable_classes(MemoryModel::FADING2, n).map_err(e)?;
        let full = reachable_classes(MemoryModel::FullMemory, n).map_err(e)?;
        sizes.push(format!("{n}:{}/{}/{}", none.len(), fading.len(), full.len()));
        if !none.is_subset(&fading) {
            violations.push(format!("n={n}: NoMemory not within Fading"));
        }
        if !none.is_subset(&full) {
            violations.push(format!("n={n}: NoMemory not within Full"));
        }
        let outside: Vec<String> = fading.difference(&full).map(|c| c.to_string()).collect();
        if !outside.is_empty() {
            violations.push(format!(
                "n={n}: {} fading classes unreachable with full memory, e.g. {}",
                outside.len(),
                outside[0]
            ));
        }
    }
    let k22 = canonical_form(&parse_graph_expr("K2,2").unwrap()).unwrap();
    let two_k2 = canonical_form(&parse_graph_expr("F2,2").unwrap()).unwrap();
    let none4 = reachable_classes(MemoryModel::NoMemory, 4).map_err(e)?;
    let full4 = reachable_classes(MemoryModel::FullMemory, 4).map_err(e)?;
    let fading4 = reachable_classes(MemoryModel::FADING2, 4).map_err(e)?;
    if !(full4.contains(&k22) && !none4.contains(&k22)) {
        violations.push("K2,2 does not separate Full from NoMemory".into());
    }
    if !(fading4.contains(&two_k2) && !none4.contains(&two_k2)) {
        violations.push("2K2 does not separate Fading from NoMemory".into());
    }
    let p5 = canonical_form(&parse_graph_expr("P5").unwrap()).unwrap();
    let p5_fading = enumerate_outputs(rule("0>1,1>0"), MemoryModel::FADING2, 5).map_err(e)?.contains(&p5);
    let sizes = format!("class counts none/fading/full {}", sizes.join(" "));
    if violations.is_empty() {
        Ok(sizes)
    } else {
        Err(format!("{}; P5 from fading 0>1,1>0: {p5_fading}; {sizes}", violations.join("; ")))
    }
}

fn determinism() -> Check {
    let bin = env!("CARGO_BIN_EXE_resgraph");
    let invocations: &[&[&str]] = &[
        &["build", "--rule", "0>1,1>-", "--model", "full", "--x", "10010", "--format", "json"],
        &["build", "--rule", "0>1,1>0", "--model", "fading2", "--x", "01010", "--format", "dot"],
        &["build", "--rule", "0>1,1>-", "--model", "modifiable", "--x", "00010", "--choices", "ssssm", "-v"],
        &["verify", "P3", "--max-n", "6", "--format", "json"],
        &["verify", "C_pnfree", "--max-n", "6"],
        &["likelihood", "--graph", "K4", "--exact"],
        &["likelihood", "--extremes", "4", "--format", "csv"],
        &["likelihood", "--graph", "P3", "--mc", "20000", "--seed", "7"],
        &["random", "gnp", "--n", "9", "--p", "1/3", "--seed", "5", "--format", "matrix"],
        &["random", "vertex-addition", "--n", "9", "--seed", "5"],
        &["tree", "sample", "--n", "10", "--seed", "1", "--format", "json"],
        &["cost", "a", "--n", "5"],
        &["find", "--graph", "C4", "--model", "full"],
        &["expressiveness", "--model", "fading2", "--n", "5"],
    ];
    for args in invocations {
        let run = || Command::new(bin).args(*args).output().expect("run binary");
        let (a, b) = (run(), run());
        ensure(a.status.success(), || format!("{args:?} exited {:?}", a.status.code()))?;
        ensure(a.stdout == b.stdout && a.stderr == b.stderr, || format!("{args:?} differs between runs"))?;
        ensure(!a.stdout.is_empty(), || format!("{args:?} printed nothing"))?;
    }
    Ok(format!("{} invocations byte-identical", invocations.len()))
}

fn main() {
    type Criterion = (&'static str, Duration, fn() -> Check);
    let criteria: Vec<Criterion> = vec![
        ("1 no-memory table", Duration::from_secs(10), no_memory_table),
        ("2 full-memory table", Duration::from_secs(30), full_memory_table),
        ("3 no long induced paths or cycles", Duration::from_secs(60), pn_free),
        ("4 modifiable outputs", Duration::from_secs(60), modifiable),
        ("5 fading-memory table", Duration::from_secs(30), fading_table),
        ("6 randomness cost", Duration::from_secs(1), randomness_cost),
        ("7 likelihood", Duration::from_secs(300), likelihood),
        ("8 minimum-likelihood classes", Duration::from_secs(600), extremes),
        ("9 trees", Duration::from_secs(120), trees),
        ("10 memory hierarchy", Duration::from_secs(60), hierarchy),
        ("11 CLI determinism", Duration::from_secs(300), determinism),
    ];
    let mut failed = 0;
    for (name, budget, check) in criteria {
        let start = Instant::now();
        let result = check();
        let took = start.elapsed();
        let result = match result {
            Ok(msg) if took > budget => Err(format!("{msg}; took {took:?}, budget {budget:?}")),
            other => other,
        };
        match result {
            Ok(msg) => println!("PASS  criterion {name}: {msg} [{:.2}s]", took.as_secs_f64()),
            Err(msg) => {
                failed += 1;
                println!("FAIL  criterion {name}: {msg} [{:.2}s]", took.as_secs_f64());
            }
        }
    }
    println!("acceptance: {failed} criteria failed");
    if failed > 0 {
        std::process::exit(1);
    }
}
