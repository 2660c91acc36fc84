use super::{contains_induced, standard_family, Family, Graph};

/// Threshold recognition by elimination: repeatedly strip an isolated or a
/// dominating vertex until nothing is left.
pub fn is_threshold(g: &Graph) -> bool {
    creation_sequence(g).is_some()
}

/// A creation sequence for `g` if it is a threshold graph: entry `t` is
/// `true` when the `t`-th added vertex dominates and `false` when it is
/// isolated. Relabeling `g` by elimination order reversed realizes it.
pub fn creation_sequence(g: &Graph) -> Option<Vec<bool>> {
    let n = g.n();
    let mut deg = g.degrees();
    let mut alive = vec![true; n];
    let mut remaining = n;
    let mut removed = Vec::with_capacity(n);
    while remaining > 0 {
        let pick = (0..n).filter(|&v| alive[v]).find_map(|v| {
            if deg[v] == 0 {
                Some((v, false))
            } else if deg[v] == remaining - 1 {
                Some((v, true))
            } else {
                None
            }
        });
        let (v, dominating) = pick?;
        alive[v] = false;
        remaining -= 1;
        if dominating {
            for u in 0..n {
                if alive[u] && g.adj0(u, v) {
                    deg[u] -= 1;
                }
            }
        }
        removed.push(dominating);
    }
    removed.reverse();
    Some(removed)
}

/// Forbidden-subgraph test: no induced `P_4`, `C_4` or `2K_2`.
pub fn is_threshold_forbidden(g: &Graph) -> bool {
    let p4 = standard_family(&Family::Path(4)).expect("P4");
    let c4 = standard_family(&Family::Cycle(4)).expect("C4");
    let two_k2 = standard_family(&Family::LinearForest(vec![2, 2])).expect("2K2");
    [p4, c4, two_k2].iter().all(|h| !contains_induced(g, h))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{is_isomorphic, isomorphism_classes};

    fn fam(f: Family) -> Graph {
        standard_family(&f).unwrap()
    }

    #[test]
    fn examples() {
        assert!(is_threshold(&fam(Family::Star(5))));
        assert!(!is_threshold(&fam(Family::Path(4))));
        assert!(!is_threshold(&fam(Family::Cycle(4))));
        assert!(!is_threshold(&fam(Family::LinearForest(vec![2, 2]))));
        assert!(is_threshold(&Graph::empty(0)));
        assert!(is_threshold(&fam(Family::CompleteSplit(3, 2))));
    }

    #[test]
    fn creation_sequence_rebuilds_the_graph() {
        let g = fam(Family::CompleteSplit(2, 3));
        let seq = creation_sequence(&g).unwrap();
        let mut h = Graph::empty(0);
        for (t, &dom) in seq.iter().enumerate() {
            let nbrs: Vec<usize> = if dom { (1..=t).collect() } else { vec![] };
            h = h.add_vertex_with_neighbors(&nbrs).unwrap();
        }
        assert!(is_isomorphic(&g, &h).unwrap());
    }

    #[test]
    fn elimination_agrees_with_forbidden_triple_on_all_classes() {
        for n in 0..=7 {
            for g in isomorphism_classes(n).unwrap() {
                assert_eq!(is_threshold(&g), is_threshold_forbidden(&g), "{g:?}");
            }
        }
    }
}
