//! Orientability: fast structural criteria, sign maps of concrete line
//! arrangements, exhaustive chirotope search, and minimality certificates.

mod chirotope;
mod search;

pub use chirotope::{all_triples, gp_check, triple_count, triple_rank, Chirotope, GpViolation};
pub use search::{
    find_chirotope, SearchConfig, SearchOutcome, DEFAULT_BUDGET, MAX_SEARCH_ELEMENTS,
};

use std::collections::BTreeMap;
use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::families::{sigma_graph, Arrangement, GroupSpec, Permutation};
use crate::matroid::LineMatroid;

/// The doubled matroid of sigma is orientable exactly when every cycle of
/// the pairing graph has length at most 4.
pub fn criterion_sigma(sigma: &Permutation) -> Result<bool> {
    let graph = sigma_graph(sigma)?;
    Ok(graph.cycle_lengths().iter().all(|&len| len <= 4))
}

/// For the group family the deciding quantity is r, the order of g0 - g1:
/// orientable exactly when r <= 2. Returns (r, orientable).
pub fn criterion_group(
    group: &GroupSpec,
    g0: &crate::families::GroupElement,
    g1: &crate::families::GroupElement,
) -> Result<(u64, bool)> {
    group.check(g0)?;
    group.check(g1)?;
    if g0 == g1 {
        return Err(Error::EqualGroupElements);
    }
    let r = group.element_order(&group.sub(g0, g1));
    Ok((r, r <= 2))
}

/// Sign map of a concrete integer line arrangement: the sign of the 3x3
/// determinant of each coefficient triple, in lexicographic triple order.
pub fn chirotope_of_arrangement(arr: &Arrangement) -> Result<Chirotope> {
    let lines = arr.lines();
    let n = lines.len();
    if n < 3 {
        return Err(Error::DegenerateArrangement(format!(
            "need at least 3 lines, got {n}"
        )));
    }
    let mut signs = Vec::with_capacity(triple_count(n));
    for [i, j, k] in all_triples(n) {
        let d = det3(&lines[i].line, &lines[j].line, &lines[k].line);
        signs.push(d.signum() as i8);
    }
    Chirotope::from_sorted_signs(n, signs)
        .map_err(|_| Error::DegenerateArrangement("all triples of lines are concurrent".into()))
}

fn det3(a: &[i64; 3], b: &[i64; 3], c: &[i64; 3]) -> i128 {
    let (a, b, c) = (a.map(i128::from), b.map(i128::from), c.map(i128::from));
    a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0])
        + a[2] * (b[0] * c[1] - b[1] * c[0])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MinimalityVerdict {
    MinimalNonOrientable,
    Orientable,
    NotMinimal,
    Inconclusive,
}

impl MinimalityVerdict {
    pub fn label(&self) -> &'static str {
        match self {
            MinimalityVerdict::MinimalNonOrientable => "minimal non-orientable",
            MinimalityVerdict::Orientable => "orientable",
            MinimalityVerdict::NotMinimal => "not minimal",
            MinimalityVerdict::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Debug, Clone)]
pub struct MinimalityReport {
    pub full: SearchOutcome,
    /// One entry per deleted element, in element order; empty when the
    /// full search already settled the verdict.
    pub deletions: Vec<(String, SearchOutcome)>,
    pub verdict: MinimalityVerdict,
}

/// Certify that M is minimally non-orientable: no chirotope for M itself,
/// but one for every single-element deletion. A deletion with provably no
/// chirotope shows M is not minimal; any budget exhaustion that leaves the
/// question open is reported as inconclusive, never as a verdict.
pub fn certify_minimal_nonorientable(
    m: &LineMatroid,
    config: &SearchConfig,
) -> Result<MinimalityReport> {
    let full = find_chirotope(m, config)?;
    match full {
        SearchOutcome::Found { .. } => Ok(MinimalityReport {
            full,
            deletions: Vec::new(),
            verdict: MinimalityVerdict::Orientable,
        }),
        SearchOutcome::BudgetExhausted { .. } => Ok(MinimalityReport {
            full,
            deletions: Vec::new(),
            verdict: MinimalityVerdict::Inconclusive,
        }),
        SearchOutcome::NoChirotope { .. } => {
            let mut deletions = Vec::new();
            let mut witnessed_not_minimal = false;
            let mut exhausted = false;
            for e in m.elements() {
                let smaller = m.delete_element(e)?;
                let outcome = find_chirotope(&smaller, config)?;
                match outcome {
                    SearchOutcome::NoChirotope { .. } => witnessed_not_minimal = true,
                    SearchOutcome::BudgetExhausted { .. } => exhausted = true,
                    SearchOutcome::Found { .. } => {}
                }
                deletions.push((e.clone(), outcome));
            }
            let verdict = if witnessed_not_minimal {
                MinimalityVerdict::NotMinimal
            } else if exhausted {
                MinimalityVerdict::Inconclusive
            } else {
                MinimalityVerdict::MinimalNonOrientable
            };
            Ok(MinimalityReport {
                full,
                deletions,
                verdict,
            })
        }
    }
}

/// Whether a partial assignment i -> f(i) on {1..n} extends to a relabeling
/// compatible with the sign structure: exactly the monotone ones qualify
/// (strictly increasing or strictly decreasing on its domain).
pub fn extension_feasible(n: usize, f: &BTreeMap<usize, usize>) -> Result<bool> {
    for (&i, &j) in f {
        if i == 0 || i > n {
            return Err(Error::NOutOfRange(i));
        }
        if j == 0 || j > n {
            return Err(Error::NOutOfRange(j));
        }
    }
    let mut seen = BTreeSet::new();
    for &j in f.values() {
        if !seen.insert(j) {
            return Err(Error::NonInjective(format!("value {j} repeated")));
        }
    }
    let values: Vec<usize> = f.values().copied().collect();
    let increasing = values.windows(2).all(|w| w[0] < w[1]);
    let decreasing = values.windows(2).all(|w| w[0] > w[1]);
    Ok(increasing || decreasing)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{
        build_group_matroid, build_m_sigma, realize_four_cycles, tau_relabel, ArrLine,
    };

    fn perm(one_line: &[usize]) -> Permutation {
        Permutation::from_one_line(one_line.to_vec()).unwrap()
    }

    fn free_matroid(n: usize) -> LineMatroid {
        let elements: Vec<String> = (1..=n).map(|i| format!("e{i}")).collect();
        LineMatroid::new(elements, Vec::new()).unwrap()
    }

    #[test]
    fn cycle_criterion_follows_the_pairing_graph() {
        assert!(!criterion_sigma(&perm(&[2, 3, 1])).unwrap()); // one 6-cycle
        assert!(criterion_sigma(&perm(&[2, 1, 4, 3])).unwrap()); // two 4-cycles
        assert!(!criterion_sigma(&perm(&[2, 1, 4, 5, 3])).unwrap()); // 4 + 6
        assert!(criterion_sigma(&perm(&[2, 1])).unwrap());
    }

    #[test]
    fn group_criterion_is_the_order_of_the_difference() {
        let z3 = GroupSpec::parse("Z3").unwrap();
        let (r, orientable) = criterion_group(
            &z3,
            &z3.parse_element("0").unwrap(),
            &z3.parse_element("1").unwrap(),
        )
        .unwrap();
        assert_eq!(r, 3);
        assert!(!orientable);

        let z4 = GroupSpec::parse("Z4").unwrap();
        let (r, orientable) = criterion_group(
            &z4,
            &z4.parse_element("0").unwrap(),
            &z4.parse_element("2").unwrap(),
        )
        .unwrap();
        assert_eq!(r, 2);
        assert!(orientable);

        let z6 = GroupSpec::parse("Z6").unwrap();
        let (r, orientable) = criterion_group(
            &z6,
            &z6.parse_element("1").unwrap(),
            &z6.parse_element("4").unwrap(),
        )
        .unwrap();
        assert_eq!(r, 2);
        assert!(orientable);

        let z2 = GroupSpec::parse("Z2xZ2").unwrap();
        let err = criterion_group(
            &z2,
            &z2.parse_element("(1,0)").unwrap(),
            &z2.parse_element("(1,0)").unwrap(),
        )
        .unwrap_err();
        assert_eq!(err, Error::EqualGroupElements);
    }

    #[test]
    fn arrangement_signs_satisfy_exchange() {
        let arr = Arrangement::new(vec![
            ArrLine {
                name: "h1".into(),
                line: [1, 0, 0],
            },
            ArrLine {
                name: "h2".into(),
                line: [0, 1, 0],
            },
            ArrLine {
                name: "h3".into(),
                line: [1, -1, 1],
            },
            ArrLine {
                name: "h4".into(),
                line: [2, 1, 3],
            },
            ArrLine {
                name: "h5".into(),
                line: [3, -2, 1],
            },
        ])
        .unwrap();
        let chi = chirotope_of_arrangement(&arr).unwrap();
        assert!(gp_check(&chi).is_none());
        assert!(chi.zero_set().is_empty());
    }

    #[test]
    fn flipping_one_sign_breaks_exchange() {
        let sigma = perm(&[2, 1, 4, 3]);
        let arr = realize_four_cycles(4, &sigma).unwrap();
        let chi = chirotope_of_arrangement(&arr).unwrap();
        assert!(gp_check(&chi).is_none());

        let n = arr.lines().len();
        let mut flips_that_fail = 0;
        let mut first_failure = None;
        for rank in 0..triple_count(n) {
            let mut signs: Vec<i8> = (0..triple_count(n))
                .map(|r| {
                    let t = all_triples(n)[r];
                    chi.sign(t[0], t[1], t[2])
                })
                .collect();
            if signs[rank] == 0 {
                continue;
            }
            signs[rank] = -signs[rank];
            let flipped = Chirotope::from_sorted_signs(n, signs).unwrap();
            if let Some(v) = gp_check(&flipped) {
                flips_that_fail += 1;
                first_failure.get_or_insert(v);
            }
        }
        assert!(flips_that_fail > 0);
        let v = first_failure.unwrap();
        assert!(v.anchor < n);
    }

    #[test]
    fn reorienting_one_element_preserves_exchange() {
        let sigma = perm(&[2, 1, 4, 3]);
        let arr = realize_four_cycles(4, &sigma).unwrap();
        let chi = chirotope_of_arrangement(&arr).unwrap();
        let n = arr.lines().len();
        let signs: Vec<i8> = all_triples(n)
            .iter()
            .map(|t| {
                let s = chi.sign(t[0], t[1], t[2]);
                if t.contains(&0) {
                    -s
                } else {
                    s
                }
            })
            .collect();
        let reoriented = Chirotope::from_sorted_signs(n, signs).unwrap();
        assert!(gp_check(&reoriented).is_none());
        assert_eq!(reoriented.zero_set(), chi.zero_set());
    }

    #[test]
    fn realized_zero_set_matches_the_matroid() {
        let sigma = perm(&[3, 4, 1, 2]);
        let arr = realize_four_cycles(4, &sigma).unwrap();
        let chi = chirotope_of_arrangement(&arr).unwrap();
        let m = build_m_sigma(4, &sigma).unwrap();
        // realize_four_cycles lists a1..a4, b1..b4, c0, c1 in that order.
        assert_eq!(chi.zero_set(), m.dependent_index_triples());
        // a1, b1, c0 is a dependent triple and must carry sign 0.
        assert_eq!(chi.sign(0, 4, 8), 0);
    }

    #[test]
    fn search_finds_uniform_chirotope() {
        let m = free_matroid(4);
        let out = find_chirotope(&m, &SearchConfig::default()).unwrap();
        let chi = out.found().expect("free matroid is orientable");
        assert!(chi.zero_set().is_empty());
        assert!(gp_check(chi).is_none());
    }

    #[test]
    fn search_finds_chirotope_for_two_four_cycles() {
        let m = build_m_sigma(2, &perm(&[2, 1])).unwrap();
        let out = find_chirotope(&m, &SearchConfig::default()).unwrap();
        let chi = out.found().expect("orientable by the cycle criterion");
        assert_eq!(chi.zero_set(), m.dependent_index_triples());
        assert!(gp_check(chi).is_none());
    }

    #[test]
    fn search_exhausts_mac_lane() {
        let z3 = GroupSpec::parse("Z3").unwrap();
        let m = build_group_matroid(
            &z3,
            &z3.parse_element("0").unwrap(),
            &z3.parse_element("1").unwrap(),
        )
        .unwrap();
        let out = find_chirotope(&m, &SearchConfig::default()).unwrap();
        match out {
            SearchOutcome::NoChirotope { nodes } => assert!(nodes > 0),
            other => panic!("expected no chirotope, got {}", other.label()),
        }
    }

    #[test]
    fn tiny_budget_reports_exhaustion_not_a_verdict() {
        let z3 = GroupSpec::parse("Z3").unwrap();
        let m = build_group_matroid(
            &z3,
            &z3.parse_element("0").unwrap(),
            &z3.parse_element("1").unwrap(),
        )
        .unwrap();
        let config = SearchConfig {
            budget: 10,
            workers: 1,
        };
        match find_chirotope(&m, &config).unwrap() {
            SearchOutcome::BudgetExhausted { nodes } => assert!(nodes >= 10),
            other => panic!("expected budget exhaustion, got {}", other.label()),
        }
    }

    #[test]
    fn worker_split_agrees_with_single_thread() {
        let par = SearchConfig {
            budget: DEFAULT_BUDGET,
            workers: 4,
        };

        let z3 = GroupSpec::parse("Z3").unwrap();
        let mac_lane = build_group_matroid(
            &z3,
            &z3.parse_element("0").unwrap(),
            &z3.parse_element("1").unwrap(),
        )
        .unwrap();
        assert!(matches!(
            find_chirotope(&mac_lane, &par).unwrap(),
            SearchOutcome::NoChirotope { .. }
        ));

        let m = build_m_sigma(2, &perm(&[2, 1])).unwrap();
        let out = find_chirotope(&m, &par).unwrap();
        let chi = out.found().expect("orientable");
        assert_eq!(chi.zero_set(), m.dependent_index_triples());
    }

    #[test]
    fn search_rejects_oversized_ground_sets() {
        let m = free_matroid(15);
        let err = find_chirotope(&m, &SearchConfig::default()).unwrap_err();
        assert_eq!(err, Error::BeyondDeskScale(15));
    }

    #[test]
    fn certificates_match_the_criteria() {
        let config = SearchConfig::default();

        let z3 = GroupSpec::parse("Z3").unwrap();
        let mac_lane = build_group_matroid(
            &z3,
            &z3.parse_element("0").unwrap(),
            &z3.parse_element("1").unwrap(),
        )
        .unwrap();
        let report = certify_minimal_nonorientable(&mac_lane, &config).unwrap();
        assert_eq!(report.verdict, MinimalityVerdict::MinimalNonOrientable);
        assert_eq!(report.deletions.len(), 8);
        assert!(report
            .deletions
            .iter()
            .all(|(_, out)| out.found().is_some()));

        let orientable = build_m_sigma(4, &perm(&[3, 4, 1, 2])).unwrap();
        let report = certify_minimal_nonorientable(&orientable, &config).unwrap();
        assert_eq!(report.verdict, MinimalityVerdict::Orientable);
        assert!(report.deletions.is_empty());
        assert!(report.full.found().is_some());
    }

    #[test]
    fn six_cycle_doubling_is_minimal() {
        let sigma = perm(&[2, 3, 4, 1]);
        let m = build_m_sigma(4, &sigma).unwrap();
        let report = certify_minimal_nonorientable(&m, &SearchConfig::default()).unwrap();
        assert_eq!(report.verdict, MinimalityVerdict::MinimalNonOrientable);
        assert_eq!(report.deletions.len(), 10);
    }

    #[test]
    fn relabeling_feasibility_is_monotonicity() {
        let f: BTreeMap<usize, usize> = [(1, 2), (2, 3), (4, 5)].into();
        assert!(extension_feasible(6, &f).unwrap());

        let g: BTreeMap<usize, usize> = [(1, 5), (2, 3), (4, 1)].into();
        assert!(extension_feasible(6, &g).unwrap());

        let h: BTreeMap<usize, usize> = [(1, 2), (2, 1), (3, 3)].into();
        assert!(!extension_feasible(6, &h).unwrap());

        let empty = BTreeMap::new();
        assert!(extension_feasible(4, &empty).unwrap());

        let single: BTreeMap<usize, usize> = [(3, 1)].into();
        assert!(extension_feasible(4, &single).unwrap());
    }

    #[test]
    fn relabeling_feasibility_survives_reversal() {
        // Composing with the full reversal i -> n + 1 - i flips monotone
        // direction but never feasibility.
        let n = 7;
        let cases: [&[(usize, usize)]; 3] = [
            &[(1, 2), (3, 4), (5, 6)],
            &[(1, 6), (2, 4), (3, 2)],
            &[(2, 3), (3, 2), (4, 5)],
        ];
        for case in cases {
            let f: BTreeMap<usize, usize> = case.iter().copied().collect();
            let reversed: BTreeMap<usize, usize> =
                f.iter().map(|(&i, &j)| (i, n + 1 - j)).collect();
            assert_eq!(
                extension_feasible(n, &f).unwrap(),
                extension_feasible(n, &reversed).unwrap()
            );
        }
    }

    #[test]
    fn relabeling_feasibility_rejects_bad_domains() {
        let f: BTreeMap<usize, usize> = [(1, 9)].into();
        assert_eq!(
            extension_feasible(6, &f).unwrap_err(),
            Error::NOutOfRange(9)
        );
        let g: BTreeMap<usize, usize> = [(1, 3), (2, 3)].into();
        assert!(matches!(
            extension_feasible(6, &g).unwrap_err(),
            Error::NonInjective(_)
        ));
    }

    #[test]
    fn tau_realization_signs_are_consistent() {
        let sigma = perm(&[2, 1, 4, 3]);
        let tau = tau_relabel(4, &sigma).unwrap();
        assert_eq!(tau.one_line(), vec![1, 4, 2, 3]);
        let arr = realize_four_cycles(4, &sigma).unwrap();
        let chi = chirotope_of_arrangement(&arr).unwrap();
        assert!(gp_check(&chi).is_none());
    }
}
