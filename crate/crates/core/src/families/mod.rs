//! Constructors for the matroid families and their exact realizations.
//!
//! The base family has ground set {a_1..a_n, b_1..b_n, c_0} with all a's
//! concurrent (class A), all b's concurrent (class B), and parallel pairs
//! a_i, b_i meeting on c_0. Adding c_1 and the lines {a_i, b_sigma(i), c_1}
//! for a derangement sigma gives the extended family, whose orientability
//! is controlled by sigma's cycle structure. The group family is the same
//! construction driven by a finite abelian group and two of its elements.

mod arrangement;
mod group;
mod perm;

use std::collections::BTreeMap;
use std::collections::BTreeSet;

pub use arrangement::{ArrLine, Arrangement};
pub use group::{abelian_groups_of_order, GroupElement, GroupSpec};
pub use perm::{derangements, Permutation};

use crate::error::{Error, Result};
use crate::matroid::LineMatroid;

fn a_name<T: std::fmt::Display>(i: T) -> String {
    format!("a{i}")
}

fn b_name<T: std::fmt::Display>(i: T) -> String {
    format!("b{i}")
}

fn c_name<T: std::fmt::Display>(i: T) -> String {
    format!("c{i}")
}

fn set(names: impl IntoIterator<Item = String>) -> BTreeSet<String> {
    names.into_iter().collect()
}

/// Ground set {a_1..a_n, b_1..b_n, c_0}; flats A = {a_i}, B = {b_i}, and
/// X_i = {a_i, b_i, c_0}. For n = 2 the classes A and B are stored pairs.
pub fn build_m_prime(n: usize) -> Result<LineMatroid> {
    if n < 2 {
        return Err(Error::NTooSmall(n));
    }
    let mut elements = Vec::with_capacity(2 * n + 1);
    elements.extend((1..=n).map(a_name));
    elements.extend((1..=n).map(b_name));
    elements.push(c_name(0));
    let mut flats = Vec::with_capacity(n + 2);
    flats.push(set((1..=n).map(a_name)));
    flats.push(set((1..=n).map(b_name)));
    for i in 1..=n {
        flats.push(set([a_name(i), b_name(i), c_name(0)]));
    }
    LineMatroid::new(elements, flats)
}

fn check_derangement(n: usize, sigma: &Permutation) -> Result<()> {
    if sigma.n() != n {
        return Err(Error::BadPermutation(format!(
            "permutation acts on {} points, expected {n}",
            sigma.n()
        )));
    }
    if let Some(i) = sigma.first_fixed_point() {
        return Err(Error::NotDerangement(i));
    }
    Ok(())
}

/// Extends build_m_prime(n) by the element c_1 and the n flats
/// {a_i, b_sigma(i), c_1}; 2n+2 elements, 2n+2 flats.
pub fn build_m_sigma(n: usize, sigma: &Permutation) -> Result<LineMatroid> {
    if n < 2 {
        return Err(Error::NTooSmall(n));
    }
    check_derangement(n, sigma)?;
    let base = build_m_prime(n)?;
    let mut elements = base.elements().to_vec();
    elements.push(c_name(1));
    let mut flats = base.flats().to_vec();
    for i in 1..=n {
        flats.push(set([a_name(i), b_name(sigma.apply(i)), c_name(1)]));
    }
    LineMatroid::new(elements, flats)
}

/// The 2-regular bipartite graph on {a_i} and {b_i} with the pair edges
/// {a_i, b_i} and the sigma edges {a_i, b_sigma(i)}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleGraph {
    pub vertices: Vec<String>,
    pub edges: Vec<[String; 2]>,
    pub cycles: Vec<Vec<String>>,
}

impl CycleGraph {
    /// Sorted multiset of cycle lengths (counted in vertices).
    pub fn cycle_lengths(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.cycles.iter().map(|c| c.len()).collect();
        v.sort_unstable();
        v
    }
}

/// Build the graph and its cycle decomposition. A k-cycle of sigma yields a
/// 2k-cycle here, so every cycle is even and the lengths sum to 2n.
pub fn sigma_graph(sigma: &Permutation) -> Result<CycleGraph> {
    let n = sigma.n();
    check_derangement(n, sigma)?;
    let mut vertices = Vec::with_capacity(2 * n);
    vertices.extend((1..=n).map(a_name));
    vertices.extend((1..=n).map(b_name));
    let mut edges = Vec::with_capacity(2 * n);
    for i in 1..=n {
        edges.push([a_name(i), b_name(i)]);
    }
    for i in 1..=n {
        edges.push([a_name(i), b_name(sigma.apply(i))]);
    }
    // Walk each cycle: a_i -> b_i by the pair edge, then b_i -> a_j by the
    // sigma edge (j = sigma^{-1}(i)), and repeat.
    let inv = sigma.inverse();
    let mut visited = vec![false; n + 1];
    let mut cycles = Vec::new();
    for start in 1..=n {
        if visited[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut cur = start;
        loop {
            visited[cur] = true;
            cycle.push(a_name(cur));
            cycle.push(b_name(cur));
            cur = inv.apply(cur);
            if cur == start {
                break;
            }
        }
        cycles.push(cycle);
    }
    Ok(CycleGraph {
        vertices,
        edges,
        cycles,
    })
}

/// Ground set {a_g} ∪ {b_g} ∪ {c_g0, c_g1} over the group's canonical
/// enumeration; flats A, B, {a_g, b_{g+g0}, c_g0} and {a_g, b_{g+g1}, c_g1}
/// for every g.
pub fn build_group_matroid(
    g: &GroupSpec,
    g0: &GroupElement,
    g1: &GroupElement,
) -> Result<LineMatroid> {
    g.check(g0)?;
    g.check(g1)?;
    if g0 == g1 {
        return Err(Error::EqualGroupElements);
    }
    let members = g.elements();
    let mut elements = Vec::with_capacity(2 * members.len() + 2);
    elements.extend(members.iter().map(|e| a_name(g.render_element(e))));
    elements.extend(members.iter().map(|e| b_name(g.render_element(e))));
    elements.push(c_name(g.render_element(g0)));
    elements.push(c_name(g.render_element(g1)));
    let mut flats = Vec::with_capacity(2 * members.len() + 2);
    flats.push(set(members.iter().map(|e| a_name(g.render_element(e)))));
    flats.push(set(members.iter().map(|e| b_name(g.render_element(e)))));
    for anchor in [g0, g1] {
        for e in &members {
            flats.push(set([
                a_name(g.render_element(e)),
                b_name(g.render_element(&g.add(e, anchor))),
                c_name(g.render_element(anchor)),
            ]));
        }
    }
    LineMatroid::new(elements, flats)
}

/// The permutation view of a group matroid: alpha is the canonical
/// enumeration [n] -> G, beta(i) = alpha(i) + g0, and
/// sigma(i) = beta^{-1}(alpha(i) + g1). `renaming` carries a_i, b_i, c_0,
/// c_1 to the group names; applying it to build_m_sigma(n, sigma)
/// reproduces build_group_matroid(g, g0, g1) up to element order.
#[derive(Debug, Clone)]
pub struct GroupTranslation {
    pub n: usize,
    pub sigma: Permutation,
    pub renaming: BTreeMap<String, String>,
}

pub fn group_to_sigma(
    g: &GroupSpec,
    g0: &GroupElement,
    g1: &GroupElement,
) -> Result<GroupTranslation> {
    g.check(g0)?;
    g.check(g1)?;
    if g0 == g1 {
        return Err(Error::EqualGroupElements);
    }
    let members = g.elements();
    let n = members.len();
    let index: BTreeMap<&GroupElement, usize> = members
        .iter()
        .enumerate()
        .map(|(i, e)| (e, i + 1))
        .collect();
    let delta = g.sub(g1, g0);
    let mut map = Vec::with_capacity(n);
    for e in &members {
        map.push(index[&g.add(e, &delta)]);
    }
    let sigma = Permutation::from_one_line(map)?;
    let mut renaming = BTreeMap::new();
    for (i, e) in members.iter().enumerate() {
        renaming.insert(a_name(i + 1), a_name(g.render_element(e)));
        renaming.insert(b_name(i + 1), b_name(g.render_element(&g.add(e, g0))));
    }
    renaming.insert(c_name(0), c_name(g.render_element(g0)));
    renaming.insert(c_name(1), c_name(g.render_element(g1)));
    Ok(GroupTranslation { n, sigma, renaming })
}

/// The relabeling tau used by the four-cycle realization: for the smallest
/// unprocessed i, set tau(i) = k and tau(sigma(i)) = n + 1 - k, then repeat
/// with the next k. Requires sigma to be a product of 2-cycles only.
pub fn tau_relabel(n: usize, sigma: &Permutation) -> Result<Permutation> {
    if sigma.n() != n {
        return Err(Error::BadPermutation(format!(
            "permutation acts on {} points, expected {n}",
            sigma.n()
        )));
    }
    if let Some(c) = sigma.cycles().iter().find(|c| c.len() != 2) {
        return Err(Error::NotInvolution(c.len()));
    }
    let mut tau = vec![0usize; n];
    let mut remaining: BTreeSet<usize> = (1..=n).collect();
    let mut k = 1;
    while let Some(&i) = remaining.iter().next() {
        let j = sigma.apply(i);
        tau[i - 1] = k;
        tau[j - 1] = n + 1 - k;
        remaining.remove(&i);
        remaining.remove(&j);
        k += 1;
    }
    Permutation::from_one_line(tau)
}

/// Exact straight-line realization of build_m_sigma(n, sigma) for an
/// involution sigma. With k = tau(j): slope s = -k for k <= n/2, else
/// s = n + 1 - k; a_j is y = sx + s and b_j is y = sx - s, encoded
/// homogeneously as <s, -1, t>. c_0 is the line at infinity, c_1 is x = 0.
/// All a's meet at (-1, 0), all b's at (1, 0), and a_j, b_sigma(j) meet on
/// x = 0.
pub fn realize_four_cycles(n: usize, sigma: &Permutation) -> Result<Arrangement> {
    if n < 2 {
        return Err(Error::NTooSmall(n));
    }
    let tau = tau_relabel(n, sigma)?;
    let half = (n / 2) as i64;
    let slope = |j: usize| -> i64 {
        let k = tau.apply(j) as i64;
        if k <= half {
            -k
        } else {
            n as i64 + 1 - k
        }
    };
    let mut lines = Vec::with_capacity(2 * n + 2);
    for j in 1..=n {
        let s = slope(j);
        lines.push(ArrLine {
            name: a_name(j),
            line: [s, -1, s],
        });
    }
    for j in 1..=n {
        let s = slope(j);
        lines.push(ArrLine {
            name: b_name(j),
            line: [s, -1, -s],
        });
    }
    lines.push(ArrLine {
        name: c_name(0),
        line: [0, 0, 1],
    });
    lines.push(ArrLine {
        name: c_name(1),
        line: [1, 0, 0],
    });
    Arrangement::new(lines)
}

/// Exact realization of build_m_prime(n) with slopes permuted by tau:
/// a_i is y = tau(i) x through (0,0), b_i is y = tau(i) x + 1 through
/// (0,1), and c_0 is the line at infinity, which meets the parallel pair
/// a_i, b_i at the slope-tau(i) infinite point.
pub fn realize_f(n: usize, tau: &Permutation) -> Result<Arrangement> {
    if n < 1 {
        return Err(Error::NOutOfRange(n));
    }
    if tau.n() != n {
        return Err(Error::BadPermutation(format!(
            "permutation acts on {} points, expected {n}",
            tau.n()
        )));
    }
    let mut lines = Vec::with_capacity(2 * n + 1);
    for i in 1..=n {
        lines.push(ArrLine {
            name: a_name(i),
            line: [tau.apply(i) as i64, -1, 0],
        });
    }
    for i in 1..=n {
        lines.push(ArrLine {
            name: b_name(i),
            line: [tau.apply(i) as i64, -1, 1],
        });
    }
    lines.push(ArrLine {
        name: c_name(0),
        line: [0, 0, 1],
    });
    Arrangement::new(lines)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(n: usize, text: &str) -> Permutation {
        Permutation::from_cycles(n, text).unwrap()
    }

    #[test]
    fn m_prime_counts() {
        for (n, elems, flats) in [(2, 5, 4), (3, 7, 5), (4, 9, 6)] {
            let m = build_m_prime(n).unwrap();
            assert_eq!(m.elements().len(), elems);
            assert_eq!(m.flats().len(), flats);
            assert!(m.validate().ok);
        }
        assert_eq!(build_m_prime(1).unwrap_err(), Error::NTooSmall(1));
    }

    #[test]
    fn m_prime_dependence() {
        let m = build_m_prime(3).unwrap();
        assert!(m.dependent(["a1", "b1", "c0"]).unwrap());
        assert!(!m.dependent(["a1", "b2", "c0"]).unwrap());
        assert!(m.dependent(["a1", "a2", "a3"]).unwrap());
    }

    #[test]
    fn m_sigma_counts() {
        for (n, text, elems, flats) in [
            (3, "(1 2 3)", 8, 8),
            (4, "(1 3)(2 4)", 10, 10),
            (2, "(1 2)", 6, 6),
        ] {
            let m = build_m_sigma(n, &perm(n, text)).unwrap();
            assert_eq!(m.elements().len(), elems);
            assert_eq!(m.flats().len(), flats);
            assert!(m.validate().ok);
        }
    }

    #[test]
    fn m_sigma_rejects_fixed_points() {
        assert_eq!(
            build_m_sigma(3, &perm(3, "(1 2)")).unwrap_err(),
            Error::NotDerangement(3)
        );
        assert!(matches!(
            build_m_sigma(3, &perm(4, "(1 2)(3 4)")).unwrap_err(),
            Error::BadPermutation(_)
        ));
    }

    #[test]
    fn deleting_c1_recovers_m_prime_exactly() {
        for (n, text) in [
            (2, "(1 2)"),
            (3, "(1 2 3)"),
            (4, "(1 3)(2 4)"),
            (5, "(1 2 3 4 5)"),
        ] {
            let m = build_m_sigma(n, &perm(n, text)).unwrap();
            assert_eq!(m.delete_element("c1").unwrap(), build_m_prime(n).unwrap());
        }
    }

    #[test]
    fn deleting_c1_from_maclane_counts() {
        let m = build_m_sigma(3, &perm(3, "(1 2 3)")).unwrap();
        let d = m.delete_element("c1").unwrap();
        assert_eq!(d.elements().len(), 7);
        let mut sizes: Vec<usize> = d.flats().iter().map(|f| f.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![3, 3, 3, 3, 3]);
    }

    #[test]
    fn deleting_a1_drops_its_triples() {
        let m = build_m_sigma(3, &perm(3, "(1 2 3)")).unwrap();
        let d = m.delete_element("a1").unwrap();
        assert_eq!(d.elements().len(), 7);
        // X_1 and the sigma flat through a_1 drop to pairs; A drops too
        // since only two a's remain.
        assert_eq!(d.flats().len(), 5);
        assert!(d.validate().ok);
    }

    #[test]
    fn restriction_to_short_cycle_matches_small_family() {
        let m = build_m_sigma(4, &perm(4, "(1 2)(3 4)")).unwrap();
        let s: BTreeSet<String> = ["a1", "a2", "b1", "b2", "c0", "c1"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        let r = m.restrict(&s).unwrap();
        assert_eq!(r.elements().len(), 6);
        let small = build_m_sigma(2, &perm(2, "(1 2)")).unwrap();
        // Same element names and order here, so the dependence relations
        // must agree index for index.
        assert_eq!(r.elements(), small.elements());
        assert_eq!(r.dependent_index_triples(), small.dependent_index_triples());
    }

    #[test]
    fn sigma_graph_cycle_lengths() {
        assert_eq!(
            sigma_graph(&perm(3, "(1 2 3)")).unwrap().cycle_lengths(),
            vec![6]
        );
        assert_eq!(
            sigma_graph(&perm(4, "(1 3)(2 4)")).unwrap().cycle_lengths(),
            vec![4, 4]
        );
        assert_eq!(
            sigma_graph(&perm(5, "(1 2)(3 4 5)"))
                .unwrap()
                .cycle_lengths(),
            vec![4, 6]
        );
    }

    #[test]
    fn sigma_graph_is_two_regular_bipartite() {
        for n in 2..=6 {
            for sigma in derangements(n) {
                let graph = sigma_graph(&sigma).unwrap();
                assert_eq!(graph.vertices.len(), 2 * n);
                assert_eq!(graph.edges.len(), 2 * n);
                for v in &graph.vertices {
                    let degree = graph.edges.iter().filter(|e| e.contains(v)).count();
                    assert_eq!(degree, 2, "vertex {v}");
                }
                for e in &graph.edges {
                    assert!(e[0].starts_with('a') && e[1].starts_with('b'));
                }
                let lengths = graph.cycle_lengths();
                assert!(lengths.iter().all(|l| l % 2 == 0));
                assert_eq!(lengths.iter().sum::<usize>(), 2 * n);
                // Cycle lengths are exactly the doubled sigma cycle lengths.
                let mut doubled: Vec<usize> = sigma.cycle_lengths().iter().map(|l| 2 * l).collect();
                doubled.sort_unstable();
                assert_eq!(lengths, doubled);
            }
        }
    }

    #[test]
    fn group_matroid_counts() {
        let z3 = GroupSpec::parse("Z3").unwrap();
        let m = build_group_matroid(
            &z3,
            &z3.parse_element("0").unwrap(),
            &z3.parse_element("1").unwrap(),
        )
        .unwrap();
        assert_eq!(m.elements().len(), 8);
        assert_eq!(m.flats().len(), 8);
        assert_eq!(
            m.elements(),
            &["a0", "a1", "a2", "b0", "b1", "b2", "c0", "c1"]
        );

        let z5 = GroupSpec::parse("Z5").unwrap();
        let m = build_group_matroid(
            &z5,
            &z5.parse_element("0").unwrap(),
            &z5.parse_element("1").unwrap(),
        )
        .unwrap();
        assert_eq!(m.elements().len(), 12);
        assert_eq!(m.flats().len(), 12);

        let v4 = GroupSpec::parse("Z2xZ2").unwrap();
        let m = build_group_matroid(
            &v4,
            &v4.parse_element("(0,0)").unwrap(),
            &v4.parse_element("(1,0)").unwrap(),
        )
        .unwrap();
        assert_eq!(m.elements().len(), 10);
        assert_eq!(m.flats().len(), 10);

        assert_eq!(
            build_group_matroid(
                &z3,
                &z3.parse_element("1").unwrap(),
                &z3.parse_element("1").unwrap()
            )
            .unwrap_err(),
            Error::EqualGroupElements
        );
    }

    #[test]
    fn group_to_sigma_examples() {
        let z3 = GroupSpec::parse("Z3").unwrap();
        let tr = group_to_sigma(
            &z3,
            &z3.parse_element("0").unwrap(),
            &z3.parse_element("1").unwrap(),
        )
        .unwrap();
        assert_eq!(tr.sigma, perm(3, "(1 2 3)"));

        let z4 = GroupSpec::parse("Z4").unwrap();
        let tr = group_to_sigma(
            &z4,
            &z4.parse_element("0").unwrap(),
            &z4.parse_element("2").unwrap(),
        )
        .unwrap();
        assert_eq!(tr.sigma.cycle_lengths(), vec![2, 2]);
        assert!(tr.sigma.is_derangement());
    }

    #[test]
    fn group_to_sigma_roundtrip() {
        let cases: Vec<(&str, &str, &str)> = vec![
            ("Z3", "0", "1"),
            ("Z4", "0", "2"),
            ("Z4", "1", "3"),
            ("Z2xZ2", "(0,1)", "(1,0)"),
            ("Z6", "1", "4"),
        ];
        for (gtext, t0, t1) in cases {
            let g = GroupSpec::parse(gtext).unwrap();
            let g0 = g.parse_element(t0).unwrap();
            let g1 = g.parse_element(t1).unwrap();
            let tr = group_to_sigma(&g, &g0, &g1).unwrap();
            let direct = build_group_matroid(&g, &g0, &g1).unwrap();
            let via_sigma = build_m_sigma(tr.n, &tr.sigma)
                .unwrap()
                .rename(&tr.renaming)
                .unwrap();
            assert_eq!(
                via_sigma.canonical_form(),
                direct.canonical_form(),
                "{gtext} g0={t0} g1={t1}"
            );
        }
    }

    #[test]
    fn tau_relabel_traces() {
        let tau = tau_relabel(4, &perm(4, "(1 3)(2 4)")).unwrap();
        assert_eq!(tau.one_line(), &[1, 2, 4, 3]);
        let tau = tau_relabel(2, &perm(2, "(1 2)")).unwrap();
        assert_eq!(tau.one_line(), &[1, 2]);
        let tau = tau_relabel(6, &perm(6, "(1 4)(2 5)(3 6)")).unwrap();
        assert_eq!(tau.one_line(), &[1, 2, 3, 6, 5, 4]);
    }

    #[test]
    fn tau_relabel_rejects_long_cycles() {
        assert_eq!(
            tau_relabel(3, &perm(3, "(1 2 3)")).unwrap_err(),
            Error::NotInvolution(3)
        );
        assert_eq!(
            tau_relabel(4, &perm(4, "(1 2)")).unwrap_err(),
            Error::NotInvolution(1)
        );
    }

    #[test]
    fn four_cycle_realization_shape() {
        let arr = realize_four_cycles(4, &perm(4, "(1 3)(2 4)")).unwrap();
        assert_eq!(arr.lines().len(), 10);
        assert_eq!(arr.lines()[0].name, "a1");
        assert_eq!(arr.lines()[0].line, [-1, -1, -1]);
        assert_eq!(arr.lines()[9].name, "c1");
        assert_eq!(arr.lines()[9].line, [1, 0, 0]);
        let small = realize_four_cycles(2, &perm(2, "(1 2)")).unwrap();
        assert_eq!(small.lines().len(), 6);
    }

    #[test]
    fn four_cycle_crossings_on_c1() {
        let sigma = perm(4, "(1 3)(2 4)");
        let arr = realize_four_cycles(4, &sigma).unwrap();
        let coeffs =
            |name: &str| -> [i64; 3] { arr.lines().iter().find(|l| l.name == name).unwrap().line };
        for j in 1..=4usize {
            let a = coeffs(&format!("a{j}"));
            let b = coeffs(&format!("b{}", sigma.apply(j)));
            // Meeting point of the two lines, as a cross product.
            let x = a[1] * b[2] - a[2] * b[1];
            let z = a[0] * b[1] - a[1] * b[0];
            assert_ne!(z, 0, "affine crossing");
            assert_eq!(x, 0, "a{j} meets b{} on x = 0", sigma.apply(j));
        }
    }

    #[test]
    fn realize_f_shape() {
        let arr = realize_f(4, &Permutation::identity(4)).unwrap();
        assert_eq!(arr.lines().len(), 9);
        // Parallel pairs: a_i and b_i share the slope part.
        for i in 0..4 {
            let a = arr.lines()[i].line;
            let b = arr.lines()[i + 4].line;
            assert_eq!((a[0], a[1]), (b[0], b[1]));
            assert_eq!((a[2], b[2]), (0, 1));
        }
        assert_eq!(arr.lines()[8].line, [0, 0, 1]);
    }

    #[test]
    fn realize_f_vertex_formula() {
        let tau = perm(4, "(1 4 2)");
        let arr = realize_f(4, &tau).unwrap();
        let line =
            |name: &str| -> [i64; 3] { arr.lines().iter().find(|l| l.name == name).unwrap().line };
        for i in 1..=4usize {
            for j in 1..=4usize {
                if i == j {
                    continue;
                }
                let a = line(&format!("a{i}"));
                let b = line(&format!("b{j}"));
                let x = a[1] * b[2] - a[2] * b[1];
                let y = a[2] * b[0] - a[0] * b[2];
                let z = a[0] * b[1] - a[1] * b[0];
                let (ti, tj) = (tau.apply(i) as i64, tau.apply(j) as i64);
                // Affine crossing (1/(ti - tj), ti/(ti - tj)), cleared of
                // denominators with orientation z = tj - ti.
                assert_eq!([x, y, z], [-1, -ti, tj - ti]);
            }
        }
    }
}
