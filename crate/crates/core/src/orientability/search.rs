//! Exhaustive chirotope search by backtracking over triple signs.
//!
//! Variables are the independent sorted triples (dependent ones are pinned
//! to 0). Each anchor element and 4-subset of the others contributes one
//! sign constraint over at most three variable products; assignments
//! propagate through these constraints, and a conflict prunes the branch.
//! The first variable is fixed to +1, which halves the space by global
//! negation symmetry without losing completeness.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::Mutex;

use crate::error::{Error, Result};
use crate::matroid::LineMatroid;

use super::chirotope::{gp_check, triple_count, triple_rank, Chirotope};

pub const DEFAULT_BUDGET: u64 = 10_000_000;
pub const MAX_SEARCH_ELEMENTS: usize = 14;

#[derive(Debug, Clone)]
pub struct SearchConfig {
    /// Maximum number of decision nodes across the whole search.
    pub budget: u64,
    /// Worker threads; 1 gives a fully deterministic search.
    pub workers: usize,
}

impl Default for SearchConfig {
    fn default() -> SearchConfig {
        SearchConfig {
            budget: DEFAULT_BUDGET,
            workers: 1,
        }
    }
}

/// Search result. Exhaustion of the budget is reported as its own outcome:
/// it never stands in for "no chirotope exists".
#[derive(Debug, Clone)]
pub enum SearchOutcome {
    Found { chirotope: Chirotope, nodes: u64 },
    NoChirotope { nodes: u64 },
    BudgetExhausted { nodes: u64 },
}

impl SearchOutcome {
    pub fn nodes(&self) -> u64 {
        match self {
            SearchOutcome::Found { nodes, .. }
            | SearchOutcome::NoChirotope { nodes }
            | SearchOutcome::BudgetExhausted { nodes } => *nodes,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            SearchOutcome::Found { .. } => "found",
            SearchOutcome::NoChirotope { .. } => "none",
            SearchOutcome::BudgetExhausted { .. } => "budget-exhausted",
        }
    }

    pub fn found(&self) -> Option<&Chirotope> {
        match self {
            SearchOutcome::Found { chirotope, .. } => Some(chirotope),
            _ => None,
        }
    }
}

/// One product coef * x(r1) * x(r2) inside a sign constraint; both ranks
/// reference independent triples, so the value is never 0 once assigned.
#[derive(Debug, Clone, Copy)]
struct Product {
    r1: u32,
    r2: u32,
    coef: i8,
}

#[derive(Debug, Clone)]
struct Constraint {
    products: Vec<Product>,
}

struct Problem {
    ntriples: usize,
    dependent: Vec<bool>,
    /// Independent triple ranks in lexicographic order.
    vars: Vec<u32>,
    constraints: Vec<Constraint>,
    /// rank -> indices of constraints whose products mention it.
    watch: Vec<Vec<u32>>,
    /// Some constraint kept exactly one live product, which can never be
    /// zero: no chirotope exists at all.
    unsat: bool,
}

fn build_problem(m: &LineMatroid) -> Result<Problem> {
    let report = m.validate();
    if !report.ok {
        return Err(Error::InvalidMatroid(report.diagnostic.unwrap()));
    }
    let n = m.elements().len();
    if n > MAX_SEARCH_ELEMENTS {
        return Err(Error::BeyondDeskScale(n));
    }
    let ntriples = triple_count(n);
    let mut dependent = vec![false; ntriples];
    for t in m.dependent_index_triples() {
        dependent[triple_rank(n, t)] = true;
    }
    let vars: Vec<u32> = (0..ntriples)
        .filter(|&r| !dependent[r])
        .map(|r| r as u32)
        .collect();

    // Sign of sorting (a, x, y) with x < y: one transposition iff a lands
    // in the middle.
    let eps = |a: usize, x: usize, y: usize| -> i8 {
        if x < a && a < y {
            -1
        } else {
            1
        }
    };
    let rank_of = |a: usize, x: usize, y: usize| -> usize {
        let mut t = [a, x, y];
        t.sort_unstable();
        triple_rank(n, t)
    };

    let mut constraints = Vec::new();
    let mut unsat = false;
    for a in 0..n {
        let rest: Vec<usize> = (0..n).filter(|&x| x != a).collect();
        let m4 = rest.len();
        for p in 0..m4 {
            for q in (p + 1)..m4 {
                for r in (q + 1)..m4 {
                    for s in (r + 1)..m4 {
                        let (b, c, d, e) = (rest[p], rest[q], rest[r], rest[s]);
                        let raw = [
                            ((b, c), (d, e), 1i8),
                            ((b, d), (c, e), -1),
                            ((b, e), (c, d), 1),
                        ];
                        let mut products = Vec::new();
                        for ((x1, y1), (x2, y2), base) in raw {
                            let r1 = rank_of(a, x1, y1);
                            let r2 = rank_of(a, x2, y2);
                            if dependent[r1] || dependent[r2] {
                                continue;
                            }
                            products.push(Product {
                                r1: r1 as u32,
                                r2: r2 as u32,
                                coef: base * eps(a, x1, y1) * eps(a, x2, y2),
                            });
                        }
                        match products.len() {
                            0 => {}
                            1 => unsat = true,
                            _ => constraints.push(Constraint { products }),
                        }
                    }
                }
            }
        }
    }

    let mut watch = vec![Vec::new(); ntriples];
    for (ci, c) in constraints.iter().enumerate() {
        let mut mentioned: Vec<u32> = c.products.iter().flat_map(|p| [p.r1, p.r2]).collect();
        mentioned.sort_unstable();
        mentioned.dedup();
        for r in mentioned {
            watch[r as usize].push(ci as u32);
        }
    }

    Ok(Problem {
        ntriples,
        dependent,
        vars,
        constraints,
        watch,
        unsat,
    })
}

enum Walk {
    Found,
    Exhausted,
    Budget,
    Cancelled,
}

struct Engine<'p> {
    problem: &'p Problem,
    assign: Vec<i8>,
    trail: Vec<u32>,
    nodes: &'p AtomicU64,
    budget: u64,
    cancel: &'p AtomicBool,
}

impl<'p> Engine<'p> {
    fn new(
        problem: &'p Problem,
        nodes: &'p AtomicU64,
        budget: u64,
        cancel: &'p AtomicBool,
    ) -> Engine<'p> {
        Engine {
            problem,
            assign: vec![0; problem.ntriples],
            trail: Vec::with_capacity(problem.vars.len()),
            nodes,
            budget,
            cancel,
        }
    }

    fn set(&mut self, rank: u32, value: i8) -> bool {
        let cur = self.assign[rank as usize];
        if cur == value {
            return true;
        }
        if cur != 0 {
            return false;
        }
        self.assign[rank as usize] = value;
        self.trail.push(rank);
        true
    }

    /// Re-examine one constraint after an assignment. Returns false on
    /// conflict; may force further assignments through `set`.
    fn eval_constraint(&mut self, ci: u32) -> bool {
        let c = &self.problem.constraints[ci as usize];
        let mut pos = false;
        let mut neg = false;
        let mut unknown = usize::MAX;
        let mut unknown_count = 0;
        for (idx, p) in c.products.iter().enumerate() {
            let v1 = self.assign[p.r1 as usize];
            let v2 = self.assign[p.r2 as usize];
            if v1 != 0 && v2 != 0 {
                if p.coef * v1 * v2 > 0 {
                    pos = true;
                } else {
                    neg = true;
                }
            } else {
                unknown = idx;
                unknown_count += 1;
            }
        }
        if pos && neg {
            return true;
        }
        if unknown_count == 0 {
            // Every product is a nonzero value of one common sign.
            return false;
        }
        if unknown_count == 1 && (pos || neg) {
            let target: i8 = if pos { -1 } else { 1 };
            let p = c.products[unknown];
            let v1 = self.assign[p.r1 as usize];
            let v2 = self.assign[p.r2 as usize];
            if v1 != 0 {
                return self.set(p.r2, target * p.coef * v1);
            }
            if v2 != 0 {
                return self.set(p.r1, target * p.coef * v2);
            }
        }
        true
    }

    /// Assign and run propagation to fixpoint. Returns false on conflict;
    /// the caller unwinds the trail either way.
    fn assign_and_propagate(&mut self, rank: u32, value: i8) -> bool {
        let mut cursor = self.trail.len();
        if !self.set(rank, value) {
            return false;
        }
        while cursor < self.trail.len() {
            let r = self.trail[cursor];
            cursor += 1;
            let n_watch = self.problem.watch[r as usize].len();
            for w in 0..n_watch {
                let ci = self.problem.watch[r as usize][w];
                if !self.eval_constraint(ci) {
                    return false;
                }
            }
        }
        true
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let r = self.trail.pop().unwrap();
            self.assign[r as usize] = 0;
        }
    }

    fn dfs(&mut self, mut var_pos: usize) -> Walk {
        let vars = &self.problem.vars;
        while var_pos < vars.len() && self.assign[vars[var_pos] as usize] != 0 {
            var_pos += 1;
        }
        if var_pos == vars.len() {
            return Walk::Found;
        }
        let rank = vars[var_pos];
        for v in [1i8, -1] {
            if self.cancel.load(Ordering::Relaxed) {
                return Walk::Cancelled;
            }
            if self.nodes.fetch_add(1, Ordering::Relaxed) + 1 > self.budget {
                return Walk::Budget;
            }
            let mark = self.trail.len();
            if self.assign_and_propagate(rank, v) {
                match self.dfs(var_pos + 1) {
                    Walk::Exhausted => {}
                    other => return other,
                }
            }
            self.undo_to(mark);
        }
        Walk::Exhausted
    }

    fn extract(&self) -> Chirotope {
        let mut signs = Vec::with_capacity(self.problem.ntriples);
        for r in 0..self.problem.ntriples {
            signs.push(if self.problem.dependent[r] {
                0
            } else {
                self.assign[r]
            });
        }
        let n = invert_triple_count(self.problem.ntriples);
        let chi = Chirotope::from_sorted_signs(n, signs).expect("complete assignment");
        debug_assert!(
            gp_check(&chi).is_none(),
            "search must emit valid chirotopes"
        );
        chi
    }
}

fn invert_triple_count(ntriples: usize) -> usize {
    (3..=MAX_SEARCH_ELEMENTS)
        .find(|&n| triple_count(n) == ntriples)
        .expect("triple count of a matroid at desk scale")
}

/// Search for a chirotope whose zero-set is exactly M's dependent triples.
pub fn find_chirotope(m: &LineMatroid, config: &SearchConfig) -> Result<SearchOutcome> {
    let problem = build_problem(m)?;
    if problem.unsat {
        return Ok(SearchOutcome::NoChirotope { nodes: 0 });
    }
    let nodes = AtomicU64::new(0);
    let cancel = AtomicBool::new(false);

    let workers = config.workers.max(1);
    if workers == 1 || problem.vars.len() < 4 {
        let mut engine = Engine::new(&problem, &nodes, config.budget, &cancel);
        if !engine.assign_and_propagate(problem.vars[0], 1) {
            return Ok(SearchOutcome::NoChirotope {
                nodes: nodes.load(Ordering::Relaxed),
            });
        }
        let walk = engine.dfs(0);
        let used = nodes.load(Ordering::Relaxed);
        return Ok(match walk {
            Walk::Found => SearchOutcome::Found {
                chirotope: engine.extract(),
                nodes: used,
            },
            Walk::Exhausted => SearchOutcome::NoChirotope { nodes: used },
            Walk::Budget => SearchOutcome::BudgetExhausted { nodes: used },
            Walk::Cancelled => unreachable!("nothing cancels a lone worker"),
        });
    }

    // Split the space on the values of the second and third variables; the
    // four branches run independently and the first certificate cancels
    // the rest.
    let found: Mutex<Option<Chirotope>> = Mutex::new(None);
    let budget_tripped = AtomicBool::new(false);
    let jobs: [(i8, i8); 4] = [(1, 1), (1, -1), (-1, 1), (-1, -1)];
    let (problem_ref, nodes_ref, cancel_ref) = (&problem, &nodes, &cancel);
    let (found_ref, tripped_ref) = (&found, &budget_tripped);
    let budget = config.budget;
    std::thread::scope(|scope| {
        for chunk in jobs.chunks(jobs.len().div_ceil(workers.min(4))) {
            scope.spawn(move || {
                for &(v1, v2) in chunk {
                    if cancel_ref.load(Ordering::Relaxed) {
                        return;
                    }
                    let mut engine = Engine::new(problem_ref, nodes_ref, budget, cancel_ref);
                    let seeded = engine.assign_and_propagate(problem_ref.vars[0], 1)
                        && engine.assign_and_propagate(problem_ref.vars[1], v1)
                        && engine.assign_and_propagate(problem_ref.vars[2], v2);
                    if !seeded {
                        continue;
                    }
                    match engine.dfs(0) {
                        Walk::Found => {
                            let mut slot = found_ref.lock().unwrap();
                            if slot.is_none() {
                                *slot = Some(engine.extract());
                            }
                            cancel_ref.store(true, Ordering::Relaxed);
                            return;
                        }
                        Walk::Budget => {
                            tripped_ref.store(true, Ordering::Relaxed);
                            cancel_ref.store(true, Ordering::Relaxed);
                            return;
                        }
                        Walk::Exhausted | Walk::Cancelled => {}
                    }
                }
            });
        }
    });
    let used = nodes.load(Ordering::Relaxed);
    let winner = found.into_inner().unwrap();
    Ok(if let Some(chirotope) = winner {
        SearchOutcome::Found {
            chirotope,
            nodes: used,
        }
    } else if budget_tripped.load(Ordering::Relaxed) {
        SearchOutcome::BudgetExhausted { nodes: used }
    } else {
        SearchOutcome::NoChirotope { nodes: used }
    })
}
