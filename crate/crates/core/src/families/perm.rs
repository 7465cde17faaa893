//! Permutations of {1..n} with cycle notation parsing and printing.

use crate::error::{Error, Result};

/// A bijection on {1..n}, stored in one-line form: `map[i-1]` is the image
/// of i. All public indices are 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation {
    map: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Permutation {
        Permutation {
            map: (1..=n).collect(),
        }
    }

    /// From one-line notation; must be a bijection on {1..n}.
    pub fn from_one_line(map: Vec<usize>) -> Result<Permutation> {
        let n = map.len();
        let mut seen = vec![false; n + 1];
        for &v in &map {
            if v == 0 || v > n {
                return Err(Error::BadPermutation(format!(
                    "value {v} out of range 1..={n}"
                )));
            }
            if seen[v] {
                return Err(Error::BadPermutation(format!("value {v} repeated")));
            }
            seen[v] = true;
        }
        Ok(Permutation { map })
    }

    /// Parse cycle notation over {1..n}, e.g. "(1 3)(2 4)"; members may be
    /// separated by spaces or commas. Unlisted points are fixed. "()", "id",
    /// and the empty string denote the identity.
    pub fn from_cycles(n: usize, text: &str) -> Result<Permutation> {
        let trimmed = text.trim();
        if trimmed.is_empty() || trimmed == "id" || trimmed == "()" {
            return Ok(Permutation::identity(n));
        }
        let mut map: Vec<usize> = (1..=n).collect();
        let mut moved = vec![false; n + 1];
        let mut rest = trimmed;
        while !rest.is_empty() {
            let open = rest
                .find('(')
                .ok_or_else(|| Error::BadPermutation(format!("expected '(' at: {rest}")))?;
            if !rest[..open].trim().is_empty() {
                return Err(Error::BadPermutation(format!(
                    "unexpected text before '(': {}",
                    &rest[..open]
                )));
            }
            let close = rest
                .find(')')
                .ok_or_else(|| Error::BadPermutation("unbalanced parentheses".into()))?;
            if close < open {
                return Err(Error::BadPermutation("unbalanced parentheses".into()));
            }
            let body = &rest[open + 1..close];
            rest = &rest[close + 1..];
            let members: Vec<usize> = body
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|s| !s.is_empty())
                .map(|s| {
                    s.parse::<usize>()
                        .map_err(|_| Error::BadPermutation(format!("not a number: {s}")))
                })
                .collect::<Result<_>>()?;
            for &v in &members {
                if v == 0 || v > n {
                    return Err(Error::BadPermutation(format!(
                        "element {v} out of range 1..={n}"
                    )));
                }
                if moved[v] {
                    return Err(Error::BadPermutation(format!("element {v} repeated")));
                }
                moved[v] = true;
            }
            for (k, &v) in members.iter().enumerate() {
                map[v - 1] = members[(k + 1) % members.len()];
            }
        }
        Permutation::from_one_line(map)
    }

    pub fn n(&self) -> usize {
        self.map.len()
    }

    /// Image of i (1-based).
    pub fn apply(&self, i: usize) -> usize {
        self.map[i - 1]
    }

    pub fn one_line(&self) -> &[usize] {
        &self.map
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.map.len()];
        for (i, &v) in self.map.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Permutation { map: inv }
    }

    /// Cycle decomposition including fixed points as singletons; each cycle
    /// starts at its smallest member, cycles ordered by that member.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.map.len();
        let mut seen = vec![false; n + 1];
        let mut out = Vec::new();
        for start in 1..=n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut cur = self.apply(start);
            while cur != start {
                seen[cur] = true;
                cycle.push(cur);
                cur = self.apply(cur);
            }
            out.push(cycle);
        }
        out
    }

    /// Sorted multiset of cycle lengths, fixed points included.
    pub fn cycle_lengths(&self) -> Vec<usize> {
        let mut lens: Vec<usize> = self.cycles().iter().map(|c| c.len()).collect();
        lens.sort_unstable();
        lens
    }

    pub fn first_fixed_point(&self) -> Option<usize> {
        (1..=self.n()).find(|&i| self.apply(i) == i)
    }

    pub fn is_derangement(&self) -> bool {
        self.first_fixed_point().is_none()
    }

    /// Cycle notation, singletons omitted; identity prints "()".
    pub fn cycle_string(&self) -> String {
        let nontrivial: Vec<String> = self
            .cycles()
            .into_iter()
            .filter(|c| c.len() > 1)
            .map(|c| {
                let parts: Vec<String> = c.iter().map(|v| v.to_string()).collect();
                format!("({})", parts.join(" "))
            })
            .collect();
        if nontrivial.is_empty() {
            "()".to_string()
        } else {
            nontrivial.concat()
        }
    }
}

impl std::fmt::Display for Permutation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.cycle_string())
    }
}

/// All fixed-point-free permutations of {1..n}, in lexicographic one-line
/// order.
pub fn derangements(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut partial = Vec::with_capacity(n);
    let mut used = vec![false; n + 1];
    fill(n, &mut partial, &mut used, &mut out);
    out
}

fn fill(n: usize, partial: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Permutation>) {
    if partial.len() == n {
        out.push(Permutation {
            map: partial.clone(),
        });
        return;
    }
    let pos = partial.len() + 1;
    for v in 1..=n {
        if used[v] || v == pos {
            continue;
        }
        used[v] = true;
        partial.push(v);
        fill(n, partial, used, out);
        partial.pop();
        used[v] = false;
    }
}
