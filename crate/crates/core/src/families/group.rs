//! Finite abelian groups as products of cyclic groups, written additively.

use crate::error::{Error, Result};
use crate::gf::is_prime;

/// Z_{d1} x ... x Z_{dk}, every factor at least 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupSpec {
    orders: Vec<u64>,
}

/// A tuple of residues, one per factor of its GroupSpec.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    pub residues: Vec<u64>,
}

impl GroupSpec {
    pub fn new(orders: Vec<u64>) -> Result<GroupSpec> {
        if orders.is_empty() {
            return Err(Error::BadGroup("no cyclic factors".into()));
        }
        if let Some(&d) = orders.iter().find(|&&d| d < 2) {
            return Err(Error::BadGroup(format!("cyclic factor {d} < 2")));
        }
        Ok(GroupSpec { orders })
    }

    /// Parse "Z6" or "Z2xZ4" style names.
    pub fn parse(text: &str) -> Result<GroupSpec> {
        let mut orders = Vec::new();
        for part in text.trim().split(['x', 'X']) {
            let part = part.trim();
            let digits = part
                .strip_prefix('Z')
                .or_else(|| part.strip_prefix('z'))
                .ok_or_else(|| Error::BadGroup(format!("expected Z<d>, got {part}")))?;
            let d: u64 = digits
                .parse()
                .map_err(|_| Error::BadGroup(format!("not a number: {digits}")))?;
            orders.push(d);
        }
        GroupSpec::new(orders)
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn order(&self) -> u64 {
        self.orders.iter().product()
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement {
            residues: vec![0; self.orders.len()],
        }
    }

    pub fn check(&self, e: &GroupElement) -> Result<()> {
        if e.residues.len() != self.orders.len() {
            return Err(Error::BadGroupElement(format!(
                "expected {} residues, got {}",
                self.orders.len(),
                e.residues.len()
            )));
        }
        for (r, d) in e.residues.iter().zip(&self.orders) {
            if r >= d {
                return Err(Error::BadGroupElement(format!(
                    "residue {r} out of range for Z{d}"
                )));
            }
        }
        Ok(())
    }

    pub fn add(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        GroupElement {
            residues: x
                .residues
                .iter()
                .zip(&y.residues)
                .zip(&self.orders)
                .map(|((&a, &b), &d)| (a + b) % d)
                .collect(),
        }
    }

    pub fn neg(&self, x: &GroupElement) -> GroupElement {
        GroupElement {
            residues: x
                .residues
                .iter()
                .zip(&self.orders)
                .map(|(&a, &d)| (d - a) % d)
                .collect(),
        }
    }

    pub fn sub(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        self.add(x, &self.neg(y))
    }

    /// Additive order: smallest k >= 1 with k*x = 0.
    pub fn element_order(&self, x: &GroupElement) -> u64 {
        let mut acc = x.clone();
        let mut k = 1;
        while acc != self.zero() {
            acc = self.add(&acc, x);
            k += 1;
        }
        k
    }

    /// All elements in lexicographic tuple order, first residue most
    /// significant. This is the canonical enumeration used everywhere.
    pub fn elements(&self) -> Vec<GroupElement> {
        let mut out = vec![self.zero()];
        for _ in 1..self.order() {
            let mut next = out.last().unwrap().clone();
            for pos in (0..self.orders.len()).rev() {
                next.residues[pos] += 1;
                if next.residues[pos] < self.orders[pos] {
                    break;
                }
                next.residues[pos] = 0;
            }
            out.push(next);
        }
        out
    }

    /// Parse "1" (single factor) or "(0,1)" / "0,1" (multi-factor).
    pub fn parse_element(&self, text: &str) -> Result<GroupElement> {
        let body = text.trim().trim_start_matches('(').trim_end_matches(')');
        let residues: Vec<u64> = body
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::BadGroupElement(format!("not a number: {s}")))
            })
            .collect::<Result<_>>()?;
        let e = GroupElement { residues };
        self.check(&e)?;
        Ok(e)
    }

    /// "1" for a single factor, "(0,1)" otherwise; used inside element ids.
    pub fn render_element(&self, e: &GroupElement) -> String {
        if self.orders.len() == 1 {
            e.residues[0].to_string()
        } else {
            let parts: Vec<String> = e.residues.iter().map(|r| r.to_string()).collect();
            format!("({})", parts.join(","))
        }
    }
}

impl std::fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.orders.iter().map(|d| format!("Z{d}")).collect();
        f.write_str(&parts.join("x"))
    }
}

/// All abelian groups of order n, one GroupSpec per isomorphism class, via
/// the primary decomposition: for each prime power p^e dividing n exactly,
/// one partition of e chooses the cyclic factors p^part.
pub fn abelian_groups_of_order(n: u64) -> Vec<GroupSpec> {
    if n < 2 {
        return Vec::new();
    }
    let mut prime_powers: Vec<(u64, u32)> = Vec::new();
    let mut rest = n;
    let mut p = 2;
    while rest > 1 {
        if is_prime(p) && rest.is_multiple_of(p) {
            let mut e = 0;
            while rest.is_multiple_of(p) {
                rest /= p;
                e += 1;
            }
            prime_powers.push((p, e));
        }
        p += 1;
    }
    let mut specs = vec![Vec::new()];
    for (p, e) in prime_powers {
        let mut grown = Vec::new();
        for part in partitions(e) {
            for spec in &specs {
                let mut s: Vec<u64> = spec.clone();
                s.extend(part.iter().map(|&k| p.pow(k)));
                grown.push(s);
            }
        }
        specs = grown;
    }
    specs
        .into_iter()
        .map(|orders| GroupSpec::new(orders).expect("factors are prime powers >= 2"))
        .collect()
}

/// Partitions of e in decreasing parts, largest-first order:
/// 3 -> [3], [2,1], [1,1,1].
fn partitions(e: u32) -> Vec<Vec<u32>> {
    fn rec(remaining: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if remaining == 0 {
            out.push(prefix.clone());
            return;
        }
        let top = max.min(remaining);
        for part in (1..=top).rev() {
            prefix.push(part);
            rec(remaining - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(e, e, &mut Vec::new(), &mut out);
    out
}
