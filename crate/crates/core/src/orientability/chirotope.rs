//! Rank-3 chirotopes: alternating sign maps on element triples.
//!
//! Signs are stored once per sorted triple, in lexicographic order; the
//! value on an arbitrary ordered triple is the stored sign times the
//! permutation sign. A repeated index gives 0, as alternation demands.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// Number of 3-subsets of {0..n-1}.
pub fn triple_count(n: usize) -> usize {
    n * (n - 1) * (n - 2) / 6
}

/// Lexicographic rank of a sorted triple i < j < k among all 3-subsets.
pub fn triple_rank(n: usize, t: [usize; 3]) -> usize {
    let [i, j, k] = t;
    debug_assert!(i < j && j < k && k < n);
    let mut rank = 0;
    for x in 0..i {
        let m = n - 1 - x;
        rank += m * (m - 1) / 2;
    }
    for y in (i + 1)..j {
        rank += n - 1 - y;
    }
    rank + k - j - 1
}

/// All 3-subsets of {0..n-1} in lexicographic order; position equals
/// triple_rank.
pub fn all_triples(n: usize) -> Vec<[usize; 3]> {
    let mut out = Vec::with_capacity(triple_count(n));
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                out.push([i, j, k]);
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chirotope {
    n: usize,
    signs: Vec<i8>,
}

impl Chirotope {
    /// From the signs of all sorted triples in lexicographic order; values
    /// must lie in {-1, 0, 1} with at least one nonzero.
    pub fn from_sorted_signs(n: usize, signs: Vec<i8>) -> Result<Chirotope> {
        if n < 3 {
            return Err(Error::BadTriple(format!(
                "need at least 3 elements, got {n}"
            )));
        }
        if signs.len() != triple_count(n) {
            return Err(Error::BadTriple(format!(
                "expected {} signs, got {}",
                triple_count(n),
                signs.len()
            )));
        }
        if signs.iter().any(|&s| !(-1..=1).contains(&s)) {
            return Err(Error::BadTriple("signs must be -1, 0, or 1".into()));
        }
        if signs.iter().all(|&s| s == 0) {
            return Err(Error::BadTriple("all signs zero: rank below 3".into()));
        }
        Ok(Chirotope { n, signs })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Sign of a sorted triple i < j < k.
    pub fn sign_sorted(&self, t: [usize; 3]) -> i8 {
        self.signs[triple_rank(self.n, t)]
    }

    /// Sign of an arbitrary ordered triple; repeated indices give 0.
    pub fn sign(&self, i: usize, j: usize, k: usize) -> i8 {
        if i == j || i == k || j == k {
            return 0;
        }
        let mut t = [i, j, k];
        let mut parity = 1i8;
        // Three-element sort by adjacent swaps, tracking the sign.
        if t[0] > t[1] {
            t.swap(0, 1);
            parity = -parity;
        }
        if t[1] > t[2] {
            t.swap(1, 2);
            parity = -parity;
        }
        if t[0] > t[1] {
            t.swap(0, 1);
            parity = -parity;
        }
        parity * self.sign_sorted(t)
    }

    /// The dependent triples: sorted triples with sign 0.
    pub fn zero_set(&self) -> BTreeSet<[usize; 3]> {
        all_triples(self.n)
            .into_iter()
            .filter(|&t| self.sign_sorted(t) == 0)
            .collect()
    }

    /// JSON object mapping "i,j,k" (sorted indices) to the sign.
    pub fn json_value(&self) -> serde_json::Value {
        let mut map = serde_json::Map::new();
        for t in all_triples(self.n) {
            map.insert(
                format!("{},{},{}", t[0], t[1], t[2]),
                serde_json::Value::from(self.sign_sorted(t)),
            );
        }
        serde_json::Value::Object(map)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.json_value()).expect("plain data serializes")
    }
}

/// A violated 3-term sign relation: anchor element a and four others
/// b < c < d < e whose products s1, s2, s3 are nonzero yet all of one sign.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GpViolation {
    pub anchor: usize,
    pub quad: [usize; 4],
    pub products: [i8; 3],
}

impl std::fmt::Display for GpViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "anchor {} with {:?}: products {:?} miss a sign change",
            self.anchor, self.quad, self.products
        )
    }
}

/// Check every 3-term Grassmann-Plucker sign relation: for an anchor a and
/// b < c < d < e among the rest, the nonzero values among
///   s1 =  x(a,b,c) * x(a,d,e)
///   s2 = -x(a,b,d) * x(a,c,e)
///   s3 =  x(a,b,e) * x(a,c,d)
/// must be absent or include both +1 and -1. Returns the first violation.
pub fn gp_check(chi: &Chirotope) -> Option<GpViolation> {
    let n = chi.n();
    for a in 0..n {
        let rest: Vec<usize> = (0..n).filter(|&x| x != a).collect();
        let m = rest.len();
        for p in 0..m {
            for q in (p + 1)..m {
                for r in (q + 1)..m {
                    for s in (r + 1)..m {
                        let (b, c, d, e) = (rest[p], rest[q], rest[r], rest[s]);
                        let s1 = chi.sign(a, b, c) * chi.sign(a, d, e);
                        let s2 = -chi.sign(a, b, d) * chi.sign(a, c, e);
                        let s3 = chi.sign(a, b, e) * chi.sign(a, c, d);
                        let pos = s1 > 0 || s2 > 0 || s3 > 0;
                        let neg = s1 < 0 || s2 < 0 || s3 < 0;
                        if (pos || neg) && !(pos && neg) {
                            return Some(GpViolation {
                                anchor: a,
                                quad: [b, c, d, e],
                                products: [s1, s2, s3],
                            });
                        }
                    }
                }
            }
        }
    }
    None
}
