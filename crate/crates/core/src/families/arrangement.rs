//! Named line arrangements in the rational projective plane, with exact
//! integer coefficients.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One line Ax + By + Cz = 0; the line at infinity is <0,0,1>.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrLine {
    pub name: String,
    pub line: [i64; 3],
}

/// An ordered family of pairwise distinct (non-proportional) lines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrangement {
    lines: Vec<ArrLine>,
}

fn proportional(a: &[i64; 3], b: &[i64; 3]) -> bool {
    let m = |i: usize, j: usize| a[i] as i128 * b[j] as i128 - a[j] as i128 * b[i] as i128;
    m(0, 1) == 0 && m(0, 2) == 0 && m(1, 2) == 0
}

impl Arrangement {
    pub fn new(lines: Vec<ArrLine>) -> Result<Arrangement> {
        for l in &lines {
            if l.line == [0, 0, 0] {
                return Err(Error::DegenerateArrangement(format!(
                    "line {} is zero",
                    l.name
                )));
            }
        }
        for i in 0..lines.len() {
            for j in (i + 1)..lines.len() {
                if lines[i].name == lines[j].name {
                    return Err(Error::DegenerateArrangement(format!(
                        "duplicate line name {}",
                        lines[i].name
                    )));
                }
                if proportional(&lines[i].line, &lines[j].line) {
                    return Err(Error::DegenerateArrangement(format!(
                        "lines {} and {} are proportional",
                        lines[i].name, lines[j].name
                    )));
                }
            }
        }
        Ok(Arrangement { lines })
    }

    pub fn lines(&self) -> &[ArrLine] {
        &self.lines
    }

    pub fn names(&self) -> Vec<&str> {
        self.lines.iter().map(|l| l.name.as_str()).collect()
    }

    /// JSON: an array of {"name": .., "line": [A,B,C]} in arrangement order.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.lines).expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> Result<Arrangement> {
        let lines: Vec<ArrLine> =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Arrangement::new(lines)
    }
}
