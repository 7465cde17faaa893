//! Simple rank-3 matroids given by their nontrivial rank-2 flats.
//!
//! A matroid here is a ground set plus a list of "lines": subsets in which
//! every triple is dependent. Two lines meet in at most one element and at
//! least one triple lies on no line (so the rank is exactly 3). Pairs are
//! rank-2 flats too, but trivial ones; they are stored only when a
//! constructor names them explicitly (the point classes A and B of the
//! two-element families), and everything downstream treats a stored pair
//! and an implicit one identically.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::projplane::{collinear, ProjPoint};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineMatroid {
    elements: Vec<String>,
    flats: Vec<BTreeSet<String>>,
}

/// Outcome of a structural or embedding check: `ok` plus the first failure
/// found, described in terms of the witnessing elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub ok: bool,
    pub diagnostic: Option<String>,
}

impl CheckReport {
    fn pass() -> CheckReport {
        CheckReport {
            ok: true,
            diagnostic: None,
        }
    }

    fn fail(diagnostic: String) -> CheckReport {
        CheckReport {
            ok: false,
            diagnostic: Some(diagnostic),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct MatroidFile {
    elements: Vec<String>,
    flats: Vec<Vec<String>>,
}

fn set_to_string(s: &BTreeSet<String>) -> String {
    let names: Vec<&str> = s.iter().map(|x| x.as_str()).collect();
    format!("{{{}}}", names.join(","))
}

impl LineMatroid {
    /// Build and validate. Element order is preserved as given.
    pub fn new(elements: Vec<String>, flats: Vec<BTreeSet<String>>) -> Result<LineMatroid> {
        let m = LineMatroid { elements, flats };
        let report = m.validate();
        if report.ok {
            Ok(m)
        } else {
            Err(Error::InvalidMatroid(report.diagnostic.unwrap()))
        }
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn flats(&self) -> &[BTreeSet<String>] {
        &self.flats
    }

    /// Check every structural invariant; the report carries the first
    /// violation found and its witnesses.
    pub fn validate(&self) -> CheckReport {
        let mut seen = BTreeSet::new();
        for e in &self.elements {
            if e.is_empty() {
                return CheckReport::fail("empty element name".into());
            }
            if !e.is_ascii() {
                return CheckReport::fail(format!("element name not ASCII: {e}"));
            }
            if !seen.insert(e.clone()) {
                return CheckReport::fail(format!("duplicate element name: {e}"));
            }
        }
        for flat in &self.flats {
            for e in flat {
                if !seen.contains(e) {
                    return CheckReport::fail(format!(
                        "flat {} contains unknown element {e}",
                        set_to_string(flat)
                    ));
                }
            }
            if flat.len() < 2 {
                return CheckReport::fail(format!("flat too small: {}", set_to_string(flat)));
            }
        }
        for i in 0..self.flats.len() {
            for j in (i + 1)..self.flats.len() {
                if self.flats[i] == self.flats[j] {
                    return CheckReport::fail(format!(
                        "duplicate flat: {}",
                        set_to_string(&self.flats[i])
                    ));
                }
                let shared = self.flats[i].intersection(&self.flats[j]).count();
                if shared >= 2 {
                    return CheckReport::fail(format!(
                        "two flats share two elements: {} and {}",
                        set_to_string(&self.flats[i]),
                        set_to_string(&self.flats[j])
                    ));
                }
            }
        }
        if self.elements.len() < 3 {
            return CheckReport::fail("rank < 3: fewer than 3 elements".into());
        }
        if self.independent_witness().is_none() {
            return CheckReport::fail("rank < 3: every 3-element subset lies in a flat".into());
        }
        CheckReport::pass()
    }

    fn independent_witness(&self) -> Option<[&str; 3]> {
        let n = self.elements.len();
        for i in 0..n {
            for j in (i + 1)..n {
                for k in (j + 1)..n {
                    let t = [
                        self.elements[i].as_str(),
                        self.elements[j].as_str(),
                        self.elements[k].as_str(),
                    ];
                    if !self.flat_covers(&t) {
                        return Some(t);
                    }
                }
            }
        }
        None
    }

    fn flat_covers(&self, t: &[&str; 3]) -> bool {
        self.flats.iter().any(|f| t.iter().all(|e| f.contains(*e)))
    }

    /// True iff some flat contains all three elements.
    pub fn dependent(&self, t: [&str; 3]) -> Result<bool> {
        if t[0] == t[1] || t[0] == t[2] || t[1] == t[2] {
            return Err(Error::BadTriple(format!(
                "elements not distinct: {},{},{}",
                t[0], t[1], t[2]
            )));
        }
        for e in &t {
            if !self.elements.iter().any(|x| x == e) {
                return Err(Error::BadTriple(format!("unknown element: {e}")));
            }
        }
        Ok(self.flat_covers(&t))
    }

    /// All dependent triples as sorted index triples into `elements()`.
    pub fn dependent_index_triples(&self) -> BTreeSet<[usize; 3]> {
        let index: BTreeMap<&str, usize> = self
            .elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.as_str(), i))
            .collect();
        let mut out = BTreeSet::new();
        for flat in &self.flats {
            let ids: Vec<usize> = flat.iter().map(|e| index[e.as_str()]).collect();
            for a in 0..ids.len() {
                for b in (a + 1)..ids.len() {
                    for c in (b + 1)..ids.len() {
                        let mut t = [ids[a], ids[b], ids[c]];
                        t.sort_unstable();
                        out.insert(t);
                    }
                }
            }
        }
        out
    }

    /// Remove an element from the ground set and every flat. A flat that
    /// shrinks below 3 elements becomes a trivial rank-2 flat and is
    /// dropped; flats the element never touched are kept as stored.
    pub fn delete_element(&self, e: &str) -> Result<LineMatroid> {
        if !self.elements.iter().any(|x| x == e) {
            return Err(Error::NoSuchElement(e.to_string()));
        }
        let elements: Vec<String> = self
            .elements
            .iter()
            .filter(|x| x.as_str() != e)
            .cloned()
            .collect();
        let mut flats = Vec::new();
        for flat in &self.flats {
            if flat.contains(e) {
                let mut shrunk = flat.clone();
                shrunk.remove(e);
                if shrunk.len() >= 3 {
                    flats.push(shrunk);
                }
            } else {
                flats.push(flat.clone());
            }
        }
        LineMatroid::new(elements, flats)
    }

    /// Restriction to S: ground set S, flats intersected with S. An
    /// intersection survives if it still has 3 elements, or if the flat lay
    /// entirely inside S (so stored pairs pass through unchanged); a pair
    /// produced by proper shrinking is trivial and dropped.
    pub fn restrict(&self, s: &BTreeSet<String>) -> Result<LineMatroid> {
        for e in s {
            if !self.elements.iter().any(|x| x == e) {
                return Err(Error::NoSuchElement(e.clone()));
            }
        }
        if s.len() < 3 {
            return Err(Error::RestrictionBelowRank(s.len()));
        }
        let elements: Vec<String> = self
            .elements
            .iter()
            .filter(|x| s.contains(*x))
            .cloned()
            .collect();
        let mut flats = Vec::new();
        for flat in &self.flats {
            let cut: BTreeSet<String> = flat.intersection(s).cloned().collect();
            if cut.len() >= 3 || (cut.len() >= 2 && cut.len() == flat.len()) {
                flats.push(cut);
            }
        }
        LineMatroid::new(elements, flats)
    }

    /// Apply a total injective renaming to elements and flats, preserving
    /// element order.
    pub fn rename(&self, map: &BTreeMap<String, String>) -> Result<LineMatroid> {
        let mut targets = BTreeSet::new();
        for e in &self.elements {
            let img = map
                .get(e)
                .ok_or_else(|| Error::NoSuchElement(format!("no image for {e}")))?;
            if !targets.insert(img.clone()) {
                return Err(Error::NonInjective(format!("two elements map to {img}")));
            }
        }
        let elements: Vec<String> = self.elements.iter().map(|e| map[e].clone()).collect();
        let flats: Vec<BTreeSet<String>> = self
            .flats
            .iter()
            .map(|f| f.iter().map(|e| map[e].clone()).collect())
            .collect();
        LineMatroid::new(elements, flats)
    }

    /// Order-independent normal form: sorted elements, sorted flats.
    pub fn canonical_form(&self) -> (Vec<String>, Vec<Vec<String>>) {
        let mut elements = self.elements.clone();
        elements.sort();
        let mut flats: Vec<Vec<String>> = self
            .flats
            .iter()
            .map(|f| f.iter().cloned().collect())
            .collect();
        flats.sort();
        (elements, flats)
    }

    /// Serialize as the interchange JSON: {"elements": [...], "flats": [[...]]},
    /// both in sorted order.
    pub fn to_json(&self) -> String {
        let (elements, flats) = self.canonical_form();
        serde_json::to_string_pretty(&MatroidFile { elements, flats })
            .expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> Result<LineMatroid> {
        let file: MatroidFile =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let flats = file
            .flats
            .into_iter()
            .map(|f| f.into_iter().collect())
            .collect();
        LineMatroid::new(file.elements, flats)
    }
}

/// Test whether `img` embeds M into the plane of its points: injective, and
/// image collinearity matches dependence on every element triple.
pub fn is_embedding(m: &LineMatroid, img: &BTreeMap<String, ProjPoint>) -> Result<CheckReport> {
    let mut points = Vec::with_capacity(m.elements().len());
    for e in m.elements() {
        let p = img
            .get(e)
            .ok_or_else(|| Error::NoSuchElement(format!("no image for {e}")))?;
        points.push(p);
    }
    for i in 0..points.len() {
        for j in (i + 1)..points.len() {
            if points[i] == points[j] {
                return Ok(CheckReport::fail(format!(
                    "not injective: {} and {} map to {}",
                    m.elements()[i],
                    m.elements()[j],
                    points[i]
                )));
            }
        }
    }
    let n = points.len();
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                let t = [
                    m.elements()[i].as_str(),
                    m.elements()[j].as_str(),
                    m.elements()[k].as_str(),
                ];
                let dep = m.dependent(t)?;
                let col = collinear(points[i], points[j], points[k])?;
                if dep != col {
                    let how = if dep {
                        "dependent but images not collinear"
                    } else {
                        "independent but images collinear"
                    };
                    return Ok(CheckReport::fail(format!(
                        "triple {},{},{}: {how}",
                        t[0], t[1], t[2]
                    )));
                }
            }
        }
    }
    Ok(CheckReport::pass())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::Field;

    fn set(names: &[&str]) -> BTreeSet<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    fn names(list: &[&str]) -> Vec<String> {
        list.iter().map(|s| s.to_string()).collect()
    }

    /// Four elements, one 3-point line.
    fn quad() -> LineMatroid {
        LineMatroid::new(names(&["x", "y", "z", "w"]), vec![set(&["x", "y", "z"])]).unwrap()
    }

    #[test]
    fn valid_matroid_accepted() {
        let m = quad();
        assert!(m.validate().ok);
        assert_eq!(m.elements().len(), 4);
    }

    #[test]
    fn shared_pair_rejected() {
        let err = LineMatroid::new(
            names(&["a", "b", "c", "d", "e"]),
            vec![set(&["a", "b", "c"]), set(&["a", "b", "d"])],
        )
        .unwrap_err();
        match err {
            Error::InvalidMatroid(d) => assert!(d.contains("share two elements"), "{d}"),
            other => panic!("wrong error: {other}"),
        }
    }

    #[test]
    fn rank_two_rejected() {
        let err =
            LineMatroid::new(names(&["a", "b", "c"]), vec![set(&["a", "b", "c"])]).unwrap_err();
        match err {
            Error::InvalidMatroid(d) => assert!(d.contains("rank < 3"), "{d}"),
            other => panic!("wrong error: {other}"),
        }
    }

    #[test]
    fn duplicate_flat_rejected() {
        let err = LineMatroid::new(
            names(&["a", "b", "c", "d"]),
            vec![set(&["a", "b", "c"]), set(&["a", "b", "c"])],
        )
        .unwrap_err();
        match err {
            Error::InvalidMatroid(d) => assert!(d.contains("duplicate flat"), "{d}"),
            other => panic!("wrong error: {other}"),
        }
    }

    #[test]
    fn bad_names_rejected() {
        let err = LineMatroid::new(names(&["a", "a", "b"]), vec![]).unwrap_err();
        match err {
            Error::InvalidMatroid(d) => assert!(d.contains("duplicate element"), "{d}"),
            other => panic!("wrong error: {other}"),
        }
        let err = LineMatroid::new(names(&["a", "b", "c", "d"]), vec![set(&["a", "b", "q"])])
            .unwrap_err();
        match err {
            Error::InvalidMatroid(d) => assert!(d.contains("unknown element"), "{d}"),
            other => panic!("wrong error: {other}"),
        }
    }

    #[test]
    fn stored_pair_flat_allowed() {
        let m = LineMatroid::new(
            names(&["a", "b", "c", "d"]),
            vec![set(&["a", "b"]), set(&["a", "c", "d"])],
        )
        .unwrap();
        assert!(m.validate().ok);
        // A pair never makes any triple dependent.
        assert!(!m.dependent(["a", "b", "c"]).unwrap());
    }

    #[test]
    fn dependence() {
        let m = quad();
        assert!(m.dependent(["x", "y", "z"]).unwrap());
        assert!(m.dependent(["z", "x", "y"]).unwrap());
        assert!(!m.dependent(["x", "y", "w"]).unwrap());
        assert!(matches!(
            m.dependent(["x", "x", "y"]).unwrap_err(),
            Error::BadTriple(_)
        ));
        assert!(matches!(
            m.dependent(["x", "y", "nope"]).unwrap_err(),
            Error::BadTriple(_)
        ));
    }

    #[test]
    fn dependent_index_triples_match() {
        let m = LineMatroid::new(
            names(&["a", "b", "c", "d", "e"]),
            vec![set(&["a", "b", "c", "d"])],
        )
        .unwrap();
        // One 4-point line yields its four triples, all sorted.
        let got = m.dependent_index_triples();
        let expect: BTreeSet<[usize; 3]> = [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]
            .into_iter()
            .collect();
        assert_eq!(got, expect);
    }

    #[test]
    fn delete_drops_shrunk_flats_only() {
        let m = LineMatroid::new(
            names(&["a", "b", "c", "d", "e"]),
            vec![
                set(&["a", "b", "c"]),
                set(&["c", "d", "e"]),
                set(&["a", "d"]),
            ],
        )
        .unwrap();
        let d = m.delete_element("b").unwrap();
        assert_eq!(d.elements(), &names(&["a", "c", "d", "e"]));
        // {a,b,c} shrank to a pair and vanished; the stored pair {a,d} stays.
        assert_eq!(d.flats(), &[set(&["c", "d", "e"]), set(&["a", "d"])]);
        assert!(d.validate().ok);
        assert_eq!(
            m.delete_element("q").unwrap_err(),
            Error::NoSuchElement("q".into())
        );
    }

    #[test]
    fn restrict_identity() {
        let m = quad();
        let all: BTreeSet<String> = m.elements().iter().cloned().collect();
        assert_eq!(m.restrict(&all).unwrap(), m);
        let m2 = LineMatroid::new(
            names(&["a", "b", "c", "d"]),
            vec![set(&["a", "b"]), set(&["b", "c", "d"])],
        )
        .unwrap();
        let all2: BTreeSet<String> = m2.elements().iter().cloned().collect();
        assert_eq!(m2.restrict(&all2).unwrap(), m2);
    }

    #[test]
    fn restrict_drops_shrunk_flats() {
        let m = LineMatroid::new(
            names(&["a", "b", "c", "d", "e"]),
            vec![set(&["a", "b", "c"]), set(&["c", "d", "e"])],
        )
        .unwrap();
        let r = m.restrict(&set(&["a", "b", "c", "d"])).unwrap();
        assert_eq!(r.elements(), &names(&["a", "b", "c", "d"]));
        // {c,d,e} cut down to the pair {c,d}: trivial, dropped.
        assert_eq!(r.flats(), &[set(&["a", "b", "c"])]);
        assert_eq!(
            m.restrict(&set(&["a", "b"])).unwrap_err(),
            Error::RestrictionBelowRank(2)
        );
        assert_eq!(
            m.restrict(&set(&["a", "b", "zz"])).unwrap_err(),
            Error::NoSuchElement("zz".into())
        );
    }

    #[test]
    fn rename_roundtrip() {
        let m = quad();
        let fwd: BTreeMap<String, String> = [("x", "p"), ("y", "q"), ("z", "r"), ("w", "s")]
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect();
        let back: BTreeMap<String, String> =
            fwd.iter().map(|(a, b)| (b.clone(), a.clone())).collect();
        let renamed = m.rename(&fwd).unwrap();
        assert!(renamed.dependent(["p", "q", "r"]).unwrap());
        assert_eq!(renamed.rename(&back).unwrap(), m);
        let squash: BTreeMap<String, String> = [("x", "p"), ("y", "p"), ("z", "r"), ("w", "s")]
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect();
        assert!(matches!(
            m.rename(&squash).unwrap_err(),
            Error::NonInjective(_)
        ));
    }

    #[test]
    fn json_roundtrip_sorted() {
        let m =
            LineMatroid::new(names(&["b", "a", "d", "c"]), vec![set(&["d", "b", "a"])]).unwrap();
        let text = m.to_json();
        let parsed = LineMatroid::from_json(&text).unwrap();
        assert_eq!(parsed.elements(), &names(&["a", "b", "c", "d"]));
        assert_eq!(parsed.flats(), &[set(&["a", "b", "d"])]);
        assert_eq!(parsed.to_json(), text);
        assert!(matches!(
            LineMatroid::from_json("{*not json*}").unwrap_err(),
            Error::Parse(_)
        ));
        assert!(matches!(
            LineMatroid::from_json("{\"elements\":[\"a\",\"a\",\"b\"],\"flats\":[]}").unwrap_err(),
            Error::InvalidMatroid(_)
        ));
    }

    fn pt(f: &Field, x: u64, y: u64, z: u64) -> ProjPoint {
        ProjPoint::new(f.from_int(x), f.from_int(y), f.from_int(z)).unwrap()
    }

    #[test]
    fn embedding_check() {
        let f = Field::new(3, 1).unwrap();
        let m = quad();
        let good: BTreeMap<String, ProjPoint> = [
            ("x".to_string(), pt(&f, 1, 0, 0)),
            ("y".to_string(), pt(&f, 0, 1, 0)),
            ("z".to_string(), pt(&f, 1, 1, 0)),
            ("w".to_string(), pt(&f, 0, 0, 1)),
        ]
        .into_iter()
        .collect();
        assert!(is_embedding(&m, &good).unwrap().ok);

        let mut squashed = good.clone();
        squashed.insert("w".to_string(), pt(&f, 1, 0, 0));
        let r = is_embedding(&m, &squashed).unwrap();
        assert!(!r.ok);
        assert!(r.diagnostic.unwrap().contains("not injective"));

        let mut shifted = good.clone();
        shifted.insert("w".to_string(), pt(&f, 2, 1, 0));
        let r = is_embedding(&m, &shifted).unwrap();
        assert!(!r.ok);
        assert!(r
            .diagnostic
            .unwrap()
            .contains("independent but images collinear"));

        let mut partial = good;
        partial.remove("w");
        assert!(is_embedding(&m, &partial).is_err());
    }
}
