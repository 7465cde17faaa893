//! The projective plane over GF(q): canonical points and lines, incidence,
//! collinearity, and joining lines.

use std::fmt;

use crate::error::{Error, Result};
use crate::gf::{Field, FieldElement};

/// Largest field order for which plane enumeration is permitted.
pub const MAX_PLANE_ORDER: u64 = 32;

/// Normalize a nonzero coordinate triple so its first nonzero entry is 1.
/// Every projective class then has exactly one stored representative.
fn normalize(mut v: [FieldElement; 3]) -> Result<[FieldElement; 3]> {
    if v[1].field() != v[0].field() || v[2].field() != v[0].field() {
        return Err(Error::FieldMismatch);
    }
    let lead = v
        .iter()
        .position(|c| !c.is_zero())
        .ok_or(Error::ZeroTriple)?;
    let scale = v[lead].inv().expect("leading coordinate is nonzero");
    for c in v.iter_mut() {
        *c = c.mul(&scale).expect("same field");
    }
    Ok(v)
}

fn render_triple(v: &[FieldElement; 3], open: char, close: char) -> String {
    format!("{open}{},{},{}{close}", v[0], v[1], v[2])
}

/// A point of the projective plane, stored in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProjPoint {
    coords: [FieldElement; 3],
}

impl ProjPoint {
    /// Canonicalize (x, y, z); any nonzero scalar multiple yields the same point.
    pub fn new(x: FieldElement, y: FieldElement, z: FieldElement) -> Result<ProjPoint> {
        Ok(ProjPoint {
            coords: normalize([x, y, z])?,
        })
    }

    pub fn coords(&self) -> &[FieldElement; 3] {
        &self.coords
    }

    pub fn field(&self) -> &Field {
        self.coords[0].field()
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_triple(&self.coords, '[', ']'))
    }
}

/// A line ax + by + cz = 0, coefficients stored in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProjLine {
    coeffs: [FieldElement; 3],
}

impl ProjLine {
    pub fn new(a: FieldElement, b: FieldElement, c: FieldElement) -> Result<ProjLine> {
        Ok(ProjLine {
            coeffs: normalize([a, b, c])?,
        })
    }

    pub fn coeffs(&self) -> &[FieldElement; 3] {
        &self.coeffs
    }

    pub fn field(&self) -> &Field {
        self.coeffs[0].field()
    }
}

impl fmt::Display for ProjLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_triple(&self.coeffs, '<', '>'))
    }
}

/// All q^2 + q + 1 points and lines of the plane over `field`, in a fixed
/// deterministic order: the affine chart z = 1 first (lexicographic in
/// (x, y)), then the z = 0, y = 1 batch, then [1,0,0]; lines follow the same
/// scheme on their coefficient triples.
pub fn enumerate_plane(field: &Field) -> Result<(Vec<ProjPoint>, Vec<ProjLine>)> {
    let q = field.order();
    if q > MAX_PLANE_ORDER {
        return Err(Error::PlaneTooLarge(q));
    }
    let elems: Vec<FieldElement> = field.elements().collect();
    let one = field.one();
    let zero = field.zero();
    let mut triples: Vec<[FieldElement; 3]> = Vec::with_capacity((q * q + q + 1) as usize);
    for x in &elems {
        for y in &elems {
            triples.push([x.clone(), y.clone(), one.clone()]);
        }
    }
    for x in &elems {
        triples.push([x.clone(), one.clone(), zero.clone()]);
    }
    triples.push([one.clone(), zero.clone(), zero.clone()]);
    let points = triples
        .iter()
        .map(|t| ProjPoint::new(t[0].clone(), t[1].clone(), t[2].clone()))
        .collect::<Result<Vec<_>>>()?;
    let lines = triples
        .into_iter()
        .map(|t| {
            let [a, b, c] = t;
            ProjLine::new(a, b, c)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((points, lines))
}

/// True iff the 3x3 determinant of the coordinate rows vanishes.
pub fn collinear(p1: &ProjPoint, p2: &ProjPoint, p3: &ProjPoint) -> Result<bool> {
    if p1.field() != p2.field() || p1.field() != p3.field() {
        return Err(Error::FieldMismatch);
    }
    Ok(det3(p1.coords(), p2.coords(), p3.coords())?.is_zero())
}

fn det3(
    r1: &[FieldElement; 3],
    r2: &[FieldElement; 3],
    r3: &[FieldElement; 3],
) -> Result<FieldElement> {
    let m = |a: &FieldElement, b: &FieldElement| a.mul(b);
    // Cofactor expansion along the first row.
    let c1 = m(&r2[1], &r3[2])?.sub(&m(&r2[2], &r3[1])?)?;
    let c2 = m(&r2[0], &r3[2])?.sub(&m(&r2[2], &r3[0])?)?;
    let c3 = m(&r2[0], &r3[1])?.sub(&m(&r2[1], &r3[0])?)?;
    m(&r1[0], &c1)?.sub(&m(&r1[1], &c2)?)?.add(&m(&r1[2], &c3)?)
}

/// a x + b y + c z = 0 at the given point.
pub fn incident(line: &ProjLine, point: &ProjPoint) -> Result<bool> {
    if line.field() != point.field() {
        return Err(Error::FieldMismatch);
    }
    let l = line.coeffs();
    let p = point.coords();
    let s = l[0]
        .mul(&p[0])?
        .add(&l[1].mul(&p[1])?)?
        .add(&l[2].mul(&p[2])?)?;
    Ok(s.is_zero())
}

/// The unique line through two distinct points: the cross product of their
/// coordinate triples, normalized.
pub fn line_through(p1: &ProjPoint, p2: &ProjPoint) -> Result<ProjLine> {
    if p1.field() != p2.field() {
        return Err(Error::FieldMismatch);
    }
    if p1 == p2 {
        return Err(Error::PointsCoincide);
    }
    let a = p1.coords();
    let b = p2.coords();
    let cross =
        |i: usize, j: usize| -> Result<FieldElement> { a[i].mul(&b[j])?.sub(&a[j].mul(&b[i])?) };
    ProjLine::new(cross(1, 2)?, cross(2, 0)?, cross(0, 1)?)
}
