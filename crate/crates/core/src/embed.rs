//! Explicit embeddings of the group family into finite projective planes,
//! verification of candidate embeddings, size obstructions, and a numerical
//! complex-realizability check.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::families::{build_group_matroid, GroupSpec};
use crate::gf::{is_prime, Field, FieldElement};
use crate::matroid::{self, CheckReport, LineMatroid};
use crate::projplane::ProjPoint;

pub type ElementMap = BTreeMap<String, ProjPoint>;

pub const DEFAULT_TOL_ZERO: f64 = 1e-9;
pub const DEFAULT_TOL_NONZERO: f64 = 1e-6;

#[derive(Debug, Clone)]
pub struct Embedding {
    pub matroid: LineMatroid,
    pub map: ElementMap,
    pub field: Field,
}

fn doubled_cyclic(m: u64) -> Result<(LineMatroid, Vec<String>)> {
    let group = GroupSpec::new(vec![m])?;
    let g0 = group.zero();
    let g1 = group.parse_element("1")?;
    let matroid = build_group_matroid(&group, &g0, &g1)?;
    let order = matroid.elements().to_vec();
    Ok((matroid, order))
}

/// The straight-line embedding of M(Z_p, 0, 1) into the plane of order p:
/// a_i goes to [0,i,1], b_i to [1,i,1], c_0 to [1,0,0], c_1 to [1,1,0].
pub fn psi_prime(p: u64) -> Result<Embedding> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p < 3 {
        return Err(Error::PrimeTooSmall(p));
    }
    let field = Field::new(p, 1)?;
    let (matroid, order) = doubled_cyclic(p)?;
    let n = p as usize;
    let mut map = ElementMap::new();
    for (pos, name) in order.iter().enumerate() {
        let point = if pos < n {
            let i = pos as u64;
            ProjPoint::new(field.zero(), field.from_int(i), field.one())?
        } else if pos < 2 * n {
            let i = (pos - n) as u64;
            ProjPoint::new(field.one(), field.from_int(i), field.one())?
        } else if pos == 2 * n {
            ProjPoint::new(field.one(), field.zero(), field.zero())?
        } else {
            ProjPoint::new(field.one(), field.one(), field.zero())?
        };
        map.insert(name.clone(), point);
    }
    Ok(Embedding {
        matroid,
        map,
        field,
    })
}

/// The embedding of M(Z_m, 0, 1) into the plane of order p^t through the
/// order-m subgroup of the multiplicative group: with phi(i) = g^i for a
/// fixed element g of order m, a_i goes to [phi(i),0,1], b_i to
/// [0,-phi(i),1], c_0 to [1,1,0] and c_1 to [1,phi(1),0].
pub fn psi_subgroup(m: u64, p: u64, t: usize) -> Result<Embedding> {
    if m < 3 {
        return Err(Error::NOutOfRange(m as usize));
    }
    let field = Field::new(p, t)?;
    let q = field.order();
    if (q - 1) % m != 0 {
        return Err(Error::NoSuchSubgroup { m, q });
    }
    let g = field.element_of_order(m)?;
    let (matroid, order) = doubled_cyclic(m)?;
    let n = m as usize;
    let phi = |i: usize| -> FieldElement { g.pow(i as u64) };
    let mut map = ElementMap::new();
    for (pos, name) in order.iter().enumerate() {
        let point = if pos < n {
            ProjPoint::new(phi(pos), field.zero(), field.one())?
        } else if pos < 2 * n {
            ProjPoint::new(field.zero(), phi(pos - n).neg(), field.one())?
        } else if pos == 2 * n {
            ProjPoint::new(field.one(), field.one(), field.zero())?
        } else {
            ProjPoint::new(field.one(), phi(1), field.zero())?
        };
        map.insert(name.clone(), point);
    }
    Ok(Embedding {
        matroid,
        map,
        field,
    })
}

/// True with no diagnostic exactly when the image realizes M inside its
/// plane: injective, and collinearity matches dependence on every triple.
pub fn verify_embedding(m: &LineMatroid, img: &ElementMap) -> Result<CheckReport> {
    matroid::is_embedding(m, img)
}

/// Cheap necessary conditions for embeddability into a plane of order q.
/// A reason means no embedding exists; None proves nothing.
pub fn obstruction(m: &LineMatroid, q: u64) -> Result<Option<String>> {
    if q < 2 {
        return Err(Error::PlaneOrderTooSmall(q));
    }
    let longest = m.flats().iter().map(|f| f.len()).max().unwrap_or(0) as u64;
    if longest > q + 1 {
        return Ok(Some(format!(
            "line too long: a flat has {longest} points, lines of a plane of order {q} have {}",
            q + 1
        )));
    }
    let size = m.elements().len() as u64;
    let points = q * q + q + 1;
    if size > points {
        return Ok(Some(format!(
            "ground set too large: {size} elements, a plane of order {q} has {points} points"
        )));
    }
    Ok(None)
}

fn unit_circle_rows(n: usize) -> Vec<[Complex64; 3]> {
    let phi = |i: usize| -> Complex64 {
        Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * i as f64 / n as f64)
    };
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let mut rows = Vec::with_capacity(2 * n + 2);
    for i in 0..n {
        rows.push([phi(i), zero, one]);
    }
    for i in 0..n {
        rows.push([zero, -phi(i), one]);
    }
    rows.push([one, one, zero]);
    rows.push([one, phi(1), zero]);
    rows
}

fn det3c(r0: &[Complex64; 3], r1: &[Complex64; 3], r2: &[Complex64; 3]) -> Complex64 {
    r0[0] * (r1[1] * r2[2] - r1[2] * r2[1]) - r0[1] * (r1[0] * r2[2] - r1[2] * r2[0])
        + r0[2] * (r1[0] * r2[1] - r1[1] * r2[0])
}

fn rows_realize(m: &LineMatroid, rows: &[[Complex64; 3]], tol_zero: f64, tol_nonzero: f64) -> bool {
    let unit: Vec<[Complex64; 3]> = rows
        .iter()
        .map(|r| {
            let norm = (r[0].norm_sqr() + r[1].norm_sqr() + r[2].norm_sqr()).sqrt();
            [r[0] / norm, r[1] / norm, r[2] / norm]
        })
        .collect();
    let dependent = m.dependent_index_triples();
    let n = unit.len();
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                let mag = det3c(&unit[i], &unit[j], &unit[k]).norm();
                let ok = if dependent.contains(&[i, j, k]) {
                    mag < tol_zero
                } else {
                    mag > tol_nonzero
                };
                if !ok {
                    return false;
                }
            }
        }
    }
    true
}

/// Numerical evidence that M(Z_n, 0, 1) is realizable over the complex
/// numbers: evaluates the subgroup map with phi(i) = exp(2 pi i sqrt(-1)/n)
/// and thresholds row-normalized determinant magnitudes.
pub fn complex_check(n: usize, tol_zero: f64, tol_nonzero: f64) -> Result<bool> {
    if !(3..=24).contains(&n) {
        return Err(Error::NOutOfRange(n));
    }
    if tol_zero >= tol_nonzero {
        return Err(Error::ToleranceOrder {
            tol_zero,
            tol_nonzero,
        });
    }
    let (matroid, _) = doubled_cyclic(n as u64)?;
    Ok(rows_realize(
        &matroid,
        &unit_circle_rows(n),
        tol_zero,
        tol_nonzero,
    ))
}
