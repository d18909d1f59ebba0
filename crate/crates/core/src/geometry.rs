//! Points of PG(2, 2^n) and a brute-force arc test.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::func::VecFunc;

/// Largest `n` for the cubic triple scan in [`is_hyperoval`].
pub const ARC_TEST_MAX_N: u32 = 5;

pub(crate) fn arc_cap_error(n: u32) -> Error {
    Error::ResourceCap {
        what: "hyperoval arc test",
        n,
        max: ARC_TEST_MAX_N,
        hint: "use the algebraic checks instead",
    }
}

/// A projective point, scaled so its first nonzero coordinate is 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProjPoint {
    coords: [Elem; 3],
}

impl ProjPoint {
    pub fn new(field: &Field, x: Elem, y: Elem, z: Elem) -> Result<ProjPoint> {
        let coords = [x, y, z];
        let lead = *coords.iter().find(|&&c| c != 0).ok_or(Error::ZeroPoint)?;
        let scale = field.inv(lead)?;
        Ok(ProjPoint {
            coords: coords.map(|c| field.mul(scale, c)),
        })
    }

    pub fn coords(&self) -> [Elem; 3] {
        self.coords
    }
}

/// Whether three distinct points lie on a common line (zero determinant).
pub fn collinear(field: &Field, p1: &ProjPoint, p2: &ProjPoint, p3: &ProjPoint) -> Result<bool> {
    if p1 == p2 || p1 == p3 || p2 == p3 {
        return Err(Error::DuplicatePoints);
    }
    Ok(determinant(field, p1.coords, p2.coords, p3.coords) == 0)
}

// characteristic 2: the cofactor signs vanish
fn determinant(field: &Field, a: [Elem; 3], b: [Elem; 3], c: [Elem; 3]) -> Elem {
    let minor = |i: usize, j: usize| field.mul(b[i], c[j]) ^ field.mul(b[j], c[i]);
    field.mul(a[0], minor(1, 2)) ^ field.mul(a[1], minor(0, 2)) ^ field.mul(a[2], minor(0, 1))
}

/// `{(1, t, G(t))} ∪ {(0, 1, 0), (0, 0, 1)}`.
pub fn hyperoval_points(g: &VecFunc) -> BTreeSet<ProjPoint> {
    let field = g.field();
    let mut points: BTreeSet<ProjPoint> = field
        .elements()
        .map(|t| ProjPoint::new(field, 1, t, g.eval(t)).expect("x = 1"))
        .collect();
    points.insert(ProjPoint::new(field, 0, 1, 0).expect("nonzero"));
    points.insert(ProjPoint::new(field, 0, 0, 1).expect("nonzero"));
    points
}

/// `2^n + 2` points with no three collinear.
pub fn is_hyperoval(field: &Field, points: &BTreeSet<ProjPoint>) -> Result<bool> {
    if field.n() > ARC_TEST_MAX_N {
        return Err(arc_cap_error(field.n()));
    }
    if points.len() != field.order() + 2 {
        return Ok(false);
    }
    let pts: Vec<_> = points.iter().collect();
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            for k in j + 1..pts.len() {
                if collinear(field, pts[i], pts[j], pts[k])? {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}
