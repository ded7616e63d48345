//! The Lorentz (second-order) cone `L^n = {x : x_n >= |(x_1, ..., x_{n-1})|}`.
//!
//! Membership is decided with the squared form `x_n^2 - x_1^2 - ... - x_{n-1}^2`,
//! so no square roots are ever taken. Positivity of linear maps on `L^n` is
//! only accepted for structured maps (form-preserving maps fixing `x_n`, and
//! coordinate paddings/selections), whose positivity follows algebraically.

use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::cone::{polygon_homogenization, PolygonCone};
use crate::error::{check_dim, Error, Result};
use crate::ratlin::{int, RMat, RVec, Rat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LorentzMembership {
    Interior,
    Boundary,
    Outside,
}

impl LorentzMembership {
    pub fn is_member(self) -> bool {
        self != LorentzMembership::Outside
    }
}

/// `x_n^2 - x_1^2 - ... - x_{n-1}^2`
pub fn squared_form(x: &RVec) -> Rat {
    let n = x.dim();
    let mut q = &x[n - 1] * &x[n - 1];
    for v in &x.entries()[..n - 1] {
        q -= v * v;
    }
    q
}

pub fn lorentz_membership(x: &RVec) -> LorentzMembership {
    if x.dim() == 0 {
        return LorentzMembership::Boundary;
    }
    let last = &x[x.dim() - 1];
    if last.is_negative() {
        return LorentzMembership::Outside;
    }
    let q = squared_form(x);
    if q.is_negative() {
        LorentzMembership::Outside
    } else if q.is_zero() {
        LorentzMembership::Boundary
    } else {
        LorentzMembership::Interior
    }
}

/// Boundary ray of `L^3` from the half-angle parameter `t`.
pub fn boundary_ray(t: &Rat) -> RVec {
    let d = Rat::one() + t * t;
    RVec::new(vec![int(2) * t / &d, (Rat::one() - t * t) / &d, Rat::one()])
}

/// `k` distinct boundary rays of `L^3` in counterclockwise order. The circle
/// is split into quadrants and each point is a rational rotation of a
/// half-angle point inside the first quadrant.
pub fn rational_boundary_rays(k: usize) -> Vec<RVec> {
    (0..k)
        .map(|j| {
            let p = Rat::new((4 * j).into(), k.into());
            let q = p.floor();
            let r = &p - &q;
            let d = Rat::one() + &r * &r;
            let (mut x, mut y) = ((Rat::one() - &r * &r) / &d, int(2) * &r / &d);
            let turns: i64 = q.to_integer().try_into().expect("small");
            for _ in 0..turns {
                (x, y) = (-y, x);
            }
            RVec::new(vec![x, y, Rat::one()])
        })
        .collect()
}

/// Homogenized regular-ish `k`-gon inscribed in `L^3`.
pub fn inner_polyhedral_approx(k: usize) -> Result<PolygonCone> {
    if k < 3 {
        return Err(Error::PreconditionViolated(format!("need k >= 3, got {k}")));
    }
    let pts: Vec<RVec> = rational_boundary_rays(k)
        .iter()
        .map(|r| RVec::new(vec![r[0].clone(), r[1].clone()]))
        .collect();
    polygon_homogenization(&pts)
}

/// A boundary ray of `L^3` strictly outside the `k`-gon approximation: it
/// lies on the arc between the first two vertices.
pub fn ray_outside_approx(k: usize) -> RVec {
    let p = Rat::new(4.into(), k.into());
    let r = if p < Rat::one() {
        p / int(2)
    } else {
        Rat::new(1.into(), 2.into())
    };
    let d = Rat::one() + &r * &r;
    RVec::new(vec![
        (Rat::one() - &r * &r) / &d,
        int(2) * &r / &d,
        Rat::one(),
    ])
}

/// `[[a, b], [b, c]] -> (a - c, 2b, a + c)`
pub fn s2_iso(a: &Rat, b: &Rat, c: &Rat) -> RVec {
    RVec::new(vec![a - c, int(2) * b, a + c])
}

pub fn s2_iso_inv(v: &RVec) -> Result<(Rat, Rat, Rat)> {
    check_dim("s2 isomorphism", 3, v.dim())?;
    let half = Rat::new(1.into(), 2.into());
    Ok((
        (&v[2] + &v[0]) * &half,
        &v[1] * &half,
        (&v[2] - &v[0]) * &half,
    ))
}

/// PSD test for a symmetric 2x2 matrix through trace and determinant.
pub fn is_psd_2x2(a: &Rat, b: &Rat, c: &Rat) -> bool {
    let tr = a + c;
    let det = a * c - b * b;
    !tr.is_negative() && !det.is_negative()
}

/// `diag(-1, -1, 1)`: positive on `L^3` with trace `-1`.
pub fn rotation_witness() -> RMat {
    RMat::diag(&[int(-1), int(-1), int(1)])
}

/// Structural positivity proof on `L^n`: `M^T J M = J` for `J = diag(-1, .., -1, 1)`
/// and `M` fixes `e_n` on both sides, so the squared form and `x_n` are preserved.
pub fn preserves_lorentz(m: &RMat) -> bool {
    let n = m.rows();
    if n == 0 || m.cols() != n {
        return false;
    }
    let mut j = vec![int(-1); n];
    j[n - 1] = int(1);
    let j = RMat::diag(&j);
    let form_kept = m
        .transpose()
        .mul(&j)
        .and_then(|x| x.mul(m))
        .map(|x| x == j)
        .unwrap_or(false);
    let e = RVec::unit(n, n - 1);
    form_kept && m.row(n - 1) == e && m.col(n - 1) == e
}

/// `T: L^n -> L^m` pads the first `n - 1` coordinates with zeros, and
/// `S: L^m -> L^n` keeps the first `n - 1` and the last coordinate.
pub fn lorentz_retract_maps(n: usize, m: usize) -> Result<(RMat, RMat)> {
    if n == 0 || n > m {
        return Err(Error::PreconditionViolated(format!(
            "need 1 <= n <= m, got n = {n}, m = {m}"
        )));
    }
    let mut t = RMat::zeros(m, n);
    let mut s = RMat::zeros(n, m);
    for i in 0..n - 1 {
        t.set(i, i, Rat::one());
        s.set(i, i, Rat::one());
    }
    t.set(m - 1, n - 1, Rat::one());
    s.set(n - 1, m - 1, Rat::one());
    Ok((t, s))
}

/// 0/1 matrix with at most one 1 per row and per column, sending the last
/// source coordinate to the last target coordinate. Such a map only drops or
/// pads the norm part, so it maps `L^cols` into `L^rows`.
pub fn is_lorentz_coordinate_map(m: &RMat) -> bool {
    let (r, c) = (m.rows(), m.cols());
    if r == 0 || c == 0 || !m.get(r - 1, c - 1).is_one() {
        return false;
    }
    let mut col_used = vec![false; c];
    for i in 0..r {
        let mut ones = 0;
        for (j, used) in col_used.iter_mut().enumerate() {
            let x = m.get(i, j);
            if x.is_zero() {
                continue;
            }
            if !x.is_one() || *used {
                return false;
            }
            *used = true;
            ones += 1;
        }
        if ones > 1 {
            return false;
        }
    }
    // last row reads only the last column
    (0..c - 1).all(|j| m.get(r - 1, j).is_zero()) && (0..r - 1).all(|i| m.get(i, c - 1).is_zero())
}

/// Random rational point of `R^n` with small numerators and denominators.
pub fn random_point<R: Rng>(rng: &mut R, n: usize) -> RVec {
    (0..n)
        .map(|_| Rat::new(rng.gen_range(-20..=20).into(), rng.gen_range(1..=7).into()))
        .collect()
}

/// Random member of `L^n`: a random point with the last coordinate raised
/// until the squared form is nonnegative.
pub fn random_member<R: Rng>(rng: &mut R, n: usize) -> RVec {
    let mut x = random_point(rng, n);
    let norm1: Rat = x.entries()[..n - 1].iter().map(|v| v.abs()).sum();
    let last = x[n - 1].abs() + norm1;
    x.set(n - 1, last);
    x
}
