//! Order retracts: pairs of positive maps `T: G -> E`, `S: E -> G` with
//! `S T = id_G`. Vertex figures and facets of a polyhedral cone are retracts,
//! and so are rays.

use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::cone::{dual, Cone};
use crate::error::{Error, Result};
use crate::lp::{solve_lp, LinearProgram, LpOutcome};
use crate::ratlin::{int, RMat, RVec, Rat};
use crate::sep::is_positive_map;
use crate::tensorcone::{min_equals_max, MinMaxVerdict, TensorElement};

/// `t` embeds `sub` into `ambient`; `s` projects `ambient` onto `sub`.
#[derive(Clone, Debug)]
pub struct Retraction {
    pub ambient: Cone,
    pub sub: Cone,
    pub t: RMat,
    pub s: RMat,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", content = "reason", rename_all = "snake_case")]
pub enum RetractionCheck {
    Valid,
    Invalid(String),
}

impl RetractionCheck {
    pub fn is_valid(&self) -> bool {
        *self == RetractionCheck::Valid
    }
}

impl Retraction {
    pub fn identity(e: &Cone) -> Self {
        Retraction {
            ambient: e.clone(),
            sub: e.clone(),
            t: RMat::identity(e.dim()),
            s: RMat::identity(e.dim()),
        }
    }

    /// `self` retracts `E` onto `G`, `inner` retracts `G` onto `H`; the
    /// composite retracts `E` onto `H`.
    pub fn compose(&self, inner: &Retraction) -> Result<Retraction> {
        Ok(Retraction {
            ambient: self.ambient.clone(),
            sub: inner.sub.clone(),
            t: self.t.mul(&inner.t)?,
            s: inner.s.mul(&self.s)?,
        })
    }

    /// `(S^T, T^T)` retracts `dual(ambient)` onto `dual(sub)`.
    pub fn dualize(&self) -> Retraction {
        Retraction {
            ambient: dual(&self.ambient),
            sub: dual(&self.sub),
            t: self.s.transpose(),
            s: self.t.transpose(),
        }
    }
}

/// `S T = id`, both maps positive, and the same for the dual pair.
pub fn verify_retraction(r: &Retraction) -> RetractionCheck {
    let (n, m) = (r.sub.dim(), r.ambient.dim());
    if r.t.rows() != m || r.t.cols() != n || r.s.rows() != n || r.s.cols() != m {
        return RetractionCheck::Invalid("map shapes do not match the cones".into());
    }
    match r.s.mul(&r.t) {
        Ok(p) if p.is_identity() => {}
        _ => return RetractionCheck::Invalid("S T is not the identity".into()),
    }
    if !is_positive_map(&r.t, &r.sub, &r.ambient).unwrap_or(false) {
        return RetractionCheck::Invalid("T is not positive".into());
    }
    if !is_positive_map(&r.s, &r.ambient, &r.sub).unwrap_or(false) {
        return RetractionCheck::Invalid("S is not positive".into());
    }
    let (da, ds) = (dual(&r.ambient), dual(&r.sub));
    if !is_positive_map(&r.s.transpose(), &ds, &da).unwrap_or(false) {
        return RetractionCheck::Invalid("S^T is not positive on the dual cones".into());
    }
    if !is_positive_map(&r.t.transpose(), &da, &ds).unwrap_or(false) {
        return RetractionCheck::Invalid("T^T is not positive on the dual cones".into());
    }
    RetractionCheck::Valid
}

fn require_proper_generating(e: &Cone) -> Result<()> {
    if e.is_proper() && e.is_generating() {
        Ok(())
    } else {
        Err(Error::NotProperGenerating)
    }
}

fn check_index(i: usize, len: usize) -> Result<()> {
    if i < len {
        Ok(())
    } else {
        Err(Error::IndexOutOfRange { index: i, len })
    }
}

/// Functional `phi0` with `phi0(x0) = -1` maximizing `min_{i != 0} phi0(x_i)`,
/// capped at 1. Variables: `phi0 = p - q`, margin `t`, surpluses, and the cap slack.
fn cutting_functional(rays: &[RVec], index: usize) -> Result<RVec> {
    let d = rays[0].dim();
    let others: Vec<&RVec> = rays
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != index)
        .map(|(_, r)| r)
        .collect();
    let k = others.len();
    let (t_col, sur0, cap) = (2 * d, 2 * d + 1, 2 * d + 1 + k);
    let nvars = cap + 1;
    let mut a = RMat::zeros(k + 2, nvars);
    let mut b = RVec::zeros(k + 2);
    for j in 0..d {
        a.set(0, j, rays[index][j].clone());
        a.set(0, d + j, -rays[index][j].clone());
    }
    b.set(0, int(-1));
    for (row, x) in others.iter().enumerate() {
        for j in 0..d {
            a.set(row + 1, j, x[j].clone());
            a.set(row + 1, d + j, -x[j].clone());
        }
        a.set(row + 1, t_col, int(-1));
        a.set(row + 1, sur0 + row, int(-1));
    }
    a.set(k + 1, t_col, int(1));
    a.set(k + 1, cap, int(1));
    b.set(k + 1, int(1));
    let mut c = RVec::zeros(nvars);
    c.set(t_col, int(-1));
    match solve_lp(&LinearProgram::new(a, b, c)?) {
        LpOutcome::Optimal { point, .. } if point[t_col].is_positive() => {
            Ok((0..d).map(|j| &point[j] - &point[d + j]).collect())
        }
        _ => Err(Error::NoVertexFigureFunctional(index)),
    }
}

/// Rank factorization `P = T S` of an idempotent: `T` = pivot columns of
/// `P`, `S` = nonzero rows of `rref(P)`. Then `S T = id`.
fn split_idempotent(p: &RMat) -> (RMat, RMat) {
    let rr = p.rref();
    let t = p.select_cols(&rr.pivots);
    let s = rr.matrix.select_rows(&(0..rr.rank).collect::<Vec<_>>());
    (t, s)
}

/// Image of `e` under `s`, analyzed in its own coordinates.
fn image_cone(s: &RMat, e: &Cone) -> Result<Cone> {
    let gens = e
        .generators()
        .iter()
        .map(|g| s.mul_vec(g))
        .collect::<Result<Vec<_>>>()?;
    Cone::from_generators(s.rows(), gens)
}

/// Vertex figure at extremal ray `index`: the retract onto `ker(phi0)` with
/// projection `P y = y + phi0(y) x0`.
pub fn vertex_figure(e: &Cone, index: usize) -> Result<Retraction> {
    require_proper_generating(e)?;
    let rays = e.extremal_rays();
    check_index(index, rays.len())?;
    let phi0 = cutting_functional(rays, index)?;
    let p = RMat::identity(e.dim())
        .add(&RMat::outer(&rays[index], &phi0))
        .expect("dims");
    let (t, s) = split_idempotent(&p);
    let sub = image_cone(&s, e)?;
    Ok(Retraction {
        ambient: e.clone(),
        sub,
        t,
        s,
    })
}

/// Projection matrix `I + x0 phi0^T` of a vertex figure, for inspection.
pub fn vertex_figure_projection(r: &Retraction) -> RMat {
    r.t.mul(&r.s).expect("dims")
}

/// Facet retract: dualize the vertex figure of `dual(e)` at the facet.
pub fn facet_retract(e: &Cone, index: usize) -> Result<Retraction> {
    require_proper_generating(e)?;
    check_index(index, e.facets().len())?;
    let d = dual(e);
    debug_assert_eq!(d.extremal_rays(), e.facets());
    let vf = vertex_figure(&d, index)?;
    let t = vf.s.transpose();
    let s = vf.t.transpose();
    let sub = image_cone(&s, e)?;
    Ok(Retraction {
        ambient: e.clone(),
        sub,
        t,
        s,
    })
}

/// Rank-one retract onto the ray `x0`: `S = f / f(x0)` for a strictly
/// positive functional `f`.
pub fn ray_retract(e: &Cone, index: usize) -> Result<Retraction> {
    if !e.is_proper() {
        return Err(Error::NotProper);
    }
    let rays = e.extremal_rays();
    check_index(index, rays.len())?;
    let x0 = &rays[index];
    let f = e.strictly_positive_functional()?;
    let fx = f.dot(x0);
    let t = RMat::from_cols(e.dim(), std::slice::from_ref(x0))?;
    let s = RMat::from_rows(e.dim(), &[f.scale(&(Rat::one() / fx))])?;
    Ok(Retraction {
        ambient: e.clone(),
        sub: Cone::orthant(1),
        t,
        s,
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TransferReport {
    pub sub: MinMaxVerdict,
    /// Sub-pair witness pushed through `T_G (x) T_H`, separator pulled back
    /// through `S_G (x) S_H`.
    pub lifted: Option<MinMaxVerdict>,
    /// Ambient verdict, computed directly only when the sub pair is equal.
    pub ambient: Option<MinMaxVerdict>,
    pub implication_holds: bool,
    pub note: String,
}

/// If the retracts already differ, so do the ambient cones; the lifted
/// certificate proves it.
pub fn retract_transfer(
    g: &Cone,
    h: &Cone,
    rg: &Retraction,
    rh: &Retraction,
) -> Result<TransferReport> {
    for (r, c, name) in [(rg, g, "G"), (rh, h, "H")] {
        if let RetractionCheck::Invalid(why) = verify_retraction(r) {
            return Err(Error::InvalidRetraction(format!("{name}: {why}")));
        }
        if !crate::cone::cone_equal(&r.ambient, c)? {
            return Err(Error::InvalidRetraction(format!(
                "{name}: retraction has a different ambient cone"
            )));
        }
    }
    let sub = min_equals_max(&rg.sub, &rh.sub);
    match &sub {
        MinMaxVerdict::Differs { witness, separator } => {
            let w = rg.t.mul(&witness.matrix)?.mul(&rh.t.transpose())?;
            let phi = rg.s.transpose().mul(&separator.matrix)?.mul(&rh.s)?;
            let lifted = MinMaxVerdict::Differs {
                witness: TensorElement::new(w),
                separator: TensorElement::new(phi),
            };
            let ok = lifted.verify(g, h);
            Ok(TransferReport {
                sub,
                lifted: Some(lifted),
                ambient: None,
                implication_holds: ok,
                note: "sub pair differs; lifted certificate shows the ambient pair differs".into(),
            })
        }
        MinMaxVerdict::Equal => {
            let ambient = min_equals_max(g, h);
            let note = if ambient.is_equal() {
                "both pairs are equal; the implication is vacuous"
            } else {
                "sub pair equal but ambient pair differs; the implication only runs from retract to ambient"
            };
            Ok(TransferReport {
                sub,
                lifted: None,
                ambient: Some(ambient),
                implication_holds: true,
                note: note.into(),
            })
        }
    }
}

/// Search for a non-simplex 3-dimensional retract by descending through
/// facets and vertex figures (facets first, lowest index first). Only
/// non-simplex children are entered, since retracts of simplex cones are
/// simplex cones.
pub fn three_dim_retract_scan(e: &Cone) -> Result<Option<Retraction>> {
    require_proper_generating(e)?;
    if e.is_simplex() {
        return Ok(None);
    }
    if e.dim() == 3 {
        return Ok(Some(Retraction::identity(e)));
    }
    let children = (0..e.facets().len())
        .map(|i| facet_retract(e, i))
        .chain((0..e.extremal_rays().len()).map(|i| vertex_figure(e, i)));
    for child in children {
        let child = child?;
        if child.sub.is_simplex() {
            continue;
        }
        if let Some(deeper) = three_dim_retract_scan(&child.sub)? {
            return Ok(Some(child.compose(&deeper)?));
        }
    }
    Ok(None)
}

/// Every facet and vertex figure of `e`, in scan order.
pub fn all_facet_and_vertex_retracts(e: &Cone) -> Result<Vec<Retraction>> {
    let mut out = Vec::new();
    for i in 0..e.facets().len() {
        out.push(facet_retract(e, i)?);
    }
    for i in 0..e.extremal_rays().len() {
        out.push(vertex_figure(e, i)?);
    }
    Ok(out)
}

/// `P^2 = P` and `ker P = span(x0)`.
pub fn is_vertex_projection(p: &RMat, x0: &RVec) -> bool {
    let idem = p.mul(p).map_or(false, |q| q == *p);
    let kernel = p.kernel_basis();
    idem && kernel.len() == 1
        && {
            let k = &kernel[0];
            RMat::from_rows(x0.dim(), &[k.clone(), x0.clone()]).map_or(false, |m| m.rank() == 1)
        }
        && p.mul_vec(x0).map_or(false, |v| v.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{cube_cone, square_cone, square_pyramid_cone};
    use crate::ratlin::rat;
    use num_traits::Zero;

    #[test]
    fn square_vertex_figure() {
        let s = square_cone().cone;
        let idx = s
            .extremal_rays()
            .iter()
            .position(|r| *r == RVec::from_ints(&[1, 1, 1]))
            .unwrap();
        let r = vertex_figure(&s, idx).unwrap();
        assert_eq!(r.sub.dim(), 2);
        assert!(verify_retraction(&r).is_valid());
        let p = vertex_figure_projection(&r);
        assert!(is_vertex_projection(&p, &s.extremal_rays()[idx]));
        for x in s.extremal_rays() {
            assert!(s.contains(&p.mul_vec(x).unwrap()));
        }
    }

    #[test]
    fn orthant_vertex_figure() {
        let o = Cone::orthant(3);
        let r = vertex_figure(&o, 0).unwrap();
        assert!(verify_retraction(&r).is_valid());
        assert!(r.sub.is_simplex());
        assert_eq!(r.sub.dim(), 2);
    }

    #[test]
    fn guarded_inputs() {
        let ray = Cone::from_generators(3, vec![RVec::from_ints(&[1, 0, 0])]).unwrap();
        assert!(matches!(
            vertex_figure(&ray, 0),
            Err(Error::NotProperGenerating)
        ));
        assert!(matches!(
            vertex_figure(&Cone::orthant(3), 3),
            Err(Error::IndexOutOfRange { .. })
        ));
        let half = Cone::from_inequalities(2, vec![RVec::from_ints(&[0, 1])]).unwrap();
        assert!(matches!(ray_retract(&half, 0), Err(Error::NotProper)));
    }

    #[test]
    fn facet_retracts() {
        let s = square_cone().cone;
        for i in 0..4 {
            let r = facet_retract(&s, i).unwrap();
            assert_eq!(r.sub.dim(), 2);
            assert!(verify_retraction(&r).is_valid());
            // the embedding lands in the facet's span
            for col in r.t.col_vecs() {
                assert!(s.facets()[i].dot(&col).is_zero());
            }
        }
        let o = Cone::orthant(3);
        let r = facet_retract(&o, 0).unwrap();
        assert!(verify_retraction(&r).is_valid());
        assert!(r.sub.is_simplex());
        let hex = crate::lorentz::inner_polyhedral_approx(6).unwrap().cone;
        for i in 0..6 {
            assert!(verify_retraction(&facet_retract(&hex, i).unwrap()).is_valid());
        }
    }

    #[test]
    fn ray_retracts() {
        let s = square_cone().cone;
        for i in 0..4 {
            assert!(verify_retraction(&ray_retract(&s, i).unwrap()).is_valid());
        }
        let r = ray_retract(&Cone::orthant(1), 0).unwrap();
        assert!(r.t.is_identity() && r.s.is_identity());
    }

    #[test]
    fn corrupted_retraction_fails() {
        let s = square_cone().cone;
        let mut r = facet_retract(&s, 0).unwrap();
        r.s.set(0, 0, &r.s.get(0, 0).clone() + rat(1, 1));
        assert!(!verify_retraction(&r).is_valid());
    }

    #[test]
    fn dual_and_composite_retractions() {
        let cube = cube_cone();
        let f = facet_retract(&cube, 0).unwrap();
        assert!(verify_retraction(&f).is_valid());
        assert!(verify_retraction(&f.dualize()).is_valid());
        let v = vertex_figure(&f.sub, 0).unwrap();
        let c = f.compose(&v).unwrap();
        assert!(verify_retraction(&c).is_valid());
    }

    #[test]
    fn scans() {
        assert!(three_dim_retract_scan(&Cone::orthant(5)).unwrap().is_none());
        let s = square_cone().cone;
        let r = three_dim_retract_scan(&s).unwrap().unwrap();
        assert!(r.t.is_identity());
        for c in [cube_cone(), square_pyramid_cone()] {
            let r = three_dim_retract_scan(&c).unwrap().unwrap();
            assert_eq!(r.sub.dim(), 3);
            assert!(!r.sub.is_simplex());
            assert!(verify_retraction(&r).is_valid());
        }
    }

    #[test]
    fn transfer() {
        let cube = cube_cone();
        let r = facet_retract(&cube, 0).unwrap();
        let rep = retract_transfer(&cube, &cube, &r, &r).unwrap();
        assert!(!rep.sub.is_equal());
        assert!(rep.implication_holds);
        assert!(rep.lifted.unwrap().verify(&cube, &cube));

        let o = Cone::orthant(3);
        let ro = facet_retract(&o, 0).unwrap();
        let rep = retract_transfer(&o, &o, &ro, &ro).unwrap();
        assert!(rep.sub.is_equal() && rep.ambient.unwrap().is_equal());

        let s = square_cone().cone;
        let rep = retract_transfer(
            &s,
            &s,
            &ray_retract(&s, 0).unwrap(),
            &Retraction::identity(&s),
        )
        .unwrap();
        assert!(rep.sub.is_equal());
        assert!(!rep.ambient.unwrap().is_equal());
        assert!(rep.note.contains("only runs"));
    }
}
