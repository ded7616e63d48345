//! Projective (`min`) and injective (`max`) tensor products of polyhedral cones.
//!
//! An element of `E (x) F` is a `dim E x dim F` matrix `M`; it pairs with a
//! product functional by `<M, phi (x) psi> = phi^T M psi`. Flattening is row
//! major, so the vector of `x (x) y` is the Kronecker product of `x` and `y`.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::cone::{dual, Cone, ConeH, ConeV, PolygonCone};
use crate::error::{check_dim, Error, Result};
use crate::lp::{cone_membership, Membership};
use crate::ratlin::{RMat, RVec, Rat};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorElement {
    #[serde(rename = "dimE")]
    pub dim_e: usize,
    #[serde(rename = "dimF")]
    pub dim_f: usize,
    pub matrix: RMat,
}

impl TensorElement {
    pub fn new(matrix: RMat) -> Self {
        TensorElement {
            dim_e: matrix.rows(),
            dim_f: matrix.cols(),
            matrix,
        }
    }

    pub fn elementary(x: &RVec, y: &RVec) -> Self {
        Self::new(RMat::outer(x, y))
    }

    pub fn from_vec(dim_e: usize, dim_f: usize, v: &RVec) -> Result<Self> {
        Ok(Self::new(RMat::from_vec(dim_e, dim_f, v)?))
    }

    pub fn to_vec(&self) -> RVec {
        self.matrix.to_vec()
    }

    /// `<self, other>` where `other` is read as a functional on `E (x) F`.
    pub fn pairing(&self, other: &TensorElement) -> Result<Rat> {
        self.matrix.pairing(&other.matrix)
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    /// Image under the swap `E (x) F -> F (x) E`.
    pub fn swap(&self) -> Self {
        Self::new(self.matrix.transpose())
    }

    /// Fix the column count after deserializing an element with no rows.
    pub(crate) fn normalized(mut self) -> Result<Self> {
        if self.matrix.rows() == 0 {
            self.matrix = RMat::zeros(0, self.dim_f);
        }
        check_dim("tensor element rows", self.dim_e, self.matrix.rows())?;
        check_dim("tensor element columns", self.dim_f, self.matrix.cols())?;
        Ok(self)
    }
}

/// Flattened `x (x) y`.
pub fn tensor_vec(x: &RVec, y: &RVec) -> RVec {
    x.iter()
        .flat_map(|a| y.iter().map(move |b| a * b))
        .collect()
}

pub fn tensor_rank(u: &TensorElement) -> usize {
    u.rank()
}

fn products(xs: &[RVec], ys: &[RVec]) -> Vec<RVec> {
    xs.iter()
        .flat_map(|x| ys.iter().map(move |y| tensor_vec(x, y)))
        .collect()
}

/// Generators of `E (x)min F`: products of the minimal generators.
pub fn projective_generators(e: &Cone, f: &Cone) -> Vec<RVec> {
    products(&e.generators(), &f.generators())
}

/// Inequalities of `E (x)max F`: products of the minimal inequalities.
pub fn injective_inequalities(e: &Cone, f: &Cone) -> Vec<RVec> {
    products(&e.inequalities(), &f.inequalities())
}

pub fn projective_cone(e: &Cone, f: &Cone) -> Cone {
    Cone::from_v(ConeV {
        dim: e.dim() * f.dim(),
        generators: projective_generators(e, f),
    })
    .expect("consistent dimensions")
}

pub fn injective_cone(e: &Cone, f: &Cone) -> Cone {
    Cone::from_h(ConeH {
        dim: e.dim() * f.dim(),
        inequalities: injective_inequalities(e, f),
    })
    .expect("consistent dimensions")
}

/// Exact membership `u in E (x)max F`.
pub fn in_injective(u: &TensorElement, e: &Cone, f: &Cone) -> Result<bool> {
    check_dim("tensor rows", e.dim(), u.dim_e)?;
    check_dim("tensor columns", f.dim(), u.dim_f)?;
    for phi in e.inequalities() {
        for psi in f.inequalities() {
            if u.matrix.bilinear(&phi, &psi)?.is_negative() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum MinMaxVerdict {
    Equal,
    /// `witness` lies in `E (x)max F`; `separator` is nonnegative on every
    /// generator of `E (x)min F` and negative on `witness`.
    Differs {
        witness: TensorElement,
        separator: TensorElement,
    },
}

impl MinMaxVerdict {
    pub fn is_equal(&self) -> bool {
        matches!(self, MinMaxVerdict::Equal)
    }

    /// Re-check a `Differs` certificate from scratch. `Equal` is checked by
    /// [`facets_are_product_combinations`].
    pub fn verify(&self, e: &Cone, f: &Cone) -> bool {
        match self {
            MinMaxVerdict::Equal => facets_are_product_combinations(e, f, &projective_cone(e, f)),
            MinMaxVerdict::Differs { witness, separator } => {
                verify_differs(e, f, witness, separator).unwrap_or(false)
            }
        }
    }
}

fn verify_differs(e: &Cone, f: &Cone, w: &TensorElement, s: &TensorElement) -> Result<bool> {
    if !in_injective(w, e, f)? || !w.pairing(s)?.is_negative() {
        return Ok(false);
    }
    for x in e.generators() {
        for y in f.generators() {
            if s.matrix.bilinear(&x, &y)?.is_negative() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Every facet of `min_cone` is a nonnegative combination of product
/// functionals, i.e. `E (x)max F` is contained in `min_cone`.
fn facets_are_product_combinations(e: &Cone, f: &Cone, min_cone: &Cone) -> bool {
    let dual_gens = injective_inequalities(e, f);
    min_cone.inequalities().iter().all(|phi| {
        cone_membership(phi, &dual_gens)
            .map(|m| m.is_inside())
            .unwrap_or(false)
    })
}

/// Decide `E (x)min F = E (x)max F`.
///
/// Each facet of the projective cone is tested for membership in the cone of
/// product functionals; the first failure yields a Farkas vector, which is an
/// element of the injective cone cut off by that facet.
pub fn min_equals_max(e: &Cone, f: &Cone) -> MinMaxVerdict {
    min_equals_max_from(e, f, &projective_cone(e, f))
}

/// As [`min_equals_max`], reusing an already computed projective cone.
pub fn min_equals_max_from(e: &Cone, f: &Cone, min_cone: &Cone) -> MinMaxVerdict {
    let (de, df) = (e.dim(), f.dim());
    let dual_gens = injective_inequalities(e, f);
    for phi in min_cone.inequalities() {
        match cone_membership(&phi, &dual_gens).expect("dims") {
            Membership::Inside(_) => continue,
            Membership::Outside(w) => {
                return MinMaxVerdict::Differs {
                    witness: TensorElement::from_vec(de, df, &w).expect("dims"),
                    separator: TensorElement::from_vec(de, df, &phi).expect("dims"),
                }
            }
        }
    }
    MinMaxVerdict::Equal
}

/// Cheap refutation: the first candidate lying in `E (x)max F` but outside
/// `E (x)min F` (decided by LP), with its separator. Never proves equality.
pub fn refute_with_candidates(
    e: &Cone,
    f: &Cone,
    candidates: &[TensorElement],
) -> Result<Option<MinMaxVerdict>> {
    let gens = projective_generators(e, f);
    for u in candidates {
        if !in_injective(u, e, f)? {
            continue;
        }
        if let Membership::Outside(s) = cone_membership(&u.to_vec(), &gens)? {
            return Ok(Some(MinMaxVerdict::Differs {
                witness: u.clone(),
                separator: TensorElement::from_vec(e.dim(), f.dim(), &s)?,
            }));
        }
    }
    Ok(None)
}

/// Equal-or-differs with cheap candidates tried first.
pub fn min_equals_max_with_candidates(
    e: &Cone,
    f: &Cone,
    candidates: &[TensorElement],
) -> Result<MinMaxVerdict> {
    match refute_with_candidates(e, f, candidates)? {
        Some(v) => Ok(v),
        None => Ok(min_equals_max(e, f)),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualityReport {
    /// `dual(E (x)min F) = dual(E) (x)max dual(F)`
    pub dual_of_min: bool,
    /// `dual(E (x)max F) = dual(E) (x)min dual(F)`
    pub dual_of_max: bool,
    /// `dual(dual(E (x)min F)) = E (x)min F`
    pub min_closed: bool,
}

impl DualityReport {
    pub fn all_pass(&self) -> bool {
        self.dual_of_min && self.dual_of_max && self.min_closed
    }
}

pub fn verify_duality(e: &Cone, f: &Cone) -> DualityReport {
    let (de, df) = (dual(e), dual(f));
    let min = projective_cone(e, f);
    let max = injective_cone(e, f);
    let eq = |a: &Cone, b: &Cone| crate::cone::cone_equal(a, b).unwrap_or(false);
    DualityReport {
        dual_of_min: eq(&dual(&min), &injective_cone(&de, &df)),
        dual_of_max: eq(&dual(&max), &projective_cone(&de, &df)),
        min_closed: eq(&dual(&dual(&min)), &min),
    }
}

/// A face of `E (x)min F` for polygon cones, described by the rank-one
/// extremal rays `v_i (x) w_j` it contains. Indices are 1-based and cyclic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceDescriptor {
    pub k: usize,
    pub l: usize,
    pub tight_rays: Vec<(usize, usize)>,
    pub containing_facets: Vec<(usize, usize)>,
}

fn check_polygon(p: &PolygonCone) -> Result<()> {
    if p.cone.dim() != 3 || p.len() < 3 {
        return Err(Error::NotPolygonCone);
    }
    Ok(())
}

/// Rays of `E (x)min F` on which `phi_k (x) psi_l` vanishes.
fn tight_set(e: &PolygonCone, f: &PolygonCone, k: usize, l: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 1..=e.len() {
        for j in 1..=f.len() {
            let a = e.facet(k - 1).dot(e.ray(i - 1));
            let b = f.facet(l - 1).dot(f.ray(j - 1));
            if (a * b).is_zero() {
                out.push((i, j));
            }
        }
    }
    out
}

/// Product facets `F_{k,l}` whose tight set contains `rays`.
fn containing_product_facets(
    e: &PolygonCone,
    f: &PolygonCone,
    rays: &[(usize, usize)],
) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for k in 1..=e.len() {
        for l in 1..=f.len() {
            let t = tight_set(e, f, k, l);
            if rays.iter().all(|r| t.contains(r)) {
                out.push((k, l));
            }
        }
    }
    out
}

/// The facet `F_{k,l}` of `E (x)min F` cut out by `phi_k (x) psi_l`.
pub fn facet_f(e: &PolygonCone, f: &PolygonCone, k: usize, l: usize) -> Result<FaceDescriptor> {
    check_polygon(e)?;
    check_polygon(f)?;
    if k == 0 || k > e.len() {
        return Err(Error::IndexOutOfRange {
            index: k,
            len: e.len(),
        });
    }
    if l == 0 || l > f.len() {
        return Err(Error::IndexOutOfRange {
            index: l,
            len: f.len(),
        });
    }
    let tight_rays = tight_set(e, f, k, l);
    let containing_facets = containing_product_facets(e, f, &tight_rays);
    Ok(FaceDescriptor {
        k,
        l,
        tight_rays,
        containing_facets,
    })
}

/// Certificate that `functional` is an extremal ray of `dual(min_cone)`:
/// valid on every generator, and its tight generators have rank `dim - 1`.
pub fn is_facet_functional(min_cone: &Cone, functional: &RVec) -> bool {
    let gens = min_cone.generators();
    if gens.iter().any(|g| functional.dot(g).is_negative()) || functional.is_zero() {
        return false;
    }
    let tight: Vec<RVec> = gens
        .into_iter()
        .filter(|g| functional.dot(g).is_zero())
        .collect();
    let rank = if tight.is_empty() {
        0
    } else {
        RMat::from_rows(min_cone.dim(), &tight)
            .expect("dims")
            .rank()
    };
    rank + 1 == min_cone.dim()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ObstructionReport {
    pub m: usize,
    pub n: usize,
    /// The four product facets whose intersection is `C` (1-based).
    pub defining: Vec<(usize, usize)>,
    pub tight_rays: Vec<(usize, usize)>,
    pub containing_product_facets: Vec<(usize, usize)>,
    pub face_dim: usize,
    /// Number of facets of `E (x)min F` containing `C`.
    pub containing_facets: usize,
    /// A facet functional of `E (x)min F` containing `C` that is not a
    /// product; equivalently an extremal ray of `dual E (x)max dual F`.
    pub extremal_functional: TensorElement,
    pub functional_rank: usize,
    pub functional_certified: bool,
}

impl ObstructionReport {
    pub fn all_pass(&self) -> bool {
        self.tight_rays.len() == 4
            && self.containing_product_facets.len() == 4
            && self.containing_facets + self.face_dim >= 9
            && self.functional_rank >= 2
            && self.functional_certified
    }
}

/// Face `C = F_{1,1} & F_{1,2} & F_{3,3} & F_{3,4}` of `E (x)min F`: it has too
/// few product facets above it for the face lattice to be graded, forcing a
/// facet functional of rank at least two.
pub fn obstruction_3x3(e: &PolygonCone, f: &PolygonCone) -> Result<ObstructionReport> {
    let min_cone = projective_cone(&e.cone, &f.cone);
    obstruction_3x3_from(e, f, &min_cone)
}

pub fn obstruction_3x3_from(
    e: &PolygonCone,
    f: &PolygonCone,
    min_cone: &Cone,
) -> Result<ObstructionReport> {
    check_polygon(e)?;
    check_polygon(f)?;
    let (m, n) = (e.len(), f.len());
    if m < 4 || n < 4 {
        return Err(Error::PreconditionViolated(format!(
            "both polygons need at least 4 vertices, got {m} and {n}"
        )));
    }
    let defining = vec![(1, 1), (1, 2), (3, 3), (3, 4)];
    let mut tight_rays = tight_set(e, f, 1, 1);
    for &(k, l) in &defining[1..] {
        let t = tight_set(e, f, k, l);
        tight_rays.retain(|r| t.contains(r));
    }
    let containing = containing_product_facets(e, f, &tight_rays);
    let ray_vecs: Vec<RVec> = tight_rays
        .iter()
        .map(|&(i, j)| tensor_vec(e.ray(i - 1), f.ray(j - 1)))
        .collect();
    let face_dim = if ray_vecs.is_empty() {
        0
    } else {
        RMat::from_rows(9, &ray_vecs)?.rank()
    };
    let above: Vec<&RVec> = min_cone
        .facets()
        .iter()
        .filter(|phi| ray_vecs.iter().all(|r| phi.dot(r).is_zero()))
        .collect();
    let chosen = above
        .iter()
        .map(|phi| TensorElement::from_vec(3, 3, phi).expect("dims"))
        .find(|t| t.rank() >= 2)
        .ok_or_else(|| {
            Error::PreconditionViolated("no facet of rank at least two contains C".into())
        })?;
    let functional_certified = is_facet_functional(min_cone, &chosen.to_vec());
    Ok(ObstructionReport {
        m,
        n,
        defining,
        tight_rays,
        containing_product_facets: containing,
        face_dim,
        containing_facets: above.len(),
        functional_rank: chosen.rank(),
        extremal_functional: chosen,
        functional_certified,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::{cone_equal, polygon_homogenization};
    use crate::ratlin::rat;

    fn square() -> PolygonCone {
        let v: Vec<RVec> = [(1, 1), (-1, 1), (-1, -1), (1, -1)]
            .iter()
            .map(|&(x, y)| RVec::from_ints(&[x, y]))
            .collect();
        polygon_homogenization(&v).unwrap()
    }

    fn pentagon() -> PolygonCone {
        let v = vec![
            RVec::new(vec![rat(1, 1), rat(0, 1)]),
            RVec::new(vec![rat(1, 3), rat(1, 1)]),
            RVec::new(vec![rat(-4, 5), rat(3, 5)]),
            RVec::new(vec![rat(-4, 5), rat(-3, 5)]),
            RVec::new(vec![rat(1, 3), rat(-1, 1)]),
        ];
        polygon_homogenization(&v).unwrap()
    }

    #[test]
    fn tensor_vec_matches_outer_product() {
        let x = RVec::from_ints(&[1, 2]);
        let y = RVec::from_ints(&[3, 4, 5]);
        assert_eq!(
            tensor_vec(&x, &y),
            TensorElement::elementary(&x, &y).to_vec()
        );
        assert_eq!(tensor_rank(&TensorElement::elementary(&x, &y)), 1);
        assert_eq!(tensor_rank(&TensorElement::new(RMat::identity(3))), 3);
    }

    #[test]
    fn orthant_products() {
        let o = Cone::orthant(2);
        let min = projective_cone(&o, &o);
        let max = injective_cone(&o, &o);
        assert!(cone_equal(&min, &Cone::orthant(4)).unwrap());
        assert!(cone_equal(&max, &Cone::orthant(4)).unwrap());
        assert!(min_equals_max(&o, &o).is_equal());
    }

    #[test]
    fn square_products() {
        let s = square().cone;
        let min = projective_cone(&s, &s);
        assert_eq!(min.extremal_rays().len(), 16);
        let max = injective_cone(&s, &s);
        assert_eq!(max.h_rep().inequalities.len(), 16);
        let outside = max
            .extremal_rays()
            .iter()
            .find(|r| !cone_membership(r, &min.generators()).unwrap().is_inside());
        assert!(outside.is_some());
        let v = min_equals_max_from(&s, &s, &min);
        assert!(!v.is_equal());
        assert!(v.verify(&s, &s));
    }

    #[test]
    fn simplex_absorbs() {
        let o = Cone::orthant(3);
        let s = square().cone;
        let v = min_equals_max(&o, &s);
        assert!(v.is_equal());
        assert!(v.verify(&o, &s));
        assert!(min_equals_max(&s, &o).is_equal());
    }

    #[test]
    fn pentagon_square_differs() {
        let v = min_equals_max(&pentagon().cone, &square().cone);
        assert!(v.verify(&pentagon().cone, &square().cone));
        assert!(!v.is_equal());
    }

    #[test]
    fn whole_space_factor_gives_subspace() {
        let s = square().cone;
        let w = Cone::whole_space(2);
        let max = injective_cone(&s, &w);
        assert_eq!(max.lineality_basis().len(), 6);
        let min = projective_cone(&s, &w);
        assert_eq!(min.lineality_basis().len(), 6);
        assert!(cone_equal(&min, &max).unwrap());
    }

    #[test]
    fn zero_factor() {
        let z = Cone::zero(2);
        let min = projective_cone(&z, &square().cone);
        assert!(min.extremal_rays().is_empty() && min.lineality_basis().is_empty());
        assert_eq!(min.dim(), 6);
    }

    #[test]
    fn duality_identities() {
        assert!(verify_duality(&Cone::orthant(2), &Cone::orthant(2)).all_pass());
        assert!(verify_duality(&square().cone, &square().cone).all_pass());
    }

    #[test]
    fn candidate_refutation_uses_identity() {
        let s = square().cone;
        let d = dual(&s);
        let id = TensorElement::new(RMat::identity(3));
        let v = refute_with_candidates(&d, &s, &[id]).unwrap().unwrap();
        assert!(v.verify(&d, &s));
    }

    #[test]
    fn facet_tightness_counts() {
        let (e, f) = (square(), pentagon());
        for k in 1..=4 {
            for l in 1..=5 {
                let d = facet_f(&e, &f, k, l).unwrap();
                assert_eq!(d.tight_rays.len(), 2 * 4 + 2 * 5 - 4);
                assert_eq!(d.containing_facets, vec![(k, l)]);
            }
        }
        assert!(facet_f(&e, &f, 0, 1).is_err());
        assert!(facet_f(&e, &f, 5, 1).is_err());
    }

    #[test]
    fn obstruction_on_squares() {
        let r = obstruction_3x3(&square(), &square()).unwrap();
        assert_eq!(r.tight_rays, vec![(1, 4), (2, 4), (3, 2), (4, 2)]);
        assert_eq!(r.containing_product_facets.len(), 4);
        assert!(r.all_pass(), "{r:?}");
    }

    #[test]
    fn obstruction_needs_four_vertices() {
        let tri: Vec<RVec> = [(0, 0), (1, 0), (0, 1)]
            .iter()
            .map(|&(x, y)| RVec::from_ints(&[x, y]))
            .collect();
        let t = polygon_homogenization(&tri).unwrap();
        assert!(matches!(
            obstruction_3x3(&square(), &t),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn serde_shape() {
        let t = TensorElement::new(RMat::from_ints(&[&[1, 0], &[0, 2]]));
        let s = serde_json::to_string(&t).unwrap();
        assert_eq!(s, r#"{"dimE":2,"dimF":2,"matrix":[["1","0"],["0","2"]]}"#);
        let back: TensorElement = serde_json::from_str(&s).unwrap();
        assert_eq!(back.normalized().unwrap(), t);
    }
}
