//! Polyhedral convex cones in generator (V) and inequality (H) form.
//!
//! A [`Cone`] always carries both a complete V-representation and a complete
//! H-representation of the same set, together with the minimal data derived
//! from them: extremal rays (taken modulo the lineality space), facet
//! functionals (taken modulo the orthogonal complement of the span), a
//! canonical basis of the lineality space, and a basis of `span(K)^perp`.
//!
//! Rays and facets are stored in canonical scaling (first nonzero coordinate
//! `+1` or `-1`), in order of first appearance in the defining data.

mod dd;
mod polygon;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};
use crate::ratlin::{complement_projector, RMat, RVec};

pub use polygon::{cross, polygon_homogenization, PolygonCone};

/// Cone generated by nonnegative combinations of `generators`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeV {
    pub dim: usize,
    pub generators: Vec<RVec>,
}

/// Cone `{x : <x, a> >= 0 for every a in inequalities}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeH {
    pub dim: usize,
    pub inequalities: Vec<RVec>,
}

impl ConeV {
    pub fn new(dim: usize, generators: Vec<RVec>) -> Result<Self> {
        for g in &generators {
            check_dim("cone generator", dim, g.dim())?;
        }
        let generators = generators.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(ConeV { dim, generators })
    }
}

impl ConeH {
    pub fn new(dim: usize, inequalities: Vec<RVec>) -> Result<Self> {
        for a in &inequalities {
            check_dim("cone inequality", dim, a.dim())?;
        }
        Ok(ConeH { dim, inequalities })
    }
}

/// V-representation to H-representation by double description on the dual.
pub fn dd_v_to_h(c: &ConeV) -> ConeH {
    let out = dd::enumerate(c.dim, &c.generators);
    let mut inequalities = out.rays;
    for m in &out.lineality {
        inequalities.push(m.clone());
        inequalities.push(m.neg());
    }
    ConeH {
        dim: c.dim,
        inequalities,
    }
}

/// H-representation to V-representation by double description.
pub fn dd_h_to_v(c: &ConeH) -> ConeV {
    let out = dd::enumerate(c.dim, &c.inequalities);
    let mut generators = out.rays;
    for l in &out.lineality {
        generators.push(l.clone());
        generators.push(l.neg());
    }
    ConeV {
        dim: c.dim,
        generators,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cone {
    v: ConeV,
    h: ConeH,
    extremal_rays: Vec<RVec>,
    facets: Vec<RVec>,
    lineality: Vec<RVec>,
    span_perp: Vec<RVec>,
}

fn rank_of(dim: usize, vs: &[&RVec]) -> usize {
    if vs.is_empty() {
        return 0;
    }
    let rows: Vec<RVec> = vs.iter().map(|v| (*v).clone()).collect();
    RMat::from_rows(dim, &rows).expect("dims").rank()
}

/// Row-reduced basis of a subspace, so equal subspaces compare equal.
fn canonical_basis(dim: usize, vs: &[RVec]) -> Vec<RVec> {
    if vs.is_empty() {
        return Vec::new();
    }
    let r = RMat::from_rows(dim, vs).expect("dims").rref();
    (0..r.rank).map(|i| r.matrix.row(i)).collect()
}

fn kernel_of_rows(dim: usize, rows: &[RVec]) -> Vec<RVec> {
    RMat::from_rows(dim, rows).expect("dims").kernel_basis()
}

fn push_unique(list: &mut Vec<RVec>, v: RVec) {
    if !list.contains(&v) {
        list.push(v);
    }
}

impl Cone {
    /// Analyze a cone given complete V- and H-representations of the same set.
    /// No double description is run; facets and extremal rays are selected by
    /// rank tests on the incidence data.
    pub fn from_pair(v: ConeV, h: ConeH) -> Result<Self> {
        check_dim("cone representation pair", v.dim, h.dim)?;
        let dim = v.dim;
        let span_perp = canonical_basis(dim, &kernel_of_rows(dim, &v.generators));
        let lineality = canonical_basis(dim, &kernel_of_rows(dim, &h.inequalities));
        let span_dim = dim - span_perp.len();
        let lin_dim = lineality.len();

        let to_span = complement_projector(dim, &span_perp);
        let mut facets = Vec::new();
        for a in &h.inequalities {
            let f = to_span.mul_vec(a)?;
            if f.is_zero() {
                continue;
            }
            let mut tight: Vec<&RVec> =
                v.generators.iter().filter(|g| a.dot(g).is_zero()).collect();
            tight.extend(lineality.iter());
            if rank_of(dim, &tight) + 1 == span_dim {
                push_unique(&mut facets, f.canonical_ray());
            }
        }

        let mod_lin = complement_projector(dim, &lineality);
        let mut extremal_rays = Vec::new();
        for g in &v.generators {
            let r = mod_lin.mul_vec(g)?;
            if r.is_zero() {
                continue;
            }
            let tight: Vec<&RVec> = facets.iter().filter(|f| f.dot(&r).is_zero()).collect();
            if rank_of(dim, &tight) + lin_dim + 1 == span_dim {
                push_unique(&mut extremal_rays, r.canonical_ray());
            }
        }

        Ok(Cone {
            v,
            h,
            extremal_rays,
            facets,
            lineality,
            span_perp,
        })
    }

    pub fn from_v(v: ConeV) -> Result<Self> {
        let h = dd_v_to_h(&v);
        Self::from_pair(v, h)
    }

    pub fn from_h(h: ConeH) -> Result<Self> {
        let v = dd_h_to_v(&h);
        Self::from_pair(v, h)
    }

    pub fn from_generators(dim: usize, generators: Vec<RVec>) -> Result<Self> {
        Self::from_v(ConeV::new(dim, generators)?)
    }

    pub fn from_inequalities(dim: usize, inequalities: Vec<RVec>) -> Result<Self> {
        Self::from_h(ConeH::new(dim, inequalities)?)
    }

    /// `(R_{>=0})^n`
    pub fn orthant(n: usize) -> Self {
        let units: Vec<RVec> = (0..n).map(|i| RVec::unit(n, i)).collect();
        Self::from_pair(
            ConeV {
                dim: n,
                generators: units.clone(),
            },
            ConeH {
                dim: n,
                inequalities: units,
            },
        )
        .expect("orthant")
    }

    pub fn zero(dim: usize) -> Self {
        Self::from_inequalities(dim, Vec::new())
            .map(|whole| dual(&whole))
            .expect("zero cone")
    }

    pub fn whole_space(dim: usize) -> Self {
        Self::from_inequalities(dim, Vec::new()).expect("whole space")
    }

    pub fn dim(&self) -> usize {
        self.v.dim
    }

    pub fn v_rep(&self) -> &ConeV {
        &self.v
    }

    pub fn h_rep(&self) -> &ConeH {
        &self.h
    }

    pub fn extremal_rays(&self) -> &[RVec] {
        &self.extremal_rays
    }

    pub fn facets(&self) -> &[RVec] {
        &self.facets
    }

    pub fn lineality_basis(&self) -> &[RVec] {
        &self.lineality
    }

    /// Basis of `span(K)^perp`; its vectors are the implicit equations.
    pub fn span_perp(&self) -> &[RVec] {
        &self.span_perp
    }

    pub fn span_dim(&self) -> usize {
        self.dim() - self.span_perp.len()
    }

    /// Minimal complete generator list: extremal rays plus +/- lineality basis.
    pub fn generators(&self) -> Vec<RVec> {
        let mut g = self.extremal_rays.clone();
        for l in &self.lineality {
            g.push(l.clone());
            g.push(l.neg());
        }
        g
    }

    /// Minimal complete inequality list: facets plus +/- equations.
    pub fn inequalities(&self) -> Vec<RVec> {
        let mut a = self.facets.clone();
        for e in &self.span_perp {
            a.push(e.clone());
            a.push(e.neg());
        }
        a
    }

    /// Exact membership through the H-representation.
    pub fn contains(&self, x: &RVec) -> bool {
        x.dim() == self.dim() && self.inequalities().iter().all(|a| !a.dot(x).is_negative())
    }

    pub fn is_proper(&self) -> bool {
        self.lineality.is_empty()
    }

    pub fn is_generating(&self) -> bool {
        self.span_perp.is_empty()
    }

    pub fn is_simplex(&self) -> bool {
        self.is_proper()
            && self.extremal_rays.len() == self.dim()
            && rank_of(self.dim(), &self.extremal_rays.iter().collect::<Vec<_>>()) == self.dim()
    }

    /// Linearly independent extremal rays and trivial lineality; need not span.
    pub fn is_partial_simplex(&self) -> bool {
        self.is_proper()
            && rank_of(self.dim(), &self.extremal_rays.iter().collect::<Vec<_>>())
                == self.extremal_rays.len()
    }

    /// Sum of the facet functionals (restricted to the span); positive on
    /// every nonzero element of a proper cone.
    pub fn strictly_positive_functional(&self) -> Result<RVec> {
        if !self.is_proper() {
            return Err(Error::NotProper);
        }
        Ok(self
            .facets
            .iter()
            .fold(RVec::zeros(self.dim()), |acc, f| acc.add(f)))
    }

    /// Sum of the extremal rays; an interior point of a proper generating cone.
    pub fn ray_sum(&self) -> RVec {
        self.extremal_rays
            .iter()
            .fold(RVec::zeros(self.dim()), |acc, r| acc.add(r))
    }

    /// Indices of facets vanishing at `x`.
    pub fn tight_facets(&self, x: &RVec) -> Vec<usize> {
        (0..self.facets.len())
            .filter(|&i| self.facets[i].dot(x).is_zero())
            .collect()
    }
}

/// Dual cone. Generators and inequalities swap roles, so no enumeration runs.
pub fn dual(c: &Cone) -> Cone {
    Cone::from_pair(
        ConeV {
            dim: c.dim(),
            generators: c.inequalities(),
        },
        ConeH {
            dim: c.dim(),
            inequalities: c.generators(),
        },
    )
    .expect("dual of a consistent cone")
}

pub fn extremal_rays(c: &Cone) -> Vec<RVec> {
    c.extremal_rays().to_vec()
}

pub fn is_proper(c: &Cone) -> bool {
    c.is_proper()
}

pub fn is_generating(c: &Cone) -> bool {
    c.is_generating()
}

pub fn is_simplex(c: &Cone) -> bool {
    c.is_simplex()
}

pub fn is_partial_simplex(c: &Cone) -> bool {
    c.is_partial_simplex()
}

pub fn strictly_positive_functional(c: &Cone) -> Result<RVec> {
    c.strictly_positive_functional()
}

/// Set equality: same canonical extremal rays and the same lineality space.
pub fn cone_equal(a: &Cone, b: &Cone) -> Result<bool> {
    check_dim("cone comparison", a.dim(), b.dim())?;
    if a.lineality != b.lineality || a.extremal_rays.len() != b.extremal_rays.len() {
        return Ok(false);
    }
    let mut ra = a.extremal_rays.clone();
    let mut rb = b.extremal_rays.clone();
    ra.sort();
    rb.sort();
    Ok(ra == rb)
}

/// `K = lineal(K) + P` with `P` proper, living in the orthogonal complement
/// of the lineality space.
pub fn lineality_decomposition(c: &Cone) -> (Vec<RVec>, Cone) {
    let dim = c.dim();
    let mut inequalities = c.inequalities();
    for l in c.lineality_basis() {
        inequalities.push(l.clone());
        inequalities.push(l.neg());
    }
    let proper = Cone::from_pair(
        ConeV {
            dim,
            generators: c.extremal_rays().to_vec(),
        },
        ConeH { dim, inequalities },
    )
    .expect("proper part");
    (c.lineality_basis().to_vec(), proper)
}

/// Proper reduction `span(K) / lineal(K)`, realized on the complement `E2`
/// spanned by a maximal independent subset of the extremal rays.
#[derive(Clone, Debug)]
pub struct ProperReduction {
    pub reduced: Cone,
    /// Positive projection `E -> E2` (coordinates in the chosen basis).
    pub push: RMat,
    /// Embedding `E2 -> E`.
    pub pull: RMat,
}

pub fn proper_reduction(c: &Cone) -> ProperReduction {
    let dim = c.dim();
    let rays = c.extremal_rays();
    let basis: Vec<RVec> = if rays.is_empty() {
        Vec::new()
    } else {
        let m = RMat::from_cols(dim, rays).expect("dims");
        m.rref().pivots.iter().map(|&j| rays[j].clone()).collect()
    };
    let r = basis.len();
    let mut full = basis.clone();
    full.extend(c.lineality_basis().iter().cloned());
    full.extend(c.span_perp().iter().cloned());
    debug_assert_eq!(full.len(), dim);
    let inv = RMat::from_cols(dim, &full)
        .expect("dims")
        .inverse()
        .expect("ray basis, lineality and span complement form a basis");
    let push = inv.select_rows(&(0..r).collect::<Vec<_>>());
    let pull = RMat::from_cols(dim, &basis).expect("dims");

    let generators = rays
        .iter()
        .map(|x| push.mul_vec(x).expect("dims"))
        .collect();
    let pull_t = pull.transpose();
    let inequalities = c
        .facets()
        .iter()
        .map(|f| pull_t.mul_vec(f).expect("dims"))
        .collect();
    let reduced = Cone::from_pair(
        ConeV { dim: r, generators },
        ConeH {
            dim: r,
            inequalities,
        },
    )
    .expect("reduced cone");
    ProperReduction {
        reduced,
        push,
        pull,
    }
}

/// Direct sum `E (+) F` in `R^{dim E + dim F}`.
pub fn direct_sum(e: &Cone, f: &Cone) -> Cone {
    let (de, df) = (e.dim(), f.dim());
    let pad_left = |v: &RVec| RVec::zeros(de).concat(v);
    let pad_right = |v: &RVec| v.concat(&RVec::zeros(df));
    let generators = e
        .generators()
        .iter()
        .map(pad_right)
        .chain(f.generators().iter().map(pad_left))
        .collect();
    let inequalities = e
        .inequalities()
        .iter()
        .map(pad_right)
        .chain(f.inequalities().iter().map(pad_left))
        .collect();
    Cone::from_pair(
        ConeV {
            dim: de + df,
            generators,
        },
        ConeH {
            dim: de + df,
            inequalities,
        },
    )
    .expect("direct sum")
}

/// Image of `c` under an invertible linear map `m`.
pub fn linear_image(c: &Cone, m: &RMat) -> Result<Cone> {
    check_dim("linear image", c.dim(), m.cols())?;
    let inv = m
        .inverse()
        .ok_or_else(|| Error::PreconditionViolated("map is not invertible".into()))?;
    let inv_t = inv.transpose();
    let generators = c
        .generators()
        .iter()
        .map(|g| m.mul_vec(g))
        .collect::<Result<_>>()?;
    let inequalities = c
        .inequalities()
        .iter()
        .map(|a| inv_t.mul_vec(a))
        .collect::<Result<_>>()?;
    Cone::from_pair(
        ConeV {
            dim: m.rows(),
            generators,
        },
        ConeH {
            dim: m.rows(),
            inequalities,
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lp::cone_membership;

    fn square() -> Cone {
        Cone::from_generators(
            3,
            vec![
                RVec::from_ints(&[1, 1, 1]),
                RVec::from_ints(&[-1, 1, 1]),
                RVec::from_ints(&[-1, -1, 1]),
                RVec::from_ints(&[1, -1, 1]),
            ],
        )
        .unwrap()
    }

    fn sorted(mut v: Vec<RVec>) -> Vec<RVec> {
        v.sort();
        v
    }

    #[test]
    fn orthant_from_generators_has_coordinate_facets() {
        let c = Cone::from_generators(3, (0..3).map(|i| RVec::unit(3, i)).collect()).unwrap();
        let expected: Vec<RVec> = (0..3).map(|i| RVec::unit(3, i)).collect();
        assert_eq!(sorted(c.facets().to_vec()), sorted(expected));
        assert!(c.is_proper() && c.is_generating() && c.is_simplex());
    }

    #[test]
    fn square_cone_facets_are_each_tight_on_two_rays() {
        let c = square();
        assert_eq!(c.facets().len(), 4);
        assert_eq!(c.extremal_rays().len(), 4);
        for f in c.facets() {
            let tight = c
                .extremal_rays()
                .iter()
                .filter(|r| f.dot(r).is_zero())
                .count();
            assert_eq!(tight, 2);
            assert!(c.extremal_rays().iter().all(|r| !f.dot(r).is_negative()));
        }
        assert!(!c.is_simplex());
        assert!(!c.is_partial_simplex());
    }

    #[test]
    fn line_in_plane() {
        let c = Cone::from_generators(2, vec![RVec::from_ints(&[1, 0]), RVec::from_ints(&[-1, 0])])
            .unwrap();
        assert_eq!(c.lineality_basis(), &[RVec::from_ints(&[1, 0])]);
        assert!(c.extremal_rays().is_empty());
        assert!(!c.is_generating());
        // the line is cut out by the equation x2 = 0
        assert_eq!(c.span_perp(), &[RVec::from_ints(&[0, 1])]);
        assert!(c.facets().is_empty());
    }

    #[test]
    fn extremal_ray_pruning() {
        let mut gens: Vec<RVec> = (0..3).map(|i| RVec::unit(3, i)).collect();
        gens.push(RVec::from_ints(&[1, 1, 1]));
        let c = Cone::from_generators(3, gens).unwrap();
        assert_eq!(c.extremal_rays().len(), 3);
        let whole = Cone::whole_space(2);
        assert!(whole.extremal_rays().is_empty());
        assert_eq!(whole.lineality_basis().len(), 2);
    }

    #[test]
    fn predicates() {
        let half = Cone::from_inequalities(2, vec![RVec::from_ints(&[0, 1])]).unwrap();
        assert!(half.is_generating() && !half.is_proper());
        let ray = Cone::from_generators(2, vec![RVec::from_ints(&[1, 1])]).unwrap();
        assert!(ray.is_proper() && !ray.is_generating());
        let two = Cone::from_generators(
            3,
            vec![RVec::from_ints(&[1, 0, 0]), RVec::from_ints(&[0, 1, 1])],
        )
        .unwrap();
        assert!(!two.is_simplex());
        assert!(two.is_partial_simplex());
        assert!(Cone::orthant(4).is_partial_simplex());
        assert!(Cone::zero(0).is_simplex());
        assert!(!Cone::whole_space(1).is_proper());
    }

    #[test]
    fn duals() {
        let o = Cone::orthant(3);
        assert!(cone_equal(&dual(&o), &o).unwrap());
        let d = dual(&square());
        let expected = vec![
            RVec::from_ints(&[1, 0, 1]),
            RVec::from_ints(&[-1, 0, 1]),
            RVec::from_ints(&[0, 1, 1]),
            RVec::from_ints(&[0, -1, 1]),
        ];
        let exp = Cone::from_generators(3, expected).unwrap();
        assert!(cone_equal(&d, &exp).unwrap());
        assert!(!cone_equal(&d, &square()).unwrap());
        let half = Cone::from_inequalities(2, vec![RVec::from_ints(&[0, 1])]).unwrap();
        let dh = dual(&half);
        assert_eq!(dh.extremal_rays(), &[RVec::from_ints(&[0, 1])]);
        assert!(dh.lineality_basis().is_empty());
        let o2 = Cone::orthant(2);
        assert!(cone_equal(&o2, &dual(&o2)).unwrap());
    }

    #[test]
    fn generators_e1_minus_e1_give_one_equation() {
        let v = ConeV::new(2, vec![RVec::from_ints(&[1, 0]), RVec::from_ints(&[-1, 0])]).unwrap();
        let h = dd_v_to_h(&v);
        // the only constraints are +-x2 >= 0, i.e. x2 = 0
        for a in &h.inequalities {
            assert!(a[0].is_zero());
        }
        let c = Cone::from_pair(v, h).unwrap();
        assert_eq!(c.lineality_basis().len(), 1);
        for x in [RVec::from_ints(&[5, 0]), RVec::from_ints(&[-3, 0])] {
            assert!(c.contains(&x));
        }
        assert!(!c.contains(&RVec::from_ints(&[0, 1])));
    }

    #[test]
    fn strictly_positive_functionals() {
        assert_eq!(
            Cone::orthant(3).strictly_positive_functional().unwrap(),
            RVec::from_ints(&[1, 1, 1])
        );
        let f = square().strictly_positive_functional().unwrap();
        assert_eq!(f.canonical_ray(), RVec::from_ints(&[0, 0, 1]));
        for r in square().extremal_rays() {
            assert!(f.dot(r).is_positive());
        }
        let half = Cone::from_inequalities(2, vec![RVec::from_ints(&[0, 1])]).unwrap();
        assert!(matches!(
            half.strictly_positive_functional(),
            Err(Error::NotProper)
        ));
    }

    #[test]
    fn lineality_decomposition_cases() {
        let sq = square();
        let (lin, p) = lineality_decomposition(&sq);
        assert!(lin.is_empty());
        assert!(cone_equal(&p, &sq).unwrap());

        let (lin, p) = lineality_decomposition(&Cone::whole_space(2));
        assert_eq!(lin.len(), 2);
        assert!(p.extremal_rays().is_empty());
        assert!(p.is_proper());

        let upper = Cone::from_inequalities(3, vec![RVec::from_ints(&[0, 0, 1])]).unwrap();
        let (lin, p) = lineality_decomposition(&upper);
        assert_eq!(lin.len(), 2);
        assert!(p.is_proper());
        assert_eq!(p.extremal_rays(), &[RVec::from_ints(&[0, 0, 1])]);
        // every generator of the original cone is a sum of a lineality vector and an element of p
        let mut gens = p.generators();
        for l in &lin {
            gens.push(l.clone());
            gens.push(l.neg());
        }
        for g in upper.generators() {
            assert!(cone_membership(&g, &gens).unwrap().is_inside());
        }
    }

    #[test]
    fn proper_reduction_of_partial_simplex() {
        let c = Cone::from_generators(
            3,
            vec![RVec::from_ints(&[1, 0, 0]), RVec::from_ints(&[0, 1, 1])],
        )
        .unwrap();
        let red = proper_reduction(&c);
        assert_eq!(red.reduced.dim(), 2);
        assert!(cone_equal(&red.reduced, &Cone::orthant(2)).unwrap());
        assert!(red.push.mul(&red.pull).unwrap().is_identity());
        for r in c.extremal_rays() {
            assert!(red.reduced.contains(&red.push.mul_vec(r).unwrap()));
        }
    }

    #[test]
    fn proper_reduction_trivial_cases() {
        let sq = square();
        let red = proper_reduction(&sq);
        assert_eq!(red.reduced.dim(), 3);
        assert!(red.reduced.is_proper() && red.reduced.is_generating());
        assert!(red.push.mul(&red.pull).unwrap().is_identity());
        let whole = proper_reduction(&Cone::whole_space(2));
        assert_eq!(whole.reduced.dim(), 0);
        assert_eq!(whole.push.rows(), 0);
    }

    #[test]
    fn zero_cone_and_direct_sum() {
        let z = Cone::zero(2);
        assert!(z.extremal_rays().is_empty() && z.lineality_basis().is_empty());
        assert_eq!(z.span_perp().len(), 2);
        let s = direct_sum(&square(), &Cone::orthant(1));
        assert_eq!(s.extremal_rays().len(), 5);
        assert_eq!(s.facets().len(), 5);
    }
}
