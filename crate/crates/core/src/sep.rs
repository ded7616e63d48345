//! Separability of positive maps, factorization through an orthant, and the
//! equivalent characterizations of simplex cones.
//!
//! A map `T: E -> F` is a `dim F x dim E` matrix. As a tensor in `E* (x) F` it
//! is `T^T`, so `T = sum c_i y_i phi_i^T` reads `T^T = sum c_i phi_i (x) y_i`.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::cone::{dual, Cone};
use crate::error::{check_dim, Error, Result};
use crate::lp::{cone_membership, solve_lp, LinearProgram, LpOutcome, Membership};
use crate::ratlin::{int, RMat, RVec, Rat};
use crate::tensorcone::{min_equals_max_with_candidates, tensor_vec, MinMaxVerdict, TensorElement};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparableTerm {
    pub functional: RVec,
    pub vector: RVec,
    #[serde(with = "crate::ratlin::rat_string")]
    pub coefficient: Rat,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum SeparabilityVerdict {
    Separable {
        terms: Vec<SeparableTerm>,
    },
    /// `witness` pairs nonnegatively with every `phi (x) y` and negatively with `T^T`.
    Entangled {
        witness: TensorElement,
    },
}

impl SeparabilityVerdict {
    pub fn is_separable(&self) -> bool {
        matches!(self, SeparabilityVerdict::Separable { .. })
    }

    /// Exact re-check against `T`, `E` and `F`.
    pub fn verify(&self, t: &RMat, e: &Cone, f: &Cone) -> bool {
        match self {
            SeparabilityVerdict::Separable { terms } => {
                terms.len() <= e.dim() * f.dim()
                    && terms.iter().all(|term| {
                        term.coefficient.is_positive()
                            && term.functional.dim() == e.dim()
                            && term.vector.dim() == f.dim()
                            && dual(e).contains(&term.functional)
                            && f.contains(&term.vector)
                    })
                    && reconstruct(terms, f.dim(), e.dim()) == *t
            }
            SeparabilityVerdict::Entangled { witness } => {
                let w = &witness.matrix;
                if w.rows() != e.dim() || w.cols() != f.dim() {
                    return false;
                }
                let pos = e.inequalities().iter().all(|phi| {
                    f.generators()
                        .iter()
                        .all(|y| !w.bilinear(phi, y).expect("dims").is_negative())
                });
                pos && w.pairing(&t.transpose()).map_or(false, |v| v.is_negative())
            }
        }
    }
}

/// `sum c_i y_i phi_i^T` as a `rows x cols` matrix.
pub fn reconstruct(terms: &[SeparableTerm], rows: usize, cols: usize) -> RMat {
    terms.iter().fold(RMat::zeros(rows, cols), |acc, term| {
        acc.add(&RMat::outer(&term.vector, &term.functional).scale(&term.coefficient))
            .expect("dims")
    })
}

pub fn is_positive_map(t: &RMat, e: &Cone, f: &Cone) -> Result<bool> {
    check_dim("map rows", f.dim(), t.rows())?;
    check_dim("map columns", e.dim(), t.cols())?;
    for g in e.generators() {
        if !f.contains(&t.mul_vec(&g)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Drop terms while the active generators are linearly dependent, keeping
/// the combination fixed. Ends with linearly independent generators.
pub fn caratheodory_reduce(gens: &[RVec], coeffs: &[Rat]) -> Vec<(usize, Rat)> {
    let mut active: Vec<(usize, Rat)> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| c.is_positive())
        .map(|(i, c)| (i, c.clone()))
        .collect();
    loop {
        if active.is_empty() {
            return active;
        }
        let cols: Vec<RVec> = active.iter().map(|(i, _)| gens[*i].clone()).collect();
        let kernel = RMat::from_cols(gens[0].dim(), &cols)
            .expect("dims")
            .kernel_basis();
        let Some(mut lambda) = kernel.into_iter().next() else {
            return active;
        };
        if !lambda.iter().any(|x| x.is_positive()) {
            lambda = lambda.neg();
        }
        let mut best: Option<(usize, Rat)> = None;
        for (k, l) in lambda.iter().enumerate() {
            if l.is_positive() {
                let ratio = &active[k].1 / l;
                if best.as_ref().map_or(true, |(_, b)| ratio < *b) {
                    best = Some((k, ratio));
                }
            }
        }
        let (drop, step) = best.expect("a positive entry exists");
        for (k, (_, c)) in active.iter_mut().enumerate() {
            *c -= &step * &lambda[k];
        }
        active[drop].1 = Rat::zero();
        active.retain(|(_, c)| c.is_positive());
    }
}

/// Decide whether the positive map `T: E -> F` is a nonnegative sum of
/// `phi (x) y` with `phi` in `dual(E)` and `y` in `F`.
pub fn is_separable(t: &RMat, e: &Cone, f: &Cone) -> Result<SeparabilityVerdict> {
    if !is_positive_map(t, e, f)? {
        return Err(Error::NotPositive);
    }
    if let Some(terms) = rank_one_terms(t, e, f) {
        return Ok(SeparabilityVerdict::Separable { terms });
    }
    let functionals = e.inequalities();
    let vectors = f.generators();
    let mut pairs = Vec::new();
    let mut gens = Vec::new();
    for phi in &functionals {
        for y in &vectors {
            pairs.push((phi, y));
            gens.push(tensor_vec(phi, y));
        }
    }
    let target = t.transpose().to_vec();
    match cone_membership(&target, &gens)? {
        Membership::Inside(coeffs) => {
            let terms = caratheodory_reduce(&gens, coeffs.entries())
                .into_iter()
                .map(|(i, c)| SeparableTerm {
                    functional: pairs[i].0.clone(),
                    vector: pairs[i].1.clone(),
                    coefficient: c,
                })
                .collect();
            Ok(SeparabilityVerdict::Separable { terms })
        }
        Membership::Outside(w) => Ok(SeparabilityVerdict::Entangled {
            witness: TensorElement::from_vec(e.dim(), f.dim(), &w)?,
        }),
    }
}

/// A positive map of rank at most one is `y phi^T` with `y` in `F` and `phi`
/// in `dual(E)` up to a common sign, giving at most one term.
fn rank_one_terms(t: &RMat, e: &Cone, f: &Cone) -> Option<Vec<SeparableTerm>> {
    if t.is_zero() {
        return Some(Vec::new());
    }
    if t.rank() != 1 {
        return None;
    }
    let i = (0..t.rows()).find(|&i| !t.row(i).is_zero())?;
    let phi = t.row(i);
    let j = (0..phi.dim()).find(|&j| !phi[j].is_zero())?;
    let y = t.col(j).scale(&phi[j].recip());
    for sign in [int(1), int(-1)] {
        let (phi, y) = (phi.scale(&sign), y.scale(&sign));
        if f.contains(&y) && e.generators().iter().all(|g| !phi.dot(g).is_negative()) {
            return Some(vec![SeparableTerm {
                functional: phi,
                vector: y,
                coefficient: int(1),
            }]);
        }
    }
    None
}

/// `T = S R` with `R: E -> R^n` and `S: R^n -> F` both positive.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factorization {
    pub n: usize,
    #[serde(rename = "R")]
    pub r: RMat,
    #[serde(rename = "S")]
    pub s: RMat,
}

impl Factorization {
    pub fn verify(&self, t: &RMat, e: &Cone, f: &Cone) -> bool {
        let orthant = Cone::orthant(self.n);
        self.r.rows() == self.n
            && self.s.cols() == self.n
            && self.s.mul(&self.r).map_or(false, |m| m == *t)
            && is_positive_map(&self.r, e, &orthant).unwrap_or(false)
            && is_positive_map(&self.s, &orthant, f).unwrap_or(false)
    }
}

/// Rows of `R` are `c_i phi_i`, columns of `S` are `y_i`.
pub fn factor_through_simplex(verdict: &SeparabilityVerdict, t: &RMat) -> Result<Factorization> {
    let SeparabilityVerdict::Separable { terms } = verdict else {
        return Err(Error::PreconditionViolated("map is not separable".into()));
    };
    let n = terms.len();
    let r_rows: Vec<RVec> = terms
        .iter()
        .map(|term| term.functional.scale(&term.coefficient))
        .collect();
    let s_cols: Vec<RVec> = terms.iter().map(|term| term.vector.clone()).collect();
    let r = if n == 0 {
        RMat::zeros(0, t.cols())
    } else {
        RMat::from_rows(t.cols(), &r_rows)?
    };
    let s = if n == 0 {
        RMat::zeros(t.rows(), 0)
    } else {
        RMat::from_cols(t.rows(), &s_cols)?
    };
    if s.mul(&r)? != *t {
        return Err(Error::PreconditionViolated(
            "terms do not reconstruct the map".into(),
        ));
    }
    Ok(Factorization { n, r, s })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinTrace {
    #[serde(with = "crate::ratlin::rat_string")]
    pub value: Rat,
    pub argmin: RMat,
    /// Normalization `<T, f (x) xbar> = f^T T xbar = 1`.
    pub f: RVec,
    pub xbar: RVec,
    /// Optimal solution and dual of [`trace_program`].
    pub point: RVec,
    pub dual: RVec,
}

/// Minimize `tr(T)` over positive maps `T: E -> E` with `f^T T xbar = 1`,
/// where `f` is the sum of the facets and `xbar` the sum of the extremal rays.
pub fn min_trace_positive_map(e: &Cone) -> Result<MinTrace> {
    let lp = trace_program(e)?;
    let d = e.dim();
    let dd = d * d;
    match solve_lp(&lp) {
        LpOutcome::Optimal { value, point, dual } => {
            let t: RVec = (0..dd).map(|k| &point[k] - &point[dd + k]).collect();
            Ok(MinTrace {
                value,
                argmin: RMat::from_vec(d, d, &t)?,
                f: e.strictly_positive_functional()?,
                xbar: e.ray_sum(),
                point,
                dual,
            })
        }
        LpOutcome::Infeasible { .. } => Err(Error::PreconditionViolated(
            "trace program is infeasible".into(),
        )),
        LpOutcome::Unbounded { .. } => Err(Error::PreconditionViolated(
            "trace program is unbounded".into(),
        )),
    }
}

/// Standard-form program behind [`min_trace_positive_map`]. Variables are
/// `P`, `N` (with `T = P - N`, row major) and one surplus per facet/ray pair.
pub fn trace_program(e: &Cone) -> Result<LinearProgram> {
    if !e.is_proper() || !e.is_generating() {
        return Err(Error::NotProperGenerating);
    }
    let d = e.dim();
    let facets = e.facets();
    let rays = e.extremal_rays();
    let f = e.strictly_positive_functional()?;
    let xbar = e.ray_sum();
    let dd = d * d;
    let slacks = facets.len() * rays.len();
    let nvars = 2 * dd + slacks;
    let nrows = slacks + 1;
    let mut a = RMat::zeros(nrows, nvars);
    let mut b = RVec::zeros(nrows);
    // phi^T T g - s = 0, with T = P - N flattened row major
    let mut row = 0;
    for phi in facets {
        for g in rays {
            let coef = tensor_vec(phi, g);
            for (k, c) in coef.iter().enumerate() {
                if !c.is_zero() {
                    a.set(row, k, c.clone());
                    a.set(row, dd + k, -c.clone());
                }
            }
            a.set(row, 2 * dd + row, int(-1));
            row += 1;
        }
    }
    let coef = tensor_vec(&f, &xbar);
    for (k, c) in coef.iter().enumerate() {
        a.set(row, k, c.clone());
        a.set(row, dd + k, -c.clone());
    }
    b.set(row, int(1));
    let mut c = RVec::zeros(nvars);
    for i in 0..d {
        c.set(i * d + i, int(1));
        c.set(dd + i * d + i, int(-1));
    }
    LinearProgram::new(a, b, c)
}

impl MinTrace {
    pub fn verify(&self, e: &Cone) -> bool {
        is_positive_map(&self.argmin, e, e).unwrap_or(false)
            && self.argmin.trace() == self.value
            && self
                .argmin
                .bilinear(&self.f, &self.xbar)
                .map_or(false, |v| v == int(1))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EquivalenceReport {
    /// (i) the cone is a simplex cone
    pub simplex: bool,
    /// (ii) the identity is separable
    pub identity: SeparabilityVerdict,
    /// (iii) every positive map has nonnegative trace
    pub min_trace: MinTrace,
    /// (vi) `dual(E) (x)min E = dual(E) (x)max E`
    pub min_eq_max: MinMaxVerdict,
}

impl EquivalenceReport {
    pub fn conditions(&self) -> [bool; 4] {
        [
            self.simplex,
            self.identity.is_separable(),
            !self.min_trace.value.is_negative(),
            self.min_eq_max.is_equal(),
        ]
    }

    pub fn agree(&self) -> bool {
        let c = self.conditions();
        c.iter().all(|&x| x == c[0])
    }
}

/// Evaluate the simplex characterizations (i), (ii), (iii) and (vi) on `E`.
pub fn check_min_equals_max_equivalences(e: &Cone) -> Result<EquivalenceReport> {
    if !e.is_proper() || !e.is_generating() {
        return Err(Error::NotProperGenerating);
    }
    let id = RMat::identity(e.dim());
    let identity = is_separable(&id, e, e)?;
    let min_trace = min_trace_positive_map(e)?;
    // the identity, read in dual(E) (x) E, is the natural element to test first
    let min_eq_max = min_equals_max_with_candidates(&dual(e), e, &[TensorElement::new(id)])?;
    Ok(EquivalenceReport {
        simplex: e.is_simplex(),
        identity,
        min_trace,
        min_eq_max,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{random_polygon, rng_from_seed, square_cone};
    use crate::ratlin::rat;

    #[test]
    fn rank_one_maps_need_one_term() {
        let s = square_cone().cone;
        let t = RMat::from_ints(&[&[0, 0, -1], &[0, 0, 0], &[0, 0, -1]]).scale(&int(-2));
        match is_separable(&t, &s, &s).unwrap() {
            SeparabilityVerdict::Separable { terms } => {
                assert_eq!(terms.len(), 1);
                assert_eq!(reconstruct(&terms, 3, 3), t);
            }
            other => panic!("{other:?}"),
        }
        let zero = RMat::zeros(3, 3);
        assert!(is_separable(&zero, &s, &s).unwrap().verify(&zero, &s, &s));
    }

    #[test]
    fn positivity_examples() {
        let o = Cone::orthant(3);
        assert!(is_positive_map(&RMat::identity(3), &o, &o).unwrap());
        let s = square_cone().cone;
        let rot = RMat::diag(&[int(-1), int(-1), int(1)]);
        assert!(is_positive_map(&rot, &s, &s).unwrap());
        let flip = RMat::diag(&[int(-1), int(1), int(1)]);
        assert!(is_positive_map(&flip, &s, &s).unwrap());
        let bad = RMat::diag(&[int(2), int(1), int(1)]);
        assert!(!is_positive_map(&bad, &s, &s).unwrap());
        assert!(is_positive_map(&RMat::identity(2), &o, &o).is_err());
    }

    #[test]
    fn rank_one_map() {
        let s = square_cone().cone;
        let phi = RVec::from_ints(&[0, 0, 1]);
        let y = RVec::from_ints(&[1, 1, 1]);
        let t = RMat::outer(&y, &phi);
        let v = is_separable(&t, &s, &s).unwrap();
        assert!(v.verify(&t, &s, &s));
        let fac = factor_through_simplex(&v, &t).unwrap();
        assert!(fac.verify(&t, &s, &s));
        let SeparabilityVerdict::Separable { terms } = v else {
            panic!()
        };
        assert!(terms.len() <= 2);
    }

    #[test]
    fn identity_on_orthant_is_separable() {
        let o = Cone::orthant(4);
        let id = RMat::identity(4);
        let v = is_separable(&id, &o, &o).unwrap();
        let SeparabilityVerdict::Separable { terms } = &v else {
            panic!()
        };
        assert_eq!(terms.len(), 4);
        let fac = factor_through_simplex(&v, &id).unwrap();
        assert_eq!(fac.n, 4);
        assert!(fac.verify(&id, &o, &o));
    }

    #[test]
    fn identity_on_square_is_entangled() {
        let s = square_cone().cone;
        let id = RMat::identity(3);
        let v = is_separable(&id, &s, &s).unwrap();
        assert!(!v.is_separable());
        assert!(v.verify(&id, &s, &s));
        assert!(factor_through_simplex(&v, &id).is_err());
    }

    #[test]
    fn non_positive_map_is_rejected() {
        let s = square_cone().cone;
        let bad = RMat::diag(&[int(2), int(1), int(1)]);
        assert!(matches!(
            is_separable(&bad, &s, &s),
            Err(Error::NotPositive)
        ));
    }

    #[test]
    fn caratheodory_reduces_to_independent_support() {
        let gens = vec![
            RVec::from_ints(&[1, 0]),
            RVec::from_ints(&[0, 1]),
            RVec::from_ints(&[1, 1]),
            RVec::from_ints(&[2, 1]),
        ];
        let coeffs = vec![rat(1, 1), rat(2, 1), rat(3, 1), rat(1, 2)];
        let target = gens
            .iter()
            .zip(&coeffs)
            .fold(RVec::zeros(2), |acc, (g, c)| acc.axpy(c, g));
        let red = caratheodory_reduce(&gens, &coeffs);
        assert!(red.len() <= 2);
        let back = red
            .iter()
            .fold(RVec::zeros(2), |acc, (i, c)| acc.axpy(c, &gens[*i]));
        assert_eq!(back, target);
    }

    #[test]
    fn trace_program() {
        let o = Cone::orthant(3);
        let m = min_trace_positive_map(&o).unwrap();
        assert!(!m.value.is_negative());
        assert!(m.verify(&o));
        let s = square_cone().cone;
        let m = min_trace_positive_map(&s).unwrap();
        assert!(m.value.is_negative());
        assert!(m.verify(&s));
        // the half-turn, normalized, is feasible with trace -1/16
        let rot = RMat::diag(&[int(-1), int(-1), int(1)]);
        let scale = rot.bilinear(&m.f, &m.xbar).unwrap();
        assert_eq!(rot.trace() / scale, rat(-1, 16));
        assert!(m.value <= rat(-1, 16));
        let p = random_polygon(&mut rng_from_seed(5), 5).cone;
        assert!(min_trace_positive_map(&p).unwrap().value.is_negative());
        let half = Cone::from_inequalities(2, vec![RVec::from_ints(&[0, 1])]).unwrap();
        assert!(matches!(
            min_trace_positive_map(&half),
            Err(Error::NotProperGenerating)
        ));
    }

    #[test]
    fn equivalences() {
        let r = check_min_equals_max_equivalences(&Cone::orthant(3)).unwrap();
        assert_eq!(r.conditions(), [true; 4]);
        let r = check_min_equals_max_equivalences(&square_cone().cone).unwrap();
        assert_eq!(r.conditions(), [false; 4]);
        let hex = crate::lorentz::inner_polyhedral_approx(6).unwrap().cone;
        let r = check_min_equals_max_equivalences(&hex).unwrap();
        assert_eq!(r.conditions(), [false; 4]);
    }
}
