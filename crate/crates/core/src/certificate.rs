//! Self-contained certificates. Each one carries its data and re-checks it
//! with rational arithmetic only: no linear programming and no enumeration.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::lorentz::{
    is_lorentz_coordinate_map, is_psd_2x2, lorentz_membership, preserves_lorentz, s2_iso,
};
use crate::lp::{LinearProgram, LpOutcome};
use crate::ratlin::{RMat, RVec, Rat};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// `point = sum coefficients[i] generators[i]` with nonnegative coefficients.
    Membership {
        point: RVec,
        generators: Vec<RVec>,
        coefficients: RVec,
    },
    /// `separator` is nonnegative on every generator and negative on `point`.
    Separation {
        point: RVec,
        generators: Vec<RVec>,
        separator: RVec,
    },
    /// Every inequality is nonnegative on every generator.
    ValidInequalities {
        generators: Vec<RVec>,
        inequalities: Vec<RVec>,
    },
    /// Mutual membership of two generator lists, with explicit coefficients.
    ConeEquality {
        left: Vec<RVec>,
        right: Vec<RVec>,
        left_in_right: Vec<RVec>,
        right_in_left: Vec<RVec>,
    },
    /// `functional` is valid on `generators` and its tight generators have rank `dim - 1`.
    Facet {
        dim: usize,
        generators: Vec<RVec>,
        functional: RVec,
    },
    /// `ray` satisfies every inequality, the tight ones have rank `dim - 1`,
    /// and `positive` is strictly positive on the ray.
    ExtremeRay {
        dim: usize,
        inequalities: Vec<RVec>,
        ray: RVec,
        positive: RVec,
    },
    /// `left * right = product`.
    MatrixProduct {
        left: RMat,
        right: RMat,
        product: RMat,
    },
    /// `rank(matrix) = rank`.
    Rank {
        matrix: RMat,
        rank: usize,
    },
    /// Indices of `generators` on which `functional` vanishes are exactly `tight`.
    FaceIncidence {
        functional: RVec,
        generators: Vec<RVec>,
        tight: Vec<usize>,
    },
    /// Indices of `generators` on which every functional vanishes are exactly `common`.
    CommonZeros {
        functionals: Vec<RVec>,
        generators: Vec<RVec>,
        common: Vec<usize>,
    },
    /// Indices of `candidates` vanishing on every point are exactly `containing`.
    ContainingFunctionals {
        candidates: Vec<RVec>,
        points: Vec<RVec>,
        containing: Vec<usize>,
    },
    /// `functional` is strictly positive on every listed vector.
    StrictlyPositive {
        functional: RVec,
        vectors: Vec<RVec>,
    },
    /// `trace(matrix) = value`.
    Trace {
        matrix: RMat,
        #[serde(with = "crate::ratlin::rat_string")]
        value: Rat,
    },
    /// `map` sends every domain generator into the codomain's inequalities.
    PositiveMap {
        map: RMat,
        domain_generators: Vec<RVec>,
        codomain_inequalities: Vec<RVec>,
    },
    /// Primal point and dual vector certify the optimal value.
    LpOptimal {
        a: RMat,
        b: RVec,
        c: RVec,
        #[serde(with = "crate::ratlin::rat_string")]
        value: Rat,
        point: RVec,
        dual: RVec,
    },
    /// `target = sum coefficients[i] * vectors[i] functionals[i]^T`, coefficients positive.
    SumOfRankOne {
        target: RMat,
        functionals: Vec<RVec>,
        vectors: Vec<RVec>,
        coefficients: RVec,
    },
    /// `<left, right> < 0` entrywise pairing.
    NegativePairing {
        left: RMat,
        right: RMat,
    },
    /// `map` preserves the Lorentz form and fixes the last axis.
    LorentzForm {
        map: RMat,
    },
    /// Coordinate padding/selection maps with `s * t = id`.
    LorentzMaps {
        t: RMat,
        s: RMat,
    },
    /// `s2_iso(a, b, c) = image` and PSD-ness agrees with Lorentz membership.
    LorentzPsd {
        #[serde(with = "crate::ratlin::rat_string")]
        a: Rat,
        #[serde(with = "crate::ratlin::rat_string")]
        b: Rat,
        #[serde(with = "crate::ratlin::rat_string")]
        c: Rat,
        image: RVec,
        psd: bool,
    },
    /// `basis` has `dim` linearly independent members, all among
    /// `generators`, and every generator is a nonnegative combination of it.
    SimplexBasis {
        dim: usize,
        basis: Vec<RVec>,
        generators: Vec<RVec>,
        coefficients: Vec<RVec>,
    },
    /// More than `dim` pairwise non-parallel extreme rays of a pointed cone.
    NotSimplex {
        dim: usize,
        inequalities: Vec<RVec>,
        rays: Vec<RVec>,
        positive: RVec,
    },
    /// A nonzero vector orthogonal to every generator.
    Orthogonal {
        vector: RVec,
        generators: Vec<RVec>,
    },
    /// A nonzero vector `l` with both `l` and `-l` in the cone.
    LinealityVector {
        vector: RVec,
        generators: Vec<RVec>,
        plus: RVec,
        minus: RVec,
    },
    /// Every point lies in the Lorentz cone.
    LorentzMembers {
        points: Vec<RVec>,
    },
    /// Every point and its image under `map` lie in the Lorentz cones.
    LorentzImages {
        map: RMat,
        points: Vec<RVec>,
    },
    All {
        parts: Vec<Certificate>,
    },
}

fn extreme_ray(dim: usize, inequalities: &[RVec], ray: &RVec, positive: &RVec) -> bool {
    if ray.dim() != dim || positive.dim() != dim || !positive.dot(ray).is_positive() {
        return false;
    }
    if inequalities
        .iter()
        .any(|a| a.dim() != dim || a.dot(ray).is_negative())
    {
        return false;
    }
    let tight: Vec<RVec> = inequalities
        .iter()
        .filter(|a| a.dot(ray).is_zero())
        .cloned()
        .collect();
    rank_of(dim, &tight).is_some_and(|r| r + 1 == dim)
}

fn parallel(a: &RVec, b: &RVec) -> bool {
    RMat::from_rows(a.dim(), &[a.clone(), b.clone()]).is_ok_and(|m| m.rank() < 2)
}

fn combination(dim: usize, gens: &[RVec], coeffs: &RVec) -> Option<RVec> {
    if coeffs.dim() != gens.len() || !coeffs.is_nonnegative() {
        return None;
    }
    let mut acc = RVec::zeros(dim);
    for (g, c) in gens.iter().zip(coeffs.iter()) {
        if g.dim() != dim {
            return None;
        }
        acc = acc.axpy(c, g);
    }
    Some(acc)
}

fn rank_of(dim: usize, rows: &[RVec]) -> Option<usize> {
    if rows.is_empty() {
        return Some(0);
    }
    RMat::from_rows(dim, rows).ok().map(|m| m.rank())
}

fn is_member(point: &RVec, gens: &[RVec], coeffs: &RVec) -> bool {
    combination(point.dim(), gens, coeffs).is_some_and(|x| x == *point)
}

impl Certificate {
    pub fn all(parts: Vec<Certificate>) -> Self {
        Certificate::All { parts }
    }

    pub fn verify(&self) -> bool {
        match self {
            Certificate::Membership {
                point,
                generators,
                coefficients,
            } => is_member(point, generators, coefficients),
            Certificate::Separation {
                point,
                generators,
                separator,
            } => {
                separator.dim() == point.dim()
                    && separator.dot(point).is_negative()
                    && generators
                        .iter()
                        .all(|g| g.dim() == point.dim() && !separator.dot(g).is_negative())
            }
            Certificate::ValidInequalities {
                generators,
                inequalities,
            } => generators.iter().all(|g| {
                inequalities
                    .iter()
                    .all(|a| a.dim() == g.dim() && !a.dot(g).is_negative())
            }),
            Certificate::ConeEquality {
                left,
                right,
                left_in_right,
                right_in_left,
            } => {
                left.len() == left_in_right.len()
                    && right.len() == right_in_left.len()
                    && left
                        .iter()
                        .zip(left_in_right)
                        .all(|(p, c)| is_member(p, right, c))
                    && right
                        .iter()
                        .zip(right_in_left)
                        .all(|(p, c)| is_member(p, left, c))
            }
            Certificate::Facet {
                dim,
                generators,
                functional,
            } => {
                if functional.dim() != *dim || functional.is_zero() {
                    return false;
                }
                if generators
                    .iter()
                    .any(|g| g.dim() != *dim || functional.dot(g).is_negative())
                {
                    return false;
                }
                let tight: Vec<RVec> = generators
                    .iter()
                    .filter(|g| functional.dot(g).is_zero())
                    .cloned()
                    .collect();
                rank_of(*dim, &tight).is_some_and(|r| r + 1 == *dim)
            }
            Certificate::ExtremeRay {
                dim,
                inequalities,
                ray,
                positive,
            } => extreme_ray(*dim, inequalities, ray, positive),
            Certificate::MatrixProduct {
                left,
                right,
                product,
            } => left.mul(right).is_ok_and(|m| m == *product),
            Certificate::Rank { matrix, rank } => matrix.rank() == *rank,
            Certificate::FaceIncidence {
                functional,
                generators,
                tight,
            } => {
                let found: Vec<usize> = generators
                    .iter()
                    .enumerate()
                    .filter(|(_, g)| g.dim() == functional.dim() && functional.dot(g).is_zero())
                    .map(|(i, _)| i)
                    .collect();
                found == *tight
                    && generators
                        .iter()
                        .all(|g| g.dim() == functional.dim() && !functional.dot(g).is_negative())
            }
            Certificate::CommonZeros {
                functionals,
                generators,
                common,
            } => {
                let found: Vec<usize> = generators
                    .iter()
                    .enumerate()
                    .filter(|(_, g)| {
                        functionals
                            .iter()
                            .all(|f| f.dim() == g.dim() && f.dot(g).is_zero())
                    })
                    .map(|(i, _)| i)
                    .collect();
                found == *common
            }
            Certificate::ContainingFunctionals {
                candidates,
                points,
                containing,
            } => {
                let found: Vec<usize> = candidates
                    .iter()
                    .enumerate()
                    .filter(|(_, f)| {
                        points
                            .iter()
                            .all(|p| p.dim() == f.dim() && f.dot(p).is_zero())
                    })
                    .map(|(i, _)| i)
                    .collect();
                found == *containing
            }
            Certificate::StrictlyPositive {
                functional,
                vectors,
            } => vectors
                .iter()
                .all(|v| v.dim() == functional.dim() && functional.dot(v).is_positive()),
            Certificate::Trace { matrix, value } => {
                matrix.rows() == matrix.cols() && matrix.trace() == *value
            }
            Certificate::PositiveMap {
                map,
                domain_generators,
                codomain_inequalities,
            } => domain_generators.iter().all(|g| {
                map.mul_vec(g).is_ok_and(|y| {
                    codomain_inequalities
                        .iter()
                        .all(|a| a.dim() == y.dim() && !a.dot(&y).is_negative())
                })
            }),
            Certificate::LpOptimal {
                a,
                b,
                c,
                value,
                point,
                dual,
            } => LinearProgram::new(a.clone(), b.clone(), c.clone()).is_ok_and(|lp| {
                lp.verify(&LpOutcome::Optimal {
                    value: value.clone(),
                    point: point.clone(),
                    dual: dual.clone(),
                })
            }),
            Certificate::SumOfRankOne {
                target,
                functionals,
                vectors,
                coefficients,
            } => {
                if functionals.len() != vectors.len() || coefficients.dim() != vectors.len() {
                    return false;
                }
                let mut acc = RMat::zeros(target.rows(), target.cols());
                for ((phi, y), c) in functionals.iter().zip(vectors).zip(coefficients.iter()) {
                    if !c.is_positive() || y.dim() != target.rows() || phi.dim() != target.cols() {
                        return false;
                    }
                    acc = acc.add(&RMat::outer(y, phi).scale(c)).expect("dims");
                }
                acc == *target
            }
            Certificate::NegativePairing { left, right } => {
                left.pairing(right).is_ok_and(|v| v.is_negative())
            }
            Certificate::LorentzForm { map } => preserves_lorentz(map),
            Certificate::LorentzMaps { t, s } => {
                is_lorentz_coordinate_map(t)
                    && is_lorentz_coordinate_map(s)
                    && s.mul(t).is_ok_and(|m| m.is_identity())
            }
            Certificate::LorentzPsd {
                a,
                b,
                c,
                image,
                psd,
            } => {
                s2_iso(a, b, c) == *image
                    && is_psd_2x2(a, b, c) == *psd
                    && lorentz_membership(image).is_member() == *psd
            }
            Certificate::SimplexBasis {
                dim,
                basis,
                generators,
                coefficients,
            } => {
                basis.len() == *dim
                    && rank_of(*dim, basis) == Some(*dim)
                    && basis.iter().all(|b| generators.contains(b))
                    && generators.len() == coefficients.len()
                    && generators
                        .iter()
                        .zip(coefficients)
                        .all(|(g, c)| is_member(g, basis, c))
            }
            Certificate::NotSimplex {
                dim,
                inequalities,
                rays,
                positive,
            } => {
                rays.len() > *dim
                    && rays
                        .iter()
                        .all(|r| extreme_ray(*dim, inequalities, r, positive))
                    && (0..rays.len())
                        .all(|i| (i + 1..rays.len()).all(|j| !parallel(&rays[i], &rays[j])))
            }
            Certificate::Orthogonal { vector, generators } => {
                !vector.is_zero()
                    && generators
                        .iter()
                        .all(|g| g.dim() == vector.dim() && vector.dot(g).is_zero())
            }
            Certificate::LinealityVector {
                vector,
                generators,
                plus,
                minus,
            } => {
                !vector.is_zero()
                    && is_member(vector, generators, plus)
                    && is_member(&vector.neg(), generators, minus)
            }
            Certificate::LorentzMembers { points } => {
                points.iter().all(|p| lorentz_membership(p).is_member())
            }
            Certificate::LorentzImages { map, points } => points.iter().all(|p| {
                lorentz_membership(p).is_member()
                    && map
                        .mul_vec(p)
                        .is_ok_and(|q| lorentz_membership(&q).is_member())
            }),
            Certificate::All { parts } => parts.iter().all(Certificate::verify),
        }
    }
}
