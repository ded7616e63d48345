use std::cmp::Ordering;

use num_traits::{Signed, Zero};

use super::{Cone, ConeH, ConeV};
use crate::error::{Error, Result};
use crate::ratlin::{RVec, Rat};

/// Cross product in `R^3`.
pub fn cross(a: &RVec, b: &RVec) -> RVec {
    RVec::new(vec![
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ])
}

/// Cone over a convex polygon placed at height 1, with rays and facets kept
/// in cyclic order: `facets[i]` supports exactly `rays[i]` and `rays[i + 1]`.
#[derive(Clone, Debug)]
pub struct PolygonCone {
    pub cone: Cone,
    pub rays: Vec<RVec>,
    pub facets: Vec<RVec>,
}

impl PolygonCone {
    pub fn len(&self) -> usize {
        self.rays.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rays.is_empty()
    }

    pub fn ray(&self, i: usize) -> &RVec {
        &self.rays[i % self.rays.len()]
    }

    pub fn facet(&self, i: usize) -> &RVec {
        &self.facets[i % self.facets.len()]
    }

    /// Recover the cyclic structure of a 3-dimensional proper generating cone
    /// whose rays all have positive last coordinate.
    pub fn from_cone(c: &Cone) -> Result<Self> {
        if c.dim() != 3 || !c.is_proper() || !c.is_generating() {
            return Err(Error::NotPolygonCone);
        }
        let mut pts = Vec::new();
        for r in c.extremal_rays() {
            if !r[2].is_positive() {
                return Err(Error::NotPolygonCone);
            }
            pts.push(RVec::new(vec![&r[0] / &r[2], &r[1] / &r[2]]));
        }
        let n = Rat::from_integer(pts.len().into());
        let cx = pts.iter().map(|p| p[0].clone()).sum::<Rat>() / &n;
        let cy = pts.iter().map(|p| p[1].clone()).sum::<Rat>() / &n;
        let half = |p: &RVec| {
            let (x, y) = (&p[0] - &cx, &p[1] - &cy);
            y.is_negative() || (y.is_zero() && x.is_negative())
        };
        pts.sort_by(|a, b| {
            half(a).cmp(&half(b)).then_with(|| {
                let c = (&a[0] - &cx) * (&b[1] - &cy) - (&a[1] - &cy) * (&b[0] - &cx);
                if c.is_positive() {
                    Ordering::Less
                } else if c.is_negative() {
                    Ordering::Greater
                } else {
                    Ordering::Equal
                }
            })
        });
        polygon_homogenization(&pts).map_err(|_| Error::NotPolygonCone)
    }
}

fn left_turn(a: &RVec, b: &RVec, p: &RVec) -> Rat {
    (&b[0] - &a[0]) * (&p[1] - &a[1]) - (&b[1] - &a[1]) * (&p[0] - &a[0])
}

/// Homogenize a counterclockwise strictly convex polygon into `R^3`.
pub fn polygon_homogenization(vertices: &[RVec]) -> Result<PolygonCone> {
    let m = vertices.len();
    if m < 3 || vertices.iter().any(|v| v.dim() != 2) {
        return Err(Error::NotConvexPosition);
    }
    for i in 0..m {
        let (a, b) = (&vertices[i], &vertices[(i + 1) % m]);
        for (j, p) in vertices.iter().enumerate() {
            if j != i && j != (i + 1) % m && !left_turn(a, b, p).is_positive() {
                return Err(Error::NotConvexPosition);
            }
        }
    }
    let rays: Vec<RVec> = vertices
        .iter()
        .map(|v| {
            RVec::new(vec![
                v[0].clone(),
                v[1].clone(),
                Rat::from_integer(1.into()),
            ])
        })
        .collect();
    let facets: Vec<RVec> = (0..m)
        .map(|i| cross(&rays[i], &rays[(i + 1) % m]))
        .collect();
    let cone = Cone::from_pair(
        ConeV {
            dim: 3,
            generators: rays.clone(),
        },
        ConeH {
            dim: 3,
            inequalities: facets.clone(),
        },
    )?;
    Ok(PolygonCone { cone, rays, facets })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratlin::rat;

    fn pts(xy: &[(i64, i64)]) -> Vec<RVec> {
        xy.iter().map(|&(x, y)| RVec::from_ints(&[x, y])).collect()
    }

    #[test]
    fn unit_square() {
        let p = polygon_homogenization(&pts(&[(1, 1), (-1, 1), (-1, -1), (1, -1)])).unwrap();
        assert_eq!(p.cone.extremal_rays().len(), 4);
        assert_eq!(p.cone.facets().len(), 4);
        assert!(!p.cone.is_simplex());
    }

    #[test]
    fn triangle_is_simplex() {
        let p = polygon_homogenization(&pts(&[(0, 0), (1, 0), (0, 1)])).unwrap();
        assert!(p.cone.is_simplex());
    }

    #[test]
    fn hexagon_tightness_table() {
        // rational points close to a regular hexagon
        let v = vec![
            RVec::new(vec![rat(1, 1), rat(0, 1)]),
            RVec::new(vec![rat(1, 2), rat(7, 8)]),
            RVec::new(vec![rat(-1, 2), rat(7, 8)]),
            RVec::new(vec![rat(-1, 1), rat(0, 1)]),
            RVec::new(vec![rat(-1, 2), rat(-7, 8)]),
            RVec::new(vec![rat(1, 2), rat(-7, 8)]),
        ];
        let p = polygon_homogenization(&v).unwrap();
        assert_eq!(p.cone.extremal_rays().len(), 6);
        for i in 0..6 {
            for j in 0..6 {
                let val = p.facets[i].dot(&p.rays[j]);
                let tight = j == i || j == (i + 1) % 6;
                assert_eq!(val.is_zero(), tight);
                assert!(!val.is_negative());
            }
        }
    }

    #[test]
    fn rejects_clockwise_and_collinear() {
        assert!(matches!(
            polygon_homogenization(&pts(&[(0, 0), (0, 1), (1, 0)])),
            Err(Error::NotConvexPosition)
        ));
        assert!(polygon_homogenization(&pts(&[(0, 0), (1, 0), (2, 0), (0, 1)])).is_err());
        assert!(polygon_homogenization(&pts(&[(0, 0), (1, 0)])).is_err());
    }

    #[test]
    fn from_cone_recovers_cyclic_order() {
        let gens = vec![
            RVec::from_ints(&[1, 1, 1]),
            RVec::from_ints(&[-1, -1, 1]),
            RVec::from_ints(&[1, -1, 1]),
            RVec::from_ints(&[-1, 1, 1]),
        ];
        let c = Cone::from_generators(3, gens).unwrap();
        let p = PolygonCone::from_cone(&c).unwrap();
        for i in 0..4 {
            assert!(p.facet(i).dot(p.ray(i)).is_zero());
            assert!(p.facet(i).dot(p.ray(i + 1)).is_zero());
        }
        assert!(PolygonCone::from_cone(&Cone::orthant(2)).is_err());
    }
}
