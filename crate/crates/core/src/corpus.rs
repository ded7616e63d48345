//! Named instance cones used by the examples, the test suites and the CLI.

use num_traits::One;
use rand::seq::index::sample;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cone::{direct_sum, polygon_homogenization, Cone, PolygonCone};
use crate::error::Result;
use crate::lorentz::inner_polyhedral_approx;
use crate::ratlin::{int, RMat, RVec, Rat};
use crate::tensorcone::projective_cone;

pub const DEFAULT_SEED: u64 = 20240607;

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub cone: Cone,
}

fn entry(name: impl Into<String>, cone: Cone) -> CorpusEntry {
    CorpusEntry {
        name: name.into(),
        cone,
    }
}

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn square_points() -> Vec<RVec> {
    [(1, 1), (-1, 1), (-1, -1), (1, -1)]
        .iter()
        .map(|&(x, y)| RVec::from_ints(&[x, y]))
        .collect()
}

/// Cone over the square with vertices `(+-1, +-1)`.
pub fn square_cone() -> PolygonCone {
    polygon_homogenization(&square_points()).expect("square is convex")
}

/// Cone over the cube `[-1, 1]^3` in `R^4`.
pub fn cube_cone() -> Cone {
    let mut gens = Vec::new();
    for s in 0..8 {
        let sign = |b: i64| if s >> b & 1 == 1 { -1 } else { 1 };
        gens.push(RVec::from_ints(&[sign(0), sign(1), sign(2), 1]));
    }
    Cone::from_generators(4, gens).expect("cube")
}

/// Cone over a square pyramid in `R^4`.
pub fn square_pyramid_cone() -> Cone {
    let mut gens: Vec<RVec> = square_points()
        .iter()
        .map(|p| p.concat(&RVec::from_ints(&[0, 1])))
        .collect();
    gens.push(RVec::from_ints(&[0, 0, 1, 1]));
    Cone::from_generators(4, gens).expect("pyramid")
}

/// Cone generated by the columns of a random integer matrix with positive
/// determinant.
pub fn random_simplex<R: Rng>(rng: &mut R, dim: usize) -> Cone {
    loop {
        let cols: Vec<RVec> = (0..dim)
            .map(|_| (0..dim).map(|_| int(rng.gen_range(-3..=3))).collect())
            .collect();
        if RMat::from_cols(dim, &cols).expect("dims").rank() == dim {
            return Cone::from_generators(dim, cols).expect("simplex");
        }
    }
}

/// Random convex `m`-gon: distinct rational points on the unit circle,
/// sorted by angle, moved by a random rational affine map with positive
/// determinant.
pub fn random_polygon<R: Rng>(rng: &mut R, m: usize) -> PolygonCone {
    let n = 8 * m.max(4);
    loop {
        let mut idx = sample(rng, n, m).into_vec();
        idx.sort_unstable();
        let pts: Vec<(Rat, Rat)> = idx
            .iter()
            .map(|&i| {
                // half-angle parameter in [-2, 2), increasing, so the points run counterclockwise
                let t = Rat::new((4 * i as i64 - 2 * n as i64).into(), (n as i64).into());
                let d = Rat::one() + &t * &t;
                ((Rat::one() - &t * &t) / &d, int(2) * &t / &d)
            })
            .collect();
        let a = [
            rng.gen_range(1..=4),
            rng.gen_range(-2..=2),
            rng.gen_range(-2..=2),
            rng.gen_range(1..=4),
        ];
        if a[0] * a[3] - a[1] * a[2] <= 0 {
            continue;
        }
        let shift = (
            Rat::new(rng.gen_range(-1..=1).into(), 4.into()),
            Rat::new(rng.gen_range(-1..=1).into(), 4.into()),
        );
        let moved: Vec<RVec> = pts
            .iter()
            .map(|(x, y)| {
                RVec::new(vec![
                    int(a[0]) * x + int(a[1]) * y + &shift.0,
                    int(a[2]) * x + int(a[3]) * y + &shift.1,
                ])
            })
            .collect();
        if let Ok(p) = polygon_homogenization(&moved) {
            return p;
        }
    }
}

/// Partial simplex cone: `e_1` and `e_2 + e_3` in `R^3`.
pub fn partial_simplex_3() -> Cone {
    Cone::from_generators(
        3,
        vec![RVec::from_ints(&[1, 0, 0]), RVec::from_ints(&[0, 1, 1])],
    )
    .expect("partial simplex")
}

/// The standard corpus. The seed only affects the randomized members.
pub fn standard_corpus(seed: u64) -> Result<Vec<CorpusEntry>> {
    let mut rng = rng_from_seed(seed);
    let mut out = Vec::new();
    for n in 1..=5 {
        out.push(entry(format!("orthant-{n}"), Cone::orthant(n)));
    }
    out.push(entry("random-simplex-3", random_simplex(&mut rng, 3)));
    out.push(entry("random-simplex-4", random_simplex(&mut rng, 4)));
    for k in 3..=8 {
        out.push(entry(
            format!("lorentz-gon-{k}"),
            inner_polyhedral_approx(k)?.cone,
        ));
    }
    out.push(entry("square", square_cone().cone));
    out.push(entry("random-pentagon", random_polygon(&mut rng, 5).cone));
    out.push(entry("random-hexagon", random_polygon(&mut rng, 6).cone));
    out.push(entry(
        "square-plus-ray",
        direct_sum(&square_cone().cone, &Cone::orthant(1)),
    ));
    out.push(entry(
        "square-min-orthant-2",
        projective_cone(&square_cone().cone, &Cone::orthant(2)),
    ));
    out.push(entry("partial-simplex-3", partial_simplex_3()));
    out.push(entry(
        "partial-simplex-4",
        Cone::from_generators(
            4,
            vec![
                RVec::from_ints(&[1, 0, 0, 0]),
                RVec::from_ints(&[0, 1, 0, 1]),
                RVec::from_ints(&[0, 0, 1, -1]),
            ],
        )?,
    ));
    out.push(entry("cube-4", cube_cone()));
    out.push(entry("square-pyramid-4", square_pyramid_cone()));
    out.push(entry(
        "half-space-3",
        Cone::from_inequalities(3, vec![RVec::from_ints(&[0, 0, 1])])?,
    ));
    out.push(entry("whole-space-2", Cone::whole_space(2)));
    out.push(entry("zero-2", Cone::zero(2)));
    Ok(out)
}

/// Polygon sizes used for the 3x3 obstruction.
pub const OBSTRUCTION_SIZES: [(usize, usize); 3] = [(4, 4), (5, 4), (6, 8)];

/// Random polygon pairs of sizes [`OBSTRUCTION_SIZES`].
pub fn obstruction_instances(seed: u64) -> Vec<(PolygonCone, PolygonCone)> {
    let mut rng = rng_from_seed(seed);
    OBSTRUCTION_SIZES
        .iter()
        .map(|&(m, n)| (random_polygon(&mut rng, m), random_polygon(&mut rng, n)))
        .collect()
}

/// Corpus members that are proper and generating.
pub fn proper_generating(corpus: &[CorpusEntry]) -> Vec<&CorpusEntry> {
    corpus
        .iter()
        .filter(|e| e.cone.is_proper() && e.cone.is_generating())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_shape() {
        let c = standard_corpus(DEFAULT_SEED).unwrap();
        assert!(c.len() >= 20);
        let mut names: Vec<&str> = c.iter().map(|e| e.name.as_str()).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), c.len());
        assert_eq!(proper_generating(&c).len(), 20);
    }

    #[test]
    fn random_members_are_deterministic() {
        let a = random_polygon(&mut rng_from_seed(3), 6);
        let b = random_polygon(&mut rng_from_seed(3), 6);
        assert_eq!(a.rays, b.rays);
        assert_eq!(a.len(), 6);
        assert!(random_simplex(&mut rng_from_seed(1), 4).is_simplex());
    }

    #[test]
    fn special_cones() {
        let cube = cube_cone();
        assert_eq!(cube.extremal_rays().len(), 8);
        assert_eq!(cube.facets().len(), 6);
        let pyr = square_pyramid_cone();
        assert_eq!(pyr.extremal_rays().len(), 5);
        assert_eq!(pyr.facets().len(), 5);
        assert!(partial_simplex_3().is_partial_simplex());
    }
}
