//! Separable and entangled positive maps, and factorization through an orthant.

use conetensor::cone::Cone;
use conetensor::corpus::square_cone;
use conetensor::ratlin::{int, RMat};
use conetensor::sep::{factor_through_simplex, is_positive_map, is_separable, SeparabilityVerdict};

pub fn run() -> conetensor::Result<()> {
    let sq = square_cone().cone;
    let id = RMat::identity(3);
    match is_separable(&id, &sq, &sq)? {
        SeparabilityVerdict::Entangled { witness } => {
            println!(
                "identity on the square is entangled; witness\n{}",
                witness.matrix
            )
        }
        SeparabilityVerdict::Separable { .. } => unreachable!(),
    }

    // reflections are positive but not separable either
    let flip = RMat::diag(&[int(-1), int(1), int(1)]);
    println!("flip positive: {}", is_positive_map(&flip, &sq, &sq)?);

    // any positive map into an orthant factors through it
    let o = Cone::orthant(3);
    let t = RMat::from_ints(&[&[2, 1, 0], &[0, 1, 1], &[1, 0, 3]]);
    let v = is_separable(&t, &o, &o)?;
    let fac = factor_through_simplex(&v, &t)?;
    println!(
        "map on the orthant: n = {}\nR = {}\nS = {}",
        fac.n, fac.r, fac.s
    );
    assert!(fac.verify(&t, &o, &o));
    Ok(())
}

#[allow(dead_code)]
fn main() -> conetensor::Result<()> {
    run()
}
