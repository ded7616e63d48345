//! Projective and injective tensor products, and their duality.

use conetensor::cone::{cone_equal, dual, Cone};
use conetensor::corpus::square_cone;
use conetensor::ratlin::RMat;
use conetensor::tensorcone::{
    in_injective, injective_cone, min_equals_max, projective_cone, MinMaxVerdict, TensorElement,
};

pub fn run() -> conetensor::Result<()> {
    let sq = square_cone().cone;
    let min = projective_cone(&sq, &sq);
    let max = injective_cone(&sq, &sq);
    println!(
        "square min square: {} rays, {} facets",
        min.extremal_rays().len(),
        min.facets().len()
    );
    println!(
        "square max square: {} rays, {} facets",
        max.extremal_rays().len(),
        max.facets().len()
    );
    assert!(cone_equal(
        &dual(&min),
        &injective_cone(&dual(&sq), &dual(&sq))
    )?);

    // the identity of R^3, read in dual(E) (x) E, is in the injective cone
    // but not in the projective one
    let id = TensorElement::new(RMat::identity(3));
    println!(
        "identity in dual(sq) max sq: {}",
        in_injective(&id, &dual(&sq), &sq)?
    );
    match min_equals_max(&dual(&sq), &sq) {
        MinMaxVerdict::Differs { witness, separator } => {
            println!(
                "differs: witness of rank {}, separator\n{}",
                witness.rank(),
                separator.matrix
            )
        }
        MinMaxVerdict::Equal => println!("equal"),
    }

    // a simplex factor makes the two products agree
    let o = Cone::orthant(2);
    println!(
        "orthant(2) vs square: equal = {}",
        min_equals_max(&o, &sq).is_equal()
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> conetensor::Result<()> {
    run()
}
