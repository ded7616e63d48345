//! The face `C` of `E min F` for two polygon cones and the non-product facet
//! above it. Pass `large` to run the hexagon/octagon pair (about a minute).

use conetensor::corpus::{obstruction_instances, DEFAULT_SEED};
use conetensor::tensorcone::obstruction_3x3;

pub fn run_instance(index: usize) -> conetensor::Result<()> {
    let (e, f) = obstruction_instances(DEFAULT_SEED).swap_remove(index);
    let r = obstruction_3x3(&e, &f)?;
    println!("m = {}, n = {}", r.m, r.n);
    println!("  rays in C: {:?}", r.tight_rays);
    println!(
        "  product facets above C: {:?}",
        r.containing_product_facets
    );
    println!(
        "  dim C = {}, facets above C = {}",
        r.face_dim, r.containing_facets
    );
    println!(
        "  facet functional of rank {}:\n{}",
        r.functional_rank, r.extremal_functional.matrix
    );
    assert!(r.all_pass());
    Ok(())
}

pub fn run() -> conetensor::Result<()> {
    run_instance(0)
}

#[allow(dead_code)]
fn main() -> conetensor::Result<()> {
    if std::env::args().any(|a| a == "large") {
        run_instance(2)
    } else {
        run()
    }
}
