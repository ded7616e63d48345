//! Rational witnesses on the Lorentz cone.

use conetensor::lorentz::{
    inner_polyhedral_approx, is_psd_2x2, lorentz_membership, lorentz_retract_maps,
    preserves_lorentz, ray_outside_approx, rotation_witness, s2_iso,
};
use conetensor::ratlin::rat;

pub fn run() -> conetensor::Result<()> {
    let w = rotation_witness();
    println!(
        "W = diag(-1, -1, 1): preserves L3 {}, trace {}",
        preserves_lorentz(&w),
        w.trace()
    );

    let (t, s) = lorentz_retract_maps(3, 5)?;
    let tws = t.mul(&w)?.mul(&s)?;
    println!("T W S on L5: trace {}", tws.trace());

    let (a, b, c) = (rat(2, 1), rat(1, 1), rat(1, 2));
    let v = s2_iso(&a, &b, &c);
    println!(
        "[[2, 1], [1, 1/2]] -> {v}: psd {}, in L3 {:?}",
        is_psd_2x2(&a, &b, &c),
        lorentz_membership(&v)
    );

    for k in [4, 8] {
        let p = inner_polyhedral_approx(k)?;
        let out = ray_outside_approx(k);
        println!(
            "{k}-gon inside L3 misses boundary ray {out}: {}",
            !p.cone.contains(&out)
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> conetensor::Result<()> {
    run()
}
