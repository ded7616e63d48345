//! Facet and vertex-figure retracts, and the search for a 3-dimensional
//! non-simplex retract.

use conetensor::corpus::{cube_cone, square_pyramid_cone};
use conetensor::retract::{
    facet_retract, retract_transfer, three_dim_retract_scan, verify_retraction, vertex_figure,
};

pub fn run() -> conetensor::Result<()> {
    let cube = cube_cone();
    let vf = vertex_figure(&cube, 0)?;
    println!(
        "vertex figure of the cube cone: {} rays, check {:?}",
        vf.sub.extremal_rays().len(),
        verify_retraction(&vf)
    );
    let fr = facet_retract(&cube, 0)?;
    println!(
        "facet retract: {} rays, S T = id: {}",
        fr.sub.extremal_rays().len(),
        fr.s.mul(&fr.t)?.is_identity()
    );

    let pyramid = square_pyramid_cone();
    if let Some(r) = three_dim_retract_scan(&pyramid)? {
        println!(
            "pyramid retracts onto a 3-dimensional cone with {} rays",
            r.sub.extremal_rays().len()
        );
        // the square retract already has min != max, so the pyramid does too
        let t = retract_transfer(&pyramid, &pyramid, &r, &r)?;
        println!("transfer: {}", t.note);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> conetensor::Result<()> {
    run()
}
