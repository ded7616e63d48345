//! The simplex characterizations evaluated on a few cones.

use conetensor::cone::Cone;
use conetensor::corpus::{cube_cone, square_cone};
use conetensor::sep::check_min_equals_max_equivalences;

pub fn run() -> conetensor::Result<()> {
    let cones = [
        ("orthant-3", Cone::orthant(3)),
        ("square", square_cone().cone),
        ("cube", cube_cone()),
    ];
    println!(
        "{:<10} {:>8} {:>10} {:>10} {:>10}  min trace",
        "cone", "simplex", "id sep", "trace>=0", "min=max"
    );
    for (name, c) in cones {
        let r = check_min_equals_max_equivalences(&c)?;
        let [a, b, t, d] = r.conditions();
        println!(
            "{name:<10} {a:>8} {b:>10} {t:>10} {d:>10}  {}",
            r.min_trace.value
        );
        assert!(r.agree());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> conetensor::Result<()> {
    run()
}
