//! Build cones from generators or inequalities and read off their structure.

use conetensor::cone::{cone_equal, dual, polygon_homogenization, Cone};
use conetensor::io::{parse_cone, to_json, ConeFile};
use conetensor::ratlin::RVec;

pub fn run() -> conetensor::Result<()> {
    // cone over a regular hexagon-like polygon with integer vertices
    let hexagon: Vec<RVec> = [(2, 0), (1, 2), (-1, 2), (-2, 0), (-1, -2), (1, -2)]
        .iter()
        .map(|&(x, y)| RVec::from_ints(&[x, y]))
        .collect();
    let p = polygon_homogenization(&hexagon)?;
    let c = &p.cone;
    println!(
        "hexagon cone: {} rays, {} facets",
        c.extremal_rays().len(),
        c.facets().len()
    );
    println!(
        "  proper {}, generating {}, simplex {}",
        c.is_proper(),
        c.is_generating(),
        c.is_simplex()
    );
    println!(
        "  strictly positive functional {}",
        c.strictly_positive_functional()?
    );

    let d = dual(c);
    println!(
        "dual: {} rays, facets = rays of the original: {}",
        d.extremal_rays().len(),
        d.facets() == c.extremal_rays()
    );
    assert!(cone_equal(c, &dual(&d))?);

    // a half-space has a 2-dimensional lineality space
    let half = parse_cone(r#"{"dim": 3, "inequalities": [["0", "0", "1"]]}"#)?;
    println!(
        "half-space: lineality {}, proper {}",
        half.lineality_basis().len(),
        half.is_proper()
    );

    // redundant generators are dropped
    let wedge = Cone::from_generators(
        2,
        vec![
            RVec::from_ints(&[1, 0]),
            RVec::from_ints(&[1, 1]),
            RVec::from_ints(&[0, 1]),
        ],
    )?;
    println!(
        "wedge in minimal form:\n{}",
        to_json(&ConeFile::generators_of(&wedge))?
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> conetensor::Result<()> {
    run()
}
