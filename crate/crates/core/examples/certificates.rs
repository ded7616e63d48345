//! Reports carry certificates that can be re-checked from JSON alone.

use conetensor::corpus::{partial_simplex_3, square_cone};
use conetensor::io::to_json;
use conetensor::report::{verify_report, Report};
use conetensor::suites::{aubrun_report, thm_min_equals_max_report};

pub fn run() -> conetensor::Result<()> {
    let sq = square_cone().cone;
    let report = thm_min_equals_max_report(&sq, "square")?;
    print!("{}", report.to_text());

    let json = to_json(&report)?;
    println!("report JSON: {} bytes", json.len());
    let back: Report = serde_json::from_str(&json)?;
    let v = verify_report(&back);
    println!(
        "re-verified {} claims, {} failures",
        v.checked,
        v.failures.len()
    );

    // tampering with an exact value breaks the certificate
    let bad: Report = serde_json::from_str(&json.replace("\"-1/16\"", "\"-1/15\""))?;
    println!("tampered report passes: {}", verify_report(&bad).ok());

    print!("{}", aubrun_report(&sq, &partial_simplex_3())?.to_text());
    Ok(())
}

#[allow(dead_code)]
fn main() -> conetensor::Result<()> {
    run()
}
