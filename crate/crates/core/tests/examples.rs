#[path = "../examples/certificates.rs"]
mod certificates;
#[path = "../examples/cone_analysis.rs"]
mod cone_analysis;
#[path = "../examples/lorentz_witnesses.rs"]
mod lorentz_witnesses;
#[path = "../examples/min_equals_max_theorem.rs"]
mod min_equals_max_theorem;
#[path = "../examples/polyhedral_3x3.rs"]
mod polyhedral_3x3;
#[path = "../examples/retracts.rs"]
mod retracts;
#[path = "../examples/separability.rs"]
mod separability;
#[path = "../examples/tensor_products.rs"]
mod tensor_products;

#[test]
fn examples_run() {
    cone_analysis::run().unwrap();
    tensor_products::run().unwrap();
    separability::run().unwrap();
    min_equals_max_theorem::run().unwrap();
    polyhedral_3x3::run().unwrap();
    retracts::run().unwrap();
    lorentz_witnesses::run().unwrap();
    certificates::run().unwrap();
}
