pub mod certificate;
pub mod cone;
pub mod corpus;
pub mod error;
pub mod io;
pub mod lorentz;
pub mod lp;
pub mod ratlin;
pub mod report;
pub mod retract;
pub mod sep;
pub mod suites;
pub mod tensorcone;

pub use error::{Error, Result};
