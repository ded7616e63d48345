//! JSON file formats. Rationals are always strings `"p/q"` or `"p"`.
//!
//! * cone: `{"dim": n, "generators": [[..], ..]}` or `{"dim": n, "inequalities": [[..], ..]}`
//! * tensor element: `{"dimE": a, "dimF": b, "matrix": [[..], ..]}`
//! * linear map: `{"matrix": [[..], ..]}` with `dim F` rows and `dim E` columns
//! * retraction: `{"T": [[..]], "S": [[..]], "sub": cone}`

use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::cone::{Cone, ConeH, ConeV};
use crate::error::{Error, Result};
use crate::ratlin::{RMat, RVec};
use crate::retract::Retraction;
use crate::tensorcone::TensorElement;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConeFile {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<RVec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inequalities: Option<Vec<RVec>>,
}

impl ConeFile {
    /// Minimal generator form of an analyzed cone.
    pub fn generators_of(c: &Cone) -> Self {
        ConeFile {
            dim: c.dim(),
            generators: Some(c.generators()),
            inequalities: None,
        }
    }

    /// Minimal inequality form of an analyzed cone.
    pub fn inequalities_of(c: &Cone) -> Self {
        ConeFile {
            dim: c.dim(),
            generators: None,
            inequalities: Some(c.inequalities()),
        }
    }

    pub fn to_cone(&self) -> Result<Cone> {
        match (&self.generators, &self.inequalities) {
            (Some(g), None) => Cone::from_v(ConeV::new(self.dim, g.clone())?),
            (None, Some(h)) => Cone::from_h(ConeH::new(self.dim, h.clone())?),
            _ => Err(Error::Parse(
                "cone file needs exactly one of \"generators\" and \"inequalities\"".into(),
            )),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapFile {
    pub matrix: RMat,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RetractionFile {
    #[serde(rename = "T")]
    pub t: RMat,
    #[serde(rename = "S")]
    pub s: RMat,
    pub sub: ConeFile,
}

impl From<&Retraction> for RetractionFile {
    fn from(r: &Retraction) -> Self {
        RetractionFile {
            t: r.t.clone(),
            s: r.s.clone(),
            sub: ConeFile::generators_of(&r.sub),
        }
    }
}

pub fn parse_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    Ok(serde_json::from_str(text)?)
}

pub fn read_json<T: DeserializeOwned>(path: impl AsRef<Path>) -> Result<T> {
    parse_json(&fs::read_to_string(path)?)
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)?)
}

pub fn read_cone(path: impl AsRef<Path>) -> Result<Cone> {
    read_json::<ConeFile>(path)?.to_cone()
}

pub fn parse_cone(text: &str) -> Result<Cone> {
    parse_json::<ConeFile>(text)?.to_cone()
}

/// Linear map; the column count is checked by the caller against `dim E`.
pub fn read_map(path: impl AsRef<Path>) -> Result<RMat> {
    Ok(read_json::<MapFile>(path)?.matrix)
}

pub fn parse_tensor(text: &str) -> Result<TensorElement> {
    parse_json::<TensorElement>(text)?.normalized()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cone_file_round_trip() {
        let text = r#"{"dim": 2, "generators": [["1", "0"], ["1/2", "3"]]}"#;
        let c = parse_cone(text).unwrap();
        assert_eq!(c.extremal_rays().len(), 2);
        let back = to_json(&ConeFile::generators_of(&c)).unwrap();
        let again = parse_cone(&back).unwrap();
        assert!(crate::cone::cone_equal(&c, &again).unwrap());
        let h = to_json(&ConeFile::inequalities_of(&c)).unwrap();
        assert!(h.contains("inequalities") && !h.contains("generators"));
        assert!(crate::cone::cone_equal(&c, &parse_cone(&h).unwrap()).unwrap());
    }

    #[test]
    fn cone_file_needs_exactly_one_key() {
        assert!(parse_cone(r#"{"dim": 2}"#).is_err());
        assert!(
            parse_cone(r#"{"dim": 1, "generators": [["1"]], "inequalities": [["1"]]}"#).is_err()
        );
        assert!(parse_cone(r#"{"dim": 2, "generators": [["1"]]}"#).is_err());
        assert!(parse_cone(r#"{"dim": 1, "generators": [["x"]]}"#).is_err());
    }

    #[test]
    fn tensor_and_map_files() {
        let t = parse_tensor(r#"{"dimE": 2, "dimF": 1, "matrix": [["1"], ["-2/3"]]}"#).unwrap();
        assert_eq!(t.matrix.rows(), 2);
        assert!(parse_tensor(r#"{"dimE": 3, "dimF": 1, "matrix": [["1"], ["2"]]}"#).is_err());
        let m: MapFile = parse_json(r#"{"matrix": [["1", "0"], ["0", "1"]]}"#).unwrap();
        assert!(m.matrix.is_identity());
    }
}
