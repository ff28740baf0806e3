//! JSON model files and the bundled fixtures.

use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::braided_cat::{build_model, build_model_unchecked, BraidedModel, Braiding, CatError};
use crate::linalg::Mat;
use crate::scalars::{parse_scalar, FieldSpec, ScalarError};
use crate::tensor_hopf::rescale;

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("cannot read model file: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed model file: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{what}: {source}")]
    Scalar { what: String, source: ScalarError },
    #[error("shape error: {0}")]
    Shape(String),
    #[error(transparent)]
    Cat(#[from] CatError),
    #[error("unknown fixture '{0}'")]
    UnknownFixture(String),
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelOptions {
    /// Factor multiplying `R` after parsing.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rescale: Option<String>,
    /// Default truncation degree.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_degree: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub name: String,
    pub field: FieldSpec,
    pub dimension: usize,
    pub psi: Vec<Vec<String>>,
    pub r: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<Vec<Vec<String>>>,
    #[serde(default)]
    pub options: ModelOptions,
}

pub const FIXTURE_NAMES: [&str; 7] =
    ["flip_classical", "gl_q_2", "gl_q_2_rescaled", "anyon_zeta3", "scalar_c", "sl_q_2", "sl_q_2_braided"];

/// Bundled fixture by name.
pub fn fixture(name: &str) -> Result<ModelFile, ModelError> {
    let text = match name {
        "flip_classical" => include_str!("../fixtures/flip_classical.json"),
        "gl_q_2" => include_str!("../fixtures/gl_q_2.json"),
        "gl_q_2_rescaled" => include_str!("../fixtures/gl_q_2_rescaled.json"),
        "anyon_zeta3" => include_str!("../fixtures/anyon_zeta3.json"),
        "scalar_c" => include_str!("../fixtures/scalar_c.json"),
        "sl_q_2" => include_str!("../fixtures/sl_q_2.json"),
        "sl_q_2_braided" => include_str!("../fixtures/sl_q_2_braided.json"),
        other => return Err(ModelError::UnknownFixture(other.to_string())),
    };
    ModelFile::from_json(text)
}

fn parse_matrix(field: &FieldSpec, rows: &[Vec<String>], n: usize, what: &str) -> Result<Mat, ModelError> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(ModelError::Shape(format!("{what} must be {n}x{n}")));
    }
    let mut dense = Vec::with_capacity(n);
    for (i, row) in rows.iter().enumerate() {
        let mut out = Vec::with_capacity(n);
        for (j, text) in row.iter().enumerate() {
            let s = parse_scalar(text, field).map_err(|source| ModelError::Scalar { what: format!("{what}[{i}][{j}]"), source })?;
            out.push(s);
        }
        dense.push(out);
    }
    Mat::from_dense(field, dense).map_err(|e| ModelError::Shape(e.to_string()))
}

impl ModelFile {
    pub fn from_json(text: &str) -> Result<Self, ModelError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, ModelError> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serialisable")
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.options.max_degree
    }

    /// Parses all matrices without building the model.
    pub fn matrices(&self) -> Result<(Mat, Mat, Option<Mat>), ModelError> {
        self.field.validate().map_err(|source| ModelError::Scalar { what: "field".into(), source })?;
        let d = self.dimension;
        if d == 0 {
            return Err(ModelError::Shape("dimension must be positive".into()));
        }
        let psi = parse_matrix(&self.field, &self.psi, d * d, "psi")?;
        let r = parse_matrix(&self.field, &self.r, d * d, "r")?;
        let c = match &self.c {
            None => None,
            Some(rows) => {
                let sq = parse_matrix(&self.field, rows, d, "c")?;
                Some(Mat::from_triplets(&self.field, 1, d * d, sq.entries().map(|(i, j, v)| (0, i * d + j, v.clone()))))
            }
        };
        Ok((psi, r, c))
    }

    fn rescale_factor(&self) -> Result<Option<crate::scalars::Scalar>, ModelError> {
        self.options
            .rescale
            .as_ref()
            .map(|text| parse_scalar(text, &self.field).map_err(|source| ModelError::Scalar { what: "options.rescale".into(), source }))
            .transpose()
    }

    /// Builds the braided model, applying the `rescale` option to `R`.
    pub fn to_model(&self) -> Result<BraidedModel, ModelError> {
        let (psi, r, c) = self.matrices()?;
        let model = build_model(self.dimension, &self.field, psi, r, c)?;
        match self.rescale_factor()? {
            None => Ok(model),
            Some(lambda) => Ok(rescale(&model, Braiding::R, &lambda)?),
        }
    }

    /// As [`ModelFile::to_model`], but a failing braid equation is kept as a warning on the model.
    pub fn to_model_unchecked(&self) -> Result<BraidedModel, ModelError> {
        let (psi, mut r, c) = self.matrices()?;
        if let Some(lambda) = self.rescale_factor()? {
            r = r.scale(&lambda);
        }
        Ok(build_model_unchecked(self.dimension, &self.field, psi, r, c)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_parse_and_build() {
        for name in FIXTURE_NAMES {
            let f = fixture(name).unwrap();
            assert_eq!(f.name, name);
            f.to_model().unwrap();
            assert_eq!(ModelFile::from_json(&f.to_json()).unwrap(), f);
        }
        assert!(matches!(fixture("nope"), Err(ModelError::UnknownFixture(_))));
    }

    #[test]
    fn rescale_option_multiplies_r() {
        let plain = fixture("gl_q_2").unwrap().to_model().unwrap();
        let scaled = fixture("gl_q_2_rescaled").unwrap().to_model().unwrap();
        let q = plain.field().generator().unwrap();
        assert_eq!(scaled.r(), &plain.r().scale(&q));
        assert_eq!(scaled.psi(), plain.psi());
    }

    #[test]
    fn malformed_inputs() {
        let mut f = fixture("gl_q_2").unwrap();
        f.r[0].pop();
        assert!(matches!(f.to_model(), Err(ModelError::Shape(_))));
        let mut f = fixture("gl_q_2").unwrap();
        f.r[0][0] = "x".into();
        assert!(matches!(f.to_model(), Err(ModelError::Scalar { .. })));
        let mut f = fixture("flip_classical").unwrap();
        f.psi[0][0] = "q".into();
        assert!(matches!(f.to_model(), Err(ModelError::Scalar { .. })));
        assert!(ModelFile::from_json("{\"name\": 1}").is_err());
        // perturbing one entry of R breaks the braid equation but still loads unchecked
        let mut f = fixture("gl_q_2").unwrap();
        f.r[2][2] = "q".into();
        assert!(matches!(f.to_model(), Err(ModelError::Cat(_))));
        let m = f.to_model_unchecked().unwrap();
        assert!(!m.warnings().is_empty());
    }
}
