//! JSON model files.
//!
//! ```json
//! {
//!   "labels": ["1", "tau"],
//!   "dual": [0, 1],
//!   "fusion": [[1, 1, 0, 1], [1, 1, 1, 1]],
//!   "F": [{"a": 1, "b": 1, "c": 1, "d": 1, "e": 0, "f": 0, "re": 0.618, "im": 0.0}],
//!   "R": [{"a": 1, "b": 1, "c": 0, "re": -0.809, "im": -0.588}],
//!   "theta": [{"re": 1.0, "im": 0.0}, {"re": -0.809, "im": 0.588}]
//! }
//! ```
//!
//! Omitted fusion quadruples mean multiplicity 0. F records with a unit among
//! `a, b, c` and R records with a unit among `a, b` may be omitted and then
//! default to 1.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fusion_ring::{FusionRing, Label};
use crate::linalg::C64;
use crate::model::AnyonModel;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub labels: Vec<String>,
    pub dual: Vec<usize>,
    pub fusion: Vec<[u32; 4]>,
    #[serde(rename = "F", default)]
    pub f: Vec<FRecord>,
    #[serde(rename = "R", default)]
    pub r: Vec<RRecord>,
    pub theta: Vec<ComplexRecord>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FRecord {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub d: usize,
    pub e: usize,
    pub f: usize,
    pub re: f64,
    pub im: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RRecord {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub re: f64,
    pub im: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexRecord {
    pub re: f64,
    pub im: f64,
}

impl From<C64> for ComplexRecord {
    fn from(z: C64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

impl From<ComplexRecord> for C64 {
    fn from(z: ComplexRecord) -> Self {
        C64::new(z.re, z.im)
    }
}

impl ModelFile {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("model files always serialize")
    }

    /// Serializes a model, omitting F and R entries that equal their unit defaults.
    pub fn from_model(model: &AnyonModel) -> Self {
        let ring = model.ring();
        let mut fusion = Vec::new();
        for a in ring.labels() {
            for b in ring.labels() {
                for c in ring.labels() {
                    let n = ring.n(a, b, c);
                    if n > 0 {
                        fusion.push([a.0 as u32, b.0 as u32, c.0 as u32, n]);
                    }
                }
            }
        }
        let unit_default = |on_unit: bool, z: C64| on_unit && z == C64::new(1.0, 0.0);
        let f = model
            .f_table()
            .entries()
            .filter(|(idx, z)| !unit_default(idx[..3].iter().any(|l| l.is_unit()), *z))
            .map(|([a, b, c, d, e, f], z)| FRecord {
                a: a.0,
                b: b.0,
                c: c.0,
                d: d.0,
                e: e.0,
                f: f.0,
                re: z.re,
                im: z.im,
            })
            .collect();
        let r = model
            .r_table()
            .entries()
            .filter(|(idx, z)| !unit_default(idx[0].is_unit() || idx[1].is_unit(), *z))
            .map(|([a, b, c], z)| RRecord {
                a: a.0,
                b: b.0,
                c: c.0,
                re: z.re,
                im: z.im,
            })
            .collect();
        Self {
            labels: ring.names().to_vec(),
            dual: ring.labels().map(|a| ring.dual(a).0).collect(),
            fusion,
            f,
            r,
            theta: model.thetas().iter().map(|&z| z.into()).collect(),
        }
    }

    /// Builds the model: range checks, unit defaults, ring validation,
    /// multiplicity-free check and derived dimensions. Coherence is not checked.
    pub fn into_model(self) -> Result<AnyonModel> {
        let rank = self.labels.len();
        if rank == 0 {
            return Err(Error::Schema("\"labels\" must contain at least the unit".into()));
        }
        if self.dual.len() != rank {
            return Err(Error::Schema(format!(
                "\"dual\" has {} entries for {rank} labels",
                self.dual.len()
            )));
        }
        if let Some(bad) = self.dual.iter().find(|&&d| d >= rank) {
            return Err(Error::Schema(format!("\"dual\" entry {bad} out of range")));
        }
        if let Some(q) = self.fusion.iter().find(|q| q[..3].iter().any(|&x| x as usize >= rank)) {
            return Err(Error::Schema(format!(
                "\"fusion\" entry {q:?} has a label out of range"
            )));
        }
        let mut seen = std::collections::BTreeSet::new();
        if let Some(q) = self.fusion.iter().find(|q| !seen.insert([q[0], q[1], q[2]])) {
            return Err(Error::Schema(format!("duplicate \"fusion\" entry for {:?}", &q[..3])));
        }
        if self.theta.len() != rank {
            return Err(Error::Schema(format!(
                "\"theta\" has {} entries for {rank} labels",
                self.theta.len()
            )));
        }
        if self.theta[0] != (ComplexRecord { re: 1.0, im: 0.0 }) {
            return Err(Error::Schema("\"theta\"[0] must be {\"re\": 1, \"im\": 0}".into()));
        }
        for rec in &self.f {
            if [rec.a, rec.b, rec.c, rec.d, rec.e, rec.f].iter().any(|&x| x >= rank) {
                return Err(Error::Schema(format!("\"F\" record {rec:?} has a label out of range")));
            }
        }
        for rec in &self.r {
            if [rec.a, rec.b, rec.c].iter().any(|&x| x >= rank) {
                return Err(Error::Schema(format!("\"R\" record {rec:?} has a label out of range")));
            }
        }
        let ring = FusionRing::from_quadruples(self.labels, self.dual, &self.fusion)
            .map_err(|e| Error::Schema(e.to_string()))?;
        let f = self
            .f
            .iter()
            .map(|r| ([r.a, r.b, r.c, r.d, r.e, r.f].map(Label), C64::new(r.re, r.im)));
        let r = self
            .r
            .iter()
            .map(|r| ([r.a, r.b, r.c].map(Label), C64::new(r.re, r.im)));
        let theta = self.theta.into_iter().map(C64::from).collect();
        AnyonModel::new(ring, f, r, theta)
    }
}

pub fn parse_model(text: &str) -> Result<AnyonModel> {
    ModelFile::from_json(text)?.into_model()
}

pub fn load_model(path: impl AsRef<Path>) -> Result<AnyonModel> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_model(&text)
}

pub fn save_model(model: &AnyonModel, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, ModelFile::from_model(model).to_json() + "\n")?;
    Ok(())
}
