//! Run reports: deterministic given the inputs, the seed and the version.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use realpencil::algebra::{ProjPoint, TernaryForm};
use realpencil::io::point_strings;

#[derive(Serialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

impl InputDigest {
    pub fn of(path: &Path, bytes: &[u8]) -> Self {
        InputDigest { path: path.display().to_string(), sha256: format!("{:x}", Sha256::digest(bytes)) }
    }
}

#[derive(Serialize)]
pub struct RunReport {
    pub command: String,
    pub version: &'static str,
    pub seed: u64,
    pub inputs: Vec<InputDigest>,
    pub exit_code: u8,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub result: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<String, u128>>,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

pub fn point_json(p: &ProjPoint) -> Value {
    Value::from(point_strings(p).to_vec())
}

pub fn point_text(p: &ProjPoint) -> String {
    let [x, y, z] = point_strings(p);
    format!("({x}:{y}:{z})")
}

pub fn linear_json(l: &TernaryForm) -> Value {
    let c = [(1, 0, 0), (0, 1, 0), (0, 0, 1)].map(|e| l.coeff(e).to_string());
    Value::from(c.to_vec())
}
