//! The `.dimer` model file format: JSON with a fixed schema.
//!
//! Keys: `name`, `vertices` (strings), `arrows` (`{id, tail, head}`),
//! `faces` (`{sign: "+"|"-", cycle: [arrow ids in traversal order]}`).
//! An optional `note` carries free-form provenance echoed by reports.
//! Identifiers must match `[A-Za-z0-9_]+`.

use std::fs;
use std::path::Path;

use anyhow::{anyhow, Context, Result};
use dimerlab_core::model::{BuildError, DimerModel, Sign};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModelFile {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowRecord>,
    pub faces: Vec<FaceRecord>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ArrowRecord {
    pub id: String,
    pub tail: String,
    pub head: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FaceRecord {
    pub sign: String,
    pub cycle: Vec<String>,
}

/// A loaded model with its sidecar note.
#[derive(Debug)]
pub struct LoadedModel {
    pub model: DimerModel,
    pub note: Option<String>,
}

pub fn parse_model(text: &str) -> Result<LoadedModel> {
    let file: ModelFile = serde_json::from_str(text)
        .map_err(|e| anyhow!("parse error at line {}, column {}: {e}", e.line(), e.column()))?;
    model_from_file(file)
}

pub fn model_from_file(file: ModelFile) -> Result<LoadedModel> {
    let mut faces = Vec::with_capacity(file.faces.len());
    for (i, f) in file.faces.iter().enumerate() {
        let sign = match f.sign.as_str() {
            "+" => Sign::Plus,
            "-" => Sign::Minus,
            other => return Err(anyhow!("face #{i}: sign must be \"+\" or \"-\", got {other:?}")),
        };
        faces.push((sign, f.cycle.clone()));
    }
    let arrows = file.arrows.iter().map(|a| (a.id.clone(), a.tail.clone(), a.head.clone())).collect();
    let model = DimerModel::from_parts(&file.name, file.vertices, arrows, faces)
        .map_err(|e: BuildError| anyhow!("{e}"))?;
    Ok(LoadedModel { model, note: file.note })
}

pub fn load_model(path: &Path) -> Result<LoadedModel> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))?;
    parse_model(&text).with_context(|| format!("in {}", path.display()))
}

/// Render a model back into the file format (stable key and entry order).
pub fn serialize_model(model: &DimerModel, note: Option<&str>) -> String {
    let file = ModelFile {
        name: model.name.clone(),
        note: note.map(|s| s.to_string()),
        vertices: model.vertices().map(|v| model.vertex_name(v).to_string()).collect(),
        arrows: model
            .arrow_ids()
            .map(|a| ArrowRecord {
                id: model.arrow_name(a).to_string(),
                tail: model.vertex_name(model.tail(a)).to_string(),
                head: model.vertex_name(model.head(a)).to_string(),
            })
            .collect(),
        faces: model
            .faces()
            .iter()
            .map(|f| FaceRecord {
                sign: f.sign.as_str().to_string(),
                cycle: f.cycle.iter().map(|&a| model.arrow_name(a).to_string()).collect(),
            })
            .collect(),
    };
    serde_json::to_string_pretty(&file).expect("model files serialize")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_unknown_sign() {
        let text = r#"{
            "name": "bad",
            "vertices": ["1"],
            "arrows": [{"id": "x", "tail": "1", "head": "1"}],
            "faces": [{"sign": "*", "cycle": ["x", "x", "x"]}]
        }"#;
        let err = parse_model(text).unwrap_err();
        assert!(format!("{err:#}").contains("sign"));
    }

    #[test]
    fn reports_json_position_on_parse_errors() {
        let err = parse_model("{\n  \"name\": 12,\n}").unwrap_err();
        let msg = format!("{err:#}");
        assert!(msg.contains("line 2"), "{msg}");
    }
}
