//! JSON run configuration: system parameters at the top level, plus optional
//! `grid` and `schemes` objects.

use serde::Serialize;
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

use crate::channel::SchemeParams;
use crate::error::{Error, Result};
use crate::manifold::GridParams;
use crate::physics::SystemConfig;

#[derive(Debug, Clone, PartialEq, Serialize, Default)]
pub struct RunConfig {
    #[serde(flatten)]
    pub system: SystemConfig,
    pub grid: GridParams,
    pub schemes: SchemeParams,
}

impl RunConfig {
    /// Overlay the keys of `doc` on `base`. Unknown keys are rejected.
    pub fn overlay(base: &RunConfig, doc: &Value) -> Result<RunConfig> {
        let obj = doc
            .as_object()
            .ok_or_else(|| Error::InvalidConfig("configuration must be a JSON object".into()))?;
        let bad = |e: serde_json::Error| Error::InvalidConfig(e.to_string());
        let merge = |base: Value, over: Option<&Value>| -> Result<Value> {
            let mut m = match base {
                Value::Object(m) => m,
                _ => Map::new(),
            };
            if let Some(o) = over {
                let o = o.as_object().ok_or_else(|| Error::InvalidConfig("nested sections must be objects".into()))?;
                m.extend(o.iter().map(|(k, v)| (k.clone(), v.clone())));
            }
            Ok(Value::Object(m))
        };

        let mut top: Map<String, Value> = obj.clone();
        let grid_doc = top.remove("grid");
        let schemes_doc = top.remove("schemes");
        let system_doc = Value::Object(top);

        let system: SystemConfig =
            serde_json::from_value(merge(serde_json::to_value(&base.system).map_err(bad)?, Some(&system_doc))?)
                .map_err(bad)?;
        let grid: GridParams =
            serde_json::from_value(merge(serde_json::to_value(&base.grid).map_err(bad)?, grid_doc.as_ref())?)
                .map_err(bad)?;
        let schemes: SchemeParams =
            serde_json::from_value(merge(serde_json::to_value(base.schemes).map_err(bad)?, schemes_doc.as_ref())?)
                .map_err(bad)?;
        system.validate()?;
        if schemes.b_cb == 0 || schemes.n_doppler_bins == 0 {
            return Err(Error::InvalidConfig("scheme parameters must be at least 1".into()));
        }
        Ok(RunConfig { system, grid, schemes })
    }

    pub fn from_json_str(base: &RunConfig, text: &str) -> Result<RunConfig> {
        let doc: Value = serde_json::from_str(text).map_err(|e| Error::InvalidConfig(e.to_string()))?;
        Self::overlay(base, &doc)
    }

    /// Reduced preset: the reference parameters with N, n_t and n_mc scaled down.
    pub fn desk() -> Self {
        Self { system: SystemConfig::desk(), ..Default::default() }
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("config serialises")
    }

    /// SHA-256 of the canonical JSON encoding.
    pub fn hash(&self) -> String {
        let text = serde_json::to_string(self).expect("config serialises");
        Sha256::digest(text.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
    }
}
