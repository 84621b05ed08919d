//! JSON document format for instances.
//!
//! ```json
//! {"zones":[{"id":"z0","d":12.5}], "stations":[{"id":"k0"}], "lockers":[{"id":"j0"}],
//!  "distStation":[[...]], "distLocker":[[...]], "aStation":[[...]], "aLocker":[[...]],
//!  "thetaStation":[[...]], "thetaLocker":[[...]], "P":2, "mode":"AT_MOST",
//!  "lockerCapActive":true}
//! ```
//!
//! Either both theta matrices or a scalar `alpha` must be present. When
//! `alpha` is given the weights are recomputed as `exp(-alpha · L)`.
//! Demands may be raw; they are normalized to shares on load.

use std::path::Path;

use serde::{Deserialize, Deserializer, Serialize};

use crate::error::{Error, Result};
use crate::model::{theta_from_alpha, Instance, InstanceParts, Matrix, Mode};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ZoneDoc {
    #[serde(deserialize_with = "id_string")]
    pub id: String,
    pub d: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FacilityDoc {
    #[serde(deserialize_with = "id_string")]
    pub id: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct InstanceDoc {
    pub zones: Vec<ZoneDoc>,
    pub stations: Vec<FacilityDoc>,
    pub lockers: Vec<FacilityDoc>,
    pub dist_station: Vec<Vec<f64>>,
    pub dist_locker: Vec<Vec<f64>>,
    pub a_station: Vec<Vec<f64>>,
    pub a_locker: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta_station: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta_locker: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(rename = "P")]
    pub p: usize,
    pub mode: Mode,
    #[serde(default = "yes")]
    pub locker_cap_active: bool,
}

fn yes() -> bool {
    true
}

fn id_string<'de, D: Deserializer<'de>>(de: D) -> std::result::Result<String, D::Error> {
    match serde_json::Value::deserialize(de)? {
        serde_json::Value::String(s) => Ok(s),
        serde_json::Value::Number(n) => Ok(n.to_string()),
        other => Err(serde::de::Error::custom(format!("id must be a string or number, got {other}"))),
    }
}

impl InstanceDoc {
    pub fn into_instance(self) -> Result<Instance> {
        let ni = self.zones.len();
        let nk = self.stations.len();
        let nj = self.lockers.len();
        let rows = |m: &[Vec<f64>], cols: usize, name: &str| -> Result<Matrix> {
            if m.len() != ni {
                return Err(Error::InvalidInstance(format!("{name} has {} rows, expected {ni}", m.len())));
            }
            Matrix::from_rows(m, cols)
        };
        let dist_station = rows(&self.dist_station, nk, "distStation")?;
        let dist_locker = rows(&self.dist_locker, nj, "distLocker")?;
        let (theta_station, theta_locker) = match (self.alpha, &self.theta_station, &self.theta_locker) {
            (Some(alpha), _, _) => {
                if !alpha.is_finite() {
                    return Err(Error::InvalidInstance("alpha must be finite".into()));
                }
                (theta_from_alpha(alpha, &dist_station), theta_from_alpha(alpha, &dist_locker))
            }
            (None, Some(ts), Some(tl)) => (rows(ts, nk, "thetaStation")?, rows(tl, nj, "thetaLocker")?),
            _ => {
                return Err(Error::InvalidInstance(
                    "either alpha or both thetaStation and thetaLocker are required".into(),
                ))
            }
        };
        Instance::new(InstanceParts {
            zones: self.zones.iter().map(|z| z.id.clone()).collect(),
            stations: self.stations.into_iter().map(|f| f.id).collect(),
            lockers: self.lockers.into_iter().map(|f| f.id).collect(),
            demand: self.zones.iter().map(|z| z.d).collect(),
            service_station: rows(&self.a_station, nk, "aStation")?,
            service_locker: rows(&self.a_locker, nj, "aLocker")?,
            dist_station,
            dist_locker,
            theta_station,
            theta_locker,
            budget: self.p,
            mode: self.mode,
            locker_cap_active: self.locker_cap_active,
        })
    }

    /// Document carrying explicit theta matrices (and `alpha` when known).
    pub fn from_instance(inst: &Instance, alpha: Option<f64>) -> Self {
        let p = inst.parts();
        Self {
            zones: p.zones.iter().zip(&p.demand).map(|(id, &d)| ZoneDoc { id: id.clone(), d }).collect(),
            stations: p.stations.iter().map(|id| FacilityDoc { id: id.clone() }).collect(),
            lockers: p.lockers.iter().map(|id| FacilityDoc { id: id.clone() }).collect(),
            dist_station: p.dist_station.to_rows(),
            dist_locker: p.dist_locker.to_rows(),
            a_station: p.service_station.to_rows(),
            a_locker: p.service_locker.to_rows(),
            theta_station: Some(p.theta_station.to_rows()),
            theta_locker: Some(p.theta_locker.to_rows()),
            alpha,
            p: p.budget,
            mode: p.mode,
            locker_cap_active: p.locker_cap_active,
        }
    }
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    let doc: InstanceDoc = serde_json::from_str(text)?;
    doc.into_instance()
}

pub fn read_instance(path: impl AsRef<Path>) -> Result<Instance> {
    parse_instance(&std::fs::read_to_string(path)?)
}

pub fn instance_to_json(inst: &Instance, alpha: Option<f64>) -> Result<String> {
    Ok(serde_json::to_string_pretty(&InstanceDoc::from_instance(inst, alpha))?)
}
