//! File formats: the JSON run config and the CSV tables.
//!
//! Every CSV starts with a `# schema: <name>/<version>` comment line.
//! Exact values are written as `"p/q"` next to a float column.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::clock::{build_config, ClockConfig};
use crate::error::{ClockError, Result};
use crate::kinematics::ArrivalRecord;
use crate::oracle::PairingRow;
use crate::recorder::TimeReading;
use crate::units::{self, Rational};

pub const ARRIVALS_SCHEMA: &str = "swclock-arrivals/1";
pub const READINGS_SCHEMA: &str = "swclock-readings/1";
pub const PAIRING_SCHEMA: &str = "swclock-pairing/1";

/// JSON run configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfigFile {
    pub n: u64,
    pub m: u64,
    #[serde(rename = "T_seconds")]
    pub running_time_s: f64,
    #[serde(rename = "M_kg", default)]
    pub mass_kg: Option<f64>,
    /// `"p/q"`; defaults to `"1/2"`.
    #[serde(default)]
    pub phi: Option<String>,
    /// `"p/q"` in units of `cτ`; defaults to `−2ℓ(n+2)`.
    #[serde(default)]
    pub recorder_x: Option<String>,
    #[serde(default)]
    pub seed: Option<u64>,
}

impl ConfigFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| ClockError::InvalidConfig(e.to_string()))
    }

    pub fn to_config(&self) -> Result<ClockConfig> {
        let phi = self.phi.as_deref().map(units::parse).transpose()?;
        let recorder_x = self.recorder_x.as_deref().map(units::parse).transpose()?;
        build_config(self.n, self.m, self.running_time_s, self.mass_kg, phi, recorder_x)
    }
}

fn csv_err(e: csv::Error) -> std::io::Error {
    std::io::Error::other(e)
}

fn fraction_of_t(t: &Rational, cfg: &ClockConfig) -> Rational {
    t / cfg.running_time()
}

/// Times in units of `τ`.
pub fn write_arrivals_csv<W: Write>(mut w: W, stream: &[ArrivalRecord]) -> std::io::Result<()> {
    writeln!(w, "# schema: {ARRIVALS_SCHEMA} (times in units of tau)")?;
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["species", "arrival_time", "arrival_time_float", "truth_serial"])
        .map_err(csv_err)?;
    for r in stream {
        out.write_record([
            r.species.as_str().to_string(),
            units::format(&r.arrival_time),
            units::to_f64(&r.arrival_time).to_string(),
            r.truth_serial.to_string(),
        ])
        .map_err(csv_err)?;
    }
    out.flush()
}

/// `t_c_exact`, `candidates` and `error` are fractions of `T`; float columns
/// are seconds. `error` is empty when no ground truth is attached.
pub fn write_readings_csv<W: Write>(
    mut w: W,
    cfg: &ClockConfig,
    readings: &[TimeReading],
) -> std::io::Result<()> {
    writeln!(
        w,
        "# schema: {READINGS_SCHEMA} (exact columns in units of T, floats in seconds)"
    )?;
    let mut out = csv::Writer::from_writer(w);
    out.write_record([
        "serial",
        "truth_serial",
        "t_c_exact",
        "t_c_float",
        "t_0_float",
        "ambiguity_count",
        "candidates",
        "error",
        "edge_truncated",
        "in_range",
    ])
    .map_err(csv_err)?;
    let tau = cfg.tau_si();
    for r in readings {
        let serial = r
            .pairing
            .resolved_serial
            .map_or_else(|| "unknown".to_string(), |k| k.to_string());
        let candidates: Vec<String> = r
            .ambiguity_set
            .iter()
            .map(|t| units::format(&fraction_of_t(t, cfg)))
            .collect();
        let error = r
            .error()
            .map(|e| units::format_compact(&fraction_of_t(&e, cfg)))
            .unwrap_or_default();
        out.write_record([
            serial,
            r.pairing.q2_arrival.truth_serial.to_string(),
            units::format(&fraction_of_t(&r.t_c, cfg)),
            (units::to_f64(&r.t_c) * tau).to_string(),
            (units::to_f64(&r.t_0) * tau).to_string(),
            r.ambiguity_set.len().to_string(),
            candidates.join(";"),
            error,
            r.edge_truncated.to_string(),
            r.in_range(cfg).to_string(),
        ])
        .map_err(csv_err)?;
    }
    out.flush()
}

pub fn write_pairing_csv<W: Write>(mut w: W, rows: &[PairingRow]) -> std::io::Result<()> {
    writeln!(w, "# schema: {PAIRING_SCHEMA}")?;
    let mut out = csv::Writer::from_writer(w);
    out.write_record([
        "n",
        "m",
        "phi",
        "k",
        "offset_closed_form",
        "offset_oracle",
        "match",
    ])
    .map_err(csv_err)?;
    for r in rows {
        out.write_record([
            r.n.to_string(),
            r.m.to_string(),
            r.phi.clone(),
            r.k.to_string(),
            r.offset_closed_form.to_string(),
            r.offset_oracle.to_string(),
            r.matches().to_string(),
        ])
        .map_err(csv_err)?;
    }
    out.flush()
}
