//! Scattering events, outgoing tracks and the arrival stream at the recorder.
//!
//! Triad `k` meets the hand at clock time `t_k = −x_h⁽ᵏ⁾/u`, where
//! `x_h⁽ᵏ⁾ = ℓ − (k − 1 + φ)·2ℓ/n`. Its first member hit dial body 1 earlier,
//! its third member hits dial body 3 later; all three then travel towards the
//! recorder with velocity `−c`. Incoming world lines are never materialised.

use std::cmp::Ordering;

use serde::Serialize;

use crate::clock::ClockConfig;
use crate::units::{self, Rational};

/// The clock body that scattered a quantum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Body {
    D1,
    Hand,
    D3,
}

/// Colour of a scattered quantum; `Q1` comes off dial body 1, `Q2` off the
/// hand and `Q3` off dial body 3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Species {
    Q1,
    Q2,
    Q3,
}

impl Body {
    pub fn species(self) -> Species {
        match self {
            Body::D1 => Species::Q1,
            Body::Hand => Species::Q2,
            Body::D3 => Species::Q3,
        }
    }
}

impl Species {
    pub fn as_str(self) -> &'static str {
        match self {
            Species::Q1 => "Q1",
            Species::Q2 => "Q2",
            Species::Q3 => "Q3",
        }
    }

    /// Order among simultaneous arrivals. A `Q3` arriving together with a
    /// `Q2` travels alongside it and is not one of the quanta following it,
    /// so it is listed first.
    fn tie_rank(self) -> u8 {
        match self {
            Species::Q1 => 0,
            Species::Q3 => 1,
            Species::Q2 => 2,
        }
    }
}

impl std::fmt::Display for Species {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScatterEvent {
    pub body: Body,
    pub serial: u64,
    /// Clock time in units of `τ`.
    pub time: Rational,
    /// Position in units of `cτ`.
    pub position: Rational,
}

/// Outgoing world line `x(t) = position − (t − time)` of a scattered quantum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuantumTrack {
    pub scatter: ScatterEvent,
}

impl QuantumTrack {
    pub fn species(&self) -> Species {
        self.scatter.body.species()
    }

    /// Position at `t`, or `None` before the quantum was scattered.
    pub fn position_at(&self, t: &Rational) -> Option<Rational> {
        if t < &self.scatter.time {
            return None;
        }
        Some(&self.scatter.position - (t - &self.scatter.time))
    }

    /// Time at which the track reaches `x`.
    pub fn time_at(&self, x: &Rational) -> Rational {
        &self.scatter.time + (&self.scatter.position - x)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrivalRecord {
    pub species: Species,
    /// Arrival time at the recorder in units of `τ`.
    pub arrival_time: Rational,
    /// Simulation ground truth. Recorder logic never reads this.
    pub truth_serial: u64,
}

impl ArrivalRecord {
    fn stream_order(&self, other: &Self) -> Ordering {
        self.arrival_time
            .cmp(&other.arrival_time)
            .then(self.species.tie_rank().cmp(&other.species.tie_rank()))
            .then(self.truth_serial.cmp(&other.truth_serial))
    }
}

/// Position of the hand when it scatters the `Hand` quantum of triad `k`.
pub fn hand_position(cfg: &ClockConfig, k: u64) -> Rational {
    let steps = units::uint(k - 1) + cfg.phi();
    cfg.ell() - steps * cfg.division()
}

/// Clock time carried by a hand at `x_h`: `t_c = −x_h/u`.
pub fn clock_time_at(cfg: &ClockConfig, x_h: &Rational) -> Rational {
    -(x_h / cfg.hand_speed())
}

/// All `3n` scattering events, grouped by triad as `D1, Hand, D3`.
pub fn generate_events(cfg: &ClockConfig) -> Vec<ScatterEvent> {
    let ell = cfg.ell();
    let mut out = Vec::with_capacity(3 * cfg.n() as usize);
    for k in 1..=cfg.n() {
        let x_h = hand_position(cfg, k);
        let t_h = clock_time_at(cfg, &x_h);
        let d1 = ScatterEvent {
            body: Body::D1,
            serial: k,
            time: &t_h - (&x_h + ell),
            position: -ell.clone(),
        };
        let d3 = ScatterEvent {
            body: Body::D3,
            serial: k,
            time: &t_h + (ell - &x_h),
            position: ell.clone(),
        };
        out.push(d1);
        out.push(ScatterEvent {
            body: Body::Hand,
            serial: k,
            time: t_h,
            position: x_h,
        });
        out.push(d3);
    }
    out
}

pub fn tracks(events: &[ScatterEvent]) -> Vec<QuantumTrack> {
    events
        .iter()
        .cloned()
        .map(|scatter| QuantumTrack { scatter })
        .collect()
}

/// Arrival records sorted by time. Simultaneous arrivals are ordered
/// `Q1, Q3, Q2`, then by serial.
pub fn arrival_stream(cfg: &ClockConfig, events: &[ScatterEvent]) -> Vec<ArrivalRecord> {
    let recorder = cfg.recorder_x();
    let mut out: Vec<ArrivalRecord> = events
        .iter()
        .map(|e| ArrivalRecord {
            species: e.body.species(),
            arrival_time: &e.time + (&e.position - recorder),
            truth_serial: e.serial,
        })
        .collect();
    out.sort_by(|a, b| a.stream_order(b));
    out
}

/// Records of one species, in stream order.
pub fn of_species(stream: &[ArrivalRecord], species: Species) -> Vec<&ArrivalRecord> {
    stream.iter().filter(|r| r.species == species).collect()
}

/// Convenience: events plus stream for a config.
pub fn simulate(cfg: &ClockConfig) -> (Vec<ScatterEvent>, Vec<ArrivalRecord>) {
    let events = generate_events(cfg);
    let stream = arrival_stream(cfg, &events);
    (events, stream)
}
