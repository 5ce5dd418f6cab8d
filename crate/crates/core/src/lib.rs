//! Time-reading simulator for the Salecker–Wigner quantum clock.
//!
//! The clock is three free bodies on a line: two dial ends at `x = ∓ℓ` and a
//! hand moving from `+ℓ` towards `−ℓ`. Triads of distinguishable light quanta
//! scatter off the bodies and a distant recorder reads the clock time from
//! the arrival times of the scattered quanta.
//!
//! All kinematics run in exact rational arithmetic in internal units where
//! `c = 1`, time is measured in units of the accuracy `τ` and length in units
//! of `cτ`. Only mass and ħ quantities, and the Monte-Carlo layer, use floats.
//!
//! Module map:
//! - [`clock`]: parameters, derived quantities, mass bound and uncertainty report
//! - [`kinematics`]: scattering events, outgoing tracks, recorder arrival stream
//! - [`recorder`]: pairing, readout, serial deduction and ambiguity enumeration
//! - [`oracle`]: brute-force world-line and snapshot verifier for the recorder
//! - [`stochastic`]: Monte-Carlo hand indeterminacy
//! - [`export`]: CSV/JSON schemas shared by the CLI and the Python bindings

pub mod clock;
pub mod error;
pub mod export;
pub mod kinematics;
pub mod oracle;
pub mod recorder;
pub mod stochastic;
pub mod units;

pub use clock::{
    build_config, mass_bound, mass_bound_si, uncertainty_report, ClockConfig, ConfigWarning,
    UncertaintyReport, HBAR, SPEED_OF_LIGHT,
};
pub use error::{ClockError, Result};
pub use kinematics::{
    arrival_stream, generate_events, tracks, ArrivalRecord, Body, QuantumTrack, ScatterEvent, Species,
};
pub use oracle::{oracle_pairing, oracle_reading, Snapshot};
pub use recorder::{
    convert_t0, convert_t0_via_a1, deduce_serial, enumerate_ambiguity, partner_offset, read_time_simple,
    read_time_with_serial, PairingDecision, TimeReading,
};
pub use stochastic::{run_mc, McOptions, McRun, McSummary};
pub use units::Rational;
