//! Clock parameters and the accuracy/mass relations.
//!
//! A [`ClockConfig`] is fully determined by the number of accuracy intervals
//! `n`, the dial multiplier `m` and the running time `T`. Requiring both
//! `2ℓ = uT` and `2ℓ = (m/2)·cτ·(1+β)` with `β = u/c` pins the hand speed to
//! `β = (m/2)/(n − m/2)`, so `β` is derived and never supplied.

use num_traits::{One, Signed};
use serde::Serialize;

use crate::error::{ClockError, Result};
use crate::units::{self, Rational};

/// Speed of light in m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
/// Reduced Planck constant in J·s.
pub const HBAR: f64 = 1.054_571_817e-34;

/// Soft floor for `n ≫ 1`.
pub const SOFT_MIN_DIVISIONS: u64 = 10;
/// Soft ceiling for `β ≪ 1`, as the rational 1/10.
pub const SOFT_MAX_BETA: (i64, i64) = (1, 10);

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum ConfigWarning {
    /// `n` below [`SOFT_MIN_DIVISIONS`]; the clock is not a good clock.
    FewDivisions(u64),
    /// `β` above 1/10; the non-relativistic treatment is strained.
    FastHand(String),
}

impl std::fmt::Display for ConfigWarning {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ConfigWarning::FewDivisions(n) => {
                write!(
                    f,
                    "n = {n} is below {SOFT_MIN_DIVISIONS}; relative accuracy is poor"
                )
            }
            ConfigWarning::FastHand(b) => write!(f, "beta = {b} exceeds 1/10"),
        }
    }
}

/// Immutable clock parameter set.
///
/// Rational fields are in internal units (`c = 1`, `τ = 1`, lengths in `cτ`),
/// so `T = n` exactly. SI values are available through the `*_si` accessors.
#[derive(Debug, Clone, PartialEq)]
pub struct ClockConfig {
    n: u64,
    m: u64,
    running_time_s: f64,
    mass_kg: Option<f64>,
    phi: Rational,
    beta: Rational,
    ell: Rational,
    hand_speed: Rational,
    recorder_x: Rational,
}

/// Validates the inputs and derives every dependent quantity.
///
/// `phi` defaults to ½ (first hand scattering in the middle of the first
/// dial division) and `recorder_x` to `−2ℓ(n+2)`.
pub fn build_config(
    n: u64,
    m: u64,
    running_time_s: f64,
    mass_kg: Option<f64>,
    phi: Option<Rational>,
    recorder_x: Option<Rational>,
) -> Result<ClockConfig> {
    if n < 2 {
        return Err(ClockError::TooFewDivisions(n));
    }
    if m == 0 {
        return Err(ClockError::ZeroMultiplier);
    }
    if m > n {
        return Err(ClockError::MultiplierExceedsN { m, n });
    }
    if !(running_time_s.is_finite() && running_time_s > 0.0) {
        return Err(ClockError::InvalidRunningTime(running_time_s));
    }
    if let Some(mass) = mass_kg {
        if !(mass.is_finite() && mass > 0.0) {
            return Err(ClockError::InvalidMass(mass));
        }
    }
    let phi = phi.unwrap_or_else(units::half);
    if !phi.is_positive() || phi > Rational::one() {
        return Err(ClockError::PhaseOutOfRange(units::format(&phi)));
    }

    let n_r = units::uint(n);
    let half_m = units::uint(m) / units::int(2);
    let beta = &half_m / (&n_r - &half_m);
    if beta >= Rational::one() {
        return Err(ClockError::UnphysicalBeta(units::format(&beta)));
    }
    let two_ell = &half_m * (Rational::one() + &beta);
    let ell = &two_ell / units::int(2);
    // T = n in units of τ.
    let hand_speed = &two_ell / &n_r;

    let recorder_x = recorder_x.unwrap_or_else(|| -(&two_ell * (&n_r + units::int(2))));
    if recorder_x >= -ell.clone() {
        return Err(ClockError::RecorderInsideDial {
            recorder_x: units::format(&recorder_x),
            ell: units::format(&ell),
        });
    }

    Ok(ClockConfig {
        n,
        m,
        running_time_s,
        mass_kg,
        phi,
        beta,
        ell,
        hand_speed,
        recorder_x,
    })
}

impl ClockConfig {
    /// Config with default phase and recorder position and no mass.
    pub fn standard(n: u64, m: u64, running_time_s: f64) -> Result<Self> {
        build_config(n, m, running_time_s, None, None, None)
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn phi(&self) -> &Rational {
        &self.phi
    }

    pub fn beta(&self) -> &Rational {
        &self.beta
    }

    /// Half dial length in units of `cτ`.
    pub fn ell(&self) -> &Rational {
        &self.ell
    }

    pub fn dial_length(&self) -> Rational {
        &self.ell * units::int(2)
    }

    /// Hand speed `u` in units of `c`; equal to `β`.
    pub fn hand_speed(&self) -> &Rational {
        &self.hand_speed
    }

    pub fn recorder_x(&self) -> &Rational {
        &self.recorder_x
    }

    pub fn mass_kg(&self) -> Option<f64> {
        self.mass_kg
    }

    /// Running time in units of `τ`, i.e. `n`.
    pub fn running_time(&self) -> Rational {
        units::uint(self.n)
    }

    /// Distance the hand covers between consecutive scatterings, `2ℓ/n`.
    pub fn division(&self) -> Rational {
        self.dial_length() / units::uint(self.n)
    }

    /// Distance between consecutive incoming triads, `cτ(1+β)`.
    pub fn triad_spacing(&self) -> Rational {
        Rational::one() + &self.beta
    }

    pub fn running_time_si(&self) -> f64 {
        self.running_time_s
    }

    pub fn tau_si(&self) -> f64 {
        self.running_time_s / self.n as f64
    }

    /// Seconds per internal time unit.
    pub fn time_unit_si(&self) -> f64 {
        self.tau_si()
    }

    /// Metres per internal length unit.
    pub fn length_unit_si(&self) -> f64 {
        SPEED_OF_LIGHT * self.tau_si()
    }

    pub fn dial_length_si(&self) -> f64 {
        units::to_f64(&self.dial_length()) * self.length_unit_si()
    }

    pub fn hand_speed_si(&self) -> f64 {
        units::to_f64(&self.hand_speed) * SPEED_OF_LIGHT
    }

    pub fn with_phi(&self, phi: Rational) -> Result<Self> {
        build_config(
            self.n,
            self.m,
            self.running_time_s,
            self.mass_kg,
            Some(phi),
            Some(self.recorder_x.clone()),
        )
    }

    pub fn with_recorder_x(&self, recorder_x: Rational) -> Result<Self> {
        build_config(
            self.n,
            self.m,
            self.running_time_s,
            self.mass_kg,
            Some(self.phi.clone()),
            Some(recorder_x),
        )
    }

    pub fn with_mass(&self, mass_kg: f64) -> Result<Self> {
        build_config(
            self.n,
            self.m,
            self.running_time_s,
            Some(mass_kg),
            Some(self.phi.clone()),
            Some(self.recorder_x.clone()),
        )
    }

    /// Soft violations of `n ≫ 1` and `β ≪ 1`.
    pub fn warnings(&self) -> Vec<ConfigWarning> {
        let mut out = Vec::new();
        if self.n < SOFT_MIN_DIVISIONS {
            out.push(ConfigWarning::FewDivisions(self.n));
        }
        if self.beta > units::frac(SOFT_MAX_BETA.0, SOFT_MAX_BETA.1) {
            out.push(ConfigWarning::FastHand(units::format(&self.beta)));
        }
        out
    }
}

/// `ħT³/((2ℓ)²τ²)` in SI units. All inputs must be positive.
pub fn mass_bound_si(running_time_s: f64, tau_s: f64, dial_length_m: f64) -> Result<f64> {
    for v in [running_time_s, tau_s, dial_length_m] {
        if !(v.is_finite() && v > 0.0) {
            return Err(ClockError::InvalidConfig(format!(
                "mass bound inputs must be positive and finite, got {v}"
            )));
        }
    }
    Ok(HBAR * running_time_s.powi(3) / (dial_length_m.powi(2) * tau_s.powi(2)))
}

/// Minimal clock mass in kg for the configured running time, accuracy and dial.
pub fn mass_bound(cfg: &ClockConfig) -> f64 {
    let t = cfg.running_time_si();
    let tau = cfg.tau_si();
    let l = cfg.dial_length_si();
    HBAR * t.powi(3) / (l.powi(2) * tau.powi(2))
}

/// Hand indeterminacies for a minimal Gaussian packet, SI units.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UncertaintyReport {
    pub dx_h: f64,
    pub dp_h: f64,
    pub du: f64,
    pub hand_speed: f64,
    /// Packet width growth factor over the running time.
    pub spread_factor: f64,
    pub mass_bound: f64,
    /// `ħT/(MΔx_h²)`; the packet keeps its width order when this is ≤ 1.
    pub spreading_ratio: f64,
    pub spreading_ok: bool,
}

/// Relative tolerance on the `T ≤ MΔx_h²/ħ` check, so a mass exactly at the
/// bound passes despite rounding.
const SPREADING_TOL: f64 = 1e-12;

pub fn uncertainty_report(cfg: &ClockConfig) -> Result<UncertaintyReport> {
    let mass = cfg.mass_kg().ok_or(ClockError::MissingMass)?;
    let dx_h = cfg.dial_length_si() / cfg.n() as f64;
    let dp_h = HBAR / dx_h;
    let du = dp_h / mass;
    let spreading_ratio = HBAR * cfg.running_time_si() / (mass * dx_h * dx_h);
    Ok(UncertaintyReport {
        dx_h,
        dp_h,
        du,
        hand_speed: cfg.hand_speed_si(),
        spread_factor: (1.0 + spreading_ratio * spreading_ratio).sqrt(),
        mass_bound: mass_bound(cfg),
        spreading_ratio,
        spreading_ok: spreading_ratio <= 1.0 + SPREADING_TOL,
    })
}

/// Width growth `sqrt(1 + (ħt/(MΔx²))²)` of a minimal packet after `elapsed_s`.
pub fn spread_factor_at(mass_kg: f64, dx_h_m: f64, elapsed_s: f64) -> f64 {
    let r = HBAR * elapsed_s / (mass_kg * dx_h_m * dx_h_m);
    (1.0 + r * r).sqrt()
}
