//! Monte-Carlo model of the hand's positional indeterminacy.
//!
//! At every scattering the hand sits off its nominal position by an
//! independent Gaussian draw of width `Δx_h = 2ℓ/n`. The incoming photon
//! world line is unchanged, so a hand shift `δ` moves the meeting point by
//! `δ/(1+β)` in space and time and the `Q2` arrival by `2δ/(1+β)`. Readings
//! are formed in floating point from the perturbed arrivals. With
//! `σ = Δx_h` the reading error has standard deviation `τ/(1+β)`.
//!
//! Errors are always measured against the triad partner of each `Q2`, so
//! they describe the statistical readout error alone. Separately, a reading
//! counts as a pairing flip when the recorder's own rule (first following
//! `Q3` for `m = 1`, the `j`-th one from the deduced serial otherwise) would
//! have picked a different `Q3` in the perturbed stream.
//!
//! Sample `s` draws from the ChaCha8 stream `s` of the seeded generator, so
//! any split of the sample range over workers reproduces a serial run.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use rayon::prelude::*;
use serde::Serialize;

use crate::clock::{spread_factor_at, ClockConfig};
use crate::error::{ClockError, Result};
use crate::kinematics::{generate_events, Body};
use crate::recorder::{clock_time_from_ratio, partner_offset, ratio};
use crate::units;

#[derive(Debug, Clone, PartialEq)]
pub struct McOptions {
    /// Multiplier on `Δx_h`; 0 switches the noise off.
    pub sigma_scale: f64,
    /// Widen `σ` by the packet spreading factor at each scattering time.
    /// Needs the clock mass.
    pub spread_inflation: bool,
    /// Perturb dial bodies 1 and 3 with the same `σ`.
    pub perturb_dial: bool,
    /// Deduce serial numbers so that `m ≥ 2` dials can be read.
    pub serial_resolution: bool,
}

impl Default for McOptions {
    fn default() -> Self {
        Self {
            sigma_scale: 1.0,
            spread_inflation: false,
            perturb_dial: false,
            serial_resolution: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct McSummary {
    pub n: u64,
    pub m: u64,
    pub samples: u64,
    pub seed: u64,
    /// Seconds.
    pub err_mean: f64,
    /// Seconds.
    pub err_std: f64,
    pub err_std_over_tau: f64,
    pub pairing_flips: u64,
    /// Seconds.
    pub err_max_abs: f64,
}

impl McSummary {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("summary serialises")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct McRun {
    pub samples: u64,
    pub seed: u64,
    /// `t_c estimate − t_c truth` in units of `τ`, sample-major.
    pub errors_tau: Vec<f64>,
    pub pairing_flips: u64,
    pub summary: McSummary,
}

/// Nominal event data in floats, internal units.
struct Triad {
    t_hand: f64,
    x_hand: f64,
    t_d3: f64,
    /// Unperturbed reading error, evaluated exactly.
    base_error: f64,
    sigma: f64,
}

struct Prepared {
    triads: Vec<Triad>,
    ell: f64,
    running_time: f64,
    recorder: f64,
    q2_spacing: f64,
    one_plus_beta: f64,
}

fn prepare(cfg: &ClockConfig, opts: &McOptions) -> Result<Prepared> {
    let n = cfg.n();
    let dx_h = units::to_f64(&cfg.division());
    let mass = if opts.spread_inflation {
        Some(cfg.mass_kg().ok_or(ClockError::MissingMass)?)
    } else {
        None
    };
    let dx_h_si = dx_h * cfg.length_unit_si();
    let half_t = n as f64 / 2.0;
    let events = generate_events(cfg);
    let triads = events
        .chunks(3)
        .map(|c| {
            let (hand, d3) = (&c[1], &c[2]);
            debug_assert_eq!((hand.body, d3.body), (Body::Hand, Body::D3));
            let t_hand = units::to_f64(&hand.time);
            let rho = ratio(
                &(&hand.time + &hand.position - cfg.recorder_x()),
                &(&d3.time + &d3.position - cfg.recorder_x()),
                cfg,
            );
            let base_error = units::to_f64(&(clock_time_from_ratio(&rho, cfg) - &hand.time));
            let mut sigma = opts.sigma_scale * dx_h;
            if let Some(mass) = mass {
                sigma *= spread_factor_at(mass, dx_h_si, (t_hand + half_t) * cfg.time_unit_si());
            }
            Triad {
                t_hand,
                x_hand: units::to_f64(&hand.position),
                t_d3: units::to_f64(&d3.time),
                base_error,
                sigma,
            }
        })
        .collect();
    Ok(Prepared {
        triads,
        ell: units::to_f64(cfg.ell()),
        running_time: n as f64,
        recorder: units::to_f64(cfg.recorder_x()),
        q2_spacing: 1.0 - units::to_f64(cfg.beta()),
        one_plus_beta: 1.0 + units::to_f64(cfg.beta()),
    })
}

struct SampleDraw {
    t2: Vec<f64>,
    t3: Vec<f64>,
    errors: Vec<f64>,
    d_hand: Vec<f64>,
    d_dial: Vec<f64>,
}

impl SampleDraw {
    fn with_capacity(len: usize) -> Self {
        Self {
            t2: Vec::with_capacity(len),
            t3: Vec::with_capacity(len),
            errors: Vec::with_capacity(len),
            d_hand: Vec::with_capacity(len),
            d_dial: Vec::with_capacity(len),
        }
    }
}

/// Perturbed `Q2` and `Q3` arrival times plus the reading errors (units of
/// `τ`) of one sample.
///
/// A hand shift `δ` moves the `Q2` arrival by `2δ/(1+β)` and a shift `δ₃`
/// of dial body 3 moves the `Q3` arrival by `2δ₃`, so each error is the
/// exact unperturbed error plus `(2δ₃ − 2δ/(1+β))·T/(4ℓ)`.
fn draw_sample(p: &Prepared, seed: u64, sample: u64, opts: &McOptions) -> SampleDraw {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(sample);
    let std_normal = Normal::new(0.0, 1.0).expect("unit normal");

    let scale = p.running_time / (4.0 * p.ell);
    let len = p.triads.len();
    let mut d = SampleDraw::with_capacity(len);
    for tr in &p.triads {
        let d_hand = tr.sigma * std_normal.sample(&mut rng);
        let d_dial = if opts.perturb_dial {
            tr.sigma * std_normal.sample(&mut rng)
        } else {
            0.0
        };
        let shift2 = 2.0 * d_hand / p.one_plus_beta;
        let shift3 = 2.0 * d_dial;
        d.t2.push(tr.t_hand + tr.x_hand - p.recorder + shift2);
        d.t3.push(tr.t_d3 + p.ell - p.recorder + shift3);
        d.errors.push(tr.base_error + (shift3 - shift2) * scale);
        d.d_hand.push(d_hand);
        d.d_dial.push(d_dial);
    }
    d
}

/// Readings whose partner, chosen by the recorder's rule among the
/// perturbed arrivals, is not the triad partner.
fn count_flips(cfg: &ClockConfig, p: &Prepared, t2: &[f64], t3: &[f64]) -> u64 {
    let mut q3_sorted: Vec<(f64, usize)> = t3.iter().copied().enumerate().map(|(i, t)| (t, i)).collect();
    q3_sorted.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)));
    let mut flips = 0;
    for (i, a) in t2.iter().enumerate() {
        let j = if cfg.m() == 1 {
            1
        } else {
            let k = (1.0 + (a - t2[0]) / p.q2_spacing)
                .round()
                .clamp(1.0, cfg.n() as f64) as u64;
            partner_offset(cfg, k) as usize
        };
        let start = q3_sorted.partition_point(|(t, _)| t <= a);
        if q3_sorted.get(start + j - 1).map(|(_, idx)| *idx) != Some(i) {
            flips += 1;
        }
    }
    flips
}

fn run_sample(cfg: &ClockConfig, p: &Prepared, seed: u64, sample: u64, opts: &McOptions) -> (Vec<f64>, u64) {
    let d = draw_sample(p, seed, sample, opts);
    let flips = count_flips(cfg, p, &d.t2, &d.t3);
    (d.errors, flips)
}

pub fn run_mc(cfg: &ClockConfig, samples: u64, seed: u64, opts: &McOptions) -> Result<McRun> {
    if samples == 0 {
        return Err(ClockError::NoSamples);
    }
    if cfg.m() >= 2 && !opts.serial_resolution {
        return Err(ClockError::AmbiguousMonteCarlo(cfg.m()));
    }
    let prepared = prepare(cfg, opts)?;
    let parts: Vec<(Vec<f64>, u64)> = (0..samples)
        .into_par_iter()
        .map(|s| run_sample(cfg, &prepared, seed, s, opts))
        .collect();

    let mut errors_tau = Vec::with_capacity((samples * cfg.n()) as usize);
    let mut pairing_flips = 0;
    for (errs, flips) in parts {
        errors_tau.extend(errs);
        pairing_flips += flips;
    }

    let count = errors_tau.len() as f64;
    let mean = errors_tau.iter().sum::<f64>() / count;
    let var = if errors_tau.len() > 1 {
        errors_tau.iter().map(|e| (e - mean) * (e - mean)).sum::<f64>() / (count - 1.0)
    } else {
        0.0
    };
    let std = var.sqrt();
    let max_abs = errors_tau.iter().fold(0.0f64, |acc, e| acc.max(e.abs()));
    let tau = cfg.tau_si();
    let summary = McSummary {
        n: cfg.n(),
        m: cfg.m(),
        samples,
        seed,
        err_mean: mean * tau,
        err_std: std * tau,
        err_std_over_tau: std,
        pairing_flips,
        err_max_abs: max_abs * tau,
    };
    Ok(McRun {
        samples,
        seed,
        errors_tau,
        pairing_flips,
        summary,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clock::build_config;
    use crate::units::Rational;
    use num_traits::FromPrimitive;

    fn cfg(n: u64, m: u64) -> ClockConfig {
        build_config(n, m, 1.0, None, None, None).unwrap()
    }

    #[test]
    fn zero_sigma_gives_exact_zero() {
        let opts = McOptions {
            sigma_scale: 0.0,
            ..Default::default()
        };
        let run = run_mc(&cfg(37, 1), 20, 3, &opts).unwrap();
        assert_eq!(run.errors_tau.len(), 20 * 37);
        assert!(run.errors_tau.iter().all(|e| *e == 0.0));
        assert_eq!(run.pairing_flips, 0);
        assert_eq!(run.summary.err_std, 0.0);
    }

    #[test]
    fn std_matches_accuracy() {
        let run = run_mc(&cfg(100, 1), 10_000, 11, &McOptions::default()).unwrap();
        // δx ~ N(0, Δx_h) maps to δt_c = δx/(u(1+β)), std τ/(1+β) with β = 1/199.
        let s = run.summary.err_std_over_tau;
        assert!((s - 1.0).abs() < 0.05, "{s}");
        assert!((s - 199.0 / 200.0).abs() < 0.01, "{s}");
        let n = run.errors_tau.len() as f64;
        assert!(run.summary.err_mean.abs() / 0.01 <= 3.0 * s / n.sqrt());
    }

    #[test]
    fn same_seed_same_run() {
        let c = cfg(30, 1);
        let a = run_mc(&c, 50, 99, &McOptions::default()).unwrap();
        let b = run_mc(&c, 50, 99, &McOptions::default()).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.summary.to_json(), b.summary.to_json());
        let c2 = run_mc(&c, 50, 100, &McOptions::default()).unwrap();
        assert_ne!(a.errors_tau, c2.errors_tau);
    }

    #[test]
    fn partitioned_runs_match_serial() {
        let c = cfg(20, 1);
        let opts = McOptions::default();
        let p = prepare(&c, &opts).unwrap();
        let full = run_mc(&c, 40, 5, &opts).unwrap();
        let mut pieces: Vec<f64> = Vec::new();
        // two "workers" walking disjoint sample ranges in reverse order
        for range in [(20..40).rev().collect::<Vec<_>>(), (0..20).rev().collect()] {
            for s in range {
                pieces.extend(run_sample(&c, &p, 5, s, &opts).0);
            }
        }
        let mut a = full.errors_tau.clone();
        a.sort_by(f64::total_cmp);
        pieces.sort_by(f64::total_cmp);
        assert_eq!(a, pieces);
    }

    #[test]
    fn long_dial_needs_serial_resolution() {
        let c = cfg(40, 2);
        assert_eq!(
            run_mc(&c, 10, 1, &McOptions::default()),
            Err(ClockError::AmbiguousMonteCarlo(2))
        );
        let opts = McOptions {
            serial_resolution: true,
            ..Default::default()
        };
        assert!(run_mc(&c, 10, 1, &opts).is_ok());
        assert_eq!(run_mc(&c, 0, 1, &opts), Err(ClockError::NoSamples));
    }

    #[test]
    fn spread_inflation_needs_mass_and_widens() {
        let c = cfg(50, 1);
        let opts = McOptions {
            spread_inflation: true,
            ..Default::default()
        };
        assert_eq!(run_mc(&c, 5, 1, &opts), Err(ClockError::MissingMass));
        let heavy = c.with_mass(crate::clock::mass_bound(&c)).unwrap();
        let plain = run_mc(&heavy, 400, 2, &McOptions::default()).unwrap();
        let wide = run_mc(&heavy, 400, 2, &opts).unwrap();
        assert!(wide.summary.err_std > plain.summary.err_std);
        // at the mass bound the width grows at most by sqrt(2)
        assert!(wide.summary.err_std < 2f64.sqrt() * plain.summary.err_std * 1.1);
    }

    #[test]
    fn perturbing_dial_adds_variance() {
        let c = cfg(100, 1);
        let opts = McOptions {
            perturb_dial: true,
            ..Default::default()
        };
        let run = run_mc(&c, 2000, 8, &opts).unwrap();
        let s = run.summary.err_std_over_tau;
        // hand term τ/(1+β), dial term τ
        let expected = (1.0 + (199.0f64 / 200.0).powi(2)).sqrt();
        assert!((s - expected).abs() < 0.05, "{s}");
    }

    #[test]
    fn float_readout_matches_exact_recomputation() {
        let c = cfg(64, 1);
        let opts = McOptions {
            perturb_dial: true,
            ..Default::default()
        };
        let p = prepare(&c, &opts).unwrap();
        let d = draw_sample(&p, 17, 4, &opts);
        let events = generate_events(&c);
        let t = c.running_time();
        let one = Rational::from_integer(1.into());
        for (k, ev) in events.chunks(3).enumerate() {
            let dh = Rational::from_f64(d.d_hand[k]).unwrap();
            let dd = Rational::from_f64(d.d_dial[k]).unwrap();
            // photon x = t − a meets the shifted hand x = −βt + δ
            let a = &ev[1].time - &ev[1].position;
            let t_meet = (&a + dh) / (&one + c.beta());
            let x_meet = &t_meet - &a;
            let t2 = t_meet + x_meet - c.recorder_x();
            // and dial body 3 at ℓ + δ₃
            let x3 = &ev[2].position + dd;
            let t3 = (&ev[2].time - &ev[2].position + &x3) + &x3 - c.recorder_x();
            let exact = clock_time_from_ratio(&ratio(&t2, &t3, &c), &c) - &ev[1].time;
            let exact = units::to_f64(&exact);
            assert!(
                (d.errors[k] - exact).abs() <= 1e-12 * units::to_f64(&t),
                "{} vs {exact}",
                d.errors[k]
            );
        }
    }

    /// Walks the perturbed arrivals in time order from each `Q2` and checks
    /// whether the `j`-th `Q3` met is its own partner.
    fn brute_force_flips(c: &ClockConfig, t2: &[f64], t3: &[f64]) -> u64 {
        let spacing = 1.0 - units::to_f64(c.beta());
        let mut flips = 0;
        for k in 0..t2.len() {
            let serial = (1.0 + (t2[k] - t2[0]) / spacing).round().clamp(1.0, c.n() as f64) as u64;
            let j = partner_offset(c, serial) as usize;
            let mut later: Vec<(f64, usize)> = t3
                .iter()
                .enumerate()
                .filter(|(_, &x)| x > t2[k])
                .map(|(i, &x)| (x, i))
                .collect();
            later.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
            if later.get(j - 1).map(|p| p.1) != Some(k) {
                flips += 1;
            }
        }
        flips
    }

    #[test]
    fn flips_match_brute_force_positions() {
        let c = cfg(30, 3);
        let opts = McOptions {
            serial_resolution: true,
            sigma_scale: 3.0,
            ..Default::default()
        };
        let p = prepare(&c, &opts).unwrap();
        let mut total = 0;
        for s in 0..50 {
            let d = draw_sample(&p, 21, s, &opts);
            let flips = count_flips(&c, &p, &d.t2, &d.t3);
            assert_eq!(flips, brute_force_flips(&c, &d.t2, &d.t3));
            total += flips;
        }
        assert!(total > 0, "a 3σ perturbation should cross some boundary");
    }
}
