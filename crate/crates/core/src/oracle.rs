//! Brute-force verifier for the recorder.
//!
//! Scattering events are rebuilt here from scratch by intersecting incoming
//! photon world lines, spaced `cτ(1+β)` apart, with the world lines of the
//! three bodies. Pairing is then decided by looking at where each `Q2`
//! sits among the `Q3` in a single snapshot of positions taken after the
//! last scattering. Nothing here uses the closed-form offset law or the
//! [`crate::kinematics`] module.

use std::collections::BTreeMap;

use num_traits::One;
use rayon::prelude::*;
use serde::Serialize;

use crate::clock::ClockConfig;
use crate::kinematics::Species;
use crate::recorder;
use crate::units::{self, Rational};

#[derive(Debug, Clone, PartialEq)]
struct WorldLineEvent {
    species: Species,
    serial: u64,
    time: Rational,
    position: Rational,
}

/// Positions of all scattered quanta at one instant.
#[derive(Debug, Clone, PartialEq)]
pub struct Snapshot {
    pub t: Rational,
    pub positions: Vec<(Species, u64, Rational)>,
}

impl Snapshot {
    pub fn position(&self, species: Species, serial: u64) -> Option<&Rational> {
        self.positions
            .iter()
            .find(|(s, k, _)| *s == species && *k == serial)
            .map(|(_, _, x)| x)
    }

    /// Sorted positions of one species.
    pub fn sorted(&self, species: Species) -> Vec<Rational> {
        let mut xs: Vec<Rational> = self
            .positions
            .iter()
            .filter(|(s, _, _)| *s == species)
            .map(|(_, _, x)| x.clone())
            .collect();
        xs.sort();
        xs
    }
}

/// Incoming triad `k` moves along `x = t − a_k`. The first triad is placed
/// so that it meets the hand at `x = ℓ − φ·2ℓ/n`; later ones trail by the
/// triad spacing.
fn intersect_world_lines(cfg: &ClockConfig) -> Vec<WorldLineEvent> {
    let ell = cfg.ell().clone();
    let beta = cfg.beta().clone();
    let one_plus_beta = Rational::one() + &beta;
    let spacing = one_plus_beta.clone();

    let x_first = &ell - cfg.phi() * &ell * units::int(2) / units::uint(cfg.n());
    // hand world line x = −βt
    let t_first = -(&x_first / &beta);
    let a_first = &t_first - &x_first;

    let mut out = Vec::with_capacity(3 * cfg.n() as usize);
    for k in 1..=cfg.n() {
        let a = &a_first + units::uint(k - 1) * &spacing;
        let t_hand = &a / &one_plus_beta;
        let x_hand = -(&beta * &t_hand);
        out.push(WorldLineEvent {
            species: Species::Q1,
            serial: k,
            time: &a - &ell,
            position: -ell.clone(),
        });
        out.push(WorldLineEvent {
            species: Species::Q2,
            serial: k,
            time: t_hand,
            position: x_hand,
        });
        out.push(WorldLineEvent {
            species: Species::Q3,
            serial: k,
            time: &a + &ell,
            position: ell.clone(),
        });
    }
    out
}

/// Positions of all `3n` scattered quanta at `t`, which must not precede any
/// scattering.
fn snapshot_at(events: &[WorldLineEvent], t: &Rational) -> Snapshot {
    let positions = events
        .iter()
        .map(|e| (e.species, e.serial, &e.position - (t - &e.time)))
        .collect();
    Snapshot {
        t: t.clone(),
        positions,
    }
}

/// Snapshot taken at the last scattering, when every quantum exists.
pub fn snapshot(cfg: &ClockConfig) -> Snapshot {
    let events = intersect_world_lines(cfg);
    let last = events.iter().map(|e| e.time.clone()).max().expect("n >= 2");
    snapshot_at(&events, &last)
}

/// Snapshot at `last scattering + delay`; `delay` must be non-negative.
pub fn snapshot_after(cfg: &ClockConfig, delay: &Rational) -> Snapshot {
    let events = intersect_world_lines(cfg);
    let last = events.iter().map(|e| e.time.clone()).max().expect("n >= 2");
    snapshot_at(&events, &(last + delay))
}

/// Partner offset of each `Q2`, by counting the `Q3` that travel behind it
/// (further from the recorder) up to and including its own partner. A `Q3`
/// level with the `Q2` travels together with it and is not counted.
pub fn oracle_pairing(cfg: &ClockConfig) -> BTreeMap<u64, u64> {
    pairing_from_snapshot(&snapshot(cfg), cfg.n())
}

pub fn pairing_from_snapshot(snap: &Snapshot, n: u64) -> BTreeMap<u64, u64> {
    let q3 = snap.sorted(Species::Q3);
    let mut x2 = vec![None; n as usize + 1];
    let mut x3 = vec![None; n as usize + 1];
    for (s, k, x) in &snap.positions {
        match s {
            Species::Q2 => x2[*k as usize] = Some(x),
            Species::Q3 => x3[*k as usize] = Some(x),
            Species::Q1 => {}
        }
    }
    (1..=n)
        .map(|k| {
            let a = x2[k as usize].expect("every triad has a Q2");
            let b = x3[k as usize].expect("every triad has a Q3");
            let behind_q2 = q3.partition_point(|x| x <= a);
            let up_to_partner = q3.partition_point(|x| x <= b);
            (k, (up_to_partner - behind_q2) as u64)
        })
        .collect()
}

/// Ground-truth clock time of each hand scattering, `t_c = −x_h/u`.
pub fn oracle_reading(cfg: &ClockConfig) -> BTreeMap<u64, Rational> {
    intersect_world_lines(cfg)
        .into_iter()
        .filter(|e| e.species == Species::Q2)
        .map(|e| (e.serial, -(&e.position / cfg.hand_speed())))
        .collect()
}

/// One row of a pairing table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairingRow {
    pub n: u64,
    pub m: u64,
    pub phi: String,
    pub k: u64,
    pub offset_closed_form: u64,
    pub offset_oracle: u64,
}

impl PairingRow {
    pub fn matches(&self) -> bool {
        self.offset_closed_form == self.offset_oracle
    }
}

/// Closed-form against brute-force offsets for every triad of one config.
pub fn pairing_table(cfg: &ClockConfig) -> Vec<PairingRow> {
    let oracle = oracle_pairing(cfg);
    let phi = units::format(cfg.phi());
    oracle
        .into_iter()
        .map(|(k, offset_oracle)| PairingRow {
            n: cfg.n(),
            m: cfg.m(),
            phi: phi.clone(),
            k,
            offset_closed_form: recorder::partner_offset(cfg, k),
            offset_oracle,
        })
        .collect()
}

/// Summary of a pairing certification sweep.
#[derive(Debug, Clone, Default, Serialize)]
pub struct SweepReport {
    pub configs: u64,
    pub triads: u64,
    pub mismatches: Vec<PairingRow>,
    /// Configs skipped because `β ≥ 1` (only `m = n`).
    pub skipped: u64,
}

/// Every valid `(n, m, φ)` with `2 ≤ n ≤ max_n` and `m ≤ max_m`, in a
/// stable order.
pub fn sweep_grid(max_n: u64, max_m: u64, phis: &[Rational]) -> Vec<(u64, u64, Rational)> {
    let mut out = Vec::new();
    for n in 2..=max_n {
        for m in 1..=max_m.min(n) {
            for phi in phis {
                out.push((n, m, phi.clone()));
            }
        }
    }
    out
}

/// Certifies the closed-form offset law against [`oracle_pairing`] over the
/// whole grid. Runs in parallel; the report is independent of scheduling.
pub fn sweep_pairing(max_n: u64, max_m: u64, phis: &[Rational]) -> SweepReport {
    let grid = sweep_grid(max_n, max_m, phis);
    let parts: Vec<Option<Vec<PairingRow>>> = grid
        .par_iter()
        .map(|(n, m, phi)| {
            let cfg = crate::clock::build_config(*n, *m, *n as f64, None, Some(phi.clone()), None).ok()?;
            Some(pairing_table(&cfg))
        })
        .collect();
    let mut report = SweepReport::default();
    for part in parts {
        match part {
            None => report.skipped += 1,
            Some(rows) => {
                report.configs += 1;
                report.triads += rows.len() as u64;
                report
                    .mismatches
                    .extend(rows.into_iter().filter(|r| !r.matches()));
            }
        }
    }
    report
}
