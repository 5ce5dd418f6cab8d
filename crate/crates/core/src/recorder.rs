//! What the recorder does with the arrival stream.
//!
//! A reading pairs a `Q2` with its triad partner `Q3` and evaluates
//! `t_c = (−½ + ρ)·T` with `ρ = (t₃ − t₂)/(4ℓ/c)`. The dial-ends separation
//! `t₃ − t₁ = 4ℓ/c` is known in advance, so `Q1` arrivals are never needed.
//!
//! The partner is the `j`-th `Q3` arriving strictly after the `Q2`. A `Q3`
//! arriving at the same instant travels together with the `Q2` and does not
//! count. For triad `k` the gap to the partner is `4ℓ(k − 1 + φ)/n` and
//! consecutive `Q3` are `4ℓ/m` apart, hence `j = ⌈m(k − 1 + φ)/n⌉`.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::clock::ClockConfig;
use crate::error::{ClockError, Result};
use crate::kinematics::{ArrivalRecord, Species};
use crate::units::{self, Rational};

#[derive(Debug, Clone, PartialEq)]
pub struct PairingDecision {
    pub q2_arrival: ArrivalRecord,
    /// Which following `Q3` was used, when the pairing is resolved.
    pub partner_offset: Option<u64>,
    /// Offsets still possible. `{j}` when resolved, `1..=m` (or fewer at the
    /// stream end) otherwise.
    pub candidate_offsets: Vec<u64>,
    pub resolved_serial: Option<u64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TimeReading {
    /// Clock time in units of `τ`. For an unresolved pairing this is the
    /// reading obtained with the first following `Q3`.
    pub t_c: Rational,
    pub t_0: Rational,
    pub rho: Rational,
    /// Every candidate `t_c`, ordered by partner offset. A single entry when
    /// the pairing is resolved.
    pub ambiguity_set: Vec<Rational>,
    pub pairing: PairingDecision,
    /// Fewer than `m` `Q3` followed the `Q2` before the stream ended.
    pub edge_truncated: bool,
    /// Ground truth attached by callers that have it; never set by the recorder.
    pub truth_t_c: Option<Rational>,
}

impl TimeReading {
    /// `t_c ∈ [−T/2, T/2]`. A reading outside is a mis-pairing diagnostic.
    pub fn in_range(&self, cfg: &ClockConfig) -> bool {
        let half_t = cfg.running_time() / units::int(2);
        self.t_c.abs() <= half_t
    }

    pub fn with_truth(mut self, truth: Rational) -> Self {
        self.truth_t_c = Some(truth);
        self
    }

    /// `t_c − truth`, when the truth is attached.
    pub fn error(&self) -> Option<Rational> {
        self.truth_t_c.as_ref().map(|t| &self.t_c - t)
    }

    pub fn is_resolved(&self) -> bool {
        self.pairing.partner_offset.is_some()
    }
}

/// Closed-form partner offset `⌈m(k − 1 + φ)/n⌉` for triad `k`.
pub fn partner_offset(cfg: &ClockConfig, k: u64) -> u64 {
    let x = units::uint(cfg.m()) * (units::uint(k - 1) + cfg.phi()) / units::uint(cfg.n());
    units::ceil_int(&x).to_u64().expect("partner offset is positive")
}

/// `ρ = c(t₃ − t₂)/(4ℓ)`.
pub fn ratio(q2_time: &Rational, q3_time: &Rational, cfg: &ClockConfig) -> Rational {
    (q3_time - q2_time) / (cfg.ell() * units::int(4))
}

/// `t_c = (−½ + ρ)T`.
pub fn clock_time_from_ratio(rho: &Rational, cfg: &ClockConfig) -> Rational {
    (rho - units::half()) * cfg.running_time()
}

/// `t₀ = (1 + β)·t_c`.
pub fn convert_t0(t_c: &Rational, cfg: &ClockConfig) -> Rational {
    (Rational::one() + cfg.beta()) * t_c
}

/// The older `t₀` readout `((c − v)/v)(ℓ/c)(2r − 1)` with `v = −u`, `r = 1 − ρ`.
pub fn convert_t0_via_a1(rho: &Rational, cfg: &ClockConfig) -> Rational {
    let v = -cfg.hand_speed().clone();
    let r = Rational::one() - rho;
    (Rational::one() - &v) / &v * cfg.ell() * (r * units::int(2) - Rational::one())
}

fn expect_species(rec: &ArrivalRecord, expected: Species) -> Result<()> {
    if rec.species != expected {
        return Err(ClockError::WrongSpecies {
            expected: expected.as_str(),
            got: rec.species.as_str(),
        });
    }
    Ok(())
}

/// `Q3` records arriving strictly after `t`, in stream order.
pub fn following_q3<'a>(
    stream: &'a [ArrivalRecord],
    t: &Rational,
) -> impl Iterator<Item = &'a ArrivalRecord> + 'a {
    let start = stream.partition_point(|r| &r.arrival_time <= t);
    stream[start..].iter().filter(|r| r.species == Species::Q3)
}

fn reading(
    q2: &ArrivalRecord,
    q3_time: &Rational,
    cfg: &ClockConfig,
    pairing: PairingDecision,
) -> TimeReading {
    let rho = ratio(&q2.arrival_time, q3_time, cfg);
    let t_c = clock_time_from_ratio(&rho, cfg);
    let t_0 = convert_t0(&t_c, cfg);
    debug_assert_eq!(t_0, convert_t0_via_a1(&rho, cfg));
    TimeReading {
        ambiguity_set: vec![t_c.clone()],
        t_c,
        t_0,
        rho,
        pairing,
        edge_truncated: false,
        truth_t_c: None,
    }
}

/// Reading for a short dial (`m = 1`) from a `Q2` and the first `Q3`
/// arriving after it. No serial number is needed.
pub fn read_time_simple(
    q2: &ArrivalRecord,
    next_q3: &ArrivalRecord,
    cfg: &ClockConfig,
) -> Result<TimeReading> {
    if cfg.m() != 1 {
        return Err(ClockError::RequiresShortDial(cfg.m()));
    }
    expect_species(q2, Species::Q2)?;
    expect_species(next_q3, Species::Q3)?;
    if next_q3.arrival_time <= q2.arrival_time {
        return Err(ClockError::UnpairedReading(units::format(&q2.arrival_time)));
    }
    let pairing = PairingDecision {
        q2_arrival: q2.clone(),
        partner_offset: Some(1),
        candidate_offsets: vec![1],
        resolved_serial: None,
    };
    Ok(reading(q2, &next_q3.arrival_time, cfg, pairing))
}

/// [`read_time_simple`] with the partner looked up in `stream`.
pub fn read_time_simple_in(
    q2: &ArrivalRecord,
    stream: &[ArrivalRecord],
    cfg: &ClockConfig,
) -> Result<TimeReading> {
    let next = following_q3(stream, &q2.arrival_time)
        .next()
        .ok_or_else(|| ClockError::UnpairedReading(units::format(&q2.arrival_time)))?;
    read_time_simple(q2, next, cfg)
}

/// Serial number of a `Q2` from its delay after the first `Q2`.
///
/// Consecutive `Q2` arrive `τ(1 − β)` apart: the triads hit the hand one `τ`
/// apart and the hand has meanwhile moved `uτ` closer to the recorder.
pub fn deduce_serial(q2_time: &Rational, first_q2_time: &Rational, cfg: &ClockConfig) -> Result<u64> {
    let spacing = Rational::one() - cfg.beta();
    let steps = (q2_time - first_q2_time) / spacing;
    let fail = || ClockError::SerialDeductionFailed(units::format(&steps));
    if !units::is_integer(&steps) || steps.is_negative() {
        return Err(fail());
    }
    let k = steps.to_integer() + BigInt::one();
    match k.to_u64() {
        Some(k) if k <= cfg.n() => Ok(k),
        _ => Err(fail()),
    }
}

/// Reading that identifies the partner through the serial number, deduced
/// from the arrival of the first `Q2` registered by a recorder switched on
/// before any quanta arrived.
pub fn read_time_with_serial(
    q2: &ArrivalRecord,
    stream: &[ArrivalRecord],
    first_q2_arrival: &Rational,
    cfg: &ClockConfig,
) -> Result<TimeReading> {
    expect_species(q2, Species::Q2)?;
    let k = deduce_serial(&q2.arrival_time, first_q2_arrival, cfg)?;
    let j = partner_offset(cfg, k);
    let mut available = 0u64;
    let mut partner = None;
    for q3 in following_q3(stream, &q2.arrival_time).take(j as usize) {
        available += 1;
        partner = Some(q3);
    }
    let partner = match partner {
        Some(p) if available == j => p,
        _ => return Err(ClockError::StreamTruncated { needed: j, available }),
    };
    let pairing = PairingDecision {
        q2_arrival: q2.clone(),
        partner_offset: Some(j),
        candidate_offsets: vec![j],
        resolved_serial: Some(k),
    };
    Ok(reading(q2, &partner.arrival_time, cfg, pairing))
}

/// All readings compatible with an unknown serial number: one per each of
/// the first `m` `Q3` following the `Q2`. Consecutive candidates differ by
/// `T/m`. Near the end of the stream fewer than `m` may be realisable, and
/// the reading is flagged `edge_truncated`.
pub fn enumerate_ambiguity(
    q2: &ArrivalRecord,
    stream: &[ArrivalRecord],
    cfg: &ClockConfig,
) -> Result<TimeReading> {
    expect_species(q2, Species::Q2)?;
    let partners: Vec<&ArrivalRecord> = following_q3(stream, &q2.arrival_time)
        .take(cfg.m() as usize)
        .collect();
    let Some(first) = partners.first() else {
        return Err(ClockError::UnpairedReading(units::format(&q2.arrival_time)));
    };
    let ambiguity_set = partners
        .iter()
        .map(|p| clock_time_from_ratio(&ratio(&q2.arrival_time, &p.arrival_time, cfg), cfg))
        .collect();
    let candidate_offsets: Vec<u64> = (1..=partners.len() as u64).collect();
    let resolved = cfg.m() == 1;
    let pairing = PairingDecision {
        q2_arrival: q2.clone(),
        partner_offset: resolved.then_some(1),
        candidate_offsets,
        resolved_serial: None,
    };
    let mut out = reading(q2, &first.arrival_time, cfg, pairing);
    out.ambiguity_set = ambiguity_set;
    out.edge_truncated = (partners.len() as u64) < cfg.m();
    Ok(out)
}

/// How the recorder pairs quanta when reading a whole stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReadoutMode {
    /// First following `Q3`; only valid for `m = 1`.
    Simple,
    /// Serial numbers deduced from the first `Q2` of the stream.
    Serial,
    /// Serial unknown; every candidate is reported.
    Unresolved,
}

/// Readings for every `Q2` in `stream`.
///
/// In `Serial` mode the first `Q2` of the stream is taken as triad 1, so the
/// stream must start before the first arrival. In the other modes any
/// contiguous window works; `Q3` arriving before the first `Q2` of the
/// window are simply never used.
pub fn read_stream(
    stream: &[ArrivalRecord],
    cfg: &ClockConfig,
    mode: ReadoutMode,
) -> Result<Vec<TimeReading>> {
    let q2s = stream.iter().filter(|r| r.species == Species::Q2);
    match mode {
        ReadoutMode::Simple => q2s.map(|q2| read_time_simple_in(q2, stream, cfg)).collect(),
        ReadoutMode::Serial => {
            let Some(first) = stream.iter().find(|r| r.species == Species::Q2) else {
                return Ok(Vec::new());
            };
            let t1 = first.arrival_time.clone();
            q2s.map(|q2| read_time_with_serial(q2, stream, &t1, cfg))
                .collect()
        }
        ReadoutMode::Unresolved => q2s.map(|q2| enumerate_ambiguity(q2, stream, cfg)).collect(),
    }
}

/// Sorted distinct positive differences between candidate readings.
pub fn candidate_differences(reading: &TimeReading) -> Vec<Rational> {
    let mut out = Vec::new();
    let set = &reading.ambiguity_set;
    for (i, a) in set.iter().enumerate() {
        for b in &set[i + 1..] {
            let d = (b - a).abs();
            if !d.is_zero() {
                out.push(d);
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clock::build_config;
    use crate::kinematics::simulate;
    use crate::oracle::oracle_reading;
    use proptest::prelude::*;

    fn cfg(n: u64, m: u64, phi: Rational) -> ClockConfig {
        build_config(n, m, n as f64, None, Some(phi), None).unwrap()
    }

    fn rec(species: Species, t: Rational) -> ArrivalRecord {
        ArrivalRecord {
            species,
            arrival_time: t,
            truth_serial: 0,
        }
    }

    fn q2_of(stream: &[ArrivalRecord], k: u64) -> &ArrivalRecord {
        stream
            .iter()
            .find(|r| r.species == Species::Q2 && r.truth_serial == k)
            .unwrap()
    }

    fn first_q2(stream: &[ArrivalRecord]) -> Rational {
        stream
            .iter()
            .find(|r| r.species == Species::Q2)
            .unwrap()
            .arrival_time
            .clone()
    }

    #[test]
    fn centre_and_start_of_dial() {
        let c = cfg(10, 1, units::half());
        let t0 = units::int(50);
        let q2 = rec(Species::Q2, t0.clone());
        let q3 = rec(Species::Q3, &t0 + c.dial_length());
        let r = read_time_simple(&q2, &q3, &c).unwrap();
        assert_eq!(r.rho, units::half());
        assert_eq!(r.t_c, units::int(0));
        // zero gap is the hand sitting on body 3
        let rho = ratio(&t0, &t0, &c);
        assert_eq!(
            clock_time_from_ratio(&rho, &c),
            -(c.running_time() / units::int(2))
        );
    }

    #[test]
    fn second_of_four() {
        let c = cfg(4, 1, units::half());
        let (_, stream) = simulate(&c);
        let q2 = q2_of(&stream, 2);
        let r = read_time_simple_in(q2, &stream, &c).unwrap();
        assert_eq!(r.t_c, -(c.running_time() / units::int(8)));
        assert_eq!(r.t_c, oracle_reading(&c)[&2]);
        assert_eq!(r.t_0, convert_t0(&r.t_c, &c));
        assert!(r.in_range(&c));
    }

    #[test]
    fn simple_readout_rejects_bad_input() {
        let c = cfg(4, 1, units::half());
        let (_, stream) = simulate(&c);
        let q2 = q2_of(&stream, 4);
        let q3_before = stream.iter().find(|r| r.species == Species::Q3).unwrap();
        assert!(matches!(
            read_time_simple(q2, q3_before, &c),
            Err(ClockError::UnpairedReading(_))
        ));
        assert!(matches!(
            read_time_simple(q3_before, q3_before, &c),
            Err(ClockError::WrongSpecies { .. })
        ));
        let long = cfg(5, 2, units::half());
        assert_eq!(
            read_time_simple(q2, q3_before, &long),
            Err(ClockError::RequiresShortDial(2))
        );
        // cut the stream right after the Q2
        let cut = stream.iter().position(|r| r == q2).unwrap();
        assert!(matches!(
            read_time_simple_in(q2, &stream[..=cut], &c),
            Err(ClockError::UnpairedReading(_))
        ));
    }

    #[test]
    fn m2_tie_goes_to_first_following() {
        let c = cfg(11, 2, units::half());
        let (_, stream) = simulate(&c);
        let t1 = first_q2(&stream);
        let truth = oracle_reading(&c);
        let r6 = read_time_with_serial(q2_of(&stream, 6), &stream, &t1, &c).unwrap();
        assert_eq!(r6.pairing.resolved_serial, Some(6));
        assert_eq!(r6.pairing.partner_offset, Some(1));
        assert_eq!(r6.t_c, truth[&6]);
        let r7 = read_time_with_serial(q2_of(&stream, 7), &stream, &t1, &c).unwrap();
        assert_eq!(r7.pairing.partner_offset, Some(2));
        assert_eq!(r7.t_c, truth[&7]);
        // the tied Q3 of triad 5 arrives together with Q2 of triad 6
        let t3_5 = &stream
            .iter()
            .find(|r| r.species == Species::Q3 && r.truth_serial == 5)
            .unwrap()
            .arrival_time;
        assert_eq!(t3_5, &q2_of(&stream, 6).arrival_time);
    }

    #[test]
    fn m3_blocks_of_nine() {
        let c = cfg(9, 3, units::half());
        let offsets: Vec<u64> = (1..=9).map(|k| partner_offset(&c, k)).collect();
        assert_eq!(offsets, [1, 1, 1, 2, 2, 2, 3, 3, 3]);
        let (_, stream) = simulate(&c);
        let t1 = first_q2(&stream);
        let truth = oracle_reading(&c);
        for k in 1..=9 {
            let r = read_time_with_serial(q2_of(&stream, k), &stream, &t1, &c).unwrap();
            assert_eq!(r.t_c, truth[&k]);
        }
    }

    #[test]
    fn serial_deduction() {
        let c = cfg(20, 4, units::frac(1, 4));
        let (_, stream) = simulate(&c);
        let t1 = first_q2(&stream);
        for k in 1..=20 {
            assert_eq!(deduce_serial(&q2_of(&stream, k).arrival_time, &t1, &c), Ok(k));
        }
        let off = &q2_of(&stream, 3).arrival_time + units::frac(1, 1000);
        assert!(matches!(
            deduce_serial(&off, &t1, &c),
            Err(ClockError::SerialDeductionFailed(_))
        ));
        let before = &t1 - (units::int(1) - c.beta());
        assert!(deduce_serial(&before, &t1, &c).is_err());
        let beyond = &t1 + (units::int(1) - c.beta()) * units::int(20);
        assert!(deduce_serial(&beyond, &t1, &c).is_err());
    }

    #[test]
    fn truncated_stream_is_reported() {
        let c = cfg(11, 2, units::half());
        let (_, stream) = simulate(&c);
        let t1 = first_q2(&stream);
        let q2 = q2_of(&stream, 9);
        let cut = stream.iter().position(|r| r == q2).unwrap();
        // keep only one Q3 after the Q2
        let first_after = cut
            + 1
            + stream[cut + 1..]
                .iter()
                .position(|r| r.species == Species::Q3)
                .unwrap();
        assert_eq!(
            read_time_with_serial(q2, &stream[..=first_after], &t1, &c),
            Err(ClockError::StreamTruncated {
                needed: 2,
                available: 1
            })
        );
    }

    #[test]
    fn ambiguity_m2_is_half_t() {
        let c = cfg(11, 2, units::half());
        let (_, stream) = simulate(&c);
        let half_t = c.running_time() / units::int(2);
        let truth = oracle_reading(&c);
        for k in 1..=11 {
            let r = enumerate_ambiguity(q2_of(&stream, k), &stream, &c).unwrap();
            assert_eq!(r.ambiguity_set.len(), 2, "k = {k}");
            assert_eq!(candidate_differences(&r), vec![half_t.clone()]);
            assert!(r.ambiguity_set.contains(&truth[&k]));
            assert!(!r.is_resolved());
        }
    }

    #[test]
    fn ambiguity_m3_thirds() {
        let c = cfg(30, 3, units::half());
        let (_, stream) = simulate(&c);
        let t = c.running_time();
        let r = enumerate_ambiguity(q2_of(&stream, 15), &stream, &c).unwrap();
        assert_eq!(
            candidate_differences(&r),
            vec![&t / units::int(3), &t * units::frac(2, 3)]
        );
    }

    #[test]
    fn ambiguity_m1_singleton() {
        let c = cfg(30, 1, units::half());
        let (_, stream) = simulate(&c);
        let r = enumerate_ambiguity(q2_of(&stream, 30), &stream, &c).unwrap();
        assert_eq!(r.ambiguity_set.len(), 1);
        assert!(r.is_resolved());
        assert!(!r.edge_truncated);
    }

    #[test]
    fn ambiguity_at_stream_end_is_flagged() {
        let c = cfg(12, 4, units::half());
        let (_, stream) = simulate(&c);
        let truth = oracle_reading(&c);
        // recorder switched off two Q3 after the Q2 of triad 6 (partner offset 2)
        let q2 = q2_of(&stream, 6);
        assert_eq!(partner_offset(&c, 6), 2);
        let end = stream
            .iter()
            .position(|r| r.species == Species::Q3 && r.truth_serial == 6)
            .unwrap();
        let r = enumerate_ambiguity(q2, &stream[..=end], &c).unwrap();
        assert!(r.edge_truncated);
        assert_eq!(r.ambiguity_set.len(), 2);
        assert_eq!(r.ambiguity_set[1], truth[&6]);
        let full = enumerate_ambiguity(q2, &stream, &c).unwrap();
        assert!(!full.edge_truncated);
        assert_eq!(full.ambiguity_set.len(), 4);
    }

    #[test]
    fn t0_conversion() {
        let c = cfg(4, 1, units::half());
        assert_eq!(c.beta(), &units::frac(1, 7));
        assert_eq!(convert_t0(&units::int(0), &c), units::int(0));
        let t = c.running_time();
        let t_c = &t / units::int(4);
        assert_eq!(convert_t0(&t_c, &c), &t * units::frac(2, 7));
        // ρ = ½ + t_c/T
        let rho = units::half() + &t_c / &t;
        assert_eq!(convert_t0_via_a1(&rho, &c), &t * units::frac(2, 7));
        assert_eq!(convert_t0_via_a1(&units::half(), &c), units::int(0));
    }

    #[test]
    fn stream_modes() {
        let c = cfg(10, 2, units::half());
        let (_, stream) = simulate(&c);
        assert!(matches!(
            read_stream(&stream, &c, ReadoutMode::Simple),
            Err(ClockError::RequiresShortDial(2))
        ));
        assert_eq!(read_stream(&stream, &c, ReadoutMode::Serial).unwrap().len(), 10);
        let unresolved = read_stream(&stream, &c, ReadoutMode::Unresolved).unwrap();
        assert!(unresolved.iter().all(|r| r.pairing.resolved_serial.is_none()));
        assert!(read_stream(&[], &c, ReadoutMode::Serial).unwrap().is_empty());
    }

    #[test]
    fn mid_stream_window() {
        let c = cfg(16, 1, units::half());
        let (_, stream) = simulate(&c);
        let truth = oracle_reading(&c);
        let window = &stream[10..];
        for r in read_stream(window, &c, ReadoutMode::Simple).unwrap() {
            assert_eq!(r.t_c, truth[&r.pairing.q2_arrival.truth_serial]);
        }
    }

    proptest! {
        #[test]
        fn readings_ignore_time_translation(n in 3u64..40, m_raw in 1u64..6, shift_num in -500i64..500, phi_num in 1i64..=4) {
            let m = 1 + (m_raw - 1) % (n - 1);
            let c = cfg(n, m, units::frac(phi_num, 4));
            let (_, stream) = simulate(&c);
            let shift = units::frac(shift_num, 7);
            let moved: Vec<ArrivalRecord> = stream
                .iter()
                .map(|r| ArrivalRecord { arrival_time: &r.arrival_time + &shift, ..r.clone() })
                .collect();
            let a = read_stream(&stream, &c, ReadoutMode::Serial).unwrap();
            let b = read_stream(&moved, &c, ReadoutMode::Serial).unwrap();
            for (x, y) in a.iter().zip(&b) {
                prop_assert_eq!(&x.t_c, &y.t_c);
            }
            let a = read_stream(&stream, &c, ReadoutMode::Unresolved).unwrap();
            let b = read_stream(&moved, &c, ReadoutMode::Unresolved).unwrap();
            for (x, y) in a.iter().zip(&b) {
                prop_assert_eq!(&x.ambiguity_set, &y.ambiguity_set);
            }
        }

        #[test]
        fn serial_readout_is_exact(n in 2u64..80, m_raw in 1u64..9, phi_num in 1i64..=4) {
            let m = 1 + (m_raw - 1) % (n - 1);
            let c = cfg(n, m, units::frac(phi_num, 4));
            let (_, stream) = simulate(&c);
            let truth = oracle_reading(&c);
            for r in read_stream(&stream, &c, ReadoutMode::Serial).unwrap() {
                let k = r.pairing.resolved_serial.unwrap();
                prop_assert_eq!(k, r.pairing.q2_arrival.truth_serial);
                prop_assert_eq!(&r.t_c, &truth[&k]);
                prop_assert!(r.in_range(&c));
            }
        }

        #[test]
        fn a1_agrees_with_beta_scaling(n in 2u64..10_000, num in -1000i64..1000, den in 1i64..1000) {
            let c = cfg(n, 1, units::half());
            let rho = units::frac(num, den);
            let t_c = clock_time_from_ratio(&rho, &c);
            prop_assert_eq!(convert_t0(&t_c, &c), convert_t0_via_a1(&rho, &c));
        }
    }
}
