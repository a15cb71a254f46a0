//! One test per acceptance criterion. Each prints a single
//! `criterion NN PASS|FAIL ...` line straight to stderr (visible without
//! `--nocapture`) and then asserts. Criteria run one at a time so that
//! runtime limits are measured without contention.

use std::collections::{BTreeSet, HashMap};
use std::io::Write;
use std::sync::Mutex;
use std::time::{Duration, Instant};

use morsekit::arith::{moebius_sieve, odd_chain, ratio, ExactRational};
use morsekit::experiments::{counterexample_chain, row_decomposition, tm_orthogonality, CylinderFunction};
use morsekit::sequences::{
    build_counterexample, kakutani_spec_from_e, morse_prefix, thue_morse_bit, thue_toeplitz_partial, BitSequence,
    DigitSet, DivisibilityChain, MorseSpec, SESequence, ThueToeplitz,
};
use morsekit::spectral::{
    disjointness_witness, sigma_hat, sigma_hat_closed, tm_correlation, valuation_report, SigmaCache,
    DEFAULT_WITNESS_BOUND,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

static SERIAL: Mutex<()> = Mutex::new(());

const TM_DEVIATION_THRESHOLD: f64 = 2.04e-5;
const COUNTEREXAMPLE_SLACK: f64 = 0.02;
const ORTHOGONALITY_CEILING: f64 = 0.05;
const ORTHOGONALITY_DECADE_FACTOR: f64 = 1.5;

fn run(id: u32, limit: Option<Duration>, body: impl FnOnce() -> (bool, String)) {
    let _guard = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let start = Instant::now();
    let (ok, detail) = body();
    let elapsed = start.elapsed();
    let in_time = limit.is_none_or(|l| elapsed <= l);
    let pass = ok && in_time;
    let limit_text = limit.map_or(String::new(), |l| format!(" (limit {:.0}s)", l.as_secs_f64()));
    let line = format!(
        "criterion {id:02} {} {detail}; {:.2}s{limit_text}\n",
        if pass { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64()
    );
    let _ = std::io::stderr().write_all(line.as_bytes());
    assert!(pass, "{}", line.trim_end());
}

fn secs(s: u64) -> Option<Duration> {
    Some(Duration::from_secs(s))
}

#[test]
fn criterion_01_value_table() {
    run(1, secs(1), || {
        let published = [
            (0, ratio(1, 1)),
            (1, ratio(-1, 3)),
            (3, ratio(-1, 3)),
            (5, ratio(0, 1)),
            (7, ratio(0, 1)),
            (9, ratio(-1, 6)),
            (11, ratio(-1, 6)),
            (13, ratio(-1, 6)),
            (15, ratio(1, 6)),
            (17, ratio(1, 12)),
            (31, ratio(1, 12)),
            (19, ratio(-1, 12)),
            (23, ratio(-1, 12)),
            (29, ratio(-1, 12)),
            (37, ratio(-1, 24)),
            (41, ratio(-1, 24)),
            (59, ratio(-1, 24)),
            (43, ratio(1, 24)),
            (53, ratio(1, 24)),
            (47, ratio(-1, 8)),
            (61, ratio(-1, 8)),
        ];
        let mut cache = SigmaCache::new();
        let mismatches: Vec<String> = published
            .iter()
            .filter_map(|(k, v)| {
                let got = sigma_hat(*k, &mut cache);
                (got != *v).then(|| format!("σ̂({k}) = {got}, table {v}"))
            })
            .collect();
        (
            mismatches.is_empty(),
            format!("{}/{} table values reproduced; mismatches: [{}]", published.len() - mismatches.len(), published.len(), mismatches.join("; ")),
        )
    });
}

#[test]
fn criterion_02_valuation_lemma_exhaustive() {
    run(2, secs(10), || {
        let mut cache = SigmaCache::new();
        let mut failures = Vec::new();
        let mut zeros_from_nine = Vec::new();
        for k in (1..=1u64 << 17).step_by(2) {
            let r = valuation_report(k, &mut cache).unwrap();
            if !r.lemma_holds {
                failures.push(k);
            }
            if k >= 9 && r.is_zero {
                zeros_from_nine.push(k);
            }
        }
        (
            failures.is_empty() && zeros_from_nine.is_empty(),
            format!(
                "odd K <= 2^17: lemma fails at {failures:?}; zeros at K >= 9: {}",
                zeros_from_nine.len()
            ),
        )
    });
}

#[test]
fn criterion_03_closed_form_dual_path() {
    run(3, secs(10), || {
        let mut cache = SigmaCache::new();
        let mut bad = 0;
        for n in 1..=1000u64 {
            for a in 1..=20u32 {
                if sigma_hat_closed(n, a, &mut cache).unwrap() != sigma_hat((n << a) + 1, &mut cache) {
                    bad += 1;
                }
            }
        }
        (bad == 0, format!("20000 pairs (n <= 1000, a <= 20), {bad} disagreements"))
    });
}

#[test]
fn criterion_04_equal_coefficients_share_length() {
    run(4, secs(30), || {
        let mut cache = SigmaCache::new();
        let mut lengths: HashMap<ExactRational, BTreeSet<u32>> = HashMap::new();
        for k in (9..=1u64 << 12).step_by(2) {
            lengths.entry(sigma_hat(k, &mut cache)).or_default().insert(63 - k.leading_zeros());
        }
        let clashes = lengths.values().filter(|s| s.len() > 1).count();
        (clashes == 0, format!("{} distinct values over odd K in [9, 2^12], {clashes} span two lengths", lengths.len()))
    });
}

#[test]
fn criterion_05_chain_length_is_log() {
    run(5, secs(5), || {
        let bad = (1..=1u64 << 20)
            .step_by(2)
            .filter(|&k| odd_chain(k).unwrap().l != 63 - k.leading_zeros())
            .count();
        (bad == 0, format!("odd K <= 2^20, {bad} mismatches"))
    });
}

#[test]
fn criterion_06_disjointness_witnesses() {
    run(6, secs(30), || {
        let mut cache = SigmaCache::new();
        let mut fresh = SigmaCache::new();
        let mut failures = Vec::new();
        let mut max_t = 0;
        for r in (1..=99u64).step_by(2) {
            for s in (r + 2..=99).step_by(2) {
                match disjointness_witness(r, s, DEFAULT_WITNESS_BOUND, &mut cache) {
                    Ok(w) => {
                        let c1 = sigma_hat(w.t * r, &mut fresh);
                        let c2 = sigma_hat(w.t * s, &mut fresh);
                        if c1 != w.c1 || c2 != w.c2 || c1.abs() == c2.abs() {
                            failures.push((r, s));
                        }
                        max_t = max_t.max(w.t);
                    }
                    Err(_) => failures.push((r, s)),
                }
            }
        }
        (failures.is_empty(), format!("1225 odd pairs, largest witness t = {max_t}, failures {failures:?}"))
    });
}

#[test]
fn criterion_07_empirical_matches_exact() {
    run(7, None, || {
        let mut cache = SigmaCache::new();
        let n = 1u64 << 22;
        let (worst, at) = (0..=64u64)
            .map(|k| (tm_correlation(k, n, &mut cache).unwrap().deviation.unwrap(), k))
            .fold((0.0, 0), |a, b| if b.0 > a.0 { b } else { a });
        (
            worst < TM_DEVIATION_THRESHOLD,
            format!("N = 2^22, max deviation over k <= 64 is {worst:.4e} at k = {at} (threshold {TM_DEVIATION_THRESHOLD:e})"),
        )
    });
}

#[test]
fn criterion_08_strong_multiplicativity_and_recurrences() {
    run(8, None, || {
        let tm = MorseSpec::thue_morse();
        let seq = tm.sequence();
        let m = |n: u64| seq.sign(n).unwrap() as i32;
        let mut checks = 0u64;
        let mut bad = 0u64;
        for a in 0..=1u64 << 10 {
            for e in 0..=10u32 {
                for b in 0..1u64 << e {
                    checks += 1;
                    if m((a << e) + b) != m(a) * m(b) {
                        bad += 1;
                    }
                }
            }
        }
        for n in 0..=100_000u64 {
            checks += 3;
            bad += (m(2 * n) != m(n)) as u64 + (m(2 * n + 1) != -m(n)) as u64;
            bad += (seq.bit(n) != Some(thue_morse_bit(n))) as u64;
        }
        (bad == 0, format!("{checks} identities checked, {bad} violations"))
    });
}

#[test]
fn criterion_09_thue_toeplitz_structure() {
    run(9, None, || {
        let horizon = 100_000u64;
        let built = thue_toeplitz_partial(17, horizon + 1).unwrap();
        let mut bad = 0u64;
        for i in 0..=horizon {
            let z = thue_morse_bit(i) ^ thue_morse_bit(i + 1);
            if built.get(i) != Some(z) || ThueToeplitz.bit(i) != Some(z) {
                bad += 1;
            }
        }
        for n in 1..=12u32 {
            let skel = ThueToeplitz.toeplitz_skeleton(n).unwrap();
            let p = 1u64 << n;
            let block = skel.leading_block();
            if block.len() as u64 != p - 1 || skel.hole_residues != vec![p - 1] {
                bad += 1;
            }
            let stage = thue_toeplitz_partial(n, horizon + 1).unwrap();
            for i in 0..=horizon {
                let expected = if i % p == p - 1 { None } else { Some(block.bits()[(i % p) as usize]) };
                if stage.get(i) != expected {
                    bad += 1;
                }
            }
        }
        (bad == 0, format!("z = x XOR shifted x on [0, 10^5] and B_n ? pattern for n <= 12, {bad} violations"))
    });
}

#[test]
fn criterion_10_counterexample_chain() {
    run(10, secs(60), || {
        let n = 1_000_000u64;
        let mu = moebius_sieve(n).unwrap();
        let chain = DivisibilityChain::powers(5).unwrap();
        let cs = build_counterexample(&chain, n, &mu).unwrap();
        let report = counterexample_chain(&cs, &mu, &[n]).unwrap();
        let average = report.checkpoints[0].average.to_f64();
        let floor = 6.0 / std::f64::consts::PI.powi(2) - 0.5;
        let ok = report.rho == ratio(1, 4) && report.all_ok() && average >= floor - COUNTEREXAMPLE_SLACK;
        (
            ok,
            format!(
                "every N <= 10^6: bound failure {:?}, non-initial failure {:?}; average {average:.6} vs floor {floor:.6} - {COUNTEREXAMPLE_SLACK}",
                report.first_bound_failure, report.first_non_initial_failure
            ),
        )
    });
}

#[test]
fn criterion_11_orthogonality_trend() {
    run(11, None, || {
        let mu = moebius_sieve(1_000_000).unwrap();
        let values: Vec<f64> = [10_000u64, 100_000, 1_000_000]
            .iter()
            .map(|&n| tm_orthogonality(n, &mu).unwrap().to_f64().abs())
            .collect();
        // Envelope reading: each decade stays within the factor of the
        // running maximum of the earlier ones.
        let mut envelope = values[0];
        let mut trend = true;
        for &v in &values[1..] {
            trend &= v <= ORTHOGONALITY_DECADE_FACTOR * envelope;
            envelope = envelope.max(v);
        }
        let last = values[2];
        (
            trend && last < ORTHOGONALITY_CEILING,
            format!("|S_N| at 10^4, 10^5, 10^6 = {:.3e}, {:.3e}, {:.3e}", values[0], values[1], values[2]),
        )
    });
}

#[test]
fn criterion_12_row_decomposition() {
    run(12, secs(30), || {
        let n = 100_000u64;
        let mu = moebius_sieve(n).unwrap();
        let mut rng = StdRng::seed_from_u64(0x5eed);
        let functions: Vec<CylinderFunction<ExactRational>> = (0..20)
            .map(|_| {
                let len = rng.gen_range(1..=6u32);
                let table = (0..1usize << len).map(|_| ratio(rng.gen_range(-9..=9), rng.gen_range(1..=6))).collect();
                CylinderFunction::new(rng.gen_range(-1..=3), len, table).unwrap()
            })
            .collect();
        let mut bad = Vec::new();
        for stage in 1..=8u32 {
            for (i, f) in functions.iter().enumerate() {
                let d = row_decomposition(f, &ThueToeplitz, stage, &mu, n).unwrap();
                let enough_free = d.hole_free_rows + f.length() as u64 >= 1 << stage;
                if !(d.regrouping_exact && d.boundary_bound_holds && d.row_bound_holds && enough_free && d.hole_free_rows_constant) {
                    bad.push((stage, i));
                }
            }
        }
        (bad.is_empty(), format!("stages 1..=8 x 20 functions at N = 10^5, failures {bad:?}"))
    });
}

#[test]
fn criterion_13_kakutani_correspondence() {
    run(13, None, || {
        let mut bad = 0u64;
        for mask in 0u32..1 << 16 {
            let e = DigitSet::finite((1..=16).filter(|i| mask >> (i - 1) & 1 == 1)).unwrap();
            let spec = kakutani_spec_from_e(&e, 16).unwrap();
            let prefix = morse_prefix(&spec, 16).unwrap();
            let s_e = SESequence::new(&e);
            bad += prefix.bits().iter().enumerate().filter(|&(n, &b)| s_e.bit(n as u64) != Some(b)).count() as u64;
        }
        (bad == 0, format!("all E within [1, 16], n < 2^16, {bad} mismatches"))
    });
}
