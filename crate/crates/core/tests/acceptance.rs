//! Acceptance criteria, one test each. Every test prints a single
//! `[PASS]` / `[FAIL]` line (bypassing output capture) before asserting.

use std::io::Write;
use std::process::Command;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use residue_core::artin_euler::{
    envelope_products, euler_gamma, factor_bounds, l_rho_factor_on_degrees, l_rho_local_factor,
    log_sum_l1, mertens_product, orthogonality_check, power_sum_identity, truncated_product_l1,
    TruncationHeight,
};
use residue_core::family_stats::{
    chebotarev_densities, composition_sweep, empirical_moments, moment_bound_rhs, scan_residues,
    MomentSource, MomentStatus,
};
use residue_core::field_catalog::{
    enumerate_cubics, filter_by_conditions, GroupTag, LocalCondition, LocalConditionSet,
    NumberFieldRecord,
};
use residue_core::prime_poly::{partitions, primes_below, primes_between, primes_up_to, CycleType};
use residue_core::quadratic_oracle::{
    class_number_by_character_sum, class_number_imaginary, compare_truncation_with_primes,
    fundamental_range,
};
use residue_core::random_model::{l1_of_sample, ChebotarevDistribution, Deformation, ModelSample};

fn report(id: u32, pass: bool, detail: &str) {
    let line = format!(
        "[{}] criterion {id:>2}: {detail}\n",
        if pass { "PASS" } else { "FAIL" }
    );
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(line.as_bytes());
    let _ = out.flush();
}

fn finish(id: u32, pass: bool, detail: String) {
    report(id, pass, &detail);
    assert!(pass, "criterion {id}: {detail}");
}

fn cubics_150() -> &'static [NumberFieldRecord] {
    static CAT: OnceLock<Vec<NumberFieldRecord>> = OnceLock::new();
    CAT.get_or_init(|| enumerate_cubics(150).expect("enumeration"))
}

fn within_time(start: Instant, limit: Duration) -> (bool, f64) {
    let t = start.elapsed();
    (t <= limit, t.as_secs_f64())
}

#[test]
fn c01_euler_factor_identity() {
    let start = Instant::now();
    let mut checked = 0;
    let mut bad = Vec::new();
    for n in 3..=5u32 {
        for c in partitions(n).unwrap() {
            for p in primes_up_to(97.0) {
                let chk = power_sum_identity(c.parts(), p, 30).unwrap();
                checked += 1;
                if !chk.within {
                    bad.push(format!("{c}@{p}"));
                }
            }
        }
    }
    let (fast, secs) = within_time(start, Duration::from_secs(5));
    finish(
        1,
        bad.is_empty() && fast,
        format!(
            "{checked} (class, p) pairs within p^-30, {} violations, {secs:.2}s (limit 5s)",
            bad.len()
        ),
    );
}

#[test]
fn c02_sandwich() {
    let start = Instant::now();
    let mut violations = 0;
    let mut checked = 0;
    for n in 3..=5u32 {
        let classes = partitions(n).unwrap();
        for p in primes_up_to(1e4) {
            let (lo, hi) = factor_bounds(p, n - 1).unwrap();
            for c in &classes {
                let v = l_rho_local_factor(c, p).unwrap().value;
                checked += 1;
                if v < lo || v > hi {
                    violations += 1;
                }
            }
        }
    }
    let (fast, secs) = within_time(start, Duration::from_secs(30));
    finish(
        2,
        violations == 0 && fast,
        format!("{checked} exact comparisons, {violations} violations, {secs:.2}s (limit 30s)"),
    );
}

#[test]
fn c03_orthogonality() {
    let vals: Vec<i64> = (3..=5).map(|n| orthogonality_check(n).unwrap()).collect();
    finish(
        3,
        vals.iter().all(|&v| v == 0),
        format!("orthogonality sums for n = 3, 4, 5: {vals:?}"),
    );
}

#[test]
fn c04_quadratic_oracle() {
    let start = Instant::now();
    let x = 1e5;
    let primes = primes_below(x);
    let ds = fundamental_range(-5000);
    let mut mismatches = 0;
    let mut over = 0;
    let mut errs = Vec::with_capacity(ds.len());
    for &d in &ds {
        let h1 = class_number_imaginary(d).unwrap().h;
        let h2 = class_number_by_character_sum(d).unwrap();
        if h1 != h2 {
            mismatches += 1;
        }
        let c = compare_truncation_with_primes(d, x, &primes).unwrap();
        if c.relative_error > 0.05 {
            over += 1;
        }
        errs.push(c.relative_error);
    }
    errs.sort_by(f64::total_cmp);
    let median = if errs.len() % 2 == 1 {
        errs[errs.len() / 2]
    } else {
        0.5 * (errs[errs.len() / 2 - 1] + errs[errs.len() / 2])
    };
    let worst = errs.last().copied().unwrap_or(0.0);
    let (fast, secs) = within_time(start, Duration::from_secs(120));
    finish(
        4,
        mismatches == 0 && over == 0 && median <= 0.01 && fast,
        format!(
            "{} fundamental D, {mismatches} class-number mismatches, {over} above 5%, max {worst:.4}, median {median:.5}, {secs:.1}s (limit 120s)",
            ds.len()
        ),
    );
}

#[test]
fn c05_tail_budget() {
    let fields: Vec<&NumberFieldRecord> = cubics_150()
        .iter()
        .filter(|r| r.group_tag == GroupTag::SnHeuristic)
        .take(50)
        .collect();
    let mut violations = 0;
    let mut worst_ratio: f64 = 0.0;
    for x in [1e3, 1e4] {
        for f in &fields {
            let a = truncated_product_l1(f, x).unwrap();
            let b = log_sum_l1(f, x).unwrap();
            let budget = 2.0 * f.d() as f64 / x.ln();
            let gap = (a.log_value - b.log_value).abs();
            worst_ratio = worst_ratio.max(gap / budget);
            if gap > budget {
                violations += 1;
            }
        }
    }
    finish(
        5,
        fields.len() == 50 && violations == 0,
        format!(
            "{} fields x 2 heights, {violations} violations, max gap/budget {worst_ratio:.3e}",
            fields.len()
        ),
    );
}

#[test]
fn c06_mertens() {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    let mut ok = true;
    let mut parts = Vec::new();
    for y in [1e3, 1e4, 1e5, 1e6] {
        let ratio = mertens_product(y).unwrap() / (euler_gamma().exp() * y.ln());
        let dev = (ratio - 1.0).abs();
        ok &= dev <= 1.5 / y.ln();
        worst = worst.max(dev * y.ln());
        parts.push(format!("{ratio:.6}"));
    }
    let (fast, secs) = within_time(start, Duration::from_secs(60));
    finish(
        6,
        ok && fast,
        format!(
            "ratios {} ; max |ratio-1| log y = {worst:.4} (limit 1.5), {secs:.2}s",
            parts.join(", ")
        ),
    );
}

#[test]
fn c07_combinatorial_sweeps() {
    let start = Instant::now();
    let mut ok = true;
    let mut summary = Vec::new();
    for y in [1e3, 1e4] {
        let s = composition_sweep(16, y).unwrap();
        ok &= s.all_pass() && s.total == 43690 && s.rows.iter().all(|r| r.compositions <= 32768);
        summary.push(format!("y={y}: {}/{} pass", s.passed, s.total));
    }
    let (fast, secs) = within_time(start, Duration::from_secs(10));
    finish(
        7,
        ok && fast,
        format!("{} , {secs:.2}s (limit 10s)", summary.join("; ")),
    );
}

#[test]
fn c08_model_moment_bound() {
    let start = Instant::now();
    let (y, x, samples) = (1e3, 1e6, 100_000usize);
    let mut ok = true;
    let mut lines = Vec::new();
    for n in 3..=5u32 {
        let dist = ChebotarevDistribution::new(n, Deformation::None).unwrap();
        let reps = empirical_moments(
            MomentSource::Model {
                dist: &dist,
                samples,
                seed: 0x00ac_ce97,
            },
            y,
            x,
            &[1, 2, 3],
        )
        .unwrap();
        for m in &reps {
            let bound = moment_bound_rhs(n - 1, m.r, y).unwrap();
            ok &= m.status == MomentStatus::Pass && m.statistic <= bound;
            lines.push(format!(
                "n={n} r={} stat/bound={:.3e}",
                m.r,
                m.statistic / bound
            ));
        }
        if n == 3 {
            let m = &reps[0];
            let diagonal: f64 = primes_between(y, x)
                .iter()
                .map(|&p| 1.0 / (p as f64 * p as f64))
                .sum();
            let dev = (m.statistic - diagonal).abs();
            let within = dev <= 10.0 * m.std_error;
            ok &= within;
            lines.push(format!(
                "diag |{:.4e} - {diagonal:.4e}| = {:.1} SE",
                m.statistic,
                dev / m.std_error
            ));
        }
    }
    let (fast, secs) = within_time(start, Duration::from_secs(300));
    finish(
        8,
        ok && fast,
        format!("{} ; {secs:.1}s (limit 300s)", lines.join("; ")),
    );
}

#[test]
fn c09_chebotarev_on_family() {
    let s3: Vec<NumberFieldRecord> = cubics_150()
        .iter()
        .filter(|r| r.group_tag == GroupTag::SnHeuristic)
        .cloned()
        .collect();
    let mut ok = true;
    let mut lines = Vec::new();
    for p in [5u64, 7, 11] {
        let rep = chebotarev_densities(&s3, p, 4.0).unwrap();
        ok &= rep.pass;
        let cells: Vec<String> = rep
            .classes
            .iter()
            .map(|c| {
                format!(
                    "{}={:.4}(exp {:.4}, z {:+.1})",
                    c.class, c.frequency, c.expected, c.z
                )
            })
            .collect();
        lines.push(format!("p={p} N={}: {}", rep.unramified, cells.join(" ")));
    }
    finish(
        9,
        ok,
        format!("{} S3 fields; {}", s3.len(), lines.join("; ")),
    );
}

fn exact_envelope(d: u32, x: f64, full_cycle: bool) -> f64 {
    let mut acc = BigRational::one();
    for p in primes_below(x) {
        let degrees: Vec<u32> = if full_cycle {
            vec![d + 1]
        } else {
            vec![1; d as usize + 1]
        };
        acc *= l_rho_factor_on_degrees(&degrees, p).unwrap();
    }
    acc.to_f64().unwrap()
}

#[test]
fn c10_directional_extremes() {
    let cat = cubics_150();
    let split =
        LocalConditionSet::uniform(13, LocalCondition::IfUnramified(CycleType::identity(3)))
            .unwrap();
    let inert =
        LocalConditionSet::uniform(13, LocalCondition::IfUnramified(CycleType::full_cycle(3)))
            .unwrap();
    let a = filter_by_conditions(cat, &split, None).unwrap();
    let b = filter_by_conditions(cat, &inert, None).unwrap();
    let mut ok = !a.is_empty() && !b.is_empty();
    let mut detail = format!(
        "identity subfamily {} fields, 3-cycle subfamily {} fields",
        a.len(),
        b.len()
    );
    if ok {
        let ma = scan_residues(&a, TruncationHeight::Auto)
            .unwrap()
            .mean_estimate;
        let mb = scan_residues(&b, TruncationHeight::Auto)
            .unwrap()
            .mean_estimate;
        ok &= ma > mb;
        detail.push_str(&format!("; mean L(1) {ma:.4} vs {mb:.4}"));
    }
    let x = 1e3;
    let mut worst: f64 = 0.0;
    for n in 3..=5u32 {
        let d = n - 1;
        let top = l1_of_sample(&ModelSample::forced(&CycleType::identity(n), x), x)
            .unwrap()
            .value;
        let bottom = l1_of_sample(&ModelSample::forced(&CycleType::full_cycle(n), x), x)
            .unwrap()
            .value;
        let (lo, hi) = envelope_products(d, x);
        for (got, want) in [
            (top, exact_envelope(d, x, false)),
            (bottom, exact_envelope(d, x, true)),
            (hi, top),
            (lo, bottom),
        ] {
            worst = worst.max((got / want - 1.0).abs());
        }
    }
    ok &= worst <= 1e-13;
    detail.push_str(&format!(
        "; forced envelopes vs exact products max rel dev {worst:.1e}"
    ));
    finish(10, ok, detail);
}

fn cli(workers: &str, args: &[&str]) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_residue"))
        .args(args)
        .env("RESIDUE_WORKERS", workers)
        .output()
        .expect("run residue");
    (out.status.code().unwrap_or(-1), out.stdout)
}

#[test]
fn c11_reproducible_across_workers() {
    let runs: &[&[&str]] = &[
        &["estimate", "--poly", "-1,-1,0,1", "--x", "1e4"],
        &["scan", "--height", "25", "--x", "auto"],
        &["scan", "--height", "25", "--x", "2000", "--format", "csv"],
        &["enumerate", "--height", "30"],
        &["chebotarev", "--height", "40", "--p", "5,7", "--sn-only"],
        &[
            "moments",
            "--n",
            "4",
            "--y",
            "100",
            "--x",
            "1e5",
            "--r",
            "1,2",
            "--samples",
            "3000",
        ],
        &[
            "moments", "--source", "catalog", "--height", "20", "--y", "10", "--x", "1000",
        ],
        &["model", "--n", "5", "--x", "1e5", "--f", "1/p"],
        &["oracle", "--dmin", "-600", "--x", "1e4"],
        &["check-inequalities", "--max2r", "12", "--y", "1000"],
        &["constants", "--y", "1000,100000"],
    ];
    let mut differing = Vec::new();
    for args in runs {
        let one = cli("1", args);
        let eight = cli("8", args);
        if one != eight || one.1.is_empty() {
            differing.push(args.join(" "));
        }
    }
    finish(
        11,
        differing.is_empty(),
        format!(
            "{} CLI runs compared at 1 and 8 workers, differing: {differing:?}",
            runs.len()
        ),
    );
}
