//! One test per acceptance criterion. Each prints a single `criterion N:`
//! line with PASS or FAIL and the numbers behind it, then asserts.

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use cotsum::arith::{euler_phi, gcd};
use cotsum::asymptotics::{c0_asymptotic, c1_direct, c1_empirical, main_term, C1Input};
use cotsum::core_sums::{c0, CotTable, q_sum_with_table, ReducedFraction};
use cotsum::equidist::{
    kloosterman, limit_law_reference, ramanujan, ramanujan_direct, scan_with, ExpSumParams, ScanOptions,
    ScanReport, ScanWindow,
};
use cotsum::gseries::{
    f_eval_many, fourier_coeffs_f, hk_growth_check, hk_table, kronecker_points, l2_difference, GFourier,
    TruncatedGSeries,
};
use cotsum::verify::identity_residuals;

const SCAN_BS: [u64; 4] = [1009, 2003, 5003, 10007];

fn verdict(n: u32, passed: bool, detail: String) {
    println!("criterion {n}: {} {detail}", if passed { "PASS" } else { "FAIL" });
    assert!(passed, "criterion {n} failed: {detail}");
}

fn sci(xs: &[f64]) -> String {
    let parts: Vec<String> = xs.iter().map(|x| format!("{x:.3e}")).collect();
    format!("[{}]", parts.join(", "))
}

fn strictly_decreasing(xs: &[f64]) -> bool {
    xs.windows(2).all(|w| w[1] < w[0])
}

fn scan_report(b: u64, opts: &ScanOptions<'_>) -> ScanReport {
    scan_with(ScanWindow::new(b, 0.6, 0.8).unwrap(), 2, opts).unwrap().report
}

#[test]
fn criterion_1_identity_suite() {
    let start = Instant::now();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let (v, d, o) = pool.install(|| identity_residuals(500));
    let secs = start.elapsed().as_secs_f64();
    let worst = v.max(d).max(o);
    verdict(
        1,
        worst < 1e-6 && secs < 60.0,
        format!("max rel err vasyunin {v:.2e}, decomposition {d:.2e}, oddness {o:.2e}; {secs:.2} s"),
    );
}

#[test]
fn criterion_2_closed_values() {
    let half = c0(ReducedFraction::new(1, 2).unwrap()).value;
    let third = (c0(ReducedFraction::new(1, 3).unwrap()).value - 3f64.sqrt() / 9.0).abs();
    let q_zero = (2..=1000u64).all(|b| q_sum_with_table(&CotTable::new(b).unwrap(), 1).value == 0.0);
    verdict(
        2,
        half == 0.0 && third < 1e-12 && q_zero,
        format!("c0(1/2) = {half:e}, |c0(1/3) - sqrt(3)/9| = {third:.2e}, Q(1/b) = 0 for b <= 1000: {q_zero}"),
    );
}

#[test]
fn criterion_3_asymptotics() {
    let bs = [200u64, 400, 800, 1600, 3200];
    let exact: Vec<f64> = bs.iter().map(|&b| c0(ReducedFraction::new(1, b).unwrap()).value).collect();
    let scaled: Vec<f64> =
        bs.iter().zip(&exact).map(|(&b, e)| (e - main_term(b as f64)).abs() * b as f64).collect();
    let max = scaled.iter().cloned().fold(f64::MIN, f64::max);
    let min = scaled.iter().cloned().fold(f64::MAX, f64::min);
    let variation = max / min;
    let r0 = (exact[4] - c0_asymptotic(3200, 0).unwrap().0).abs();
    let r1 = (exact[4] - c0_asymptotic(3200, 1).unwrap().0).abs();
    let improvement = r0 / r1;
    verdict(
        3,
        variation < 3.0 && improvement >= 10.0,
        format!(
            "|R_0| b variation {variation:.2} over {scaled:.4?}; E_1 improvement at b = 3200 {improvement:.4}x \
             (|R_0| = {r0:.4e}, |R_1| = {r1:.4e})"
        ),
    );
}

#[test]
fn criterion_4_c1_cross_validation() {
    let start = Instant::now();
    let mut ok = true;
    let mut parts = Vec::new();
    for (r, b0) in [(2u64, 1u64), (3, 1), (3, 2)] {
        let bs: Vec<u64> = (101..=5001).filter(|&b| b % r == b0 && gcd(b, r) == 1).collect();
        let fit = c1_empirical(r, b0, &bs).unwrap();
        let direct = c1_direct(&C1Input::new(r, b0).unwrap());
        let diff = (direct - fit.slope).abs();
        ok &= diff <= fit.confidence;
        parts.push(format!("({r},{b0}) |diff| {diff:.2e} <= {:.2e}", fit.confidence));
    }
    let bs: Vec<u64> = (101..=1009).collect();
    let slope = c1_empirical(1, 0, &bs).unwrap().slope;
    ok &= slope.abs() < 1e-3;
    let secs = start.elapsed().as_secs_f64();
    ok &= secs < 300.0;
    verdict(4, ok, format!("{}; C1(1,.) slope {slope:.2e}; {secs:.2} s", parts.join(", ")));
}

#[test]
fn criterion_5_moments() {
    let h1 = hk_table(1, TruncatedGSeries::new(16).unwrap(), 1 << 15).unwrap().h(1).unwrap();
    let target = h1 * 0.2;
    let opts = ScanOptions::default();
    let reports: Vec<ScanReport> = SCAN_BS.iter().map(|&b| scan_report(b, &opts)).collect();
    let dev: Vec<f64> = reports.iter().map(|r| (r.moments_c0[1] / target - 1.0).abs()).collect();
    let m1: Vec<f64> = reports.iter().map(|r| r.moments_c0[0].abs()).collect();
    let m3: Vec<f64> = reports.iter().map(|r| r.moments_c0[2].abs()).collect();
    let second_ok = dev[3] < 0.15 && dev[3] < dev[0];
    let odd_ok = strictly_decreasing(&m1) && strictly_decreasing(&m3);
    verdict(
        5,
        second_ok && odd_ok,
        format!(
            "2nd moment deviation from H_1*0.2 = {target:.6}: {dev:.4?} (ok: {second_ok}); \
             |M1| {}, |M3| {} (monotone: {odd_ok})",
            sci(&m1),
            sci(&m3)
        ),
    );
}

#[test]
fn criterion_6_equidistribution() {
    let reference = limit_law_reference(TruncatedGSeries::new(14).unwrap(), 100_000).unwrap();
    let opts = ScanOptions { reference: Some(&reference), ..Default::default() };
    let ks: Vec<f64> = SCAN_BS.iter().map(|&b| scan_report(b, &opts).ks_distance.unwrap()).collect();
    verdict(6, strictly_decreasing(&ks) && ks[3] < 0.05, format!("KS {ks:.4?}"));
}

#[test]
fn criterion_7_g_machinery() {
    let xs = kronecker_points(10_000);
    let l2 = l2_difference(&xs, TruncatedGSeries::new(20).unwrap(), &GFourier::new(1 << 20).unwrap());

    let t6 = TruncatedGSeries::new(6).unwrap();
    let n = 100_000;
    let nodes: Vec<f64> = (0..n).map(|i| (i as f64 + 0.5) / n as f64).collect();
    let quad = f_eval_many(&nodes, t6).iter().map(|v| v * v).sum::<f64>() / n as f64;
    let parseval = fourier_coeffs_f(t6, 2_000_000).unwrap().parseval_sum();
    let parseval_rel = (parseval / quad - 1.0).abs();

    let tab = hk_table(6, TruncatedGSeries::new(16).unwrap(), 1 << 15).unwrap();
    let h0 = tab.h(0).unwrap();
    let growth = hk_growth_check(&tab).unwrap();
    verdict(
        7,
        l2 < 0.01 && parseval_rel < 1e-3 && h0 == 1.0 && growth.strictly_increasing,
        format!(
            "L2 {l2:.5}; Parseval rel {parseval_rel:.2e}; H_0 = {h0}; H_k^(1/k) {:.4?}",
            growth.roots
        ),
    );
}

#[test]
fn criterion_8_exponential_sums() {
    let mut ramanujan_ok = true;
    for q in 1..=100u64 {
        for n in -100..=100i64 {
            let direct = ramanujan_direct(q, n);
            let exact = ramanujan(q, n).unwrap();
            ramanujan_ok &= (direct.re - exact as f64).abs() < 1e-9 && direct.im.abs() < 1e-9;
        }
    }
    let mut weil = 0.0f64;
    for p in (2..=101u64).filter(|&p| euler_phi(p).unwrap() == p - 1) {
        let k = kloosterman(ExpSumParams { n: 1, m: 1, b: p }).unwrap();
        weil = weil.max(k.norm() / (2.0 * (p as f64).sqrt()));
    }
    let phi_ok = (2..=200u64)
        .all(|b| kloosterman(ExpSumParams { n: 0, m: 0, b }).unwrap().re == euler_phi(b).unwrap() as f64);
    verdict(
        8,
        ramanujan_ok && weil <= 1.0 && phi_ok,
        format!("ramanujan exact: {ramanujan_ok}; max |K(1,1,p)|/(2 sqrt p) {weil:.4}; K(0,0,b) = phi(b): {phi_ok}"),
    );
}

fn run_scan(bin: &str, dir: &Path) -> Vec<Vec<u8>> {
    let status = Command::new(bin)
        .args(["scan", "--b", "10007", "--a0", "0.6", "--a1", "0.8", "--kmax", "3", "--ks", "--deterministic"])
        .arg("--out")
        .arg(dir)
        .output()
        .unwrap();
    assert!(status.status.success(), "{}", String::from_utf8_lossy(&status.stderr));
    ["scan_b10007.csv", "scan_b10007.report.json"].iter().map(|f| std::fs::read(dir.join(f)).unwrap()).collect()
}

#[test]
fn criterion_9_determinism_and_verify_all() {
    let bin = env!("CARGO_BIN_EXE_cotsum");
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let identical = run_scan(bin, a.path()) == run_scan(bin, b.path());

    let start = Instant::now();
    let verify = Command::new(bin).args(["verify", "--suite", "all"]).output().unwrap();
    let elapsed = start.elapsed();
    let stdout = String::from_utf8_lossy(&verify.stdout);
    let failed: Vec<&str> = stdout.lines().filter(|l| l.contains("[FAIL]")).collect();
    let code = verify.status.code();
    verdict(
        9,
        identical && code == Some(0) && elapsed < Duration::from_secs(900),
        format!(
            "scan reruns byte-identical: {identical}; verify --suite all exit {code:?} in {:.1} s; failing checks {failed:?}",
            elapsed.as_secs_f64()
        ),
    );
}
