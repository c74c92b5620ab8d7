//! Scans of `c0(r/b)` over `r` coprime to `b` in a window `[A0 b, A1 b]`,
//! and the exponential sums that control the inverse map `r ↦ b*/r`.

use std::f64::consts::PI;
use std::time::Instant;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{gcd, mobius};
use crate::core_sums::{c0_with_table, mod_inverse, q_sum_with_table, CotTable};
use crate::error::{domain, Result};
use crate::gseries::{empirical_f, f_eval, EmpiricalCdf, TruncatedGSeries};
use crate::summation::NeumaierSum;

pub use crate::arith::euler_phi;

/// Numerators `r` with `A0 b <= r <= A1 b`, `1/2 < A0 < A1 < 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanWindow {
    pub b: u64,
    pub a0: f64,
    pub a1: f64,
}

impl ScanWindow {
    pub fn new(b: u64, a0: f64, a1: f64) -> Result<Self> {
        if b < 2 {
            return domain(format!("window needs b >= 2, got {b}"));
        }
        if !(0.5 < a0 && a0 < a1 && a1 < 1.0) {
            return domain(format!("window needs 1/2 < A0 < A1 < 1, got ({a0}, {a1})"));
        }
        let w = ScanWindow { b, a0, a1 };
        let (lo, hi) = w.bounds();
        if hi < lo {
            return domain(format!("window [{a0}, {a1}] contains no integer multiple for b = {b}"));
        }
        Ok(w)
    }

    /// `(⌈A0 b⌉, ⌊A1 b⌋)`.
    pub fn bounds(&self) -> (u64, u64) {
        let bf = self.b as f64;
        ((self.a0 * bf).ceil() as u64, (self.a1 * bf).floor() as u64)
    }

    /// Coprime numerators in increasing order.
    pub fn numerators(&self) -> Vec<u64> {
        let (lo, hi) = self.bounds();
        (lo..=hi).filter(|&r| gcd(r, self.b) == 1).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanPoint {
    pub r: u64,
    pub c0: f64,
    pub q: f64,
}

/// Schema of the serialized scan report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanReport {
    pub b: u64,
    pub a0: f64,
    pub a1: f64,
    pub phi: u64,
    pub count: u64,
    /// `Σ c0^k / (b^k φ(b))` for `k = 1..=2 k_max`.
    pub moments_c0: Vec<f64>,
    /// `Σ Q^k / (b^{2k} φ(b))` for `k = 1..=2 k_max`.
    pub moments_q: Vec<f64>,
    pub ks_distance: Option<f64>,
    pub wall_ms: f64,
}

/// A report together with the per-`r` values and the CDF of `c0(r/b)/b`.
#[derive(Debug, Clone)]
pub struct Scan {
    pub report: ScanReport,
    pub points: Vec<ScanPoint>,
    pub cdf: EmpiricalCdf,
}

/// Merge order for the moment sums.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Reduction {
    /// Fixed chunks merged in index order; bit-identical for any thread count.
    #[default]
    Deterministic,
    /// Work-stealing reduction; the last bits may vary between runs.
    Unordered,
}

#[derive(Debug, Clone, Default)]
pub struct ScanOptions<'a> {
    pub reduction: Reduction,
    /// Law to compare `c0(r/b)/b` against.
    pub reference: Option<&'a EmpiricalCdf>,
    /// Report `wall_ms = 0` so that reruns serialize identically.
    pub zero_wall_clock: bool,
}

const CHUNK: usize = 1024;

/// Per-`r` values `c0(r/b)` and `Q(r/b)` sharing one cotangent table.
pub fn scan_points(b: u64, numerators: &[u64]) -> Result<Vec<ScanPoint>> {
    let table = CotTable::new(b)?;
    Ok(numerators
        .par_iter()
        .map(|&r| ScanPoint {
            r,
            c0: c0_with_table(&table, r).value,
            q: q_sum_with_table(&table, r).value,
        })
        .collect())
}

/// `(r, c0(r/b))` for every `r` in `1..b` coprime to `b`.
pub fn figure_points(b: u64) -> Result<Vec<ScanPoint>> {
    let rs: Vec<u64> = (1..b).filter(|&r| gcd(r, b) == 1).collect();
    scan_points(b, &rs)
}

#[derive(Clone)]
struct PowerSums {
    c0: Vec<NeumaierSum>,
    q: Vec<NeumaierSum>,
}

impl PowerSums {
    fn new(kk: usize) -> Self {
        PowerSums { c0: vec![NeumaierSum::new(); kk], q: vec![NeumaierSum::new(); kk] }
    }

    fn add(&mut self, x: f64, y: f64) {
        let (mut px, mut py) = (1.0, 1.0);
        for (a, c) in self.c0.iter_mut().zip(self.q.iter_mut()) {
            px *= x;
            py *= y;
            a.add(px);
            c.add(py);
        }
    }

    fn merge(mut self, other: &PowerSums) -> Self {
        for (a, o) in self.c0.iter_mut().zip(&other.c0) {
            a.merge(o);
        }
        for (a, o) in self.q.iter_mut().zip(&other.q) {
            a.merge(o);
        }
        self
    }
}

pub fn scan(window: ScanWindow, k_max: u32) -> Result<Scan> {
    scan_with(window, k_max, &ScanOptions::default())
}

pub fn scan_with(window: ScanWindow, k_max: u32, opts: &ScanOptions<'_>) -> Result<Scan> {
    if k_max < 1 {
        return domain("scan needs k_max >= 1");
    }
    let start = Instant::now();
    let b = window.b;
    let numerators = window.numerators();
    if numerators.is_empty() {
        return domain(format!("no numerator coprime to {b} in the window"));
    }
    let points = scan_points(b, &numerators)?;
    let (mut report, cdf) = summarize(b, (window.a0, window.a1), &points, k_max, opts)?;
    if !opts.zero_wall_clock {
        report.wall_ms = start.elapsed().as_secs_f64() * 1e3;
    }
    Ok(Scan { report, points, cdf })
}

/// Moments, CDF and report for an arbitrary set of points with denominator
/// `b`. `range` is recorded in the report as `(a0, a1)`; `wall_ms` is left
/// at zero for the caller to fill in.
pub fn summarize(
    b: u64,
    range: (f64, f64),
    points: &[ScanPoint],
    k_max: u32,
    opts: &ScanOptions<'_>,
) -> Result<(ScanReport, EmpiricalCdf)> {
    if k_max < 1 {
        return domain("scan needs k_max >= 1");
    }
    let bf = b as f64;
    let b2 = bf * bf;
    let kk = 2 * k_max as usize;
    let chunk_sums = |chunk: &[ScanPoint]| {
        let mut s = PowerSums::new(kk);
        for p in chunk {
            s.add(p.c0 / bf, p.q / b2);
        }
        s
    };
    let sums = match opts.reduction {
        Reduction::Deterministic => {
            let parts: Vec<PowerSums> = points.par_chunks(CHUNK).map(chunk_sums).collect();
            parts.iter().fold(PowerSums::new(kk), |acc, p| acc.merge(p))
        }
        Reduction::Unordered => points
            .par_chunks(CHUNK)
            .map(chunk_sums)
            .reduce(|| PowerSums::new(kk), |a, p| a.merge(&p)),
    };
    let phi = euler_phi(b)?;
    let phif = phi as f64;
    let cdf = EmpiricalCdf::new(points.iter().map(|p| p.c0 / bf).collect())?;
    let ks_distance = opts.reference.map(|r| cdf.ks_distance(r));
    let report = ScanReport {
        b,
        a0: range.0,
        a1: range.1,
        phi,
        count: points.len() as u64,
        moments_c0: sums.c0.iter().map(|s| s.sum() / phif).collect(),
        moments_q: sums.q.iter().map(|s| s.sum() / phif).collect(),
        ks_distance,
        wall_ms: 0.0,
    };
    Ok((report, cdf))
}

/// CDF of `f(·; m1)/π`, the limiting law of `c0(r/b)/b`.
pub fn limit_law_reference(t: TruncatedGSeries, samples: usize) -> Result<EmpiricalCdf> {
    empirical_f(t, samples)?.scaled(1.0 / PI)
}

/// `(b r / π) f(b*/r; m1)` with `b b* ≡ 1 (mod r)`.
pub fn q_approx(r: u64, b: u64, m1: u32) -> Result<f64> {
    if r < 2 {
        return domain("q_approx needs r >= 2");
    }
    if gcd(r, b) != 1 {
        return domain(format!("q_approx needs gcd(r, b) = 1, got r = {r}, b = {b}"));
    }
    let t = TruncatedGSeries::new(m1)?;
    let bstar = mod_inverse(b % r, r)?;
    Ok(b as f64 * r as f64 / PI * f_eval(bstar as f64 / r as f64, t))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpSumParams {
    pub n: i64,
    pub m: i64,
    pub b: u64,
}

/// `K(n, m, b) = Σ_{(r, b) = 1} e((n r + m r*)/b)`.
///
/// Phases are binned by residue and summed in residue order, so the result
/// is exactly symmetric in `n` and `m`.
pub fn kloosterman(p: ExpSumParams) -> Result<Complex64> {
    let b = p.b;
    if b < 2 {
        return domain(format!("Kloosterman sum needs b >= 2, got {b}"));
    }
    let n = p.n.rem_euclid(b as i64) as u64;
    let m = p.m.rem_euclid(b as i64) as u64;
    let mut hist = vec![0u64; b as usize];
    for r in 1..b {
        if gcd(r, b) != 1 {
            continue;
        }
        let rs = mod_inverse(r, b)?;
        let phase = ((n as u128 * r as u128 + m as u128 * rs as u128) % b as u128) as usize;
        hist[phase] += 1;
    }
    let (mut re, mut im) = (NeumaierSum::new(), NeumaierSum::new());
    for (j, &h) in hist.iter().enumerate() {
        if h == 0 {
            continue;
        }
        if j == 0 {
            re.add(h as f64);
            continue;
        }
        let (s, c) = (2.0 * PI * j as f64 / b as f64).sin_cos();
        re.add(h as f64 * c);
        im.add(h as f64 * s);
    }
    Ok(Complex64::new(re.sum(), im.sum()))
}

/// Ramanujan sum `c_q(n) = Σ_{d | (q, n)} μ(q/d) d`.
pub fn ramanujan(q: u64, n: i64) -> Result<i64> {
    if q < 1 {
        return domain("ramanujan needs q >= 1");
    }
    let g = gcd(q, n.unsigned_abs());
    Ok(crate::arith::divisors(g).into_iter().map(|d| mobius(q / d) * d as i64).sum())
}

/// `Σ_{(r, q) = 1} e(r n / q)` evaluated directly.
pub fn ramanujan_direct(q: u64, n: i64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    let nn = n.rem_euclid(q as i64) as u64;
    for r in 1..=q {
        if gcd(r, q) == 1 {
            let ph = (r * nn % q) as f64 / q as f64;
            let (s, c) = (2.0 * PI * ph).sin_cos();
            acc += Complex64::new(c, s);
        }
    }
    acc
}

/// Count of window numerators with `b*/r ∈ [α, α + δ)` (upper end clipped
/// to 1, inclusive there), and the expectation `δ (A1 - A0) φ(b)`.
pub fn inverse_localization_count(window: ScanWindow, alpha: f64, delta: f64) -> Result<(u64, f64)> {
    if !(alpha >= 0.0 && alpha < 1.0 && delta > 0.0) {
        return domain(format!("need 0 <= alpha < 1 and delta > 0, got ({alpha}, {delta})"));
    }
    let hi = alpha + delta;
    let b = window.b;
    let count = window
        .numerators()
        .into_iter()
        .filter(|&r| {
            let x = mod_inverse(b % r, r).expect("coprime") as f64 / r as f64;
            x >= alpha && (x < hi || hi >= 1.0)
        })
        .count() as u64;
    let width = hi.min(1.0) - alpha;
    let expected = width * (window.a1 - window.a0) * euler_phi(b)? as f64;
    Ok((count, expected))
}

/// Kolmogorov–Smirnov distance between two sample CDFs.
pub fn ks_distance(a: &EmpiricalCdf, b: &EmpiricalCdf) -> f64 {
    a.ks_distance(b)
}
