//! The function `g(α) = Σ_l B(lα)/l` with `B(u) = 1 - 2{u}` (and `B = 0` on
//! integers), its dyadic truncations, Fourier data, continued fractions,
//! its distribution function and even moments.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::divisor_count_table;
use crate::error::{domain, Result};

/// `f(x; m1) = Σ_{l <= 2^m1} B(l x)/l`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruncatedGSeries {
    m1: u32,
}

impl TruncatedGSeries {
    pub fn new(m1: u32) -> Result<Self> {
        if !(1..=40).contains(&m1) {
            return domain(format!("m1 must lie in 1..=40, got {m1}"));
        }
        Ok(TruncatedGSeries { m1 })
    }

    pub fn m1(&self) -> u32 {
        self.m1
    }

    pub fn terms(&self) -> u64 {
        1u64 << self.m1
    }
}

const MAGIC: f64 = 4_503_599_627_370_496.0; // 2^52
const BLOCK: usize = 256;

#[inline(always)]
fn sawtooth_nonneg(t: f64) -> f64 {
    // d = t - round(t) without libm, valid for 0 <= t < 2^51;
    // B(t) = sgn(d) - 2d, which is 0 at integers and half-integers
    let d = t - ((t + MAGIC) - MAGIC);
    let sgn = if d > 0.0 { 1.0 } else if d < 0.0 { -1.0 } else { 0.0 };
    sgn - 2.0 * d
}

/// Sawtooth `B(u) = 1 - 2{u}`, zero at integers.
pub fn sawtooth(u: f64) -> f64 {
    let fr = u - u.floor();
    if fr == 0.0 {
        0.0
    } else {
        1.0 - 2.0 * fr
    }
}

#[inline]
fn reduce(alpha: f64) -> f64 {
    alpha - alpha.floor()
}

#[inline(always)]
fn accumulate_body(xs: &[f64], acc: &mut [f64], lo: u64, hi: u64) {
    for l in lo + 1..=hi {
        let lf = l as f64;
        let inv = 1.0 / lf;
        for (a, &x) in acc.iter_mut().zip(xs) {
            *a += sawtooth_nonneg(lf * x) * inv;
        }
    }
}

#[cfg(target_arch = "x86_64")]
#[target_feature(enable = "avx2")]
unsafe fn accumulate_avx2(xs: &[f64], acc: &mut [f64], lo: u64, hi: u64) {
    accumulate_body(xs, acc, lo, hi)
}

/// Adds `Σ_{l in (lo, hi]} B(l x_j)/l` to `acc[j]` for reduced `x_j`.
fn accumulate(xs: &[f64], acc: &mut [f64], lo: u64, hi: u64) {
    #[cfg(target_arch = "x86_64")]
    if is_x86_feature_detected!("avx2") {
        // SAFETY: the feature was detected at runtime
        return unsafe { accumulate_avx2(xs, acc, lo, hi) };
    }
    accumulate_body(xs, acc, lo, hi)
}

/// Partial sums of the series at several truncation levels, node by node.
///
/// Returns `out[i][j] = f(x_j; levels[i])`; `levels` must be increasing.
pub fn f_eval_levels(xs: &[f64], levels: &[u32]) -> Result<Vec<Vec<f64>>> {
    for w in levels.windows(2) {
        if w[1] <= w[0] {
            return domain("levels must be increasing");
        }
    }
    for &m in levels {
        TruncatedGSeries::new(m)?;
    }
    let reduced: Vec<f64> = xs.iter().map(|&x| reduce(x)).collect();
    let blocks: Vec<Vec<Vec<f64>>> = reduced
        .par_chunks(BLOCK)
        .map(|chunk| {
            let mut acc = vec![0.0; chunk.len()];
            let mut out = Vec::with_capacity(levels.len());
            let mut done = 0u64;
            for &m in levels {
                let hi = 1u64 << m;
                accumulate(chunk, &mut acc, done, hi);
                done = hi;
                out.push(acc.clone());
            }
            out
        })
        .collect();
    let mut out = vec![Vec::with_capacity(xs.len()); levels.len()];
    for block in blocks {
        for (o, b) in out.iter_mut().zip(block) {
            o.extend(b);
        }
    }
    Ok(out)
}

/// `f(x_j; m1)` for every node.
pub fn f_eval_many(xs: &[f64], t: TruncatedGSeries) -> Vec<f64> {
    f_eval_levels(xs, &[t.m1]).expect("valid level").pop().unwrap()
}

pub fn f_eval(alpha: f64, t: TruncatedGSeries) -> f64 {
    let x = [reduce(alpha)];
    let mut acc = [0.0];
    accumulate(&x, &mut acc, 0, t.terms());
    acc[0]
}

/// Constant `c` in `g(x) = c Σ τ(l)/l sin(2π l x)`.
///
/// Fixed by [`fourier_constant_oracle`]; the competing candidate `-1/π`
/// loses by a wide margin.
pub const FOURIER_CONSTANT: f64 = 2.0 / PI;

#[inline(always)]
fn rotate_body(w: &[f64], acc: &mut [f64], c: &mut [f64], s: &mut [f64], sc: &[f64], ss: &[f64]) {
    let n = acc.len();
    let (c, s, sc, ss) = (&mut c[..n], &mut s[..n], &sc[..n], &ss[..n]);
    for &wl in w {
        for j in 0..n {
            acc[j] += wl * s[j];
            let nc = c[j] * sc[j] - s[j] * ss[j];
            let ns = s[j] * sc[j] + c[j] * ss[j];
            c[j] = nc;
            s[j] = ns;
        }
    }
}

#[cfg(target_arch = "x86_64")]
#[target_feature(enable = "avx2")]
unsafe fn rotate_avx2(w: &[f64], acc: &mut [f64], c: &mut [f64], s: &mut [f64], sc: &[f64], ss: &[f64]) {
    rotate_body(w, acc, c, s, sc, ss)
}

/// Adds `Σ w_l sin(θ_j + l φ_j)` by rotating `(c, s)` through `(sc, ss)`.
fn rotate(w: &[f64], acc: &mut [f64], c: &mut [f64], s: &mut [f64], sc: &[f64], ss: &[f64]) {
    #[cfg(target_arch = "x86_64")]
    if is_x86_feature_detected!("avx2") {
        // SAFETY: the feature was detected at runtime
        return unsafe { rotate_avx2(w, acc, c, s, sc, ss) };
    }
    rotate_body(w, acc, c, s, sc, ss)
}

/// Sine-series evaluator `c Σ_{l <= M} τ(l)/l sin(2π l α)`.
#[derive(Debug, Clone)]
pub struct GFourier {
    weights: Vec<f64>,
    constant: f64,
}

impl GFourier {
    pub fn new(m: usize) -> Result<Self> {
        Self::with_constant(m, FOURIER_CONSTANT)
    }

    pub fn with_constant(m: usize, constant: f64) -> Result<Self> {
        if m < 1 {
            return domain("Fourier truncation needs M >= 1");
        }
        let tau = divisor_count_table(m);
        let weights = (1..=m).map(|l| f64::from(tau[l]) / l as f64).collect();
        Ok(GFourier { weights, constant })
    }

    pub fn truncation(&self) -> usize {
        self.weights.len()
    }

    fn eval_block(&self, xs: &[f64], out: &mut [f64]) {
        const RESYNC: usize = 2048;
        let n = xs.len();
        let mut step_c = vec![0.0; n];
        let mut step_s = vec![0.0; n];
        let mut c = vec![0.0; n];
        let mut s = vec![0.0; n];
        let mut acc = vec![0.0; n];
        for j in 0..n {
            let (sn, cs) = (2.0 * PI * xs[j]).sin_cos();
            step_c[j] = cs;
            step_s[j] = sn;
        }
        let m = self.weights.len();
        let mut l = 1usize;
        while l <= m {
            for j in 0..n {
                let t = (l as f64 * xs[j]).fract();
                let (sn, cs) = (2.0 * PI * t).sin_cos();
                c[j] = cs;
                s[j] = sn;
            }
            let end = (l + RESYNC).min(m + 1);
            rotate(&self.weights[l - 1..end - 1], &mut acc, &mut c, &mut s, &step_c, &step_s);
            l = end;
        }
        for j in 0..n {
            out[j] = self.constant * acc[j];
        }
    }

    /// Values at every node; `α` and `1 - α` give exactly opposite results
    /// whenever `1 - α` is representable.
    pub fn eval_many(&self, alphas: &[f64]) -> Vec<f64> {
        let folded: Vec<(f64, f64)> = alphas
            .iter()
            .map(|&a| {
                let x = reduce(a);
                if x > 0.5 {
                    (1.0 - x, -1.0)
                } else {
                    (x, 1.0)
                }
            })
            .collect();
        let xs: Vec<f64> = folded.iter().map(|p| p.0).collect();
        let mut out = vec![0.0; xs.len()];
        out.par_chunks_mut(BLOCK)
            .zip(xs.par_chunks(BLOCK))
            .for_each(|(o, x)| self.eval_block(x, o));
        for (o, p) in out.iter_mut().zip(&folded) {
            *o *= p.1;
        }
        out
    }

    pub fn eval(&self, alpha: f64) -> f64 {
        self.eval_many(&[alpha])[0]
    }
}

pub fn g_fourier_eval(alpha: f64, m: usize) -> Result<f64> {
    Ok(GFourier::new(m)?.eval(alpha))
}

/// Root-mean-square difference between `f(·; m1)` and the sine series
/// truncated at `M`, over the given nodes.
pub fn l2_difference(xs: &[f64], t: TruncatedGSeries, fourier: &GFourier) -> f64 {
    let f = f_eval_many(xs, t);
    let g = fourier.eval_many(xs);
    let ss: f64 = f.iter().zip(&g).map(|(a, b)| (a - b) * (a - b)).sum();
    (ss / xs.len() as f64).sqrt()
}

/// L² distances for the candidate constants `+2/π` and `-1/π`.
pub fn fourier_constant_oracle(xs: &[f64], m1: u32) -> Result<[(f64, f64); 2]> {
    let t = TruncatedGSeries::new(m1)?;
    let m = 1usize << m1;
    let mut out = [(0.0, 0.0); 2];
    for (slot, c) in out.iter_mut().zip([2.0 / PI, -1.0 / PI]) {
        *slot = (c, l2_difference(xs, t, &GFourier::with_constant(m, c)?));
    }
    Ok(out)
}

/// Sine-basis coefficients of `f(·; m1)`: `f(x) = Σ_{k != 0} a(k) e(kx)` with
/// `a(k) = -i τ_L(k) / (π k)` for `k > 0`, `τ_L(k) = #{l | k : l <= 2^m1}`,
/// and `a(-k) = -a(k)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FourierCoefficients {
    pub m1: u32,
    /// `Im a(k)` for `k = 1..=K`.
    pub imag: Vec<f64>,
}

impl FourierCoefficients {
    pub fn k_max(&self) -> usize {
        self.imag.len()
    }

    /// `Im a(k)` for `1 <= |k| <= K`.
    pub fn get(&self, k: i64) -> Option<f64> {
        let idx = k.unsigned_abs() as usize;
        if idx == 0 || idx > self.imag.len() {
            return None;
        }
        let v = self.imag[idx - 1];
        Some(if k > 0 { v } else { -v })
    }

    /// `Σ_{1 <= |k| <= K} |a(k)|²`.
    pub fn parseval_sum(&self) -> f64 {
        let mut acc = crate::summation::NeumaierSum::new();
        for v in self.imag.iter().rev() {
            acc.add(2.0 * v * v);
        }
        acc.sum()
    }
}

pub fn fourier_coeffs_f(t: TruncatedGSeries, k_max: usize) -> Result<FourierCoefficients> {
    if k_max < 1 {
        return domain("need K >= 1");
    }
    let lmax = (t.terms() as usize).min(k_max);
    let mut count = vec![0u32; k_max + 1];
    for l in 1..=lmax {
        for k in (l..=k_max).step_by(l) {
            count[k] += 1;
        }
    }
    let imag = (1..=k_max).map(|k| -f64::from(count[k]) / (PI * k as f64)).collect();
    Ok(FourierCoefficients { m1: t.m1, imag })
}

/// Exact `∫_0^1 f(x; m1)² dx = (1/3) Σ_{l, l'} gcd(l, l')² / (l l')²`.
pub fn f_square_integral(t: TruncatedGSeries) -> f64 {
    let n = t.terms();
    let mut acc = crate::summation::NeumaierSum::new();
    for l in 1..=n {
        for lp in 1..=n {
            let g = crate::arith::gcd(l, lp) as f64;
            acc.add(g * g / ((l * l) as f64 * (lp * lp) as f64));
        }
    }
    acc.sum() / 3.0
}

mod cf;
mod distribution;

pub use cf::{cf_expand, convergence_classifier, BrjunoReport, ContinuedFraction, Verdict};
pub use distribution::{
    empirical_f, hk_growth_check, hk_table, kronecker_points, odd_moments, EmpiricalCdf, GrowthReport, MomentEntry,
    MomentTable,
};
