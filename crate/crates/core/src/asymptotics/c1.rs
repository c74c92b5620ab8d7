//! The linear coefficient `C1(r, b0)` in `c0(r/b)` along `b ≡ b0 (mod r)`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::arith::gcd;
use crate::core_sums::{c0_with_table, CotTable};
use crate::error::{domain, Result};
use crate::summation::NeumaierSum;

use super::special::zeta_real;
use super::EULER_GAMMA;

fn gstar_series(z: f64) -> f64 {
    // π cot πz = 1/z - 2 Σ ζ(2k) z^{2k-1}
    let z2 = z * z;
    let mut p = z;
    let mut acc = 1.0 / (1.0 - z);
    for k in 1..=20u32 {
        acc -= 2.0 * zeta_real(f64::from(2 * k)).unwrap() * p;
        p *= z2;
    }
    acc
}

/// `g*(z) = π cot πz - 1/z - 1/(z-1)` on the closed interval `[0, 1]`.
pub(crate) fn gstar_closed(z: f64) -> f64 {
    if z > 0.5 {
        return -gstar_closed(1.0 - z);
    }
    if z < 0.05 {
        return gstar_series(z);
    }
    let t = PI * z;
    PI * t.cos() / t.sin() - 1.0 / z - 1.0 / (z - 1.0)
}

/// `g*(z) = π cot πz - 1/z - 1/(z-1)` for `0 < z < 1`.
pub fn gstar(z: f64) -> Result<f64> {
    if !(z > 0.0 && z < 1.0) {
        return domain(format!("gstar needs 0 < z < 1, got {z}"));
    }
    Ok(gstar_closed(z))
}

/// `∫_0^∞ P1(u) / (s + u r)^2 du`, `P1(x) = {x} - 1/2`.
pub fn p1_integral(s: u64, r: u64) -> Result<f64> {
    if s == 0 || r == 0 {
        return domain("p1_integral needs s, r >= 1");
    }
    let (sf, rf) = (s as f64, r as f64);
    let mut acc = NeumaierSum::new();
    let mut n = 0u64;
    loop {
        let w0 = sf + n as f64 * rf;
        let x = rf / w0;
        if x < 1e-5 {
            // Σ_{m>=n} of the leading -x³/6 piece
            acc.add(-1.0 / (12.0 * (w0 - 0.5 * rf).powi(2)));
            break;
        }
        let piece = if x < 0.1 {
            let mut t = x * x;
            let mut sum = 0.0;
            for m in 3..=24 {
                t *= -x;
                sum -= (1.0 / m as f64 - 0.5) * t;
            }
            sum
        } else {
            x.ln_1p() - x * (1.0 + 0.5 * x) / (1.0 + x)
        };
        acc.add(piece / (rf * rf));
        n += 1;
    }
    Ok(acc.sum())
}

/// Residue data for `C1(r, b0)`: `s_j ≡ -b0 j`, `t_j ≡ b0 (j+1) (mod r)`,
/// representatives in `[1, r]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct C1Input {
    pub r: u64,
    pub b0: u64,
    pub s: Vec<u64>,
    pub t: Vec<u64>,
}

impl C1Input {
    pub fn new(r: u64, b0: u64) -> Result<Self> {
        if r == 0 {
            return domain("C1 needs r >= 1");
        }
        if gcd(b0 % r, r) != 1 {
            return domain(format!("C1 needs gcd(b0, r) = 1, got b0 = {b0}, r = {r}"));
        }
        let b0 = b0 % r;
        let rep = |x: u64| if x == 0 { r } else { x };
        let s = (0..r).map(|j| rep((r - b0 * j % r) % r)).collect();
        let t = (0..r).map(|j| rep(b0 * (j + 1) % r)).collect();
        Ok(C1Input { r, b0, s, t })
    }
}

/// Closed form of `C1(r, b0)`: logarithmic, reciprocal, `P1`-integral and
/// `g*`-integral parts.
pub fn c1_direct(input: &C1Input) -> f64 {
    let r = input.r as f64;
    let mut logs = NeumaierSum::new();
    let mut recip = NeumaierSum::new();
    let mut p1 = NeumaierSum::new();
    let mut weight = 0.0;
    for j in 1..input.r as usize {
        let (s, t) = (input.s[j], input.t[j]);
        let jf = j as f64;
        logs.add(jf * (s as f64 / t as f64).ln());
        recip.add(jf * (1.0 / s as f64 - 1.0 / t as f64));
        p1.add(jf * (p1_integral(s, input.r).unwrap() - p1_integral(t, input.r).unwrap()));
        weight += jf;
    }
    // ∫_0^{1/r} g*(v r) dv = (1/r) ∫_0^1 g*(w) dw
    let gstar_int = simpson(gstar_closed, 0.0, 1.0, 2000) / r;
    logs.sum() / (PI * r * r) - recip.sum() / (2.0 * PI * r) + p1.sum() / PI
        - weight * gstar_int / r
}

fn simpson(g: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let h = (b - a) / n as f64;
    let mut acc = NeumaierSum::new();
    for i in 0..=n {
        let w = if i == 0 || i == n {
            1.0
        } else if i % 2 == 1 {
            4.0
        } else {
            2.0
        };
        acc.add(w * g(a + i as f64 * h));
    }
    acc.sum() * h / 3.0
}

/// Least-squares slope of `y(b) = c0(r/b) - (b log b)/(π r) + (b/(π r))(log 2π - γ)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct C1Fit {
    pub slope: f64,
    pub intercept: f64,
    /// Larger of the top-half residual spread over the b-range and twice
    /// the slope shift between the full fit and the top-half fit.
    pub confidence: f64,
}

fn line_fit(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut sxx = NeumaierSum::new();
    let mut sxy = NeumaierSum::new();
    for (&x, &y) in xs.iter().zip(ys) {
        sxx.add((x - mx) * (x - mx));
        sxy.add((x - mx) * (y - my));
    }
    let slope = sxy.sum() / sxx.sum();
    (slope, my - slope * mx)
}

pub fn c1_empirical(r: u64, b0: u64, b_list: &[u64]) -> Result<C1Fit> {
    if b_list.len() < 3 {
        return domain("c1_empirical needs at least 3 values of b");
    }
    if r == 0 {
        return domain("c1_empirical needs r >= 1");
    }
    for w in b_list.windows(2) {
        if w[1] <= w[0] {
            return domain("b_list must be increasing");
        }
    }
    let rf = r as f64;
    let shift = (2.0 * PI).ln() - EULER_GAMMA;
    let mut xs = Vec::with_capacity(b_list.len());
    let mut ys = Vec::with_capacity(b_list.len());
    for &b in b_list {
        if b % r != b0 % r || gcd(r, b) != 1 || b <= r {
            return domain(format!("b = {b} is not a valid denominator for r = {r}, b0 = {b0}"));
        }
        let table = CotTable::new(b)?;
        let bf = b as f64;
        let c = c0_with_table(&table, r).value;
        xs.push(bf);
        ys.push(c - bf * bf.ln() / (PI * rf) + bf / (PI * rf) * shift);
    }
    let (slope, intercept) = line_fit(&xs, &ys);
    let half = xs.len() / 2;
    let spread = xs[half..]
        .iter()
        .zip(&ys[half..])
        .map(|(&x, &y)| (y - slope * x - intercept).abs())
        .fold(0.0, f64::max);
    let range = xs[xs.len() - 1] - xs[0];
    let (top_slope, _) = line_fit(&xs[half..], &ys[half..]);
    let confidence = (spread / range).max(2.0 * (slope - top_slope).abs());
    Ok(C1Fit { slope, intercept, confidence })
}
