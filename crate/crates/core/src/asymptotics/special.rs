//! Bernoulli numbers and the Riemann zeta function on the real axis.

use std::f64::consts::PI;
use std::sync::OnceLock;

use crate::error::{domain, Result};
use crate::summation::NeumaierSum;

// B_2, B_4, ..., B_12 for the Euler–Maclaurin tail.
const SMALL_B: [f64; 6] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
];

/// `Σ_{j>=n0} j^{-s}` for `s > 1`, `n0 >= 8`, by Euler–Maclaurin.
pub(crate) fn hurwitz_tail(s: f64, n0: u32) -> f64 {
    let n = f64::from(n0);
    let mut acc = NeumaierSum::new();
    acc.add(n.powf(1.0 - s) / (s - 1.0));
    acc.add(0.5 * n.powf(-s));
    // rising factorial s (s+1) ... (s+2i-2) over (2i)!
    let mut rise = s;
    let mut fact = 2.0;
    let mut pow = n.powf(-s - 1.0);
    for (i, b) in SMALL_B.iter().enumerate() {
        acc.add(b / fact * rise * pow);
        let k = 2.0 * i as f64 + 2.0;
        rise *= (s + k - 1.0) * (s + k);
        fact *= (k + 1.0) * (k + 2.0);
        pow /= n * n;
    }
    acc.sum()
}

/// Riemann zeta for real `s > 1`.
pub fn zeta_real(s: f64) -> Result<f64> {
    if !(s > 1.0) {
        return domain(format!("zeta_real needs s > 1, got {s}"));
    }
    const N: u32 = 16;
    let mut acc = NeumaierSum::new();
    for k in (1..N).rev() {
        acc.add(f64::from(k).powf(-s));
    }
    acc.add(hurwitz_tail(s, N));
    Ok(acc.sum())
}

/// `ζ(s) - 1` without cancellation for large `s`.
pub fn zeta_minus_one(s: f64) -> Result<f64> {
    if !(s > 1.0) {
        return domain(format!("zeta_minus_one needs s > 1, got {s}"));
    }
    if s < 8.0 {
        return Ok(zeta_real(s)? - 1.0);
    }
    let mut acc = NeumaierSum::new();
    for k in (2..16u32).rev() {
        acc.add(f64::from(k).powf(-s));
    }
    acc.add(hurwitz_tail(s, 16));
    Ok(acc.sum())
}

fn bernoulli_table() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = vec![0.0; 61];
        t[0] = 1.0;
        t[1] = -0.5;
        let mut ratio = 1.0; // n! / (2π)^n
        for n in 1..=60usize {
            ratio *= n as f64 / (2.0 * PI);
            if n >= 2 && n % 2 == 0 {
                let sign = if (n / 2) % 2 == 1 { 1.0 } else { -1.0 };
                t[n] = sign * 2.0 * ratio * zeta_real(n as f64).unwrap();
            }
        }
        t
    })
}

/// Signed Bernoulli number `B_n` for `2 <= n <= 60` (`B_2 = 1/6`, `B_4 = -1/30`).
/// Odd `n > 1` gives 0.
pub fn bernoulli(n: u32) -> Result<f64> {
    if n < 2 || n > 60 {
        return domain(format!("bernoulli needs 2 <= n <= 60, got {n}"));
    }
    if n % 2 == 1 {
        return Ok(0.0);
    }
    Ok(bernoulli_table()[n as usize])
}

/// Bernoulli polynomial `B_n(x) = Σ_k C(n,k) B_k x^{n-k}` for `n <= 60`.
pub fn bernoulli_polynomial(n: u32, x: f64) -> f64 {
    let t = bernoulli_table();
    let n = n as usize;
    let mut binom = 1.0;
    let mut acc = 0.0;
    for k in 0..=n {
        acc += binom * t[k] * x.powi((n - k) as i32);
        binom = binom * (n - k) as f64 / (k + 1) as f64;
    }
    acc
}
