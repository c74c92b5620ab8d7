//! Asymptotic expansion of `c0(1/b)` and the secondary coefficient `C1(r, b0)`.

mod c1;
mod euler_maclaurin;
mod special;

use std::f64::consts::{LN_2, PI};

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::summation::NeumaierSum;

pub use c1::{c1_direct, c1_empirical, gstar, p1_integral, C1Fit, C1Input};
pub use euler_maclaurin::{
    euler_maclaurin_sum, EulerMaclaurinEstimate, EulerMaclaurinSpec, Integrand, Polynomial,
    ShiftedReciprocal,
};
pub use special::{bernoulli, bernoulli_polynomial, zeta_minus_one, zeta_real};

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// `S(L; b) = 2b Σ_{a<=L} ⌊a/b⌋ / a`.
pub fn s_sum(l: u64, b: u64) -> f64 {
    let mut acc = NeumaierSum::new();
    for a in b..=l {
        acc.add((a / b) as f64 / a as f64);
    }
    2.0 * b as f64 * acc.sum()
}

/// `G_L(b) = Σ_{a<=L, b∤a} ((b/a)(1 + 2⌊a/b⌋) - 2)`; tends to `π c0(1/b)`.
pub fn g_partial(l: u64, b: u64) -> f64 {
    let bf = b as f64;
    let mut acc = NeumaierSum::new();
    for a in 1..=l {
        if a % b == 0 {
            continue;
        }
        acc.add(bf / a as f64 * (1 + 2 * (a / b)) as f64 - 2.0);
    }
    acc.sum()
}

/// `-log(L/b) + b(log L + γ) - 2L + S(L; b)`.
///
/// `G_L(b)` differs from this by `-γ + O(b/L)`.
pub fn g_partial_expansion(l: u64, b: u64) -> f64 {
    let (lf, bf) = (l as f64, b as f64);
    -(lf / bf).ln() + bf * (lf.ln() + EULER_GAMMA) - 2.0 * lf + s_sum(l, b)
}

/// `Σ_{ν=3}^{nu_max} (-1)^{ν+1} ζ(ν-1)/ν`, summed literally.
pub fn const_d1_partial(nu_max: u32) -> f64 {
    let mut acc = NeumaierSum::new();
    for nu in 3..=nu_max {
        let sign = if nu % 2 == 1 { 1.0 } else { -1.0 };
        acc.add(sign * zeta_real(f64::from(nu - 1)).unwrap() / f64::from(nu));
    }
    acc.sum()
}

fn d1_split(nu_max: u32) -> f64 {
    // Σ_{ν>=3} (-1)^{ν+1}/ν = log 2 - 1/2; the remainder uses ζ - 1
    let mut acc = NeumaierSum::new();
    acc.add(LN_2);
    acc.add(-0.5);
    for nu in 3..=nu_max {
        let sign = if nu % 2 == 1 { 1.0 } else { -1.0 };
        acc.add(sign * zeta_minus_one(f64::from(nu - 1)).unwrap() / f64::from(nu));
    }
    acc.sum()
}

/// `D1 = Σ_{ν>=3} (-1)^{ν+1} ζ(ν-1)/ν`.
pub fn const_d1() -> f64 {
    // ζ(ν-1) - 1 < 2^{2-ν}: 64 terms leave a tail below 1e-18
    d1_split(64)
}

/// `D_{2,ν} = Σ_{k>=1} k (k^{-ν} - (k+1)^{-ν})`.
pub fn const_d2(nu: u32) -> Result<f64> {
    if nu < 2 {
        return domain(format!("D_2 needs nu >= 2, got {nu}"));
    }
    let s = f64::from(nu);
    const K: u32 = 64;
    let mut acc = NeumaierSum::new();
    for k in 1..=K {
        let kf = f64::from(k);
        acc.add(kf * (kf.powf(-s) - (kf + 1.0).powf(-s)));
    }
    // Σ_{k>K} k(k^{-ν} - (k+1)^{-ν}) = K (K+1)^{-ν} + Σ_{j>K} j^{-ν}
    let kf = f64::from(K);
    acc.add(kf * (kf + 1.0).powf(-s));
    acc.add(special::hurwitz_tail(s, K + 1));
    Ok(acc.sum())
}

/// Generalized binomial `C(-n, m) = (-1)^m C(n + m - 1, m)`.
pub fn binomial_negative(n: u32, m: u32) -> f64 {
    let mut c = 1.0;
    for i in 0..m {
        c *= f64::from(n + i) / f64::from(i + 1);
    }
    if m % 2 == 1 {
        -c
    } else {
        c
    }
}

/// `E_l = (2/(l+1) - 2) D_{2,l+1} + Σ_{j<=(l+1)/2, j<=N} (B_{2j}/j) C(-2j, l+1-2j) D_{2,l+1}`
/// with `N = ⌊n/2⌋ + 1`.
pub fn coeff_e(l: u32, n: u32) -> Result<f64> {
    if l < 1 || l > n {
        return domain(format!("coefficient E_{l} needs 1 <= l <= n = {n}"));
    }
    let d = const_d2(l + 1)?;
    let big_n = n / 2 + 1;
    let mut acc = NeumaierSum::new();
    acc.add((2.0 / f64::from(l + 1) - 2.0) * d);
    let mut j = 1;
    while 2 * j <= l + 1 && j <= big_n {
        let bj = bernoulli(2 * j)?;
        acc.add(bj / f64::from(j) * binomial_negative(2 * j, l + 1 - 2 * j) * d);
        j += 1;
    }
    Ok(acc.sum())
}

/// `(1/π) b log b - (b/π)(log 2π - γ) - 1/π`.
pub fn main_term(b: f64) -> f64 {
    b * b.ln() / PI - b / PI * ((2.0 * PI).ln() - EULER_GAMMA) - 1.0 / PI
}

/// Truncated expansion `main(b) + Σ_{l<=n} E_l b^{-l}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticExpansion {
    pub order_n: u32,
    /// `E_1..E_n`.
    pub coeffs_e: Vec<f64>,
}

impl AsymptoticExpansion {
    pub fn new(order_n: u32) -> Result<Self> {
        let coeffs_e = (1..=order_n).map(|l| coeff_e(l, order_n)).collect::<Result<_>>()?;
        Ok(AsymptoticExpansion { order_n, coeffs_e })
    }

    pub fn main(&self, b: f64) -> f64 {
        main_term(b)
    }

    pub fn value(&self, b: f64) -> f64 {
        let mut acc = NeumaierSum::new();
        acc.add(main_term(b));
        let mut p = 1.0;
        for e in &self.coeffs_e {
            p /= b;
            acc.add(e * p);
        }
        acc.sum()
    }

    /// Smallest `b` the expansion is stated for: `6(⌊n/2⌋ + 1)`.
    pub fn threshold(&self) -> u64 {
        6 * (u64::from(self.order_n) / 2 + 1)
    }
}

/// Value of the expansion at `b` and the size of its last term
/// (`|E_n| b^{-n}`, or the constant `1/π` when `n = 0`).
pub fn c0_asymptotic(b: u64, n: u32) -> Result<(f64, f64)> {
    let exp = AsymptoticExpansion::new(n)?;
    if b < exp.threshold() {
        return domain(format!("expansion of order {n} needs b >= {}, got {b}", exp.threshold()));
    }
    let bf = b as f64;
    let last = match exp.coeffs_e.last() {
        Some(e) => e.abs() * bf.powi(-(n as i32)),
        None => 1.0 / PI,
    };
    Ok((exp.value(bf), last))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn s_sum_examples() {
        assert_eq!(s_sum(2, 3), 0.0);
        assert_relative_eq!(s_sum(10, 3), 96.0 / 7.0, max_relative = 1e-14);
        for b in 2..50 {
            assert_eq!(s_sum(b - 1, b), 0.0);
        }
    }

    #[test]
    fn g_partial_small_cases() {
        assert_eq!(g_partial(1, 2), 0.0);
        // the a = 3 term is excluded
        assert_eq!(g_partial(3, 3), g_partial(2, 3));
        assert_ne!(g_partial(4, 3), g_partial(3, 3));
    }

    #[test]
    fn d1_partial_and_stability() {
        assert_relative_eq!(const_d1_partial(3), PI * PI / 18.0, max_relative = 1e-13);
        assert!((d1_split(64) - d1_split(128)).abs() < 1e-12);
        let full = const_d1();
        // alternating tail bounded by the first omitted term
        for nu in [40u32, 81, 160] {
            let omitted = zeta_real(f64::from(nu)).unwrap() / f64::from(nu + 1);
            assert!((full - const_d1_partial(nu)).abs() <= omitted);
        }
    }

    #[test]
    fn d1_matches_log_series() {
        // Σ_k [k log(1 + 1/k) - 1 + 1/(2k)], tail from 1/(3k²) - 1/(4k³) + 1/(5k⁴)
        let k_max = 200_000u64;
        let mut acc = NeumaierSum::new();
        for k in 1..=k_max {
            let x = 1.0 / k as f64;
            let t = if x < 1e-2 {
                x * x / 3.0 - x * x * x / 4.0 + x.powi(4) / 5.0 - x.powi(5) / 6.0
            } else {
                (1.0 + x).ln() / x - 1.0 + x / 2.0
            };
            acc.add(t);
        }
        let kf = k_max as f64 + 0.5;
        acc.add(1.0 / (3.0 * kf) - 1.0 / (8.0 * kf * kf) + 1.0 / (15.0 * kf.powi(3)));
        assert!((acc.sum() - const_d1()).abs() < 1e-10, "{} vs {}", acc.sum(), const_d1());
    }

    #[test]
    fn d2_equals_zeta() {
        assert_relative_eq!(const_d2(2).unwrap(), PI * PI / 6.0, max_relative = 1e-13);
        assert_relative_eq!(const_d2(3).unwrap(), 1.202_056_903_159_594_2, max_relative = 1e-13);
        assert!((const_d2(60).unwrap() - 1.0).abs() < 1e-15);
        assert!(const_d2(1).is_err());
        // brute-force partial sums approach the same value
        let mut acc = NeumaierSum::new();
        for k in 1..=1_000_000u64 {
            let kf = k as f64;
            acc.add(kf * (kf.powi(-2) - (kf + 1.0).powi(-2)));
        }
        assert!((acc.sum() - const_d2(2).unwrap()).abs() < 2e-6);
    }

    #[test]
    fn e_coefficients() {
        assert_relative_eq!(coeff_e(1, 1).unwrap(), -5.0 / 6.0 * PI * PI / 6.0, max_relative = 1e-13);
        assert_relative_eq!(coeff_e(1, 1).unwrap(), -1.370_778_4, max_relative = 1e-7);
        // (2/3 - 2) ζ(3) + (1/6)(-2) ζ(3)
        let z3 = 1.202_056_903_159_594_2;
        assert_relative_eq!(coeff_e(2, 2).unwrap(), -5.0 / 3.0 * z3, max_relative = 1e-13);
        assert!(coeff_e(3, 2).is_err());
        assert!(coeff_e(0, 2).is_err());
    }

    #[test]
    fn generalized_binomial() {
        assert_eq!(binomial_negative(2, 0), 1.0);
        assert_eq!(binomial_negative(2, 1), -2.0);
        assert_eq!(binomial_negative(2, 2), 3.0);
        assert_eq!(binomial_negative(4, 3), -20.0);
    }

    #[test]
    fn asymptotic_threshold_and_main() {
        assert!(c0_asymptotic(5, 2).is_err());
        assert!(c0_asymptotic(12, 2).is_ok());
        let (v, _) = c0_asymptotic(100, 0).unwrap();
        let direct = 100.0 / PI * 100f64.ln() - 100.0 / PI * ((2.0 * PI).ln() - EULER_GAMMA) - 1.0 / PI;
        assert_relative_eq!(v, direct, max_relative = 1e-15);
    }
}
