//! Euler–Maclaurin summation with a numerical remainder bound.

use crate::error::{domain, Error, Result};
use crate::summation::NeumaierSum;

use super::special::{bernoulli, bernoulli_polynomial};

/// A function on `[0, Z]` with derivatives and a definite integral.
pub trait Integrand {
    fn value(&self, x: f64) -> f64;
    /// `f^{(order)}(x)`, or `None` if that order is unavailable.
    fn derivative(&self, order: usize, x: f64) -> Option<f64>;
    fn integral(&self, a: f64, b: f64) -> f64;
}

/// `Σ c_k x^k`.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    pub coeffs: Vec<f64>,
}

impl Polynomial {
    pub fn new(coeffs: Vec<f64>) -> Self {
        Polynomial { coeffs }
    }

    fn eval_coeffs(c: &[f64], x: f64) -> f64 {
        c.iter().rev().fold(0.0, |acc, &a| acc * x + a)
    }
}

impl Integrand for Polynomial {
    fn value(&self, x: f64) -> f64 {
        Self::eval_coeffs(&self.coeffs, x)
    }

    fn derivative(&self, order: usize, x: f64) -> Option<f64> {
        let mut c = self.coeffs.clone();
        for _ in 0..order {
            if c.is_empty() {
                break;
            }
            c = c.iter().enumerate().skip(1).map(|(k, &a)| k as f64 * a).collect();
        }
        Some(Self::eval_coeffs(&c, x))
    }

    fn integral(&self, a: f64, b: f64) -> f64 {
        let anti: Vec<f64> = std::iter::once(0.0)
            .chain(self.coeffs.iter().enumerate().map(|(k, &c)| c / (k + 1) as f64))
            .collect();
        Self::eval_coeffs(&anti, b) - Self::eval_coeffs(&anti, a)
    }
}

/// `1 / (x + shift)` for `shift > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShiftedReciprocal {
    pub shift: f64,
}

impl Integrand for ShiftedReciprocal {
    fn value(&self, x: f64) -> f64 {
        1.0 / (x + self.shift)
    }

    fn derivative(&self, order: usize, x: f64) -> Option<f64> {
        let mut fact = 1.0;
        for k in 1..=order {
            fact *= k as f64;
        }
        let sign = if order % 2 == 0 { 1.0 } else { -1.0 };
        Some(sign * fact / (x + self.shift).powi(order as i32 + 1))
    }

    fn integral(&self, a: f64, b: f64) -> f64 {
        ((b + self.shift) / (a + self.shift)).ln()
    }
}

/// `Σ_{ν=0}^{Z} f(ν)` via `N` Bernoulli corrections.
pub struct EulerMaclaurinSpec<'a> {
    pub n_terms: usize,
    pub upper: u64,
    pub f: &'a dyn Integrand,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EulerMaclaurinEstimate {
    pub sum: f64,
    pub remainder_bound: f64,
}

fn simpson_abs(g: impl Fn(f64) -> f64, a: f64, b: f64, panels: usize) -> f64 {
    let n = panels + panels % 2;
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
        acc.add(w * g(a + i as f64 * h).abs());
    }
    acc.sum() * h / 3.0
}

/// Right-hand side of the generalized Euler summation formula, plus a bound
/// `max|B_{2N+1}| / (2N+1)! · ∫_0^Z |f^{(2N+1)}|` on the dropped remainder.
pub fn euler_maclaurin_sum(spec: &EulerMaclaurinSpec<'_>) -> Result<EulerMaclaurinEstimate> {
    let n = spec.n_terms;
    if n < 1 || n > 29 {
        return domain(format!("Euler-Maclaurin needs 1 <= N <= 29, got {n}"));
    }
    let f = spec.f;
    let z = spec.upper as f64;
    let mut acc = NeumaierSum::new();
    acc.add(0.5 * (f.value(0.0) + f.value(z)));
    acc.add(f.integral(0.0, z));
    let mut fact = 1.0;
    for j in 1..=n {
        let k = 2 * j;
        fact *= ((k - 1) * k) as f64;
        let hi = f.derivative(k - 1, z).ok_or(Error::MissingDerivative(k - 1))?;
        let lo = f.derivative(k - 1, 0.0).ok_or(Error::MissingDerivative(k - 1))?;
        acc.add(bernoulli(k as u32)? / fact * (hi - lo));
    }
    let top = 2 * n + 1;
    f.derivative(top, 0.0).ok_or(Error::MissingDerivative(top))?;
    let fact_top = fact * top as f64;
    let max_b = (0..=4096)
        .map(|i| bernoulli_polynomial(top as u32, i as f64 / 4096.0).abs())
        .fold(0.0, f64::max)
        * (1.0 + 1e-6);
    let panels = (64 * (spec.upper as usize + 1)).min(1 << 18);
    let integral = if spec.upper == 0 {
        0.0
    } else {
        simpson_abs(|x| f.derivative(top, x).unwrap_or(0.0), 0.0, z, panels)
    };
    Ok(EulerMaclaurinEstimate { sum: acc.sum(), remainder_bound: max_b / fact_top * integral })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn squares_are_exact() {
        let f = Polynomial::new(vec![0.0, 0.0, 1.0]);
        let est = euler_maclaurin_sum(&EulerMaclaurinSpec { n_terms: 1, upper: 10, f: &f }).unwrap();
        assert!((est.sum - 385.0).abs() < 1e-12);
        let one = Polynomial::new(vec![1.0]);
        let est = euler_maclaurin_sum(&EulerMaclaurinSpec { n_terms: 1, upper: 5, f: &one }).unwrap();
        assert!((est.sum - 6.0).abs() < 1e-14);
    }

    #[test]
    fn polynomials_up_to_degree_2n_plus_1() {
        for n in 1..=4usize {
            for deg in 0..=(2 * n + 1) {
                let mut c = vec![0.0; deg + 1];
                for (k, ck) in c.iter_mut().enumerate() {
                    *ck = 1.0 + 0.5 * k as f64;
                }
                let p = Polynomial::new(c);
                let z = 17u64;
                let exact: f64 = (0..=z).map(|v| p.value(v as f64)).sum();
                let est = euler_maclaurin_sum(&EulerMaclaurinSpec { n_terms: n, upper: z, f: &p }).unwrap();
                assert!((est.sum - exact).abs() <= 1e-12 * exact.abs(), "n={n} deg={deg}");
            }
        }
    }

    #[test]
    fn harmonic_number_within_bound() {
        let f = ShiftedReciprocal { shift: 1.0 };
        let est = euler_maclaurin_sum(&EulerMaclaurinSpec { n_terms: 2, upper: 99, f: &f }).unwrap();
        let h100: f64 = (1..=100).map(|k| 1.0 / k as f64).sum();
        assert!((est.sum - h100).abs() <= est.remainder_bound);
        assert!((est.sum - 5.187_377_5).abs() < 1e-2);
        assert!(est.remainder_bound < 0.01);
    }

    struct NoDerivatives;
    impl Integrand for NoDerivatives {
        fn value(&self, _: f64) -> f64 {
            1.0
        }
        fn derivative(&self, _: usize, _: f64) -> Option<f64> {
            None
        }
        fn integral(&self, a: f64, b: f64) -> f64 {
            b - a
        }
    }

    #[test]
    fn missing_derivative_is_reported() {
        let r = euler_maclaurin_sum(&EulerMaclaurinSpec { n_terms: 1, upper: 3, f: &NoDerivatives });
        assert_eq!(r, Err(Error::MissingDerivative(1)));
    }
}
