//! Continued fractions and the Brjuno-type convergence test for `g`.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

/// Denominator cap for expansions of a double: past it the Gauss-map
/// remainder is dominated by rounding.
const Q_CAP: u128 = 1 << 21;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContinuedFraction {
    pub alpha: f64,
    /// `a_1, a_2, ...` (`a_0 = 0`).
    pub partial_quotients: Vec<u64>,
    /// `(p_i, q_i)` for `i = 1..=n`.
    pub convergents: Vec<(u128, u128)>,
    /// True when the expansion ended exactly (rational input).
    pub terminated: bool,
}

impl ContinuedFraction {
    fn empty(alpha: f64) -> Self {
        ContinuedFraction { alpha, partial_quotients: Vec::new(), convergents: Vec::new(), terminated: false }
    }

    /// `(p_{n-1}, q_{n-1})` and `(p_n, q_n)` with `(p_{-1}, q_{-1}) = (1, 0)`,
    /// `(p_0, q_0) = (0, 1)`.
    fn last_two(&self) -> ((u128, u128), (u128, u128)) {
        let n = self.convergents.len();
        let at = |i: usize| match i {
            0 => (1, 0),
            1 => (0, 1),
            _ => self.convergents[i - 2],
        };
        (at(n), at(n + 1))
    }

    /// Appends `a`, returning false (and leaving `self` unchanged) on overflow.
    fn push(&mut self, a: u64) -> bool {
        let ((p2, q2), (p1, q1)) = self.last_two();
        let a = u128::from(a);
        let next = a
            .checked_mul(p1)
            .and_then(|x| x.checked_add(p2))
            .zip(a.checked_mul(q1).and_then(|x| x.checked_add(q2)));
        match next {
            Some(pq) => {
                self.partial_quotients.push(a as u64);
                self.convergents.push(pq);
                true
            }
            None => false,
        }
    }

    /// Expansion of `p/q` by Euclid's algorithm, `0 <= p < q`.
    pub fn from_ratio(p: u64, q: u64) -> Result<Self> {
        if q == 0 || p >= q {
            return domain(format!("from_ratio needs 0 <= p < q, got {p}/{q}"));
        }
        let mut cf = Self::empty(p as f64 / q as f64);
        let (mut num, mut den) = (q, p);
        while den != 0 {
            cf.push(num / den);
            (num, den) = (den, num % den);
        }
        cf.terminated = true;
        Ok(cf)
    }

    /// Builds the expansion `[0; a_1, a_2, ...]`; `next(q_m)` supplies
    /// `a_{m+1}` from the current denominator (`q_0 = 1`). Stops after
    /// `max_terms` quotients, at `None`, or when a convergent would overflow.
    pub fn from_quotient_rule(mut next: impl FnMut(u128) -> Option<u64>, max_terms: usize) -> Self {
        let mut cf = Self::empty(0.0);
        while cf.partial_quotients.len() < max_terms {
            let q = cf.convergents.last().map_or(1, |c| c.1);
            match next(q) {
                Some(a) if a >= 1 && cf.push(a) => {}
                _ => break,
            }
        }
        if let Some(&(p, q)) = cf.convergents.last() {
            cf.alpha = p as f64 / q as f64;
        }
        cf
    }

    pub fn denominators(&self) -> impl Iterator<Item = u128> + '_ {
        self.convergents.iter().map(|c| c.1)
    }
}

/// Partial quotients of `alpha` in `[0, 1)` by the Gauss map.
pub fn cf_expand(alpha: f64, max_terms: usize) -> Result<ContinuedFraction> {
    if !(0.0..1.0).contains(&alpha) {
        return domain(format!("cf_expand needs alpha in [0, 1), got {alpha}"));
    }
    let mut cf = ContinuedFraction::empty(alpha);
    let mut x = alpha;
    while cf.partial_quotients.len() < max_terms {
        if x == 0.0 {
            cf.terminated = true;
            break;
        }
        let y = 1.0 / x;
        if !(y < 1e18) {
            break;
        }
        let a = y.floor();
        let ((_, q2), (_, q1)) = cf.last_two();
        if (a as u128) * q1 + q2 > Q_CAP {
            break;
        }
        cf.push(a as u64);
        x = y - a;
    }
    Ok(cf)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Converges,
    Diverges,
    Undecided,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BrjunoReport {
    /// `Σ_m (-1)^m log q_{m+1} / q_m` over available convergents.
    pub alternating_sum: f64,
    /// `Σ_m log q_{m+1} / q_m`.
    pub brjuno_sum: f64,
    /// The terms `log q_{m+1} / q_m`.
    pub terms: Vec<f64>,
    pub verdict: Verdict,
}

/// Partial sums of the Brjuno-type series and a verdict at the available depth.
///
/// Rational input converges. Three trailing terms at or above 1/2 mean the
/// terms do not vanish: diverges. A geometrically dominated tail (ratio
/// below 0.9) whose bound is under 1e-3 certifies convergence. Otherwise
/// undecided.
pub fn convergence_classifier(cf: &ContinuedFraction) -> Result<BrjunoReport> {
    if cf.convergents.len() < 2 {
        return domain("classifier needs at least 2 convergents");
    }
    let qs: Vec<f64> = cf.denominators().map(|q| q as f64).collect();
    let terms: Vec<f64> = qs.windows(2).map(|w| w[1].ln() / w[0]).collect();
    let mut alternating_sum = 0.0;
    let mut brjuno_sum = 0.0;
    for (i, &t) in terms.iter().enumerate() {
        let m = i + 1;
        alternating_sum += if m % 2 == 0 { t } else { -t };
        brjuno_sum += t;
    }
    let n = terms.len();
    let verdict = if cf.terminated {
        Verdict::Converges
    } else if n >= 3 && terms[n - 3..].iter().all(|&t| t >= 0.5) {
        Verdict::Diverges
    } else if n >= 4 {
        let tail = &terms[n / 2..];
        let rho = tail
            .windows(2)
            .map(|w| if w[0] > 0.0 { w[1] / w[0] } else { f64::INFINITY })
            .fold(0.0, f64::max);
        if rho < 0.9 && terms[n - 1] * rho / (1.0 - rho) < 1e-3 {
            Verdict::Converges
        } else {
            Verdict::Undecided
        }
    } else {
        Verdict::Undecided
    };
    Ok(BrjunoReport { alternating_sum, brjuno_sum, terms, verdict })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_recurrence(cf: &ContinuedFraction) {
        let (mut prev2, mut prev) = ((1u128, 0u128), (0u128, 1u128));
        for (i, (&a, &(p, q))) in cf.partial_quotients.iter().zip(&cf.convergents).enumerate() {
            let n = i + 1;
            assert_eq!(q, u128::from(a) * prev.1 + prev2.1);
            assert_eq!(p, u128::from(a) * prev.0 + prev2.0);
            let det = p as i128 * prev.1 as i128 - prev.0 as i128 * q as i128;
            assert_eq!(det, if n % 2 == 1 { 1 } else { -1 });
            prev2 = prev;
            prev = (p, q);
        }
    }

    #[test]
    fn golden_ratio() {
        let g = (5f64.sqrt() - 1.0) / 2.0;
        let cf = cf_expand(g, 100).unwrap();
        assert!(cf.partial_quotients.len() > 25);
        assert!(cf.partial_quotients.iter().all(|&a| a == 1));
        let mut fib = vec![1u128, 2];
        while fib.len() < cf.convergents.len() {
            fib.push(fib[fib.len() - 1] + fib[fib.len() - 2]);
        }
        assert!(cf.denominators().zip(&fib).all(|(q, &f)| q == f));
        check_recurrence(&cf);
        for (i, &(p, q)) in cf.convergents.iter().enumerate() {
            let d = p as f64 / q as f64 - g;
            assert!(if i % 2 == 0 { d > 0.0 } else { d < 0.0 }, "convergent {i}");
        }
        assert_eq!(convergence_classifier(&cf).unwrap().verdict, Verdict::Converges);
    }

    #[test]
    fn sqrt2() {
        let cf = cf_expand(2f64.sqrt() - 1.0, 100).unwrap();
        assert!(cf.partial_quotients.len() > 10);
        assert!(cf.partial_quotients.iter().all(|&a| a == 2));
        check_recurrence(&cf);
        assert_eq!(convergence_classifier(&cf).unwrap().verdict, Verdict::Converges);
    }

    #[test]
    fn rationals() {
        let cf = cf_expand(1.0 / 3.0, 10).unwrap();
        assert_eq!(cf.partial_quotients, vec![3]);
        assert_eq!(cf.convergents, vec![(1, 3)]);
        assert!(cf.terminated);
        assert!(convergence_classifier(&cf).is_err());
        let cf = ContinuedFraction::from_ratio(5, 13).unwrap();
        assert_eq!(cf.partial_quotients, vec![2, 1, 1, 2]);
        assert_eq!(cf.convergents.last(), Some(&(5, 13)));
        check_recurrence(&cf);
        assert_eq!(convergence_classifier(&cf).unwrap().verdict, Verdict::Converges);
        assert!(cf_expand(1.0, 5).is_err());
    }

    #[test]
    fn liouville_style_diverges() {
        // a_1 = 1, a_{m+1} = 2^{q_m}
        let mut first = true;
        let cf = ContinuedFraction::from_quotient_rule(
            |q| {
                if std::mem::take(&mut first) {
                    Some(1)
                } else if q < 64 {
                    Some(1u64 << q)
                } else {
                    None
                }
            },
            20,
        );
        assert_eq!(cf.partial_quotients, vec![1, 2, 8, 1 << 25]);
        check_recurrence(&cf);
        let rep = convergence_classifier(&cf).unwrap();
        assert!(rep.terms.iter().all(|&t| t >= 0.5), "{:?}", rep.terms);
        assert_eq!(rep.verdict, Verdict::Diverges);
    }

    #[test]
    fn short_generic_expansion_is_undecided() {
        let cf = ContinuedFraction::from_quotient_rule(|_| Some(7), 3);
        assert_eq!(convergence_classifier(&cf).unwrap().verdict, Verdict::Undecided);
    }
}
