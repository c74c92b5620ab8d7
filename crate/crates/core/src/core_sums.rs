//! Cotangent sums at rationals.
//!
//! `c0(r/b) = -Σ_{m=1}^{b-1} (m/b) cot(π m r / b)` and its companions:
//! the Vasyunin sum, the floor-weighted sum `Q`, the value of the Estermann
//! function at `s = 0`, and the reciprocity defect.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::arith::gcd;
use crate::error::{domain, Error, Result};
use crate::summation::{dd_mul, DoubleDouble, NeumaierSum, SumValue};

pub use crate::arith::mod_inverse;

/// `r/b` with `1 <= r < b` and `gcd(r, b) = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ReducedFraction {
    r: u64,
    b: u64,
}

impl ReducedFraction {
    pub fn new(r: u64, b: u64) -> Result<Self> {
        if r == 0 || r >= b || gcd(r, b) != 1 {
            return Err(Error::NotReduced { numerator: r, denominator: b });
        }
        Ok(ReducedFraction { r, b })
    }

    pub fn numerator(&self) -> u64 {
        self.r
    }

    pub fn denominator(&self) -> u64 {
        self.b
    }

    /// `r̄` with `r r̄ ≡ 1 (mod b)`.
    pub fn inverse_numerator(&self) -> u64 {
        mod_inverse(self.r, self.b).expect("reduced fractions are invertible")
    }
}

/// Accumulation mode for the cotangent sums.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Precision {
    /// Compensated double accumulation over a cached cotangent table.
    #[default]
    Default,
    /// Double-double accumulation with an independently reduced angle.
    Oracle,
}

/// `cot(π j / b)` for `j = 0..b`, with the `j = 0` slot set to 0.
///
/// Only angles in `(0, π/2]` are evaluated; the rest follow from
/// `cot(π - θ) = -cot θ`, so the table is exactly odd.
#[derive(Debug, Clone)]
pub struct CotTable {
    b: u64,
    values: Vec<f64>,
}

impl CotTable {
    pub fn new(b: u64) -> Result<Self> {
        if b < 2 {
            return domain(format!("cotangent table needs b >= 2, got {b}"));
        }
        let n = b as usize;
        let mut values = vec![0.0; n];
        for j in 1..=n / 2 {
            let v = if 2 * j == n {
                0.0
            } else {
                let theta = PI * (j as f64 / b as f64);
                theta.cos() / theta.sin()
            };
            values[j] = v;
            values[n - j] = -v;
        }
        Ok(CotTable { b, values })
    }

    pub fn modulus(&self) -> u64 {
        self.b
    }

    /// `cot(π j / b)` for a residue `j`.
    #[inline]
    pub fn get(&self, j: u64) -> f64 {
        self.values[(j % self.b) as usize]
    }

    #[inline]
    pub(crate) fn raw(&self) -> &[f64] {
        &self.values
    }
}

/// `cot(π j / b)` through tangent of a reduced angle in `(0, π/4]`.
fn cot_oracle(j: u64, b: u64) -> f64 {
    let j = j % b;
    let (j, sign) = if 2 * j > b { (b - j, -1.0) } else { (j, 1.0) };
    if 2 * j == b {
        return 0.0;
    }
    if 4 * j <= b {
        sign / (PI * j as f64 / b as f64).tan()
    } else {
        // cot θ = tan(π/2 - θ), π/2 - θ = π (b - 2j) / (2b)
        sign * (PI * (b - 2 * j) as f64 / (2 * b) as f64).tan()
    }
}

/// `c0(r/b)` evaluated against an existing table for `b`.
pub fn c0_with_table(table: &CotTable, r: u64) -> SumValue {
    let b = table.b;
    let cot = table.raw();
    let mut acc = NeumaierSum::new();
    let mut res = 0u64;
    for m in 1..b {
        res += r;
        if res >= b {
            res -= b;
        }
        acc.add(m as f64 * cot[res as usize]);
    }
    let v = acc.value();
    let bf = b as f64;
    SumValue { value: -v.value / bf, err_bound: v.err_bound / bf, terms: v.terms }
}

pub fn c0(f: ReducedFraction) -> SumValue {
    c0_with(f, Precision::Default)
}

pub fn c0_with(f: ReducedFraction, precision: Precision) -> SumValue {
    match precision {
        Precision::Default => {
            let table = CotTable::new(f.b).expect("b >= 2");
            c0_with_table(&table, f.r % f.b)
        }
        Precision::Oracle => {
            let (r, b) = (f.r, f.b);
            let mut acc = DoubleDouble::ZERO;
            let mut max_abs = 0.0f64;
            for m in 1..b {
                let term = dd_mul(m as f64, cot_oracle(m * r % b, b));
                max_abs = max_abs.max(term.hi.abs());
                acc = acc.add(term);
            }
            let v = acc.div_f64(b as f64).neg();
            SumValue {
                value: v.to_f64(),
                err_bound: (b - 1) as f64 * f64::EPSILON * f64::EPSILON * max_abs / b as f64
                    + f64::EPSILON * v.hi.abs(),
                terms: b - 1,
            }
        }
    }
}

/// Vasyunin sum `V(r/b) = Σ_{m=1}^{b-1} {m r / b} cot(π m / b)`.
///
/// Satisfies `V(r/b) = -c0(r̄/b)`.
pub fn vasyunin(f: ReducedFraction) -> SumValue {
    let table = CotTable::new(f.b).expect("b >= 2");
    vasyunin_with_table(&table, f.r)
}

/// Vasyunin sum against an existing table for `b`.
pub fn vasyunin_with_table(table: &CotTable, r: u64) -> SumValue {
    let b = table.b;
    let cot = table.raw();
    let mut acc = NeumaierSum::new();
    let mut res = 0u64;
    for m in 1..b {
        res += r;
        if res >= b {
            res -= b;
        }
        acc.add(res as f64 * cot[m as usize]);
    }
    let v = acc.value();
    let bf = b as f64;
    SumValue { value: v.value / bf, err_bound: v.err_bound / bf, terms: v.terms }
}

/// `Q(r/b) = Σ_{m=1}^{b-1} cot(π m r / b) ⌊r m / b⌋` against a table for `b`.
pub fn q_sum_with_table(table: &CotTable, r: u64) -> SumValue {
    let b = table.b;
    let cot = table.raw();
    let mut acc = NeumaierSum::new();
    let (mut res, mut fl) = (0u64, 0u64);
    for _ in 1..b {
        res += r;
        while res >= b {
            res -= b;
            fl += 1;
        }
        acc.add(fl as f64 * cot[res as usize]);
    }
    acc.value()
}

pub fn q_sum(f: ReducedFraction) -> SumValue {
    let table = CotTable::new(f.b).expect("b >= 2");
    q_sum_with_table(&table, f.r)
}

/// Value of the Estermann function `E(0, r/b, 0) = 1/4 + (i/2) c0(r/b)`.
pub fn estermann_at_zero(f: ReducedFraction) -> Complex64 {
    Complex64::new(0.25, 0.5 * c0(f).value)
}

/// Residual of the fractional-part identity
///
/// `{n a / b} = 1/2 - (1/2b) Σ_{m=1}^{b-1} cot(π m r / b) sin(2π m n r a / b)`
///
/// for `gcd(r, b) = 1` and `b ∤ n a`. Returns `|lhs - rhs|`.
pub fn fractional_identity_check(a: u64, n: u64, r: u64, b: u64) -> Result<f64> {
    if b < 2 || gcd(r % b, b) != 1 || r % b == 0 {
        return Err(Error::NotReduced { numerator: r, denominator: b });
    }
    let na = (n % b) * (a % b) % b;
    if na == 0 {
        return domain(format!("b = {b} divides n a = {n}·{a}"));
    }
    let table = CotTable::new(b)?;
    let cot = table.raw();
    let r = r % b;
    let step = na * r % b;
    let mut acc = NeumaierSum::new();
    let (mut rc, mut rs) = (0u64, 0u64);
    for _ in 1..b {
        rc = (rc + r) % b;
        rs = (rs + step) % b;
        acc.add(cot[rc as usize] * (2.0 * PI * rs as f64 / b as f64).sin());
    }
    let rhs = 0.5 - acc.sum() / (2.0 * b as f64);
    let lhs = na as f64 / b as f64;
    Ok((lhs - rhs).abs())
}

/// `c0(r/b) + (b/r) c0(b̃/r) - 1/(π r)` with `b̃ = b mod r`.
pub fn reciprocity_defect(f: ReducedFraction) -> Result<f64> {
    let (r, b) = (f.r, f.b);
    if r < 2 {
        return domain("reciprocity defect needs r >= 2");
    }
    let inner = ReducedFraction::new(b % r, r)?;
    Ok(c0(f).value + (b as f64 / r as f64) * c0(inner).value - 1.0 / (PI * r as f64))
}
