//! Distribution function of `f(·; m1)` and its even moments.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::{f_eval_levels, f_eval_many, TruncatedGSeries};
use crate::error::{domain, Result};
use crate::summation::NeumaierSum;

const GOLDEN: f64 = 0.618_033_988_749_894_9;

/// Right-continuous step CDF of a finite sample.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmpiricalCdf {
    sorted: Vec<f64>,
}

impl EmpiricalCdf {
    pub fn new(mut values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return domain("empirical CDF needs at least one sample");
        }
        if values.iter().any(|v| v.is_nan()) {
            return domain("empirical CDF samples must not be NaN");
        }
        values.sort_by(f64::total_cmp);
        Ok(EmpiricalCdf { sorted: values })
    }

    pub fn len(&self) -> usize {
        self.sorted.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sorted.is_empty()
    }

    pub fn samples(&self) -> &[f64] {
        &self.sorted
    }

    pub fn bounds(&self) -> (f64, f64) {
        (self.sorted[0], self.sorted[self.sorted.len() - 1])
    }

    /// `#{x_i <= z} / n`.
    pub fn eval(&self, z: f64) -> f64 {
        self.sorted.partition_point(|&v| v <= z) as f64 / self.sorted.len() as f64
    }

    /// `#{x_i < z} / n`.
    pub fn eval_left(&self, z: f64) -> f64 {
        self.sorted.partition_point(|&v| v < z) as f64 / self.sorted.len() as f64
    }

    pub fn median(&self) -> f64 {
        let n = self.sorted.len();
        if n % 2 == 1 {
            self.sorted[n / 2]
        } else {
            0.5 * (self.sorted[n / 2 - 1] + self.sorted[n / 2])
        }
    }

    /// Largest single jump, i.e. the biggest atom of the sample.
    pub fn max_jump(&self) -> f64 {
        let mut best = 0usize;
        let mut i = 0;
        while i < self.sorted.len() {
            let j = self.sorted.partition_point(|&v| v <= self.sorted[i]);
            best = best.max(j - i);
            i = j;
        }
        best as f64 / self.sorted.len() as f64
    }

    /// `sup_z F(z + h) - F(z)`: mass of the heaviest window of width `h`.
    pub fn max_increment(&self, h: f64) -> f64 {
        let s = &self.sorted;
        let mut best = 0usize;
        let mut hi = 0usize;
        for lo in 0..s.len() {
            while hi < s.len() && s[hi] <= s[lo] + h {
                hi += 1;
            }
            best = best.max(hi - lo);
        }
        best as f64 / s.len() as f64
    }

    /// CDF of `factor · X` for `factor > 0`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        if !(factor > 0.0) {
            return domain("scale factor must be positive");
        }
        Ok(EmpiricalCdf { sorted: self.sorted.iter().map(|v| v * factor).collect() })
    }

    /// Kolmogorov–Smirnov distance `sup_z |F(z) - G(z)|`.
    pub fn ks_distance(&self, other: &EmpiricalCdf) -> f64 {
        let (a, b) = (&self.sorted, &other.sorted);
        let (na, nb) = (a.len() as f64, b.len() as f64);
        let (mut i, mut j) = (0usize, 0usize);
        let mut d: f64 = 0.0;
        while i < a.len() || j < b.len() {
            let z = match (a.get(i), b.get(j)) {
                (Some(&x), Some(&y)) => x.min(y),
                (Some(&x), None) => x,
                (None, Some(&y)) => y,
                (None, None) => unreachable!(),
            };
            while i < a.len() && a[i] <= z {
                i += 1;
            }
            while j < b.len() && b[j] <= z {
                j += 1;
            }
            d = d.max((i as f64 / na - j as f64 / nb).abs());
        }
        d
    }
}

/// `frac((i + 1/2) φ)` for `i < n`, `φ = (√5 - 1)/2`.
pub fn kronecker_points(n: usize) -> Vec<f64> {
    (0..n).map(|i| ((i as f64 + 0.5) * GOLDEN).fract()).collect()
}

/// Sample CDF of `f(α_i; m1)` over a golden-ratio Kronecker sequence.
pub fn empirical_f(t: TruncatedGSeries, samples: usize) -> Result<EmpiricalCdf> {
    if samples < 1000 {
        return domain(format!("empirical_F needs at least 1000 samples, got {samples}"));
    }
    EmpiricalCdf::new(f_eval_many(&kronecker_points(samples), t))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MomentEntry {
    pub k: u32,
    /// `∫ (f/π)^{2k}`.
    pub h: f64,
    /// `∫ f^{2k}`.
    pub d: f64,
    /// Error estimate for `h` from truncation and grid refinement.
    pub err: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentTable {
    pub m1: u32,
    pub grid: usize,
    /// Entries for `k = 0..=k_max`.
    pub entries: Vec<MomentEntry>,
}

impl MomentTable {
    pub fn get(&self, k: u32) -> Option<&MomentEntry> {
        self.entries.get(k as usize)
    }

    pub fn h(&self, k: u32) -> Option<f64> {
        self.get(k).map(|e| e.h)
    }
}

fn power_means(vals: &[f64], k_max: u32, scale: f64, stride: usize) -> Vec<f64> {
    let mut acc = vec![NeumaierSum::new(); k_max as usize + 1];
    let mut count = 0usize;
    for v in vals.iter().step_by(stride) {
        let x2 = (v * scale) * (v * scale);
        let mut p = 1.0;
        for a in acc.iter_mut() {
            a.add(p);
            p *= x2;
        }
        count += 1;
    }
    acc.iter().map(|a| a.sum() / count as f64).collect()
}

/// Even moments `H_k = ∫ (f/π)^{2k}` and `D_{2k} = ∫ f^{2k}` for `k <= k_max`.
///
/// Midpoint rule with nodes `(j + φ)/grid`. The estimate is Richardson
/// extrapolated from truncations `m1 - 2` and `m1` (error taken as `∝ 2^{-m1}`);
/// the error combines the size of that correction, its drift from the
/// `m1 - 4, m1 - 2` pair, and the change from halving the grid.
pub fn hk_table(k_max: u32, t: TruncatedGSeries, grid: usize) -> Result<MomentTable> {
    if k_max < 1 {
        return domain("hk_table needs k_max >= 1");
    }
    if grid < 1000 {
        return domain(format!("hk_table needs grid >= 1000, got {grid}"));
    }
    let m1 = t.m1();
    let levels: Vec<u32> = [m1.saturating_sub(4), m1.saturating_sub(2), m1]
        .into_iter()
        .filter(|&m| m >= 1)
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .collect();
    let grid = grid + grid % 2;
    let nodes: Vec<f64> = (0..grid).map(|j| (j as f64 + GOLDEN) / grid as f64).collect();
    let vals = f_eval_levels(&nodes, &levels)?;
    let inv_pi = 1.0 / PI;
    let h_lv: Vec<Vec<f64>> = vals.iter().map(|v| power_means(v, k_max, inv_pi, 1)).collect();
    let d_lv: Vec<Vec<f64>> = vals.iter().map(|v| power_means(v, k_max, 1.0, 1)).collect();
    let coarse = power_means(&vals[vals.len() - 1], k_max, inv_pi, 2);
    let top = levels.len() - 1;
    let rich = |lv: &[Vec<f64>], i: usize, k: usize| -> f64 {
        if i == 0 {
            lv[0][k]
        } else {
            lv[i][k] + (lv[i][k] - lv[i - 1][k]) / 3.0
        }
    };
    let entries = (0..=k_max as usize)
        .map(|k| {
            let h = rich(&h_lv, top, k);
            let d = rich(&d_lv, top, k);
            let corr = (h - h_lv[top][k]).abs();
            let drift = if top >= 1 { (h - rich(&h_lv, top - 1, k)).abs() } else { 0.0 };
            let grid_err = (h_lv[top][k] - coarse[k]).abs();
            MomentEntry { k: k as u32, h, d, err: corr.max(drift) + grid_err }
        })
        .collect();
    Ok(MomentTable { m1, grid, entries })
}

/// `∫ f^{2k-1}` for `k = 1..=k_max` on the symmetric dyadic grid
/// `(2j + 1)/(2N)`, summed in mirror pairs.
pub fn odd_moments(k_max: u32, t: TruncatedGSeries, grid_log2: u32) -> Result<Vec<f64>> {
    if grid_log2 < 2 || grid_log2 > 30 {
        return domain("grid_log2 must lie in 2..=30");
    }
    let n = 1usize << grid_log2;
    let nodes: Vec<f64> = (0..n).map(|j| (2 * j + 1) as f64 / (2 * n) as f64).collect();
    let vals = f_eval_many(&nodes, t);
    let mut out = Vec::with_capacity(k_max as usize);
    for k in 1..=k_max as i32 {
        let mut acc = NeumaierSum::new();
        for j in 0..n / 2 {
            acc.add(vals[j].powi(2 * k - 1) + vals[n - 1 - j].powi(2 * k - 1));
        }
        out.push(acc.sum() / n as f64);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GrowthReport {
    /// `H_k^{1/k}` for `k = 1..=k_max`.
    pub roots: Vec<f64>,
    pub strictly_increasing: bool,
    /// Whether `H_{k+1}/H_k` increases (log-convexity).
    pub ratios_increasing: bool,
}

pub fn hk_growth_check(table: &MomentTable) -> Result<GrowthReport> {
    let hs: Vec<f64> = table.entries.iter().filter(|e| e.k >= 1).map(|e| e.h).collect();
    if hs.len() < 2 {
        return domain("growth check needs H_1 and H_2");
    }
    let roots: Vec<f64> = hs.iter().enumerate().map(|(i, h)| h.powf(1.0 / (i + 1) as f64)).collect();
    let strictly_increasing = roots.windows(2).all(|w| w[1] > w[0]);
    let ratios: Vec<f64> = table.entries.windows(2).map(|w| w[1].h / w[0].h).collect();
    let ratios_increasing = ratios.windows(2).all(|w| w[1] > w[0]);
    Ok(GrowthReport { roots, strictly_increasing, ratios_increasing })
}
