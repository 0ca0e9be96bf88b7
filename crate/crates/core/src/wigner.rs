//! Reduced Wigner d-matrix elements and the imaginary-angle series
//! `Δ = d^j_{mm}(2iξ)`, `η`, `Γ` with the ξ-derivatives of `Δ`.
//!
//! `d^j_{m'm}(β) = ⟨j,m'| e^{-iβJ_y} |j,m⟩` with the Condon–Shortley phase.
//! The k-sum alternates in sign and cancels by up to fourteen orders of
//! magnitude at `j = 50, β = π/2`, so it is anchored at its largest term
//! (located in log space) and the remaining terms, generated from exact
//! integer term ratios, are accumulated in double-double precision.

use ndarray::Array2;

use crate::error::{Error, Result};
use crate::numeric::{ln_cosh, log_sum_exp, DoubleDouble, LogFactorials, LogScaled};

/// Relative size below which trailing terms of the d-matrix sum are dropped.
const TAIL_CUTOFF: f64 = 1e-40;

pub(crate) fn check_quantum_numbers(two_j: u32, two_m: i32) -> Result<()> {
    let tj = two_j as i32;
    if two_m.abs() > tj || (tj + two_m) % 2 != 0 {
        Err(Error::QuantumNumber { two_j, two_m })
    } else {
        Ok(())
    }
}

/// Per-angle quantities shared by every element of one d-matrix.
struct HalfAngle {
    cos: f64,
    sin: f64,
    ln_cos: f64,
    ln_sin: f64,
    tan_sq: DoubleDouble,
    cot_sq: DoubleDouble,
}

impl HalfAngle {
    fn new(beta: f64) -> Self {
        let (sin, cos) = (beta / 2.0).sin_cos();
        let s2 = DoubleDouble::from_f64(sin) * DoubleDouble::from_f64(sin);
        let c2 = DoubleDouble::from_f64(cos) * DoubleDouble::from_f64(cos);
        let (tan_sq, cot_sq) = if sin == 0.0 || cos == 0.0 {
            (DoubleDouble::ZERO, DoubleDouble::ZERO)
        } else {
            (s2 / c2, c2 / s2)
        };
        Self {
            cos,
            sin,
            ln_cos: cos.abs().ln(),
            ln_sin: sin.abs().ln(),
            tan_sq,
            cot_sq,
        }
    }
}

/// `p · ln|x|` with `0 · ln 0 = 0`.
fn power_log(power: i64, ln_abs: f64) -> f64 {
    if power == 0 {
        0.0
    } else {
        power as f64 * ln_abs
    }
}

fn d_element(lf: &LogFactorials, two_j: u32, two_mp: i32, two_m: i32, h: &HalfAngle) -> f64 {
    let tj = i64::from(two_j);
    let j_plus_m = (tj + i64::from(two_m)) / 2;
    let j_minus_m = (tj - i64::from(two_m)) / 2;
    let j_plus_mp = (tj + i64::from(two_mp)) / 2;
    let j_minus_mp = (tj - i64::from(two_mp)) / 2;
    let shift = (i64::from(two_mp) - i64::from(two_m)) / 2;

    let k_min = 0.max(-shift);
    let k_max = j_minus_mp.min(j_plus_m);

    let lf = |n: i64| lf.get(n as u32);
    let prefactor = 0.5 * (lf(j_plus_m) + lf(j_minus_m) + lf(j_plus_mp) + lf(j_minus_mp));
    let cos_power = |k: i64| tj - 2 * k - shift;
    let sin_power = |k: i64| 2 * k + shift;
    let log_term = |k: i64| {
        prefactor - lf(k) - lf(j_minus_mp - k) - lf(j_plus_m - k) - lf(shift + k)
            + power_log(cos_power(k), h.ln_cos)
            + power_log(sin_power(k), h.ln_sin)
    };
    let sign_term = |k: i64| {
        let mut s = if (shift + k).rem_euclid(2) == 0 {
            1.0
        } else {
            -1.0
        };
        if h.cos < 0.0 && cos_power(k) % 2 != 0 {
            s = -s;
        }
        if h.sin < 0.0 && sin_power(k) % 2 != 0 {
            s = -s;
        }
        s
    };

    if h.cos == 0.0 || h.sin == 0.0 {
        // only a term with a zero power of the vanishing factor survives,
        // and its factorial ratio is exactly one
        return (k_min..=k_max)
            .find(|&k| (h.cos != 0.0 || cos_power(k) == 0) && (h.sin != 0.0 || sin_power(k) == 0))
            .map_or(0.0, |k| {
                let mag =
                    h.cos.abs().powi(cos_power(k) as i32) * h.sin.abs().powi(sin_power(k) as i32);
                sign_term(k) * mag
            });
    }

    // |t_{k+1}/t_k| decreases in k, so the terms are unimodal.
    let tan_sq = h.tan_sq.to_f64();
    let mut k_peak = k_min;
    while k_peak < k_max {
        let k = k_peak;
        let ratio = ((j_minus_mp - k) * (j_plus_m - k)) as f64 / ((k + 1) * (shift + k + 1)) as f64
            * tan_sq;
        if ratio < 1.0 {
            break;
        }
        k_peak += 1;
    }

    let mut sum = DoubleDouble::ONE;
    let mut rel = DoubleDouble::ONE;
    for k in k_peak..k_max {
        let num = ((j_minus_mp - k) * (j_plus_m - k)) as f64;
        let den = ((k + 1) * (shift + k + 1)) as f64;
        rel = (rel.mul_f64(-num).div_f64(den)) * h.tan_sq;
        sum = sum + rel;
        if rel.hi.abs() < TAIL_CUTOFF {
            break;
        }
    }
    rel = DoubleDouble::ONE;
    for k in (k_min + 1..=k_peak).rev() {
        let num = (k * (shift + k)) as f64;
        let den = ((j_minus_mp - k + 1) * (j_plus_m - k + 1)) as f64;
        rel = (rel.mul_f64(-num).div_f64(den)) * h.cot_sq;
        sum = sum + rel;
        if rel.hi.abs() < TAIL_CUTOFF {
            break;
        }
    }

    sign_term(k_peak) * log_term(k_peak).exp() * sum.to_f64()
}

/// Single element `d^j_{m'm}(β)`.
pub fn wigner_d(two_j: u32, two_mp: i32, two_m: i32, beta: f64) -> Result<f64> {
    check_quantum_numbers(two_j, two_mp)?;
    check_quantum_numbers(two_j, two_m)?;
    let lf = LogFactorials::up_to(two_j);
    Ok(d_element(&lf, two_j, two_mp, two_m, &HalfAngle::new(beta)))
}

/// Column `d^j_{m'm}(β)` for fixed `m`, indexed by ascending `m'`.
pub fn d_column(two_j: u32, two_m: i32, beta: f64) -> Result<Vec<f64>> {
    check_quantum_numbers(two_j, two_m)?;
    let lf = LogFactorials::up_to(two_j);
    let h = HalfAngle::new(beta);
    let tj = two_j as i32;
    Ok((0..=tj)
        .map(|i| d_element(&lf, two_j, 2 * i - tj, two_m, &h))
        .collect())
}

/// Full matrix, rows `m'` and columns `m` both ascending.
pub fn d_matrix(two_j: u32, beta: f64) -> Array2<f64> {
    let lf = LogFactorials::up_to(two_j);
    let h = HalfAngle::new(beta);
    let tj = two_j as i32;
    let dim = two_j as usize + 1;
    Array2::from_shape_fn((dim, dim), |(r, c)| {
        d_element(&lf, two_j, 2 * r as i32 - tj, 2 * c as i32 - tj, &h)
    })
}

/// `Δ`, `η`, `Γ` and the first two ξ-derivatives of `Δ` for one `(j, m, ξ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesBundle {
    pub delta: LogScaled,
    pub eta: LogScaled,
    pub gamma: LogScaled,
    pub d_delta: LogScaled,
    pub d2_delta: LogScaled,
    /// `Γ/Δ`, finite even where `Δ` and `Γ` overflow.
    pub gamma_over_delta: f64,
}

impl SeriesBundle {
    /// `(1/Δ) dΔ/dξ`.
    pub fn d_delta_over_delta(&self) -> f64 {
        self.d_delta.ratio(self.delta)
    }

    /// `(1/Δ) d²Δ/dξ²`.
    pub fn d2_delta_over_delta(&self) -> f64 {
        self.d2_delta.ratio(self.delta)
    }
}

/// `ln Δ` where `Δ = (j+m)!(j−m)! Σ_k cosh^{2j}ξ tanh^{2k}ξ / [(k!)² (j−m−k)! (j+m−k)!]`.
fn log_delta(lf: &LogFactorials, two_j: u32, two_m: i32, xi: f64) -> f64 {
    let jpm = (two_j as i32 + two_m) as u32 / 2;
    let jmm = (two_j as i32 - two_m) as u32 / 2;
    let lead = lf.get(jpm) + lf.get(jmm) + f64::from(two_j) * ln_cosh(xi);
    let ln_tanh = xi.tanh().ln();
    let terms: Vec<f64> = (0..=jpm.min(jmm))
        .map(|k| {
            lead + power_log(2 * i64::from(k), ln_tanh)
                - 2.0 * lf.get(k)
                - lf.get(jmm - k)
                - lf.get(jpm - k)
        })
        .collect();
    log_sum_exp(&terms)
}

/// `ln η`, `η = cosh^{2j}ξ (j+m)!(j−m)! Σ_k tanh^{2k}ξ / [k!(k+1)!(j+m−1−k)!(j−m−1−k)!]`;
/// `-inf` when the k-range is empty (`m = ±j`).
fn log_eta(lf: &LogFactorials, two_j: u32, two_m: i32, xi: f64) -> f64 {
    let jpm = (two_j as i32 + two_m) as u32 / 2;
    let jmm = (two_j as i32 - two_m) as u32 / 2;
    if jpm == 0 || jmm == 0 {
        return f64::NEG_INFINITY;
    }
    let lead = lf.get(jpm) + lf.get(jmm) + f64::from(two_j) * ln_cosh(xi);
    let ln_tanh = xi.tanh().ln();
    let terms: Vec<f64> = (0..=(jpm - 1).min(jmm - 1))
        .map(|k| {
            lead + power_log(2 * i64::from(k), ln_tanh)
                - lf.get(k)
                - lf.get(k + 1)
                - lf.get(jpm - 1 - k)
                - lf.get(jmm - 1 - k)
        })
        .collect();
    log_sum_exp(&terms)
}

/// Evaluates the series bundle. Negative `ξ` uses the evenness of `Δ`, `η`
/// and `Γ`; `dΔ/dξ` is odd and keeps the sign of `ξ`.
pub fn series_bundle(two_j: u32, two_m: i32, xi: f64) -> Result<SeriesBundle> {
    check_quantum_numbers(two_j, two_m)?;
    if !xi.is_finite() {
        return Err(Error::InvalidFieldParameter(xi));
    }
    let j = f64::from(two_j) / 2.0;
    let m = f64::from(two_m) / 2.0;
    let casimir = j * (j + 1.0);

    if xi == 0.0 {
        let eta = j * j - m * m;
        let gamma = 2.0 * j + 2.0 * eta;
        return Ok(SeriesBundle {
            delta: LogScaled::ONE,
            eta: LogScaled::from_real(eta),
            gamma: LogScaled::from_real(gamma),
            d_delta: LogScaled::ZERO,
            d2_delta: LogScaled::from_real(4.0 * casimir - 4.0 * m * m - gamma),
            gamma_over_delta: gamma,
        });
    }

    let a = xi.abs();
    let lf = LogFactorials::up_to(two_j);
    let delta = LogScaled::from_log(log_delta(&lf, two_j, two_m, a));
    let eta = LogScaled::new(1, log_eta(&lf, two_j, two_m, a));
    let ln_cosh_sq = 2.0 * ln_cosh(a);
    let eta_term = LogScaled::new(eta.sign(), eta.log_mag() - ln_cosh_sq);
    let gamma = LogScaled::from_real(2.0 * j) * delta + LogScaled::from_real(2.0) * eta_term;
    let gamma_over_delta = 2.0 * j + 2.0 * eta_term.ratio(delta);

    let tanh = xi.tanh();
    let d_delta = LogScaled::from_real(tanh) * gamma;
    // cosh 2ξ / cosh² ξ = 1 + tanh² ξ
    let sech_sq = (-ln_cosh_sq).exp();
    let second = 4.0 * casimir - 4.0 * m * m * sech_sq - gamma_over_delta * (1.0 + tanh * tanh);
    let d2_delta = LogScaled::from_real(second) * delta;

    Ok(SeriesBundle {
        delta,
        eta,
        gamma,
        d_delta,
        d2_delta,
        gamma_over_delta,
    })
}

/// Relative gap between `Σ_{m'} e^{2ξm'} d^j_{m'm}(π/2)²` and the series `Δ`.
pub fn delta_consistency(two_j: u32, two_m: i32, xi: f64) -> Result<f64> {
    let bundle = series_bundle(two_j, two_m, xi)?;
    let column = d_column(two_j, two_m, std::f64::consts::FRAC_PI_2)?;
    let tj = two_j as i32;
    let logs: Vec<f64> = column
        .iter()
        .enumerate()
        .filter(|(_, d)| **d != 0.0)
        .map(|(i, d)| xi * f64::from(2 * i as i32 - tj) + 2.0 * d.abs().ln())
        .collect();
    let lhs = log_sum_exp(&logs);
    Ok((lhs - bundle.delta.log_mag()).exp_m1().abs())
}
