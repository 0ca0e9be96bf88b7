//! The squeezed-vacuum-driven state `|Ψ_m⟩ = A_m e^{ξJ_z} e^{-iπJ_y/2} |j,m⟩`.
//!
//! Two routes lead to the same report. The closed forms express every moment
//! through `Γ/Δ` and need `O(j)` work per point. The dense route builds the
//! amplitudes and hands them to [`entangle::analyze`].

use ndarray::Array1;
use num_complex::Complex64 as C64;

use crate::entangle::{self, frame_angles, EntanglementReport, FRAME_EPSILON};
use crate::error::{Error, Result};
use crate::numeric::{log_sum_exp, LogScaled};
use crate::spin::{make_sector, CollectiveState, MomentTable, SpinComponents, SpinSector};
use crate::wigner::{self, series_bundle, SeriesBundle};

/// `(N, m, ξ)` with `|m| ≤ N/2`, `2m ≡ N (mod 2)` and `ξ ≥ 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqueezedVacuumParams {
    n_atoms: u32,
    two_m: i32,
    xi: f64,
}

impl SqueezedVacuumParams {
    pub fn new(n_atoms: u32, two_m: i32, xi: f64) -> Result<Self> {
        let sector = make_sector(n_atoms)?;
        sector.check_two_m(two_m)?;
        if !(xi >= 0.0) || !xi.is_finite() {
            return Err(Error::InvalidFieldParameter(xi));
        }
        Ok(Self { n_atoms, two_m, xi })
    }

    pub fn n_atoms(&self) -> u32 {
        self.n_atoms
    }

    pub fn two_m(&self) -> i32 {
        self.two_m
    }

    pub fn xi(&self) -> f64 {
        self.xi
    }

    pub fn j(&self) -> f64 {
        f64::from(self.n_atoms) / 2.0
    }

    pub fn m(&self) -> f64 {
        f64::from(self.two_m) / 2.0
    }

    pub fn sector(&self) -> SpinSector {
        make_sector(self.n_atoms).expect("validated on construction")
    }

    /// The same point with `m → −m`.
    pub fn mirrored(&self) -> Self {
        Self {
            two_m: -self.two_m,
            ..*self
        }
    }

    fn series(&self) -> SeriesBundle {
        series_bundle(self.n_atoms, self.two_m, self.xi).expect("validated on construction")
    }
}

/// Signed log-amplitudes `ξm' + ln|d^j_{m'm}(π/2)|` before normalization.
fn raw_log_amplitudes(params: &SqueezedVacuumParams) -> Vec<LogScaled> {
    let column = wigner::d_column(params.n_atoms, params.two_m, std::f64::consts::FRAC_PI_2)
        .expect("validated on construction");
    let sector = params.sector();
    column
        .iter()
        .enumerate()
        .map(|(i, d)| {
            let m_prime = f64::from(sector.two_m_at(i)) / 2.0;
            let d = LogScaled::from_real(*d);
            LogScaled::new(d.sign(), d.log_mag() + params.xi * m_prime)
        })
        .collect()
}

/// `A_m^{-2} = Σ_{m'} e^{2ξm'} d^j_{m'm}(π/2)²`, summed from the amplitudes.
pub fn inverse_norm_sq(params: &SqueezedVacuumParams) -> LogScaled {
    let logs: Vec<f64> = raw_log_amplitudes(params)
        .iter()
        .map(|a| 2.0 * a.log_mag())
        .collect();
    LogScaled::from_log(log_sum_exp(&logs))
}

/// Dense amplitudes of `|Ψ_m⟩`, normalized explicitly.
pub fn build_state(params: &SqueezedVacuumParams) -> CollectiveState {
    let raw = raw_log_amplitudes(params);
    let logs: Vec<f64> = raw.iter().map(|a| 2.0 * a.log_mag()).collect();
    let half_log_norm = 0.5 * log_sum_exp(&logs);
    let amplitudes: Array1<C64> = raw
        .iter()
        .map(|a| {
            let v = LogScaled::new(a.sign(), a.log_mag() - half_log_norm).to_real();
            C64::new(v, 0.0)
        })
        .collect();
    CollectiveState::normalized(params.sector(), amplitudes).expect("nonzero amplitudes")
}

/// Moments of `|Ψ_m⟩` from the series alone.
pub fn closed_form_moments(params: &SqueezedVacuumParams) -> MomentTable {
    moments_from_series(params, &params.series())
}

fn moments_from_series(params: &SqueezedVacuumParams, s: &SeriesBundle) -> MomentTable {
    let (j, m, xi) = (params.j(), params.m(), params.xi);
    let ratio = s.gamma_over_delta;
    let cosh = xi.cosh();
    let tanh = xi.tanh();
    let jx = m / cosh;
    let jz = 0.5 * tanh * ratio;
    // ⟨J_z²⟩ = (1/4Δ) d²Δ/dξ², with cosh 2ξ / cosh² ξ = 1 + tanh² ξ
    let jz2 = j * (j + 1.0) - m * m / (cosh * cosh) - 0.25 * ratio * (1.0 + tanh * tanh);
    MomentTable {
        jx,
        jy: 0.0,
        jz,
        jx2: jx * jx + 0.25 * tanh * tanh * ratio,
        // coth ξ · dΔ/dξ / 4Δ = Γ/4Δ, which also covers ξ = 0
        jy2: 0.25 * ratio,
        jz2,
        xy_sym: 0.0,
        xz_sym: 2.0 * jx * jz - m * xi.sinh() / (cosh * cosh),
        yz_sym: 0.0,
    }
}

/// `|⟨J⟩| = [m²/cosh²ξ + (tanh²ξ/4)(Γ/Δ)²]^{1/2}`.
fn mean_spin_magnitude(m: f64, xi: f64, ratio: f64) -> f64 {
    let jx = m / xi.cosh();
    let jz = 0.5 * xi.tanh() * ratio;
    jx.hypot(jz)
}

/// Angle `θ₁` of the mean spin in the `z–x` plane, `tan θ₁ = ⟨J_x⟩/⟨J_z⟩`.
pub fn theta_one(params: &SqueezedVacuumParams) -> f64 {
    let s = params.series();
    let jx = params.m() / params.xi.cosh();
    let jz = 0.5 * params.xi.tanh() * s.gamma_over_delta;
    jx.atan2(jz)
}

/// Report from the series only: `ΔJ_y'² = Γ/4Δ` and the three-term
/// expression for `ΔJ_x'²`.
pub fn closed_form_report(params: &SqueezedVacuumParams) -> Result<EntanglementReport> {
    let s = params.series();
    let (j, m, xi) = (params.j(), params.m(), params.xi);
    let ratio = s.gamma_over_delta;
    let mag = mean_spin_magnitude(m, xi, ratio);
    if !(mag > FRAME_EPSILON) {
        return Err(Error::DegenerateFrame { magnitude: mag });
    }
    let cosh_sq = xi.cosh().powi(2);
    let tanh_sq = xi.tanh().powi(2);
    let m_sq = m * m;

    let var_yp = 0.25 * ratio;
    let numerator = (tanh_sq / 4.0).powi(2) * ratio.powi(3) + j * (j + 1.0) * m_sq / cosh_sq
        - m_sq / (4.0 * cosh_sq * cosh_sq) * ratio;
    let var_xp = numerator / (mag * mag) - m_sq / cosh_sq;

    let mean = [m / xi.cosh(), 0.0, 0.5 * xi.tanh() * ratio];
    let angles = frame_angles(mean)?;
    entangle::finish_report(var_xp, var_yp, mag, angles, params.n_atoms)
}

/// Report through the dense pipeline.
pub fn oracle_report(params: &SqueezedVacuumParams) -> Result<EntanglementReport> {
    entangle::analyze(&build_state(params))
}

/// `‖(J_x cosh ξ + i J_y sinh ξ)|Ψ_m⟩ − m|Ψ_m⟩‖`, zero analytically.
pub fn lambda_residual(params: &SqueezedVacuumParams) -> f64 {
    let state = build_state(params);
    let ops = SpinComponents::new(state.sector());
    let psi = state.amplitudes();
    let ux = ops.jx.matrix().dot(psi);
    let uy = ops.jy.matrix().dot(psi);
    let (c, s) = (params.xi.cosh(), params.xi.sinh());
    let m = params.m();
    let i_sinh = C64::new(0.0, s);
    ux.iter()
        .zip(uy.iter())
        .zip(psi.iter())
        .map(|((x, y), p)| (x * c + y * i_sinh - p * m).norm_sqr())
        .sum::<f64>()
        .sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entangle::analyze;
    use crate::spin::{moments, rotate_y};

    fn p(n: u32, two_m: i32, xi: f64) -> SqueezedVacuumParams {
        SqueezedVacuumParams::new(n, two_m, xi).unwrap()
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(1e-10)
    }

    #[test]
    fn params_are_validated() {
        assert!(SqueezedVacuumParams::new(100, 21, 0.1).is_err());
        assert!(SqueezedVacuumParams::new(100, 102, 0.1).is_err());
        assert!(SqueezedVacuumParams::new(100, 20, -0.1).is_err());
        assert!(SqueezedVacuumParams::new(100, 20, f64::NAN).is_err());
        assert!(SqueezedVacuumParams::new(0, 0, 0.1).is_err());
        assert!(SqueezedVacuumParams::new(51, -51, 0.0).is_ok());
    }

    #[test]
    fn zero_field_state_is_rotated_dicke_state() {
        let params = p(40, 8, 0.0);
        let built = build_state(&params);
        let dicke = CollectiveState::dicke(params.sector(), 8).unwrap();
        let rotated = rotate_y(&dicke, std::f64::consts::FRAC_PI_2);
        let overlap = built.inner(&rotated);
        assert!((overlap.re - 1.0).abs() < 1e-12 && overlap.im.abs() < 1e-12);
    }

    #[test]
    fn state_is_normalized_and_matches_delta() {
        let params = p(100, 20, 3.0);
        assert!((build_state(&params).norm_sq() - 1.0).abs() < 1e-12);
        for xi in [0.0, 0.4, 3.0] {
            let params = p(100, 20, xi);
            let from_amps = inverse_norm_sq(&params);
            let delta = params.series().delta;
            assert!((from_amps.ratio(delta) - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn closed_form_moment_examples() {
        let mom = closed_form_moments(&p(100, 20, 1.0));
        assert!((mom.jx - 10.0 / 1f64.cosh()).abs() < 1e-14);
        assert!((mom.jx - 6.480_542_736_638_855).abs() < 1e-12);
        assert_eq!((mom.jy, mom.xy_sym, mom.yz_sym), (0.0, 0.0, 0.0));
        assert_eq!(closed_form_moments(&p(100, 20, 0.0)).jz, 0.0);
        let dense = moments(&build_state(&p(100, 20, 0.0)));
        assert!((dense.jx - 10.0).abs() < 1e-10);
    }

    #[test]
    fn closed_form_casimir() {
        for xi in [0.0, 0.05, 1.0, 3.0] {
            let mom = closed_form_moments(&p(30, -6, xi));
            assert!((mom.casimir() - 15.0 * 16.0).abs() < 1e-9);
        }
    }

    #[test]
    fn closed_form_moments_match_dense() {
        for (n, two_m, xi) in [(4, 2, 0.7), (10, 0, 0.5), (51, 13, 1.0), (100, 20, 2.0)] {
            let params = p(n, two_m, xi);
            let a = closed_form_moments(&params);
            let b = moments(&build_state(&params));
            let pairs = [
                (a.jx, b.jx),
                (a.jz, b.jz),
                (a.jx2, b.jx2),
                (a.jy2, b.jy2),
                (a.jz2, b.jz2),
                (a.xz_sym, b.xz_sym),
            ];
            for (x, y) in pairs {
                assert!(
                    (x - y).abs() <= 1e-8 * y.abs().max(1e-2),
                    "{params:?}: {x} vs {y}"
                );
            }
            assert!(b.jy.abs() < 1e-10 && b.xy_sym.abs() < 1e-10 && b.yz_sym.abs() < 1e-10);
        }
    }

    #[test]
    fn closed_form_report_examples() {
        let r = closed_form_report(&p(100, 20, 0.0)).unwrap();
        assert!((r.var_xp - 1225.0).abs() < 1e-9 && (r.var_yp - 1225.0).abs() < 1e-9);
        assert!(rel(r.e_param, 1_440_000.0) < 1e-12);
        let r = closed_form_report(&p(100, 80, 0.2)).unwrap();
        assert!((r.e_param - 1470.5).abs() / 1470.5 < 5e-3);
        for xi in [0.0, 0.1, 1.0, 3.0] {
            for two_m in [100, -100] {
                let r = closed_form_report(&p(100, two_m, xi)).unwrap();
                assert!((r.var_xp - 25.0).abs() < 1e-9, "{xi}: {}", r.var_xp);
                assert!((r.var_yp - 25.0).abs() < 1e-9);
                assert!(r.e_param < 1e-12);
            }
        }
    }

    #[test]
    fn degenerate_point_is_rejected() {
        assert!(matches!(
            closed_form_report(&p(100, 0, 0.0)),
            Err(Error::DegenerateFrame { .. })
        ));
        assert!(matches!(
            oracle_report(&p(100, 0, 0.0)),
            Err(Error::DegenerateFrame { .. })
        ));
        // m = 0 is fine once ξ > 0: the mean spin points along z
        let r = closed_form_report(&p(100, 0, 0.5)).unwrap();
        assert!(r.angles.theta.abs() < 1e-15);
    }

    #[test]
    fn theta_one_matches_frame_theta() {
        for (two_m, xi) in [(20, 0.3), (80, 1.5), (2, 0.01), (-20, 0.3)] {
            let params = p(100, two_m, xi);
            let r = closed_form_report(&params).unwrap();
            let t1 = theta_one(&params);
            if two_m >= 0 {
                assert!((t1 - r.angles.theta).abs() < 1e-10);
                assert_eq!(r.angles.phi, 0.0);
            } else {
                // mean spin in the −x half plane: φ = π, θ₁ = −θ
                assert!((t1 + r.angles.theta).abs() < 1e-10);
                assert!((r.angles.phi - std::f64::consts::PI).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn dense_and_closed_form_reports_agree() {
        let params = p(100, 20, 0.1);
        let a = closed_form_report(&params).unwrap();
        let b = analyze(&build_state(&params)).unwrap();
        assert!(rel(a.var_xp, b.var_xp) < 1e-8);
        assert!(rel(a.var_yp, b.var_yp) < 1e-8);
        assert!(rel(a.e_param, b.e_param) < 1e-8);
        assert!(rel(a.mean_spin_mag, b.mean_spin_mag) < 1e-8);
    }

    #[test]
    fn lambda_eigenrelation() {
        assert!(lambda_residual(&p(100, 20, 1.0)) < 1e-8);
        assert!(lambda_residual(&p(2, 2, 0.5)) < 1e-12);
        assert!(lambda_residual(&p(2, 0, 0.5)) < 1e-12);
        assert!(lambda_residual(&p(30, 4, 0.0)) < 1e-10);
    }
}
