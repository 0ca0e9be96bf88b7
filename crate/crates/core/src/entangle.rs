//! Rotated-frame variances, the correlation terms and the entanglement
//! parameter `E` for any state described by its [`MomentTable`].

use crate::error::{Error, Result};
use crate::spin::{moments, CollectiveState, MomentTable};

/// Mean-spin magnitude below which the rotated frame is undefined.
pub const FRAME_EPSILON: f64 = 1e-10;

/// Polar angle `θ` of the mean spin from `z` and its azimuth `φ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameAngles {
    pub theta: f64,
    pub phi: f64,
}

impl FrameAngles {
    /// Unit vectors of `x'`, `y'`, `z'` in the original frame.
    pub fn axes(&self) -> [[f64; 3]; 3] {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        [
            [ct * cp, ct * sp, -st],
            [-sp, cp, 0.0],
            [st * cp, st * sp, ct],
        ]
    }

    /// `(⟨J_x'⟩, ⟨J_y'⟩, ⟨J_z'⟩)` for a mean spin vector.
    pub fn rotate(&self, v: [f64; 3]) -> [f64; 3] {
        self.axes().map(|a| a[0] * v[0] + a[1] * v[1] + a[2] * v[2])
    }
}

/// Everything computed for one state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntanglementReport {
    pub var_xp: f64,
    pub var_yp: f64,
    pub corr_x: f64,
    pub corr_y: f64,
    pub e_param: f64,
    pub xi_rx: f64,
    pub xi_ry: f64,
    pub mean_spin_mag: f64,
    pub angles: FrameAngles,
    pub n_atoms: u32,
}

impl EntanglementReport {
    /// `E` through the Ramsey parameters; equals `e_param` algebraically.
    pub fn e_via_ramsey(&self) -> f64 {
        e_from_ramsey(
            self.xi_rx,
            self.xi_ry,
            self.mean_spin_mag,
            self.n_atoms,
            self.n_atoms,
        )
    }

    /// `√(var_x' var_y') − |⟨J_z'⟩|/2`, nonnegative for every state.
    pub fn uncertainty_margin(&self) -> f64 {
        (self.var_xp * self.var_yp).sqrt() - self.mean_spin_mag / 2.0
    }

    /// Whether `ΔJ_x' ΔJ_y' ≥ N/4` holds. This is stronger than the
    /// Robertson bound and fails for some states.
    pub fn satisfies_n_over_4_bound(&self) -> bool {
        (self.var_xp * self.var_yp).sqrt() >= f64::from(self.n_atoms) / 4.0
    }

    /// A frame variance below `N/4` means spin squeezing.
    pub fn is_spin_squeezed(&self) -> bool {
        let css = f64::from(self.n_atoms) / 4.0;
        self.var_xp < css || self.var_yp < css
    }
}

pub fn mean_spin(mom: &MomentTable) -> [f64; 3] {
    [mom.jx, mom.jy, mom.jz]
}

/// Frame with `z'` along `mean`. `θ ∈ [0, π]`; `φ = atan2(⟨J_y⟩, ⟨J_x⟩)`, or
/// 0 when the mean spin lies on the `z` axis.
pub fn frame_angles(mean: [f64; 3]) -> Result<FrameAngles> {
    let [x, y, z] = mean;
    let transverse = x.hypot(y);
    let magnitude = transverse.hypot(z);
    if !(magnitude > FRAME_EPSILON) {
        return Err(Error::DegenerateFrame { magnitude });
    }
    let theta = transverse.atan2(z);
    let phi = if transverse < FRAME_EPSILON {
        0.0
    } else {
        y.atan2(x)
    };
    Ok(FrameAngles { theta, phi })
}

/// `(ΔJ_x'², ΔJ_y'²)` as quadratic forms in the covariances.
pub fn rotated_variances(mom: &MomentTable, angles: FrameAngles) -> (f64, f64) {
    let (st, ct) = angles.theta.sin_cos();
    let (sp, cp) = angles.phi.sin_cos();
    let vx = mom.var_x();
    let vy = mom.var_y();
    let vz = mom.var_z();
    let cxy = mom.xy_sym - 2.0 * mom.jx * mom.jy;
    let cxz = mom.xz_sym - 2.0 * mom.jx * mom.jz;
    let cyz = mom.yz_sym - 2.0 * mom.jy * mom.jz;

    let var_xp =
        vx * ct * ct * cp * cp + vy * ct * ct * sp * sp + vz * st * st + cxy * ct * ct * sp * cp
            - cxz * st * ct * cp
            - cyz * st * ct * sp;
    let var_yp = vx * sp * sp + vy * cp * cp - cxy * sp * cp;
    (var_xp, var_yp)
}

/// Deviations from the coherent-state level `N/4`.
pub fn corr_terms(var_xp: f64, var_yp: f64, n_atoms: u32) -> (f64, f64) {
    let css = f64::from(n_atoms) / 4.0;
    (var_xp - css, var_yp - css)
}

/// `E = (CORRX² + CORRY²)/2`.
pub fn entanglement_e(corr_x: f64, corr_y: f64) -> f64 {
    0.5 * (corr_x * corr_x + corr_y * corr_y)
}

/// The same `E` expanded in the variances:
/// `½[V_x(V_x − N/2) + V_y(V_y − N/2) + N²/8]`.
pub fn entanglement_e_from_variances(var_xp: f64, var_yp: f64, n_atoms: u32) -> f64 {
    let n = f64::from(n_atoms);
    0.5 * (var_xp * (var_xp - n / 2.0) + var_yp * (var_yp - n / 2.0) + n * n / 8.0)
}

/// Ramsey squeezing parameters `ξ_R = √(2j) ΔJ' / |⟨J⟩|`.
pub fn ramsey_parameters(
    var_xp: f64,
    var_yp: f64,
    mean_spin_mag: f64,
    two_j: u32,
) -> Result<(f64, f64)> {
    if !(mean_spin_mag > 0.0) {
        return Err(Error::DegenerateFrame {
            magnitude: mean_spin_mag,
        });
    }
    let scale = f64::from(two_j).sqrt() / mean_spin_mag;
    Ok((
        scale * var_xp.max(0.0).sqrt(),
        scale * var_yp.max(0.0).sqrt(),
    ))
}

/// `E` from measured Ramsey parameters and the mean-spin length.
pub fn e_from_ramsey(xi_rx: f64, xi_ry: f64, mean_spin_mag: f64, two_j: u32, n_atoms: u32) -> f64 {
    let mag_sq = mean_spin_mag * mean_spin_mag;
    let tj = f64::from(two_j);
    let vx = xi_rx * xi_rx * mag_sq / tj;
    let vy = xi_ry * xi_ry * mag_sq / tj;
    entanglement_e_from_variances(vx, vy, n_atoms)
}

/// Full report from moments alone.
pub fn report_from_moments(mom: &MomentTable, n_atoms: u32) -> Result<EntanglementReport> {
    let mean = mean_spin(mom);
    let angles = frame_angles(mean)?;
    let mean_spin_mag = mean[0].hypot(mean[1]).hypot(mean[2]);
    let (var_xp, var_yp) = rotated_variances(mom, angles);
    finish_report(var_xp, var_yp, mean_spin_mag, angles, n_atoms)
}

/// Assembles a report once the frame variances are known.
pub fn finish_report(
    var_xp: f64,
    var_yp: f64,
    mean_spin_mag: f64,
    angles: FrameAngles,
    n_atoms: u32,
) -> Result<EntanglementReport> {
    let (corr_x, corr_y) = corr_terms(var_xp, var_yp, n_atoms);
    let e_param = entanglement_e(corr_x, corr_y);
    let (xi_rx, xi_ry) = ramsey_parameters(var_xp, var_yp, mean_spin_mag, n_atoms)?;
    Ok(EntanglementReport {
        var_xp,
        var_yp,
        corr_x,
        corr_y,
        e_param,
        xi_rx,
        xi_ry,
        mean_spin_mag,
        angles,
        n_atoms,
    })
}

/// moments → frame → rotated variances → correlations → `E` → Ramsey.
pub fn analyze(state: &CollectiveState) -> Result<EntanglementReport> {
    report_from_moments(&moments(state), state.sector().n_atoms())
}
