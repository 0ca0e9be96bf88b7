//! On-demand cross-checks between the closed forms and the dense and
//! tensor-product oracles.

use dicke_core::product::{
    collective_frame, collective_rotated_variances, embed_symmetric, entanglement_e,
    individual_rotated_variances, pairwise_corr, product_css, separability_residual,
    swap_symmetry_residual, MAX_PRODUCT_ATOMS,
};
use dicke_core::squeezed::{build_state, lambda_residual};
use dicke_core::wigner::{d_matrix, delta_consistency};
use dicke_core::{analyze, make_sector, CollectiveState, SqueezedVacuumParams};
use ndarray::Array1;
use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{usage, Failure};
use crate::sweep::{evaluate, Mode, PATH_TOLERANCE};

const RANDOM_STATES: usize = 50;
const RANDOM_PRODUCT_STATES: usize = 100;
const DUAL_PATH_ATOMS: [u32; 5] = [2, 4, 10, 51, 100];
const DUAL_PATH_XI: [f64; 7] = [0.0, 0.01, 0.1, 0.5, 1.0, 2.0, 3.0];
const FAULT: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub residual: f64,
    pub tolerance: f64,
}

impl Check {
    fn new(name: impl Into<String>, residual: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            residual,
            tolerance,
        }
    }

    pub fn passed(&self) -> bool {
        self.residual <= self.tolerance
    }
}

#[derive(Debug, Default)]
struct ProductResiduals {
    decomposition: f64,
    individual: f64,
    correlation: f64,
    symmetry: f64,
}

impl ProductResiduals {
    fn absorb(&mut self, state: &CollectiveState) {
        let product = embed_symmetric(state).expect("atom count within product cap");
        let report = analyze(state).expect("nondegenerate test state");
        let frame = collective_frame(&product).expect("nondegenerate test state");
        let individual = individual_rotated_variances(&product, frame);
        let (cx, cy) = pairwise_corr(&product, frame);
        let (vx, vy) = collective_rotated_variances(&product, frame);
        let (sx, sy) = individual
            .iter()
            .fold((0.0, 0.0), |(a, b), v| (a + v.0, b + v.1));
        let e = entanglement_e(&product, frame);

        let worst = |acc: &mut f64, v: f64| *acc = acc.max(v.abs());
        worst(&mut self.decomposition, vx - sx - cx);
        worst(&mut self.decomposition, vy - sy - cy);
        worst(&mut self.decomposition, vx - report.var_xp);
        worst(&mut self.decomposition, vy - report.var_yp);
        for (ix, iy) in individual {
            worst(&mut self.individual, ix - 0.25);
            worst(&mut self.individual, iy - 0.25);
        }
        worst(
            &mut self.correlation,
            (e - report.e_param) / report.e_param.max(1.0),
        );
        worst(&mut self.symmetry, swap_symmetry_residual(&product));
    }
}

fn random_symmetric(n: u32, rng: &mut ChaCha8Rng) -> CollectiveState {
    let sector = make_sector(n).expect("positive atom count");
    let amps: Array1<C64> = (0..sector.dim())
        .map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    CollectiveState::normalized(sector, amps).expect("nonzero amplitudes")
}

fn product_checks(n: u32, rng: &mut ChaCha8Rng, fault: f64) -> Vec<Check> {
    let mut res = ProductResiduals::default();
    for _ in 0..RANDOM_STATES {
        res.absorb(&random_symmetric(n, rng));
    }
    for two_m in (-(n as i32)..=n as i32).step_by(2) {
        for xi in [0.3, 0.7, 2.0] {
            res.absorb(&build_state(
                &SqueezedVacuumParams::new(n, two_m, xi).expect("valid point"),
            ));
        }
    }
    let mut separable = 0.0f64;
    for _ in 0..RANDOM_PRODUCT_STATES {
        let theta = rng.gen_range(0.0..std::f64::consts::PI);
        let phi = rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI);
        let state = product_css(n, theta, phi).expect("atom count within product cap");
        let frame = collective_frame(&state).expect("coherent states have full mean spin");
        separable = separable
            .max(separability_residual(&state))
            .max(entanglement_e(&state, frame));
    }
    vec![
        Check::new(
            format!("product N={n}: variance decomposition"),
            res.decomposition + fault,
            1e-10,
        ),
        Check::new(
            format!("product N={n}: individual variances = 1/4"),
            res.individual,
            1e-10,
        ),
        Check::new(
            format!("product N={n}: pairwise E vs collective E"),
            res.correlation,
            1e-10,
        ),
        Check::new(
            format!("product N={n}: permutation symmetry"),
            res.symmetry,
            1e-12,
        ),
        Check::new(
            format!("product N={n}: product states separable"),
            separable,
            1e-10,
        ),
    ]
}

fn dense_checks() -> Vec<Check> {
    let mut dual = 0.0f64;
    let mut consistency = 0.0f64;
    for n in DUAL_PATH_ATOMS {
        for two_m in (-(n as i32)..=n as i32).step_by(2) {
            for xi in DUAL_PATH_XI {
                let params = SqueezedVacuumParams::new(n, two_m, xi).expect("valid point");
                if let Ok((_, Some(d))) = evaluate(params, Mode::Both).outcome {
                    dual = dual.max(d);
                }
                consistency =
                    consistency.max(delta_consistency(n, two_m, xi).expect("valid point"));
            }
        }
    }
    let orthogonality = [1u32, 2, 10, 100]
        .iter()
        .flat_map(|&two_j| [0.4, 1.7, -2.9].map(move |beta| (two_j, beta)))
        .map(|(two_j, beta)| {
            let d = d_matrix(two_j, beta);
            let gram = d.t().dot(&d);
            gram.indexed_iter()
                .map(|((r, c), v)| (v - if r == c { 1.0 } else { 0.0 }).abs())
                .fold(0.0, f64::max)
        })
        .fold(0.0, f64::max);
    let lambda = lambda_residual(&SqueezedVacuumParams::new(100, 20, 1.0).expect("valid point"));
    vec![
        Check::new("dense vs closed form: report grid", dual, PATH_TOLERANCE),
        Check::new("series: normalization identity", consistency, 1e-10),
        Check::new("d-matrix orthogonality", orthogonality, 1e-12),
        Check::new("eigenrelation residual N=100 m=10 xi=1", lambda, 1e-8),
    ]
}

/// Product checks for `N = 2..=max_n`, then the dense checks.
pub fn run(max_n: u32, inject_fault: bool) -> Result<Vec<Check>, Failure> {
    if !(2..=MAX_PRODUCT_ATOMS).contains(&max_n) {
        return Err(usage(format!(
            "--max-n must lie in 2..={MAX_PRODUCT_ATOMS}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut checks = Vec::new();
    for n in 2..=max_n {
        let fault = if inject_fault && n == 2 { FAULT } else { 0.0 };
        checks.extend(product_checks(n, &mut rng, fault));
    }
    checks.extend(dense_checks());
    Ok(checks)
}

pub fn render(checks: &[Check]) -> String {
    checks
        .iter()
        .map(|c| {
            let status = if c.passed() { "ok  " } else { "FAIL" };
            format!(
                "{status} {:<48} residual {:.3e} (tolerance {:.0e})\n",
                c.name, c.residual, c.tolerance
            )
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suite_passes_and_fault_is_caught() {
        let clean = run(2, false).unwrap();
        assert!(clean.iter().all(Check::passed), "{}", render(&clean));
        let faulty = run(2, true).unwrap();
        assert_eq!(faulty.iter().filter(|c| !c.passed()).count(), 1);
    }

    #[test]
    fn cap_is_enforced() {
        assert!(run(5, false).is_err());
        assert!(run(1, false).is_err());
    }
}
