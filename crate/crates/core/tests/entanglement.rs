use dicke_core::entangle::{
    corr_terms, e_from_ramsey, entanglement_e, entanglement_e_from_variances, frame_angles,
    mean_spin, ramsey_parameters,
};
use dicke_core::spin::{expectation, moments, SpinComponents};
use dicke_core::squeezed::closed_form_report;
use dicke_core::{analyze, make_sector, CollectiveState, Error, SqueezedVacuumParams};
use ndarray::Array1;
use num_complex::Complex64 as C64;
use proptest::prelude::*;

fn random_state(n: u32, seed: &[f64]) -> CollectiveState {
    let sector = make_sector(n).unwrap();
    let amps: Array1<C64> = (0..sector.dim())
        .map(|i| C64::new(seed[(3 * i) % seed.len()], seed[(3 * i + 1) % seed.len()]))
        .collect();
    CollectiveState::normalized(sector, amps).unwrap()
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

#[test]
fn table_one_row_through_ramsey_form() {
    let r = closed_form_report(&SqueezedVacuumParams::new(100, 20, 0.1).unwrap()).unwrap();
    let e = e_from_ramsey(r.xi_rx, r.xi_ry, r.mean_spin_mag, 100, 100);
    assert!((e - 22357.14).abs() < 0.01);
}

#[test]
fn ramsey_examples() {
    let (x, y) = ramsey_parameters(25.0, 25.0, 50.0, 100).unwrap();
    assert!((x - 1.0).abs() < 1e-15 && (y - 1.0).abs() < 1e-15);
    let (x, _) = ramsey_parameters(12.5, 25.0, 50.0, 100).unwrap();
    assert!((x - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
    assert!(ramsey_parameters(1.0, 1.0, 0.0, 100).is_err());
    assert_eq!(e_from_ramsey(1.0, 1.0, 50.0, 100, 100), 0.0);
}

#[test]
fn corr_and_e_examples() {
    assert_eq!(corr_terms(25.0, 25.0, 100), (0.0, 0.0));
    assert_eq!(corr_terms(1225.0, 1225.0, 100), (1200.0, 1200.0));
    assert_eq!(corr_terms(10.0, 40.0, 100), (-15.0, 15.0));
    assert_eq!(entanglement_e(1200.0, 1200.0), 1_440_000.0);
    assert_eq!(entanglement_e(-3.0, 4.0), 12.5);
}

#[test]
fn coherent_states_along_any_axis_are_unentangled() {
    for (theta, phi) in [
        (0.0, 0.0),
        (1.0, 2.0),
        (std::f64::consts::PI, 0.0),
        (2.5, -1.2),
    ] {
        let state = CollectiveState::coherent(make_sector(4).unwrap(), theta, phi);
        let r = analyze(&state).unwrap();
        assert!(r.e_param < 1e-10);
        assert!((r.mean_spin_mag - 2.0).abs() < 1e-12);
    }
}

#[test]
fn zero_mean_spin_is_degenerate() {
    let state = CollectiveState::dicke(make_sector(4).unwrap(), 0).unwrap();
    assert!(matches!(
        analyze(&state),
        Err(Error::DegenerateFrame { .. })
    ));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn report_invariants_on_random_states(
        n in 2u32..=40,
        seed in prop::collection::vec(-1.0f64..1.0, 7..13),
    ) {
        let state = random_state(n, &seed);
        let Ok(r) = analyze(&state) else { return Ok(()); };

        // the rotated frame kills the transverse mean spin
        let ops = SpinComponents::new(state.sector());
        let mean = [
            expectation(&state, &ops.jx).unwrap().re,
            expectation(&state, &ops.jy).unwrap().re,
            expectation(&state, &ops.jz).unwrap().re,
        ];
        let rotated = r.angles.rotate(mean);
        prop_assert!(rotated[0].abs() < 1e-9 && rotated[1].abs() < 1e-9);
        prop_assert!((rotated[2] - r.mean_spin_mag).abs() < 1e-9);

        prop_assert!(r.var_xp > 0.0 && r.var_yp > 0.0 && r.e_param >= 0.0);
        let quarter_n = f64::from(n) / 4.0;
        prop_assert_eq!(r.corr_x, r.var_xp - quarter_n);
        prop_assert_eq!(r.corr_y, r.var_yp - quarter_n);

        let alt = entanglement_e_from_variances(r.var_xp, r.var_yp, n);
        prop_assert!(rel(alt, r.e_param) < 1e-9 || (alt - r.e_param).abs() < 1e-12);
        let via_ramsey = r.e_via_ramsey();
        prop_assert!(rel(via_ramsey, r.e_param) < 1e-9 || (via_ramsey - r.e_param).abs() < 1e-12);

        // Robertson bound in the rotated frame
        prop_assert!((r.var_xp * r.var_yp).sqrt() >= r.mean_spin_mag / 2.0 - 1e-9);
        if !r.satisfies_n_over_4_bound() {
            eprintln!("N/4 product bound not met: N = {n}, margin {}", r.uncertainty_margin());
        }
    }

    #[test]
    fn frame_puts_mean_on_z_prime(x in -5.0f64..5.0, y in -5.0f64..5.0, z in -5.0f64..5.0) {
        let mean = [x, y, z];
        let mag = (x * x + y * y + z * z).sqrt();
        prop_assume!(mag > 1e-6);
        let angles = frame_angles(mean).unwrap();
        let r = angles.rotate(mean);
        prop_assert!(r[0].abs() < 1e-9 && r[1].abs() < 1e-9);
        prop_assert!((r[2] - mag).abs() < 1e-9);
    }

    #[test]
    fn e_is_zero_iff_correlations_vanish(cx in -10.0f64..10.0, cy in -10.0f64..10.0) {
        let e = entanglement_e(cx, cy);
        prop_assert!(e >= 0.0);
        prop_assert_eq!(e == 0.0, cx == 0.0 && cy == 0.0);
    }
}

#[test]
fn mean_spin_of_dicke_state() {
    let state = CollectiveState::dicke(make_sector(6).unwrap(), -2).unwrap();
    assert_eq!(mean_spin(&moments(&state)), [0.0, 0.0, -1.0]);
}
