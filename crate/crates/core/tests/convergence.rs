use spectra_trust::discretize::{compute_spectrum, quadratic_fem_1d};
use spectra_trust::dispersion::{extrapolated_1d, linear_fem_1d, lumped_fd_1d};
use spectra_trust::reliability::fit_growth_exponent;
use spectra_trust::{DomainSpec, EigenSolveOptions, Method, UniformMesh};
use std::f64::consts::PI;

#[test]
fn quadratic_first_mode_converges_at_fourth_order() {
    let ns = [8usize, 16, 32, 64];
    let errs: Vec<f64> = ns
        .iter()
        .map(|&n| {
            let s = quadratic_fem_1d(&UniformMesh::unit(n).unwrap(), &EigenSolveOptions::default()).unwrap();
            (s.values()[0] - PI * PI) / (PI * PI)
        })
        .collect();
    let inv_h: Vec<f64> = ns.iter().map(|&n| n as f64).collect();
    let (slope, _) = fit_growth_exponent(&inv_h, &errs).unwrap();
    assert!((-slope - 4.0).abs() <= 0.2, "slope {slope}");
}

#[test]
fn linear_and_lumped_converge_at_second_order_from_opposite_sides() {
    let mut prev = f64::INFINITY;
    for n in [16, 32, 64, 128] {
        let m = UniformMesh::unit(n).unwrap();
        let lin = linear_fem_1d(&m).unwrap().values()[0];
        let lum = lumped_fd_1d(&m).unwrap().values()[0];
        let ext = extrapolated_1d(&m).unwrap().values()[0];
        let ex = PI * PI;
        assert!(lin > ex && lum < ex);
        let e = (lin - ex) / ex;
        assert!(e < prev / 3.9);
        prev = e;
        // Averaging cancels the h² terms.
        assert!((ext - ex).abs() / ex < 1.0 / (n as f64).powi(4));
    }
}

#[test]
fn legendre_2d_first_value() {
    let s = compute_spectrum(
        Method::LegendreSpectral2D,
        &DomainSpec::reference(2).unwrap(),
        64,
        &EigenSolveOptions::banded(),
    )
    .unwrap();
    let want = PI * PI / 2.0;
    assert!((s.values()[0] - want).abs() < 1e-9 * want);
    assert_eq!(s.len(), 63 * 63);
}
