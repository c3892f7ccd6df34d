//! Asymptotic eigenvalue laws for the Dirichlet Laplacian (and the
//! biharmonic analogue) on a domain of volume `|Ω|` in `d` dimensions.

use std::f64::consts::PI;

use crate::domain::DomainSpec;

fn base(domain: &DomainSpec, n: usize) -> f64 {
    let d = domain.dim() as f64;
    let ratio = n as f64 / (domain.unit_ball_volume() * domain.volume());
    4.0 * PI * PI * ratio.powf(2.0 / d)
}

/// `4π² (n / (ω_d |Ω|))^{2/d}`.
pub fn weyl(domain: &DomainSpec, n: usize) -> f64 {
    base(domain, n)
}

/// Biharmonic growth `16π⁴ (n / (ω_d |Ω|))^{4/d}`, the square of [`weyl`].
pub fn pleijel(domain: &DomainSpec, n: usize) -> f64 {
    let w = base(domain, n);
    w * w
}

/// Lower bound on `λ_n` for tiling domains; same value as [`weyl`].
pub fn polya_bound(domain: &DomainSpec, n: usize) -> f64 {
    base(domain, n)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LiYauBound {
    /// Lower bound on `λ_1 + … + λ_n`.
    pub sum_bound: f64,
    /// Lower bound on `λ_n` itself.
    pub individual_bound: f64,
}

pub fn li_yau_bound(domain: &DomainSpec, n: usize) -> LiYauBound {
    let d = domain.dim() as f64;
    let w = base(domain, n);
    LiYauBound {
        sum_bound: d * n as f64 / (d + 2.0) * w,
        individual_bound: d / (d + 2.0) * w,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dispersion::exact_spectrum;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= 1e-13 * b.abs()
    }

    #[test]
    fn closed_substitutions() {
        let sq = DomainSpec::unit_square();
        let iv = DomainSpec::unit_interval();
        for n in [1, 7, 100] {
            let nf = n as f64;
            assert!(close(weyl(&sq, n), 4.0 * PI * nf));
            assert!(close(weyl(&iv, n), PI * PI * nf * nf));
            assert!(close(pleijel(&sq, n), 16.0 * PI * PI * nf * nf));
            assert!(close(pleijel(&iv, n), PI.powi(4) * nf.powi(4)));
            assert!(close(li_yau_bound(&sq, n).individual_bound, weyl(&sq, n) / 2.0));
        }
        assert!(close(polya_bound(&iv, 1), PI * PI));
    }

    #[test]
    fn pleijel_is_weyl_squared_in_three_dims() {
        let cube = DomainSpec::new(3, 1.7).unwrap();
        for n in [1, 10, 1000] {
            let w = weyl(&cube, n);
            assert!(close(pleijel(&cube, n), w * w));
        }
    }

    #[test]
    fn bounds_hold_on_square_lattice() {
        let sq = DomainSpec::unit_square();
        let exact = exact_spectrum(&sq, 2000).unwrap().values();
        let mut sum = 0.0;
        for (i, &lam) in exact.iter().enumerate() {
            let n = i + 1;
            sum += lam;
            let ly = li_yau_bound(&sq, n);
            assert!(polya_bound(&sq, n) <= lam, "n={n}");
            assert!(ly.individual_bound <= lam);
            assert!(ly.sum_bound <= sum);
        }
    }
}
