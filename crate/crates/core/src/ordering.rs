//! 2D spectra of separable discretizations, and the level-by-level
//! orderings of the mode lattice `{(j, k) : j, k >= 1}`.
//!
//! * Square: level `ℓ` is `(1,ℓ), (2,ℓ), …, (ℓ,ℓ), (ℓ,ℓ-1), …, (ℓ,1)`;
//!   `ℓ²` modes up to level `ℓ`.
//! * Triangular: level `ℓ >= 2` is the anti-diagonal `j + k = ℓ`, listed
//!   from the outside in: `(1,ℓ-1), (ℓ-1,1), (2,ℓ-2), …`, ending at
//!   `(ℓ/2,ℓ/2)` for even `ℓ`. Up to level `ℓ` there are `(ℓ-1)ℓ/2` modes.
//! * Circular: level `ℓ` is the ring `1 + (ℓ-1)² < j² + k² <= 1 + ℓ²`,
//!   listed by radius then lexicographically.

use std::f64::consts::PI;

use serde::Serialize;

use crate::domain::{DomainSpec, Method, ModeIndex};
use crate::error::{Error, Result};
use crate::spectrum::{DiscreteSpectrum, SpectrumEntry};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum OrderingStrategy {
    Triangular,
    Square,
    Circular,
    #[default]
    Magnitude,
}

impl OrderingStrategy {
    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "triangular" => Some(Self::Triangular),
            "square" => Some(Self::Square),
            "circular" => Some(Self::Circular),
            "magnitude" => Some(Self::Magnitude),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelGroup {
    pub level: usize,
    pub members: Vec<ModeIndex>,
    /// Modes in this level and all earlier ones.
    pub cumulative_count: usize,
}

fn accumulate(levels: impl Iterator<Item = (usize, Vec<ModeIndex>)>) -> Vec<LevelGroup> {
    let mut total = 0;
    levels
        .map(|(level, members)| {
            total += members.len();
            LevelGroup {
                level,
                members,
                cumulative_count: total,
            }
        })
        .collect()
}

fn square_level(l: usize) -> Vec<ModeIndex> {
    (1..=l)
        .map(|j| ModeIndex::Two(j, l))
        .chain((1..l).rev().map(|k| ModeIndex::Two(l, k)))
        .collect()
}

fn triangular_level(l: usize) -> Vec<ModeIndex> {
    let mut members = Vec::with_capacity(l.saturating_sub(1));
    for j in 1..=l / 2 {
        let k = l - j;
        members.push(ModeIndex::Two(j, k));
        if j != k {
            members.push(ModeIndex::Two(k, j));
        }
    }
    members
}

fn circular_level(l: usize) -> Vec<ModeIndex> {
    let outer = 1 + l * l;
    let inner = if l == 1 { 0 } else { 1 + (l - 1) * (l - 1) };
    let mut pts = Vec::new();
    let mut j = 1;
    while j * j < outer {
        let mut k = 1;
        while j * j + k * k <= outer {
            if j * j + k * k > inner {
                pts.push((j * j + k * k, j, k));
            }
            k += 1;
        }
        j += 1;
    }
    pts.sort_unstable();
    pts.into_iter().map(|(_, j, k)| ModeIndex::Two(j, k)).collect()
}

pub fn square_ordering(ell_max: usize) -> Vec<LevelGroup> {
    accumulate((1..=ell_max).map(|l| (l, square_level(l))))
}

/// Anti-diagonal levels `2..=ell_max`; level 1 would be empty.
pub fn triangular_ordering(ell_max: usize) -> Vec<LevelGroup> {
    accumulate((2..=ell_max).map(|l| (l, triangular_level(l))))
}

pub fn circular_ordering(ell_max: usize) -> Vec<LevelGroup> {
    accumulate((1..=ell_max).map(|l| (l, circular_level(l))))
}

/// Area of the quarter disk of squared radius `1 + ℓ²`, the continuum
/// estimate of the circular cumulative count.
pub fn circular_estimate(ell: usize) -> f64 {
    PI * (1.0 + (ell * ell) as f64) / 4.0
}

fn tensor_method(method: Method) -> Result<Method> {
    Ok(match method {
        Method::Linear1D => Method::BilinearConsistent2D,
        Method::Lumped1D => Method::FivePointLumped2D,
        Method::Extrapolated1D => Method::Extrapolated2D,
        Method::Quadratic1D => Method::QuadraticQ2_2D,
        Method::LegendreSpectral1D => Method::LegendreSpectral2D,
        Method::Exact => Method::Exact,
        other => return Err(Error::NotSeparable(other)),
    })
}

/// All pairwise sums `λ_j + λ_k`, labelled `(j, k)`, sorted by magnitude.
pub fn tensorize_magnitude(spec_1d: &DiscreteSpectrum) -> Result<DiscreteSpectrum> {
    if spec_1d.domain().dim() != 1 {
        return Err(Error::NotSeparable(spec_1d.method()));
    }
    let method = tensor_method(spec_1d.method())?;
    let mut by_mode: Vec<SpectrumEntry> = spec_1d.entries().to_vec();
    by_mode.sort_by_key(|e| e.mode);
    let mut entries = Vec::with_capacity(by_mode.len() * by_mode.len());
    for a in &by_mode {
        for b in &by_mode {
            entries.push(SpectrumEntry {
                mode: ModeIndex::Two(a.mode.first(), b.mode.first()),
                value: a.value + b.value,
            });
        }
    }
    let domain = DomainSpec::square(spec_1d.domain().extent())?;
    DiscreteSpectrum::new(method, domain, spec_1d.resolution(), entries)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrderedEntry {
    /// Level the entry belongs to; the 1-based rank under `Magnitude`.
    pub level: usize,
    pub entry: SpectrumEntry,
}

/// Lists a mode-labelled 2D spectrum level by level. Levels run up to the
/// largest mode index present; members outside the spectrum are skipped.
pub fn apply_ordering(spectrum: &DiscreteSpectrum, strategy: OrderingStrategy) -> Result<Vec<OrderedEntry>> {
    if spectrum.domain().dim() != 2 {
        return Err(Error::Dimension {
            dim: spectrum.domain().dim(),
        });
    }
    if strategy == OrderingStrategy::Magnitude {
        return Ok(spectrum
            .entries()
            .iter()
            .enumerate()
            .map(|(i, &entry)| OrderedEntry { level: i + 1, entry })
            .collect());
    }
    let m = spectrum.max_mode();
    let lookup: std::collections::HashMap<ModeIndex, SpectrumEntry> =
        spectrum.entries().iter().map(|e| (e.mode, *e)).collect();
    let groups = match strategy {
        OrderingStrategy::Square => square_ordering(m),
        OrderingStrategy::Triangular => triangular_ordering(2 * m),
        _ => {
            let mut l = 1;
            while 1 + l * l < 2 * m * m {
                l += 1;
            }
            circular_ordering(l)
        }
    };
    let mut out = Vec::with_capacity(spectrum.len());
    for g in groups {
        for mode in g.members {
            if let Some(&entry) = lookup.get(&mode) {
                out.push(OrderedEntry {
                    level: g.level,
                    entry,
                });
            }
        }
    }
    Ok(out)
}

/// Separable-spectrum convenience: tensorize then order.
pub fn tensorize(spec_1d: &DiscreteSpectrum, strategy: OrderingStrategy) -> Result<Vec<OrderedEntry>> {
    apply_ordering(&tensorize_magnitude(spec_1d)?, strategy)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dispersion::{five_point_lumped_2d, lumped_fd_1d};
    use crate::domain::UniformMesh;
    use crate::spectrum::Resolution;
    use std::collections::BTreeSet;

    fn two(j: usize, k: usize) -> ModeIndex {
        ModeIndex::Two(j, k)
    }

    #[test]
    fn square_levels() {
        let g = square_ordering(3);
        assert_eq!(g[0].members, vec![two(1, 1)]);
        assert_eq!(g[1].members, vec![two(1, 2), two(2, 2), two(2, 1)]);
        assert_eq!(g[1].cumulative_count, 4);
        assert_eq!(g[2].cumulative_count, 9);
        assert!(g[2].members.contains(&two(3, 3)));
    }

    #[test]
    fn triangular_levels() {
        let g = triangular_ordering(5);
        assert_eq!(g[0].level, 2);
        assert_eq!(g[0].members, vec![two(1, 1)]);
        let l4 = &g[2];
        assert_eq!(l4.level, 4);
        assert_eq!(l4.members, vec![two(1, 3), two(3, 1), two(2, 2)]);
        let l5 = &g[3].members;
        assert_eq!(&l5[l5.len() - 2..], &[two(2, 3), two(3, 2)]);
        assert_eq!(&l5[..2], &[two(1, 4), two(4, 1)]);
        assert!(triangular_ordering(1).is_empty());
    }

    #[test]
    fn triangular_counts_match_lattice_enumeration() {
        for g in triangular_ordering(40) {
            let l = g.level;
            let brute = (1..l).flat_map(|j| (1..l).map(move |k| (j, k))).filter(|(j, k)| j + k <= l).count();
            assert_eq!(g.cumulative_count, brute);
            // Closed count, shifted so that indices start at one.
            assert_eq!(g.cumulative_count, (l - 1) * l / 2);
        }
    }

    #[test]
    fn circular_rings() {
        let g = circular_ordering(3);
        assert_eq!(g[0].members, vec![two(1, 1)]);
        assert_eq!(g[1].members, vec![two(1, 2), two(2, 1)]);
        assert_eq!(g[2].members, vec![two(2, 2), two(1, 3), two(3, 1)]);
    }

    #[test]
    fn circular_count_tracks_quarter_disk() {
        let g = circular_ordering(50);
        let count = g.last().unwrap().cumulative_count as f64;
        let est = circular_estimate(50);
        assert!((count - est).abs() / est < 0.05, "{count} vs {est}");
        let brute = (1..=60usize)
            .flat_map(|j| (1..=60usize).map(move |k| j * j + k * k))
            .filter(|&r| r <= 2501)
            .count();
        assert_eq!(count as usize, brute);
    }

    #[test]
    fn strategies_within_factor_two() {
        let sq = square_ordering(100);
        let tr = triangular_ordering(100);
        let ci = circular_ordering(100);
        let reach = |g: &[LevelGroup], c: usize| {
            g.iter().find(|l| l.cumulative_count >= c).map(|l| l.cumulative_count).unwrap()
        };
        for c in 1..=2000 {
            let counts = [reach(&sq, c), reach(&tr, c), reach(&ci, c)];
            let max = *counts.iter().max().unwrap() as f64;
            let min = *counts.iter().min().unwrap() as f64;
            assert!(max / min <= 2.0, "c={c}: {counts:?}");
        }
    }

    fn box_modes(order: &[OrderedEntry]) -> BTreeSet<ModeIndex> {
        order.iter().map(|o| o.entry.mode).collect()
    }

    #[test]
    fn orderings_are_permutations_of_the_box() {
        let s = five_point_lumped_2d(&UniformMesh::unit(9).unwrap()).unwrap();
        let full: BTreeSet<_> = s.entries().iter().map(|e| e.mode).collect();
        for strat in [
            OrderingStrategy::Square,
            OrderingStrategy::Triangular,
            OrderingStrategy::Circular,
            OrderingStrategy::Magnitude,
        ] {
            let o = apply_ordering(&s, strat).unwrap();
            assert_eq!(o.len(), 64);
            assert_eq!(box_modes(&o), full);
        }
    }

    #[test]
    fn square_level_maxima_dominate() {
        let s = five_point_lumped_2d(&UniformMesh::unit(17).unwrap()).unwrap();
        for l in 1..17 {
            let top = s.value_at(two(l, l)).unwrap();
            for j in 1..=l {
                for k in 1..=l {
                    assert!(s.value_at(two(j, k)).unwrap() <= top);
                }
            }
        }
    }

    #[test]
    fn tensorize_two_values() {
        let one = DiscreteSpectrum::from_ranked_values(
            Method::Lumped1D,
            DomainSpec::unit_interval(),
            Resolution::Continuum,
            vec![1.0, 3.0],
        )
        .unwrap();
        let two_d = tensorize_magnitude(&one).unwrap();
        assert_eq!(two_d.values(), vec![2.0, 4.0, 4.0, 6.0]);
        assert_eq!(two_d.method(), Method::FivePointLumped2D);
    }

    #[test]
    fn tensorize_reproduces_five_point() {
        let m = UniformMesh::unit(16).unwrap();
        let t = tensorize_magnitude(&lumped_fd_1d(&m).unwrap()).unwrap();
        let f = five_point_lumped_2d(&m).unwrap();
        for (a, b) in t.entries().iter().zip(f.entries()) {
            assert!((a.value - b.value).abs() <= 4.0 * f64::EPSILON * b.value);
        }
    }

    #[test]
    fn tensorize_rejects_2d_input() {
        let f = five_point_lumped_2d(&UniformMesh::unit(4).unwrap()).unwrap();
        assert!(matches!(tensorize_magnitude(&f), Err(Error::NotSeparable(_))));
    }
}
