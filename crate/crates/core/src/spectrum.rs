use std::cmp::Ordering;

use crate::domain::{DomainSpec, Method, ModeIndex, UniformMesh};
use crate::error::{Error, Result};

/// What a spectrum was computed on.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Resolution {
    Mesh(UniformMesh),
    /// Polynomial degree per axis of a spectral discretization.
    Degree(usize),
    Continuum,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumEntry {
    pub mode: ModeIndex,
    pub value: f64,
}

/// Eigenvalues of one discretization, ascending, ties broken by mode label.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteSpectrum {
    method: Method,
    domain: DomainSpec,
    resolution: Resolution,
    entries: Vec<SpectrumEntry>,
}

pub(crate) fn entry_order(a: &SpectrumEntry, b: &SpectrumEntry) -> Ordering {
    a.value
        .total_cmp(&b.value)
        .then_with(|| a.mode.cmp(&b.mode))
}

impl DiscreteSpectrum {
    pub fn new(
        method: Method,
        domain: DomainSpec,
        resolution: Resolution,
        mut entries: Vec<SpectrumEntry>,
    ) -> Result<Self> {
        method.check_domain(&domain)?;
        if let Some((index, e)) = entries
            .iter()
            .enumerate()
            .find(|(_, e)| !(e.value > 0.0 && e.value.is_finite()))
        {
            return Err(Error::NonPositive {
                index,
                value: e.value,
            });
        }
        entries.sort_by(entry_order);
        Ok(Self {
            method,
            domain,
            resolution,
            entries,
        })
    }

    /// Labels each sorted value with its 1-based rank. Valid for 1D
    /// discretizations whose dispersion curve is monotone.
    pub fn from_ranked_values(
        method: Method,
        domain: DomainSpec,
        resolution: Resolution,
        mut values: Vec<f64>,
    ) -> Result<Self> {
        values.sort_by(f64::total_cmp);
        let entries = values
            .into_iter()
            .enumerate()
            .map(|(i, value)| SpectrumEntry {
                mode: ModeIndex::One(i + 1),
                value,
            })
            .collect();
        Self::new(method, domain, resolution, entries)
    }

    pub fn method(&self) -> Method {
        self.method
    }

    pub fn domain(&self) -> &DomainSpec {
        &self.domain
    }

    pub fn resolution(&self) -> Resolution {
        self.resolution
    }

    pub fn entries(&self) -> &[SpectrumEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn values(&self) -> Vec<f64> {
        self.entries.iter().map(|e| e.value).collect()
    }

    pub fn value_at(&self, mode: ModeIndex) -> Option<f64> {
        self.entries.iter().find(|e| e.mode == mode).map(|e| e.value)
    }

    /// Largest mode index along any axis.
    pub fn max_mode(&self) -> usize {
        self.entries
            .iter()
            .map(|e| e.mode.first().max(e.mode.second().unwrap_or(0)))
            .max()
            .unwrap_or(0)
    }
}
