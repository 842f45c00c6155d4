//! Optical cavity geometry: photon decay, Gaussian mode waist, and the
//! derived single-photon coupling for a given species.

use std::f64::consts::PI;

use crate::atom::single_photon_g;
use crate::constants::SPEED_OF_LIGHT;
use crate::error::{positive, Error, Result};
use crate::species::IonSpecies;

/// Cavity field decay rate κ = cπ/(F·L), rad/s.
pub fn cavity_kappa(finesse: f64, length: f64) -> Result<f64> {
    positive("finesse", finesse)?;
    positive("length", length)?;
    Ok(SPEED_OF_LIGHT * PI / (finesse * length))
}

/// Waist w₀ of the fundamental mode of a symmetric two-mirror resonator,
/// w₀² = (λ/2π)·√(L(2R − L)).
pub fn gaussian_waist(lambda: f64, length: f64, mirror_curvature: f64) -> Result<f64> {
    positive("lambda", lambda)?;
    positive("length", length)?;
    positive("mirror_curvature", mirror_curvature)?;
    if length >= 2.0 * mirror_curvature {
        return Err(Error::domain(
            "length",
            length,
            "resonator unstable: length must be below twice the mirror curvature",
        ));
    }
    Ok((lambda / (2.0 * PI) * (length * (2.0 * mirror_curvature - length)).sqrt()).sqrt())
}

#[derive(Debug, Clone, PartialEq)]
pub enum CavityGeometry {
    FabryPerot {
        /// m
        length: f64,
        finesse: f64,
        /// m
        mirror_curvature: f64,
    },
    /// Whispering-gallery mode of a dielectric sphere. Coupling is specified
    /// through the ratios g/Γ and g/κ rather than computed from the geometry.
    Microsphere {
        /// m
        radius: f64,
        quality_factor: Option<f64>,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct CavityConfig {
    pub geometry: CavityGeometry,
    /// Mode waist w₀ (Fabry–Perot) in m.
    pub waist: Option<f64>,
    /// Mode volume V = L·w₀², m³.
    pub mode_volume: Option<f64>,
    /// Single-photon Rabi frequency, rad/s.
    pub g: f64,
    /// Cavity field decay rate, rad/s.
    pub kappa: f64,
}

impl CavityConfig {
    pub fn fabry_perot(species: &IonSpecies, length: f64, finesse: f64, mirror_curvature: f64) -> Result<Self> {
        let waist = gaussian_waist(species.lambda, length, mirror_curvature)?;
        Self::fabry_perot_with_waist(species, length, finesse, mirror_curvature, waist)
    }

    /// Fabry–Perot cavity with an externally specified mode waist.
    pub fn fabry_perot_with_waist(
        species: &IonSpecies,
        length: f64,
        finesse: f64,
        mirror_curvature: f64,
        waist: f64,
    ) -> Result<Self> {
        positive("waist", waist)?;
        let kappa = cavity_kappa(finesse, length)?;
        let mode_volume = length * waist * waist;
        let g = single_photon_g(species.dipole, species.omega(), mode_volume)?;
        Ok(Self {
            geometry: CavityGeometry::FabryPerot {
                length,
                finesse,
                mirror_curvature,
            },
            waist: Some(waist),
            mode_volume: Some(mode_volume),
            g,
            kappa,
        })
    }

    pub fn microsphere(
        species: &IonSpecies,
        radius: f64,
        g_over_gamma: f64,
        g_over_kappa: f64,
        quality_factor: Option<f64>,
    ) -> Result<Self> {
        positive("radius", radius)?;
        positive("g_over_gamma", g_over_gamma)?;
        positive("g_over_kappa", g_over_kappa)?;
        let g = g_over_gamma * species.gamma;
        Ok(Self {
            geometry: CavityGeometry::Microsphere { radius, quality_factor },
            waist: None,
            mode_volume: None,
            g,
            kappa: g / g_over_kappa,
        })
    }

    pub fn kind(&self) -> &'static str {
        match self.geometry {
            CavityGeometry::FabryPerot { .. } => "fabry_perot",
            CavityGeometry::Microsphere { .. } => "microsphere",
        }
    }

    pub fn finesse(&self) -> Option<f64> {
        match self.geometry {
            CavityGeometry::FabryPerot { finesse, .. } => Some(finesse),
            CavityGeometry::Microsphere { .. } => None,
        }
    }

    pub fn length(&self) -> Option<f64> {
        match self.geometry {
            CavityGeometry::FabryPerot { length, .. } => Some(length),
            CavityGeometry::Microsphere { .. } => None,
        }
    }
}
