//! Linear ion strings: Lamb-Dicke parameter, axial confinement limited by the
//! minimum ion spacing, and single-ion addressing optics.

use std::f64::consts::{PI, SQRT_2};

use crate::advisory::Advisory;
use crate::constants::{ELEMENTARY_CHARGE, EPSILON_0, HBAR};
use crate::error::{positive, Error, Result};
use crate::species::IonSpecies;

/// Minimum spacing of an N-ion harmonic string, in units of the length scale
/// ℓ = (e²/(4πε₀mω_z²))^(1/3): s_min ≈ 2.018·N^(−0.559).
pub const STRING_SPACING_COEFFICIENT: f64 = 2.018;
pub const STRING_SPACING_EXPONENT: f64 = 0.559;

/// Effective wavevector multiplier for two Raman beams crossing at 90°.
pub const DEFAULT_GEOMETRY_FACTOR: f64 = SQRT_2;

#[derive(Debug, Clone, PartialEq)]
pub struct TrapConfig {
    pub species: IonSpecies,
    pub n_ions: u32,
    /// Axial centre-of-mass angular frequency, rad/s.
    pub omega_z: f64,
    /// Spacing requirement s = spacing_multiple·λ.
    pub spacing_multiple: f64,
    pub geometry_factor: f64,
    /// Lamb-Dicke parameter of the centre-of-mass mode.
    pub eta: f64,
}

impl TrapConfig {
    pub fn new(
        species: IonSpecies,
        n_ions: u32,
        omega_z: f64,
        spacing_multiple: f64,
        geometry_factor: f64,
    ) -> Result<Self> {
        if n_ions < 1 {
            return Err(Error::domain("n_ions", n_ions as f64, "need at least one ion"));
        }
        positive("omega_z", omega_z)?;
        positive("spacing_multiple", spacing_multiple)?;
        positive("geometry_factor", geometry_factor)?;
        let eta = lamb_dicke_parameter(&species, n_ions, omega_z, geometry_factor);
        Ok(Self {
            species,
            n_ions,
            omega_z,
            spacing_multiple,
            geometry_factor,
            eta,
        })
    }

    /// Trap whose axial frequency is the largest that keeps the string's
    /// closest pair at least `spacing_multiple·λ` apart.
    pub fn from_spacing(species: IonSpecies, n_ions: u32, spacing_multiple: f64, geometry_factor: f64) -> Result<Self> {
        let omega_z = axial_freq_for_spacing(&species, n_ions, spacing_multiple)?;
        Self::new(species, n_ions, omega_z, spacing_multiple, geometry_factor)
    }

    /// Required ion spacing s, m.
    pub fn spacing(&self) -> f64 {
        self.spacing_multiple * self.species.lambda
    }

    pub fn advisories(&self) -> Vec<Advisory> {
        let mut out = Vec::new();
        if !(self.eta > 0.0 && self.eta < 1.0) {
            out.push(Advisory::regime(
                "lamb-dicke",
                format!("η = {:.3} is outside the Lamb-Dicke regime (0, 1)", self.eta),
            ));
        }
        out
    }
}

/// η = k_eff·√(ħ/(2·N·m·ω_z)) for the centre-of-mass mode, k_eff = factor·2π/λ.
pub fn lamb_dicke(trap: &TrapConfig) -> f64 {
    lamb_dicke_parameter(&trap.species, trap.n_ions, trap.omega_z, trap.geometry_factor)
}

fn lamb_dicke_parameter(species: &IonSpecies, n_ions: u32, omega_z: f64, geometry_factor: f64) -> f64 {
    let k_eff = geometry_factor * 2.0 * PI / species.lambda;
    let total_mass = n_ions as f64 * species.mass;
    k_eff * (HBAR / (2.0 * total_mass * omega_z)).sqrt()
}

/// Coulomb length scale ℓ of a string with single-ion mass `mass` in a trap of
/// axial angular frequency `omega_z`.
pub fn string_length_scale(mass: f64, omega_z: f64) -> f64 {
    (ELEMENTARY_CHARGE * ELEMENTARY_CHARGE / (4.0 * PI * EPSILON_0 * mass * omega_z * omega_z)).cbrt()
}

/// Closest-pair separation of an `n_ions` string, m.
pub fn min_spacing(mass: f64, n_ions: u32, omega_z: f64) -> f64 {
    STRING_SPACING_COEFFICIENT * string_length_scale(mass, omega_z) * (n_ions as f64).powf(-STRING_SPACING_EXPONENT)
}

/// Largest axial angular frequency keeping the closest ions at least
/// `spacing_multiple·λ` apart.
pub fn axial_freq_for_spacing(species: &IonSpecies, n_ions: u32, spacing_multiple: f64) -> Result<f64> {
    if n_ions < 2 {
        return Err(Error::domain(
            "n_ions",
            n_ions as f64,
            "spacing needs at least two ions",
        ));
    }
    positive("spacing_multiple", spacing_multiple)?;
    let spacing = spacing_multiple * species.lambda;
    let ell = spacing / (STRING_SPACING_COEFFICIENT * (n_ions as f64).powf(-STRING_SPACING_EXPONENT));
    let omega_sq = ELEMENTARY_CHARGE * ELEMENTARY_CHARGE / (4.0 * PI * EPSILON_0 * species.mass * ell.powi(3));
    Ok(omega_sq.sqrt())
}

/// Gaussian addressing-beam waist (1/e² intensity radius) giving relative
/// intensity `crosstalk` at the neighbouring ion: exp(−2s²/w²) = crosstalk,
/// so w = s·√(2/ln(1/crosstalk)).
pub fn addressing_waist(spacing: f64, crosstalk: f64) -> Result<f64> {
    positive("spacing", spacing)?;
    if !(crosstalk > 0.0 && crosstalk < 1.0) {
        return Err(Error::domain("crosstalk", crosstalk, "must lie in (0, 1)"));
    }
    Ok(spacing * (2.0 / (1.0 / crosstalk).ln()).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::species::lookup;
    use crate::units::{angular, ordinary};

    fn rel(a: f64, b: f64) -> f64 {
        (a / b - 1.0).abs()
    }

    #[test]
    fn lamb_dicke_at_quoted_frequencies() {
        let be = TrapConfig::new(lookup("be").unwrap(), 140, angular(418e3), 5.0, SQRT_2).unwrap();
        assert!(rel(be.eta, 0.088) < 0.01, "{}", be.eta);
        let ca = TrapConfig::new(lookup("ca").unwrap(), 140, angular(141e3), 5.0, SQRT_2).unwrap();
        assert!(rel(ca.eta, 0.056) < 0.02, "{}", ca.eta);
        assert_eq!(lamb_dicke(&ca), ca.eta);
    }

    #[test]
    fn quadrupling_axial_frequency_halves_eta() {
        let be = lookup("be").unwrap();
        let a = TrapConfig::new(be.clone(), 10, 1e6, 5.0, SQRT_2).unwrap();
        let b = TrapConfig::new(be, 10, 4e6, 5.0, SQRT_2).unwrap();
        assert!((a.eta / b.eta - 2.0).abs() < 1e-12);
    }

    #[test]
    fn spacing_closure_frequencies() {
        let be = axial_freq_for_spacing(&lookup("be").unwrap(), 140, 5.0).unwrap();
        assert!((380e3..=460e3).contains(&ordinary(be)), "{}", ordinary(be));
        let ca = axial_freq_for_spacing(&lookup("ca").unwrap(), 140, 5.0).unwrap();
        assert!((130e3..=155e3).contains(&ordinary(ca)), "{}", ordinary(ca));
    }

    #[test]
    fn spacing_closure_inverts() {
        let ca = lookup("ca").unwrap();
        let w = axial_freq_for_spacing(&ca, 57, 5.0).unwrap();
        assert!(rel(min_spacing(ca.mass, 57, w), 5.0 * ca.lambda) < 1e-12);
    }

    #[test]
    fn doubling_spacing_lowers_frequency() {
        let ca = lookup("ca").unwrap();
        let a = axial_freq_for_spacing(&ca, 140, 5.0).unwrap();
        let b = axial_freq_for_spacing(&ca, 140, 10.0).unwrap();
        assert!((a / b - 2f64.powf(1.5)).abs() < 1e-12);
    }

    #[test]
    fn single_ion_spacing_rejected() {
        assert!(axial_freq_for_spacing(&lookup("be").unwrap(), 1, 5.0).is_err());
        assert!(TrapConfig::new(lookup("be").unwrap(), 0, 1e6, 5.0, SQRT_2).is_err());
    }

    #[test]
    fn composed_eta_for_beryllium() {
        let trap = TrapConfig::from_spacing(lookup("be").unwrap(), 140, 5.0, SQRT_2).unwrap();
        assert!((0.079..=0.097).contains(&trap.eta), "{}", trap.eta);
        assert!(trap.advisories().is_empty());
    }

    #[test]
    fn addressing_examples() {
        let lambda = 397e-9;
        let w = addressing_waist(5.0 * lambda, 1e-4).unwrap();
        assert!((w / lambda - 2.3).abs() < 0.05, "{}", w / lambda);
        let w = addressing_waist(1e-6, (-2.0f64).exp()).unwrap();
        assert!((w - 1e-6).abs() < 1e-18);
        assert!(addressing_waist(1e-6, 1.0).is_err());
        assert!(addressing_waist(1e-6, 0.0).is_err());
    }

    #[test]
    fn heavy_string_leaves_lamb_dicke_regime() {
        let be = lookup("be").unwrap();
        let trap = TrapConfig::new(be, 1, 1.0, 5.0, 10.0).unwrap();
        assert!(trap.eta > 1.0);
        assert_eq!(trap.advisories().len(), 1);
    }
}
