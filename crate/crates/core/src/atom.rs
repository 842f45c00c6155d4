//! Atom–light coupling for a strong electric-dipole transition.

use std::f64::consts::PI;

use crate::constants::{EPSILON_0, HBAR, SPEED_OF_LIGHT};
use crate::error::{positive, Result};

/// Spontaneous decay rate Γ = ω³d²/(3πε₀ħc³) of a transition with dipole
/// element `dipole` (C·m) at angular frequency `omega`.
pub fn gamma_from_dipole(dipole: f64, omega: f64) -> Result<f64> {
    positive("dipole", dipole)?;
    positive("omega", omega)?;
    Ok(omega.powi(3) * dipole * dipole / (3.0 * PI * EPSILON_0 * HBAR * SPEED_OF_LIGHT.powi(3)))
}

/// Inverse of [`gamma_from_dipole`].
pub fn dipole_from_gamma(gamma: f64, omega: f64) -> Result<f64> {
    positive("gamma", gamma)?;
    positive("omega", omega)?;
    Ok((gamma * 3.0 * PI * EPSILON_0 * HBAR * SPEED_OF_LIGHT.powi(3) / omega.powi(3)).sqrt())
}

/// Single-photon Rabi frequency g = d·√(2ω/(ε₀ħV)) for a mode of volume `mode_volume`.
pub fn single_photon_g(dipole: f64, omega: f64, mode_volume: f64) -> Result<f64> {
    positive("dipole", dipole)?;
    positive("omega", omega)?;
    positive("mode_volume", mode_volume)?;
    Ok(dipole * (2.0 * omega / (EPSILON_0 * HBAR * mode_volume)).sqrt())
}

/// g²/Γ = 3cλ²/(2πV), the rate that bounds photon-mediated gates. Independent
/// of the dipole element.
pub fn g_squared_over_gamma(lambda: f64, mode_volume: f64) -> Result<f64> {
    positive("lambda", lambda)?;
    positive("mode_volume", mode_volume)?;
    Ok(3.0 * SPEED_OF_LIGHT * lambda * lambda / (2.0 * PI * mode_volume))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::{BOHR_RADIUS, ELEMENTARY_CHARGE};
    use crate::units::{angular, optical_omega, ordinary};
    use proptest::prelude::*;

    #[test]
    fn bohr_dipole_at_852nm() {
        // CODATA 2018 direct evaluation (independent script): 3.276030e6 rad/s
        let gamma = gamma_from_dipole(ELEMENTARY_CHARGE * BOHR_RADIUS, optical_omega(852e-9)).unwrap();
        assert!((gamma / 3.276_029_885e6 - 1.0).abs() < 1e-6, "{gamma}");
    }

    #[test]
    fn zero_dipole_rejected() {
        assert!(gamma_from_dipole(0.0, optical_omega(852e-9)).is_err());
        assert!(dipole_from_gamma(-1.0, 1.0).is_err());
        assert!(single_photon_g(1e-29, 1e15, 0.0).is_err());
    }

    #[test]
    fn cs_linewidth_round_trip() {
        let omega = optical_omega(852e-9);
        let gamma = angular(5.3e6);
        let d = dipole_from_gamma(gamma, omega).unwrap();
        let back = gamma_from_dipole(d, omega).unwrap();
        assert!((ordinary(back) / 5.3e6 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn cs_fabry_perot_coupling() {
        let omega = optical_omega(852e-9);
        let d = dipole_from_gamma(angular(5.3e6), omega).unwrap();
        let g = single_photon_g(d, omega, 44.6e-6 * 20e-6 * 20e-6).unwrap();
        assert!((ordinary(g) / 70e6 - 1.0).abs() < 0.01, "{}", ordinary(g));
    }

    #[test]
    fn ba_coupling() {
        let omega = optical_omega(493e-9);
        let d = dipole_from_gamma(angular(11e6), omega).unwrap();
        let g = single_photon_g(d, omega, 100e-6 * 12.5e-6 * 12.5e-6).unwrap();
        assert!((ordinary(g) / 62e6 - 1.0).abs() < 0.01, "{}", ordinary(g));
    }

    #[test]
    fn quadrupling_volume_halves_g() {
        let g1 = single_photon_g(1e-29, 2e15, 1e-14).unwrap();
        let g4 = single_photon_g(1e-29, 2e15, 4e-14).unwrap();
        assert!((g1 / g4 - 2.0).abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn g_squared_over_gamma_identity(
            d in 1e-31f64..1e-28,
            lambda in 2e-7f64..2e-6,
            volume in 1e-18f64..1e-12,
        ) {
            let omega = optical_omega(lambda);
            let g = single_photon_g(d, omega, volume).unwrap();
            let gamma = gamma_from_dipole(d, omega).unwrap();
            let ratio = g * g / gamma / g_squared_over_gamma(lambda, volume).unwrap();
            prop_assert!((ratio - 1.0).abs() < 1e-9);
        }

        #[test]
        fn dipole_gamma_round_trip(d in 1e-31f64..1e-28, lambda in 2e-7f64..2e-6) {
            let omega = optical_omega(lambda);
            let back = dipole_from_gamma(gamma_from_dipole(d, omega).unwrap(), omega).unwrap();
            prop_assert!((back / d - 1.0).abs() < 1e-9);
        }
    }
}
