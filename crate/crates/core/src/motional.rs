//! Motional-coupling gates: Raman-driven Cirac–Zoller error budget, its optimum,
//! the phonon-limited rate, the light-shift fast gate and the Mølmer–Sørensen
//! trade-off.

use std::f64::consts::PI;

use crate::advisory::{require_much_greater, Advisory};
use crate::error::{non_negative, positive, Error, Result};
use crate::optimize::minimize_log;

/// Per-term failure probability above which the perturbative formulas are
/// considered broken down.
pub const BREAKDOWN_P: f64 = 0.5;

/// Default exponent of the per-ion time law; the fitted value is 0.93.
pub const DEFAULT_SCALING_EXPONENT: f64 = 1.0;

/// A detuned two-photon drive of an ion in a string.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RamanDrive {
    /// Single-photon Rabi frequency Ω.
    pub omega: f64,
    /// Detuning from the excited state Δ.
    pub detuning: f64,
    pub eta: f64,
    /// Sideband coupling g = ηΩ.
    pub sideband_g: f64,
    /// Ω_eff = Ωg/2Δ
    pub omega_eff: f64,
    /// Ω_eff,0 = Ω²/2Δ
    pub omega_eff_carrier: f64,
}

impl RamanDrive {
    pub fn new(omega: f64, detuning: f64, eta: f64) -> Result<Self> {
        positive("omega", omega)?;
        positive("detuning", detuning)?;
        positive("eta", eta)?;
        let sideband_g = eta * omega;
        Ok(Self {
            omega,
            detuning,
            eta,
            sideband_g,
            omega_eff: omega * sideband_g / (2.0 * detuning),
            omega_eff_carrier: omega * omega / (2.0 * detuning),
        })
    }

    /// Two sideband π pulses: T = 2π/Ω_eff.
    pub fn gate_time(&self) -> f64 {
        2.0 * PI / self.omega_eff
    }

    pub fn advisories(&self, gamma: f64) -> Vec<Advisory> {
        let mut out = Vec::new();
        require_much_greater(&mut out, "detuning", "Δ", self.detuning, "Γ", gamma, 10.0);
        if self.sideband_g > self.omega / 3.0 {
            out.push(Advisory::regime("sideband-weak", "sideband coupling g exceeds Ω/3"));
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MotionalErrorBudget {
    pub p_scatter: f64,
    pub p_heating: f64,
    pub p_offres: f64,
    pub p_total: f64,
    pub gate_time: f64,
}

impl MotionalErrorBudget {
    pub fn new(p_scatter: f64, p_heating: f64, p_offres: f64, gate_time: f64) -> Self {
        Self {
            p_scatter,
            p_heating,
            p_offres,
            p_total: p_scatter + p_heating + p_offres,
            gate_time,
        }
    }

    /// Full budget of a Cirac–Zoller gate with the given drive.
    pub fn cirac_zoller(drive: &RamanDrive, gamma: f64, kappa: f64, omega_z: f64) -> Result<Self> {
        Ok(Self::new(
            scatter_prob(gamma, drive.omega, drive.detuning, drive.sideband_g)?,
            heating_prob(kappa, drive.omega, drive.detuning, drive.sideband_g)?,
            offres_leak(drive.omega_eff_carrier, omega_z)?,
            drive.gate_time(),
        ))
    }

    /// False when any term is past the breakdown threshold.
    pub fn is_valid(&self) -> bool {
        [self.p_scatter, self.p_heating, self.p_offres]
            .iter()
            .all(|p| p.is_finite() && *p <= BREAKDOWN_P)
    }
}

/// Photon-scattering failure p₁ = πΓΩ/(Δg).
pub fn scatter_prob(gamma: f64, omega: f64, detuning: f64, sideband_g: f64) -> Result<f64> {
    positive("gamma", gamma)?;
    positive("omega", omega)?;
    positive("detuning", detuning)?;
    positive("sideband_g", sideband_g)?;
    Ok(PI * gamma * omega / (detuning * sideband_g))
}

/// Phonon-heating failure p₂ = κT = 4πκΔ/(Ωg), κ the motional relaxation rate.
pub fn heating_prob(kappa: f64, omega: f64, detuning: f64, sideband_g: f64) -> Result<f64> {
    non_negative("kappa", kappa)?;
    positive("omega", omega)?;
    positive("detuning", detuning)?;
    positive("sideband_g", sideband_g)?;
    Ok(4.0 * PI * kappa * detuning / (omega * sideband_g))
}

/// Off-resonant carrier leakage p₃ = (Ω_eff,0/ω_z)².
pub fn offres_leak(omega_eff_carrier: f64, omega_z: f64) -> Result<f64> {
    non_negative("omega_eff_carrier", omega_eff_carrier)?;
    positive("omega_z", omega_z)?;
    Ok((omega_eff_carrier / omega_z).powi(2))
}

pub fn offres_advisories(omega_eff_carrier: f64, omega_z: f64) -> Vec<Advisory> {
    let mut out = Vec::new();
    require_much_greater(
        &mut out,
        "carrier-resolved",
        "ω_z",
        omega_z,
        "Ω_eff,0",
        omega_eff_carrier,
        1.0,
    );
    out
}

/// Balanced operating point of scattering against heating at fixed sideband coupling.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CzOptimum {
    /// Ω/Δ = 2√(κ/Γ)
    pub ratio: f64,
    /// 4π√(κΓ)/g
    pub p_min: f64,
    /// Gate rate 1/T at the optimum, 1/s.
    pub rate: f64,
    pub numeric_ratio: f64,
    pub numeric_p_min: f64,
    pub valid: bool,
}

/// p₁ + p₂ as a function of x = Ω/Δ at fixed g.
fn cz_total(kappa: f64, gamma: f64, g: f64, x: f64) -> f64 {
    PI * gamma * x / g + 4.0 * PI * kappa / (x * g)
}

pub fn cz_optimum(kappa: f64, gamma: f64, sideband_g: f64) -> Result<CzOptimum> {
    positive("kappa", kappa)?;
    positive("gamma", gamma)?;
    positive("sideband_g", sideband_g)?;
    let ratio = 2.0 * (kappa / gamma).sqrt();
    let p_min = 4.0 * PI * (kappa * gamma).sqrt() / sideband_g;
    let rate = sideband_g * sideband_g / gamma * p_min / (8.0 * PI * PI);

    let (numeric_ratio, numeric_p_min) =
        minimize_log(|x| cz_total(kappa, gamma, sideband_g, x), ratio * 1e-6, ratio * 1e6);
    Ok(CzOptimum {
        ratio,
        p_min,
        rate,
        numeric_ratio,
        numeric_p_min,
        valid: p_min <= BREAKDOWN_P,
    })
}

/// The operating point as a full budget (p₃ excluded: it depends on the trap).
pub fn cz_optimum_budget(opt: &CzOptimum) -> MotionalErrorBudget {
    MotionalErrorBudget::new(opt.p_min / 2.0, opt.p_min / 2.0, 0.0, 1.0 / opt.rate)
}

/// Phonon-limited Cirac–Zoller rate at failure probability p: 1/T = √p·η·ω_z/2π.
pub fn cz_rate_at_p(p: f64, eta: f64, omega_z: f64) -> Result<f64> {
    if !(p > 0.0 && p <= 1.0) {
        return Err(Error::domain("p", p, "must lie in (0, 1]"));
    }
    Ok(p.sqrt() * eta * omega_z / (2.0 * PI))
}

/// Assumptions behind [`cz_rate_at_p`]: heating negligible over the gate and
/// detuning large enough that scattering stays below p.
pub fn cz_preconditions(
    p: f64,
    rate: f64,
    eta: f64,
    kappa: Option<f64>,
    gamma: Option<f64>,
    detuning: Option<f64>,
) -> Vec<Advisory> {
    let mut out = Vec::new();
    if let Some(k) = kappa {
        require_much_greater(&mut out, "heating-slow", "p/T", p * rate, "κ", k, 10.0);
    }
    if let (Some(g), Some(d)) = (gamma, detuning) {
        require_much_greater(&mut out, "detuning", "Δ", d, "πΓ/(ηp)", PI * g / (eta * p), 10.0);
    }
    out
}

/// Breathing mode of the string: ω → √3·ω, η → 3^(−1/4)·η.
pub fn breathing_mode(eta: f64, omega_z: f64) -> (f64, f64) {
    (eta * 3f64.powf(-0.25), omega_z * 3f64.sqrt())
}

/// Light-shift gate: rate η·ω_z/2π with failure ≈ η²/2.
pub fn lightshift_gate(eta: f64, omega_z: f64) -> Result<(f64, f64)> {
    if !(0.0..1.0).contains(&eta) {
        return Err(Error::domain("eta", eta, "must lie in [0, 1)"));
    }
    non_negative("omega_z", omega_z)?;
    Ok((eta * omega_z / (2.0 * PI), eta * eta / 2.0))
}

/// Time per ion of an N-ion register: 1/(rate·N^exponent).
pub fn per_ion_time(rate: f64, n_ions: u32, scaling_exponent: f64) -> Result<f64> {
    if n_ions < 1 {
        return Err(Error::domain("n_ions", 0.0, "need at least one ion"));
    }
    positive("rate", rate)?;
    Ok(1.0 / (rate * (n_ions as f64).powf(scaling_exponent)))
}

/// Mølmer–Sørensen-style trade-off: relaxation sensitivity divided by M, gate
/// time multiplied by M; off-resonant leakage unchanged.
pub fn ms_tradeoff(budget: &MotionalErrorBudget, m_factor: u32) -> Result<MotionalErrorBudget> {
    if m_factor < 1 {
        return Err(Error::domain("m_factor", 0.0, "must be at least 1"));
    }
    let m = m_factor as f64;
    Ok(MotionalErrorBudget::new(
        budget.p_scatter,
        budget.p_heating / m,
        budget.p_offres,
        budget.gate_time * m,
    ))
}

/// The same trade-off applied to a failure probability that scales as √κ
/// (the Rabi-flop photon gate): returns `(p/√M, rate/M)`.
pub fn ms_scaling(p: f64, rate: f64, m_factor: u32) -> Result<(f64, f64)> {
    if m_factor < 1 {
        return Err(Error::domain("m_factor", 0.0, "must be at least 1"));
    }
    let m = m_factor as f64;
    Ok((p / m.sqrt(), rate / m))
}
