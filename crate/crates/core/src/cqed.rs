//! Photon-mediated gates between atoms sharing a cavity mode: adiabatic
//! dark-state passage and single-photon Rabi flopping.

use std::f64::consts::PI;

use crate::advisory::Advisory;
use crate::cavity::{CavityConfig, CavityGeometry};
use crate::error::{non_negative, positive, Error, Result};
use crate::optimize::{bisect, golden};

/// Failure probability above which a budget is marked invalid.
pub const BREAKDOWN_P: f64 = 0.5;

/// Normalised dark state of the atom–atom–cavity system in the basis
/// (|b,a,0⟩, |a,b,0⟩, |b,b,1⟩).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DarkStateDecomposition {
    pub amp_ba0: f64,
    pub amp_ab0: f64,
    pub amp_bb1: f64,
}

impl DarkStateDecomposition {
    pub fn norm(&self) -> f64 {
        (self.amp_ba0.powi(2) + self.amp_ab0.powi(2) + self.amp_bb1.powi(2)).sqrt()
    }

    pub fn photon_population(&self) -> f64 {
        self.amp_bb1 * self.amp_bb1
    }
}

/// Dark state ∝ (Ω₁g, Ω₂g, −Ω₁Ω₂).
pub fn dark_state(omega1: f64, omega2: f64, g: f64) -> Result<DarkStateDecomposition> {
    let v = [omega1 * g, omega2 * g, -omega1 * omega2];
    let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if !(n > 0.0 && n.is_finite()) {
        return Err(Error::domain("dark_state", n, "drives and coupling give a null vector"));
    }
    Ok(DarkStateDecomposition {
        amp_ba0: v[0] / n,
        amp_ab0: v[1] / n,
        amp_bb1: v[2] / n,
    })
}

/// Non-adiabatic loss of a linear-ramp passage, p₁ = 4/(T²Ω²).
pub fn adiabatic_leak(ramp_time: f64, omega_max: f64) -> Result<f64> {
    positive("ramp_time", ramp_time)?;
    positive("omega_max", omega_max)?;
    Ok(4.0 / (ramp_time * omega_max).powi(2))
}

/// Photon-decay loss during the passage, p₂ = Ω²κT/(2g²).
pub fn photon_decay_loss(omega_max: f64, g: f64, kappa: f64, ramp_time: f64) -> Result<f64> {
    non_negative("omega_max", omega_max)?;
    positive("g", g)?;
    non_negative("kappa", kappa)?;
    non_negative("ramp_time", ramp_time)?;
    Ok(omega_max * omega_max * kappa * ramp_time / (2.0 * g * g))
}

/// Value of ∫₀¹ s²(1−s)²/(s² + (1−s)²) ds: the photon-population integral of a
/// linear ramp in the weak-drive limit, in units of Ω²T/g².
pub const RAMP_PHOTON_INTEGRAL: f64 = 0.059_365_748_365_390_82;

/// Photon-decay loss using the exact ramp integral instead of the Ω²/2g²
/// mid-ramp estimate.
pub fn photon_decay_loss_ramp(omega_max: f64, g: f64, kappa: f64, ramp_time: f64) -> Result<f64> {
    Ok(photon_decay_loss(omega_max, g, kappa, ramp_time)? * 2.0 * RAMP_PHOTON_INTEGRAL)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CqedErrorBudget {
    pub p_nonadiabatic: f64,
    pub p_photon_decay: f64,
    pub p_total: f64,
    pub gate_time: f64,
}

impl CqedErrorBudget {
    pub fn new(p_nonadiabatic: f64, p_photon_decay: f64, gate_time: f64) -> Self {
        Self {
            p_nonadiabatic,
            p_photon_decay,
            p_total: p_nonadiabatic + p_photon_decay,
            gate_time,
        }
    }

    pub fn is_valid(&self) -> bool {
        self.p_total.is_finite() && self.p_total <= BREAKDOWN_P
    }
}

/// Linear-ramp passage: Ω₂ rises 0 → Ω over T while Ω₁ = Ω − Ω₂ falls.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdiabaticPulsePlan {
    pub omega_max: f64,
    pub ramp_time: f64,
    pub g: f64,
    pub kappa: f64,
}

impl AdiabaticPulsePlan {
    pub fn budget(&self) -> Result<CqedErrorBudget> {
        Ok(CqedErrorBudget::new(
            adiabatic_leak(self.ramp_time, self.omega_max)?,
            photon_decay_loss(self.omega_max, self.g, self.kappa, self.ramp_time)?,
            self.ramp_time,
        ))
    }

    /// Weak-drive condition Ω ≪ g.
    pub fn weak_drive(&self) -> bool {
        self.omega_max <= self.g / 3.0
    }

    pub fn advisories(&self, hyperfine_splitting: Option<f64>) -> Vec<Advisory> {
        let mut out = Vec::new();
        if !self.weak_drive() {
            out.push(Advisory::regime(
                "weak-drive",
                format!("Ω/g = {:.3} exceeds 1/3", self.omega_max / self.g),
            ));
        }
        if let Some(hf) = hyperfine_splitting {
            let fastest = self.omega_max.max(self.g);
            if hf < 10.0 * fastest {
                out.push(Advisory::note(
                    "hyperfine",
                    format!("hyperfine splitting is only {:.1}× max(Ω, g)", hf / fastest),
                ));
            }
        }
        out
    }
}

/// Operating point of the adiabatic gate for a target failure probability.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdiabaticRate {
    /// p²g²/(9κ)
    pub rate: f64,
    /// g²(p/3)^(3/2)/κ
    pub omega_required: f64,
    /// Balanced optimum p₁ = p₂ = p/2: p²g²/(8κ).
    pub rate_exact: f64,
    /// g²(p/2)^(3/2)/κ
    pub omega_exact: f64,
    /// Ramp time and drive found by direct numerical minimisation.
    pub numeric_ramp_time: f64,
    pub numeric_omega: f64,
    /// (g/κ)/(3/p)^(3/2); must be ≪ 1 for Ω ≪ g.
    pub validity_ratio: f64,
}

impl AdiabaticRate {
    pub fn plan(&self, g: f64, kappa: f64) -> AdiabaticPulsePlan {
        AdiabaticPulsePlan {
            omega_max: self.omega_required,
            ramp_time: 1.0 / self.rate,
            g,
            kappa,
        }
    }

    pub fn plan_exact(&self, g: f64, kappa: f64) -> AdiabaticPulsePlan {
        AdiabaticPulsePlan {
            omega_max: self.omega_exact,
            ramp_time: 1.0 / self.rate_exact,
            g,
            kappa,
        }
    }

    pub fn advisories(&self) -> Vec<Advisory> {
        let mut out = Vec::new();
        if self.validity_ratio > 1.0 / 3.0 {
            out.push(Advisory::regime(
                "cavity-window",
                format!(
                    "g/κ is {:.3} of (3/p)^(3/2); the required drive is not weak",
                    self.validity_ratio
                ),
            ));
        }
        out
    }
}

/// Smallest p₁ + p₂ reachable with ramp time T, minimised over the drive.
fn best_p_at(t: f64, g: f64, kappa: f64) -> (f64, f64) {
    // the optimum sits near Ω⁴ = 8g²/(κT³); search three decades either side
    let centre = (8.0 * g * g / (kappa * t.powi(3))).powf(0.25).ln();
    let f = |u: f64| {
        let w = u.exp();
        4.0 / (t * w).powi(2) + w * w * kappa * t / (2.0 * g * g)
    };
    let u = golden(&f, centre - 7.0, centre + 7.0, 140);
    (u.exp(), f(u))
}

pub fn adiabatic_rate(p: f64, g: f64, kappa: f64) -> Result<AdiabaticRate> {
    if !(p > 0.0 && p < 0.5) {
        return Err(Error::domain("p", p, "must lie in (0, 0.5)"));
    }
    positive("g", g)?;
    positive("kappa", kappa)?;
    let gg_k = g * g / kappa;
    let t_exact = 8.0 * kappa / (p * p * g * g);

    // p(T) decreases monotonically in T; solve p(T) = target in log time
    let ln_t = bisect(
        |u| best_p_at(u.exp(), g, kappa).1.ln() - p.ln(),
        t_exact.ln() - 10.0,
        t_exact.ln() + 10.0,
    )
    .unwrap_or(f64::NAN);
    let numeric_ramp_time = ln_t.exp();
    let numeric_omega = best_p_at(numeric_ramp_time, g, kappa).0;

    Ok(AdiabaticRate {
        rate: p * p * gg_k / 9.0,
        omega_required: gg_k * (p / 3.0).powf(1.5),
        rate_exact: 1.0 / t_exact,
        omega_exact: gg_k * (p / 2.0).powf(1.5),
        numeric_ramp_time,
        numeric_omega,
        validity_ratio: (g / kappa) / (3.0 / p).powf(1.5),
    })
}

/// Single-photon Rabi-flop gate: failure p = 2π√(2κΓ)/g, rate (g²/Γ)·p/8π².
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RabiFlop {
    pub p: f64,
    pub rate: f64,
    pub valid: bool,
}

pub fn rabi_flop_gate(kappa: f64, gamma: f64, g: f64) -> Result<RabiFlop> {
    positive("kappa", kappa)?;
    positive("gamma", gamma)?;
    positive("g", g)?;
    let p = 2.0 * PI * (2.0 * kappa * gamma).sqrt() / g;
    Ok(RabiFlop {
        p,
        rate: g * g / gamma * p / (8.0 * PI * PI),
        valid: p <= 1.0,
    })
}

/// Rabi-flop failure of a Fabry–Perot cavity from its mode diameter and
/// finesse alone: p = (4π²w/λ)(3F)^(−1/2).
pub fn finesse_p(waist: f64, lambda: f64, finesse: f64) -> Result<f64> {
    positive("waist", waist)?;
    positive("lambda", lambda)?;
    positive("finesse", finesse)?;
    Ok(4.0 * PI * PI * waist / lambda / (3.0 * finesse).sqrt())
}

/// Rescales a microsphere cavity to `radius`: g and κ both scale as 1/radius.
pub fn microsphere_config(radius: f64, reference: &CavityConfig) -> Result<CavityConfig> {
    positive("radius", radius)?;
    let CavityGeometry::Microsphere {
        radius: r_ref,
        quality_factor,
    } = reference.geometry
    else {
        return Err(Error::Config(
            "microsphere scaling needs a microsphere reference".into(),
        ));
    };
    let s = r_ref / radius;
    Ok(CavityConfig {
        geometry: CavityGeometry::Microsphere { radius, quality_factor },
        waist: None,
        mode_volume: None,
        g: reference.g * s,
        kappa: reference.kappa * s,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cavity::cavity_kappa;
    use crate::species::lookup;
    use crate::units::{angular, ordinary};
    use proptest::prelude::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a / b - 1.0).abs()
    }

    #[test]
    fn dark_state_examples() {
        let d = dark_state(0.0, 1.0, 10.0).unwrap();
        assert_eq!((d.amp_ba0, d.amp_ab0, d.amp_bb1), (0.0, 1.0, 0.0));
        let d = dark_state(1.0, 1.0, 1.0).unwrap();
        let s = 1.0 / 3f64.sqrt();
        assert!((d.amp_ba0 - s).abs() < 1e-15 && (d.amp_bb1 + s).abs() < 1e-15);
        let d = dark_state(1e-3, 1e-3, 1.0).unwrap();
        assert!(rel(d.photon_population(), 1e-6 / 2.0) < 1e-5);
        assert!(dark_state(0.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn loss_examples() {
        assert!(rel(adiabatic_leak(20.0, 1.0).unwrap(), 0.01) < 1e-12);
        assert_eq!(adiabatic_leak(2.0, 1.0).unwrap(), 1.0);
        let b = AdiabaticPulsePlan {
            omega_max: 1.0,
            ramp_time: 2.0,
            g: 10.0,
            kappa: 0.0,
        }
        .budget()
        .unwrap();
        assert!(!b.is_valid());
        assert_eq!(photon_decay_loss(1.0, 10.0, 0.0, 5.0).unwrap(), 0.0);
        assert!(rel(photon_decay_loss(0.1, 1.0, 1.0, 1.0).unwrap(), 5e-3) < 1e-12);
    }

    #[test]
    fn ramp_integral_value() {
        let n = 200_000;
        let h = 1.0 / n as f64;
        let sum: f64 = (0..n)
            .map(|i| {
                let s = (i as f64 + 0.5) * h;
                s * s * (1.0 - s).powi(2) / (s * s + (1.0 - s).powi(2))
            })
            .sum();
        assert!((sum * h - RAMP_PHOTON_INTEGRAL).abs() < 1e-10);
    }

    #[test]
    fn barium_adiabatic_rate() {
        let ba = lookup("ba").unwrap();
        let cav = CavityConfig::fabry_perot(&ba, 100e-6, 4.2e5, 0.02).unwrap();
        let r = adiabatic_rate(0.01, cav.g, cav.kappa).unwrap();
        assert!(rel(1.0 / r.rate, 13.15e-6) < 0.01, "{}", 1.0 / r.rate);
        assert!(rel(1.0 / r.rate / 200.0, 66e-9) < 0.01);
        assert!(rel(1.0 / r.rate_exact, 11.69e-6) < 0.01);
        assert!(rel(r.numeric_ramp_time, 1.0 / r.rate_exact) < 1e-6);
        assert!(rel(r.numeric_omega, r.omega_exact) < 1e-4);
        assert!(r.advisories().is_empty());

        let half = adiabatic_rate(0.005, cav.g, cav.kappa).unwrap();
        assert!(rel(r.rate / half.rate, 4.0) < 1e-12);
        assert!(adiabatic_rate(0.6, cav.g, cav.kappa).is_err());
    }

    #[test]
    fn conventional_operating_point_is_unbalanced() {
        let r = adiabatic_rate(0.01, 1.0, 1e-3).unwrap();
        let b = r.plan(1.0, 1e-3).budget().unwrap();
        assert!(rel(b.p_nonadiabatic, 4.0 / 3.0 * 0.01) < 1e-9);
        assert!(rel(b.p_photon_decay, 0.01 / 6.0) < 1e-9);
        let e = r.plan_exact(1.0, 1e-3).budget().unwrap();
        assert!(rel(e.p_nonadiabatic, 0.005) < 1e-9 && rel(e.p_photon_decay, 0.005) < 1e-9);
    }

    #[test]
    fn rabi_flop_examples() {
        let cs = lookup("cs").unwrap();
        let r = rabi_flop_gate(angular(8e6), cs.gamma, angular(70e6)).unwrap();
        assert!((r.p - 0.8).abs() < 0.05, "{}", r.p);
        let g = 6.0 * cs.gamma;
        let r = rabi_flop_gate(g / 174.0, cs.gamma, g).unwrap();
        assert!((r.p - 0.3).abs() < 0.03, "{}", r.p);
        let a = rabi_flop_gate(1.0, 2.0, 100.0).unwrap();
        let b = rabi_flop_gate(1.0, 2.0, 200.0).unwrap();
        assert!(rel(a.p, 2.0 * b.p) < 1e-12 && rel(b.rate, 2.0 * a.rate) < 1e-12);
        assert!(!rabi_flop_gate(100.0, 100.0, 1.0).unwrap().valid);
    }

    #[test]
    fn finesse_examples() {
        let p = finesse_p(20e-6, 852e-9, 4.2e5).unwrap();
        assert!((p - 0.83).abs() < 0.005, "{p}");
        let q = finesse_p(20e-6, 852e-9, 16.8e5).unwrap();
        assert!(rel(p, 2.0 * q) < 1e-12);
    }

    #[test]
    fn microsphere_scaling() {
        let cs = lookup("cs").unwrap();
        let reference = CavityConfig::microsphere(&cs, 50e-6, 6.0, 174.0, None).unwrap();
        let same = microsphere_config(50e-6, &reference).unwrap();
        assert_eq!(same, reference);
        let big = microsphere_config(63e-6, &reference).unwrap();
        assert!((big.g / cs.gamma - 4.8).abs() < 0.05);
        assert!(rel(big.g, 1.6e8) < 0.02);
        assert!(rel(ordinary(big.kappa), 0.9e6 / (2.0 * PI)) < 0.05 || rel(big.kappa, 0.9e6) < 0.05);
        let fp = CavityConfig::fabry_perot(&cs, 44.6e-6, 4.2e5, 0.1).unwrap();
        assert!(microsphere_config(63e-6, &fp).is_err());
    }

    proptest! {
        #[test]
        fn finesse_identity(lw in -5.5f64..-4.0, ll in -6.7f64..-6.0, lf in 3.0f64..7.0, l_len in -5.0f64..-3.0) {
            let (w, lambda, f, len) = (10f64.powf(lw), 10f64.powf(ll), 10f64.powf(lf), 10f64.powf(l_len));
            let cs = lookup("cs").unwrap();
            let sp = crate::species::IonSpecies::new("x", cs.mass, lambda, cs.gamma, None).unwrap();
            let cav = CavityConfig::fabry_perot_with_waist(&sp, len, f, 1.0, w).unwrap();
            let r = rabi_flop_gate(cavity_kappa(f, len).unwrap(), sp.gamma, cav.g).unwrap();
            prop_assert!(rel(r.p, finesse_p(w, lambda, f).unwrap()) < 1e-9);
        }

        #[test]
        fn exact_and_conventional_rates_differ_by_nine_eighths(lp in -4.0f64..-0.4, lg in 6.0f64..10.0, lk in -4.0f64..-0.5) {
            let p = 10f64.powf(lp);
            let g = 10f64.powf(lg);
            let r = adiabatic_rate(p, g, g * 10f64.powf(lk)).unwrap();
            prop_assert!(rel(r.rate_exact / r.rate, 9.0 / 8.0) < 1e-12);
        }

        #[test]
        fn dark_state_is_normalised(o1 in 0.0f64..10.0, o2 in 0.01f64..10.0, g in 0.01f64..10.0) {
            let d = dark_state(o1, o2, g).unwrap();
            prop_assert!((d.norm() - 1.0).abs() < 1e-12);
            // orthogonal to the bright combination (Ω₂, −Ω₁, 0)
            prop_assert!((d.amp_ba0 * o2 - d.amp_ab0 * o1).abs() < 1e-12);
            prop_assert!(d.amp_bb1 <= 0.0);
        }

        #[test]
        fn rabi_flop_monotone(k in 0.1f64..10.0, gm in 0.1f64..10.0, g in 1.0f64..100.0) {
            let base = rabi_flop_gate(k, gm, g).unwrap().p;
            prop_assert!(rabi_flop_gate(k, gm, g * 1.1).unwrap().p < base);
            prop_assert!(rabi_flop_gate(k * 1.1, gm, g).unwrap().p > base);
            prop_assert!(rabi_flop_gate(k, gm * 1.1, g).unwrap().p > base);
        }
    }
}
