//! Named scalar reports for each estimator, shared by the command line and
//! the browser demo. Row keys carry their unit; frequencies are ordinary
//! (ν = ω/2π, Hz).

use std::fmt;
use std::str::FromStr;

use crate::advisory::Advisory;
use crate::architecture::{estimate, machine_layout};
use crate::cavity::CavityGeometry;
use crate::config::Scenario;
use crate::cqed::{adiabatic_rate, finesse_p, rabi_flop_gate};
use crate::error::{Error, Result};
use crate::motional::{
    breathing_mode, cz_optimum, cz_preconditions, cz_rate_at_p, lightshift_gate, ms_scaling, ms_tradeoff,
    offres_advisories, per_ion_time, MotionalErrorBudget, RamanDrive,
};
use crate::oracle::{check_adiabatic_passage, check_carrier_leakage, check_raman_scattering};
use crate::species::IonSpecies;
use crate::trap::addressing_waist;
use crate::units::{angular, format_si, ordinary, sig3, Dimension};

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Num(f64, Dimension),
    Count(u64),
    Flag(bool),
    Text(String),
    Missing,
}

impl Value {
    pub fn as_f64(&self) -> Option<f64> {
        match *self {
            Value::Num(v, _) => Some(v),
            Value::Count(c) => Some(c as f64),
            Value::Flag(b) => Some(b as u8 as f64),
            _ => None,
        }
    }

    /// Three significant figures with an SI prefix.
    pub fn display(&self) -> String {
        match self {
            Value::Num(v, Dimension::Dimensionless) => sig3(*v),
            Value::Num(v, Dimension::Time) if v.abs() >= 1.0 || *v == 0.0 => format!("{} s", sig3(*v)),
            Value::Num(v, Dimension::Time) => format!("{} ({} s)", format_si(*v, Dimension::Time), sig3(*v)),
            Value::Num(v, dim) => format_si(*v, *dim),
            Value::Count(c) => c.to_string(),
            Value::Flag(b) => b.to_string(),
            Value::Text(t) => t.clone(),
            Value::Missing => "-".into(),
        }
    }

    /// Full precision, for CSV.
    pub fn raw(&self) -> String {
        match self {
            Value::Num(v, _) => format!("{v:e}"),
            Value::Count(c) => c.to_string(),
            Value::Flag(b) => (*b as u8).to_string(),
            Value::Text(t) => t.clone(),
            Value::Missing => String::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub title: String,
    pub rows: Vec<(String, Value)>,
    pub advisories: Vec<Advisory>,
    /// False when an error budget is past breakdown.
    pub valid: bool,
    /// For oracle checks: whether numeric and analytic values agree.
    pub within_tolerance: Option<bool>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Self {
            title: title.into(),
            rows: Vec::new(),
            advisories: Vec::new(),
            valid: true,
            within_tolerance: None,
        }
    }

    pub fn push(&mut self, key: &str, value: Value) {
        self.rows.push((key.to_string(), value));
    }

    pub fn num(&mut self, key: &str, v: f64, dim: Dimension) {
        self.push(key, Value::Num(v, dim));
    }

    pub fn scalar(&mut self, key: &str, v: f64) {
        self.num(key, v, Dimension::Dimensionless);
    }

    pub fn opt(&mut self, key: &str, v: Option<f64>, dim: Dimension) {
        self.push(key, v.map_or(Value::Missing, |v| Value::Num(v, dim)));
    }

    pub fn get(&self, key: &str) -> Option<f64> {
        self.rows.iter().find(|(k, _)| k == key).and_then(|(_, v)| v.as_f64())
    }

    pub fn value(&self, key: &str) -> Option<&Value> {
        self.rows.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    pub fn has_regime_advisory(&self) -> bool {
        self.advisories.iter().any(Advisory::is_regime)
    }

    pub fn advise(&mut self, list: impl IntoIterator<Item = Advisory>) {
        self.advisories.extend(list);
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.title)?;
        let width = self.rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        for (k, v) in &self.rows {
            writeln!(f, "  {k:<width$}  {}", v.display())?;
        }
        for a in &self.advisories {
            writeln!(f, "  {a}")?;
        }
        if !self.valid {
            writeln!(
                f,
                "  INVALID: model breakdown (a failure term exceeds its perturbative range)"
            )?;
        }
        if let Some(ok) = self.within_tolerance {
            writeln!(f, "  tolerance: {}", if ok { "pass" } else { "FAIL" })?;
        }
        Ok(())
    }
}

const HZ: Dimension = Dimension::Frequency;
const S: Dimension = Dimension::Time;
const M: Dimension = Dimension::Length;

pub fn species_report(s: &IonSpecies) -> Report {
    let mut r = Report::new(format!("species {}", s.name));
    r.push("name", Value::Text(s.name.clone()));
    r.num("mass_kg", s.mass, Dimension::Mass);
    r.num("wavelength_m", s.lambda, M);
    r.num("linewidth_hz", ordinary(s.gamma), HZ);
    r.scalar("dipole_cm", s.dipole);
    r.opt("hyperfine_hz", s.hyperfine_splitting.map(ordinary), HZ);
    r
}

pub fn cavity_report(sc: &Scenario) -> Result<Report> {
    let sp = sc.require_species()?;
    let cav = sc.require_cavity()?;
    let mut r = Report::new(format!("{} cavity, {}", cav.kind(), sp.name));
    r.push("kind", Value::Text(cav.kind().into()));
    let (length, finesse, curvature, radius, q) = match cav.geometry {
        CavityGeometry::FabryPerot {
            length,
            finesse,
            mirror_curvature,
        } => (Some(length), Some(finesse), Some(mirror_curvature), None, None),
        CavityGeometry::Microsphere { radius, quality_factor } => (None, None, None, Some(radius), quality_factor),
    };
    r.opt("length_m", length, M);
    r.opt("finesse", finesse, Dimension::Dimensionless);
    r.opt("mirror_curvature_m", curvature, M);
    r.opt("radius_m", radius, M);
    r.opt("quality_factor", q, Dimension::Dimensionless);
    r.opt("waist_m", cav.waist, M);
    r.opt("mode_volume_m3", cav.mode_volume, Dimension::Dimensionless);
    r.num("g_hz", ordinary(cav.g), HZ);
    r.num("kappa_hz", ordinary(cav.kappa), HZ);
    r.num("linewidth_hz", ordinary(sp.gamma), HZ);
    r.scalar("g_over_gamma", cav.g / sp.gamma);
    r.scalar("g_over_kappa", cav.g / cav.kappa);
    let flop = rabi_flop_gate(cav.kappa, sp.gamma, cav.g)?;
    r.scalar("rabi_flop_p", flop.p);
    r.num("rabi_flop_rate_hz", flop.rate, HZ);
    let fp = match (cav.waist, finesse) {
        (Some(w), Some(f)) => Some(finesse_p(w, sp.lambda, f)?),
        _ => None,
    };
    r.opt("finesse_p", fp, Dimension::Dimensionless);
    if !flop.valid {
        r.advise([Advisory::regime("rabi-flop", "Rabi-flop failure probability exceeds 1")]);
    }
    Ok(r)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GateMethod {
    Cz,
    Lightshift,
    Ms,
    Adiabatic,
    RabiFlop,
}

impl GateMethod {
    pub const ALL: [GateMethod; 5] = [
        GateMethod::Cz,
        GateMethod::Lightshift,
        GateMethod::Ms,
        GateMethod::Adiabatic,
        GateMethod::RabiFlop,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GateMethod::Cz => "cz",
            GateMethod::Lightshift => "lightshift",
            GateMethod::Ms => "ms",
            GateMethod::Adiabatic => "adiabatic",
            GateMethod::RabiFlop => "rabi_flop",
        }
    }
}

impl FromStr for GateMethod {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        GateMethod::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::Unknown {
                kind: "gate method",
                name: s.to_string(),
            })
    }
}

pub fn gate_report(sc: &Scenario, method: GateMethod) -> Result<Report> {
    match method {
        GateMethod::Cz => cz_report(sc),
        GateMethod::Lightshift => lightshift_report(sc),
        GateMethod::Ms => ms_report(sc),
        GateMethod::Adiabatic => adiabatic_report(sc),
        GateMethod::RabiFlop => rabi_flop_report(sc),
    }
}

fn per_ion(sc: &Scenario, rate: f64) -> Result<Option<f64>> {
    match &sc.trap {
        Some(t) if rate > 0.0 => Ok(Some(per_ion_time(rate, t.config.n_ions, sc.gate.scaling_exponent)?)),
        _ => Ok(None),
    }
}

fn push_trap(r: &mut Report, sc: &Scenario) -> Result<()> {
    let t = sc.require_trap()?;
    r.push("n_ions", Value::Count(t.config.n_ions as u64));
    r.num("axial_freq_hz", ordinary(t.config.omega_z), HZ);
    r.push(
        "axial_freq_source",
        Value::Text(if t.axial_derived { "spacing" } else { "configured" }.into()),
    );
    r.scalar("eta", t.config.eta);
    r.advise(t.config.advisories());
    Ok(())
}

fn cz_budget(
    sc: &Scenario,
    eta: f64,
    omega_z: f64,
) -> Result<Option<(MotionalErrorBudget, f64, crate::motional::CzOptimum, RamanDrive)>> {
    let (Some(kappa), Some(rabi)) = (sc.trap.as_ref().and_then(|t| t.heating_rate), sc.gate.rabi_freq_mhz) else {
        return Ok(None);
    };
    let sp = sc.require_species()?;
    let omega = angular(rabi * 1e6);
    let g = eta * omega;
    let opt = cz_optimum(kappa, sp.gamma, g)?;
    let detuning = match sc.gate.detuning_ghz {
        Some(d) => angular(d * 1e9),
        None => omega / opt.ratio,
    };
    let drive = RamanDrive::new(omega, detuning, eta)?;
    let budget = MotionalErrorBudget::cirac_zoller(&drive, sp.gamma, kappa, omega_z)?;
    Ok(Some((budget, kappa, opt, drive)))
}

fn cz_report(sc: &Scenario) -> Result<Report> {
    let t = sc.require_trap()?;
    let sp = sc.require_species()?;
    let mut r = Report::new(format!("Cirac-Zoller gate, {} x {}", t.config.n_ions, sp.name));
    push_trap(&mut r, sc)?;
    let (eta, omega_z) = if t.breathing_mode {
        breathing_mode(t.config.eta, t.config.omega_z)
    } else {
        (t.config.eta, t.config.omega_z)
    };
    r.push(
        "mode",
        Value::Text(if t.breathing_mode { "breathing" } else { "com" }.into()),
    );
    r.num("mode_freq_hz", ordinary(omega_z), HZ);
    r.scalar("mode_eta", eta);
    let p = sc.gate.target_p;
    r.scalar("target_p", p);
    let rate = cz_rate_at_p(p, eta, omega_z)?;
    r.num("rate_hz", rate, HZ);
    r.num("gate_time_s", 1.0 / rate, S);
    r.opt("per_ion_time_s", per_ion(sc, rate)?, S);

    let budget = cz_budget(sc, eta, omega_z)?;
    let get =
        |f: fn(&(MotionalErrorBudget, f64, crate::motional::CzOptimum, RamanDrive)) -> f64| budget.as_ref().map(f);
    r.opt(
        "optimum_omega_over_detuning",
        get(|b| b.2.ratio),
        Dimension::Dimensionless,
    );
    r.opt("optimum_p_min", get(|b| b.2.p_min), Dimension::Dimensionless);
    r.opt("optimum_rate_hz", get(|b| b.2.rate), HZ);
    r.opt("rabi_freq_hz", get(|b| ordinary(b.3.omega)), HZ);
    r.opt("detuning_hz", get(|b| ordinary(b.3.detuning)), HZ);
    r.opt("p_scatter", get(|b| b.0.p_scatter), Dimension::Dimensionless);
    r.opt("p_heating", get(|b| b.0.p_heating), Dimension::Dimensionless);
    r.opt("p_offres", get(|b| b.0.p_offres), Dimension::Dimensionless);
    r.opt("p_total", get(|b| b.0.p_total), Dimension::Dimensionless);
    r.opt("budget_gate_time_s", get(|b| b.0.gate_time), S);

    let kappa = t.heating_rate;
    let detuning = budget.as_ref().map(|b| b.3.detuning);
    r.advise(cz_preconditions(p, rate, eta, kappa, Some(sp.gamma), detuning));
    if let Some((b, _, opt, drive)) = &budget {
        r.advise(drive.advisories(sp.gamma));
        r.advise(offres_advisories(drive.omega_eff_carrier, omega_z));
        r.valid = opt.valid && b.is_valid();
    }
    Ok(r)
}

fn lightshift_report(sc: &Scenario) -> Result<Report> {
    let t = sc.require_trap()?;
    let sp = sc.require_species()?;
    let mut r = Report::new(format!("light-shift gate, {} x {}", t.config.n_ions, sp.name));
    push_trap(&mut r, sc)?;
    let (rate, p) = lightshift_gate(t.config.eta, t.config.omega_z)?;
    r.num("rate_hz", rate, HZ);
    r.scalar("p_est", p);
    r.opt("gate_time_s", (rate > 0.0).then(|| 1.0 / rate), S);
    r.opt("per_ion_time_s", per_ion(sc, rate)?, S);
    let spacing = t.config.spacing();
    let w = addressing_waist(spacing, t.crosstalk)?;
    r.num("spacing_m", spacing, M);
    r.num("addressing_waist_m", w, M);
    r.scalar("addressing_waist_over_lambda", w / sp.lambda);
    r.valid = p <= crate::motional::BREAKDOWN_P;
    Ok(r)
}

fn ms_report(sc: &Scenario) -> Result<Report> {
    let m = sc.gate.m_factor;
    let mut r = Report::new(format!("Molmer-Sorensen trade-off, M = {m}"));
    r.push("m_factor", Value::Count(m as u64));
    if let Some(cav) = &sc.cavity {
        let sp = sc.require_species()?;
        let flop = rabi_flop_gate(cav.kappa, sp.gamma, cav.g)?;
        let (p, rate) = ms_scaling(flop.p, flop.rate, m)?;
        r.push("coupling", Value::Text("photon".into()));
        r.scalar("base_p", flop.p);
        r.num("base_rate_hz", flop.rate, HZ);
        r.scalar("p_total", p);
        r.num("rate_hz", rate, HZ);
        r.num("gate_time_s", 1.0 / rate, S);
        r.opt("per_ion_time_s", per_ion(sc, rate)?, S);
        r.valid = p <= 1.0;
        return Ok(r);
    }
    let t = sc.require_trap()?;
    let (eta, omega_z) = if t.breathing_mode {
        breathing_mode(t.config.eta, t.config.omega_z)
    } else {
        (t.config.eta, t.config.omega_z)
    };
    let (base, ..) = cz_budget(sc, eta, omega_z)?
        .ok_or_else(|| Error::Config("ms needs a cavity, or trap.heating_rate_per_s with gate.rabi_freq_mhz".into()))?;
    let b = ms_tradeoff(&base, m)?;
    r.push("coupling", Value::Text("motional".into()));
    r.scalar("base_p", base.p_total);
    r.num("base_rate_hz", 1.0 / base.gate_time, HZ);
    r.scalar("p_total", b.p_total);
    r.num("rate_hz", 1.0 / b.gate_time, HZ);
    r.num("gate_time_s", b.gate_time, S);
    r.opt("per_ion_time_s", per_ion(sc, 1.0 / b.gate_time)?, S);
    r.valid = b.is_valid();
    Ok(r)
}

fn adiabatic_report(sc: &Scenario) -> Result<Report> {
    let sp = sc.require_species()?;
    let cav = sc.require_cavity()?;
    let p = sc.gate.target_p;
    let mut r = Report::new(format!("adiabatic passage gate, {} in {} cavity", sp.name, cav.kind()));
    r.scalar("target_p", p);
    r.num("g_hz", ordinary(cav.g), HZ);
    r.num("kappa_hz", ordinary(cav.kappa), HZ);
    let a = adiabatic_rate(p, cav.g, cav.kappa)?;
    let plan = a.plan(cav.g, cav.kappa);
    let budget = plan.budget()?;
    let exact = a.plan_exact(cav.g, cav.kappa).budget()?;
    r.num("omega_required_hz", ordinary(a.omega_required), HZ);
    r.num("rate_hz", a.rate, HZ);
    r.num("gate_time_s", 1.0 / a.rate, S);
    r.scalar("p_nonadiabatic", budget.p_nonadiabatic);
    r.scalar("p_photon_decay", budget.p_photon_decay);
    r.scalar("p_total", budget.p_total);
    r.opt("per_ion_time_s", per_ion(sc, a.rate)?, S);
    r.num("omega_exact_hz", ordinary(a.omega_exact), HZ);
    r.num("rate_exact_hz", a.rate_exact, HZ);
    r.num("gate_time_exact_s", 1.0 / a.rate_exact, S);
    r.scalar("p_total_exact", exact.p_total);
    r.opt("per_ion_time_exact_s", per_ion(sc, a.rate_exact)?, S);
    r.num("gate_time_numeric_s", a.numeric_ramp_time, S);
    r.num("omega_numeric_hz", ordinary(a.numeric_omega), HZ);
    r.scalar("validity_ratio", a.validity_ratio);
    r.advise(a.advisories());
    r.advise(plan.advisories(sp.hyperfine_splitting));
    r.valid = budget.is_valid();
    Ok(r)
}

fn rabi_flop_report(sc: &Scenario) -> Result<Report> {
    let sp = sc.require_species()?;
    let cav = sc.require_cavity()?;
    let mut r = Report::new(format!("Rabi-flop photon gate, {} in {} cavity", sp.name, cav.kind()));
    r.num("g_hz", ordinary(cav.g), HZ);
    r.num("kappa_hz", ordinary(cav.kappa), HZ);
    r.num("linewidth_hz", ordinary(sp.gamma), HZ);
    let flop = rabi_flop_gate(cav.kappa, sp.gamma, cav.g)?;
    r.scalar("p", flop.p);
    r.num("rate_hz", flop.rate, HZ);
    r.num("gate_time_s", 1.0 / flop.rate, S);
    r.opt("per_ion_time_s", per_ion(sc, flop.rate)?, S);
    let fp = match (cav.waist, cav.finesse()) {
        (Some(w), Some(f)) => Some(finesse_p(w, sp.lambda, f)?),
        _ => None,
    };
    r.opt("finesse_p", fp, Dimension::Dimensionless);
    r.valid = flop.valid;
    Ok(r)
}

/// Physical gate (time, failure) feeding a machine, as derived from the scenario.
pub fn machine_base_gate(sc: &Scenario) -> Result<(f64, f64)> {
    let m = sc.require_machine()?;
    match m.base_gate.as_str() {
        "lightshift" => {
            let t = sc.require_trap()?;
            let (rate, p) = lightshift_gate(t.config.eta, t.config.omega_z)?;
            Ok((1.0 / rate, p))
        }
        "cz" => {
            let t = sc.require_trap()?;
            let (eta, w) = if t.breathing_mode {
                breathing_mode(t.config.eta, t.config.omega_z)
            } else {
                (t.config.eta, t.config.omega_z)
            };
            Ok((1.0 / cz_rate_at_p(m.base_gate_p, eta, w)?, m.base_gate_p))
        }
        "adiabatic" => {
            let cav = sc.require_cavity()?;
            let a = adiabatic_rate(m.base_gate_p, cav.g, cav.kappa)?;
            Ok((1.0 / a.rate, m.base_gate_p))
        }
        "rabi_flop" => {
            let sp = sc.require_species()?;
            let cav = sc.require_cavity()?;
            let f = rabi_flop_gate(cav.kappa, sp.gamma, cav.g)?;
            Ok((1.0 / f.rate, f.p))
        }
        other => Err(Error::Unknown {
            kind: "machine.base_gate",
            name: other.to_string(),
        }),
    }
}

pub fn machine_report(sc: &Scenario) -> Result<Report> {
    let spec = sc.require_machine()?;
    let config = spec.config();
    config.validate()?;
    let mut r = Report::new(format!(
        "machine: {} logical qubits, {} Toffolis",
        config.logical_qubits, config.toffoli_count
    ));
    let layout = machine_layout(&config);
    r.push("logical_qubits", Value::Count(config.logical_qubits));
    r.push("toffoli_count", Value::Count(config.toffoli_count));
    r.push("ions_per_trap", Value::Count(config.ions_per_trap()));
    for (label, count) in &layout.terms {
        r.push(label, Value::Count(*count));
    }
    r.push("derived_block_traps", Value::Count(layout.derived_block_traps));
    r.push("derived_total_traps", Value::Count(layout.derived_total_traps));
    let opt_count = |v: Option<u64>| v.map_or(Value::Missing, Value::Count);
    r.push("stated_block_traps", opt_count(layout.stated_block_traps));
    r.push("stated_total_traps", opt_count(layout.stated_total_traps));

    let (derived_time, p) = machine_base_gate(sc)?;
    let quoted = match (spec.quoted_rate_hz, spec.quoted_time_us) {
        (Some(_), Some(_)) => {
            return Err(Error::Config(
                "give machine.quoted_rate_hz or machine.quoted_time_us, not both".into(),
            ))
        }
        (Some(rate), None) => Some(1.0 / rate),
        (None, Some(t)) => Some(t * 1e-6),
        (None, None) => None,
    };
    let time = quoted.unwrap_or(derived_time);
    let est = estimate(&config, time, p)?;
    let derived = estimate(&config, derived_time, p)?;
    r.push("base_gate", Value::Text(spec.base_gate.clone()));
    r.push(
        "gate_time_source",
        Value::Text(if quoted.is_some() { "quoted" } else { "derived" }.into()),
    );
    r.num("physical_gate_time_s", time, S);
    r.scalar("physical_gate_p", p);
    r.num("corrected_gate_time_s", est.corrected_gate_time, S);
    r.scalar("corrected_gate_p", est.corrected_gate_p);
    r.num("correction_time_s", est.correction_time, S);
    r.num("total_runtime_s", est.total_runtime, S);
    r.scalar("runtime_weeks", est.runtime_weeks);
    r.num("derived_gate_time_s", derived_time, S);
    r.num("derived_correction_time_s", derived.correction_time, S);
    r.scalar("derived_runtime_weeks", derived.runtime_weeks);
    r.scalar("gate_noise_margin", est.noise.gate_margin);
    r.scalar("memory_noise_margin", est.noise.memory_margin);
    r.push("noise_pass", Value::Flag(est.noise.pass()));
    r.advise(est.advisories);
    Ok(r)
}

pub fn carrier_report(ratio: f64, eta: f64) -> Result<Report> {
    let omega_z = 1.0;
    let c = check_carrier_leakage(eta * ratio, ratio, omega_z)?;
    let mut r = Report::new("oracle: carrier leakage during two sideband pi pulses");
    r.scalar("carrier_over_trap", ratio);
    r.scalar("sideband_over_carrier", eta);
    r.scalar("p3_numeric", c.p3_numeric);
    r.scalar("p3_analytic", c.p3_analytic);
    r.scalar("ratio", c.ratio);
    r.advise(c.advisories);
    r.within_tolerance = Some(c.pass);
    Ok(r)
}

pub fn adiabatic_oracle_report(
    t_omega: f64,
    g_over_omega: f64,
    kappa_over_g: f64,
    gamma_over_g: f64,
) -> Result<Report> {
    let omega = 1.0;
    let g = g_over_omega * omega;
    let c = check_adiabatic_passage(omega, g, kappa_over_g * g, gamma_over_g * g, t_omega / omega)?;
    let mut r = Report::new("oracle: adiabatic passage through the cavity dark state");
    r.scalar("t_omega", t_omega);
    r.scalar("g_over_omega", g_over_omega);
    r.scalar("kappa_over_g", kappa_over_g);
    r.scalar("gamma_over_g", gamma_over_g);
    r.scalar("infidelity_numeric", c.infidelity_numeric);
    r.scalar("infidelity_lossless", c.infidelity_lossless);
    r.scalar("infidelity_lossless_nominal", c.infidelity_lossless_nominal);
    r.scalar("p1_analytic", c.p1_analytic);
    r.scalar("p1_ratio", c.p1_ratio);
    r.scalar("leaked_norm", c.leaked_norm);
    r.scalar("p2_analytic", c.p2_analytic);
    r.scalar("p2_ramp_integral", c.p2_ramp);
    r.opt("p2_ratio", c.p2_ratio, Dimension::Dimensionless);
    r.within_tolerance = Some(c.pass());
    r.advise(c.advisories);
    Ok(r)
}

/// Parameters in units of the single-photon Rabi frequency Ω.
pub fn raman_report(detuning: f64, gamma: f64, sideband_g: f64) -> Result<Report> {
    let c = check_raman_scattering(1.0, detuning, gamma, sideband_g)?;
    let mut r = Report::new("oracle: Raman scattering through the detuned excited state");
    r.scalar("detuning_over_omega", detuning);
    r.scalar("gamma_over_omega", gamma);
    r.scalar("g_over_omega", sideband_g);
    r.scalar("p1_numeric", c.p1_numeric);
    r.scalar("p1_analytic", c.p1_analytic);
    r.scalar("ratio", c.ratio);
    r.within_tolerance = Some(c.pass);
    r.advise(c.advisories);
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::ScenarioBuilder;

    fn preset(name: &str) -> Scenario {
        ScenarioBuilder::new().preset(name).unwrap().build().unwrap()
    }

    #[test]
    fn rabi_flop_preset() {
        let r = gate_report(&preset("cs-fp-cavity"), GateMethod::RabiFlop).unwrap();
        assert!((r.get("p").unwrap() - 0.83).abs() < 0.01);
        assert!(r.valid);
    }

    #[test]
    fn lightshift_preset() {
        let r = gate_report(&preset("ca-140"), GateMethod::Lightshift).unwrap();
        assert!((r.get("rate_hz").unwrap() / 8e3 - 1.0).abs() < 0.1);
    }

    #[test]
    fn cz_breakdown_is_invalid() {
        let sc = ScenarioBuilder::new()
            .preset("ca-140")
            .unwrap()
            .set("trap.heating_rate_per_s=1e9")
            .unwrap()
            .set("gate.rabi_freq_mhz=10")
            .unwrap()
            .build()
            .unwrap();
        let r = gate_report(&sc, GateMethod::Cz).unwrap();
        assert!(!r.valid);
        let ok = ScenarioBuilder::new()
            .preset("ca-140")
            .unwrap()
            .set("trap.heating_rate_per_s=1")
            .unwrap()
            .set("gate.rabi_freq_mhz=100")
            .unwrap()
            .build()
            .unwrap();
        let r = gate_report(&ok, GateMethod::Cz).unwrap();
        assert!(r.valid, "{r}");
        let sum = r.get("p_scatter").unwrap() + r.get("p_heating").unwrap() + r.get("p_offres").unwrap();
        assert!((sum - r.get("p_total").unwrap()).abs() < 1e-15);
    }

    #[test]
    fn stable_columns_for_cz() {
        let a = gate_report(&preset("ca-140"), GateMethod::Cz).unwrap();
        let b = gate_report(&preset("be-140"), GateMethod::Cz).unwrap();
        let keys = |r: &Report| r.rows.iter().map(|(k, _)| k.clone()).collect::<Vec<_>>();
        assert_eq!(keys(&a), keys(&b));
    }

    #[test]
    fn machine_presets() {
        let r = machine_report(&preset("machine-iontrap")).unwrap();
        assert!((r.get("corrected_gate_time_s").unwrap() - 1250e-6).abs() < 1e-12);
        assert!((r.get("runtime_weeks").unwrap() - 8.27).abs() < 0.02);
        let r = machine_report(&preset("machine-microsphere")).unwrap();
        assert!((r.get("corrected_gate_time_s").unwrap() - 350e-6).abs() < 1e-12);
        assert!((r.get("runtime_weeks").unwrap() - 2.31).abs() < 0.02);
        assert!(r.get("derived_gate_time_s").unwrap() > 70e-6);
    }

    #[test]
    fn missing_parts_are_named() {
        let err = gate_report(&preset("be-140"), GateMethod::Adiabatic).unwrap_err();
        assert!(err.to_string().contains("cavity"));
        let err = gate_report(&preset("cs-fp-cavity"), GateMethod::Ms);
        assert!(err.is_ok());
        let err = gate_report(&preset("be-140"), GateMethod::Ms).unwrap_err();
        assert!(err.to_string().contains("heating_rate_per_s"));
    }

    #[test]
    fn method_names_round_trip() {
        for m in GateMethod::ALL {
            assert_eq!(m.name().parse::<GateMethod>().unwrap(), m);
        }
        assert!("swap".parse::<GateMethod>().is_err());
    }
}
