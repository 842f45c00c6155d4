//! Fault-tolerant machine model: block layout, low-level error-correction
//! overhead, correction cadence and algorithm runtime.

use crate::advisory::Advisory;
use crate::constants::SECONDS_PER_WEEK;
use crate::error::{non_negative, positive, Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct MachineConfig {
    pub logical_qubits: u64,
    pub toffoli_count: u64,
    pub block_physical_qubits: u64,
    pub block_logical_qubits: u64,
    pub extra_qubits_per_block: u64,
    pub ancilla_blocks_per_data: u64,
    pub ancilla_prep_steps: u64,
    pub ancilla_ready_delay_steps: u64,
    pub corrections_per_toffoli: u64,
    pub ec_speed_factor: f64,
    /// Physical gate failure the low-level code is designed for.
    pub base_gate_p: f64,
    /// Gate failure γ required by the high-level code.
    pub target_gate_p: f64,
    pub memory_noise_per_step: f64,
    pub switch_traps: u64,
    /// Block-trap total as quoted for the design (not re-derived).
    pub stated_block_traps: Option<u64>,
    pub stated_total_traps: Option<u64>,
}

impl Default for MachineConfig {
    fn default() -> Self {
        Self {
            logical_qubits: 100,
            toffoli_count: 1_000_000,
            block_physical_qubits: 127,
            block_logical_qubits: 29,
            extra_qubits_per_block: 13,
            ancilla_blocks_per_data: 40,
            ancilla_prep_steps: 5000,
            ancilla_ready_delay_steps: 500,
            corrections_per_toffoli: 8,
            ec_speed_factor: 10.0,
            base_gate_p: 2e-3,
            target_gate_p: 1e-4,
            memory_noise_per_step: 1e-6,
            switch_traps: 62,
            stated_block_traps: Some(138),
            stated_total_traps: Some(200),
        }
    }
}

impl MachineConfig {
    pub fn validate(&self) -> Result<()> {
        let counts = [
            ("logical_qubits", self.logical_qubits),
            ("block_physical_qubits", self.block_physical_qubits),
            ("block_logical_qubits", self.block_logical_qubits),
            ("corrections_per_toffoli", self.corrections_per_toffoli),
        ];
        for (name, v) in counts {
            if v == 0 {
                return Err(Error::Config(format!("machine.{name} must be positive")));
            }
        }
        if self.block_logical_qubits > self.block_physical_qubits {
            return Err(Error::Config(
                "a block cannot encode more logical than physical qubits".into(),
            ));
        }
        positive("ec_speed_factor", self.ec_speed_factor)?;
        positive("base_gate_p", self.base_gate_p)?;
        positive("target_gate_p", self.target_gate_p)?;
        non_negative("memory_noise_per_step", self.memory_noise_per_step)?;
        Ok(())
    }

    /// Ions per trap: code block plus the extra qubits that serve it.
    pub fn ions_per_trap(&self) -> u64 {
        self.block_physical_qubits + self.extra_qubits_per_block
    }

    pub fn data_blocks(&self) -> u64 {
        self.logical_qubits.div_ceil(self.block_logical_qubits)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MachineLayout {
    /// Labelled derived contributions to the trap count.
    pub terms: Vec<(&'static str, u64)>,
    pub data_blocks: u64,
    pub ancilla_blocks: u64,
    pub switch_traps: u64,
    pub derived_block_traps: u64,
    pub derived_total_traps: u64,
    pub stated_block_traps: Option<u64>,
    pub stated_total_traps: Option<u64>,
}

impl MachineLayout {
    /// Mismatch between derived and stated totals, each as a finding.
    pub fn discrepancies(&self) -> Vec<Advisory> {
        let mut out = Vec::new();
        if let Some(s) = self.stated_block_traps {
            if s != self.derived_block_traps {
                out.push(Advisory::note(
                    "layout-blocks",
                    format!(
                        "stated block traps {s} differ from derived {} data + {} ancilla = {}",
                        self.data_blocks, self.ancilla_blocks, self.derived_block_traps
                    ),
                ));
            }
        }
        if let Some(s) = self.stated_total_traps {
            if s != self.derived_total_traps {
                out.push(Advisory::note(
                    "layout-total",
                    format!(
                        "stated total traps {s} differ from derived {} blocks + {} switches = {}",
                        self.derived_block_traps, self.switch_traps, self.derived_total_traps
                    ),
                ));
            }
        }
        out
    }
}

pub fn machine_layout(config: &MachineConfig) -> MachineLayout {
    let data_blocks = config.data_blocks();
    let ancilla_blocks = data_blocks * config.ancilla_blocks_per_data;
    let derived_block_traps = data_blocks + ancilla_blocks;
    MachineLayout {
        terms: vec![
            ("data_blocks", data_blocks),
            ("ancilla_blocks", ancilla_blocks),
            ("switch_traps", config.switch_traps),
        ],
        data_blocks,
        ancilla_blocks,
        switch_traps: config.switch_traps,
        derived_block_traps,
        derived_total_traps: derived_block_traps + config.switch_traps,
        stated_block_traps: config.stated_block_traps,
        stated_total_traps: config.stated_total_traps,
    }
}

/// Gate failure and rate after one level of low-level error correction.
#[derive(Debug, Clone, PartialEq)]
pub struct LowLevelEc {
    pub p: f64,
    pub rate: f64,
    pub advisories: Vec<Advisory>,
}

/// Failure is reduced by base_gate_p/target_gate_p, rate by the speed factor.
pub fn low_level_ec(base_p: f64, base_rate: f64, config: &MachineConfig) -> Result<LowLevelEc> {
    non_negative("base_p", base_p)?;
    positive("base_rate", base_rate)?;
    let reduction = config.base_gate_p / config.target_gate_p;
    let mut advisories = Vec::new();
    if base_p > config.base_gate_p {
        advisories.push(Advisory::regime(
            "ec-domain",
            format!(
                "base gate failure {base_p:.3e} exceeds the {:.1e} the low-level code is designed for",
                config.base_gate_p
            ),
        ));
    }
    Ok(LowLevelEc {
        p: base_p / reduction,
        rate: base_rate / config.ec_speed_factor,
        advisories,
    })
}

/// One correction cycle: `delay_steps` corrected gate steps.
pub fn correction_time(corrected_gate_time: f64, delay_steps: u64) -> Result<f64> {
    non_negative("corrected_gate_time", corrected_gate_time)?;
    Ok(delay_steps as f64 * corrected_gate_time)
}

/// Algorithm runtime in seconds and weeks.
pub fn total_runtime(config: &MachineConfig, correction_time: f64) -> Result<(f64, f64)> {
    non_negative("correction_time", correction_time)?;
    let s = config.toffoli_count as f64 * config.corrections_per_toffoli as f64 * correction_time;
    Ok((s, s / SECONDS_PER_WEEK))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseCheck {
    pub gate_pass: bool,
    /// threshold / supplied; ≥ 1 passes.
    pub gate_margin: f64,
    pub memory_pass: bool,
    pub memory_margin: f64,
}

impl NoiseCheck {
    pub fn pass(&self) -> bool {
        self.gate_pass && self.memory_pass
    }

    pub fn advisories(&self) -> Vec<Advisory> {
        let mut out = Vec::new();
        if !self.gate_pass {
            out.push(Advisory::regime(
                "gate-noise",
                format!("gate failure is {:.3}× above threshold", 1.0 / self.gate_margin),
            ));
        }
        if !self.memory_pass {
            out.push(Advisory::regime(
                "memory-noise",
                format!("memory noise is {:.3}× above threshold", 1.0 / self.memory_margin),
            ));
        }
        out
    }
}

pub fn memory_noise_check(gate_p: f64, mem_p: f64, config: &MachineConfig) -> NoiseCheck {
    let margin = |threshold: f64, v: f64| if v > 0.0 { threshold / v } else { f64::INFINITY };
    // margins within rounding of 1 count as passing
    let gate_margin = margin(config.target_gate_p, gate_p);
    let memory_margin = margin(config.memory_noise_per_step, mem_p);
    NoiseCheck {
        gate_pass: gate_margin >= 1.0 - 1e-9,
        gate_margin,
        memory_pass: memory_margin >= 1.0 - 1e-9,
        memory_margin,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MachineEstimate {
    pub layout: MachineLayout,
    pub data_blocks: u64,
    pub total_blocks: u64,
    pub total_traps: u64,
    pub physical_gate_time: f64,
    pub physical_gate_p: f64,
    pub corrected_gate_time: f64,
    pub corrected_gate_p: f64,
    pub correction_time: f64,
    pub total_runtime: f64,
    pub runtime_weeks: f64,
    pub noise: NoiseCheck,
    pub advisories: Vec<Advisory>,
}

/// Full pipeline from a physical gate (time, failure) to the algorithm runtime.
pub fn estimate(config: &MachineConfig, physical_gate_time: f64, physical_gate_p: f64) -> Result<MachineEstimate> {
    config.validate()?;
    positive("physical_gate_time", physical_gate_time)?;
    let layout = machine_layout(config);
    let ec = low_level_ec(physical_gate_p, 1.0 / physical_gate_time, config)?;
    let corrected_gate_time = 1.0 / ec.rate;
    let correction = correction_time(corrected_gate_time, config.ancilla_ready_delay_steps)?;
    let (total, weeks) = total_runtime(config, correction)?;
    let noise = memory_noise_check(ec.p, config.memory_noise_per_step, config);

    let mut advisories = ec.advisories;
    advisories.extend(noise.advisories());
    advisories.extend(layout.discrepancies());
    Ok(MachineEstimate {
        data_blocks: layout.data_blocks,
        total_blocks: layout.derived_block_traps,
        total_traps: layout.derived_total_traps,
        layout,
        physical_gate_time,
        physical_gate_p,
        corrected_gate_time,
        corrected_gate_p: ec.p,
        correction_time: correction,
        total_runtime: total,
        runtime_weeks: weeks,
        noise,
        advisories,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a / b - 1.0).abs()
    }

    #[test]
    fn default_layout_reports_both_counts() {
        let c = MachineConfig::default();
        assert_eq!(c.ions_per_trap(), 140);
        let l = machine_layout(&c);
        assert_eq!((l.data_blocks, l.ancilla_blocks), (4, 160));
        assert_eq!(l.derived_block_traps, 164);
        assert_eq!(l.derived_total_traps, 226);
        assert_eq!(l.stated_block_traps, Some(138));
        assert_eq!(l.stated_total_traps, Some(200));
        assert_eq!(l.discrepancies().len(), 2);
        let sum: u64 = l.terms.iter().map(|t| t.1).sum();
        assert_eq!(sum, l.derived_total_traps);
    }

    #[test]
    fn layout_policies() {
        let c = MachineConfig {
            ancilla_blocks_per_data: 4,
            ..Default::default()
        };
        assert_eq!(machine_layout(&c).derived_block_traps, 20);
        let c = MachineConfig {
            logical_qubits: 29,
            ..Default::default()
        };
        assert_eq!(machine_layout(&c).derived_block_traps, 41);
    }

    #[test]
    fn ec_examples() {
        let c = MachineConfig::default();
        let ec = low_level_ec(0.0016, 8000.0, &c).unwrap();
        assert!(rel(1.0 / ec.rate, 1250e-6) < 1e-12);
        assert!(ec.advisories.is_empty());
        let ec = low_level_ec(2e-3, 1.0 / 35e-6, &c).unwrap();
        assert!(rel(1.0 / ec.rate, 350e-6) < 1e-12);
        assert!(rel(ec.p, 1e-4) < 1e-12);
        let twice = low_level_ec(ec.p, ec.rate, &c).unwrap();
        assert!(twice.rate != ec.rate);
        assert_eq!(low_level_ec(5e-3, 1.0, &c).unwrap().advisories.len(), 1);
    }

    #[test]
    fn correction_and_runtime_examples() {
        let c = MachineConfig::default();
        assert!(rel(correction_time(1250e-6, 500).unwrap(), 0.625) < 1e-12);
        assert!(rel(correction_time(350e-6, 500).unwrap(), 0.175) < 1e-12);
        assert_eq!(correction_time(1250e-6, 0).unwrap(), 0.0);
        let (_, w) = total_runtime(&c, 0.175).unwrap();
        assert!(rel(w, 2.3) < 0.02);
        let (_, w) = total_runtime(&c, 0.625).unwrap();
        assert!(rel(w, 8.3) < 0.01);
        let z = MachineConfig {
            toffoli_count: 0,
            ..Default::default()
        };
        assert_eq!(total_runtime(&z, 0.625).unwrap().0, 0.0);
    }

    #[test]
    fn noise_examples() {
        let c = MachineConfig::default();
        let n = memory_noise_check(1e-4, 1e-6, &c);
        assert!(n.pass() && rel(n.gate_margin, 1.0) < 1e-12);
        let n = memory_noise_check(1e-3, 1e-6, &c);
        assert!(!n.gate_pass && n.memory_pass && n.advisories().len() == 1);
        let n = memory_noise_check(1e-5, 1e-7, &c);
        assert!(n.pass() && rel(n.gate_margin, 10.0) < 1e-12 && rel(n.memory_margin, 10.0) < 1e-12);
    }

    #[test]
    fn estimate_pipeline() {
        let e = estimate(&MachineConfig::default(), 1.0 / 8000.0, 0.0016).unwrap();
        assert!(rel(e.corrected_gate_time, 1250e-6) < 1e-12);
        assert!(rel(e.runtime_weeks, 8.27) < 0.01);
        assert!(e.noise.pass());
        assert!(e.total_traps >= e.total_blocks);
        let bad = MachineConfig {
            block_logical_qubits: 0,
            ..Default::default()
        };
        assert!(estimate(&bad, 1.0, 1e-3).is_err());
    }

    proptest! {
        #[test]
        fn runtime_is_linear(t in 0u64..10_000_000, k in 1u64..20, c in 0.0f64..10.0) {
            let cfg = MachineConfig { toffoli_count: t, corrections_per_toffoli: k, ..Default::default() };
            let cfg2 = MachineConfig { toffoli_count: 2 * t, corrections_per_toffoli: k, ..Default::default() };
            let (a, _) = total_runtime(&cfg, c).unwrap();
            let (b, _) = total_runtime(&cfg2, c).unwrap();
            let (d, _) = total_runtime(&cfg, 2.0 * c).unwrap();
            prop_assert!((b - 2.0 * a).abs() <= 1e-9 * a.abs().max(1.0));
            prop_assert!((d - 2.0 * a).abs() <= 1e-9 * a.abs().max(1.0));
        }

        #[test]
        fn layout_terms_sum(lq in 1u64..1000, per in 1u64..100, anc in 0u64..100, sw in 0u64..100) {
            let cfg = MachineConfig {
                logical_qubits: lq,
                block_logical_qubits: per,
                block_physical_qubits: 4 * per,
                ancilla_blocks_per_data: anc,
                switch_traps: sw,
                ..Default::default()
            };
            let l = machine_layout(&cfg);
            prop_assert_eq!(l.terms.iter().map(|t| t.1).sum::<u64>(), l.derived_total_traps);
            prop_assert_eq!(l.terms[0].1 + l.terms[1].1, l.derived_block_traps);
        }
    }
}
