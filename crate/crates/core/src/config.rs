//! Scenario files: unit-suffixed TOML describing a species, an optional
//! cavity, an optional ion string, gate targets and an optional machine.
//!
//! Layers are merged in order (preset, files, `path=value` overrides) on the
//! raw TOML tree before it is validated, so every override goes through the
//! same field checks as a file.

use serde::{Deserialize, Serialize};
use toml::{Table, Value};

use crate::architecture::MachineConfig;
use crate::cavity::CavityConfig;
use crate::cqed::microsphere_config;
use crate::error::{Error, Result};
use crate::species::{lookup, IonSpecies, SpeciesRecord};
use crate::trap::{TrapConfig, DEFAULT_GEOMETRY_FACTOR};
use crate::units::{angular, field_unit, parse_quantity, Dimension};

/// Preset name and TOML text.
pub const PRESETS: &[(&str, &str)] = &[
    ("cs-fp-cavity", include_str!("../data/presets/cs-fp-cavity.toml")),
    ("ba-fp-cavity", include_str!("../data/presets/ba-fp-cavity.toml")),
    (
        "cs-microsphere-50",
        include_str!("../data/presets/cs-microsphere-50.toml"),
    ),
    (
        "cs-microsphere-63",
        include_str!("../data/presets/cs-microsphere-63.toml"),
    ),
    ("be-140", include_str!("../data/presets/be-140.toml")),
    ("ca-140", include_str!("../data/presets/ca-140.toml")),
    ("machine-iontrap", include_str!("../data/presets/machine-iontrap.toml")),
    (
        "machine-microsphere",
        include_str!("../data/presets/machine-microsphere.toml"),
    ),
];

/// Fields stored as integers; numeric overrides are rounded for them.
const INTEGER_FIELDS: &[&str] = &[
    "n_ions",
    "m_factor",
    "logical_qubits",
    "toffoli_count",
    "block_physical_qubits",
    "block_logical_qubits",
    "extra_qubits_per_block",
    "ancilla_blocks_per_data",
    "ancilla_prep_steps",
    "ancilla_ready_delay_steps",
    "corrections_per_toffoli",
    "switch_traps",
    "stated_block_traps",
    "stated_total_traps",
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SpeciesSpec {
    Key(String),
    Custom(SpeciesRecord),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum CavitySpec {
    FabryPerot {
        length_um: f64,
        finesse: f64,
        mirror_curvature_cm: f64,
        /// Overrides the waist computed from the mirror geometry.
        #[serde(default)]
        waist_um: Option<f64>,
    },
    Microsphere {
        radius_um: f64,
        /// Radius at which the coupling ratios are specified; defaults to `radius_um`.
        #[serde(default)]
        reference_radius_um: Option<f64>,
        g_over_gamma: f64,
        g_over_kappa: f64,
        #[serde(default)]
        quality_factor: Option<f64>,
    },
}

fn default_spacing() -> f64 {
    5.0
}
fn default_geometry() -> f64 {
    DEFAULT_GEOMETRY_FACTOR
}
fn default_crosstalk() -> f64 {
    1e-4
}
fn yes() -> bool {
    true
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrapSpec {
    pub n_ions: u32,
    #[serde(default = "default_spacing")]
    pub spacing_multiple: f64,
    #[serde(default = "default_geometry")]
    pub geometry_factor: f64,
    /// ω_z/2π; derived from the spacing rule when absent.
    #[serde(default)]
    pub axial_freq_khz: Option<f64>,
    /// Motional heating rate κ, quanta per second.
    #[serde(default)]
    pub heating_rate_per_s: Option<f64>,
    #[serde(default = "default_crosstalk")]
    pub crosstalk: f64,
    /// Cirac–Zoller gates use the breathing mode rather than the COM mode.
    #[serde(default = "yes")]
    pub breathing_mode: bool,
}

fn default_target_p() -> f64 {
    0.01
}
fn one() -> u32 {
    1
}
fn default_exponent() -> f64 {
    crate::motional::DEFAULT_SCALING_EXPONENT
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GateSpec {
    #[serde(default = "default_target_p")]
    pub target_p: f64,
    /// Ω/2π of the Raman beams for a full Cirac–Zoller budget.
    #[serde(default)]
    pub rabi_freq_mhz: Option<f64>,
    /// Δ/2π; the balanced optimum is used when absent.
    #[serde(default)]
    pub detuning_ghz: Option<f64>,
    #[serde(default = "one")]
    pub m_factor: u32,
    #[serde(default = "default_exponent")]
    pub scaling_exponent: f64,
}

impl Default for GateSpec {
    fn default() -> Self {
        Self {
            target_p: default_target_p(),
            rabi_freq_mhz: None,
            detuning_ghz: None,
            m_factor: 1,
            scaling_exponent: default_exponent(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MachineSpec {
    /// Physical gate feeding the machine: lightshift, cz, adiabatic or rabi_flop.
    pub base_gate: String,
    /// Quoted physical gate rate, used in place of the derived one.
    pub quoted_rate_hz: Option<f64>,
    /// Quoted physical gate time, used in place of the derived one.
    pub quoted_time_us: Option<f64>,
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
    pub base_gate_p: f64,
    pub target_gate_p: f64,
    pub memory_noise_per_step: f64,
    pub switch_traps: u64,
    pub stated_block_traps: Option<u64>,
    pub stated_total_traps: Option<u64>,
}

impl Default for MachineSpec {
    fn default() -> Self {
        let m = MachineConfig::default();
        Self {
            base_gate: "lightshift".into(),
            quoted_rate_hz: None,
            quoted_time_us: None,
            logical_qubits: m.logical_qubits,
            toffoli_count: m.toffoli_count,
            block_physical_qubits: m.block_physical_qubits,
            block_logical_qubits: m.block_logical_qubits,
            extra_qubits_per_block: m.extra_qubits_per_block,
            ancilla_blocks_per_data: m.ancilla_blocks_per_data,
            ancilla_prep_steps: m.ancilla_prep_steps,
            ancilla_ready_delay_steps: m.ancilla_ready_delay_steps,
            corrections_per_toffoli: m.corrections_per_toffoli,
            ec_speed_factor: m.ec_speed_factor,
            base_gate_p: m.base_gate_p,
            target_gate_p: m.target_gate_p,
            memory_noise_per_step: m.memory_noise_per_step,
            switch_traps: m.switch_traps,
            stated_block_traps: m.stated_block_traps,
            stated_total_traps: m.stated_total_traps,
        }
    }
}

impl MachineSpec {
    pub fn config(&self) -> MachineConfig {
        MachineConfig {
            logical_qubits: self.logical_qubits,
            toffoli_count: self.toffoli_count,
            block_physical_qubits: self.block_physical_qubits,
            block_logical_qubits: self.block_logical_qubits,
            extra_qubits_per_block: self.extra_qubits_per_block,
            ancilla_blocks_per_data: self.ancilla_blocks_per_data,
            ancilla_prep_steps: self.ancilla_prep_steps,
            ancilla_ready_delay_steps: self.ancilla_ready_delay_steps,
            corrections_per_toffoli: self.corrections_per_toffoli,
            ec_speed_factor: self.ec_speed_factor,
            base_gate_p: self.base_gate_p,
            target_gate_p: self.target_gate_p,
            memory_noise_per_step: self.memory_noise_per_step,
            switch_traps: self.switch_traps,
            stated_block_traps: self.stated_block_traps,
            stated_total_traps: self.stated_total_traps,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    #[serde(default)]
    pub description: Option<String>,
    #[serde(default)]
    pub species: Option<SpeciesSpec>,
    #[serde(default)]
    pub cavity: Option<CavitySpec>,
    #[serde(default)]
    pub trap: Option<TrapSpec>,
    #[serde(default)]
    pub gate: Option<GateSpec>,
    #[serde(default)]
    pub machine: Option<MachineSpec>,
}

/// Ion string with the settings that accompany it.
#[derive(Debug, Clone, PartialEq)]
pub struct TrapSetup {
    pub config: TrapConfig,
    /// True when ω_z came from the spacing rule.
    pub axial_derived: bool,
    pub heating_rate: Option<f64>,
    pub crosstalk: f64,
    pub breathing_mode: bool,
}

/// A fully resolved scenario.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub file: ScenarioFile,
    /// The merged TOML the scenario was resolved from.
    pub resolved: Table,
    pub species: Option<IonSpecies>,
    pub cavity: Option<CavityConfig>,
    pub trap: Option<TrapSetup>,
    pub gate: GateSpec,
    pub machine: Option<MachineSpec>,
}

impl Scenario {
    pub fn require_species(&self) -> Result<&IonSpecies> {
        self.species.as_ref().ok_or_else(|| missing("species"))
    }

    pub fn require_cavity(&self) -> Result<&CavityConfig> {
        self.cavity.as_ref().ok_or_else(|| missing("cavity"))
    }

    pub fn require_trap(&self) -> Result<&TrapSetup> {
        self.trap.as_ref().ok_or_else(|| missing("trap.n_ions"))
    }

    pub fn require_machine(&self) -> Result<&MachineSpec> {
        self.machine.as_ref().ok_or_else(|| missing("machine"))
    }

    /// The resolved configuration as TOML text.
    pub fn resolved_toml(&self) -> String {
        toml::to_string(&self.resolved).unwrap_or_default()
    }
}

fn missing(field: &str) -> Error {
    Error::Config(format!("missing required parameter `{field}`"))
}

pub fn preset(name: &str) -> Result<&'static str> {
    PRESETS
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, t)| *t)
        .ok_or_else(|| Error::Unknown {
            kind: "preset",
            name: name.to_string(),
        })
}

/// Layered scenario builder.
#[derive(Debug, Clone, Default)]
pub struct ScenarioBuilder {
    table: Table,
}

impl ScenarioBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn preset(mut self, name: &str) -> Result<Self> {
        self.merge_text(preset(name)?, &format!("preset `{name}`"))?;
        Ok(self)
    }

    /// Merges a TOML document; `origin` names it in error messages.
    pub fn text(mut self, text: &str, origin: &str) -> Result<Self> {
        self.merge_text(text, origin)?;
        Ok(self)
    }

    fn merge_text(&mut self, text: &str, origin: &str) -> Result<()> {
        let table: Table = toml::from_str(text).map_err(|e| Error::Config(format!("{origin}: {e}")))?;
        merge(&mut self.table, table);
        Ok(())
    }

    /// Applies `path=value`, e.g. `cavity.finesse=1e6` or `trap.axial_freq_khz=418kHz`.
    pub fn set(mut self, assignment: &str) -> Result<Self> {
        let (path, value) = assignment
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("override `{assignment}` is not of the form path=value")))?;
        self.set_value(path.trim(), value.trim())?;
        Ok(self)
    }

    pub fn set_value(&mut self, path: &str, text: &str) -> Result<()> {
        let keys: Vec<&str> = path.split('.').collect();
        if keys.iter().any(|k| k.is_empty()) {
            return Err(Error::Config(format!("malformed parameter path `{path}`")));
        }
        let field = keys[keys.len() - 1];
        let value = parse_override(field, text)?;
        let mut node = &mut self.table;
        for key in &keys[..keys.len() - 1] {
            let entry = node
                .entry(key.to_string())
                .or_insert_with(|| Value::Table(Table::new()));
            // a species key may be replaced by an inline record
            if !entry.is_table() {
                *entry = Value::Table(Table::new());
            }
            node = entry.as_table_mut().expect("just ensured a table");
        }
        node.insert(field.to_string(), value);
        Ok(())
    }

    /// Sets a numeric field given in its external unit.
    pub fn set_number(&mut self, path: &str, value: f64) -> Result<()> {
        self.set_value(path, &format!("{value:e}"))
    }

    pub fn table(&self) -> &Table {
        &self.table
    }

    pub fn build(self) -> Result<Scenario> {
        resolve(self.table)
    }
}

fn merge(into: &mut Table, from: Table) {
    for (k, v) in from {
        match (into.get_mut(&k), v) {
            (Some(Value::Table(a)), Value::Table(b)) => merge(a, b),
            (_, v) => {
                into.insert(k, v);
            }
        }
    }
}

fn parse_override(field: &str, text: &str) -> Result<Value> {
    match text {
        "true" => return Ok(Value::Boolean(true)),
        "false" => return Ok(Value::Boolean(false)),
        _ => {}
    }
    let number = match parse_quantity(text) {
        Ok((v, Dimension::Dimensionless)) => Some(v),
        Ok((v, dim)) => {
            let (fdim, scale) = field_unit(field)
                .ok_or_else(|| Error::Config(format!("`{field}` is dimensionless but `{text}` carries a unit")))?;
            if fdim != dim {
                return Err(Error::Config(format!(
                    "`{text}` is a {dim:?} but `{field}` expects a {fdim:?}"
                )));
            }
            Some(v / scale)
        }
        Err(_) => None,
    };
    Ok(match number {
        Some(v) if INTEGER_FIELDS.contains(&field) => {
            if !(v.is_finite() && (0.0..9.2e18).contains(&v)) {
                return Err(Error::Config(format!("`{field}` must be a non-negative count")));
            }
            Value::Integer(v.round() as i64)
        }
        Some(v) => Value::Float(v),
        None => Value::String(text.to_string()),
    })
}

fn resolve(table: Table) -> Result<Scenario> {
    let file: ScenarioFile = Value::Table(table.clone())
        .try_into()
        .map_err(|e: toml::de::Error| Error::Config(e.message().to_string()))?;

    let species = match &file.species {
        None => None,
        Some(SpeciesSpec::Key(k)) => Some(lookup(k)?),
        Some(SpeciesSpec::Custom(r)) => Some(r.to_species()?),
    };

    let cavity = match &file.cavity {
        None => None,
        Some(spec) => {
            let sp = species
                .as_ref()
                .ok_or_else(|| Error::Config("a cavity needs a species".into()))?;
            Some(build_cavity(spec, sp)?)
        }
    };

    let trap = match &file.trap {
        None => None,
        Some(t) => {
            let sp = species
                .clone()
                .ok_or_else(|| Error::Config("a trap needs a species".into()))?;
            Some(build_trap(t, sp)?)
        }
    };

    let gate = file.gate.clone().unwrap_or_default();
    if !(gate.target_p > 0.0 && gate.target_p < 1.0) {
        return Err(Error::Config(format!(
            "gate.target_p = {} must lie in (0, 1)",
            gate.target_p
        )));
    }
    let machine = file.machine.clone();
    Ok(Scenario {
        file,
        resolved: table,
        species,
        cavity,
        trap,
        gate,
        machine,
    })
}

fn build_cavity(spec: &CavitySpec, species: &IonSpecies) -> Result<CavityConfig> {
    match *spec {
        CavitySpec::FabryPerot {
            length_um,
            finesse,
            mirror_curvature_cm,
            waist_um,
        } => match waist_um {
            Some(w) => CavityConfig::fabry_perot_with_waist(
                species,
                length_um * 1e-6,
                finesse,
                mirror_curvature_cm * 1e-2,
                w * 1e-6,
            ),
            None => CavityConfig::fabry_perot(species, length_um * 1e-6, finesse, mirror_curvature_cm * 1e-2),
        },
        CavitySpec::Microsphere {
            radius_um,
            reference_radius_um,
            g_over_gamma,
            g_over_kappa,
            quality_factor,
        } => {
            let r_ref = reference_radius_um.unwrap_or(radius_um) * 1e-6;
            let reference = CavityConfig::microsphere(species, r_ref, g_over_gamma, g_over_kappa, quality_factor)?;
            microsphere_config(radius_um * 1e-6, &reference)
        }
    }
}

fn build_trap(spec: &TrapSpec, species: IonSpecies) -> Result<TrapSetup> {
    let (config, axial_derived) = match spec.axial_freq_khz {
        Some(f) => (
            TrapConfig::new(
                species,
                spec.n_ions,
                angular(f * 1e3),
                spec.spacing_multiple,
                spec.geometry_factor,
            )?,
            false,
        ),
        None => (
            TrapConfig::from_spacing(species, spec.n_ions, spec.spacing_multiple, spec.geometry_factor)?,
            true,
        ),
    };
    Ok(TrapSetup {
        config,
        axial_derived,
        heating_rate: spec.heating_rate_per_s,
        crosstalk: spec.crosstalk,
        breathing_mode: spec.breathing_mode,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::units::ordinary;

    #[test]
    fn every_preset_resolves() {
        for (name, _) in PRESETS {
            let s = ScenarioBuilder::new().preset(name).unwrap().build().unwrap();
            assert!(s.species.is_some(), "{name}");
        }
    }

    #[test]
    fn overrides_convert_units() {
        let s = ScenarioBuilder::new()
            .preset("be-140")
            .unwrap()
            .set("trap.axial_freq_khz=418kHz")
            .unwrap()
            .build()
            .unwrap();
        let t = s.trap.unwrap();
        assert!(!t.axial_derived);
        assert!((ordinary(t.config.omega_z) - 418e3).abs() < 1e-6);

        let s = ScenarioBuilder::new()
            .preset("cs-fp-cavity")
            .unwrap()
            .set("cavity.length_um=0.1mm")
            .unwrap()
            .build()
            .unwrap();
        assert!((s.cavity.unwrap().length().unwrap() - 1e-4).abs() < 1e-15);
    }

    #[test]
    fn integer_fields_round() {
        let s = ScenarioBuilder::new()
            .preset("ca-140")
            .unwrap()
            .set("trap.n_ions=57.4")
            .unwrap()
            .build()
            .unwrap();
        assert_eq!(s.trap.unwrap().config.n_ions, 57);
    }

    #[test]
    fn rejects_bad_input() {
        let b = ScenarioBuilder::new().preset("ca-140").unwrap();
        assert!(b.clone().set("trap.n_ionz=3").unwrap().build().is_err());
        assert!(b.clone().set("trap.n_ions=3kHz").is_err());
        assert!(b.clone().set("trap.axial_freq_khz=3um").is_err());
        assert!(b.clone().set("novalue").is_err());
        assert!(ScenarioBuilder::new().preset("nope").is_err());
        let err = ScenarioBuilder::new().text("species = \n", "file.toml").unwrap_err();
        assert!(err.to_string().contains("file.toml"), "{err}");
        let err = ScenarioBuilder::new()
            .text(
                "species = \"cs\"\n[cavity]\nkind = \"fabry_perot\"\nlength_um = 1\n",
                "x",
            )
            .unwrap()
            .build()
            .unwrap_err();
        assert!(err.to_string().contains("finesse"), "{err}");
    }

    #[test]
    fn custom_species_inline() {
        let text = "[species]\nname = \"X\"\nmass_amu = 40\nwavelength_nm = 400\nlinewidth_mhz = 20\n";
        let s = ScenarioBuilder::new().text(text, "x").unwrap().build().unwrap();
        assert_eq!(s.species.unwrap().name, "X");
    }

    #[test]
    fn machine_defaults_fill_in() {
        let s = ScenarioBuilder::new()
            .preset("machine-iontrap")
            .unwrap()
            .set("machine.toffoli_count=1e3")
            .unwrap()
            .build()
            .unwrap();
        let m = s.machine.unwrap();
        assert_eq!(m.toffoli_count, 1000);
        assert_eq!(m.block_logical_qubits, 29);
        assert_eq!(m.quoted_rate_hz, Some(8000.0));
    }
}
