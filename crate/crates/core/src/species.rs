//! Atomic species and the shipped species registry.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::atom::{dipole_from_gamma, gamma_from_dipole};
use crate::constants::ATOMIC_MASS_UNIT;
use crate::error::{positive, Error, Result};
use crate::units::{angular, optical_omega};

/// Atom-side parameters of the strong transition used for gates.
#[derive(Debug, Clone, PartialEq)]
pub struct IonSpecies {
    pub name: String,
    /// kg
    pub mass: f64,
    /// Vacuum wavelength of the strong transition, m.
    pub lambda: f64,
    /// Natural linewidth Γ (full width), rad/s.
    pub gamma: f64,
    /// Dipole matrix element d, C·m, linked to `gamma` by the spontaneous-decay formula.
    pub dipole: f64,
    /// Ground-state hyperfine splitting, rad/s.
    pub hyperfine_splitting: Option<f64>,
}

impl IonSpecies {
    pub fn new(
        name: impl Into<String>,
        mass: f64,
        lambda: f64,
        gamma: f64,
        hyperfine_splitting: Option<f64>,
    ) -> Result<Self> {
        positive("mass", mass)?;
        positive("lambda", lambda)?;
        positive("gamma", gamma)?;
        if let Some(hf) = hyperfine_splitting {
            positive("hyperfine_splitting", hf)?;
        }
        let dipole = dipole_from_gamma(gamma, optical_omega(lambda))?;
        Ok(Self {
            name: name.into(),
            mass,
            lambda,
            gamma,
            dipole,
            hyperfine_splitting,
        })
    }

    pub fn from_amu(
        name: impl Into<String>,
        mass_amu: f64,
        lambda: f64,
        gamma: f64,
        hyperfine_splitting: Option<f64>,
    ) -> Result<Self> {
        Self::new(name, mass_amu * ATOMIC_MASS_UNIT, lambda, gamma, hyperfine_splitting)
    }

    /// Transition angular frequency, rad/s.
    pub fn omega(&self) -> f64 {
        optical_omega(self.lambda)
    }

    /// Γ recomputed from the stored dipole element.
    pub fn gamma_from_dipole(&self) -> f64 {
        gamma_from_dipole(self.dipole, self.omega()).unwrap_or(f64::NAN)
    }
}

/// On-disk form of a species, with unit-suffixed field names.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpeciesRecord {
    pub name: String,
    pub mass_amu: f64,
    pub wavelength_nm: f64,
    /// Γ/2π in MHz.
    pub linewidth_mhz: f64,
    /// Hyperfine splitting / 2π in GHz.
    #[serde(default)]
    pub hyperfine_ghz: Option<f64>,
}

impl SpeciesRecord {
    pub fn to_species(&self) -> Result<IonSpecies> {
        IonSpecies::from_amu(
            self.name.clone(),
            self.mass_amu,
            self.wavelength_nm * 1e-9,
            angular(self.linewidth_mhz * 1e6),
            self.hyperfine_ghz.map(|f| angular(f * 1e9)),
        )
    }
}

const SPECIES_FILES: &[(&str, &str)] = &[
    ("be", include_str!("../data/species/be.toml")),
    ("ca", include_str!("../data/species/ca.toml")),
    ("ba", include_str!("../data/species/ba.toml")),
    ("cs", include_str!("../data/species/cs.toml")),
];

/// Registry key and parsed species, in shipping order.
pub fn registry() -> &'static [(String, IonSpecies)] {
    static REGISTRY: OnceLock<Vec<(String, IonSpecies)>> = OnceLock::new();
    REGISTRY.get_or_init(|| {
        SPECIES_FILES
            .iter()
            .map(|(key, text)| {
                let record: SpeciesRecord =
                    toml::from_str(text).unwrap_or_else(|e| panic!("shipped species file `{key}` is malformed: {e}"));
                let species = record
                    .to_species()
                    .unwrap_or_else(|e| panic!("shipped species file `{key}`: {e}"));
                (key.to_string(), species)
            })
            .collect()
    })
}

/// Looks a species up by registry key (`ca`) or display name (`Ca+`), ignoring case.
pub fn lookup(key: &str) -> Result<IonSpecies> {
    registry()
        .iter()
        .find(|(k, s)| k.eq_ignore_ascii_case(key) || s.name.eq_ignore_ascii_case(key))
        .map(|(_, s)| s.clone())
        .ok_or_else(|| Error::Unknown {
            kind: "species",
            name: key.to_string(),
        })
}
