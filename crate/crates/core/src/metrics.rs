//! Entanglement bookkeeping for demonstrated experiments.

use crate::error::{non_negative, Error, Result};

/// Recorded entanglement figures of an experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct EntanglementRecord {
    /// Probability that the entangled state is present at the predetermined time.
    pub efficiency: f64,
    /// 1/s
    pub rate: f64,
    /// Coherent-state amplitude of a motional cat state.
    pub cat_alpha: f64,
    pub cat_qubits: f64,
}

impl EntanglementRecord {
    pub fn new(efficiency: f64, rate: f64, cat_alpha: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&efficiency) {
            return Err(Error::domain("efficiency", efficiency, "must lie in [0, 1]"));
        }
        non_negative("rate", rate)?;
        Ok(Self {
            efficiency,
            rate,
            cat_alpha,
            cat_qubits: cat_state_qubits(cat_alpha),
        })
    }
}

/// Hilbert-space size, in qubits, of a cat state built from coherent states of
/// amplitude α: log₂(⟨n⟩ + 1 + σ_n) for the motion, with ⟨n⟩ = |α|² and
/// σ_n = |α|, plus one qubit for the internal state.
pub fn cat_state_qubits(alpha: f64) -> f64 {
    let a = alpha.abs();
    (a * a + 1.0 + a).log2() + 1.0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cat_examples() {
        assert!((cat_state_qubits(2.97) - 4.7).abs() < 0.05);
        assert_eq!(cat_state_qubits(0.0), 1.0);
        assert!((cat_state_qubits(1.0) - (3f64.log2() + 1.0)).abs() < 1e-15);
    }

    #[test]
    fn record_bounds() {
        let r = EntanglementRecord::new(0.9, 10.0, 2.97).unwrap();
        assert!((r.cat_qubits - 4.677).abs() < 1e-3);
        assert!(EntanglementRecord::new(1.2, 1.0, 0.0).is_err());
        assert!(EntanglementRecord::new(0.5, -1.0, 0.0).is_err());
    }
}
