use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Severity {
    /// Informational; the estimate is still meaningful.
    Note,
    /// An approximation behind the formula is violated.
    Regime,
}

/// A non-fatal finding attached to an estimate.
#[derive(Debug, Clone, PartialEq)]
pub struct Advisory {
    pub code: &'static str,
    pub severity: Severity,
    pub message: String,
}

impl Advisory {
    pub fn note(code: &'static str, message: impl Into<String>) -> Self {
        Self {
            code,
            severity: Severity::Note,
            message: message.into(),
        }
    }

    pub fn regime(code: &'static str, message: impl Into<String>) -> Self {
        Self {
            code,
            severity: Severity::Regime,
            message: message.into(),
        }
    }

    pub fn is_regime(&self) -> bool {
        self.severity == Severity::Regime
    }
}

impl fmt::Display for Advisory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.severity {
            Severity::Note => "note",
            Severity::Regime => "regime",
        };
        write!(f, "[{tag}:{}] {}", self.code, self.message)
    }
}

/// Pushes a regime advisory when `lhs` is not at least `factor` times `rhs`.
pub(crate) fn require_much_greater(
    out: &mut Vec<Advisory>,
    code: &'static str,
    lhs_name: &str,
    lhs: f64,
    rhs_name: &str,
    rhs: f64,
    factor: f64,
) {
    // written so that NaN also raises the advisory
    if lhs.partial_cmp(&(factor * rhs)).is_none_or(|o| o.is_lt()) {
        out.push(Advisory::regime(
            code,
            format!(
                "{lhs_name} = {lhs:.3e} should exceed {factor}×{rhs_name} = {:.3e}",
                factor * rhs
            ),
        ));
    }
}
