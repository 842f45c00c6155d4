use std::path::Path;

use ionqc::config::Scenario;
use ionqc::oracle::adiabatic_trace;
use ionqc::report::Report;
use ionqc::Error;

use crate::Inputs;

pub const USAGE: u8 = 1;
pub const REGIME: u8 = 2;
pub const TOLERANCE: u8 = 3;

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Self {
            code: USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Domain { .. } => REGIME,
            Error::StepUnderflow { .. } | Error::NonFinite { .. } | Error::Evolution(_) => TOLERANCE,
            Error::Unknown { .. } | Error::Config(_) | Error::Quantity(_) => USAGE,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::usage(format!("csv: {e}"))
    }
}

/// Prints the resolved inputs and the report, writes CSV if asked, and maps
/// validity to the exit status.
pub fn emit(report: &Report, scenario: Option<&Scenario>, inputs: &Inputs) -> Result<(), Failure> {
    if let Some(sc) = scenario {
        println!("# inputs");
        for line in sc.resolved_toml().lines() {
            println!("#   {line}");
        }
    }
    print!("{report}");
    if let Some(path) = &inputs.csv {
        let mut w = csv::Writer::from_path(path)?;
        let (header, row) = csv_row(report);
        w.write_record(&header)?;
        w.write_record(&row)?;
        w.flush().map_err(|e| Failure::usage(e.to_string()))?;
    }
    if !report.valid {
        return Err(Failure {
            code: REGIME,
            message: "model breakdown: the error budget is outside its perturbative range".into(),
        });
    }
    if report.has_regime_advisory() && report.within_tolerance.is_some() {
        return Err(Failure {
            code: REGIME,
            message: "regime preconditions of the check are not met".into(),
        });
    }
    if report.within_tolerance == Some(false) {
        return Err(Failure {
            code: TOLERANCE,
            message: "numeric and analytic values disagree beyond the check's tolerance".into(),
        });
    }
    Ok(())
}

/// Report columns plus `invalid` and `advisories`.
pub fn csv_row(report: &Report) -> (Vec<String>, Vec<String>) {
    let mut header: Vec<String> = report.rows.iter().map(|(k, _)| k.clone()).collect();
    let mut row: Vec<String> = report.rows.iter().map(|(_, v)| v.raw()).collect();
    header.push("invalid".into());
    row.push((!report.valid as u8).to_string());
    header.push("advisories".into());
    row.push(advisory_codes(report));
    (header, row)
}

pub fn advisory_codes(report: &Report) -> String {
    report.advisories.iter().map(|a| a.code).collect::<Vec<_>>().join(";")
}

pub fn write_series(
    path: &Path,
    t_omega: f64,
    g_over_omega: f64,
    kappa_over_g: f64,
    gamma_over_g: f64,
    points: usize,
) -> Result<(), Failure> {
    let g = g_over_omega;
    let trace = adiabatic_trace(1.0, g, kappa_over_g * g, gamma_over_g * g, t_omega, points)?;
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(["t_omega", "p_ab0", "p_eb0", "p_bb1", "p_be0", "p_ba0", "leaked"])?;
    for (t, p, leaked) in trace {
        let mut rec = vec![format!("{t:e}")];
        rec.extend(p.iter().map(|x| format!("{x:e}")));
        rec.push(format!("{leaked:e}"));
        w.write_record(&rec)?;
    }
    w.flush().map_err(|e| Failure::usage(e.to_string()))?;
    Ok(())
}
