//! Unit conventions.
//!
//! Internally every frequency and rate is angular (rad/s) and every other
//! quantity is plain SI. At the boundary (config files, CLI, reports)
//! frequencies are ordinary frequencies ν = ω/2π in Hz, and field names carry
//! their unit as a suffix (`length_um`, `linewidth_mhz`, ...).

use std::f64::consts::PI;

use crate::constants::SPEED_OF_LIGHT;
use crate::error::{Error, Result};

/// ν (Hz) → ω (rad/s).
pub fn angular(freq_hz: f64) -> f64 {
    2.0 * PI * freq_hz
}

/// ω (rad/s) → ν (Hz).
pub fn ordinary(omega: f64) -> f64 {
    omega / (2.0 * PI)
}

/// Angular frequency of light with vacuum wavelength `lambda` (m).
pub fn optical_omega(lambda: f64) -> f64 {
    2.0 * PI * SPEED_OF_LIGHT / lambda
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dimension {
    Length,
    /// Ordinary frequency, Hz.
    Frequency,
    Time,
    Mass,
    Dimensionless,
}

impl Dimension {
    pub fn si_symbol(self) -> &'static str {
        match self {
            Dimension::Length => "m",
            Dimension::Frequency => "Hz",
            Dimension::Time => "s",
            Dimension::Mass => "kg",
            Dimension::Dimensionless => "",
        }
    }
}

const FIELD_SUFFIXES: &[(&str, Dimension, f64)] = &[
    ("_nm", Dimension::Length, 1e-9),
    ("_um", Dimension::Length, 1e-6),
    ("_mm", Dimension::Length, 1e-3),
    ("_cm", Dimension::Length, 1e-2),
    ("_m", Dimension::Length, 1.0),
    ("_ghz", Dimension::Frequency, 1e9),
    ("_mhz", Dimension::Frequency, 1e6),
    ("_khz", Dimension::Frequency, 1e3),
    ("_hz", Dimension::Frequency, 1.0),
    ("_ns", Dimension::Time, 1e-9),
    ("_us", Dimension::Time, 1e-6),
    ("_ms", Dimension::Time, 1e-3),
    ("_s", Dimension::Time, 1.0),
];

/// Unit implied by a config field name, e.g. `length_um` → (Length, 1e-6).
/// Returns `None` for dimensionless or unsuffixed fields.
pub fn field_unit(field: &str) -> Option<(Dimension, f64)> {
    if field.ends_with("_per_s") {
        return None;
    }
    FIELD_SUFFIXES
        .iter()
        .find(|(suffix, _, _)| field.ends_with(suffix))
        .map(|&(_, dim, scale)| (dim, scale))
}

fn prefix_scale(prefix: &str) -> Option<f64> {
    Some(match prefix {
        "" => 1.0,
        "n" => 1e-9,
        "u" | "µ" | "μ" => 1e-6,
        "m" => 1e-3,
        "c" => 1e-2,
        "k" => 1e3,
        "M" => 1e6,
        "G" => 1e9,
        _ => return None,
    })
}

/// Parses a number with an optional SI unit, e.g. `418kHz`, `44.6 µm`, `35us`.
/// The value is returned in base SI units together with its dimension.
pub fn parse_quantity(text: &str) -> Result<(f64, Dimension)> {
    let text = text.trim();
    let split = text
        .char_indices()
        .find(|&(i, c)| {
            c.is_alphabetic()
                && !((c == 'e' || c == 'E')
                    && text[i + c.len_utf8()..]
                        .chars()
                        .next()
                        .is_some_and(|n| n.is_ascii_digit() || n == '-' || n == '+'))
        })
        .map_or(text.len(), |(i, _)| i);
    let (number, unit) = text.split_at(split);
    let value: f64 = number.trim().parse().map_err(|_| Error::Quantity(text.to_string()))?;
    let unit = unit.trim();
    if unit.is_empty() {
        return Ok((value, Dimension::Dimensionless));
    }
    let (base, dim) = if let Some(p) = unit.strip_suffix("Hz") {
        (p, Dimension::Frequency)
    } else if let Some(p) = unit.strip_suffix('m') {
        (p, Dimension::Length)
    } else if let Some(p) = unit.strip_suffix('s') {
        (p, Dimension::Time)
    } else {
        return Err(Error::Quantity(text.to_string()));
    };
    // centi is only accepted for lengths
    if base == "c" && dim != Dimension::Length {
        return Err(Error::Quantity(text.to_string()));
    }
    let scale = prefix_scale(base).ok_or_else(|| Error::Quantity(text.to_string()))?;
    Ok((value * scale, dim))
}

/// Formats `x` to three significant figures.
pub fn sig3(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let magnitude = x.abs().log10().floor() as i32;
    if !(-3..6).contains(&magnitude) {
        return format!("{x:.2e}");
    }
    let decimals = (2 - magnitude).max(0) as usize;
    format!("{x:.decimals$}")
}

/// Formats an SI value with an engineering prefix, three significant figures.
pub fn format_si(value: f64, dim: Dimension) -> String {
    let symbol = dim.si_symbol();
    if dim == Dimension::Dimensionless || value == 0.0 || !value.is_finite() {
        return format!("{} {symbol}", sig3(value)).trim_end().to_string();
    }
    const PREFIXES: &[(f64, &str)] = &[
        (1e9, "G"),
        (1e6, "M"),
        (1e3, "k"),
        (1.0, ""),
        (1e-3, "m"),
        (1e-6, "µ"),
        (1e-9, "n"),
        (1e-12, "p"),
    ];
    let abs = value.abs();
    let &(scale, prefix) = PREFIXES
        .iter()
        .find(|(s, _)| abs >= s * 0.9995)
        .unwrap_or(&PREFIXES[PREFIXES.len() - 1]);
    format!("{} {prefix}{symbol}", sig3(value / scale))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_prefixed_quantities() {
        let cases = [
            ("418kHz", 418e3, Dimension::Frequency),
            ("5.3 MHz", 5.3e6, Dimension::Frequency),
            ("44.6um", 44.6e-6, Dimension::Length),
            ("12.5 µm", 12.5e-6, Dimension::Length),
            ("10cm", 0.1, Dimension::Length),
            ("852nm", 852e-9, Dimension::Length),
            ("35us", 35e-6, Dimension::Time),
            ("2.5ms", 2.5e-3, Dimension::Time),
            ("4.2e5", 4.2e5, Dimension::Dimensionless),
            ("1e-4", 1e-4, Dimension::Dimensionless),
        ];
        for (text, value, dim) in cases {
            let (v, d) = parse_quantity(text).unwrap();
            assert!((v - value).abs() <= 1e-12 * value.abs(), "{text}: {v}");
            assert_eq!(d, dim, "{text}");
        }
    }

    #[test]
    fn rejects_bad_quantities() {
        for text in ["", "kHz", "12 parsecs", "3 cHz", "1.2.3 m"] {
            assert!(parse_quantity(text).is_err(), "{text}");
        }
    }

    #[test]
    fn field_suffixes() {
        assert_eq!(field_unit("length_um"), Some((Dimension::Length, 1e-6)));
        assert_eq!(field_unit("linewidth_mhz"), Some((Dimension::Frequency, 1e6)));
        assert_eq!(field_unit("quoted_time_us"), Some((Dimension::Time, 1e-6)));
        assert_eq!(field_unit("heating_rate_per_s"), None);
        assert_eq!(field_unit("finesse"), None);
    }

    #[test]
    fn three_significant_figures() {
        assert_eq!(sig3(0.82567), "0.826");
        assert_eq!(sig3(418.2), "418");
        assert_eq!(sig3(37.04), "37.0");
        assert_eq!(sig3(1.0e-7), "1.00e-7");
        assert_eq!(format_si(418.3e3, Dimension::Frequency), "418 kHz");
        assert_eq!(format_si(1.25e-3, Dimension::Time), "1.25 ms");
        assert_eq!(format_si(2.0123e-5, Dimension::Length), "20.1 µm");
    }

    #[test]
    fn angular_round_trip() {
        assert!((ordinary(angular(5.3e6)) - 5.3e6).abs() < 1e-6);
    }
}
