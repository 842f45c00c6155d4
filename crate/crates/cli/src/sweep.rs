use clap::{Args, ValueEnum};
use rayon::prelude::*;

use ionqc::units::{field_unit, parse_quantity, Dimension};

use crate::output::{advisory_codes, Failure};
use crate::{target_report, Inputs, Target};

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scale {
    Linear,
    Log,
}

#[derive(Args)]
pub struct SweepArgs {
    /// Config path of the swept field, e.g. cavity.finesse
    #[arg(long)]
    param: String,
    /// First value, in the field's unit or with an SI suffix
    #[arg(long, allow_hyphen_values = true)]
    start: String,
    #[arg(long, allow_hyphen_values = true)]
    stop: String,
    #[arg(long, default_value_t = 11)]
    points: usize,
    #[arg(long, value_enum, default_value_t = Scale::Linear)]
    scale: Scale,
    #[command(subcommand)]
    target: Target,
}

/// Converts `text` to the unit implied by the field name.
fn in_field_unit(field: &str, text: &str) -> Result<f64, Failure> {
    let (v, dim) = parse_quantity(text)?;
    match (dim, field_unit(field)) {
        (Dimension::Dimensionless, _) => Ok(v),
        (d, Some((fd, scale))) if d == fd => Ok(v / scale),
        _ => Err(Failure::usage(format!("`{text}` does not match the unit of `{field}`"))),
    }
}

pub fn grid(start: f64, stop: f64, points: usize, scale: Scale) -> Result<Vec<f64>, Failure> {
    if points < 2 {
        return Err(Failure::usage("a sweep needs at least 2 points"));
    }
    if start == stop || !start.is_finite() || !stop.is_finite() {
        return Err(Failure::usage("sweep endpoints must be finite and distinct"));
    }
    if scale == Scale::Log && (start <= 0.0 || stop <= 0.0) {
        return Err(Failure::usage("a log sweep needs positive endpoints"));
    }
    let last = (points - 1) as f64;
    Ok((0..points)
        .map(|i| {
            let f = i as f64 / last;
            if i == 0 {
                return start;
            }
            if i == points - 1 {
                return stop;
            }
            match scale {
                Scale::Linear => start + (stop - start) * f,
                Scale::Log => (start.ln() + (stop.ln() - start.ln()) * f).exp(),
            }
        })
        .collect())
}

pub fn run(args: &SweepArgs, inputs: &Inputs) -> Result<(), Failure> {
    let field = args.param.rsplit('.').next().unwrap_or_default();
    let start = in_field_unit(field, &args.start)?;
    let stop = in_field_unit(field, &args.stop)?;
    let values = grid(start, stop, args.points, args.scale)?;
    let base = inputs.builder()?;

    // the swept path must resolve at the start point; surface that as a usage error
    {
        let mut b = base.clone();
        b.set_number(&args.param, values[0])?;
        b.build()?;
    }

    let results: Vec<_> = values
        .par_iter()
        .map(|&v| {
            let mut b = base.clone();
            b.set_number(&args.param, v)?;
            let sc = b.build()?;
            target_report(&sc, args.target)
        })
        .collect();

    let columns: Vec<String> = match results.iter().find_map(|r| r.as_ref().ok()) {
        Some(r) => r.rows.iter().map(|(k, _)| k.clone()).collect(),
        None => {
            let e = results.into_iter().next().and_then(Result::err);
            return Err(e.map(Failure::from).unwrap_or_else(|| Failure::usage("empty sweep")));
        }
    };

    let mut w: csv::Writer<Box<dyn std::io::Write>> = match &inputs.csv {
        Some(path) => csv::Writer::from_writer(Box::new(
            std::fs::File::create(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?,
        )),
        None => csv::Writer::from_writer(Box::new(std::io::stdout())),
    };
    let mut header = vec![args.param.clone()];
    header.extend(columns.iter().cloned());
    header.extend(["invalid".into(), "advisories".into(), "error".into()]);
    w.write_record(&header)?;
    for (v, r) in values.iter().zip(results) {
        let mut rec = vec![format!("{v:e}")];
        match r {
            Ok(r) => {
                for key in &columns {
                    rec.push(r.value(key).map(|x| x.raw()).unwrap_or_default());
                }
                rec.push((!r.valid as u8).to_string());
                rec.push(advisory_codes(&r));
                rec.push(String::new());
            }
            Err(e) => {
                rec.extend(columns.iter().map(|_| String::new()));
                rec.push("1".into());
                rec.push(String::new());
                rec.push(e.to_string());
            }
        }
        w.write_record(&rec)?;
    }
    w.flush().map_err(|e| Failure::usage(e.to_string()))?;
    Ok(())
}
