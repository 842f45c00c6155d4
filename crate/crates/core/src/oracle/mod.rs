//! Small-Hilbert-space time evolution under a (possibly non-Hermitian)
//! effective Hamiltonian, used to test the analytic error formulas.
//!
//! Decay of basis state k at rate Γ_k enters as −iΓ_k/2 on the diagonal; the
//! lost probability is integrated separately from the decay flux Γ_k|ψ_k|² so
//! that norm accounting is a genuine check of the integrator.

pub mod checks;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub use checks::*;

pub type C64 = Complex64;

pub const MAX_DIM: usize = 16;

/// Largest number of fixed steps tried before giving up.
const MAX_STEPS: usize = 1 << 26;

/// Shape of a laser drive over a pulse of given duration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DriveShape {
    Constant,
    LinearRamp,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DriveProfile {
    pub shape: DriveShape,
    pub peak: f64,
    pub duration: f64,
}

impl DriveProfile {
    pub fn new(shape: DriveShape, peak: f64, duration: f64) -> Result<Self> {
        if !(duration > 0.0 && duration.is_finite()) {
            return Err(Error::domain("duration", duration, "must be positive"));
        }
        Ok(Self { shape, peak, duration })
    }

    /// Drive amplitude at time t; a ramp rises 0 → peak and then holds.
    pub fn value(&self, t: f64) -> f64 {
        match self.shape {
            DriveShape::Constant => self.peak,
            DriveShape::LinearRamp => self.peak * (t / self.duration).clamp(0.0, 1.0),
        }
    }

    /// Counter-ramped pair (Ω₁, Ω₂) with Ω₂ following the profile and
    /// Ω₁ = peak − Ω₂.
    pub fn ramp_pair(&self, t: f64) -> (f64, f64) {
        let o2 = self.value(t);
        (self.peak - o2, o2)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvolveOptions {
    /// Accepted change of the result when the step is halved.
    pub tolerance: f64,
    /// Number of equal intervals at whose ends the state is recorded (0: none).
    pub samples: usize,
    /// Upper bound on the initial step; set it when H has fast phases that
    /// its magnitude does not reveal.
    pub max_step: f64,
}

impl Default for EvolveOptions {
    fn default() -> Self {
        Self {
            tolerance: 1e-9,
            samples: 0,
            max_step: f64::INFINITY,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    pub t: f64,
    pub state: Vec<C64>,
    pub leaked_norm: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvolutionResult {
    pub final_state: Vec<C64>,
    pub final_populations: Vec<f64>,
    /// Integrated decay flux, all states.
    pub leaked_norm: f64,
    pub leaked_by_state: Vec<f64>,
    /// Present when a target state was supplied.
    pub infidelity: Option<f64>,
    pub samples: Vec<Sample>,
    pub steps: usize,
    /// Change of the result at the last step halving.
    pub step_change: f64,
}

impl EvolutionResult {
    /// |Σ populations + leaked − 1|
    pub fn norm_defect(&self, initial_norm: f64) -> f64 {
        (self.final_populations.iter().sum::<f64>() + self.leaked_norm - initial_norm).abs()
    }
}

/// 1 − |⟨target|ψ⟩|² for a normalised target.
pub fn infidelity(target: &[C64], state: &[C64]) -> f64 {
    let overlap: C64 = target.iter().zip(state).map(|(a, b)| a.conj() * b).sum();
    1.0 - overlap.norm_sqr()
}

struct Run {
    final_state: Vec<C64>,
    leaked: Vec<f64>,
    samples: Vec<Sample>,
}

/// Evolves `initial` from `t_start` to `t_end` under `hamiltonian`.
///
/// The builder receives the time and a zeroed row-major `dim × dim` buffer to
/// fill with the Hermitian part of H (ħ = 1, rad/s). The step count is doubled
/// until a halving changes the recorded states by less than the tolerance.
#[allow(clippy::too_many_arguments)]
pub fn evolve<H>(
    hamiltonian: H,
    decay_rates: &[f64],
    initial: &[C64],
    t_start: f64,
    t_end: f64,
    target: Option<&[C64]>,
    options: EvolveOptions,
) -> Result<EvolutionResult>
where
    H: Fn(f64, &mut [C64]),
{
    let dim = initial.len();
    if dim == 0 || dim > MAX_DIM {
        return Err(Error::Evolution(format!("dimension {dim} outside 1..={MAX_DIM}")));
    }
    if decay_rates.len() != dim {
        return Err(Error::Evolution("one decay rate per basis state required".into()));
    }
    if let Some(t) = target {
        if t.len() != dim {
            return Err(Error::Evolution("target dimension mismatch".into()));
        }
    }
    if decay_rates.iter().any(|g| !(g.is_finite() && *g >= 0.0)) {
        return Err(Error::Evolution("decay rates must be finite and non-negative".into()));
    }
    let tol = options.tolerance;
    if !(1e-12..=1e-4).contains(&tol) {
        return Err(Error::Evolution(format!("tolerance {tol:e} outside [1e-12, 1e-4]")));
    }
    let span = t_end - t_start;
    if !(span > 0.0 && span.is_finite()) {
        return Err(Error::Evolution("need t_end > t_start".into()));
    }

    // initial step count from the coupling scale at the start
    let mut h = vec![C64::new(0.0, 0.0); dim * dim];
    hamiltonian(t_start, &mut h);
    check_finite(&h, t_start)?;
    let scale =
        h.iter().map(|z| z.norm()).fold(0.0, f64::max) * dim as f64 + decay_rates.iter().cloned().fold(0.0, f64::max);
    let chunk = options.samples.max(1);
    let by_scale = span * scale / 0.5;
    let by_bound = span / options.max_step;
    let mut steps = (by_scale.max(by_bound).ceil().min(1e18) as usize).max(64);
    steps = steps.div_ceil(chunk) * chunk;
    if steps > MAX_STEPS / 2 {
        return Err(Error::StepUnderflow { steps, tolerance: tol });
    }

    let mut coarse = integrate(
        &hamiltonian,
        decay_rates,
        initial,
        t_start,
        span,
        steps,
        options.samples,
    )?;
    loop {
        let fine_steps = steps * 2;
        if fine_steps > MAX_STEPS {
            return Err(Error::StepUnderflow { steps, tolerance: tol });
        }
        let fine = integrate(
            &hamiltonian,
            decay_rates,
            initial,
            t_start,
            span,
            fine_steps,
            options.samples,
        )?;
        let change = difference(&coarse, &fine);
        steps = fine_steps;
        if change < tol {
            let populations: Vec<f64> = fine.final_state.iter().map(|z| z.norm_sqr()).collect();
            return Ok(EvolutionResult {
                infidelity: target.map(|t| infidelity(t, &fine.final_state)),
                final_populations: populations,
                leaked_norm: fine.leaked.iter().sum(),
                leaked_by_state: fine.leaked,
                final_state: fine.final_state,
                samples: fine.samples,
                steps,
                step_change: change,
            });
        }
        coarse = fine;
    }
}

fn check_finite(h: &[C64], t: f64) -> Result<()> {
    if h.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFinite { time: t })
    }
}

fn difference(a: &Run, b: &Run) -> f64 {
    let states = a.final_state.iter().zip(&b.final_state).map(|(x, y)| (x - y).norm());
    let leaks = a.leaked.iter().zip(&b.leaked).map(|(x, y)| (x - y).abs());
    let samples = a.samples.iter().zip(&b.samples).flat_map(|(sa, sb)| {
        sa.state
            .iter()
            .zip(&sb.state)
            .map(|(x, y)| (x - y).norm())
            .chain(std::iter::once((sa.leaked_norm - sb.leaked_norm).abs()))
    });
    states.chain(leaks).chain(samples).fold(0.0, f64::max)
}

/// dψ/dt = −i(H − iΓ/2)ψ and d(leak_k)/dt = Γ_k|ψ_k|².
fn derivative(h: &[C64], decay: &[f64], psi: &[C64], dpsi: &mut [C64], dleak: &mut [f64]) {
    let dim = psi.len();
    for i in 0..dim {
        let row = &h[i * dim..(i + 1) * dim];
        let hpsi: C64 = row.iter().zip(psi).map(|(a, b)| a * b).sum();
        dpsi[i] = C64::new(hpsi.im, -hpsi.re) - psi[i] * (0.5 * decay[i]);
        dleak[i] = decay[i] * psi[i].norm_sqr();
    }
}

fn integrate<H>(
    hamiltonian: &H,
    decay: &[f64],
    initial: &[C64],
    t0: f64,
    span: f64,
    steps: usize,
    samples: usize,
) -> Result<Run>
where
    H: Fn(f64, &mut [C64]),
{
    let dim = initial.len();
    let zero = C64::new(0.0, 0.0);
    let dt = span / steps as f64;
    let every = steps.checked_div(samples).unwrap_or(usize::MAX);

    let mut psi = initial.to_vec();
    let mut leak = vec![0.0; dim];
    let mut out = Vec::new();
    if samples > 0 {
        out.push(Sample {
            t: t0,
            state: psi.clone(),
            leaked_norm: 0.0,
        });
    }

    let mut h0 = vec![zero; dim * dim];
    let mut hm = vec![zero; dim * dim];
    let mut h1 = vec![zero; dim * dim];
    let fill = |t: f64, buf: &mut [C64]| -> Result<()> {
        buf.fill(zero);
        hamiltonian(t, buf);
        check_finite(buf, t)
    };
    fill(t0, &mut h0)?;

    let mut k1 = vec![zero; dim];
    let mut k2 = vec![zero; dim];
    let mut k3 = vec![zero; dim];
    let mut k4 = vec![zero; dim];
    let (mut l1, mut l2, mut l3, mut l4) = (vec![0.0; dim], vec![0.0; dim], vec![0.0; dim], vec![0.0; dim]);
    let mut tmp = vec![zero; dim];

    for n in 0..steps {
        let t = t0 + n as f64 * dt;
        fill(t + 0.5 * dt, &mut hm)?;
        fill(t + dt, &mut h1)?;

        derivative(&h0, decay, &psi, &mut k1, &mut l1);
        for i in 0..dim {
            tmp[i] = psi[i] + k1[i] * (0.5 * dt);
        }
        derivative(&hm, decay, &tmp, &mut k2, &mut l2);
        for i in 0..dim {
            tmp[i] = psi[i] + k2[i] * (0.5 * dt);
        }
        derivative(&hm, decay, &tmp, &mut k3, &mut l3);
        for i in 0..dim {
            tmp[i] = psi[i] + k3[i] * dt;
        }
        derivative(&h1, decay, &tmp, &mut k4, &mut l4);
        for i in 0..dim {
            psi[i] += (k1[i] + (k2[i] + k3[i]) * 2.0 + k4[i]) * (dt / 6.0);
            leak[i] += (l1[i] + 2.0 * (l2[i] + l3[i]) + l4[i]) * (dt / 6.0);
        }
        if psi.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::NonFinite { time: t + dt });
        }
        std::mem::swap(&mut h0, &mut h1);
        if (n + 1) % every == 0 {
            out.push(Sample {
                t: t0 + (n + 1) as f64 * dt,
                state: psi.clone(),
                leaked_norm: leak.iter().sum(),
            });
        }
    }
    Ok(Run {
        final_state: psi,
        leaked: leak,
        samples: out,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn basis(dim: usize, k: usize) -> Vec<C64> {
        let mut v = vec![C64::new(0.0, 0.0); dim];
        v[k] = C64::new(1.0, 0.0);
        v
    }

    fn rabi(omega: f64, detuning: f64) -> impl Fn(f64, &mut [C64]) {
        move |_, h: &mut [C64]| {
            h[1] = C64::new(omega / 2.0, 0.0);
            h[2] = C64::new(omega / 2.0, 0.0);
            h[3] = C64::new(detuning, 0.0);
        }
    }

    #[test]
    fn resonant_pi_pulse_inverts() {
        let opts = EvolveOptions {
            tolerance: 1e-11,
            ..Default::default()
        };
        let r = evolve(
            rabi(2.0, 0.0),
            &[0.0, 0.0],
            &basis(2, 0),
            0.0,
            PI / 2.0,
            Some(&basis(2, 1)),
            opts,
        )
        .unwrap();
        assert!(r.infidelity.unwrap() < 1e-8);
        assert!((r.final_populations[1] - 1.0).abs() < 1e-8);
    }

    #[test]
    fn detuned_rabi_matches_exact() {
        let (omega, delta) = (0.1, 2.0);
        let opts = EvolveOptions {
            tolerance: 1e-10,
            samples: 50,
            ..Default::default()
        };
        let r = evolve(rabi(omega, delta), &[0.0, 0.0], &basis(2, 0), 0.0, 20.0, None, opts).unwrap();
        let w = (omega * omega + delta * delta).sqrt();
        let mut peak: f64 = 0.0;
        for s in &r.samples {
            let exact = omega * omega / (w * w) * (w * s.t / 2.0).sin().powi(2);
            assert!((s.state[1].norm_sqr() - exact).abs() < 1e-8);
            peak = peak.max(s.state[1].norm_sqr());
        }
        assert!(peak <= omega * omega / (delta * delta));
    }

    #[test]
    fn pure_decay() {
        let r = evolve(
            |_, _| {},
            &[0.7],
            &basis(1, 0),
            0.0,
            3.0,
            None,
            EvolveOptions::default(),
        )
        .unwrap();
        assert!((r.leaked_norm - (1.0 - (-2.1f64).exp())).abs() < 1e-9);
        assert!(r.norm_defect(1.0) < 1e-9);
    }

    #[test]
    fn fourth_order_convergence() {
        let psi0 = basis(2, 0);
        let h = rabi(1.0, 0.3);
        let err = |steps: usize| {
            let run = integrate(&h, &[0.0, 0.0], &psi0, 0.0, 10.0, steps, 0).unwrap();
            let w = (1.0f64 + 0.09).sqrt();
            let exact = (5.0 * w).sin().powi(2) / (w * w);
            (run.final_state[1].norm_sqr() - exact).abs()
        };
        let ratio = err(200) / err(400);
        assert!((ratio - 16.0).abs() < 1.5, "{ratio}");
    }

    #[test]
    fn rejects_bad_requests() {
        let psi = basis(2, 0);
        let opts = EvolveOptions {
            tolerance: 1e-3,
            ..Default::default()
        };
        assert!(evolve(rabi(1.0, 0.0), &[0.0, 0.0], &psi, 0.0, 1.0, None, opts).is_err());
        let big = basis(17, 0);
        assert!(evolve(|_, _| {}, &[0.0; 17], &big, 0.0, 1.0, None, EvolveOptions::default()).is_err());
        let nan = |_: f64, h: &mut [C64]| h[1] = C64::new(f64::NAN, 0.0);
        assert!(matches!(
            evolve(nan, &[0.0, 0.0], &psi, 0.0, 1.0, None, EvolveOptions::default()),
            Err(Error::NonFinite { .. })
        ));
        // a coupling far above what 2^26 steps can resolve
        let stiff = |_: f64, h: &mut [C64]| {
            h[1] = C64::new(1.0, 0.0);
            h[2] = C64::new(1.0, 0.0);
        };
        let long = EvolveOptions {
            tolerance: 1e-12,
            ..Default::default()
        };
        assert!(matches!(
            evolve(stiff, &[0.0, 0.0], &psi, 0.0, 1e9, None, long),
            Err(Error::StepUnderflow { .. })
        ));
    }

    #[test]
    fn ramp_pair_sums_to_peak() {
        let d = DriveProfile::new(DriveShape::LinearRamp, 3.0, 2.0).unwrap();
        for i in 0..=10 {
            let (a, b) = d.ramp_pair(0.25 * i as f64);
            assert_eq!(a + b, 3.0);
        }
        assert_eq!(d.value(5.0), 3.0);
        assert!(DriveProfile::new(DriveShape::Constant, 1.0, 0.0).is_err());
    }
}
