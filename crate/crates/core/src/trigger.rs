//! A harmonic-oscillator clock that rotates agent A's internal state from
//! `A0` to `A1` at a fixed proper time.
//!
//! The oscillator starts as a coherent state at maximum displacement `A` and
//! swings through the interaction zone `[0, delta]`, where it couples to the
//! `{A0, A1}` subspace through `V0 sigma_x`. In the `sigma_x` eigenbasis the
//! problem splits into two scalar channels with potentials `+V0` and `-V0`
//! on the zone.
//!
//! Numerics work in oscillator units: lengths in `sigma`, times in `1/omega`,
//! energies in `hbar omega`.

use std::f64::consts::{PI, TAU};
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::error::{domain, Error, Result};

/// Minimum ratio for each of the hierarchy conditions `A >> delta >> sigma`
/// and kinetic energy `>> V0` unless configured otherwise.
pub const DEFAULT_VALIDITY_FACTOR: f64 = 10.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TriggerParams {
    pub mass: f64,
    pub omega: f64,
    pub delta: f64,
    pub v0: f64,
    pub amplitude: f64,
    pub hbar: f64,
}

impl TriggerParams {
    /// Parameters with the amplitude fixed by `A = 2 delta V0 / (pi hbar omega)`,
    /// which makes the crossing rotate `A0` exactly into `A1`.
    pub fn new(mass: f64, omega: f64, delta: f64, v0: f64, hbar: f64) -> Result<Self> {
        let p = TriggerParams { mass, omega, delta, v0, amplitude: 0.0, hbar };
        p.with_amplitude(2.0 * delta * v0 / (PI * hbar * omega))
    }

    /// Build from dimensionless ratios: `delta = delta_over_sigma * sigma` and
    /// `A = amp_over_delta * delta`, with `V0` solved from the amplitude
    /// relation.
    pub fn design(mass: f64, omega: f64, hbar: f64, delta_over_sigma: f64, amp_over_delta: f64) -> Result<Self> {
        if !(mass > 0.0 && omega > 0.0 && hbar > 0.0) {
            return domain("mass, omega and hbar must be positive");
        }
        let sigma = (hbar / (mass * omega)).sqrt();
        let delta = delta_over_sigma * sigma;
        let amplitude = amp_over_delta * delta;
        let v0 = PI * hbar * omega * amplitude / (2.0 * delta);
        let p = TriggerParams { mass, omega, delta, v0, amplitude, hbar };
        p.validated()
    }

    /// Oscillator whose quarter period is `tau_star`.
    pub fn for_alarm(
        tau_star: f64,
        mass: f64,
        hbar: f64,
        delta_over_sigma: f64,
        amp_over_delta: f64,
    ) -> Result<Self> {
        if !(tau_star > 0.0) {
            return domain("alarm time must be positive");
        }
        Self::design(mass, TAU / (4.0 * tau_star), hbar, delta_over_sigma, amp_over_delta)
    }

    /// Same parameters with an explicit amplitude, decoupled from the
    /// defining relation.
    pub fn with_amplitude(mut self, amplitude: f64) -> Result<Self> {
        self.amplitude = amplitude;
        self.validated()
    }

    /// Same oscillator and amplitude with the coupling switched off.
    pub fn free_oscillator(mut self) -> Self {
        self.v0 = 0.0;
        self
    }

    pub fn with_v0(mut self, v0: f64) -> Result<Self> {
        self.v0 = v0;
        self.validated()
    }

    pub fn with_delta(mut self, delta: f64) -> Result<Self> {
        self.delta = delta;
        self.validated()
    }

    fn validated(self) -> Result<Self> {
        let p = &self;
        let all = [p.mass, p.omega, p.delta, p.amplitude, p.hbar];
        if all.iter().any(|x| !(x.is_finite() && *x > 0.0)) {
            return domain("trigger mass, omega, delta, amplitude and hbar must be positive and finite");
        }
        if !(p.v0.is_finite() && p.v0 >= 0.0) {
            return domain("V0 must be finite and non-negative");
        }
        Ok(self)
    }

    pub fn period(&self) -> f64 {
        TAU / self.omega
    }

    pub fn tau_star(&self) -> f64 {
        self.period() / 4.0
    }

    pub fn sigma(&self) -> f64 {
        (self.hbar / (self.mass * self.omega)).sqrt()
    }

    pub fn alpha0(&self) -> f64 {
        self.amplitude / (std::f64::consts::SQRT_2 * self.sigma())
    }

    pub fn speed(&self) -> f64 {
        self.omega * self.amplitude
    }

    /// Crossing time estimate `delta / (omega A)`.
    pub fn epsilon(&self) -> f64 {
        self.delta / self.speed()
    }

    /// Time the classical orbit `A cos(omega t)` spends between `x = delta`
    /// and `x = 0`.
    pub fn epsilon_exact(&self) -> f64 {
        (self.delta / self.amplitude).min(1.0).asin() / self.omega
    }

    pub fn kinetic_energy(&self) -> f64 {
        0.5 * self.mass * self.speed().powi(2)
    }

    pub fn validity(&self) -> Validity {
        Validity {
            amp_over_delta: self.amplitude / self.delta,
            delta_over_sigma: self.delta / self.sigma(),
            energy_over_v0: if self.v0 > 0.0 { self.kinetic_energy() / self.v0 } else { f64::INFINITY },
        }
    }

    fn units(&self) -> Units {
        Units {
            delta: self.delta / self.sigma(),
            amplitude: self.amplitude / self.sigma(),
            v0: self.v0 / (self.hbar * self.omega),
        }
    }
}

/// Parameters in oscillator units.
#[derive(Debug, Clone, Copy)]
struct Units {
    delta: f64,
    amplitude: f64,
    v0: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Validity {
    pub amp_over_delta: f64,
    pub delta_over_sigma: f64,
    pub energy_over_v0: f64,
}

impl Validity {
    /// Human-readable list of the conditions below `min_factor`.
    pub fn failures(&self, min_factor: f64) -> Vec<String> {
        let mut out = Vec::new();
        for (name, v) in [
            ("A/delta", self.amp_over_delta),
            ("delta/sigma", self.delta_over_sigma),
            ("E_kin/V0", self.energy_over_v0),
        ] {
            if v < min_factor {
                out.push(format!("{name} = {v:.4} is below the validity factor {min_factor}"));
            }
        }
        out
    }
}

/// `V0 epsilon / hbar`.
pub fn rotation_angle(p: &TriggerParams) -> f64 {
    p.v0 * p.delta / (p.hbar * p.omega * p.amplitude)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalyticState {
    pub tau: f64,
    pub alpha: Complex64,
    /// Amplitudes on `(A0, A1)`.
    pub internal: [Complex64; 2],
}

impl AnalyticState {
    pub fn p_a0(&self) -> f64 {
        self.internal[0].norm_sqr()
    }

    pub fn p_a1(&self) -> f64 {
        self.internal[1].norm_sqr()
    }
}

/// Piecewise closed-form evolution for `0 <= tau <= tau*`: free coherent
/// state with `A0` held until `tau* - epsilon`, then a rotation
/// `exp(-i V0 sigma_x (tau - tau* + epsilon) / hbar)` over the crossing.
pub fn analytic_evolve(p: &TriggerParams, tau: f64) -> Result<AnalyticState> {
    let ts = p.tau_star();
    if !(tau >= 0.0 && tau <= ts * (1.0 + 1e-12)) {
        return Err(Error::Domain(format!("tau = {tau} outside [0, {ts}]")));
    }
    let alpha = Complex64::from_polar(p.alpha0(), -p.omega * tau);
    let start = ts - p.epsilon();
    let internal = if tau < start {
        [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]
    } else {
        let theta = p.v0 * (tau - start) / p.hbar;
        [Complex64::new(theta.cos(), 0.0), Complex64::new(0.0, -theta.sin())]
    };
    Ok(AnalyticState { tau, alpha, internal })
}

/// Plane-wave reflection probability at a step of height `V0` for the
/// kinetic energy `m (omega A)^2 / 2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Reflection {
    pub probability: f64,
    /// False when the energy does not clear the step.
    pub valid: bool,
}

pub fn reflection_bound(p: &TriggerParams) -> Reflection {
    let e = p.kinetic_energy();
    if e <= p.v0 {
        return Reflection { probability: 1.0, valid: false };
    }
    let ratio = (1.0 - p.v0 / e).sqrt();
    Reflection { probability: ((1.0 - ratio) / (1.0 + ratio)).powi(2), valid: true }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Frame {
    /// Grid follows the classical orbit; exact for the quadratic potential.
    CoMoving,
    /// Fixed grid around the origin.
    Lab,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub points: usize,
    /// Grid spans `[-half_width, half_width)` in units of sigma.
    pub half_width: f64,
    pub frame: Frame,
    /// Time step cap as a fraction of `min(2 pi / omega, pi hbar / V0)`.
    pub step_fraction: f64,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec { points: 1024, half_width: 32.0, frame: Frame::CoMoving, step_fraction: 1.0 / 200.0 }
    }
}

impl GridSpec {
    pub fn spacing(&self) -> f64 {
        2.0 * self.half_width / self.points as f64
    }

    fn validate(&self, u: &Units) -> Result<()> {
        if self.points < 64 {
            return Err(Error::InvalidGrid(format!("{} points is too few", self.points)));
        }
        if !(self.step_fraction > 0.0 && self.step_fraction <= 1.0 / 200.0) {
            return Err(Error::InvalidGrid("time step must be at most 1/200 of the fastest scale".into()));
        }
        let dx = self.spacing();
        if !(dx <= 0.125) {
            return Err(Error::InvalidGrid(format!("spacing {dx} sigma exceeds sigma/8")));
        }
        let (reach, k_needed) = match self.frame {
            Frame::CoMoving => (8.0, 10.0),
            Frame::Lab => (1.5 * u.amplitude + 8.0, u.amplitude + 10.0),
        };
        if self.half_width < reach {
            return Err(Error::InvalidGrid(format!(
                "half width {} sigma does not cover {reach} sigma",
                self.half_width
            )));
        }
        if PI / dx < k_needed {
            return Err(Error::InvalidGrid(format!(
                "momentum cutoff {} is below the required {k_needed}",
                PI / dx
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NumericSample {
    pub tau: f64,
    pub mean_x: f64,
    pub mean_p: f64,
    pub p_a0: f64,
    pub p_a1: f64,
    pub norm: f64,
}

#[derive(Debug, Clone)]
pub struct NumericTrajectory {
    pub samples: Vec<NumericSample>,
    /// Largest time step used, in seconds.
    pub dt: f64,
    pub steps: usize,
}

impl NumericTrajectory {
    pub fn max_norm_drift(&self) -> f64 {
        self.samples.iter().map(|s| (s.norm - 1.0).abs()).fold(0.0, f64::max)
    }
}

/// Length of `{t in [t0, t1] : lo <= a cos t <= hi}`.
fn time_in_band(a: f64, lo: f64, hi: f64, t0: f64, t1: f64) -> f64 {
    if a == 0.0 {
        return if lo <= 0.0 && 0.0 <= hi { t1 - t0 } else { 0.0 };
    }
    let (clo, chi) = (lo / a, hi / a);
    if clo > 1.0 || chi < -1.0 || clo > chi {
        return 0.0;
    }
    let (acos_hi, acos_lo) = (chi.min(1.0).acos(), clo.max(-1.0).acos());
    let mut total = 0.0;
    let mut k = (t0 / PI).floor() as i64;
    loop {
        let base = k as f64 * PI;
        if base >= t1 {
            break;
        }
        // cos decreases on even half-turns and increases on odd ones
        let (s, e) = if k.rem_euclid(2) == 0 {
            (base + acos_hi, base + acos_lo)
        } else {
            (base + PI - acos_lo, base + PI - acos_hi)
        };
        let (s, e) = (s.max(t0), e.min(t1));
        if e > s {
            total += e - s;
        }
        k += 1;
    }
    total
}

struct SplitStep {
    n: usize,
    dx: f64,
    y: Vec<f64>,
    k: Vec<f64>,
    fwd: Arc<dyn Fft<f64>>,
    inv: Arc<dyn Fft<f64>>,
    scratch: Vec<Complex64>,
}

impl SplitStep {
    fn new(spec: &GridSpec) -> Self {
        let n = spec.points;
        let dx = spec.spacing();
        let y = (0..n).map(|j| -spec.half_width + j as f64 * dx).collect();
        let dk = TAU / (n as f64 * dx);
        let k = (0..n)
            .map(|j| if j < n / 2 { j as f64 * dk } else { (j as f64 - n as f64) * dk })
            .collect();
        let mut planner = FftPlanner::new();
        let fwd = planner.plan_fft_forward(n);
        let inv = planner.plan_fft_inverse(n);
        let scratch = vec![Complex64::new(0.0, 0.0); fwd.get_inplace_scratch_len().max(inv.get_inplace_scratch_len())];
        SplitStep { n, dx, y, k, fwd, inv, scratch }
    }

    fn kinetic(&mut self, phi: &mut [Complex64], dt: f64) {
        self.fwd.process_with_scratch(phi, &mut self.scratch);
        let scale = 1.0 / self.n as f64;
        for (v, &k) in phi.iter_mut().zip(&self.k) {
            *v *= Complex64::from_polar(scale, -0.5 * k * k * dt);
        }
        self.inv.process_with_scratch(phi, &mut self.scratch);
    }

    fn mean_k(&mut self, phi: &[Complex64]) -> (f64, f64) {
        let mut buf = phi.to_vec();
        self.fwd.process_with_scratch(&mut buf, &mut self.scratch);
        let w: f64 = buf.iter().map(|v| v.norm_sqr()).sum();
        let m: f64 = buf.iter().zip(&self.k).map(|(v, k)| k * v.norm_sqr()).sum();
        (m, w)
    }
}

/// Grid integration of both channels with a Strang split step. The zone
/// potential is applied through the exact time each grid point spends inside
/// the zone over the half step.
pub fn numeric_evolve(p: &TriggerParams, spec: &GridSpec, sample_times: &[f64]) -> Result<NumericTrajectory> {
    let u = p.units();
    spec.validate(&u)?;
    if sample_times.windows(2).any(|w| w[1] < w[0]) || sample_times.first().is_some_and(|&t| t < 0.0) {
        return domain("sample times must be non-negative and sorted");
    }
    let scale_v = if u.v0 > 0.0 { PI / u.v0 } else { f64::INFINITY };
    let dt_max = TAU.min(scale_v) * spec.step_fraction;

    let mut ss = SplitStep::new(spec);
    let orbit_amp = match spec.frame {
        Frame::CoMoving => u.amplitude,
        Frame::Lab => 0.0,
    };
    let start = match spec.frame {
        Frame::CoMoving => 0.0,
        Frame::Lab => u.amplitude,
    };
    let ground = |y: f64| Complex64::new(PI.powf(-0.25) * (-0.5 * (y - start).powi(2)).exp(), 0.0);
    let mut plus: Vec<Complex64> = ss.y.iter().map(|&y| ground(y)).collect();
    let mut minus = plus.clone();
    let harmonic: Vec<f64> = ss.y.iter().map(|y| 0.5 * y * y).collect();

    let mut phase = vec![Complex64::new(0.0, 0.0); ss.n];
    let half_kick = |t0: f64, t1: f64, plus: &mut [Complex64], minus: &mut [Complex64], phase: &mut [Complex64]| {
        for j in 0..plus.len() {
            let y = -spec.half_width + j as f64 * spec.spacing();
            let occ = if u.v0 == 0.0 {
                0.0
            } else if orbit_amp == 0.0 {
                // static zone: weight each cell by its overlap with [0, delta]
                let dx = spec.spacing();
                let overlap = ((y + 0.5 * dx).min(u.delta) - (y - 0.5 * dx).max(0.0)).max(0.0);
                overlap / dx * (t1 - t0) * u.v0
            } else {
                // orbit x_c = a cos t puts grid point y at x = y + x_c
                time_in_band(orbit_amp, -y, u.delta - y, t0, t1) * u.v0
            };
            let h = harmonic[j] * (t1 - t0);
            phase[j] = Complex64::from_polar(1.0, -h - occ);
            plus[j] *= phase[j];
            minus[j] *= Complex64::from_polar(1.0, -h + occ);
        }
    };

    let mut samples = Vec::with_capacity(sample_times.len());
    let mut t = 0.0;
    let mut steps = 0;
    let mut dt_used: f64 = 0.0;
    for &ts_phys in sample_times {
        let target = ts_phys * p.omega;
        let span = target - t;
        if span > 0.0 {
            let n = (span / dt_max).ceil().max(1.0) as usize;
            let dt = span / n as f64;
            dt_used = dt_used.max(dt);
            for i in 0..n {
                let t0 = t + i as f64 * dt;
                let tm = t0 + 0.5 * dt;
                let t1 = if i + 1 == n { target } else { t0 + dt };
                half_kick(t0, tm, &mut plus, &mut minus, &mut phase);
                ss.kinetic(&mut plus, dt);
                ss.kinetic(&mut minus, dt);
                half_kick(tm, t1, &mut plus, &mut minus, &mut phase);
            }
            steps += n;
            t = target;
        }
        samples.push(observe(&mut ss, &plus, &minus, orbit_amp, t, p));
    }
    Ok(NumericTrajectory { samples, dt: dt_used / p.omega, steps })
}

fn observe(ss: &mut SplitStep, plus: &[Complex64], minus: &[Complex64], orbit_amp: f64, t: f64, p: &TriggerParams) -> NumericSample {
    let dx = ss.dx;
    let (mut n_p, mut n_m, mut a0, mut a1, mut my) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for j in 0..ss.n {
        let (u, v) = (plus[j], minus[j]);
        n_p += u.norm_sqr();
        n_m += v.norm_sqr();
        a0 += (u + v).norm_sqr();
        a1 += (u - v).norm_sqr();
        my += ss.y[j] * (u.norm_sqr() + v.norm_sqr());
    }
    let norm = 0.5 * (n_p + n_m) * dx;
    let (kp, wp) = ss.mean_k(plus);
    let (km, wm) = ss.mean_k(minus);
    let mean_k = (kp + km) / (wp + wm);
    let mean_y = my / (n_p + n_m);
    let sigma = p.sigma();
    NumericSample {
        tau: t / p.omega,
        mean_x: (orbit_amp * t.cos() + mean_y) * sigma,
        mean_p: (-orbit_amp * t.sin() + mean_k) * p.hbar / sigma,
        p_a0: 0.25 * a0 * dx,
        p_a1: 0.25 * a1 * dx,
        norm,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Analytic,
    Numeric,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Analytic => "analytic",
            Mode::Numeric => "numeric",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Thresholds {
    /// Minimum `P(A0)` at `tau* - 2 epsilon`.
    pub hold: f64,
    /// Minimum `P(A1)` at `tau*`.
    pub fire: f64,
    pub validity_factor: f64,
}

impl Thresholds {
    pub fn for_mode(mode: Mode) -> Self {
        match mode {
            Mode::Analytic => Thresholds { hold: 1.0 - 1e-12, fire: 1.0 - 1e-12, validity_factor: DEFAULT_VALIDITY_FACTOR },
            Mode::Numeric => Thresholds { hold: 0.99, fire: 0.95, validity_factor: DEFAULT_VALIDITY_FACTOR },
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TriggerReport {
    pub mode: Mode,
    pub epsilon: f64,
    pub epsilon_exact: f64,
    pub rotation_angle: f64,
    pub p_a0_before: f64,
    pub p_a1_at_star: f64,
    pub reflection: Reflection,
    pub max_norm_drift: f64,
    pub thresholds: Thresholds,
    pub diagnostics: Vec<String>,
    pub passed: bool,
}

/// Evaluate both clauses of the trigger condition: `A0` held at
/// `tau* - 2 epsilon` and `A1` reached at `tau*`.
pub fn check_trigger_condition(p: &TriggerParams, mode: Mode, thresholds: Thresholds, grid: &GridSpec) -> Result<TriggerReport> {
    let ts = p.tau_star();
    let before = (ts - 2.0 * p.epsilon()).max(0.0);
    let (p_a0_before, p_a1_at_star, drift) = match mode {
        Mode::Analytic => (analytic_evolve(p, before)?.p_a0(), analytic_evolve(p, ts)?.p_a1(), 0.0),
        Mode::Numeric => {
            let tr = numeric_evolve(p, grid, &[before, ts])?;
            (tr.samples[0].p_a0, tr.samples[1].p_a1, tr.max_norm_drift())
        }
    };
    let mut diagnostics = p.validity().failures(thresholds.validity_factor);
    if p_a0_before < thresholds.hold {
        diagnostics.push(format!("P(A0) = {p_a0_before:.6} before the crossing is below {}", thresholds.hold));
    }
    if p_a1_at_star < thresholds.fire {
        diagnostics.push(format!("P(A1) = {p_a1_at_star:.6} at tau* is below {}", thresholds.fire));
    }
    let reflection = reflection_bound(p);
    if !reflection.valid {
        diagnostics.push("kinetic energy does not clear the step".into());
    }
    Ok(TriggerReport {
        mode,
        epsilon: p.epsilon(),
        epsilon_exact: p.epsilon_exact(),
        rotation_angle: rotation_angle(p),
        p_a0_before,
        p_a1_at_star,
        reflection,
        max_norm_drift: drift,
        thresholds,
        passed: diagnostics.is_empty(),
        diagnostics,
    })
}

/// `n` evenly spaced times over `[0, tau_end]`, both ends included.
pub fn uniform_samples(tau_end: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![tau_end],
        _ => (0..n).map(|i| tau_end * i as f64 / (n - 1) as f64).collect(),
    }
}

/// Rotation angle the analytic model would give at `tau*` for the exact
/// crossing time rather than the estimate.
pub fn rotation_angle_exact(p: &TriggerParams) -> f64 {
    p.v0 * p.epsilon_exact() / p.hbar
}
