//! Weak-field Schwarzschild kinematics around a spherical body.
//!
//! Everything is in SI units. Differences between dilation factors at nearby
//! radii are ~1e-16 near Earth, far below the spacing of doubles around 1, so
//! [`dilation_difference`] never subtracts the two square roots directly.

use crate::error::{domain, Result};

/// Fundamental constants used throughout. Defaults are CODATA 2018.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    /// Speed of light (m/s).
    pub c: f64,
    /// Newtonian constant of gravitation (m^3 kg^-1 s^-2).
    pub g: f64,
    /// Reduced Planck constant (J s).
    pub hbar: f64,
}

impl PhysicalConstants {
    pub const CODATA_2018: PhysicalConstants = PhysicalConstants {
        c: 299_792_458.0,
        g: 6.674_30e-11,
        hbar: 1.054_571_817e-34,
    };

    pub fn new(c: f64, g: f64, hbar: f64) -> Result<Self> {
        for (name, v) in [("c", c), ("G", g), ("hbar", hbar)] {
            if !(v.is_finite() && v > 0.0) {
                return domain(format!("constant {name} must be finite and positive, got {v}"));
            }
        }
        Ok(PhysicalConstants { c, g, hbar })
    }
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self::CODATA_2018
    }
}

/// Mass of the Earth (kg).
pub const EARTH_MASS: f64 = 5.9722e24;
/// Mean radius of the Earth (m).
pub const EARTH_RADIUS: f64 = 6.371e6;

/// A static spherical mass: the classical source of the field.
///
/// Construction enforces `0 < R_S < R` so every radius at or above the
/// surface lies in the exterior region.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CentralBody {
    mass: f64,
    radius: f64,
    constants: PhysicalConstants,
    rs: f64,
}

impl CentralBody {
    pub fn new(mass: f64, radius: f64) -> Result<Self> {
        Self::with_constants(mass, radius, PhysicalConstants::default())
    }

    pub fn with_constants(mass: f64, radius: f64, constants: PhysicalConstants) -> Result<Self> {
        let rs = schwarzschild_radius_of(mass, &constants)?;
        if !(radius.is_finite() && radius > 0.0) {
            return domain(format!("body radius must be positive, got {radius}"));
        }
        if rs >= radius {
            return domain(format!(
                "body is inside its Schwarzschild radius (R_S = {rs:e} m >= R = {radius:e} m)"
            ));
        }
        Ok(CentralBody { mass, radius, constants, rs })
    }

    pub fn earth() -> Self {
        Self::new(EARTH_MASS, EARTH_RADIUS).expect("earth parameters are valid")
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn constants(&self) -> &PhysicalConstants {
        &self.constants
    }

    /// `GM` in m^3/s^2.
    pub fn gm(&self) -> f64 {
        self.constants.g * self.mass
    }

    pub fn schwarzschild_radius(&self) -> f64 {
        self.rs
    }

    /// Newtonian surface gravity `GM/R^2`.
    pub fn surface_gravity(&self) -> f64 {
        self.gm() / (self.radius * self.radius)
    }

    /// The `R_0101` component of the Riemann tensor at the surface, `-c^2 R_S / R^3`.
    pub fn curvature_r0101(&self) -> f64 {
        let c = self.constants.c;
        -c * c * self.rs / self.radius.powi(3)
    }
}

/// `2GM/c^2` for a given mass.
pub fn schwarzschild_radius_of(mass: f64, constants: &PhysicalConstants) -> Result<f64> {
    if !(mass.is_finite() && mass > 0.0) {
        return domain(format!("mass must be positive, got {mass}"));
    }
    Ok(2.0 * constants.g * mass / (constants.c * constants.c))
}

pub fn schwarzschild_radius(body: &CentralBody) -> f64 {
    body.schwarzschild_radius()
}

/// `dtau/dt = sqrt(1 - R_S/r)` for a slowly moving clock at radius `r`.
pub fn dilation_factor(r: f64, body: &CentralBody) -> Result<f64> {
    let rs = body.schwarzschild_radius();
    if r.is_nan() || r <= rs {
        return domain(format!("radius {r:e} m is not outside R_S = {rs:e} m"));
    }
    Ok((1.0 - rs / r).sqrt())
}

/// `sqrt(1 - R_S/r_hi) - sqrt(1 - R_S/r_lo)` without subtractive cancellation.
///
/// Uses the conjugate identity
/// `(R_S/r_lo - R_S/r_hi) / (sqrt(1 - R_S/r_hi) + sqrt(1 - R_S/r_lo))`
/// with the numerator formed as `R_S (r_hi - r_lo) / (r_lo r_hi)`.
/// `r_hi = r_lo` gives exactly zero; `r_hi` may be infinite.
pub fn dilation_difference(r_hi: f64, r_lo: f64, body: &CentralBody) -> Result<f64> {
    let rs = body.schwarzschild_radius();
    if r_lo.is_nan() || r_lo <= rs {
        return domain(format!("lower radius {r_lo:e} m is not outside R_S = {rs:e} m"));
    }
    if r_hi.is_nan() || r_hi < r_lo {
        return domain(format!("radii out of order: r_hi = {r_hi:e} m < r_lo = {r_lo:e} m"));
    }
    if r_hi == r_lo {
        return Ok(0.0);
    }
    let numerator = if r_hi.is_infinite() {
        rs / r_lo
    } else {
        (rs / r_lo) * ((r_hi - r_lo) / r_hi)
    };
    let s_hi = (1.0 - rs / r_hi).sqrt();
    let s_lo = (1.0 - rs / r_lo).sqrt();
    Ok(numerator / (s_hi + s_lo))
}

/// Newtonian potential `-GM/r` (J/kg).
pub fn gravitational_potential(r: f64, body: &CentralBody) -> Result<f64> {
    if r.is_nan() || r <= 0.0 {
        return domain(format!("radius must be positive, got {r}"));
    }
    Ok(-body.gm() / r)
}

/// First-order clock rate `1 + Phi/c^2` multiplying the internal Hamiltonian
/// when evolution is written in coordinate time.
pub fn dilated_hamiltonian_factor(r: f64, body: &CentralBody) -> Result<f64> {
    let rs = body.schwarzschild_radius();
    if r.is_nan() || r <= rs {
        return domain(format!("radius {r:e} m is not outside R_S = {rs:e} m"));
    }
    let c = body.constants().c;
    Ok(1.0 + gravitational_potential(r, body)? / (c * c))
}
