//! Physical constants and unit conversions.
//!
//! Values are the CODATA 2018 recommended set. Spectral quantities are kept
//! in eV throughout the crate (energies, rest energies as mc², momenta as c·p);
//! SI only appears where a beam intensity is turned into a field amplitude.

use serde::Serialize;

use crate::error::{Error, Result};

/// Fixed reference set of physical constants.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhysicalConstants {
    /// ħc in eV·nm.
    pub hbar_c: f64,
    /// Electron rest energy in eV.
    pub electron_rest_energy: f64,
    /// Elementary charge in C.
    pub elementary_charge: f64,
    /// Vacuum permittivity in F/m.
    pub vacuum_permittivity: f64,
    /// Speed of light in m/s.
    pub speed_of_light: f64,
    /// Reduced Planck constant in J·s.
    pub hbar_si: f64,
}

pub const CODATA_2018: PhysicalConstants = PhysicalConstants {
    hbar_c: 197.326_980_4,
    electron_rest_energy: 510_998.95,
    elementary_charge: 1.602_176_634e-19,
    vacuum_permittivity: 8.854_187_812_8e-12,
    speed_of_light: 299_792_458.0,
    hbar_si: 1.054_571_817e-34,
};

/// Muon rest energy in eV.
pub const MUON_REST_ENERGY: f64 = 105_658_375.5;

/// Proton rest energy in eV.
pub const PROTON_REST_ENERGY: f64 = 938_272_088.16;

/// Nanometres per metre.
pub const NM_PER_M: f64 = 1e9;

/// Returns the reference constant set.
pub fn constants() -> &'static PhysicalConstants {
    &CODATA_2018
}

/// Converts a beam intensity from W/cm² to W/m².
pub fn intensity_si(w_per_cm2: f64) -> Result<f64> {
    if !(w_per_cm2 >= 0.0) || !w_per_cm2.is_finite() {
        return Err(Error::InvalidIntensity(w_per_cm2));
    }
    Ok(w_per_cm2 * 1e4)
}

pub fn ev_to_joule(ev: f64) -> f64 {
    ev * CODATA_2018.elementary_charge
}

pub fn joule_to_ev(joule: f64) -> f64 {
    joule / CODATA_2018.elementary_charge
}
