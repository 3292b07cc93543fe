//! Standing-wave lattice configuration, plane-wave labels and the unperturbed
//! Stueckelberg diagonal.
//!
//! States are labelled by contravariant four-wave-vectors stored in energy
//! units, `(E, cp_x, cp_y, cp_z)`, with metric signature `(+,-,-,-)`. Plane
//! waves are box normalised with unit volume; the volume cancels in every
//! matrix element so nothing here depends on it.

use std::fmt;
use std::ops::Add;

use serde::{Deserialize, Serialize};

use crate::constants::{constants, intensity_si, NM_PER_M, MUON_REST_ENERGY, PROTON_REST_ENERGY};
use crate::error::{Error, Result};

/// How the beam wavenumber is derived from its wavelength.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum WavenumberConvention {
    /// `k = 1/λ`, without the 2π. The default.
    #[default]
    #[serde(rename = "paper", alias = "paper_reciprocal")]
    Reciprocal,
    /// `k = 2π/λ`.
    #[serde(rename = "standard", alias = "standard_angular")]
    Angular,
}

/// Which route produces the gap term of the forbidden band.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FormulaMode {
    /// The closed-form gap expression evaluated as printed, in terms of λ and I.
    #[default]
    Literal,
    /// Amplitude from intensity, then β, then the degenerate 2×2 shifts.
    Chained,
}

/// Charged particle moving in the lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Species {
    #[default]
    Electron,
    Positron,
    Muon,
    Proton,
}

impl Species {
    /// Rest energy mc² in eV.
    pub fn rest_energy(self) -> f64 {
        match self {
            Species::Electron | Species::Positron => constants().electron_rest_energy,
            Species::Muon => MUON_REST_ENERGY,
            Species::Proton => PROTON_REST_ENERGY,
        }
    }

    /// Charge in units of the elementary charge.
    pub fn charge_number(self) -> f64 {
        match self {
            Species::Electron | Species::Muon => -1.0,
            Species::Positron | Species::Proton => 1.0,
        }
    }
}

impl fmt::Display for WavenumberConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WavenumberConvention::Reciprocal => "paper",
            WavenumberConvention::Angular => "standard",
        })
    }
}

/// Serialized form of a [`LatticeConfig`]: only the inputs, never derived values.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConfigDocument {
    pub wavelength_nm: f64,
    #[serde(rename = "intensity_W_cm2")]
    pub intensity_w_cm2: f64,
    #[serde(default)]
    pub convention: WavenumberConvention,
    #[serde(default)]
    pub formula_mode: FormulaMode,
    #[serde(default)]
    pub species: Species,
}

/// Beam and particle parameters together with the derived lattice scales.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ConfigDocument", into = "ConfigDocument")]
pub struct LatticeConfig {
    wavelength: f64,
    intensity: f64,
    convention: WavenumberConvention,
    formula_mode: FormulaMode,
    species: Species,
    k_gamma: f64,
    omega_gamma: f64,
    hbar_c_k_gamma: f64,
    amplitude: f64,
    beta: f64,
    particle_rest_energy: f64,
    particle_charge: f64,
}

/// Builds a configuration and derives wavenumber, frequency, vector potential
/// amplitude and the coupling scale β.
///
/// The amplitude follows `A = sqrt(2I) / (sqrt(c ε₀) ω)` with `ω = c k`, and
/// `β = q²A²/(32 M)`.
pub fn make_config(
    wavelength_nm: f64,
    intensity_w_cm2: f64,
    convention: WavenumberConvention,
    formula_mode: FormulaMode,
    species: Species,
) -> Result<LatticeConfig> {
    if !(wavelength_nm > 0.0) || !wavelength_nm.is_finite() {
        return Err(Error::InvalidWavelength(wavelength_nm));
    }
    let intensity = intensity_si(intensity_w_cm2)?;
    let c = constants();

    let k_gamma = match convention {
        WavenumberConvention::Reciprocal => 1.0 / wavelength_nm,
        WavenumberConvention::Angular => 2.0 * std::f64::consts::PI / wavelength_nm,
    };
    let omega_gamma = c.speed_of_light * k_gamma * NM_PER_M;
    let amplitude =
        (2.0 * intensity).sqrt() / ((c.speed_of_light * c.vacuum_permittivity).sqrt() * omega_gamma);

    let rest = species.rest_energy();
    let z = species.charge_number();
    // q A c expressed in eV is numerically z·A·c.
    let field_ev = z * amplitude * c.speed_of_light;
    let beta = field_ev * field_ev / (32.0 * rest);

    Ok(LatticeConfig {
        wavelength: wavelength_nm,
        intensity: intensity_w_cm2,
        convention,
        formula_mode,
        species,
        k_gamma,
        omega_gamma,
        hbar_c_k_gamma: c.hbar_c * k_gamma,
        amplitude,
        beta,
        particle_rest_energy: rest,
        particle_charge: z * c.elementary_charge,
    })
}

impl LatticeConfig {
    /// Electron in the default convention.
    pub fn electron(wavelength_nm: f64, intensity_w_cm2: f64) -> Result<Self> {
        make_config(
            wavelength_nm,
            intensity_w_cm2,
            WavenumberConvention::default(),
            FormulaMode::default(),
            Species::Electron,
        )
    }

    pub fn from_document(doc: &ConfigDocument) -> Result<Self> {
        make_config(
            doc.wavelength_nm,
            doc.intensity_w_cm2,
            doc.convention,
            doc.formula_mode,
            doc.species,
        )
    }

    pub fn document(&self) -> ConfigDocument {
        ConfigDocument {
            wavelength_nm: self.wavelength,
            intensity_w_cm2: self.intensity,
            convention: self.convention,
            formula_mode: self.formula_mode,
            species: self.species,
        }
    }

    /// Same beam and particle with a different intensity.
    pub fn with_intensity(&self, intensity_w_cm2: f64) -> Result<Self> {
        make_config(
            self.wavelength,
            intensity_w_cm2,
            self.convention,
            self.formula_mode,
            self.species,
        )
    }

    pub fn with_formula_mode(&self, mode: FormulaMode) -> Self {
        Self {
            formula_mode: mode,
            ..*self
        }
    }

    /// Wavelength in nm.
    pub fn wavelength(&self) -> f64 {
        self.wavelength
    }
    /// Intensity in W/cm².
    pub fn intensity(&self) -> f64 {
        self.intensity
    }
    pub fn convention(&self) -> WavenumberConvention {
        self.convention
    }
    pub fn formula_mode(&self) -> FormulaMode {
        self.formula_mode
    }
    pub fn species(&self) -> Species {
        self.species
    }
    /// Beam wavenumber in 1/nm.
    pub fn k_gamma(&self) -> f64 {
        self.k_gamma
    }
    /// Beam angular frequency in 1/s.
    pub fn omega_gamma(&self) -> f64 {
        self.omega_gamma
    }
    /// Lattice step ħck in eV, along both the energy and the momentum axis.
    pub fn hbar_c_k_gamma(&self) -> f64 {
        self.hbar_c_k_gamma
    }
    /// Vector potential amplitude in V·s/m.
    pub fn amplitude(&self) -> f64 {
        self.amplitude
    }
    /// β = q²A²/(32M) in eV.
    pub fn beta(&self) -> f64 {
        self.beta
    }
    /// Particle rest energy Mc² in eV.
    pub fn particle_rest_energy(&self) -> f64 {
        self.particle_rest_energy
    }
    /// Signed particle charge in C.
    pub fn particle_charge(&self) -> f64 {
        self.particle_charge
    }

    /// Charge in units of the elementary charge.
    pub fn charge_number(&self) -> f64 {
        self.particle_charge / constants().elementary_charge
    }

    /// `A·c` in volts.
    pub fn amplitude_volts(&self) -> f64 {
        self.amplitude * constants().speed_of_light
    }

    /// q²A²/(8M) in eV: the average of the quadratic potential over a cell.
    pub fn quadratic_scale(&self) -> f64 {
        4.0 * self.beta
    }
}

impl TryFrom<ConfigDocument> for LatticeConfig {
    type Error = Error;

    fn try_from(doc: ConfigDocument) -> Result<Self> {
        Self::from_document(&doc)
    }
}

impl From<LatticeConfig> for ConfigDocument {
    fn from(config: LatticeConfig) -> Self {
        config.document()
    }
}

/// Contravariant four-wave-vector of a plane wave, each component times ħc (eV).
///
/// No mass-shell constraint: off-shell labels are legitimate states.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct WaveVector4 {
    pub energy: f64,
    pub cp_x: f64,
    pub cp_y: f64,
    pub cp_z: f64,
}

impl WaveVector4 {
    pub const fn new(energy: f64, cp_x: f64, cp_y: f64, cp_z: f64) -> Self {
        Self {
            energy,
            cp_x,
            cp_y,
            cp_z,
        }
    }

    /// State on the `(E, cp_z)` plane with no transverse momentum.
    pub const fn longitudinal(energy: f64, cp_z: f64) -> Self {
        Self::new(energy, 0.0, 0.0, cp_z)
    }

    /// `self + K(t)` for lattice step `step` (eV).
    pub fn shifted(&self, t: LatticeTransfer, step: f64) -> Self {
        let (de, dp) = t.shift(step);
        Self {
            energy: self.energy + de,
            cp_z: self.cp_z + dp,
            ..*self
        }
    }

    pub fn is_finite(&self) -> bool {
        self.energy.is_finite() && self.cp_x.is_finite() && self.cp_y.is_finite() && self.cp_z.is_finite()
    }
}

/// Reciprocal-lattice transfer `ħck (n_E Ê + n_p ĉp_z)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(from = "[i32; 2]", into = "[i32; 2]")]
pub struct LatticeTransfer {
    pub n_e: i32,
    pub n_p: i32,
}

impl LatticeTransfer {
    pub const ZERO: LatticeTransfer = LatticeTransfer { n_e: 0, n_p: 0 };

    pub const fn new(n_e: i32, n_p: i32) -> Self {
        Self { n_e, n_p }
    }

    pub fn negate(self) -> Self {
        Self::new(-self.n_e, -self.n_p)
    }

    /// `(ΔE, Δcp_z)` in eV.
    pub fn shift(self, step: f64) -> (f64, f64) {
        (self.n_e as f64 * step, self.n_p as f64 * step)
    }

    /// Multiset `{|n_E|, |n_p|}`, ordered.
    pub fn magnitudes(self) -> (u32, u32) {
        let (a, b) = (self.n_e.unsigned_abs(), self.n_p.unsigned_abs());
        (a.min(b), a.max(b))
    }
}

impl Add for LatticeTransfer {
    type Output = LatticeTransfer;

    fn add(self, rhs: Self) -> Self {
        Self::new(self.n_e + rhs.n_e, self.n_p + rhs.n_p)
    }
}

impl From<[i32; 2]> for LatticeTransfer {
    fn from([n_e, n_p]: [i32; 2]) -> Self {
        Self::new(n_e, n_p)
    }
}

impl From<LatticeTransfer> for [i32; 2] {
    fn from(t: LatticeTransfer) -> Self {
        [t.n_e, t.n_p]
    }
}

/// Eigenvalue of `p_μ p^μ / 2M` on a plane wave, in eV. Negative for spacelike
/// labels.
pub fn stueckelberg_diagonal(k: &WaveVector4, config: &LatticeConfig) -> f64 {
    let m2 = k.energy * k.energy - k.cp_x * k.cp_x - k.cp_y * k.cp_y - k.cp_z * k.cp_z;
    m2 / (2.0 * config.particle_rest_energy())
}

/// `stueckelberg_diagonal(k + K(t)) - stueckelberg_diagonal(k)` without
/// cancellation between the two large values.
pub fn stueckelberg_shift(k: &WaveVector4, t: LatticeTransfer, config: &LatticeConfig) -> f64 {
    mass_squared_shift(k, t, config.hbar_c_k_gamma()) / (2.0 * config.particle_rest_energy())
}

/// `E² - cp_z²` in eV². Transverse momenta do not enter the degeneracy classes.
pub fn mass_squared_c4(k: &WaveVector4) -> f64 {
    k.energy * k.energy - k.cp_z * k.cp_z
}

/// Full four-component invariant `E² - |cp|²` in eV².
pub fn mass_squared_c4_full(k: &WaveVector4) -> f64 {
    k.energy * k.energy - k.cp_x * k.cp_x - k.cp_y * k.cp_y - k.cp_z * k.cp_z
}

/// `mass_squared_c4(k + K(t)) - mass_squared_c4(k)` evaluated as
/// `2(E ΔE - cp_z Δcp_z) + ΔE² - Δcp_z²`.
pub fn mass_squared_shift(k: &WaveVector4, t: LatticeTransfer, step: f64) -> f64 {
    let (de, dp) = t.shift(step);
    2.0 * (k.energy * de - k.cp_z * dp) + de * de - dp * dp
}
