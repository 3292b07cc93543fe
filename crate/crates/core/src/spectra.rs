//! From mass shifts to the forbidden kinetic-energy band.
//!
//! At the third-zone edge `cp_z = ħck` the shifted mass shell reads
//! `(Mc² + ε)² = E² - (ħck)²`. For small `ε` and small `ħck` the kinetic energy
//! `E - Mc²` is `ε + (ħck)²/(2Mc²)`. With `ε = (2 ∓ 1)·g` the states between
//! `recoil + g` and `recoil + 3g` are forbidden.
//!
//! Two routes give the gap term `g`:
//!
//! * [`FormulaMode::Literal`] evaluates the closed expression
//!   `q² I λ² / (16 M c³ ε₀)` with the recoil `ħ²c²/(2Mc² λ²)`;
//! * [`FormulaMode::Chained`] derives `A` from `I`, then `β`, then the
//!   eigenvalues `4β ± 2β` of the edge pair, so `g = 2β`, and uses the recoil
//!   `(ħck)²/(2Mc²)` of the configured convention.
//!
//! With the reciprocal convention the chained gap term is exactly twice the
//! literal one. Both are reported.

use serde::Serialize;

use crate::constants::{constants, intensity_si, joule_to_ev};
use crate::coupling::quadratic_coupling;
use crate::error::{Error, Result};
use crate::lattice::{ConfigDocument, FormulaMode, LatticeConfig, LatticeTransfer, Species, WaveVector4, WavenumberConvention};
use crate::solver::matrix::CMatrix;
use crate::solver::perturbation::{degenerate_shifts, DegenerateSubspace};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnergyMode {
    /// `sqrt(m² + cp²)`.
    Exact,
    /// `m + cp²/(2m)`.
    QuadraticApprox,
}

/// Energy of a particle of mass `mass_c2` (eV) and momentum `cp_z` (eV).
pub fn mass_to_energy(mass_c2: f64, cp_z: f64, mode: EnergyMode) -> Result<f64> {
    if !(mass_c2 > 0.0) {
        return Err(Error::NonPositiveMass(mass_c2));
    }
    Ok(match mode {
        EnergyMode::Exact => mass_c2.hypot(cp_z),
        EnergyMode::QuadraticApprox => mass_c2 + cp_z * cp_z / (2.0 * mass_c2),
    })
}

/// `sqrt(m² + cp²) - m`, free of cancellation.
fn exact_kinetic_excess(mass_c2: f64, cp: f64) -> f64 {
    cp * cp / (mass_c2.hypot(cp) + mass_c2)
}

/// Literal gap term for an electron, in eV.
pub fn gap_term_literal(wavelength_nm: f64, intensity_w_cm2: f64) -> Result<f64> {
    gap_term_literal_for(Species::Electron, wavelength_nm, intensity_w_cm2)
}

/// `q² I λ² / (16 M c³ ε₀)` in eV.
pub fn gap_term_literal_for(species: Species, wavelength_nm: f64, intensity_w_cm2: f64) -> Result<f64> {
    if !(wavelength_nm > 0.0) || !wavelength_nm.is_finite() {
        return Err(Error::InvalidWavelength(wavelength_nm));
    }
    let c = constants();
    let intensity = intensity_si(intensity_w_cm2)?;
    let q = species.charge_number() * c.elementary_charge;
    let lambda = wavelength_nm * 1e-9;
    let mass_kg = species.rest_energy() * c.elementary_charge / (c.speed_of_light * c.speed_of_light);
    let joules = q * q * intensity * lambda * lambda
        / (16.0 * mass_kg * c.speed_of_light.powi(3) * c.vacuum_permittivity);
    Ok(joule_to_ev(joules))
}

/// `ħ²c²/(2Mc² λ²)` in eV.
pub fn recoil_literal(species: Species, wavelength_nm: f64) -> f64 {
    let p = constants().hbar_c / wavelength_nm;
    p * p / (2.0 * species.rest_energy())
}

/// `(ħck)²/(2Mc²)` for the configured convention, in eV.
pub fn recoil_term(config: &LatticeConfig) -> f64 {
    let p = config.hbar_c_k_gamma();
    p * p / (2.0 * config.particle_rest_energy())
}

/// Mass shifts `(ε₋, ε₊)` of the momentum-edge pair, from the coupling matrix.
pub fn edge_pair_shifts(config: &LatticeConfig) -> Result<(f64, f64)> {
    let diag = quadratic_coupling(LatticeTransfer::ZERO, config);
    let off = quadratic_coupling(LatticeTransfer::new(0, -2), config);
    let a = config.hbar_c_k_gamma();
    let energy = config.particle_rest_energy().hypot(a);
    let states = vec![WaveVector4::longitudinal(energy, a), WaveVector4::longitudinal(energy, -a)];
    let m = CMatrix::from_real_rows(&[vec![diag, off], vec![off, diag]])?;
    let sub = DegenerateSubspace::new(states, m)?;
    let ev = degenerate_shifts(&sub)?;
    Ok((ev[0], ev[1]))
}

/// The forbidden kinetic-energy band. Kinetic energy means `E - Mc²`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GapReport {
    #[serde(rename = "E_minus_eV")]
    pub e_minus: f64,
    #[serde(rename = "E_plus_eV")]
    pub e_plus: f64,
    #[serde(rename = "recoil_term_eV")]
    pub recoil_term: f64,
    #[serde(rename = "gap_term_eV")]
    pub gap_term: f64,
    #[serde(rename = "beta_eV")]
    pub beta: f64,
    pub formula_mode: FormulaMode,
    pub convention: WavenumberConvention,
    /// Exact minus small-shift kinetic energy of the upper edge.
    #[serde(rename = "exact_vs_approx_delta_eV")]
    pub exact_vs_approx_delta: f64,
    /// Chained over literal gap term; 2 under the reciprocal convention.
    pub chained_to_literal_ratio: f64,
    pub config: ConfigDocument,
}

pub fn forbidden_band(config: &LatticeConfig) -> Result<GapReport> {
    let species = config.species();
    let literal = gap_term_literal_for(species, config.wavelength(), config.intensity())?;
    let (eps_minus, eps_plus) = edge_pair_shifts(config)?;
    let chained = 0.5 * (eps_plus - eps_minus);

    let (recoil, gap, cp) = match config.formula_mode() {
        FormulaMode::Literal => (
            recoil_literal(species, config.wavelength()),
            literal,
            constants().hbar_c / config.wavelength(),
        ),
        FormulaMode::Chained => (recoil_term(config), chained, config.hbar_c_k_gamma()),
    };
    let rest = config.particle_rest_energy();
    let upper_shift = 3.0 * gap;
    let exact = upper_shift + exact_kinetic_excess(rest + upper_shift, cp);
    let approx = upper_shift + recoil;

    Ok(GapReport {
        e_minus: recoil + gap,
        e_plus: recoil + 3.0 * gap,
        recoil_term: recoil,
        gap_term: gap,
        beta: config.beta(),
        formula_mode: config.formula_mode(),
        convention: config.convention(),
        exact_vs_approx_delta: exact - approx,
        chained_to_literal_ratio: if literal > 0.0 { chained / literal } else { f64::NAN },
        config: config.document(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::make_config;
    use proptest::prelude::*;

    const ME: f64 = 510998.95;

    fn example(mode: FormulaMode) -> LatticeConfig {
        make_config(589.0, 3.13e12, WavenumberConvention::Reciprocal, mode, Species::Electron).unwrap()
    }

    #[test]
    fn energy_conversion() {
        assert_eq!(mass_to_energy(ME, 0.0, EnergyMode::Exact).unwrap(), ME);
        let step = 197.3269804 / 589.0;
        let recoil = mass_to_energy(ME, step, EnergyMode::QuadraticApprox).unwrap() - ME;
        assert!((recoil - 1.10e-7).abs() / 1.10e-7 < 0.01, "{recoil}");
        let exact = mass_to_energy(ME, step, EnergyMode::Exact).unwrap();
        let approx = mass_to_energy(ME, step, EnergyMode::QuadraticApprox).unwrap();
        assert!((exact - approx).abs() < 1e-13 * ME);
        assert!(matches!(mass_to_energy(0.0, 1.0, EnergyMode::Exact), Err(Error::NonPositiveMass(_))));
        assert!(mass_to_energy(-1.0, 1.0, EnergyMode::QuadraticApprox).is_err());
    }

    #[test]
    fn literal_gap_term() {
        let g = gap_term_literal(589.0, 3.13e12).unwrap();
        assert!((g - 0.5).abs() / 0.5 < 0.01, "{g}");
        let g2 = gap_term_literal(589.0, 6.26e12).unwrap();
        assert!((g2 / g - 2.0).abs() < 1e-14);
        let g4 = gap_term_literal(1178.0, 3.13e12).unwrap();
        assert!((g4 / g - 4.0).abs() < 1e-14);
        assert_eq!(gap_term_literal(589.0, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn worked_example() {
        let r = forbidden_band(&example(FormulaMode::Literal)).unwrap();
        assert!((r.recoil_term - 1.10e-7).abs() / 1.10e-7 < 0.01);
        assert!((r.gap_term - 0.5).abs() / 0.5 < 0.01);
        assert!((r.e_minus - 0.5).abs() / 0.5 < 0.01);
        assert!((r.e_plus - 1.5).abs() / 1.5 < 0.01);
        assert!(r.exact_vs_approx_delta.abs() < 1e-9);
    }

    #[test]
    fn chained_example_is_twice_as_wide() {
        let r = forbidden_band(&example(FormulaMode::Chained)).unwrap();
        assert!((r.gap_term - 1.0).abs() < 0.01, "{}", r.gap_term);
        assert!((r.gap_term - 2.0 * r.beta).abs() < 1e-14);
        assert!((r.chained_to_literal_ratio - 2.0).abs() < 1e-10);
    }

    #[test]
    fn zero_intensity_closes_the_gap() {
        for mode in [FormulaMode::Literal, FormulaMode::Chained] {
            let c = make_config(589.0, 0.0, WavenumberConvention::Reciprocal, mode, Species::Electron).unwrap();
            let r = forbidden_band(&c).unwrap();
            assert_eq!(r.e_minus, r.e_plus);
            assert_eq!(r.e_minus, r.recoil_term);
            assert!((r.e_minus - 1.10e-7).abs() / 1.10e-7 < 0.01);
        }
    }

    #[test]
    fn report_json_keys() {
        let json = serde_json::to_value(forbidden_band(&example(FormulaMode::Literal)).unwrap()).unwrap();
        for key in [
            "E_minus_eV",
            "E_plus_eV",
            "recoil_term_eV",
            "gap_term_eV",
            "beta_eV",
            "formula_mode",
            "convention",
            "exact_vs_approx_delta_eV",
            "config",
        ] {
            assert!(json.get(key).is_some(), "{key}");
        }
        assert_eq!(json["formula_mode"], "literal");
        assert_eq!(json["config"]["wavelength_nm"], 589.0);
    }

    proptest! {
        #[test]
        fn width_is_twice_the_gap_term(lambda in 100.0f64..2000.0, intensity in 0.0f64..1e14, chained in any::<bool>()) {
            let mode = if chained { FormulaMode::Chained } else { FormulaMode::Literal };
            let c = make_config(lambda, intensity, WavenumberConvention::Reciprocal, mode, Species::Electron).unwrap();
            let r = forbidden_band(&c).unwrap();
            prop_assert!(r.e_plus >= r.e_minus);
            prop_assert!(((r.e_plus - r.e_minus) - 2.0 * r.gap_term).abs() <= 1e-12 * r.e_plus.max(1e-300));
            if intensity > 0.0 {
                prop_assert!((r.chained_to_literal_ratio - 2.0).abs() < 1e-10);
            }
        }

        #[test]
        fn monotone_in_intensity(lambda in 100.0f64..2000.0, i1 in 0.0f64..1e13, extra in 1.0f64..1e13) {
            let lo = forbidden_band(&LatticeConfig::electron(lambda, i1).unwrap()).unwrap();
            let hi = forbidden_band(&LatticeConfig::electron(lambda, i1 + extra).unwrap()).unwrap();
            prop_assert!(hi.e_plus >= lo.e_plus);
            prop_assert!(hi.e_plus - hi.e_minus >= lo.e_plus - lo.e_minus);
        }
    }
}
