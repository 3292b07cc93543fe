//! Matrix elements of the standing-wave potential between plane waves.
//!
//! The potential `A^μ = (0, A sin(ωt) cos(kz), 0, 0)` has two channels:
//!
//! * the linear term `-(iqħ/M) A^μ ∂_μ`, which only connects states whose
//!   separation is one of the four mixed transfers `(±1, ±1)`, with a strength
//!   proportional to the transverse momentum `cp_x` of the states;
//! * the quadratic term `q²A²/(2M)`, whose Fourier series over one cell has
//!   nine components: `(0,0)`, `(±2,0)`, `(0,±2)` and `(±2,±2)`.
//!
//! All values are `⟨k|V|k + K(t)⟩` in eV.

use num_complex::Complex64;
use serde::Serialize;

use crate::lattice::{LatticeConfig, LatticeTransfer, WaveVector4};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Channel {
    #[serde(rename = "linear_A")]
    LinearA,
    #[serde(rename = "quadratic_A2")]
    QuadraticA2,
}

/// One exponential of the potential's expansion together with its coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FourierComponent {
    pub transfer: LatticeTransfer,
    pub coefficient: Complex64,
    pub channel: Channel,
}

pub const QUADRATIC_TRANSFERS: [LatticeTransfer; 9] = [
    LatticeTransfer::new(0, 0),
    LatticeTransfer::new(2, 0),
    LatticeTransfer::new(-2, 0),
    LatticeTransfer::new(0, 2),
    LatticeTransfer::new(0, -2),
    LatticeTransfer::new(2, 2),
    LatticeTransfer::new(2, -2),
    LatticeTransfer::new(-2, 2),
    LatticeTransfer::new(-2, -2),
];

pub const LINEAR_TRANSFERS: [LatticeTransfer; 4] = [
    LatticeTransfer::new(1, 1),
    LatticeTransfer::new(1, -1),
    LatticeTransfer::new(-1, 1),
    LatticeTransfer::new(-1, -1),
];

/// Quadratic-channel element in eV: `4β × {1, -1/2, +1/2, -1/4}` for the
/// zero, energy-axis, momentum-axis and diagonal transfers.
pub fn quadratic_coupling(t: LatticeTransfer, config: &LatticeConfig) -> f64 {
    let beta = config.beta();
    match (t.n_e.abs(), t.n_p.abs()) {
        (0, 0) => 4.0 * beta,
        (2, 0) => -2.0 * beta,
        (0, 2) => 2.0 * beta,
        (2, 2) => -beta,
        _ => 0.0,
    }
}

/// Linear-channel element in eV: `±i q cp_x (A c) / (4 Mc²)` for the four mixed
/// transfers, signed by the direction of the energy transfer.
pub fn linear_coupling(k: &WaveVector4, t: LatticeTransfer, config: &LatticeConfig) -> Complex64 {
    if t.n_e.abs() != 1 || t.n_p.abs() != 1 {
        return Complex64::new(0.0, 0.0);
    }
    let magnitude =
        config.charge_number() * k.cp_x * config.amplitude_volts() / (4.0 * config.particle_rest_energy());
    Complex64::new(0.0, t.n_e.signum() as f64 * magnitude)
}

/// Sum of both channels; the linear one only when `include_linear`.
pub fn coupling(k: &WaveVector4, t: LatticeTransfer, config: &LatticeConfig, include_linear: bool) -> Complex64 {
    let mut v = Complex64::new(quadratic_coupling(t, config), 0.0);
    if include_linear {
        v += linear_coupling(k, t, config);
    }
    v
}

/// Every exponential of the potential seen from state `k`.
pub fn fourier_inventory(config: &LatticeConfig, include_linear: bool, k: &WaveVector4) -> Vec<FourierComponent> {
    let mut out = Vec::with_capacity(13);
    if include_linear && k.cp_x != 0.0 {
        out.extend(LINEAR_TRANSFERS.iter().map(|&t| FourierComponent {
            transfer: t,
            coefficient: linear_coupling(k, t, config),
            channel: Channel::LinearA,
        }));
    }
    out.extend(QUADRATIC_TRANSFERS.iter().map(|&t| FourierComponent {
        transfer: t,
        coefficient: Complex64::new(quadratic_coupling(t, config), 0.0),
        channel: Channel::QuadraticA2,
    }));
    out
}

/// Whether `t` belongs to the selection list of `channel`.
pub fn in_inventory(channel: Channel, t: LatticeTransfer) -> bool {
    match channel {
        Channel::LinearA => LINEAR_TRANSFERS.contains(&t),
        Channel::QuadraticA2 => QUADRATIC_TRANSFERS.contains(&t),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cfg() -> LatticeConfig {
        LatticeConfig::electron(589.0, 3.13e12).unwrap()
    }

    #[test]
    fn quadratic_values() {
        let c = cfg();
        let b = c.beta();
        assert_eq!(quadratic_coupling(LatticeTransfer::new(0, 0), &c), 4.0 * b);
        assert_eq!(quadratic_coupling(LatticeTransfer::new(0, 2), &c), 2.0 * b);
        assert_eq!(quadratic_coupling(LatticeTransfer::new(0, -2), &c), 2.0 * b);
        assert_eq!(quadratic_coupling(LatticeTransfer::new(2, 0), &c), -2.0 * b);
        assert_eq!(quadratic_coupling(LatticeTransfer::new(2, 2), &c), -b);
        assert_eq!(quadratic_coupling(LatticeTransfer::new(-2, 2), &c), -b);
        assert_eq!(quadratic_coupling(LatticeTransfer::new(1, 0), &c), 0.0);
        assert_eq!(quadratic_coupling(LatticeTransfer::new(4, 0), &c), 0.0);
    }

    #[test]
    fn sum_rule_and_ratios() {
        let c = cfg();
        let z = quadratic_coupling(LatticeTransfer::ZERO, &c);
        let direct = c.amplitude_volts().powi(2) / (8.0 * c.particle_rest_energy());
        assert!((z - direct).abs() / direct < 1e-14);
        let r = |a, b| quadratic_coupling(LatticeTransfer::new(a, b), &c) / z;
        assert_eq!(r(2, 0), -0.5);
        assert_eq!(r(-2, 0), -0.5);
        assert_eq!(r(0, 2), 0.5);
        assert_eq!(r(2, -2), -0.25);
    }

    #[test]
    fn linear_vanishes_without_transverse_momentum() {
        let c = cfg();
        let k = WaveVector4::new(1.0, 0.0, 3.0, 2.0);
        for ne in -3..=3 {
            for np in -3..=3 {
                assert_eq!(linear_coupling(&k, LatticeTransfer::new(ne, np), &c), Complex64::new(0.0, 0.0));
            }
        }
    }

    #[test]
    fn linear_selection() {
        let c = cfg();
        let k = WaveVector4::new(0.0, 1.0, 0.0, 0.0);
        assert_eq!(linear_coupling(&k, LatticeTransfer::new(0, 2), &c).norm(), 0.0);
        assert_eq!(linear_coupling(&k, LatticeTransfer::new(1, 0), &c).norm(), 0.0);
        let up = linear_coupling(&k, LatticeTransfer::new(1, 1), &c);
        let down = linear_coupling(&k, LatticeTransfer::new(-1, 1), &c);
        assert_eq!(up.re, 0.0);
        assert!(up.im != 0.0);
        assert_eq!(down, -up);
        assert_eq!(linear_coupling(&k, LatticeTransfer::new(1, -1), &c), up);
        // electron charge is negative
        assert!(up.im < 0.0);
    }

    #[test]
    fn inventory_counts() {
        let c = cfg();
        let k0 = WaveVector4::longitudinal(1.0, 2.0);
        let quad = fourier_inventory(&c, false, &k0);
        assert_eq!(quad.len(), 9);
        assert_eq!(fourier_inventory(&c, true, &k0), quad);
        let kx = WaveVector4::new(1.0, 0.7, 0.0, 2.0);
        let all = fourier_inventory(&c, true, &kx);
        assert_eq!(all.len(), 13);
        for comp in &all {
            match comp.channel {
                Channel::LinearA => assert_eq!(comp.coefficient.re, 0.0),
                Channel::QuadraticA2 => assert_eq!(comp.coefficient.im, 0.0),
            }
            assert!(in_inventory(comp.channel, comp.transfer));
        }
    }

    proptest! {
        #[test]
        fn hermitian_pairs(e in -5.0f64..5.0, x in -5.0f64..5.0, z in -5.0f64..5.0, ne in -3i32..4, np in -3i32..4) {
            let c = cfg();
            let k = WaveVector4::new(e, x, 0.0, z);
            let t = LatticeTransfer::new(ne, np);
            let forward = coupling(&k, t, &c, true);
            let back = coupling(&k.shifted(t, c.hbar_c_k_gamma()), t.negate(), &c, true);
            prop_assert_eq!(forward, back.conj());
            prop_assert_eq!(quadratic_coupling(t, &c), quadratic_coupling(t.negate(), &c));
        }

        #[test]
        fn amplitude_scaling(scale in 0.1f64..10.0, ne in -2i32..3, np in -2i32..3) {
            let base = cfg();
            let scaled = base.with_intensity(3.13e12 * scale * scale).unwrap();
            let t = LatticeTransfer::new(ne, np);
            let k = WaveVector4::new(0.0, 1.0, 0.0, 0.0);
            let q0 = quadratic_coupling(t, &base);
            if q0 != 0.0 {
                prop_assert!((quadratic_coupling(t, &scaled) / q0 - scale * scale).abs() < 1e-12 * scale * scale);
            }
            let l0 = linear_coupling(&k, t, &base);
            if l0.norm() != 0.0 {
                prop_assert!((linear_coupling(&k, t, &scaled).norm() / l0.norm() - scale).abs() < 1e-12 * scale);
            }
        }
    }
}
