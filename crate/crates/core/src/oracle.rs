//! Brute-force matrix elements by numerical integration over a unit cell.
//!
//! The integrand of `⟨k| V |k'⟩` is sampled on a uniform `(t, z)` grid that
//! spans one full period of the wave in each direction and summed with the
//! trapezoidal rule. The transverse integrals are done analytically: they
//! vanish unless `k` and `k'` share `cp_x` and `cp_y`.
//!
//! Nothing here uses the closed-form coefficients of [`crate::coupling`]; the
//! integrand is built from the vector potential `A^μ(t, z)` and the plane-wave
//! derivative directly:
//!
//! * linear channel: `ψ_k* (iqħ/M) A^μ ∂_μ ψ_k'` with `ψ_k = exp(i k_σ x^σ)`,
//! * quadratic channel: `ψ_k* (q²/2M) |A|² ψ_k'`.
//!
//! Every harmonic in these integrands has order at most 2 on top of the
//! transfer itself, so the rule is exact (up to rounding) once the grid has
//! more points per axis than the largest harmonic.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::coupling::{coupling, in_inventory, linear_coupling, quadratic_coupling, Channel, LINEAR_TRANSFERS, QUADRATIC_TRANSFERS};
use crate::error::{Error, Result};
use crate::lattice::{LatticeConfig, LatticeTransfer, WaveVector4};

/// On-inventory agreement required between quadrature and closed form.
pub const ON_INVENTORY_REL_TOL: f64 = 1e-8;

/// Off-inventory magnitude allowed, relative to `q²A²/(8M)`.
pub const OFF_INVENTORY_REL_TOL: f64 = 1e-10;

/// Largest transfer component drawn by [`selection_rule_scan`].
pub const MAX_SAMPLED_TRANSFER: i32 = 6;

/// Uniform integration grid over one spacetime cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct QuadratureSpec {
    pub points_t: usize,
    pub points_z: usize,
}

impl QuadratureSpec {
    pub const MIN_POINTS: usize = 8;
    pub const DEFAULT_POINTS: usize = 512;

    pub fn new(points_t: usize, points_z: usize) -> Result<Self> {
        for p in [points_t, points_z] {
            if p < Self::MIN_POINTS || p % 2 != 0 {
                return Err(Error::InvalidQuadrature {
                    min: Self::MIN_POINTS,
                    got: p,
                });
            }
        }
        Ok(Self { points_t, points_z })
    }

    pub fn square(points: usize) -> Result<Self> {
        Self::new(points, points)
    }

    /// Temporal period `2π/ω` in seconds.
    pub fn cell_t(&self, config: &LatticeConfig) -> f64 {
        TAU / config.omega_gamma()
    }

    /// Spatial period `2π/k` in metres.
    pub fn cell_z(&self, config: &LatticeConfig) -> f64 {
        TAU / (config.k_gamma() * 1e9)
    }
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            points_t: Self::DEFAULT_POINTS,
            points_z: Self::DEFAULT_POINTS,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ZeroReason {
    /// The potential carries no transverse momentum.
    TransverseMismatch,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadratureValue {
    pub value: Complex64,
    /// Set when the element vanished analytically and nothing was integrated.
    pub zero_reason: Option<ZeroReason>,
}

/// Contravariant `A^μ c` in volts at phase `θ = ωt`, `φ = kz`.
pub fn standing_wave(amplitude_volts: f64, theta: f64, phi: f64) -> [f64; 4] {
    [0.0, amplitude_volts * theta.sin() * phi.cos(), 0.0, 0.0]
}

/// Potential sampled once on the grid, reused for every pair of states.
#[derive(Debug, Clone)]
pub struct QuadratureOracle {
    config: LatticeConfig,
    spec: QuadratureSpec,
    /// `A^μ c` per component, row `i` (time) major.
    components: [Vec<f64>; 4],
    active: [bool; 4],
    /// `Σ_i (A^i c)²` over spatial components.
    squared: Vec<f64>,
}

impl QuadratureOracle {
    pub fn new(config: &LatticeConfig, spec: QuadratureSpec) -> Self {
        let (pt, pz) = (spec.points_t, spec.points_z);
        let mut components: [Vec<f64>; 4] = std::array::from_fn(|_| vec![0.0; pt * pz]);
        let mut squared = vec![0.0; pt * pz];
        let av = config.amplitude_volts();
        for i in 0..pt {
            let theta = TAU * i as f64 / pt as f64;
            for j in 0..pz {
                let phi = TAU * j as f64 / pz as f64;
                let a = standing_wave(av, theta, phi);
                for (mu, v) in a.iter().enumerate() {
                    components[mu][i * pz + j] = *v;
                }
                squared[i * pz + j] = a[1] * a[1] + a[2] * a[2] + a[3] * a[3];
            }
        }
        let active = std::array::from_fn(|mu| components[mu].iter().any(|&v| v != 0.0));
        Self {
            config: *config,
            spec,
            components,
            active,
            squared,
        }
    }

    pub fn spec(&self) -> QuadratureSpec {
        self.spec
    }

    /// Cell average of `grid · exp(i(n_E θ - n_p φ))`.
    fn fourier(&self, grid: &[f64], t: LatticeTransfer) -> Complex64 {
        let (pt, pz) = (self.spec.points_t, self.spec.points_z);
        let phase = |n: i64, idx: usize, p: usize| {
            let m = (n * idx as i64).rem_euclid(p as i64);
            Complex64::from_polar(1.0, TAU * m as f64 / p as f64)
        };
        let w: Vec<Complex64> = (0..pz).map(|j| phase(-(t.n_p as i64), j, pz)).collect();
        let mut total = Complex64::new(0.0, 0.0);
        for i in 0..pt {
            let row = &grid[i * pz..(i + 1) * pz];
            let mut acc = Complex64::new(0.0, 0.0);
            for (g, wj) in row.iter().zip(&w) {
                acc += wj * *g;
            }
            total += phase(t.n_e as i64, i, pt) * acc;
        }
        total / (pt * pz) as f64
    }

    fn transfer_between(&self, k: &WaveVector4, k_prime: &WaveVector4) -> Result<LatticeTransfer> {
        let step = self.config.hbar_c_k_gamma();
        let snap = |d: f64| -> Result<i32> {
            let n = d / step;
            let r = n.round();
            if (n - r).abs() > 1e-9 * r.abs().max(1.0) {
                return Err(Error::NonLatticeTransfer(n));
            }
            Ok(r as i32)
        };
        Ok(LatticeTransfer::new(snap(k_prime.energy - k.energy)?, snap(k_prime.cp_z - k.cp_z)?))
    }

    /// `⟨k| V_channel |k'⟩` in eV.
    pub fn coupling(&self, k: &WaveVector4, k_prime: &WaveVector4, channel: Channel) -> Result<QuadratureValue> {
        if k.cp_x != k_prime.cp_x || k.cp_y != k_prime.cp_y {
            return Ok(QuadratureValue {
                value: Complex64::new(0.0, 0.0),
                zero_reason: Some(ZeroReason::TransverseMismatch),
            });
        }
        let t = self.transfer_between(k, k_prime)?;
        let rest = self.config.particle_rest_energy();
        let z = self.config.charge_number();
        let value = match channel {
            Channel::QuadraticA2 => self.fourier(&self.squared, t) * (z * z / (2.0 * rest)),
            Channel::LinearA => {
                // (iqħ/M) A^μ (i k'_μ) = (q/M)(A·cp' - A⁰E') in energy units
                let weights = [-k_prime.energy, k_prime.cp_x, k_prime.cp_y, k_prime.cp_z];
                let mut acc = Complex64::new(0.0, 0.0);
                for ((grid, &active), &w) in self.components.iter().zip(&self.active).zip(&weights) {
                    if active && w != 0.0 {
                        acc += self.fourier(grid, t) * w;
                    }
                }
                acc * (z / rest)
            }
        };
        Ok(QuadratureValue {
            value,
            zero_reason: None,
        })
    }
}

/// One-off evaluation; prefer [`QuadratureOracle`] for repeated calls.
pub fn quadrature_coupling(
    k: &WaveVector4,
    k_prime: &WaveVector4,
    config: &LatticeConfig,
    channel: Channel,
    spec: QuadratureSpec,
) -> Result<QuadratureValue> {
    QuadratureOracle::new(config, spec).coupling(k, k_prime, channel)
}

/// Closed-form element of one channel.
pub fn closed_form(channel: Channel, k: &WaveVector4, t: LatticeTransfer, config: &LatticeConfig) -> Complex64 {
    match channel {
        Channel::QuadraticA2 => Complex64::new(quadratic_coupling(t, config), 0.0),
        Channel::LinearA => linear_coupling(k, t, config),
    }
}

/// Outcome of comparing quadrature with the closed forms for one channel.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChannelReport {
    pub channel: Channel,
    pub max_on_inventory_rel_err: f64,
    pub max_off_inventory_abs: f64,
    pub points: usize,
    pub seed: u64,
    pub samples: usize,
    pub on_inventory_checks: usize,
    pub off_inventory_checks: usize,
    pub inventory_transfers: Vec<LatticeTransfer>,
    pub on_inventory_tolerance: f64,
    pub off_inventory_tolerance: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub pass: bool,
    pub reports: Vec<ChannelReport>,
}

#[derive(Debug, Clone, Copy)]
struct Check {
    channel: Channel,
    on_inventory: bool,
    /// Relative error on the inventory, magnitude off it.
    error: f64,
}

fn check_pair(oracle: &QuadratureOracle, k: &WaveVector4, t: LatticeTransfer, channel: Channel) -> Result<Check> {
    let config = &oracle.config;
    let kp = k.shifted(t, config.hbar_c_k_gamma());
    let q = oracle.coupling(k, &kp, channel)?.value;
    let on = in_inventory(channel, t);
    let error = if on {
        let c = closed_form(channel, k, t, config);
        let scale = c.norm();
        let diff = (q - c).norm();
        if scale > 0.0 {
            diff / scale
        } else if diff == 0.0 {
            0.0
        } else {
            f64::INFINITY
        }
    } else {
        q.norm()
    };
    Ok(Check {
        channel,
        on_inventory: on,
        error,
    })
}

/// Random states and transfers (seeded), checked channel by channel.
///
/// Every inventory transfer is always included, evaluated on a reference state
/// with `cp_x = 1 eV`; the random samples alternate between inventory and
/// uniformly drawn transfers.
pub fn selection_rule_scan(config: &LatticeConfig, n_random: usize, seed: u64, spec: QuadratureSpec) -> Result<VerifyReport> {
    if n_random == 0 {
        return Err(Error::NoSamples);
    }
    let oracle = QuadratureOracle::new(config, spec);
    let step = config.hbar_c_k_gamma();
    // Keep |n| + 2 below the grid size so sampled transfers cannot alias.
    let reach = MAX_SAMPLED_TRANSFER.min(spec.points_t.min(spec.points_z) as i32 - 3);
    let inventory: Vec<LatticeTransfer> = QUADRATIC_TRANSFERS.iter().chain(&LINEAR_TRANSFERS).copied().collect();

    let reference = WaveVector4::new(0.0, 1.0, 0.0, 0.0);
    let mut jobs: Vec<(WaveVector4, LatticeTransfer)> = inventory.iter().map(|&t| (reference, t)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..n_random {
        let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        let k = WaveVector4::new(
            rng.gen_range(-10.0..10.0) * step,
            sign * rng.gen_range(0.5..2.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-10.0..10.0) * step,
        );
        let t = if i % 2 == 0 {
            inventory[rng.gen_range(0..inventory.len())]
        } else {
            LatticeTransfer::new(rng.gen_range(-reach..=reach), rng.gen_range(-reach..=reach))
        };
        jobs.push((k, t));
    }

    let checks = jobs
        .par_iter()
        .flat_map_iter(|(k, t)| [Channel::QuadraticA2, Channel::LinearA].map(|ch| check_pair(&oracle, k, *t, ch)))
        .collect::<Result<Vec<Check>>>()?;

    let off_tol = OFF_INVENTORY_REL_TOL * config.quadratic_scale();
    let reports: Vec<ChannelReport> = [Channel::QuadraticA2, Channel::LinearA]
        .into_iter()
        .map(|channel| {
            let mine = checks.iter().filter(|c| c.channel == channel);
            let (mut on_max, mut off_max, mut on_n, mut off_n) = (0.0f64, 0.0f64, 0, 0);
            for c in mine {
                if c.on_inventory {
                    on_max = on_max.max(c.error);
                    on_n += 1;
                } else {
                    off_max = off_max.max(c.error);
                    off_n += 1;
                }
            }
            let inventory_transfers = match channel {
                Channel::QuadraticA2 => QUADRATIC_TRANSFERS.to_vec(),
                Channel::LinearA => LINEAR_TRANSFERS.to_vec(),
            };
            ChannelReport {
                channel,
                max_on_inventory_rel_err: on_max,
                max_off_inventory_abs: off_max,
                points: spec.points_t,
                seed,
                samples: n_random,
                on_inventory_checks: on_n,
                off_inventory_checks: off_n,
                inventory_transfers,
                on_inventory_tolerance: ON_INVENTORY_REL_TOL,
                off_inventory_tolerance: off_tol,
                pass: on_max <= ON_INVENTORY_REL_TOL && off_max <= off_tol,
            }
        })
        .collect();
    Ok(VerifyReport {
        pass: reports.iter().all(|r| r.pass),
        reports,
    })
}

/// Total closed-form coupling including both channels; used to cross-check
/// [`QuadratureOracle`] against the Bloch matrix entries.
pub fn total_quadrature(oracle: &QuadratureOracle, k: &WaveVector4, k_prime: &WaveVector4) -> Result<Complex64> {
    Ok(oracle.coupling(k, k_prime, Channel::QuadraticA2)?.value + oracle.coupling(k, k_prime, Channel::LinearA)?.value)
}

/// Closed-form counterpart of [`total_quadrature`].
pub fn total_closed_form(k: &WaveVector4, t: LatticeTransfer, config: &LatticeConfig) -> Complex64 {
    coupling(k, t, config, true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> LatticeConfig {
        LatticeConfig::electron(589.0, 3.13e12).unwrap()
    }

    fn oracle(points: usize) -> QuadratureOracle {
        QuadratureOracle::new(&cfg(), QuadratureSpec::square(points).unwrap())
    }

    #[test]
    fn spec_validation() {
        assert!(QuadratureSpec::square(8).is_ok());
        assert!(QuadratureSpec::square(6).is_err());
        assert!(QuadratureSpec::new(64, 63).is_err());
        let c = cfg();
        let s = QuadratureSpec::default();
        assert!((s.cell_t(&c) * c.omega_gamma() - TAU).abs() < 1e-12);
        assert!((s.cell_z(&c) - TAU * 589e-9).abs() < 1e-18);
    }

    #[test]
    fn zero_transfer_is_the_cell_average() {
        let c = cfg();
        let o = oracle(64);
        let k = WaveVector4::new(1.0, 0.0, 0.0, 2.0);
        let v = o.coupling(&k, &k, Channel::QuadraticA2).unwrap();
        let expected = c.amplitude_volts().powi(2) / (8.0 * c.particle_rest_energy());
        assert!((v.value.re - expected).abs() / expected < 1e-12);
        assert!(v.value.im.abs() < 1e-12 * expected);
        assert_eq!(v.zero_reason, None);
    }

    #[test]
    fn linear_sign_matches_closed_form() {
        let c = cfg();
        let o = oracle(64);
        let k = WaveVector4::new(0.0, 1.0, 0.0, 0.0);
        for t in LINEAR_TRANSFERS {
            let q = o.coupling(&k, &k.shifted(t, c.hbar_c_k_gamma()), Channel::LinearA).unwrap().value;
            let cf = linear_coupling(&k, t, &c);
            assert!((q - cf).norm() / cf.norm() < 1e-12, "{t:?} {q} {cf}");
            assert_eq!(q.im.signum(), cf.im.signum());
        }
    }

    #[test]
    fn off_lattice_and_transverse_mismatch() {
        let o = oracle(16);
        let k = WaveVector4::new(0.0, 1.0, 0.0, 0.0);
        let shifted = WaveVector4 { cp_x: 2.0, ..k };
        let v = o.coupling(&k, &shifted, Channel::LinearA).unwrap();
        assert_eq!(v.zero_reason, Some(ZeroReason::TransverseMismatch));
        assert_eq!(v.value, Complex64::new(0.0, 0.0));
        let half = WaveVector4 { energy: 0.5 * cfg().hbar_c_k_gamma(), ..k };
        assert!(matches!(o.coupling(&k, &half, Channel::QuadraticA2), Err(Error::NonLatticeTransfer(_))));
    }

    #[test]
    fn refinement_is_stable() {
        let c = cfg();
        let coarse = oracle(32);
        let fine = oracle(64);
        let k = WaveVector4::new(0.3, 0.8, 0.1, -0.2);
        for t in QUADRATIC_TRANSFERS.iter().chain(&LINEAR_TRANSFERS) {
            let kp = k.shifted(*t, c.hbar_c_k_gamma());
            for ch in [Channel::QuadraticA2, Channel::LinearA] {
                let a = coarse.coupling(&k, &kp, ch).unwrap().value;
                let b = fine.coupling(&k, &kp, ch).unwrap().value;
                if in_inventory(ch, *t) {
                    assert!((a - b).norm() / b.norm() < 1e-10);
                } else {
                    assert!(a.norm() < 1e-12 && b.norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn oracle_level_hermiticity() {
        let c = cfg();
        let o = oracle(32);
        let k = WaveVector4::new(0.3, -1.2, 0.0, 0.7);
        for ne in -3..=3 {
            for np in -3..=3 {
                let kp = k.shifted(LatticeTransfer::new(ne, np), c.hbar_c_k_gamma());
                let fwd = total_quadrature(&o, &k, &kp).unwrap();
                let back = total_quadrature(&o, &kp, &k).unwrap();
                assert!((fwd - back.conj()).norm() <= 1e-12 * c.quadratic_scale());
                let cf = total_closed_form(&k, LatticeTransfer::new(ne, np), &c);
                assert!((fwd - cf).norm() <= 1e-10 * c.quadratic_scale());
            }
        }
    }

    #[test]
    fn scan_is_reproducible_and_passes() {
        let c = cfg();
        let spec = QuadratureSpec::square(32).unwrap();
        let a = selection_rule_scan(&c, 40, 7, spec).unwrap();
        let b = selection_rule_scan(&c, 40, 7, spec).unwrap();
        assert_eq!(a, b);
        assert!(a.pass, "{a:#?}");
        assert_eq!(a.reports[0].inventory_transfers.len(), 9);
        assert!(selection_rule_scan(&c, 0, 7, spec).is_err());
    }

    #[test]
    fn coarse_grid_still_exact() {
        let report = selection_rule_scan(&cfg(), 200, 1, QuadratureSpec::square(8).unwrap()).unwrap();
        assert!(report.pass, "{report:#?}");
    }
}
