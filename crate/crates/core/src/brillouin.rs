//! Brillouin-zone edges in the `(E, cp_z)` plane.
//!
//! A zone edge is the set of points whose plane-wave label is degenerate in
//! `E² - cp_z²` with a partner a lattice transfer away. Ranks follow the
//! fixed table of the lowest integer transfers rather than a general rule.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{mass_squared_c4, mass_squared_shift, LatticeConfig, LatticeTransfer, WaveVector4};

pub const MAX_RANK: u8 = 5;

/// All transfers bounding the zone of a given rank.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZoneEdgeClass {
    pub rank: u8,
    pub transfers: Vec<LatticeTransfer>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeAxis {
    /// Line of constant energy, `E = level`.
    Energy,
    /// Line of constant momentum, `cp_z = level`.
    Momentum,
}

/// Straight zone edge in the `(E, cp_z)` plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EdgeLine {
    pub axis: EdgeAxis,
    pub level: f64,
}

fn signed_pairs(a: i32, b: i32) -> Vec<LatticeTransfer> {
    let mut out = Vec::new();
    for (x, y) in [(a, b), (b, a)] {
        for sx in [1, -1] {
            for sy in [1, -1] {
                let t = LatticeTransfer::new(sx * x, sy * y);
                if !out.contains(&t) {
                    out.push(t);
                }
            }
        }
    }
    out.sort();
    out
}

/// The edge transfers of zone `rank`, sorted.
pub fn zone_edges(rank: i64) -> Result<ZoneEdgeClass> {
    let (a, b) = match rank {
        1 => (1, 0),
        2 => (1, 1),
        3 => (2, 0),
        4 => (2, 1),
        5 => (2, 2),
        _ => return Err(Error::RankOutOfRange(rank)),
    };
    Ok(ZoneEdgeClass {
        rank: rank as u8,
        transfers: signed_pairs(a, b),
    })
}

/// Rank of the zone whose edge `t` bounds, if any.
pub fn rank_of(t: LatticeTransfer) -> Option<u8> {
    match t.magnitudes() {
        (0, 1) => Some(1),
        (1, 1) => Some(2),
        (0, 2) => Some(3),
        (1, 2) => Some(4),
        (2, 2) => Some(5),
        _ => None,
    }
}

/// Default degeneracy tolerance in eV²: `1e-9 (ħck)²`.
pub fn default_tolerance(config: &LatticeConfig) -> f64 {
    1e-9 * config.hbar_c_k_gamma().powi(2)
}

/// Whether `k` and `k + K(t)` share the same `E² - cp_z²` within `tolerance` (eV²).
pub fn is_degenerate(k: &WaveVector4, t: LatticeTransfer, config: &LatticeConfig, tolerance: f64) -> Result<bool> {
    if !(tolerance > 0.0) {
        return Err(Error::InvalidTolerance(tolerance));
    }
    Ok(mass_squared_shift(k, t, config.hbar_c_k_gamma()).abs() <= tolerance)
}

/// Transfers of rank 1..=`max_rank` that lead from `k` to a degenerate partner.
pub fn degenerate_partners(
    k: &WaveVector4,
    config: &LatticeConfig,
    tolerance: f64,
    max_rank: u8,
) -> Result<Vec<LatticeTransfer>> {
    let mut out = Vec::new();
    for rank in 1..=max_rank.min(MAX_RANK) {
        for t in zone_edges(rank as i64)?.transfers {
            if is_degenerate(k, t, config, tolerance)? {
                out.push(t);
            }
        }
    }
    Ok(out)
}

/// The four edge lines of the third zone: `E = ±ħck` and `cp_z = ±ħck`.
pub fn third_zone_edge_lines(config: &LatticeConfig) -> Vec<EdgeLine> {
    let a = config.hbar_c_k_gamma();
    vec![
        EdgeLine { axis: EdgeAxis::Energy, level: a },
        EdgeLine { axis: EdgeAxis::Energy, level: -a },
        EdgeLine { axis: EdgeAxis::Momentum, level: a },
        EdgeLine { axis: EdgeAxis::Momentum, level: -a },
    ]
}

/// Points where the third-zone edges meet the light cone, as `(E, cp_z)`.
pub fn light_cone_crossings(config: &LatticeConfig) -> Vec<(f64, f64)> {
    let a = config.hbar_c_k_gamma();
    vec![(a, a), (a, -a), (-a, a), (-a, -a)]
}

/// True when `(E, cp_z)` coincides with one of [`light_cone_crossings`].
pub fn is_light_cone_crossing(k: &WaveVector4, config: &LatticeConfig) -> bool {
    let a = config.hbar_c_k_gamma();
    let eps = 1e-9 * a;
    (k.energy.abs() - a).abs() <= eps && (k.cp_z.abs() - a).abs() <= eps && mass_squared_c4(k).abs() <= 2.0 * eps * a
}
