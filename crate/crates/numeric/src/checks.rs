//! Solution-map and first-integral checks built on scalar trajectories.

use crate::fd;
use crate::problem::{integrate, Equation, OdeProblem, Pairing, PiiConvention, TolSpec, DEFAULT_GRID};
use crate::NumericError;
use num_complex::Complex64 as C;
use serde::Serialize;

pub const WIN_TOL: f64 = 1e-6;
pub const BASE_TOL: f64 = 1e-8;

/// `w'' - w'^2/(2w) - 2w^2 + zw + c^2/(2w)` with `c` from the pairing.
pub fn p34_residual(w: C, dw: C, ddw: C, z: f64, alpha: C, pairing: Pairing) -> C {
    let c = pairing.constant(alpha);
    ddw - dw * dw / (w * 2.0) - w * w * 2.0 + w * z + c * c / (w * 2.0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Winner {
    Only(Pairing),
    /// At alpha = 0 the two constants coincide.
    Both,
}

impl Winner {
    pub fn label(self) -> &'static str {
        match self {
            Winner::Only(Pairing::AlphaMinusHalf) => "(alpha - 1/2)^2",
            Winner::Only(Pairing::AlphaPlusHalf) => "(alpha + 1/2)^2",
            Winner::Both => "both (constants coincide)",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PairingResult {
    pub variable: &'static str,
    pub minus_half: f64,
    pub plus_half: f64,
    pub winner: Winner,
    pub min_abs: f64,
}

impl PairingResult {
    pub fn winning_residual(&self) -> f64 {
        match self.winner {
            Winner::Only(Pairing::AlphaMinusHalf) => self.minus_half,
            Winner::Only(Pairing::AlphaPlusHalf) => self.plus_half,
            Winner::Both => self.minus_half.max(self.plus_half),
        }
    }

    pub fn losing_residual(&self) -> Option<f64> {
        match self.winner {
            Winner::Only(Pairing::AlphaMinusHalf) => Some(self.plus_half),
            Winner::Only(Pairing::AlphaPlusHalf) => Some(self.minus_half),
            Winner::Both => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MapReport {
    pub convention: PiiConvention,
    pub alpha: C,
    pub base_residual: f64,
    /// `p = u^2 + u' + z/2`.
    pub p: PairingResult,
    /// `q = u^2 - u' + z/2`.
    pub q: PairingResult,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MapCheck {
    pub alpha: C,
    pub u0: C,
    pub du0: C,
    pub z0: f64,
    pub z1: f64,
    pub convention: PiiConvention,
    pub grid: f64,
    pub tol: TolSpec,
}

impl MapCheck {
    pub fn new(alpha: C, u0: C, du0: C, z0: f64, z1: f64, convention: PiiConvention) -> Self {
        MapCheck {
            alpha,
            u0,
            du0,
            z0,
            z1,
            convention,
            grid: DEFAULT_GRID,
            tol: TolSpec::default(),
        }
    }
}

/// Finite-difference P34 residuals of `w` for both constants, and the one that vanishes.
pub fn classify(variable: &'static str, w: &[C], z: &[f64], alpha: C) -> Result<PairingResult, NumericError> {
    let h = z[1] - z[0];
    let (mut minus, mut plus) = (0.0f64, 0.0f64);
    let mut min_abs = f64::INFINITY;
    for k in 0..w.len() {
        min_abs = min_abs.min(w[k].norm());
        if w[k].norm() < crate::problem::NEAR_ZERO {
            return Err(NumericError::NearZero { z: z[k] });
        }
        let (Some(dw), Some(ddw)) = (fd::d1(w, k, h), fd::d2(w, k, h)) else {
            continue;
        };
        minus = minus.max(p34_residual(w[k], dw, ddw, z[k], alpha, Pairing::AlphaMinusHalf).norm());
        plus = plus.max(p34_residual(w[k], dw, ddw, z[k], alpha, Pairing::AlphaPlusHalf).norm());
    }
    let winner = match (minus < WIN_TOL, plus < WIN_TOL) {
        (true, true) => Winner::Both,
        (true, false) => Winner::Only(Pairing::AlphaMinusHalf),
        (false, true) => Winner::Only(Pairing::AlphaPlusHalf),
        (false, false) => {
            return Err(NumericError::BothPairingsFail {
                variable,
                minus_half: minus,
                plus_half: plus,
            })
        }
    };
    Ok(PairingResult {
        variable,
        minus_half: minus,
        plus_half: plus,
        winner,
        min_abs,
    })
}

/// Integrates PII, forms p and q from the trajectory and finds which P34
/// constant each one satisfies.
pub fn p34_map_check(c: &MapCheck) -> Result<MapReport, NumericError> {
    let mut prob = OdeProblem::scalar(
        Equation::Pii {
            alpha: c.alpha,
            convention: c.convention,
        },
        c.z0,
        c.z1,
        c.u0,
        c.du0,
    );
    prob.grid = c.grid;
    prob.tol = c.tol;
    let t = integrate(&prob)?;
    let base_residual = t.max_residual();
    if base_residual > BASE_TOL {
        return Err(NumericError::InaccurateBase {
            residual: base_residual,
        });
    }
    let (u, du) = (t.series(0), t.series(1));
    let half = |k: usize| C::new(t.z[k] / 2.0, 0.0);
    let p: Vec<C> = (0..u.len()).map(|k| u[k] * u[k] + du[k] + half(k)).collect();
    let q: Vec<C> = (0..u.len()).map(|k| u[k] * u[k] - du[k] + half(k)).collect();
    Ok(MapReport {
        convention: c.convention,
        alpha: c.alpha,
        base_residual,
        p: classify("p", &p, &t.z, c.alpha)?,
        q: classify("q", &q, &t.z, c.alpha)?,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DriftReport {
    /// `u'' - 2u^3 + zu/3` at the start.
    pub initial: C,
    pub max_drift: f64,
    pub final_z: f64,
    pub residual: f64,
}

pub fn first_integral(u: C, ddu: C, z: f64) -> C {
    ddu - u * u * u * 2.0 + u * (z / 3.0)
}

/// Integrates scalar derivative PII and tracks the first integral.
pub fn dpii_first_integral_check(
    u0: C,
    du0: C,
    ddu0: C,
    z0: f64,
    z1: f64,
    tol: TolSpec,
) -> Result<DriftReport, NumericError> {
    let mut prob = OdeProblem::scalar(Equation::Dpii3, z0, z1, u0, du0);
    prob.ddu0 = Some(vec![ddu0]);
    prob.tol = tol;
    let t = integrate(&prob)?;
    let initial = first_integral(u0, ddu0, z0);
    let max_drift =
        t.z.iter()
            .zip(&t.states)
            .map(|(&z, s)| (first_integral(s[0], s[2], z) - initial).norm())
            .fold(0.0, f64::max);
    Ok(DriftReport {
        initial,
        max_drift,
        final_z: *t.z.last().expect("nonempty"),
        residual: t.max_residual(),
    })
}
