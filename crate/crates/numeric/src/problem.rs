//! Right-hand sides, problem validation and trajectories with independent
//! finite-difference residuals.

use crate::dp45::{integrate_grid, Tolerances};
use crate::fd;
use crate::NumericError;
use num_complex::Complex64 as C;
use serde::{Deserialize, Serialize};

pub const POLE_THRESHOLD: f64 = 1e8;
pub const NEAR_ZERO: f64 = 1e-8;
pub const DEFAULT_GRID: f64 = 0.01;

/// Sign of the `zu` term in PII.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PiiConvention {
    /// `u'' = 2u^3 - zu + alpha`.
    #[default]
    Printed,
    /// `u'' = 2u^3 + zu + alpha`, the orientation the Flaschka-Newell pair produces.
    LaxPair,
}

impl PiiConvention {
    fn sign(self) -> f64 {
        match self {
            PiiConvention::Printed => -1.0,
            PiiConvention::LaxPair => 1.0,
        }
    }
}

/// Which constant `(alpha - 1/2)` or `(alpha + 1/2)` enters a P34 equation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Pairing {
    AlphaMinusHalf,
    AlphaPlusHalf,
}

impl Pairing {
    pub fn constant(self, alpha: C) -> C {
        match self {
            Pairing::AlphaMinusHalf => alpha - 0.5,
            Pairing::AlphaPlusHalf => alpha + 0.5,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Equation {
    /// Scalar or N×N PII; at N > 1 `zu` is `z·u` for central z and alpha multiplies the identity.
    Pii { alpha: C, convention: PiiConvention },
    /// `q'' = q'^2/(2q) + 2q^2 - zq - c^2/(2q)` with `c` fixed by the pairing.
    P34 { alpha: C, pairing: Pairing },
    /// Derivative matrix PII `u''' = 3u''u - 3uu'' + 6uu'u - u/3 - zu'/3`.
    Dpii3,
}

impl Equation {
    pub fn order(&self) -> usize {
        match self {
            Equation::Dpii3 => 3,
            _ => 2,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Equation::Pii { .. } => "pii",
            Equation::P34 { .. } => "p34",
            Equation::Dpii3 => "dpii3",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OdeProblem {
    pub equation: Equation,
    /// Matrix size.
    pub n: usize,
    pub z0: f64,
    pub z1: f64,
    /// Row-major N×N initial values.
    pub u0: Vec<C>,
    pub du0: Vec<C>,
    pub ddu0: Option<Vec<C>>,
    /// Requested report-grid spacing; adjusted down to divide the span.
    pub grid: f64,
    pub tol: TolSpec,
    /// Known singular points the span must avoid.
    pub poles: Vec<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TolSpec {
    pub rtol: f64,
    pub atol: f64,
}

impl Default for TolSpec {
    fn default() -> Self {
        let t = Tolerances::default();
        TolSpec {
            rtol: t.rtol,
            atol: t.atol,
        }
    }
}

impl OdeProblem {
    pub fn scalar(equation: Equation, z0: f64, z1: f64, u0: C, du0: C) -> Self {
        OdeProblem {
            equation,
            n: 1,
            z0,
            z1,
            u0: vec![u0],
            du0: vec![du0],
            ddu0: None,
            grid: DEFAULT_GRID,
            tol: TolSpec::default(),
            poles: Vec::new(),
        }
    }

    pub fn validate(&self) -> Result<(), NumericError> {
        let bad = |s: String| Err(NumericError::InvalidProblem(s));
        if self.n == 0 {
            return bad("matrix size must be at least 1".into());
        }
        let m = self.n * self.n;
        if self.u0.len() != m || self.du0.len() != m {
            return bad(format!("initial values need {m} entries"));
        }
        match (&self.equation, &self.ddu0) {
            (Equation::Dpii3, Some(d)) if d.len() == m => {}
            (Equation::Dpii3, _) => return bad(format!("dpii3 needs u'' with {m} entries")),
            (_, Some(_)) => return bad("u'' is only used by dpii3".into()),
            _ => {}
        }
        if matches!(self.equation, Equation::P34 { .. }) {
            if self.n != 1 {
                return bad("p34 is scalar".into());
            }
            if self.u0[0].norm() < NEAR_ZERO {
                return Err(NumericError::NearZero { z: self.z0 });
            }
        }
        if !(self.z0.is_finite() && self.z1.is_finite()) || self.z0 == self.z1 {
            return bad("span must be finite and nonempty".into());
        }
        if !(self.grid > 0.0 && self.grid.is_finite()) {
            return bad("grid spacing must be positive".into());
        }
        if !(self.tol.rtol > 0.0 && self.tol.atol > 0.0) {
            return bad("tolerances must be positive".into());
        }
        let (lo, hi) = (self.z0.min(self.z1), self.z0.max(self.z1));
        if let Some(&p) = self.poles.iter().find(|&&p| p >= lo && p <= hi) {
            return Err(NumericError::SpanContainsPole { pole: p });
        }
        Ok(())
    }

    pub fn grid_points(&self) -> Vec<f64> {
        let span = self.z1 - self.z0;
        let steps = ((span.abs() / self.grid) - 1e-9).ceil().max(1.0) as usize;
        (0..=steps)
            .map(|k| {
                if k == steps {
                    self.z1
                } else {
                    self.z0 + span * k as f64 / steps as f64
                }
            })
            .collect()
    }

    fn initial_state(&self) -> Vec<C> {
        let mut y = self.u0.clone();
        y.extend_from_slice(&self.du0);
        if let Some(d) = &self.ddu0 {
            y.extend_from_slice(d);
        }
        y
    }
}

pub(crate) fn matmul(a: &[C], b: &[C], n: usize) -> Vec<C> {
    let mut out = vec![C::new(0.0, 0.0); n * n];
    for i in 0..n {
        for j in 0..n {
            let mut acc = C::new(0.0, 0.0);
            for k in 0..n {
                acc += a[i * n + k] * b[k * n + j];
            }
            out[i * n + j] = acc;
        }
    }
    out
}

fn diag(n: usize, i: usize, j: usize) -> f64 {
    if i == j && i < n {
        1.0
    } else {
        0.0
    }
}

/// Highest derivative demanded by the equation, from the lower ones.
pub fn highest(eq: &Equation, n: usize, z: f64, d: &[&[C]]) -> Vec<C> {
    let m = n * n;
    match *eq {
        Equation::Pii { alpha, convention } => {
            let u = d[0];
            let uuu = matmul(&matmul(u, u, n), u, n);
            (0..m)
                .map(|k| uuu[k] * 2.0 + u[k] * (convention.sign() * z) + alpha * diag(n, k / n, k % n))
                .collect()
        }
        Equation::P34 { alpha, pairing } => {
            let (q, dq) = (d[0][0], d[1][0]);
            let c = pairing.constant(alpha);
            vec![dq * dq / (q * 2.0) + q * q * 2.0 - q * z - c * c / (q * 2.0)]
        }
        Equation::Dpii3 => {
            let (u, du, ddu) = (d[0], d[1], d[2]);
            let a = matmul(ddu, u, n);
            let b = matmul(u, ddu, n);
            let c = matmul(&matmul(u, du, n), u, n);
            (0..m)
                .map(|k| a[k] * 3.0 - b[k] * 3.0 + c[k] * 6.0 - u[k] / 3.0 - du[k] * (z / 3.0))
                .collect()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Trajectory {
    pub equation: Equation,
    pub n: usize,
    pub order: usize,
    pub z: Vec<f64>,
    /// Per sample: u, u', (u'') entries, each row-major.
    pub states: Vec<Vec<C>>,
    /// Max-entry finite-difference residual; `None` near the ends.
    pub residual: Vec<Option<f64>>,
    pub local_error: Vec<f64>,
    pub accepted_steps: usize,
    pub rejected_steps: usize,
}

impl Trajectory {
    pub fn u(&self, k: usize) -> &[C] {
        &self.states[k][..self.n * self.n]
    }

    /// Values of one derivative-order/entry slot along the grid.
    pub fn series(&self, slot: usize) -> Vec<C> {
        self.states.iter().map(|s| s[slot]).collect()
    }

    pub fn spacing(&self) -> f64 {
        self.z[1] - self.z[0]
    }

    pub fn max_residual(&self) -> f64 {
        self.residual.iter().flatten().fold(0.0, |a, &b| a.max(b))
    }

    pub fn last(&self) -> &[C] {
        self.states.last().expect("nonempty")
    }
}

/// Residual of `eq` at every grid point from finite differences of the stored u.
pub fn residuals(eq: &Equation, n: usize, z: &[f64], states: &[Vec<C>]) -> Vec<Option<f64>> {
    let m = n * n;
    let h = z[1] - z[0];
    let series: Vec<Vec<C>> = (0..m).map(|e| states.iter().map(|s| s[e]).collect()).collect();
    (0..z.len())
        .map(|k| {
            let mut derivs: Vec<Vec<C>> = vec![series.iter().map(|s| s[k]).collect()];
            for order in 1..=eq.order() {
                let col: Option<Vec<C>> = series
                    .iter()
                    .map(|s| match order {
                        1 => fd::d1(s, k, h),
                        2 => fd::d2(s, k, h),
                        _ => fd::d3(s, k, h),
                    })
                    .collect();
                derivs.push(col?);
            }
            let lower: Vec<&[C]> = derivs[..eq.order()].iter().map(Vec::as_slice).collect();
            let want = highest(eq, n, z[k], &lower);
            let got = &derivs[eq.order()];
            Some(got.iter().zip(&want).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max))
        })
        .collect()
}

pub fn integrate(prob: &OdeProblem) -> Result<Trajectory, NumericError> {
    prob.validate()?;
    let n = prob.n;
    let m = n * n;
    let order = prob.equation.order();
    let eq = prob.equation;
    let grid = prob.grid_points();
    let rhs = |z: f64, y: &[C], dy: &mut [C]| {
        dy[..(order - 1) * m].copy_from_slice(&y[m..order * m]);
        let parts: Vec<&[C]> = (0..order).map(|o| &y[o * m..(o + 1) * m]).collect();
        let top = highest(&eq, n, z, &parts);
        if top.iter().any(|v| !v.is_finite()) {
            return Err(NumericError::NonFinite { z });
        }
        dy[(order - 1) * m..].copy_from_slice(&top);
        Ok(())
    };
    let check = |z: f64, y: &[C]| {
        let big = y[..m].iter().fold(0.0f64, |a, v| a.max(v.norm()));
        if big > POLE_THRESHOLD {
            return Err(NumericError::Blowup { z, magnitude: big });
        }
        if matches!(eq, Equation::P34 { .. }) && y[0].norm() < NEAR_ZERO {
            return Err(NumericError::NearZero { z });
        }
        Ok(())
    };
    let tol = Tolerances {
        rtol: prob.tol.rtol,
        atol: prob.tol.atol,
    };
    let sol = integrate_grid(rhs, check, &grid, &prob.initial_state(), tol)?;
    let residual = residuals(&eq, n, &grid, &sol.states);
    Ok(Trajectory {
        equation: eq,
        n,
        order,
        z: grid,
        states: sol.states,
        residual,
        local_error: sol.local_error,
        accepted_steps: sol.accepted,
        rejected_steps: sol.rejected,
    })
}
