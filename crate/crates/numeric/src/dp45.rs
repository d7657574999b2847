//! Dormand–Prince 5(4) with steps clipped so every grid point is hit exactly.

use crate::NumericError;
use num_complex::Complex64 as C;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    pub rtol: f64,
    pub atol: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            rtol: 1e-10,
            atol: 1e-12,
        }
    }
}

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

const MAX_STEPS: usize = 2_000_000;

/// States at every grid point plus, per point, the largest local error
/// estimate among the steps that reached it.
#[derive(Debug)]
pub struct GridSolution {
    pub states: Vec<Vec<C>>,
    pub local_error: Vec<f64>,
    pub accepted: usize,
    pub rejected: usize,
}

fn combine(y: &[C], h: f64, terms: &[(f64, &[C])], out: &mut [C]) {
    for i in 0..y.len() {
        let mut acc = C::new(0.0, 0.0);
        for (w, k) in terms {
            if *w != 0.0 {
                acc += k[i] * *w;
            }
        }
        out[i] = y[i] + acc * h;
    }
}

/// Integrates `y' = f(z, y)` from `grid[0]` through the remaining grid points
/// (increasing or decreasing). `check` vets every accepted state.
pub fn integrate_grid<F, G>(
    mut f: F,
    check: G,
    grid: &[f64],
    y0: &[C],
    tol: Tolerances,
) -> Result<GridSolution, NumericError>
where
    F: FnMut(f64, &[C], &mut [C]) -> Result<(), NumericError>,
    G: Fn(f64, &[C]) -> Result<(), NumericError>,
{
    let n = y0.len();
    let mut states = vec![y0.to_vec()];
    let mut local_error = vec![0.0];
    if grid.len() < 2 {
        return Ok(GridSolution {
            states,
            local_error,
            accepted: 0,
            rejected: 0,
        });
    }
    let dir = (grid[grid.len() - 1] - grid[0]).signum();
    let mut z = grid[0];
    let mut y = y0.to_vec();
    let mut h = dir * (grid[1] - grid[0]).abs().min(1e-3);
    let (mut accepted, mut rejected) = (0usize, 0usize);

    let mut k: Vec<Vec<C>> = vec![vec![C::new(0.0, 0.0); n]; 7];
    let mut tmp = vec![C::new(0.0, 0.0); n];
    let mut y5 = vec![C::new(0.0, 0.0); n];
    f(z, &y, &mut k[0])?;

    for &target in &grid[1..] {
        let mut worst = 0.0f64;
        while (target - z) * dir > 0.0 {
            if accepted + rejected > MAX_STEPS {
                return Err(NumericError::StepUnderflow { z });
            }
            let remaining = target - z;
            let landing = h.abs() >= remaining.abs() * (1.0 - 1e-12);
            let step = if landing { remaining } else { h };
            if step.abs() < 1e-13 * z.abs().max(1.0) {
                return Err(NumericError::StepUnderflow { z });
            }

            {
                let (k0, rest) = k.split_at_mut(1);
                combine(&y, step, &[(A21, &k0[0])], &mut tmp);
                f(z + C2 * step, &tmp, &mut rest[0])?;
            }
            combine(&y, step, &[(A31, &k[0]), (A32, &k[1])], &mut tmp);
            f(z + C3 * step, &tmp, &mut k[2])?;
            combine(&y, step, &[(A41, &k[0]), (A42, &k[1]), (A43, &k[2])], &mut tmp);
            f(z + C4 * step, &tmp, &mut k[3])?;
            combine(
                &y,
                step,
                &[(A51, &k[0]), (A52, &k[1]), (A53, &k[2]), (A54, &k[3])],
                &mut tmp,
            );
            f(z + C5 * step, &tmp, &mut k[4])?;
            combine(
                &y,
                step,
                &[(A61, &k[0]), (A62, &k[1]), (A63, &k[2]), (A64, &k[3]), (A65, &k[4])],
                &mut tmp,
            );
            f(z + step, &tmp, &mut k[5])?;
            combine(
                &y,
                step,
                &[(B1, &k[0]), (B3, &k[2]), (B4, &k[3]), (B5, &k[4]), (B6, &k[5])],
                &mut y5,
            );
            f(z + step, &y5, &mut k[6])?;

            let mut sum = 0.0;
            let mut max_abs = 0.0f64;
            for i in 0..n {
                let e =
                    (k[0][i] * E1 + k[2][i] * E3 + k[3][i] * E4 + k[4][i] * E5 + k[5][i] * E6 + k[6][i] * E7) * step;
                let scale = tol.atol + tol.rtol * y[i].norm().max(y5[i].norm());
                sum += (e.norm() / scale).powi(2);
                max_abs = max_abs.max(e.norm());
            }
            let err = (sum / n as f64).sqrt();
            if !err.is_finite() {
                return Err(NumericError::NonFinite { z });
            }

            if err <= 1.0 {
                accepted += 1;
                z = if landing { target } else { z + step };
                std::mem::swap(&mut y, &mut y5);
                k.swap(0, 6);
                check(z, &y)?;
                worst = worst.max(max_abs);
                let grow = if err == 0.0 {
                    5.0
                } else {
                    (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
                };
                h = if landing && step.abs() < h.abs() {
                    h
                } else {
                    step * grow
                };
            } else {
                rejected += 1;
                h = step * (0.9 * err.powf(-0.2)).clamp(0.1, 0.9);
            }
        }
        states.push(y.clone());
        local_error.push(worst);
    }
    Ok(GridSolution {
        states,
        local_error,
        accepted,
        rejected,
    })
}
