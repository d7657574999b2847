//! Central finite differences on a uniform grid; `None` where the stencil
//! leaves the grid.

use num_complex::Complex64 as C;

fn window<const W: usize>(u: &[C], k: usize) -> Option<[C; W]> {
    let half = W / 2;
    if k < half || k + half >= u.len() {
        return None;
    }
    let mut out = [C::new(0.0, 0.0); W];
    out.copy_from_slice(&u[k - half..=k + half]);
    Some(out)
}

/// Fourth-order first derivative.
pub fn d1(u: &[C], k: usize, h: f64) -> Option<C> {
    let [a, b, _, d, e] = window::<5>(u, k)?;
    Some((a - b * 8.0 + d * 8.0 - e) / (12.0 * h))
}

/// Fourth-order second derivative.
pub fn d2(u: &[C], k: usize, h: f64) -> Option<C> {
    let [a, b, c, d, e] = window::<5>(u, k)?;
    Some((-a + b * 16.0 - c * 30.0 + d * 16.0 - e) / (12.0 * h * h))
}

/// Fourth-order third derivative.
pub fn d3(u: &[C], k: usize, h: f64) -> Option<C> {
    let [a, b, c, _, e, f, g] = window::<7>(u, k)?;
    Some((a - b * 8.0 + c * 13.0 - e * 13.0 + f * 8.0 - g) / (8.0 * h * h * h))
}
