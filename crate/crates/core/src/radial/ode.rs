//! Dormand–Prince 5(4) with adaptive steps, for small fixed-size systems.

use crate::error::RadialError;

const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
const B: [f64; 7] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
    0.0,
];
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

#[derive(Debug, Clone, Copy)]
pub struct Tolerance {
    pub rtol: f64,
    pub atol: f64,
}

/// What the observer wants after an accepted step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Control {
    Continue,
    Stop,
}

/// Integrates `y' = f(x, y)` from `x0` to `x1` (either direction), landing
/// exactly on every point of `stops` (given in integration order) inside the
/// interval. `observe` sees each accepted step and each stop; returning
/// `Stop` ends early.
///
/// Returns the final abscissa and state.
pub fn dopri5<const N: usize, F, O>(
    f: F,
    x0: f64,
    y0: [f64; N],
    x1: f64,
    stops: &[f64],
    tol: Tolerance,
    mut observe: O,
) -> Result<(f64, [f64; N]), RadialError>
where
    F: Fn(f64, &[f64; N]) -> [f64; N],
    O: FnMut(f64, &[f64; N], bool) -> Control,
{
    let dir = (x1 - x0).signum();
    let span = (x1 - x0).abs();
    let mut x = x0;
    let mut y = y0;
    let mut k1 = f(x, &y);
    let mut h = initial_step(&f, x, &y, &k1, dir, tol).min(span);
    let mut stop_iter = stops
        .iter()
        .copied()
        .filter(|s| (s - x0) * dir >= 0.0 && (x1 - s) * dir >= 0.0)
        .peekable();
    while stop_iter.peek().is_some_and(|s| *s == x0) {
        stop_iter.next();
        if observe(x, &y, true) == Control::Stop {
            return Ok((x, y));
        }
    }
    let mut steps = 0usize;
    while (x1 - x) * dir > 0.0 {
        steps += 1;
        if steps > 1_000_000 {
            return Err(RadialError::Integration {
                tau: x,
                reason: "step budget exhausted".into(),
            });
        }
        let target = stop_iter.peek().copied().unwrap_or(x1);
        let mut hit_stop = false;
        let clipped = h >= (target - x).abs();
        let h_free = h;
        if clipped {
            h = (target - x).abs();
            hit_stop = stop_iter.peek().is_some();
        }
        if h < 1e-14 * x.abs().max(1.0) {
            return Err(RadialError::Integration {
                tau: x,
                reason: format!("step size underflow ({h:e})"),
            });
        }
        let mut k = [[0.0; N]; 7];
        k[0] = k1;
        for s in 1..7 {
            let mut ys = y;
            for (i, v) in ys.iter_mut().enumerate() {
                *v += dir * h * (0..s).map(|j| A[s][j] * k[j][i]).sum::<f64>();
            }
            k[s] = f(x + dir * C[s] * h, &ys);
        }
        let mut ynew = y;
        let mut err = 0.0f64;
        for i in 0..N {
            ynew[i] += dir * h * (0..7).map(|j| B[j] * k[j][i]).sum::<f64>();
            let e = h * (0..7).map(|j| E[j] * k[j][i]).sum::<f64>();
            let sc = tol.atol + tol.rtol * y[i].abs().max(ynew[i].abs());
            err = err.max((e / sc).abs());
        }
        if !err.is_finite() || ynew.iter().any(|v| !v.is_finite()) {
            h *= 0.2;
            continue;
        }
        if err <= 1.0 {
            x = if hit_stop { target } else { x + dir * h };
            y = ynew;
            k1 = k[6];
            if hit_stop {
                stop_iter.next();
            }
            if observe(x, &y, hit_stop) == Control::Stop {
                return Ok((x, y));
            }
            while stop_iter.peek().is_some_and(|s| *s == x) {
                stop_iter.next();
                if observe(x, &y, true) == Control::Stop {
                    return Ok((x, y));
                }
            }
        }
        let fac = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
        h = if clipped && err <= 1.0 { h_free.max(h * fac) } else { h * fac };
    }
    Ok((x, y))
}

fn initial_step<const N: usize, F>(
    f: &F,
    x: f64,
    y: &[f64; N],
    k1: &[f64; N],
    dir: f64,
    tol: Tolerance,
) -> f64
where
    F: Fn(f64, &[f64; N]) -> [f64; N],
{
    let sc = |i: usize| tol.atol + tol.rtol * y[i].abs();
    let d0 = (0..N).map(|i| (y[i] / sc(i)).powi(2)).sum::<f64>().sqrt();
    let d1 = (0..N).map(|i| (k1[i] / sc(i)).powi(2)).sum::<f64>().sqrt();
    let h0 = if d0 < 1e-5 || d1 < 1e-5 { 1e-6 } else { 0.01 * d0 / d1 };
    let mut y1 = *y;
    for i in 0..N {
        y1[i] += dir * h0 * k1[i];
    }
    let k2 = f(x + dir * h0, &y1);
    let d2 = (0..N)
        .map(|i| ((k2[i] - k1[i]) / sc(i)).powi(2))
        .sum::<f64>()
        .sqrt()
        / h0;
    let h1 = if d1.max(d2) <= 1e-15 {
        (h0 * 1e-3).max(1e-6)
    } else {
        (0.01 / d1.max(d2)).powf(0.2)
    };
    (100.0 * h0).min(h1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential_and_oscillator() {
        let tol = Tolerance {
            rtol: 1e-10,
            atol: 1e-14,
        };
        let (x, y) = dopri5(|_, y: &[f64; 1]| [y[0]], 0.0, [1.0], 2.0, &[], tol, |_, _, _| Control::Continue).unwrap();
        assert_eq!(x, 2.0);
        assert!((y[0] - 2f64.exp()).abs() < 1e-8);

        let mut seen = Vec::new();
        let stops = [3.0, 2.0, 1.0];
        let (_, y) = dopri5(
            |_, y: &[f64; 2]| [y[1], -y[0]],
            4.0,
            [4f64.sin(), 4f64.cos()],
            0.0,
            &stops,
            tol,
            |x, y, stop| {
                if stop {
                    seen.push((x, y[0]));
                }
                Control::Continue
            },
        )
        .unwrap();
        assert!(y[0].abs() < 1e-8);
        assert_eq!(seen.iter().map(|s| s.0).collect::<Vec<_>>(), vec![3.0, 2.0, 1.0]);
        for (x, v) in seen {
            assert!((v - x.sin()).abs() < 1e-8);
        }
    }
}
