/// Power series of `J_n(x)` for small integer order; accurate for the
/// moderate arguments needed here (|x| up to ~10).
fn bessel_series(n: u32, x: f64) -> f64 {
    let half = 0.5 * x;
    let mut term = half.powi(n as i32) / (1..=n).map(f64::from).product::<f64>();
    let mut sum = term;
    let q = -half * half;
    for m in 1..200u32 {
        term *= q / (f64::from(m) * f64::from(m + n));
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() {
            break;
        }
    }
    sum
}

pub fn bessel_j0(x: f64) -> f64 {
    bessel_series(0, x)
}

pub fn bessel_j1(x: f64) -> f64 {
    bessel_series(1, x)
}

/// Constants of the coupling model for the fundamental cylindrical mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelConstants {
    /// First positive zero of `J0`.
    pub lambda01: f64,
    /// `2 / (3 pi J1(lambda01)^2)`.
    pub alpha: f64,
}

impl ModelConstants {
    pub fn compute() -> Self {
        // Newton on J0 with J0' = -J1.
        let mut x = 2.4;
        for _ in 0..50 {
            let step = bessel_j0(x) / bessel_j1(x);
            x += step;
            if step.abs() < 1e-16 * x {
                break;
            }
        }
        let j1 = bessel_j1(x);
        ModelConstants {
            lambda01: x,
            alpha: 2.0 / (3.0 * std::f64::consts::PI * j1 * j1),
        }
    }
}

impl Default for ModelConstants {
    fn default() -> Self {
        Self::compute()
    }
}
