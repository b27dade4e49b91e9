//! Adaptive Gauss–Kronrod (7/15) quadrature.
//!
//! Used as an independent reference for the special functions and for
//! the CDFs behind the distributional checks.

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] =
    [0.129_484_966_168_869_7, 0.279_705_391_489_276_7, 0.381_830_050_505_118_9, 0.417_959_183_673_469_4];

const MAX_DEPTH: u32 = 60;

/// Tolerances for [`integrate`]: a panel is accepted once the Kronrod
/// error estimate is below `max(abs, rel * |panel|)`.
#[derive(Debug, Clone, Copy)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self { abs: 1e-12, rel: 1e-12 }
    }
}

fn kronrod<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = fc * WGK[7];
    let mut g = fc * WG[3];
    for j in 0..7 {
        let dx = h * XGK[j];
        let s = f(c - dx) + f(c + dx);
        k += WGK[j] * s;
        if j % 2 == 1 {
            g += WG[j / 2] * s;
        }
    }
    (k * h, ((k - g) * h).abs())
}

fn adapt<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: Tolerance, depth: u32) -> f64 {
    let (k, err) = kronrod(f, a, b);
    if err <= tol.abs.max(tol.rel * k.abs()) || depth >= MAX_DEPTH || !err.is_finite() {
        return k;
    }
    let m = 0.5 * (a + b);
    let half = Tolerance { abs: 0.5 * tol.abs, rel: tol.rel };
    adapt(f, a, m, half, depth + 1) + adapt(f, m, b, half, depth + 1)
}

/// `∫_a^b f(x) dx` on a finite interval.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: Tolerance) -> f64 {
    if a == b {
        return 0.0;
    }
    adapt(&f, a, b, tol, 0)
}

/// `∫_a^∞ f(x) dx`, mapped onto `[0, 1)` with `x = a + t/(1-t)`.
pub fn integrate_to_inf<F: Fn(f64) -> f64>(f: F, a: f64, tol: Tolerance) -> f64 {
    let g = |t: f64| {
        if t >= 1.0 {
            return 0.0;
        }
        let s = 1.0 - t;
        let v = f(a + t / s) / (s * s);
        if v.is_finite() {
            v
        } else {
            0.0
        }
    };
    adapt(&g, 0.0, 1.0, tol, 0)
}

/// `∫_{-∞}^b f(x) dx`.
pub fn integrate_from_neg_inf<F: Fn(f64) -> f64>(f: F, b: f64, tol: Tolerance) -> f64 {
    integrate_to_inf(|x| f(-x), -b, tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_exact() {
        let v = integrate(|x| x.powi(5) - 3.0 * x, -1.0, 2.0, Tolerance::default());
        assert!((v - (64.0 / 6.0 - 1.0 / 6.0 - 4.5)).abs() < 1e-13);
    }

    #[test]
    fn gaussian_tails() {
        let tol = Tolerance::default();
        let phi = |x: f64| (-0.5 * x * x).exp() / (2.0 * std::f64::consts::PI).sqrt();
        assert!((integrate_to_inf(phi, 0.0, tol) - 0.5).abs() < 1e-12);
        assert!((integrate_from_neg_inf(phi, 0.0, tol) - 0.5).abs() < 1e-12);
        assert!((integrate_to_inf(|x| (-x).exp(), 2.0, tol) - (-2.0f64).exp()).abs() < 1e-13);
    }
}
