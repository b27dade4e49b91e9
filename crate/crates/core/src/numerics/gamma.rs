//! Complete gamma function.

use std::f64::consts::PI;

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Taylor coefficients of `1/Γ(z) = Σ c_k z^k`, k = 1..26.
const RECIP_GAMMA_SERIES: [f64; 26] = [
    1.0,
    0.577_215_664_901_532_9,
    -0.655_878_071_520_253_8,
    -0.042_002_635_034_095_2,
    0.166_538_611_382_291_5,
    -0.042_197_734_555_544_3,
    -0.009_621_971_527_877_0,
    0.007_218_943_246_663_0,
    -0.001_165_167_591_859_1,
    -0.000_215_241_674_114_9,
    0.000_128_050_282_388_2,
    -0.000_020_134_854_780_7,
    -0.000_001_250_493_482_1,
    0.000_001_133_027_232_0,
    -0.000_000_205_633_841_7,
    0.000_000_006_116_095_0,
    0.000_000_005_002_007_5,
    -0.000_000_001_181_274_6,
    0.000_000_000_104_342_7,
    0.000_000_000_007_782_3,
    -0.000_000_000_003_696_8,
    0.000_000_000_000_510_0,
    -0.000_000_000_000_020_6,
    -0.000_000_000_000_005_4,
    0.000_000_000_000_001_4,
    0.000_000_000_000_000_1,
];

/// `ln Γ(x)` for `x > 0`.
pub fn ln_gamma(x: f64) -> f64 {
    if x < 0.5 {
        // reflection: Γ(x)Γ(1-x) = π / sin(πx)
        return (PI / (PI * x).sin()).ln() - ln_gamma(1.0 - x);
    }
    let x = x - 1.0;
    let mut acc = LANCZOS_COEFFS[0];
    let t = x + LANCZOS_G + 0.5;
    for (i, c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    0.5 * (2.0 * PI).ln() + (x + 0.5) * t.ln() - t + acc.ln()
}

/// `Γ(x)` for `x > 0`.
pub fn gamma(x: f64) -> f64 {
    if x == x.floor() && x > 0.0 && x <= 21.0 {
        // exact factorials keep integer arguments bit-stable
        return (1..x as u64).map(|k| k as f64).product();
    }
    ln_gamma(x).exp()
}

/// `1/Γ(1+x)` for `|x| ≤ 1/2`, evaluated from its power series so that
/// the even and odd parts can be separated without cancellation.
pub(crate) fn recip_gamma_1p_parts(x: f64) -> (f64, f64) {
    // 1/Γ(1+x) = Σ_{j≥0} d_j x^j with d_j = c_{j+1}
    // even(x) = Σ d_{2i} x^{2i}, odd_over_x(x) = Σ d_{2i+1} x^{2i}
    let x2 = x * x;
    let mut even = 0.0;
    let mut odd = 0.0;
    for i in (0..13).rev() {
        even = even * x2 + RECIP_GAMMA_SERIES[2 * i];
        odd = odd * x2 + RECIP_GAMMA_SERIES[2 * i + 1];
    }
    (even, odd)
}
