//! Adaptive Gauss-Kronrod (7/15) quadrature, used as an independent oracle
//! for the closed-form moments.

#![allow(dead_code)]

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
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn kronrod<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let x = half * XGK[j];
        let pair = f(center - x) + f(center + x);
        kron += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    (kron * half, ((kron - gauss) * half).abs())
}

fn adapt<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64, depth: u32) -> f64 {
    let (value, err) = kronrod(f, a, b);
    if err <= tol.max(value.abs() * 1e-15) || depth == 0 {
        return value;
    }
    let m = 0.5 * (a + b);
    adapt(f, a, m, 0.5 * tol, depth - 1) + adapt(f, m, b, 0.5 * tol, depth - 1)
}

/// Integral of `f` over `[a, b]` to roughly `rel` relative accuracy.
/// `b` may be infinite; the tail is mapped onto `(0, 1]` by `x = a / t`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, rel: f64) -> f64 {
    if b.is_infinite() {
        let g = |t: f64| {
            if t == 0.0 {
                0.0
            } else {
                f(a / t) * a / (t * t)
            }
        };
        let rough = kronrod(&g, 0.0, 1.0).0.abs();
        return adapt(&g, 0.0, 1.0, rel * rough, 60);
    }
    let rough = kronrod(&f, a, b).0.abs();
    adapt(&f, a, b, rel * rough, 60)
}

/// Moments of `k^-alpha` on `[k_min, k_max]` by quadrature alone:
/// `(C, <k>, <k^2>, variance)`.
pub fn moments(alpha: f64, k_min: f64, k_max: f64) -> (f64, f64, f64, f64) {
    let rel = 1e-13;
    let c = 1.0 / integrate(|k| k.powf(-alpha), k_min, k_max, rel);
    let m1 = c * integrate(|k| k.powf(1.0 - alpha), k_min, k_max, rel);
    let m2 = c * integrate(|k| k.powf(2.0 - alpha), k_min, k_max, rel);
    (c, m1, m2, m2 - m1 * m1)
}
