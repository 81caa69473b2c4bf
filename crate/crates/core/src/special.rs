//! Gamma function and closed-form moments of the weakly singular kernel
//! `(t - s)^(-alpha)` against polynomials.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Order `alpha` of the Caputo derivative, restricted to the open interval (0, 1).
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct FractionalOrder(f64);

impl FractionalOrder {
    pub fn new(alpha: f64) -> Result<Self> {
        if alpha > 0.0 && alpha < 1.0 {
            Ok(Self(alpha))
        } else {
            Err(Error::Domain(format!("fractional order must lie in (0, 1), got {alpha}")))
        }
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }
}

impl std::fmt::Display for FractionalOrder {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

fn lanczos(x: f64) -> f64 {
    if x < 0.5 {
        PI / ((PI * x).sin() * lanczos(1.0 - x))
    } else {
        let x = x - 1.0;
        let mut acc = LANCZOS_COEFFS[0];
        for (i, c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
            acc += c / (x + i as f64);
        }
        let t = x + LANCZOS_G + 0.5;
        (2.0 * PI).sqrt() * t.powf(x + 0.5) * (-t).exp() * acc
    }
}

/// Gamma function for positive arguments (Lanczos approximation, g = 7).
pub fn gamma(x: f64) -> Result<f64> {
    if x > 0.0 && x.is_finite() {
        Ok(gamma_pos(x))
    } else {
        Err(Error::Domain(format!("gamma is only evaluated for x > 0, got {x}")))
    }
}

/// `Γ(x)` for arguments already known to be positive.
pub(crate) fn gamma_pos(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    if x.fract() == 0.0 && x <= 20.0 {
        // exact factorials
        return (1..x as u32).map(f64::from).product();
    }
    lanczos(x)
}

/// Largest polynomial power a moment is evaluated for.
pub const MAX_MOMENT_POWER: usize = 6;

const BINOMIAL: [[u32; 7]; 7] = [
    [1, 0, 0, 0, 0, 0, 0],
    [1, 1, 0, 0, 0, 0, 0],
    [1, 2, 1, 0, 0, 0, 0],
    [1, 3, 3, 1, 0, 0, 0],
    [1, 4, 6, 4, 1, 0, 0],
    [1, 5, 10, 10, 5, 1, 0],
    [1, 6, 15, 20, 15, 6, 1],
];

#[inline]
pub(crate) fn binomial(n: usize, k: usize) -> f64 {
    f64::from(BINOMIAL[n][k])
}

/// Description of the integral `∫_a^b (t - s)^(-alpha) (s - c)^q ds`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KernelMoment {
    pub t: f64,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub q: usize,
    pub alpha: FractionalOrder,
}

impl KernelMoment {
    pub fn new(t: f64, a: f64, b: f64, c: f64, q: usize, alpha: FractionalOrder) -> Result<Self> {
        if !(0.0 <= a && a <= b && b <= t) {
            return Err(Error::Domain(format!(
                "kernel moment limits must satisfy 0 <= a <= b <= t, got a = {a}, b = {b}, t = {t}"
            )));
        }
        if q > MAX_MOMENT_POWER {
            return Err(Error::Domain(format!(
                "kernel moment power {q} exceeds {MAX_MOMENT_POWER}"
            )));
        }
        Ok(Self { t, a, b, c, q, alpha })
    }
}

// Beyond this scaled distance from the singularity the moments switch from the
// upward recurrence to the convergent series in 1/D.
const SERIES_DISTANCE: f64 = 2.0;

/// `∫_{-1}^{0} x^i (d - x)^(-alpha) dx` for `d >= 0`.
fn unit_moment(i: usize, d: f64, alpha: f64) -> f64 {
    if d <= SERIES_DISTANCE {
        // Integration by parts gives
        // J_i = ((-1)^i (d + 1)^(1-alpha) + i d J_{i-1}) / (i + 1 - alpha),
        // which amplifies rounding by at most d per step.
        let p = 1.0 - alpha;
        let far = (d + 1.0).powf(p);
        let near = if d == 0.0 { 0.0 } else { d.powf(p) };
        let mut j = (far - near) / p;
        for r in 1..=i {
            let sign = if r % 2 == 0 { 1.0 } else { -1.0 };
            j = (sign * far + r as f64 * d * j) / (r as f64 + p);
        }
        j
    } else {
        // (d - x)^(-alpha) = d^(-alpha) Σ_r (alpha)_r / r! (x / d)^r, |x / d| <= 1/2.
        let mut coeff = 1.0;
        let mut inv_pow = 1.0;
        let mut acc = 0.0;
        for r in 0..400 {
            let sign = if (i + r).is_multiple_of(2) { 1.0 } else { -1.0 };
            let term = coeff * inv_pow * sign / (i + r + 1) as f64;
            acc += term;
            if r > 0 && term.abs() <= 1e-17 * acc.abs() {
                break;
            }
            coeff *= (alpha + r as f64) / (r as f64 + 1.0);
            inv_pow /= d;
        }
        d.powf(-alpha) * acc
    }
}

/// Evaluates `∫_a^b (t - s)^(-alpha) (s - c)^q ds` exactly.
///
/// The interval is mapped onto `[-1, 0]` with its right end at the origin, so the
/// kernel becomes `(D - x)^(-alpha)` with `D = (t - b)/(b - a)`. Intervals touching
/// or near the singularity use an exact recurrence in the power of `x`; distant
/// ones use the hypergeometric series in `1/D`, which has no cancellation.
pub fn kernel_moment(m: &KernelMoment) -> f64 {
    let h = m.b - m.a;
    if h <= 0.0 {
        return 0.0;
    }
    let alpha = m.alpha.value();
    let d = (m.t - m.b) / h;
    let e = (m.b - m.c) / h;
    let mut acc = 0.0;
    for i in 0..=m.q {
        acc += binomial(m.q, i) * e.powi((m.q - i) as i32) * unit_moment(i, d, alpha);
    }
    acc * h.powf(m.q as f64 + 1.0 - alpha)
}
