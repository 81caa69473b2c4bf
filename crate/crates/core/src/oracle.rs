//! Brute-force reference values: adaptive Gauss-Kronrod quadrature of the
//! Caputo operator in derivative and integrated form, and the power rule.
//!
//! Nothing here touches `kernel_moment` or the monomial expansion of pieces,
//! so agreement with the closed-form path is a genuine cross-check.

use crate::error::{Error, Result};
use crate::interp::{LagrangePiece, PiecewisePolynomial};
use crate::special::{gamma_pos, FractionalOrder};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
// Gauss weights for the odd-indexed Kronrod nodes.
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

const MAX_DEPTH: u32 = 40;
const MAX_INTERVALS: usize = 20_000;
const ROUNDOFF: f64 = 50.0 * f64::EPSILON;

struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    magnitude: f64,
    depth: u32,
}

fn gauss_kronrod<F: Fn(f64) -> f64 + ?Sized>(f: &F, a: f64, b: f64, depth: u32) -> Segment {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    let mut magnitude = WGK[7] * fc.abs();
    for i in 0..7 {
        let dx = half * XGK[i];
        let (lo, hi) = (f(center - dx), f(center + dx));
        kronrod += WGK[i] * (lo + hi);
        magnitude += WGK[i] * (lo.abs() + hi.abs());
        if i % 2 == 1 {
            gauss += WG[i / 2] * (lo + hi);
        }
    }
    Segment {
        a,
        b,
        value: kronrod * half,
        error: ((kronrod - gauss) * half).abs(),
        magnitude: magnitude * half.abs(),
        depth,
    }
}

/// Adaptive G7/K15 quadrature of `f` over `[a, b]`, bisecting the segment with
/// the largest error estimate until the total estimate drops below `tol` (or
/// below the rounding floor of the integrand's magnitude).
///
/// Returns `(value, error_estimate)`.
pub fn integrate_adaptive<F: Fn(f64) -> f64 + ?Sized>(
    f: &F,
    a: f64,
    b: f64,
    tol: f64,
) -> Result<(f64, f64)> {
    if a == b {
        return Ok((0.0, 0.0));
    }
    let mut segments = vec![gauss_kronrod(f, a, b, 0)];
    loop {
        let value: f64 = segments.iter().map(|s| s.value).sum();
        let error: f64 = segments.iter().map(|s| s.error).sum();
        let magnitude: f64 = segments.iter().map(|s| s.magnitude).sum();
        if !value.is_finite() {
            return Err(Error::NonConvergence { estimate: value, error: f64::INFINITY });
        }
        if error <= tol.max(ROUNDOFF * magnitude) {
            return Ok((value, error));
        }
        let excess = |s: &Segment| s.error - ROUNDOFF * s.magnitude;
        let (worst, _) = segments
            .iter()
            .enumerate()
            .max_by(|x, y| excess(x.1).total_cmp(&excess(y.1)))
            .expect("at least one segment");
        if excess(&segments[worst]) <= 0.0 {
            // every segment is already at rounding level
            return Ok((value, error));
        }
        if segments[worst].depth >= MAX_DEPTH || segments.len() >= MAX_INTERVALS {
            return Err(Error::NonConvergence { estimate: value, error });
        }
        let s = segments.swap_remove(worst);
        let mid = 0.5 * (s.a + s.b);
        segments.push(gauss_kronrod(f, s.a, mid, s.depth + 1));
        segments.push(gauss_kronrod(f, mid, s.b, s.depth + 1));
    }
}

// Derivative of the Lagrange form by the product rule, written independently of
// the basis and monomial code in `interp`.
fn piece_derivative(piece: &LagrangePiece, s: f64) -> f64 {
    let nodes = piece.node_times();
    let values = piece.node_values();
    // basis derivatives sum to zero, so shifting the data changes nothing
    let shift = values[values.len() - 1];
    let mut total = 0.0;
    for (l, &tl) in nodes.iter().enumerate() {
        let denom: f64 = nodes.iter().enumerate().filter(|&(i, _)| i != l).map(|(_, &ti)| tl - ti).product();
        let mut numer = 0.0;
        for m in (0..nodes.len()).filter(|&m| m != l) {
            numer += nodes
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != l && i != m)
                .map(|(_, &ti)| s - ti)
                .product::<f64>();
        }
        total += (values[l] - shift) * numer / denom;
    }
    total
}

/// `(1/Γ(1-α)) ∫_0^{t_n} (t_n - s)^(-α) p'(s) ds` by adaptive quadrature of
/// each piece. The piece ending at `t_n` is integrated in `w = (t_n - s)^(1-α)`,
/// which removes the endpoint singularity.
pub fn quad_caputo_piecewise(
    p: &PiecewisePolynomial,
    t_n: f64,
    alpha: FractionalOrder,
    tol: f64,
) -> Result<f64> {
    let al = alpha.value();
    if p.end() < t_n * (1.0 - 1e-12) {
        return Err(Error::Precondition(format!(
            "interpolant ends at {} before t = {t_n}",
            p.end()
        )));
    }
    let g = gamma_pos(1.0 - al);
    let piece_tol = tol * g / p.pieces().len() as f64;
    let mut total = 0.0;
    let mut total_err = 0.0;
    let mut failed = false;
    for piece in p.pieces() {
        let (a, b) = piece.validity_interval();
        if a >= t_n {
            break;
        }
        let outcome = if b >= t_n * (1.0 - 1e-14) {
            let exponent = 1.0 / (1.0 - al);
            let upper = (t_n - a).powf(1.0 - al);
            integrate_adaptive(
                &|w: f64| piece_derivative(piece, t_n - w.powf(exponent)),
                0.0,
                upper,
                piece_tol * (1.0 - al),
            )
            .map(|(v, e)| (v * exponent, e * exponent))
        } else {
            integrate_adaptive(
                &|s: f64| (t_n - s).powf(-al) * piece_derivative(piece, s),
                a,
                b,
                piece_tol,
            )
        };
        match outcome {
            Ok((v, e)) => {
                total += v;
                total_err += e;
            }
            Err(Error::NonConvergence { estimate, error }) => {
                failed = true;
                total += estimate;
                total_err += error;
            }
            Err(other) => return Err(other),
        }
    }
    if failed {
        return Err(Error::NonConvergence { estimate: total / g, error: total_err / g });
    }
    Ok(total / g)
}

// Geometric levels [t - t 2^-j, t - t 2^-(j+1)] clustered at s = t. Deeper
// levels lose digits to the cancellation in u(t) - u(s), so the recursion stops
// a few levels inside the smooth neighbourhood of t and extrapolates the rest.
const MIN_LEVELS: usize = 12;
const MAX_LEVELS: usize = 40;
const TAIL_TERMS: usize = 4;

fn integrate_split<F: Fn(f64) -> f64 + ?Sized>(
    f: &F,
    a: f64,
    b: f64,
    breakpoints: &[f64],
    tol: f64,
) -> Result<(f64, f64)> {
    let mut cuts = vec![a];
    cuts.extend(breakpoints.iter().copied().filter(|&x| x > a && x < b));
    cuts.push(b);
    cuts.sort_by(|x, y| x.total_cmp(y));
    let share = tol / (cuts.len() - 1) as f64;
    let mut value = 0.0;
    let mut error = 0.0;
    for w in cuts.windows(2) {
        let (v, e) = integrate_adaptive(f, w[0], w[1], share)?;
        value += v;
        error += e;
    }
    Ok((value, error))
}

/// Caputo derivative in integrated form,
/// `(u(t) - u(0)) / (Γ(1-α) t^α) + α/Γ(1-α) ∫_0^t (u(t) - u(s)) / (t - s)^(1+α) ds`.
///
/// The integral is summed over geometric levels approaching `s = t`, down to a
/// few levels past the last breakpoint. The remaining tail is extrapolated
/// assuming `u` is smooth just left of `t`, so level contributions behave like
/// `sum_k A_k 2^{-(k-α) j}`.
/// `breakpoints` lists points where `u` is not smooth (kinks, knots).
pub fn quad_caputo_integrated(
    u: &dyn Fn(f64) -> f64,
    t: f64,
    alpha: FractionalOrder,
    tol: f64,
    breakpoints: &[f64],
) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::Precondition(format!("evaluation time must be positive, got {t}")));
    }
    let al = alpha.value();
    let g = gamma_pos(1.0 - al);
    let ut = u(t);
    let regular = (ut - u(0.0)) / (g * t.powf(al));
    let integrand = |s: f64| (ut - u(s)) / (t - s).powf(1.0 + al);

    // last breakpoint strictly left of t bounds the smooth neighbourhood
    let gap = breakpoints
        .iter()
        .filter(|&&b| b < t * (1.0 - 1e-12))
        .map(|&b| t - b)
        .fold(t, f64::min);
    let depth = ((t / gap).log2().ceil().max(0.0) as usize + TAIL_TERMS + 2).clamp(MIN_LEVELS, MAX_LEVELS);

    let scaled_tol = tol * g / al;
    let level_tol = scaled_tol / (4.0 * depth as f64);
    let mut levels: Vec<f64> = Vec::with_capacity(depth);
    for j in 0..depth {
        let lo = t - t * (-(j as f64)).exp2();
        let hi = t - t * (-(j as f64) - 1.0).exp2();
        let (v, _) = integrate_split(&integrand, lo, hi, breakpoints, level_tol).map_err(|err| match err {
            Error::NonConvergence { estimate, error } => Error::NonConvergence {
                estimate: regular + al / g * (levels.iter().sum::<f64>() + estimate),
                error,
            },
            other => other,
        })?;
        levels.push(v);
    }

    let body: f64 = levels.iter().sum();
    let tail = smooth_tail(&levels, al);
    Ok(regular + al / g * (body + tail))
}

// Fits c_j = sum_k B_k rho_k^(j-J), rho_k = 2^-(k-alpha), k = 1..TAIL_TERMS, to
// the last level contributions and sums the geometric remainders.
fn smooth_tail(levels: &[f64], alpha: f64) -> f64 {
    let n = levels.len();
    if n < TAIL_TERMS {
        return 0.0;
    }
    let rho: Vec<f64> = (1..=TAIL_TERMS).map(|k| (-(k as f64 - alpha)).exp2()).collect();
    let mut m = vec![vec![0.0; TAIL_TERMS]; TAIL_TERMS];
    let mut rhs = vec![0.0; TAIL_TERMS];
    for back in 0..TAIL_TERMS {
        for k in 0..TAIL_TERMS {
            m[back][k] = rho[k].powi(-(back as i32));
        }
        rhs[back] = levels[n - 1 - back];
    }
    let coeffs = solve(m, rhs);
    (0..TAIL_TERMS).map(|k| coeffs[k] * rho[k] / (1.0 - rho[k])).sum()
}

// Gaussian elimination with partial pivoting on a small dense system.
#[allow(clippy::needless_range_loop)]
fn solve(mut m: Vec<Vec<f64>>, mut r: Vec<f64>) -> Vec<f64> {
    let n = r.len();
    for col in 0..n {
        let pivot = (col..n).max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs())).unwrap();
        m.swap(col, pivot);
        r.swap(col, pivot);
        for row in col + 1..n {
            let factor = m[row][col] / m[col][col];
            for k in col..n {
                m[row][k] -= factor * m[col][k];
            }
            r[row] -= factor * r[col];
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let mut acc = r[row];
        for k in row + 1..n {
            acc -= m[row][k] * x[k];
        }
        x[row] = acc / m[row][row];
    }
    x
}

/// Power rule `D^α t^p = Γ(p+1)/Γ(p+1-α) t^(p-α)`; zero for `p = 0`.
pub fn exact_caputo_monomial(p: u32, t: f64, alpha: FractionalOrder) -> f64 {
    if p == 0 {
        return 0.0;
    }
    let p = f64::from(p);
    let al = alpha.value();
    gamma_pos(p + 1.0) / gamma_pos(p + 1.0 - al) * t.powf(p - al)
}
