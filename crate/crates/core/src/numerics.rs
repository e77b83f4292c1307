//! Small numerical helpers shared by the distribution code and the tests.

/// `ln(1 + w) - w`, accurate for small `w` where the direct form cancels.
pub fn ln1p_minus(w: f64) -> f64 {
    if w.abs() >= 0.1 {
        return w.ln_1p() - w;
    }
    // -w^2/2 + w^3/3 - w^4/4 + ...
    let mut sum = 0.0;
    let mut power = w * w;
    let mut sign = -1.0;
    for k in 2..60 {
        let term = sign * power / k as f64;
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() {
            break;
        }
        power *= w;
        sign = -sign;
    }
    sum
}

/// Adaptive Simpson quadrature of `f` over `[a, b]`.
///
/// `tol` is an absolute error target for the whole interval; recursion stops
/// at `max_depth` regardless.
pub fn adaptive_simpson<F>(f: F, a: f64, b: f64, tol: f64, max_depth: u32) -> f64
where
    F: Fn(f64) -> f64,
{
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = simpson(a, b, fa, fm, fb);
    simpson_step(&f, a, b, fa, fm, fb, whole, tol, max_depth)
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn simpson_step<F>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64
where
    F: Fn(f64) -> f64,
{
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
        + simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
}
