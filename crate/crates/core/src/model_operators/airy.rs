//! The Airy function Ai on the real line and the zeros of Ai.
//!
//! Maclaurin series on a central window, asymptotic expansions outside it.

use std::f64::consts::PI;

/// Ai(0)
const AI0: f64 = 0.355_028_053_887_817_2;
/// -Ai'(0)
const AIP0: f64 = 0.258_819_403_792_806_8;

/// Series window. The oscillatory side goes further out because the
/// asymptotic expansion there is only accurate to about exp(-2ζ).
const SERIES_NEG: f64 = 8.0;
const SERIES_POS: f64 = 5.0;

/// Ai(x) and Ai'(x).
pub fn airy_ai(x: f64) -> (f64, f64) {
    if x < -SERIES_NEG {
        asymptotic_negative(-x)
    } else if x > SERIES_POS {
        asymptotic_positive(x)
    } else {
        series(x)
    }
}

fn series(x: f64) -> (f64, f64) {
    let x3 = x * x * x;
    let (mut f, mut g) = (0.0, 0.0);
    let (mut df, mut dg) = (0.0, 0.0);
    let mut tf = 1.0;
    let mut tg = x;
    let mut tdf = 0.5 * x * x;
    let mut tdg = 1.0;
    for k in 0..200 {
        let kf = k as f64;
        f += tf;
        g += tg;
        dg += tdg;
        df += tdf;
        tdf *= x3 / (3.0 * (kf + 1.0) * (3.0 * (kf + 1.0) + 2.0));
        tf *= x3 / ((3.0 * kf + 2.0) * (3.0 * kf + 3.0));
        tg *= x3 / ((3.0 * kf + 3.0) * (3.0 * kf + 4.0));
        tdg *= x3 / ((3.0 * kf + 1.0) * (3.0 * kf + 3.0));
        let small = 1e-18 * (f.abs() + g.abs() + df.abs() + dg.abs() + 1e-300);
        if k > 3 && tf.abs() < small && tg.abs() < small && tdf.abs() < small && tdg.abs() < small {
            break;
        }
    }
    (AI0 * f - AIP0 * g, AI0 * df - AIP0 * dg)
}

/// Coefficients u_k and v_k of the asymptotic expansions.
fn uv_coefficients(count: usize) -> (Vec<f64>, Vec<f64>) {
    let mut u = vec![1.0; count];
    let mut v = vec![1.0; count];
    for k in 1..count {
        let kf = k as f64;
        u[k] = u[k - 1] * (6.0 * kf - 5.0) * (6.0 * kf - 3.0) * (6.0 * kf - 1.0)
            / ((2.0 * kf - 1.0) * 216.0 * kf);
        v[k] = -(6.0 * kf + 1.0) / (6.0 * kf - 1.0) * u[k];
    }
    (u, v)
}

/// Sums Σ (-1)^k c_k ζ^{-k} split into even and odd parts, stopping at the
/// smallest term.
fn split_sums(c: &[f64], zeta: f64) -> (f64, f64) {
    let (mut even, mut odd) = (0.0, 0.0);
    let mut prev = f64::INFINITY;
    let mut zpow = 1.0;
    for (k, &ck) in c.iter().enumerate() {
        let term = ck * zpow;
        if term.abs() > prev {
            break;
        }
        prev = term.abs();
        // (-1)^j on the even/odd subsequences
        let j = k / 2;
        let signed = if j % 2 == 0 { term } else { -term };
        if k % 2 == 0 {
            even += signed;
        } else {
            odd += signed;
        }
        if term.abs() < 1e-18 {
            break;
        }
        zpow /= zeta;
    }
    (even, odd)
}

fn asymptotic_negative(z: f64) -> (f64, f64) {
    let zeta = 2.0 / 3.0 * z.powf(1.5);
    let (u, v) = uv_coefficients(40);
    let (ue, uo) = split_sums(&u, zeta);
    let (ve, vo) = split_sums(&v, zeta);
    let ph = zeta - 0.25 * PI;
    let (s, c) = ph.sin_cos();
    let pre = 1.0 / PI.sqrt();
    let ai = pre * z.powf(-0.25) * (c * ue + s * uo);
    let aip = pre * z.powf(0.25) * (s * ve - c * vo);
    (ai, aip)
}

fn asymptotic_positive(x: f64) -> (f64, f64) {
    let zeta = 2.0 / 3.0 * x.powf(1.5);
    let (u, v) = uv_coefficients(40);
    let alt = |c: &[f64]| {
        let mut sum = 0.0;
        let mut prev = f64::INFINITY;
        let mut zpow = 1.0;
        for (k, &ck) in c.iter().enumerate() {
            let term = ck * zpow;
            if term.abs() > prev {
                break;
            }
            prev = term.abs();
            sum += if k % 2 == 0 { term } else { -term };
            zpow /= zeta;
        }
        sum
    };
    let e = (-zeta).exp() / (2.0 * PI.sqrt());
    (e * x.powf(-0.25) * alt(&u), -e * x.powf(0.25) * alt(&v))
}

/// Initial guess for the `n`-th zero magnitude a_n.
fn zero_guess(n: usize) -> f64 {
    let t = 3.0 * PI * (4.0 * n as f64 - 1.0) / 8.0;
    let t2 = t.powi(-2);
    t.powf(2.0 / 3.0) * (1.0 + 5.0 / 48.0 * t2 - 5.0 / 36.0 * t2 * t2)
}

/// a_1, …, a_n with Ai(-a_j) = 0, ascending.
pub fn airy_zeros(n: usize) -> Vec<f64> {
    (1..=n).map(airy_zero).collect()
}

fn airy_zero(n: usize) -> f64 {
    let mut x = -zero_guess(n);
    for _ in 0..50 {
        let (ai, aip) = airy_ai(x);
        let dx = ai / aip;
        x -= dx;
        if dx.abs() < 1e-15 * x.abs() {
            break;
        }
    }
    // confirm the sign change around the root; fall back to bisection otherwise
    let delta = 1e-9 * x.abs();
    let (lo, hi) = (airy_ai(x - delta).0, airy_ai(x + delta).0);
    if lo * hi > 0.0 {
        let (mut a, mut b) = (x - 0.3, x + 0.3);
        let mut fa = airy_ai(a).0;
        for _ in 0..200 {
            let mid = 0.5 * (a + b);
            let fm = airy_ai(mid).0;
            if fm * fa <= 0.0 {
                b = mid;
            } else {
                a = mid;
                fa = fm;
            }
        }
        x = 0.5 * (a + b);
    }
    -x
}
