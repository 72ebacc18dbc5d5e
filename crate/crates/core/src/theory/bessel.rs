//! Bessel function of the first kind, order zero.
//!
//! Evaluated in double-double arithmetic so the returned `f64` is close to
//! correctly rounded; three regimes:
//!
//! * `|x| <= 8`: Maclaurin series,
//! * `8 < |x| <= 60`: Miller backward recurrence normalised by
//!   `J0 + 2 (J2 + J4 + ...) = 1`,
//! * `|x| > 60`: Hankel asymptotic expansion.

use std::f64::consts::FRAC_2_PI;

use crate::numeric::DoubleDouble;

const SERIES_LIMIT: f64 = 8.0;
const RECURRENCE_LIMIT: f64 = 60.0;

/// `J0(x)`.
pub fn bessel_j0(x: f64) -> f64 {
    j0_extended(x).to_f64()
}

/// `J0(x)` as an unevaluated double-double sum.
///
/// Useful where rounding of the final `f64` would dominate, e.g. finite
/// differences of `J0`.
pub fn j0_extended(x: f64) -> DoubleDouble {
    let x = x.abs();
    if x.is_nan() {
        return DoubleDouble::from_f64(f64::NAN);
    }
    if x.is_infinite() {
        return DoubleDouble::ZERO;
    }
    if x <= SERIES_LIMIT {
        series(x)
    } else if x <= RECURRENCE_LIMIT {
        miller(x)
    } else {
        DoubleDouble::from_f64(hankel(x))
    }
}

fn series(x: f64) -> DoubleDouble {
    let half = DoubleDouble::from_f64(0.5 * x);
    let minus_q = -(half * half);
    let mut term = DoubleDouble::ONE;
    let mut sum = DoubleDouble::ONE;
    for k in 1..200u32 {
        let kk = f64::from(k * k);
        term = (term * minus_q).div_f64(kk);
        sum = sum + term;
        if term.hi.abs() < 1e-34 {
            break;
        }
    }
    sum
}

fn miller(x: f64) -> DoubleDouble {
    let start = {
        let m = (x + 10.0 * x.cbrt() + 30.0).ceil() as u32;
        m + (m & 1)
    };
    let inv_x = DoubleDouble::ONE.div_f64(x);
    let mut next = DoubleDouble::ZERO;
    let mut current = DoubleDouble::from_f64(1e-30);
    let mut even_sum = DoubleDouble::ZERO;
    // current holds an unnormalised J_k, next holds J_{k+1}
    for k in (1..=start).rev() {
        if k % 2 == 0 {
            even_sum = even_sum + current;
        }
        let prev = current.mul_f64(f64::from(2 * k)) * inv_x - next;
        next = current;
        current = prev;
        if current.hi.abs() > 1e250 {
            current = current.mul_pow2(2f64.powi(-830));
            next = next.mul_pow2(2f64.powi(-830));
            even_sum = even_sum.mul_pow2(2f64.powi(-830));
        }
    }
    let norm = current + even_sum.mul_f64(2.0);
    current / norm
}

fn hankel(x: f64) -> f64 {
    let eight_x = 8.0 * x;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut c = 1.0;
    for m in 1..60u32 {
        let odd = f64::from(2 * m - 1);
        let next = c * (-odd * odd) / (f64::from(m) * eight_x);
        if next.abs() > c.abs() {
            break;
        }
        c = next;
        let sign = if (m / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if m % 2 == 0 {
            p += sign * c;
        } else {
            q += sign * c;
        }
        if c.abs() < 1e-18 {
            break;
        }
    }
    // x - pi/4 carried to double-double so the phase survives large x
    let phase = DoubleDouble::from_f64(x) - DoubleDouble::PI.mul_pow2(0.25);
    let (s, co) = phase.hi.sin_cos();
    let cos_phase = co - s * phase.lo;
    let sin_phase = s + co * phase.lo;
    (FRAC_2_PI / x).sqrt() * (p * cos_phase - q * sin_phase)
}
