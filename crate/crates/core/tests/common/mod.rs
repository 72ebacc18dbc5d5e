//! Test-only oracles, independent of the library code paths they check.
#![allow(dead_code)]

use std::f64::consts::TAU;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive, Zero};

const FRAC_BITS: u32 = 320;

/// `J0(x)` from its Maclaurin series in exact fixed-point integer arithmetic
/// (`FRAC_BITS` fractional bits), free of the cancellation that ruins the
/// double-precision series for large `x`.
pub fn j0_series_oracle(x: f64) -> f64 {
    let (mantissa, exponent, _) = integer_decode(x.abs());
    if mantissa == 0 {
        return 1.0;
    }
    // (x/2)^2 = m^2 2^(2e - 2)
    let m2 = BigInt::from(mantissa) * BigInt::from(mantissa);
    let shift = 2 * i64::from(exponent) - 2;
    let one = BigInt::from(1) << FRAC_BITS;
    let mut term = one.clone();
    let mut sum = one;
    let mut k: u64 = 1;
    loop {
        let mut t = term * &m2;
        t = if shift >= 0 { t << shift as usize } else { t >> (-shift) as usize };
        t /= BigInt::from(k * k);
        t = -t;
        if t.is_zero() {
            break;
        }
        sum += &t;
        term = t;
        k += 1;
    }
    to_f64_scaled(&sum)
}

fn to_f64_scaled(v: &BigInt) -> f64 {
    let keep = 100;
    let reduced: BigInt = if v.is_negative() {
        -((-v) >> (FRAC_BITS - keep) as usize)
    } else {
        v >> (FRAC_BITS - keep) as usize
    };
    reduced.to_f64().unwrap() * 2f64.powi(-(keep as i32))
}

fn integer_decode(x: f64) -> (u64, i16, i8) {
    let bits = x.to_bits();
    let sign: i8 = if bits >> 63 == 0 { 1 } else { -1 };
    let mut exponent: i16 = ((bits >> 52) & 0x7ff) as i16;
    let mantissa = if exponent == 0 {
        (bits & 0xfffffffffffff) << 1
    } else {
        (bits & 0xfffffffffffff) | 0x10000000000000
    };
    exponent -= 1023 + 52;
    (mantissa, exponent, sign)
}

/// `<n| exp(-i x cos theta) |0>` by the trapezoid rule on `points` nodes,
/// exact up to rounding once `points` exceeds `|x| + |n|` comfortably.
pub fn kick_matrix_element(x: f64, n: i64, points: usize) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..points {
        let theta = TAU * j as f64 / points as f64;
        acc += Complex64::from_polar(1.0, -x * theta.cos() - n as f64 * theta);
    }
    acc / points as f64
}

/// `J0(x)` by quadrature of `(1/2 pi) int cos(x cos theta) d theta`.
pub fn j0_quadrature(x: f64) -> f64 {
    let points = 2 * (x.abs() as usize) + 256;
    let mut acc = 0.0;
    for j in 0..points {
        let theta = TAU * j as f64 / points as f64;
        acc += (x * theta.cos()).cos();
    }
    acc / points as f64
}

/// Root of `f` in `[lo, hi]` by bisection.
pub fn bisect(mut lo: f64, mut hi: f64, f: impl Fn(f64) -> f64) -> f64 {
    let mut flo = f(lo);
    assert!(flo * f(hi) < 0.0, "no sign change in bracket");
    while hi - lo > 1e-15 * hi.abs().max(1.0) {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if (fm < 0.0) == (flo < 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

#[test]
fn oracle_self_check() {
    // closed-form anchors: J0(0) = 1 and the series agrees with quadrature
    assert_eq!(j0_series_oracle(0.0), 1.0);
    for x in [0.5, 3.0, 17.25, 49.0] {
        assert!((j0_series_oracle(x) - j0_quadrature(x)).abs() < 1e-14, "x = {x}");
    }
}
