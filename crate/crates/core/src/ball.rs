//! Fixed-point complex balls used to certify the complex embedding of tower
//! elements.
//!
//! A ball stores its center as a pair of integers scaled by `2^-prec` and a
//! radius counted in the same units. Every operation rounds so that the
//! result ball contains the exact result.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

/// Extra bits carried while evaluating transcendental constants.
const GUARD_BITS: u32 = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexBall {
    re: BigInt,
    im: BigInt,
    rad: BigInt,
    prec: u32,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct BallSummary {
    pub re: f64,
    pub im: f64,
    pub radius: f64,
    pub precision_bits: u32,
}

fn ceil_shift(v: &BigInt, bits: u32) -> BigInt {
    debug_assert!(!v.is_negative());
    let one = BigInt::from(1u8) << bits;
    (v + &one - 1u8) >> bits
}

fn fixed_to_f64(v: &BigInt, prec: u32) -> f64 {
    if prec > 64 {
        let shifted: BigInt = v >> (prec - 64);
        shifted.to_f64().unwrap_or(f64::NAN) / 2f64.powi(64)
    } else {
        v.to_f64().unwrap_or(f64::NAN) / 2f64.powi(prec as i32)
    }
}

fn abs1(re: &BigInt, im: &BigInt) -> BigInt {
    re.abs() + im.abs()
}

impl ComplexBall {
    pub fn zero(prec: u32) -> Self {
        ComplexBall { re: BigInt::zero(), im: BigInt::zero(), rad: BigInt::zero(), prec }
    }

    pub fn from_rational(q: &BigRational, prec: u32) -> Self {
        let scaled = q.numer() << prec;
        let (quo, rem) = scaled.div_mod_floor(q.denom());
        let rad = if rem.is_zero() { BigInt::zero() } else { BigInt::from(1u8) };
        ComplexBall { re: quo, im: BigInt::zero(), rad, prec }
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    pub fn center(&self) -> (f64, f64) {
        (fixed_to_f64(&self.re, self.prec), fixed_to_f64(&self.im, self.prec))
    }

    /// Upper bound on the radius, rounded outward.
    pub fn radius(&self) -> f64 {
        let r = fixed_to_f64(&(&self.rad + 1u8), self.prec);
        r * (1.0 + 1e-12)
    }

    /// Approximate modulus of the center.
    pub fn modulus(&self) -> f64 {
        let (re, im) = self.center();
        re.hypot(im)
    }

    pub fn summary(&self) -> BallSummary {
        let (re, im) = self.center();
        BallSummary { re, im, radius: self.radius(), precision_bits: self.prec }
    }

    fn check_prec(&self, other: &Self) {
        assert_eq!(self.prec, other.prec, "ball precision mismatch");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_prec(other);
        ComplexBall { re: &self.re + &other.re, im: &self.im + &other.im, rad: &self.rad + &other.rad, prec: self.prec }
    }

    pub fn neg(&self) -> Self {
        ComplexBall { re: -&self.re, im: -&self.im, rad: self.rad.clone(), prec: self.prec }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_prec(other);
        let p = self.prec;
        let re = (&self.re * &other.re - &self.im * &other.im) >> p;
        let im = (&self.re * &other.im + &self.im * &other.re) >> p;
        let spread =
            abs1(&self.re, &self.im) * &other.rad + abs1(&other.re, &other.im) * &self.rad + &self.rad * &other.rad;
        // two floor roundings contribute less than two units
        let rad = ceil_shift(&spread, p) + 2u8;
        ComplexBall { re, im, rad, prec: p }
    }

    pub fn contains_zero(&self) -> bool {
        &self.re * &self.re + &self.im * &self.im <= &self.rad * &self.rad
    }

    pub fn overlaps(&self, other: &Self) -> bool {
        self.check_prec(other);
        let dre = &self.re - &other.re;
        let dim = &self.im - &other.im;
        let r = &self.rad + &other.rad;
        &dre * &dre + &dim * &dim <= &r * &r
    }

    /// Whether the ball contains the (exactly representable) point `re + i im`.
    pub fn contains_point(&self, re: f64, im: f64) -> bool {
        let to_fixed = |x: f64| -> Option<BigInt> {
            let q = BigRational::from_float(x)?;
            let scaled = q.numer() << self.prec;
            Some(scaled.div_floor(q.denom()))
        };
        let (Some(a), Some(b)) = (to_fixed(re), to_fixed(im)) else {
            return false;
        };
        let probe = ComplexBall { re: a, im: b, rad: BigInt::from(1u8), prec: self.prec };
        self.overlaps(&probe)
    }

    /// `exp(i*pi/n)` enclosed at `prec` bits.
    pub fn exp_i_pi_over(n: u32, prec: u32) -> Self {
        let w = prec + GUARD_BITS;
        let pi = pi_fixed(w);
        let x = pi / BigInt::from(n);
        let (c, s) = cos_sin_fixed(&x, w);
        // accumulated error at working precision stays far below 2^GUARD_BITS units
        ComplexBall { re: c >> GUARD_BITS, im: s >> GUARD_BITS, rad: BigInt::from(2u8), prec }
    }

    /// The real positive `n`-th root of `c`.
    pub fn real_root(c: u64, n: u32, prec: u32) -> Self {
        let scaled = BigInt::from(c) << (prec as usize * n as usize);
        let root = scaled.nth_root(n);
        ComplexBall { re: root, im: BigInt::zero(), rad: BigInt::from(1u8), prec }
    }
}

fn atan_inv_fixed(n: u32, w: u32) -> BigInt {
    let n = BigInt::from(n);
    let n2 = &n * &n;
    let mut term: BigInt = (BigInt::from(1u8) << w) / &n;
    let mut sum = BigInt::zero();
    let mut k: u32 = 0;
    while !term.is_zero() {
        let t = &term / BigInt::from(2 * k + 1);
        if k.is_multiple_of(2) {
            sum += t;
        } else {
            sum -= t;
        }
        term /= &n2;
        k += 1;
    }
    sum
}

fn pi_fixed(w: u32) -> BigInt {
    // Machin: pi = 16 atan(1/5) - 4 atan(1/239)
    atan_inv_fixed(5, w) * 16 - atan_inv_fixed(239, w) * 4
}

fn cos_sin_fixed(x: &BigInt, w: u32) -> (BigInt, BigInt) {
    let one = BigInt::from(1u8) << w;
    let mut cos = BigInt::zero();
    let mut sin = BigInt::zero();
    let mut term = one;
    let mut n: u32 = 0;
    while !term.is_zero() {
        let signed = if (n / 2).is_multiple_of(2) { term.clone() } else { -&term };
        if n.is_multiple_of(2) {
            cos += signed;
        } else {
            sin += signed;
        }
        n += 1;
        term = ((&term * x) >> w) / BigInt::from(n);
    }
    (cos, sin)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn root_of_unity_is_accurate() {
        let b = ComplexBall::exp_i_pi_over(4, 200);
        let (re, im) = b.center();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((re - h).abs() < 1e-15 && (im - h).abs() < 1e-15);
        assert!(b.radius() < 1e-55);
    }

    #[test]
    fn root_of_unity_to_the_nth_is_minus_one() {
        for n in [3u32, 5, 8] {
            let u = ComplexBall::exp_i_pi_over(n, 256);
            let mut p = u.clone();
            for _ in 1..n {
                p = p.mul(&u);
            }
            let minus_one = ComplexBall::from_rational(&BigRational::from_integer((-1).into()), 256);
            assert!(p.overlaps(&minus_one));
            assert!(!p.contains_zero());
        }
    }

    #[test]
    fn cube_root_of_two() {
        let t = ComplexBall::real_root(2, 3, 128);
        assert!((t.center().0 - 1.259_921_049_894_873).abs() < 1e-14);
        let cube = t.mul(&t).mul(&t);
        assert!(cube.contains_point(2.0, 0.0));
    }
}
