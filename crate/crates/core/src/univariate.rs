//! Dense univariate polynomials over an abstract field, just enough for
//! extended gcd, exact division and root multiplicities.
//!
//! Coefficient vectors are stored low degree first and kept trimmed: the
//! zero polynomial is the empty vector.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub(crate) trait Field {
    type Elem: Clone;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;
}

pub(crate) struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> Result<BigRational> {
        if a.is_zero() {
            Err(Error::ZeroInput)
        } else {
            Ok(a.recip())
        }
    }
}

pub(crate) fn trim<F: Field>(f: &F, p: &mut Vec<F::Elem>) {
    while p.last().is_some_and(|c| f.is_zero(c)) {
        p.pop();
    }
}

pub(crate) fn degree<E>(p: &[E]) -> Option<usize> {
    p.len().checked_sub(1)
}

type QuoRem<E> = (Vec<E>, Vec<E>);

/// Quotient and remainder of `a` by nonzero `b`.
pub(crate) fn divrem<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Result<QuoRem<F::Elem>> {
    let db = degree(b).ok_or(Error::ZeroInput)?;
    let lead_inv = f.inv(&b[db])?;
    let mut r = a.to_vec();
    trim(f, &mut r);
    if r.len() < b.len() {
        return Ok((Vec::new(), r));
    }
    let mut q = vec![f.zero(); r.len() - db];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = f.mul(&r[dr], &lead_inv);
        let shift = dr - db;
        for (i, bi) in b.iter().enumerate() {
            let prod = f.mul(&c, bi);
            r[shift + i] = f.sub(&r[shift + i], &prod);
        }
        q[shift] = c;
        // leading term cancels exactly
        r.pop();
        trim(f, &mut r);
    }
    trim(f, &mut q);
    Ok((q, r))
}

pub(crate) fn mul<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![f.zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if f.is_zero(ai) {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            let prod = f.mul(ai, bj);
            out[i + j] = f.add(&out[i + j], &prod);
        }
    }
    trim(f, &mut out);
    out
}

fn sub_poly<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).cloned().unwrap_or_else(|| f.zero());
        let y = b.get(i).cloned().unwrap_or_else(|| f.zero());
        out.push(f.sub(&x, &y));
    }
    trim(f, &mut out);
    out
}

pub(crate) fn make_monic<F: Field>(f: &F, p: &[F::Elem]) -> Result<Vec<F::Elem>> {
    let d = degree(p).ok_or(Error::ZeroInput)?;
    let inv = f.inv(&p[d])?;
    Ok(p.iter().map(|c| f.mul(c, &inv)).collect())
}

/// Monic gcd of `a` and `b` (not both zero).
pub(crate) fn gcd<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Result<Vec<F::Elem>> {
    let mut r0 = a.to_vec();
    let mut r1 = b.to_vec();
    trim(f, &mut r0);
    trim(f, &mut r1);
    while !r1.is_empty() {
        let (_, r) = divrem(f, &r0, &r1)?;
        r0 = std::mem::replace(&mut r1, r);
    }
    make_monic(f, &r0)
}

pub(crate) enum Inverse<E> {
    Unit(Vec<E>),
    /// Monic nontrivial common factor of the element and the modulus.
    Factor(Vec<E>),
}

/// Inverse of `a` modulo `m` by the extended Euclidean algorithm.
pub(crate) fn inverse_mod<F: Field>(f: &F, a: &[F::Elem], m: &[F::Elem]) -> Result<Inverse<F::Elem>> {
    let mut r0 = m.to_vec();
    let mut r1 = a.to_vec();
    trim(f, &mut r1);
    if r1.is_empty() {
        return Err(Error::ZeroInput);
    }
    let (_, reduced) = divrem(f, &r1, &r0)?;
    r1 = reduced;
    if r1.is_empty() {
        return Ok(Inverse::Factor(make_monic(f, m)?));
    }
    let mut s0: Vec<F::Elem> = Vec::new();
    let mut s1: Vec<F::Elem> = vec![f.one()];
    while !r1.is_empty() {
        let (q, r) = divrem(f, &r0, &r1)?;
        let s = sub_poly(f, &s0, &mul(f, &q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    if degree(&r0) != Some(0) {
        return Ok(Inverse::Factor(make_monic(f, &r0)?));
    }
    let c = f.inv(&r0[0])?;
    let mut inv: Vec<F::Elem> = s0.iter().map(|x| f.mul(x, &c)).collect();
    trim(f, &mut inv);
    let (_, inv) = divrem(f, &inv, m)?;
    Ok(Inverse::Unit(inv))
}
