//! Exact arithmetic in the tower field `K = Q(u, t)`.
//!
//! `u` is a primitive `2d`-th root of unity (so `u^d = -1`) and `t` a real
//! `d`-th root of the radicand (2 for the field used throughout the crate).
//! Elements are stored in normal form: a dense `phi(2d) x deg_t` array of
//! rationals, `u`-exponents reduced modulo the cyclotomic polynomial
//! `Phi_2d` and `t`-exponents reduced modulo the minimal polynomial of `t`.
//!
//! For `d = 0 mod 4` the cyclotomic part already contains
//! `sqrt(2) = u^(d/4) - u^(3d/4)`, so `t^d - 2` factors; there `t` is
//! reduced with `t^(d/2) = u^(d/4) - u^(3d/4)` instead.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize, Serializer};

use crate::ball::ComplexBall;
use crate::error::{Error, Result};
use crate::univariate::{self, Field, Inverse, Rationals};

pub const MIN_DEGREE: u32 = 3;
pub const MAX_DEGREE: u32 = 64;
/// Number of random inversions used to certify that the defining relations
/// give a field.
const GUARD_SAMPLES: usize = 50;

pub struct Tower {
    d: u32,
    radicand: u64,
    phi: usize,
    t_deg: usize,
    cyclo: Vec<BigInt>,
    /// Normal form of `u^e` for `0 <= e < 2d`, as sparse integer vectors.
    u_table: Vec<Vec<(usize, BigInt)>>,
    /// `t^deg_t` as an (unreduced) integer combination of powers of `u`.
    t_top: Vec<(usize, BigInt)>,
    embed_cache: Mutex<HashMap<u32, Arc<EmbedTable>>>,
}

struct EmbedTable {
    u_pows: Vec<ComplexBall>,
    t_pows: Vec<ComplexBall>,
}

impl fmt::Debug for Tower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Tower")
            .field("d", &self.d)
            .field("radicand", &self.radicand)
            .field("phi", &self.phi)
            .field("t_deg", &self.t_deg)
            .finish()
    }
}

fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// `Phi_n` with integer coefficients, lowest degree first.
fn cyclotomic(n: u64) -> Vec<BigInt> {
    let ints =
        |v: Vec<i64>| -> Vec<BigRational> { v.into_iter().map(|c| BigRational::from_integer(c.into())).collect() };
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    let mut poly = ints(num);
    for m in 1..n {
        if n.is_multiple_of(m) {
            let divisor: Vec<BigRational> = cyclotomic(m).into_iter().map(BigRational::from_integer).collect();
            let (q, r) = univariate::divrem(&Rationals, &poly, &divisor).expect("monic divisor");
            debug_assert!(r.is_empty());
            poly = q;
        }
    }
    poly.into_iter().map(|c| c.to_integer()).collect()
}

fn is_perfect_power(c: u64, p: u32) -> bool {
    let r = (c as f64).powf(1.0 / p as f64).round() as u64;
    (r.saturating_sub(1)..=r + 1).any(|x| x.checked_pow(p) == Some(c))
}

fn squarefree_part(mut c: u64) -> u64 {
    let mut out = 1;
    let mut p = 2;
    while p * p <= c {
        let mut e = 0;
        while c.is_multiple_of(p) {
            c /= p;
            e += 1;
        }
        if e % 2 == 1 {
            out *= p;
        }
        p += 1;
    }
    out * c
}

/// Whether `sqrt(s)` (s a signed squarefree integer != 1) lies in `Q(zeta_n)`.
fn quadratic_in_cyclotomic(s: i64, n: u64) -> bool {
    let disc = if s.rem_euclid(4) == 1 { s.unsigned_abs() } else { 4 * s.unsigned_abs() };
    n.is_multiple_of(disc)
}

/// Rejects radicands for which `t^d - c` is visibly reducible over `Q(u)`.
fn radicand_admissible(d: u32, c: u64) -> bool {
    if c < 2 {
        return false;
    }
    if c == 2 {
        return true;
    }
    let n = 2 * d as u64;
    for p in prime_factors(d as u64) {
        if p == 2 {
            let s = squarefree_part(c) as i64;
            if s == 1 || quadratic_in_cyclotomic(s, n) {
                return false;
            }
        } else if is_perfect_power(c, p as u32) {
            return false;
        }
    }
    if d.is_multiple_of(4) {
        // c = -4 y^4 forces sqrt(-c) into the cyclotomic field
        let s = -(squarefree_part(c) as i64);
        if s == -1 || quadratic_in_cyclotomic(s, n) {
            return false;
        }
    }
    true
}

type TowerCache = Mutex<HashMap<(u32, u64), Arc<Tower>>>;

fn tower_cache() -> &'static TowerCache {
    static CACHE: OnceLock<TowerCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

impl Tower {
    /// The field `Q(u, 2^(1/d))`, shared and cached per degree.
    pub fn new(d: u32) -> Result<Arc<Tower>> {
        Self::with_radicand(d, 2)
    }

    /// `Q(u, c^(1/d))` for an admissible integer radicand `c`.
    ///
    /// Radicands other than 2 give auxiliary fields that carry points of the
    /// Fermat curve away from its special points.
    pub fn with_radicand(d: u32, radicand: u64) -> Result<Arc<Tower>> {
        if !(MIN_DEGREE..=MAX_DEGREE).contains(&d) {
            return Err(Error::UnsupportedDegree(d));
        }
        if !radicand_admissible(d, radicand) {
            return Err(Error::UnsupportedRadicand(radicand as i64));
        }
        if let Some(t) = tower_cache().lock().unwrap().get(&(d, radicand)) {
            return Ok(t.clone());
        }
        let tower = Arc::new(Self::build(d, radicand));
        tower.certify_field()?;
        let mut cache = tower_cache().lock().unwrap();
        Ok(cache.entry((d, radicand)).or_insert(tower).clone())
    }

    fn build(d: u32, radicand: u64) -> Tower {
        let n = 2 * d as u64;
        let phi = euler_phi(n) as usize;
        let cyclo = cyclotomic(n);
        assert_eq!(cyclo.len(), phi + 1);
        let m = n as usize;
        let mut u_table: Vec<Vec<(usize, BigInt)>> = Vec::with_capacity(m);
        // u^e for e < phi is a basis vector; above that multiply by u and reduce
        let mut cur: Vec<BigInt> = vec![BigInt::zero(); phi];
        cur[0] = BigInt::one();
        for _ in 0..m {
            u_table.push(cur.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, c.clone())).collect());
            let top = cur[phi - 1].clone();
            for i in (1..phi).rev() {
                cur[i] = &cur[i - 1] - &top * &cyclo[i];
            }
            cur[0] = -&top * &cyclo[0];
        }
        let sqrt2_special = radicand == 2 && d.is_multiple_of(4);
        let (t_deg, t_top) = if sqrt2_special {
            let q = (d / 4) as usize;
            ((d / 2) as usize, vec![(q, BigInt::one()), (3 * q, -BigInt::one())])
        } else {
            (d as usize, vec![(0, BigInt::from(radicand))])
        };
        Tower { d, radicand, phi, t_deg, cyclo, u_table, t_top, embed_cache: Mutex::new(HashMap::new()) }
    }

    /// Inverts random elements and multiplies back; a wrong minimal
    /// polynomial surfaces here as a zero divisor.
    fn certify_field(self: &Arc<Self>) -> Result<()> {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0000 + self.d as u64 * 1000 + self.radicand);
        for _ in 0..GUARD_SAMPLES {
            let a = self.random_element(&mut rng, 3, 0.5);
            if a.is_zero() {
                continue;
            }
            let inv = a.inv()?;
            if !(&a * &inv).is_one() {
                return Err(Error::cert("field guard: a * a^-1 != 1", &a));
            }
        }
        Ok(())
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn radicand(&self) -> u64 {
        self.radicand
    }

    /// Degree of the cyclotomic part, `phi(2d)`.
    pub fn phi(&self) -> usize {
        self.phi
    }

    /// Degree of `t` over the cyclotomic part.
    pub fn t_degree(&self) -> usize {
        self.t_deg
    }

    /// Dimension of the field as a rational vector space.
    pub fn dimension(&self) -> usize {
        self.phi * self.t_deg
    }

    pub fn is_standard(&self) -> bool {
        self.radicand == 2
    }

    /// Coefficients of `Phi_2d`, lowest degree first.
    pub fn cyclotomic_polynomial(&self) -> &[BigInt] {
        &self.cyclo
    }

    fn same(&self, other: &Tower) -> bool {
        self.d == other.d && self.radicand == other.radicand
    }

    fn elem(self: &Arc<Self>, coeffs: Vec<BigRational>) -> FieldElement {
        debug_assert_eq!(coeffs.len(), self.dimension());
        FieldElement { tower: self.clone(), coeffs }
    }

    pub fn zero(self: &Arc<Self>) -> FieldElement {
        self.elem(vec![BigRational::zero(); self.dimension()])
    }

    pub fn one(self: &Arc<Self>) -> FieldElement {
        self.from_i64(1)
    }

    pub fn from_i64(self: &Arc<Self>, v: i64) -> FieldElement {
        self.from_rational(BigRational::from_integer(v.into()))
    }

    pub fn from_ratio(self: &Arc<Self>, num: i64, den: i64) -> FieldElement {
        self.from_rational(BigRational::new(num.into(), den.into()))
    }

    pub fn from_rational(self: &Arc<Self>, q: BigRational) -> FieldElement {
        let mut c = vec![BigRational::zero(); self.dimension()];
        c[0] = q;
        self.elem(c)
    }

    /// Element from a full normal-form coefficient array indexed `(i, j)` for
    /// `u^i t^j`, flattened row-major.
    pub fn from_coeffs(self: &Arc<Self>, coeffs: Vec<BigRational>) -> Result<FieldElement> {
        if coeffs.len() != self.dimension() {
            return Err(Error::Parse(format!("expected {} coefficients, got {}", self.dimension(), coeffs.len())));
        }
        Ok(self.elem(coeffs))
    }

    pub fn u(self: &Arc<Self>) -> FieldElement {
        self.u_pow(1)
    }

    pub fn t(self: &Arc<Self>) -> FieldElement {
        self.t_pow(1)
    }

    /// Primitive `d`-th root of unity `zeta = u^2`.
    pub fn zeta(self: &Arc<Self>) -> FieldElement {
        self.u_pow(2)
    }

    /// `u^e` for any integer `e` (using `u^(2d) = 1`).
    pub fn u_pow(self: &Arc<Self>, e: i64) -> FieldElement {
        let m = 2 * self.d as i64;
        let e = e.rem_euclid(m) as usize;
        let mut c = vec![BigRational::zero(); self.dimension()];
        for (i, v) in &self.u_table[e] {
            c[i * self.t_deg] = BigRational::from_integer(v.clone());
        }
        self.elem(c)
    }

    pub fn zeta_pow(self: &Arc<Self>, e: i64) -> FieldElement {
        self.u_pow(2 * e)
    }

    /// `t^e` for any integer `e` (using `t^d = radicand`).
    pub fn t_pow(self: &Arc<Self>, e: i64) -> FieldElement {
        let d = self.d as i64;
        // t^e = t^r * radicand^q with e = q d + r, 0 <= r < d
        let (q, r) = e.div_mod_floor(&d);
        let scale = BigRational::from_integer(BigInt::from(self.radicand)).pow(q as i32);
        let mut x = self.one();
        let t1 = self.basis(0, 1);
        for _ in 0..r {
            x = &x * &t1;
        }
        x.scale(&scale)
    }

    /// `u^a t^b` for arbitrary integer exponents.
    pub fn monomial(self: &Arc<Self>, u_exp: i64, t_exp: i64) -> FieldElement {
        &self.u_pow(u_exp) * &self.t_pow(t_exp)
    }

    fn basis(self: &Arc<Self>, i: usize, j: usize) -> FieldElement {
        let mut c = vec![BigRational::zero(); self.dimension()];
        if j < self.t_deg {
            c[i * self.t_deg + j] = BigRational::one();
            self.elem(c)
        } else {
            // t^T = t_top; only reached for T = 1 which cannot happen for d >= 3
            let mut x = self.elem(c);
            for (e, v) in &self.t_top {
                x = &x + &self.u_pow(*e as i64).scale(&BigRational::from_integer(v.clone()));
            }
            x
        }
    }

    /// Random element with integer coefficients in `[-bound, bound]`, each
    /// coefficient nonzero with probability `density`.
    pub fn random_element<R: Rng>(self: &Arc<Self>, rng: &mut R, bound: i64, density: f64) -> FieldElement {
        let coeffs = (0..self.dimension())
            .map(|_| {
                if rng.gen_bool(density.clamp(0.0, 1.0)) {
                    BigRational::from_integer(rng.gen_range(-bound..=bound).into())
                } else {
                    BigRational::zero()
                }
            })
            .collect();
        self.elem(coeffs)
    }

    fn embed_table(&self, prec: u32) -> Arc<EmbedTable> {
        let mut cache = self.embed_cache.lock().unwrap();
        cache
            .entry(prec)
            .or_insert_with(|| {
                let u = ComplexBall::exp_i_pi_over(self.d, prec);
                let t = ComplexBall::real_root(self.radicand, self.d, prec);
                let one = ComplexBall::from_rational(&BigRational::one(), prec);
                let mut u_pows = vec![one.clone()];
                for i in 1..self.phi {
                    u_pows.push(u_pows[i - 1].mul(&u));
                }
                let mut t_pows = vec![one];
                for j in 1..self.t_deg {
                    t_pows.push(t_pows[j - 1].mul(&t));
                }
                Arc::new(EmbedTable { u_pows, t_pows })
            })
            .clone()
    }

    /// Parses the JSON representation produced by serializing a [`FieldElement`].
    pub fn element_from_repr(self: &Arc<Self>, repr: &FieldElementRepr) -> Result<FieldElement> {
        if repr.d != self.d || repr.radicand.unwrap_or(2) != self.radicand {
            return Err(Error::Parse(format!(
                "element belongs to d={} radicand={}, field is d={} radicand={}",
                repr.d,
                repr.radicand.unwrap_or(2),
                self.d,
                self.radicand
            )));
        }
        let mut coeffs = vec![BigRational::zero(); self.dimension()];
        for (i, j, q) in &repr.terms {
            if *i >= self.phi || *j >= self.t_deg {
                return Err(Error::Parse(format!("term index ({i}, {j}) out of range")));
            }
            coeffs[i * self.t_deg + j] = parse_rational(q)?;
        }
        Ok(self.elem(coeffs))
    }

    pub fn element_from_json(self: &Arc<Self>, value: &serde_json::Value) -> Result<FieldElement> {
        let repr: FieldElementRepr = serde_json::from_value(value.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        self.element_from_repr(&repr)
    }

    fn mul_coeffs(&self, a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        let (den_a, na) = integerize(a);
        let (den_b, nb) = integerize(b);
        let dim = self.dimension();
        if na.is_empty() || nb.is_empty() {
            return vec![BigRational::zero(); dim];
        }
        let t_deg = self.t_deg;
        let m = 2 * self.d as usize;
        let mut buf = vec![BigInt::zero(); m * t_deg];
        for (ia, ca) in &na {
            let (i1, j1) = (ia / t_deg, ia % t_deg);
            for (ib, cb) in &nb {
                let (i2, j2) = (ib / t_deg, ib % t_deg);
                let prod = ca * cb;
                let (i, j) = (i1 + i2, j1 + j2);
                if j < t_deg {
                    buf[(i % m) * t_deg + j] += prod;
                } else {
                    for (e, c) in &self.t_top {
                        buf[((i + e) % m) * t_deg + j - t_deg] += &prod * c;
                    }
                }
            }
        }
        let mut out = vec![BigInt::zero(); dim];
        for e in 0..m {
            for j in 0..t_deg {
                let c = &buf[e * t_deg + j];
                if c.is_zero() {
                    continue;
                }
                for (i, v) in &self.u_table[e] {
                    out[i * t_deg + j] += c * v;
                }
            }
        }
        let den = den_a * den_b;
        out.into_iter().map(|n| BigRational::new(n, den.clone())).collect()
    }
}

/// Common denominator and the nonzero scaled numerators.
fn integerize(a: &[BigRational]) -> (BigInt, Vec<(usize, BigInt)>) {
    let mut den = BigInt::one();
    for c in a {
        if !c.is_zero() && !c.denom().is_one() {
            den = den.lcm(c.denom());
        }
    }
    let nums =
        a.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, c.numer() * (&den / c.denom()))).collect();
    (den, nums)
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("bad rational `{s}`"));
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s.trim(), "1"),
    };
    let p: BigInt = p.parse().map_err(|_| bad())?;
    let q: BigInt = q.parse().map_err(|_| bad())?;
    if !q.is_positive() {
        return Err(bad());
    }
    Ok(BigRational::new(p, q))
}

/// Field generators `(u, zeta, t)` of the standard tower for degree `d`.
pub fn constants(d: u32) -> Result<(FieldElement, FieldElement, FieldElement)> {
    let k = Tower::new(d)?;
    Ok((k.u(), k.zeta(), k.t()))
}

/// An element of a [`Tower`] in normal form.
#[derive(Clone)]
pub struct FieldElement {
    tower: Arc<Tower>,
    coeffs: Vec<BigRational>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FieldElementRepr {
    pub d: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radicand: Option<u64>,
    pub terms: Vec<(usize, usize, String)>,
}

impl FieldElement {
    pub fn tower(&self) -> &Arc<Tower> {
        &self.tower
    }

    pub fn d(&self) -> u32 {
        self.tower.d
    }

    /// Coefficient of `u^i t^j` in the normal form.
    pub fn coeff(&self, i: usize, j: usize) -> &BigRational {
        &self.coeffs[i * self.tower.t_deg + j]
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Nonzero normal-form terms `(i, j, c)` meaning `c u^i t^j`.
    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, &BigRational)> + '_ {
        let t = self.tower.t_deg;
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(move |(k, c)| (k / t, k % t, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The rational value if the element lies in `Q`.
    pub fn as_rational(&self) -> Option<&BigRational> {
        self.coeffs[1..].iter().all(Zero::is_zero).then_some(&self.coeffs[0])
    }

    pub fn as_i64(&self) -> Option<i64> {
        self.as_rational().filter(|q| q.is_integer()).and_then(|q| q.to_integer().to_i64())
    }

    fn check(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.tower, &other.tower) || self.tower.same(&other.tower) {
            Ok(())
        } else {
            Err(Error::DegreeMismatch { left: self.tower.d, right: other.tower.d })
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(self.tower.elem(coeffs))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(self.tower.elem(coeffs))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        if let Some(q) = self.as_rational() {
            return Ok(other.scale(q));
        }
        if let Some(q) = other.as_rational() {
            return Ok(self.scale(q));
        }
        Ok(self.tower.elem(self.tower.mul_coeffs(&self.coeffs, &other.coeffs)))
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        self.tower.elem(self.coeffs.iter().map(|c| c * q).collect())
    }

    pub fn scale_i64(&self, k: i64) -> Self {
        self.scale(&BigRational::from_integer(k.into()))
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.tower.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Integer power; negative exponents invert first.
    pub fn powi(&self, e: i64) -> Result<Self> {
        if e >= 0 {
            Ok(self.pow(e as u64))
        } else {
            Ok(self.inv()?.pow(e.unsigned_abs()))
        }
    }

    /// Multiplicative inverse.
    ///
    /// Multiplying by the conjugates `a(w^i t)` (with `w` a primitive root of
    /// unity of order `deg_t`) lands in `Q(u)`; multiplying that by its
    /// conjugates under `u -> u^a` lands in `Q`. A vanishing norm means the
    /// defining relations do not give a field, and the extended gcd is run to
    /// report the shared factor.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroInput);
        }
        if let Some(q) = self.as_rational() {
            return Ok(self.tower.from_rational(q.recip()));
        }
        let tw = &self.tower;
        let step = 2 * tw.d as usize / tw.t_deg;
        let mut cofactor = tw.one();
        for i in 1..tw.t_deg {
            cofactor = &cofactor * &self.map_t(step * i);
        }
        let n1 = self * &cofactor;
        if (0..tw.phi).any(|i| (1..tw.t_deg).any(|j| !n1.coeff(i, j).is_zero())) {
            return Err(Error::cert("relative norm left Q(u)", &n1));
        }
        if n1.is_zero() {
            return self.inv_by_gcd();
        }
        let mut cofactor0 = tw.one();
        if n1.as_rational().is_none() {
            let m = 2 * tw.d as usize;
            for a in 2..m {
                if a.gcd(&m) == 1 {
                    cofactor0 = &cofactor0 * &n1.map_u(a);
                }
            }
        }
        let n0 = &n1 * &cofactor0;
        let Some(q) = n0.as_rational() else {
            return Err(Error::cert("absolute norm left Q", &n0));
        };
        if q.is_zero() {
            return self.inv_by_gcd();
        }
        Ok((&cofactor * &cofactor0).scale(&q.recip()))
    }

    /// Image under `t -> u^e t` (coefficients of `t^j` pick up `u^(e j)`).
    fn map_t(&self, e: usize) -> Self {
        let tw = &self.tower;
        let m = 2 * tw.d as usize;
        let mut coeffs = vec![BigRational::zero(); tw.dimension()];
        for (i, j, c) in self.terms() {
            for (k, v) in &tw.u_table[(i + e * j) % m] {
                coeffs[k * tw.t_deg + j] += c * BigRational::from_integer(v.clone());
            }
        }
        tw.elem(coeffs)
    }

    /// Image of an element of `Q(u)` under `u -> u^a`.
    fn map_u(&self, a: usize) -> Self {
        let tw = &self.tower;
        let m = 2 * tw.d as usize;
        let mut coeffs = vec![BigRational::zero(); tw.dimension()];
        for (i, j, c) in self.terms() {
            debug_assert_eq!(j, 0);
            for (k, v) in &tw.u_table[(i * a) % m] {
                coeffs[k * tw.t_deg] += c * BigRational::from_integer(v.clone());
            }
        }
        tw.elem(coeffs)
    }

    /// Inverse via extended gcd, first over `Q` modulo `Phi_2d`, then over
    /// `Q(u)` modulo the minimal polynomial of `t`.
    fn inv_by_gcd(&self) -> Result<Self> {
        let tw = &self.tower;
        let cf = CycloField { tower: tw };
        let t_deg = tw.t_deg;
        let a: Vec<Vec<BigRational>> =
            (0..t_deg).map(|j| (0..tw.phi).map(|i| self.coeff(i, j).clone()).collect()).collect();
        let mut a = a;
        univariate::trim(&cf, &mut a);
        // minimal polynomial of t: t^T - t_top
        let mut m = vec![cf.zero(); t_deg + 1];
        m[t_deg] = cf.one();
        let mut top = cf.zero();
        for (e, c) in &tw.t_top {
            for (i, v) in &tw.u_table[*e] {
                top[*i] += BigRational::from_integer(c * v);
            }
        }
        m[0] = cf.neg(&top);
        match univariate::inverse_mod(&cf, &a, &m)? {
            Inverse::Unit(inv) => {
                let mut coeffs = vec![BigRational::zero(); tw.dimension()];
                for (j, cj) in inv.iter().enumerate() {
                    for (i, c) in cj.iter().enumerate() {
                        coeffs[i * t_deg + j] = c.clone();
                    }
                }
                Ok(tw.elem(coeffs))
            }
            Inverse::Factor(g) => {
                let mut coeffs = vec![BigRational::zero(); tw.dimension()];
                for (j, cj) in g.iter().enumerate().take(t_deg) {
                    for (i, c) in cj.iter().enumerate() {
                        coeffs[i * t_deg + j] = c.clone();
                    }
                }
                let shown = if g.len() > t_deg {
                    format!("t^{t_deg} + ({})", tw.elem(coeffs))
                } else {
                    tw.elem(coeffs).to_string()
                };
                Err(Error::ZeroDivisor { factor: shown })
            }
        }
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.try_mul(&other.inv()?)
    }

    /// Ball enclosing the image under `u -> exp(i pi/d)`, `t -> c^(1/d) > 0`.
    pub fn embed(&self, precision_bits: u32) -> ComplexBall {
        let prec = precision_bits.max(53);
        let table = self.tower.embed_table(prec);
        let mut acc = ComplexBall::zero(prec);
        for (i, j, c) in self.terms() {
            let term = ComplexBall::from_rational(c, prec).mul(&table.u_pows[i]).mul(&table.t_pows[j]);
            acc = acc.add(&term);
        }
        acc
    }

    pub fn to_repr(&self) -> FieldElementRepr {
        FieldElementRepr {
            d: self.tower.d,
            radicand: (self.tower.radicand != 2).then_some(self.tower.radicand),
            terms: self.terms().map(|(i, j, c)| (i, j, format!("{}/{}", c.numer(), c.denom()))).collect(),
        }
    }
}

struct CycloField<'a> {
    tower: &'a Tower,
}

impl CycloField<'_> {
    fn neg(&self, a: &[BigRational]) -> Vec<BigRational> {
        a.iter().map(|c| -c).collect()
    }
}

impl Field for CycloField<'_> {
    type Elem = Vec<BigRational>;

    fn zero(&self) -> Vec<BigRational> {
        vec![BigRational::zero(); self.tower.phi]
    }
    fn one(&self) -> Vec<BigRational> {
        let mut v = self.zero();
        v[0] = BigRational::one();
        v
    }
    fn is_zero(&self, a: &Vec<BigRational>) -> bool {
        a.iter().all(Zero::is_zero)
    }
    fn add(&self, a: &Vec<BigRational>, b: &Vec<BigRational>) -> Vec<BigRational> {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }
    fn sub(&self, a: &Vec<BigRational>, b: &Vec<BigRational>) -> Vec<BigRational> {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    }
    fn mul(&self, a: &Vec<BigRational>, b: &Vec<BigRational>) -> Vec<BigRational> {
        let (da, na) = integerize(a);
        let (db, nb) = integerize(b);
        let m = 2 * self.tower.d as usize;
        let mut buf = vec![BigInt::zero(); m];
        for (i, x) in &na {
            for (j, y) in &nb {
                buf[(i + j) % m] += x * y;
            }
        }
        let mut out = vec![BigInt::zero(); self.tower.phi];
        for (e, c) in buf.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (i, v) in &self.tower.u_table[e] {
                out[*i] += c * v;
            }
        }
        let den = da * db;
        out.into_iter().map(|n| BigRational::new(n, den.clone())).collect()
    }
    fn inv(&self, a: &Vec<BigRational>) -> Result<Vec<BigRational>> {
        if self.is_zero(a) {
            return Err(Error::ZeroInput);
        }
        let modulus: Vec<BigRational> = self.tower.cyclo.iter().map(|c| BigRational::from_integer(c.clone())).collect();
        match univariate::inverse_mod(&Rationals, a, &modulus)? {
            Inverse::Unit(mut v) => {
                v.resize(self.tower.phi, BigRational::zero());
                Ok(v)
            }
            Inverse::Factor(g) => Err(Error::ZeroDivisor { factor: format!("{g:?} in Q[u]") }),
        }
    }
}

/// The tower as a coefficient field for univariate polynomial algorithms.
pub(crate) struct TowerField<'a>(pub &'a Arc<Tower>);

impl Field for TowerField<'_> {
    type Elem = FieldElement;
    fn zero(&self) -> FieldElement {
        self.0.zero()
    }
    fn one(&self) -> FieldElement {
        self.0.one()
    }
    fn is_zero(&self, a: &FieldElement) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        a + b
    }
    fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        a - b
    }
    fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        a * b
    }
    fn inv(&self, a: &FieldElement) -> Result<FieldElement> {
        a.inv()
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.tower.same(&other.tower) && self.coeffs == other.coeffs
    }
}

impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.tower.d.hash(state);
        self.tower.radicand.hash(state);
        self.coeffs.hash(state);
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, j, c) in self.terms() {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let mut parts: Vec<String> = Vec::new();
            if !mag.is_one() || (i == 0 && j == 0) {
                parts.push(mag.to_string());
            }
            match i {
                0 => {}
                1 => parts.push("u".into()),
                _ => parts.push(format!("u^{i}")),
            }
            match j {
                0 => {}
                1 => parts.push("t".into()),
                _ => parts.push(format!("t^{j}")),
            }
            write!(f, "{}", parts.join("*"))?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "K{}[{}]", self.tower.d, self)
    }
}

impl Serialize for FieldElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_repr().serialize(s)
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $call:ident) => {
        impl $tr<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                self.$call(rhs).expect("field elements from different towers")
            }
        }
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$call(&rhs).expect("field elements from different towers")
            }
        }
        impl $tr<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                (&self).$call(rhs).expect("field elements from different towers")
            }
        }
        impl $tr<FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                self.$call(&rhs).expect("field elements from different towers")
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl Div<&FieldElement> for &FieldElement {
    type Output = FieldElement;
    /// Panics on division by zero.
    fn div(self, rhs: &FieldElement) -> FieldElement {
        self.checked_div(rhs).expect("division by zero")
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.tower.elem(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(d: u32) -> Arc<Tower> {
        Tower::new(d).unwrap()
    }

    #[test]
    fn rejects_small_and_large_degrees() {
        assert!(matches!(Tower::new(2), Err(Error::UnsupportedDegree(2))));
        assert!(matches!(Tower::new(65), Err(Error::UnsupportedDegree(65))));
        assert!(constants(1).is_err());
    }

    #[test]
    fn dimensions() {
        let dims: Vec<usize> = (3..=8).map(|d| k(d).dimension()).collect();
        // phi(2d) * deg_t, with deg_t = d/2 when 4 | d
        assert_eq!(dims, vec![6, 8, 20, 24, 42, 32]);
    }

    #[test]
    fn defining_relations() {
        let k5 = k(5);
        assert_eq!(k5.u().pow(5), k5.from_i64(-1));
        let zeta = k5.zeta();
        assert!(zeta.pow(5).is_one());
        assert!(!zeta.is_one());
        let k4 = k(4);
        assert_eq!(k4.t().pow(4), k4.from_i64(2));
        assert_eq!(k(8).t().pow(8), k(8).from_i64(2));
    }

    #[test]
    fn arithmetic_examples() {
        let k6 = k(6);
        assert!((k6.u() * k6.u_pow(11)).is_one());
        let k3 = k(3);
        assert_eq!(k3.t() * k3.t_pow(2), k3.from_i64(2));
        let k4 = k(4);
        let s = k4.u() - k4.u_pow(3);
        assert_eq!(&s * &s, k4.from_i64(2));
        // independent confirmation: s embeds to sqrt(2)
        let ball = s.embed(128);
        assert!(ball.contains_point(std::f64::consts::SQRT_2, 0.0) || (ball.center().0 - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn inverse_examples() {
        for d in 3..=8 {
            let kd = k(d);
            let t_inv = kd.t().inv().unwrap();
            assert_eq!(t_inv, kd.t_pow(d as i64 - 1).scale(&BigRational::new(1.into(), 2.into())));
            assert_eq!(kd.u().inv().unwrap(), -kd.u_pow(d as i64 - 1));
        }
        let k3 = k(3);
        let a = k3.one() + k3.u();
        let e = a.inv().unwrap();
        assert!((&a * &e).is_one());
        assert!(matches!(k3.zero().inv(), Err(Error::ZeroInput)));
    }

    #[test]
    fn norm_inverse_matches_gcd_inverse() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for d in [3, 4, 6, 8] {
            let kd = k(d);
            for _ in 0..3 {
                let a = kd.random_element(&mut rng, 4, 0.6);
                if a.is_zero() {
                    continue;
                }
                assert_eq!(a.inv().unwrap(), a.inv_by_gcd().unwrap());
            }
        }
    }

    #[test]
    fn zero_tests() {
        for d in 3..=8 {
            let kd = k(d);
            let mut phi_u = kd.zero();
            for (i, c) in kd.cyclotomic_polynomial().iter().enumerate() {
                phi_u = phi_u + kd.u_pow(i as i64).scale(&BigRational::from_integer(c.clone()));
            }
            assert!(phi_u.is_zero(), "Phi_2d(u) != 0 for d={d}");
            assert!(!(kd.u() + kd.t()).is_zero());
        }
        let k4 = k(4);
        assert!((k4.t_pow(2) - (k4.u() - k4.u_pow(3))).is_zero());
        assert!(
            k4.t_pow(2).embed(128).contains_point(std::f64::consts::SQRT_2, 0.0)
                || (k4.t_pow(2).embed(128).center().0 - std::f64::consts::SQRT_2).abs() < 1e-15
        );
    }

    #[test]
    fn embedding_examples() {
        let k4 = k(4);
        let (re, im) = k4.u().embed(128).center();
        assert!((re - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
        assert!((im - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
        let (re, _) = k(3).t().embed(128).center();
        assert!((re - 1.259_921_049_894_873_2).abs() < 1e-14);
        let k5 = k(5);
        let coord = &k5.u_pow(-1) * &k5.t();
        assert!((coord.embed(128).modulus() - 2f64.powf(0.2)).abs() < 1e-14);
    }

    #[test]
    fn radicand_admissibility() {
        assert!(radicand_admissible(4, 15));
        assert!(!radicand_admissible(4, 8)); // sqrt(8) = 2 sqrt(2) lies in Q(zeta_8)
        assert!(!radicand_admissible(6, 9));
        assert!(!radicand_admissible(3, 27));
        assert!(!radicand_admissible(6, 3)); // sqrt(3) lies in Q(zeta_12)
        assert!(radicand_admissible(5, 31));
        assert!(Tower::with_radicand(4, 15).is_ok());
    }

    #[test]
    fn json_roundtrip_and_format() {
        let k5 = k(5);
        let x = k5.u().scale(&BigRational::new(3.into(), 4.into())) - k5.t();
        let v = serde_json::to_value(&x).unwrap();
        assert_eq!(v["d"], 5);
        assert!(v.get("radicand").is_none());
        let terms = v["terms"].as_array().unwrap();
        assert!(terms.iter().any(|t| t[2] == "3/4"));
        assert!(terms.iter().any(|t| t[2] == "-1/1"));
        assert_eq!(k5.element_from_json(&v).unwrap(), x);
        assert!(k(6).element_from_json(&v).is_err());
    }

    #[test]
    fn degree_mismatch_is_an_error() {
        let a = k(3).u();
        let b = k(4).u();
        assert!(matches!(a.try_add(&b), Err(Error::DegreeMismatch { left: 3, right: 4 })));
        assert!(a.try_mul(&b).is_err());
    }
}
