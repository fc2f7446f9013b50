//! Homogeneous polynomials in `x, y, z` over a tower field, projective
//! points, and binary forms obtained by restricting to a line.

use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::tower::{FieldElement, FieldElementRepr, Tower, TowerField};
use crate::univariate;

pub type Exps = [u32; 3];

pub const VARS: [char; 3] = ['x', 'y', 'z'];

/// A homogeneous polynomial of fixed total degree. The zero polynomial keeps
/// its declared degree.
#[derive(Clone)]
pub struct HomPoly {
    tower: Arc<Tower>,
    deg: u32,
    terms: BTreeMap<Exps, FieldElement>,
}

impl PartialEq for HomPoly {
    fn eq(&self, other: &Self) -> bool {
        self.tower.d() == other.tower.d()
            && self.tower.radicand() == other.tower.radicand()
            && self.deg == other.deg
            && self.terms == other.terms
    }
}

impl Eq for HomPoly {}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HomPolyRepr {
    pub deg: u32,
    pub terms: Vec<(u32, u32, u32, FieldElementRepr)>,
}

fn unit(i: usize) -> Exps {
    let mut e = [0; 3];
    e[i] = 1;
    e
}

impl HomPoly {
    pub fn zero(tower: &Arc<Tower>, deg: u32) -> Self {
        HomPoly { tower: tower.clone(), deg, terms: BTreeMap::new() }
    }

    pub fn constant(c: FieldElement) -> Self {
        Self::monomial([0, 0, 0], c)
    }

    /// `c x^a y^b z^c`.
    pub fn monomial(exps: Exps, c: FieldElement) -> Self {
        let mut p = Self::zero(c.tower(), exps.iter().sum());
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    /// One of the coordinate functions `x`, `y`, `z` (index 0, 1, 2).
    pub fn var(tower: &Arc<Tower>, i: usize) -> Self {
        Self::monomial(unit(i), tower.one())
    }

    /// `a x + b y + c z`.
    pub fn linear(coeffs: [FieldElement; 3]) -> Self {
        let tower = coeffs[0].tower().clone();
        let mut p = Self::zero(&tower, 1);
        for (i, c) in coeffs.into_iter().enumerate() {
            if !c.is_zero() {
                p.terms.insert(unit(i), c);
            }
        }
        p
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, summing
    /// repeated monomials.
    pub fn from_terms(
        tower: &Arc<Tower>,
        deg: u32,
        terms: impl IntoIterator<Item = (Exps, FieldElement)>,
    ) -> Result<Self> {
        let mut p = Self::zero(tower, deg);
        for (e, c) in terms {
            if e.iter().sum::<u32>() != deg {
                return Err(Error::InvalidArgument(format!("monomial {e:?} is not of degree {deg}")));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, e: Exps, c: FieldElement) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v = &*v + &c;
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn tower(&self) -> &Arc<Tower> {
        &self.tower
    }

    pub fn deg(&self) -> u32 {
        self.deg
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exps, &FieldElement)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: Exps) -> FieldElement {
        self.terms.get(&e).cloned().unwrap_or_else(|| self.tower.zero())
    }

    /// `[a, b, c]` for a linear form `a x + b y + c z`.
    pub fn linear_coeffs(&self) -> Result<[FieldElement; 3]> {
        if self.deg != 1 {
            return Err(Error::WrongDegree { expected: "linear form", got: self.deg });
        }
        Ok([0, 1, 2].map(|i| self.coeff(unit(i))))
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.tower.d() != other.tower.d() || self.tower.radicand() != other.tower.radicand() {
            return Err(Error::DegreeMismatch { left: self.tower.d(), right: other.tower.d() });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        if self.deg != other.deg && !self.is_zero() && !other.is_zero() {
            return Err(Error::InvalidArgument(format!("cannot add forms of degree {} and {}", self.deg, other.deg)));
        }
        let mut out = if self.is_zero() { other.clone() } else { self.clone() };
        if !self.is_zero() {
            for (e, c) in &other.terms {
                out.add_term(*e, c.clone());
            }
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| -c)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(&self.tower, self.deg + other.deg);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term([ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]], ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, k: &FieldElement) -> Self {
        if k.is_zero() {
            return Self::zero(&self.tower, self.deg);
        }
        self.map_coeffs(|c| c * k)
    }

    pub fn scale_i64(&self, k: i64) -> Self {
        self.scale(&self.tower.from_i64(k))
    }

    fn map_coeffs(&self, f: impl Fn(&FieldElement) -> FieldElement) -> Self {
        let terms = self.terms.iter().map(|(e, c)| (*e, f(c))).filter(|(_, c)| !c.is_zero()).collect();
        HomPoly { tower: self.tower.clone(), deg: self.deg, terms }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::constant(self.tower.one());
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Formal partial derivative with respect to variable `var` (0, 1, 2).
    pub fn partial(&self, var: usize) -> Self {
        let mut out = Self::zero(&self.tower, self.deg.saturating_sub(1));
        for (e, c) in &self.terms {
            if e[var] == 0 {
                continue;
            }
            let mut ne = *e;
            ne[var] -= 1;
            out.add_term(ne, c.scale_i64(e[var] as i64));
        }
        out
    }

    pub fn gradient(&self) -> [HomPoly; 3] {
        [0, 1, 2].map(|i| self.partial(i))
    }

    /// Value at the given coordinates.
    pub fn eval(&self, p: &[FieldElement; 3]) -> FieldElement {
        let mut pows: [Vec<FieldElement>; 3] = Default::default();
        for (i, pw) in pows.iter_mut().enumerate() {
            let max = self.terms.keys().map(|e| e[i]).max().unwrap_or(0);
            pw.push(self.tower.one());
            for k in 1..=max as usize {
                let next = &pw[k - 1] * &p[i];
                pw.push(next);
            }
        }
        let mut acc = self.tower.zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for i in 0..3 {
                if e[i] > 0 {
                    term = &term * &pows[i][e[i] as usize];
                }
            }
            acc = &acc + &term;
        }
        acc
    }

    /// Value at the canonical representative of `p`.
    pub fn evaluate(&self, p: &ProjPoint) -> FieldElement {
        self.eval(p.coords())
    }

    pub fn vanishes_at(&self, p: &ProjPoint) -> bool {
        self.evaluate(p).is_zero()
    }

    /// Matrix of second partials.
    pub fn hessian_matrix(&self) -> [[HomPoly; 3]; 3] {
        let g = self.gradient();
        [0, 1, 2].map(|i| [0, 1, 2].map(|j| g[i].partial(j)))
    }

    /// Determinant of the matrix of second partials.
    pub fn hessian(&self) -> HomPoly {
        let m = self.hessian_matrix();
        if self.deg < 2 {
            return HomPoly::zero(&self.tower, 0);
        }
        det3_poly(&m)
    }

    /// `f(M v)`: substitute `x_i -> sum_j M[i][j] x_j`.
    pub fn compose_linear(&self, m: &[[FieldElement; 3]; 3]) -> HomPoly {
        let lin: Vec<HomPoly> = m.iter().map(|row| HomPoly::linear(row.clone())).collect();
        let mut pows: Vec<Vec<HomPoly>> = Vec::with_capacity(3);
        for (i, l) in lin.iter().enumerate() {
            let max = self.terms.keys().map(|e| e[i]).max().unwrap_or(0);
            let mut v = vec![HomPoly::constant(self.tower.one())];
            for k in 1..=max as usize {
                let next = &v[k - 1] * l;
                v.push(next);
            }
            pows.push(v);
        }
        let mut out = HomPoly::zero(&self.tower, self.deg);
        for (e, c) in &self.terms {
            let prod = &(&pows[0][e[0] as usize] * &pows[1][e[1] as usize]) * &pows[2][e[2] as usize];
            for (pe, pc) in prod.terms {
                out.add_term(pe, &pc * c);
            }
        }
        out
    }

    /// Whether the coefficient vectors are linearly dependent (all 2x2
    /// minors vanish). Two nonzero forms pass iff they define the same curve
    /// with the same multiplicities.
    pub fn proportional(&self, other: &HomPoly) -> bool {
        if self.deg != other.deg && !self.is_zero() && !other.is_zero() {
            return false;
        }
        let Some((pivot, a)) = self.terms.iter().next() else {
            return true;
        };
        let b = other.coeff(*pivot);
        let keys: std::collections::BTreeSet<&Exps> = self.terms.keys().chain(other.terms.keys()).collect();
        keys.into_iter().all(|e| {
            let minor = &(a * &other.coeff(*e)) - &(&b * &self.coeff(*e));
            minor.is_zero()
        })
    }

    /// Scalar `lambda` with `other = lambda * self`, if one exists.
    pub fn ratio_to(&self, other: &HomPoly) -> Option<FieldElement> {
        let (pivot, a) = self.terms.iter().next()?;
        if !self.proportional(other) {
            return None;
        }
        other.coeff(*pivot).checked_div(a).ok()
    }

    /// Scales so the leading coefficient (largest exponent triple) is 1.
    pub fn monic(&self) -> Result<HomPoly> {
        let (_, lead) = self.terms.iter().next_back().ok_or(Error::ZeroInput)?;
        Ok(self.scale(&lead.inv()?))
    }

    /// For a linear form: scale so the first nonzero of the `x, y, z`
    /// coefficients is 1.
    pub fn canonical_line(&self) -> Result<HomPoly> {
        let c = self.linear_coeffs()?;
        let lead = c.iter().find(|v| !v.is_zero()).ok_or(Error::ZeroInput)?;
        Ok(self.scale(&lead.inv()?))
    }

    /// Exact quotient by a nonzero linear form, or `None` if it does not divide.
    pub fn div_linear(&self, l: &HomPoly) -> Result<Option<HomPoly>> {
        let lc = l.linear_coeffs()?;
        let piv = lc.iter().position(|c| !c.is_zero()).ok_or(Error::ZeroInput)?;
        let inv = lc[piv].inv()?;
        if self.deg == 0 {
            return Ok(self.is_zero().then(|| HomPoly::zero(&self.tower, 0)));
        }
        let mut rem = self.clone();
        let mut quo = HomPoly::zero(&self.tower, self.deg - 1);
        loop {
            let lead = rem
                .terms
                .iter()
                .filter(|(e, _)| e[piv] > 0)
                .max_by_key(|(e, _)| (e[piv], **e))
                .map(|(e, c)| (*e, c.clone()));
            let Some((e, c)) = lead else { break };
            let mut qe = e;
            qe[piv] -= 1;
            let qc = &c * &inv;
            for (i, li) in lc.iter().enumerate() {
                if li.is_zero() {
                    continue;
                }
                let mut te = qe;
                te[i] += 1;
                rem.add_term(te, -(&qc * li));
            }
            quo.add_term(qe, qc);
        }
        Ok(rem.is_zero().then_some(quo))
    }

    pub fn to_repr(&self) -> HomPolyRepr {
        HomPolyRepr { deg: self.deg, terms: self.terms.iter().map(|(e, c)| (e[0], e[1], e[2], c.to_repr())).collect() }
    }

    pub fn from_repr(tower: &Arc<Tower>, repr: &HomPolyRepr) -> Result<HomPoly> {
        let terms = repr
            .terms
            .iter()
            .map(|(a, b, c, fe)| Ok(([*a, *b, *c], tower.element_from_repr(fe)?)))
            .collect::<Result<Vec<_>>>()?;
        HomPoly::from_terms(tower, repr.deg, terms)
    }
}

/// Determinant of a 3x3 matrix of polynomials.
pub fn det3_poly(m: &[[HomPoly; 3]; 3]) -> HomPoly {
    let minor = |r1: usize, r2: usize, c1: usize, c2: usize| -> HomPoly {
        &(&m[r1][c1] * &m[r2][c2]) - &(&m[r1][c2] * &m[r2][c1])
    };
    let a = &m[0][0] * &minor(1, 2, 1, 2);
    let b = &m[0][1] * &minor(1, 2, 0, 2);
    let c = &m[0][2] * &minor(1, 2, 0, 1);
    &(&a - &b) + &c
}

impl fmt::Display for HomPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mono: Vec<String> = (0..3)
                .filter(|&i| e[i] > 0)
                .map(|i| if e[i] == 1 { VARS[i].to_string() } else { format!("{}^{}", VARS[i], e[i]) })
                .collect();
            if mono.is_empty() {
                write!(f, "({c})")?;
            } else if c.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "({c})*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for HomPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HomPoly[deg {}]({})", self.deg, self)
    }
}

impl Serialize for HomPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_repr().serialize(s)
    }
}

macro_rules! poly_binop {
    ($tr:ident, $method:ident, $call:ident) => {
        impl std::ops::$tr<&HomPoly> for &HomPoly {
            type Output = HomPoly;
            fn $method(self, rhs: &HomPoly) -> HomPoly {
                self.$call(rhs).expect("incompatible polynomials")
            }
        }
        impl std::ops::$tr<HomPoly> for HomPoly {
            type Output = HomPoly;
            fn $method(self, rhs: HomPoly) -> HomPoly {
                (&self).$call(&rhs).expect("incompatible polynomials")
            }
        }
    };
}

poly_binop!(Add, add, try_add);
poly_binop!(Sub, sub, try_sub);
poly_binop!(Mul, mul, try_mul);

/// A point of the projective plane with its first nonzero coordinate equal to 1.
#[derive(Clone, PartialEq, Eq)]
pub struct ProjPoint {
    coords: [FieldElement; 3],
}

impl ProjPoint {
    pub fn new(coords: [FieldElement; 3]) -> Result<Self> {
        let lead = coords.iter().find(|c| !c.is_zero()).ok_or(Error::ZeroPoint)?;
        if lead.is_one() {
            return Ok(ProjPoint { coords });
        }
        let inv = lead.inv()?;
        Ok(ProjPoint { coords: coords.map(|c| &c * &inv) })
    }

    pub fn from_i64(tower: &Arc<Tower>, c: [i64; 3]) -> Result<Self> {
        Self::new(c.map(|v| tower.from_i64(v)))
    }

    pub fn coords(&self) -> &[FieldElement; 3] {
        &self.coords
    }

    pub fn tower(&self) -> &Arc<Tower> {
        self.coords[0].tower()
    }

    /// Index of the first nonzero coordinate (which equals 1).
    pub fn chart(&self) -> usize {
        self.coords.iter().position(|c| !c.is_zero()).expect("nonzero point")
    }

    /// The line through two distinct points.
    pub fn line_through(&self, other: &ProjPoint) -> Result<HomPoly> {
        let c = cross(&self.coords, &other.coords);
        if c.iter().all(FieldElement::is_zero) {
            return Err(Error::InvalidArgument("points coincide".into()));
        }
        HomPoly::linear(c).canonical_line()
    }

    /// Image under `p -> M p`.
    pub fn transform(&self, m: &[[FieldElement; 3]; 3]) -> Result<ProjPoint> {
        let v = [0, 1, 2].map(|i| {
            let mut acc = self.tower().zero();
            for j in 0..3 {
                if !m[i][j].is_zero() && !self.coords[j].is_zero() {
                    acc = &acc + &(&m[i][j] * &self.coords[j]);
                }
            }
            acc
        });
        ProjPoint::new(v)
    }

    pub fn to_repr(&self) -> [FieldElementRepr; 3] {
        [0, 1, 2].map(|i| self.coords[i].to_repr())
    }
}

impl Hash for ProjPoint {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coords.hash(state);
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} : {} : {})", self.coords[0], self.coords[1], self.coords[2])
    }
}

impl fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for ProjPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_repr().serialize(s)
    }
}

pub fn cross(a: &[FieldElement; 3], b: &[FieldElement; 3]) -> [FieldElement; 3] {
    [&(&a[1] * &b[2]) - &(&a[2] * &b[1]), &(&a[2] * &b[0]) - &(&a[0] * &b[2]), &(&a[0] * &b[1]) - &(&a[1] * &b[0])]
}

pub fn dot(a: &[FieldElement; 3], b: &[FieldElement; 3]) -> FieldElement {
    &(&(&a[0] * &b[0]) + &(&a[1] * &b[1])) + &(&a[2] * &b[2])
}

pub fn det3(rows: &[[FieldElement; 3]; 3]) -> FieldElement {
    dot(&rows[0], &cross(&rows[1], &rows[2]))
}

/// Intersection point of two distinct lines.
pub fn meet(l1: &HomPoly, l2: &HomPoly) -> Result<ProjPoint> {
    let c = cross(&l1.linear_coeffs()?, &l2.linear_coeffs()?);
    ProjPoint::new(c).map_err(|_| Error::InvalidArgument("lines coincide".into()))
}

/// A binary form `sum_i c_i s^(n-i) t^i` in the parameters of a line.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BinaryForm {
    coeffs: Vec<FieldElement>,
}

impl BinaryForm {
    pub fn new(coeffs: Vec<FieldElement>) -> Self {
        assert!(!coeffs.is_empty(), "binary form needs a degree");
        BinaryForm { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `s^(n-i) t^i`.
    pub fn coeff(&self, i: usize) -> &FieldElement {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(FieldElement::is_zero)
    }

    pub fn eval(&self, s: &FieldElement, t: &FieldElement) -> FieldElement {
        let n = self.degree();
        let mut acc = s.tower().zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            acc = &acc + &(&(c * &s.pow((n - i) as u64)) * &t.pow(i as u64));
        }
        acc
    }

    pub fn proportional(&self, other: &BinaryForm) -> bool {
        if self.degree() != other.degree() {
            return false;
        }
        let Some(k) = self.coeffs.iter().position(|c| !c.is_zero()) else {
            return true;
        };
        let a = &self.coeffs[k];
        let b = &other.coeffs[k];
        self.coeffs.iter().zip(&other.coeffs).all(|(x, y)| (&(a * y) - &(b * x)).is_zero())
    }

    /// `b^2 - 4ac` for `a s^2 + b st + c t^2`.
    pub fn disc2(&self) -> Result<FieldElement> {
        if self.degree() != 2 {
            return Err(Error::WrongDegree { expected: "binary quadratic", got: self.degree() as u32 });
        }
        let [a, b, c] = [&self.coeffs[0], &self.coeffs[1], &self.coeffs[2]];
        Ok(&(b * b) - &(a * c).scale_i64(4))
    }

    /// Order of vanishing at the parameter point `(s0 : t0)`.
    pub fn root_multiplicity(&self, s0: &FieldElement, t0: &FieldElement) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::ZeroInput);
        }
        if s0.is_zero() {
            if t0.is_zero() {
                return Err(Error::ZeroPoint);
            }
            // order at s = 0 of f(s, 1)
            let top = self.coeffs.iter().rposition(|c| !c.is_zero()).unwrap();
            return Ok(self.degree() - top);
        }
        // f(1, l) = sum c_i l^i, root l = t0 / s0
        let lambda = t0.checked_div(s0)?;
        let tower = s0.tower().clone();
        let f = TowerField(&tower);
        let mut g: Vec<FieldElement> = self.coeffs.clone();
        univariate::trim(&f, &mut g);
        let lin = vec![-&lambda, tower.one()];
        let mut m = 0;
        loop {
            let (q, r) = univariate::divrem(&f, &g, &lin)?;
            if !r.is_empty() {
                return Ok(m);
            }
            m += 1;
            g = q;
        }
    }
}

/// Rational parametrization of a line `V(L)`: the pivot variable (first
/// nonzero coefficient of `L` in `x, y, z` order) is solved for, the other
/// two become the parameters `(s, t)` in increasing variable order.
#[derive(Clone, Debug)]
pub struct LineParam {
    pivot: usize,
    /// `matrix[i]` expresses coordinate `i` in terms of `(s, t, 0)`.
    matrix: [[FieldElement; 3]; 3],
}

impl LineParam {
    pub fn new(l: &HomPoly) -> Result<Self> {
        let c = l.linear_coeffs()?;
        let pivot = c.iter().position(|v| !v.is_zero()).ok_or(Error::ZeroInput)?;
        let tower = l.tower();
        let inv = c[pivot].inv()?;
        let free: Vec<usize> = (0..3).filter(|&i| i != pivot).collect();
        let mut matrix: [[FieldElement; 3]; 3] = std::array::from_fn(|_| std::array::from_fn(|_| tower.zero()));
        for (slot, &v) in free.iter().enumerate() {
            matrix[v][slot] = tower.one();
            matrix[pivot][slot] = -(&c[v] * &inv);
        }
        Ok(LineParam { pivot, matrix })
    }

    pub fn pivot(&self) -> usize {
        self.pivot
    }

    pub fn point_at(&self, s: &FieldElement, t: &FieldElement) -> Result<ProjPoint> {
        let v = [0, 1, 2].map(|i| &(&self.matrix[i][0] * s) + &(&self.matrix[i][1] * t));
        ProjPoint::new(v)
    }

    /// Parameters of a point already on the line.
    pub fn params_of(&self, p: &ProjPoint) -> (FieldElement, FieldElement) {
        let free: Vec<usize> = (0..3).filter(|&i| i != self.pivot).collect();
        (p.coords()[free[0]].clone(), p.coords()[free[1]].clone())
    }

    pub fn restrict(&self, c: &HomPoly) -> BinaryForm {
        let pulled = c.compose_linear(&self.matrix);
        let n = c.deg();
        let coeffs = (0..=n).map(|i| pulled.coeff([n - i, i, 0])).collect();
        BinaryForm::new(coeffs)
    }
}

/// Pullback of `c` along the standard parametrization of `V(l)`.
pub fn restrict_to_line(c: &HomPoly, l: &HomPoly) -> Result<BinaryForm> {
    Ok(LineParam::new(l)?.restrict(c))
}
